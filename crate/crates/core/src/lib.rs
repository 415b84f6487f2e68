pub mod certify;
pub mod cli;
pub mod code;
pub mod codec;
pub mod combin;
pub mod conditions;
pub mod error;
pub mod families;
pub mod field;
pub mod io;
pub mod limits;
pub mod matrix;
