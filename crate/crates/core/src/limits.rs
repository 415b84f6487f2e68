/// Enumeration guards and worker count. Exceeding a guard is an explicit
/// error, never silent sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of k-subsets enumerated by MDS and subset-condition checks.
    pub subset_guard: u64,
    /// Largest q^k for codeword enumeration.
    pub codeword_guard: u64,
    /// Largest field fully enumerated.
    pub field_guard: u64,
    /// Worker threads; results never depend on it.
    pub jobs: usize,
}

pub const GUARD_ENV: &str = "MDSFORGE_GUARD";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_guard: 10_000_000,
            codeword_guard: 1 << 22,
            field_guard: crate::field::DEFAULT_FIELD_GUARD,
            jobs: 1,
        }
    }
}

impl Limits {
    /// Defaults, with `MDSFORGE_GUARD` (when set to an integer) replacing the
    /// subset and codeword guards.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(g) = std::env::var(GUARD_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            l.subset_guard = g;
            l.codeword_guard = g;
        }
        l
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}
