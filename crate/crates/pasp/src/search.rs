//! Knobs shared by the enumeration-based solvers.

/// Options for the guess-space searches.
///
/// Each solver has its own guard unit (see the per-function docs); `limit`
/// overrides the solver's default. `parallel` partitions the guess space
/// across worker threads; results are merged and re-sorted, so it never
/// changes the output.
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub limit: Option<u128>,
    pub parallel: bool,
}

impl SearchOptions {
    pub fn with_limit(mut self, limit: u128) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub(crate) fn limit_or(&self, default: u128) -> u128 {
        self.limit.unwrap_or(default)
    }
}
