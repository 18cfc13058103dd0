/// Resource limits and parallelism shared by the exhaustive procedures.
///
/// Exceeding a budget is always a hard [`Error::Resource`](crate::Error::Resource),
/// never a silently truncated answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Search-tree nodes a single satisfaction check may visit.
    pub node_budget: u64,
    /// Elements a relatively free monoid may have.
    pub element_budget: usize,
    /// Bytes of word-function storage a relatively free monoid may use.
    pub memory_budget: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub workers: usize,
    /// Word-function cells (elements times `|M|^(n+1)`) the fresh-variable
    /// check of a term decider may spend building `F_M(n + 1)`. When that
    /// is not enough, isoterm queries fall back to enumerating candidates
    /// and same-type queries report a resource error.
    pub fresh_work: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            node_budget: 20_000_000_000,
            element_budget: 2_000_000,
            memory_budget: 2 << 30,
            workers: 1,
            fresh_work: 1 << 27,
        }
    }
}

impl Config {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Runs `f` inside a pool of `workers` threads.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
