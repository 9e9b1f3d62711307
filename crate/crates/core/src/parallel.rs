//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) these fan out over rayon's
//! global pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Results are always combined in block order, so the
//! outcome never depends on scheduling.

/// How a kernel should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

pub fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_indexed<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Sums `f(block)` over `0..blocks` with checked addition.
pub fn sum_blocks<F>(exec: Execution, blocks: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    map_indexed(exec, blocks, f)
        .into_iter()
        .try_fold(0u64, u64::checked_add)
        .expect("block counts overflow u64")
}

/// Splits `0..total` into `blocks` contiguous ranges of nearly equal size.
pub fn block_range(total: u64, blocks: usize, b: usize) -> std::ops::Range<u64> {
    let blocks = blocks.max(1) as u64;
    let b = b as u64;
    let base = total / blocks;
    let extra = total % blocks;
    let start = b * base + b.min(extra);
    let len = base + u64::from(b < extra);
    start..start + len
}

/// A reasonable block count for `total` units of work.
pub fn default_blocks(total: u64) -> usize {
    #[cfg(feature = "parallel")]
    let threads = rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    let threads = 1;
    (threads * 8).min(total.max(1) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_tile_the_interval() {
        for total in [0u64, 1, 7, 100, 101] {
            for blocks in 1..12 {
                let mut next = 0;
                for b in 0..blocks {
                    let r = block_range(total, blocks, b);
                    assert_eq!(r.start, next);
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn execution_modes_agree() {
        let f = |i: usize| (i as u64 * 2654435761) % 1000;
        assert_eq!(sum_blocks(Execution::Sequential, 500, f), sum_blocks(Execution::Parallel, 500, f));
        assert_eq!(map_indexed(Execution::Parallel, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
