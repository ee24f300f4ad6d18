//! Execution strategy for data-parallel inner loops.
//!
//! Heavy operations (loss averaging, fidelity surfaces, detector-model
//! quadrature) map independent work items to values and then reduce. The map
//! step may run on rayon when the `parallel` feature is enabled; reductions
//! are always performed sequentially over the index-ordered results so that
//! floating-point sums are bit-identical regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether a data-parallel loop may fan out to worker threads.
///
/// Without the `parallel` feature both variants run sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

/// Map `0..n` through `f`, preserving index order in the output.
pub(crate) fn map_range<R, F>(mode: ExecMode, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_preserved_in_both_modes() {
        let seq = map_range(ExecMode::Sequential, 64, |i| i * i);
        let par = map_range(ExecMode::Parallel, 64, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }
}
