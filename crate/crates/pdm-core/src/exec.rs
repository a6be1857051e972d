//! Row-parallel execution helpers.
//!
//! Every data-parallel loop in the crate goes through these functions so the
//! rayon path and the sequential fallback produce bit-identical results:
//! reductions always sum per-row partials in row order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How grid-sized loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    pub fn name(self) -> &'static str {
        match self {
            Execution::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Execution::Parallel => "parallel",
        }
    }
}

/// Fills `out` row by row; `f` receives the row index and the row slice.
pub fn for_each_row<T, F>(exec: Execution, out: &mut [T], row_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    match exec {
        Execution::Sequential => {
            out.chunks_mut(row_len).enumerate().for_each(|(j, row)| f(j, row));
        }
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            out.par_chunks_mut(row_len).enumerate().for_each(|(j, row)| f(j, row));
        }
    }
}

/// Fallible variant of [`for_each_row`]; returns the error of the lowest failing row.
pub fn try_for_each_row<T, E, F>(exec: Execution, out: &mut [T], row_len: usize, f: F) -> Result<(), E>
where
    T: Send,
    E: Send,
    F: Fn(usize, &mut [T]) -> Result<(), E> + Sync + Send,
{
    if row_len == 0 {
        return Ok(());
    }
    let results: Vec<Result<(), E>> = match exec {
        Execution::Sequential => out.chunks_mut(row_len).enumerate().map(|(j, row)| f(j, row)).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => out.par_chunks_mut(row_len).enumerate().map(|(j, row)| f(j, row)).collect(),
    };
    results.into_iter().collect()
}

/// Deterministic sum of `f(row)` over `rows` rows.
pub fn sum_rows<F>(exec: Execution, rows: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let partials: Vec<f64> = match exec {
        Execution::Sequential => (0..rows).map(&f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..rows).into_par_iter().map(&f).collect(),
    };
    partials.iter().sum()
}

/// Deterministic maximum of `f(row)`; NaN rows propagate as NaN.
pub fn max_rows<F>(exec: Execution, rows: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let partials: Vec<f64> = match exec {
        Execution::Sequential => (0..rows).map(&f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..rows).into_par_iter().map(&f).collect(),
    };
    partials.iter().fold(0.0_f64, |acc, &v| if v.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(v) })
}
