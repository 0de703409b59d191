//! Chunked execution helpers.
//!
//! Work is split into fixed-size index chunks; each chunk is computed
//! independently and results are combined in chunk order. The output is
//! therefore bit-identical whether the chunks run on rayon (feature
//! `parallel`) or sequentially.

use std::ops::Range;

/// Default chunk width for table-sized loops.
pub const CHUNK: usize = 1 << 16;

/// Apply `f` to each chunk of `0..len`, returning results in chunk order.
pub fn map_chunks<R, F>(len: usize, chunk: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<usize>) -> R + Sync + Send,
{
    let ranges: Vec<Range<usize>> = (0..len)
        .step_by(chunk.max(1))
        .map(|lo| lo..(lo + chunk).min(len))
        .collect();

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ranges.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ranges.into_iter().map(f).collect()
    }
}

/// Fill `out` chunk by chunk; `f` receives the chunk's start offset and the
/// mutable chunk slice. Chunks are disjoint, so the write pattern is
/// identical under both execution modes.
pub fn fill_chunks<T, F>(out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i * chunk, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, c) in out.chunks_mut(chunk).enumerate() {
            f(i * chunk, c);
        }
    }
}
