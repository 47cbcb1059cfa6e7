//! Data-parallel building blocks shared by every operator.
//!
//! With the `parallel` feature (default) these dispatch to rayon. Without it,
//! or inside [`sequential`], they run as plain loops on the calling thread.
//! Results never depend on which path ran.

use std::cell::Cell;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Block length used by the blocked scan and compaction routines.
pub const BLOCK: usize = 1 << 14;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every helper in this module forced onto the sequential path.
///
/// Only the calling thread is affected, which is sufficient: in sequential
/// mode no work is ever handed to another thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    struct Restore(bool);
    impl Drop for Restore {
        fn drop(&mut self) {
            FORCE_SEQUENTIAL.with(|c| c.set(self.0));
        }
    }
    let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
    let _restore = Restore(prev);
    f()
}

/// True when helpers will use the thread pool.
#[inline]
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(|c| c.get())
}

/// Number of workers the helpers may use.
pub fn num_workers() -> usize {
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return rayon::current_num_threads();
    }
    1
}

/// Calls `f(i)` for every `i` in `0..n`.
pub fn for_each_index<F>(n: usize, f: F)
where
    F: Fn(usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        (0..n).into_par_iter().for_each(f);
        return;
    }
    (0..n).for_each(f);
}

/// Collects `f(i)` for `i` in `0..n`, preserving index order.
pub fn map_index<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Calls `f(index, &mut item)` for every element.
pub fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        items
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, x)| f(i, x));
        return;
    }
    items.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
}

/// Runs `f` on every task. Tasks are independent; no ordering is implied.
pub fn for_each_task<T, F>(tasks: Vec<T>, f: F)
where
    T: Send,
    F: Fn(T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        tasks.into_par_iter().for_each(f);
        return;
    }
    tasks.into_iter().for_each(f);
}

/// Like [`for_each_task`], with one scratch value per worker split.
///
/// The scratch value is dropped when its worker finishes, which is where
/// buffered writers flush.
pub fn for_each_task_with<T, S, I, F>(tasks: Vec<T>, init: I, f: F)
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        tasks.into_par_iter().for_each_init(init, f);
        return;
    }
    let mut scratch = init();
    tasks.into_iter().for_each(|t| f(&mut scratch, t));
}

/// Sum of `f(i)` over `0..n`. Integer-valued so the result is order free.
pub fn sum_index<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    (0..n).map(f).sum()
}

/// Unstable sort.
pub fn sort_unstable<T: Ord + Send>(items: &mut [T]) {
    #[cfg(feature = "parallel")]
    if is_parallel() {
        items.par_sort_unstable();
        return;
    }
    items.sort_unstable();
}

/// Exclusive prefix sum. Returns `len + 1` offsets; the last entry is the total.
pub fn exclusive_scan(lengths: &[usize]) -> Vec<usize> {
    let n = lengths.len();
    let mut out = vec![0usize; n + 1];
    if n <= BLOCK || !is_parallel() {
        let mut acc = 0usize;
        for (o, &l) in out.iter_mut().zip(lengths) {
            *o = acc;
            acc += l;
        }
        out[n] = acc;
        return out;
    }

    // Blocked three-phase scan: block totals, scan of totals, local fill.
    let blocks: Vec<&[usize]> = lengths.chunks(BLOCK).collect();
    let totals = map_slice(&blocks, |b| b.iter().sum::<usize>());
    let mut starts = Vec::with_capacity(totals.len());
    let mut acc = 0usize;
    for t in &totals {
        starts.push(acc);
        acc += t;
    }
    out[n] = acc;
    let (body, _) = out.split_at_mut(n);
    let mut pieces: Vec<(&mut [usize], &[usize], usize)> = body
        .chunks_mut(BLOCK)
        .zip(blocks)
        .zip(starts)
        .map(|((o, b), s)| (o, b, s))
        .collect();
    for_each_mut(&mut pieces, |_, (o, b, s)| {
        let mut acc = *s;
        for (slot, &l) in o.iter_mut().zip(b.iter()) {
            *slot = acc;
            acc += l;
        }
    });
    out
}

/// Stream compaction: keeps `items[i]` where `keep(i, &items[i])` holds,
/// preserving the relative order of survivors.
///
/// Blocks are flagged and compacted locally, then concatenated at offsets
/// from a scan over block survivor counts.
pub fn compact<T, F>(items: &[T], keep: F) -> Vec<T>
where
    T: Copy + Send + Sync,
    F: Fn(usize, &T) -> bool + Sync + Send,
{
    if items.len() <= BLOCK || !is_parallel() {
        return items
            .iter()
            .enumerate()
            .filter(|(i, x)| keep(*i, x))
            .map(|(_, x)| *x)
            .collect();
    }
    let blocks: Vec<(usize, &[T])> = items
        .chunks(BLOCK)
        .enumerate()
        .map(|(b, c)| (b * BLOCK, c))
        .collect();
    let locals: Vec<Vec<T>> = map_slice(&blocks, |(base, c)| {
        c.iter()
            .enumerate()
            .filter(|(i, x)| keep(base + i, x))
            .map(|(_, x)| *x)
            .collect()
    });
    concat(locals)
}

/// Concatenates per-block outputs in block order.
pub fn concat<T: Copy + Send + Sync>(parts: Vec<Vec<T>>) -> Vec<T> {
    let lens: Vec<usize> = parts.iter().map(Vec::len).collect();
    let offsets = exclusive_scan(&lens);
    let total = offsets[parts.len()];
    let mut out: Vec<T> = Vec::with_capacity(total);
    if !is_parallel() || parts.len() <= 1 {
        for p in parts {
            out.extend_from_slice(&p);
        }
        return out;
    }
    // Disjoint destination ranges come from the scan, so each block fills its
    // own slice.
    let Some(fill) = parts.iter().find_map(|p| p.first().copied()) else {
        return out;
    };
    out.resize(total, fill);
    let mut dests: Vec<(&mut [T], Vec<T>)> = Vec::with_capacity(parts.len());
    let mut rest: &mut [T] = &mut out;
    for p in parts {
        let (head, tail) = rest.split_at_mut(p.len());
        dests.push((head, p));
        rest = tail;
    }
    for_each_mut(&mut dests, |_, (d, p)| d.copy_from_slice(p));
    out
}
