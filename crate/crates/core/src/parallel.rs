//! Order-preserving fan-out over scoped threads.

/// Evaluates `f(0..n)` on up to `threads` workers and returns results in
/// index order, so output never depends on the worker count.
pub fn par_map<T, F>(threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 {
        return (0..n).map(&f).collect();
    }
    let chunk = n.div_ceil(threads);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| s.spawn(move || (t * chunk..((t + 1) * chunk).min(n)).map(f).collect::<Vec<T>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_independent_of_threads() {
        let one = par_map(1, 37, |i| i * i);
        for t in [2, 3, 8, 64] {
            assert_eq!(par_map(t, 37, |i| i * i), one);
        }
        assert!(par_map::<usize, _>(4, 0, |i| i).is_empty());
    }
}
