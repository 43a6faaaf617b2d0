//! Data-parallel primitives with a sequential fallback.
//!
//! All reductions used by the oracle are sums of integers, so results do not
//! depend on how work is split between threads.

/// How bulk loops are executed. Without the `parallel` feature both variants
/// run sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..n).map(f).collect()`
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Elements of `items` satisfying `keep`, in their original order.
    pub fn filter<T, F>(self, items: &[T], keep: F) -> Vec<T>
    where
        T: Copy + Send + Sync,
        F: Fn(T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().copied().filter(|&x| keep(x)).collect();
        }
        items.iter().copied().filter(|&x| keep(x)).collect()
    }

    /// Accumulates `add(item, acc)` over `items` into a zeroed integer
    /// vector of length `len`; partial vectors are summed elementwise.
    pub fn accumulate<T, F>(self, items: &[T], len: usize, add: F) -> Vec<i64>
    where
        T: Sync,
        F: Fn(&T, &mut [i64]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items
                .par_chunks(4096)
                .fold(
                    || vec![0i64; len],
                    |mut acc, chunk| {
                        for x in chunk {
                            add(x, &mut acc);
                        }
                        acc
                    },
                )
                .reduce(
                    || vec![0i64; len],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                );
        }
        let mut acc = vec![0i64; len];
        for x in items {
            add(x, &mut acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..20_000).collect();
        let add = |x: &u64, acc: &mut [i64]| acc[(*x % 7) as usize] += (*x % 13) as i64;
        let a = Execution::Parallel.accumulate(&items, 7, add);
        let b = Execution::Sequential.accumulate(&items, 7, add);
        assert_eq!(a, b);
        let f = |x: u64| x % 3 == 0;
        assert_eq!(Execution::Parallel.filter(&items, f), Execution::Sequential.filter(&items, f));
        assert_eq!(Execution::Parallel.map_range(100, |i| i * i), Execution::Sequential.map_range(100, |i| i * i));
    }
}
