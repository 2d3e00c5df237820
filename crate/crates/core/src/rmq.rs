//! Static range-argmin over a frozen array.
//!
//! A sparse table: level `k` stores, for each start `s`, the argmin of the
//! window `[s, s + 2^k)`. Any closed range is covered by two (possibly
//! overlapping) power-of-two windows, giving O(n log n) build and O(1) query.
//! Ties resolve to the smallest position.
//!
//! Positions are 1-based to line up with woman indices.

/// Argmin structure over an immutable array of `T`.
#[derive(Debug, Clone)]
pub struct RangeArgmin<T> {
    values: Vec<T>,
    // levels[k][s] = 0-based argmin of values[s..s + 2^k]
    levels: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> RangeArgmin<T> {
    /// Panics on an empty array.
    pub fn new(values: &[T]) -> Self {
        assert!(!values.is_empty(), "range argmin over an empty array");
        assert!(values.len() <= u32::MAX as usize);
        let n = values.len();
        let mut levels: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let next = (0..=n - 2 * width)
                .map(|s| pick(values, prev[s], prev[s + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        RangeArgmin {
            values: values.to_vec(),
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based position `pos`.
    pub fn value(&self, pos: usize) -> T {
        self.values[pos - 1]
    }

    /// Smallest 1-based position in `lo..=hi` holding the minimum value.
    ///
    /// Panics unless `1 <= lo <= hi <= len`; callers must rule out empty
    /// windows beforehand.
    pub fn query(&self, lo: usize, hi: usize) -> usize {
        assert!(
            1 <= lo && lo <= hi && hi <= self.values.len(),
            "bad range {lo}..={hi} for length {}",
            self.values.len()
        );
        let (lo, hi) = (lo - 1, hi - 1);
        let len = hi - lo + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let level = &self.levels[k];
        pick(&self.values, level[lo], level[hi + 1 - (1 << k)]) as usize + 1
    }
}

#[inline]
fn pick<T: Ord>(values: &[T], a: u32, b: u32) -> u32 {
    // a <= b positionally in every call, so `<=` keeps the earlier index on ties
    if values[a as usize] <= values[b as usize] {
        a
    } else {
        b
    }
}
