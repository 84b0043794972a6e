use std::fmt;

/// Dense bitset over row indices `0..universe` with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RowSet {
    words: Vec<u64>,
    universe: usize,
    count: usize,
}

impl RowSet {
    pub fn empty(universe: usize) -> Self {
        RowSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; universe.div_ceil(64)];
        if !universe.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        RowSet {
            words,
            universe,
            count: universe,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, rows: I) -> Self {
        let mut set = RowSet::empty(universe);
        for r in rows {
            assert!(r < universe, "row {r} outside universe {universe}");
            set.words[r / 64] |= 1 << (r % 64);
        }
        set.recount();
        set
    }

    pub fn from_predicate(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        RowSet::from_indices(universe, (0..universe).filter(|&r| pred(r)))
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Number of rows in the set.
    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn is_full(&self) -> bool {
        self.count == self.universe
    }

    pub fn contains(&self, row: usize) -> bool {
        row < self.universe && self.words[row / 64] & (1 << (row % 64)) != 0
    }

    pub fn intersection(&self, other: &RowSet) -> RowSet {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        RowSet {
            words,
            universe: self.universe,
            count,
        }
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_len(&self, other: &RowSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &RowSet) -> bool {
        self.intersection_len(other) == self.count
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Target values of the member rows, in ascending order.
    pub fn sorted_values(&self, values: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = self.iter().map(|r| values[r]).collect();
        out.sort_unstable_by(f64::total_cmp);
        out
    }
}

impl fmt::Debug for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
