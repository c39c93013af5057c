use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A finite set of positive naturals, stored strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet(Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("set elements must be positive naturals, got 0")]
    Zero,
}

impl FinSet {
    pub fn empty() -> Self {
        FinSet(Vec::new())
    }

    /// Sorts and deduplicates; rejects `0`.
    pub fn new<I: IntoIterator<Item = u32>>(items: I) -> Result<Self, FinSetError> {
        let mut v: Vec<u32> = items.into_iter().collect();
        if v.contains(&0) {
            return Err(FinSetError::Zero);
        }
        v.sort_unstable();
        v.dedup();
        Ok(FinSet(v))
    }

    /// Caller guarantees a strictly increasing slice of positive values.
    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]) && v.first() != Some(&0));
        FinSet(v)
    }

    /// `{1, …, n}`.
    pub fn interval(n: u32) -> Self {
        FinSet((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_elem(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max_elem(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// `self ∪ {n}`.
    pub fn with(&self, n: u32) -> FinSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&n) {
            v.insert(pos, n);
        }
        FinSet(v)
    }

    /// `self ∖ {n}`.
    pub fn without(&self, n: u32) -> FinSet {
        FinSet(self.0.iter().copied().filter(|&x| x != n).collect())
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Elements `≥ m`.
    pub fn tail_from(&self, m: u32) -> FinSet {
        FinSet(self.0.iter().copied().filter(|&x| x >= m).collect())
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Shorthand for tests and examples.
pub fn set(items: &[u32]) -> FinSet {
    FinSet::new(items.iter().copied()).expect("positive elements")
}
