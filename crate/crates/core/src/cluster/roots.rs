//! Almost positive roots of type A∞ as intervals of simple roots.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A positive root `α_i + … + α_j` or a negative simple root `−α_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "sign", rename_all = "kebab-case")]
pub enum RootInterval {
    Positive { i: i64, j: i64 },
    NegativeSimple { i: i64 },
}

impl RootInterval {
    /// The positive root supported on `i..=j`.
    ///
    /// # Panics
    /// If `i > j`.
    pub fn positive(i: i64, j: i64) -> Self {
        assert!(i <= j, "empty root interval {i}..={j}");
        Self::Positive { i, j }
    }

    pub fn simple(i: i64) -> Self {
        Self::Positive { i, j: i }
    }

    pub fn negative(i: i64) -> Self {
        Self::NegativeSimple { i }
    }

    /// Number of simple roots in the support.
    pub fn len(&self) -> i64 {
        match *self {
            Self::Positive { i, j } => j - i + 1,
            Self::NegativeSimple { .. } => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Self::Positive { .. })
    }

    /// Smallest and largest index of the support.
    pub fn support(&self) -> (i64, i64) {
        match *self {
            Self::Positive { i, j } => (i, j),
            Self::NegativeSimple { i } => (i, i),
        }
    }

    pub fn translate(&self, d: i64) -> Self {
        match *self {
            Self::Positive { i, j } => Self::Positive { i: i + d, j: j + d },
            Self::NegativeSimple { i } => Self::NegativeSimple { i: i + d },
        }
    }

    /// The translate by a multiple of `period` whose support starts in `0..period`.
    pub fn normalized(&self, period: i64) -> Self {
        let (lo, _) = self.support();
        self.translate(lo.rem_euclid(period) - lo)
    }

    /// Reads a root off a denominator vector: a single `−1` entry, or a
    /// contiguous block of `1` entries, with zeros elsewhere.
    pub fn from_denominator_vector(d: &BTreeMap<i64, i64>) -> Option<Self> {
        let nonzero: Vec<(i64, i64)> = d.iter().filter(|(_, v)| **v != 0).map(|(k, v)| (*k, *v)).collect();
        match nonzero.as_slice() {
            [] => None,
            [(i, -1)] => Some(Self::negative(*i)),
            _ => {
                let (lo, hi) = (nonzero[0].0, nonzero[nonzero.len() - 1].0);
                let contiguous = nonzero.len() as i64 == hi - lo + 1;
                (contiguous && nonzero.iter().all(|(_, v)| *v == 1)).then(|| Self::positive(lo, hi))
            }
        }
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Positive { i, j } if i == j => write!(f, "alpha[{i}]"),
            Self::Positive { i, j } => write!(f, "alpha[{i},{j}]"),
            Self::NegativeSimple { i } => write!(f, "-alpha[{i}]"),
        }
    }
}

/// Roots whose cluster variables survive folding onto the torus of
/// circumference `2n`: negative simple roots, roots of odd length, and
/// roots of even length below `2n`.
pub fn is_orbit_cluster_root(root: &RootInterval, n: usize) -> bool {
    match root {
        RootInterval::NegativeSimple { .. } => true,
        RootInterval::Positive { .. } => {
            let len = root.len();
            len % 2 == 1 || len < 2 * n as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_for_circumference_six() {
        assert!(!is_orbit_cluster_root(&RootInterval::positive(1, 6), 3));
        assert!(is_orbit_cluster_root(&RootInterval::positive(1, 5), 3));
        assert!(is_orbit_cluster_root(&RootInterval::positive(1, 4), 3));
        assert!(is_orbit_cluster_root(&RootInterval::positive(1, 7), 3));
        assert!(!is_orbit_cluster_root(&RootInterval::positive(1, 8), 3));
        assert!(is_orbit_cluster_root(&RootInterval::negative(4), 3));
    }

    #[test]
    fn denominator_vectors() {
        let d: BTreeMap<i64, i64> = [(1, 1), (2, 1), (3, 1), (4, 0)].into();
        assert_eq!(RootInterval::from_denominator_vector(&d), Some(RootInterval::positive(1, 3)));
        let d: BTreeMap<i64, i64> = [(1, 0), (2, -1)].into();
        assert_eq!(RootInterval::from_denominator_vector(&d), Some(RootInterval::negative(2)));
        let gap: BTreeMap<i64, i64> = [(1, 1), (3, 1)].into();
        assert_eq!(RootInterval::from_denominator_vector(&gap), None);
        let two: BTreeMap<i64, i64> = [(1, 2)].into();
        assert_eq!(RootInterval::from_denominator_vector(&two), None);
    }

    #[test]
    fn normalization() {
        assert_eq!(RootInterval::positive(-5, -3).normalized(6), RootInterval::positive(1, 3));
        assert_eq!(RootInterval::negative(13).normalized(6), RootInterval::negative(1));
        assert_eq!(RootInterval::positive(2, 4).to_string(), "alpha[2,4]");
    }
}
