//! Integer partitions and the statistics used throughout the crate.
//!
//! A [`Partition`] is a non-empty, weakly decreasing sequence of positive
//! parts, stored largest first. The main grading statistic is the
//! *perimeter* (the length of the largest hook), `π₁ + ℓ(π) − 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when validating a candidate partition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition must have at least one part")]
    EmptyPartition,
    #[error("part at index {index} is not positive")]
    NonPositivePart { index: usize },
    #[error("part at index {index} is larger than the part before it")]
    NotWeaklyDecreasing { index: usize },
    #[error("part at index {index} is not an integer: {text:?}")]
    Unparseable { index: usize, text: String },
}

/// A non-empty integer partition, parts stored largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Validates `parts` and builds a [`Partition`].
///
/// Errors name the first offending index (0-based).
pub fn make_partition(parts: &[i64]) -> Result<Partition, PartitionError> {
    if parts.is_empty() {
        return Err(PartitionError::EmptyPartition);
    }
    let mut out = Vec::with_capacity(parts.len());
    for (index, &part) in parts.iter().enumerate() {
        if part < 1 {
            return Err(PartitionError::NonPositivePart { index });
        }
        if index > 0 && part > parts[index - 1] {
            return Err(PartitionError::NotWeaklyDecreasing { index });
        }
        let part = u32::try_from(part).map_err(|_| PartitionError::Unparseable {
            index,
            text: part.to_string(),
        })?;
        out.push(part);
    }
    Ok(Partition { parts: out })
}

impl Partition {
    /// Validating constructor over unsigned parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::EmptyPartition);
        }
        for (index, &part) in parts.iter().enumerate() {
            if part == 0 {
                return Err(PartitionError::NonPositivePart { index });
            }
            if index > 0 && parts[index] > parts[index - 1] {
                return Err(PartitionError::NotWeaklyDecreasing { index });
            }
        }
        Ok(Self { parts })
    }

    /// Callers guarantee the invariants; checked in debug builds only.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p >= 1));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    pub fn smallest(&self) -> u32 {
        self.parts[self.parts.len() - 1]
    }

    /// Number of parts, `ℓ(π)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the parts, `|π|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Largest hook length `Γ(π) = π₁ + ℓ(π) − 1`.
    pub fn perimeter(&self) -> u64 {
        u64::from(self.largest()) + self.len() as u64 - 1
    }

    /// `π₁ − ℓ(π)`; may be negative.
    pub fn rank(&self) -> i64 {
        i64::from(self.largest()) - self.len() as i64
    }

    /// Hook length of every cell, as a ragged table indexed `[row][column]`.
    ///
    /// The hook of cell `(i, j)` is its arm (cells to the right) plus its leg
    /// (cells below) plus one.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| {
                        let arm = row - j as u32 - 1;
                        let leg = conj.parts[j] - i as u32 - 1;
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|col| self.parts.iter().take_while(|&&p| p >= col).count() as u32)
            .collect();
        Partition::from_sorted_unchecked(parts)
    }

    pub fn is_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_member(&self, class: ConstraintClass) -> bool {
        class.contains(self)
    }
}

impl fmt::Display for Partition {
    /// Comma-joined parts, largest first: `6,5,4,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(PartitionError::EmptyPartition);
        }
        let parts = s
            .split(',')
            .enumerate()
            .map(|(index, tok)| {
                tok.trim().parse::<i64>().map_err(|_| PartitionError::Unparseable {
                    index,
                    text: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        make_partition(&parts)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(deserializer)?;
        make_partition(&parts).map_err(serde::de::Error::custom)
    }
}

/// Which family of partitions an enumeration ranges over.
///
/// `Distinct` and `DDistinct(1)` describe the same set, as do `Odd` and
/// `ModOne(1)`; the parameterised forms require `d ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintClass {
    Unrestricted,
    Distinct,
    Odd,
    /// Consecutive parts differ by at least `d`.
    DDistinct(u32),
    /// Every part is `≡ 1 (mod d + 1)`.
    ModOne(u32),
    /// Parts `≡ 1` or `d + 2 (mod 2d + 1)` with bounded gaps, see [`in_gclass`].
    GClass(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassSpecError {
    #[error("unknown class {0:?}; expected any, distinct, odd, ddistinct:<d>, modone:<d> or gclass:<d>")]
    Unknown(String),
    #[error("class parameter must be a positive integer, got {0:?}")]
    BadParameter(String),
}

impl ConstraintClass {
    pub fn contains(self, p: &Partition) -> bool {
        let parts = p.parts();
        match self {
            ConstraintClass::Unrestricted => true,
            ConstraintClass::Distinct => p.is_distinct(),
            ConstraintClass::Odd => parts.iter().all(|&x| x % 2 == 1),
            ConstraintClass::DDistinct(d) => parts.windows(2).all(|w| w[0] - w[1] >= d),
            ConstraintClass::ModOne(d) => parts.iter().all(|&x| x % (d + 1) == 1 % (d + 1)),
            ConstraintClass::GClass(d) => in_gclass(parts, d),
        }
    }

    /// The `d` of a parameterised class, with `Distinct`/`Odd` reporting 1.
    pub fn parameter(self) -> Option<u32> {
        match self {
            ConstraintClass::Unrestricted => None,
            ConstraintClass::Distinct | ConstraintClass::Odd => Some(1),
            ConstraintClass::DDistinct(d) | ConstraintClass::ModOne(d) | ConstraintClass::GClass(d) => Some(d),
        }
    }

    /// Every class the crate knows about, with `d` ranging over `ds`.
    pub fn all_with(ds: impl IntoIterator<Item = u32> + Clone) -> Vec<ConstraintClass> {
        let mut out = vec![
            ConstraintClass::Unrestricted,
            ConstraintClass::Distinct,
            ConstraintClass::Odd,
        ];
        out.extend(ds.clone().into_iter().map(ConstraintClass::DDistinct));
        out.extend(ds.clone().into_iter().map(ConstraintClass::ModOne));
        out.extend(ds.into_iter().map(ConstraintClass::GClass));
        out
    }
}

/// Membership in the residue-and-gap class `𝔊_d`.
///
/// i. every part is `≡ 1` or `≡ d + 2 (mod 2d + 1)`;
/// ii. `πᵢ − πᵢ₊₁ ≤ 2d + 1` for every `i`, including the final gap to a
///     virtual zero part, strictly when `πᵢ ≡ 1 (mod 2d + 1)`.
pub fn in_gclass(parts: &[u32], d: u32) -> bool {
    let m = 2 * d + 1;
    let high = (d + 2) % m;
    parts.iter().enumerate().all(|(i, &p)| {
        let r = p % m;
        let next = parts.get(i + 1).copied().unwrap_or(0);
        let gap = p - next;
        match r {
            1 => gap < m,
            r if r == high => gap <= m,
            _ => false,
        }
    })
}

impl fmt::Display for ConstraintClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintClass::Unrestricted => f.write_str("any"),
            ConstraintClass::Distinct => f.write_str("distinct"),
            ConstraintClass::Odd => f.write_str("odd"),
            ConstraintClass::DDistinct(d) => write!(f, "ddistinct:{d}"),
            ConstraintClass::ModOne(d) => write!(f, "modone:{d}"),
            ConstraintClass::GClass(d) => write!(f, "gclass:{d}"),
        }
    }
}

impl FromStr for ConstraintClass {
    type Err = ClassSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let parse_d = |p: Option<&str>| -> Result<u32, ClassSpecError> {
            let p = p.ok_or_else(|| ClassSpecError::BadParameter(String::new()))?;
            match p.parse::<u32>() {
                Ok(d) if d >= 1 && p.bytes().all(|b| b.is_ascii_digit()) => Ok(d),
                _ => Err(ClassSpecError::BadParameter(p.to_string())),
            }
        };
        match (name, param) {
            ("any", None) => Ok(ConstraintClass::Unrestricted),
            ("distinct", None) => Ok(ConstraintClass::Distinct),
            ("odd", None) => Ok(ConstraintClass::Odd),
            ("ddistinct", p) => parse_d(p).map(ConstraintClass::DDistinct),
            ("modone", p) => parse_d(p).map(ConstraintClass::ModOne),
            ("gclass", p) => parse_d(p).map(ConstraintClass::GClass),
            _ => Err(ClassSpecError::Unknown(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn make_partition_validates() {
        let q = make_partition(&[2, 2, 1]).unwrap();
        assert_eq!(q.perimeter(), 4);
        let one = make_partition(&[1]).unwrap();
        assert_eq!((one.perimeter(), one.size()), (1, 1));
        assert_eq!(
            make_partition(&[5, 6]),
            Err(PartitionError::NotWeaklyDecreasing { index: 1 })
        );
        assert_eq!(make_partition(&[]), Err(PartitionError::EmptyPartition));
        assert_eq!(
            make_partition(&[3, 0]),
            Err(PartitionError::NonPositivePart { index: 1 })
        );
        assert_eq!(make_partition(&[-1]), Err(PartitionError::NonPositivePart { index: 0 }));
    }

    #[test]
    fn hook_tables() {
        assert_eq!(p(&[2, 2, 1]).hook_lengths(), vec![vec![4, 2], vec![3, 1], vec![1]]);
        assert_eq!(p(&[1]).hook_lengths(), vec![vec![1]]);
        assert_eq!(p(&[3, 1]).hook_lengths(), vec![vec![4, 2, 1], vec![1]]);
    }

    #[test]
    fn rank_values() {
        assert_eq!(p(&[5, 3, 1]).rank(), 2);
        assert_eq!(p(&[1, 1, 1]).rank(), -2);
        assert_eq!(p(&[5, 4, 2]).rank(), 2);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[2, 2, 1]).conjugate(), p(&[3, 2]));
        assert_eq!(p(&[1]).conjugate(), p(&[1]));
        let c = p(&[4, 3]).conjugate();
        assert_eq!(c, p(&[2, 2, 2, 1]));
        assert_eq!(c.perimeter(), 5);
        assert_eq!(p(&[4, 3]).perimeter(), 5);
    }

    #[test]
    fn membership_examples() {
        assert!(p(&[6, 4]).is_member(ConstraintClass::GClass(2)));
        assert!(p(&[5, 3, 1]).is_member(ConstraintClass::DDistinct(2)));
        assert!(!p(&[4, 4, 1]).is_member(ConstraintClass::Distinct));
        assert!(!p(&[7]).is_member(ConstraintClass::GClass(2)));
        // 6 ≡ 1 (mod 5) needs a strict gap below 5
        assert!(!p(&[6]).is_member(ConstraintClass::GClass(2)));
        assert!(p(&[4]).is_member(ConstraintClass::GClass(2)));
        assert!(p(&[7, 4]).is_member(ConstraintClass::ModOne(2)));
        assert!(!p(&[7, 5]).is_member(ConstraintClass::ModOne(2)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("6,5,4,3".parse::<Partition>().unwrap(), p(&[6, 5, 4, 3]));
        assert_eq!(p(&[6, 5, 4, 3]).to_string(), "6,5,4,3");
        assert!(matches!(
            "3,x".parse::<Partition>(),
            Err(PartitionError::Unparseable { index: 1, .. })
        ));
        for spec in ["any", "distinct", "odd", "ddistinct:2", "modone:3", "gclass:5"] {
            let c: ConstraintClass = spec.parse().unwrap();
            assert_eq!(c.to_string(), spec);
        }
        assert!("gclass:0".parse::<ConstraintClass>().is_err());
        assert!("gclass".parse::<ConstraintClass>().is_err());
        assert!("gclass:+2".parse::<ConstraintClass>().is_err());
        assert!("prime".parse::<ConstraintClass>().is_err());
        assert!("odd:1".parse::<ConstraintClass>().is_err());
    }

    #[test]
    fn json_shape() {
        let q = p(&[3, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[3,1]");
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap(), q);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
