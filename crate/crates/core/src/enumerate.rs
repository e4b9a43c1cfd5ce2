//! Exhaustive enumeration and exact counting of partitions graded by
//! perimeter (and, for the pentagonal-type identities, by size).
//!
//! Counts are [`BigUint`]s throughout. Fibonacci numbers are indexed with
//! `F₁ = F₂ = 1`, which makes `h_D(n) = h_O(n) = F_n` hold from `n = 1`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partition::{ConstraintClass, Partition};
use crate::profile::ProfileWord;

/// Largest perimeter the word-based enumerator accepts.
pub const MAX_ENUMERATION_PERIMETER: usize = 30;

/// Refined statistic used by [`count_refined`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefinementKey {
    LargestPart(u32),
    NumParts(u32),
    Rank(i64),
}

impl RefinementKey {
    pub fn matches(self, p: &Partition) -> bool {
        match self {
            RefinementKey::LargestPart(m) => p.largest() == m,
            RefinementKey::NumParts(k) => p.len() == k as usize,
            RefinementKey::Rank(k) => p.rank() == k,
        }
    }
}

impl fmt::Display for RefinementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinementKey::LargestPart(m) => write!(f, "largest={m}"),
            RefinementKey::NumParts(k) => write!(f, "parts={k}"),
            RefinementKey::Rank(k) => write!(f, "rank={k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("no closed form for {key} over class {class}, and perimeter {n} exceeds the enumeration limit")]
    InvalidKeyForClass {
        class: ConstraintClass,
        key: RefinementKey,
        n: usize,
    },
}

/// All partitions with perimeter `n` in `class`, each once, in
/// lexicographically decreasing order of parts.
///
/// Runs over the `2^(n−1)` profile words of length `n + 1`. Panics if `n`
/// is 0 or above [`MAX_ENUMERATION_PERIMETER`].
pub fn enumerate_by_perimeter(n: usize, class: ConstraintClass) -> std::vec::IntoIter<Partition> {
    assert!(
        (1..=MAX_ENUMERATION_PERIMETER).contains(&n),
        "perimeter {n} outside 1..={MAX_ENUMERATION_PERIMETER}"
    );
    let mut out: Vec<Partition> = (0..1u64 << (n - 1))
        .map(|mask| ProfileWord::from_middle_bits(n, mask).to_partition())
        .filter(|p| class.contains(p))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.into_iter()
}

/// Exact `|{π ∈ class : Γ(π) = n}|` without enumerating.
///
/// The parameterised classes follow `c(n) = c(n−1) + c(n−d−1)` with
/// `c(1) = … = c(d+1) = 1`, read off from `q / (1 − q − q^{d+1})`.
pub fn count_by_perimeter(n: usize, class: ConstraintClass) -> BigUint {
    assert!(n >= 1, "perimeter must be positive");
    match class {
        ConstraintClass::Unrestricted => BigUint::one() << (n - 1),
        ConstraintClass::Distinct | ConstraintClass::Odd => fibonacci(n as u64),
        ConstraintClass::DDistinct(d) | ConstraintClass::ModOne(d) | ConstraintClass::GClass(d) => {
            lagged_fibonacci(n, d as usize)
        }
    }
}

fn lagged_fibonacci(n: usize, d: usize) -> BigUint {
    let mut c: Vec<BigUint> = Vec::with_capacity(n + 1);
    c.push(BigUint::zero());
    for k in 1..=n {
        let v = if k <= d + 1 {
            BigUint::one()
        } else {
            &c[k - 1] + &c[k - d - 1]
        };
        c.push(v);
    }
    c.swap_remove(n)
}

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Refined counts of `{π ∈ class : Γ(π) = n, key(π)}`.
///
/// Closed forms:
/// * distinct, `ℓ = k`: `C(n−k, k−1)`; odd, `λ₁ = 2k−1`: the same;
/// * distinct, `π₁ = k`: `C(k−1, n−k)`;
/// * distinct, rank `k`: `C((n+k−1)/2, k)` when `n−1 ≡ k (mod 2)`;
///   odd, `ℓ = k+1`: the same;
/// * unrestricted, `π₁ = m` or `ℓ = m`: `C(n−1, m−1)`.
///
/// Other combinations fall back to enumeration up to
/// [`MAX_ENUMERATION_PERIMETER`]. Out-of-range keys give zero.
pub fn count_refined(n: usize, key: RefinementKey, class: ConstraintClass) -> Result<BigUint, EnumerateError> {
    if let Some(v) = refined_closed_form(n, key, class) {
        return Ok(v);
    }
    if n > MAX_ENUMERATION_PERIMETER {
        return Err(EnumerateError::InvalidKeyForClass { class, key, n });
    }
    Ok(BigUint::from(
        enumerate_by_perimeter(n, class).filter(|p| key.matches(p)).count(),
    ))
}

fn refined_closed_form(n: usize, key: RefinementKey, class: ConstraintClass) -> Option<BigUint> {
    let n = n as i64;
    let distinct = matches!(class, ConstraintClass::Distinct | ConstraintClass::DDistinct(1));
    let odd = matches!(class, ConstraintClass::Odd | ConstraintClass::ModOne(1));
    let rank_form = |k: i64| {
        if k < 0 || (n - 1 - k).rem_euclid(2) != 0 {
            BigUint::zero()
        } else {
            binomial((n + k - 1) / 2, k)
        }
    };
    let v = match (key, class) {
        (RefinementKey::LargestPart(m), ConstraintClass::Unrestricted)
        | (RefinementKey::NumParts(m), ConstraintClass::Unrestricted) => binomial(n - 1, i64::from(m) - 1),
        (RefinementKey::NumParts(k), _) if distinct => binomial(n - i64::from(k), i64::from(k) - 1),
        (RefinementKey::LargestPart(k), _) if distinct => binomial(i64::from(k) - 1, n - i64::from(k)),
        (RefinementKey::Rank(k), _) if distinct => rank_form(k),
        (RefinementKey::LargestPart(m), _) if odd => {
            if m % 2 == 0 {
                BigUint::zero()
            } else {
                let k = i64::from(m + 1) / 2;
                binomial(n - k, k - 1)
            }
        }
        (RefinementKey::NumParts(l), _) if odd => {
            if l == 0 {
                BigUint::zero()
            } else {
                rank_form(i64::from(l) - 1)
            }
        }
        _ => return None,
    };
    Some(v)
}

/// `(h_{D,E}(n), h_{D,O}(n))`: distinct partitions of perimeter `n` with an
/// even / odd number of parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySplit {
    pub even: BigUint,
    pub odd: BigUint,
}

impl ParitySplit {
    /// `e(n) = even − odd`.
    pub fn excess(&self) -> i64 {
        let diff = BigInt::from(self.even.clone()) - BigInt::from(self.odd.clone());
        i64::try_from(diff).expect("parity excess fits in i64")
    }

    pub fn total(&self) -> BigUint {
        &self.even + &self.odd
    }
}

impl fmt::Display for ParitySplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even={} odd={}", self.even, self.odd)
    }
}

/// `h_{D,E}(n) = Σ_k C(n−2k−2, 2k+1)` and `h_{D,O}(n) = Σ_k C(n−2k−1, 2k)`.
pub fn parity_split_binomial(n: usize) -> ParitySplit {
    let n = n as i64;
    let mut even = BigUint::zero();
    let mut odd = BigUint::zero();
    let mut k = 0;
    while 4 * k <= n {
        even += binomial(n - 2 * k - 2, 2 * k + 1);
        odd += binomial(n - 2 * k - 1, 2 * k);
        k += 1;
    }
    ParitySplit { even, odd }
}

/// Coupled recurrences `E(n) = E(n−1) + O(n−2)`, `O(n) = O(n−1) + E(n−2)`
/// from `E(1) = E(2) = 0`, `O(1) = O(2) = 1`. Returns entries `1..=n`.
pub fn parity_split_recurrence(n: usize) -> Vec<ParitySplit> {
    let mut out: Vec<ParitySplit> = Vec::with_capacity(n);
    for k in 1..=n {
        let next = if k <= 2 {
            ParitySplit {
                even: BigUint::zero(),
                odd: BigUint::one(),
            }
        } else {
            let a = &out[k - 2];
            let b = &out[k - 3];
            ParitySplit {
                even: &a.even + &b.odd,
                odd: &a.odd + &b.even,
            }
        };
        out.push(next);
    }
    out
}

/// Parity split by enumerating distinct partitions of perimeter `n`.
pub fn parity_split_enumerated(n: usize) -> ParitySplit {
    let (even, odd) = enumerate_by_perimeter(n, ConstraintClass::Distinct).fold((0usize, 0usize), |(e, o), p| {
        if p.len() % 2 == 0 {
            (e + 1, o)
        } else {
            (e, o + 1)
        }
    });
    ParitySplit {
        even: even.into(),
        odd: odd.into(),
    }
}

/// `(h_{D,E}(n), h_{D,O}(n))` via the binomial sums.
pub fn count_parity_split(n: usize) -> ParitySplit {
    assert!(n >= 1, "perimeter must be positive");
    let split = parity_split_binomial(n);
    debug_assert_eq!(Some(&split), parity_split_recurrence(n).last());
    split
}

/// `e(n)`: 0 for `n ≡ 0, 3`, −1 for `n ≡ 1, 2`, +1 for `n ≡ 4, 5 (mod 6)`.
pub fn excess_e(n: u64) -> i64 {
    match n % 6 {
        0 | 3 => 0,
        1 | 2 => -1,
        _ => 1,
    }
}

/// `F₀ = 0`, `F₁ = F₂ = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Partitions of every size `1..=max_size`, size-major and lexicographically
/// decreasing within a size.
pub fn enumerate_by_size(max_size: u32, distinct_only: bool) -> impl Iterator<Item = Partition> {
    (1..=max_size).flat_map(move |n| {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        partitions_of(n, n, distinct_only, &mut prefix, &mut out);
        out.into_iter()
    })
}

fn partitions_of(remaining: u32, max_part: u32, distinct: bool, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted_unchecked(prefix.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        prefix.push(part);
        let next_max = if distinct { part - 1 } else { part };
        partitions_of(remaining - part, next_max, distinct, prefix, out);
        prefix.pop();
    }
}

/// `(Q_e(r, n), Q_o(r, n))`: distinct partitions of `n` with `π₁ + ℓ = r`,
/// split by the parity of `ℓ`.
pub fn q_eo(r: u64, n: u32) -> (u64, u64) {
    let mut out = Vec::new();
    partitions_of(n, n, true, &mut Vec::new(), &mut out);
    out.iter()
        .filter(|p| u64::from(p.largest()) + p.len() as u64 == r)
        .fold(
            (0, 0),
            |(e, o), p| {
                if p.len() % 2 == 0 {
                    (e + 1, o)
                } else {
                    (e, o + 1)
                }
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn list(n: usize, c: ConstraintClass) -> Vec<Partition> {
        enumerate_by_perimeter(n, c).collect()
    }

    #[test]
    fn perimeter_streams() {
        assert_eq!(list(1, ConstraintClass::Unrestricted), vec![p(&[1])]);
        assert_eq!(
            list(7, ConstraintClass::DDistinct(2)),
            vec![p(&[7]), p(&[6, 4]), p(&[6, 3]), p(&[6, 2]), p(&[6, 1]), p(&[5, 3, 1])]
        );
        let four: Vec<_> = list(9, ConstraintClass::Distinct)
            .into_iter()
            .filter(|q| q.len() == 4)
            .collect();
        assert_eq!(four.len(), 10);
        assert_eq!(four.first(), Some(&p(&[6, 5, 4, 3])));
        assert_eq!(four.last(), Some(&p(&[6, 3, 2, 1])));
    }

    #[test]
    fn counts() {
        assert_eq!(count_by_perimeter(3, ConstraintClass::Unrestricted), 4u32.into());
        assert_eq!(count_by_perimeter(5, ConstraintClass::Distinct), 5u32.into());
        assert_eq!(count_by_perimeter(5, ConstraintClass::Odd), 5u32.into());
        assert_eq!(count_by_perimeter(7, ConstraintClass::GClass(2)), 6u32.into());
        let table4: Vec<BigUint> = (1..=7)
            .map(|n| count_by_perimeter(n, ConstraintClass::DDistinct(2)))
            .collect();
        let expect: Vec<BigUint> = [1u32, 1, 1, 2, 3, 4, 6].iter().map(|&v| v.into()).collect();
        assert_eq!(table4, expect);
    }

    #[test]
    fn refined_examples() {
        let c = |n, k, cl| count_refined(n, k, cl).unwrap();
        assert_eq!(
            c(9, RefinementKey::NumParts(4), ConstraintClass::Distinct),
            10u32.into()
        );
        assert_eq!(
            c(8, RefinementKey::LargestPart(6), ConstraintClass::Distinct),
            10u32.into()
        );
        assert_eq!(c(7, RefinementKey::Rank(2), ConstraintClass::Distinct), 6u32.into());
        assert_eq!(c(7, RefinementKey::Rank(1), ConstraintClass::Distinct), 0u32.into());
        assert_eq!(c(7, RefinementKey::Rank(-2), ConstraintClass::Distinct), 0u32.into());
        assert_eq!(c(9, RefinementKey::LargestPart(7), ConstraintClass::Odd), 10u32.into());
        assert_eq!(c(9, RefinementKey::LargestPart(6), ConstraintClass::Odd), 0u32.into());
        assert_eq!(c(7, RefinementKey::NumParts(3), ConstraintClass::Odd), 6u32.into());
        // enumeration fallback
        assert_eq!(
            c(7, RefinementKey::NumParts(2), ConstraintClass::GClass(2)),
            1u32.into()
        );
        assert!(matches!(
            count_refined(40, RefinementKey::Rank(0), ConstraintClass::GClass(2)),
            Err(EnumerateError::InvalidKeyForClass { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        let s = count_parity_split(1);
        assert_eq!((s.even, s.odd), (0u32.into(), 1u32.into()));
        let s = count_parity_split(5);
        assert_eq!((s.even.clone(), s.odd.clone()), (3u32.into(), 2u32.into()));
        assert_eq!(s.excess(), 1);
        let s = count_parity_split(3);
        assert_eq!((s.even.clone(), s.odd.clone()), (1u32.into(), 1u32.into()));
        assert_eq!(s.excess(), 0);
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess_e(1), -1);
        assert_eq!(excess_e(4), 1);
        assert_eq!(excess_e(12), 0);
        for n in 4..=60 {
            assert_eq!(excess_e(n), -excess_e(n - 3));
        }
    }

    #[test]
    fn size_streams() {
        let mut d3: Vec<_> = enumerate_by_size(3, true).collect();
        d3.sort();
        let mut expect = vec![p(&[1]), p(&[2]), p(&[2, 1]), p(&[3])];
        expect.sort();
        assert_eq!(d3, expect);
        assert_eq!(enumerate_by_size(5, false).filter(|q| q.size() == 5).count(), 7);
        let hits: Vec<_> = enumerate_by_size(7, true)
            .filter(|q| q.size() == 7 && q.largest() as usize + q.len() == 6 && q.len() % 2 == 0)
            .collect();
        assert_eq!(hits, vec![p(&[4, 3])]);
    }

    #[test]
    fn q_eo_examples() {
        assert_eq!(q_eo(6, 7), (1, 0));
        assert_eq!(q_eo(2, 1), (0, 1));
        // (3,2) is the only distinct partition of 5 with π₁ + ℓ = 5
        assert_eq!(q_eo(5, 5), (1, 0));
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), 0u32.into());
        assert_eq!(fibonacci(1), 1u32.into());
        assert_eq!(fibonacci(9), 34u32.into());
        assert_eq!(fibonacci(12), 144u32.into());
        assert_eq!(fibonacci(60), 1548008755920u64.into());
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 3), 10u32.into());
        assert_eq!(binomial(-1, 0), 0u32.into());
        assert_eq!(binomial(3, 4), 0u32.into());
        assert_eq!(binomial(0, 0), 1u32.into());
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }
}
