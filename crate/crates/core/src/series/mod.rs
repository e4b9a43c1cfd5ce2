//! Exact truncated power series in `q` with polynomial coefficients in
//! `x, y` (and the auxiliary `a, b, t`), plus the rational generating
//! functions of each partition class.

mod poly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use poly::{Monomial, MultiPoly, Var, VarSet};

use crate::partition::ConstraintClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands are declared over different variable sets")]
    VariableMismatch,
    #[error("the q-constant part of the series is not exactly 1")]
    NonUnitConstantTerm,
    #[error("denominator has no unit constant term")]
    NonUnitDenominator,
}

pub fn poly_add(p: &MultiPoly, r: &MultiPoly) -> Result<MultiPoly, SeriesError> {
    p.checked_add(r)
}

pub fn poly_mul(p: &MultiPoly, r: &MultiPoly) -> Result<MultiPoly, SeriesError> {
    p.checked_mul(r)
}

/// `1 / p` truncated at `qbound`, solved one q-degree at a time:
/// `r₀ = 1`, `r_k = −Σ_{j=1..k} p_j · r_{k−j}`.
pub fn series_inverse(p: &MultiPoly, qbound: u32) -> Result<MultiPoly, SeriesError> {
    let qbound = qbound.min(p.qbound());
    if !p.has_unit_constant() {
        return Err(SeriesError::NonUnitConstantTerm);
    }
    let graded: Vec<Vec<(Monomial, BigInt)>> = (0..=qbound)
        .map(|k| p.q_component(k).map(|(m, c)| (*m, c.clone())).collect())
        .collect();
    let mut inv: Vec<BTreeMap<Monomial, BigInt>> = Vec::with_capacity(qbound as usize + 1);
    inv.push(BTreeMap::from([(Monomial::ONE, BigInt::one())]));
    for k in 1..=qbound as usize {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for j in 1..=k {
            for (mp, cp) in &graded[j] {
                for (mr, cr) in &inv[k - j] {
                    *acc.entry(mp.times(mr)).or_default() -= cp * cr;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        inv.push(acc);
    }
    MultiPoly::from_terms(p.vars(), qbound, inv.into_iter().flat_map(|level| level.into_iter()))
}

/// `(base; q)_n = ∏_{k=0}^{n−1} (1 − base·q^k)`, truncated at `qbound`.
pub fn pochhammer(base: &MultiPoly, n: u32, qbound: u32) -> MultiPoly {
    let vars = base.vars();
    let qbound = qbound.min(base.qbound());
    let one = MultiPoly::one(vars, qbound);
    let base = base.truncate(qbound);
    (0..n).fold(one.clone(), |acc, k| {
        let factor = &one - &base.shift(&Monomial::from_pairs(&[(Var::Q, k)]));
        &acc * &factor
    })
}

/// Simultaneous substitution `v ↦ assignment[v]`; variables without an
/// entry map to themselves. Images must live in `p`'s variable set and
/// should have no `q`-free part when substituted for `q`.
pub fn substitute(p: &MultiPoly, assignment: &BTreeMap<Var, MultiPoly>) -> Result<MultiPoly, SeriesError> {
    let vars = p.vars();
    let mut qbound = p.qbound();
    for img in assignment.values() {
        if img.vars() != vars {
            return Err(SeriesError::VariableMismatch);
        }
        qbound = qbound.min(img.qbound());
    }
    let image = |v: Var| -> MultiPoly {
        assignment
            .get(&v)
            .map(|img| img.truncate(qbound))
            .unwrap_or_else(|| MultiPoly::monomial(vars, qbound, 1, &[(v, 1)]))
    };
    let mut powers: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
    let mut out = MultiPoly::zero(vars, qbound);
    for (m, c) in p.terms() {
        let mut term = MultiPoly::constant(vars, qbound, c.clone());
        for v in vars.iter() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let pw = powers.entry((v, e)).or_insert_with(|| image(v).pow(e));
            term = &term * pw;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Convenience: substitute integer constants for variables.
pub fn evaluate(p: &MultiPoly, values: &[(Var, i64)]) -> Result<MultiPoly, SeriesError> {
    let assignment = values
        .iter()
        .map(|&(v, c)| (v, MultiPoly::constant(p.vars(), p.qbound(), c)))
        .collect();
    substitute(p, &assignment)
}

/// `numerator / denominator` where the denominator has constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl RationalGF {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self, SeriesError> {
        if numerator.vars() != denominator.vars() {
            return Err(SeriesError::VariableMismatch);
        }
        if !denominator.has_unit_constant() {
            return Err(SeriesError::NonUnitDenominator);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn substitute(&self, assignment: &BTreeMap<Var, MultiPoly>) -> Result<Self, SeriesError> {
        Self::new(
            substitute(&self.numerator, assignment)?,
            substitute(&self.denominator, assignment)?,
        )
    }

    pub fn evaluate(&self, values: &[(Var, i64)]) -> Result<Self, SeriesError> {
        Self::new(evaluate(&self.numerator, values)?, evaluate(&self.denominator, values)?)
    }
}

/// Power-series expansion of `gf` up to q-degree `qbound`.
///
/// The result is checked by multiplying back against the denominator.
pub fn expand(gf: &RationalGF, qbound: u32) -> Result<MultiPoly, SeriesError> {
    let inv = series_inverse(&gf.denominator.truncate(qbound), qbound).map_err(|_| SeriesError::NonUnitDenominator)?;
    let out = &gf.numerator.truncate(qbound) * &inv;
    let back = &out * &gf.denominator.truncate(qbound);
    assert_eq!(
        back,
        gf.numerator.truncate(qbound),
        "expansion does not multiply back to the numerator"
    );
    Ok(out)
}

fn xyq(pairs: &[(Var, u32)], coeff: i64) -> MultiPoly {
    MultiPoly::monomial(VarSet::xyq(), MultiPoly::UNBOUNDED, coeff, pairs)
}

/// `xyq / (1 − step)`: a first `E`, a last `N`, and any string of steps.
fn word_gf(steps: &[MultiPoly]) -> RationalGF {
    let one = xyq(&[], 1);
    let denominator = steps.iter().fold(one, |acc, s| &acc - s);
    RationalGF::new(xyq(&[(Var::X, 1), (Var::Y, 1), (Var::Q, 1)], 1), denominator).expect("unit denominator")
}

/// Closed rational form of `Σ_{π ∈ class} x^{π₁} y^{ℓ(π)} q^{Γ(π)}`.
pub fn gf_of_class(class: ConstraintClass) -> RationalGF {
    use Var::{Q, X, Y};
    match class {
        ConstraintClass::Unrestricted => word_gf(&[xyq(&[(X, 1), (Q, 1)], 1), xyq(&[(Y, 1), (Q, 1)], 1)]),
        ConstraintClass::Distinct => gf_of_class(ConstraintClass::DDistinct(1)),
        ConstraintClass::Odd => gf_of_class(ConstraintClass::ModOne(1)),
        ConstraintClass::DDistinct(d) => word_gf(&[xyq(&[(X, 1), (Q, 1)], 1), xyq(&[(X, d), (Y, 1), (Q, d + 1)], 1)]),
        ConstraintClass::ModOne(d) => word_gf(&[xyq(&[(Y, 1), (Q, 1)], 1), xyq(&[(X, d + 1), (Q, d + 1)], 1)]),
        ConstraintClass::GClass(d) => {
            let numerator = &xyq(&[(X, 1), (Y, 1), (Q, 1)], 1)
                * &(&(&xyq(&[], 1) - &xyq(&[(Y, 1), (Q, 1)], 1)) + &xyq(&[(X, d + 1), (Q, d + 1)], 1));
            let denominator = [
                xyq(&[], 1),
                xyq(&[(Y, 1), (Q, 1)], -2),
                xyq(&[(Y, 2), (Q, 2)], 1),
                xyq(&[(X, 2 * d + 1), (Y, 1), (Q, 2 * d + 2)], -1),
            ]
            .iter()
            .fold(xyq(&[], 0), |acc, t| &acc + t);
            RationalGF::new(numerator, denominator).expect("unit denominator")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::{Q, X, Y};

    fn ring(qbound: u32) -> impl Fn(i64, &[(Var, u32)]) -> MultiPoly {
        move |c, pairs| MultiPoly::monomial(VarSet::xyq(), qbound, c, pairs)
    }

    fn sum(terms: &[MultiPoly]) -> MultiPoly {
        let mut it = terms.iter();
        let first = it.next().unwrap().clone();
        it.fold(first, |acc, t| &acc + t)
    }

    #[test]
    fn binomial_square() {
        let m = ring(10);
        let s = sum(&[m(1, &[(X, 1), (Q, 1)]), m(1, &[(Y, 1), (Q, 1)])]);
        assert_eq!((&s * &s).to_string(), "y^2*q^2 + 2*x*y*q^2 + x^2*q^2");
    }

    #[test]
    fn truncated_telescoping() {
        let m = ring(3);
        let one_minus = sum(&[m(1, &[]), m(-1, &[(Y, 1), (Q, 1)])]);
        let geo = sum(&[
            m(1, &[]),
            m(1, &[(Y, 1), (Q, 1)]),
            m(1, &[(Y, 2), (Q, 2)]),
            m(1, &[(Y, 3), (Q, 3)]),
        ]);
        assert_eq!((&one_minus * &geo).to_string(), "1");
    }

    #[test]
    fn hand_product() {
        let m = ring(10);
        let a = m(1, &[(X, 1), (Y, 1), (Q, 1)]);
        let b = sum(&[m(1, &[(X, 1), (Q, 1)]), m(1, &[(X, 1), (Y, 1), (Q, 2)])]);
        assert_eq!((&a * &b).to_string(), "x^2*y*q^2 + x^2*y^2*q^3");
    }

    #[test]
    fn variable_mismatch() {
        let a = MultiPoly::one(VarSet::xyq(), 5);
        let b = MultiPoly::one(VarSet::new(&[Var::A]), 5);
        assert_eq!(poly_add(&a, &b), Err(SeriesError::VariableMismatch));
        assert_eq!(poly_mul(&a, &b), Err(SeriesError::VariableMismatch));
    }

    #[test]
    fn bound_is_minimum() {
        let a = MultiPoly::one(VarSet::xyq(), 5);
        let b = MultiPoly::one(VarSet::xyq(), 3);
        assert_eq!((&a * &b).qbound(), 3);
        assert_eq!((&a + &b).qbound(), 3);
    }

    #[test]
    fn expansions() {
        let h = expand(&gf_of_class(ConstraintClass::Unrestricted), 3).unwrap();
        assert_eq!(
            h.to_string(),
            "x*y*q + x*y^2*q^2 + x^2*y*q^2 + x*y^3*q^3 + 2*x^2*y^2*q^3 + x^3*y*q^3"
        );
        let hd = expand(&gf_of_class(ConstraintClass::Distinct), 3).unwrap();
        assert_eq!(hd.to_string(), "x*y*q + x^2*y*q^2 + x^2*y^2*q^3 + x^3*y*q^3");
        let m = ring(MultiPoly::UNBOUNDED);
        let geo = RationalGF::new(m(1, &[]), sum(&[m(1, &[]), m(-1, &[(Q, 1)])])).unwrap();
        assert_eq!(expand(&geo, 2).unwrap().to_string(), "1 + q + q^2");
    }

    #[test]
    fn non_unit_denominator() {
        let m = ring(MultiPoly::UNBOUNDED);
        assert_eq!(
            RationalGF::new(m(1, &[]), m(2, &[])),
            Err(SeriesError::NonUnitDenominator)
        );
        assert_eq!(
            RationalGF::new(m(1, &[]), sum(&[m(1, &[]), m(1, &[(X, 1)])])),
            Err(SeriesError::NonUnitDenominator)
        );
        assert_eq!(
            series_inverse(&m(1, &[(Q, 1)]), 4),
            Err(SeriesError::NonUnitConstantTerm)
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            gf_of_class(ConstraintClass::Distinct).denominator().to_string(),
            "1 - x*q - x*y*q^2"
        );
        let g1 = gf_of_class(ConstraintClass::GClass(1));
        assert_eq!(g1.numerator().to_string(), "x*y*q - x*y^2*q^2 + x^3*y*q^3");
        assert_eq!(g1.denominator().to_string(), "1 - 2*y*q + y^2*q^2 - x^3*y*q^4");
        let h = gf_of_class(ConstraintClass::Unrestricted)
            .evaluate(&[(X, 1), (Y, 1)])
            .unwrap();
        assert_eq!(h.numerator().to_string(), "q");
        assert_eq!(h.denominator().to_string(), "1 - 2*q");
    }

    #[test]
    fn pochhammer_examples() {
        let yq = ring(10)(1, &[(Y, 1), (Q, 1)]);
        assert_eq!(pochhammer(&yq, 2, 10).to_string(), "1 - y*q - y*q^2 + y^2*q^3");
        assert_eq!(pochhammer(&yq, 0, 10).to_string(), "1");
        assert_eq!(pochhammer(&-&yq, 2, 10).to_string(), "1 + y*q + y*q^2 + y^2*q^3");
    }

    #[test]
    fn inverses() {
        let m = ring(4);
        let inv = series_inverse(&sum(&[m(1, &[]), m(-1, &[(Q, 1)])]), 4).unwrap();
        assert_eq!(inv.to_string(), "1 + q + q^2 + q^3 + q^4");
        let inv = series_inverse(&sum(&[m(1, &[]), m(-1, &[(Y, 1), (Q, 1)])]), 2).unwrap();
        assert_eq!(inv.to_string(), "1 + y*q + y^2*q^2");
        // 1/(xq;q)_2 = 1/((1 - xq)(1 - xq^2)), fixed by multiplying back
        let xq = m(1, &[(X, 1), (Q, 1)]);
        let p2 = pochhammer(&xq, 2, 3);
        let inv = series_inverse(&p2, 3).unwrap();
        assert_eq!((&p2 * &inv).to_string(), "1");
        assert_eq!(inv.to_string(), "1 + x*q + x*q^2 + x^2*q^2 + x^2*q^3 + x^3*q^3");
    }

    #[test]
    fn substitutions() {
        let hd = expand(&gf_of_class(ConstraintClass::Distinct), 5).unwrap();
        assert_eq!(
            evaluate(&hd, &[(X, 1), (Y, 1)]).unwrap().to_string(),
            "q + q^2 + 2*q^3 + 3*q^4 + 5*q^5"
        );
        let hd = expand(&gf_of_class(ConstraintClass::Distinct), 6).unwrap();
        assert_eq!(
            evaluate(&hd, &[(X, 1), (Y, -1)]).unwrap().to_string(),
            "-q - q^2 + q^4 + q^5"
        );
        let m = ring(6);
        let swap = BTreeMap::from([(X, m(1, &[(Y, 1)])), (Y, m(-1, &[(Y, 1)]))]);
        let p = sum(&[m(1, &[(X, 1), (Y, 1), (Q, 1)]), m(3, &[(X, 2), (Q, 2)])]);
        assert_eq!(substitute(&p, &swap).unwrap().to_string(), "-y^2*q + 3*y^2*q^2");
    }

    #[test]
    fn json_terms() {
        let m = ring(4);
        let p = sum(&[m(2, &[(X, 2), (Q, 3)]), m(-1, &[])]);
        let j = p.to_json();
        assert_eq!(j["qbound"], 4);
        assert_eq!(j["terms"][0]["coeff"], "-1");
        assert_eq!(j["terms"][1]["exponents"]["x"], 2);
        assert_eq!(j["terms"][1]["exponents"]["q"], 3);
    }
}
