use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SeriesError;

/// Formal variables. `A`, `B`, `T` are auxiliary parameters used by the
/// basic hypergeometric identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    A,
    B,
    T,
    Q,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::A, Var::B, Var::T, Var::Q];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::A => "a",
            Var::B => "b",
            Var::T => "t",
            Var::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Declared variable set of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarSet(u8);

impl VarSet {
    pub fn new(vars: &[Var]) -> Self {
        let mut bits = 1 << Var::Q.index();
        for v in vars {
            bits |= 1 << v.index();
        }
        VarSet(bits)
    }

    pub fn xyq() -> Self {
        Self::new(&[Var::X, Var::Y, Var::Q])
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 >> v.index() & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |&v| self.contains(v))
    }
}

/// Exponent vector indexed by [`Var`]. Ordered by q-degree first, then
/// lexicographically over `x, y, a, b, t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 6]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 6]);

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut e = [0; 6];
        for &(v, k) in pairs {
            e[v.index()] += k;
        }
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn q_degree(&self) -> u32 {
        self.exponent(Var::Q)
    }

    pub fn with_exponent(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn uses_only(&self, vars: VarSet) -> bool {
        Var::ALL.into_iter().all(|v| self.exponent(v) == 0 || vars.contains(v))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q_degree()
            .cmp(&other.q_degree())
            .then_with(|| self.0[..5].cmp(&other.0[..5]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a declared variable set with integer
/// coefficients, truncated above q-degree `qbound`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    qbound: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    /// q-bound of exact (untruncated) polynomials.
    pub const UNBOUNDED: u32 = u32::MAX;

    pub fn zero(vars: VarSet, qbound: u32) -> Self {
        Self {
            vars,
            qbound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, qbound: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars, qbound);
        p.add_term(Monomial::ONE, c.into());
        p
    }

    pub fn one(vars: VarSet, qbound: u32) -> Self {
        Self::constant(vars, qbound, 1)
    }

    /// `coeff · ∏ vᵉ`. Panics if a variable is not in `vars`.
    pub fn monomial(vars: VarSet, qbound: u32, coeff: impl Into<BigInt>, pairs: &[(Var, u32)]) -> Self {
        let m = Monomial::from_pairs(pairs);
        assert!(m.uses_only(vars), "monomial uses an undeclared variable");
        let mut p = Self::zero(vars, qbound);
        p.add_term(m, coeff.into());
        p
    }

    /// Build from raw terms; zero coefficients and terms above `qbound`
    /// are dropped.
    pub fn from_terms<I>(vars: VarSet, qbound: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Self::zero(vars, qbound);
        for (m, c) in terms {
            if !m.uses_only(vars) {
                return Err(SeriesError::VariableMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.q_degree() > self.qbound || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn qbound(&self) -> u32 {
        self.qbound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, pairs: &[(Var, u32)]) -> BigInt {
        self.terms
            .get(&Monomial::from_pairs(pairs))
            .cloned()
            .unwrap_or_default()
    }

    /// True when the q-free part is exactly the constant 1.
    pub fn has_unit_constant(&self) -> bool {
        let mut constant = self.q_component(0);
        matches!(
            (constant.next(), constant.next()),
            (Some((m, c)), None) if *m == Monomial::ONE && c.is_one()
        )
    }

    /// Highest q-degree of a stored term.
    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::q_degree).max()
    }

    /// Lowest q-degree of a stored term.
    pub fn q_order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::q_degree)
    }

    /// The terms of q-degree exactly `k`.
    pub fn q_component(&self, k: u32) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms
            .range(Monomial::ONE.with_exponent(Var::Q, k)..)
            .take_while(move |(m, _)| m.q_degree() == k)
    }

    /// Drops every term above `qbound` and lowers the recorded bound.
    pub fn truncate(&self, qbound: u32) -> MultiPoly {
        let qbound = qbound.min(self.qbound);
        MultiPoly {
            vars: self.vars,
            qbound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q_degree() <= qbound)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Same terms over a larger variable set.
    pub fn widen(&self, vars: VarSet) -> Result<MultiPoly, SeriesError> {
        if !Var::ALL.into_iter().all(|v| !self.vars.contains(v) || vars.contains(v)) {
            return Err(SeriesError::VariableMismatch);
        }
        Ok(MultiPoly { vars, ..self.clone() })
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), SeriesError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, SeriesError> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.qbound);
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, SeriesError> {
        self.checked_add(&-other)
    }

    /// Product truncated at the smaller of the two bounds.
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, SeriesError> {
        self.check_vars(other)?;
        let qbound = self.qbound.min(other.qbound);
        let mut out = MultiPoly::zero(self.vars, qbound);
        for (ma, ca) in &self.terms {
            if ma.q_degree() > qbound {
                break;
            }
            for (mb, cb) in &other.terms {
                if u64::from(ma.q_degree()) + u64::from(mb.q_degree()) > u64::from(qbound) {
                    break;
                }
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars, self.qbound);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Multiply by a monomial of the same ring.
    pub fn shift(&self, by: &Monomial) -> MultiPoly {
        assert!(by.uses_only(self.vars), "monomial uses an undeclared variable");
        let mut out = MultiPoly::zero(self.vars, self.qbound);
        for (m, c) in &self.terms {
            out.add_term(m.times(by), c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.vars, self.qbound);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest `deg_x + deg_y − deg_q` over the stored terms.
    pub fn max_xy_excess(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| i64::from(m.exponent(Var::X)) + i64::from(m.exponent(Var::Y)) - i64::from(m.q_degree()))
            .max()
    }

    /// JSON term list, canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            exponents: BTreeMap<&'static str, u32>,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.to_string(),
                exponents: Var::ALL
                    .into_iter()
                    .filter(|&v| m.exponent(v) > 0)
                    .map(|v| (v.name(), m.exponent(v)))
                    .collect(),
            })
            .collect();
        serde_json::json!({
            "qbound": if self.qbound == Self::UNBOUNDED { None } else { Some(self.qbound) },
            "terms": terms,
        })
    }
}

/// Variable order inside a printed term; `q` goes last.
const PRINT_ORDER: [Var; 6] = [Var::X, Var::Y, Var::A, Var::B, Var::T, Var::Q];

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, coeff: &BigInt) -> fmt::Result {
    let mag = coeff.abs();
    let mut first = true;
    if !mag.is_one() || *m == Monomial::ONE {
        write!(f, "{mag}")?;
        first = false;
    }
    for v in PRINT_ORDER {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v.name())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    /// Canonical text form, e.g. `x*y*q + x^2*y*q^2 - 2*q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, m, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.qbound == Self::UNBOUNDED {
            write!(f, "MultiPoly({self})")
        } else {
            write!(f, "MultiPoly({self} + O(q^{}))", u64::from(self.qbound) + 1)
        }
    }
}

/// Arithmetic operators panic on a variable-set mismatch; use the
/// `checked_*` methods where that can happen.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable sets differ")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable sets differ")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable sets differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            qbound: self.qbound,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
