use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumerate::{
    count_by_perimeter, count_parity_split, count_refined, enumerate_by_perimeter, enumerate_by_size, excess_e,
    fibonacci, parity_split_binomial, parity_split_enumerated, parity_split_recurrence, RefinementKey,
    MAX_ENUMERATION_PERIMETER,
};
use crate::partition::{ConstraintClass, Partition};
use crate::profile::{block_sequences, blocks_to_partition, decompose_blocks, to_profile};
use crate::series::{
    expand, gf_of_class, pochhammer, series_inverse, substitute, Monomial, MultiPoly, RationalGF, Var, VarSet,
};

use super::franklin::{franklin, FranklinOutcome};
use super::{check_depth, Counterexample, IdentityError, Probe, TheoremReport};

/// Arguments up to this perimeter are also counted by enumeration.
const SPOT_LIMIT: u32 = 16;

const MAX_QBOUND: u32 = 40;

fn partition_key(n: u64, p: &Partition) -> Vec<i64> {
    std::iter::once(n as i64)
        .chain(p.parts().iter().map(|&v| i64::from(v)))
        .collect()
}

/// Pascal's triangle, rows `0..=rows`.
fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for r in 1..=rows {
        let prev = &t[r - 1];
        let row = (0..=r)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { BigUint::zero() };
                let right = prev.get(k).cloned().unwrap_or_default();
                left + right
            })
            .collect();
        t.push(row);
    }
    t
}

fn choose(t: &[Vec<BigUint>], n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    t[n as usize][k as usize].clone()
}

/// `h(n) = 2^(n−1)` over every profile word of length `n + 1`.
pub fn verify_perimeter_count(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, MAX_ENUMERATION_PERIMETER as u32)?;
    let mut probe = Probe::start("perimeter-count").param("max_n", max_n);
    for n in 1..=max_n {
        let list: Vec<Partition> = enumerate_by_perimeter(n as usize, ConstraintClass::Unrestricted).collect();
        for p in &list {
            if p.perimeter() != u64::from(n) {
                probe.fail(partition_key(n.into(), p), || {
                    Counterexample::new("perimeter of enumerated partition")
                        .input("n", n)
                        .witness(p.clone())
                        .values(p.perimeter(), n)
                });
            }
        }
        if let Some(w) = list.windows(2).find(|w| w[0] <= w[1]) {
            probe.fail(partition_key(n.into(), &w[1]), || {
                Counterexample::new("stream strictly decreasing")
                    .input("n", n)
                    .witness(w[0].clone())
                    .witness(w[1].clone())
                    .values("not decreasing", "decreasing")
            });
        }
        probe.expect_eq(
            vec![n.into()],
            BigUint::from(list.len()),
            BigUint::one() << (n - 1),
            || Counterexample::new("h(n) = 2^(n-1)").input("n", n),
        );
    }
    Ok(probe.finish())
}

/// `h_D(n) = h_O(n) = F_n`.
pub fn verify_euler_analogue(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, 10_000)?;
    let mut probe = Probe::start("euler-analogue")
        .param("max_n", max_n)
        .param("enumeration_max", SPOT_LIMIT.min(max_n));
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for n in 1..=max_n {
        let fib = b.clone();
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
        let cx = || Counterexample::new("h_D(n) = h_O(n) = F_n").input("n", n);
        probe.expect_eq(
            vec![n.into(), 0],
            count_by_perimeter(n as usize, ConstraintClass::Distinct),
            fib.clone(),
            cx,
        );
        probe.expect_eq(
            vec![n.into(), 1],
            count_by_perimeter(n as usize, ConstraintClass::Odd),
            fib.clone(),
            cx,
        );
        if n <= SPOT_LIMIT {
            let d = enumerate_by_perimeter(n as usize, ConstraintClass::Distinct).count();
            let o = enumerate_by_perimeter(n as usize, ConstraintClass::Odd).count();
            probe.expect_eq(vec![n.into(), 2], BigUint::from(d), fib.clone(), || {
                cx().input("side", "distinct, enumerated")
            });
            probe.expect_eq(vec![n.into(), 3], BigUint::from(o), fib, || {
                cx().input("side", "odd, enumerated")
            });
        }
    }
    Ok(probe.finish())
}

/// The three refinements pairing distinct and odd partitions of equal
/// perimeter, each against its binomial count.
pub fn verify_refinements(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, MAX_ENUMERATION_PERIMETER as u32)?;
    let mut probe = Probe::start("refinements").param("max_n", max_n);
    let t = pascal(2 * max_n as usize + 2);
    for n in 1..=max_n {
        let ni = i64::from(n);
        let distinct: Vec<Partition> = enumerate_by_perimeter(n as usize, ConstraintClass::Distinct).collect();
        let odd: Vec<Partition> = enumerate_by_perimeter(n as usize, ConstraintClass::Odd).collect();
        let count =
            |list: &[Partition], f: &dyn Fn(&Partition) -> bool| BigUint::from(list.iter().filter(|p| f(p)).count());
        for k in 0..=ni + 1 {
            let mut claims: Vec<(&str, BigUint, BigUint, BigUint, Option<BigUint>)> = Vec::new();
            if k >= 1 {
                let ku = k as u32;
                claims.push((
                    "distinct with k parts = odd with largest part 2k-1 = C(n-k, k-1)",
                    count(&distinct, &|p| p.len() as i64 == k),
                    count(&odd, &|p| i64::from(p.largest()) == 2 * k - 1),
                    choose(&t, ni - k, k - 1),
                    count_refined(n as usize, RefinementKey::NumParts(ku), ConstraintClass::Distinct).ok(),
                ));
                claims.push((
                    "distinct with largest part k = odd with largest + 2*length = 2k+1 = C(k-1, n-k)",
                    count(&distinct, &|p| i64::from(p.largest()) == k),
                    count(&odd, &|p| i64::from(p.largest()) + 2 * p.len() as i64 == 2 * k + 1),
                    choose(&t, k - 1, ni - k),
                    count_refined(n as usize, RefinementKey::LargestPart(ku), ConstraintClass::Distinct).ok(),
                ));
            }
            let rank_bin = if (ni - 1 - k).is_even() {
                choose(&t, (ni + k - 1) / 2, k)
            } else {
                BigUint::zero()
            };
            claims.push((
                "distinct with rank k = odd with k+1 parts = C((n+k-1)/2, k)",
                count(&distinct, &|p| p.rank() == k),
                count(&odd, &|p| p.len() as i64 == k + 1),
                rank_bin,
                count_refined(n as usize, RefinementKey::Rank(k), ConstraintClass::Distinct).ok(),
            ));
            for (idx, (claim, d, o, bin, lib)) in claims.into_iter().enumerate() {
                let key = vec![ni, idx as i64, k];
                let cx = || Counterexample::new(claim).input("n", n).input("k", k);
                probe.expect_eq(key.clone(), d.clone(), o, || cx().input("sides", "distinct vs odd"));
                probe.expect_eq(key.clone(), d.clone(), bin, || {
                    cx().input("sides", "distinct vs binomial")
                });
                match lib {
                    Some(v) => probe.expect_eq(key, d, v, || cx().input("sides", "distinct vs count_refined")),
                    None => probe.fail(key, || cx().values("count_refined error", d)),
                }
            }
        }
    }
    Ok(probe.finish())
}

/// `e(n) = h_{D,E}(n) − h_{D,O}(n)` by closed form, recurrences, binomial
/// sums, enumeration and the series `H_D(1, −1, q) = −q/(1 − q + q²)`.
pub fn verify_pentagonal_analogue(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, 2_000)?;
    let mut probe = Probe::start("pentagonal-analogue")
        .param("max_n", max_n)
        .param("enumeration_max", SPOT_LIMIT.min(max_n));
    let rec = parity_split_recurrence(max_n as usize);
    let qonly = VarSet::new(&[Var::Q]);
    let q = |c: i64, e: u32| MultiPoly::monomial(qonly, MultiPoly::UNBOUNDED, c, &[(Var::Q, e)]);
    let closed = RationalGF::new(q(-1, 1), &(&q(1, 0) - &q(1, 1)) + &q(1, 2))
        .and_then(|gf| expand(&gf, max_n))
        .expect("unit denominator");
    let specialised = gf_of_class(ConstraintClass::Distinct)
        .evaluate(&[(Var::X, 1), (Var::Y, -1)])
        .and_then(|gf| expand(&gf, max_n))
        .expect("unit denominator");
    for n in 1..=max_n {
        let e = excess_e(n.into());
        let cx = |how: &'static str| {
            move || {
                Counterexample::new("e(n) closed form")
                    .input("n", n)
                    .input("method", how)
            }
        };
        let key = |i: i64| vec![i64::from(n), i];
        probe.expect_eq(key(0), rec[n as usize - 1].excess(), e, cx("recurrence"));
        let bin = parity_split_binomial(n as usize);
        probe.expect_eq(key(1), bin.excess(), e, cx("binomial sums"));
        probe.expect_eq(
            key(2),
            bin.total(),
            fibonacci(n.into()),
            cx("binomial sums total vs F_n"),
        );
        if n <= SPOT_LIMIT {
            probe.expect_eq(
                key(3),
                parity_split_enumerated(n as usize).excess(),
                e,
                cx("enumeration"),
            );
        }
        probe.expect_eq(
            key(4),
            closed.coefficient(&[(Var::Q, n)]),
            BigInt::from(e),
            cx("-q/(1-q+q^2)"),
        );
        probe.expect_eq(
            key(5),
            specialised.coefficient(&[(Var::Q, n)]),
            BigInt::from(e),
            cx("H_D(1,-1,q)"),
        );
        if n >= 4 {
            probe.expect_eq(key(6), e, -excess_e(u64::from(n) - 3), cx("e(n) = -e(n-3)"));
        }
    }
    Ok(probe.finish())
}

fn lagged(d: u32, max_n: u32) -> Vec<BigUint> {
    let d = d as usize;
    let mut c = vec![BigUint::zero()];
    for k in 1..=max_n as usize {
        let v = if k <= d + 1 {
            BigUint::one()
        } else {
            &c[k - 1] + &c[k - 1 - d]
        };
        c.push(v);
    }
    c
}

/// `h_d(n) = f_d(n) = g_d(n)`, with `g_d` computed both by the membership
/// predicate and by generating block sequences.
pub fn verify_d_chain(d: u32, max_n: u32) -> Result<TheoremReport, IdentityError> {
    if d < 1 {
        return Err(IdentityError::InvalidD);
    }
    check_depth("max_n", max_n, 1, MAX_ENUMERATION_PERIMETER as u32)?;
    let mut probe = Probe::start("d-chain").param("d", d).param("max_n", max_n);
    let rec = lagged(d, max_n);
    for n in 1..=max_n {
        let ni = i64::from(n);
        let all: Vec<Partition> = enumerate_by_perimeter(n as usize, ConstraintClass::Unrestricted).collect();
        let members = |c: ConstraintClass| all.iter().filter(|p| p.is_member(c)).cloned().collect::<Vec<_>>();
        let h = members(ConstraintClass::DDistinct(d));
        let f = members(ConstraintClass::ModOne(d));
        let g = members(ConstraintClass::GClass(d));
        let cx = |what: &'static str| move || Counterexample::new(what).input("d", d).input("n", n);
        probe.expect_eq(
            vec![ni, 0],
            BigUint::from(h.len()),
            rec[n as usize].clone(),
            cx("h_d(n) = c(n)"),
        );
        probe.expect_eq(
            vec![ni, 1],
            BigUint::from(f.len()),
            rec[n as usize].clone(),
            cx("f_d(n) = c(n)"),
        );
        probe.expect_eq(
            vec![ni, 2],
            BigUint::from(g.len()),
            rec[n as usize].clone(),
            cx("g_d(n) = c(n)"),
        );
        probe.expect_eq(
            vec![ni, 3],
            count_by_perimeter(n as usize, ConstraintClass::GClass(d)),
            rec[n as usize].clone(),
            cx("count_by_perimeter = c(n)"),
        );

        let mut generated: Vec<Partition> = block_sequences(n as usize, d)
            .iter()
            .map(|b| blocks_to_partition(b, d))
            .collect();
        generated.sort_unstable_by(|a, b| b.cmp(a));
        if generated != g {
            let witness = generated
                .iter()
                .filter(|p| !g.contains(p))
                .chain(g.iter().filter(|p| !generated.contains(p)))
                .min()
                .cloned();
            probe.fail(vec![ni, 4], || {
                let c = cx("block grammar generates the class")();
                let c = match witness {
                    Some(p) => c.witness(p),
                    None => c,
                };
                c.values(format!("{} generated", generated.len()), format!("{} members", g.len()))
            });
        }
        for p in &all {
            let parsed = decompose_blocks(&to_profile(p), d);
            let member = p.is_member(ConstraintClass::GClass(d));
            if parsed.is_ok() != member {
                probe.fail(partition_key(n.into(), p), || {
                    cx("block parser agrees with membership")()
                        .witness(p.clone())
                        .values(parsed.is_ok(), member)
                });
            } else if let Ok(b) = parsed {
                let back = blocks_to_partition(&b, d);
                if &back != p {
                    probe.fail(partition_key(n.into(), p), || {
                        cx("blocks decode to the parsed partition")()
                            .witness(p.clone())
                            .values(back, p)
                    });
                }
            }
        }
    }
    Ok(probe.finish())
}

fn monomial_text(vars: VarSet, m: &Monomial) -> String {
    let pairs: Vec<(Var, u32)> = vars.iter().map(|v| (v, m.exponent(v))).collect();
    MultiPoly::monomial(vars, MultiPoly::UNBOUNDED, 1, &pairs).to_string()
}

fn monomial_key(m: &Monomial) -> Vec<i64> {
    std::iter::once(m.q_degree())
        .chain(Var::ALL.iter().filter(|&&v| v != Var::Q).map(|&v| m.exponent(v)))
        .map(i64::from)
        .collect()
}

/// Records the lowest monomial at which `left` and `right` differ.
fn compare_series(probe: &mut Probe, tag: i64, claim: &str, left: &MultiPoly, right: &MultiPoly) {
    let qbound = left.qbound().min(right.qbound());
    let (l, r) = (left.truncate(qbound), right.truncate(qbound));
    let mut coeffs: BTreeMap<Monomial, (BigInt, BigInt)> = BTreeMap::new();
    for (m, c) in l.terms() {
        coeffs.entry(*m).or_default().0 = c.clone();
    }
    for (m, c) in r.terms() {
        coeffs.entry(*m).or_default().1 = c.clone();
    }
    if let Some((m, (a, b))) = coeffs.into_iter().find(|(_, (a, b))| a != b) {
        let mut key = monomial_key(&m);
        key.insert(1, tag);
        probe.fail(key, || {
            Counterexample::new(claim)
                .input("monomial", monomial_text(l.vars(), &m))
                .values(a, b)
        });
    }
}

/// Coefficientwise match of the closed generating function of `class`
/// against `Σ x^{π₁} y^{ℓ} q^{Γ}` over enumerated members.
pub fn verify_gf_coefficients(class: ConstraintClass, qbound: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("qbound", qbound, 1, MAX_ENUMERATION_PERIMETER as u32)?;
    let mut probe = Probe::start("gf-coefficients")
        .param("class", class.to_string())
        .param("qbound", qbound);
    let series = expand(&gf_of_class(class), qbound).expect("unit denominator");
    let mut brute = MultiPoly::zero(VarSet::xyq(), qbound);
    for n in 1..=qbound {
        for p in enumerate_by_perimeter(n as usize, class) {
            brute = &brute
                + &MultiPoly::monomial(
                    VarSet::xyq(),
                    qbound,
                    1,
                    &[(Var::X, p.largest()), (Var::Y, p.len() as u32), (Var::Q, n)],
                );
        }
    }
    if let Some(excess) = series.max_xy_excess().filter(|&e| e > 1) {
        probe.fail(vec![0], || {
            Counterexample::new("deg_x + deg_y <= deg_q + 1 on every term").values(excess, 1)
        });
    }
    compare_series(&mut probe, 0, "generating function vs enumeration", &series, &brute);
    Ok(probe.finish())
}

fn pentagonal(k: u64, plus: bool) -> u64 {
    if plus {
        k * (3 * k + 1) / 2
    } else {
        k * (3 * k - 1) / 2
    }
}

/// Franklin's map on distinct partitions of size `≤ max_size`: an
/// involution off its fixed points, flipping length parity and keeping
/// size and perimeter; fixed points sit exactly at the generalised
/// pentagonal numbers with the expected perimeter and sign.
pub fn verify_franklin(max_size: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_size", max_size, 1, 80)?;
    let mut probe = Probe::start("franklin").param("max_size", max_size);
    // size -> (exponent of y, sign) in 1 + Σ (−1)^k (q^{k(3k−1)/2} y^{3k−1} + q^{k(3k+1)/2} y^{3k})
    let mut expected: BTreeMap<u64, (u64, i64)> = BTreeMap::new();
    let mut k = 1;
    while pentagonal(k, false) <= u64::from(max_size) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        expected.insert(pentagonal(k, false), (3 * k - 1, sign));
        if pentagonal(k, true) <= u64::from(max_size) {
            expected.insert(pentagonal(k, true), (3 * k, sign));
        }
        k += 1;
    }
    let mut fixed: BTreeMap<u64, Vec<Partition>> = BTreeMap::new();
    for p in enumerate_by_size(max_size, true) {
        let key = partition_key(p.size(), &p);
        let cx = |claim: &'static str| {
            let p = p.clone();
            move || Counterexample::new(claim).witness(p)
        };
        match franklin(&p)? {
            FranklinOutcome::FixedPoint => fixed.entry(p.size()).or_default().push(p.clone()),
            FranklinOutcome::Moved(image) => {
                probe.expect_eq(key.clone(), image.size(), p.size(), cx("size preserved"));
                probe.expect_eq(key.clone(), image.perimeter(), p.perimeter(), cx("perimeter preserved"));
                probe.expect_eq(key.clone(), (image.len() + p.len()) % 2, 1, cx("length parity flips"));
                if !image.is_distinct() {
                    probe.fail(key.clone(), || {
                        cx("image has distinct parts")().values(&image, "distinct")
                    });
                }
                match franklin(&image)? {
                    FranklinOutcome::Moved(back) => {
                        probe.expect_eq(key, back, p.clone(), cx("franklin is an involution"))
                    }
                    FranklinOutcome::FixedPoint => {
                        probe.fail(key, || cx("franklin is an involution")().values("fixed point", &p))
                    }
                }
            }
        }
    }
    let sizes: Vec<u64> = fixed.keys().copied().collect();
    let want: Vec<u64> = expected.keys().copied().collect();
    if sizes != want {
        let first = sizes
            .iter()
            .filter(|s| !want.contains(s))
            .chain(want.iter().filter(|w| !sizes.contains(w)))
            .min()
            .copied()
            .unwrap_or(0);
        probe.fail(vec![first as i64], || {
            Counterexample::new("fixed points at generalised pentagonal numbers")
                .values(format!("{sizes:?}"), format!("{want:?}"))
        });
    }
    for (size, ps) in &fixed {
        let key = vec![*size as i64];
        let cx = || Counterexample::new("one fixed point per pentagonal size").input("size", *size);
        probe.expect_eq(key.clone(), ps.len(), 1, cx);
        if let (Some(p), Some(&(y_exp, sign))) = (ps.first(), expected.get(size)) {
            let p_sign = if p.len() % 2 == 0 { 1 } else { -1 };
            let cx = || Counterexample::new("fixed point matches the pentagonal series term").witness(p.clone());
            probe.expect_eq(key.clone(), p.perimeter() + 1, y_exp, cx);
            probe.expect_eq(key.clone(), p_sign, sign, cx);
        }
    }
    Ok(probe.finish())
}

fn mono(vars: VarSet, qbound: u32, c: i64, pairs: &[(Var, u32)]) -> MultiPoly {
    MultiPoly::monomial(vars, qbound, c, pairs)
}

fn inverse(p: &MultiPoly, qbound: u32) -> MultiPoly {
    series_inverse(p, qbound).expect("unit constant term")
}

/// `Σ_{n≥0} (−1)^n y^{2n} q^{n(n+1)/2} / (yq; q)_n` over `vars`.
fn andrews_a(vars: VarSet, qbound: u32) -> MultiPoly {
    let yq = mono(vars, qbound, 1, &[(Var::Y, 1), (Var::Q, 1)]);
    let mut out = MultiPoly::zero(vars, qbound);
    let mut n = 0u32;
    while n * (n + 1) / 2 <= qbound {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let lead = mono(vars, qbound, sign, &[(Var::Y, 2 * n), (Var::Q, n * (n + 1) / 2)]);
        out = &out + &(&lead * &inverse(&pochhammer(&yq, n, qbound), qbound));
        n += 1;
    }
    out
}

/// `1 + Σ_{n≥1} (−1)^n (q^{n(3n−1)/2} y^{3n−1} + q^{n(3n+1)/2} y^{3n})`.
fn andrews_c(vars: VarSet, qbound: u32) -> MultiPoly {
    let mut out = MultiPoly::one(vars, qbound);
    let mut n = 1u32;
    while pentagonal(n.into(), false) <= u64::from(qbound) {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        out = &out
            + &mono(
                vars,
                qbound,
                sign,
                &[(Var::Y, 3 * n - 1), (Var::Q, n * (3 * n - 1) / 2)],
            );
        out = &out + &mono(vars, qbound, sign, &[(Var::Y, 3 * n), (Var::Q, n * (3 * n + 1) / 2)]);
        n += 1;
    }
    out
}

fn signed_rq(vars: VarSet, qbound: u32, p: &Partition) -> MultiPoly {
    let sign = if p.len().is_multiple_of(2) { 1 } else { -1 };
    mono(
        vars,
        qbound,
        sign,
        &[(Var::Y, p.largest() + p.len() as u32), (Var::Q, p.size() as u32)],
    )
}

/// The three members of the pentagonal-type identity in `y, q`: the
/// hypergeometric sum, the signed count `Σ (Q_e(r,n) − Q_o(r,n)) y^r q^n`
/// (computed directly and through Franklin's pairing), and the
/// pentagonal-exponent series.
pub fn verify_andrews_identity(qbound: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("qbound", qbound, 1, MAX_QBOUND)?;
    let mut probe = Probe::start("andrews-identity").param("qbound", qbound);
    let vars = VarSet::new(&[Var::Y, Var::Q]);
    let a = andrews_a(vars, qbound);
    let c = andrews_c(vars, qbound);
    let mut b_raw = MultiPoly::one(vars, qbound);
    let mut b_franklin = MultiPoly::one(vars, qbound);
    for p in enumerate_by_size(qbound, true) {
        let term = signed_rq(vars, qbound, &p);
        b_raw = &b_raw + &term;
        match franklin(&p)? {
            FranklinOutcome::FixedPoint => b_franklin = &b_franklin + &term,
            FranklinOutcome::Moved(image) => {
                let partner = signed_rq(vars, qbound, &image);
                if !(&term + &partner).is_zero() {
                    probe.fail(partition_key(p.size(), &p), || {
                        Counterexample::new("franklin pairs cancel")
                            .witness(p.clone())
                            .witness(image.clone())
                            .values(&term, -&partner)
                    });
                }
            }
        }
    }
    compare_series(&mut probe, 0, "A = B (signed count)", &a, &b_raw);
    compare_series(
        &mut probe,
        1,
        "B (signed count) = B (franklin survivors)",
        &b_raw,
        &b_franklin,
    );
    compare_series(&mut probe, 2, "B = C", &b_raw, &c);
    Ok(probe.finish())
}

/// Largest `|π|` over distinct partitions with perimeter `g`.
fn staircase_max(g: u32) -> u32 {
    (1..=g.div_ceil(2))
        .map(|l| l * (g + 1 - l) - l * (l - 1) / 2)
        .max()
        .unwrap_or(0)
}

/// Largest perimeter `g ≤ ⌊√(4·qbound)⌋` all of whose distinct partitions
/// have size at most `qbound`.
fn regrading_bound(qbound: u32) -> u32 {
    let cap = (4 * u64::from(qbound)).isqrt() as u32;
    (1..=cap).rev().find(|&g| staircase_max(g) <= qbound).unwrap_or(0)
}

/// The refined identity in `x, y, q`: the `(xq)_n` sum, the size-graded
/// distinct-partition series, and the `(−yq)_{n−1}` sum. Also checks the
/// `x → y, y → −y` reduction to the pentagonal-type identity and that
/// regrading the middle member by perimeter recovers `H_D`.
pub fn verify_refined_identity(qbound: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("qbound", qbound, 1, MAX_QBOUND)?;
    let regrade = regrading_bound(qbound);
    let mut probe = Probe::start("refined-identity")
        .param("qbound", qbound)
        .param("regrade_max_perimeter", regrade);
    let vars = VarSet::xyq();
    let m = |c: i64, pairs: &[(Var, u32)]| mono(vars, qbound, c, pairs);
    let xq = m(1, &[(Var::X, 1), (Var::Q, 1)]);

    let mut left = MultiPoly::zero(vars, qbound);
    let mut n = 1u32;
    while n * (n + 1) / 2 <= qbound {
        let lead = m(1, &[(Var::X, n), (Var::Y, n), (Var::Q, n * (n + 1) / 2)]);
        left = &left + &(&lead * &inverse(&pochhammer(&xq, n, qbound), qbound));
        n += 1;
    }

    let distinct: Vec<Partition> = enumerate_by_size(qbound, true).collect();
    let mut middle = MultiPoly::zero(vars, qbound);
    for p in &distinct {
        middle = &middle
            + &m(
                1,
                &[
                    (Var::X, p.largest()),
                    (Var::Y, p.len() as u32),
                    (Var::Q, p.size() as u32),
                ],
            );
    }

    let minus_yq = m(-1, &[(Var::Y, 1), (Var::Q, 1)]);
    let mut right = MultiPoly::zero(vars, qbound);
    let mut n = 1u32;
    while pentagonal(n.into(), false) <= u64::from(qbound) {
        let lead = m(1, &[(Var::X, 2 * n - 1), (Var::Y, n), (Var::Q, n * (3 * n - 1) / 2)]);
        let tail = &m(1, &[]) + &m(1, &[(Var::X, 1), (Var::Y, 1), (Var::Q, 2 * n)]);
        let numer = &(&pochhammer(&minus_yq, n - 1, qbound) * &lead) * &tail;
        right = &right + &(&numer * &inverse(&pochhammer(&xq, n, qbound), qbound));
        n += 1;
    }

    compare_series(&mut probe, 0, "L = M", &left, &middle);
    compare_series(&mut probe, 1, "M = R", &middle, &right);

    let assignment = BTreeMap::from([(Var::X, m(1, &[(Var::Y, 1)])), (Var::Y, m(-1, &[(Var::Y, 1)]))]);
    let reduced = &MultiPoly::one(vars, qbound) + &substitute(&left, &assignment).expect("same ring");
    compare_series(&mut probe, 2, "1 + L(y, -y) = A", &reduced, &andrews_a(vars, qbound));

    if regrade == 0 {
        probe.fail(vec![0, 3], || {
            Counterexample::new("perimeter regrading has complete data").values(regrade, ">= 1")
        });
    } else {
        let mut regraded = MultiPoly::zero(vars, regrade);
        for p in distinct.iter().filter(|p| p.perimeter() <= u64::from(regrade)) {
            regraded = &regraded
                + &mono(
                    vars,
                    regrade,
                    1,
                    &[
                        (Var::X, p.largest()),
                        (Var::Y, p.len() as u32),
                        (Var::Q, p.perimeter() as u32),
                    ],
                );
        }
        let hd = expand(&gf_of_class(ConstraintClass::Distinct), regrade).expect("unit denominator");
        compare_series(&mut probe, 3, "M regraded by perimeter = H_D", &regraded, &hd);
    }
    Ok(probe.finish())
}

/// Both sides of the Rogers–Fine identity at `α = aq, β = bq, τ = btq`,
/// as series in `q` with polynomial coefficients in `a, b, t`.
pub fn verify_rogers_fine(qbound: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("qbound", qbound, 1, 24)?;
    let mut probe = Probe::start("rogers-fine").param("qbound", qbound);
    let vars = VarSet::new(&[Var::A, Var::B, Var::T, Var::Q]);
    let m = |c: i64, pairs: &[(Var, u32)]| mono(vars, qbound, c, pairs);
    let alpha = m(1, &[(Var::A, 1), (Var::Q, 1)]);
    let beta = m(1, &[(Var::B, 1), (Var::Q, 1)]);
    let tau = m(1, &[(Var::B, 1), (Var::T, 1), (Var::Q, 1)]);
    let atq2 = m(1, &[(Var::A, 1), (Var::T, 1), (Var::Q, 2)]);

    let mut lhs = MultiPoly::zero(vars, qbound);
    for n in 0..=qbound {
        let term = &(&pochhammer(&alpha, n, qbound) * &inverse(&pochhammer(&beta, n, qbound), qbound)) * &tau.pow(n);
        lhs = &lhs + &term;
    }

    let mut rhs = MultiPoly::zero(vars, qbound);
    let mut n = 0u32;
    while n * n + n <= qbound {
        let lead = m(1, &[(Var::B, 2 * n), (Var::T, n), (Var::Q, n * n + n)]);
        let tail = &m(1, &[]) - &m(1, &[(Var::A, 1), (Var::B, 1), (Var::T, 1), (Var::Q, 2 * n + 2)]);
        let numer = &(&(&pochhammer(&alpha, n, qbound) * &pochhammer(&atq2, n, qbound)) * &lead) * &tail;
        let denom = &pochhammer(&beta, n, qbound) * &pochhammer(&tau, n + 1, qbound);
        rhs = &rhs + &(&numer * &inverse(&denom, qbound));
        n += 1;
    }
    compare_series(&mut probe, 0, "Rogers-Fine left = right", &lhs, &rhs);
    Ok(probe.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceKind {
    /// `h_D(a·n + b) ≡ r (mod m)`.
    Total,
    /// `h_{D,O}(a·n + b) = h_{D,E}(a·n + b) ≡ r (mod m)`.
    ParityEqual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Congruence {
    pub multiplier: u32,
    pub offset: u32,
    pub modulus: u32,
    pub residue: u32,
    pub kind: CongruenceKind,
}

impl Congruence {
    fn label(&self) -> String {
        let arg = if self.offset == 0 {
            format!("{}n", self.multiplier)
        } else {
            format!("{}n+{}", self.multiplier, self.offset)
        };
        match self.kind {
            CongruenceKind::Total => format!("h_D({arg}) = {} mod {}", self.residue, self.modulus),
            CongruenceKind::ParityEqual => {
                format!("h_DO({arg}) = h_DE({arg}) = {} mod {}", self.residue, self.modulus)
            }
        }
    }
}

pub const CONGRUENCES: [Congruence; 7] = {
    use CongruenceKind::{ParityEqual, Total};
    const fn c(multiplier: u32, offset: u32, modulus: u32, residue: u32, kind: CongruenceKind) -> Congruence {
        Congruence {
            multiplier,
            offset,
            modulus,
            residue,
            kind,
        }
    }
    [
        c(3, 0, 2, 0, Total),
        c(4, 0, 3, 0, Total),
        c(5, 0, 5, 0, Total),
        c(6, 0, 8, 0, Total),
        c(6, 3, 16, 2, Total),
        c(6, 0, 4, 0, ParityEqual),
        c(6, 3, 8, 1, ParityEqual),
    ]
};

fn residue(v: &BigUint, m: u32) -> u32 {
    (v % m).to_u32().expect("residue below modulus")
}

/// If `h_D(a·n + b) mod m` takes a single value for every `n` with
/// `a·n + b ≥ 1` and `n ≤ max_n`, returns it.
pub fn scan_congruence(multiplier: u32, offset: u32, modulus: u32, max_n: u32) -> Option<u32> {
    let mut seen = None;
    for n in 0..=max_n {
        let arg = u64::from(multiplier) * u64::from(n) + u64::from(offset);
        if arg == 0 {
            continue;
        }
        let r = residue(&fibonacci(arg), modulus);
        match seen {
            None => seen = Some(r),
            Some(s) if s != r => return None,
            _ => {}
        }
    }
    seen
}

/// The seven stated congruences for every multiplier argument `n ≤ max_n`,
/// with enumeration spot checks at small arguments.
pub fn verify_congruences(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, 2_000)?;
    let mut probe = Probe::start("congruences")
        .param("max_n", max_n)
        .param("enumeration_max", SPOT_LIMIT);
    for (idx, c) in CONGRUENCES.iter().enumerate() {
        for n in 0..=max_n {
            let arg = c.multiplier * n + c.offset;
            if arg == 0 {
                continue;
            }
            let key = vec![i64::from(arg), idx as i64];
            let cx = || Counterexample::new(c.label()).input("n", n).input("argument", arg);
            let total = fibonacci(arg.into());
            match c.kind {
                CongruenceKind::Total => {
                    probe.expect_eq(key.clone(), residue(&total, c.modulus), c.residue, cx);
                    if arg <= SPOT_LIMIT {
                        let counted =
                            BigUint::from(enumerate_by_perimeter(arg as usize, ConstraintClass::Distinct).count());
                        probe.expect_eq(key, counted, total, || cx().input("method", "enumeration vs F_n"));
                    }
                }
                CongruenceKind::ParityEqual => {
                    let split = count_parity_split(arg as usize);
                    probe.expect_eq(key.clone(), &split.even, &split.odd, cx);
                    probe.expect_eq(key.clone(), residue(&split.odd, c.modulus), c.residue, cx);
                    probe.expect_eq(key.clone(), split.total(), total, || {
                        cx().input("method", "split total vs F_n")
                    });
                    if arg <= SPOT_LIMIT {
                        let counted = parity_split_enumerated(arg as usize);
                        probe.expect_eq(key, counted, split, || {
                            cx().input("method", "enumeration vs binomial sums")
                        });
                    }
                }
            }
        }
    }
    Ok(probe.finish())
}

/// `F_{m+n} = F_{m+1} F_n + F_m F_{n−1}` for `0 ≤ m ≤ max_n`,
/// `1 ≤ n ≤ max_n`, and `m | n ⇒ F_m | F_n` for `1 ≤ m, n ≤ 2·max_n`.
pub fn verify_fibonacci_propositions(max_n: u32) -> Result<TheoremReport, IdentityError> {
    check_depth("max_n", max_n, 1, 1_000)?;
    let div_max = 2 * max_n;
    let mut probe = Probe::start("fibonacci-propositions")
        .param("addition_max", max_n)
        .param("divisibility_max", div_max);
    let fib: Vec<BigUint> = (0..=u64::from(div_max).max(2 * u64::from(max_n)))
        .map(fibonacci)
        .collect();
    for m in 0..=max_n as usize {
        for n in 1..=max_n as usize {
            probe.expect_eq(
                vec![0, m as i64, n as i64],
                fib[m + n].clone(),
                &fib[m + 1] * &fib[n] + &fib[m] * &fib[n - 1],
                || {
                    Counterexample::new("F_{m+n} = F_{m+1} F_n + F_m F_{n-1}")
                        .input("m", m)
                        .input("n", n)
                },
            );
        }
    }
    for m in 1..=div_max as usize {
        for n in (m..=div_max as usize).step_by(m) {
            let rem = &fib[n] % &fib[m];
            if !rem.is_zero() {
                probe.fail(vec![1, m as i64, n as i64], || {
                    Counterexample::new("m | n implies F_m | F_n")
                        .input("m", m)
                        .input("n", n)
                        .values(rem, 0)
                });
            }
        }
    }
    Ok(probe.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        for report in [
            verify_perimeter_count(12),
            verify_euler_analogue(20),
            verify_refinements(12),
            verify_pentagonal_analogue(30),
            verify_d_chain(2, 12),
            verify_gf_coefficients(ConstraintClass::GClass(2), 10),
            verify_franklin(30),
            verify_andrews_identity(12),
            verify_refined_identity(12),
            verify_rogers_fine(6),
            verify_congruences(30),
            verify_fibonacci_propositions(20),
        ] {
            let report = report.unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn d_must_be_positive() {
        assert_eq!(verify_d_chain(0, 5), Err(IdentityError::InvalidD));
    }

    #[test]
    fn regrading_bound_uses_exact_staircase() {
        assert_eq!(staircase_max(7), 12);
        assert_eq!(staircase_max(8), 15);
        assert_eq!(regrading_bound(15), 7);
        assert_eq!(regrading_bound(1), 1);
    }

    #[test]
    fn andrews_coefficients() {
        let vars = VarSet::new(&[Var::Y, Var::Q]);
        let a = andrews_a(vars, 15);
        let c = andrews_c(vars, 15);
        assert_eq!(a.coefficient(&[(Var::Y, 6), (Var::Q, 7)]), BigInt::one());
        assert_eq!(c.coefficient(&[(Var::Y, 6), (Var::Q, 7)]), BigInt::one());
        assert_eq!(a.coefficient(&[]), BigInt::one());
    }

    #[test]
    fn rogers_fine_first_order() {
        let vars = VarSet::new(&[Var::A, Var::B, Var::T, Var::Q]);
        let m = |pairs: &[(Var, u32)]| mono(vars, 1, 1, pairs);
        let tau = m(&[(Var::B, 1), (Var::T, 1), (Var::Q, 1)]);
        // (1 − aq)/(1 − bq)·btq contributes btq at order one; so does 1/(1 − btq).
        let lhs = &m(&[]) + &tau;
        let rhs = inverse(&(&m(&[]) - &tau), 1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "1 + b*t*q");
    }

    #[test]
    fn scanner_recovers_stated_residues() {
        for c in CONGRUENCES.iter().filter(|c| c.kind == CongruenceKind::Total) {
            assert_eq!(scan_congruence(c.multiplier, c.offset, c.modulus, 60), Some(c.residue));
        }
        assert_eq!(scan_congruence(1, 0, 2, 10), None);
    }

    #[test]
    fn failing_check_reports_minimal_counterexample() {
        let mut probe = Probe::start("demo");
        let vars = VarSet::xyq();
        let one = MultiPoly::one(vars, 4);
        let bumped = &one + &mono(vars, 4, 1, &[(Var::X, 1), (Var::Q, 2)]);
        let bumped = &bumped + &mono(vars, 4, 1, &[(Var::Q, 1)]);
        compare_series(&mut probe, 0, "demo", &one, &bumped);
        let cx = probe.finish().counterexample.unwrap();
        assert_eq!(cx.inputs["monomial"], "q");
        assert_eq!((cx.left.as_str(), cx.right.as_str()), ("0", "1"));
    }
}
