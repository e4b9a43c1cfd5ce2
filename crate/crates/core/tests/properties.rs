use hookcomb::series::{series_inverse, substitute};
use hookcomb::{
    franklin, from_profile, to_profile, FranklinOutcome, Monomial, MultiPoly, Partition, ProfileWord, Var, VarSet,
};
use num_bigint::BigInt;
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    vec(1u32..40, 1..14).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn distinct_partition() -> impl Strategy<Value = Partition> {
    btree_set(1u32..60, 1..12).prop_map(|set| Partition::new(set.into_iter().rev().collect()).unwrap())
}

fn word() -> impl Strategy<Value = ProfileWord> {
    (1usize..40)
        .prop_flat_map(|n| {
            let bits = n.saturating_sub(1).min(63);
            (Just(n), 0u64..(1u64 << bits))
        })
        .prop_map(|(n, mask)| ProfileWord::from_middle_bits(n, mask))
}

fn poly(qbound: u32) -> impl Strategy<Value = MultiPoly> {
    vec((-5i64..6, 0u32..3, 0u32..3, 0u32..5), 0..8).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(MultiPoly::zero(VarSet::xyq(), qbound), |acc, (c, x, y, q)| {
                &acc + &MultiPoly::monomial(VarSet::xyq(), qbound, c, &[(Var::X, x), (Var::Y, y), (Var::Q, q)])
            })
    })
}

proptest! {
    #[test]
    fn profile_round_trip(p in partition()) {
        let w = to_profile(&p);
        prop_assert_eq!(from_profile(&w), p.clone());
        prop_assert_eq!(w.len() as u64, p.perimeter() + 1);
        prop_assert_eq!(to_profile(&p.conjugate()), w.transpose());
    }

    #[test]
    fn word_round_trip(w in word()) {
        prop_assert_eq!(to_profile(&from_profile(&w)), w.clone());
        let text = w.to_string();
        prop_assert_eq!(text.parse::<ProfileWord>().unwrap(), w);
    }

    #[test]
    fn partition_text_and_json_round_trip(p in partition()) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn largest_hook_is_perimeter(p in partition()) {
        let max = p.hook_lengths().into_iter().flatten().max().unwrap();
        prop_assert_eq!(u64::from(max), p.perimeter());
    }

    #[test]
    fn franklin_is_sign_reversing_involution(p in distinct_partition()) {
        match franklin(&p).unwrap() {
            FranklinOutcome::Moved(q) => {
                prop_assert!(q.is_distinct());
                prop_assert_eq!(q.size(), p.size());
                prop_assert_eq!(q.perimeter(), p.perimeter());
                prop_assert_eq!((q.len() + p.len()) % 2, 1);
                prop_assert_eq!(franklin(&q).unwrap(), FranklinOutcome::Moved(p));
            }
            FranklinOutcome::FixedPoint => {
                let k = p.len() as u64;
                let n = p.size();
                prop_assert!(n == k * (3 * k - 1) / 2 || n == k * (3 * k + 1) / 2);
            }
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(6), b in poly(6), c in poly(6)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn inverse_times_series_is_one(p in poly(6)) {
        let positive = p.terms().filter(|(m, _)| m.q_degree() > 0).map(|(m, c)| (*m, c.clone()));
        let unit = &MultiPoly::from_terms(VarSet::xyq(), 6, positive).unwrap() + &MultiPoly::one(VarSet::xyq(), 6);
        let inv = series_inverse(&unit, 6).unwrap();
        prop_assert_eq!(&unit * &inv, MultiPoly::one(VarSet::xyq(), 6));
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly(5), b in poly(5), cx in -2i64..3, cy in -2i64..3) {
        let vars = VarSet::xyq();
        let assignment = [
            (Var::X, MultiPoly::monomial(vars, 5, cx, &[(Var::Y, 1)])),
            (Var::Y, MultiPoly::monomial(vars, 5, cy, &[(Var::Q, 1)])),
        ]
        .into_iter()
        .collect();
        let s = |p: &MultiPoly| substitute(p, &assignment).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }
}

#[test]
fn coefficients_are_exact_beyond_machine_words() {
    let vars = VarSet::xyq();
    let two = MultiPoly::constant(vars, 2, 2);
    let big = two.pow(200);
    let expected = BigInt::from(2).pow(200);
    assert_eq!(
        big.terms().next().map(|(m, c)| (*m, c.clone())),
        Some((Monomial::ONE, expected))
    );
}
