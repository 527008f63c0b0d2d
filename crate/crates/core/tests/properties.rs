//! Invariants checked over generated inputs.

mod common;

use dioph_core::decision::{decode_tuple, encode_tuple, gamma_member, Modulus, TupleCode};
use dioph_core::ir::{g_atoms, System};
use dioph_core::rationals::{enumerate_nonneg_rationals, enumerate_rationals, make_rat, tower_compare, Rat, RatTuple, Tower};
use dioph_core::solver::{solve_system_bounded, Domain};
use dioph_core::threesquares::{decompose_three_squares_int, excluded_form, technical_forward, technical_inverse};
use proptest::prelude::*;

use common::grid;

fn rat(signed: bool) -> impl Strategy<Value = Rat> {
    let lo = if signed { -20i64 } else { 0 };
    (lo..=20i64, 1..=20i64).prop_map(|(n, d)| make_rat(n, d).unwrap())
}

fn tuple(signed: bool) -> impl Strategy<Value = RatTuple> {
    prop::collection::vec(rat(signed), 1..=3).prop_map(RatTuple::new)
}

fn subsystem(n: usize) -> impl Strategy<Value = System> {
    let atoms = g_atoms(n);
    prop::collection::vec(any::<bool>(), atoms.len()).prop_map(move |keep| {
        let chosen = atoms.iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| *a);
        System::from_atoms(n, chosen).unwrap()
    })
}

fn sorted(mut v: Vec<RatTuple>) -> Vec<RatTuple> {
    v.sort_by(|a, b| a.listing_cmp(b));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_finds_every_solution(s in subsystem(2), nonneg in any::<bool>()) {
        let (domain, values) = if nonneg {
            (Domain::NonnegRationals, enumerate_nonneg_rationals(4))
        } else {
            (Domain::Rationals, enumerate_rationals(4))
        };
        let brute: Vec<RatTuple> = grid(&values, 2).into_iter().filter(|x| s.eval(x.entries()).unwrap()).collect();
        let found = solve_system_bounded(&s, 4, domain).solutions;
        prop_assert_eq!(sorted(found), sorted(brute));
    }

    #[test]
    fn encoding_round_trips(t in tuple(true), u in tuple(false)) {
        for (t, m) in [(t, Modulus::Three), (u, Modulus::Two)] {
            let code = encode_tuple(&t, m).unwrap();
            prop_assert!(gamma_member(code.index, m));
            prop_assert_eq!(decode_tuple(code).unwrap(), t);
        }
    }

    #[test]
    fn tower_order_matches_values(a in 0u32..300, b in 0u32..300, ka in 0usize..=2, kb in 0usize..=2) {
        let lift = |v: u32, k: usize| (0..k).fold(Tower::exact(v), |t, _| Tower::two_up_two_up(t));
        let (x, y) = (lift(a, ka), lift(b, kb));
        prop_assert_eq!(tower_compare(&y, &x), tower_compare(&x, &y).reverse());
        if let (Some(vx), Some(vy)) = (x.materialize(1 << 16), y.materialize(1 << 16)) {
            prop_assert_eq!(tower_compare(&x, &y), vx.cmp(&vy));
        }
    }

    #[test]
    fn three_squares_exactly_off_the_excluded_form(n in 1u64..=1_000_000) {
        match decompose_three_squares_int(n) {
            Ok((a, b, c)) => {
                prop_assert!(!excluded_form(n));
                prop_assert_eq!(a * a + b * b + c * c, n);
                prop_assert!(a >= b && b >= c);
            }
            Err(_) => prop_assert!(excluded_form(n)),
        }
    }

    #[test]
    fn technical_map_inverts(a in rat(true), b in rat(true), c in rat(true)) {
        let (r, s, t) = technical_inverse(&a, &b, &c);
        prop_assert_eq!(technical_forward(&r, &s, &t), &a * &a + &b * &b + &c * &c);
    }
}

/// The first thousand members of the signed class, one decoded tuple per
/// line; every 1-tuple of height at most 2 must be among them.
#[test]
fn gamma3_prefix_golden() {
    let mut lines = String::new();
    let mut tuples = vec![];
    let mut i = 2u64;
    while tuples.len() < 1000 {
        if gamma_member(i, Modulus::Three) {
            let t = decode_tuple(TupleCode { index: i, modulus: Modulus::Three }).unwrap();
            lines.push_str(&format!("{i} {t}\n"));
            tuples.push(t);
        }
        i += 1;
    }
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/gamma3_first1000.txt");
    if std::env::var_os("DIOPH_BLESS").is_some() {
        std::fs::write(&path, &lines).unwrap();
    }
    assert_eq!(std::fs::read_to_string(&path).unwrap(), lines);
    for v in enumerate_rationals(2) {
        assert!(tuples.contains(&RatTuple::new(vec![v.clone()])), "({v}) missing");
    }
}
