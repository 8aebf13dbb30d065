use std::collections::BTreeSet;

use mumford_tame::galois::{
    check_type, construct_typed_poly, double_goldbach, double_goldbach_witness, excluded_primes, GaloisError, LocalSpec,
    TypeSpec,
};
use mumford_tame::poly::IntPoly;
use mumford_tame::primes::PrimeSieve;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn excluded_primes_reproduce_the_table() {
    let table: [(u64, &[u64]); 5] = [(3, &[7]), (4, &[5, 7]), (5, &[11]), (7, &[5, 11, 13]), (13, &[11, 17])];
    for (g, want) in table {
        assert_eq!(excluded_primes(g).unwrap(), want.iter().copied().collect::<BTreeSet<_>>(), "g = {g}");
    }
    for g in [6, 8, 9, 10, 11, 12].into_iter().chain(14..=20) {
        assert!(excluded_primes(g).unwrap().is_empty(), "g = {g}");
    }
}

#[test]
fn double_goldbach_witness_decides_existence() {
    let sieve = PrimeSieve::new(1200);
    for n in (4..=1200).step_by(2) {
        let all = double_goldbach(n).unwrap();
        match double_goldbach_witness(n, &sieve) {
            Some(w) => assert!(all.contains(&w), "n = {n}"),
            None => assert!(all.is_empty(), "n = {n}"),
        }
    }
}

#[test]
fn double_goldbach_gaps_in_a_slice() {
    let top = 20_000u64;
    let sieve = PrimeSieve::new(2 * top as usize + 2);
    let empty: Vec<u64> = (1..=top).filter(|&g| double_goldbach_witness(2 * g + 2, &sieve).is_none()).collect();
    assert_eq!(empty, [1, 2, 3, 4, 5, 7, 13]);
}

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn spec() -> impl Strategy<Value = LocalSpec> {
    (prop::sample::select(PRIMES.to_vec()), 1u32..4, prop::collection::vec(prop::sample::select(vec![2u64, 3, 5]), 0..3), 0u8..4)
        .prop_map(|(p, t, blocks, kind)| {
            if kind == 0 {
                LocalSpec::Filler { filler: p }
            } else {
                LocalSpec::Typed(TypeSpec { p, t, blocks })
            }
        })
}

fn specs() -> impl Strategy<Value = Vec<LocalSpec>> {
    prop::collection::vec(spec(), 1..4).prop_map(|mut v| {
        let mut seen = BTreeSet::new();
        v.retain(|s| seen.insert(s.prime()));
        v
    })
}

fn typed(specs: &[LocalSpec]) -> impl Iterator<Item = &TypeSpec> {
    specs.iter().filter_map(|s| match s {
        LocalSpec::Typed(t) => Some(t),
        LocalSpec::Filler { .. } => None,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_polynomials_have_their_types(d in 2usize..12, specs in specs()) {
        let f = match construct_typed_poly(d, &specs) {
            Ok(f) => f,
            Err(GaloisError::InfeasibleSpec(_)) => {
                prop_assume!(false);
                unreachable!()
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(f.degree(), Some(d));
        prop_assert!(f.is_monic());
        for ts in typed(&specs) {
            let r = check_type(&f, ts, None).unwrap();
            prop_assert!(r.pass, "{ts:?} on {f}: {r:?}");
        }
    }

    #[test]
    fn type_is_determined_at_the_working_precision(
        d in 2usize..10,
        specs in specs(),
        noise in prop::collection::vec(-50i64..50, 1..10),
    ) {
        let f = construct_typed_poly(d, &specs);
        prop_assume!(f.is_ok() && typed(&specs).next().is_some());
        let f = f.unwrap();
        for ts in typed(&specs) {
            let prec = ts.t + 2;
            let pk = BigInt::from(ts.p).pow(prec);
            let mut h: Vec<i64> = noise.clone();
            h.truncate(d);
            let g = f.add(&IntPoly::from_i64(&h).scale(&pk));
            match check_type(&g, ts, Some(prec)) {
                Ok(r) => prop_assert!(r.pass, "{ts:?} on {g}"),
                Err(GaloisError::NotSquarefree) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
