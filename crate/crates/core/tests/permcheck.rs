use proptest::prelude::*;

use permtri::families::{applicability, instantiate_default, FamilyId, FamilyInstance};
use permtri::permcheck::{compose_check, eqa_solution_count, is_permutation, value_set};
use permtri::{FieldCtx, SweepConfig, TrinomialSpec};

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

// bijectivity by sorting the value list
fn bijective_by_sorting(spec: &TrinomialSpec) -> bool {
    let f = spec.field();
    let mut vals: Vec<u64> = f.elements().map(|x| spec.eval(x).unwrap().value()).collect();
    vals.sort_unstable();
    vals.dedup();
    vals.len() as u64 == f.order()
}

#[test]
fn agrees_with_sorting_oracle_on_small_trinomials() {
    for m in 2..=6u32 {
        let f = FieldCtx::binary(m).unwrap();
        let top = f.order() as i128 - 2;
        for e2 in 2..=top.min(12) {
            for e3 in e2 + 1..=top.min(14) {
                let spec = TrinomialSpec::from_exponents(&f, &[1, e2, e3]).unwrap();
                let r = is_permutation(&spec, &cfg()).unwrap();
                assert_eq!(r.is_permutation, bijective_by_sorting(&spec), "m={m} {{1,{e2},{e3}}}");
                if let Some((a, b)) = r.collision {
                    assert!(a.value() < b.value());
                    assert_eq!(spec.eval(a).unwrap(), spec.eval(b).unwrap());
                }
            }
        }
    }
}

#[test]
fn collision_is_the_first_in_index_order() {
    let f = FieldCtx::binary(6).unwrap();
    let spec = TrinomialSpec::from_exponents(&f, &[1, 2, 3]).unwrap();
    let r = is_permutation(&spec, &cfg()).unwrap();
    let (x1, x2) = r.collision.unwrap();
    let vals: Vec<u64> = f.elements().map(|x| spec.eval(x).unwrap().value()).collect();
    let first_repeat = (0..vals.len()).find(|&j| vals[..j].contains(&vals[j])).unwrap();
    assert_eq!(x2.value(), first_repeat as u64);
    assert_eq!(x1.value(), vals.iter().position(|&v| v == vals[first_repeat]).unwrap() as u64);
    let vs = value_set(&spec, &cfg()).unwrap();
    assert_eq!(r.image_deficit, f.order() - vs.image_size);
}

#[test]
fn parallel_and_serial_reports_match() {
    let cases = ["T33:q=2,k=1,m=10", "T32:m=10", "T33:q=4,k=2,m=4", "T33:q=5,k=1,m=4"];
    for s in cases {
        let spec = instantiate_default(&s.parse().unwrap()).unwrap();
        let mut serial = is_permutation(&spec, &cfg()).unwrap();
        for threads in [2, 3, 7] {
            let par = is_permutation(&spec, &SweepConfig::with_threads(threads)).unwrap();
            serial.elapsed_ms = par.elapsed_ms;
            assert_eq!(par, serial, "{s} threads={threads}");
        }
        assert_eq!(
            value_set(&spec, &cfg()).unwrap(),
            value_set(&spec, &SweepConfig::with_threads(4)).unwrap()
        );
    }
}

#[test]
fn inverse_pairs_are_permutations() {
    for m in [4u32, 8] {
        for (a, b) in [(FamilyId::C34, FamilyId::C35), (FamilyId::C36, FamilyId::C37)] {
            let f = instantiate_default(&FamilyInstance::new(a, m)).unwrap();
            let g = instantiate_default(&FamilyInstance::new(b, m)).unwrap();
            assert!(compose_check(&f, &g, &cfg()).unwrap().is_inverse);
            // g o f = id on a finite set forces f o g = id
            assert!(compose_check(&g, &f, &cfg()).unwrap().is_inverse);
            assert!(is_permutation(&f, &cfg()).unwrap().is_permutation);
            assert!(is_permutation(&g, &cfg()).unwrap().is_permutation);
        }
    }
}

#[test]
fn wrong_reading_fails_with_witness() {
    let f = instantiate_default(&"C34:m=8".parse().unwrap()).unwrap();
    let g = instantiate_default(&"C35:m=8,reading=fff".parse().unwrap()).unwrap();
    let out = compose_check(&f, &g, &cfg()).unwrap();
    assert!(!out.is_inverse);
    let x = out.witness.unwrap();
    assert_ne!(g.eval(f.eval(x).unwrap()).unwrap(), x);
}

// census oracle through the checked API
fn census_oracle(q: u64, m: u32, k: u64) -> u64 {
    let f = FamilyInstance::t33(q, k, m).field().unwrap();
    let half = (q as i128).pow(m / 2);
    let k = k as i128;
    f.elements()
        .filter(|&y| {
            if y.is_zero() {
                return true;
            }
            let yb = f.pow(y, half).unwrap();
            let a = f.pow(y, 2 * k).unwrap();
            let b = f.mul(f.pow(y, k).unwrap(), f.pow(yb, k).unwrap()).unwrap();
            let c = f.pow(yb, 2 * k).unwrap();
            f.add(f.add(a, b).unwrap(), c).unwrap().is_zero()
        })
        .count() as u64
}

#[test]
fn census_matches_oracle() {
    for (q, m) in [(2u64, 2u32), (2, 4), (2, 6), (4, 2), (4, 4), (5, 2), (8, 2), (7, 2)] {
        for k in 1..=6 {
            let got = eqa_solution_count(q, m, k, &cfg()).unwrap();
            assert_eq!(got, census_oracle(q, m, k), "q={q} m={m} k={k}");
            let inst = FamilyInstance::t33(q, k, m);
            assert_eq!(got == 1, applicability(&inst).applicable, "{inst}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn report_invariants(m in 2u32..8, e in proptest::collection::vec(1i128..300, 1..4), threads in 1usize..4) {
        let f = FieldCtx::binary(m).unwrap();
        let spec = TrinomialSpec::from_exponents(&f, &e).unwrap();
        let r = is_permutation(&spec, &SweepConfig::with_threads(threads)).unwrap();
        prop_assert_eq!(r.is_permutation, r.collision.is_none());
        prop_assert_eq!(r.is_permutation, r.image_deficit == 0);
        prop_assert_eq!(r.is_permutation, bijective_by_sorting(&spec));
    }
}
