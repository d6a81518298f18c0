use permtri::families::{instantiate, FamilyId, FamilyInstance};
use permtri::permcheck::is_permutation;
use permtri::search::{classify, enumerate, enumerate_in, permutes, ExponentTriple, SearchOptions};
use permtri::{FieldCtx, SweepConfig};

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

fn all_triples(m: u32) -> impl Iterator<Item = ExponentTriple> {
    let top = (1u64 << m) - 2;
    (1..=top).flat_map(move |a| {
        (a + 1..=top).flat_map(move |b| (b + 1..=top).map(move |c| ExponentTriple::new(m, [a, b, c]).unwrap()))
    })
}

#[test]
fn canonicalize_is_idempotent_and_orbit_invariant() {
    for m in 2..=8 {
        for t in all_triples(m) {
            let c = t.canonicalize();
            assert_eq!(c.canonicalize(), c);
            assert_eq!(t.double().canonicalize(), c, "{t} at m={m}");
            assert!(c <= t);
            assert_eq!(m as usize % t.orbit_size(), 0);
        }
    }
}

// every canonical triple that permutes, by brute force over all triples
fn brute_force(m: u32) -> Vec<ExponentTriple> {
    let f = FieldCtx::binary(m).unwrap();
    all_triples(m)
        .filter(|t| t.is_canonical())
        .filter(|t| is_permutation(&t.to_spec(&f).unwrap(), &cfg()).unwrap().is_permutation)
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for m in 3..=6 {
        let out = enumerate(m, SearchOptions::default(), &cfg()).unwrap();
        let got: Vec<ExponentTriple> = out.records.iter().map(|r| r.triple()).collect();
        assert_eq!(got, brute_force(m), "m={m}");
        assert_eq!(out.orbits as usize, got.len());
    }
}

#[test]
fn output_is_modulus_and_thread_independent() {
    for m in [5u32, 6, 8] {
        let moduli: Vec<u64> = permtri::galois::gf2x::irreducibles(m).collect();
        let a = FieldCtx::binary_with_modulus(moduli[0]).unwrap();
        let b = FieldCtx::binary_with_modulus(moduli[1]).unwrap();
        let ra = enumerate_in(&a, SearchOptions::default(), &cfg()).unwrap();
        let rb = enumerate_in(&b, SearchOptions::default(), &SweepConfig::with_threads(3)).unwrap();
        assert_ne!(ra.modulus, rb.modulus);
        assert_eq!(ra.records, rb.records, "m={m}");
    }
}

#[test]
fn no_two_records_share_an_orbit() {
    let out = enumerate(8, SearchOptions::default(), &cfg()).unwrap();
    let mut reps: Vec<_> = out.records.iter().map(|r| r.triple().canonicalize()).collect();
    let n = reps.len();
    reps.dedup();
    assert_eq!(reps.len(), n);
    assert!(out.records.iter().all(|r| r.verified));
}

fn family_triple(id: FamilyId, m: u32) -> ExponentTriple {
    let f = FieldCtx::binary(m).unwrap();
    let spec = instantiate(&FamilyInstance::new(id, m), &f).unwrap();
    ExponentTriple::from_spec(&spec).unwrap().canonicalize()
}

#[test]
fn t32_found_at_m4_and_m6() {
    for m in [4u32, 6] {
        let out = enumerate(m, SearchOptions::default(), &cfg()).unwrap();
        let t = family_triple(FamilyId::T32, m);
        assert!(out.records.iter().any(|r| r.triple() == t), "m={m}");
    }
}

#[test]
fn family_triples_pass_the_search_filter() {
    // full enumeration is too slow past m = 9, so check the reporting
    // predicate (canonical, in range, permutes) for each family triple
    let mut cases = Vec::new();
    for m in (3..=11).step_by(2) {
        cases.extend([FamilyId::T21, FamilyId::T22, FamilyId::T23, FamilyId::T24].map(|id| (id, m)));
    }
    for m in (4..=12).step_by(2) {
        cases.push((FamilyId::T32, m));
    }
    for m in [4, 8, 12] {
        cases.extend([(FamilyId::C34, m), (FamilyId::C36, m)]);
    }
    for (id, m) in cases {
        let f = FieldCtx::binary(m).unwrap();
        let t = family_triple(id, m);
        assert!(t.is_canonical());
        assert!(permutes(&f, &t).unwrap(), "{id} at m={m}");
    }
}

#[test]
fn small_odd_m_enumerations_contain_the_odd_families() {
    for m in [5u32, 7, 9] {
        let out = enumerate(m, SearchOptions::default(), &cfg()).unwrap();
        for id in [FamilyId::T21, FamilyId::T22, FamilyId::T23, FamilyId::T24] {
            let t = family_triple(id, m);
            assert!(out.records.iter().any(|r| r.triple() == t), "{id} at m={m}");
        }
    }
}

#[test]
fn classification_follows_catalog_order() {
    let k3 = ExponentTriple::new(7, [1, 5, 7]).unwrap();
    assert_eq!(classify(&k3).unwrap().family, Some(FamilyId::K3));
    let out = enumerate(7, SearchOptions::default(), &cfg()).unwrap();
    let rec = out.records.iter().find(|r| r.triple() == k3).unwrap();
    assert_eq!(rec.family, "K3");
    // T21 at m = 3 is the K2 triple, and K2 comes first
    assert_eq!(family_triple(FamilyId::T21, 3), family_triple(FamilyId::K2, 3));
    assert_eq!(classify(&family_triple(FamilyId::T21, 3)).unwrap().family, Some(FamilyId::K2));
    let c = classify(&family_triple(FamilyId::C34, 8)).unwrap();
    assert_eq!(c.family, Some(FamilyId::T33));
    assert_eq!(c.instance.as_deref(), Some("T33:q=2,k=2,m=8"));
}
