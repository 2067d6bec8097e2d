mod common;

use common::*;
use diamfree::canon::{
    are_isomorphic, canonical_form, certificate, classify, orbit_length, permute, stabilizer_order,
};
use diamfree::families::{v2, w2, Extremal, Family};
use diamfree::lattice::generate;
use diamfree::solver::enumerate_maximum;
use diamfree::{DiameterGraph, Signature, TritVector};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn sig(m: usize, k: usize, l: usize) -> Signature {
    Signature::new(m, k, l).unwrap()
}

fn test_families() -> Vec<Family> {
    let mut out = vec![v2(), w2()];
    for k in 1..=4 {
        for e in Extremal::ALL.into_iter().filter(|e| e.min_k() <= k) {
            out.push(e.family(k).unwrap());
        }
    }
    out
}

fn random_family(rng: &mut StdRng, s: Signature, name: &str) -> Family {
    let all = generate(s).unwrap();
    let size = rng.gen_range(1..=all.len().min(12));
    let pick: Vec<TritVector> = all.choose_multiple(rng, size).copied().collect();
    Family::new(s, name, pick).unwrap()
}

fn random_perm(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[test]
fn forms_are_invariant_under_random_permutations() {
    let mut rng = StdRng::seed_from_u64(7);
    for f in test_families() {
        let form = canonical_form(&f).unwrap();
        for _ in 0..100 {
            let p = random_perm(&mut rng, f.signature().n());
            assert_eq!(canonical_form(&permute(&f, &p)).unwrap(), form, "{f}");
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence_relation() {
    let mut rng = StdRng::seed_from_u64(11);
    let s = sig(1, 2, 2);
    let mut pool = Vec::new();
    for i in 0..10 {
        let base = random_family(&mut rng, s, &format!("b{i}"));
        for _ in 0..5 {
            let p = random_perm(&mut rng, s.n());
            pool.push(permute(&base, &p));
        }
    }
    assert_eq!(pool.len(), 50);
    let iso = |a: &Family, b: &Family| are_isomorphic(a, b).unwrap();
    for a in &pool {
        assert_eq!(iso(a, a).map(|p| permute(a, &p).members().to_vec()), Some(a.members().to_vec()));
    }
    for a in &pool {
        for b in &pool {
            let ab = iso(a, b);
            assert_eq!(ab.is_some(), iso(b, a).is_some());
            assert_eq!(ab.is_some(), brute_force_form(a.members()) == brute_force_form(b.members()));
            if let Some(p) = ab {
                assert_eq!(permute(a, &p).members(), b.members());
            }
        }
    }
    for a in pool.iter().step_by(3) {
        for b in pool.iter().step_by(2) {
            for c in pool.iter().step_by(5) {
                if iso(a, b).is_some() && iso(b, c).is_some() {
                    assert!(iso(a, c).is_some());
                }
            }
        }
    }
}

fn small_family() -> impl Strategy<Value = Family> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=n - m))
        .prop_flat_map(|(n, m, k)| {
            let s = sig(m, k, n - m - k);
            let all = generate(s).unwrap();
            let len = all.len();
            proptest::sample::subsequence(all, 1..=len.min(14)).prop_map(move |pts| Family::new(s, "f", pts).unwrap())
        })
}

fn brute_force_stabilizer(f: &Family) -> u128 {
    let n = f.signature().n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        if permute(f, &perm).members() == f.members() {
            count += 1;
        }
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn form_equals_the_minimum_over_all_permutations(f in small_family()) {
        prop_assert_eq!(canonical_form(&f).unwrap().bytes().to_vec(), brute_force_form(f.members()));
    }

    #[test]
    fn stabilizer_matches_a_scan_of_the_symmetric_group(f in small_family()) {
        prop_assert_eq!(stabilizer_order(&f).unwrap(), brute_force_stabilizer(&f));
    }

    #[test]
    fn certificate_reaches_the_form(f in small_family()) {
        let (form, cert) = certificate(&f).unwrap();
        let mut rows: Vec<String> = f.members().iter().map(|x| x.permute(&cert.permutation).to_string()).collect();
        rows.sort();
        prop_assert_eq!(rows, cert.rows.clone());
        prop_assert_eq!(cert.rows.concat().into_bytes(), form.bytes().to_vec());
    }
}

#[test]
fn stabilizer_examples() {
    let x1 = Extremal::X.family(1).unwrap();
    let y1 = Extremal::Y.family(1).unwrap();
    assert_eq!(stabilizer_order(&x1).unwrap(), 6);
    assert_eq!(stabilizer_order(&y1).unwrap(), 6);
    assert_eq!(orbit_length(&x1).unwrap(), 4);
    assert_eq!(orbit_length(&y1).unwrap(), 4);
    let s = sig(1, 1, 2);
    let whole = Family::new(s, "L112", generate(s).unwrap()).unwrap();
    assert_eq!(stabilizer_order(&whole).unwrap(), 24);
}

#[test]
fn distinct_extremal_families_are_not_isomorphic() {
    let x2 = Extremal::X.family(2).unwrap();
    let y2 = Extremal::Y.family(2).unwrap();
    assert_ne!(canonical_form(&x2).unwrap(), canonical_form(&y2).unwrap());
    let x1 = Extremal::X.family(1).unwrap();
    let y1 = Extremal::Y.family(1).unwrap();
    assert_eq!(are_isomorphic(&y1, &x1).unwrap(), None);
    let id = are_isomorphic(&x1, &x1).unwrap().unwrap();
    assert_eq!(permute(&x1, &id).members(), x1.members());
}

#[test]
fn maximum_sets_of_l112_form_two_classes_of_four() {
    let s = sig(1, 1, 2);
    let g = DiameterGraph::of_lattice(s).unwrap();
    let sets = enumerate_maximum(&g).unwrap().enumerated_points(&g).unwrap();
    let families: Vec<Family> =
        sets.into_iter().enumerate().map(|(i, pts)| Family::new(s, format!("m{i}"), pts).unwrap()).collect();
    let classes = classify(&families).unwrap();
    assert_eq!(classes.iter().map(|c| c.size()).collect::<Vec<_>>(), vec![4, 4]);
    for c in &classes {
        assert_eq!(orbit_length(&c.representative).unwrap(), c.size() as u128);
    }
}

#[test]
fn limits_and_mismatches() {
    let mut rng = StdRng::seed_from_u64(3);
    let long = random_family(&mut rng, sig(1, 15, 1), "long");
    assert!(canonical_form(&long).is_err());
    let twelve = random_family(&mut rng, sig(1, 10, 2), "twelve");
    assert!(canonical_form(&twelve).is_ok());
    let thirteen = random_family(&mut rng, sig(1, 11, 1), "thirteen");
    assert!(stabilizer_order(&thirteen).is_err());
    let a = Extremal::X.family(1).unwrap();
    let b = Extremal::X.family(2).unwrap();
    assert!(are_isomorphic(&a, &b).is_err());
    assert!(classify(&[a, b]).is_err());
}

#[test]
fn classify_agrees_with_grouping_by_form() {
    let mut rng = StdRng::seed_from_u64(5);
    for s in [sig(1, 2, 2), sig(2, 3, 4)] {
        let mut pool = Vec::new();
        for i in 0..8 {
            let base = random_family(&mut rng, s, &format!("b{i}"));
            for _ in 0..6 {
                pool.push(permute(&base, &random_perm(&mut rng, s.n())));
            }
        }
        let mut direct: std::collections::BTreeMap<Vec<u8>, Vec<usize>> = Default::default();
        for (i, f) in pool.iter().enumerate() {
            direct.entry(canonical_form(f).unwrap().bytes().to_vec()).or_default().push(i);
        }
        let classes = classify(&pool).unwrap();
        let got: Vec<(Vec<u8>, Vec<usize>)> =
            classes.iter().map(|c| (c.form.bytes().to_vec(), c.members.clone())).collect();
        assert_eq!(got, direct.into_iter().collect::<Vec<_>>());
    }
}
