use fano_hilbert::catalog::{classify, embedded_catalog, load_catalog, report};
use fano_hilbert::exactq::rat;
use fano_hilbert::families::{projective_space, quadric, weighted_product};
use fano_hilbert::hilbert::{center, from_h0, hyperplane_section, product, serre_reflect};
use fano_hilbert::reducibility::{analyze, analyze_hilbert};
use fano_hilbert::structure::check_structure;
use fano_hilbert::{H0Vector, HilbertPolynomial, Rational, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn integer_value(q: &Rational) -> BigInt {
    assert!(q.is_integer(), "{q} is not an integer");
    q.to_integer()
}

#[test]
fn projective_space_from_binomials() {
    for n in 1..=8u32 {
        let hp = from_h0(n, n + 1, &H0Vector::from_u64s(&[1]).unwrap()).unwrap();
        assert_eq!(hp, projective_space(n).unwrap());
        for t in 0..6u64 {
            assert_eq!(integer_value(&hp.poly().eval(&rat(t as i64, 1))), binom(t + n as u64, n as u64));
        }
    }
}

#[test]
fn quadric_h0_and_section() {
    for n in 3..=7u32 {
        let q = quadric(n).unwrap();
        let h1 = integer_value(&q.poly().eval(&rat(1, 1)));
        assert_eq!(h1, BigInt::from(n + 2));
        let s = hyperplane_section(&q).unwrap();
        assert_eq!(s, quadric(n - 1).unwrap());
    }
}

#[test]
fn json_round_trip() {
    let hp = product(&projective_space(2).unwrap(), &projective_space(2).unwrap()).unwrap();
    let text = serde_json::to_string(&hp).unwrap();
    let back: HilbertPolynomial = serde_json::from_str(&text).unwrap();
    assert_eq!(back, hp);
    let j: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(j["coindex"], 2);
}

#[test]
fn catalog_from_user_csv() {
    let csv = "dim,id,description,b2,variant,v1,v2,expected_q,expected_r,provenance\n\
               3,mine,cubic-like,1,threefold,50,1,true,true,own computation\n";
    let entries = load_catalog(csv.as_bytes()).unwrap();
    let rep = report(&entries);
    assert!(rep.integrity_failures().is_empty());
    assert!(rep.to_text().contains("mine"));
    let entries = embedded_catalog(Some(3));
    for e in &entries {
        if e.data.is_some() {
            assert!(classify(e).unwrap().integrity_ok(), "{}", e.id);
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h0_recovery_of_weighted_products(a in 1u32..=3, b in 1u32..=3) {
        let pa = projective_space(a).unwrap();
        let pb = projective_space(b).unwrap();
        let g = gcd(a + 1, b + 1);
        let hp = weighted_product(&pa, (a + 1) / g, &pb, (b + 1) / g, g).unwrap();
        let h0: Vec<BigInt> = hp.h0_values().iter().map(integer_value).collect();
        let back = from_h0(hp.n(), g, &H0Vector::new(h0).unwrap()).unwrap();
        prop_assert_eq!(back.poly(), hp.poly());
        prop_assert!(check_structure(&hp).ok());
    }

    #[test]
    fn products_keep_serre_symmetry(a in 1u32..=4, k in 1u32..=3) {
        let base = projective_space(a).unwrap();
        let mut hp = base.clone();
        for _ in 1..k {
            hp = product(&hp, &base).unwrap();
        }
        prop_assert_eq!(serre_reflect(&hp), hp.poly().clone());
        prop_assert!(center(&hp).has_parity(hp.n() as usize % 2));
        prop_assert!(check_structure(&hp).ok());
    }

    #[test]
    fn split_polynomials_are_recognized(roots in prop::collection::vec(small_rational(), 1..6), lead in 1i64..20) {
        let p = UniPoly::from_roots(rat(lead, 7), &roots);
        let rep = analyze(&p).unwrap();
        prop_assert!(rep.q_verdict);
        prop_assert!(rep.r_verdict);
        prop_assert_eq!(rep.rational_multiplicity(), roots.len());
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(rep.distinct_real_roots, distinct.len());
    }

    #[test]
    fn hyperplane_sections_of_projective_space(n in 2u32..=9) {
        let s = hyperplane_section(&projective_space(n).unwrap()).unwrap();
        prop_assert_eq!(s.iota(), n);
        let lower = projective_space(n - 1).unwrap();
        prop_assert_eq!(s.poly(), lower.poly());
        prop_assert!(analyze_hilbert(&s).unwrap().q_verdict);
        prop_assert!(!s.degree_hn().is_zero());
    }
}
