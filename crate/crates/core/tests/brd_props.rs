mod common;

use bralg::brd::{for_each_in_box, SkewElement};
use bralg::poly::{Ideal, RingSpec};
use bralg::{rat, Aut, Datum};
use common::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn weyl_axioms_and_canonical_ideals() {
    let d = weyl();
    assert!(d.validate().ok(), "{}", d.validate());
    let r = d.ring().clone();
    assert!(d.canonical_ideal(&[2]).equals(&ideal(&r, &["(z + 1)*(z + 2)"])).unwrap());
    assert!(d.canonical_ideal(&[0]).is_unit());
    assert!(d.canonical_ideal(&[-1]).is_unit());
    // B_1 B_{-1} = J H = (z + 1), strictly inside B_0 = R
    let mixed = d.canonical_ideal(&[1]).product(&d.sigma_pow(&[1]).apply_ideal(&d.canonical_ideal(&[-1]))).unwrap();
    assert!(mixed.equals(&ideal(&r, &["z + 1"])).unwrap());
}

#[test]
fn validation_failures_name_the_axiom() {
    let r = RingSpec::polynomial(&["z"]);
    let s = Aut::diagonal(&r, vec![q(1)], vec![q(1)]).unwrap();
    let bad_p = Datum::new(
        &r,
        vec![s.clone(), s.clone()],
        vec![vec![q(1), q(2)], vec![q(3), q(1)]],
        vec![Ideal::unit(&r), Ideal::unit(&r)],
        vec![Ideal::unit(&r), Ideal::unit(&r)],
    )
    .unwrap();
    let failed: Vec<_> = bad_p.validate().failures().map(|c| c.name.clone()).collect();
    assert_eq!(failed, vec!["p multiplicatively antisymmetric"]);

    let l = RingSpec::laurent(&["u"]);
    let s1 = Aut::diagonal(&l, vec![q(2)], vec![q(0)]).unwrap();
    let id = Aut::identity(&l);
    let d = Datum::untwisted(
        &l,
        vec![s1, id],
        vec![Ideal::unit(&l), Ideal::unit(&l)],
        vec![Ideal::unit(&l), ideal(&l, &["u + 1"])],
    )
    .unwrap();
    let failed: Vec<_> = d.validate().failures().map(|c| c.name.clone()).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].contains("σ_i(H_k) = H_k"));
}

#[test]
fn weyl_products_follow_skew_rewriting() {
    let d = weyl();
    let r = d.ring().clone();
    let x = d.element(SkewElement::monomial(vec![1], poly(&r, "z + 1"))).unwrap();
    let y = d.element(SkewElement::monomial(vec![-1], poly(&r, "1"))).unwrap();
    // (z+1) t · t^{-1} = z + 1 and t^{-1} (z+1) t = σ^{-1}(z+1) = z
    let xy = d.multiply(&x, &y).unwrap();
    let yx = d.multiply(&y, &x).unwrap();
    assert_eq!(xy.parts().get(&vec![0]).unwrap(), &poly(&r, "z + 1"));
    assert_eq!(yx.parts().get(&vec![0]).unwrap(), &poly(&r, "z"));
    assert_eq!(d.multiply(&d.one(), &x).unwrap(), x);
}

#[test]
fn quantum_pair_differs_by_p21() {
    let r = RingSpec::polynomial(&["z"]);
    let id = Aut::identity(&r);
    let qv = rat(5, 3);
    let d = Datum::new(
        &r,
        vec![id.clone(), id],
        vec![vec![q(1), qv.clone()], vec![qv.recip(), q(1)]],
        vec![Ideal::unit(&r), Ideal::unit(&r)],
        vec![Ideal::unit(&r), Ideal::unit(&r)],
    )
    .unwrap();
    let t1 = SkewElement::t_pow(&r, vec![1, 0]);
    let t2 = SkewElement::t_pow(&r, vec![0, 1]);
    let a = d.skew_mul(&t1, &t2);
    let b = d.skew_mul(&t2, &t1);
    assert_eq!(a, b.scale(&qv.recip()));
}

#[test]
fn generator_lists() {
    let names = |d: &Datum| d.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>();
    assert_eq!(names(&weyl()).len(), 3);
    let w = names(&weyl());
    assert!(w.iter().any(|g| g.contains("z + 1")) && w.iter().any(|g| g.contains("-1")), "{w:?}");
    // (u+v)t, (u+1)^2 t, t^-1, u, u^-1, v, v^-1
    assert_eq!(names(&laurent_example()).len(), 7);
}

#[test]
fn decomposition_recomposes() {
    let d = two_breaks();
    for axis in 0..2 {
        let dec = d.iterate_decompose(axis).unwrap();
        assert!(dec.window_check.ok(), "{}", dec.window_check);
        assert_eq!(dec.inner.rank(), 1);
    }
    assert!(weyl().iterate_decompose(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn canonical_ideals_multiply_into_the_sum(seed in any::<u64>()) {
        let s = random_any(&mut rng(seed));
        let d = &s.datum;
        let n = d.rank();
        let radius = if n == 1 { 2 } else { 1 };
        let mut bad = None;
        for_each_in_box(n, radius, |a| {
            for_each_in_box(n, radius, |b| {
                if bad.is_some() {
                    return;
                }
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let lhs = d.canonical_ideal(a).product(&d.sigma_pow(a).apply_ideal(&d.canonical_ideal(b))).unwrap();
                let whole = d.canonical_ideal(&sum);
                // B_α B_β ⊆ B_{α+β} always; equality needs α_k β_k ≥ 0 on every
                // axis (B_1 B_{-1} = J H is proper in general)
                let same_signs = a.iter().zip(b).all(|(x, y)| x * y >= 0);
                let ok = if same_signs { lhs.equals(&whole).unwrap() } else { whole.contains_ideal(&lhs).unwrap() };
                if !ok {
                    bad = Some((a.to_vec(), b.to_vec()));
                }
            });
        });
        prop_assert!(bad.is_none(), "{}: {:?}", s.label, bad);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = random_any(&mut g);
        let d = &s.datum;
        let (a, b, c) = (random_homogeneous(&mut g, d, 2), random_homogeneous(&mut g, d, 2), random_homogeneous(&mut g, d, 2));
        let left = d.multiply(&d.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = d.multiply(&a, &d.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn t_powers_follow_the_p_law(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = random_sample(&mut g, Shape::Split);
        let d = &s.datum;
        let alpha: Vec<i64> = (0..2).map(|_| g.gen_range(-3..=3)).collect();
        let beta: Vec<i64> = (0..2).map(|_| g.gen_range(-3..=3)).collect();
        let r = d.ring();
        let ab = d.skew_mul(&SkewElement::t_pow(r, alpha.clone()), &SkewElement::t_pow(r, beta.clone()));
        let ba = d.skew_mul(&SkewElement::t_pow(r, beta.clone()), &SkewElement::t_pow(r, alpha.clone()));
        let c = d.p_pair(&beta, &alpha);
        prop_assert_eq!(&c, &p_law_by_words(d.p(), &alpha, &beta));
        prop_assert_eq!(ab, ba.scale(&c));
    }

    #[test]
    fn degrees_add_and_no_zero_divisors(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = random_any(&mut g);
        let d = &s.datum;
        let a = random_homogeneous(&mut g, d, 2).add(&random_homogeneous(&mut g, d, 2));
        let b = random_homogeneous(&mut g, d, 2).add(&random_homogeneous(&mut g, d, 2));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = d.multiply(&a, &b).unwrap();
        prop_assert!(!ab.is_zero());
        for deg in ab.support() {
            let ok = a.support().iter().any(|x| b.support().iter().any(|y| {
                x.iter().zip(y).map(|(u, v)| u + v).collect::<Vec<_>>() == deg
            }));
            prop_assert!(ok, "degree {:?} is not a sum of supports", deg);
        }
    }
}
