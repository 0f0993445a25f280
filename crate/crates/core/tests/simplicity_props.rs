mod common;

use bralg::poly::{Ideal, RingSpec};
use bralg::simplicity::{
    gamma_simple, hyperplane_condition, invariant_subring, rank1_verdict, rankn_verdict, GammaSimplicity,
    SimplicityOptions, Status,
};
use bralg::structure::untwisted_tensor;
use bralg::{rat, Aut, Datum, Poly, Rational};
use common::*;
use proptest::prelude::*;

const K_MAX: i64 = 8;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect()
}

/// Rational roots of a univariate break generator by the rational root
/// theorem on its integer form.
fn rational_roots(f: &Poly) -> Vec<Rational> {
    let den_lcm = f.terms().iter().fold(1i64, |acc, (_, c)| {
        let d: i64 = c.denom().to_string().parse().unwrap();
        num_integer::lcm(acc, d)
    });
    let mut coeffs = vec![0i64; f.total_degree() as usize + 1];
    for (m, c) in f.terms() {
        let scaled = c.clone() * rat(den_lcm, 1);
        coeffs[m.exps()[0] as usize] = scaled.numer().to_string().parse().unwrap();
    }
    let mut out = Vec::new();
    let low = coeffs.iter().position(|&c| c != 0).unwrap();
    if low > 0 {
        out.push(rat(0, 1));
    }
    let lead = *coeffs.last().unwrap();
    for p in divisors(coeffs[low]) {
        for qd in divisors(lead) {
            for x in [rat(p, qd), rat(-p, qd)] {
                if !out.contains(&x) && f.eval(&[x.clone()]).unwrap() == rat(0, 1) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// `css ∩ σ^k(css) ≠ ∅` for a line datum, from the roots of `h j`.
fn overlaps_at(d: &Datum, roots: &[Rational], k: i64) -> bool {
    let s = d.sigma(0).pow(k);
    roots.iter().any(|r| roots.contains(&s.act_point(&[r.clone()]).unwrap()[0]))
}

#[test]
fn example_verdicts() {
    let opts = SimplicityOptions::default();
    assert_eq!(rank1_verdict(&weyl(), &opts).unwrap().status, Status::Simple);
    let e = laurent_example();
    let v = rank1_verdict(&e, &opts).unwrap();
    assert_eq!(v.status, Status::Simple, "{v}");
    let h = hyperplane_condition(&e, 0, 12).unwrap();
    assert_eq!(h.exact.as_ref().unwrap().points, vec![vec![q(-1), q(1)]]);
    assert!(h.passes_exactly() && h.agree);
    assert!(invariant_subring(&e).unwrap().constants_only);
    assert!(matches!(gamma_simple(&e, &opts), GammaSimplicity::Certified { .. }));
}

#[test]
fn overlapping_breaks_fail_at_two() {
    let d = shifted_overlap();
    let h = hyperplane_condition(&d, 0, 12).unwrap();
    assert!(h.agree);
    assert_eq!(h.first_failure(), Some(2));
    assert_eq!(&h.ideal_mode[..3], &[(1, true), (2, false), (3, true)]);
    let v = rank1_verdict(&d, &SimplicityOptions::default()).unwrap();
    assert_eq!(v.status, Status::NotSimple, "{v}");
}

#[test]
fn invariants_of_opposite_scalings() {
    let r = RingSpec::laurent(&["u", "v", "w"]);
    let s = Aut::diagonal(&r, vec![q(2), q(4), rat(1, 2)], vec![q(0), q(0), q(0)]).unwrap();
    let d = Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![Ideal::unit(&r)]).unwrap();
    let inv = invariant_subring(&d).unwrap();
    assert!(!inv.constants_only);
    for g in &inv.generators {
        assert_eq!(&d.sigma(0).apply(g), g, "{g} is not invariant");
    }
    let shown: Vec<String> = inv.generators.iter().map(|g| g.to_string()).collect();
    assert!(shown.contains(&"u*w".to_string()), "{shown:?}");
    // σ has nontrivial invariants, so R is not σ-simple
    assert!(!gamma_simple(&d, &SimplicityOptions::default()).holds());
}

#[test]
fn tensor_of_example_is_simple() {
    let e = laurent_example();
    let tp = untwisted_tensor(&e, &e).unwrap();
    assert!(tp.datum.validate().ok());
    let v = rankn_verdict(&tp.datum, &SimplicityOptions::default()).unwrap();
    assert_eq!(v.status, Status::Simple, "{v}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn line_modes_match_root_oracle(seed in any::<u64>()) {
        let s = random_sample(&mut rng(seed), Shape::Line);
        let d = &s.datum;
        let h = hyperplane_condition(d, 0, K_MAX).unwrap();
        prop_assert!(h.agree, "{}", s.label);
        let hj = &d.h(0).gens()[0] * &d.j(0).gens()[0];
        let roots = rational_roots(&hj);
        for (k, ok) in &h.ideal_mode {
            prop_assert_eq!(*ok, !overlaps_at(d, &roots, *k), "{}: k = {}", s.label, k);
        }
        if let Some(e) = &h.exact {
            let first = (1..=K_MAX).find(|&k| overlaps_at(d, &roots, k));
            match e.witness_k {
                Some(k) if k <= K_MAX => prop_assert_eq!(Some(k), first, "{}", s.label),
                _ => prop_assert_eq!(first, None, "{}", s.label),
            }
        }
    }

    #[test]
    fn modes_agree_on_planes(seed in any::<u64>()) {
        let s = random_sample(&mut rng(seed), Shape::Plane);
        let h = hyperplane_condition(&s.datum, 0, K_MAX).unwrap();
        prop_assert!(h.agree, "{}", s.label);
        if let Some(pm) = &h.point_mode {
            prop_assert_eq!(pm, &h.ideal_mode, "{}", s.label);
        }
    }

    #[test]
    fn verdicts_carry_their_reasons(seed in any::<u64>()) {
        let shape = if seed % 2 == 0 { Shape::Line } else { Shape::Plane };
        let s = random_sample(&mut rng(seed), shape);
        let d = &s.datum;
        let v = rank1_verdict(d, &SimplicityOptions::default()).unwrap();
        match v.status {
            Status::Simple => {
                prop_assert!(gamma_simple(d, &SimplicityOptions::default()).holds(), "{}", s.label);
                prop_assert!(hyperplane_condition(d, 0, K_MAX).unwrap().passes_exactly(), "{}: {}", s.label, v);
            }
            Status::NotSimple => {
                let witnessed = v.trail.iter().any(|e| e.result == "fail" || e.result == "refuted");
                prop_assert!(witnessed, "{}: {}", s.label, v);
            }
            Status::Inconclusive => prop_assert!(v.unresolved.is_some(), "{}: {}", s.label, v),
        }
    }
}
