//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bralg::brd::{for_each_in_box, SkewElement};
use bralg::simplicity::{hyperplane_condition, invariant_subring, rank1_verdict, rankn_verdict, SimplicityOptions, Status};
use bralg::structure::{
    from_tgwa, gk_dimension, tau_associativity, to_tgwa, twisted_tensor, untwisted_tensor, TensorProduct, TwistSpec,
};
use bralg::weight::{all_break_classes, break_classes, classify, g_set, in_g_by_ideals, module_table, verify_module};
use bralg::Datum;
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?}"))
}

fn c1_laurent_example() -> Outcome {
    let start = Instant::now();
    let d = laurent_example();
    let h = hyperplane_condition(&d, 0, 12).map_err(|e| e.to_string())?;
    let points = h.exact.as_ref().map(|e| e.points.clone()).ok_or("break locus not solved exactly")?;
    ensure(points == vec![vec![q(-1), q(1)]], || format!("break locus {points:?}"))?;
    let v = rank1_verdict(&d, &SimplicityOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Simple, || format!("verdict {v}"))?;
    let inv = invariant_subring(&d).map_err(|e| e.to_string())?;
    ensure(inv.constants_only, || format!("invariants {:?}", inv.generators))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("break locus {{(-1, 1)}}, SIMPLE, invariants are constants, {t}"))
}

fn c2_tensor_simplicity() -> Outcome {
    let start = Instant::now();
    let e = laurent_example();
    let tp = untwisted_tensor(&e, &e).map_err(|e| e.to_string())?;
    ensure(tp.datum.rank() == 2 && tp.datum.validate().ok(), || format!("{}", tp.datum.validate()))?;
    let v = rankn_verdict(&tp.datum, &SimplicityOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Simple, || format!("verdict {v}"))?;
    ensure(v.trail.iter().any(|t| t.condition == "tensor route" && t.result == "pass"), || format!("no tensor route: {v}"))?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("rank-2 datum valid, SIMPLE via the tensor route, {t}"))
}

fn c3_weyl_classification() -> Outcome {
    let d = weyl();
    let m = [q(0)];
    let b = break_classes(&d, &m, 0, 6).map_err(|e| e.to_string())?;
    ensure(b.classes.len() == 1, || format!("breaks at {:?}", b.offsets()))?;
    let desc = classify(&d, &m, 6).map_err(|e| e.to_string())?;
    ensure(desc.len() == 2, || format!("{} descriptors", desc.len()))?;
    for x in &desc {
        let t = module_table(&d, x, 6, 16).map_err(|e| e.to_string())?;
        let r = verify_module(&d, &t).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("relation failures: {r}"))?;
    }
    Ok("1 break, 2 descriptors, both module tables on [-6, 6] verify".into())
}

fn c4_figure_configuration() -> Outcome {
    let d = two_breaks();
    let m = [q(0), q(0)];
    let axes = all_break_classes(&d, &m, 6).map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    ensure(sizes == vec![3, 3], || format!("break class sizes {sizes:?}"))?;
    let desc = classify(&d, &m, 6).map_err(|e| e.to_string())?;
    ensure(desc.len() == 9, || format!("{} descriptors", desc.len()))?;
    let mut bad = Vec::new();
    for_each_in_box(2, 6, |a| {
        let hits = desc.iter().filter(|x| x.supports(a)).count();
        if hits != 1 {
            bad.push((a.to_vec(), hits));
        }
    });
    ensure(bad.is_empty(), || format!("points covered other than once: {bad:?}"))?;
    Ok("break classes 3 and 3, 9 descriptors partition [-6, 6]^2".into())
}

fn c5_g_box_rule() -> Outcome {
    let mut data = 0;
    let mut points = 0;
    for seed in 0..24 {
        let s = random_any(&mut rng(seed));
        let d = &s.datum;
        let members = g_set(d, &s.point, 4).map_err(|e| format!("{}: {e}", s.label))?;
        let mut mismatch = None;
        for_each_in_box(d.rank(), 4, |a| {
            points += 1;
            match in_g_by_ideals(d, &s.point, a) {
                Ok(inside) if inside == members.contains(&a.to_vec()) => {}
                other => {
                    mismatch.get_or_insert(format!("{}: degree {a:?}: {other:?}", s.label));
                }
            }
        });
        if let Some(m) = mismatch {
            return Err(m);
        }
        data += 1;
    }
    Ok(format!("box rule agrees with the ideal oracle on {data} data, {points} degrees"))
}

fn c6_graded_identities() -> Outcome {
    let mut notes = Vec::new();
    let mut failed = false;

    // literal equality I^(α) σ^α(I^(β)) = I^(α+β), |α_i|, |β_i| ≤ 2
    let (mut pairs, mut unequal, mut same_sign_unequal, mut not_contained) = (0, 0, 0, 0);
    let mut first = None;
    for seed in 0..10 {
        let s = random_any(&mut rng(1000 + seed));
        let d = &s.datum;
        let mut err = None;
        for_each_in_box(d.rank(), 2, |a| {
            for_each_in_box(d.rank(), 2, |b| {
                if err.is_some() {
                    return;
                }
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let whole = d.canonical_ideal(&sum);
                let run = || -> bralg::Result<(bool, bool)> {
                    let lhs = d.canonical_ideal(a).product(&d.sigma_pow(a).apply_ideal(&d.canonical_ideal(b)))?;
                    Ok((lhs.equals(&whole)?, whole.contains_ideal(&lhs)?))
                };
                match run() {
                    Ok((eq, contained)) => {
                        pairs += 1;
                        if !eq {
                            unequal += 1;
                            first.get_or_insert(format!("{}: α = {a:?}, β = {b:?}", s.label));
                            if a.iter().zip(b).all(|(x, y)| x * y >= 0) {
                                same_sign_unequal += 1;
                            }
                        }
                        if !contained {
                            not_contained += 1;
                        }
                    }
                    Err(e) => err = Some(format!("{}: {e}", s.label)),
                }
            });
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    if unequal > 0 {
        failed = true;
        notes.push(format!(
            "ideal equality fails on {unequal}/{pairs} degree pairs ({same_sign_unequal} with α_kβ_k ≥ 0 on every axis; \
             containment fails on {not_contained}); first: {}",
            first.unwrap_or_default()
        ));
    } else {
        notes.push(format!("ideal equality on {pairs} degree pairs"));
    }

    // associativity on 200 homogeneous triples
    let mut g = rng(2000);
    let mut assoc_fail = None;
    for k in 0..200 {
        let s = random_any(&mut g);
        let d = &s.datum;
        let (a, b, c) = (random_homogeneous(&mut g, d, 2), random_homogeneous(&mut g, d, 2), random_homogeneous(&mut g, d, 2));
        let left = d.multiply(&d.multiply(&a, &b).map_err(|e| e.to_string())?, &c).map_err(|e| e.to_string())?;
        let right = d.multiply(&a, &d.multiply(&b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if left != right {
            assoc_fail.get_or_insert(format!("triple {k}: {}", s.label));
        }
    }
    match assoc_fail {
        None => notes.push("associativity on 200 triples".into()),
        Some(w) => {
            failed = true;
            notes.push(format!("associativity fails: {w}"));
        }
    }

    // t^α t^β = p_{β,α} t^β t^α on 100 degree pairs
    let mut g = rng(3000);
    let mut p_fail = None;
    for k in 0..100 {
        let s = random_sample(&mut g, Shape::Split);
        let d = &s.datum;
        let alpha: Vec<i64> = (0..2).map(|_| g.gen_range(-3..=3)).collect();
        let beta: Vec<i64> = (0..2).map(|_| g.gen_range(-3..=3)).collect();
        let r = d.ring();
        let ab = d.skew_mul(&SkewElement::t_pow(r, alpha.clone()), &SkewElement::t_pow(r, beta.clone()));
        let ba = d.skew_mul(&SkewElement::t_pow(r, beta.clone()), &SkewElement::t_pow(r, alpha.clone()));
        let c = d.p_pair(&beta, &alpha);
        if c != p_law_by_words(d.p(), &alpha, &beta) || ab != ba.scale(&c) {
            p_fail.get_or_insert(format!("pair {k}: α = {alpha:?}, β = {beta:?}"));
        }
    }
    match p_fail {
        None => notes.push("p-law on 100 degree pairs".into()),
        Some(w) => {
            failed = true;
            notes.push(format!("p-law fails: {w}"));
        }
    }

    let text = notes.join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn c7_tgwa_round_trip() -> Outcome {
    let mut g = rng(4000);
    for k in 0..10 {
        let shape = if k % 3 == 0 { Shape::Line } else { Shape::Cross };
        let s = random_sample(&mut g, shape);
        let c = to_tgwa(&s.datum).map_err(|e| format!("{}: {e}", s.label))?;
        ensure(c.report.ok(), || format!("{}: {}", s.label, c.report))?;
        let t = &c.tgwa;
        for i in 0..t.rank() {
            for j in 0..t.rank() {
                let lhs = t.mu[i][j].clone() * t.mu[j][i].clone();
                let rhs = t.gamma[i][j].clone() * t.gamma[j][i].clone();
                ensure(i == j || lhs == rhs, || format!("{}: μμ = {lhs}, γγ = {rhs}", s.label))?;
            }
        }
        let back = from_tgwa(t).map_err(|e| e.to_string())?;
        let again = to_tgwa(&back).map_err(|e| e.to_string())?;
        ensure(again.tgwa.a == t.a && again.tgwa.mu == t.mu && again.tgwa.gamma == t.gamma, || {
            format!("{}: round trip changed the TGWA", s.label)
        })?;
    }
    Ok("10 data convert and come back with the same a, μ, γ; μ_ik μ_ki = γ_ik γ_ki".into())
}

fn twisted(b: &Datum, d: &Datum, scalar: i64) -> Result<TensorProduct, String> {
    let mut twist = TwistSpec::untwisted(1, 1);
    twist.d[0][0] = q(scalar);
    twisted_tensor(b, d, &twist).map_err(|e| e.to_string())
}

fn c8_twisted_tensor() -> Outcome {
    let tp = twisted(&weyl(), &laurent_example(), 5)?;
    let ring = tp.datum.ring().clone();
    let u = SkewElement::t_pow(&ring, vec![1, 0]);
    let v = SkewElement::t_pow(&ring, vec![0, 1]);
    ensure(tp.datum.skew_mul(&v, &u) == tp.datum.skew_mul(&u, &v).scale(&q(5)), || "(1⊗v)(u⊗1) ≠ 5 (u⊗1)(1⊗v)".into())?;
    let mut components = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            let prod = tp.left.canonical_ideal(&[a]).product(&tp.right.canonical_ideal(&[b])).map_err(|e| e.to_string())?;
            let same = tp.datum.canonical_ideal(&[a, b]).equals(&prod).map_err(|e| e.to_string())?;
            ensure(same, || format!("W_({a}, {b}) differs"))?;
            components += 1;
        }
    }
    ensure(tp.report.ok(), || tp.report.to_string())?;
    let mut g = rng(5000);
    for k in 0..50 {
        let (x, y) = (random_sample(&mut g, Shape::Line), random_sample(&mut g, Shape::Line));
        let tp = twisted(&x.datum, &y.datum, 5)?;
        let a = random_homogeneous(&mut g, &tp.right, 2);
        let b = random_homogeneous(&mut g, &tp.right, 2);
        let c = random_homogeneous(&mut g, &tp.left, 2);
        let d = random_homogeneous(&mut g, &tp.left, 2);
        let (lhs, rhs) = tau_associativity(&tp, a.as_skew(), b.as_skew(), c.as_skew(), d.as_skew()).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("quadruple {k}: {} ⊗ {}", x.label, y.label))?;
    }
    Ok(format!("d11 = 5 commutation, {components} components factor, τ-associativity on 50 quadruples"))
}

fn c9_gk_dimension() -> Outcome {
    let w = weyl();
    let tp = untwisted_tensor(&w, &w).map_err(|e| e.to_string())?;
    let cases = [("Weyl", w.clone(), 2), ("Laurent example", laurent_example(), 3), ("Weyl ⊗ Weyl", tp.datum, 4)];
    let mut shown = Vec::new();
    for (name, d, expected) in cases {
        let gk = gk_dimension(&d);
        ensure(gk.value == expected, || format!("{name}: {} instead of {expected}", gk.value))?;
        ensure(gk.checklist.ok(), || format!("{name}: {}", gk.checklist))?;
        let certified = gk.checklist.checks.iter().filter(|c| c.name.contains("locally algebraic")).count();
        ensure(certified == d.rank(), || format!("{name}: local algebraicity not certified for every σ_i"))?;
        shown.push(format!("{name} {expected}"));
    }
    Ok(shown.join(", "))
}

fn c10_hyperplane_cross_check() -> Outcome {
    let mut data: Vec<(String, Datum)> =
        vec![("Weyl".into(), weyl()), ("Laurent example".into(), laurent_example()), ("z(z - 2)".into(), shifted_overlap())];
    let mut g = rng(6000);
    for k in 0..20 {
        let s = random_sample(&mut g, if k % 2 == 0 { Shape::Line } else { Shape::Plane });
        data.push((s.label, s.datum));
    }
    let mut both = 0;
    for (label, d) in &data {
        let h = hyperplane_condition(d, 0, 8).map_err(|e| format!("{label}: {e}"))?;
        ensure(h.agree, || format!("{label}: modes disagree"))?;
        if h.point_mode.is_some() {
            both += 1;
        }
    }
    let h = hyperplane_condition(&shifted_overlap(), 0, 8).map_err(|e| e.to_string())?;
    ensure(h.first_failure() == Some(2), || format!("z(z - 2) fails at {:?}, expected 2", h.first_failure()))?;
    ensure(h.ideal_mode[1] == (2, false) && h.point_mode.as_ref().is_some_and(|p| p[1] == (2, false)), || {
        "z(z - 2): k = 2 not detected by both modes".into()
    })?;
    Ok(format!("modes agree on {both} of {} data where both run; z(z - 2) fails at k = 2", data.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Laurent example: break locus, verdict, invariants", c1_laurent_example),
        ("tensor square of the Laurent example is simple", c2_tensor_simplicity),
        ("Weyl classification and module tables", c3_weyl_classification),
        ("two-axis break configuration gives 9 modules", c4_figure_configuration),
        ("box rule for G_m against the ideal oracle", c5_g_box_rule),
        ("graded identities", c6_graded_identities),
        ("TGWA round trip", c7_tgwa_round_trip),
        ("twisted tensor", c8_twisted_tensor),
        ("GK dimension", c9_gk_dimension),
        ("hyperplane condition cross-check", c10_hyperplane_cross_check),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
