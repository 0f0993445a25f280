use num_traits::{One, Zero};

use crate::brd::{for_each_in_box, Degree, GradedElement, SkewElement};
use crate::poly::{Ideal, Ring, RingSpec};
use crate::{Aut, Check, Datum, Error, Field, Poly, Rational, Report, Result};

/// Twisting data for `B ⊗_τ D`: scalars `d_ik` (`m x n`) and optional
/// lifted automorphisms of the tensor ring, left lifts first.
#[derive(Debug, Clone)]
pub struct TwistSpec {
    pub d: Vec<Vec<Rational>>,
    pub lifts: Option<(Vec<Aut>, Vec<Aut>)>,
}

impl TwistSpec {
    pub fn untwisted(m: usize, n: usize) -> Self {
        TwistSpec { d: vec![vec![Rational::one(); n]; m], lifts: None }
    }
}

/// The datum `W` with `B ⊗_τ D ≅ W`, together with the two factors
/// extended to the tensor ring (used to multiply inside `A` and `C`).
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub datum: Datum,
    pub left: Datum,
    pub right: Datum,
    pub d: Vec<Vec<Rational>>,
    /// Position in the tensor ring of each variable of the left and right
    /// base rings.
    pub left_vars: Vec<usize>,
    pub right_vars: Vec<usize>,
    /// Renamings applied because of name collisions, as `(old, new)`.
    pub renamed: Vec<(String, String)>,
    pub report: Report,
}

/// A pure tensor `x ⊗ y` with `x` in the left skew Laurent ring and `y` in
/// the right one, both written over the tensor ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureTensor {
    pub left: SkewElement<Rational>,
    pub right: SkewElement<Rational>,
}

impl std::fmt::Display for PureTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) ⊗ ({})", self.left, self.right)
    }
}

fn tensor_ring(b: &Ring, d: &Ring) -> Result<(Ring, Vec<(String, String)>)> {
    let mut names = Vec::new();
    let mut renamed = Vec::new();
    for (ring, suffix) in [(b, "_L"), (d, "_R")] {
        let other = if suffix == "_L" { d } else { b };
        for name in ring.names() {
            if other.index_of(name).is_some() {
                let new = format!("{name}{suffix}");
                renamed.push((name.clone(), new.clone()));
                names.push(new);
            } else {
                names.push(name.clone());
            }
        }
    }
    let flags: Vec<bool> = b.invertible_flags().iter().chain(d.invertible_flags()).copied().collect();
    Ok((RingSpec::new(&names, &flags, b.order())?, renamed))
}

fn extend_aut(s: &Aut, target: &Ring, map: &[Option<usize>]) -> Result<Aut> {
    let mut images: Vec<Poly> = (0..target.nvars()).map(|v| Poly::var(target, v)).collect();
    for (j, img) in s.images().iter().enumerate() {
        images[map[j].expect("full map")] = img.remap(target, map)?;
    }
    Aut::from_images(target, &images)
}

fn extend_ideal(i: &Ideal<Rational>, target: &Ring, map: &[Option<usize>]) -> Result<Ideal<Rational>> {
    i.map_gens(target, |g| g.remap(target, map))
}

fn extend_datum(x: &Datum, target: &Ring, map: &[Option<usize>], lifts: Option<&Vec<Aut>>) -> Result<Datum> {
    let sigma = match lifts {
        Some(l) => l.clone(),
        None => x.sigmas().iter().map(|s| extend_aut(s, target, map)).collect::<Result<_>>()?,
    };
    let h = x.hs().iter().map(|i| extend_ideal(i, target, map)).collect::<Result<_>>()?;
    let j = x.js().iter().map(|i| extend_ideal(i, target, map)).collect::<Result<_>>()?;
    let mut out = Datum::new(target, sigma, x.p().to_vec(), h, j)?;
    out.set_verify_membership(x.verifies_membership());
    Ok(out)
}

/// Checks that explicit lifts restrict correctly, commute, preserve the
/// partner's base ring and preserve the partner's canonical ideals for
/// degrees in `[-radius, radius]`.
fn check_lifts(
    own: &Datum,
    own_ext: &Datum,
    own_map: &[Option<usize>],
    partner_ext: &Datum,
    partner_vars: &[usize],
    lifts: &[Aut],
    label: &str,
    radius: i64,
) -> Result<()> {
    let target = own_ext.ring();
    let hyp = |w: String| Error::Hypothesis { hypothesis: format!("lifts of {label}"), witness: w };
    if lifts.len() != own.rank() {
        return Err(hyp(format!("expected {} lifts, found {}", own.rank(), lifts.len())));
    }
    for (i, l) in lifts.iter().enumerate() {
        if !l.ring().same_variables(target) {
            return Err(hyp(format!("lift {} is not over {target}", i + 1)));
        }
        for (j, img) in own.sigma(i).images().iter().enumerate() {
            let expected = img.remap(target, own_map)?;
            let got = l.image_of_var(own_map[j].expect("full map"));
            if got != expected {
                return Err(hyp(format!("lift {} sends {} to {got}, expected {expected}", i + 1, target.name(own_map[j].unwrap()))));
            }
        }
        for &v in partner_vars {
            let img = l.image_of_var(v);
            if (0..target.nvars()).any(|u| img.uses_var(u) && !partner_vars.contains(&u)) {
                return Err(hyp(format!("lift {} sends {} to {img}, outside the partner base ring", i + 1, target.name(v))));
            }
        }
    }
    let mut bad = None;
    for_each_in_box(partner_ext.rank(), radius, |beta| {
        if bad.is_some() {
            return;
        }
        let ideal = partner_ext.canonical_ideal(beta);
        for (i, l) in lifts.iter().enumerate() {
            for g in ideal.gens() {
                let img = l.apply(g);
                if !ideal.contains(&img).unwrap_or(false) {
                    bad = Some(format!("lift {} sends {g} to {img}, outside the degree {beta:?} ideal {ideal}", i + 1));
                    return;
                }
            }
        }
    });
    match bad {
        Some(w) => Err(hyp(w)),
        None => Ok(()),
    }
}

/// The datum `W = (R ⊗ S)_r(s, π, M, N)` with
/// `r = [[p, d], [d^{-T}, q]]`: `t_{m+k} t_i = d_ik t_i t_{m+k}`.
///
/// Without explicit lifts, `π` extends each automorphism by the identity
/// on the other factor. The report covers validation, the lift hypothesis,
/// the factorization of graded components and the twisting rule on
/// embedded generators.
pub fn twisted_tensor(b: &Datum, dd: &Datum, twist: &TwistSpec) -> Result<TensorProduct> {
    let (m, n) = (b.rank(), dd.rank());
    if twist.d.len() != m || twist.d.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidDatum(format!("twist matrix must be {m}x{n}")));
    }
    if twist.d.iter().flatten().any(Zero::is_zero) {
        return Err(Error::InvalidDatum("twist entries must be nonzero".into()));
    }
    let (ring, renamed) = tensor_ring(b.ring(), dd.ring())?;
    let a = b.ring().nvars();
    let left_vars: Vec<usize> = (0..a).collect();
    let right_vars: Vec<usize> = (a..ring.nvars()).collect();
    let lmap: Vec<Option<usize>> = left_vars.iter().map(|&v| Some(v)).collect();
    let rmap: Vec<Option<usize>> = right_vars.iter().map(|&v| Some(v)).collect();
    let (llifts, rlifts) = match &twist.lifts {
        Some((l, r)) => (Some(l), Some(r)),
        None => (None, None),
    };
    let left = extend_datum(b, &ring, &lmap, llifts)?;
    let right = extend_datum(dd, &ring, &rmap, rlifts)?;
    let mut report = Report::new();
    if let (Some(l), Some(r)) = (llifts, rlifts) {
        check_lifts(b, &left, &lmap, &right, &right_vars, l, "left automorphisms", 2)?;
        check_lifts(dd, &right, &rmap, &left, &left_vars, r, "right automorphisms", 2)?;
        for (i, x) in l.iter().chain(r).enumerate() {
            for (k, y) in l.iter().chain(r).enumerate() {
                if i < k && !x.commutes_with(y) {
                    return Err(Error::Hypothesis {
                        hypothesis: "lifts commute".into(),
                        witness: format!("π_{} and π_{}", i + 1, k + 1),
                    });
                }
            }
        }
        report.push(Check::pass("lift hypothesis", "lifts extend, commute and preserve partner ideals on [-2, 2]"));
    } else {
        report.push(Check::pass("lift hypothesis", "trivial lifts σ ⊗ id and id ⊗ φ"));
    }
    let size = m + n;
    let mut r = vec![vec![Rational::one(); size]; size];
    for i in 0..m {
        for k in 0..m {
            r[i][k] = b.p()[i][k].clone();
        }
        for k in 0..n {
            r[i][m + k] = twist.d[i][k].clone();
            r[m + k][i] = twist.d[i][k].recip();
        }
    }
    for i in 0..n {
        for k in 0..n {
            r[m + i][m + k] = dd.p()[i][k].clone();
        }
    }
    let sigma: Vec<Aut> = left.sigmas().iter().chain(right.sigmas()).cloned().collect();
    let h: Vec<Ideal<Rational>> = left.hs().iter().chain(right.hs()).cloned().collect();
    let j: Vec<Ideal<Rational>> = left.js().iter().chain(right.js()).cloned().collect();
    let mut w = Datum::new(&ring, sigma, r, h, j)?;
    w.set_verify_membership(b.verifies_membership() && dd.verifies_membership());
    report.extend(w.validate());
    let mut tp = TensorProduct { datum: w, left, right, d: twist.d.clone(), left_vars, right_vars, renamed, report: Report::new() };
    let radius = if size <= 3 { 2 } else { 1 };
    report.push(tp.component_check(radius)?);
    report.push(tp.twisting_check()?);
    tp.report = report;
    Ok(tp)
}

pub fn untwisted_tensor(b: &Datum, d: &Datum) -> Result<TensorProduct> {
    twisted_tensor(b, d, &TwistSpec::untwisted(b.rank(), d.rank()))
}

impl TensorProduct {
    pub fn m(&self) -> usize {
        self.left.rank()
    }

    pub fn n(&self) -> usize {
        self.right.rank()
    }

    /// `d_{β,α} = Π d_ik^{β_i α_k}` for `β ∈ Z^m`, `α ∈ Z^n`.
    pub fn d_pair(&self, beta: &[i64], alpha: &[i64]) -> Rational {
        let mut acc = Rational::one();
        for (i, &b) in beta.iter().enumerate() {
            for (k, &a) in alpha.iter().enumerate() {
                if a * b != 0 {
                    acc *= self.d[i][k].powi(a * b);
                }
            }
        }
        acc
    }

    fn join(&self, beta: &[i64], alpha: &[i64]) -> Degree {
        beta.iter().chain(alpha).copied().collect()
    }

    /// `W_(α,β) = I^(α) ⊗ 𝓘^(β)` for all degrees in `[-radius, radius]`.
    fn component_check(&self, radius: i64) -> Result<Check> {
        let name = format!("W components factor on [-{radius}, {radius}]");
        let mut fail = None;
        let mut count = 0;
        for_each_in_box(self.m(), radius, |alpha| {
            for_each_in_box(self.n(), radius, |beta| {
                if fail.is_some() {
                    return;
                }
                count += 1;
                let w = self.datum.canonical_ideal(&self.join(alpha, beta));
                let prod = self.left.canonical_ideal(alpha).product(&self.right.canonical_ideal(beta));
                match prod.and_then(|p| p.equals(&w)) {
                    Ok(true) => {}
                    Ok(false) => fail = Some(format!("degree ({alpha:?}, {beta:?}): W has {w}")),
                    Err(e) => fail = Some(format!("degree ({alpha:?}, {beta:?}): {e}")),
                }
            });
        });
        Ok(match fail {
            None => Check::pass(name, format!("{count} degrees")),
            Some(w) => Check::fail(name, w),
        })
    }

    /// `(1 ⊗ y)(x ⊗ 1) = τ(y ⊗ x)` in `W` for algebra generators `x` of the
    /// left factor and `y` of the right one.
    fn twisting_check(&self) -> Result<Check> {
        let name = "embedded generators follow τ";
        let lg: Vec<_> = self.left.generators().into_iter().filter(|g| g.support()[0].iter().any(|&a| a != 0)).collect();
        let rg: Vec<_> = self.right.generators().into_iter().filter(|g| g.support()[0].iter().any(|&a| a != 0)).collect();
        for y in &rg {
            for x in &lg {
                let lhs = self.datum.skew_mul(&self.lift_right(y.as_skew()), &self.lift_left(x.as_skew()));
                let rhs = self.to_w(&tau(self, y.as_skew(), x.as_skew())?);
                if lhs != rhs {
                    return Ok(Check::fail(name, format!("(1 ⊗ {y})({x} ⊗ 1) = {lhs} but τ gives {rhs}")));
                }
            }
        }
        Ok(Check::pass(name, format!("{} generator pairs", lg.len() * rg.len())))
    }

    /// Moves an element of the left skew ring into `W`.
    pub fn lift_left(&self, x: &SkewElement<Rational>) -> SkewElement<Rational> {
        let n = self.n();
        SkewElement::from_parts(x.parts().iter().map(|(d, c)| (self.join(d, &vec![0; n]), c.clone())))
    }

    pub fn lift_right(&self, y: &SkewElement<Rational>) -> SkewElement<Rational> {
        let m = self.m();
        SkewElement::from_parts(y.parts().iter().map(|(d, c)| (self.join(&vec![0; m], d), c.clone())))
    }

    /// The image `ι(x) ι(y)` of a pure tensor in `W`.
    pub fn to_w(&self, t: &PureTensor) -> SkewElement<Rational> {
        self.datum.skew_mul(&self.lift_left(&t.left), &self.lift_right(&t.right))
    }
}

fn homogeneous(x: &SkewElement<Rational>, what: &str) -> Result<Option<(Degree, Poly)>> {
    if x.is_zero() {
        return Ok(None);
    }
    if !x.is_homogeneous() {
        return Err(Error::Precondition(format!("{what} must be homogeneous")));
    }
    let (d, c) = x.parts().iter().next().expect("nonzero");
    Ok(Some((d.clone(), c.clone())))
}

/// `τ(a v^α ⊗ b u^β) = d_{β,α} φ̃^α(b) u^β ⊗ σ̃^{-β}(a) v^α` for homogeneous
/// `a v^α` in the right ring and `b u^β` in the left ring.
pub fn tau(tp: &TensorProduct, y: &SkewElement<Rational>, x: &SkewElement<Rational>) -> Result<PureTensor> {
    let (Some((alpha, a)), Some((beta, b))) = (homogeneous(y, "right factor")?, homogeneous(x, "left factor")?) else {
        return Ok(PureTensor { left: SkewElement::zero(), right: SkewElement::zero() });
    };
    let phi = tp.right.sigma_pow(&alpha);
    let sig = tp.left.sigma_pow(&beta.iter().map(|v| -v).collect::<Vec<_>>());
    let scalar = tp.d_pair(&beta, &alpha);
    Ok(PureTensor {
        left: SkewElement::monomial(beta, phi.apply(&b).scale(&scalar)),
        right: SkewElement::monomial(alpha, sig.apply(&a)),
    })
}

/// Both sides of the associativity condition for `τ` on homogeneous
/// `a, b` (right ring) and `c, d` (left ring):
/// `τ(ab ⊗ cd)` against the composite through `(1⊗τ⊗1)(τ⊗τ)(1⊗τ⊗1)`,
/// each mapped into `W`.
pub fn tau_associativity(
    tp: &TensorProduct,
    a: &SkewElement<Rational>,
    b: &SkewElement<Rational>,
    c: &SkewElement<Rational>,
    d: &SkewElement<Rational>,
) -> Result<(SkewElement<Rational>, SkewElement<Rational>)> {
    let ab = tp.right.skew_mul(a, b);
    let cd = tp.left.skew_mul(c, d);
    let lhs = tp.to_w(&tau(tp, &ab, &cd)?);
    // a ⊗ b ⊗ c ⊗ d  ->  a ⊗ c1 ⊗ b1 ⊗ d
    let t1 = tau(tp, b, c)?;
    // -> c2 ⊗ a2 ⊗ d2 ⊗ b2
    let t2 = tau(tp, a, &t1.left)?;
    let t3 = tau(tp, &t1.right, d)?;
    // -> c2 ⊗ d3 ⊗ a3 ⊗ b2
    let t4 = tau(tp, &t2.right, &t3.left)?;
    let left = tp.left.skew_mul(&t2.left, &t4.left);
    let right = tp.right.skew_mul(&t4.right, &t3.right);
    let rhs = tp.to_w(&PureTensor { left, right });
    Ok((lhs, rhs))
}

/// Moves an element of the left factor `B` into `W`.
pub fn embed_left(tp: &TensorProduct, x: &GradedElement<Rational>) -> Result<GradedElement<Rational>> {
    let map: Vec<Option<usize>> = tp.left_vars.iter().map(|&v| Some(v)).collect();
    let ring = tp.datum.ring();
    let parts = x.parts().iter().map(|(d, c)| Ok((d.clone(), c.remap(ring, &map)?))).collect::<Result<Vec<_>>>()?;
    tp.datum.element(tp.lift_left(&SkewElement::from_parts(parts)))
}

/// Moves an element of the right factor `D` into `W`.
pub fn embed_right(tp: &TensorProduct, y: &GradedElement<Rational>) -> Result<GradedElement<Rational>> {
    let map: Vec<Option<usize>> = tp.right_vars.iter().map(|&v| Some(v)).collect();
    let ring = tp.datum.ring();
    let parts = y.parts().iter().map(|(d, c)| Ok((d.clone(), c.remap(ring, &map)?))).collect::<Result<Vec<_>>>()?;
    tp.datum.element(tp.lift_right(&SkewElement::from_parts(parts)))
}
