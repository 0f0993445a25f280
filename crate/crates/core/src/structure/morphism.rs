use num_traits::One;

use crate::brd::{GradedElement, SkewElement};
use crate::poly::Ring;
use crate::{Check, Datum, Error, Poly, Rational, Report, Result};

/// The graded map `Φ_γ(r t^α) = γ^α φ(r) t'^α` induced by a ring map `φ`
/// compatible with the ideals and automorphisms of two data.
#[derive(Debug, Clone)]
pub struct InducedMorphism {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
    gamma: Vec<Rational>,
    pub report: Report,
}

impl InducedMorphism {
    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn apply_ring(&self, r: &Poly) -> Result<Poly> {
        r.substitute(&self.images, &self.target)
    }

    pub fn apply_skew(&self, s: &SkewElement<Rational>) -> Result<SkewElement<Rational>> {
        let mut parts = Vec::new();
        for (deg, c) in s.parts() {
            let mut g = Rational::one();
            for (gi, &a) in self.gamma.iter().zip(deg) {
                g *= crate::Field::powi(gi, a);
            }
            parts.push((deg.clone(), self.apply_ring(c)?.scale(&g)));
        }
        Ok(SkewElement::from_parts(parts))
    }

    pub fn apply(&self, target: &Datum, x: &GradedElement<Rational>) -> Result<GradedElement<Rational>> {
        target.element(self.apply_skew(x.as_skew())?)
    }

    pub fn source_ring(&self) -> &Ring {
        &self.source
    }
}

/// Builds `Φ_γ` after checking `φ(H_i) ⊆ H'_i`, `φ(J_i) ⊆ J'_i`,
/// `φ σ_i = σ'_i φ` and `p = p'`; then checks multiplicativity on pairs of
/// algebra generators.
pub fn induced_morphism(source: &Datum, target: &Datum, images: Vec<Poly>, gamma: Vec<Rational>) -> Result<InducedMorphism> {
    let n = source.rank();
    if target.rank() != n || gamma.len() != n {
        return Err(Error::Precondition(format!("ranks differ or γ has the wrong length (rank {n})")));
    }
    if images.len() != source.ring().nvars() {
        return Err(Error::Precondition("one image per source variable is required".into()));
    }
    if gamma.iter().any(num_traits::Zero::is_zero) {
        return Err(Error::Precondition("γ entries must be nonzero".into()));
    }
    let map = InducedMorphism {
        source: source.ring().clone(),
        target: target.ring().clone(),
        images,
        gamma,
        report: Report::new(),
    };
    let mut report = Report::new();
    let hyp = |hypothesis: &str, witness: String| Error::Hypothesis { hypothesis: hypothesis.into(), witness };
    for i in 0..n {
        for (label, src, dst) in [("H", source.h(i), target.h(i)), ("J", source.j(i), target.j(i))] {
            for g in src.gens() {
                let img = map.apply_ring(g)?;
                if !dst.contains(&img)? {
                    return Err(hyp(
                        &format!("φ({label}_{0}) ⊆ {label}'_{0}", i + 1),
                        format!("φ({g}) = {img} is not in {dst}"),
                    ));
                }
            }
        }
        report.push(Check::pass(format!("φ(H_{0}) ⊆ H'_{0}, φ(J_{0}) ⊆ J'_{0}", i + 1), "generator images are members"));
        for v in 0..source.ring().nvars() {
            let x = Poly::var(source.ring(), v);
            let lhs = map.apply_ring(&source.sigma(i).apply(&x))?;
            let rhs = target.sigma(i).apply(&map.apply_ring(&x)?);
            if lhs != rhs {
                return Err(hyp(
                    &format!("φ σ_{0} = σ'_{0} φ", i + 1),
                    format!("on {x}: {lhs} != {rhs}"),
                ));
            }
        }
        report.push(Check::pass(format!("φ σ_{0} = σ'_{0} φ", i + 1), "agree on every variable"));
    }
    for i in 0..n {
        for k in 0..n {
            if source.p()[i][k] != target.p()[i][k] {
                return Err(hyp(
                    "p = p'",
                    format!("p_{0}{1} = {2} but p'_{0}{1} = {3}", i + 1, k + 1, source.p()[i][k], target.p()[i][k]),
                ));
            }
        }
    }
    report.push(Check::pass("p = p'", "commutation scalars agree"));
    let gens = source.generators();
    let mut mult = Check::pass("multiplicative on generators", format!("{} pairs", gens.len() * gens.len()));
    'outer: for a in &gens {
        for b in &gens {
            let lhs = map.apply_skew(&source.skew_mul(a.as_skew(), b.as_skew()))?;
            let rhs = target.skew_mul(&map.apply_skew(a.as_skew())?, &map.apply_skew(b.as_skew())?);
            if lhs != rhs {
                mult = Check::fail("multiplicative on generators", format!("Φ(({a})({b})) = {lhs} but Φ({a})Φ({b}) = {rhs}"));
                break 'outer;
            }
        }
    }
    report.push(mult);
    Ok(InducedMorphism { report, ..map })
}
