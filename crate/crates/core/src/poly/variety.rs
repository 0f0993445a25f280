//! Rational points of zero-dimensional ideals, and restriction of an ideal
//! to the variables it involves.

use num_traits::Zero;

use super::groebner::groebner_basis;
use super::ideal::Ideal;
use super::monomial::TermOrder;
use super::polynomial::Polynomial;
use super::ring::MonomialOrder;
use super::univariate::UniPoly;
use crate::{Error, Poly, RIdeal, Rational, Result};

/// Rational points of a zero-dimensional ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    /// Points in lexicographic order.
    pub points: Vec<Vec<Rational>>,
    /// Whether the variety also has points that are not rational.
    pub has_irrational: bool,
}

/// Whether the ideal has finitely many points over an algebraic closure.
pub fn is_zero_dimensional(ideal: &RIdeal) -> bool {
    let gb = ideal.gb();
    if ideal.is_unit() {
        return true;
    }
    (0..ideal.ring().nvars()).all(|i| {
        gb.iter().any(|g| {
            let lm = &g.terms()[0].0;
            lm.0.iter().enumerate().all(|(k, &e)| k == i || e == 0) && lm.0[i] > 0
        })
    })
}

pub fn rational_points(ideal: &RIdeal) -> Result<PointSet> {
    if !is_zero_dimensional(ideal) {
        return Err(Error::Unsupported(format!("{ideal} is not zero-dimensional")));
    }
    let lex = ideal.ring().polynomial_part().with_order(MonomialOrder::Lex);
    let gens: Vec<Poly> = ideal.gb().iter().map(|g| g.reinterpret(&lex)).collect::<Result<_>>()?;
    let n = lex.nvars();
    let mut out = PointSet { points: Vec::new(), has_irrational: false };
    let mut assignment: Vec<Option<Rational>> = vec![None; n];
    solve(gens, n, &mut assignment, &mut out)?;
    out.points.sort();
    // points of a Laurent ring must have nonzero invertible coordinates;
    // saturation guarantees this, the check guards against misuse
    let ring = ideal.ring();
    out.points.retain(|p| p.iter().enumerate().all(|(i, a)| !ring.is_invertible(i) || !a.is_zero()));
    Ok(out)
}

fn solve(polys: Vec<Poly>, k: usize, assignment: &mut Vec<Option<Rational>>, out: &mut PointSet) -> Result<()> {
    if k == 0 {
        if polys.iter().all(|p| p.is_zero()) {
            out.points.push(assignment.iter().map(|a| a.clone().unwrap()).collect());
        }
        return Ok(());
    }
    let v = k - 1;
    let gb = groebner_basis(&polys, TermOrder::new(MonomialOrder::Lex));
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(());
    }
    let ring = polys.first().map(|p| p.ring().clone());
    let Some(ring) = ring else {
        return Err(Error::Unsupported("positive-dimensional fibre".into()));
    };
    let univ: Vec<&Poly> = gb.iter().filter(|g| (0..ring.nvars()).all(|i| i == v || !g.uses_var(i))).collect();
    let Some(f) = univ.first() else {
        return Err(Error::Unsupported("positive-dimensional fibre".into()));
    };
    let mut dense = vec![Rational::zero(); f.degree_in(v) as usize + 1];
    for (m, c) in f.terms() {
        dense[m.0[v] as usize] = c.clone();
    }
    let up = UniPoly::new(dense);
    let roots = up.rational_roots();
    if (roots.len() as i64) < up.squarefree().degree() {
        out.has_irrational = true;
    }
    for r in roots {
        let images: Vec<Poly> = (0..ring.nvars())
            .map(|i| if i == v { Polynomial::constant(&ring, r.clone()) } else { Polynomial::var(&ring, i) })
            .collect();
        let next: Vec<Poly> = gb.iter().map(|g| g.substitute(&images, &ring)).collect::<Result<_>>()?;
        assignment[v] = Some(r);
        solve(next, v, assignment, out)?;
        assignment[v] = None;
    }
    Ok(())
}

/// An ideal generated by polynomials in a subset of the variables,
/// rewritten over just those variables. `V(ideal)` is `V(sub) × k^rest`.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Indices of the variables the Gröbner basis involves, ascending.
    pub vars: Vec<usize>,
    pub ideal: RIdeal,
}

impl Restriction {
    pub fn new(ideal: &RIdeal) -> Result<Self> {
        let ring = ideal.ring();
        let vars: Vec<usize> = (0..ring.nvars()).filter(|&v| ideal.gb().iter().any(|g| g.uses_var(v))).collect();
        let names: Vec<&str> = vars.iter().map(|&v| ring.name(v)).collect();
        let flags: Vec<bool> = vars.iter().map(|&v| ring.is_invertible(v)).collect();
        let sub = super::RingSpec::new(&names, &flags, ring.order())?;
        let mut map = vec![None; ring.nvars()];
        for (k, &v) in vars.iter().enumerate() {
            map[v] = Some(k);
        }
        let gens = ideal.gb().iter().map(|g| g.remap(&sub, &map)).collect::<Result<Vec<_>>>()?;
        Ok(Restriction { vars, ideal: Ideal::new(&sub, gens)? })
    }

    pub fn project<T: Clone>(&self, point: &[T]) -> Vec<T> {
        self.vars.iter().map(|&v| point[v].clone()).collect()
    }

    /// A diagonal automorphism restricted to the kept variables.
    pub fn restrict_aut(&self, sigma: &crate::Aut) -> Result<crate::Aut> {
        if !sigma.is_diagonal() {
            return Err(Error::Unsupported("restricting an automorphism that permutes variables".into()));
        }
        crate::Aut::diagonal(self.ideal.ring(), self.project(sigma.scale()), self.project(sigma.shift()))
    }
}

/// Convenience: the points of the ideal generated by `gens`.
pub fn points_of(ring: &super::Ring, gens: Vec<Poly>) -> Result<PointSet> {
    rational_points(&Ideal::new(ring, gens)?)
}
