use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_raw, normal_form, sort_raw, Raw};
use super::monomial::{Monomial, TermOrder};
use super::polynomial::Polynomial;
use super::ring::{check_same, Ring};
use crate::{Error, Field, Result};

/// An ideal of a polynomial or Laurent ring, given by generators.
///
/// For Laurent rings the ideal is represented by its contraction to the
/// polynomial subring, which is saturated with respect to the product of the
/// invertible variables. The reduced Gröbner basis of that contraction is
/// computed on first use and cached.
#[derive(Clone)]
pub struct Ideal<F> {
    ring: Ring,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Arc<Vec<Polynomial<F>>>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let mut kept: Vec<Polynomial<F>> = Vec::with_capacity(gens.len());
        for g in gens {
            check_same(g.ring(), ring)?;
            let g = g.in_ring(ring)?;
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: kept, gb: OnceLock::new() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn principal(g: Polynomial<F>) -> Self {
        let ring = g.ring().clone();
        Self::new(&ring, vec![g]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    fn order(&self) -> TermOrder {
        TermOrder::new(self.ring.order())
    }

    /// Reduced Gröbner basis of the polynomial contraction, in the ring's
    /// order, sorted by increasing leading monomial.
    pub fn gb(&self) -> &[Polynomial<F>] {
        self.gb.get_or_init(|| Arc::new(self.compute_gb())).as_slice()
    }

    fn compute_gb(&self) -> Vec<Polynomial<F>> {
        let order = self.order();
        let cores: Vec<Raw<F>> = self.gens.iter().map(|g| g.split_unit_monomial().1.terms().to_vec()).collect();
        let inv: Vec<usize> = (0..self.ring.nvars()).filter(|&i| self.ring.is_invertible(i)).collect();
        let needs_saturation =
            !inv.is_empty() && cores.len() > 1 && !cores.iter().any(|c| c.len() == 1 && c[0].0.is_one());
        let basis = if !needs_saturation {
            // a principal ideal generated by a polynomial with no invertible
            // variable factor is already saturated
            groebner_raw(cores, &order)
        } else {
            let n = self.ring.nvars();
            let extend = |m: &Monomial| {
                let mut e = Vec::with_capacity(n + 1);
                e.push(0);
                e.extend_from_slice(&m.0);
                Monomial(e)
            };
            let mut ext: Vec<Raw<F>> = cores.iter().map(|c| c.iter().map(|(m, a)| (extend(m), a.clone())).collect()).collect();
            let mut w = vec![0; n + 1];
            w[0] = 1;
            for &i in &inv {
                w[i + 1] = 1;
            }
            ext.push(vec![(Monomial(w), F::one()), (Monomial::one(n + 1), -F::one())]);
            let eorder = TermOrder::elimination(self.ring.order(), 1);
            groebner_raw(ext, &eorder)
                .into_iter()
                .filter(|p| p.iter().all(|(m, _)| m.0[0] == 0))
                .map(|p| p.into_iter().map(|(m, a)| (Monomial(m.0[1..].to_vec()), a)).collect())
                .collect()
        };
        basis.into_iter().map(|p| Polynomial::from_terms(&self.ring, p)).collect()
    }

    /// Cheap sufficient test for the unit ideal: some generator is a unit.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_constant()
    }

    /// Normal form of `f` (after removing its unit monomial factor) modulo
    /// the contraction; zero exactly when `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        check_same(f.ring(), &self.ring)?;
        let order = self.order();
        let core = f.in_ring(&self.ring)?.split_unit_monomial().1;
        let mut p = core.terms().to_vec();
        sort_raw(&mut p, &order);
        let gb: Vec<Raw<F>> = self.gb().iter().map(|g| g.terms().to_vec()).collect();
        let refs: Vec<&Raw<F>> = gb.iter().collect();
        Ok(Polynomial::from_terms(&self.ring, normal_form(p, &refs, &order)))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        if self.ring.order() == other.ring.order() {
            return Ok(self.gb() == other.gb());
        }
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        if self.has_unit_generator() {
            return Ok(other.clone());
        }
        if other.has_unit_generator() {
            return Ok(self.clone());
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Self::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?.simplified();
        }
        Ok(acc)
    }

    /// The ideal generated by the images of the generators under `f`.
    pub fn map_gens(&self, target: &Ring, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        let gens = self.gens.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(target, gens)
    }

    /// The same ideal with its reduced Gröbner basis as generators.
    pub fn simplified(&self) -> Self {
        let gb = self.gb().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(gb.clone()));
        Ideal { ring: self.ring.clone(), gens: gb, gb: cell }
    }

    pub fn intersection(&self, other: &Ideal<F>) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let order = TermOrder::elimination(self.ring.order(), 1);
        let lift = |p: &Polynomial<F>, t: i32| -> Raw<F> {
            p.terms()
                .iter()
                .map(|(m, a)| {
                    let mut e = vec![t];
                    e.extend_from_slice(&m.0);
                    (Monomial(e), a.clone())
                })
                .collect()
        };
        let mut ext: Vec<Raw<F>> = Vec::new();
        for g in self.gb() {
            ext.push(lift(g, 1));
        }
        for g in other.gb() {
            let mut p = lift(g, 0);
            for (m, a) in lift(g, 1) {
                p.push((m, -a));
            }
            ext.push(p);
        }
        let gens = groebner_raw(ext, &order)
            .into_iter()
            .filter(|p| p.iter().all(|(m, _)| m.0[0] == 0))
            .map(|p| Polynomial::from_terms(&self.ring, p.into_iter().map(|(m, a)| (Monomial(m.0[1..].to_vec()), a)).collect()))
            .collect();
        Self::new(&self.ring, gens)
    }

    /// Whether every generator vanishes at `point`, i.e. the ideal lies in the
    /// maximal ideal of the point.
    pub fn vanishes_at(&self, point: &[F]) -> Result<bool> {
        for g in &self.gens {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Ideal of polynomials that vanish at a rational point.
pub fn maximal_ideal<F: Field>(ring: &Ring, point: &[F]) -> Result<Ideal<F>> {
    if point.len() != ring.nvars() {
        return Err(Error::RingMismatch("point dimension".into()));
    }
    let gens = point
        .iter()
        .enumerate()
        .map(|(i, a)| &Polynomial::var(ring, i) - &Polynomial::constant(ring, a.clone()))
        .collect();
    Ideal::new(ring, gens)
}
