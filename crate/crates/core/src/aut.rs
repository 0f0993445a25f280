//! Scaled affine-monomial automorphisms `x_j ↦ c_j x_{π(j)} + d_j`.

use std::fmt;

use crate::poly::{Ideal, Polynomial, Ring};
use crate::{Error, Field, Result};

/// An automorphism of `R` sending `x_j` to `c_j x_{π(j)} + d_j`.
///
/// `π` must map invertible variables to invertible ones, and invertible
/// variables take no shift, so the image of a unit is a unit.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism<F> {
    ring: Ring,
    perm: Vec<usize>,
    scale: Vec<F>,
    shift: Vec<F>,
}

impl<F: Field> Automorphism<F> {
    pub fn new(ring: &Ring, perm: Vec<usize>, scale: Vec<F>, shift: Vec<F>) -> Result<Self> {
        let n = ring.nvars();
        if perm.len() != n || scale.len() != n || shift.len() != n {
            return Err(Error::InvalidAutomorphism(format!("expected {n} images")));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism("variable images are not a permutation".into()));
            }
            seen[p] = true;
        }
        for j in 0..n {
            if scale[j].is_zero() {
                return Err(Error::InvalidAutomorphism(format!("zero scaling of `{}`", ring.name(j))));
            }
            if ring.is_invertible(j) != ring.is_invertible(perm[j]) {
                return Err(Error::InvalidAutomorphism(format!(
                    "`{}` and `{}` differ in invertibility",
                    ring.name(j),
                    ring.name(perm[j])
                )));
            }
            if ring.is_invertible(j) && !shift[j].is_zero() {
                return Err(Error::InvalidAutomorphism(format!(
                    "invertible variable `{}` cannot be shifted",
                    ring.name(j)
                )));
            }
        }
        Ok(Automorphism { ring: ring.clone(), perm, scale, shift })
    }

    pub fn identity(ring: &Ring) -> Self {
        let n = ring.nvars();
        Automorphism { ring: ring.clone(), perm: (0..n).collect(), scale: vec![F::one(); n], shift: vec![F::zero(); n] }
    }

    pub fn diagonal(ring: &Ring, scale: Vec<F>, shift: Vec<F>) -> Result<Self> {
        Self::new(ring, (0..ring.nvars()).collect(), scale, shift)
    }

    /// Reads off `c`, `π` and `d` from the images of the variables, which
    /// must each have the form `c x_k + d`.
    pub fn from_images(ring: &Ring, images: &[Polynomial<F>]) -> Result<Self> {
        let n = ring.nvars();
        if images.len() != n {
            return Err(Error::InvalidAutomorphism(format!("expected {n} images")));
        }
        let mut perm = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        let mut shift = Vec::with_capacity(n);
        for (j, img) in images.iter().enumerate() {
            let bad = || {
                Error::InvalidAutomorphism(format!(
                    "image `{img}` of `{}` is not of the form c*x + d",
                    ring.name(j)
                ))
            };
            let mut var = None;
            let mut c = F::zero();
            let mut d = F::zero();
            for (m, a) in img.terms() {
                if m.is_one() {
                    d = a.clone();
                    continue;
                }
                let nz: Vec<usize> = (0..n).filter(|&i| m.0[i] != 0).collect();
                if nz.len() != 1 || m.0[nz[0]] != 1 || var.is_some() {
                    return Err(bad());
                }
                var = Some(nz[0]);
                c = a.clone();
            }
            perm.push(var.ok_or_else(bad)?);
            scale.push(c);
            shift.push(d);
        }
        Self::new(ring, perm, scale, shift)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[F] {
        &self.scale
    }

    pub fn shift(&self) -> &[F] {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
            && self.scale.iter().all(|c| c.is_one())
            && self.shift.iter().all(|d| d.is_zero())
    }

    /// No permutation of variables.
    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
    }

    pub fn image_of_var(&self, j: usize) -> Polynomial<F> {
        let x = Polynomial::var(&self.ring, self.perm[j]).scale(&self.scale[j]);
        &x + &Polynomial::constant(&self.ring, self.shift[j].clone())
    }

    pub fn images(&self) -> Vec<Polynomial<F>> {
        (0..self.ring.nvars()).map(|j| self.image_of_var(j)).collect()
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let f = f.in_ring(&self.ring).expect("polynomial from the automorphism's ring");
        f.substitute(&self.images(), &self.ring).expect("images of invertible variables are units")
    }

    pub fn apply_ideal(&self, ideal: &Ideal<F>) -> Ideal<F> {
        ideal.map_gens(&self.ring, |g| Ok(self.apply(g))).expect("same ring")
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.ring.nvars();
        let mut perm = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        let mut shift = Vec::with_capacity(n);
        for j in 0..n {
            let k = other.perm[j];
            perm.push(self.perm[k]);
            scale.push(other.scale[j].clone() * self.scale[k].clone());
            shift.push(other.scale[j].clone() * self.shift[k].clone() + other.shift[j].clone());
        }
        Automorphism { ring: self.ring.clone(), perm, scale, shift }
    }

    pub fn inverse(&self) -> Self {
        let n = self.ring.nvars();
        let mut perm = vec![0; n];
        let mut scale = vec![F::one(); n];
        let mut shift = vec![F::zero(); n];
        for j in 0..n {
            let k = self.perm[j];
            perm[k] = j;
            scale[k] = self.scale[j].inv();
            shift[k] = -(self.shift[j].clone() / self.scale[j].clone());
        }
        Automorphism { ring: self.ring.clone(), perm, scale, shift }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(&self.ring);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// The point `b` with `σ(m_a) = m_b`, so that `σ(f)(b) = f(a)`.
    pub fn act_point(&self, a: &[F]) -> Result<Vec<F>> {
        let n = self.ring.nvars();
        if a.len() != n {
            return Err(Error::RingMismatch(format!("point has {} coordinates, ring has {n} variables", a.len())));
        }
        let mut b = vec![F::zero(); n];
        for j in 0..n {
            b[self.perm[j]] = (a[j].clone() - self.shift[j].clone()) / self.scale[j].clone();
        }
        for (i, x) in b.iter().enumerate() {
            if self.ring.is_invertible(i) && x.is_zero() {
                return Err(Error::ZeroCoordinate(self.ring.name(i).to_string()));
            }
        }
        Ok(b)
    }

    /// Every map in this class is locally algebraic: the orbit of each
    /// variable stays inside the span of the variables and 1.
    pub fn is_locally_algebraic(&self) -> (bool, &'static str) {
        (true, "scaled affine-monomial map: orbits of variables span at most the variables and 1")
    }
}

impl<F: Field> fmt::Display for Automorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..self.ring.nvars()).map(|j| format!("{}: {}", self.ring.name(j), self.image_of_var(j))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for Automorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism{self}")
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::{parse_polynomial, RingSpec};
    use crate::{rat, Aut, Poly};

    #[test]
    fn point_action_examples() {
        let r = RingSpec::laurent(&["u", "v"]);
        let s = Aut::diagonal(&r, vec![rat(2, 1), rat(3, 1)], vec![rat(0, 1); 2]).unwrap();
        assert_eq!(s.act_point(&[rat(-1, 1), rat(1, 1)]).unwrap(), vec![rat(-1, 2), rat(1, 3)]);
        let z = RingSpec::polynomial(&["z"]);
        let t = Aut::diagonal(&z, vec![rat(1, 1)], vec![rat(1, 1)]).unwrap();
        assert_eq!(t.act_point(&[rat(0, 1)]).unwrap(), vec![rat(-1, 1)]);
    }

    #[test]
    fn invertible_shift_rejected() {
        let r = RingSpec::laurent(&["u"]);
        assert!(Aut::diagonal(&r, vec![rat(1, 1)], vec![rat(1, 1)]).is_err());
        let mixed = RingSpec::new(&["u", "z"], &[true, false], crate::poly::MonomialOrder::DegRevLex).unwrap();
        assert!(Aut::new(&mixed, vec![1, 0], vec![rat(1, 1); 2], vec![rat(0, 1); 2]).is_err());
    }

    #[test]
    fn composition_inverse_and_eval() {
        let r = RingSpec::polynomial(&["x", "y"]);
        let s = Aut::new(&r, vec![1, 0], vec![rat(2, 1), rat(-1, 3)], vec![rat(1, 1), rat(5, 1)]).unwrap();
        let t = Aut::diagonal(&r, vec![rat(7, 1), rat(1, 2)], vec![rat(0, 1), rat(-2, 1)]).unwrap();
        let f: Poly = parse_polynomial(&r, "x^2*y - 3*y + x").unwrap();
        assert_eq!(s.compose(&t).apply(&f), s.apply(&t.apply(&f)));
        assert!(s.compose(&s.inverse()).is_identity());
        assert_eq!(s.pow(-2).apply(&s.pow(2).apply(&f)), f);
        let a = [rat(3, 1), rat(-2, 5)];
        assert_eq!(s.apply(&f).eval(&s.act_point(&a).unwrap()).unwrap(), f.eval(&a).unwrap());
    }

    #[test]
    fn from_images_round_trip() {
        let r = RingSpec::polynomial(&["x", "y"]);
        let imgs: Vec<Poly> = ["2*y + 1", "x"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        let s = Aut::from_images(&r, &imgs).unwrap();
        assert_eq!(s.images(), imgs);
        let bad: Vec<Poly> = ["x*y", "x"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert!(Aut::from_images(&r, &bad).is_err());
    }
}
