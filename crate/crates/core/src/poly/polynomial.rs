use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, TermOrder};
use super::ring::{check_same, Ring};
use crate::{Error, Field, Result};

/// A sparse (Laurent) polynomial. Terms are kept sorted by decreasing monomial
/// in the ring's order with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    ring: Ring,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn constant(ring: &Ring, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::InvalidPolynomial(format!("unknown variable `{name}`")))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: F) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    ///
    /// Panics if a non-invertible variable carries a negative exponent.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, F)>) -> Self {
        let mut map: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
            for (i, &e) in m.0.iter().enumerate() {
                assert!(e >= 0 || ring.is_invertible(i), "negative exponent on `{}`", ring.name(i));
            }
            match map.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(ring, map)
    }

    fn from_map(ring: &Ring, map: HashMap<Monomial, F>) -> Self {
        let mut terms: Vec<(Monomial, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = TermOrder::new(ring.order());
        terms.sort_by(|a, b| ord.cmp(&b.0 .0, &a.0 .0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Moves variable `j` to position `map[j]` of `target`. Fails if a
    /// variable in use has no image or a negative exponent lands on a
    /// non-invertible variable.
    pub fn remap(&self, target: &Ring, map: &[Option<usize>]) -> Result<Self> {
        let mut out = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (j, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let k = map[j].ok_or_else(|| {
                    Error::RingMismatch(format!("`{}` has no counterpart in {target}", self.ring.name(j)))
                })?;
                if x < 0 && !target.is_invertible(k) {
                    return Err(Error::RingMismatch(format!("`{}` is not invertible in {target}", target.name(k))));
                }
                e[k] = x;
            }
            out.insert(Monomial(e), c.clone());
        }
        Ok(Self::from_map(target, out))
    }

    /// Re-sorts the terms for a ring with the same variables but possibly a
    /// different monomial order.
    pub fn in_ring(&self, ring: &Ring) -> Result<Self> {
        check_same(&self.ring, ring)?;
        let mut terms = self.terms.clone();
        let ord = TermOrder::new(ring.order());
        terms.sort_by(|a, b| ord.cmp(&b.0 .0, &a.0 .0));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Moves the polynomial into a ring with the same variable names but
    /// possibly different invertibility flags or order.
    pub fn reinterpret(&self, ring: &Ring) -> Result<Self> {
        if self.ring.names() != ring.names() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, ring)));
        }
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && !ring.is_invertible(i) {
                    return Err(Error::InvalidPolynomial(format!("`{self}` has a negative power of `{}`", ring.name(i))));
                }
            }
        }
        Ok(Self::from_terms(ring, self.terms.clone()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    /// Largest total degree of a term (zero polynomial: 0).
    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Sum of the absolute exponents of the largest term, a size measure that
    /// also works for Laurent polynomials.
    pub fn weight(&self) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.0.iter().map(|e| e.unsigned_abs() as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] != 0)
    }

    /// A unit of the ring: a single term on invertible variables only.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 .0.iter().enumerate().all(|(i, &e)| e == 0 || self.ring.is_invertible(i))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = self
            .unit_inverse()
            .ok_or_else(|| Error::InvalidPolynomial(format!("`{self}` is not a unit")))?;
        Ok(inv.pow(k.unsigned_abs() as u32))
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (m, c) = &self.terms[0];
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        Some(Self::monomial(&self.ring, inv, c.inv()))
    }

    /// Evaluates at a point. Invertible variables must have nonzero coordinates.
    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        for (i, a) in point.iter().enumerate() {
            if self.ring.is_invertible(i) && a.is_zero() {
                return Err(Error::ZeroCoordinate(self.ring.name(i).to_string()));
            }
        }
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (a, &e) in point.iter().zip(&m.0) {
                if e != 0 {
                    v = v * a.powi(e as i64);
                }
            }
            total = total + v;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for variable `i`. All images must live in the
    /// same target ring; variables with negative exponents need unit images.
    pub fn substitute(&self, images: &[Polynomial<F>], target: &Ring) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch("wrong number of images".into()));
        }
        for img in images {
            check_same(img.ring(), target)?;
        }
        let mut cache: Vec<HashMap<i32, Polynomial<F>>> = vec![HashMap::new(); images.len()];
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = images[i].powi(e as i64)?;
                    cache[i].insert(e, p);
                }
                term = &term * &cache[i][&e];
            }
            for (tm, tc) in term.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = v.clone() + tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Self::from_map(target, acc))
    }

    /// Componentwise minimum exponents over all terms (zero for the zero
    /// polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let n = self.ring.nvars();
        if self.terms.is_empty() {
            return Monomial::one(n);
        }
        let mut mins = self.terms[0].0 .0.clone();
        for (m, _) in &self.terms[1..] {
            for (a, b) in mins.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        Monomial(mins)
    }

    /// Splits `self = x^shift * core` where `core` has nonnegative exponents
    /// and is not divisible by any invertible variable.
    pub fn split_unit_monomial(&self) -> (Monomial, Self) {
        let mins = self.min_exponents();
        let shift = Monomial(
            mins.0.iter().enumerate().map(|(i, &e)| if self.ring.is_invertible(i) { e } else { 0 }).collect(),
        );
        let inv = Monomial(shift.0.iter().map(|e| -e).collect());
        (shift, self.mul_monomial(&inv, &F::one()))
    }

    /// Exact quotient `self / divisor` in the ring, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || check_same(&self.ring, &divisor.ring).is_err() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (sa, a) = self.split_unit_monomial();
        let (sb, b) = divisor.split_unit_monomial();
        let ord = TermOrder::new(self.ring.order());
        let (lm_b, lc_b) = b.terms[0].clone();
        let mut rem = a;
        let mut quot: Vec<(Monomial, F)> = Vec::new();
        while let Some((lm, lc)) = rem.terms.first().cloned() {
            if !lm_b.divides(&lm) {
                return None;
            }
            let qm = lm.div(&lm_b);
            let qc = lc / lc_b.clone();
            rem = &rem - &b.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
            // the leading monomial strictly decreases, so this terminates
            debug_assert!(rem.terms.first().map_or(true, |(m, _)| ord.cmp(&m.0, &lm.0).is_lt()));
        }
        let q = Self::from_terms(&self.ring, quot);
        Some(q.mul_monomial(&sa.div(&sb), &F::one()))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] != 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                (Monomial(e), c.clone() * F::from_i64(k as i64))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        check_same(&self.ring, &other.ring).expect("polynomials from different rings");
        let ord = TermOrder::new(self.ring.order());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = if i == self.terms.len() {
                std::cmp::Ordering::Less
            } else if j == other.terms.len() {
                std::cmp::Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0 .0, &other.terms[j].0 .0)
            };
            match pick {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.clone() - other.terms[j].1.clone()
                    } else {
                        self.terms[i].1.clone() + other.terms[j].1.clone()
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn multiply(&self, other: &Self) -> Self {
        check_same(&self.ring, &other.ring).expect("polynomials from different rings");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.combine(rhs, false)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.combine(rhs, true)
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.multiply(rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $f(self, rhs: Self) -> Polynomial<F> {
                (&self).$f(&rhs)
            }
        }
        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $f(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.name(i).to_string()),
                    _ => parts.push(format!("{}^{}", self.ring.name(i), e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
