use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::datum::{BellRogalskiDatum, Degree};
use crate::aut::Automorphism;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Field, Result};

/// An element `Σ r_α t^α` of the skew Laurent ring, with no membership
/// condition on the coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewElement<F> {
    parts: BTreeMap<Degree, Polynomial<F>>,
}

impl<F: Field> SkewElement<F> {
    pub fn zero() -> Self {
        SkewElement { parts: BTreeMap::new() }
    }

    pub fn monomial(degree: Degree, coeff: Polynomial<F>) -> Self {
        let mut parts = BTreeMap::new();
        if !coeff.is_zero() {
            parts.insert(degree, coeff);
        }
        SkewElement { parts }
    }

    /// `t^α`.
    pub fn t_pow(ring: &Ring, degree: Degree) -> Self {
        Self::monomial(degree, Polynomial::one(ring))
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (Degree, Polynomial<F>)>) -> Self {
        let mut out = Self::zero();
        for (d, c) in parts {
            out.add_term(d, c);
        }
        out
    }

    fn add_term(&mut self, d: Degree, c: Polynomial<F>) {
        if c.is_zero() {
            return;
        }
        match self.parts.remove(&d) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.parts.insert(d, s);
                }
            }
            None => {
                self.parts.insert(d, c);
            }
        }
    }

    pub fn parts(&self) -> &BTreeMap<Degree, Polynomial<F>> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.parts.keys().cloned().collect()
    }

    pub fn component(&self, d: &[i64]) -> Option<&Polynomial<F>> {
        self.parts.get(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.parts {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_parts(self.parts.iter().map(|(d, p)| (d.clone(), p.scale(c))))
    }

    /// Left multiplication by a ring element in degree zero.
    pub fn mul_ring(&self, r: &Polynomial<F>) -> Self {
        Self::from_parts(self.parts.iter().map(|(d, p)| (d.clone(), r * p)))
    }
}

impl<F: Field> fmt::Display for SkewElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(d, c)| {
                let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("({c})*t^[{}]", ds.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for SkewElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the algebra `B = ⊕ I^(α) t^α`: every coefficient lies in the
/// canonical ideal of its degree.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement<F>(SkewElement<F>);

impl<F: Field> GradedElement<F> {
    pub(crate) fn unchecked(s: SkewElement<F>) -> Self {
        GradedElement(s)
    }

    pub fn as_skew(&self) -> &SkewElement<F> {
        &self.0
    }

    pub fn into_skew(self) -> SkewElement<F> {
        self.0
    }

    pub fn parts(&self) -> &BTreeMap<Degree, Polynomial<F>> {
        &self.0.parts
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.0.support()
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedElement(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &F) -> Self {
        GradedElement(self.0.scale(c))
    }
}

impl<F: Field> fmt::Display for GradedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<F: Field> fmt::Debug for GradedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> BellRogalskiDatum<F> {
    /// Checks membership of each coefficient and wraps the element.
    pub fn element(&self, s: SkewElement<F>) -> Result<GradedElement<F>> {
        self.check_membership(&s)?;
        Ok(GradedElement(s))
    }

    pub fn one(&self) -> GradedElement<F> {
        GradedElement(SkewElement::t_pow(self.ring(), vec![0; self.rank()]))
    }

    fn check_membership(&self, s: &SkewElement<F>) -> Result<()> {
        for (d, c) in &s.parts {
            if d.len() != self.rank() {
                return Err(Error::InvalidDatum(format!("degree {d:?} has the wrong length")));
            }
            if !self.canonical_ideal(d).contains(c)? {
                return Err(Error::Membership { degree: d.clone(), coefficient: c.to_string() });
            }
        }
        Ok(())
    }

    /// Product in the skew Laurent ring:
    /// `(a t^α)(b t^β) = a σ^α(b) λ(α, β) t^{α+β}`.
    pub fn skew_mul(&self, a: &SkewElement<F>, b: &SkewElement<F>) -> SkewElement<F> {
        let mut powers: HashMap<&Degree, Automorphism<F>> = HashMap::new();
        let mut out = SkewElement::zero();
        for (alpha, x) in &a.parts {
            let s = powers.entry(alpha).or_insert_with(|| self.sigma_pow(alpha)).clone();
            for (beta, y) in &b.parts {
                let lam = self.lambda(alpha, beta);
                let coeff = (x * &s.apply(y)).scale(&lam);
                let deg: Degree = alpha.iter().zip(beta).map(|(u, v)| u + v).collect();
                out.add_term(deg, coeff);
            }
        }
        out
    }

    /// Product in `B`; with verification on, every coefficient of the result
    /// is re-checked against its canonical ideal.
    pub fn multiply(&self, a: &GradedElement<F>, b: &GradedElement<F>) -> Result<GradedElement<F>> {
        let prod = self.skew_mul(&a.0, &b.0);
        if self.verifies_membership() {
            self.check_membership(&prod)?;
        }
        Ok(GradedElement(prod))
    }
}
