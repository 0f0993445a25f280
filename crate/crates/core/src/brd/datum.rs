use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::aut::Automorphism;
use crate::poly::{Ideal, Polynomial, Ring};
use crate::{Check, Error, Field, Report, Result};

/// A degree in `Z^n`.
pub type Degree = Vec<i64>;

/// The tuple `(R, t, σ, p, H, J)`.
///
/// Construction checks only shapes and rings; the algebraic axioms are
/// reported by [`BellRogalskiDatum::validate`].
pub struct BellRogalskiDatum<F> {
    ring: Ring,
    sigma: Vec<Automorphism<F>>,
    p: Vec<Vec<F>>,
    h: Vec<Ideal<F>>,
    j: Vec<Ideal<F>>,
    verify: bool,
    break_ideals: Vec<OnceLock<Ideal<F>>>,
    axis_cache: RwLock<HashMap<(usize, i64), Ideal<F>>>,
    cache: RwLock<HashMap<Degree, Ideal<F>>>,
}

impl<F: Field> Clone for BellRogalskiDatum<F> {
    fn clone(&self) -> Self {
        BellRogalskiDatum {
            ring: self.ring.clone(),
            sigma: self.sigma.clone(),
            p: self.p.clone(),
            h: self.h.clone(),
            j: self.j.clone(),
            verify: self.verify,
            break_ideals: self.break_ideals.clone(),
            axis_cache: RwLock::new(self.axis_cache.read().unwrap().clone()),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl<F: Field> BellRogalskiDatum<F> {
    pub fn new(
        ring: &Ring,
        sigma: Vec<Automorphism<F>>,
        p: Vec<Vec<F>>,
        h: Vec<Ideal<F>>,
        j: Vec<Ideal<F>>,
    ) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::InvalidDatum("rank must be at least 1".into()));
        }
        if p.len() != n || p.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidDatum(format!("p must be {n}x{n}")));
        }
        if h.len() != n || j.len() != n {
            return Err(Error::InvalidDatum(format!("expected {n} ideals H and {n} ideals J")));
        }
        if p.iter().flatten().any(|x| x.is_zero()) {
            return Err(Error::InvalidDatum("entries of p must be nonzero".into()));
        }
        for s in &sigma {
            if !s.ring().same_variables(ring) {
                return Err(Error::RingMismatch(format!("automorphism over {} in datum over {ring}", s.ring())));
            }
        }
        for i in h.iter().chain(&j) {
            if !i.ring().same_variables(ring) {
                return Err(Error::RingMismatch(format!("ideal over {} in datum over {ring}", i.ring())));
            }
        }
        Ok(BellRogalskiDatum {
            ring: ring.clone(),
            sigma,
            p,
            h,
            j,
            verify: true,
            break_ideals: (0..n).map(|_| OnceLock::new()).collect(),
            axis_cache: RwLock::new(HashMap::new()),
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Rank-`n` datum with `p_ik = 1`.
    pub fn untwisted(ring: &Ring, sigma: Vec<Automorphism<F>>, h: Vec<Ideal<F>>, j: Vec<Ideal<F>>) -> Result<Self> {
        let n = sigma.len();
        Self::new(ring, sigma, vec![vec![F::one(); n]; n], h, j)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, i: usize) -> &Automorphism<F> {
        &self.sigma[i]
    }

    pub fn sigmas(&self) -> &[Automorphism<F>] {
        &self.sigma
    }

    pub fn p(&self) -> &[Vec<F>] {
        &self.p
    }

    pub fn h(&self, i: usize) -> &Ideal<F> {
        &self.h[i]
    }

    pub fn j(&self, i: usize) -> &Ideal<F> {
        &self.j[i]
    }

    pub fn hs(&self) -> &[Ideal<F>] {
        &self.h
    }

    pub fn js(&self) -> &[Ideal<F>] {
        &self.j
    }

    /// Whether products re-check that coefficients lie in `I^(α)`.
    pub fn verifies_membership(&self) -> bool {
        self.verify
    }

    pub fn set_verify_membership(&mut self, on: bool) {
        self.verify = on;
    }

    /// `H_i J_i`, whose zero set is the break locus of axis `i`.
    pub fn break_ideal(&self, i: usize) -> &Ideal<F> {
        self.break_ideals[i].get_or_init(|| self.h[i].product(&self.j[i]).expect("same ring").simplified())
    }

    /// `σ^α = σ_1^{α_1} ∘ ⋯ ∘ σ_n^{α_n}`.
    pub fn sigma_pow(&self, alpha: &[i64]) -> Automorphism<F> {
        let mut acc = Automorphism::identity(&self.ring);
        for (s, &a) in self.sigma.iter().zip(alpha) {
            if a != 0 {
                acc = acc.compose(&s.pow(a));
            }
        }
        acc
    }

    /// `I_i^(k)`: `J σ(J) ⋯ σ^{k-1}(J)` for `k > 0`, `σ^{-1}(H) ⋯ σ^{k}(H)`
    /// for `k < 0`, and `R` for `k = 0` (with `σ = σ_i`).
    pub fn axis_ideal(&self, i: usize, k: i64) -> Ideal<F> {
        if k == 0 {
            return Ideal::unit(&self.ring);
        }
        if let Some(found) = self.axis_cache.read().unwrap().get(&(i, k)) {
            return found.clone();
        }
        let prev = self.axis_ideal(i, k - k.signum());
        let factor = if k > 0 {
            self.sigma[i].pow(k - 1).apply_ideal(&self.j[i])
        } else {
            self.sigma[i].pow(k).apply_ideal(&self.h[i])
        };
        let ideal = prev.product(&factor).expect("same ring").simplified();
        self.axis_cache.write().unwrap().insert((i, k), ideal.clone());
        ideal
    }

    /// The canonical ideal `I^(α) = I_1^(α_1) ⋯ I_n^(α_n)`, memoized.
    pub fn canonical_ideal(&self, alpha: &[i64]) -> Ideal<F> {
        assert_eq!(alpha.len(), self.rank(), "degree length");
        if let Some(found) = self.cache.read().unwrap().get(alpha) {
            return found.clone();
        }
        let mut acc = Ideal::unit(&self.ring);
        for (i, &a) in alpha.iter().enumerate() {
            acc = acc.product(&self.axis_ideal(i, a)).expect("same ring");
        }
        let ideal = acc.simplified();
        self.cache.write().unwrap().insert(alpha.to_vec(), ideal.clone());
        ideal
    }

    /// `λ(α, β)` with `t^α t^β = λ(α, β) t^{α+β}` in normal order:
    /// moving `t_i^{β_i}` left past `t_k^{α_k}` for `i < k` costs
    /// `p_ik^{α_k β_i}`.
    pub fn lambda(&self, alpha: &[i64], beta: &[i64]) -> F {
        let n = self.rank();
        let mut acc = F::one();
        for k in 0..n {
            for i in 0..k {
                let e = alpha[k] * beta[i];
                if e != 0 {
                    acc = acc * self.p[i][k].powi(e);
                }
            }
        }
        acc
    }

    /// `p_{β,α} = Π_{i,k} p_ik^{β_i α_k}`, so that `t^α t^β = p_{β,α} t^β t^α`.
    pub fn p_pair(&self, beta: &[i64], alpha: &[i64]) -> F {
        let n = self.rank();
        let mut acc = F::one();
        for i in 0..n {
            for k in 0..n {
                let e = beta[i] * alpha[k];
                if e != 0 {
                    acc = acc * self.p[i][k].powi(e);
                }
            }
        }
        acc
    }

    /// Checks every axiom of a datum; failures carry a witness.
    pub fn validate(&self) -> Report {
        let n = self.rank();
        let mut report = Report::new();

        let mut anti = Check::pass("p multiplicatively antisymmetric", "p_ik p_ki = 1 and p_ii = 1");
        'outer: for i in 0..n {
            if !self.p[i][i].is_one() {
                anti = Check::fail("p multiplicatively antisymmetric", format!("p_{0}{0} = {1} != 1", i + 1, self.p[i][i]));
                break;
            }
            for k in i + 1..n {
                if !(self.p[i][k].clone() * self.p[k][i].clone()).is_one() {
                    anti = Check::fail(
                        "p multiplicatively antisymmetric",
                        format!("p_{0}{1} = {2}, p_{1}{0} = {3}", i + 1, k + 1, self.p[i][k], self.p[k][i]),
                    );
                    break 'outer;
                }
            }
        }
        report.push(anti);

        let mut comm = Check::pass("automorphisms commute", "σ_i σ_k = σ_k σ_i on variable images");
        'outer2: for i in 0..n {
            for k in i + 1..n {
                if !self.sigma[i].commutes_with(&self.sigma[k]) {
                    comm = Check::fail(
                        "automorphisms commute",
                        format!("σ_{}σ_{} = {} but σ_{}σ_{} = {}", i + 1, k + 1,
                            self.sigma[i].compose(&self.sigma[k]), k + 1, i + 1, self.sigma[k].compose(&self.sigma[i])),
                    );
                    break 'outer2;
                }
            }
        }
        report.push(comm);

        let mut inv = Check::pass("σ_i(H_k) = H_k and σ_i(J_k) = J_k for i != k", "checked by Gröbner equality");
        'outer3: for i in 0..n {
            for k in 0..n {
                if i == k {
                    continue;
                }
                for (label, ideal) in [("H", &self.h[k]), ("J", &self.j[k])] {
                    if let Some(w) = invariance_witness(&self.sigma[i], ideal) {
                        inv = Check::fail(
                            "σ_i(H_k) = H_k and σ_i(J_k) = J_k for i != k",
                            format!("σ_{}({label}_{}): {w}", i + 1, k + 1),
                        );
                        break 'outer3;
                    }
                }
            }
        }
        report.push(inv);

        let mut nz = Check::pass("H_i and J_i nonzero", "R is a domain, so every I_i^(k) is nonzero");
        for i in 0..n {
            if self.h[i].is_zero() || self.j[i].is_zero() {
                nz = Check::fail("H_i and J_i nonzero", format!("axis {} has a zero ideal", i + 1));
                break;
            }
        }
        report.push(nz);
        report.push(Check::pass(
            "H_i H_k = H_k H_i, J_i J_k = J_k J_i, H_i J_k = J_k H_i",
            "automatic over a commutative base ring",
        ));
        report
    }

    /// Ring generators followed, per axis, by `g t_i` (g generating `J_i`)
    /// and `σ_i^{-1}(h) t_i^{-1}` (h generating `H_i`).
    pub fn generators(&self) -> Vec<super::GradedElement<F>> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            for g in self.j[i].gens() {
                out.push(super::GradedElement::unchecked(super::SkewElement::monomial(e.clone(), g.clone())));
            }
            e[i] = -1;
            let sinv = self.sigma[i].inverse();
            for g in self.h[i].gens() {
                out.push(super::GradedElement::unchecked(super::SkewElement::monomial(e.clone(), sinv.apply(g))));
            }
        }
        let zero = vec![0; n];
        for v in 0..self.ring.nvars() {
            let x = Polynomial::var(&self.ring, v);
            out.push(super::GradedElement::unchecked(super::SkewElement::monomial(zero.clone(), x.clone())));
            if self.ring.is_invertible(v) {
                let xi = x.unit_inverse().expect("invertible variable");
                out.push(super::GradedElement::unchecked(super::SkewElement::monomial(zero.clone(), xi)));
            }
        }
        out
    }
}

/// `None` if `σ(I) = I`, else a description of a generator showing the
/// difference.
pub(crate) fn invariance_witness<F: Field>(sigma: &Automorphism<F>, ideal: &Ideal<F>) -> Option<String> {
    let image = sigma.apply_ideal(ideal);
    for g in image.gens() {
        if !ideal.contains(g).unwrap_or(false) {
            return Some(format!("image generator {g} is not in {ideal}"));
        }
    }
    for g in ideal.gens() {
        if !image.contains(g).unwrap_or(false) {
            return Some(format!("generator {g} is not in the image {image}"));
        }
    }
    None
}

impl<F: Field> fmt::Debug for BellRogalskiDatum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for BellRogalskiDatum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.ring)?;
        for (i, s) in self.sigma.iter().enumerate() {
            writeln!(f, "sigma{}: {s}", i + 1)?;
        }
        let rows: Vec<String> =
            self.p.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")).collect();
        writeln!(f, "p: [{}]", rows.join("; "))?;
        for i in 0..self.rank() {
            writeln!(f, "H{}: {}", i + 1, self.h[i])?;
            writeln!(f, "J{}: {}", i + 1, self.j[i])?;
        }
        Ok(())
    }
}
