use num_traits::{One, Zero};

use crate::brd::for_each_in_box;
use crate::poly::{Ideal, Monomial, Ring, RingSpec};
use crate::{Aut, Check, Datum, Error, Field, Poly, Rational, Report, Result};

/// The datum presenting `B^<Φ_γ>` over `R^<φ>`.
#[derive(Debug, Clone)]
pub struct FixedRing {
    pub datum: Datum,
    /// Order of `φ` followed by the orders `m_i` of the `γ_i`.
    pub orders: (u32, Vec<u32>),
    /// New variables of `R^<φ>` and the monomials of `R` they stand for.
    pub generators: Vec<(String, String)>,
    pub report: Report,
}

/// `R^<φ>` for `φ` scaling the variables in `odd` by `-1`: a polynomial
/// or Laurent ring in monomials of even weight on `odd`.
struct InvariantRing {
    source: Ring,
    ring: Ring,
    /// The first odd variable; `R = R^φ ⊕ x_pivot R^φ`.
    pivot: Option<usize>,
    odd: Vec<bool>,
}

impl InvariantRing {
    fn new(source: &Ring, odd: Vec<bool>) -> Result<Self> {
        let n = source.nvars();
        let odd_vars: Vec<usize> = (0..n).filter(|&j| odd[j]).collect();
        let pivot = odd_vars.first().copied();
        if odd_vars.len() > 1 && odd_vars.iter().any(|&j| !source.is_invertible(j)) {
            return Err(Error::Unsupported(
                "the invariant ring is a polynomial or Laurent ring only when all sign-changed variables are invertible or there is just one".into(),
            ));
        }
        let mut names = Vec::with_capacity(n);
        for j in 0..n {
            let x = source.name(j);
            names.push(match pivot {
                Some(p) if j == p => format!("{x}2"),
                Some(p) if odd[j] => format!("{x}_{}", source.name(p)),
                _ => x.to_string(),
            });
        }
        let ring = RingSpec::new(&names, source.invertible_flags(), source.order())?;
        Ok(InvariantRing { source: source.clone(), ring, pivot, odd })
    }

    /// Monomial of `R` that the `k`-th new variable stands for.
    fn generator(&self, k: usize) -> Monomial {
        let mut e = vec![0; self.source.nvars()];
        e[k] = 1;
        match self.pivot {
            Some(p) if k == p => e[k] = 2,
            Some(p) if self.odd[k] => e[p] = -1,
            _ => {}
        }
        Monomial(e)
    }

    fn convert_monomial(&self, m: &Monomial) -> Result<Monomial> {
        let mut e = m.0.clone();
        if let Some(p) = self.pivot {
            let odd_sum: i32 = (0..e.len()).filter(|&j| self.odd[j]).map(|j| m.0[j]).sum();
            if odd_sum % 2 != 0 {
                return Err(Error::Precondition(format!("monomial {m:?} is not invariant")));
            }
            e[p] = odd_sum / 2;
        }
        Ok(Monomial(e))
    }

    fn convert(&self, f: &Poly) -> Result<Poly> {
        let terms = f.terms().iter().map(|(m, c)| Ok((self.convert_monomial(m)?, c.clone()))).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// `I ∩ R^φ` for an ideal generated by `φ`-eigenvectors.
    fn contract(&self, ideal: &Ideal<Rational>, phi: &Aut) -> Result<Ideal<Rational>> {
        let mut gens = Vec::new();
        for g in ideal.gens() {
            let img = phi.apply(g);
            if img == *g {
                gens.push(self.convert(g)?);
            } else if img == -g {
                let p = self.pivot.expect("sign change needs an odd variable");
                gens.push(self.convert(&g.mul_monomial(&Monomial::var(self.source.nvars(), p), &Rational::one()))?);
            } else {
                return Err(Error::Precondition(format!("{g} is not an eigenvector of φ")));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    fn restrict_aut(&self, s: &Aut) -> Result<Aut> {
        let n = self.source.nvars();
        let images = (0..n)
            .map(|k| {
                let w = Poly::monomial(&self.source, self.generator(k), Rational::one());
                self.convert(&s.apply(&w))
            })
            .collect::<Result<Vec<_>>>()?;
        Aut::from_images(&self.ring, &images)
            .map_err(|e| Error::Unsupported(format!("restricted automorphism leaves the affine class: {e}")))
    }
}

fn order_of(c: &Rational) -> Option<u32> {
    if c.is_one() {
        Some(1)
    } else if (-c.clone()).is_one() {
        Some(2)
    } else {
        None
    }
}

/// Invariants of `Φ_γ(r t^α) = γ^α φ(r) t^α` for a diagonal `φ` of finite
/// order and `γ_i = ±1`, with pairwise coprime orders.
///
/// The result is a datum over `R^<φ>` with `s_i = t_i^{m_i}`,
/// `τ_i = σ_i^{m_i}`, `q_ik = p_ik^{m_i m_k}`,
/// `L_i = I^(m_i e_i) ∩ R^φ` and `H_i = τ_i(I^(-m_i e_i) ∩ R^φ)`, so that
/// its canonical ideals are `I^(m∘β) ∩ R^φ`.
pub fn fixed_ring(d: &Datum, phi: &Aut, gamma: &[Rational]) -> Result<FixedRing> {
    let n = d.rank();
    let ring = d.ring();
    if gamma.len() != n {
        return Err(Error::Precondition(format!("expected {n} scalars γ")));
    }
    if !phi.ring().same_variables(ring) {
        return Err(Error::RingMismatch(format!("φ is over {}", phi.ring())));
    }
    if !phi.is_diagonal() || phi.shift().iter().any(|s| !s.is_zero()) {
        return Err(Error::Unsupported("φ must scale each variable without shifting".into()));
    }
    let mut odd = Vec::with_capacity(ring.nvars());
    for (j, c) in phi.scale().iter().enumerate() {
        match order_of(c) {
            Some(o) => odd.push(o == 2),
            None => {
                return Err(Error::Unsupported(format!(
                    "φ scales {} by {c}: only ±1 have finite order over the rationals",
                    ring.name(j)
                )))
            }
        }
    }
    let m0 = if odd.iter().any(|&b| b) { 2 } else { 1 };
    let mut m = Vec::with_capacity(n);
    for (i, g) in gamma.iter().enumerate() {
        m.push(order_of(g).ok_or_else(|| {
            Error::Unsupported(format!(
                "γ_{} = {g}: only orders 1 and 2 are realizable over the rationals",
                i + 1
            ))
        })?);
    }
    if std::iter::once(m0).chain(m.iter().copied()).filter(|&o| o == 2).count() > 1 {
        return Err(Error::Hypothesis {
            hypothesis: "ord(φ), m_1, ..., m_n pairwise coprime".into(),
            witness: format!("orders {m0}, {m:?}"),
        });
    }
    let mut report = Report::new();
    for (i, s) in d.sigmas().iter().enumerate() {
        if !phi.commutes_with(s) {
            return Err(Error::Hypothesis { hypothesis: "φ σ_i = σ_i φ".into(), witness: format!("σ_{} = {s}", i + 1) });
        }
        for (label, ideal) in [("H", d.h(i)), ("J", d.j(i))] {
            if let Some(w) = crate::brd::invariance_witness(phi, ideal) {
                return Err(Error::Hypothesis {
                    hypothesis: format!("φ({label}_{0}) ⊆ {label}_{0}", i + 1),
                    witness: w,
                });
            }
        }
    }
    report.push(Check::pass("hypotheses", format!("φ commutes with every σ_i and preserves H, J; orders {m0}, {m:?}")));
    let inv = InvariantRing::new(ring, odd)?;
    let mut sigma = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    let mut j = Vec::with_capacity(n);
    for i in 0..n {
        let mi = m[i] as i64;
        let tau = d.sigma(i).pow(mi);
        sigma.push(inv.restrict_aut(&tau)?);
        j.push(inv.contract(&d.axis_ideal(i, mi), phi)?);
        h.push(inv.contract(&tau.apply_ideal(&d.axis_ideal(i, -mi)), phi)?);
    }
    let mut q = vec![vec![Rational::one(); n]; n];
    for i in 0..n {
        for k in 0..n {
            q[i][k] = d.p()[i][k].powi((m[i] * m[k]) as i64);
        }
    }
    let out = Datum::new(&inv.ring, sigma, q, h, j)?;
    report.extend(out.validate());
    let radius = if n == 1 { 2 } else { 1 };
    let mut fail = None;
    for_each_in_box(n, radius, |beta| {
        if fail.is_some() {
            return;
        }
        let scaled: Vec<i64> = beta.iter().zip(&m).map(|(b, &mi)| b * mi as i64).collect();
        let expected = inv.contract(&d.canonical_ideal(&scaled), phi);
        let got = out.canonical_ideal(beta);
        match expected.and_then(|e| e.equals(&got)) {
            Ok(true) => {}
            Ok(false) => fail = Some(format!("degree {beta:?}: {got} differs from I^({scaled:?}) ∩ R^φ")),
            Err(e) => fail = Some(format!("degree {beta:?}: {e}")),
        }
    });
    let name = format!("components are I^(m∘β) ∩ R^φ on [-{radius}, {radius}]");
    report.push(match fail {
        None => Check::pass(name, "all degrees agree"),
        Some(w) => Check::fail(name, w),
    });
    let generators = (0..ring.nvars())
        .map(|k| {
            let w = Poly::monomial(ring, inv.generator(k), Rational::one());
            (inv.ring.name(k).to_string(), w.to_string())
        })
        .collect();
    Ok(FixedRing { datum: out, orders: (m0, m), generators, report })
}
