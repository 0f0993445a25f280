use num_traits::{One, Zero};

use crate::brd::SkewElement;
use crate::poly::{Ideal, Ring};
use crate::{Aut, Check, Datum, Error, Poly, Rational, Report, Result};

/// A TGWA of type `(A_1)^n`: `σ_i(a_k) = γ_ik a_k` for `i != k` and the
/// consistency condition `μ_ik μ_ki = γ_ik γ_ki`. Diagonal entries of `μ`
/// and `γ` are unused and kept at 1.
#[derive(Debug, Clone)]
pub struct TgwaDatum {
    pub ring: Ring,
    pub sigma: Vec<Aut>,
    pub a: Vec<Poly>,
    pub mu: Vec<Vec<Rational>>,
    pub gamma: Vec<Vec<Rational>>,
}

impl TgwaDatum {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// Checks the shape, the eigenvalue equations and consistency.
    pub fn validate(&self) -> Report {
        let n = self.rank();
        let mut r = Report::new();
        let shape = self.a.len() == n
            && self.mu.len() == n
            && self.gamma.len() == n
            && self.mu.iter().chain(&self.gamma).all(|row| row.len() == n);
        if !shape {
            r.push(Check::fail("shape", format!("expected {n} elements a_k and {n}x{n} tables")));
            return r;
        }
        r.push(Check::pass("shape", format!("rank {n}")));
        r.push(match self.a.iter().position(|a| a.is_zero()) {
            None => Check::pass("a_k nonzero", "R is a domain, so nonzero means regular"),
            Some(k) => Check::fail("a_k nonzero", format!("a_{} = 0", k + 1)),
        });
        let mut comm = Check::pass("automorphisms commute", "checked on variable images");
        let mut eig = Check::pass("σ_i(a_k) = γ_ik a_k", "exact for all i != k");
        let mut cons = Check::pass("μ_ik μ_ki = γ_ik γ_ki", "exact for all i != k");
        let mut nonzero = Check::pass("μ, γ nonzero", "all off-diagonal entries invertible");
        for i in 0..n {
            for k in 0..n {
                if i == k {
                    continue;
                }
                if self.mu[i][k].is_zero() || self.gamma[i][k].is_zero() {
                    nonzero = Check::fail("μ, γ nonzero", format!("entry ({}, {}) is zero", i + 1, k + 1));
                }
                if !self.sigma[i].commutes_with(&self.sigma[k]) {
                    comm = Check::fail("automorphisms commute", format!("σ_{} and σ_{}", i + 1, k + 1));
                }
                let lhs = self.sigma[i].apply(&self.a[k]);
                let rhs = self.a[k].scale(&self.gamma[i][k]);
                if lhs != rhs {
                    eig = Check::fail(
                        "σ_i(a_k) = γ_ik a_k",
                        format!("σ_{}(a_{}) = {lhs}, γ a = {rhs}", i + 1, k + 1),
                    );
                }
                let m = self.mu[i][k].clone() * self.mu[k][i].clone();
                let g = self.gamma[i][k].clone() * self.gamma[k][i].clone();
                if m != g {
                    cons = Check::fail(
                        "μ_ik μ_ki = γ_ik γ_ki",
                        format!("({}, {}): μμ = {m}, γγ = {g}", i + 1, k + 1),
                    );
                }
            }
        }
        r.push(nonzero);
        r.push(comm);
        r.push(eig);
        r.push(cons);
        r
    }
}

/// Result of converting a datum with principal ideals: the TGWA together
/// with the scalar tables `σ_i(j_k) = u_ik j_k`, `σ_i(h_k) = v_ik h_k`.
#[derive(Debug, Clone)]
pub struct TgwaConversion {
    pub tgwa: TgwaDatum,
    pub h: Vec<Poly>,
    pub j: Vec<Poly>,
    pub u: Vec<Vec<Rational>>,
    pub v: Vec<Vec<Rational>>,
    pub report: Report,
}

fn principal_generator(ideal: &Ideal<Rational>, label: &str) -> Result<Poly> {
    let gb = ideal.gb();
    if gb.len() != 1 {
        return Err(Error::Precondition(format!("{label} = {ideal} is not principal")));
    }
    // prefer the given generator when it already generates
    for g in ideal.gens() {
        if Ideal::principal(g.clone()).equals(ideal)? {
            return Ok(g.clone());
        }
    }
    Ok(gb[0].clone())
}

/// `σ(g) / g`, which must be a nonzero scalar.
fn eigen_scalar(sigma: &Aut, g: &Poly, label: &str) -> Result<Rational> {
    let image = sigma.apply(g);
    let q = image
        .div_exact(g)
        .ok_or_else(|| Error::Precondition(format!("{label}: σ({g}) = {image} is not a multiple of {g}")))?;
    match q.constant_value() {
        Some(c) if !c.is_zero() => Ok(c),
        _ if q.is_unit() => Err(Error::Hypothesis {
            hypothesis: "scalar units".into(),
            witness: format!("{label}: σ({g}) / {g} = {q} is a non-scalar unit"),
        }),
        _ => Err(Error::Precondition(format!("{label}: σ({g}) / {g} = {q} is not a unit"))),
    }
}

/// Scalar units: every unit of `R` is fixed by each `σ_i`. Units are the
/// scalar multiples of monomials in the invertible variables, so it is
/// enough that each invertible variable is fixed.
fn scalar_units(d: &Datum) -> Option<String> {
    let ring = d.ring();
    for (i, s) in d.sigmas().iter().enumerate() {
        for v in 0..ring.nvars() {
            if ring.is_invertible(v) {
                let x = Poly::var(ring, v);
                let img = s.apply(&x);
                if img != x {
                    return Some(format!("σ_{}({x}) = {img}", i + 1));
                }
            }
        }
    }
    None
}

/// Converts a datum with principal `H_k = (h_k)`, `J_k = (j_k)` and scalar
/// units: `a_k = σ_k^{-1}(h_k j_k)`, `γ_ik = u_ik v_ik`,
/// `μ_ik = u_ki v_ik p_ik`.
pub fn to_tgwa(d: &Datum) -> Result<TgwaConversion> {
    let n = d.rank();
    if let Some(w) = scalar_units(d) {
        return Err(Error::Hypothesis { hypothesis: "scalar units".into(), witness: w });
    }
    let mut h = Vec::with_capacity(n);
    let mut j = Vec::with_capacity(n);
    for k in 0..n {
        h.push(principal_generator(d.h(k), &format!("H_{}", k + 1))?);
        j.push(principal_generator(d.j(k), &format!("J_{}", k + 1))?);
    }
    let mut u = vec![vec![Rational::one(); n]; n];
    let mut v = vec![vec![Rational::one(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if i != k {
                u[i][k] = eigen_scalar(d.sigma(i), &j[k], &format!("j_{}", k + 1))?;
                v[i][k] = eigen_scalar(d.sigma(i), &h[k], &format!("h_{}", k + 1))?;
            }
        }
    }
    let a: Vec<Poly> = (0..n).map(|k| d.sigma(k).inverse().apply(&(&h[k] * &j[k]))).collect();
    let mut gamma = vec![vec![Rational::one(); n]; n];
    let mut mu = vec![vec![Rational::one(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if i != k {
                gamma[i][k] = u[i][k].clone() * v[i][k].clone();
                mu[i][k] = u[k][i].clone() * v[i][k].clone() * d.p()[i][k].clone();
            }
        }
    }
    let tgwa = TgwaDatum { ring: d.ring().clone(), sigma: d.sigmas().to_vec(), a, mu, gamma };
    let mut report = tgwa.validate();
    report.extend(tgwa_relations(d, &tgwa, &h, &j)?);
    Ok(TgwaConversion { tgwa, h, j, u, v, report })
}

/// The BR datum of a TGWA: `H_i = R`, `J_i = (σ_i(a_i))`,
/// `p_ik = μ_ik / γ_ki`.
pub fn from_tgwa(t: &TgwaDatum) -> Result<Datum> {
    let report = t.validate();
    if let Some(c) = report.failures().next() {
        return Err(Error::InvalidDatum(format!("TGWA: {}: {}", c.name, c.detail)));
    }
    let n = t.rank();
    let ring = &t.ring;
    let mut p = vec![vec![Rational::one(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if i != k {
                p[i][k] = t.mu[i][k].clone() / t.gamma[k][i].clone();
            }
        }
    }
    let h = vec![Ideal::unit(ring); n];
    let j = (0..n).map(|i| Ideal::principal(t.sigma[i].apply(&t.a[i]))).collect();
    Datum::new(ring, t.sigma.clone(), p, h, j)
}

/// Checks the defining relations of the TGWA on the images
/// `X_i^+ = j_i t_i`, `X_i^- = σ_i^{-1}(h_i) t_i^{-1}` inside the datum.
pub fn tgwa_relations(d: &Datum, t: &TgwaDatum, h: &[Poly], j: &[Poly]) -> Result<Report> {
    let n = d.rank();
    let mut r = Report::new();
    let unit = |i: usize, s: i64| {
        let mut e = vec![0; n];
        e[i] = s;
        e
    };
    let plus: Vec<SkewElement<Rational>> = (0..n).map(|i| SkewElement::monomial(unit(i, 1), j[i].clone())).collect();
    let minus: Vec<SkewElement<Rational>> = (0..n)
        .map(|i| SkewElement::monomial(unit(i, -1), d.sigma(i).inverse().apply(&h[i])))
        .collect();
    let zero = vec![0; n];
    let mut fail: Option<String> = None;
    let mut check = |name: String, lhs: SkewElement<Rational>, rhs: SkewElement<Rational>| {
        if fail.is_none() && lhs != rhs {
            fail = Some(format!("{name}: {lhs} != {rhs}"));
        }
    };
    for i in 0..n {
        let a = SkewElement::monomial(zero.clone(), t.a[i].clone());
        let sa = SkewElement::monomial(zero.clone(), t.sigma[i].apply(&t.a[i]));
        check(format!("X_{0}^- X_{0}^+ = a_{0}", i + 1), d.skew_mul(&minus[i], &plus[i]), a);
        check(format!("X_{0}^+ X_{0}^- = σ_{0}(a_{0})", i + 1), d.skew_mul(&plus[i], &minus[i]), sa);
        for k in 0..n {
            if i == k {
                continue;
            }
            let (mu, g) = (&t.mu[i][k], &t.gamma[i][k]);
            check(
                format!("X_{}^+ X_{}^- = μ X_{}^- X_{}^+", i + 1, k + 1, k + 1, i + 1),
                d.skew_mul(&plus[i], &minus[k]),
                d.skew_mul(&minus[k], &plus[i]).scale(mu),
            );
            check(
                format!("X_{}^+ X_{}^+ = γ/μ X_{}^+ X_{}^+", i + 1, k + 1, k + 1, i + 1),
                d.skew_mul(&plus[i], &plus[k]),
                d.skew_mul(&plus[k], &plus[i]).scale(&(g.clone() / mu.clone())),
            );
            check(
                format!("X_{}^- X_{}^- = γ_ik/μ_ki X_{}^- X_{}^-", k + 1, i + 1, i + 1, k + 1),
                d.skew_mul(&minus[k], &minus[i]),
                d.skew_mul(&minus[i], &minus[k]).scale(&(g.clone() / t.mu[k][i].clone())),
            );
        }
    }
    r.push(match fail {
        None => Check::pass("TGWA relations", "hold on j_i t_i and σ_i^{-1}(h_i) t_i^{-1}"),
        Some(w) => Check::fail("TGWA relations", w),
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};
    use crate::rat;

    fn weyl() -> Datum {
        let r = RingSpec::polynomial(&["z"]);
        let s = Aut::diagonal(&r, vec![rat(1, 1)], vec![rat(1, 1)]).unwrap();
        let j = Ideal::principal(parse_polynomial(&r, "z + 1").unwrap());
        Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![j]).unwrap()
    }

    #[test]
    fn weyl_converts_to_classical_weyl() {
        let d = weyl();
        let c = to_tgwa(&d).unwrap();
        assert!(c.report.ok(), "{}", c.report);
        assert_eq!(c.tgwa.a[0].to_string(), "z");
        let back = from_tgwa(&c.tgwa).unwrap();
        assert!(back.j(0).equals(d.j(0)).unwrap());
    }

    #[test]
    fn rank_two_scalings() {
        let r = RingSpec::polynomial(&["x", "y"]);
        let s1 = Aut::diagonal(&r, vec![rat(2, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]).unwrap();
        let s2 = Aut::diagonal(&r, vec![rat(1, 1), rat(3, 1)], vec![rat(0, 1), rat(0, 1)]).unwrap();
        let x = parse_polynomial(&r, "x").unwrap();
        let y = parse_polynomial(&r, "y").unwrap();
        let p = vec![vec![rat(1, 1), rat(5, 1)], vec![rat(1, 5), rat(1, 1)]];
        let d = Datum::new(
            &r,
            vec![s1, s2],
            p,
            vec![Ideal::principal(y.clone()), Ideal::principal(x.clone())],
            vec![Ideal::principal(y), Ideal::principal(x)],
        )
        .unwrap();
        assert!(d.validate().ok());
        let c = to_tgwa(&d).unwrap();
        assert!(c.report.ok(), "{}", c.report);
        assert_eq!(c.u[0][1], rat(2, 1));
        assert_eq!(c.u[1][0], rat(3, 1));
        let back = from_tgwa(&c.tgwa).unwrap();
        let again = to_tgwa(&back).unwrap();
        assert_eq!(again.tgwa.mu, c.tgwa.mu);
        assert_eq!(again.tgwa.gamma, c.tgwa.gamma);
        assert_eq!(again.tgwa.a, c.tgwa.a);
    }

    #[test]
    fn non_principal_is_rejected() {
        let r = RingSpec::laurent(&["u", "v"]);
        let s = Aut::diagonal(&r, vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]).unwrap();
        let j = Ideal::new(&r, vec![parse_polynomial(&r, "u + v").unwrap(), parse_polynomial(&r, "(u + 1)^2").unwrap()]).unwrap();
        let d = Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![j]).unwrap();
        assert!(matches!(to_tgwa(&d), Err(Error::Precondition(_))));
    }
}
