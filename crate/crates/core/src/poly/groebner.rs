//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! Internally polynomials are raw term lists sorted by decreasing monomial in
//! a [`TermOrder`]; exponents must be nonnegative.

use std::cmp::Ordering;

use super::monomial::{Monomial, TermOrder};
use super::polynomial::Polynomial;
use crate::Field;

pub(crate) type Raw<F> = Vec<(Monomial, F)>;

pub(crate) fn sort_raw<F>(terms: &mut Raw<F>, order: &TermOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
}

fn monic<F: Field>(p: Raw<F>) -> Raw<F> {
    match p.first() {
        None => p,
        Some((_, c)) if c.is_one() => p,
        Some((_, c)) => {
            let inv = c.inv();
            p.into_iter().map(|(m, a)| (m, a * inv.clone())).collect()
        }
    }
}

/// `p - c * m * q`, both sorted in `order`.
fn sub_mul<F: Field>(p: &[(Monomial, F)], q: &[(Monomial, F)], m: &Monomial, c: &F, order: &TermOrder) -> Raw<F> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let mut qj: Option<Monomial> = q.first().map(|t| t.0.mul(m));
    while i < p.len() || j < q.len() {
        let ord = match (&qj, i < p.len()) {
            (None, _) => Ordering::Greater,
            (Some(_), false) => Ordering::Less,
            (Some(qm), true) => order.cmp(&p[i].0 .0, &qm.0),
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((qj.take().unwrap(), -(q[j].1.clone() * c.clone())));
                j += 1;
                qj = q.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = p[i].1.clone() - q[j].1.clone() * c.clone();
                if !v.is_zero() {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                qj = q.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

/// Full normal form of `p` with respect to the (monic) polynomials `basis`.
pub(crate) fn normal_form<F: Field>(p: Raw<F>, basis: &[&Raw<F>], order: &TermOrder) -> Raw<F> {
    let mut rem = p;
    let mut start = 0;
    let mut out: Raw<F> = Vec::new();
    while start < rem.len() {
        let (lm, lc) = (&rem[start].0, &rem[start].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            None => {
                out.push(rem[start].clone());
                start += 1;
            }
            Some(g) => {
                let m = lm.div(&g[0].0);
                let c = lc.clone() / g[0].1.clone();
                rem = sub_mul(&rem[start..], g, &m, &c, order);
                start = 0;
            }
        }
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of raw polynomials, sorted by increasing leading
/// monomial. The unit ideal yields `[1]` and the zero ideal `[]`.
pub(crate) fn groebner_raw<F: Field>(input: Vec<Raw<F>>, order: &TermOrder) -> Vec<Raw<F>> {
    let mut polys: Vec<Raw<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Raw<F>> = input
        .into_iter()
        .map(|mut p| {
            sort_raw(&mut p, order);
            p.retain(|t| !t.1.is_zero());
            p
        })
        .filter(|p| !p.is_empty())
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0 .0, &b[0].0 .0));

    let nvars = inputs.first().map_or(0, |p| p[0].0 .0.len());
    let unit = || vec![vec![(Monomial::one(nvars), F::one())]];

    for f in inputs {
        let basis: Vec<&Raw<F>> = active.iter().map(|&k| &polys[k]).collect();
        let h = monic(normal_form(f, &basis, order));
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return unit();
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let c = order.cmp(&pairs[k].lcm.0, &pairs[best].lcm.0);
            if c == Ordering::Less
                || (c == Ordering::Equal && (pairs[k].i, pairs[k].j) < (pairs[best].i, pairs[best].j))
            {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let (f, g) = (&polys[pair.i], &polys[pair.j]);
        let mf = pair.lcm.div(&f[0].0);
        let mg = pair.lcm.div(&g[0].0);
        let fs: Raw<F> = f.iter().skip(1).map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        let s = sub_mul(&fs, &g[1..], &mg, &F::one(), order);
        let basis: Vec<&Raw<F>> = active.iter().map(|&k| &polys[k]).collect();
        let h = monic(normal_form(s, &basis, order));
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return unit();
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs);
    }

    // minimalize, then interreduce
    let mut lead: Vec<usize> = Vec::new();
    for &k in &active {
        let lm = &polys[k][0].0;
        let redundant = active.iter().any(|&o| o != k && polys[o][0].0.divides(lm) && (polys[o][0].0 != *lm || o < k));
        if !redundant {
            lead.push(k);
        }
    }
    let mut out: Vec<Raw<F>> = Vec::with_capacity(lead.len());
    for &k in &lead {
        let others: Vec<&Raw<F>> = lead.iter().filter(|&&o| o != k).map(|&o| &polys[o]).collect();
        let head = polys[k][0].clone();
        let tail = normal_form(polys[k][1..].to_vec(), &others, order);
        let mut p = vec![head];
        p.extend(tail);
        out.push(monic(p));
    }
    out.sort_by(|a, b| order.cmp(&a[0].0 .0, &b[0].0 .0));
    out
}

/// Gebauer–Möller update after appending a new polynomial to `polys`.
fn update<F: Field>(polys: &[Raw<F>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
    let h = polys.len() - 1;
    let lh = &polys[h][0].0;
    let cands: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, lh.lcm(&polys[g][0].0))).collect();

    // chain criterion among the new pairs; coprime pairs are kept for now so
    // they can shadow others, then dropped by the product criterion
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in cands.iter().enumerate() {
        let coprime = lh.coprime(&polys[*g][0].0);
        let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
            || kept.iter().any(|(_, l2)| l2.divides(l));
        if coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    kept.retain(|(g, _)| !lh.coprime(&polys[*g][0].0));

    pairs.retain(|p| {
        !(lh.divides(&p.lcm) && lh.lcm(&polys[p.i][0].0) != p.lcm && lh.lcm(&polys[p.j][0].0) != p.lcm)
    });
    for (g, l) in kept {
        pairs.push(Pair { i: g, j: h, lcm: l });
    }
    active.retain(|&g| !lh.divides(&polys[g][0].0));
    active.push(h);
}

/// Reduced Gröbner basis of polynomials with nonnegative exponents, sorted
/// by increasing leading monomial in `order`.
pub fn groebner_basis<F: Field>(polys: &[Polynomial<F>], order: TermOrder) -> Vec<Polynomial<F>> {
    let Some(first) = polys.first() else { return Vec::new() };
    let ring = first.ring().clone();
    let raw: Vec<Raw<F>> = polys.iter().map(|p| p.terms().to_vec()).collect();
    groebner_raw(raw, &order).into_iter().map(|p| Polynomial::from_terms(&ring, p)).collect()
}

/// Normal form of `f` modulo a Gröbner basis for `order`.
pub fn reduce<F: Field>(f: &Polynomial<F>, gb: &[Polynomial<F>], order: TermOrder) -> Polynomial<F> {
    let sorted: Vec<Raw<F>> = gb
        .iter()
        .map(|g| {
            let mut t = g.terms().to_vec();
            sort_raw(&mut t, &order);
            t
        })
        .collect();
    let refs: Vec<&Raw<F>> = sorted.iter().collect();
    let mut p = f.terms().to_vec();
    sort_raw(&mut p, &order);
    Polynomial::from_terms(f.ring(), normal_form(p, &refs, &order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, RingSpec};
    use crate::Poly;

    fn polys(ring: &crate::poly::Ring, srcs: &[&str]) -> Vec<Poly> {
        srcs.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect()
    }

    #[test]
    fn univariate_gcd() {
        let r = RingSpec::polynomial(&["x"]);
        let gb = groebner_basis(&polys(&r, &["x^2 - 1", "x - 1"]), TermOrder::new(MonomialOrder::DegRevLex));
        assert_eq!(gb, polys(&r, &["x - 1"]));
    }

    #[test]
    fn cyclic3_lex() {
        let r = RingSpec::polynomial(&["x", "y", "z"]).with_order(MonomialOrder::Lex);
        let gens = polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
        let gb = groebner_basis(&gens, TermOrder::new(MonomialOrder::Lex));
        let expected = polys(&r, &["z^3 - 1", "y^2 + y*z + z^2", "x + y + z"]);
        assert_eq!(gb, expected);
    }

    #[test]
    fn reduction_is_zero_on_members() {
        let r = RingSpec::polynomial(&["x", "y"]);
        let gens = polys(&r, &["x^2 - y", "x*y - 1"]);
        let o = TermOrder::new(MonomialOrder::DegRevLex);
        let gb = groebner_basis(&gens, o);
        let f = &(&gens[0] * &parse_polynomial(&r, "x + y^3").unwrap()) + &gens[1];
        assert!(reduce(&f, &gb, o).is_zero());
        assert!(!reduce(&parse_polynomial(&r, "x + 1").unwrap(), &gb, o).is_zero());
    }
}
