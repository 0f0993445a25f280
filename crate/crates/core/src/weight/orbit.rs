//! Exact orbit equations for diagonal automorphisms.

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{primes_of, valuation, LatticeConstraints};
use crate::{Aut, Field, Rational};

/// Solutions `k ∈ Z` of an orbit equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentSet {
    None,
    All,
    Unique(i64),
    /// All `k` with `k ≡ r (mod 2)`.
    Parity(i64),
}

impl ExponentSet {
    pub fn intersect(self, other: ExponentSet) -> ExponentSet {
        use ExponentSet::*;
        match (self, other) {
            (None, _) | (_, None) => None,
            (All, x) | (x, All) => x,
            (Unique(a), Unique(b)) => {
                if a == b {
                    Unique(a)
                } else {
                    None
                }
            }
            (Unique(a), Parity(r)) | (Parity(r), Unique(a)) => {
                if a.rem_euclid(2) == r {
                    Unique(a)
                } else {
                    None
                }
            }
            (Parity(a), Parity(b)) => {
                if a == b {
                    Parity(a)
                } else {
                    None
                }
            }
        }
    }

    pub fn contains(self, k: i64) -> bool {
        match self {
            ExponentSet::None => false,
            ExponentSet::All => true,
            ExponentSet::Unique(a) => a == k,
            ExponentSet::Parity(r) => k.rem_euclid(2) == r,
        }
    }

    /// Whether some nonzero `k` is a solution.
    pub fn has_nonzero(self) -> bool {
        match self {
            ExponentSet::None => false,
            ExponentSet::Unique(a) => a != 0,
            _ => true,
        }
    }
}

/// The action `a ↦ s a + e` of a diagonal automorphism on one coordinate of
/// points (the inverse of the substitution rule).
pub fn coordinate_map(sigma: &Aut, j: usize) -> (Rational, Rational) {
    let c = &sigma.scale()[j];
    let d = &sigma.shift()[j];
    (c.recip(), -(d / c))
}

/// Solutions of `f^k(a) = b` for `f(x) = s x + e`.
pub fn solve_affine(s: &Rational, e: &Rational, a: &Rational, b: &Rational) -> ExponentSet {
    if s.is_one() {
        if e.is_zero() {
            return if a == b { ExponentSet::All } else { ExponentSet::None };
        }
        let k = (b - a) / e;
        if !k.is_integer() {
            return ExponentSet::None;
        }
        return k.to_integer().to_i64().map_or(ExponentSet::None, ExponentSet::Unique);
    }
    let fixed = e / (Rational::one() - s);
    if *a == fixed {
        return if *b == fixed { ExponentSet::All } else { ExponentSet::None };
    }
    let r = (b - &fixed) / (a - &fixed);
    solve_power(s, &r)
}

/// Solutions of `s^k = r` for `s ∉ {0, 1}`.
pub fn solve_power(s: &Rational, r: &Rational) -> ExponentSet {
    if r.is_zero() {
        return ExponentSet::None;
    }
    if *s == -Rational::one() {
        return if r.is_one() {
            ExponentSet::Parity(0)
        } else if *r == -Rational::one() {
            ExponentSet::Parity(1)
        } else {
            ExponentSet::None
        };
    }
    // |s| != 1, so some prime has nonzero valuation in s
    let p = primes_of(std::slice::from_ref(s)).into_iter().find(|p| valuation(s, p) != 0).expect("|s| != 1");
    let vs = valuation(s, &p);
    let vr = valuation(r, &p);
    if vr % vs != 0 {
        return ExponentSet::None;
    }
    let k = vr / vs;
    if s.powi(k) == *r {
        ExponentSet::Unique(k)
    } else {
        ExponentSet::None
    }
}

/// Solutions `k` of `σ^k · from = to` for a diagonal `σ`; `None` when `σ`
/// permutes variables.
pub fn orbit_exponent(sigma: &Aut, from: &[Rational], to: &[Rational]) -> Option<ExponentSet> {
    if !sigma.is_diagonal() {
        return None;
    }
    let mut acc = ExponentSet::All;
    for j in 0..from.len() {
        let (s, e) = coordinate_map(sigma, j);
        acc = acc.intersect(solve_affine(&s, &e, &from[j], &to[j]));
        if acc == ExponentSet::None {
            break;
        }
    }
    Some(acc)
}

/// Constraints cutting out the stabilizer `{α : σ^α · pt = pt}` for
/// commuting diagonal automorphisms, or `None` if some map permutes
/// variables or two maps share no fixed point on a coordinate.
pub fn stabilizer_constraints(sigmas: &[Aut], pt: &[Rational]) -> Option<LatticeConstraints> {
    if sigmas.iter().any(|s| !s.is_diagonal()) {
        return None;
    }
    let n = sigmas.len();
    let mut cons = LatticeConstraints::new(n);
    for (j, a) in pt.iter().enumerate() {
        let maps: Vec<(Rational, Rational)> = sigmas.iter().map(|s| coordinate_map(s, j)).collect();
        match maps.iter().find(|(s, _)| !s.is_one()) {
            None => {
                let shifts: Vec<Rational> = maps.iter().map(|(_, e)| e.clone()).collect();
                cons.add_rational_equation(&shifts);
            }
            Some((s0, e0)) => {
                let fixed = e0 / (Rational::one() - s0);
                // commuting affine maps share the fixed point
                if maps.iter().any(|(s, e)| s * &fixed + e != fixed) {
                    return None;
                }
                if *a != fixed {
                    let scales: Vec<Rational> = maps.iter().map(|(s, _)| s.clone()).collect();
                    cons.add_multiplicative(&scales);
                }
            }
        }
    }
    Some(cons)
}
