//! Integer lattice helpers: prime factorizations of rationals and Z-bases of
//! solution lattices of integer linear equations with parity conditions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Primes dividing `n`, by trial division. Cofactors above 10^14 are
/// returned as if prime.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= n && p <= limit {
        if (&n % &p).is_zero() {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            out.push(p.clone());
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// `v_p(r)` for a nonzero rational.
pub fn valuation(r: &Rational, p: &BigInt) -> i64 {
    fn v(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut k = 0;
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
            k += 1;
        }
        k
    }
    v(r.numer(), p) - v(r.denom(), p)
}

/// Primes occurring in any of the nonzero rationals.
pub fn primes_of(values: &[Rational]) -> Vec<BigInt> {
    let mut set = BTreeSet::new();
    for r in values {
        if r.is_zero() {
            continue;
        }
        set.extend(prime_factors(r.numer()));
        set.extend(prime_factors(r.denom()));
    }
    set.into_iter().collect()
}

/// Constraints on `α ∈ Z^n`: integer equations `row · α = 0` and parity
/// conditions `row · α ≡ 0 (mod 2)`.
#[derive(Debug, Clone, Default)]
pub struct LatticeConstraints {
    pub n: usize,
    pub equations: Vec<Vec<BigInt>>,
    pub parities: Vec<Vec<bool>>,
}

impl LatticeConstraints {
    pub fn new(n: usize) -> Self {
        LatticeConstraints { n, equations: Vec::new(), parities: Vec::new() }
    }

    /// Adds `Σ α_i v_i = 0` for rationals `v` (scaled to integers).
    pub fn add_rational_equation(&mut self, v: &[Rational]) {
        let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let row: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            self.equations.push(row);
        }
    }

    /// Adds `Π v_i^{α_i} = 1` for nonzero rationals `v`.
    pub fn add_multiplicative(&mut self, v: &[Rational]) {
        for p in primes_of(v) {
            self.equations.push(v.iter().map(|r| BigInt::from(valuation(r, &p))).collect());
        }
        let signs: Vec<bool> = v.iter().map(|r| r.is_negative()).collect();
        if signs.iter().any(|&s| s) {
            self.parities.push(signs);
        }
    }

    /// A Z-basis of the solution lattice.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let mut basis = integer_kernel(&self.equations, self.n);
        for par in &self.parities {
            let odd = |b: &Vec<BigInt>| {
                let s: BigInt = b.iter().zip(par).filter(|(_, &p)| p).map(|(x, _)| x.clone()).sum();
                s.is_odd()
            };
            let Some(j) = basis.iter().position(|b| odd(b)) else { continue };
            let pivot = basis[j].clone();
            for (k, b) in basis.iter_mut().enumerate() {
                if k == j {
                    *b = b.iter().map(|x| x * 2).collect();
                } else if odd(b) {
                    *b = b.iter().zip(&pivot).map(|(x, y)| x + y).collect();
                }
            }
        }
        basis.into_iter().map(|b| b.iter().map(|x| x.to_i64().expect("lattice entry fits i64")).collect()).collect()
    }

    /// Rank of the rational solution space.
    pub fn rational_rank(&self) -> usize {
        integer_kernel(&self.equations, self.n).len()
    }
}

/// Z-basis of `{α ∈ Z^n : A α = 0}` via unimodular column operations.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u starts as the identity; columns of a and u are transformed together
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt| {
        // (col c1, col c2) <- (x c1 + y c2, z c1 + w c2)
        for row in m.iter_mut() {
            let a1 = row[c1].clone();
            let a2 = row[c2].clone();
            row[c1] = x * &a1 + y * &a2;
            row[c2] = z * &a1 + w * &a2;
        }
    };
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot >= n {
            break;
        }
        for c in pivot + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let p = a[r][pivot].clone();
            let q = a[r][c].clone();
            let eg = p.extended_gcd(&q);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let z = -(&q / &g);
            let w = &p / &g;
            col_op(&mut a, pivot, c, &x, &y, &z, &w);
            col_op(&mut u, pivot, c, &x, &y, &z, &w);
        }
        if !a[r][pivot].is_zero() {
            pivot += 1;
        }
    }
    let mut out: Vec<Vec<BigInt>> = (pivot..n).map(|c| (0..n).map(|i| u[i][c].clone()).collect()).collect();
    reduce_basis(&mut out);
    out
}

/// Cheap size reduction: repeatedly subtract multiples of shorter vectors.
fn reduce_basis(b: &mut [Vec<BigInt>]) {
    let norm = |v: &Vec<BigInt>| -> BigInt { v.iter().map(|x| x * x).sum() };
    for _ in 0..20 {
        let mut changed = false;
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i == j {
                    continue;
                }
                let nj = norm(&b[j]);
                if nj.is_zero() {
                    continue;
                }
                let dot: BigInt = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                let q = Rational::new(dot, nj).round().to_integer();
                if !q.is_zero() {
                    let bj = b[j].clone();
                    let cand: Vec<BigInt> = b[i].iter().zip(&bj).map(|(x, y)| x - &q * y).collect();
                    if norm(&cand) < norm(&b[i]) {
                        b[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for v in b.iter_mut() {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    b.sort_by(|x, y| {
        let nx: BigInt = x.iter().map(|a| a.abs()).sum();
        let ny: BigInt = y.iter().map(|a| a.abs()).sum();
        nx.cmp(&ny).then_with(|| y.cmp(x))
    });
}
