//! Fixtures, a seeded generator of small data and test-only oracles shared
//! by the integration tests and the acceptance run.
#![allow(dead_code)]

use bralg::brd::{Degree, SkewElement};
use bralg::poly::{parse_polynomial, Ideal, Monomial, Ring, RingSpec};
use bralg::{rat, Aut, Datum, Element, Poly, RIdeal, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(r: &Ring, s: &str) -> Poly {
    parse_polynomial(r, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn ideal(r: &Ring, gens: &[&str]) -> RIdeal {
    Ideal::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

pub fn q(n: i64) -> Rational {
    rat(n, 1)
}

pub fn weyl() -> Datum {
    let r = RingSpec::polynomial(&["z"]);
    let s = Aut::diagonal(&r, vec![q(1)], vec![q(1)]).unwrap();
    Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![ideal(&r, &["z + 1"])]).unwrap()
}

/// `Q[u^±, v^±]`, `σ(u) = 2u`, `σ(v) = 3v`, `H = R`, `J = (u + v, (u + 1)^2)`.
pub fn laurent_example() -> Datum {
    let r = RingSpec::laurent(&["u", "v"]);
    let s = Aut::diagonal(&r, vec![q(2), q(3)], vec![q(0), q(0)]).unwrap();
    Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![ideal(&r, &["u + v", "(u + 1)^2"])]).unwrap()
}

/// Two shifts; at `m = (0, 0)` the 1-breaks are `σ_1^{-1}(m)`, `σ_1(m)` and
/// the 2-breaks `σ_2^{-1}(m)`, `σ_2^2(m)`.
pub fn two_breaks() -> Datum {
    let r = RingSpec::polynomial(&["x", "y"]);
    let s1 = Aut::diagonal(&r, vec![q(1), q(1)], vec![q(1), q(0)]).unwrap();
    let s2 = Aut::diagonal(&r, vec![q(1), q(1)], vec![q(0), q(1)]).unwrap();
    Datum::untwisted(
        &r,
        vec![s1, s2],
        vec![Ideal::unit(&r), Ideal::unit(&r)],
        vec![ideal(&r, &["x*(x + 2)"]), ideal(&r, &["y*(y + 3)"])],
    )
    .unwrap()
}

/// `Q[z]`, `σ(z) = z + 1`, `H = R`, `J = (z(z - 2))`: two break points two
/// steps apart.
pub fn shifted_overlap() -> Datum {
    let r = RingSpec::polynomial(&["z"]);
    let s = Aut::diagonal(&r, vec![q(1)], vec![q(1)]).unwrap();
    Datum::untwisted(&r, vec![s], vec![Ideal::unit(&r)], vec![ideal(&r, &["z*(z - 2)"])]).unwrap()
}

/// A random datum together with a point whose orbit is torsion-free.
#[derive(Debug, Clone)]
pub struct Sample {
    pub datum: Datum,
    pub point: Vec<Rational>,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `Q[x]`, one affine automorphism.
    Line,
    /// `Q[x, y]`, rank 1, `σ(x) = x + 1`, `σ(y) = 2y`, break ideals of points.
    Plane,
    /// `Q[x, y]`, σ_1 on x and σ_2 on y, random `p_12`.
    Split,
    /// `Q[x, y]`, `σ_1 = (x + 1, 2y)`, `σ_2 = (x, 3y)`; ideals with
    /// eigen-generators so the TGWA scalar tables are nontrivial.
    Cross,
}

/// Affine map of one coordinate, `x ↦ c x + s`.
#[derive(Debug, Clone)]
struct AxisMap {
    c: Rational,
    s: Rational,
}

impl AxisMap {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let choices = [(1, 1, 1), (1, 1, 2), (1, 1, -1), (2, 1, 0), (3, 1, 0), (-2, 1, 0), (1, 2, 0), (2, 1, 1)];
        let &(a, b, s) = choices.choose(rng).unwrap();
        AxisMap { c: rat(a, b), s: q(s) }
    }

    /// Coordinate of `σ^k(a)` under the point action `a ↦ (a - s) / c`.
    fn orbit(&self, a: &Rational, k: i64) -> Rational {
        let mut x = a.clone();
        for _ in 0..k.abs() {
            x = if k > 0 { (x - self.s.clone()) / self.c.clone() } else { x * self.c.clone() + self.s.clone() };
        }
        x
    }

    fn is_shift(&self) -> bool {
        self.c.is_one()
    }

    /// A starting coordinate whose orbit is infinite.
    fn start(&self, rng: &mut ChaCha8Rng) -> Rational {
        if self.is_shift() {
            return q(rng.gen_range(-3..=3));
        }
        // fixed point of x ↦ c x + s is s / (1 - c); stay away from it
        let fixed = self.s.clone() / (Rational::one() - self.c.clone());
        loop {
            let a = q(rng.gen_range(-3..=3));
            if a != fixed {
                return a;
            }
        }
    }
}

fn linear(var: &str, root: &Rational) -> String {
    format!("({var} - ({root}))")
}

/// A product of at most three factors in `var`, mostly with roots on the
/// orbit of `a` so that breaks occur near the base point.
fn random_factor_product(rng: &mut ChaCha8Rng, var: &str, map: &AxisMap, a: &Rational) -> String {
    let count = rng.gen_range(0..=3);
    let mut factors = Vec::new();
    let mut degree = 0;
    while factors.len() < count && degree < 3 {
        match rng.gen_range(0..10) {
            0 if degree <= 1 => {
                factors.push(format!("({var}^2 + 1)"));
                degree += 2;
            }
            1 => {
                factors.push(linear(var, &(a.clone() + rat(1, 2))));
                degree += 1;
            }
            _ => {
                let k = rng.gen_range(-3..=3);
                factors.push(linear(var, &map.orbit(a, k)));
                degree += 1;
            }
        }
    }
    if factors.is_empty() {
        return "1".into();
    }
    let lead = [1, 2, -3].choose(rng).unwrap();
    format!("{lead}*{}", factors.join("*"))
}

fn random_p(rng: &mut ChaCha8Rng) -> Rational {
    let &(a, b) = [(1, 1), (2, 1), (-1, 1), (3, 2), (1, 3), (-5, 1)].choose(rng).unwrap();
    rat(a, b)
}

pub fn random_sample(rng: &mut ChaCha8Rng, shape: Shape) -> Sample {
    match shape {
        Shape::Line => {
            let r = RingSpec::polynomial(&["x"]);
            let map = AxisMap::random(rng);
            let a = map.start(rng);
            let s = Aut::diagonal(&r, vec![map.c.clone()], vec![map.s.clone()]).unwrap();
            let h = random_factor_product(rng, "x", &map, &a);
            let j = random_factor_product(rng, "x", &map, &a);
            let datum = Datum::untwisted(&r, vec![s], vec![ideal(&r, &[&h])], vec![ideal(&r, &[&j])]).unwrap();
            Sample { datum, point: vec![a], label: format!("line: {map:?}, H = ({h}), J = ({j})") }
        }
        Shape::Plane => {
            let r = RingSpec::polynomial(&["x", "y"]);
            let xm = AxisMap { c: q(1), s: q(1) };
            let ym = AxisMap { c: q(2), s: q(0) };
            let a = vec![q(rng.gen_range(-2..=2)), q(*[1, -1, 2, 3].choose(rng).unwrap())];
            let s = Aut::diagonal(&r, vec![q(1), q(2)], vec![q(1), q(0)]).unwrap();
            let point_ideal = |rng: &mut ChaCha8Rng| -> Vec<String> {
                if rng.gen_bool(0.3) {
                    return vec!["1".into()];
                }
                let k = rng.gen_range(-2..=2);
                let k2 = if rng.gen_bool(0.7) { k } else { k + 1 };
                vec![linear("x", &xm.orbit(&a[0], k)), linear("y", &ym.orbit(&a[1], k2))]
            };
            let h = point_ideal(rng);
            let j = point_ideal(rng);
            let hs: Vec<&str> = h.iter().map(String::as_str).collect();
            let js: Vec<&str> = j.iter().map(String::as_str).collect();
            let datum = Datum::untwisted(&r, vec![s], vec![ideal(&r, &hs)], vec![ideal(&r, &js)]).unwrap();
            Sample { datum, point: a, label: format!("plane: H = {h:?}, J = {j:?}") }
        }
        Shape::Split => {
            let r = RingSpec::polynomial(&["x", "y"]);
            let maps = [AxisMap::random(rng), AxisMap::random(rng)];
            let a = vec![maps[0].start(rng), maps[1].start(rng)];
            let s1 = Aut::diagonal(&r, vec![maps[0].c.clone(), q(1)], vec![maps[0].s.clone(), q(0)]).unwrap();
            let s2 = Aut::diagonal(&r, vec![q(1), maps[1].c.clone()], vec![q(0), maps[1].s.clone()]).unwrap();
            let names = ["x", "y"];
            let mut h = Vec::new();
            let mut j = Vec::new();
            for i in 0..2 {
                h.push(random_factor_product(rng, names[i], &maps[i], &a[i]));
                j.push(random_factor_product(rng, names[i], &maps[i], &a[i]));
            }
            let p12 = random_p(rng);
            let p = vec![vec![q(1), p12.clone()], vec![p12.recip(), q(1)]];
            let datum = Datum::new(
                &r,
                vec![s1, s2],
                p,
                h.iter().map(|g| ideal(&r, &[g])).collect(),
                j.iter().map(|g| ideal(&r, &[g])).collect(),
            )
            .unwrap();
            Sample { datum, point: a, label: format!("split: {maps:?}, H = {h:?}, J = {j:?}, p12 = {p12}") }
        }
        Shape::Cross => {
            let r = RingSpec::polynomial(&["x", "y"]);
            let xm = AxisMap { c: q(1), s: q(1) };
            let a = vec![q(rng.gen_range(-2..=2)), q(*[1, -1, 2].choose(rng).unwrap())];
            let s1 = Aut::diagonal(&r, vec![q(1), q(2)], vec![q(1), q(0)]).unwrap();
            let s2 = Aut::diagonal(&r, vec![q(1), q(3)], vec![q(0), q(0)]).unwrap();
            let gen1 = |rng: &mut ChaCha8Rng| {
                let f = random_factor_product(rng, "x", &xm, &a[0]);
                match rng.gen_range(0..3) {
                    0 => f,
                    e => format!("{f}*y^{e}"),
                }
            };
            let h1 = gen1(rng);
            let j1 = gen1(rng);
            let h2 = format!("y^{}", rng.gen_range(0..=2));
            let j2 = format!("y^{}", rng.gen_range(0..=2));
            let p12 = random_p(rng);
            let p = vec![vec![q(1), p12.clone()], vec![p12.recip(), q(1)]];
            let datum = Datum::new(
                &r,
                vec![s1, s2],
                p,
                vec![ideal(&r, &[&h1]), ideal(&r, &[&h2])],
                vec![ideal(&r, &[&j1]), ideal(&r, &[&j2])],
            )
            .unwrap();
            Sample { datum, point: a, label: format!("cross: H = [{h1}, {h2}], J = [{j1}, {j2}], p12 = {p12}") }
        }
    }
}

/// Any shape, weighted towards the cheap ones.
pub fn random_any(rng: &mut ChaCha8Rng) -> Sample {
    let shape = *[Shape::Line, Shape::Line, Shape::Plane, Shape::Split, Shape::Split, Shape::Cross].choose(rng).unwrap();
    random_sample(rng, shape)
}

/// A random polynomial with small integer coefficients and total degree at
/// most `deg`, with nonnegative exponents.
pub fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, deg: i32, terms: usize) -> Poly {
    let n = r.nvars();
    let mut out = Poly::zero(r);
    for _ in 0..terms {
        let mut e = vec![0i32; n];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut() {
            let take = rng.gen_range(0..=left);
            *slot = take;
            left -= take;
        }
        let c = q(rng.gen_range(-3..=3));
        out = &out + &Poly::monomial(r, Monomial(e), c);
    }
    out
}

/// A random homogeneous element of `B` of degree in `[-radius, radius]^n`:
/// a generator of `I^(α)` times a small random coefficient.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, d: &Datum, radius: i64) -> Element {
    let alpha: Degree = (0..d.rank()).map(|_| rng.gen_range(-radius..=radius)).collect();
    let ideal = d.canonical_ideal(&alpha);
    let gens = ideal.gens();
    let g = gens.choose(rng).cloned().unwrap_or_else(|| Poly::one(d.ring()));
    let mut c = random_poly(rng, d.ring(), 1, 2);
    if c.is_zero() {
        c = Poly::one(d.ring());
    }
    d.element(SkewElement::monomial(alpha, &g * &c)).expect("multiple of a generator of I^(α)")
}

/// `t^α t^β = c · t^β t^α`: `c` computed by sorting the word of single
/// letters `t_i^{±1}` with the rule `t_k t_i = p_ik t_i t_k`, independently
/// of the library's normal-ordering scalar.
pub fn p_law_by_words(p: &[Vec<Rational>], alpha: &[i64], beta: &[i64]) -> Rational {
    // both sides reduce to the same sorted word; their ratio is the answer
    let word = |first: &[i64], second: &[i64]| -> Vec<(usize, i64)> {
        let mut w = Vec::new();
        for deg in [first, second] {
            for (i, &a) in deg.iter().enumerate() {
                for _ in 0..a.abs() {
                    w.push((i, a.signum()));
                }
            }
        }
        w
    };
    let sort_scalar = |mut w: Vec<(usize, i64)>| -> Rational {
        let mut c = Rational::one();
        // bubble sort by variable index; t_k^e t_i^f = p_ik^{ef} t_i^f t_k^e
        let len = w.len();
        for pass in 0..len {
            for j in 0..len.saturating_sub(1 + pass) {
                let (k, e) = w[j];
                let (i, f) = w[j + 1];
                if k > i {
                    let factor = if e * f > 0 { p[i][k].clone() } else { p[i][k].recip() };
                    c *= factor;
                    w.swap(j, j + 1);
                }
            }
        }
        c
    };
    let left = sort_scalar(word(alpha, beta));
    let right = sort_scalar(word(beta, alpha));
    left / right
}

/// Membership by linear algebra: solves `f = Σ g_i c_i` with every
/// `c_i` of total degree at most `bound - deg(g_i)`, in a polynomial ring.
pub fn contains_by_linear_algebra(gens: &[Poly], f: &Poly, bound: i32) -> bool {
    let r = f.ring();
    let n = r.nvars();
    let monos = |deg: i32| -> Vec<Vec<i32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for m in &out {
                let used: i32 = m.iter().sum();
                for e in 0..=(deg - used) {
                    let mut m2 = m.clone();
                    m2.push(e);
                    next.push(m2);
                }
            }
            out = next;
        }
        out
    };
    // columns: the products g_i * monomial
    let mut columns: Vec<Poly> = Vec::new();
    for g in gens {
        let dg = g.total_degree() as i32;
        if dg > bound {
            continue;
        }
        for m in monos(bound - dg) {
            columns.push(g.mul_monomial(&Monomial(m), &Rational::one()));
        }
    }
    let rows: Vec<Vec<i32>> = monos(bound);
    let coeff = |p: &Poly, m: &[i32]| -> Rational {
        p.terms().iter().find(|(mm, _)| mm.exps() == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    };
    if f.total_degree() as i32 > bound {
        return false;
    }
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = columns.iter().map(|c| coeff(c, m)).collect();
            row.push(coeff(f, m));
            row
        })
        .collect();
    // Gaussian elimination; inconsistent iff a pivot lands in the last column
    let ncols = columns.len();
    let mut pivot_row = 0;
    for col in 0..=ncols {
        let Some(pr) = (pivot_row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        if col == ncols {
            return false;
        }
        a.swap(pivot_row, pr);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= inv.clone();
        }
        for r2 in 0..a.len() {
            if r2 != pivot_row && !a[r2][col].is_zero() {
                let factor = a[r2][col].clone();
                for c2 in col..=ncols {
                    let v = a[pivot_row][c2].clone() * factor.clone();
                    a[r2][c2] -= v;
                }
            }
        }
        pivot_row += 1;
    }
    true
}
