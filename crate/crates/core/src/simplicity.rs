//! Simplicity verdicts with certificate trails.
//!
//! Rank 1 is decided exactly when the break locus is zero-dimensional with
//! rational points: `B` is simple iff `R` is `σ`-simple and no nonzero power
//! of `σ` moves the break locus onto itself. In higher rank only necessary
//! conditions are checked, plus the sufficient route through untwisted
//! tensor products of simple rank-1 factors.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::LatticeConstraints;
use crate::poly::variety::{is_zero_dimensional, rational_points, Restriction};
use crate::poly::{maximal_ideal, Ideal, RingSpec};
use crate::weight::{coordinate_map, orbit_exponent, ExponentSet};
use crate::{Aut, Datum, Error, Poly, RIdeal, Rational, Result};

pub const DEFAULT_KMAX: i64 = 12;

/// Coefficient bound when enumerating invariant monomials that involve
/// non-invertible variables.
const INVARIANT_SEARCH_BOUND: i64 = 3;

/// Largest `k` for which `σ_i^k`-periodic break ideals are tried as
/// invariant ideals.
const ORBIT_PRODUCT_BOUND: i64 = 4;

#[derive(Debug, Clone)]
pub struct SimplicityOptions {
    pub k_max: i64,
    /// Record `R` as `Γ`-simple when no certifier applies.
    pub assume_gamma_simple: bool,
}

impl Default for SimplicityOptions {
    fn default() -> Self {
        SimplicityOptions { k_max: DEFAULT_KMAX, assume_gamma_simple: false }
    }
}

#[derive(Debug, Clone)]
pub enum GammaSimplicity {
    Certified { certifier: String },
    Assumed,
    Refuted { ideal: RIdeal, reason: String },
    Unknown { reason: String },
}

impl GammaSimplicity {
    pub fn holds(&self) -> bool {
        matches!(self, GammaSimplicity::Certified { .. } | GammaSimplicity::Assumed)
    }
}

/// Generators of `R^Γ` for diagonal automorphisms.
#[derive(Debug, Clone)]
pub struct InvariantSubring {
    pub generators: Vec<Poly>,
    pub constants_only: bool,
    /// False when generators involving polynomial variables were found by a
    /// bounded search.
    pub complete: bool,
    pub note: String,
}

/// Per-variable behaviour of a tuple of commuting diagonal automorphisms.
enum VarKind {
    /// `x ↦ c x + d` with common fixed point `center`.
    Scaled { center: Rational },
    /// Translated by at least one automorphism, scaled by none.
    Translated,
}

fn classify_vars(sigmas: &[Aut]) -> Result<Vec<VarKind>> {
    if sigmas.iter().any(|s| !s.is_diagonal()) {
        return Err(Error::Unsupported("automorphisms that permute variables".into()));
    }
    let ring = sigmas[0].ring();
    let mut kinds = Vec::with_capacity(ring.nvars());
    for j in 0..ring.nvars() {
        let cs: Vec<(&Rational, &Rational)> = sigmas.iter().map(|s| (&s.scale()[j], &s.shift()[j])).collect();
        match cs.iter().find(|(c, _)| !c.is_one()) {
            Some((c, d)) => {
                let center = (*d).clone() / (Rational::one() - (*c).clone());
                // commuting affine maps share their fixed point
                if cs.iter().any(|(c, d)| (*c).clone() * center.clone() + (*d).clone() != center) {
                    return Err(Error::Unsupported(format!("no common fixed point for `{}`", ring.name(j))));
                }
                kinds.push(VarKind::Scaled { center });
            }
            None if cs.iter().all(|(_, d)| d.is_zero()) => kinds.push(VarKind::Scaled { center: Rational::zero() }),
            None => kinds.push(VarKind::Translated),
        }
    }
    for j in 0..ring.nvars() {
        if let VarKind::Translated = kinds[j] {
            let alone = sigmas.iter().any(|s| {
                !s.shift()[j].is_zero()
                    && (0..ring.nvars())
                        .all(|k| k == j || s.shift()[k].is_zero() || !matches!(kinds[k], VarKind::Translated))
            });
            if !alone {
                return Err(Error::Unsupported(format!(
                    "`{}` is only translated together with another translated variable",
                    ring.name(j)
                )));
            }
        }
    }
    Ok(kinds)
}

fn monomial_in_centers(ring: &crate::poly::Ring, kinds: &[VarKind], v: &[i64]) -> Result<Poly> {
    let mut acc = Poly::one(ring);
    for (j, &e) in v.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let base = match &kinds[j] {
            VarKind::Scaled { center } => &Poly::var(ring, j) - &Poly::constant(ring, center.clone()),
            VarKind::Translated => unreachable!("translated variables have zero exponent"),
        };
        acc = &acc * &base.powi(e)?;
    }
    Ok(acc)
}

/// `R^Γ` for commuting diagonal automorphisms, from the lattice of exponent
/// vectors `a` with `Π_j c_ij^{a_j} = 1` for every `i`, in coordinates
/// centred at the common fixed points. Translated variables cannot occur in
/// invariants.
pub fn invariant_subring(d: &Datum) -> Result<InvariantSubring> {
    let ring = d.ring();
    let kinds = classify_vars(d.sigmas())?;
    let nv = ring.nvars();
    let mut cons = LatticeConstraints::new(nv);
    for s in d.sigmas() {
        cons.add_multiplicative(s.scale());
    }
    for j in 0..nv {
        if let VarKind::Translated = kinds[j] {
            let mut e = vec![Rational::zero(); nv];
            e[j] = Rational::one();
            cons.add_rational_equation(&e);
        }
    }
    let basis = cons.kernel();
    if basis.is_empty() {
        return Ok(InvariantSubring {
            generators: Vec::new(),
            constants_only: true,
            complete: true,
            note: "no nonzero exponent vector is fixed by every automorphism".into(),
        });
    }
    let laurent_only = (0..nv).all(|j| ring.is_invertible(j) || basis.iter().all(|b| b[j] == 0));
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let complete;
    let note;
    if laurent_only {
        for b in &basis {
            vectors.push(b.clone());
            vectors.push(b.iter().map(|x| -x).collect());
        }
        complete = true;
        note = format!("lattice of rank {} in invertible variables", basis.len());
    } else {
        let bound = INVARIANT_SEARCH_BOUND;
        let mut found: Vec<Vec<i64>> = Vec::new();
        crate::brd::for_each_in_box(basis.len(), bound, |coef| {
            let v: Vec<i64> = (0..nv).map(|j| basis.iter().zip(coef).map(|(b, c)| b[j] * c).sum()).collect();
            if v.iter().all(|&x| x == 0) {
                return;
            }
            if (0..nv).any(|j| !ring.is_invertible(j) && v[j] < 0) {
                return;
            }
            found.push(v);
        });
        found.sort();
        found.dedup();
        let set: std::collections::HashSet<Vec<i64>> = found.iter().cloned().collect();
        for v in &found {
            let reducible = found.iter().any(|w| {
                w != v && {
                    let rest: Vec<i64> = v.iter().zip(w).map(|(a, b)| a - b).collect();
                    set.contains(&rest)
                }
            });
            if !reducible {
                vectors.push(v.clone());
            }
        }
        complete = false;
        note = format!("invariant monomials searched with lattice coefficients in [-{bound}, {bound}]");
    }
    let generators = vectors.iter().map(|v| monomial_in_centers(ring, &kinds, v)).collect::<Result<Vec<_>>>()?;
    Ok(InvariantSubring { generators, constants_only: false, complete, note })
}

fn is_invariant(d: &Datum, ideal: &RIdeal) -> bool {
    d.sigmas().iter().all(|s| crate::brd::invariance_witness(s, ideal).is_none())
}

/// A rational point fixed by every automorphism, if the automorphisms are
/// diagonal and one exists.
fn common_fixed_point(d: &Datum) -> Option<Vec<Rational>> {
    let ring = d.ring();
    if d.sigmas().iter().any(|s| !s.is_diagonal()) {
        return None;
    }
    let mut pt = Vec::with_capacity(ring.nvars());
    for j in 0..ring.nvars() {
        let maps: Vec<(Rational, Rational)> = d.sigmas().iter().map(|s| coordinate_map(s, j)).collect();
        let value = match maps.iter().find(|(s, _)| !s.is_one()) {
            Some((s, e)) => e.clone() / (Rational::one() - s.clone()),
            None if maps.iter().all(|(_, e)| e.is_zero()) => {
                if ring.is_invertible(j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            None => return None,
        };
        if maps.iter().any(|(s, e)| s.clone() * value.clone() + e.clone() != value) {
            return None;
        }
        if ring.is_invertible(j) && value.is_zero() {
            return None;
        }
        pt.push(value);
    }
    Some(pt)
}

fn refutation_candidates(d: &Datum) -> Vec<(String, RIdeal)> {
    let ring = d.ring();
    let mut out = Vec::new();
    for j in 0..ring.nvars() {
        if !ring.is_invertible(j) {
            out.push((format!("variable ideal ({})", ring.name(j)), Ideal::principal(Poly::var(ring, j))));
        }
    }
    if let Ok(inv) = invariant_subring(d) {
        for g in inv.generators {
            let f = if g.is_unit() { &g - &Poly::one(ring) } else { g };
            out.push((format!("ideal of invariant element {f}"), Ideal::principal(f)));
        }
    }
    if let Some(pt) = common_fixed_point(d) {
        if let Ok(m) = maximal_ideal(ring, &pt) {
            let shown: Vec<String> = pt.iter().map(|x| x.to_string()).collect();
            out.push((format!("maximal ideal of the fixed point ({})", shown.join(", ")), m));
        }
    }
    for i in 0..d.rank() {
        out.push((format!("H_{}", i + 1), d.h(i).clone()));
        out.push((format!("J_{}", i + 1), d.j(i).clone()));
        let hj = d.break_ideal(i).clone();
        out.push((format!("H_{0}J_{0}", i + 1), hj.clone()));
        if hj.is_unit() {
            continue;
        }
        let mut acc = hj.clone();
        for k in 1..=ORBIT_PRODUCT_BOUND {
            let shifted = d.sigma(i).pow(k).apply_ideal(&hj);
            if shifted.equals(&hj).unwrap_or(false) {
                out.push((format!("σ_{0}-orbit product of H_{0}J_{0} (period {k})", i + 1), acc));
                break;
            }
            acc = match acc.product(&shifted) {
                Ok(p) => p.simplified(),
                Err(_) => break,
            };
        }
    }
    out
}

/// Certifies or refutes that `R` has no proper nonzero ideal invariant
/// under every `σ_i`.
pub fn gamma_simple(d: &Datum, opts: &SimplicityOptions) -> GammaSimplicity {
    let ring = d.ring();
    let nv = ring.nvars();
    let all_laurent = (0..nv).all(|j| ring.is_invertible(j));
    if all_laurent && d.sigmas().iter().all(|s| s.is_diagonal()) {
        let mut cons = LatticeConstraints::new(nv);
        for s in d.sigmas() {
            cons.add_multiplicative(s.scale());
        }
        if cons.kernel().is_empty() {
            return GammaSimplicity::Certified {
                certifier: "Laurent ring with diagonal scalings and no invariant monomial: the scalars generate a torsion-free group of full rank".into(),
            };
        }
    }
    if nv == 1 && !ring.is_invertible(0) {
        if let Some((i, s)) = d
            .sigmas()
            .iter()
            .enumerate()
            .find(|(_, s)| s.scale()[0].is_one() && !s.shift()[0].is_zero())
        {
            return GammaSimplicity::Certified {
                certifier: format!(
                    "polynomial ring in one variable with σ_{} = {s} a translation: an invariant principal ideal has a translation-invariant finite zero set",
                    i + 1
                ),
            };
        }
    }
    for (label, ideal) in refutation_candidates(d) {
        if !ideal.is_zero() && !ideal.is_unit() && is_invariant(d, &ideal) {
            return GammaSimplicity::Refuted { reason: format!("{label} is proper, nonzero and Γ-invariant"), ideal };
        }
    }
    if opts.assume_gamma_simple {
        return GammaSimplicity::Assumed;
    }
    GammaSimplicity::Unknown { reason: "no certifier applies and no invariant ideal was found among the candidates".into() }
}

/// Exact answer to the hyperplane condition on one axis.
#[derive(Debug, Clone)]
pub struct ExactLoneliness {
    pub lonely: bool,
    /// Smallest `k > 0` with `css_i ∩ σ_i^k(css_i) ≠ ∅`.
    pub witness_k: Option<i64>,
    /// Rational points of the break locus, in the coordinates it involves.
    pub points: Vec<Vec<Rational>>,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct HyperplaneResult {
    pub axis: usize,
    pub k_max: i64,
    /// `H_iJ_i + σ_i^k(H_iJ_i) = R` for `k = 1..=k_max`.
    pub ideal_mode: Vec<(i64, bool)>,
    /// `css_i ∩ σ_i^k(css_i) = ∅` for `k = 1..=k_max`, from the points.
    pub point_mode: Option<Vec<(i64, bool)>>,
    pub exact: Option<ExactLoneliness>,
    /// Whether the two modes agree wherever both ran.
    pub agree: bool,
    pub note: String,
}

impl HyperplaneResult {
    pub fn first_failure(&self) -> Option<i64> {
        if let Some(e) = &self.exact {
            return e.witness_k;
        }
        self.ideal_mode.iter().find(|(_, ok)| !ok).map(|(k, _)| *k)
    }

    /// Passes for every `k > 0`, not just up to `k_max`.
    pub fn passes_exactly(&self) -> bool {
        self.exact.as_ref().is_some_and(|e| e.lonely)
    }
}

/// The break locus projected to the variables its ideal involves, which a
/// diagonal `σ_i` maps to themselves.
fn exact_loneliness(d: &Datum, i: usize) -> std::result::Result<ExactLoneliness, String> {
    let hj = d.break_ideal(i);
    let ring = d.ring();
    let sigma = d.sigma(i);
    if hj.is_unit() {
        return Ok(ExactLoneliness { lonely: true, witness_k: None, points: Vec::new(), variables: Vec::new() });
    }
    if !sigma.is_diagonal() {
        return Err("σ permutes variables".into());
    }
    let restricted = Restriction::new(hj).map_err(|e| e.to_string())?;
    let names: Vec<String> = restricted.vars.iter().map(|&v| ring.name(v).to_string()).collect();
    if !is_zero_dimensional(&restricted.ideal) {
        return Err(format!("the break locus in ({}) is not zero-dimensional", names.join(", ")));
    }
    let pts = rational_points(&restricted.ideal).map_err(|e| e.to_string())?;
    if pts.has_irrational {
        return Err("the break locus has points that are not rational".into());
    }
    let s = restricted.restrict_aut(sigma).map_err(|e| e.to_string())?;
    let mut witness: Option<i64> = None;
    for p in &pts.points {
        for q in &pts.points {
            let set = orbit_exponent(&s, p, q).expect("diagonal");
            let k = match set {
                ExponentSet::None => continue,
                ExponentSet::Unique(0) => continue,
                ExponentSet::Unique(k) => k.abs(),
                ExponentSet::All => 1,
                ExponentSet::Parity(r) => {
                    if r == 0 {
                        2
                    } else {
                        1
                    }
                }
            };
            witness = Some(witness.map_or(k, |w| w.min(k)));
        }
    }
    Ok(ExactLoneliness {
        lonely: witness.is_none(),
        witness_k: witness,
        points: pts.points,
        variables: names,
    })
}

fn point_mode(d: &Datum, i: usize, exact: &ExactLoneliness, k_max: i64) -> Vec<(i64, bool)> {
    if exact.points.is_empty() {
        return (1..=k_max).map(|k| (k, true)).collect();
    }
    let ring = d.ring();
    let vars: Vec<usize> = exact.variables.iter().map(|n| ring.index_of(n).expect("variable")).collect();
    let sigma = d.sigma(i);
    let flags: Vec<bool> = vars.iter().map(|&v| ring.is_invertible(v)).collect();
    let sub = RingSpec::new(&exact.variables, &flags, ring.order()).expect("valid names");
    let s = Aut::diagonal(
        &sub,
        vars.iter().map(|&v| sigma.scale()[v].clone()).collect(),
        vars.iter().map(|&v| sigma.shift()[v].clone()).collect(),
    )
    .expect("diagonal");
    (1..=k_max)
        .map(|k| {
            let clash = exact.points.iter().any(|p| {
                exact.points.iter().any(|q| orbit_exponent(&s, p, q).is_some_and(|set| set.contains(k)))
            });
            (k, !clash)
        })
        .collect()
}

/// Both forms of the hyperplane condition on axis `i`:
/// `css_i ∩ σ_i^k(css_i) = ∅` (from rational points, exact in `k`) and
/// `H_iJ_i + σ_i^k(H_iJ_i) = R` (ideal sums, `k ≤ k_max`), cross-checked.
pub fn hyperplane_condition(d: &Datum, i: usize, k_max: i64) -> Result<HyperplaneResult> {
    if i >= d.rank() {
        return Err(Error::Precondition(format!("axis {} out of range", i + 1)));
    }
    let hj = d.break_ideal(i);
    let mut ideal_mode = Vec::with_capacity(k_max.max(0) as usize);
    for k in 1..=k_max {
        let ok = hj.is_unit() || hj.sum(&d.sigma(i).pow(k).apply_ideal(hj))?.is_unit();
        ideal_mode.push((k, ok));
    }
    let (exact, note) = match exact_loneliness(d, i) {
        Ok(e) => (Some(e), "exact in k from the rational points of the break locus".to_string()),
        Err(why) => (None, format!("ideal sums only, up to k = {k_max}: {why}")),
    };
    let point_mode = exact.as_ref().map(|e| point_mode(d, i, e, k_max));
    let agree = point_mode.as_ref().map_or(true, |pm| pm == &ideal_mode);
    Ok(HyperplaneResult { axis: i, k_max, ideal_mode, point_mode, exact, agree, note })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Simple,
    NotSimple,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Simple => "SIMPLE",
            Status::NotSimple => "NOT_SIMPLE",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailEntry {
    pub condition: String,
    pub result: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub trail: Vec<TrailEntry>,
    /// For inconclusive verdicts, the condition that could not be settled.
    pub unresolved: Option<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { status: Status::Inconclusive, trail: Vec::new(), unresolved: None }
    }

    fn note(&mut self, condition: impl Into<String>, result: impl Into<String>, detail: impl Into<String>) {
        self.trail.push(TrailEntry { condition: condition.into(), result: result.into(), detail: detail.into() });
    }

    fn finish(mut self, status: Status, unresolved: Option<String>) -> Self {
        self.status = status;
        self.unresolved = unresolved;
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        for e in &self.trail {
            writeln!(f, "  {} [{}]: {}", e.condition, e.result, e.detail)?;
        }
        if let Some(u) = &self.unresolved {
            writeln!(f, "  unresolved: {u}")?;
        }
        Ok(())
    }
}

fn record_gamma(v: &mut Verdict, g: &GammaSimplicity) {
    match g {
        GammaSimplicity::Certified { certifier } => v.note("R is Γ-simple", "certified", certifier.clone()),
        GammaSimplicity::Assumed => v.note("R is Γ-simple", "assumed", "asserted by the input, not verified"),
        GammaSimplicity::Refuted { ideal, reason } => v.note("R is Γ-simple", "refuted", format!("{reason}: {ideal}")),
        GammaSimplicity::Unknown { reason } => v.note("R is Γ-simple", "unknown", reason.clone()),
    }
}

fn record_hyperplane(v: &mut Verdict, h: &HyperplaneResult) {
    let cond = format!("hyperplane condition, axis {}", h.axis + 1);
    let result = match (&h.exact, h.first_failure()) {
        (_, Some(_)) => "fail",
        (Some(_), None) => "pass",
        (None, None) => "pass up to k_max",
    };
    let detail = match h.first_failure() {
        Some(k) => format!("css ∩ σ^{k}(css) is nonempty; {}", h.note),
        None => h.note.clone(),
    };
    v.note(cond, result, detail);
    v.note(
        format!("hyperplane modes agree, axis {}", h.axis + 1),
        if h.agree { "pass" } else { "fail" },
        match &h.point_mode {
            Some(_) => format!("points and ideal sums compared for k = 1..{}", h.k_max),
            None => "only the ideal-sum mode ran".to_string(),
        },
    );
}

/// Rank-1 verdict: simple iff `R` is `σ`-simple and `B` is `σ`-lonely.
pub fn rank1_verdict(d: &Datum, opts: &SimplicityOptions) -> Result<Verdict> {
    if d.rank() != 1 {
        return Err(Error::Precondition(format!("rank is {}, expected 1", d.rank())));
    }
    let mut v = Verdict::new();
    let g = gamma_simple(d, opts);
    record_gamma(&mut v, &g);
    if let GammaSimplicity::Refuted { .. } = g {
        return Ok(v.finish(Status::NotSimple, None));
    }
    let h = hyperplane_condition(d, 0, opts.k_max)?;
    record_hyperplane(&mut v, &h);
    if !h.agree {
        return Err(Error::Precondition("hyperplane modes disagree; the kernel is inconsistent".into()));
    }
    if h.first_failure().is_some() {
        return Ok(v.finish(Status::NotSimple, None));
    }
    if !h.passes_exactly() {
        return Ok(v.finish(Status::Inconclusive, Some(format!("σ-loneliness beyond k = {}", opts.k_max))));
    }
    if !g.holds() {
        return Ok(v.finish(Status::Inconclusive, Some("Γ-simplicity of R".into())));
    }
    Ok(v.finish(Status::Simple, None))
}

/// A connected piece of a datum: some axes and the variables they touch.
#[derive(Debug, Clone)]
pub struct TensorFactor {
    pub axes: Vec<usize>,
    pub vars: Vec<usize>,
    /// The factor as a datum over its own variables; `None` when it has no
    /// axes or no variables.
    pub datum: Option<Datum>,
}

#[derive(Debug, Clone)]
pub struct TensorSplit {
    pub factors: Vec<TensorFactor>,
    /// Commutation scalars between different factors that are not 1.
    pub twist: Option<String>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Splits a datum into tensor factors: axis `i` is tied to every variable
/// that `σ_i` moves or that `H_i`, `J_i` involve, and variables are tied
/// when an automorphism mixes them.
pub fn tensor_factors(d: &Datum) -> Result<TensorSplit> {
    let ring = d.ring();
    let (n, nv) = (d.rank(), ring.nvars());
    let mut parent: Vec<usize> = (0..n + nv).collect();
    for i in 0..n {
        let s = d.sigma(i);
        for v in 0..nv {
            let img = s.image_of_var(v);
            if img != Poly::var(ring, v) {
                union(&mut parent, i, n + v);
            }
            for w in 0..nv {
                if w != v && img.uses_var(w) {
                    union(&mut parent, n + v, n + w);
                }
            }
        }
        for ideal in [d.h(i), d.j(i)] {
            for g in ideal.gb() {
                for v in 0..nv {
                    if g.uses_var(v) {
                        union(&mut parent, i, n + v);
                    }
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n + nv).map(|x| find(&mut parent, x)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort();
    order.dedup();
    let mut factors = Vec::new();
    for r in order {
        let axes: Vec<usize> = (0..n).filter(|&i| roots[i] == r).collect();
        let vars: Vec<usize> = (0..nv).filter(|&v| roots[n + v] == r).collect();
        let datum = if axes.is_empty() || vars.is_empty() { None } else { Some(restrict(d, &axes, &vars)?) };
        factors.push(TensorFactor { axes, vars, datum });
    }
    let mut twist = None;
    for i in 0..n {
        for k in 0..n {
            let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
            if ri != rk && !d.p()[i][k].is_one() && twist.is_none() {
                twist = Some(format!("p_{}{} = {}", i + 1, k + 1, d.p()[i][k]));
            }
        }
    }
    Ok(TensorSplit { factors, twist })
}

fn restrict(d: &Datum, axes: &[usize], vars: &[usize]) -> Result<Datum> {
    let ring = d.ring();
    let names: Vec<&str> = vars.iter().map(|&v| ring.name(v)).collect();
    let flags: Vec<bool> = vars.iter().map(|&v| ring.is_invertible(v)).collect();
    let sub = RingSpec::new(&names, &flags, ring.order())?;
    let mut map = vec![None; ring.nvars()];
    for (k, &v) in vars.iter().enumerate() {
        map[v] = Some(k);
    }
    let mut sigma = Vec::new();
    let mut h = Vec::new();
    let mut j = Vec::new();
    for &i in axes {
        let images = vars.iter().map(|&v| d.sigma(i).image_of_var(v).remap(&sub, &map)).collect::<Result<Vec<_>>>()?;
        sigma.push(Aut::from_images(&sub, &images)?);
        for (src, dst) in [(d.h(i), &mut h), (d.j(i), &mut j)] {
            let gens = src.gb().iter().map(|g| g.remap(&sub, &map)).collect::<Result<Vec<_>>>()?;
            dst.push(Ideal::new(&sub, gens)?);
        }
    }
    let p = axes.iter().map(|&i| axes.iter().map(|&k| d.p()[i][k].clone()).collect()).collect();
    Datum::new(&sub, sigma, p, h, j)
}

/// Rank-`n` verdict. Not simple on a refuted `Γ`-simplicity or a failed
/// hyperplane condition; simple when the datum is an untwisted tensor
/// product of simple rank-1 factors, all but at most one with constant
/// invariant subring; otherwise inconclusive.
pub fn rankn_verdict(d: &Datum, opts: &SimplicityOptions) -> Result<Verdict> {
    if d.rank() == 1 {
        return rank1_verdict(d, opts);
    }
    let mut v = Verdict::new();
    let g = gamma_simple(d, opts);
    record_gamma(&mut v, &g);
    if let GammaSimplicity::Refuted { .. } = g {
        return Ok(v.finish(Status::NotSimple, None));
    }
    for i in 0..d.rank() {
        let h = hyperplane_condition(d, i, opts.k_max)?;
        record_hyperplane(&mut v, &h);
        if !h.agree {
            return Err(Error::Precondition("hyperplane modes disagree; the kernel is inconsistent".into()));
        }
        if h.first_failure().is_some() {
            return Ok(v.finish(Status::NotSimple, None));
        }
    }
    match invariant_subring(d) {
        Ok(inv) if inv.constants_only => v.note("Z(B) ⊂ R", "pass", "R^Γ consists of constants"),
        Ok(inv) => v.note(
            "Z(B) ⊂ R",
            "unknown",
            format!("R^Γ is generated by {}", inv.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")),
        ),
        Err(e) => v.note("Z(B) ⊂ R", "unknown", e.to_string()),
    }
    v.note(
        "BxB = B for all x in X",
        "not decided",
        "only its consequence, the hyperplane condition on each axis, is checked",
    );
    let split = tensor_factors(d)?;
    if split.factors.len() < 2 {
        return Ok(v.finish(Status::Inconclusive, Some("BxB = B for all x in X (datum is not a tensor product)".into())));
    }
    if let Some(t) = &split.twist {
        v.note("untwisted tensor decomposition", "fail", format!("factors are twisted: {t}"));
        return Ok(v.finish(Status::Inconclusive, Some("simplicity of a twisted tensor product".into())));
    }
    let mut non_central = 0;
    for (idx, f) in split.factors.iter().enumerate() {
        let label = format!("tensor factor {} (axes {:?})", idx + 1, f.axes.iter().map(|a| a + 1).collect::<Vec<_>>());
        let Some(fd) = &f.datum else {
            v.note(label, "fail", "factor without axes or without variables");
            return Ok(v.finish(Status::Inconclusive, Some("a tensor factor is not a BR algebra over a nontrivial base".into())));
        };
        if fd.rank() != 1 {
            v.note(label, "fail", format!("factor of rank {} does not split further", fd.rank()));
            return Ok(v.finish(Status::Inconclusive, Some("simplicity of a higher-rank factor".into())));
        }
        let fv = rank1_verdict(fd, opts)?;
        v.note(label.clone(), fv.status.to_string(), format!("over {}", fd.ring()));
        if fv.status != Status::Simple {
            return Ok(v.finish(Status::Inconclusive, Some(format!("{label} is not certified simple"))));
        }
        match invariant_subring(fd) {
            Ok(inv) if inv.constants_only => {}
            _ => non_central += 1,
        }
    }
    if non_central > 1 {
        v.note("central simple factors", "fail", format!("{non_central} factors may have nonconstant centers"));
        return Ok(v.finish(Status::Inconclusive, Some("simplicity of a tensor product of non-central factors".into())));
    }
    v.note(
        "tensor route",
        "pass",
        "untwisted tensor product of simple algebras, all but at most one central simple",
    );
    Ok(v.finish(Status::Simple, None))
}
