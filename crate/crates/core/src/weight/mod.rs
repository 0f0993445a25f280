//! Weight modules on torsion-free orbits: breaks, `G_m`, the classification
//! of simple weight modules and explicit action tables.
//!
//! Points of the orbit of `m` are addressed by offsets `α ∈ Z^n`, standing
//! for `σ^α(m)`. The `i`-break property of `σ^α(m)` depends only on `α_i`,
//! so the classes of `i`-breaks are labelled by integers: class `a` is the
//! hyperplane `α_i = a`.

mod orbit;
mod table;

use std::fmt;

use log::warn;

use crate::brd::Degree;
use crate::poly::variety::{is_zero_dimensional, rational_points, Restriction};
use crate::{Datum, Error, Rational, Result};

pub use orbit::{coordinate_map, orbit_exponent, solve_affine, solve_power, stabilizer_constraints, ExponentSet};
pub use table::{act_by_formula, act_by_table, choose_b, module_table, verify_module, ModuleTable, WeightVector};

pub type Point = Vec<Rational>;

pub const DEFAULT_WINDOW: i64 = 6;
pub const DEFAULT_DEGREE_BOUND: i64 = 8;
/// Search radius for stabilizers when the exact method does not apply.
pub const TORSION_FALLBACK_WINDOW: i64 = 8;

/// The point `σ^α(m)`.
pub fn orbit_point(d: &Datum, m: &[Rational], alpha: &[i64]) -> Result<Point> {
    d.sigma_pow(alpha).act_point(m)
}

pub fn check_point(d: &Datum, m: &[Rational]) -> Result<()> {
    let ring = d.ring();
    if m.len() != ring.nvars() {
        return Err(Error::RingMismatch(format!("point has {} coordinates, ring has {} variables", m.len(), ring.nvars())));
    }
    for (i, a) in m.iter().enumerate() {
        if ring.is_invertible(i) && num_traits::Zero::is_zero(a) {
            return Err(Error::ZeroCoordinate(ring.name(i).to_string()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub torsion_free: bool,
    /// A Z-basis of the stabilizer (exact mode) or the nonzero stabilizing
    /// degrees found (window mode).
    pub stabilizer: Vec<Vec<i64>>,
    pub exact: bool,
    pub note: String,
}

/// Decides whether `σ^α(m) = m` forces `α = 0`.
pub fn is_torsion_free(d: &Datum, m: &[Rational]) -> Result<TorsionReport> {
    check_point(d, m)?;
    if let Some(cons) = stabilizer_constraints(d.sigmas(), m) {
        let basis = cons.kernel();
        return Ok(TorsionReport {
            torsion_free: basis.is_empty(),
            note: if basis.is_empty() {
                "stabilizer lattice is trivial".into()
            } else {
                format!("stabilizer lattice has rank {}", basis.len())
            },
            stabilizer: basis,
            exact: true,
        });
    }
    warn!("automorphisms are not diagonal; searching stabilizers in [-{0}, {0}]^n", TORSION_FALLBACK_WINDOW);
    let n = d.rank();
    let mut found = Vec::new();
    crate::brd::for_each_in_box(n, TORSION_FALLBACK_WINDOW, |alpha| {
        if found.is_empty() && alpha.iter().any(|&a| a != 0) && orbit_point(d, m, alpha).map_or(false, |p| p == m) {
            found.push(alpha.to_vec());
        }
    });
    Ok(TorsionReport {
        torsion_free: found.is_empty(),
        stabilizer: found,
        exact: false,
        note: format!("window search in [-{0}, {0}]^{n}; no exact method for permuting automorphisms", TORSION_FALLBACK_WINDOW),
    })
}

fn require_torsion_free(d: &Datum, m: &[Rational]) -> Result<TorsionReport> {
    let t = is_torsion_free(d, m)?;
    if !t.torsion_free {
        return Err(Error::Torsion(t.stabilizer[0].clone()));
    }
    Ok(t)
}

/// Whether `σ_i(m)` contains `H_i J_i`.
pub fn is_i_break(d: &Datum, m: &[Rational], i: usize) -> Result<bool> {
    let q = d.sigma(i).act_point(m)?;
    d.break_ideal(i).vanishes_at(&q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakClass {
    /// The class is the hyperplane `α_i = offset`.
    pub offset: i64,
    /// `σ_i^offset(m)`, the representative with zero offset on other axes.
    pub representative: Point,
}

/// The ordered classes `β̄'_i` of one axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisBreaks {
    pub axis: usize,
    /// Finite classes in increasing `≺_i` order.
    pub classes: Vec<BreakClass>,
    /// Whether `∞_i` belongs to `β̄'_i`.
    pub infinity: bool,
    /// True when the list is complete, false when only a window was scanned.
    pub exact: bool,
    pub notes: Vec<String>,
}

impl AxisBreaks {
    /// Size of `β̄'_i`.
    pub fn len(&self) -> usize {
        self.classes.len() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn offsets(&self) -> Vec<i64> {
        self.classes.iter().map(|c| c.offset).collect()
    }

    /// `(c^-, c)`: the largest class below `pos` and the smallest class at or
    /// above it, as offsets (`None` for `∓∞`).
    pub fn straddle(&self, pos: i64) -> (Option<i64>, Option<i64>) {
        let lower = self.classes.iter().map(|c| c.offset).filter(|&a| a < pos).max();
        let upper = self.classes.iter().map(|c| c.offset).filter(|&a| a >= pos).min();
        (lower, upper)
    }
}

/// `H_i J_i` over the variables it involves, when that is zero-dimensional
/// and `σ_i` is diagonal.
fn zero_dimensional_restriction(hj: &crate::RIdeal, sigma: &crate::Aut) -> Result<Option<Restriction>> {
    if !sigma.is_diagonal() {
        return Ok(None);
    }
    let r = Restriction::new(hj)?;
    Ok(is_zero_dimensional(&r.ideal).then_some(r))
}

/// Classes of `i`-breaks in the orbit of `m`.
///
/// Exact when `σ_i` is diagonal and `V(H_i J_i)`, on the variables it
/// involves, is zero-dimensional: each
/// rational point `q` of the locus gives the class `k - 1` where
/// `σ_i^k(m) = q`. Otherwise offsets in `[-window-1, window]` are scanned.
pub fn break_classes(d: &Datum, m: &[Rational], i: usize, window: i64) -> Result<AxisBreaks> {
    require_torsion_free(d, m)?;
    let hj = d.break_ideal(i);
    let sigma = d.sigma(i);
    let mut notes = Vec::new();
    let mut offsets: Vec<i64> = Vec::new();
    let exact;
    if hj.is_unit() {
        exact = true;
        notes.push("H_i J_i = R: no breaks".into());
    } else if let Some(restricted) = zero_dimensional_restriction(hj, sigma)? {
        exact = true;
        let pts = rational_points(&restricted.ideal)?;
        if pts.has_irrational {
            notes.push("break locus has non-rational points; they lie on no rational orbit".into());
        }
        if restricted.vars.len() < d.ring().nvars() {
            notes.push("break locus is a product with free coordinates; solved on the coordinates it involves".into());
        }
        let s = restricted.restrict_aut(sigma)?;
        let mp = restricted.project(m);
        for q in &pts.points {
            match orbit_exponent(&s, &mp, q).expect("diagonal") {
                ExponentSet::Unique(k) => offsets.push(k - 1),
                ExponentSet::None => {}
                other => return Err(Error::Precondition(format!("σ_{} has a periodic orbit through the break locus ({other:?})", i + 1))),
            }
        }
    } else {
        exact = false;
        notes.push(format!("window mode: offsets in [{}, {window}] scanned; classes outside are unknown", -window - 1));
        for a in -window - 1..=window {
            if hj.vanishes_at(&sigma.pow(a + 1).act_point(m)?)? {
                offsets.push(a);
            }
        }
    }
    offsets.sort_unstable();
    offsets.dedup();
    let classes = offsets
        .iter()
        .map(|&a| Ok(BreakClass { offset: a, representative: sigma.pow(a).act_point(m)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(AxisBreaks { axis: i, classes, infinity: true, exact, notes })
}

pub fn all_break_classes(d: &Datum, m: &[Rational], window: i64) -> Result<Vec<AxisBreaks>> {
    (0..d.rank()).map(|i| break_classes(d, m, i, window)).collect()
}

/// `G_m` as a box: `lower_i < α_i ≤ upper_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GBox {
    pub lower: Vec<Option<i64>>,
    pub upper: Vec<Option<i64>>,
}

impl GBox {
    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.iter().enumerate().all(|(i, &a)| {
            self.lower[i].map_or(true, |l| l < a) && self.upper[i].map_or(true, |u| a <= u)
        })
    }

    /// Members inside `[-window, window]^n`, in lexicographic order.
    pub fn members(&self, window: i64) -> Vec<Degree> {
        let mut out = Vec::new();
        crate::brd::for_each_in_box(self.lower.len(), window, |a| {
            if self.contains(a) {
                out.push(a.to_vec());
            }
        });
        out
    }

    fn shifted(&self, base: &[i64]) -> GBox {
        GBox {
            lower: self.lower.iter().zip(base).map(|(l, b)| l.map(|x| x - b)).collect(),
            upper: self.upper.iter().zip(base).map(|(u, b)| u.map(|x| x - b)).collect(),
        }
    }
}

/// `G_m` from the straddling tuple of break classes.
pub fn g_box(d: &Datum, m: &[Rational], window: i64) -> Result<GBox> {
    let breaks = all_break_classes(d, m, window)?;
    let (lower, upper) = breaks.iter().map(|b| b.straddle(0)).unzip();
    Ok(GBox { lower, upper })
}

/// `G_m ∩ [-window, window]^n` by the box rule.
pub fn g_set(d: &Datum, m: &[Rational], window: i64) -> Result<Vec<Degree>> {
    Ok(g_box(d, m, window)?.members(window))
}

/// Whether `B_{-α} B_α ⊄ m`, decided from the ideal
/// `I^(-α) σ^{-α}(I^(α))` and evaluation at `m`.
pub fn in_g_by_ideals(d: &Datum, m: &[Rational], alpha: &[i64]) -> Result<bool> {
    let neg: Degree = alpha.iter().map(|a| -a).collect();
    let left = d.canonical_ideal(&neg);
    let right = d.sigma_pow(&neg).apply_ideal(&d.canonical_ideal(alpha));
    Ok(!left.product(&right)?.vanishes_at(m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    At(i64),
    PosInf,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::At(a) => write!(f, "{a}"),
            Bound::PosInf => write!(f, "inf"),
        }
    }
}

/// A simple weight module `M(O, [n])`: per axis the class `[n_i]` (upper)
/// and its predecessor `[n_i]^-` (lower); the support is
/// `{σ^α(m) : lower_i < α_i ≤ upper_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleModuleDescriptor {
    pub orbit_base: Point,
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
    /// Offset of the distinguished point of the support, closest to the orbit
    /// base on each axis.
    pub base_offset: Degree,
    pub base_point: Point,
    pub exact: bool,
}

impl SimpleModuleDescriptor {
    /// Whether `σ^α(orbit_base)` lies in the support.
    pub fn supports(&self, alpha: &[i64]) -> bool {
        alpha.iter().enumerate().all(|(i, &a)| {
            let lo = match self.lower[i] {
                Bound::At(l) => l < a,
                _ => true,
            };
            let hi = match self.upper[i] {
                Bound::At(u) => a <= u,
                _ => true,
            };
            lo && hi
        })
    }

    /// `G` of the base point, as a box relative to it.
    pub fn g_box(&self) -> GBox {
        let b = GBox {
            lower: self.lower.iter().map(|x| if let Bound::At(a) = x { Some(*a) } else { None }).collect(),
            upper: self.upper.iter().map(|x| if let Bound::At(a) = x { Some(*a) } else { None }).collect(),
        };
        b.shifted(&self.base_offset)
    }
}

/// One descriptor per tuple of `Π β̄'_i`, in lexicographic order of tuples.
pub fn classify(d: &Datum, m: &[Rational], window: i64) -> Result<Vec<SimpleModuleDescriptor>> {
    let breaks = all_break_classes(d, m, window)?;
    let exact = breaks.iter().all(|b| b.exact);
    let per_axis: Vec<Vec<(Bound, Bound)>> = breaks
        .iter()
        .map(|b| {
            let mut out = Vec::new();
            let mut prev = Bound::NegInf;
            for c in &b.classes {
                out.push((prev, Bound::At(c.offset)));
                prev = Bound::At(c.offset);
            }
            if b.infinity {
                out.push((prev, Bound::PosInf));
            }
            out
        })
        .collect();
    let mut result = Vec::new();
    let mut idx = vec![0usize; per_axis.len()];
    loop {
        let lower: Vec<Bound> = idx.iter().enumerate().map(|(i, &k)| per_axis[i][k].0).collect();
        let upper: Vec<Bound> = idx.iter().enumerate().map(|(i, &k)| per_axis[i][k].1).collect();
        let base_offset: Degree = lower
            .iter()
            .zip(&upper)
            .map(|(l, u)| match (l, u) {
                (_, Bound::At(u)) if *u < 0 => *u,
                (Bound::At(l), _) if *l >= 0 => l + 1,
                _ => 0,
            })
            .collect();
        let base_point = orbit_point(d, m, &base_offset)?;
        result.push(SimpleModuleDescriptor { orbit_base: m.to_vec(), lower, upper, base_offset, base_point, exact });
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(result);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_axis[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
