//! Explicit bases and action coefficients of simple weight modules.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{check_point, in_g_by_ideals, is_i_break, orbit_point, GBox, Point, SimpleModuleDescriptor};
use crate::brd::{Degree, GradedElement, SkewElement};
use crate::{Check, Datum, Error, Poly, Rational, Report, Result};

/// Vector `Σ c_α v_α` in a module table's basis.
pub type WeightVector = BTreeMap<Degree, Rational>;

fn neg(alpha: &[i64]) -> Degree {
    alpha.iter().map(|a| -a).collect()
}

fn add(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Picks `b_α ∈ B_α` and `b'_α ∈ B_{-α}` with `b'_α b_α ≡ 1 (mod m)`.
///
/// Candidates are pairs `(g t^α, h t^{-α})` with `g`, `h` generators of the
/// canonical ideals, tried by increasing combined degree and then by their
/// text; `b'_α` is `h t^{-α}` divided by the value of `h σ^{-α}(g) λ` at `m`.
pub fn choose_b(d: &Datum, m: &[Rational], alpha: &[i64], degree_bound: i64) -> Result<(GradedElement<Rational>, GradedElement<Rational>)> {
    check_point(d, m)?;
    if !in_g_by_ideals(d, m, alpha)? {
        return Err(Error::Precondition(format!("{alpha:?} is not in G_m: B_(-α) B_α lies in m")));
    }
    let na = neg(alpha);
    let pos_gens = d.canonical_ideal(alpha).gens().to_vec();
    let neg_gens = d.canonical_ideal(&na).gens().to_vec();
    let mut pairs: Vec<(i64, String, String, &Poly, &Poly)> = Vec::new();
    for g in &pos_gens {
        for h in &neg_gens {
            pairs.push((g.weight() + h.weight(), g.to_string(), h.to_string(), g, h));
        }
    }
    pairs.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    let point_alpha = orbit_point(d, m, alpha)?;
    let lam = d.lambda(&na, alpha);
    for (deg, _, _, g, h) in pairs {
        // h σ^{-α}(g) evaluated at m equals h(m) g(σ^α m)
        let value = h.eval(m)? * g.eval(&point_alpha)? * lam.clone();
        if value.is_zero() {
            continue;
        }
        if deg > degree_bound {
            return Err(Error::BoundExceeded(format!(
                "first admissible pair for {alpha:?} has combined degree {deg} > {degree_bound}"
            )));
        }
        let b = SkewElement::monomial(alpha.to_vec(), g.clone());
        let bp = SkewElement::monomial(na.clone(), h.scale(&value.recip()));
        return Ok((d.element(b)?, d.element(bp)?));
    }
    Err(Error::BoundExceeded(format!("no generator pair for {alpha:?} is nonzero at m")))
}

/// Basis `{v_α : α ∈ G ∩ window}` of a simple weight module together with
/// the chosen `b_α`, `b'_α` and the edge coefficients.
#[derive(Debug, Clone)]
pub struct ModuleTable {
    pub descriptor: SimpleModuleDescriptor,
    pub window: i64,
    /// The base point `m` of the table; `v_α` spans the weight space of
    /// `σ^α(m)`.
    pub point: Point,
    pub g: GBox,
    pub basis: Vec<Degree>,
    pub b: BTreeMap<Degree, (GradedElement<Rational>, GradedElement<Rational>)>,
    /// `x_{α,i} = t_i b_α b'_{α+e_i}` for in-window edges; zero across breaks.
    pub x: BTreeMap<(Degree, usize), Poly>,
    /// `y_{α,i} = t_i^{-1} b_α b'_{α-e_i}` for in-window edges; zero across
    /// breaks.
    pub y: BTreeMap<(Degree, usize), Poly>,
}

impl ModuleTable {
    pub fn in_window(&self, alpha: &[i64]) -> bool {
        alpha.iter().all(|a| a.abs() <= self.window)
    }

    pub fn in_basis(&self, alpha: &[i64]) -> bool {
        self.in_window(alpha) && self.g.contains(alpha)
    }
}

fn degree_zero_part(d: &Datum, s: &SkewElement<Rational>) -> Result<Poly> {
    let zero = vec![0; d.rank()];
    match s.parts().iter().next() {
        None => Ok(Poly::zero(d.ring())),
        Some((deg, c)) if deg == &zero && s.parts().len() == 1 => Ok(c.clone()),
        Some((deg, _)) => Err(Error::Precondition(format!("expected a degree-zero element, found degree {deg:?}"))),
    }
}

/// Builds the action table of the module described by `desc` on
/// `[-window, window]^n` around its base point.
pub fn module_table(d: &Datum, desc: &SimpleModuleDescriptor, window: i64, degree_bound: i64) -> Result<ModuleTable> {
    let n = d.rank();
    let m = desc.base_point.clone();
    let g = desc.g_box();
    let basis = g.members(window);
    let mut b = BTreeMap::new();
    for alpha in &basis {
        b.insert(alpha.clone(), choose_b(d, &m, alpha, degree_bound)?);
    }
    let mut x = BTreeMap::new();
    let mut y = BTreeMap::new();
    for alpha in &basis {
        for i in 0..n {
            for (sign, table) in [(1i64, &mut x), (-1i64, &mut y)] {
                let mut target = alpha.clone();
                target[i] += sign;
                if target.iter().any(|a| a.abs() > window) {
                    continue;
                }
                let coeff = match b.get(&target) {
                    None => Poly::zero(d.ring()),
                    Some((_, bp)) => {
                        let mut e = vec![0; n];
                        e[i] = sign;
                        let t = SkewElement::t_pow(d.ring(), e);
                        let prod = d.skew_mul(&d.skew_mul(&t, b[alpha].0.as_skew()), bp.as_skew());
                        degree_zero_part(d, &prod)?
                    }
                };
                table.insert((alpha.clone(), i), coeff);
            }
        }
    }
    Ok(ModuleTable { descriptor: desc.clone(), window, point: m, g, basis, b, x, y })
}

/// Action of `c t^δ` on `v_α` through the chosen `b`'s:
/// `(c t^δ b_α b'_{α+δ})(σ^{α+δ} m) v_{α+δ}`, or zero off `G`.
/// `None` when the target leaves the window.
pub fn act_by_formula(d: &Datum, table: &ModuleTable, elem: &SkewElement<Rational>, alpha: &[i64]) -> Result<Option<WeightVector>> {
    let mut out = WeightVector::new();
    for (delta, c) in elem.parts() {
        let target = add(alpha, delta);
        if !table.in_window(&target) {
            return Ok(None);
        }
        if !table.in_basis(&target) || !table.in_basis(alpha) {
            continue;
        }
        let piece = SkewElement::monomial(delta.clone(), c.clone());
        let prod = d.skew_mul(&d.skew_mul(&piece, table.b[alpha].0.as_skew()), table.b[&target].1.as_skew());
        if prod.is_zero() {
            continue;
        }
        let r = degree_zero_part(d, &prod)?;
        let v = r.eval(&orbit_point(d, &table.point, &target)?)?;
        let e = out.entry(target).or_insert_with(Rational::zero);
        *e += v;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Some(out))
}

/// Action of a generator of degree `0` or `±e_i` on `v_α` read from the
/// stored `x`, `y` coefficients. `None` when the target leaves the window.
pub fn act_by_table(d: &Datum, table: &ModuleTable, elem: &SkewElement<Rational>, alpha: &[i64]) -> Result<Option<WeightVector>> {
    let mut out = WeightVector::new();
    for (delta, c) in elem.parts() {
        let target = add(alpha, delta);
        if !table.in_window(&target) {
            return Ok(None);
        }
        if !table.in_basis(alpha) || !table.in_basis(&target) {
            continue;
        }
        let at = orbit_point(d, &table.point, &target)?;
        let nz: Vec<usize> = (0..delta.len()).filter(|&i| delta[i] != 0).collect();
        let scalar = match nz.as_slice() {
            [] => c.eval(&at)?,
            [i] if delta[*i].abs() == 1 => {
                let key = (alpha.to_vec(), *i);
                let coeff = if delta[*i] == 1 { &table.x[&key] } else { &table.y[&key] };
                c.eval(&at)? * coeff.eval(&at)?
            }
            _ => return Err(Error::Precondition(format!("degree {delta:?} is not a generator degree"))),
        };
        let e = out.entry(target).or_insert_with(Rational::zero);
        *e += scalar;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Some(out))
}

fn apply_vec(
    d: &Datum,
    table: &ModuleTable,
    elem: &SkewElement<Rational>,
    v: &WeightVector,
) -> Result<Option<WeightVector>> {
    let mut out = WeightVector::new();
    for (alpha, c) in v {
        let Some(w) = act_by_table(d, table, elem, alpha)? else { return Ok(None) };
        for (k, x) in w {
            let e = out.entry(k).or_insert_with(Rational::zero);
            *e += x * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Some(out))
}

/// First stored edge coefficient whose action disagrees with the action
/// computed from the chosen `b`'s.
fn offending_edge(d: &Datum, table: &ModuleTable, gens: &[GradedElement<Rational>]) -> Result<Option<String>> {
    for g in gens {
        for alpha in &table.basis {
            let (Some(a), Some(b)) = (act_by_table(d, table, g.as_skew(), alpha)?, act_by_formula(d, table, g.as_skew(), alpha)?) else {
                continue;
            };
            if a != b {
                let deg = &g.support()[0];
                let label = match deg.iter().position(|&x| x != 0) {
                    Some(i) if deg[i] > 0 => format!("x[{alpha:?}, {}]", i + 1),
                    Some(i) => format!("y[{alpha:?}, {}]", i + 1),
                    None => format!("weight {alpha:?}"),
                };
                return Ok(Some(label));
            }
        }
    }
    Ok(None)
}

fn show(v: &WeightVector) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(k, c)| format!("{c}*v{k:?}")).collect::<Vec<_>>().join(" + ")
}

/// Checks a table on its window: relations between generator pairs, the
/// normalization of the `b`'s, cross-break vanishing and the one-dimensional
/// weight spaces.
pub fn verify_module(d: &Datum, table: &ModuleTable) -> Result<Report> {
    let n = d.rank();
    let mut report = Report::new();
    let gens = d.generators();

    // (a) table route vs product route on generator pairs
    let mut relation_fail: Option<String> = None;
    let mut relations = 0usize;
    'pairs: for g1 in &gens {
        for g2 in &gens {
            let prod = d.skew_mul(g1.as_skew(), g2.as_skew());
            for alpha in &table.basis {
                let mut unit = WeightVector::new();
                unit.insert(alpha.clone(), Rational::one());
                let Some(step) = apply_vec(d, table, g2.as_skew(), &unit)? else { continue };
                let Some(lhs) = apply_vec(d, table, g1.as_skew(), &step)? else { continue };
                let Some(rhs) = act_by_formula(d, table, &prod, alpha)? else { continue };
                relations += 1;
                if lhs != rhs {
                    let edge = match offending_edge(d, table, &gens)? {
                        Some(e) => format!("; offending edge {e}"),
                        None => String::new(),
                    };
                    relation_fail = Some(format!(
                        "({g1})·(({g2})·v{alpha:?}) = {} but ({g1})({g2}) acts as {}{edge}",
                        show(&lhs),
                        show(&rhs)
                    ));
                    break 'pairs;
                }
            }
        }
    }
    report.push(match relation_fail {
        None => Check::pass("generator relations", format!("{relations} relation instances agree")),
        Some(w) => Check::fail("generator relations", w),
    });

    // (b) one basis vector per weight
    report.push(Check::pass("weight spaces at most one-dimensional", format!("{} basis vectors, one per weight", table.basis.len())));

    // (c) cross-break vanishing, both directions
    let mut cross_fail = None;
    'cross: for alpha in &table.basis {
        let pt = orbit_point(d, &table.point, alpha)?;
        for i in 0..n {
            for sign in [1i64, -1] {
                let mut target = alpha.clone();
                target[i] += sign;
                if !table.in_window(&target) {
                    continue;
                }
                let crosses = if sign == 1 {
                    is_i_break(d, &pt, i)?
                } else {
                    is_i_break(d, &orbit_point(d, &table.point, &target)?, i)?
                };
                let coeff = if sign == 1 { &table.x[&(alpha.clone(), i)] } else { &table.y[&(alpha.clone(), i)] };
                let in_g = table.g.contains(&target);
                if crosses == in_g || coeff.is_zero() != crosses {
                    let label = if sign == 1 { "x" } else { "y" };
                    cross_fail = Some(format!(
                        "edge {alpha:?} -> {target:?} on axis {}: break = {crosses}, target in G = {in_g}, {label} = {coeff}",
                        i + 1
                    ));
                    break 'cross;
                }
            }
        }
    }
    report.push(match cross_fail {
        None => Check::pass("cross-break vanishing", "edge coefficients vanish exactly across breaks"),
        Some(w) => Check::fail("cross-break vanishing", w),
    });

    // (d) b_α b'_α acts as 1 on v_α, so R acts by evaluation at σ^α(m)
    let mut norm_fail = None;
    for alpha in &table.basis {
        let (b, bp) = &table.b[alpha];
        let prod = d.skew_mul(b.as_skew(), bp.as_skew());
        let val = if prod.is_zero() {
            Rational::zero()
        } else {
            degree_zero_part(d, &prod)?.eval(&orbit_point(d, &table.point, alpha)?)?
        };
        if !val.is_one() {
            norm_fail = Some(format!("b_α b'_α = {val} at σ^α(m) for α = {alpha:?}"));
            break;
        }
    }
    report.push(match norm_fail {
        None => Check::pass("evaluation action", "b_α b'_α ≡ 1 at σ^α(m) for every basis degree"),
        Some(w) => Check::fail("evaluation action", w),
    });
    Ok(report)
}
