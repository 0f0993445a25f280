use std::collections::HashMap;
use std::path::{Path, PathBuf};

use bralg::brd::SkewElement;
use bralg::simplicity::{self, GammaSimplicity, HyperplaneResult, SimplicityOptions};
use bralg::structure::{self, TwistSpec};
use bralg::weight::{self, Bound};
use bralg::Rational;
use serde_json::{json, Value};

use crate::datum_file::{self, DatumFile, ParseError, Parsed, TgwaFile};
use crate::diagram;
use crate::report::{check_schema, ReportBuilder};
use crate::{Command, TgwaDirection};

#[derive(Debug)]
pub enum CliError {
    Parse { file: PathBuf, error: ParseError },
    Io(String),
    Semantic(String),
}

impl From<bralg::Error> for CliError {
    fn from(e: bralg::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Errors in command-line arguments count as parse failures.
fn arg_error(flag: &str, e: ParseError) -> CliError {
    CliError::Parse { file: PathBuf::from(format!("--{flag}")), error: e }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<Parsed> {
    let src = read(path)?;
    datum_file::parse_datum_file(&src).map_err(|error| CliError::Parse { file: path.to_path_buf(), error })
}

fn load_datum(path: &Path, b: &mut ReportBuilder) -> CliResult<DatumFile> {
    match load(path)? {
        Parsed::Datum(f) => {
            b.input(&datum_file::write_datum(&f.datum, f.assume_gamma_simple));
            Ok(f)
        }
        Parsed::Tgwa(_) => Err(CliError::Semantic(format!("{} is a TGWA file, expected a datum", path.display()))),
    }
}

fn load_tgwa(path: &Path, b: &mut ReportBuilder) -> CliResult<TgwaFile> {
    match load(path)? {
        Parsed::Tgwa(t) => {
            b.input(&datum_file::write_tgwa(&t.tgwa));
            Ok(t)
        }
        Parsed::Datum(_) => Err(CliError::Semantic(format!("{} is a datum file, expected a TGWA", path.display()))),
    }
}

fn point(f: &DatumFile, text: &str) -> CliResult<Vec<Rational>> {
    datum_file::parse_point(f.datum.ring(), &f.params, text).map_err(|e| arg_error("point", e))
}

fn rats(v: &[Rational]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn matrix(m: &[Vec<Rational>]) -> Value {
    json!(m.iter().map(|r| rats(r)).collect::<Vec<_>>())
}

fn bounds(b: &[Bound]) -> Value {
    json!(b.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn parts(s: &SkewElement<Rational>) -> Value {
    json!(s.parts().iter().map(|(d, c)| json!([d, c.to_string()])).collect::<Vec<_>>())
}

fn check_window(window: i64) -> CliResult<()> {
    if window < 0 {
        return Err(CliError::Semantic("window must be nonnegative".into()));
    }
    Ok(())
}

pub fn run(cmd: &Command, b: &mut ReportBuilder) -> CliResult<()> {
    match cmd {
        Command::Validate { file } => validate(file, b),
        Command::Mul { file, left, right, no_verify } => mul(file, left, right, *no_verify, b),
        Command::Ideal { file, degree } => ideal(file, degree, b),
        Command::Classify { file, point, window } => classify(file, point, *window, b),
        Command::Breaks { file, point, window } => breaks(file, point, *window, b),
        Command::ModuleTable { file, point, window, degree_bound, index, no_verify } => {
            module_table(file, point, *window, *degree_bound, *index, *no_verify, b)
        }
        Command::Tgwa { direction: TgwaDirection::To { file, datum_out } } => tgwa_to(file, datum_out.as_deref(), b),
        Command::Tgwa { direction: TgwaDirection::From { file, datum_out } } => tgwa_from(file, datum_out.as_deref(), b),
        Command::Tensor { left, right, twist, datum_out } => tensor(left, right, twist.as_deref(), datum_out.as_deref(), b),
        Command::FixedRing { file, phi, gamma, datum_out } => fixed_ring(file, phi, gamma, datum_out.as_deref(), b),
        Command::Gkdim { file } => gkdim(file, b),
        Command::Simplicity { file, kmax, axis, assume_gamma_simple } => {
            simplicity_cmd(file, *kmax, *axis, *assume_gamma_simple, b)
        }
        Command::Diagram { file, point, window, svg, tikz } => {
            diagram_cmd(file, point, *window, svg.as_deref(), tikz.as_deref(), b)
        }
        Command::CheckReport { file } => check_report(file, b),
    }
}

fn validate(file: &Path, b: &mut ReportBuilder) -> CliResult<()> {
    let f = load_datum(file, b)?;
    let report = f.datum.validate();
    b.set("rank", json!(f.datum.rank()));
    b.set("ring", json!(f.datum.ring().to_string()));
    b.set("failed", json!(report.failures().count()));
    b.checks("", &report);
    Ok(())
}

fn element(f: &DatumFile, flag: &str, text: &str) -> CliResult<bralg::Element> {
    let parts = datum_file::parse_element(f.datum.ring(), &f.params, text).map_err(|e| arg_error(flag, e))?;
    if let Some((deg, _)) = parts.iter().find(|(d, _)| d.len() != f.datum.rank()) {
        return Err(CliError::Semantic(format!("degree {deg:?} does not have length {}", f.datum.rank())));
    }
    Ok(f.datum.element(SkewElement::from_parts(parts))?)
}

fn mul(file: &Path, left: &str, right: &str, no_verify: bool, b: &mut ReportBuilder) -> CliResult<()> {
    let mut f = load_datum(file, b)?;
    let x = element(&f, "left", left)?;
    let y = element(&f, "right", right)?;
    f.datum.set_verify_membership(!no_verify);
    let z = f.datum.multiply(&x, &y)?;
    b.set("left", parts(x.as_skew()));
    b.set("right", parts(y.as_skew()));
    b.set("product", parts(z.as_skew()));
    b.step(
        "product coefficients in canonical ideals",
        if no_verify { "skipped" } else { "pass" },
        if no_verify { "--no-verify" } else { "each coefficient reduced to zero modulo its canonical ideal" },
    );
    Ok(())
}

fn ideal(file: &Path, degree: &str, b: &mut ReportBuilder) -> CliResult<()> {
    let f = load_datum(file, b)?;
    let alpha = datum_file::parse_degree(degree).map_err(|e| arg_error("degree", e))?;
    if alpha.len() != f.datum.rank() {
        return Err(CliError::Semantic(format!("degree must have {} entries", f.datum.rank())));
    }
    let id = f.datum.canonical_ideal(&alpha);
    b.set("degree", json!(alpha));
    b.set("generators", json!(id.gb().iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    b.set("is_unit", json!(id.is_unit()));
    Ok(())
}

fn torsion_guard(f: &DatumFile, m: &[Rational], b: &mut ReportBuilder) -> CliResult<bool> {
    let t = weight::is_torsion_free(&f.datum, m)?;
    b.step(
        "orbit is torsion-free",
        if t.torsion_free { "pass" } else { "fail" },
        &format!("{}{}", t.note, if t.exact { "" } else { " (window search)" }),
    );
    if !t.torsion_free {
        b.status("fail");
        b.set("stabilizer", json!(t.stabilizer));
    }
    Ok(t.torsion_free)
}

fn classify(file: &Path, point_text: &str, window: i64, b: &mut ReportBuilder) -> CliResult<()> {
    check_window(window)?;
    let f = load_datum(file, b)?;
    let m = point(&f, point_text)?;
    b.set("point", rats(&m));
    b.set("window", json!(window));
    if !torsion_guard(&f, &m, b)? {
        return Ok(());
    }
    let desc = weight::classify(&f.datum, &m, window)?;
    let n = f.datum.rank();
    let mut list = Vec::new();
    for (k, d) in desc.iter().enumerate() {
        let mut size = 0usize;
        bralg::brd::for_each_in_box(n, window, |a| {
            if d.supports(a) {
                size += 1;
            }
        });
        list.push(json!({
            "index": k + 1,
            "lower": bounds(&d.lower),
            "upper": bounds(&d.upper),
            "base_offset": d.base_offset,
            "base_point": rats(&d.base_point),
            "exact": d.exact,
            "support_in_window": size,
        }));
    }
    b.set("count", json!(desc.len()));
    b.set("descriptors", json!(list));
    b.step(
        "break lists complete",
        if desc.iter().all(|d| d.exact) { "pass" } else { "window" },
        "descriptors are exact when every axis's break list is",
    );
    Ok(())
}

fn breaks(file: &Path, point_text: &str, window: i64, b: &mut ReportBuilder) -> CliResult<()> {
    check_window(window)?;
    let f = load_datum(file, b)?;
    let m = point(&f, point_text)?;
    b.set("point", rats(&m));
    b.set("window", json!(window));
    if !torsion_guard(&f, &m, b)? {
        return Ok(());
    }
    let all = weight::all_break_classes(&f.datum, &m, window)?;
    let axes: Vec<Value> = all
        .iter()
        .map(|ax| {
            json!({
                "axis": ax.axis + 1,
                "classes": ax.classes.iter().map(|c| json!({
                    "offset": c.offset,
                    "representative": rats(&c.representative),
                })).collect::<Vec<_>>(),
                "infinity": ax.infinity,
                "exact": ax.exact,
                "notes": ax.notes,
                "size": ax.len(),
            })
        })
        .collect();
    let g = weight::g_box(&f.datum, &m, window)?;
    b.set("axes", json!(axes));
    b.set("g_box", json!({ "lower": g.lower, "upper": g.upper }));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn module_table(
    file: &Path,
    point_text: &str,
    window: i64,
    degree_bound: i64,
    index: Option<usize>,
    no_verify: bool,
    b: &mut ReportBuilder,
) -> CliResult<()> {
    check_window(window)?;
    let f = load_datum(file, b)?;
    let m = point(&f, point_text)?;
    b.set("point", rats(&m));
    b.set("window", json!(window));
    b.set("degree_bound", json!(degree_bound));
    if !torsion_guard(&f, &m, b)? {
        return Ok(());
    }
    let desc = weight::classify(&f.datum, &m, window)?;
    let chosen: Vec<usize> = match index {
        Some(k) if k == 0 || k > desc.len() => {
            return Err(CliError::Semantic(format!("index {k} out of range 1..={}", desc.len())))
        }
        Some(k) => vec![k - 1],
        None => (0..desc.len()).collect(),
    };
    let mut tables = Vec::new();
    for k in chosen {
        let t = weight::module_table(&f.datum, &desc[k], window, degree_bound)?;
        let edges = |map: &std::collections::BTreeMap<(Vec<i64>, usize), bralg::Poly>| -> Vec<Value> {
            map.iter().map(|((a, i), v)| json!({ "alpha": a, "axis": i + 1, "value": v.to_string() })).collect()
        };
        let bs: Vec<Value> = t
            .b
            .iter()
            .map(|(a, (x, y))| json!({ "alpha": a, "b": parts(x.as_skew()), "b_prime": parts(y.as_skew()) }))
            .collect();
        tables.push(json!({
            "index": k + 1,
            "point": rats(&t.point),
            "basis": t.basis,
            "b": bs,
            "x": edges(&t.x),
            "y": edges(&t.y),
        }));
        if no_verify {
            b.step(&format!("descriptor {}: verify_module", k + 1), "skipped", "--no-verify");
        } else {
            let r = weight::verify_module(&f.datum, &t)?;
            b.checks(&format!("descriptor {}: ", k + 1), &r);
        }
    }
    b.set("tables", json!(tables));
    Ok(())
}

fn tgwa_to(file: &Path, out: Option<&Path>, b: &mut ReportBuilder) -> CliResult<()> {
    let f = load_datum(file, b)?;
    let c = structure::to_tgwa(&f.datum)?;
    let text = datum_file::write_tgwa(&c.tgwa);
    b.set("a", json!(c.tgwa.a.iter().map(|a| a.to_string()).collect::<Vec<_>>()));
    b.set("mu", matrix(&c.tgwa.mu));
    b.set("gamma", matrix(&c.tgwa.gamma));
    b.set("h", json!(c.h.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    b.set("j", json!(c.j.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    b.set("u", matrix(&c.u));
    b.set("v", matrix(&c.v));
    b.set("tgwa_text", json!(text));
    b.checks("", &c.report);
    if let Some(p) = out {
        write(p, &text)?;
    }
    Ok(())
}

fn tgwa_from(file: &Path, out: Option<&Path>, b: &mut ReportBuilder) -> CliResult<()> {
    let t = load_tgwa(file, b)?;
    b.checks("tgwa: ", &t.tgwa.validate());
    if b.current_status() == "fail" {
        return Ok(());
    }
    let d = structure::from_tgwa(&t.tgwa)?;
    let text = datum_file::write_datum(&d, false);
    b.set("datum_text", json!(text));
    b.checks("datum: ", &d.validate());
    if let Some(p) = out {
        write(p, &text)?;
    }
    Ok(())
}

fn tensor(left: &Path, right: &Path, twist: Option<&str>, out: Option<&Path>, b: &mut ReportBuilder) -> CliResult<()> {
    let l = load_datum(left, b)?;
    let r = load_datum(right, b)?;
    let spec = match twist {
        None => TwistSpec::untwisted(l.datum.rank(), r.datum.rank()),
        Some(text) => {
            let d = datum_file::parse_matrix_text(&l.params, text).map_err(|e| arg_error("twist", e))?;
            TwistSpec { d, lifts: None }
        }
    };
    let tp = structure::twisted_tensor(&l.datum, &r.datum, &spec)?;
    let text = datum_file::write_datum(&tp.datum, false);
    b.set("rank", json!(tp.datum.rank()));
    b.set("ring", json!(tp.datum.ring().to_string()));
    b.set("renamed", json!(tp.renamed));
    b.set("d", matrix(&tp.d));
    b.set("datum_text", json!(text));
    b.checks("", &tp.report);
    if let Some(p) = out {
        write(p, &text)?;
    }
    Ok(())
}

fn fixed_ring(file: &Path, phi: &str, gamma: &str, out: Option<&Path>, b: &mut ReportBuilder) -> CliResult<()> {
    let f = load_datum(file, b)?;
    let phi = datum_file::parse_map_text(f.datum.ring(), &f.params, phi).map_err(|e| arg_error("phi", e))?;
    let gamma = datum_file::parse_constants(&f.params, gamma).map_err(|e| arg_error("gamma", e))?;
    let fr = structure::fixed_ring(&f.datum, &phi, &gamma)?;
    let text = datum_file::write_datum(&fr.datum, false);
    b.set("orders", json!({ "phi": fr.orders.0, "gamma": fr.orders.1 }));
    b.set("generators", json!(fr.generators));
    b.set("datum_text", json!(text));
    b.checks("", &fr.report);
    if let Some(p) = out {
        write(p, &text)?;
    }
    Ok(())
}

fn gkdim(file: &Path, b: &mut ReportBuilder) -> CliResult<()> {
    let f = load_datum(file, b)?;
    let g = structure::gk_dimension(&f.datum);
    b.set("base", json!(g.base));
    b.set("rank", json!(g.rank));
    b.set("value", json!(g.value));
    b.checks("", &g.checklist);
    Ok(())
}

fn hyperplane_json(h: &HyperplaneResult) -> Value {
    let modes = |v: &[(i64, bool)]| -> Value { json!(v.iter().map(|(k, ok)| json!({ "k": k, "pass": ok })).collect::<Vec<_>>()) };
    json!({
        "axis": h.axis + 1,
        "k_max": h.k_max,
        "ideal_mode": modes(&h.ideal_mode),
        "point_mode": h.point_mode.as_deref().map(modes),
        "exact": h.exact.as_ref().map(|e| json!({
            "lonely": e.lonely,
            "witness_k": e.witness_k,
            "variables": e.variables,
            "points": e.points.iter().map(|p| rats(p)).collect::<Vec<_>>(),
        })),
        "agree": h.agree,
        "first_failure": h.first_failure(),
        "note": h.note,
    })
}

fn gamma_json(g: &GammaSimplicity) -> Value {
    match g {
        GammaSimplicity::Certified { certifier } => json!({ "outcome": "certified", "detail": certifier }),
        GammaSimplicity::Assumed => json!({ "outcome": "assumed", "detail": "asserted by the input" }),
        GammaSimplicity::Refuted { ideal, reason } => {
            json!({ "outcome": "refuted", "detail": reason, "witness": ideal.to_string() })
        }
        GammaSimplicity::Unknown { reason } => json!({ "outcome": "unknown", "detail": reason }),
    }
}

fn simplicity_cmd(file: &Path, k_max: i64, axis: Option<usize>, assume: bool, b: &mut ReportBuilder) -> CliResult<()> {
    if k_max < 1 {
        return Err(CliError::Semantic("--kmax must be at least 1".into()));
    }
    let f = load_datum(file, b)?;
    let d = &f.datum;
    let opts = SimplicityOptions { k_max, assume_gamma_simple: assume || f.assume_gamma_simple };
    if let Some(i) = axis {
        if i == 0 || i > d.rank() {
            return Err(CliError::Semantic(format!("axis {i} out of range 1..={}", d.rank())));
        }
        let h = simplicity::hyperplane_condition(d, i - 1, k_max)?;
        let failed = h.first_failure().is_some() || !h.agree;
        b.step(
            &format!("hyperplane condition, axis {i}"),
            if failed { "fail" } else { "pass" },
            &match h.first_failure() {
                Some(k) => format!("fails at k = {k}"),
                None => h.note.clone(),
            },
        );
        b.set("hyperplane", json!([hyperplane_json(&h)]));
        if failed {
            b.status("fail");
        }
        return Ok(());
    }
    let structural = d.validate();
    if !structural.ok() {
        b.checks("datum: ", &structural);
        return Ok(());
    }
    let verdict = simplicity::rankn_verdict(d, &opts)?;
    let hyper = (0..d.rank()).map(|i| simplicity::hyperplane_condition(d, i, k_max).map(|h| hyperplane_json(&h))).collect::<Result<Vec<_>, _>>()?;
    let inv = match simplicity::invariant_subring(d) {
        Ok(s) => json!({
            "generators": s.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "constants_only": s.constants_only,
            "complete": s.complete,
            "note": s.note,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    b.set("gamma_simple", gamma_json(&simplicity::gamma_simple(d, &opts)));
    b.set("hyperplane", json!(hyper));
    b.set("invariant_subring", inv);
    b.set("k_max", json!(k_max));
    b.set("unresolved", json!(verdict.unresolved));
    b.set("verdict", json!(verdict.status.to_string()));
    for e in &verdict.trail {
        b.step(&e.condition, &e.result, &e.detail);
    }
    b.status(&verdict.status.to_string());
    Ok(())
}

fn diagram_cmd(
    file: &Path,
    point_text: &str,
    window: i64,
    svg: Option<&Path>,
    tikz: Option<&Path>,
    b: &mut ReportBuilder,
) -> CliResult<()> {
    check_window(window)?;
    let f = load_datum(file, b)?;
    let m = point(&f, point_text)?;
    b.set("point", rats(&m));
    b.set("window", json!(window));
    if !torsion_guard(&f, &m, b)? {
        return Ok(());
    }
    let desc = weight::classify(&f.datum, &m, window)?;
    let n = f.datum.rank();
    if n > 2 {
        b.set("rendering", json!("table"));
        b.set("table", json!(diagram::text_table(&desc)));
        b.step("lattice rendering", "skipped", &format!("rank {n} > 2; emitted a text table"));
        return Ok(());
    }
    let all = weight::all_break_classes(&f.datum, &m, window)?;
    let scene = diagram::scene(n, window, &all, &desc);
    b.set("rendering", json!("lattice"));
    b.set("break_lines", json!((0..n).map(|i| scene.break_lines(i)).collect::<Vec<_>>()));
    b.set("shaded_regions", json!(scene.shaded_regions()));
    b.set("lattice_points", json!(scene.lattice_points()));
    let mut files: HashMap<&str, String> = HashMap::new();
    if let Some(p) = svg {
        write(p, &scene.svg())?;
        files.insert("svg", p.display().to_string());
    }
    if let Some(p) = tikz {
        write(p, &scene.tikz())?;
        files.insert("tikz", p.display().to_string());
    }
    b.set("files", json!(files.into_iter().collect::<std::collections::BTreeMap<_, _>>()));
    Ok(())
}

fn check_report(file: &Path, b: &mut ReportBuilder) -> CliResult<()> {
    let text = read(file)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        file: file.to_path_buf(),
        error: ParseError { line: e.line(), column: e.column(), message: e.to_string() },
    })?;
    b.input(&text);
    let problems = check_schema(&v);
    b.set("problems", json!(problems));
    if problems.is_empty() {
        b.step("report schema", "pass", "all required fields present with the right types");
    } else {
        b.step("report schema", "fail", &problems.join("; "));
        b.status("fail");
    }
    Ok(())
}
