//! Reader and writer for datum files.
//!
//! A datum file is a list of `key: value` lines; `#` starts a comment. See
//! `docs/datum-format.md` for the grammar.

use std::collections::HashMap;
use std::fmt;

use bralg::poly::{Ideal, MonomialOrder, Parser, Ring, RingSpec};
use bralg::structure::TgwaDatum;
use bralg::{Aut, Datum, Poly, Rational};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// A value with the position of its first character.
#[derive(Debug, Clone)]
struct Span {
    line: usize,
    column: usize,
    text: String,
}

impl Span {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column + offset, message: message.into() }
    }

    fn sub(&self, offset: usize, text: &str) -> Span {
        Span { line: self.line, column: self.column + offset, text: text.to_string() }
    }

    /// Trimmed copy with the column moved past leading whitespace.
    fn trimmed(&self) -> Span {
        let lead = self.text.chars().take_while(|c| c.is_whitespace()).count();
        self.sub(lead, self.text.trim())
    }
}

/// Splits at `sep` outside brackets, returning trimmed pieces.
fn split_top(s: &Span, sep: char) -> Vec<Span> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let chars: Vec<char> = s.text.chars().collect();
    for (k, &c) in chars.iter().enumerate() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(s.sub(start, &chars[start..k].iter().collect::<String>()).trimmed());
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(s.sub(start, &chars[start..].iter().collect::<String>()).trimmed());
    out
}

/// Strips one pair of enclosing brackets `open`/`close`, if present.
fn unwrap_brackets(s: &Span, open: char, close: char) -> Option<Span> {
    let t = s.text.as_str();
    if t.starts_with(open) && t.ends_with(close) && t.len() >= 2 {
        let inner: String = t.chars().skip(1).take(t.chars().count() - 2).collect();
        Some(s.sub(1, &inner))
    } else {
        None
    }
}

/// Everything a datum file can contain, before interpretation.
#[derive(Debug, Default)]
struct RawFile {
    entries: Vec<(String, Span, Span)>,
}

fn read_raw(src: &str) -> PResult<RawFile> {
    let mut raw = RawFile::default();
    for (idx, line) in src.lines().enumerate() {
        let line_no = idx + 1;
        let content = match line.find('#') {
            Some(k) => &line[..k],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let whole = Span { line: line_no, column: 1, text: content.to_string() };
        let lead = content.chars().take_while(|c| c.is_whitespace()).count();
        if let Some(rest) = content.trim_start().strip_prefix("param ") {
            let key = whole.sub(lead, "param");
            let value = whole.sub(lead + "param ".len(), rest).trimmed();
            raw.entries.push(("param".into(), key, value));
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(whole.at(lead, "expected `key: value`"));
        };
        let key_text = content[..colon].trim();
        let key = whole.sub(lead, key_text);
        let value_col = content[..=colon].chars().count();
        let value = whole.sub(value_col, &content[colon + 1..]).trimmed();
        raw.entries.push((key_text.to_string(), key, value));
    }
    Ok(raw)
}

/// A parsed datum file.
#[derive(Debug, Clone)]
pub struct DatumFile {
    pub datum: Datum,
    pub params: HashMap<String, Rational>,
    pub assume_gamma_simple: bool,
}

/// A parsed TGWA file (one with `a1:` lines instead of `H1:`/`J1:`).
#[derive(Debug, Clone)]
pub struct TgwaFile {
    pub tgwa: TgwaDatum,
}

#[derive(Debug, Clone)]
pub enum Parsed {
    Datum(DatumFile),
    Tgwa(TgwaFile),
}

/// Parses a rational constant, possibly written with parameters.
fn parse_constant(s: &Span, params: &HashMap<String, Rational>) -> PResult<Rational> {
    let ring = RingSpec::polynomial(&["constant"]);
    let p = parse_poly_in(&ring, params, s)?;
    p.constant_value().ok_or_else(|| s.error(format!("`{}` is not a constant", s.text)))
}

fn parse_poly_in(ring: &Ring, params: &HashMap<String, Rational>, s: &Span) -> PResult<Poly> {
    Parser::new(ring, params, &s.text).parse().map_err(|e| match e {
        bralg::Error::Parse { column, message } => s.at(column - 1, message),
        other => s.error(other.to_string()),
    })
}

fn parse_names(s: &Span) -> PResult<Vec<Span>> {
    let names = split_top(s, ',');
    for n in &names {
        if n.text.is_empty() || !n.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || n.text.chars().next().is_some_and(|c| c.is_ascii_digit())
        {
            return Err(n.error(format!("invalid variable name `{}`", n.text)));
        }
    }
    Ok(names)
}

fn parse_matrix(s: &Span, params: &HashMap<String, Rational>) -> PResult<Vec<Vec<Rational>>> {
    let inner = unwrap_brackets(s, '[', ']').ok_or_else(|| s.error("expected a matrix `[a, b; c, d]`"))?;
    split_top(&inner, ';')
        .iter()
        .map(|row| split_top(row, ',').iter().map(|e| parse_constant(e, params)).collect())
        .collect()
}

/// Parses `{x: image, ...}`; variables not listed are fixed.
pub fn parse_map_text(ring: &Ring, params: &HashMap<String, Rational>, text: &str) -> Result<Aut, ParseError> {
    parse_map(ring, params, &Span { line: 1, column: 1, text: text.to_string() })
}

fn parse_map(ring: &Ring, params: &HashMap<String, Rational>, s: &Span) -> PResult<Aut> {
    let inner = unwrap_brackets(s, '{', '}').ok_or_else(|| s.error("expected `{var: image, ...}`"))?;
    let mut images: Vec<Option<Poly>> = vec![None; ring.nvars()];
    if !inner.text.trim().is_empty() {
        for entry in split_top(&inner, ',') {
            let Some(colon) = entry.text.find(':') else {
                return Err(entry.error("expected `var: image`"));
            };
            let name = entry.text[..colon].trim();
            let j = ring.index_of(name).ok_or_else(|| entry.error(format!("unknown variable `{name}`")))?;
            if images[j].is_some() {
                return Err(entry.error(format!("`{name}` mapped twice")));
            }
            let col = entry.text[..=colon].chars().count();
            let img = entry.sub(col, &entry.text[colon + 1..]).trimmed();
            images[j] = Some(parse_poly_in(ring, params, &img)?);
        }
    }
    let images: Vec<Poly> = images.into_iter().enumerate().map(|(j, p)| p.unwrap_or_else(|| Poly::var(ring, j))).collect();
    Aut::from_images(ring, &images).map_err(|e| s.error(e.to_string()))
}

fn parse_ideal(ring: &Ring, params: &HashMap<String, Rational>, s: &Span) -> PResult<Ideal<Rational>> {
    let body = unwrap_brackets(s, '[', ']').unwrap_or_else(|| s.clone());
    let gens = split_top(&body, ',').iter().map(|g| parse_poly_in(ring, params, g)).collect::<PResult<Vec<_>>>()?;
    Ideal::new(ring, gens).map_err(|e| s.error(e.to_string()))
}

/// `key` followed by a 1-based index, or the bare key for index 1.
fn indexed(key: &str, prefix: &str) -> Option<usize> {
    let rest = key.strip_prefix(prefix)?;
    if rest.is_empty() {
        return Some(1);
    }
    rest.parse::<usize>().ok().filter(|&k| k >= 1)
}

pub fn parse_datum_file(src: &str) -> PResult<Parsed> {
    let raw = read_raw(src)?;
    let mut params: HashMap<String, Rational> = HashMap::new();
    let mut vars: Option<Span> = None;
    let mut laurent: Option<Span> = None;
    let mut order = MonomialOrder::DegRevLex;
    let mut sigmas: HashMap<usize, Span> = HashMap::new();
    let mut hs: HashMap<usize, Span> = HashMap::new();
    let mut js: HashMap<usize, Span> = HashMap::new();
    let mut as_: HashMap<usize, Span> = HashMap::new();
    let mut p: Option<Span> = None;
    let mut mu: Option<Span> = None;
    let mut gamma: Option<Span> = None;
    let mut assume = false;

    for (key, kspan, value) in &raw.entries {
        let dup = |map: &HashMap<usize, Span>, k: usize| -> PResult<()> {
            if map.contains_key(&k) {
                Err(kspan.error(format!("`{key}` given twice")))
            } else {
                Ok(())
            }
        };
        match key.as_str() {
            "param" => {
                let Some(eq) = value.text.find('=') else {
                    return Err(value.error("expected `param name = value`"));
                };
                let name = value.text[..eq].trim().to_string();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(value.error(format!("invalid parameter name `{name}`")));
                }
                let col = value.text[..=eq].chars().count();
                let v = parse_constant(&value.sub(col, &value.text[eq + 1..]).trimmed(), &params)?;
                params.insert(name, v);
            }
            "vars" => vars = Some(value.clone()),
            "laurent" => laurent = Some(value.clone()),
            "order" => {
                order = match value.text.as_str() {
                    "degrevlex" => MonomialOrder::DegRevLex,
                    "lex" => MonomialOrder::Lex,
                    other => return Err(value.error(format!("unknown order `{other}`"))),
                }
            }
            "p" => p = Some(value.clone()),
            "mu" => mu = Some(value.clone()),
            "gamma" => gamma = Some(value.clone()),
            "gamma-simple" => match value.text.as_str() {
                "assumed" => assume = true,
                "unknown" => assume = false,
                other => return Err(value.error(format!("expected `assumed` or `unknown`, found `{other}`"))),
            },
            k => {
                let slot = if let Some(i) = indexed(k, "sigma") {
                    Some((&mut sigmas, i))
                } else if let Some(i) = indexed(k, "H") {
                    Some((&mut hs, i))
                } else if let Some(i) = indexed(k, "J") {
                    Some((&mut js, i))
                } else if let Some(i) = indexed(k, "a") {
                    Some((&mut as_, i))
                } else {
                    None
                };
                let Some((map, i)) = slot else {
                    return Err(kspan.error(format!("unknown key `{k}`")));
                };
                dup(map, i)?;
                map.insert(i, value.clone());
            }
        }
    }

    let whole = Span { line: 1, column: 1, text: String::new() };
    let vars = vars.ok_or_else(|| whole.error("missing `vars:` line"))?;
    let names = parse_names(&vars)?;
    let mut flags = vec![false; names.len()];
    if let Some(l) = &laurent {
        if !l.text.is_empty() {
            for n in parse_names(l)? {
                let k = names.iter().position(|m| m.text == n.text).ok_or_else(|| n.error(format!("`{}` is not in `vars`", n.text)))?;
                flags[k] = true;
            }
        }
    }
    let name_texts: Vec<&str> = names.iter().map(|n| n.text.as_str()).collect();
    let ring = RingSpec::new(&name_texts, &flags, order).map_err(|e| vars.error(e.to_string()))?;

    let rank = sigmas.len();
    if rank == 0 {
        return Err(whole.error("missing `sigma1:` line"));
    }
    let mut sigma = Vec::with_capacity(rank);
    for i in 1..=rank {
        let s = sigmas.get(&i).ok_or_else(|| whole.error(format!("missing `sigma{i}:` line")))?;
        sigma.push(parse_map(&ring, &params, s)?);
    }
    let check_range = |map: &HashMap<usize, Span>, what: &str| -> PResult<()> {
        match map.iter().find(|(&k, _)| k > rank) {
            Some((k, s)) => Err(s.error(format!("`{what}{k}` exceeds the rank {rank}"))),
            None => Ok(()),
        }
    };
    check_range(&hs, "H")?;
    check_range(&js, "J")?;
    check_range(&as_, "a")?;

    if !as_.is_empty() {
        if let Some((_, s)) = hs.iter().chain(js.iter()).next() {
            return Err(s.error("a TGWA file has `a` lines, not `H`/`J` lines"));
        }
        let mut a = Vec::with_capacity(rank);
        for i in 1..=rank {
            let s = as_.get(&i).ok_or_else(|| whole.error(format!("missing `a{i}:` line")))?;
            a.push(parse_poly_in(&ring, &params, s)?);
        }
        let ones = vec![vec![Rational::one(); rank]; rank];
        let mu = match &mu {
            Some(s) => square(parse_matrix(s, &params)?, rank, s)?,
            None => ones.clone(),
        };
        let gamma = match &gamma {
            Some(s) => square(parse_matrix(s, &params)?, rank, s)?,
            None => ones,
        };
        return Ok(Parsed::Tgwa(TgwaFile { tgwa: TgwaDatum { ring, sigma, a, mu, gamma } }));
    }
    if let Some(s) = mu.as_ref().or(gamma.as_ref()) {
        return Err(s.error("`mu`/`gamma` belong to TGWA files"));
    }
    let p = match &p {
        Some(s) => square(parse_matrix(s, &params)?, rank, s)?,
        None => vec![vec![Rational::one(); rank]; rank],
    };
    let mut h = Vec::with_capacity(rank);
    let mut j = Vec::with_capacity(rank);
    for i in 1..=rank {
        h.push(match hs.get(&i) {
            Some(s) => parse_ideal(&ring, &params, s)?,
            None => Ideal::unit(&ring),
        });
        j.push(match js.get(&i) {
            Some(s) => parse_ideal(&ring, &params, s)?,
            None => Ideal::unit(&ring),
        });
    }
    let datum = Datum::new(&ring, sigma, p, h, j).map_err(|e| whole.error(e.to_string()))?;
    Ok(Parsed::Datum(DatumFile { datum, params, assume_gamma_simple: assume }))
}

fn square(m: Vec<Vec<Rational>>, n: usize, s: &Span) -> PResult<Vec<Vec<Rational>>> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(s.error(format!("expected a {n}x{n} matrix")));
    }
    if m.iter().flatten().any(|x| x.is_zero()) {
        return Err(s.error("matrix entries must be nonzero"));
    }
    Ok(m)
}

fn ring_lines(out: &mut String, ring: &Ring) {
    out.push_str(&format!("vars: {}\n", ring.names().join(", ")));
    let laurent: Vec<&str> = (0..ring.nvars()).filter(|&j| ring.is_invertible(j)).map(|j| ring.name(j)).collect();
    if !laurent.is_empty() {
        out.push_str(&format!("laurent: {}\n", laurent.join(", ")));
    }
    if ring.order() == MonomialOrder::Lex {
        out.push_str("order: lex\n");
    }
}

fn matrix_text(m: &[Vec<Rational>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Serializes a datum in the file format; parsing the output gives back
/// the same datum.
pub fn write_datum(d: &Datum, assume_gamma_simple: bool) -> String {
    let mut out = String::new();
    ring_lines(&mut out, d.ring());
    for (i, s) in d.sigmas().iter().enumerate() {
        out.push_str(&format!("sigma{}: {s}\n", i + 1));
    }
    out.push_str(&format!("p: {}\n", matrix_text(d.p())));
    for i in 0..d.rank() {
        for (key, ideal) in [("H", d.h(i)), ("J", d.j(i))] {
            let gens: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
            let gens = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
            out.push_str(&format!("{key}{}: {gens}\n", i + 1));
        }
    }
    if assume_gamma_simple {
        out.push_str("gamma-simple: assumed\n");
    }
    out
}

pub fn write_tgwa(t: &TgwaDatum) -> String {
    let mut out = String::new();
    ring_lines(&mut out, &t.ring);
    for (i, s) in t.sigma.iter().enumerate() {
        out.push_str(&format!("sigma{}: {s}\n", i + 1));
    }
    for (i, a) in t.a.iter().enumerate() {
        out.push_str(&format!("a{}: {a}\n", i + 1));
    }
    out.push_str(&format!("mu: {}\n", matrix_text(&t.mu)));
    out.push_str(&format!("gamma: {}\n", matrix_text(&t.gamma)));
    out
}

/// Parses `name=value, ...` into a point of `ring`; every variable must be
/// given.
pub fn parse_point(ring: &Ring, params: &HashMap<String, Rational>, text: &str) -> PResult<Vec<Rational>> {
    let s = Span { line: 1, column: 1, text: text.to_string() };
    let mut pt: Vec<Option<Rational>> = vec![None; ring.nvars()];
    for entry in split_top(&s, ',') {
        let Some(eq) = entry.text.find('=') else {
            return Err(entry.error("expected `name=value`"));
        };
        let name = entry.text[..eq].trim();
        let j = ring.index_of(name).ok_or_else(|| entry.error(format!("unknown variable `{name}`")))?;
        let col = entry.text[..=eq].chars().count();
        pt[j] = Some(parse_constant(&entry.sub(col, &entry.text[eq + 1..]).trimmed(), params)?);
    }
    pt.into_iter()
        .enumerate()
        .map(|(j, v)| v.ok_or_else(|| s.error(format!("no value for `{}`", ring.name(j)))))
        .collect()
}

/// Parses a comma-separated list of constants.
pub fn parse_constants(params: &HashMap<String, Rational>, text: &str) -> PResult<Vec<Rational>> {
    let s = Span { line: 1, column: 1, text: text.to_string() };
    let body = unwrap_brackets(&s, '[', ']').unwrap_or(s);
    split_top(&body, ',').iter().map(|e| parse_constant(e, params)).collect()
}

/// Parses a matrix `[a, b; c, d]` of constants.
pub fn parse_matrix_text(params: &HashMap<String, Rational>, text: &str) -> PResult<Vec<Vec<Rational>>> {
    let s = Span { line: 1, column: 1, text: text.trim().to_string() };
    let s = if s.text.starts_with('[') { s } else { Span { text: format!("[{}]", s.text), ..s } };
    parse_matrix(&s, params)
}

/// Parses a degree vector `1,-2` or `[1, -2]`.
pub fn parse_degree(text: &str) -> PResult<Vec<i64>> {
    let s = Span { line: 1, column: 1, text: text.trim().to_string() };
    let body = unwrap_brackets(&s, '[', ']').unwrap_or(s);
    split_top(&body, ',')
        .iter()
        .map(|e| e.text.parse::<i64>().map_err(|_| e.error(format!("`{}` is not an integer", e.text))))
        .collect()
}

/// Parses a graded element `[1]: z + 1; [0]: 3`.
pub fn parse_element(ring: &Ring, params: &HashMap<String, Rational>, text: &str) -> PResult<Vec<(Vec<i64>, Poly)>> {
    let s = Span { line: 1, column: 1, text: text.to_string() };
    let mut parts = Vec::new();
    for piece in split_top(&s, ';') {
        let Some(close) = piece.text.find(']') else {
            return Err(piece.error("expected `[degree]: coefficient`"));
        };
        let deg = parse_degree(&piece.text[..=close]).map_err(|e| piece.at(e.column - 1, e.message))?;
        let rest = piece.text[close + 1..].trim_start();
        let Some(coeff) = rest.strip_prefix(':') else {
            return Err(piece.at(close + 1, "expected `:` after the degree"));
        };
        let offset = piece.text.chars().count() - coeff.chars().count();
        parts.push((deg, parse_poly_in(ring, params, &piece.sub(offset, coeff).trimmed())?));
    }
    Ok(parts)
}
