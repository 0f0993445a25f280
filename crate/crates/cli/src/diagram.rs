//! Lattice diagrams of an orbit window: points, break lines and module
//! supports, rendered to SVG or TikZ from one scene description.

use std::fmt::Write;

use bralg::weight::{AxisBreaks, Bound, SimpleModuleDescriptor};

const UNIT: f64 = 36.0;
const MARGIN: f64 = 48.0;
const AXIS_COLORS: [(&str, &str); 2] = [("#c0392b", "red!70!black"), ("#2471a3", "blue!70!black")];
const SHADES: [f64; 3] = [0.10, 0.18, 0.26];

/// Shapes in lattice coordinates; `y` is zero for rank 1.
#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Rect { x0: f64, y0: f64, x1: f64, y1: f64, shade: f64 },
    Line { x0: f64, y0: f64, x1: f64, y1: f64, axis: usize },
    Point { x: f64, y: f64 },
    Label { x: f64, y: f64, text: String, axis: Option<usize> },
}

pub struct Scene {
    window: i64,
    rank: usize,
    shapes: Vec<Shape>,
}

/// Where a support bound sits on the drawing, clipped to the window.
fn bound_edge(b: Bound, window: i64) -> f64 {
    let w = window as f64 + 0.5;
    match b {
        Bound::At(a) => a as f64 + 0.5,
        Bound::NegInf => -w,
        Bound::PosInf => w,
    }
    .clamp(-w, w)
}

/// Builds the scene for a rank-1 or rank-2 orbit window. Breaks of class
/// `c` sit between lattice points `c` and `c + 1`.
pub fn scene(rank: usize, window: i64, breaks: &[AxisBreaks], descriptors: &[SimpleModuleDescriptor]) -> Scene {
    assert!(rank == 1 || rank == 2);
    let w = window as f64 + 0.5;
    let mut shapes = Vec::new();
    for (k, d) in descriptors.iter().enumerate() {
        let x0 = bound_edge(d.lower[0], window);
        let x1 = bound_edge(d.upper[0], window);
        let (y0, y1) = if rank == 2 {
            (bound_edge(d.lower[1], window), bound_edge(d.upper[1], window))
        } else {
            (-0.3, 0.3)
        };
        if x0 < x1 && y0 < y1 {
            shapes.push(Shape::Rect { x0, y0, x1, y1, shade: SHADES[k % SHADES.len()] });
        }
    }
    for b in breaks {
        for c in &b.classes {
            let at = c.offset as f64 + 0.5;
            if at.abs() > w {
                continue;
            }
            let text = format!("{}", c.offset);
            if b.axis == 0 {
                let (y0, y1) = if rank == 2 { (-w, w) } else { (-0.6, 0.6) };
                shapes.push(Shape::Line { x0: at, y0, x1: at, y1, axis: 0 });
                shapes.push(Shape::Label { x: at, y: y1 + 0.35, text, axis: Some(0) });
            } else {
                shapes.push(Shape::Line { x0: -w, y0: at, x1: w, y1: at, axis: 1 });
                shapes.push(Shape::Label { x: w + 0.45, y: at, text, axis: Some(1) });
            }
        }
    }
    let ys: Vec<i64> = if rank == 2 { (-window..=window).collect() } else { vec![0] };
    for &y in &ys {
        for x in -window..=window {
            shapes.push(Shape::Point { x: x as f64, y: y as f64 });
        }
    }
    let below = if rank == 2 { -w - 0.5 } else { -0.9 };
    for x in -window..=window {
        shapes.push(Shape::Label { x: x as f64, y: below, text: x.to_string(), axis: None });
    }
    if rank == 2 {
        for y in -window..=window {
            shapes.push(Shape::Label { x: -w - 0.5, y: y as f64, text: y.to_string(), axis: None });
        }
    }
    Scene { window, rank, shapes }
}

impl Scene {
    fn extent(&self) -> (f64, f64) {
        let w = self.window as f64 + 1.5;
        let width = 2.0 * w * UNIT + 2.0 * MARGIN;
        let height = if self.rank == 2 { width } else { 2.0 * 1.5 * UNIT + 2.0 * MARGIN };
        (width, height)
    }

    fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let (width, height) = self.extent();
        (width / 2.0 + x * UNIT, height / 2.0 - y * UNIT)
    }

    pub fn svg(&self) -> String {
        let (width, height) = self.extent();
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        for s in &self.shapes {
            match s {
                Shape::Rect { x0, y0, x1, y1, shade } => {
                    let (px0, py1) = self.to_px(*x0, *y1);
                    let (px1, py0) = self.to_px(*x1, *y0);
                    writeln!(
                        out,
                        r#"<rect x="{px0:.1}" y="{py1:.1}" width="{:.1}" height="{:.1}" fill="black" fill-opacity="{shade:.2}"/>"#,
                        px1 - px0,
                        py0 - py1
                    )
                    .unwrap();
                }
                Shape::Line { x0, y0, x1, y1, axis } => {
                    let (a, b) = self.to_px(*x0, *y0);
                    let (c, d) = self.to_px(*x1, *y1);
                    writeln!(
                        out,
                        r#"<line x1="{a:.1}" y1="{b:.1}" x2="{c:.1}" y2="{d:.1}" stroke="{}" stroke-width="2"/>"#,
                        AXIS_COLORS[*axis].0
                    )
                    .unwrap();
                }
                Shape::Point { x, y } => {
                    let (a, b) = self.to_px(*x, *y);
                    writeln!(out, r#"<circle cx="{a:.1}" cy="{b:.1}" r="3" fill="black"/>"#).unwrap();
                }
                Shape::Label { x, y, text, axis } => {
                    let (a, b) = self.to_px(*x, *y);
                    let fill = axis.map_or("black", |k| AXIS_COLORS[k].0);
                    writeln!(
                        out,
                        r#"<text x="{a:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle" fill="{fill}">{text}</text>"#,
                        b + 4.0
                    )
                    .unwrap();
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn tikz(&self) -> String {
        let mut out = String::from("\\begin{tikzpicture}[scale=0.5]\n");
        for s in &self.shapes {
            match s {
                Shape::Rect { x0, y0, x1, y1, shade } => {
                    writeln!(
                        out,
                        "  \\fill[black, opacity={shade:.2}] ({x0:.2},{y0:.2}) rectangle ({x1:.2},{y1:.2});"
                    )
                    .unwrap();
                }
                Shape::Line { x0, y0, x1, y1, axis } => {
                    writeln!(out, "  \\draw[{}, thick] ({x0:.2},{y0:.2}) -- ({x1:.2},{y1:.2});", AXIS_COLORS[*axis].1).unwrap();
                }
                Shape::Point { x, y } => {
                    writeln!(out, "  \\fill ({x:.2},{y:.2}) circle (2pt);").unwrap();
                }
                Shape::Label { x, y, text, axis } => {
                    let color = axis.map_or("black", |k| AXIS_COLORS[k].1);
                    writeln!(out, "  \\node[{color}, font=\\scriptsize] at ({x:.2},{y:.2}) {{${text}$}};").unwrap();
                }
            }
        }
        out.push_str("\\end{tikzpicture}\n");
        out
    }

    pub fn break_lines(&self, axis: usize) -> usize {
        self.shapes.iter().filter(|s| matches!(s, Shape::Line { axis: a, .. } if *a == axis)).count()
    }

    pub fn shaded_regions(&self) -> usize {
        self.shapes.iter().filter(|s| matches!(s, Shape::Rect { .. })).count()
    }

    pub fn lattice_points(&self) -> usize {
        self.shapes.iter().filter(|s| matches!(s, Shape::Point { .. })).count()
    }
}

/// Plain-text stand-in for ranks above 2: one row per descriptor.
pub fn text_table(descriptors: &[SimpleModuleDescriptor]) -> String {
    let mut out = String::from("descriptor | lower | upper\n");
    for (k, d) in descriptors.iter().enumerate() {
        let lo: Vec<String> = d.lower.iter().map(|b| b.to_string()).collect();
        let hi: Vec<String> = d.upper.iter().map(|b| b.to_string()).collect();
        writeln!(out, "{} | ({}) | ({})", k + 1, lo.join(", "), hi.join(", ")).unwrap();
    }
    out
}
