//! Figures of a QPP on its sector: lattice points labelled with their
//! values, the two boundary rays, and the staircases as polylines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{Signed, ToPrimitive, Zero};

use qpp_core::rational::{self, frac, int};
use qpp_core::{lattice_window, qpp_for, staircase_index, LatticePoint, Rational, SectorSpec};

use crate::CliError;

/// SVG units per lattice step.
pub const UNIT: i64 = 40;
const MARGIN: i64 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureOptions {
    pub x_max: i64,
    /// Points whose value exceeds this are drawn without a label.
    pub value_max: Option<i64>,
    pub format: FigureFormat,
}

struct LabelledPoint {
    x: i64,
    y: i64,
    value: Rational,
}

struct Figure {
    title: String,
    x_max: i64,
    y_top: i64,
    points: Vec<LabelledPoint>,
    staircases: BTreeMap<u64, Vec<(i64, i64)>>,
    /// End of the upper boundary ray, clipped to the drawing box.
    upper_end: (Rational, Rational),
}

impl Figure {
    fn label(&self, p: &LabelledPoint, value_max: Option<i64>) -> Option<String> {
        match value_max {
            Some(v) if p.value > int(v) => None,
            _ => Some(p.value.to_string()),
        }
    }
}

fn build(s: SectorSpec, k: i64, x_max: i64) -> Result<Figure, CliError> {
    if x_max < 1 {
        return Err(CliError::Usage(format!("--xmax must be at least 1 (got {x_max})")));
    }
    let qpp = qpp_for(s, k)?;
    let window = lattice_window(s, x_max)?;
    let y_top = window.iter().map(|p| p.y).max().unwrap_or(0);
    let mut staircases: BTreeMap<u64, Vec<(i64, i64)>> = BTreeMap::new();
    let mut points = Vec::with_capacity(window.len());
    for p in &window {
        let x = rational::to_i64(&p.x).expect("window points are integral");
        staircases.entry(staircase_index(s, p)?).or_default().push((x, p.y));
        points.push(LabelledPoint {
            x,
            y: p.y,
            value: qpp.poly.evaluate(p),
        });
    }
    let upper_end = match s.slope() {
        None => (int(0), int(y_top)),
        Some(alpha) => {
            let y_end = &alpha * int(x_max);
            if y_end > int(y_top) {
                (frac(y_top, 1) / &alpha, int(y_top))
            } else {
                (int(x_max), y_end)
            }
        }
    };
    Ok(Figure {
        title: format!("S({}/{}), k = {}: {}", s.n(), s.m(), k, qpp.poly),
        x_max,
        y_top,
        points,
        staircases,
        upper_end,
    })
}

/// Exact decimal rendering with two places, rounding half away from zero.
pub fn fixed2(r: &Rational) -> String {
    let scaled = r * int(100);
    let half = frac(1, 2);
    let rounded = if scaled.is_negative() {
        -rational::floor(&(-scaled + half))
    } else {
        rational::floor(&(scaled + half))
    };
    let neg = rounded.is_negative();
    let abs = rounded.abs().to_u128().expect("coordinate fits");
    format!(
        "{}{}.{:02}",
        if neg && !rounded.is_zero() { "-" } else { "" },
        abs / 100,
        abs % 100
    )
}

fn px(x: &Rational) -> String {
    fixed2(&(int(MARGIN) + int(UNIT) * x))
}

fn py(fig: &Figure, y: &Rational) -> String {
    fixed2(&(int(MARGIN) + int(UNIT) * (int(fig.y_top) - y)))
}

fn svg(fig: &Figure, value_max: Option<i64>) -> String {
    let width = fig.x_max * UNIT + 2 * MARGIN;
    let height = fig.y_top * UNIT + 2 * MARGIN;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<title>{}</title>"#, escape(&fig.title)).unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();

    writeln!(
        out,
        r##"<g id="staircases" stroke="#9ab" stroke-width="1" fill="none">"##
    )
    .unwrap();
    for (i, steps) in &fig.staircases {
        if steps.len() < 2 {
            continue;
        }
        let pts: Vec<String> = steps
            .iter()
            .map(|&(x, y)| format!("{},{}", px(&int(x)), py(fig, &int(y))))
            .collect();
        writeln!(out, r#"<polyline data-staircase="{i}" points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    let (zero_x, zero_y) = (px(&int(0)), py(fig, &int(0)));
    writeln!(out, r##"<g id="rays" stroke="#000" stroke-width="1.5">"##).unwrap();
    writeln!(
        out,
        r#"<line x1="{zero_x}" y1="{zero_y}" x2="{}" y2="{zero_y}"/>"#,
        px(&int(fig.x_max))
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{zero_x}" y1="{zero_y}" x2="{}" y2="{}"/>"#,
        px(&fig.upper_end.0),
        py(fig, &fig.upper_end.1)
    )
    .unwrap();
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g id="points" font-family="monospace" font-size="12">"#).unwrap();
    for p in &fig.points {
        let (cx, cy) = (int(p.x), int(p.y));
        writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, px(&cx), py(fig, &cy)).unwrap();
        if let Some(label) = fig.label(p, value_max) {
            writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                px(&(cx + frac(1, 8))),
                py(fig, &(cy + frac(1, 8))),
                label
            )
            .unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ascii(fig: &Figure, value_max: Option<i64>) -> String {
    let labels: BTreeMap<(i64, i64), String> = fig
        .points
        .iter()
        .map(|p| ((p.x, p.y), fig.label(p, value_max).unwrap_or_default()))
        .collect();
    let cell = labels.values().map(|l| l.len()).max().unwrap_or(0) + 2;
    let ywidth = fig.y_top.to_string().len();
    let mut out = String::new();
    writeln!(out, "{}", fig.title).unwrap();
    for y in (0..=fig.y_top).rev() {
        let mut line = format!("{y:>ywidth$} |");
        for x in 0..=fig.x_max {
            match labels.get(&(x, y)) {
                Some(label) => write!(line, "*{label:<w$}", w = cell - 1).unwrap(),
                None => line.push_str(&" ".repeat(cell)),
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    writeln!(
        out,
        "{} +{}",
        " ".repeat(ywidth),
        "-".repeat(cell * (fig.x_max as usize + 1))
    )
    .unwrap();
    let mut axis = format!("{}  ", " ".repeat(ywidth));
    for x in 0..=fig.x_max {
        write!(axis, "{x:<cell$}").unwrap();
    }
    out.push_str(axis.trim_end());
    out.push('\n');
    out
}

/// Render the QPP with parameter `k` on `s`. Inadmissible `k` is rejected
/// with the classifier's reason.
pub fn render_figure(s: SectorSpec, k: i64, opts: FigureOptions) -> Result<String, CliError> {
    let fig = build(s, k, opts.x_max)?;
    Ok(match opts.format {
        FigureFormat::Svg => svg(&fig, opts.value_max),
        FigureFormat::Ascii => ascii(&fig, opts.value_max),
    })
}

/// The point drawn at each lattice position, for tests.
pub fn labelled_points(s: SectorSpec, k: i64, x_max: i64) -> Result<Vec<(LatticePoint, Rational)>, CliError> {
    let fig = build(s, k, x_max)?;
    Ok(fig
        .points
        .into_iter()
        .map(|p| (LatticePoint::new(p.x, p.y), p.value))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpp_core::make_sector;

    fn opts(x_max: i64, format: FigureFormat) -> FigureOptions {
        FigureOptions {
            x_max,
            value_max: None,
            format,
        }
    }

    #[test]
    fn fixed_two_places() {
        assert_eq!(fixed2(&frac(1, 3)), "0.33");
        assert_eq!(fixed2(&frac(2, 3)), "0.67");
        assert_eq!(fixed2(&frac(1, 200)), "0.01");
        assert_eq!(fixed2(&frac(-1, 200)), "-0.01");
        assert_eq!(fixed2(&frac(-1, 1000)), "0.00");
        assert_eq!(fixed2(&int(120)), "120.00");
    }

    #[test]
    fn ascii_quadrant() {
        let s = SectorSpec::QUADRANT;
        let text = render_figure(s, 1, opts(2, FigureFormat::Ascii)).unwrap();
        let expected = "\
S(1/0), k = 1: 1/2*x^2 + x*y + 1/2*y^2 + 1/2*x + 3/2*y
2 |*5  *8  *12
1 |*2  *4  *7
0 |*0  *1  *3
  +------------
   0   1   2
";
        assert_eq!(text, expected);
    }

    #[test]
    fn svg_is_deterministic_and_well_formed() {
        let s = make_sector(4, 3).unwrap();
        let a = render_figure(s, 1, opts(4, FigureFormat::Svg)).unwrap();
        let b = render_figure(s, 1, opts(4, FigureFormat::Svg)).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.ends_with("</svg>\n"));
        let circles = a.matches("<circle").count();
        assert_eq!(circles, lattice_window(s, 4).unwrap().len());
    }

    #[test]
    fn value_cap_hides_labels() {
        let s = make_sector(1, 1).unwrap();
        let o = FigureOptions {
            x_max: 3,
            value_max: Some(2),
            format: FigureFormat::Svg,
        };
        let text = render_figure(s, 1, o).unwrap();
        assert_eq!(text.matches("<text").count(), 3);
    }

    #[test]
    fn inadmissible_k_rejected() {
        let s = make_sector(3, 2).unwrap();
        let err = render_figure(s, 1, opts(3, FigureFormat::Svg)).unwrap_err();
        assert!(err.to_string().contains("3 ∤ (2-1)²"), "{err}");
    }
}
