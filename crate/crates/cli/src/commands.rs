//! Subcommand bodies. Each returns the text to print and the exit status.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use qpp_core::{
    admissibility, brute_force_search, certify, classify, factored_main_form, parse_poly_spec, sector_arithmetic,
    CertifyOptions, CoeffRange, FailReason, SearchBounds, SearchHit, SearchMode, SearchOptions, SectorSpec, ValueFloor,
    Verdict, WindowCertificate,
};

use crate::atlas::{build_atlas, summary_line, to_csv, to_json};
use crate::encode::{coefficients, JsonAlpha, JsonRational, JsonSector};
use crate::render::{render_figure, FigureOptions};
use crate::{CliError, Output, EXIT_NEGATIVE};

const K_CASES: [i64; 6] = [1, -1, 2, -2, 3, -3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Serialize)]
struct ClassifyCase {
    k: i64,
    admissible: bool,
    reason: String,
}

#[derive(Serialize)]
struct ClassifyQpp {
    k: i64,
    factored: String,
    expanded: String,
    coefficients: Vec<JsonRational>,
    alpha_form: JsonAlpha,
    constant_f: i64,
}

#[derive(Serialize)]
struct ClassifyReport {
    sector: JsonSector,
    l: i64,
    n_over_l: i64,
    l2_over_n: JsonRational,
    n_divides_l2: bool,
    cases: Vec<ClassifyCase>,
    qpps: Vec<ClassifyQpp>,
}

pub fn classify_cmd(s: SectorSpec, format: ReportFormat) -> Result<Output, CliError> {
    let a = sector_arithmetic(s);
    let qpps = classify(s);
    if format == ReportFormat::Json {
        let report = ClassifyReport {
            sector: JsonSector { n: s.n(), m: s.m() },
            l: a.l,
            n_over_l: a.n_over_l,
            l2_over_n: JsonRational::from(&a.l2_over_n),
            n_divides_l2: a.divides_n_l2,
            cases: K_CASES
                .iter()
                .map(|&k| {
                    let adm = admissibility(s, k);
                    ClassifyCase {
                        k,
                        admissible: adm.is_admissible(),
                        reason: adm.reason(s),
                    }
                })
                .collect(),
            qpps: qpps
                .iter()
                .map(|q| ClassifyQpp {
                    k: q.k,
                    factored: factored_main_form(s, q.k),
                    expanded: q.poly.to_string(),
                    coefficients: coefficients(&q.poly),
                    alpha_form: JsonAlpha::from(&q.alpha_form),
                    constant_f: q.constant_f,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        return Ok(Output::ok(text));
    }

    let mut out = String::new();
    writeln!(out, "sector {}/{}", s.n(), s.m()).unwrap();
    if !a.divides_n_l2 {
        writeln!(out, "no QPPs: {} ∤ ({}-1)²", s.n(), s.m()).unwrap();
        return Ok(Output::ok(out));
    }
    writeln!(
        out,
        "l = {}, n/l = {}, l²/n = {}, (m-1)/l mod n/l = {}",
        a.l, a.n_over_l, a.l2_over_n, a.m1_over_l_mod
    )
    .unwrap();
    for k in K_CASES {
        let adm = admissibility(s, k);
        let verdict = if adm.is_admissible() {
            "admissible".to_string()
        } else {
            format!("no ({})", adm.reason(s))
        };
        writeln!(out, "  k = {k:>2}: {verdict}").unwrap();
    }
    let plural = if qpps.len() == 1 { "" } else { "s" };
    writeln!(out, "{} QPP{plural}", qpps.len()).unwrap();
    for q in &qpps {
        let af = &q.alpha_form;
        writeln!(out, "k = {}", q.k).unwrap();
        writeln!(out, "  factored:   {}", factored_main_form(s, q.k)).unwrap();
        writeln!(out, "  expanded:   {}", q.poly).unwrap();
        writeln!(
            out,
            "  alpha form: A={} B={} C={} D={} E={} F={}",
            af.a, af.b, af.c, af.d, af.e, af.f
        )
        .unwrap();
    }
    Ok(Output::ok(out))
}

fn describe_floor(f: &Option<ValueFloor>) -> String {
    match f {
        Some(ValueFloor::Bounded(b)) => b.to_string(),
        Some(ValueFloor::UnboundedBelow) => "unbounded below".into(),
        None => "not examined".into(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(reason) => format!("fail: {reason}"),
    }
}

#[derive(Serialize)]
struct JsonCertificate {
    x_max: i64,
    points: usize,
    threshold: Option<i64>,
    floor_bound: String,
    passed: bool,
    verdict: String,
}

impl From<&WindowCertificate> for JsonCertificate {
    fn from(c: &WindowCertificate) -> Self {
        JsonCertificate {
            x_max: c.x_max,
            points: c.points,
            threshold: c.threshold,
            floor_bound: describe_floor(&c.floor_bound),
            passed: c.passed(),
            verdict: verdict_text(&c.verdict),
        }
    }
}

/// Verify a polynomial given as an expression or six coefficients. With
/// `x_max` the window is fixed; otherwise it grows until the threshold
/// reaches `target`.
pub fn verify_cmd(
    s: SectorSpec,
    poly_src: &str,
    x_max: Option<i64>,
    target: i64,
    format: ReportFormat,
) -> Result<Output, CliError> {
    let p = parse_poly_spec(poly_src)?;
    let cert = match x_max {
        Some(x) if x < 1 => return Err(CliError::Usage(format!("--xmax must be at least 1 (got {x})"))),
        Some(x) => qpp_core::packing_window_verify(&p, s, x)?,
        None => certify(&p, s, CertifyOptions::with_target(target)),
    };
    let ok = match x_max {
        Some(_) => cert.passed(),
        None => cert.certifies(target),
    };
    let text = if format == ReportFormat::Json {
        #[derive(Serialize)]
        struct Report {
            sector: JsonSector,
            polynomial: String,
            coefficients: Vec<JsonRational>,
            certificate: JsonCertificate,
            certified: bool,
        }
        let mut t = serde_json::to_string_pretty(&Report {
            sector: JsonSector { n: s.n(), m: s.m() },
            polynomial: p.to_string(),
            coefficients: coefficients(&p),
            certificate: JsonCertificate::from(&cert),
            certified: ok,
        })?;
        t.push('\n');
        t
    } else {
        let mut out = String::new();
        writeln!(out, "sector {}/{}", s.n(), s.m()).unwrap();
        writeln!(out, "polynomial: {p}").unwrap();
        writeln!(out, "window: x <= {} ({} points)", cert.x_max, cert.points).unwrap();
        writeln!(out, "minimum beyond window: {}", describe_floor(&cert.floor_bound)).unwrap();
        match cert.threshold {
            Some(t) => writeln!(out, "bijective onto 0..={t} certified").unwrap(),
            None => writeln!(out, "no threshold certified").unwrap(),
        }
        let mut verdict = verdict_text(&cert.verdict);
        if cert.passed() && !ok {
            verdict = format!(
                "fail: {}",
                FailReason::InsufficientWindow {
                    threshold: cert.threshold.unwrap_or(-1)
                }
            );
        }
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    };
    Ok(Output {
        text,
        status: if ok { 0 } else { EXIT_NEGATIVE },
    })
}

/// Parse one bound component: `lo..hi`, or a single `v` meaning `0..v`
/// for non-negative slots and `-v..v` for signed ones.
fn parse_range(src: &str, name: &'static str, signed: bool) -> Result<CoeffRange, CliError> {
    let bad = || CliError::Usage(format!("bad bound for {name}: {src:?} (expected lo..hi or v)"));
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let range = match src.split_once("..") {
        Some((lo, hi)) => CoeffRange::new(num(lo)?, num(hi)?),
        None => {
            let v = num(src)?;
            if signed {
                CoeffRange::new(-v.abs(), v.abs())
            } else {
                CoeffRange::new(0, v)
            }
        }
    };
    if range.lo > range.hi {
        return Err(qpp_core::Error::BadBounds {
            name,
            lo: range.lo,
            hi: range.hi,
        }
        .into());
    }
    Ok(range)
}

pub const DEFAULT_RESTRICTED_BOUNDS: &str = "-15..15:-15..15:0..15";
pub const DEFAULT_FULL_BOUNDS: &str = "1..4:-3..3:0..4:-6..6:-6..6:0..6";

/// `D:E:F` in restricted mode, `A:B:C:D:E:F` in full mode.
pub fn parse_bounds(src: &str, mode: SearchMode) -> Result<SearchBounds, CliError> {
    let parts: Vec<&str> = src.split(':').collect();
    const NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
    const SIGNED: [bool; 6] = [false, true, false, true, true, false];
    let offset = match mode {
        SearchMode::Restricted => 3,
        SearchMode::Full => 0,
    };
    if parts.len() != 6 - offset {
        let shape = if offset == 3 { "D:E:F" } else { "A:B:C:D:E:F" };
        return Err(CliError::Usage(format!("--bounds needs {shape}, got {src:?}")));
    }
    let mut ranges = [CoeffRange::new(1, 1); 6];
    for (i, part) in parts.iter().enumerate() {
        ranges[i + offset] = parse_range(part, NAMES[i + offset], SIGNED[i + offset])?;
    }
    Ok(SearchBounds::full(ranges))
}

pub fn search_cmd(
    s: SectorSpec,
    mode: SearchMode,
    bounds: Option<&str>,
    target: i64,
    jobs: Option<usize>,
    format: ReportFormat,
) -> Result<Output, CliError> {
    let default = match mode {
        SearchMode::Restricted => DEFAULT_RESTRICTED_BOUNDS,
        SearchMode::Full => DEFAULT_FULL_BOUNDS,
    };
    let bounds = parse_bounds(bounds.unwrap_or(default), mode)?;
    let opts = SearchOptions {
        certify: CertifyOptions::with_target(target),
        jobs,
    };
    let hits = brute_force_search(s, &bounds, mode, &opts)?;
    let text = if format == ReportFormat::Json {
        #[derive(Serialize)]
        struct Hit {
            alpha_form: JsonAlpha,
            polynomial: String,
            coefficients: Vec<JsonRational>,
            certificate: JsonCertificate,
        }
        let hits: Vec<Hit> = hits
            .iter()
            .map(|h: &SearchHit| Hit {
                alpha_form: JsonAlpha::from(&h.alpha_form),
                polynomial: h.poly.to_string(),
                coefficients: coefficients(&h.poly),
                certificate: JsonCertificate::from(&h.certificate),
            })
            .collect();
        let mut t = serde_json::to_string_pretty(&hits)?;
        t.push('\n');
        t
    } else {
        let mut out = String::new();
        writeln!(
            out,
            "sector {}/{}: {} polynomial(s) certified to {target}",
            s.n(),
            s.m(),
            hits.len()
        )
        .unwrap();
        for h in &hits {
            let [a, b, c, d, e, f] = h.alpha_form.as_tuple();
            writeln!(
                out,
                "A={a} B={b} C={c} D={d} E={e} F={f}  {}  (x <= {}, threshold {})",
                h.poly,
                h.certificate.x_max,
                h.certificate.threshold.unwrap_or_default()
            )
            .unwrap();
        }
        out
    };
    Ok(Output::ok(text))
}

pub fn write_or_return(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        None => Ok(text),
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
    }
}

pub fn atlas_cmd(n_max: i64, m_max: i64, format: TableFormat, out: Option<&Path>) -> Result<Output, CliError> {
    let rows = build_atlas(n_max, m_max)?;
    let table = match format {
        TableFormat::Json => to_json(&rows)?,
        TableFormat::Csv => to_csv(&rows)?,
    };
    let mut text = write_or_return(table, out)?;
    if out.is_some() {
        text = format!("{}\n", summary_line(&rows));
    }
    Ok(Output::ok(text))
}

pub fn render_cmd(s: SectorSpec, k: i64, opts: FigureOptions, out: Option<&Path>) -> Result<Output, CliError> {
    let figure = render_figure(s, k, opts)?;
    Ok(Output::ok(write_or_return(figure, out)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpp_core::make_sector;

    #[test]
    fn bounds_shapes() {
        let b = parse_bounds("-2..3:4:5", SearchMode::Restricted).unwrap();
        assert_eq!(
            (b.d, b.e, b.f),
            (CoeffRange::new(-2, 3), CoeffRange::new(-4, 4), CoeffRange::new(0, 5))
        );
        assert!(parse_bounds("1:2", SearchMode::Restricted).is_err());
        assert!(parse_bounds("1:2:3", SearchMode::Full).is_err());
        assert!(parse_bounds("3..1:0:0", SearchMode::Restricted).is_err());
        assert!(parse_bounds("x:0:0", SearchMode::Restricted).is_err());
        let f = parse_bounds(DEFAULT_FULL_BOUNDS, SearchMode::Full).unwrap();
        assert_eq!(f.a, CoeffRange::new(1, 4));
    }

    #[test]
    fn classify_without_qpps() {
        let out = classify_cmd(make_sector(3, 2).unwrap(), ReportFormat::Text).unwrap();
        assert!(out.text.contains("no QPPs: 3 ∤ (2-1)²"));
        assert_eq!(out.status, 0);
    }

    #[test]
    fn verify_statuses() {
        let s = make_sector(4, 3).unwrap();
        let good = verify_cmd(s, "2*x^2 - 2*x*y + 1/2*y^2 + 1/2*y", None, 100, ReportFormat::Text).unwrap();
        assert_eq!(good.status, 0, "{}", good.text);
        let bad = verify_cmd(s, "x^2 + y", Some(10), 100, ReportFormat::Text).unwrap();
        assert_eq!(bad.status, EXIT_NEGATIVE);
        assert!(matches!(
            verify_cmd(s, "x^2", Some(0), 100, ReportFormat::Text),
            Err(CliError::Usage(_))
        ));
    }
}
