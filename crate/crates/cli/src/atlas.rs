//! Tabulation of the classification over a grid of slopes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use qpp_core::rational::gcd;
use qpp_core::{classify, coefficient_tuple, equivalence_class, make_sector, sector_arithmetic, SectorSpec};

use crate::encode::{coefficients, JsonRational};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub n_over_l: i64,
    pub l2_over_n: JsonRational,
    pub qpp_count: usize,
    pub ks: Vec<i64>,
    pub polynomials: Vec<Vec<JsonRational>>,
    pub canonical_sector: [i64; 2],
    #[serde(skip)]
    csv_polynomials: String,
}

pub fn atlas_row(s: SectorSpec) -> AtlasRow {
    let a = sector_arithmetic(s);
    let qpps = classify(s);
    let canon = equivalence_class(s);
    AtlasRow {
        n: s.n(),
        m: s.m(),
        l: a.l,
        n_over_l: a.n_over_l,
        l2_over_n: JsonRational::from(&a.l2_over_n),
        qpp_count: qpps.len(),
        ks: qpps.iter().map(|q| q.k).collect(),
        polynomials: qpps.iter().map(|q| coefficients(&q.poly)).collect(),
        canonical_sector: [canon.n(), canon.m()],
        csv_polynomials: qpps
            .iter()
            .map(|q| coefficient_tuple(&q.poly))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

/// The quadrant followed by every coprime `(n, m)` with `n <= n_max`,
/// `1 <= m <= m_max`, sorted by `(n, m)`.
pub fn atlas_sectors(n_max: i64, m_max: i64) -> Vec<SectorSpec> {
    let mut out = vec![SectorSpec::QUADRANT];
    for n in 1..=n_max {
        for m in 1..=m_max {
            if gcd(n, m) == 1 {
                out.push(make_sector(n, m).expect("coprime positive pair"));
            }
        }
    }
    out
}

pub fn build_atlas(n_max: i64, m_max: i64) -> Result<Vec<AtlasRow>, CliError> {
    if n_max < 1 || m_max < 1 {
        return Err(CliError::Usage(format!(
            "--nmax and --mmax must be at least 1 (got {n_max}, {m_max})"
        )));
    }
    Ok(atlas_sectors(n_max, m_max).into_par_iter().map(atlas_row).collect())
}

/// Number of sectors per QPP count.
pub fn histogram(rows: &[AtlasRow]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for r in rows {
        *h.entry(r.qpp_count).or_insert(0) += 1;
    }
    h
}

pub fn summary_line(rows: &[AtlasRow]) -> String {
    let mut out = format!("{} sectors;", rows.len());
    for (count, sectors) in histogram(rows) {
        write!(out, " {count} QPPs: {sectors};").unwrap();
    }
    out.pop();
    out
}

#[derive(Serialize)]
struct AtlasDocument<'a> {
    rows: &'a [AtlasRow],
    summary: BTreeMap<String, usize>,
}

pub fn to_json(rows: &[AtlasRow]) -> Result<String, CliError> {
    let summary = histogram(rows).into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut s = serde_json::to_string_pretty(&AtlasDocument { rows, summary })?;
    s.push('\n');
    Ok(s)
}

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "m",
    "l",
    "n_over_l",
    "l2_over_n",
    "qpp_count",
    "ks",
    "polynomials",
    "canonical_n",
    "canonical_m",
];

pub fn write_csv<W: Write>(rows: &[AtlasRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let l2 = if r.l2_over_n.den == "1" {
            r.l2_over_n.num.clone()
        } else {
            format!("{}/{}", r.l2_over_n.num, r.l2_over_n.den)
        };
        let ks = r.ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(";");
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.l.to_string(),
            r.n_over_l.to_string(),
            l2,
            r.qpp_count.to_string(),
            ks,
            r.csv_polynomials.clone(),
            r.canonical_sector[0].to_string(),
            r.canonical_sector[1].to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn to_csv(rows: &[AtlasRow]) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
