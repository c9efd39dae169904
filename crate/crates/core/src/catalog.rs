//! Classification tables of Fano manifolds as data, and their verdicts.
//!
//! Rows are read from CSV or JSON with the columns
//! `dim, id, description, b2, variant, v1, v2, expected_q, expected_r,
//! provenance` and the optional trailing columns `iota, toric`.
//!
//! | variant     | v1      | v2  | iota         |
//! |-------------|---------|-----|--------------|
//! | `surface`   | `K²`    | `ι` | unused       |
//! | `threefold` | `(−K)³` | `ι` | unused       |
//! | `chern4`    | `k=K⁴`  | `h=c₂K²` | `ι`, default 1 |
//! | `delpezzo`  | `n`     | `d` | unused       |
//! | `mukai`     | `n`     | `d=Hⁿ` | unused    |
//!
//! A provenance starting with `external` marks a numeric value taken from
//! outside the bundled classification statements.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::Rational;
use crate::families::{
    del_pezzo, fourfold_conditions, fourfold_from_chern, mukai, surface_from_k2,
    threefold_discriminant, threefold_from_k3, ChernData4, DelPezzoData, MukaiData,
};
use crate::hilbert::HilbertPolynomial;
use crate::reducibility::{analyze_hilbert, gamma_lines, ReducibilityReport};

const SURFACES: &str = include_str!("../data/surfaces.csv");
const THREEFOLDS: &str = include_str!("../data/threefolds.csv");
const FOURFOLDS: &str = include_str!("../data/fourfolds.csv");
const DEL_PEZZO: &str = include_str!("../data/del_pezzo.csv");
const MUKAI: &str = include_str!("../data/mukai.csv");

/// One row as it appears in a catalog file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub dim: u32,
    pub id: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub b2: Option<u32>,
    pub variant: String,
    #[serde(default)]
    pub v1: Option<i64>,
    #[serde(default)]
    pub v2: Option<i64>,
    #[serde(default)]
    pub expected_q: Option<bool>,
    #[serde(default)]
    pub expected_r: Option<bool>,
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub iota: Option<u32>,
    #[serde(default)]
    pub toric: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum EntryData {
    Surface { k2: u32, iota: u32 },
    Threefold { mk3: u32, iota: u32 },
    Chern4(ChernData4),
    DelPezzo(DelPezzoData),
    Mukai(MukaiData),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Surface,
    Threefold,
    Chern4,
    DelPezzo,
    Mukai,
}

impl Variant {
    fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "surface" | "k2" => Some(Variant::Surface),
            "threefold" | "mk3" => Some(Variant::Threefold),
            "chern4" | "fourfold" => Some(Variant::Chern4),
            "delpezzo" => Some(Variant::DelPezzo),
            "mukai" => Some(Variant::Mukai),
            _ => None,
        }
    }
}

/// A validated catalog record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub dim: u32,
    pub id: String,
    pub description: String,
    pub b2: Option<u32>,
    pub variant: Variant,
    /// `None` when the row lacks the numbers needed to build `P`.
    pub data: Option<EntryData>,
    pub expected_q: Option<bool>,
    pub expected_r: Option<bool>,
    pub provenance: String,
    pub toric: Option<bool>,
}

impl CatalogEntry {
    /// True when the numeric data comes from outside the bundled statements.
    pub fn is_external(&self) -> bool {
        self.provenance.trim_start().to_ascii_lowercase().starts_with("external")
    }

    fn from_row(row: CatalogRow, line: usize) -> Result<Self> {
        let bad = |msg: String| Error::CatalogRow { row: line, msg };
        let variant = Variant::parse(&row.variant)
            .ok_or_else(|| bad(format!("unknown data variant {:?}", row.variant)))?;
        if row.id.trim().is_empty() {
            return Err(bad("missing id".into()));
        }
        if (row.expected_q.is_some() || row.expected_r.is_some()) && row.provenance.trim().is_empty() {
            return Err(bad("expected verdicts need a provenance".into()));
        }
        let unsigned = |v: i64, what: &str| {
            u32::try_from(v).map_err(|_| bad(format!("{what} = {v} must be a nonnegative integer")))
        };
        let data = match (row.v1, row.v2) {
            (Some(v1), Some(v2)) => Some(match variant {
                Variant::Surface => EntryData::Surface { k2: unsigned(v1, "K²")?, iota: unsigned(v2, "ι")? },
                Variant::Threefold => {
                    EntryData::Threefold { mk3: unsigned(v1, "(−K)³")?, iota: unsigned(v2, "ι")? }
                }
                Variant::Chern4 => EntryData::Chern4(ChernData4 { k: v1, h: v2, iota: row.iota.unwrap_or(1) }),
                Variant::DelPezzo => {
                    EntryData::DelPezzo(DelPezzoData { n: unsigned(v1, "n")?, d: unsigned(v2, "d")? })
                }
                Variant::Mukai => EntryData::Mukai(MukaiData {
                    n: unsigned(v1, "n")?,
                    d: unsigned(v2, "d")?,
                    genus: None,
                }),
            }),
            _ => None,
        };
        let expected_dim = match (variant, &data) {
            (Variant::Surface, _) => Some(2),
            (Variant::Threefold, _) => Some(3),
            (Variant::Chern4, _) => Some(4),
            (_, Some(EntryData::DelPezzo(d))) => Some(d.n),
            (_, Some(EntryData::Mukai(m))) => Some(m.n),
            _ => None,
        };
        if let Some(e) = expected_dim {
            if e != row.dim {
                return Err(bad(format!("variant {} needs dim {e}, found {}", row.variant, row.dim)));
            }
        }
        Ok(CatalogEntry {
            dim: row.dim,
            id: row.id,
            description: row.description,
            b2: row.b2,
            variant,
            data,
            expected_q: row.expected_q,
            expected_r: row.expected_r,
            provenance: row.provenance,
            toric: row.toric,
        })
    }
}

/// Parses a CSV or JSON catalog. JSON input is an array of row objects.
pub fn load_catalog(source: &[u8]) -> Result<Vec<CatalogEntry>> {
    let first = source.iter().find(|b| !b.is_ascii_whitespace());
    match first {
        None => Ok(Vec::new()),
        Some(b'[') => {
            let values: Vec<serde_json::Value> =
                serde_json::from_slice(source).map_err(|e| Error::Parse(e.to_string()))?;
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let row: CatalogRow = serde_json::from_value(v)
                        .map_err(|e| Error::CatalogRow { row: i + 1, msg: e.to_string() })?;
                    CatalogEntry::from_row(row, i + 1)
                })
                .collect()
        }
        Some(_) => {
            let mut reader = csv::ReaderBuilder::new()
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(source);
            let mut out = Vec::new();
            for (i, rec) in reader.deserialize::<CatalogRow>().enumerate() {
                let line = i + 2;
                let row = rec.map_err(|e| Error::CatalogRow { row: line, msg: e.to_string() })?;
                out.push(CatalogEntry::from_row(row, line)?);
            }
            Ok(out)
        }
    }
}

/// The bundled tables, optionally restricted to one dimension.
pub fn embedded_catalog(dim: Option<u32>) -> Vec<CatalogEntry> {
    [SURFACES, THREEFOLDS, FOURFOLDS, DEL_PEZZO, MUKAI]
        .iter()
        .flat_map(|src| load_catalog(src.as_bytes()).expect("bundled catalog parses"))
        .filter(|e| dim.is_none_or(|d| e.dim == d))
        .collect()
}

/// Individual bundled tables by name.
pub fn embedded_table(name: &str) -> Option<Vec<CatalogEntry>> {
    let src = match name {
        "surfaces" => SURFACES,
        "threefolds" => THREEFOLDS,
        "fourfolds" => FOURFOLDS,
        "delpezzo" => DEL_PEZZO,
        "mukai" => MUKAI,
        _ => return None,
    };
    Some(load_catalog(src.as_bytes()).expect("bundled catalog parses"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    /// Exact rational, or `null` when it does not exist over ℚ.
    pub value: Option<String>,
}

fn named(name: &str, value: Option<&Rational>) -> NamedValue {
    NamedValue { name: name.into(), value: value.map(|q| q.to_string()) }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaSummary {
    /// Lines `y − ι x − α = 0` for the rational roots `α`, with multiplicity.
    pub q_lines: Vec<String>,
    /// Further real lines with irrational intercept.
    pub r_extra: usize,
    pub totally_real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub id: String,
    pub dim: u32,
    pub description: String,
    pub iota: u32,
    pub toric: Option<bool>,
    pub external: bool,
    pub report: ReducibilityReport,
    /// Family discriminants: `Delta` or `alpha`, `beta`, `gamma` and their squares.
    pub values: Vec<NamedValue>,
    pub gamma: GammaSummary,
    pub warnings: Vec<String>,
    /// Disagreements between expected and computed verdicts.
    pub mismatches: Vec<String>,
}

impl Classification {
    pub fn integrity_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds `P` for the entry and runs the reducibility pipeline.
pub fn classify(entry: &CatalogEntry) -> Result<Classification> {
    let data = entry
        .data
        .ok_or_else(|| Error::NotClassifiable(format!("{} has no numeric data", entry.id)))?;
    let mut warnings = Vec::new();
    let (hp, values): (HilbertPolynomial, Vec<NamedValue>) = match data {
        EntryData::Surface { k2, iota } => {
            let delta = Rational::from_integer(1.into()) - Rational::new(8.into(), k2.into());
            (surface_from_k2(k2, iota)?, vec![named("Delta", Some(&delta))])
        }
        EntryData::Threefold { mk3, iota } => (
            threefold_from_k3(mk3, iota)?,
            vec![named("Delta", Some(&threefold_discriminant(mk3)))],
        ),
        EntryData::Chern4(c) => {
            let f = fourfold_conditions(c.k, c.h)?;
            let values = vec![
                named("alpha^2", Some(&f.alpha_sq)),
                named("alpha", f.alpha.as_ref()),
                named("beta^2", f.beta_sq.as_ref()),
                named("beta", f.beta.as_ref()),
                named("gamma^2", f.gamma_sq.as_ref()),
                named("gamma", f.gamma.as_ref()),
            ];
            (fourfold_from_chern(c)?, values)
        }
        EntryData::DelPezzo(d) => {
            warnings.extend(d.range_warning());
            let (hp, delta) = del_pezzo(d)?;
            (hp, vec![named("Delta", Some(&delta))])
        }
        EntryData::Mukai(m) => {
            let (hp, delta) = mukai(m)?;
            (hp, vec![named("Delta", Some(&delta))])
        }
    };
    let report = analyze_hilbert(&hp)?;
    let g = gamma_lines(&hp, 1)?;
    let gamma = GammaSummary {
        q_lines: g
            .q_lines
            .iter()
            .map(|l| if l.multiplicity > 1 { format!("{} (x{})", l.equation, l.multiplicity) } else { l.equation.clone() })
            .collect(),
        r_extra: g.r_extra,
        totally_real: g.totally_real,
    };
    let mut mismatches = Vec::new();
    for (label, expected, got) in [("Q", entry.expected_q, report.q_verdict), ("R", entry.expected_r, report.r_verdict)] {
        if let Some(e) = expected {
            if e != got {
                mismatches.push(format!("expected totally reducible over {label} = {e}, computed {got}"));
            }
        }
    }
    Ok(Classification {
        id: entry.id.clone(),
        dim: entry.dim,
        description: entry.description.clone(),
        iota: hp.iota(),
        toric: entry.toric,
        external: entry.is_external(),
        report,
        values,
        gamma,
        warnings,
        mismatches,
    })
}

/// Either a classification or the reason an entry could not be classified.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportRow {
    Ok(Box<Classification>),
    Failed { id: String, error: String },
}

impl ReportRow {
    pub fn id(&self) -> &str {
        match self {
            ReportRow::Ok(c) => &c.id,
            ReportRow::Failed { id, .. } => id,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CatalogReport {
    pub rows: Vec<ReportRow>,
}

impl CatalogReport {
    /// Entries whose computed verdicts contradict the expected ones.
    pub fn integrity_failures(&self) -> Vec<&Classification> {
        self.rows
            .iter()
            .filter_map(|r| match r {
                ReportRow::Ok(c) if !c.integrity_ok() => Some(c.as_ref()),
                _ => None,
            })
            .collect()
    }

    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r, ReportRow::Failed { .. })).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            match row {
                ReportRow::Ok(c) => {
                    let vals: Vec<String> = c
                        .values
                        .iter()
                        .map(|v| format!("{}={}", v.name, v.value.as_deref().unwrap_or("irrational")))
                        .collect();
                    out.push_str(&format!(
                        "{:<16} dim={} iota={} Q={} R={} {}  {}\n",
                        c.id,
                        c.dim,
                        c.iota,
                        c.report.q_verdict,
                        c.report.r_verdict,
                        vals.join(" "),
                        c.description
                    ));
                    out.push_str(&format!(
                        "    lines: {}{}\n",
                        if c.gamma.q_lines.is_empty() { "none".to_string() } else { c.gamma.q_lines.join(", ") },
                        if c.gamma.r_extra > 0 { format!(" + {} irrational real", c.gamma.r_extra) } else { String::new() }
                    ));
                    for w in &c.warnings {
                        out.push_str(&format!("    warning: {w}\n"));
                    }
                    for m in &c.mismatches {
                        out.push_str(&format!("    INTEGRITY FAILURE: {m}\n"));
                    }
                }
                ReportRow::Failed { id, error } => out.push_str(&format!("{id:<16} error: {error}\n")),
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "dim", "iota", "q_verdict", "r_verdict", "values", "q_lines", "r_extra", "integrity", "error"])
            .expect("in-memory write");
        for row in &self.rows {
            let rec: Vec<String> = match row {
                ReportRow::Ok(c) => vec![
                    c.id.clone(),
                    c.dim.to_string(),
                    c.iota.to_string(),
                    c.report.q_verdict.to_string(),
                    c.report.r_verdict.to_string(),
                    c.values
                        .iter()
                        .map(|v| format!("{}={}", v.name, v.value.as_deref().unwrap_or("irrational")))
                        .collect::<Vec<_>>()
                        .join(";"),
                    c.gamma.q_lines.join(";"),
                    c.gamma.r_extra.to_string(),
                    if c.integrity_ok() { "ok".into() } else { c.mismatches.join(";") },
                    String::new(),
                ],
                ReportRow::Failed { id, error } => {
                    let mut v = vec![id.clone()];
                    v.extend(std::iter::repeat_n(String::new(), 8));
                    v.push(error.clone());
                    v
                }
            };
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

/// Classifies every entry in parallel and orders the rows by id.
pub fn report(entries: &[CatalogEntry]) -> CatalogReport {
    let mut rows: Vec<ReportRow> = entries
        .par_iter()
        .map(|e| match classify(e) {
            Ok(c) => ReportRow::Ok(Box::new(c)),
            Err(err) => ReportRow::Failed { id: e.id.clone(), error: err.to_string() },
        })
        .collect();
    rows.sort_by(|a, b| natural_cmp(a.id(), b.id()));
    CatalogReport { rows }
}

/// Orders strings with embedded numbers numerically, so `N.2 < N.10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}
