//! Command-line front end: argument parsing, dispatch and output rendering.
//!
//! All computational output goes to `stdout`, diagnostics to `stderr`.
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

mod render;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fano_hilbert::catalog::{self, load_catalog, NamedValue};
use fano_hilbert::exactq::{parse_rational, Rational, UniPoly};
use fano_hilbert::families::{self, ChernData4, DelPezzoData, MukaiData};
use fano_hilbert::hilbert::{from_h0, H0Vector, HilbertPolynomial};
use fano_hilbert::reducibility::{
    analyze, analyze_hilbert, gamma_lines, strip_check_with_precision, GammaDecomposition,
    PlotPoint, ReducibilityReport, StripVerdict,
};
use fano_hilbert::scan::{self, conjecture_evidence};
use fano_hilbert::structure::{check_structure, StructuralReport};
use fano_hilbert::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pn,
    Qn,
    Delpezzo,
    Mukai,
    Surface,
    Threefold,
    Fourfold,
    Bundle13,
    Bundle2,
}

#[derive(Debug, Parser)]
#[command(name = "fano-hilbert", version, about = "Hilbert polynomials of Fano manifolds and their reducibility")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Minimum working precision in bits for numeric root finding.
    #[arg(long, global = true, env = "FANO_PRECISION", default_value_t = 256)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Analysis {
    /// Run the reducibility and structural checks.
    #[arg(long)]
    pub check: bool,
    /// Decompose the Hilbert curve into lines.
    #[arg(long)]
    pub curve: bool,
    /// Multiple of the fundamental divisor used for the curve.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Locate every root relative to the narrow canonical strip.
    #[arg(long)]
    pub strip: bool,
    /// Width of the indeterminate zone around the strip walls.
    #[arg(long, default_value = "1e-20")]
    pub tol: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form polynomial of a named family.
    Family {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Dimension.
        #[arg(long)]
        n: Option<u32>,
        /// Degree Hⁿ.
        #[arg(long)]
        d: Option<u32>,
        /// K² of a surface.
        #[arg(long)]
        k2: Option<u32>,
        /// (−K)³ of a threefold.
        #[arg(long)]
        k3: Option<u32>,
        /// K⁴ of a fourfold.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// c₂·K² of a fourfold.
        #[arg(long, allow_negative_numbers = true)]
        h: Option<i64>,
        /// Fano index.
        #[arg(long)]
        iota: Option<u32>,
        /// Base dimension of a bundle over ℙᵐ.
        #[arg(long)]
        m: Option<u32>,
        /// Genus of a Mukai manifold, used when --d is absent.
        #[arg(long)]
        genus: Option<u32>,
        #[command(flatten)]
        analysis: Analysis,
    },
    /// Polynomial recovered from h⁰(tH), t = 0..=coindex.
    FromH0 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        iota: u32,
        /// Comma-separated values, e.g. 1,9,31.
        #[arg(long)]
        h0: String,
        #[command(flatten)]
        analysis: Analysis,
    },
    /// Checks a polynomial read as JSON from stdin: either `{"n", "iota", "coeffs"}`
    /// or a bare coefficient array.
    Check {
        /// Read from this file instead of stdin.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[arg(long)]
        strip: bool,
        #[arg(long, default_value = "1e-20")]
        tol: String,
    },
    /// Scans the bundles over ℙᵐ for m in a range.
    ScanBundles {
        #[arg(long, default_value_t = 2)]
        min: u32,
        #[arg(long, default_value_t = 10)]
        max: u32,
        /// Worker threads; 0 uses every core.
        #[arg(long, env = "FANO_WORKERS", default_value_t = 0)]
        workers: usize,
        /// Include per-record wall-clock times.
        #[arg(long)]
        timing: bool,
        /// Print the evidence table for the conjectured root pattern instead.
        #[arg(long)]
        evidence: bool,
    },
    /// Classifies a catalog of Fano manifolds.
    Catalog {
        /// Restrict to one dimension.
        #[arg(long)]
        dim: Option<u32>,
        /// CSV or JSON catalog file; the bundled tables are used otherwise.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Hilbert curve lines of a polynomial read as JSON from stdin.
    Curve {
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Emit plot samples `x,y,line` instead of the decomposition.
        #[arg(long)]
        emit_points: bool,
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut out = Vec::new();
    let mut diag = Vec::new();
    let code = match dispatch(&cli, stdin, &mut out, &mut diag) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            diag.extend_from_slice(format!("usage error: {msg}\n").as_bytes());
            2
        }
        Err(Failure::Domain(msg)) => {
            diag.extend_from_slice(format!("error: {msg}\n").as_bytes());
            1
        }
    };
    let _ = stdout.write_all(&out);
    let _ = stderr.write_all(&diag);
    code
}

/// Everything the polynomial-producing subcommands can report.
#[derive(Debug, Serialize)]
pub struct PolyOutput {
    pub kind: String,
    pub polynomial: HilbertPolynomial,
    pub degree_hn: String,
    pub r_factored: String,
    pub values: Vec<NamedValue>,
    pub warnings: Vec<String>,
    pub report: Option<ReducibilityReport>,
    pub structure: Option<StructuralReport>,
    pub curve: Option<GammaDecomposition>,
    pub strip: Option<StripOutput>,
}

#[derive(Debug, Serialize)]
pub struct StripOutput {
    pub tol: String,
    pub lower_wall: String,
    pub upper_wall: String,
    pub roots: Vec<StripVerdict>,
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut Vec<u8>, diag: &mut Vec<u8>) -> Outcome {
    match &cli.command {
        Command::Family { kind, n, d, k2, k3, k, h, iota, m, genus, analysis } => {
            let need = |v: Option<u32>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--kind {} needs --{flag}", kind_name(*kind))))
            };
            let need_i = |v: Option<i64>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--kind {} needs --{flag}", kind_name(*kind))))
            };
            let mut values = Vec::new();
            let mut warnings = Vec::new();
            let hp = match kind {
                Kind::Pn => families::projective_space(need(*n, "n")?)?,
                Kind::Qn => families::quadric(need(*n, "n")?)?,
                Kind::Delpezzo => {
                    let data = DelPezzoData { n: need(*n, "n")?, d: need(*d, "d")? };
                    warnings.extend(data.range_warning());
                    let (hp, delta) = families::del_pezzo(data)?;
                    values.push(named("Delta", Some(&delta)));
                    hp
                }
                Kind::Mukai => {
                    let n = need(*n, "n")?;
                    let d = match (d, genus) {
                        (Some(d), _) => *d,
                        (None, Some(g)) => families::genus_degree(*g)?,
                        (None, None) => return Err(Failure::Usage("--kind mukai needs --d or --genus".into())),
                    };
                    let (hp, delta) = families::mukai(MukaiData { n, d, genus: *genus })?;
                    values.push(named("Delta", Some(&delta)));
                    hp
                }
                Kind::Surface => {
                    let k2 = need(*k2, "k2")?;
                    let iota = iota.or_else(|| families::surface_indices(k2).first().copied());
                    let hp = families::surface_from_k2(k2, need(iota, "iota")?)?;
                    let delta = Rational::from_integer(1.into()) - Rational::new(8.into(), k2.into());
                    values.push(named("Delta", Some(&delta)));
                    hp
                }
                Kind::Threefold => {
                    let k3 = need(*k3, "k3")?;
                    let hp = families::threefold_from_k3(k3, need(*iota, "iota")?)?;
                    values.push(named("Delta", Some(&families::threefold_discriminant(k3))));
                    hp
                }
                Kind::Fourfold => {
                    let (k, h) = (need_i(*k, "k")?, need_i(*h, "h")?);
                    let f = families::fourfold_conditions(k, h)?;
                    values.extend([
                        named("alpha^2", Some(&f.alpha_sq)),
                        named("alpha", f.alpha.as_ref()),
                        named("beta^2", f.beta_sq.as_ref()),
                        named("beta", f.beta.as_ref()),
                        named("gamma^2", f.gamma_sq.as_ref()),
                        named("gamma", f.gamma.as_ref()),
                    ]);
                    families::fourfold_from_chern(ChernData4 { k, h, iota: iota.unwrap_or(1) })?
                }
                Kind::Bundle13 => families::bundle_case13_poly(need(*m, "m")?)?,
                Kind::Bundle2 => families::bundle_case2_poly(need(*m, "m")?)?,
            };
            let o = poly_output(kind_name(*kind), hp, values, warnings, analysis, cli.precision)?;
            emit_poly(&o, cli.format, out)
        }
        Command::FromH0 { n, iota, h0, analysis } => {
            let v = H0Vector::parse(h0)?;
            let hp = from_h0(*n, *iota, &v)?;
            let o = poly_output("from-h0", hp, Vec::new(), Vec::new(), analysis, cli.precision)?;
            emit_poly(&o, cli.format, out)
        }
        Command::Check { input, strip, tol } => {
            let text = read_input(input.as_deref(), stdin)?;
            match parse_poly_input(&text)? {
                PolyInput::Bare(p) => {
                    let rep = analyze(&p)?;
                    render::emit_report(&p, &rep, cli.format, out);
                    Ok(())
                }
                PolyInput::Hilbert(hp) => {
                    let analysis = Analysis { check: true, curve: false, r: 1, strip: *strip, tol: tol.clone() };
                    let o = poly_output("check", hp, Vec::new(), Vec::new(), &analysis, cli.precision)?;
                    emit_poly(&o, cli.format, out)?;
                    if let Some(s) = &o.structure {
                        if !s.ok() {
                            return Err(Failure::Domain(format!(
                                "structural violations: {}",
                                s.violations().join("; ")
                            )));
                        }
                    }
                    Ok(())
                }
            }
        }
        Command::ScanBundles { min, max, workers, timing, evidence } => {
            if min > max || *min < 2 {
                return Err(Failure::Usage(format!("need 2 ≤ --min ≤ --max, got {min}..{max}")));
            }
            let recs = scan::scan(*min, *max, *workers)?;
            if *evidence {
                let table = conjecture_evidence(&recs);
                match cli.format {
                    Format::Text => out.extend_from_slice(table.render_text().as_bytes()),
                    Format::Json => {
                        for row in &table.rows {
                            out.extend_from_slice(json_line(row).as_bytes());
                        }
                    }
                    Format::Csv => out.extend_from_slice(render::evidence_csv(&table).as_bytes()),
                }
                if !table.deviations.is_empty() {
                    diag.extend_from_slice(
                        format!("conjectured root pattern fails at m = {:?}\n", table.deviations).as_bytes(),
                    );
                }
                return Ok(());
            }
            let s = match cli.format {
                Format::Text => scan::render_text(&recs, *timing),
                Format::Json => scan::render_json_lines(&recs, *timing),
                Format::Csv => scan::render_csv(&recs, *timing),
            };
            out.extend_from_slice(s.as_bytes());
            Ok(())
        }
        Command::Catalog { dim, file } => {
            let entries = match file {
                Some(path) => {
                    let bytes = std::fs::read(path)
                        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
                    load_catalog(&bytes)?
                        .into_iter()
                        .filter(|e| dim.is_none_or(|d| e.dim == d))
                        .collect()
                }
                None => catalog::embedded_catalog(*dim),
            };
            let rep = catalog::report(&entries);
            match cli.format {
                Format::Text => out.extend_from_slice(rep.to_text().as_bytes()),
                Format::Json => out.extend_from_slice(pretty(&rep).as_bytes()),
                Format::Csv => out.extend_from_slice(rep.to_csv().as_bytes()),
            }
            let bad = rep.integrity_failures();
            if !bad.is_empty() {
                let ids: Vec<&str> = bad.iter().map(|c| c.id.as_str()).collect();
                return Err(Failure::Domain(format!("catalog integrity failure for {}", ids.join(", "))));
            }
            if rep.failed() > 0 {
                diag.extend_from_slice(format!("{} entries could not be classified\n", rep.failed()).as_bytes());
            }
            Ok(())
        }
        Command::Curve { input, r, emit_points, x_min, x_max, samples } => {
            let text = read_input(input.as_deref(), stdin)?;
            let hp = match parse_poly_input(&text)? {
                PolyInput::Hilbert(hp) => hp,
                PolyInput::Bare(_) => {
                    return Err(Failure::Usage("curve needs {\"n\", \"iota\", \"coeffs\"} input".into()))
                }
            };
            if *r == 0 {
                return Err(Failure::Usage("--r must be positive".into()));
            }
            if !(x_min.is_finite() && x_max.is_finite()) || x_min > x_max {
                return Err(Failure::Usage("need finite --x-min ≤ --x-max".into()));
            }
            let g = gamma_lines(&hp, *r)?;
            if *emit_points {
                let pts = g.plot_points(*x_min, *x_max, *samples);
                match cli.format {
                    Format::Json => out.extend_from_slice(pretty(&pts).as_bytes()),
                    _ => out.extend_from_slice(points_csv(&pts).as_bytes()),
                }
                return Ok(());
            }
            match cli.format {
                Format::Text => out.extend_from_slice(render::curve_text(&g).as_bytes()),
                Format::Json => out.extend_from_slice(pretty(&g).as_bytes()),
                Format::Csv => out.extend_from_slice(render::curve_csv(&g).as_bytes()),
            }
            Ok(())
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Pn => "pn",
        Kind::Qn => "qn",
        Kind::Delpezzo => "delpezzo",
        Kind::Mukai => "mukai",
        Kind::Surface => "surface",
        Kind::Threefold => "threefold",
        Kind::Fourfold => "fourfold",
        Kind::Bundle13 => "bundle13",
        Kind::Bundle2 => "bundle2",
    }
}

fn named(name: &str, value: Option<&Rational>) -> NamedValue {
    NamedValue { name: name.into(), value: value.map(ToString::to_string) }
}

fn poly_output(
    kind: &str,
    hp: HilbertPolynomial,
    values: Vec<NamedValue>,
    warnings: Vec<String>,
    a: &Analysis,
    precision: u32,
) -> Outcome<PolyOutput> {
    let report = a.check.then(|| analyze_hilbert(&hp)).transpose()?;
    let structure = a.check.then(|| check_structure(&hp));
    if a.r == 0 {
        return Err(Failure::Usage("--r must be positive".into()));
    }
    let curve = a.curve.then(|| gamma_lines(&hp, a.r)).transpose()?;
    let strip = if a.strip {
        let tol = parse_rational(&a.tol).map_err(|e| Failure::Usage(format!("--tol: {e}")))?;
        let roots = strip_check_with_precision(&hp, &tol, precision)?;
        let (lo, hi) = fano_hilbert::reducibility::strip_walls(hp.n());
        Some(StripOutput { tol: a.tol.clone(), lower_wall: lo.to_string(), upper_wall: hi.to_string(), roots })
    } else {
        None
    };
    Ok(PolyOutput {
        kind: kind.into(),
        degree_hn: hp.degree_hn().to_string(),
        r_factored: hp.r_factor().to_factored_string(),
        polynomial: hp,
        values,
        warnings,
        report,
        structure,
        curve,
        strip,
    })
}

fn emit_poly(o: &PolyOutput, format: Format, out: &mut Vec<u8>) -> Outcome {
    let s = match format {
        Format::Text => render::poly_text(o),
        Format::Json => pretty(o),
        Format::Csv => render::poly_csv(o),
    };
    out.extend_from_slice(s.as_bytes());
    Ok(())
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable output");
    s.push('\n');
    s
}

fn points_csv(pts: &[PlotPoint]) -> String {
    let mut s = String::from("x,y,line\n");
    for p in pts {
        s.push_str(&format!("{},{},{}\n", p.x, p.y, p.line));
    }
    s
}

fn read_input(path: Option<&std::path::Path>, stdin: &mut dyn Read) -> Outcome<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", p.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Domain(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

enum PolyInput {
    Bare(UniPoly),
    Hilbert(HilbertPolynomial),
}

fn parse_poly_input(text: &str) -> Outcome<PolyInput> {
    let mut v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::Domain(format!("invalid JSON input: {e}")))?;
    if let Some(inner) = v.get("polynomial").filter(|p| p.is_object()) {
        v = inner.clone();
    }
    let coeffs_of = |c: &serde_json::Value| -> Outcome<UniPoly> { Ok(UniPoly::from_json(&c.to_string())?) };
    match &v {
        serde_json::Value::Array(_) => Ok(PolyInput::Bare(coeffs_of(&v)?)),
        serde_json::Value::Object(map) => {
            let field = |name: &str| {
                map.get(name)
                    .and_then(|x| x.as_u64())
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Failure::Domain(format!("input needs a nonnegative integer {name:?}")))
            };
            let coeffs = map
                .get("coeffs")
                .ok_or_else(|| Failure::Domain("input needs \"coeffs\"".into()))?;
            let hp = HilbertPolynomial::from_poly(coeffs_of(coeffs)?, field("n")?, field("iota")?)?;
            if let Some(c) = map.get("coindex") {
                if c.as_u64() != Some(hp.coindex() as u64) {
                    return Err(Failure::Domain(format!(
                        "coindex {c} inconsistent with n = {} and iota = {}",
                        hp.n(),
                        hp.iota()
                    )));
                }
            }
            Ok(PolyInput::Hilbert(hp))
        }
        _ => Err(Failure::Domain("expected a JSON array or object".into())),
    }
}
