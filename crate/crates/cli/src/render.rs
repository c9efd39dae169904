//! Text and CSV renderings of command results.

use std::fmt::Write as _;

use fano_hilbert::reducibility::{GammaDecomposition, ReducibilityReport};
use fano_hilbert::scan::EvidenceTable;
use fano_hilbert::UniPoly;

use crate::{Format, PolyOutput};

fn roots_list(rep: &ReducibilityReport) -> String {
    if rep.rational_roots.is_empty() {
        return "none".into();
    }
    rep.rational_roots
        .iter()
        .map(|r| if r.mult > 1 { format!("{} (x{})", r.root, r.mult) } else { r.root.to_string() })
        .collect::<Vec<_>>()
        .join(", ")
}

fn report_text(s: &mut String, rep: &ReducibilityReport) {
    let _ = writeln!(s, "totally reducible over Q: {}", rep.q_verdict);
    let _ = writeln!(s, "totally reducible over R: {}", rep.r_verdict);
    let _ = writeln!(s, "rational roots: {}", roots_list(rep));
    let _ = writeln!(s, "distinct real roots: {}", rep.distinct_real_roots);
    let _ = writeln!(s, "residual: {}", rep.residual.to_factored_string());
}

pub fn curve_text(g: &GammaDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Hilbert curve for r = {}: parallel lines of slope {}", g.r, g.slope);
    for l in &g.q_lines {
        if l.multiplicity > 1 {
            let _ = writeln!(s, "  {} (x{})", l.equation, l.multiplicity);
        } else {
            let _ = writeln!(s, "  {}", l.equation);
        }
    }
    for l in &g.r_extra_lines {
        let _ = writeln!(s, "  {} (irrational, root {})", l.equation, l.root);
    }
    let _ = writeln!(s, "union of real lines: {}", g.totally_real);
    s
}

pub fn curve_csv(g: &GammaDecomposition) -> String {
    let mut s = String::from("kind,equation,multiplicity,root\n");
    for l in &g.q_lines {
        let _ = writeln!(s, "rational,{},{},{}", l.equation, l.multiplicity, -l.coeffs[2].clone());
    }
    for l in &g.r_extra_lines {
        let _ = writeln!(s, "real,{},{},{}", l.equation, l.multiplicity, l.root);
    }
    s
}

pub fn poly_text(o: &PolyOutput) -> String {
    let hp = &o.polynomial;
    let mut s = String::new();
    let _ = writeln!(s, "kind: {}", o.kind);
    let _ = writeln!(s, "n = {}, iota = {}, coindex = {}", hp.n(), hp.iota(), hp.coindex());
    let _ = writeln!(s, "P(z) = {}", hp.poly());
    let _ = writeln!(s, "R(z) = {}", o.r_factored);
    let a: Vec<String> = hp.r_factor().coeffs().iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "a = ({})", a.join(", "));
    let _ = writeln!(s, "H^n = {}", o.degree_hn);
    for v in &o.values {
        let _ = writeln!(s, "{} = {}", v.name, v.value.as_deref().unwrap_or("irrational"));
    }
    for w in &o.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if let Some(rep) = &o.report {
        report_text(&mut s, rep);
    }
    if let Some(st) = &o.structure {
        if st.ok() {
            let _ = writeln!(s, "structure: ok");
        } else {
            let _ = writeln!(s, "structure: {}", st.violations().join("; "));
        }
    }
    if let Some(g) = &o.curve {
        s.push_str(&curve_text(g));
    }
    if let Some(st) = &o.strip {
        let _ = writeln!(s, "strip [{}, {}] with tol {}:", st.lower_wall, st.upper_wall, st.tol);
        for v in &st.roots {
            let j = serde_json::to_value(v).expect("serializable");
            let _ = writeln!(
                s,
                "  root {} {:+}i  rescaled {}  radius {}  mult {}  {}",
                j["re"].as_str().unwrap_or_default(),
                j["im"].as_str().unwrap_or_default().parse::<f64>().unwrap_or(0.0),
                j["rescaled"].as_str().unwrap_or_default(),
                j["radius"].as_str().unwrap_or_default(),
                v.multiplicity,
                j["status"].as_str().unwrap_or_default()
            );
        }
    }
    s
}

/// `field,value` rows.
pub fn poly_csv(o: &PolyOutput) -> String {
    let hp = &o.polynomial;
    let mut rows: Vec<(String, String)> = vec![
        ("kind".into(), o.kind.clone()),
        ("n".into(), hp.n().to_string()),
        ("iota".into(), hp.iota().to_string()),
        ("coindex".into(), hp.coindex().to_string()),
        ("coeffs".into(), hp.poly().to_strings().join(";")),
        ("r_factor".into(), hp.r_factor().to_strings().join(";")),
        ("degree_hn".into(), o.degree_hn.clone()),
    ];
    for v in &o.values {
        rows.push((v.name.clone(), v.value.clone().unwrap_or_default()));
    }
    for w in &o.warnings {
        rows.push(("warning".into(), w.clone()));
    }
    if let Some(rep) = &o.report {
        rows.push(("q_verdict".into(), rep.q_verdict.to_string()));
        rows.push(("r_verdict".into(), rep.r_verdict.to_string()));
        rows.push((
            "rational_roots".into(),
            rep.rational_roots.iter().map(|r| format!("{}^{}", r.root, r.mult)).collect::<Vec<_>>().join(";"),
        ));
        rows.push(("distinct_real_roots".into(), rep.distinct_real_roots.to_string()));
    }
    if let Some(st) = &o.structure {
        rows.push(("structure_ok".into(), st.ok().to_string()));
    }
    if let Some(g) = &o.curve {
        for l in &g.q_lines {
            rows.push(("q_line".into(), format!("{}^{}", l.equation, l.multiplicity)));
        }
        for l in &g.r_extra_lines {
            rows.push(("r_line".into(), l.equation.clone()));
        }
    }
    if let Some(st) = &o.strip {
        for v in &st.roots {
            let j = serde_json::to_value(v).expect("serializable");
            rows.push((
                "strip_root".into(),
                format!("{};{};{};{}", j["re"], j["im"], j["radius"], j["status"]).replace('"', ""),
            ));
        }
    }
    let mut s = String::from("field,value\n");
    for (k, v) in rows {
        let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_report(p: &UniPoly, rep: &ReducibilityReport, format: Format, out: &mut Vec<u8>) {
    let s = match format {
        Format::Text => {
            let mut s = format!("p(z) = {p}\n");
            report_text(&mut s, rep);
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rep).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("degree,q_verdict,r_verdict,distinct_real_roots,rational_roots\n");
            let roots: Vec<String> = rep.rational_roots.iter().map(|r| format!("{}^{}", r.root, r.mult)).collect();
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                rep.degree,
                rep.q_verdict,
                rep.r_verdict,
                rep.distinct_real_roots,
                roots.join(";")
            );
            s
        }
    };
    out.extend_from_slice(s.as_bytes());
}

pub fn evidence_csv(t: &EvidenceTable) -> String {
    let mut s = String::from("m,r_split,observed,expected,consistent\n");
    for r in &t.rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.m, r.r_split, r.observed.join(";"), r.expected.join(";"), r.consistent);
    }
    s
}
