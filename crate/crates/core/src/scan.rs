//! Reducibility scan over the bundles `ℙ(O(1)^{⊕(m−1)} ⊕ O(2))` on `ℙᵐ`.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{int, Rational, UniPoly};
use crate::families::bundle_case2_poly;
use crate::reducibility::{analyze, RootMult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub m: u32,
    /// The factor `R` of degree `m` left after removing `∏_{j=1}^{m−1}(z+j)`.
    pub r_factor: UniPoly,
    pub q_split: bool,
    pub r_split: bool,
    #[serde(rename = "rational_roots_of_R")]
    pub rational_roots_of_r: Vec<RootMult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanRecord {
    /// The value `R` is expected to vanish at with odd `m`: `{−m/2}`,
    /// and no rational root at all for even `m`.
    pub fn expected_rational_roots(&self) -> Vec<Rational> {
        if self.m % 2 == 1 {
            vec![Rational::new((-(self.m as i64)).into(), 2.into())]
        } else {
            Vec::new()
        }
    }

    /// Whether this record agrees with the conjectured root pattern and real splitting.
    pub fn matches_conjecture(&self) -> bool {
        let roots: Vec<Rational> = self.rational_roots_of_r.iter().map(|r| r.root.clone()).collect();
        let simple = self.rational_roots_of_r.iter().all(|r| r.mult == 1);
        self.r_split && simple && roots == self.expected_rational_roots()
    }
}

/// Builds and analyzes `R` for one `m`.
pub fn scan_one(m: u32) -> Result<ScanRecord> {
    let start = Instant::now();
    let hp = bundle_case2_poly(m)?;
    let r = hp.r_factor().clone();
    let rep = analyze(&r)?;
    Ok(ScanRecord {
        m,
        r_factor: r,
        q_split: rep.q_verdict,
        r_split: rep.r_verdict,
        rational_roots_of_r: rep.rational_roots,
        elapsed: start.elapsed(),
    })
}

/// One record per `m` in `m_min..=m_max`, in order of `m` for any worker count.
/// `workers == 0` uses the default thread count.
pub fn scan(m_min: u32, m_max: u32, workers: usize) -> Result<Vec<ScanRecord>> {
    if m_min < 2 || m_min > m_max {
        return Err(Error::Invalid(format!("scan range needs 2 ≤ min ≤ max, got {m_min}..{m_max}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    pool.install(|| {
        (m_min..=m_max)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(scan_one)
            .collect()
    })
}

fn roots_text(roots: &[RootMult]) -> String {
    let parts: Vec<String> = roots
        .iter()
        .map(|r| if r.mult > 1 { format!("{}^{}", r.root, r.mult) } else { r.root.to_string() })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn elapsed_ms(r: &ScanRecord) -> String {
    format!("{:.3}", r.elapsed.as_secs_f64() * 1e3)
}

/// Human-readable table. Timings are included only on request so that
/// reports stay byte-identical across runs.
pub fn render_text(records: &[ScanRecord], timing: bool) -> String {
    let mut out = format!("{:>4}  {:<7}  {:<7}  {:<14}", "m", "q_split", "r_split", "rational roots");
    if timing {
        out.push_str("  elapsed_ms");
    }
    out.push_str("  R\n");
    for r in records {
        out.push_str(&format!(
            "{:>4}  {:<7}  {:<7}  {:<14}",
            r.m,
            r.q_split,
            r.r_split,
            roots_text(&r.rational_roots_of_r)
        ));
        if timing {
            out.push_str(&format!("  {:>10}", elapsed_ms(r)));
        }
        out.push_str(&format!("  {}\n", r.r_factor.to_factored_string()));
    }
    out
}

/// One JSON object per line.
pub fn render_json_lines(records: &[ScanRecord], timing: bool) -> String {
    let mut out = String::new();
    for r in records {
        let mut v = serde_json::to_value(r).expect("serializable");
        if timing {
            v["elapsed_ms"] = serde_json::Value::String(elapsed_ms(r));
        }
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

pub fn render_csv(records: &[ScanRecord], timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["m", "q_split", "r_split", "rational_roots_of_R", "r_factor"];
    if timing {
        header.push("elapsed_ms");
    }
    w.write_record(&header).expect("in-memory write");
    for r in records {
        let roots: Vec<String> = r
            .rational_roots_of_r
            .iter()
            .flat_map(|x| std::iter::repeat_n(x.root.to_string(), x.mult))
            .collect();
        let mut rec = vec![
            r.m.to_string(),
            r.q_split.to_string(),
            r.r_split.to_string(),
            roots.join(";"),
            r.r_factor.to_factored_string(),
        ];
        if timing {
            rec.push(elapsed_ms(r));
        }
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceRow {
    pub m: u32,
    pub r_split: bool,
    #[serde(rename = "rational_roots_of_R")]
    pub observed: Vec<String>,
    pub expected: Vec<String>,
    pub consistent: bool,
}

/// Evidence for the conjectured behaviour of `R`: real splitting, and the
/// rational roots `{−m/2}` for odd `m`, none for even `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceTable {
    pub rows: Vec<EvidenceRow>,
    /// Values of `m` where the observation departs from the conjecture.
    pub deviations: Vec<u32>,
}

impl EvidenceTable {
    pub fn render_text(&self) -> String {
        let mut out = format!("{:>4}  {:<7}  {:<14}  {:<14}  consistent\n", "m", "r_split", "observed", "expected");
        for r in &self.rows {
            out.push_str(&format!(
                "{:>4}  {:<7}  {:<14}  {:<14}  {}\n",
                r.m,
                r.r_split,
                format!("{{{}}}", r.observed.join(", ")),
                format!("{{{}}}", r.expected.join(", ")),
                if r.consistent { "yes" } else { "NO" }
            ));
        }
        if self.deviations.is_empty() {
            out.push_str("no deviations\n");
        } else {
            out.push_str(&format!("DEVIATIONS at m = {:?}\n", self.deviations));
        }
        out
    }
}

pub fn conjecture_evidence(records: &[ScanRecord]) -> EvidenceTable {
    let rows: Vec<EvidenceRow> = records
        .iter()
        .map(|r| EvidenceRow {
            m: r.m,
            r_split: r.r_split,
            observed: r
                .rational_roots_of_r
                .iter()
                .flat_map(|x| std::iter::repeat_n(x.root.to_string(), x.mult))
                .collect(),
            expected: r.expected_rational_roots().iter().map(|q| q.to_string()).collect(),
            consistent: r.matches_conjecture(),
        })
        .collect();
    let deviations = rows.iter().filter(|r| !r.consistent).map(|r| r.m).collect();
    EvidenceTable { rows, deviations }
}

/// `R(−m/2)`, which vanishes for odd `m`.
pub fn r_at_half_index(record: &ScanRecord) -> Rational {
    record.r_factor.eval(&(int(-(record.m as i64)) / int(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;
    use num_traits::Zero;

    #[test]
    fn first_two_records() {
        let recs = scan(2, 3, 1).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].r_factor, UniPoly::from_ints(&[6, 14, 7]).scale(&rat(1, 6)));
        assert!(!recs[0].q_split);
        assert_eq!(recs[1].r_factor, UniPoly::from_ints(&[60, 157, 117, 26]).scale(&rat(1, 120)));
        assert!(!recs[1].q_split);
        assert_eq!(recs[1].rational_roots_of_r, vec![RootMult { root: rat(-3, 2), mult: 1 }]);
        assert!(recs[0].rational_roots_of_r.is_empty());
    }

    #[test]
    fn order_is_independent_of_workers() {
        let a = scan(2, 14, 1).unwrap();
        let b = scan(2, 14, 4).unwrap();
        assert_eq!(render_json_lines(&a, false), render_json_lines(&b, false));
        assert_eq!(render_csv(&a, false), render_csv(&b, false));
        assert_eq!(a.iter().map(|r| r.m).collect::<Vec<_>>(), (2..=14).collect::<Vec<_>>());
    }

    #[test]
    fn odd_m_vanish_at_half_index() {
        for r in scan(2, 12, 0).unwrap() {
            assert_eq!(r_at_half_index(&r).is_zero(), r.m % 2 == 1, "m = {}", r.m);
            assert_eq!(r.q_split, r.rational_roots_of_r.iter().map(|x| x.mult).sum::<usize>() == r.m as usize);
        }
    }

    #[test]
    fn invalid_ranges() {
        assert!(scan(1, 3, 1).is_err());
        assert!(scan(5, 4, 1).is_err());
    }

    #[test]
    fn evidence_flags_deviations() {
        let mut recs = scan(2, 5, 1).unwrap();
        assert!(conjecture_evidence(&recs).deviations.is_empty());
        recs[1].rational_roots_of_r.clear();
        let t = conjecture_evidence(&recs);
        assert_eq!(t.deviations, vec![3]);
        assert!(t.render_text().contains("DEVIATIONS at m = [3]"));
    }

    #[test]
    fn formats() {
        let recs = scan(2, 3, 1).unwrap();
        let csv = render_csv(&recs, false);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().starts_with("3,false,true,-3/2,"));
        let jl = render_json_lines(&recs, true);
        let v: serde_json::Value = serde_json::from_str(jl.lines().next().unwrap()).unwrap();
        assert_eq!(v["m"], 2);
        assert!(v.get("elapsed_ms").is_some());
        assert!(render_text(&recs, false).lines().count() == 3);
    }
}
