//! Lines of the Hilbert curve of `(X, rH)`.
//!
//! Each root `α` of `P` gives the line `r·y − ι·x − α = 0`, so all lines share
//! the slope `ι/r`.

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::numeric::numeric_roots;
use super::{analyze_hilbert, ReducibilityReport};
use crate::error::{Error, Result};
use crate::exactq::{to_decimal, Rational};
use crate::hilbert::HilbertPolynomial;

/// Tolerance for locating irrational real lines.
const LINE_TOL_DIGITS: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaLine {
    /// Coefficients of `a·y + b·x + c = 0`.
    #[serde(serialize_with = "ser_triple")]
    pub coeffs: [Rational; 3],
    pub multiplicity: usize,
    pub equation: String,
}

impl GammaLine {
    /// Where the line meets the y-axis.
    pub fn y_intercept(&self) -> Rational {
        -&self.coeffs[2] / &self.coeffs[0]
    }
}

fn ser_triple<S: serde::Serializer>(
    t: &[Rational; 3],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for q in t {
        seq.serialize_element(&q.to_string())?;
    }
    seq.end()
}

/// A real line with irrational intercept, known numerically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealLine {
    /// Decimal approximation of the root `α`.
    pub root: String,
    pub multiplicity: usize,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaDecomposition {
    pub r: u32,
    pub iota: u32,
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    pub q_lines: Vec<GammaLine>,
    /// Number of real lines beyond `q_lines`, counted without multiplicity.
    pub r_extra: usize,
    pub r_extra_lines: Vec<RealLine>,
    /// True when `Γ` is a union of real lines.
    pub totally_real: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotPoint {
    pub x: f64,
    pub y: f64,
    pub line: String,
}

/// `r·y − ι·x − α = 0` rendered as e.g. `2y-2x+1=0`.
fn equation(r: u32, iota: u32, alpha: &str, alpha_negative: bool) -> String {
    let ry = if r == 1 { "y".to_string() } else { format!("{r}y") };
    let ix = if iota == 1 { "x".to_string() } else { format!("{iota}x") };
    let (sign, mag) = if alpha_negative {
        ("+", alpha.trim_start_matches('-').to_string())
    } else {
        ("-", alpha.to_string())
    };
    if mag == "0" {
        format!("{ry}-{ix}=0")
    } else {
        format!("{ry}-{ix}{sign}{mag}=0")
    }
}

pub fn gamma_lines(hp: &HilbertPolynomial, r: u32) -> Result<GammaDecomposition> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    let rep: ReducibilityReport = analyze_hilbert(hp)?;
    let iota = hp.iota();
    let rr = Rational::from_integer(r.into());
    let ii = Rational::from_integer(iota.into());
    // ℓ₁, ℓ₂, … in order of decreasing α
    let q_lines = rep
        .rational_roots
        .iter()
        .rev()
        .map(|rm| GammaLine {
            coeffs: [rr.clone(), -ii.clone(), -rm.root.clone()],
            multiplicity: rm.mult,
            equation: equation(r, iota, &rm.root.to_string(), rm.root.is_negative()),
        })
        .collect();
    let extra_count = rep.distinct_real_roots - rep.rational_roots.len();
    let mut r_extra_lines = Vec::new();
    if extra_count > 0 {
        let tol = Rational::new(One::one(), num_bigint::BigInt::from(10).pow(LINE_TOL_DIGITS));
        let mut approx = numeric_roots(&rep.residual, &tol)?;
        approx.sort_by(|a, b| a.im.abs().cmp(&b.im.abs()).then(a.re.cmp(&b.re)));
        approx.truncate(extra_count);
        approx.sort_by(|a, b| a.re.cmp(&b.re));
        for z in approx {
            let s = to_decimal(&z.re, 12);
            r_extra_lines.push(RealLine {
                equation: equation(r, iota, &s, z.re.is_negative()),
                root: to_decimal(&z.re, 20),
                multiplicity: z.multiplicity,
            });
        }
    }
    Ok(GammaDecomposition {
        r,
        iota,
        slope: ii / rr,
        q_lines,
        r_extra: extra_count,
        r_extra_lines,
        totally_real: rep.r_verdict,
    })
}

impl GammaDecomposition {
    /// Samples every line at `samples` evenly spaced `x` in `[x_min, x_max]`.
    pub fn plot_points(&self, x_min: f64, x_max: f64, samples: usize) -> Vec<PlotPoint> {
        let slope = self.slope.to_f64().unwrap_or(f64::NAN);
        let mut lines: Vec<(String, f64)> = Vec::new();
        for (i, l) in self.q_lines.iter().enumerate() {
            lines.push((format!("q{}", i + 1), l.y_intercept().to_f64().unwrap_or(f64::NAN)));
        }
        for (i, l) in self.r_extra_lines.iter().enumerate() {
            let alpha: f64 = l.root.parse().unwrap_or(f64::NAN);
            lines.push((format!("r{}", i + 1), alpha / self.r as f64));
        }
        let n = samples.max(2);
        let mut out = Vec::with_capacity(lines.len() * n);
        for (id, b) in &lines {
            for k in 0..n {
                let x = x_min + (x_max - x_min) * k as f64 / (n - 1) as f64;
                out.push(PlotPoint { x, y: slope * x + b, line: id.clone() });
            }
        }
        out
    }

    pub fn q_line_count(&self) -> usize {
        self.q_lines.iter().map(|l| l.multiplicity).sum()
    }
}
