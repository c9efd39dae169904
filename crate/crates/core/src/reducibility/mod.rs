//! Total reducibility over ℚ and ℝ, integer roots, the canonical strip and
//! the line decomposition of the Hilbert curve.

mod gamma;
mod modp;
mod numeric;
mod rational_roots;
mod strip;
mod sturm;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{IntPoly, Rational, UniPoly};
use crate::hilbert::HilbertPolynomial;

pub use gamma::{gamma_lines, GammaDecomposition, GammaLine, PlotPoint, RealLine};
pub use numeric::{
    format_radius, numeric_roots, numeric_roots_with_precision, NumericRoot, MAX_SWEEPS,
    MIN_PRECISION,
};
pub use rational_roots::rational_roots;
pub use strip::{strip_check, strip_check_with_precision, strip_walls, StripStatus, StripVerdict};
pub use sturm::sturm_distinct_real_roots;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootMult {
    #[serde(serialize_with = "ser_rational")]
    pub root: Rational,
    pub mult: usize,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibilityReport {
    pub degree: usize,
    pub rational_roots: Vec<RootMult>,
    pub q_verdict: bool,
    pub r_verdict: bool,
    pub distinct_real_roots: usize,
    /// What is left after dividing out every rational root.
    pub residual: UniPoly,
}

impl ReducibilityReport {
    pub fn rational_multiplicity(&self) -> usize {
        self.rational_roots.iter().map(|r| r.mult).sum()
    }
}

/// Full report for a nonzero polynomial.
pub fn analyze(p: &UniPoly) -> Result<ReducibilityReport> {
    let roots = rational_roots(p)?;
    let mut residual = p.clone();
    for (r, m) in &roots {
        for _ in 0..*m {
            residual = residual.deflate(r).expect("confirmed root");
        }
    }
    build_report(p.degree().unwrap(), roots, residual)
}

/// Report for `P`, reusing the known factorization `P = R · ∏(z + j)`.
pub fn analyze_hilbert(hp: &HilbertPolynomial) -> Result<ReducibilityReport> {
    let r = hp.r_factor();
    let mut roots = rational_roots(r)?;
    let mut residual = r.clone();
    for (root, m) in &roots {
        for _ in 0..*m {
            residual = residual.deflate(root).expect("confirmed root");
        }
    }
    for l in hp.ladder() {
        match roots.iter_mut().find(|(x, _)| *x == l) {
            Some(e) => e.1 += 1,
            None => roots.push((l, 1)),
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    build_report(hp.n() as usize, roots, residual)
}

fn build_report(
    degree: usize,
    roots: Vec<(Rational, usize)>,
    residual: UniPoly,
) -> Result<ReducibilityReport> {
    let total: usize = roots.iter().map(|r| r.1).sum();
    let (residual_real, residual_sqfree_deg) = residual_real_roots(&residual)?;
    Ok(ReducibilityReport {
        degree,
        q_verdict: total == degree,
        r_verdict: residual_real == residual_sqfree_deg,
        distinct_real_roots: roots.len() + residual_real,
        rational_roots: roots
            .into_iter()
            .map(|(root, mult)| RootMult { root, mult })
            .collect(),
        residual,
    })
}

/// Distinct real roots of the residual and the degree of its square-free part.
fn residual_real_roots(residual: &UniPoly) -> Result<(usize, usize)> {
    if residual.degree().unwrap_or(0) == 0 {
        return Ok((0, 0));
    }
    let (_, f) = residual.primitive_integer_form()?;
    let s = rational_roots::squarefree_int(&f);
    let d = s.degree().unwrap_or(0);
    Ok((sturm::distinct_real_roots_sqfree(&s), d))
}

/// Whether `p` splits into linear factors over ℚ, with the supporting report.
pub fn totally_reducible_q(p: &UniPoly) -> Result<(bool, ReducibilityReport)> {
    let rep = analyze(p)?;
    Ok((rep.q_verdict, rep))
}

/// Whether every root of `p` is real.
pub fn totally_reducible_r(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    let (_, f) = p.primitive_integer_form()?;
    let s = rational_roots::squarefree_int(&f);
    Ok(sturm::distinct_real_roots_sqfree(&s) == s.degree().unwrap_or(0))
}

/// Integer roots of `P`.
pub fn integer_root_profile(hp: &HilbertPolynomial) -> BTreeSet<BigInt> {
    let mut out: BTreeSet<BigInt> = (1..hp.iota()).map(|j| -BigInt::from(j)).collect();
    if hp.r_factor().degree().unwrap_or(0) > 0 {
        let (_, f) = hp.r_factor().primitive_integer_form().expect("nonzero");
        out.extend(rational_roots::integer_roots(&f));
    }
    out
}

/// Integer roots of an arbitrary nonzero polynomial.
pub fn integer_roots(p: &UniPoly) -> Result<Vec<BigInt>> {
    let (_, f): (Rational, IntPoly) = p.primitive_integer_form()?;
    Ok(rational_roots::integer_roots(&f))
}
