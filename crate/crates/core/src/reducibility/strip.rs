//! The narrow canonical strip: every root `α` of `P` should satisfy
//! `−n/(n+1) ≤ Re(α)/ι ≤ −1/(n+1)`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::numeric::{format_radius, numeric_roots_with_precision, MIN_PRECISION};
use crate::error::{Error, Result};
use crate::exactq::{rat, to_decimal, Rational};
use crate::hilbert::HilbertPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StripStatus {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripVerdict {
    /// Root of `P` (real part, imaginary part).
    pub re: Rational,
    pub im: Rational,
    /// `Re(α)/ι`.
    pub rescaled: Rational,
    pub radius: Rational,
    pub multiplicity: usize,
    pub status: StripStatus,
}

impl Serialize for StripVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("StripVerdict", 6)?;
        st.serialize_field("re", &to_decimal(&self.re, 30))?;
        st.serialize_field("im", &to_decimal(&self.im, 30))?;
        st.serialize_field("rescaled", &to_decimal(&self.rescaled, 30))?;
        st.serialize_field("radius", &format_radius(&self.radius))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("status", &self.status)?;
        st.end()
    }
}

/// Walls of the strip for dimension `n`, lower first.
pub fn strip_walls(n: u32) -> (Rational, Rational) {
    let n = n as i64;
    (rat(-n, n + 1), rat(-1, n + 1))
}

/// Classifies every root of `P`. A root whose rescaled real part lies within
/// `tol` (plus its own error radius) of a wall is reported as on the boundary.
pub fn strip_check(hp: &HilbertPolynomial, tol: &Rational) -> Result<Vec<StripVerdict>> {
    strip_check_with_precision(hp, tol, MIN_PRECISION)
}

/// [`strip_check`] with a lower bound on the working precision in bits.
pub fn strip_check_with_precision(
    hp: &HilbertPolynomial,
    tol: &Rational,
    min_prec: u32,
) -> Result<Vec<StripVerdict>> {
    if !tol.is_positive() {
        return Err(Error::EmptyZone);
    }
    let (lo, hi) = strip_walls(hp.n());
    let iota = Rational::from_integer(hp.iota().into());
    let mut roots: Vec<_> = hp
        .ladder()
        .into_iter()
        .map(|r| (r, Rational::zero(), Rational::zero(), 1))
        .collect();
    if hp.r_factor().degree().unwrap_or(0) > 0 {
        for z in numeric_roots_with_precision(hp.r_factor(), tol, min_prec)? {
            roots.push((z.re, z.im, z.radius, z.multiplicity));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(Rational, Rational, Rational, usize)> = Vec::new();
    for r in roots {
        match merged.last_mut() {
            Some(m) if m.2.is_zero() && r.2.is_zero() && m.0 == r.0 && m.1 == r.1 => m.3 += r.3,
            _ => merged.push(r),
        }
    }
    let out = merged
        .into_iter()
        .map(|(re, im, radius, multiplicity)| {
            let rescaled = &re / &iota;
            let zone = tol + &radius / &iota;
            let near = |w: &Rational| (&rescaled - w).abs() < zone;
            let status = if near(&lo) || near(&hi) {
                StripStatus::Boundary
            } else if rescaled > lo && rescaled < hi {
                StripStatus::Inside
            } else {
                StripStatus::Outside
            };
            StripVerdict { re, im, rescaled, radius, multiplicity, status }
        })
        .collect();
    Ok(out)
}
