//! Complex root approximation by Aberth–Ehrlich iteration.
//!
//! Arithmetic is fixed point on big integers: a value `v` is stored as
//! `round(v · 2^prec)`. Rational roots are split off exactly first; the
//! remaining square-free factors from Yun's decomposition are iterated
//! separately, so every approximated root is simple and its multiplicity is
//! known exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rational_roots::{rational_roots_int, root_bound};
use crate::error::{Error, Result};
use crate::exactq::{to_decimal, IntPoly, Rational, UniPoly};

/// Iteration cap per factor.
pub const MAX_SWEEPS: usize = 200;
/// Minimum working precision in bits.
pub const MIN_PRECISION: u32 = 256;

/// An approximate root: the disc of radius `radius` around `re + i·im`
/// contains a root of multiplicity `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericRoot {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
    pub multiplicity: usize,
}

impl NumericRoot {
    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// True if the inclusion disc meets the real axis.
    pub fn may_be_real(&self) -> bool {
        self.im.abs() <= self.radius
    }
}

impl Serialize for NumericRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NumericRoot", 4)?;
        st.serialize_field("re", &to_decimal(&self.re, 30))?;
        st.serialize_field("im", &to_decimal(&self.im, 30))?;
        st.serialize_field("radius", &format_radius(&self.radius))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.end()
    }
}

/// Radius in scientific notation, `0` when exact.
pub fn format_radius(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let f = r.to_f64().unwrap_or(f64::INFINITY);
    if f > 0.0 {
        format!("{f:.3e}")
    } else {
        // below f64 range
        let bits = r.denom().bits() as i64 - r.numer().bits() as i64;
        format!("<2^-{}", bits - 1)
    }
}

/// All complex roots of `p` with multiplicities; each non-rational root is
/// located to within `tol`.
pub fn numeric_roots(p: &UniPoly, tol: &Rational) -> Result<Vec<NumericRoot>> {
    numeric_roots_with_precision(p, tol, MIN_PRECISION)
}

pub fn numeric_roots_with_precision(
    p: &UniPoly,
    tol: &Rational,
    min_prec: u32,
) -> Result<Vec<NumericRoot>> {
    if !tol.is_positive() {
        return Err(Error::EmptyZone);
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(if p.is_zero() { Error::ZeroPolynomial } else { Error::ConstantPolynomial });
    }
    let mut out = Vec::new();
    for (k, s) in p.squarefree_decomposition()? {
        let (_, mut f) = s.primitive_integer_form()?;
        for (r, _) in rational_roots_int(&f)? {
            f = f.divide_linear(r.numer(), r.denom()).expect("confirmed root");
            out.push(NumericRoot {
                re: r,
                im: Rational::zero(),
                radius: Rational::zero(),
                multiplicity: k,
            });
        }
        if f.degree().unwrap_or(0) > 0 {
            for z in aberth(&f, tol, min_prec)? {
                out.push(NumericRoot { multiplicity: k, ..z });
            }
        }
    }
    out.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    Ok(out)
}

#[derive(Clone, Debug)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

struct Fixed {
    prec: u32,
}

impl Fixed {
    fn one(&self) -> BigInt {
        BigInt::one() << self.prec
    }
    fn fixed_f64(&self, x: f64) -> BigInt {
        // x · 2^prec, exact for the finite double
        let (m, e) = decompose(x);
        let shift = self.prec as i64 + e;
        if shift >= 0 {
            m << shift as usize
        } else {
            m >> (-shift) as usize
        }
    }
    fn fixed_rational(&self, q: &Rational) -> BigInt {
        (q.numer() << self.prec) / q.denom()
    }
    fn to_rational(&self, v: &BigInt) -> Rational {
        Rational::new(v.clone(), self.one())
    }
    fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.prec,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.prec,
        }
    }
    fn div(&self, a: &Cx, b: &Cx) -> Option<Cx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&a.re * &b.re + &a.im * &b.im) << self.prec) / &den;
        let im = ((&a.im * &b.re - &a.re * &b.im) << self.prec) / &den;
        Some(Cx { re, im })
    }
    fn abs(&self, a: &Cx) -> BigInt {
        (&a.re * &a.re + &a.im * &a.im).sqrt()
    }
    /// `f(z)` and `f'(z)` by Horner.
    fn eval2(&self, f: &[BigInt], z: &Cx) -> (Cx, Cx) {
        let mut v = Cx { re: BigInt::zero(), im: BigInt::zero() };
        let mut dv = v.clone();
        for c in f.iter().rev() {
            dv = self.mul(&dv, z);
            dv.re += &v.re;
            dv.im += &v.im;
            v = self.mul(&v, z);
            v.re += c;
        }
        (v, dv)
    }
}

fn decompose(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000 };
    (BigInt::from(mant as i64 * sign), exp - 1075)
}

/// Aberth iteration on a square-free integer polynomial without rational roots.
fn aberth(f: &IntPoly, tol: &Rational, min_prec: u32) -> Result<Vec<NumericRoot>> {
    let d = f.degree().unwrap();
    let bound = root_bound(f).max(BigInt::one());
    let coeff_bits = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(1);
    let tol_bits = (tol.denom().bits() as i64 - tol.numer().bits() as i64).max(0) as u64;
    // headroom for cancellation in Horner at |z| ≤ bound
    let prec = (min_prec as u64)
        .max(2 * tol_bits + 64)
        .max(coeff_bits + d as u64 * (bound.bits() + 1) + tol_bits + 64) as u32;
    let fx = Fixed { prec };
    let coeffs: Vec<BigInt> = f.coeffs().iter().map(|c| c << prec).collect();

    let lead = Rational::from_integer(f.lead().unwrap().clone());
    let centre = -Rational::from_integer(f.coeffs()[d - 1].clone()) / (lead * BigInt::from(d));
    let c = fx.fixed_rational(&centre);
    let rad = bound.to_f64().unwrap_or(1e300).min(1e300);
    let mut z: Vec<Cx> = (0..d)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Cx {
                re: &c + fx.fixed_f64(rad * th.cos()),
                im: fx.fixed_f64(rad * th.sin()),
            }
        })
        .collect();

    let tol_fx = fx.fixed_rational(tol);
    let one = fx.one();
    // Horner rounding slack: a few ulps per step, scaled by max(1,|z|)^d.
    let slack_ulps = BigInt::from(4 * (d + 1) * (d + 1));
    let norm1 = f.norm1();
    let mut best_radius: Option<BigInt> = None;
    for _sweep in 0..MAX_SWEEPS {
        let start = z.clone();
        let mut radii = Vec::with_capacity(d);
        let mut converged = true;
        for i in 0..d {
            let (v, dv) = fx.eval2(&coeffs, &z[i]);
            let zabs = fx.abs(&z[i]).max(one.clone());
            let scale = num_traits::pow(zabs, d) >> (prec as usize * (d - 1));
            let err = ((&slack_ulps * &norm1 * &scale) >> prec) + 1;
            let dv_abs = fx.abs(&dv);
            let radius = if dv_abs > &err * d {
                (((fx.abs(&v) + &err) * BigInt::from(d)) << prec) / (&dv_abs - &err * d)
            } else {
                BigInt::from(-1)
            };
            if radius.is_negative() || radius >= tol_fx {
                converged = false;
            }
            radii.push(radius);
            let Some(newton) = fx.div(&v, &dv) else {
                converged = false;
                continue;
            };
            let mut sum = Cx { re: BigInt::zero(), im: BigInt::zero() };
            for (j, zj) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = Cx { re: &z[i].re - &zj.re, im: &z[i].im - &zj.im };
                if let Some(inv) = fx.div(&Cx { re: one.clone(), im: BigInt::zero() }, &diff) {
                    sum.re += inv.re;
                    sum.im += inv.im;
                }
            }
            let ns = fx.mul(&newton, &sum);
            let denom = Cx { re: &one - ns.re, im: -ns.im };
            let step = fx.div(&newton, &denom).unwrap_or(newton);
            z[i].re -= step.re;
            z[i].im -= step.im;
        }
        let worst = radii
            .iter()
            .map(|r| if r.is_negative() { None } else { Some(r.clone()) })
            .try_fold(BigInt::zero(), |acc, r| r.map(|r| acc.max(r)));
        if let Some(w) = &worst {
            if best_radius.as_ref().is_none_or(|b| w < b) {
                best_radius = Some(w.clone());
            }
        }
        if converged {
            return Ok(finish(&fx, f, start, radii));
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        best_radius: best_radius
            .map(|b| format_radius(&fx.to_rational(&b)))
            .unwrap_or_else(|| "unbounded".into()),
    })
}

/// Converts to rationals, snapping the imaginary part of a root to zero when
/// its disc crosses the real axis and `f` has a real root there by sign change.
fn finish(fx: &Fixed, f: &IntPoly, z: Vec<Cx>, radii: Vec<BigInt>) -> Vec<NumericRoot> {
    z.into_iter()
        .zip(radii)
        .map(|(z, r)| {
            let re = fx.to_rational(&z.re);
            let mut im = fx.to_rational(&z.im);
            let radius = fx.to_rational(&r);
            if im.abs() <= radius {
                let lo = &re - &radius;
                let hi = &re + &radius;
                let sl = f.sign_at(lo.numer(), lo.denom());
                let sh = f.sign_at(hi.numer(), hi.denom());
                if sl != sh && sl != num_bigint::Sign::NoSign && sh != num_bigint::Sign::NoSign {
                    im = Rational::zero();
                }
            }
            NumericRoot { re, im, radius, multiplicity: 1 }
        })
        .collect()
}
