//! Counting distinct real roots.
//!
//! The count is certified in two ways. A cheap lower bound comes from sign
//! changes of the square-free part on a dyadic grid inside a root bound; when
//! that bound already equals the degree every root is real. Otherwise a full
//! Sturm chain decides.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::rational_roots::squarefree_int;
use crate::error::{Error, Result};
use crate::exactq::{IntPoly, Rational, UniPoly};

/// Grid refinements tried by the certificate: step `2^-k`.
const GRID_LEVELS: u32 = 3;
/// The certificate gives up rather than evaluate at more points than this.
const MAX_GRID_POINTS: usize = 1 << 15;

/// Number of distinct real roots of `p`.
pub fn sturm_distinct_real_roots(p: &UniPoly) -> Result<usize> {
    let (_, f) = p.primitive_integer_form()?;
    if f.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    Ok(sturm_count(&squarefree_int(&f)))
}

/// Distinct real roots of a nonconstant square-free `s`, trying the grid
/// certificate before the Sturm chain.
pub(crate) fn distinct_real_roots_sqfree(s: &IntPoly) -> usize {
    let d = s.degree().unwrap_or(0);
    if d == 0 {
        return 0;
    }
    if d == 1 {
        return 1;
    }
    if grid_lower_bound(s) == Some(d) {
        return d;
    }
    sturm_count(s)
}

/// Sturm's theorem on a square-free `s`, evaluated at `∓B` with
/// `B = ⌈1 + max|a_i|/|a_n|⌉`, which strictly exceeds every root modulus.
pub(crate) fn sturm_count(s: &IntPoly) -> usize {
    let d = s.degree().unwrap_or(0);
    if d == 0 {
        return 0;
    }
    let chain = sturm_chain(s);
    let b = cauchy_bound(s);
    let one = BigInt::one();
    let at = |x: &BigInt| sign_variations(chain.iter().map(|g| g.sign_at(x, &one)));
    at(&-&b) - at(&b)
}

pub(crate) fn cauchy_bound(s: &IntPoly) -> BigInt {
    let lead = s.lead().unwrap().abs();
    let max = s.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let (q, r) = num_integer::Integer::div_rem(&max, &lead);
    q + 1 + if r.is_zero() { 0 } else { 1 }
}

/// `s, s', −rem(s, s'), …` with each member reduced to its primitive part
/// while keeping the sign of the true remainder.
pub(crate) fn sturm_chain(s: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![s.primitive_keep_sign(), s.derivative().primitive_keep_sign()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let prem = a.pseudo_rem(b);
        if prem.is_zero() {
            break;
        }
        // prem = lc(b)^(δ+1) · rem, so its sign differs from rem when lc(b) < 0
        // and δ+1 is odd.
        let delta_plus_one = a.degree().unwrap() - b.degree().unwrap() + 1;
        let flip = b.lead().unwrap().is_negative() && delta_plus_one % 2 == 1;
        let next = if flip { prem } else { negate(&prem) };
        chain.push(next.primitive_keep_sign());
    }
    chain
}

fn negate(p: &IntPoly) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| -c).collect())
}

fn sign_variations(signs: impl IntoIterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for s in signs {
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// A certified lower bound on the distinct real roots of `s`: exact zeros on
/// the grid plus sign changes between nonzero neighbours. Returns the first
/// level whose bound reaches the degree, or `None`.
///
/// The grid spans the Laguerre–Samuelson interval, which holds every root when
/// all roots are real; any other choice would still give a valid lower bound.
pub(crate) fn grid_lower_bound(s: &IntPoly) -> Option<usize> {
    let d = s.degree()?;
    if d < 2 {
        return None;
    }
    let (lo, hi) = samuelson_interval(s)?;
    let width: i64 = num_traits::ToPrimitive::to_i64(&(&hi - &lo))?;
    let lo: i64 = num_traits::ToPrimitive::to_i64(&lo)?;
    for level in 0..=GRID_LEVELS {
        let den = BigInt::from(1i64 << level);
        let steps = width << level;
        if steps as usize + 1 > MAX_GRID_POINTS {
            return None;
        }
        let start = lo << level;
        let mut found = 0usize;
        let mut prev = Sign::NoSign;
        for k in 0..=steps {
            let x = BigInt::from(start + k);
            let sg = s.sign_at(&x, &den);
            match sg {
                Sign::NoSign => found += 1,
                _ if prev != Sign::NoSign && sg != prev => found += 1,
                _ => {}
            }
            prev = sg;
        }
        if found == d {
            return Some(d);
        }
    }
    None
}

/// Integer interval containing `mean ± sqrt((d−1)·var)` of the roots, computed
/// from the top three coefficients. `None` when the implied variance is
/// negative, which rules out all roots being real.
fn samuelson_interval(s: &IntPoly) -> Option<(BigInt, BigInt)> {
    let d = s.degree()?;
    let c = s.coeffs();
    let an = Rational::from_integer(c[d].clone());
    let e1 = -Rational::from_integer(c[d - 1].clone()) / &an;
    let e2 = Rational::from_integer(c[d - 2].clone()) / &an;
    let dn = Rational::from_integer(BigInt::from(d));
    let mean = &e1 / &dn;
    let sum_sq = &e1 * &e1 - &e2 * Rational::from_integer(BigInt::from(2));
    let var = &sum_sq / &dn - &mean * &mean;
    if var.is_negative() {
        return None;
    }
    let spread = var * (dn - Rational::one());
    // ⌈sqrt(spread)⌉ as an integer upper bound
    let hw = (spread.ceil().to_integer()).sqrt() + 1;
    let lo = mean.floor().to_integer() - &hw - 1;
    let hi = mean.ceil().to_integer() + &hw + 1;
    Some((lo, hi))
}
