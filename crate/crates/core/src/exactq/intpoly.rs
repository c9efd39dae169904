//! Dense polynomials over ℤ.
//!
//! These carry the hot paths of the rational layer: products, substitutions,
//! pseudo-remainders and evaluation all run on integer coefficients and only
//! reduce fractions once at the end.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient `i` multiplies `z^i`; trailing zeros are trimmed, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() {
            return IntPoly::zero();
        }
        let g = if self.lead().is_some_and(Signed::is_negative) { -g } else { g };
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides out the positive content, keeping the sign of every coefficient.
    pub fn primitive_keep_sign(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }

    /// `Σ c_i · num^i · den^(d−i)`, i.e. `den^d · f(num/den)`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `f(num/den)` for `den > 0`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Sign {
        self.eval_homogeneous(num, den).sign()
    }

    /// `den^d · f((a·z + b)/den)` with integer `a`, `b`, `den`.
    pub fn compose_scaled(&self, a: &BigInt, b: &BigInt, den: &BigInt) -> IntPoly {
        let Some(d) = self.degree() else {
            return IntPoly::zero();
        };
        // Horner: h ← h·(a z + b) + c_i · den^(d−i)
        let mut h: Vec<BigInt> = vec![self.coeffs[d].clone()];
        let mut den_pow = BigInt::one();
        for i in (0..d).rev() {
            den_pow *= den;
            let mut next = vec![BigInt::zero(); h.len() + 1];
            for (k, hk) in h.iter().enumerate() {
                next[k + 1] += hk * a;
                next[k] += hk * b;
            }
            next[0] += &self.coeffs[i] * &den_pow;
            h = next;
        }
        IntPoly::new(h)
    }

    /// Pseudo-remainder: `lc(g)^(deg f − deg g + 1) · f mod g`.
    pub fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let dg = g.degree().expect("pseudo-division by zero polynomial");
        let lg = g.lead().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return self.clone();
        }
        let steps = r.len() - dg;
        let mut done = 0usize;
        while r.len() > dg {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lg;
            }
            let shift = dr - dg;
            for (k, gk) in g.coeffs.iter().enumerate() {
                r[k + shift] -= &lr * gk;
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            done += 1;
        }
        // Bring the multiplier up to lc^(steps) so the sign contract is uniform.
        let missing = steps - done;
        let mut out = IntPoly::new(r);
        if missing > 0 && !out.is_zero() {
            let m = num_traits::pow(lg.clone(), missing);
            out = IntPoly::new(out.coeffs.into_iter().map(|c| c * &m).collect());
        }
        out
    }

    /// Exact division by `q·z − p`; `None` if it leaves a remainder.
    pub fn divide_linear(&self, p: &BigInt, q: &BigInt) -> Option<IntPoly> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        // f = (q z − p)·g; solve from the top: g_{k-1} = (f_k + p g_k)/q
        let mut g = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for k in (1..=d).rev() {
            let num = &self.coeffs[k] + &carry;
            let (quot, rem) = num.div_rem(q);
            if !rem.is_zero() {
                return None;
            }
            carry = p * &quot;
            g[k - 1] = quot;
        }
        // constant term: f_0 = −p g_0
        if !(&self.coeffs[0] + &carry).is_zero() {
            return None;
        }
        Some(IntPoly::new(g))
    }

    /// Primitive-PRS gcd, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Reduction modulo a word-sized prime.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
