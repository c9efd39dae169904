//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::IntPoly;
use super::rational::{common_denominator, parse_rational, Rational};
use crate::error::{Error, Result};

/// Coefficient `i` multiplies `z^i`. Trailing zeros are always trimmed, so the
/// zero polynomial is the empty coefficient list and a nonzero polynomial has
/// a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a·z + b`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    /// `z − root`
    pub fn monic_linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn from_intpoly(p: &IntPoly) -> Self {
        Self::new(p.coeffs().iter().cloned().map(Rational::from_integer).collect())
    }

    /// `c · Π (z − r)` over the given roots.
    pub fn from_roots(c: Rational, roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(UniPoly::constant(c), |acc, r| acc.mul(&UniPoly::monic_linear(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        if self.coeffs.len() > 8 {
            let (c, f) = match self.primitive_integer_form() {
                Ok(x) => x,
                Err(_) => return Rational::zero(),
            };
            let d = f.degree().unwrap_or(0);
            let v = f.eval_homogeneous(t.numer(), t.denom());
            return c * Rational::new(v, num_traits::pow(t.denom().clone(), d));
        }
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Exact product. Large operands are multiplied through their primitive
    /// integer forms so fractions are reduced once per output coefficient.
    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        if self.coeffs.len() * other.coeffs.len() <= 64 {
            let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            return UniPoly::new(out);
        }
        let (c1, f1) = self.primitive_integer_form().expect("nonzero");
        let (c2, f2) = other.primitive_integer_form().expect("nonzero");
        UniPoly::from_intpoly(&f1.mul(&f2)).scale(&(c1 * c2))
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// `p(a·z + b)`, evaluated by Horner over the linear substitution on the
    /// integer form of `p`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UniPoly {
        let Ok((c, f)) = self.primitive_integer_form() else {
            return UniPoly::zero();
        };
        let den = common_denominator([a, b]);
        let an = a.numer() * (&den / a.denom());
        let bn = b.numer() * (&den / b.denom());
        let g = f.compose_scaled(&an, &bn, &den);
        let d = f.degree().unwrap_or(0);
        let scale = c / Rational::from_integer(num_traits::pow(den, d));
        UniPoly::from_intpoly(&g).scale(&scale)
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.lead().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Divides by `z − root` when it is a factor.
    pub fn deflate(&self, root: &Rational) -> Option<UniPoly> {
        if self.degree().unwrap_or(0) < 1 {
            return None;
        }
        let (c, f) = self.primitive_integer_form().ok()?;
        let g = f.divide_linear(root.numer(), root.denom())?;
        // f = (q z − p) g  ⇒  p(z) = c·q·(z − root)·g
        Some(UniPoly::from_intpoly(&g).scale(&(c * Rational::from_integer(root.denom().clone()))))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    /// `p = content · prim` with `prim` integral, coprime and with positive
    /// leading coefficient.
    pub fn primitive_integer_form(&self) -> Result<(Rational, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let den = common_denominator(&self.coeffs);
        let ints = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        );
        let mut g = ints.content();
        if ints.lead().unwrap().is_negative() {
            g = -g;
        }
        let prim = IntPoly::new(ints.coeffs().iter().map(|c| c / &g).collect());
        Ok((Rational::new(g, den), prim))
    }

    /// `content·(primitive integer polynomial)`, e.g. `(1/6)(7*z^2 + 14*z + 6)`.
    pub fn to_factored_string(&self) -> String {
        match self.primitive_integer_form() {
            Ok((c, f)) if !c.is_one() && f.degree().unwrap_or(0) > 0 => {
                format!("({c})({})", UniPoly::from_intpoly(&f))
            }
            _ => self.to_string(),
        }
    }

    /// Monic greatest common divisor over ℚ.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(Error::GcdUndefined),
            (true, false) => Ok(other.monic()),
            (false, true) => Ok(self.monic()),
            (false, false) => {
                let (_, f) = self.primitive_integer_form()?;
                let (_, g) = other.primitive_integer_form()?;
                Ok(UniPoly::from_intpoly(&f.gcd(&g)).monic())
            }
        }
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_exact(&g).expect("gcd divides").monic())
    }

    /// Yun's square-free decomposition: `p = lead · Π s_k^k` with monic,
    /// pairwise coprime, square-free `s_k`. Returns `(k, s_k)` for nonconstant `s_k`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(usize, UniPoly)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp)?;
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d)?;
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            k += 1;
        }
        Ok(out)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// True if every coefficient of a degree with the wrong parity vanishes.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == parity % 2 || c.is_zero())
    }

    /// Coefficients as canonical rational strings, low to high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<UniPoly> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(UniPoly::new)
    }

    /// The canonical JSON text form: an array of rational strings, low to high.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("strings serialize")
    }

    pub fn from_json(s: &str) -> Result<UniPoly> {
        let v: Vec<serde_json::Value> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let items = v
            .into_iter()
            .map(|x| match x {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        UniPoly::from_strings(&items)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        UniPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show = !a.is_one() || i == 0;
            if show {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            let star = if show { "*" } else { "" };
            match i {
                0 => {}
                1 => write!(f, "{star}z")?,
                _ => write!(f, "{star}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::add(self, rhs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::sub(self, rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::mul(self, rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::neg(self)
    }
}

/// `(z+1)(z+2)…(z+k)`
pub fn rising_ladder(k: u32) -> UniPoly {
    let mut c = vec![BigInt::one()];
    for j in 1..=k {
        // c ← c·(z + j)
        c.push(BigInt::zero());
        for i in (1..c.len()).rev() {
            let t = &c[i - 1] + &c[i] * j;
            c[i] = t;
        }
        c[0] *= j;
    }
    UniPoly::from_intpoly(&IntPoly::new(c))
}
