//! Hilbert polynomials `P(z) = χ(zH)` of Fano manifolds polarized by the
//! fundamental divisor.
//!
//! Every such polynomial factors as `R(z) · (z+1)(z+2)…(z+ι−1)` where `R` has
//! degree equal to the coindex `c = n + 1 − ι`. The coefficients of `R` are
//! recovered from `h⁰(tH)`, `t = 0..=c`, by interpolating `h⁰(tH)/δ(t)` at the
//! nodes `0..=c`, with `δ(t) = (t+ι−1)!/t!`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{common_denominator, factorial, int, rising_ladder, Rational, UniPoly};

/// `h⁰(tH)` for `t = 0..=c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Vector(Vec<BigInt>);

impl H0Vector {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("h0 vector is empty".into()));
        }
        if !values[0].is_one() {
            return Err(Error::Invalid(format!("h0(O_X) must be 1, got {}", values[0])));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::Invalid("h0 values must be nonnegative".into()));
        }
        Ok(H0Vector(values))
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Parses the comma-separated CLI form, e.g. `1,9,31`.
    pub fn parse(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad h0 entry {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    p: UniPoly,
    n: u32,
    iota: u32,
    r_factor: UniPoly,
}

impl HilbertPolynomial {
    /// Validates `p` as the Hilbert polynomial of a Fano `n`-fold of index `iota`
    /// and splits off the forced linear factors.
    pub fn from_poly(p: UniPoly, n: u32, iota: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        if iota == 0 || iota > n + 1 {
            return Err(Error::Invalid(format!("index {iota} outside 1..={}", n + 1)));
        }
        if p.degree() != Some(n as usize) {
            return Err(Error::NotFano(format!(
                "degree {} does not match dimension {n}",
                p.degree().map_or("-inf".to_string(), |d| d.to_string())
            )));
        }
        if !p.coeff(0).is_one() {
            return Err(Error::NotFano(format!("P(0) = {} instead of 1", p.coeff(0))));
        }
        if !p.lead().unwrap().is_positive() {
            return Err(Error::NotFano("leading coefficient is not positive".into()));
        }
        let (content, mut f) = p.primitive_integer_form()?;
        for j in 1..iota {
            f = f.divide_linear(&BigInt::from(-(j as i64)), &BigInt::one()).ok_or_else(|| {
                Error::NotFano(format!("z + {j} does not divide P although the index is {iota}"))
            })?;
        }
        let r = UniPoly::from_intpoly(&f).scale(&content);
        Ok(HilbertPolynomial { p, n, iota, r_factor: r })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn iota(&self) -> u32 {
        self.iota
    }

    pub fn coindex(&self) -> u32 {
        self.n + 1 - self.iota
    }

    pub fn r_factor(&self) -> &UniPoly {
        &self.r_factor
    }

    /// The forced integer roots `−1, …, −(ι−1)`.
    pub fn ladder(&self) -> Vec<Rational> {
        (1..self.iota).map(|j| int(-(j as i64))).collect()
    }

    /// `Hⁿ = n! · lead(P)`.
    pub fn degree_hn(&self) -> Rational {
        self.p.lead().unwrap() * Rational::from_integer(factorial(self.n))
    }

    /// The `h⁰` vector this polynomial predicts, `P(0), …, P(c)`.
    pub fn h0_values(&self) -> Vec<Rational> {
        (0..=self.coindex())
            .map(|t| self.p.eval(&int(t as i64)))
            .collect()
    }

    pub fn to_json_value(&self) -> HilbertJson {
        HilbertJson {
            n: self.n,
            iota: self.iota,
            coindex: self.coindex(),
            coeffs: self.p.to_strings(),
            r_factor: self.r_factor.to_strings(),
            ladder: self.ladder().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json_value(j: &HilbertJson) -> Result<Self> {
        let hp = Self::from_poly(UniPoly::from_strings(&j.coeffs)?, j.n, j.iota)?;
        if j.coindex != hp.coindex() {
            return Err(Error::Invalid(format!(
                "coindex {} inconsistent with n={} and iota={}",
                j.coindex, j.n, j.iota
            )));
        }
        if !j.r_factor.is_empty() && UniPoly::from_strings(&j.r_factor)? != hp.r_factor {
            return Err(Error::Invalid("r_factor does not match coeffs".into()));
        }
        Ok(hp)
    }
}

/// Serialized form: `{n, iota, coindex, coeffs, r_factor, ladder}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertJson {
    pub n: u32,
    pub iota: u32,
    pub coindex: u32,
    pub coeffs: Vec<String>,
    #[serde(default)]
    pub r_factor: Vec<String>,
    #[serde(default)]
    pub ladder: Vec<String>,
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HilbertJson::deserialize(d)?;
        Self::from_json_value(&j).map_err(serde::de::Error::custom)
    }
}

/// `δ(t) = (t+ι−1)!/t! = (t+1)(t+2)…(t+ι−1)`
pub fn delta(t: u32, iota: u32) -> Rational {
    let v = (1..iota).fold(BigInt::one(), |acc, k| acc * BigInt::from(t + k));
    Rational::from_integer(v)
}

/// Coefficients `(a_0, …, a_c)` of the unique polynomial of degree ≤ c with
/// `Σ a_j t^j = rhs[t]` for `t = 0..=c`.
///
/// Forward differences of the values scaled to integers, then the Newton form
/// `Σ Δᵏy₀ C(t, k)` expanded into the monomial basis by a Horner scheme with
/// integer weights `c!/k!`.
pub fn interpolate_r(c: usize, rhs: &[Rational]) -> Result<Vec<Rational>> {
    if rhs.len() != c + 1 {
        return Err(Error::LengthMismatch { expected: c + 1, got: rhs.len() });
    }
    let den = common_denominator(rhs);
    let mut y: Vec<BigInt> = rhs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    // y[k] ← Δᵏ y₀
    for k in 1..=c {
        for i in (k..=c).rev() {
            y[i] = &y[i] - &y[i - 1];
        }
    }
    // U_c = Δᶜy₀,  U_k = U_{k+1}·(z − k) + (c!/k!)·Δᵏy₀,  U_0 = c!·den·R
    let mut u: Vec<BigInt> = vec![BigInt::zero(); c + 1];
    let mut weight = BigInt::one();
    for k in (0..=c).rev() {
        let node = BigInt::from(k);
        for i in (1..=c).rev() {
            let t = &u[i - 1] - &node * &u[i];
            u[i] = t;
        }
        u[0] = -&node * &u[0] + &weight * &y[k];
        weight *= BigInt::from(k.max(1));
    }
    let scale = factorial(c as u32) * den;
    Ok(u.into_iter().map(|v| Rational::new(v, scale.clone())).collect())
}

/// `P = (Σ a_j z^j) · Π_{j=1}^{ι−1} (z + j)`.
pub fn assemble(r_coeffs: &[Rational], n: u32, iota: u32) -> Result<HilbertPolynomial> {
    if iota == 0 || iota > n + 1 {
        return Err(Error::Invalid(format!("index {iota} outside 1..={}", n + 1)));
    }
    let expected = (n + 2 - iota) as usize;
    if r_coeffs.len() != expected {
        return Err(Error::LengthMismatch { expected, got: r_coeffs.len() });
    }
    let r = UniPoly::new(r_coeffs.to_vec());
    let p = r.mul(&rising_ladder(iota - 1));
    HilbertPolynomial::from_poly(p, n, iota)
}

pub fn from_h0(n: u32, iota: u32, h0: &H0Vector) -> Result<HilbertPolynomial> {
    if iota == 0 || iota > n + 1 {
        return Err(Error::Invalid(format!("index {iota} outside 1..={}", n + 1)));
    }
    let c = (n + 1 - iota) as usize;
    if h0.values().len() != c + 1 {
        return Err(Error::LengthMismatch { expected: c + 1, got: h0.values().len() });
    }
    let rhs: Vec<Rational> = h0
        .values()
        .iter()
        .enumerate()
        .map(|(t, v)| Rational::from_integer(v.clone()) / delta(t as u32, iota))
        .collect();
    let a = interpolate_r(c, &rhs)?;
    assemble(&a, n, iota)
}

/// `(−1)ⁿ P(−z−ι)`; equals `P` for every genuine Hilbert polynomial.
pub fn serre_reflect(hp: &HilbertPolynomial) -> UniPoly {
    let q = hp.p.compose_linear(&int(-1), &int(-(hp.iota as i64)));
    if hp.n % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

/// `Q(w) = P(w − ι/2)`.
pub fn center(hp: &HilbertPolynomial) -> UniPoly {
    hp.p.compose_linear(&int(1), &Rational::new((-(hp.iota as i64)).into(), 2.into()))
}

/// Product of two manifolds polarized by the exterior product of their
/// fundamental divisors; only defined when the indices agree.
pub fn product(a: &HilbertPolynomial, b: &HilbertPolynomial) -> Result<HilbertPolynomial> {
    if a.iota != b.iota {
        return Err(Error::IndexMismatch(a.iota, b.iota));
    }
    HilbertPolynomial::from_poly(a.p.mul(&b.p), a.n + b.n, a.iota)
}

/// Smooth member of `|H|` on a manifold of index ≥ 2: `P(z) − P(z−1)`.
pub fn hyperplane_section(hp: &HilbertPolynomial) -> Result<HilbertPolynomial> {
    if hp.iota < 2 || hp.n < 2 {
        return Err(Error::SectionNotFano);
    }
    let shifted = hp.p.compose_linear(&int(1), &int(-1));
    HilbertPolynomial::from_poly(hp.p.sub(&shifted), hp.n - 1, hp.iota - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn p3() -> UniPoly {
        UniPoly::from_roots(rat(1, 6), &[int(-1), int(-2), int(-3)])
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(0, 4), int(6));
        assert_eq!(delta(1, 3), int(6));
        assert_eq!(delta(2, 2), int(3));
        assert_eq!(delta(5, 1), int(1));
    }

    #[test]
    fn interpolation_examples() {
        let a = interpolate_r(2, &[int(1), rat(9, 2), rat(31, 3)]).unwrap();
        assert_eq!(a, vec![int(1), rat(7, 3), rat(7, 6)]);
        assert_eq!(interpolate_r(0, &[rat(5, 7)]).unwrap(), vec![rat(5, 7)]);
        let a = interpolate_r(3, &[int(1), rat(15, 2), int(26), rat(125, 2)]).unwrap();
        assert_eq!(a, vec![int(1), rat(5, 2), int(3), int(1)]);
        assert_eq!(
            interpolate_r(2, &[int(1)]),
            Err(Error::LengthMismatch { expected: 3, got: 1 })
        );
    }

    #[test]
    fn explicit_inverse_vandermonde_for_coindex_two() {
        // U⁻¹ for nodes 0,1,2
        let inv = [
            [int(1), int(0), int(0)],
            [rat(-3, 2), int(2), rat(-1, 2)],
            [rat(1, 2), int(-1), rat(1, 2)],
        ];
        let samples = [
            [int(1), rat(9, 2), rat(31, 3)],
            [int(3), int(-2), rat(5, 11)],
            [rat(1, 2), rat(5, 6), rat(7, 4)],
        ];
        for rhs in samples {
            let by_matrix: Vec<Rational> = inv
                .iter()
                .map(|row| row.iter().zip(&rhs).map(|(u, v)| u * v).sum())
                .collect();
            assert_eq!(interpolate_r(2, &rhs).unwrap(), by_matrix);
        }
    }

    #[test]
    fn assemble_examples() {
        let hp = assemble(&[int(1), rat(7, 3), rat(7, 6)], 3, 2).unwrap();
        let expect = UniPoly::from_ints(&[6, 14, 7])
            .scale(&rat(1, 6))
            .mul(&UniPoly::from_ints(&[1, 1]));
        assert_eq!(hp.poly(), &expect);
        assert_eq!(hp.ladder(), vec![int(-1)]);

        let hp = assemble(&[rat(1, 6)], 3, 4).unwrap();
        assert_eq!(hp.poly(), &p3());
        assert_eq!(hp.coindex(), 0);

        assert!(assemble(&[int(1)], 1, 1).is_err());
        assert!(matches!(assemble(&[int(2)], 3, 4), Err(Error::NotFano(_))));
    }

    #[test]
    fn from_h0_examples() {
        let hp = from_h0(3, 4, &H0Vector::from_u64s(&[1]).unwrap()).unwrap();
        assert_eq!(hp.poly(), &p3());
        let q3 = from_h0(3, 3, &H0Vector::from_u64s(&[1, 5]).unwrap()).unwrap();
        assert_eq!(
            q3.poly(),
            &UniPoly::from_roots(rat(1, 3), &[rat(-3, 2), int(-1), int(-2)])
        );
        assert_eq!(q3.r_factor(), &UniPoly::new(vec![rat(1, 2), rat(1, 3)]));
        let b = from_h0(3, 2, &H0Vector::parse("1,9,31").unwrap()).unwrap();
        assert_eq!(b.r_factor(), &UniPoly::from_ints(&[6, 14, 7]).scale(&rat(1, 6)));
        for (t, v) in [1, 9, 31].iter().enumerate() {
            assert_eq!(b.poly().eval(&int(t as i64)), int(*v));
        }
        assert!(H0Vector::parse("2,3").is_err());
        assert!(from_h0(3, 2, &H0Vector::parse("1,9").unwrap()).is_err());
    }

    #[test]
    fn serre_and_centering() {
        let hp = HilbertPolynomial::from_poly(p3(), 3, 4).unwrap();
        assert_eq!(serre_reflect(&hp), p3());
        assert_eq!(
            center(&hp),
            UniPoly::from_roots(rat(1, 6), &[int(0), int(1), int(-1)])
        );
        let p2 = HilbertPolynomial::from_poly(UniPoly::from_ints(&[2, 3, 1]).scale(&rat(1, 2)), 2, 3)
            .unwrap();
        assert_eq!(center(&p2), UniPoly::new(vec![rat(-1, 8), int(0), rat(1, 2)]));
        let q = HilbertPolynomial::from_poly(UniPoly::from_ints(&[1, 2, 1]), 2, 2).unwrap();
        assert_eq!(center(&q), UniPoly::from_ints(&[0, 0, 1]));

        // z^3 + z^2 is not symmetric; it is not a Hilbert polynomial either,
        // so reflect it through the raw transform.
        let raw = UniPoly::from_ints(&[0, 0, 1, 1]);
        let refl = raw.compose_linear(&int(-1), &int(-2)).neg();
        assert_ne!(refl, raw);
    }

    #[test]
    fn products_and_sections() {
        let p2 = HilbertPolynomial::from_poly(UniPoly::from_ints(&[2, 3, 1]).scale(&rat(1, 2)), 2, 3)
            .unwrap();
        let pp = product(&p2, &p2).unwrap();
        assert_eq!(
            pp.poly(),
            &UniPoly::from_roots(rat(1, 4), &[int(-1), int(-1), int(-2), int(-2)])
        );
        let p3h = HilbertPolynomial::from_poly(p3(), 3, 4).unwrap();
        assert_eq!(product(&p3h, &p2), Err(Error::IndexMismatch(4, 3)));

        let sec = hyperplane_section(&pp).unwrap();
        assert_eq!(sec.poly(), &UniPoly::from_roots(int(1), &vec![int(-1); 3]));
        assert_eq!((sec.n(), sec.iota()), (3, 2));
        let sec = hyperplane_section(&p3h).unwrap();
        assert_eq!(sec.poly(), p2.poly());

        let f1 = HilbertPolynomial::from_poly(UniPoly::from_ints(&[1, 4, 4]), 2, 1).unwrap();
        assert_eq!(hyperplane_section(&f1), Err(Error::SectionNotFano));
    }

    #[test]
    fn json_round_trip() {
        let hp = from_h0(3, 2, &H0Vector::parse("1,9,31").unwrap()).unwrap();
        let s = serde_json::to_string(&hp).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"iota":2,"coindex":2,"coeffs":["1","10/3","7/2","7/6"],"r_factor":["1","7/3","7/6"],"ladder":["-1"]}"#
        );
        let back: HilbertPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, hp);
        let bad = r#"{"n":3,"iota":2,"coindex":1,"coeffs":["1","10/3","7/2","7/6"]}"#;
        assert!(serde_json::from_str::<HilbertPolynomial>(bad).is_err());
    }
}
