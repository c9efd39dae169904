//! Closed-form Hilbert polynomials for the families of Fano manifolds with
//! small coindex, and the discriminants that decide their reducibility.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{binomial, factorial, int, rational_sqrt, rising_ladder, Rational, UniPoly};
use crate::hilbert::{from_h0, H0Vector, HilbertPolynomial};

fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

fn inv_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `P(z) = Q(z + ι/2)`.
fn uncenter(q: &UniPoly, iota: u32) -> UniPoly {
    q.compose_linear(&int(1), &frac(iota, 2))
}

/// `(1/n!) ∏_{i=1}^{n} (z+i)`, index `n+1`.
pub fn projective_space(n: u32) -> Result<HilbertPolynomial> {
    if n == 0 {
        return Err(Error::Invalid("projective space needs n ≥ 1".into()));
    }
    HilbertPolynomial::from_poly(rising_ladder(n).scale(&inv_factorial(n)), n, n + 1)
}

/// `(2/n!) (z + n/2) ∏_{i=1}^{n−1} (z+i)`, index `n`.
pub fn quadric(n: u32) -> Result<HilbertPolynomial> {
    if n < 2 {
        return Err(Error::Invalid("quadric needs n ≥ 2".into()));
    }
    let p = UniPoly::linear(int(1), frac(n, 2))
        .mul(&rising_ladder(n - 1))
        .scale(&(inv_factorial(n) * int(2)));
    HilbertPolynomial::from_poly(p, n, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoData {
    pub n: u32,
    pub d: u32,
}

impl DelPezzoData {
    /// Largest degree occurring in the classification for this dimension.
    pub fn max_classified_degree(&self) -> Option<u32> {
        match self.n {
            3 => Some(8),
            4 => Some(6),
            5 | 6 => Some(5),
            n if n >= 7 => Some(4),
            _ => None,
        }
    }

    /// A note when `(n, d)` lies outside the classified range.
    pub fn range_warning(&self) -> Option<String> {
        let max = self.max_classified_degree()?;
        (self.d > max).then(|| {
            format!(
                "no del Pezzo manifold of dimension {} and degree {} exists (d ≤ {max}); \
                 the formula is evaluated anyway",
                self.n, self.d
            )
        })
    }
}

/// `Δ = (n−1)((n−1)d − 4n)/d`
pub fn del_pezzo_delta(n: u32, d: u32) -> Rational {
    let (n, d) = (n as i64, d as i64);
    frac((n - 1) * ((n - 1) * d - 4 * n), d)
}

/// `(d/n! z² + (n−1)d/n! z + 1/(n−2)!) ∏_{i=1}^{n−2}(z+i)`, index `n−1`,
/// together with the discriminant `Δ` of the quadratic factor up to a
/// positive square.
pub fn del_pezzo(data: DelPezzoData) -> Result<(HilbertPolynomial, Rational)> {
    let DelPezzoData { n, d } = data;
    if n < 3 || d == 0 {
        return Err(Error::Invalid("del Pezzo needs n ≥ 3 and d ≥ 1".into()));
    }
    let nf = inv_factorial(n);
    let q = UniPoly::new(vec![
        inv_factorial(n - 2),
        &nf * int(((n - 1) * d) as i64),
        &nf * int(d as i64),
    ]);
    let hp = HilbertPolynomial::from_poly(q.mul(&rising_ladder(n - 2)), n, n - 1)?;
    Ok((hp, del_pezzo_delta(n, d)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiData {
    pub n: u32,
    /// `d = (−K/(n−2))ⁿ = Hⁿ`.
    pub d: u32,
    pub genus: Option<u32>,
}

impl MukaiData {
    /// `(−K)ⁿ = d·(n−2)ⁿ`.
    pub fn anticanonical_degree(&self) -> BigInt {
        BigInt::from(self.d) * num_traits::pow(BigInt::from(self.n - 2), self.n as usize)
    }
}

/// `d = 2g − 2`.
pub fn genus_degree(g: u32) -> Result<u32> {
    if g < 2 {
        return Err(Error::Invalid("genus must be at least 2".into()));
    }
    Ok(2 * g - 2)
}

/// `Δ = 1 − 8n(n−1)(n−2)^{n−2}/(−K)ⁿ`
pub fn mukai_delta(n: u32, d: u32) -> Rational {
    let data = MukaiData { n, d, genus: None };
    let num = BigInt::from(8 * n as u64 * (n as u64 - 1))
        * num_traits::pow(BigInt::from(n - 2), (n - 2) as usize);
    Rational::one() - Rational::new(num, data.anticanonical_degree())
}

/// Coefficients `a_0..a_3` of the non-forced factor of a Mukai polynomial.
pub fn mukai_coefficients(n: u32, d: u32) -> [Rational; 4] {
    let nf = inv_factorial(n);
    let (ni, di) = (n as i64, d as i64);
    // 2·[(d/2 + 2)n² − (2d + 2)n + 2d]
    let a1_twice = (di + 4) * ni * ni - (4 * di + 4) * ni + 4 * di;
    [
        inv_factorial(n - 3),
        &nf * frac(a1_twice, 2),
        &nf * frac(3 * di * (ni - 2), 2),
        &nf * int(di),
    ]
}

/// Mukai polynomial with index `n−2`, built from the coefficients of its
/// non-forced factor and checked against the factorization
/// `(d/n!)[z² + (n−2)z + (n−2)²(1−Δ)/4](z + (n−2)/2) ∏_{j=1}^{n−3}(z+j)`.
/// Dimension 3 is delegated to [`threefold_from_k3`] with `(−K)³ = d`.
pub fn mukai(data: MukaiData) -> Result<(HilbertPolynomial, Rational)> {
    let MukaiData { n, d, genus } = data;
    if n < 3 || d == 0 {
        return Err(Error::Invalid("Mukai needs n ≥ 3 and d ≥ 1".into()));
    }
    if let Some(g) = genus {
        if genus_degree(g)? != d {
            return Err(Error::Invalid(format!("genus {g} requires d = {}", 2 * g - 2)));
        }
    }
    if n == 3 {
        let hp = threefold_from_k3(d, 1)?;
        return Ok((hp, mukai_delta(3, d)));
    }
    let delta = mukai_delta(n, d);
    let r = UniPoly::new(mukai_coefficients(n, d).to_vec());
    let by_coeffs = r.mul(&rising_ladder(n - 3));

    let m = int((n - 2) as i64);
    let quad = UniPoly::new(vec![
        &m * &m * (Rational::one() - &delta) / int(4),
        m.clone(),
        Rational::one(),
    ]);
    let by_factors = quad
        .mul(&UniPoly::linear(int(1), &m / int(2)))
        .mul(&rising_ladder(n - 3))
        .scale(&(inv_factorial(n) * int(d as i64)));
    assert_eq!(by_coeffs, by_factors, "Mukai constructions disagree at n={n}, d={d}");
    Ok((HilbertPolynomial::from_poly(by_coeffs, n, n - 2)?, delta))
}

/// Del Pezzo surface of degree `K²` polarized by `H = −K/ι`:
/// `Q(w) = ½(K²/ι² w² − (K²−8)/4)`.
pub fn surface_from_k2(k2: u32, iota: u32) -> Result<HilbertPolynomial> {
    if !(1..=9).contains(&k2) {
        return Err(Error::Invalid(format!("K² = {k2} is outside 1..=9")));
    }
    if !surface_indices(k2).contains(&iota) {
        return Err(Error::NotFano(format!("no del Pezzo surface with K² = {k2} has index {iota}")));
    }
    let k = k2 as i64;
    let i2 = (iota * iota) as i64;
    let q = UniPoly::new(vec![frac(-(k - 8), 8), Rational::zero(), frac(k, 2 * i2)]);
    HilbertPolynomial::from_poly(uncenter(&q, iota), 2, iota)
}

/// Indices realized by del Pezzo surfaces of degree `K²`.
pub fn surface_indices(k2: u32) -> Vec<u32> {
    match k2 {
        9 => vec![3],
        8 => vec![2, 1],
        1..=7 => vec![1],
        _ => vec![],
    }
}

/// Fano threefold with `(−K)³ = mk3` and index `ι`:
/// `Q(w) = w(4(−K)³w² − ι²((−K)³ − 48))/(24ι³)`.
pub fn threefold_from_k3(mk3: u32, iota: u32) -> Result<HilbertPolynomial> {
    if mk3 == 0 {
        return Err(Error::NotFano("(−K)³ must be positive".into()));
    }
    if !(1..=4).contains(&iota) {
        return Err(Error::Invalid(format!("threefold index {iota} outside 1..=4")));
    }
    let k = mk3 as i64;
    let i = iota as i64;
    let den = 24 * i * i * i;
    let q = UniPoly::new(vec![
        Rational::zero(),
        frac(-i * i * (k - 48), den),
        Rational::zero(),
        frac(4 * k, den),
    ]);
    HilbertPolynomial::from_poly(uncenter(&q, iota), 3, iota)
}

/// `1 − 48/(−K)³`: the threefold polynomial splits over ℚ (ℝ) iff this is a
/// rational square (nonnegative).
pub fn threefold_discriminant(mk3: u32) -> Rational {
    Rational::one() - frac(48, mk3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData4 {
    /// `K⁴`
    pub k: i64,
    /// `c₂·K²`
    pub h: i64,
    pub iota: u32,
}

/// `Q(w) = (16k w⁴ + 8ι²(2h−k) w² + ι⁴(k − 4h + 384))/(384 ι⁴)`.
pub fn fourfold_from_chern(data: ChernData4) -> Result<HilbertPolynomial> {
    let ChernData4 { k, h, iota } = data;
    if k <= 0 {
        return Err(Error::NotFano("K⁴ must be positive".into()));
    }
    if !(1..=5).contains(&iota) {
        return Err(Error::Invalid(format!("fourfold index {iota} outside 1..=5")));
    }
    let i2 = BigInt::from(iota * iota);
    let i4 = &i2 * &i2;
    let den = BigInt::from(384) * &i4;
    let q = UniPoly::new(vec![
        Rational::new(&i4 * BigInt::from(k - 4 * h + 384), den.clone()),
        Rational::zero(),
        Rational::new(BigInt::from(8) * &i2 * BigInt::from(2 * h - k), den.clone()),
        Rational::zero(),
        Rational::new(BigInt::from(16 * k), den),
    ]);
    HilbertPolynomial::from_poly(uncenter(&q, iota), 4, iota)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourfoldConditions {
    #[serde(serialize_with = "ser_rational")]
    pub alpha_sq: Rational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub alpha: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub beta_sq: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub gamma_sq: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub beta: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub gamma: Option<Rational>,
    pub q_reducible: bool,
    pub r_reducible: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// `α² = h² − 96k`, `β² = (k − 2h + 2α)/k`, `γ² = (k − 2h − 2α)/k`.
///
/// `β²` and `γ²` are only rational when `α` is. Over ℝ the test is
/// `h² ≥ 96k` and `k − 2h ≥ 2√(h² − 96k)`, decided without square roots.
pub fn fourfold_conditions(k: i64, h: i64) -> Result<FourfoldConditions> {
    if k <= 0 {
        return Err(Error::NotFano("K⁴ must be positive".into()));
    }
    let (kb, hb) = (BigInt::from(k), BigInt::from(h));
    let a2 = &hb * &hb - BigInt::from(96) * &kb;
    let alpha_sq = Rational::from_integer(a2.clone());
    let alpha = if a2.is_negative() { None } else { rational_sqrt(&alpha_sq) };
    let kq = Rational::from_integer(kb.clone());
    let base = Rational::from_integer(&kb - BigInt::from(2) * &hb);
    let (beta_sq, gamma_sq) = match &alpha {
        Some(a) => (
            Some((&base + a * int(2)) / &kq),
            Some((&base - a * int(2)) / &kq),
        ),
        None => (None, None),
    };
    let beta = beta_sq.as_ref().and_then(|b| (!b.is_negative()).then(|| rational_sqrt(b)).flatten());
    let gamma = gamma_sq.as_ref().and_then(|g| (!g.is_negative()).then(|| rational_sqrt(g)).flatten());
    let q_reducible = alpha.is_some() && beta.is_some() && gamma.is_some();
    let kb2h = &kb - BigInt::from(2) * &hb;
    let r_reducible = !a2.is_negative()
        && !kb2h.is_negative()
        && &kb2h * &kb2h >= BigInt::from(4) * &a2;
    Ok(FourfoldConditions {
        alpha_sq,
        alpha,
        beta_sq,
        gamma_sq,
        beta,
        gamma,
        q_reducible,
        r_reducible,
    })
}

/// `h⁰(tH) = Σ_{j=0}^{t} C(t−j+m−2, m−2)·C(t+j+m, m)` for
/// `ℙ(O(1)^{⊕(m−1)} ⊕ O(2))` over `ℙᵐ`.
pub fn bundle_case2_h0(m: u32, t: u32) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::Invalid("bundle scan needs m ≥ 2".into()));
    }
    let (m, t) = (m as i64, t as i64);
    Ok((0..=t)
        .map(|j| binomial(t - j + m - 2, m - 2) * binomial(t + j + m, m))
        .sum())
}

/// Hilbert polynomial of the case-2 bundle, `n = 2m−1`, `ι = m`, recovered
/// from its `h⁰` vector.
pub fn bundle_case2_poly(m: u32) -> Result<HilbertPolynomial> {
    let h0 = (0..=m)
        .map(|t| bundle_case2_h0(m, t))
        .collect::<Result<Vec<_>>>()?;
    from_h0(2 * m - 1, m, &H0Vector::new(h0)?)
}

/// `2/(m!(m−1)!) (z + m/2) (∏_{j=1}^{m−1}(z+j))²`, shared by cases 1 and 3.
pub fn bundle_case13_poly(m: u32) -> Result<HilbertPolynomial> {
    if m < 2 {
        return Err(Error::Invalid("bundle family needs m ≥ 2".into()));
    }
    let c = Rational::new(BigInt::from(2), factorial(m) * factorial(m - 1));
    let l = rising_ladder(m - 1);
    let p = UniPoly::linear(int(1), frac(m, 2)).mul(&l).mul(&l).scale(&c);
    HilbertPolynomial::from_poly(p, 2 * m - 1, m)
}

/// `P_a(a_scale·z) · P_b(b_scale·z)`: a product polarized by `O(a_scale, b_scale)`
/// when the factors have different indices.
pub fn weighted_product(
    a: &HilbertPolynomial,
    a_scale: u32,
    b: &HilbertPolynomial,
    b_scale: u32,
    iota: u32,
) -> Result<HilbertPolynomial> {
    let pa = a.poly().compose_linear(&int(a_scale as i64), &Rational::zero());
    let pb = b.poly().compose_linear(&int(b_scale as i64), &Rational::zero());
    HilbertPolynomial::from_poly(pa.mul(&pb), a.n() + b.n(), iota)
}
