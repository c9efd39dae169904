//! Rational roots with multiplicities.
//!
//! A rational root `p/q` (lowest terms) of a primitive integer polynomial has
//! `p | a_0` and `q | a_n`. When both are small the candidates are enumerated
//! from their divisors. Otherwise candidates come from roots modulo a prime
//! `ℓ`, Hensel-lifted to `ℓ^k > 2|a_0||a_n|` and rationally reconstructed;
//! each candidate is then confirmed by exact evaluation either way.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp;
use crate::error::{Error, Result};
use crate::exactq::{IntPoly, Rational, UniPoly};

/// Above this many divisor pairs the modular route is used instead.
const MAX_DIVISOR_CANDIDATES: usize = 4096;
/// Trial division is only attempted on integers below `2^TRIAL_BITS`.
const TRIAL_BITS: u64 = 48;
/// Largest root bound scanned by the integer sieve.
const SIEVE_LIMIT: i64 = 10_000_000;

/// Rational roots of `p` with exact multiplicities, sorted ascending.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(Rational, usize)>> {
    let (_, f) = p.primitive_integer_form()?;
    rational_roots_int(&f)
}

pub(crate) fn rational_roots_int(f: &IntPoly) -> Result<Vec<(Rational, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut g = IntPoly::new(f.coeffs()[zeros..].to_vec());
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for r in distinct_candidates(&g) {
        let mut mult = 0;
        while let Some(q) = g.divide_linear(r.numer(), r.denom()) {
            g = q;
            mult += 1;
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Distinct rational roots of `g` (nonzero constant term, degree ≥ 1).
fn distinct_candidates(g: &IntPoly) -> Vec<Rational> {
    let a0 = g.coeffs()[0].abs();
    let an = g.lead().unwrap().abs();
    if let Some(c) = divisor_candidates(g, &a0, &an) {
        return c;
    }
    modular_candidates(g)
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    if n.bits() > TRIAL_BITS {
        return None;
    }
    let mut n = n.to_u64()?;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push((n, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &x in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(x * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs)
}

/// Rational root theorem by divisor enumeration; `None` when the candidate
/// set would be too large.
pub(crate) fn divisor_candidates(g: &IntPoly, a0: &BigInt, an: &BigInt) -> Option<Vec<Rational>> {
    let ps = small_divisors(a0)?;
    let qs = small_divisors(an)?;
    if ps.len().saturating_mul(qs.len()) > MAX_DIVISOR_CANDIDATES {
        return None;
    }
    let mut roots = Vec::new();
    for &q in &qs {
        for &p in &ps {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in [-1i64, 1] {
                let num = BigInt::from(p) * s;
                let den = BigInt::from(q);
                if g.sign_at(&num, &den) == Sign::NoSign {
                    roots.push(Rational::new(num, den));
                }
            }
        }
    }
    Some(roots)
}

/// Candidates via roots mod ℓ, Hensel lifting and rational reconstruction.
pub(crate) fn modular_candidates(g: &IntPoly) -> Vec<Rational> {
    let s = squarefree_int(g);
    let Some(d) = s.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let a0 = s.coeffs()[0].abs();
    let an = s.lead().unwrap().abs();

    // Pick the prime with the fewest roots among a handful of good ones.
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut tried = 0;
    for &l in modp::PRIMES {
        if (s.lead().unwrap() % l).is_zero() || !modp::squarefree_mod(&s, l) {
            continue;
        }
        let roots = modp::roots_mod(&s, l);
        if best.as_ref().is_none_or(|(_, r)| roots.len() < r.len()) {
            best = Some((l, roots));
        }
        tried += 1;
        if tried >= 4 || best.as_ref().is_some_and(|(_, r)| r.is_empty()) {
            break;
        }
    }
    let Some((l, roots)) = best else {
        // No usable prime in the table: enumerate exhaustively if we can.
        return divisor_candidates(g, &g.coeffs()[0].abs(), &g.lead().unwrap().abs())
            .unwrap_or_default();
    };
    if roots.is_empty() {
        return Vec::new();
    }

    let bound: BigInt = BigInt::from(2) * &a0 * &an;
    let lb = BigInt::from(l);
    let ds = s.derivative();
    let mut out = Vec::new();
    for r0 in roots {
        let lifted = hensel_lift(&s, &ds, BigInt::from(r0), &lb, &bound);
        let Some((r, modulus)) = lifted else { continue };
        if let Some((p, q)) = rational_reconstruct(&r, &modulus, &a0, &an) {
            if p.is_zero() || !(&a0 % p.abs()).is_zero() {
                continue;
            }
            if !(&an % &q).is_zero() {
                continue;
            }
            if s.sign_at(&p, &q) == Sign::NoSign {
                out.push(Rational::new(p, q));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Newton–Hensel lifting of a simple root mod ℓ until the modulus exceeds `bound`.
fn hensel_lift(
    f: &IntPoly,
    df: &IntPoly,
    mut r: BigInt,
    l: &BigInt,
    bound: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let mut m = l.clone();
    while &m <= bound {
        m = &m * &m;
        let fv = f.eval_int(&r).mod_floor(&m);
        let dv = df.eval_int(&r).mod_floor(&m);
        let inv = mod_inverse(&dv, &m)?;
        r = (&r - fv * inv).mod_floor(&m);
    }
    Some((r, m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Finds `p/q ≡ r (mod m)` with `|p| ≤ n_bound`, `0 < q ≤ d_bound`.
pub(crate) fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    n_bound: &BigInt,
    d_bound: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (p, q) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if &q > d_bound || !p.gcd(&q).is_one() {
        return None;
    }
    Some((p, q))
}

/// Square-free part over ℤ, skipping the exact gcd when some prime certifies
/// that `f` is already square-free.
pub(crate) fn squarefree_int(f: &IntPoly) -> IntPoly {
    if f.degree().unwrap_or(0) <= 1 {
        return f.primitive();
    }
    let lead = f.lead().unwrap();
    for &l in modp::PRIMES.iter().take(6) {
        if (lead % l).is_zero() {
            continue;
        }
        if modp::squarefree_mod(f, l) {
            return f.primitive();
        }
    }
    let g = f.gcd(&f.derivative());
    let q = UniPoly::from_intpoly(f)
        .div_exact(&UniPoly::from_intpoly(&g))
        .expect("gcd divides");
    q.primitive_integer_form().expect("nonzero").1
}

/// Integer roots by congruence sieving inside a rigorous root bound.
pub(crate) fn integer_roots(f: &IntPoly) -> Vec<BigInt> {
    let Some(d) = f.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(BigInt::zero());
    }
    let g = IntPoly::new(f.coeffs()[zeros..].to_vec());
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let bound = root_bound(&g);
    let sieve: Vec<(u64, Vec<bool>)> = modp::SIEVE_PRIMES
        .iter()
        .map(|&l| {
            let mut ok = vec![false; l as usize];
            for r in modp::roots_mod(&g, l) {
                ok[r as usize] = true;
            }
            (l, ok)
        })
        .collect();
    let a0 = g.coeffs()[0].abs();
    let Some(b) = bound.to_i64().filter(|&b| b <= SIEVE_LIMIT) else {
        // Huge bound: fall back to the rational-root route.
        return rational_roots_int(&g)
            .map(|v| {
                out.into_iter()
                    .chain(v.into_iter().filter(|(r, _)| r.is_integer()).map(|(r, _)| r.to_integer()))
                    .collect()
            })
            .unwrap_or_default();
    };
    for x in -b..=b {
        if x == 0 {
            continue;
        }
        let pass = sieve
            .iter()
            .all(|(l, ok)| ok[x.rem_euclid(*l as i64) as usize]);
        if !pass {
            continue;
        }
        let xb = BigInt::from(x);
        if !(&a0 % xb.abs()).is_zero() {
            continue;
        }
        if g.eval_int(&xb).is_zero() {
            out.push(xb);
        }
    }
    out.sort();
    out
}

/// Fujiwara's bound `2·max |a_{n−i}/a_n|^{1/i}` (with `a_0/2` in the last
/// term), rounded up to an integer.
pub(crate) fn root_bound(f: &IntPoly) -> BigInt {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return BigInt::zero();
    }
    let an = f.lead().unwrap().abs();
    let mut best = BigInt::zero();
    for i in 1..=d {
        let mut num = f.coeffs()[d - i].abs();
        let den = if i == d { &an * 2 } else { an.clone() };
        if num.is_zero() {
            continue;
        }
        // ceil((num/den)^(1/i)) ≤ ceil(ceil(num/den)^(1/i))
        let (q, rem) = num.div_rem(&den);
        num = if rem.is_zero() { q } else { q + 1 };
        let mut root = num.nth_root(i as u32);
        if num_traits::pow(root.clone(), i) < num {
            root += 1;
        }
        if root > best {
            best = root;
        }
    }
    best * 2
}
