//! Polynomial arithmetic over small prime fields, used as a fast filter in
//! front of the exact algorithms.

use crate::exactq::IntPoly;

/// Primes in a range where brute-force root search stays cheap.
pub(crate) const PRIMES: &[u64] = &[
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093,
    1097, 1103, 1109, 1117, 1123, 1129, 1151, 1153, 1163, 1171, 1181, 1187, 1193, 1201, 1213,
    1217, 1223, 1229, 1231, 1237, 1249, 1259, 1277, 1279, 1283, 1289, 1291, 1297, 1301, 1303,
];

/// Small primes for congruence sieving of integer roots.
pub(crate) const SIEVE_PRIMES: &[u64] = &[
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
];

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

pub(crate) fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    let mut d: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, i as u64 % p, p))
        .collect();
    trim(&mut d);
    d
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let q = mulmod(r[dr], inv, p);
        if q != 0 {
            let shift = dr - db;
            for (k, &bk) in b.iter().enumerate() {
                r[k + shift] = (r[k + shift] + p - mulmod(q, bk, p)) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Degree of `gcd(a, b)` over 𝔽_p (`None` if both vanish).
pub(crate) fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len().checked_sub(1)
}

/// True if `f mod p` keeps its degree and is square-free.
pub(crate) fn squarefree_mod(f: &IntPoly, p: u64) -> bool {
    let fp = f.reduce_mod(p);
    if fp.len() != f.coeffs().len() {
        return false;
    }
    let d = derivative(&fp, p);
    if d.is_empty() {
        return fp.len() <= 1;
    }
    gcd_degree(&fp, &d, p) == Some(0)
}

/// All roots of `f mod p` in `0..p`, by exhaustive evaluation.
pub(crate) fn roots_mod(f: &IntPoly, p: u64) -> Vec<u64> {
    let fp = f.reduce_mod(p);
    if fp.is_empty() {
        return (0..p).collect();
    }
    (0..p).filter(|&x| eval(&fp, x, p) == 0).collect()
}
