//! Structural properties every Hilbert polynomial of a Fano manifold must have.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactq::{Rational, UniPoly};
use crate::hilbert::{assemble, center, delta, interpolate_r, serre_reflect, HilbertPolynomial};
use crate::reducibility::integer_root_profile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub p0_is_one: bool,
    pub serre_symmetric: bool,
    pub centered_parity: bool,
    pub integer_roots_are_ladder: bool,
    /// `None` when neither `n` nor the coindex is odd.
    pub half_index_root: Option<bool>,
    pub h0_round_trip: bool,
}

impl StructuralReport {
    pub fn ok(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.p0_is_one {
            v.push("P(0) != 1");
        }
        if !self.serre_symmetric {
            v.push("Serre reflection does not fix P");
        }
        if !self.centered_parity {
            v.push("centered polynomial has the wrong parity");
        }
        if !self.integer_roots_are_ladder {
            v.push("integer roots differ from {1-iota, ..., -1}");
        }
        if self.half_index_root == Some(false) {
            v.push("z + iota/2 does not divide P");
        }
        if !self.h0_round_trip {
            v.push("h0 round trip does not reproduce P");
        }
        v
    }
}

pub fn check_structure(hp: &HilbertPolynomial) -> StructuralReport {
    let p = hp.poly();
    let n = hp.n();
    let iota = hp.iota();
    let ladder: std::collections::BTreeSet<BigInt> =
        (1..iota).map(|j| -BigInt::from(j)).collect();
    let half = Rational::new(-BigInt::from(iota), BigInt::from(2));
    let half_index_root =
        (n % 2 == 1 || hp.coindex() % 2 == 1).then(|| p.eval(&half).is_zero());
    StructuralReport {
        p0_is_one: p.coeff(0).is_one(),
        serre_symmetric: &serre_reflect(hp) == p,
        centered_parity: center(hp).has_parity((n % 2) as usize),
        integer_roots_are_ladder: integer_root_profile(hp) == ladder,
        half_index_root,
        h0_round_trip: round_trip(hp).as_ref() == Some(p),
    }
}

/// Rebuilds `P` from its values at `0..=c` through the interpolation route.
fn round_trip(hp: &HilbertPolynomial) -> Option<UniPoly> {
    let c = hp.coindex();
    let (content, f) = hp.poly().primitive_integer_form().ok()?;
    let rhs: Vec<Rational> = (0..=c)
        .map(|t| &content * Rational::from_integer(f.eval_int(&BigInt::from(t))) / delta(t, hp.iota()))
        .collect();
    let a = interpolate_r(c as usize, &rhs).ok()?;
    assemble(&a, hp.n(), hp.iota()).ok().map(|h| h.poly().clone())
}

