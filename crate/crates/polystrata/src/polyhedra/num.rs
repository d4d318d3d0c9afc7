//! Integer row arithmetic shared by the double-description cone and the
//! polyhedron canonicalizer: content normalization, dot products, and the
//! positive-scale row combinations used by pivoting and elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Z = BigInt;

/// Greatest common divisor of the absolute values of a row, zero for an
/// all-zero row.
pub fn content(row: &[Z]) -> Z {
    let mut g = Z::zero();
    for x in row {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    g
}

/// Divides a row by its content, making it primitive. All-zero rows are
/// returned unchanged.
pub fn normalize(mut row: Vec<Z>) -> Vec<Z> {
    let g = content(&row);
    if !g.is_zero() && g != Z::from(1) {
        for x in &mut row {
            *x = &*x / &g;
        }
    }
    row
}

pub fn dot(a: &[Z], b: &[Z]) -> Z {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Z::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Row combination `ca·a + cb·b`, followed by content normalization.
pub fn combine(ca: &Z, a: &[Z], cb: &Z, b: &[Z]) -> Vec<Z> {
    debug_assert_eq!(a.len(), b.len());
    let row: Vec<Z> = a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect();
    normalize(row)
}

pub fn negate(row: &[Z]) -> Vec<Z> {
    row.iter().map(|x| -x).collect()
}

pub fn is_zero_row(row: &[Z]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// Canonical sign: first nonzero entry positive. Used for lines, whose two
/// orientations denote the same object.
pub fn sign_canonical(row: Vec<Z>) -> Vec<Z> {
    match row.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => negate(&row),
        _ => row,
    }
}
