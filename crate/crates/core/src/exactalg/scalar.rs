//! Exact scalars: arbitrary-precision rationals with integer helpers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of every algebra in the crate. Integers embed as `n/1`.
pub type Scalar = BigRational;

/// Sparse vector over [`Scalar`]; absent keys are zero, stored values are never zero.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Adds `factor * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, factor: &Scalar, src: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&k, v) in src {
        let delta = factor * v;
        match dst.get_mut(&k) {
            Some(cur) => {
                *cur += delta;
                if cur.is_zero() {
                    dst.remove(&k);
                }
            }
            None => {
                dst.insert(k, delta);
            }
        }
    }
}

pub fn scale(v: &SparseVec, factor: &Scalar) -> SparseVec {
    if factor.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, c)| (k, c * factor)).collect()
}

pub fn is_integral(v: &SparseVec) -> bool {
    v.values().all(|c| c.is_integer())
}

/// Integer coefficients of an integral vector; panics on a non-integer entry.
pub fn to_integers(v: &SparseVec) -> BTreeMap<usize, BigInt> {
    v.iter()
        .map(|(&k, c)| {
            assert!(c.is_integer(), "non-integral coefficient {c}");
            (k, c.to_integer())
        })
        .collect()
}

/// Rescales a rational vector to a primitive integer vector with positive leading entry.
pub fn primitive(v: &SparseVec) -> SparseVec {
    use num_integer::Integer;
    if v.is_empty() {
        return SparseVec::new();
    }
    let mut lcm = BigInt::one();
    for c in v.values() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<(usize, BigInt)> =
        v.iter().map(|(&k, c)| (k, (c * Scalar::from_integer(lcm.clone())).to_integer())).collect();
    let mut g = BigInt::zero();
    for (_, n) in &ints {
        g = g.gcd(n);
    }
    let lead_negative = ints[0].1.is_negative();
    ints.into_iter()
        .map(|(k, n)| {
            let mut q = n / &g;
            if lead_negative {
                q = -q;
            }
            (k, Scalar::from_integer(q))
        })
        .collect()
}
