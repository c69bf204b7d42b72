//! Exact arbitrary-precision integer and rational linear algebra.
//!
//! Small dense matrices only; the transforms are standard elementary
//! row/column operations with smallest-absolute-value pivoting.

mod matrix;
mod rational;

pub use matrix::{hnf, rational_rank, snf, IntMatrix, SmithDecomposition};
pub use rational::ExactRational;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("bezout requires at least one nonzero argument")]
    BothZero,
    #[error("crt requires residue and modulus lists of equal length")]
    LengthMismatch,
    #[error("crt moduli must be positive")]
    NonPositiveModulus,
    #[error("crt moduli must be pairwise coprime (gcd {0} found)")]
    NonCoprimeModuli(BigInt),
}

/// Extended gcd: returns `(g, x, y)` with `g = gcd(a, b) > 0` and `a*x + b*y = g`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt), ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    Ok((r0, s0, t0))
}

/// Chinese remainder: the unique `r` in `[0, prod(moduli))` with
/// `r = residues[i] mod moduli[i]` for all `i`.
pub fn crt(residues: &[BigInt], moduli: &[BigInt]) -> Result<BigInt, ExactError> {
    if residues.len() != moduli.len() {
        return Err(ExactError::LengthMismatch);
    }
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (ri, mi) in residues.iter().zip(moduli) {
        if !mi.is_positive() {
            return Err(ExactError::NonPositiveModulus);
        }
        let (g, x, _y) = bezout(&m, mi)?;
        if !g.is_one() {
            // consistent pairs with a shared factor are rejected too
            return Err(ExactError::NonCoprimeModuli(g));
        }
        // x * m = 1 mod mi, so stepping by m * ((ri - r) * x mod mi) fixes ri
        let step = ((ri - &r) * x).mod_floor(mi);
        r += &m * step;
        m *= mi;
        r = r.mod_floor(&m);
    }
    Ok(r)
}

/// `crt` over machine words; orders and moduli in this crate fit u64.
pub fn crt_u64(residues: &[u64], moduli: &[u64]) -> Result<u64, ExactError> {
    let rs: Vec<BigInt> = residues.iter().map(|&r| BigInt::from(r)).collect();
    let ms: Vec<BigInt> = moduli.iter().map(|&m| BigInt::from(m)).collect();
    let out = crt(&rs, &ms)?;
    Ok(u64::try_from(out).expect("crt result exceeds u64"))
}
