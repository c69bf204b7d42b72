//! Mixed-register devices and Pauli operators mod phases.
//!
//! A Pauli operator on an n-register device is stored as 2n exponents: a
//! shift (X) and a clock (Z) power per register, each reduced mod that
//! register's modulus. Global phases are dropped throughout; commutation is
//! decided by the generalized symplectic product, a rational taken mod 1.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{Integer, Zero};
use thiserror::Error;

use crate::exact::ExactRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("device needs at least one register")]
    EmptyDevice,
    #[error("register modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("operands live on different devices")]
    DeviceMismatch,
    #[error("exponent vector has length {got}, device has {expected} registers")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent {value} out of range for register {register} (modulus {modulus})")]
    ExponentOutOfRange { register: usize, value: u64, modulus: u64 },
}

/// Ordered list of finite register moduli `Q_i >= 2`.
///
/// Cheap to clone; two devices compare equal when their moduli agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Device {
    moduli: Arc<[u64]>,
}

impl Device {
    pub fn new(moduli: Vec<u64>) -> Result<Self, PauliError> {
        if moduli.is_empty() {
            return Err(PauliError::EmptyDevice);
        }
        if let Some(&q) = moduli.iter().find(|&&q| q < 2) {
            return Err(PauliError::ModulusTooSmall(q));
        }
        Ok(Device { moduli: moduli.into() })
    }

    pub fn registers(&self) -> usize {
        self.moduli.len()
    }

    pub fn modulus(&self, register: usize) -> u64 {
        self.moduli[register]
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Least common multiple of the register moduli.
    pub fn lcm(&self) -> u64 {
        let l = self.moduli.iter().fold(1u128, |acc, &q| acc.lcm(&(q as u128)));
        u64::try_from(l).expect("lcm of register moduli exceeds u64")
    }

    /// Total Hilbert-space dimension, the product of all moduli.
    pub fn dimension(&self) -> BigInt {
        self.moduli.iter().fold(BigInt::from(1u8), |acc, &q| acc * q)
    }
}

impl fmt::Debug for Device {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Device{:?}", &self.moduli[..])
    }
}

/// A Pauli operator mod phases: per-register shift and clock exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliVec {
    device: Device,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliVec {
    pub fn identity(device: &Device) -> Self {
        let n = device.registers();
        PauliVec { device: device.clone(), x: vec![0; n], z: vec![0; n] }
    }

    pub fn new(device: &Device, x: Vec<u64>, z: Vec<u64>) -> Result<Self, PauliError> {
        let n = device.registers();
        for v in [&x, &z] {
            if v.len() != n {
                return Err(PauliError::LengthMismatch { expected: n, got: v.len() });
            }
        }
        for (reg, (&q, (&xv, &zv))) in device.moduli().iter().zip(x.iter().zip(&z)).enumerate() {
            for value in [xv, zv] {
                if value >= q {
                    return Err(PauliError::ExponentOutOfRange { register: reg, value, modulus: q });
                }
            }
        }
        Ok(PauliVec { device: device.clone(), x, z })
    }

    /// Single-register operator `X^xp Z^zp` on `register`, identity elsewhere.
    pub fn single(device: &Device, register: usize, xp: u64, zp: u64) -> Result<Self, PauliError> {
        let mut x = vec![0; device.registers()];
        let mut z = vec![0; device.registers()];
        x[register] = xp;
        z[register] = zp;
        PauliVec::new(device, x, z)
    }

    pub fn device(&self) -> &Device {
        &self.device
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn z(&self) -> &[u64] {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&v| v == 0) && self.z.iter().all(|&v| v == 0)
    }

    /// Group composition: entrywise sum with per-register moduli applied.
    pub fn compose(&self, other: &PauliVec) -> Result<PauliVec, PauliError> {
        if self.device != other.device {
            return Err(PauliError::DeviceMismatch);
        }
        let mut out = self.clone();
        out.mul_assign(other);
        Ok(out)
    }

    pub(crate) fn mul_assign(&mut self, other: &PauliVec) {
        debug_assert_eq!(self.device, other.device);
        for (i, &q) in self.device.moduli().iter().enumerate() {
            self.x[i] = (self.x[i] + other.x[i]) % q;
            self.z[i] = (self.z[i] + other.z[i]) % q;
        }
    }

    /// `k`-th power; negative `k` gives inverse powers.
    pub fn power(&self, k: i64) -> PauliVec {
        self.power_i128(k as i128)
    }

    pub(crate) fn power_i128(&self, k: i128) -> PauliVec {
        let mut out = self.clone();
        for (i, &q) in self.device.moduli().iter().enumerate() {
            let q = q as i128;
            out.x[i] = ((self.x[i] as i128 * k).rem_euclid(q)) as u64;
            out.z[i] = ((self.z[i] as i128 * k).rem_euclid(q)) as u64;
        }
        out
    }

    pub fn inverse(&self) -> PauliVec {
        self.power(-1)
    }

    /// Power with an arbitrary-precision exponent.
    pub(crate) fn power_big(&self, k: &BigInt) -> PauliVec {
        let mut out = self.clone();
        for (i, &q) in self.device.moduli().iter().enumerate() {
            let qb = BigInt::from(q);
            let kx = (BigInt::from(self.x[i]) * k).mod_floor(&qb);
            let kz = (BigInt::from(self.z[i]) * k).mod_floor(&qb);
            out.x[i] = u64::try_from(kx).expect("reduced exponent fits u64");
            out.z[i] = u64::try_from(kz).expect("reduced exponent fits u64");
        }
        out
    }

    /// Smallest `t >= 1` with `self^t = identity`: per register
    /// `Q / gcd(Q, x, z)`, combined by lcm.
    pub fn order(&self) -> u64 {
        let mut acc: u128 = 1;
        for (i, &q) in self.device.moduli().iter().enumerate() {
            let g = q.gcd(&self.x[i]).gcd(&self.z[i]);
            acc = acc.lcm(&((q / g) as u128));
        }
        u64::try_from(acc).expect("pauli order exceeds u64")
    }

    /// Number of registers acted on non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.device.registers()).filter(|&i| self.x[i] != 0 || self.z[i] != 0).count()
    }

    /// Generalized symplectic product, canonical in `[0, 1)`:
    /// `sum_h (x_a[h] z_b[h] - x_b[h] z_a[h]) / Q_h mod 1`.
    pub fn symp(&self, other: &PauliVec) -> Result<ExactRational, PauliError> {
        if self.device != other.device {
            return Err(PauliError::DeviceMismatch);
        }
        Ok(self.symp_unchecked(other))
    }

    pub(crate) fn symp_unchecked(&self, other: &PauliVec) -> ExactRational {
        let mut acc = ExactRational::zero();
        for (h, &q) in self.device.moduli().iter().enumerate() {
            let num = BigInt::from(self.x[h]) * other.z[h] - BigInt::from(other.x[h]) * self.z[h];
            if !num.is_zero() {
                acc = &acc + &ExactRational::new(num, q);
            }
        }
        acc.mod_one()
    }

    /// True iff the symplectic product vanishes mod 1.
    pub fn commutes(&self, other: &PauliVec) -> Result<bool, PauliError> {
        if self.device != other.device {
            return Err(PauliError::DeviceMismatch);
        }
        Ok(self.commutes_unchecked(other))
    }

    /// Overflow-checked integer path: `sum (L/Q_h)(x_a z_b - x_b z_a) mod L`.
    pub(crate) fn commutes_unchecked(&self, other: &PauliVec) -> bool {
        let l = self.device.lcm() as u128;
        let mut acc: u128 = 0;
        let mut overflow = false;
        for (h, &q) in self.device.moduli().iter().enumerate() {
            let q = q as u128;
            let scale = l / q;
            let pos = (self.x[h] as u128 % q)
                .checked_mul(other.z[h] as u128 % q)
                .and_then(|t| (t % q).checked_mul(scale));
            let neg = (other.x[h] as u128 % q)
                .checked_mul(self.z[h] as u128 % q)
                .and_then(|t| (t % q).checked_mul(scale));
            match (pos, neg) {
                (Some(p), Some(n)) => {
                    acc = (acc + p % l + (l - n % l)) % l;
                }
                _ => {
                    overflow = true;
                    break;
                }
            }
        }
        if overflow {
            return self.symp_unchecked(other).is_zero();
        }
        acc == 0
    }

    /// The 2n exponent vector `(x_1..x_n, z_1..z_n)`.
    pub(crate) fn exponents(&self) -> Vec<BigInt> {
        self.x.iter().chain(&self.z).map(|&v| BigInt::from(v)).collect()
    }

    /// Rebuilds an operator from an arbitrary integer exponent vector,
    /// reducing each entry mod its register modulus.
    pub(crate) fn from_exponents(device: &Device, exps: &[BigInt]) -> PauliVec {
        let n = device.registers();
        debug_assert_eq!(exps.len(), 2 * n);
        let reduce = |v: &BigInt, q: u64| -> u64 {
            let r = v.mod_floor(&BigInt::from(q));
            u64::try_from(r).expect("reduced exponent fits u64")
        };
        let x = (0..n).map(|i| reduce(&exps[i], device.modulus(i))).collect();
        let z = (0..n).map(|i| reduce(&exps[n + i], device.modulus(i))).collect();
        PauliVec { device: device.clone(), x, z }
    }

    /// Product `prod_i gens[i]^coeffs[i]` with arbitrary-precision exponents.
    pub(crate) fn combine(device: &Device, gens: &[PauliVec], coeffs: &[BigInt]) -> PauliVec {
        debug_assert_eq!(gens.len(), coeffs.len());
        let mut out = PauliVec::identity(device);
        for (g, c) in gens.iter().zip(coeffs) {
            if !c.is_zero() {
                out.mul_assign(&g.power_big(c));
            }
        }
        out
    }
}

impl fmt::Display for PauliVec {
    /// Renders as `x1 x2 ... xn / z1 z2 ... zn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " /")?;
        for v in &self.z {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Matrix of pairwise symplectic products, entries canonical in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutatorMatrix {
    size: usize,
    entries: Vec<ExactRational>,
}

impl CommutatorMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactRational::is_zero)
    }

    pub fn rows(&self) -> Vec<Vec<ExactRational>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.entry(i, j).clone()).collect()).collect()
    }
}

impl fmt::Display for CommutatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            for j in 0..self.size {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            if i + 1 < self.size {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Pairwise symplectic products of a generator list.
pub fn commutator_matrix(gens: &[PauliVec]) -> Result<CommutatorMatrix, PauliError> {
    let k = gens.len();
    let mut entries = vec![ExactRational::zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                entries[i * k + j] = gens[i].symp(&gens[j])?;
            }
        }
    }
    Ok(CommutatorMatrix { size: k, entries })
}
