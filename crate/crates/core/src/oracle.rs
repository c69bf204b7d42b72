//! Dense complex-matrix ground truth for small devices.
//!
//! Everything exact elsewhere in the crate has a numerical counterpart here:
//! Pauli operators as clock-and-shift matrices, codespace projectors built
//! from per-generator averages, codewords as projected basis states, and the
//! Hilbert-Schmidt expansion of a conjugated Pauli. Double precision with a
//! global tolerance of 1e-9 and a hard dimension cap.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::ToPrimitive;
use thiserror::Error;

use crate::construct::StabilizerCode;
use crate::exact::ExactRational;
use crate::pauli::{Device, PauliVec};
use crate::subgroup::minimal_generating_set;

/// Hard cap on the Hilbert-space dimension handled by this module.
pub const DIMENSION_CAP: usize = 1024;

/// Global numerical tolerance.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("dimension {0} exceeds the cap of {DIMENSION_CAP}")]
    DimensionCap(u128),
    #[error("operator dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operator is not unitary within tolerance")]
    NotUnitary,
    #[error("projector trace is not within tolerance of an integer")]
    NonIntegerTrace,
    #[error("seed state has zero projection onto the codespace")]
    ZeroProjection,
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Result<Self, OracleError> {
        if dim > DIMENSION_CAP {
            return Err(OracleError::DimensionCap(dim as u128));
        }
        Ok(DenseOperator { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self, OracleError> {
        let mut m = DenseOperator::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator, OracleError> {
        if self.dim != other.dim {
            return Err(OracleError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = DenseOperator::zeros(n)?;
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn dagger(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = DenseOperator::zeros(n).expect("dimension already admitted");
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `self^2` from `self`.
    pub fn idempotence_residual(&self) -> f64 {
        let sq = self.mul(self).expect("same dimension");
        sq.max_deviation(self)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_deviation(&self.dagger())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = DenseOperator::identity(self.dim).expect("dimension already admitted");
        match self.mul(&self.dagger()) {
            Ok(prod) => prod.max_deviation(&id) <= tol,
            Err(_) => false,
        }
    }
}

/// Complex state vector of unit norm (after [`codeword`] normalization).
#[derive(Clone, Debug)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn admitted_dimension(device: &Device) -> Result<usize, OracleError> {
    let dim = device.moduli().iter().try_fold(1u128, |acc, &q| acc.checked_mul(q as u128));
    match dim {
        Some(d) if d <= DIMENSION_CAP as u128 => Ok(d as usize),
        Some(d) => Err(OracleError::DimensionCap(d)),
        None => Err(OracleError::DimensionCap(u128::MAX)),
    }
}

/// Basis index of `|j_1 ... j_n>` with register 1 the most significant
/// factor: `sum j_i * prod_{k>i} Q_k`.
pub fn basis_index(device: &Device, digits: &[u64]) -> Result<usize, OracleError> {
    let dim = admitted_dimension(device)?;
    assert_eq!(digits.len(), device.registers(), "one digit per register");
    let mut index = 0usize;
    for (i, &d) in digits.iter().enumerate() {
        let q = device.modulus(i) as usize;
        assert!((d as usize) < q, "digit {d} out of range for modulus {q}");
        index = index * q + d as usize;
    }
    debug_assert!(index < dim);
    Ok(index)
}

fn digits_of(device: &Device, mut index: usize) -> Vec<u64> {
    let n = device.registers();
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        let q = device.modulus(i) as usize;
        out[i] = (index % q) as u64;
        index /= q;
    }
    out
}

/// Column action of a Pauli on basis state `col`: the image index under the
/// shifts and the clock phase `exp(2*pi*i * sum z_i j_i / Q_i)`.
fn column_action(p: &PauliVec, col: usize) -> (usize, Complex64) {
    let device = p.device();
    let digits = digits_of(device, col);
    let mut target = 0usize;
    let mut phase = ExactRational::zero();
    for (i, &j) in digits.iter().enumerate() {
        let q = device.modulus(i);
        target = target * q as usize + ((j + p.x()[i]) % q) as usize;
        if p.z()[i] != 0 && j != 0 {
            phase = &phase + &ExactRational::new(p.z()[i] as u128 * j as u128, q);
        }
    }
    let angle = 2.0 * std::f64::consts::PI * phase.mod_one().to_f64();
    (target, Complex64::new(angle.cos(), angle.sin()))
}

/// Dense matrix of a Pauli operator: per register `shift^x * clock^z`,
/// register 1 as the most significant tensor factor.
pub fn pauli_matrix(p: &PauliVec) -> Result<DenseOperator, OracleError> {
    let dim = admitted_dimension(p.device())?;
    let mut m = DenseOperator::zeros(dim)?;
    for col in 0..dim {
        let (row, phase) = column_action(p, col);
        m.set(row, col, phase);
    }
    Ok(m)
}

/// Left-multiplies `m` by the matrix of `p` in place: a row permutation with
/// phases, costing one pass over the entries.
fn apply_pauli_left(p: &PauliVec, m: &DenseOperator) -> DenseOperator {
    let dim = m.dim();
    let mut out = DenseOperator::zeros(dim).expect("dimension already admitted");
    for src in 0..dim {
        let (dst, phase) = column_action(p, src);
        for c in 0..dim {
            out.entries[dst * dim + c] = phase * m.entries[src * dim + c];
        }
    }
    out
}

fn apply_pauli_to_state(p: &PauliVec, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (src, amp) in v.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let (dst, phase) = column_action(p, src);
        out[dst] += phase * amp;
    }
    out
}

/// The `ord` powers of a phase-corrected lift of `h`, as reduced exponent
/// vectors with the accompanying scalar phases.
///
/// The canonical matrix `M` of a Pauli class satisfies `M^ord = lambda*I`
/// with `lambda` a root of unity (`(X^x Z^z)^m` picks up
/// `omega^{x z m(m-1)/2}` per register), so the honest group element is
/// `exp(-2 pi i theta/ord) * M` with `lambda = exp(2 pi i theta)`. The j-th
/// power is then a reduced exponent vector times an exactly known phase.
fn lift_powers(h: &PauliVec) -> Vec<(PauliVec, Complex64)> {
    let device = h.device();
    let ord = h.order();
    let pair_fraction = |m: u64| -> ExactRational {
        // sum_i x_i z_i m(m-1)/2 / Q_i, the reordering phase of the m-th power
        let half = BigInt::from(m) * (m - 1) / 2u8;
        let mut acc = ExactRational::zero();
        for (i, &q) in device.moduli().iter().enumerate() {
            if h.x()[i] != 0 && h.z()[i] != 0 {
                let num = BigInt::from(h.x()[i]) * h.z()[i] * &half;
                acc = &acc + &ExactRational::new(num, q);
            }
        }
        acc.mod_one()
    };
    let theta = pair_fraction(ord);
    // per-step correction c with (e^{2 pi i c} M)^ord = I, principal branch
    let correction = ExactRational::new(
        -theta.numerator().clone(),
        theta.denominator() * BigInt::from(ord),
    );
    (0..ord)
        .map(|j| {
            let frac = (&(&pair_fraction(j) + &(correction.clone() * ExactRational::from_integer(j)))).mod_one();
            let angle = 2.0 * std::f64::consts::PI * frac.to_f64();
            (h.power_big(&BigInt::from(j)), Complex64::from_polar(1.0, angle))
        })
        .collect()
}

/// Codespace projector as a product of per-generator averages
/// `(1/ord) sum_j g~^j` over a canonical independent generating basis of the
/// stabilizer group, with each basis lift `g~` phase-corrected to exact
/// order.
///
/// Averaging an independent basis makes the projector a function of the
/// group alone: any generating set of the same group yields the same matrix,
/// and the trace equals the logical dimension.
pub fn projector(code: &StabilizerCode) -> Result<DenseOperator, OracleError> {
    let dim = admitted_dimension(code.device())?;
    let basis = minimal_generating_set(code.device(), code.generators());
    let mut m = DenseOperator::identity(dim)?;
    for h in &basis {
        let powers = lift_powers(h);
        let mut acc = DenseOperator::zeros(dim)?;
        for (vec, phase) in &powers {
            let term = apply_pauli_left(vec, &m);
            for (a, t) in acc.entries.iter_mut().zip(&term.entries) {
                *a += phase * t;
            }
        }
        let scale = 1.0 / powers.len() as f64;
        for a in &mut acc.entries {
            *a *= scale;
        }
        m = acc;
    }
    Ok(m)
}

/// Codespace dimension: the projector trace rounded to the nearest integer,
/// which must lie within tolerance.
pub fn codespace_dim(code: &StabilizerCode) -> Result<usize, OracleError> {
    let tr = projector(code)?.trace();
    let rounded = tr.re.round();
    if (tr.re - rounded).abs() > TOLERANCE || tr.im.abs() > TOLERANCE || rounded < 0.0 {
        return Err(OracleError::NonIntegerTrace);
    }
    Ok(rounded.to_usize().expect("trace fits usize"))
}

/// Normalized projection of the seed basis state onto the codespace; same
/// canonical-basis averaging as [`projector`], applied to a vector.
pub fn codeword(code: &StabilizerCode, seed: usize) -> Result<StateVector, OracleError> {
    let dim = admitted_dimension(code.device())?;
    assert!(seed < dim, "seed index out of range");
    let basis = minimal_generating_set(code.device(), code.generators());
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[seed] = Complex64::new(1.0, 0.0);
    for h in &basis {
        let powers = lift_powers(h);
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        for (vec, phase) in &powers {
            let term = apply_pauli_to_state(vec, &v);
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += phase * t;
            }
        }
        let scale = 1.0 / powers.len() as f64;
        acc.iter_mut().for_each(|a| *a *= scale);
        v = acc;
    }
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm <= TOLERANCE {
        return Err(OracleError::ZeroProjection);
    }
    v.iter_mut().for_each(|a| *a /= norm);
    Ok(StateVector { amplitudes: v })
}

/// The controlled shift `sum_j |j><j| (x) shift^j` on a `q1*q2`-dimensional
/// space.
pub fn controlled_shift(q1: u64, q2: u64) -> Result<DenseOperator, OracleError> {
    let dim = (q1 as u128).checked_mul(q2 as u128).ok_or(OracleError::DimensionCap(u128::MAX))?;
    if dim > DIMENSION_CAP as u128 {
        return Err(OracleError::DimensionCap(dim));
    }
    let mut m = DenseOperator::zeros(dim as usize)?;
    for j in 0..q1 {
        for k in 0..q2 {
            let col = (j * q2 + k) as usize;
            let row = (j * q2 + (k + j) % q2) as usize;
            m.set(row, col, Complex64::new(1.0, 0.0));
        }
    }
    Ok(m)
}

/// Expands the conjugate of `p` by `u` in the Pauli basis of `p`'s device
/// via Hilbert-Schmidt inner products, keeping terms above tolerance.
///
/// Heisenberg orientation: the operator propagated through the gate is
/// `u^dag * P * u`, so a control-target entangler maps the target clock to a
/// sum weighted by `(1 + w)/2` and `(1 - w)/2` rather than their conjugates.
pub fn conjugate_decompose(
    u: &DenseOperator,
    p: &PauliVec,
) -> Result<Vec<(Complex64, PauliVec)>, OracleError> {
    let device = p.device();
    let dim = admitted_dimension(device)?;
    if u.dim() != dim {
        return Err(OracleError::DimensionMismatch(u.dim(), dim));
    }
    if !u.is_unitary(TOLERANCE) {
        return Err(OracleError::NotUnitary);
    }
    let conjugated = u.dagger().mul(&pauli_matrix(p)?)?.mul(u)?;

    let n = device.registers();
    let mut exponents = vec![0u64; 2 * n];
    let mut terms = Vec::new();
    loop {
        let q = PauliVec::new(device, exponents[..n].to_vec(), exponents[n..].to_vec())
            .expect("exponents in range");
        // tr(q^dag A)/dim along the permutation support of q
        let mut inner = Complex64::new(0.0, 0.0);
        for col in 0..dim {
            let (row, phase) = column_action(&q, col);
            inner += phase.conj() * conjugated.at(row, col);
        }
        inner /= dim as f64;
        if inner.norm() > TOLERANCE {
            terms.push((inner, q));
        }
        // odometer over the 2n exponents
        let mut slot = 2 * n;
        loop {
            if slot == 0 {
                return Ok(terms);
            }
            slot -= 1;
            let q_mod = device.modulus(slot % n);
            exponents[slot] += 1;
            if exponents[slot] < q_mod {
                break;
            }
            exponents[slot] = 0;
        }
    }
}
