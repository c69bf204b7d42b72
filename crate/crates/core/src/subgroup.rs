//! Exponent-lattice machinery shared by the decomposition and analysis code.
//!
//! A generator set on an n-register device spans a lattice in Z^{2n} once the
//! modulus relations `Q_i e_i` are adjoined. Group order, membership, and
//! minimal generating sets all reduce to exact integer linear algebra on that
//! lattice (Hermite form for membership and index, Smith form for structure).

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::exact::{hnf, IntMatrix, SmithDecomposition};
use crate::pauli::{Device, PauliVec};

/// Rows `Q_i e_i` for both the shift and clock halves of Z^{2n}.
fn modulus_relations(device: &Device) -> IntMatrix {
    let n = device.registers();
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, i, BigInt::from(device.modulus(i)));
        m.set(n + i, n + i, BigInt::from(device.modulus(i)));
    }
    m
}

fn generator_rows(device: &Device, gens: &[PauliVec]) -> IntMatrix {
    let n = device.registers();
    let mut m = IntMatrix::zeros(gens.len(), 2 * n);
    for (r, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.device(), device);
        for (c, v) in g.exponents().into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// The full-rank lattice spanned by a generator set plus modulus relations,
/// held as a square upper-triangular Hermite basis.
pub(crate) struct ExponentLattice {
    device: Device,
    basis: IntMatrix,
}

impl ExponentLattice {
    pub(crate) fn new(device: &Device, gens: &[PauliVec]) -> Self {
        let stacked = generator_rows(device, gens).vstack(&modulus_relations(device));
        let (h, _u) = hnf(&stacked);
        let dim = 2 * device.registers();
        // modulus relations make the lattice full rank: exactly dim nonzero rows
        let mut basis = IntMatrix::zeros(dim, dim);
        for r in 0..dim {
            debug_assert!(!h.is_zero_row(r));
            for c in 0..dim {
                basis.set(r, c, h.at(r, c).clone());
            }
        }
        ExponentLattice { device: device.clone(), basis }
    }

    /// Index of the lattice in Z^{2n}: the product of the Hermite diagonal.
    pub(crate) fn index(&self) -> BigInt {
        let dim = self.basis.rows();
        (0..dim).fold(BigInt::one(), |acc, i| acc * self.basis.at(i, i))
    }

    /// Integer coordinates of `vec` in the Hermite basis, if `vec` lies in
    /// the lattice.
    fn coordinates(&self, vec: &[BigInt]) -> Option<Vec<BigInt>> {
        let dim = self.basis.rows();
        debug_assert_eq!(vec.len(), dim);
        let mut rem = vec.to_vec();
        let mut coords = Vec::with_capacity(dim);
        for i in 0..dim {
            let pivot = self.basis.at(i, i);
            let (q, r) = rem[i].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for c in i..dim {
                rem[c] = &rem[c] - &q * self.basis.at(i, c);
            }
            coords.push(q);
        }
        debug_assert!(rem.iter().all(Zero::is_zero));
        Some(coords)
    }

    pub(crate) fn contains_vec(&self, vec: &[BigInt]) -> bool {
        self.coordinates(vec).is_some()
    }

    pub(crate) fn contains(&self, p: &PauliVec) -> bool {
        debug_assert_eq!(p.device(), &self.device);
        self.contains_vec(&p.exponents())
    }

    pub(crate) fn basis(&self) -> &IntMatrix {
        &self.basis
    }
}

/// Exact order of the subgroup generated mod phases:
/// `prod Q_i^2 / [Z^{2n} : lattice]`.
pub(crate) fn group_order(device: &Device, gens: &[PauliVec]) -> BigInt {
    let idx = ExponentLattice::new(device, gens).index();
    let full = device.dimension().pow(2);
    let (q, r) = full.div_rem(&idx);
    debug_assert!(r.is_zero(), "lattice index must divide the full group order");
    q
}

/// Minimal generating set for the finite abelian group generated by `elems`
/// (mod phases). The group is the lattice quotient `L / Lambda_Q`; Smith form
/// of the coordinates of `Lambda_Q` in a basis of `L` yields one generator per
/// nontrivial invariant factor.
pub(crate) fn minimal_generating_set(device: &Device, elems: &[PauliVec]) -> Vec<PauliVec> {
    if elems.iter().all(PauliVec::is_identity) {
        return Vec::new();
    }
    let lattice = ExponentLattice::new(device, elems);
    let relations = modulus_relations(device);
    let dim = 2 * device.registers();

    // C with C * basis = relations, row by row
    let mut c = IntMatrix::zeros(dim, dim);
    for r in 0..dim {
        let coords = lattice
            .coordinates(relations.row(r))
            .expect("modulus relations lie in the lattice");
        for (col, v) in coords.into_iter().enumerate() {
            c.set(r, col, v);
        }
    }

    let smith = SmithDecomposition::compute(&c);
    let gens_matrix = smith.v_inv.mul(lattice.basis());
    let mut out = Vec::new();
    for i in 0..dim {
        if smith.s.at(i, i).is_one() {
            continue;
        }
        let p = PauliVec::from_exponents(device, gens_matrix.row(i));
        debug_assert!(!p.is_identity());
        out.push(p);
    }
    out
}

/// Basis rows for `{ c in Z^k : c * m = 0 mod l }` (a full-rank lattice in Z^k).
pub(crate) fn left_kernel_mod(m: &IntMatrix, l: &BigInt) -> Vec<Vec<BigInt>> {
    let k = m.rows();
    let cols = m.cols();
    let mut scaled = IntMatrix::zeros(cols, cols);
    for i in 0..cols {
        scaled.set(i, i, l.clone());
    }
    let stacked = m.vstack(&scaled);
    let (h, u) = hnf(&stacked);
    let mut out = Vec::new();
    for r in 0..h.rows() {
        if h.is_zero_row(r) {
            out.push(u.row(r)[..k].to_vec());
        }
    }
    debug_assert_eq!(out.len(), k, "kernel lattice must have full rank");
    out
}
