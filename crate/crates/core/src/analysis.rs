//! Parameter computation and structural transforms for stabilizer codes:
//! group order, membership, logical dimension, centralizer, brute-force
//! distance, and the coprime generator-splitting transform.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Integer, Zero};
use thiserror::Error;

use crate::construct::StabilizerCode;
use crate::exact::IntMatrix;
use crate::pauli::{Device, PauliVec};
use crate::subgroup::{self, left_kernel_mod, minimal_generating_set, ExponentLattice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("device moduli do not split into coprime blocks: registers {0} and {1} share a prime but differ in prime support")]
    NotBlockCoprime(usize, usize),
}

/// Derived parameters of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub registers: usize,
    pub group_order: BigInt,
    pub logical_count: BigInt,
    pub distance: Option<usize>,
}

/// Exact order of the subgroup generated mod phases, via the index of the
/// exponent lattice in Z^{2n}.
pub fn group_order(device: &Device, gens: &[PauliVec]) -> BigInt {
    subgroup::group_order(device, gens)
}

/// Membership of `p` in the subgroup generated by `gens`, mod phases.
pub fn contains(device: &Device, gens: &[PauliVec], p: &PauliVec) -> bool {
    ExponentLattice::new(device, gens).contains(p)
}

/// Logical dimension `K = prod Q_i / |<generators>|`.
pub fn logical_count(code: &StabilizerCode) -> BigInt {
    let order = group_order(code.device(), code.generators());
    let (k, rem) = code.device().dimension().div_rem(&order);
    debug_assert!(rem.is_zero(), "group order divides the total dimension");
    k
}

/// Generating set for the centralizer: all operators whose symplectic product
/// with every generator vanishes mod 1.
///
/// An exponent vector `v` centralizes iff `v * M = 0 mod L` where column `i`
/// of `M` holds the symplectic image of generator `i` scaled by `L/Q_h`, so
/// the centralizer is a kernel lattice reduced to a minimal generating set.
pub fn centralizer(code: &StabilizerCode) -> Vec<PauliVec> {
    let device = code.device();
    let gens = code.generators();
    let n = device.registers();
    let l = device.lcm();
    let lb = BigInt::from(l);

    let mut m = IntMatrix::zeros(2 * n, gens.len());
    for (col, g) in gens.iter().enumerate() {
        for h in 0..n {
            let scale = BigInt::from(l / device.modulus(h));
            // d/dv_x[h]: +g_z[h]/Q_h, d/dv_z[h]: -g_x[h]/Q_h
            m.set(h, col, (&scale * g.z()[h]).mod_floor(&lb));
            m.set(n + h, col, (-(&scale * g.x()[h])).mod_floor(&lb));
        }
    }
    let kernel = left_kernel_mod(&m, &lb);
    let members: Vec<PauliVec> =
        kernel.iter().map(|row| PauliVec::from_exponents(device, row)).collect();
    minimal_generating_set(device, &members)
}

/// A minimum-weight undetected logical operator found by the distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceWitness {
    pub distance: usize,
    pub operator: PauliVec,
}

/// Brute-force code distance: the minimum weight of an operator commuting
/// with every generator but lying outside the stabilizer group, searched by
/// increasing weight up to `max_weight`. `None` when no such operator exists
/// within the cap (in particular whenever `K = 1`).
///
/// Deterministic: among minimum-weight witnesses the lexicographically least
/// exponent vector `(x_1..x_n, z_1..z_n)` is returned.
pub fn distance(code: &StabilizerCode, max_weight: usize) -> Option<DistanceWitness> {
    let device = code.device();
    let gens = code.generators();
    let lattice = ExponentLattice::new(device, gens);
    let n = device.registers();

    for weight in 1..=max_weight.min(n) {
        let mut best: Option<PauliVec> = None;
        let mut support: Vec<usize> = (0..weight).collect();
        loop {
            scan_support(code, &lattice, &support, &mut best);
            if !advance_combination(&mut support, n) {
                break;
            }
        }
        if let Some(operator) = best {
            return Some(DistanceWitness { distance: weight, operator });
        }
    }
    None
}

/// Lexicographically next k-combination of `0..n`.
fn advance_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] + 1 <= n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances one register's (x, z) pair through all non-identity values;
/// returns true on wrap-around (carry).
fn advance_slot(pair: &mut (u64, u64), q: u64) -> bool {
    let (mut x, mut z) = *pair;
    z += 1;
    if z == q {
        z = 0;
        x += 1;
    }
    if x == q {
        *pair = (0, 1);
        return true;
    }
    *pair = (x, z);
    false
}

/// Enumerates all operators supported exactly on `support`, keeping the
/// lexicographically least valid witness.
fn scan_support(
    code: &StabilizerCode,
    stabilizer: &ExponentLattice,
    support: &[usize],
    best: &mut Option<PauliVec>,
) {
    let device = code.device();
    let n = device.registers();
    let w = support.len();
    let mut local: Vec<(u64, u64)> = vec![(0, 1); w];
    loop {
        let mut x = vec![0u64; n];
        let mut z = vec![0u64; n];
        for (slot, &reg) in support.iter().enumerate() {
            x[reg] = local[slot].0;
            z[reg] = local[slot].1;
        }
        let candidate = PauliVec::new(device, x, z).expect("exponents in range");
        let undetected = code.generators().iter().all(|g| candidate.commutes_unchecked(g));
        if undetected && !stabilizer.contains(&candidate) {
            let better = best.as_ref().is_none_or(|b| lex_key(&candidate) < lex_key(b));
            if better {
                *best = Some(candidate);
            }
        }
        let mut slot = w;
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            if !advance_slot(&mut local[slot], device.modulus(support[slot])) {
                break;
            }
        }
    }
}

fn lex_key(p: &PauliVec) -> Vec<u64> {
    p.x().iter().chain(p.z()).copied().collect()
}

/// Full parameter report; the distance search runs only when a cap is given.
pub fn code_params(code: &StabilizerCode, distance_cap: Option<usize>) -> CodeParams {
    let order = group_order(code.device(), code.generators());
    let logical = logical_count(code);
    let distance = distance_cap.and_then(|cap| distance(code, cap).map(|w| w.distance));
    CodeParams {
        registers: code.device().registers(),
        group_order: order,
        logical_count: logical,
        distance,
    }
}

/// Prime support of a modulus.
fn prime_set(mut q: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            out.insert(p);
            while q % p == 0 {
                q /= p;
            }
        }
        p += 1;
    }
    if q > 1 {
        out.insert(q);
    }
    out
}

/// Rewrites a code over block-coprime moduli into an equivalent one whose
/// generators each touch a single block.
///
/// Registers form blocks of equal prime support; distinct blocks must be
/// coprime. Each generator is replaced by its `(Q/Q_block)`-th powers, one
/// per block, which kills all support outside that block while generating
/// the same group; the list is then pruned greedily by membership.
pub fn split_coprime(code: &StabilizerCode) -> Result<StabilizerCode, AnalysisError> {
    let device = code.device();
    let n = device.registers();
    let primes: Vec<BTreeSet<u64>> = device.moduli().iter().map(|&q| prime_set(q)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let disjoint = primes[i].is_disjoint(&primes[j]);
            if !disjoint && primes[i] != primes[j] {
                return Err(AnalysisError::NotBlockCoprime(i, j));
            }
        }
    }
    let mut blocks: Vec<BTreeSet<u64>> = Vec::new();
    let mut block_of = vec![0usize; n];
    for i in 0..n {
        match blocks.iter().position(|b| *b == primes[i]) {
            Some(idx) => block_of[i] = idx,
            None => {
                blocks.push(primes[i].clone());
                block_of[i] = blocks.len() - 1;
            }
        }
    }

    // Q_block = lcm of the block's register moduli; blocks are coprime so
    // the global lcm factors as their product
    let mut block_lcm = vec![1u64; blocks.len()];
    for i in 0..n {
        block_lcm[block_of[i]] = block_lcm[block_of[i]].lcm(&device.modulus(i));
    }
    let total: u64 = block_lcm.iter().product();

    let mut rows: Vec<PauliVec> = Vec::new();
    for (b, &q_block) in block_lcm.iter().enumerate() {
        let factor = BigInt::from(total / q_block);
        for g in code.generators() {
            let scaled = g.power_big(&factor);
            debug_assert!((0..n).all(|i| block_of[i] == b
                || (scaled.x()[i] == 0 && scaled.z()[i] == 0)));
            rows.push(scaled);
        }
    }

    // greedy pruning in input order; dropped rows are redundant by membership
    let mut kept: Vec<PauliVec> = Vec::new();
    for row in rows {
        if row.is_identity() {
            continue;
        }
        if kept.is_empty() || !ExponentLattice::new(device, &kept).contains(&row) {
            kept.push(row);
        }
    }
    Ok(StabilizerCode::new(device, kept).expect("powers of commuting generators commute"))
}
