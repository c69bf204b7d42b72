//! Stabilizer-code constructions.
//!
//! `resolve` turns an arbitrary (possibly non-commuting) generator set into a
//! code by appending one register of modulus `d_i` per hyperbolic pair of its
//! decomposition, dressing `U_i` with a shift and `V_i` with an inverse
//! clock. `scan` joins two codes of coprime uniform moduli on an overlapping
//! register set whose moduli become the product, with exponents scaled to
//! preserve generator orders. `embed_scale` is the uniform-modulus embedding
//! `q -> L` that multiplies every exponent by `L/q`.

use std::collections::BTreeSet;

use num::Integer;
use thiserror::Error;

use crate::decompose::{amalgamate, gram_schmidt};
use crate::exact::rational_rank;
use crate::pauli::{commutator_matrix, Device, PauliVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generator lives on a different device")]
    DeviceMismatch,
    #[error("code moduli must all equal {expected}, found {found}")]
    NonUniformModulus { expected: u64, found: u64 },
    #[error("moduli {0} and {1} must be coprime")]
    NonCoprimeModuli(u64, u64),
    #[error("scan map is invalid: {0}")]
    InvalidMap(String),
    #[error("modulus {q} does not divide embedding target {l}")]
    NonDivisibleEmbedding { q: u64, l: u64 },
    #[error(transparent)]
    Pauli(#[from] crate::pauli::PauliError),
}

/// A device together with a list of pairwise commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    device: Device,
    generators: Vec<PauliVec>,
}

impl StabilizerCode {
    /// Validates that every generator pair commutes (symplectic product zero
    /// mod 1) before accepting the code.
    pub fn new(device: &Device, generators: Vec<PauliVec>) -> Result<Self, ConstructError> {
        for g in &generators {
            if g.device() != device {
                return Err(ConstructError::DeviceMismatch);
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_unchecked(&generators[j]) {
                    return Err(ConstructError::NonCommuting(i, j));
                }
            }
        }
        Ok(StabilizerCode { device: device.clone(), generators })
    }

    pub fn device(&self) -> &Device {
        &self.device
    }

    pub fn generators(&self) -> &[PauliVec] {
        &self.generators
    }

    /// The single modulus of a uniform device, if there is one.
    pub fn uniform_modulus(&self) -> Option<u64> {
        let q = self.device.modulus(0);
        self.device.moduli().iter().all(|&m| m == q).then_some(q)
    }
}

/// Non-commutativity resolution: decompose, amalgamate, then append one
/// register of modulus `d_i` per hyperbolic pair. Isotropic generators are
/// padded with the identity, `U_i` gains `X` on its new register and `V_i`
/// gains `Z^{-1}`, so each pair's `1/d_i` is cancelled exactly.
pub fn resolve(device: &Device, gens: &[PauliVec]) -> StabilizerCode {
    let decomposition = amalgamate(&gram_schmidt(device, gens));
    let orders = decomposition.orders();
    let n = device.registers();

    let mut moduli = device.moduli().to_vec();
    moduli.extend(&orders);
    let extended = Device::new(moduli).expect("pair orders are at least 2");

    let pad = |p: &PauliVec| -> (Vec<u64>, Vec<u64>) {
        let mut x = p.x().to_vec();
        let mut z = p.z().to_vec();
        x.resize(n + orders.len(), 0);
        z.resize(n + orders.len(), 0);
        (x, z)
    };

    let mut generators = Vec::new();
    for w in &decomposition.isotropic {
        let (x, z) = pad(w);
        generators.push(PauliVec::new(&extended, x, z).unwrap());
    }
    for (i, pair) in decomposition.pairs.iter().enumerate() {
        let (mut ux, uz) = pad(&pair.u);
        ux[n + i] = 1;
        generators.push(PauliVec::new(&extended, ux, uz).unwrap());
        let (vx, mut vz) = pad(&pair.v);
        vz[n + i] = pair.order - 1;
        generators.push(PauliVec::new(&extended, vx, vz).unwrap());
    }

    let code = StabilizerCode::new(&extended, generators)
        .expect("resolved generators commute by construction");
    debug_assert_eq!(
        code.device.registers() - n,
        resolution_lower_bound(device, &decomposition.generating_set())
    );
    code
}

/// Half the rational rank of the commutator matrix, rounded up.
///
/// Meaningful as a register lower bound on a decomposed generating set,
/// where the canonical mod-1 commutator matrix is block diagonal with one
/// full-rank 2x2 block per hyperbolic pair.
pub fn resolution_lower_bound(device: &Device, gens: &[PauliVec]) -> usize {
    for g in gens {
        assert_eq!(g.device(), device, "generators must live on the given device");
    }
    let matrix = commutator_matrix(gens).expect("same device");
    let rank = rational_rank(&matrix.rows());
    rank.div_ceil(2)
}

/// Placement maps for `scan`: where each seed code's registers land in the
/// joined device. Indices are 0-based; the two images must jointly cover the
/// output range `0..n` with `n = n1 + n2 - |overlap|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanMap {
    map1: Vec<usize>,
    map2: Vec<usize>,
}

impl ScanMap {
    pub fn new(map1: Vec<usize>, map2: Vec<usize>) -> Result<Self, ConstructError> {
        for (name, map) in [("map1", &map1), ("map2", &map2)] {
            let set: BTreeSet<usize> = map.iter().copied().collect();
            if set.len() != map.len() {
                return Err(ConstructError::InvalidMap(format!("{name} has repeated indices")));
            }
        }
        let union: BTreeSet<usize> = map1.iter().chain(&map2).copied().collect();
        let overlap = map1.iter().filter(|i| map2.contains(i)).count();
        let expected = map1.len() + map2.len() - overlap;
        if union.len() != expected
            || union.iter().max().is_some_and(|&m| m + 1 != expected)
            || (!union.is_empty() && !union.contains(&0))
        {
            return Err(ConstructError::InvalidMap(format!(
                "images must jointly cover 0..{expected}"
            )));
        }
        Ok(ScanMap { map1, map2 })
    }

    /// Contiguous placement: code1 on the first `n1` registers, code2 on the
    /// last `n2`, sharing `overlap` registers in the middle.
    pub fn contiguous(n1: usize, n2: usize, overlap: usize) -> Result<Self, ConstructError> {
        if overlap > n1.min(n2) {
            return Err(ConstructError::InvalidMap(format!(
                "overlap {overlap} exceeds a seed length"
            )));
        }
        let map1 = (0..n1).collect();
        let map2 = (n1 - overlap..n1 - overlap + n2).collect();
        ScanMap::new(map1, map2)
    }

    pub fn map1(&self) -> &[usize] {
        &self.map1
    }

    pub fn map2(&self) -> &[usize] {
        &self.map2
    }

    fn output_registers(&self) -> usize {
        self.map1.iter().chain(&self.map2).copied().max().map_or(0, |m| m + 1)
    }
}

/// Scanned join of two stabilizer codes with coprime uniform moduli.
///
/// Shared registers get modulus `Q1*Q2`; exponents from code1 are multiplied
/// by `Q2` there and those from code2 by `Q1`, which preserves generator
/// orders and cancels the cross terms mod 1.
pub fn scan(
    code1: &StabilizerCode,
    code2: &StabilizerCode,
    map: &ScanMap,
) -> Result<StabilizerCode, ConstructError> {
    let q1 = uniform_modulus_of(code1)?;
    let q2 = uniform_modulus_of(code2)?;
    if q1.gcd(&q2) != 1 {
        return Err(ConstructError::NonCoprimeModuli(q1, q2));
    }
    if map.map1.len() != code1.device().registers() || map.map2.len() != code2.device().registers()
    {
        return Err(ConstructError::InvalidMap(
            "map lengths must match the seed register counts".into(),
        ));
    }

    let n = map.output_registers();
    let in1: Vec<bool> = {
        let mut v = vec![false; n];
        map.map1.iter().for_each(|&i| v[i] = true);
        v
    };
    let in2: Vec<bool> = {
        let mut v = vec![false; n];
        map.map2.iter().for_each(|&i| v[i] = true);
        v
    };
    let moduli: Vec<u64> = (0..n)
        .map(|i| match (in1[i], in2[i]) {
            (true, true) => q1.checked_mul(q2).expect("overlap modulus fits u64"),
            (true, false) => q1,
            (false, true) => q2,
            (false, false) => unreachable!("maps jointly cover the output range"),
        })
        .collect();
    let device = Device::new(moduli)?;

    let mut generators = Vec::new();
    let place = |g: &PauliVec, own_map: &[usize], shared: &[bool], factor: u64| -> PauliVec {
        let mut x = vec![0u64; n];
        let mut z = vec![0u64; n];
        for (src, &dst) in own_map.iter().enumerate() {
            let f = if shared[dst] { factor } else { 1 };
            x[dst] = g.x()[src] * f;
            z[dst] = g.z()[src] * f;
        }
        PauliVec::new(&device, x, z).expect("scaled exponents stay in range")
    };
    for g in code1.generators() {
        generators.push(place(g, &map.map1, &in2, q2));
    }
    for g in code2.generators() {
        generators.push(place(g, &map.map2, &in1, q1));
    }
    StabilizerCode::new(&device, generators)
}

fn uniform_modulus_of(code: &StabilizerCode) -> Result<u64, ConstructError> {
    let q = code.device().modulus(0);
    match code.device().moduli().iter().find(|&&m| m != q) {
        Some(&found) => Err(ConstructError::NonUniformModulus { expected: q, found }),
        None => Ok(q),
    }
}

/// Scanned join of any number of codes with pairwise coprime uniform moduli.
/// Each output register's modulus is the product of the moduli of all codes
/// covering it, and each code's exponents there are scaled by the
/// complementary factor.
pub fn scan_many(
    codes: &[StabilizerCode],
    maps: &[Vec<usize>],
) -> Result<StabilizerCode, ConstructError> {
    if codes.len() != maps.len() {
        return Err(ConstructError::InvalidMap("one placement map per code required".into()));
    }
    let moduli_per_code: Vec<u64> =
        codes.iter().map(uniform_modulus_of).collect::<Result<_, _>>()?;
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            if moduli_per_code[i].gcd(&moduli_per_code[j]) != 1 {
                return Err(ConstructError::NonCoprimeModuli(
                    moduli_per_code[i],
                    moduli_per_code[j],
                ));
            }
        }
    }
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for (code, map) in codes.iter().zip(maps) {
        if map.len() != code.device().registers() {
            return Err(ConstructError::InvalidMap(
                "map lengths must match the seed register counts".into(),
            ));
        }
        let set: BTreeSet<usize> = map.iter().copied().collect();
        if set.len() != map.len() {
            return Err(ConstructError::InvalidMap("a map has repeated indices".into()));
        }
        union.extend(set);
    }
    let n = union.iter().max().map_or(0, |&m| m + 1);
    if union.len() != n {
        return Err(ConstructError::InvalidMap(format!("maps must jointly cover 0..{n}")));
    }

    let mut register_modulus = vec![1u64; n];
    for (map, &q) in maps.iter().zip(&moduli_per_code) {
        for &dst in map {
            register_modulus[dst] =
                register_modulus[dst].checked_mul(q).expect("shared modulus fits u64");
        }
    }
    let device = Device::new(register_modulus.clone())?;

    let mut generators = Vec::new();
    for ((code, map), &q) in codes.iter().zip(maps).zip(&moduli_per_code) {
        for g in code.generators() {
            let mut x = vec![0u64; n];
            let mut z = vec![0u64; n];
            for (src, &dst) in map.iter().enumerate() {
                let factor = register_modulus[dst] / q;
                x[dst] = g.x()[src] * factor;
                z[dst] = g.z()[src] * factor;
            }
            generators.push(PauliVec::new(&device, x, z).expect("scaled exponents in range"));
        }
    }
    StabilizerCode::new(&device, generators)
}

/// Pick-and-mix embedding of a uniform-modulus code into larger registers:
/// all moduli become `l` and every exponent is multiplied by `l/q`.
pub fn embed_scale(code: &StabilizerCode, l: u64) -> Result<StabilizerCode, ConstructError> {
    let q = uniform_modulus_of(code)?;
    if l % q != 0 {
        return Err(ConstructError::NonDivisibleEmbedding { q, l });
    }
    let factor = l / q;
    let device = Device::new(vec![l; code.device().registers()])?;
    let generators = code
        .generators()
        .iter()
        .map(|g| {
            let x = g.x().iter().map(|&v| v * factor).collect();
            let z = g.z().iter().map(|&v| v * factor).collect();
            PauliVec::new(&device, x, z).expect("scaled exponents in range")
        })
        .collect();
    StabilizerCode::new(&device, generators)
}
