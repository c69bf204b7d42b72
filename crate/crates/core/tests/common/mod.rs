//! Shared corpus generators for the integration suites. Everything is
//! seeded, so failures reproduce.

#![allow(dead_code)]

use std::collections::HashSet;

use num::bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use mixedreg::analysis;
use mixedreg::construct::StabilizerCode;
use mixedreg::pauli::{Device, PauliVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_device(rng: &mut ChaCha8Rng, max_registers: usize, pool: &[u64]) -> Device {
    let n = rng.random_range(1..=max_registers);
    let moduli = (0..n).map(|_| *pool.choose(rng).unwrap()).collect();
    Device::new(moduli).unwrap()
}

pub fn random_pauli(rng: &mut ChaCha8Rng, device: &Device) -> PauliVec {
    let x = device.moduli().iter().map(|&q| rng.random_range(0..q)).collect();
    let z = device.moduli().iter().map(|&q| rng.random_range(0..q)).collect();
    PauliVec::new(device, x, z).unwrap()
}

pub fn random_generator_set(rng: &mut ChaCha8Rng, device: &Device, max_k: usize) -> Vec<PauliVec> {
    let k = rng.random_range(1..=max_k);
    (0..k).map(|_| random_pauli(rng, device)).collect()
}

/// Random product of `gens` with exponents below the device lcm.
pub fn random_product(rng: &mut ChaCha8Rng, device: &Device, gens: &[PauliVec]) -> PauliVec {
    let l = device.lcm();
    let mut out = PauliVec::identity(device);
    for g in gens {
        let e = rng.random_range(0..l);
        out = out.compose(&g.power(e as i64)).unwrap();
    }
    out
}

/// A different generating set for exactly the same subgroup: random products,
/// padded with the originals whenever the products alone fall short.
pub fn regenerating_set(
    rng: &mut ChaCha8Rng,
    device: &Device,
    gens: &[PauliVec],
) -> Vec<PauliVec> {
    let mut out: Vec<PauliVec> =
        (0..gens.len() + 1).map(|_| random_product(rng, device, gens)).collect();
    let target = analysis::group_order(device, gens);
    if analysis::group_order(device, &out) != target {
        let mut padded: Vec<PauliVec> = gens.to_vec();
        padded.shuffle(rng);
        out.extend(padded);
    }
    debug_assert_eq!(analysis::group_order(device, &out), target);
    out
}

/// Random valid code: repeatedly adjoin a random element of the centralizer
/// of what has been built so far.
pub fn random_code(rng: &mut ChaCha8Rng, device: &Device, steps: usize) -> StabilizerCode {
    let mut code = StabilizerCode::new(device, vec![]).unwrap();
    for _ in 0..steps {
        let cent = analysis::centralizer(&code);
        if cent.is_empty() {
            break;
        }
        let candidate = random_product(rng, device, &cent);
        if candidate.is_identity() {
            continue;
        }
        let mut gens = code.generators().to_vec();
        gens.push(candidate);
        code = StabilizerCode::new(device, gens).expect("centralizer elements commute");
    }
    code
}

/// Brute-force enumeration of the generated subgroup (keep it small).
pub fn enumerate_group(device: &Device, gens: &[PauliVec]) -> HashSet<PauliVec> {
    let mut seen = HashSet::new();
    seen.insert(PauliVec::identity(device));
    let mut frontier = vec![PauliVec::identity(device)];
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let next = cur.compose(g).unwrap();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

pub fn big(v: u64) -> BigInt {
    BigInt::from(v)
}
