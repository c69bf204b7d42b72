//! Canonical decomposition of a finitely generated Pauli subgroup.
//!
//! Any subgroup generated by finitely many mixed-register Paulis splits into
//! an isotropic part (a minimal generating set for the radical, the elements
//! pairing trivially with the whole subgroup) and hyperbolic pairs
//! `(U_i, V_i)` with pairing exactly `1/d_i` and trivial pairing against
//! everything else. After amalgamation the pair orders form a divisibility
//! chain `d_1 | d_2 | ... | d_c`, and that multiset is an invariant of the
//! subgroup.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::exact::{bezout, crt_u64, ExactRational, IntMatrix};
use crate::pauli::{Device, PauliVec};
use crate::subgroup::{left_kernel_mod, minimal_generating_set};

/// A hyperbolic pair: `symp(u, v) = 1/order` and both pair trivially with
/// every other generator of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicPair {
    pub u: PauliVec,
    pub v: PauliVec,
    pub order: u64,
}

/// Output of the symplectic Gram-Schmidt procedure.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    device: Device,
    pub isotropic: Vec<PauliVec>,
    pub pairs: Vec<HyperbolicPair>,
}

impl DecompositionResult {
    pub fn new(device: &Device, isotropic: Vec<PauliVec>, pairs: Vec<HyperbolicPair>) -> Self {
        DecompositionResult { device: device.clone(), isotropic, pairs }
    }

    pub fn device(&self) -> &Device {
        &self.device
    }

    /// Isotropic generators followed by `u_1, v_1, u_2, v_2, ...`.
    pub fn generating_set(&self) -> Vec<PauliVec> {
        let mut out = self.isotropic.clone();
        for p in &self.pairs {
            out.push(p.u.clone());
            out.push(p.v.clone());
        }
        out
    }

    /// Pair orders `d_1, ..., d_c` in stored order.
    pub fn orders(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.order).collect()
    }
}

/// Scales a canonical pairing value to the integer `l * value mod l`.
fn scaled_pairing(value: &ExactRational, l: u64) -> BigInt {
    let lb = BigInt::from(l);
    debug_assert!((&lb % value.denominator()).is_zero(), "pairing denominator must divide {l}");
    (value.numerator() * (&lb / value.denominator())).mod_floor(&lb)
}

/// Minimal generating set for the subgroup of `<gens>` pairing trivially with
/// every generator.
///
/// A combination `prod g_j^{c_j}` lies in the radical iff `c * M = 0 mod L`
/// where `M[j][i] = L * symp(g_j, g_i)` and `L` is the lcm of the moduli; the
/// solutions form an integer lattice recovered by a Hermite-form kernel.
pub fn radical(device: &Device, gens: &[PauliVec]) -> Vec<PauliVec> {
    if gens.is_empty() {
        return Vec::new();
    }
    for g in gens {
        assert_eq!(g.device(), device, "generators must live on the given device");
    }
    let l = device.lcm();
    let k = gens.len();
    let mut m = IntMatrix::zeros(k, k);
    for j in 0..k {
        for i in 0..k {
            if i == j {
                continue;
            }
            let s = gens[j].symp_unchecked(&gens[i]);
            if !s.is_zero() {
                m.set(j, i, scaled_pairing(&s, l));
            }
        }
    }
    let kernel = left_kernel_mod(&m, &BigInt::from(l));
    let members: Vec<PauliVec> =
        kernel.iter().map(|row| PauliVec::combine(device, gens, row)).collect();
    minimal_generating_set(device, &members)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Solves `sum c_j m_j = 1 mod d` by chaining extended gcds; requires
/// `gcd(m_1, ..., m_k, d) = 1`.
fn solve_unit_combination(ms: &[u64], d: u64) -> Vec<BigInt> {
    let mut g = BigInt::from(d);
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(ms.len());
    for &m in ms {
        let (g2, a, b) = bezout(&g, &BigInt::from(m)).expect("modulus is nonzero");
        for c in &mut coeffs {
            *c *= &a;
        }
        coeffs.push(b);
        g = g2;
    }
    assert!(g.is_one(), "pairing residues must be jointly coprime to the order");
    coeffs
}

/// One hyperbolic-pair extraction from the current generating set.
///
/// `d` is the lcm of all pairing denominators, hence the maximal element
/// order of the quotient mod radical. `U` is assembled prime power by prime
/// power so its pairing row attains order exactly `d`; `V` solves a linear
/// congruence so that `symp(U, V) = 1/d` on the nose.
fn extract_pair(device: &Device, current: &[PauliVec]) -> Option<(PauliVec, PauliVec, u64)> {
    let k = current.len();
    let mut pairings = vec![vec![ExactRational::zero(); k]; k];
    let mut d: u64 = 1;
    let mut row_lcm = vec![1u64; k];
    for j in 0..k {
        for i in 0..k {
            if i == j {
                continue;
            }
            let s = current[j].symp_unchecked(&current[i]);
            let den = u64::try_from(s.denominator().clone()).expect("denominator fits u64");
            row_lcm[j] = row_lcm[j].lcm(&den);
            d = d.lcm(&den);
            pairings[j][i] = s;
        }
    }
    if d == 1 {
        return None;
    }

    let mut weights = vec![BigInt::zero(); k];
    for (p, e) in factorize(d) {
        let pe = p.pow(e);
        let j = (0..k)
            .find(|&j| row_lcm[j] % pe == 0)
            .expect("some row attains each prime power of the pairing lcm");
        weights[j] += BigInt::from(d / pe);
    }
    let u_gen = PauliVec::combine(device, current, &weights);

    let ms: Vec<u64> = current
        .iter()
        .map(|g| {
            let s = u_gen.symp_unchecked(g);
            u64::try_from(scaled_pairing(&s, d)).expect("residue fits u64")
        })
        .collect();
    let coeffs = solve_unit_combination(&ms, d);
    let v_gen = PauliVec::combine(device, current, &coeffs);
    debug_assert_eq!(u_gen.symp_unchecked(&v_gen), ExactRational::new(1u64, d));
    Some((u_gen, v_gen, d))
}

/// Symplectic Gram-Schmidt over a mixed-register device.
///
/// Extracts hyperbolic pairs of decreasing order (so the reversed list is a
/// divisibility chain), orthogonalizing the remaining generators against each
/// pair with the exponents `a = d*symp(A, V)`, `b = -d*symp(A, U)`. The
/// isotropic part is the radical of the original generating set; together
/// with the pairs it regenerates the input subgroup exactly.
pub fn gram_schmidt(device: &Device, gens: &[PauliVec]) -> DecompositionResult {
    for g in gens {
        assert_eq!(g.device(), device, "generators must live on the given device");
    }
    let mut current: Vec<PauliVec> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut pairs: Vec<HyperbolicPair> = Vec::new();
    let mut rounds = 0usize;
    while let Some((u_gen, v_gen, d)) = extract_pair(device, &current) {
        let mut next = Vec::with_capacity(current.len());
        for a in &current {
            let a_exp = -scaled_pairing(&a.symp_unchecked(&v_gen), d);
            let b_exp = scaled_pairing(&a.symp_unchecked(&u_gen), d);
            let mut reduced = a.clone();
            reduced.mul_assign(&u_gen.power_big(&a_exp));
            reduced.mul_assign(&v_gen.power_big(&b_exp));
            debug_assert!(reduced.symp_unchecked(&u_gen).is_zero());
            debug_assert!(reduced.symp_unchecked(&v_gen).is_zero());
            if !reduced.is_identity() {
                next.push(reduced);
            }
        }
        pairs.push(HyperbolicPair { u: u_gen, v: v_gen, order: d });
        current = next;
        rounds += 1;
        assert!(rounds <= 2 * gens.len() + 64, "pair extraction failed to terminate");
    }
    pairs.reverse();
    DecompositionResult { device: device.clone(), isotropic: radical(device, gens), pairs }
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let (g, x, _) = bezout(&BigInt::from(a % m), &BigInt::from(m)).expect("modulus nonzero");
    assert!(g.is_one(), "{a} not invertible mod {m}");
    u64::try_from(x.mod_floor(&BigInt::from(m))).unwrap()
}

/// Splits the order of `pair` into coprime factors `d1 * d2`; returns a pair
/// of order `d1` and one of order `d2`, pushing any residue of `v` that the
/// split cannot reach onto `leftovers` (it pairs trivially with everything).
fn split_pair(
    pair: &HyperbolicPair,
    d1: u64,
    d2: u64,
    leftovers: &mut Vec<PauliVec>,
) -> (Option<HyperbolicPair>, Option<HyperbolicPair>) {
    debug_assert_eq!(d1 * d2, pair.order);
    debug_assert_eq!(d1.gcd(&d2), 1);
    if d2 == 1 {
        return (Some(pair.clone()), None);
    }
    if d1 == 1 {
        return (None, Some(pair.clone()));
    }
    let t = inverse_mod(d2, d1);
    let s = inverse_mod(d1, d2);
    let p1 = HyperbolicPair {
        u: pair.u.power_big(&BigInt::from(d2)),
        v: pair.v.power_big(&BigInt::from(d2 as u128 * t as u128)),
        order: d1,
    };
    let p2 = HyperbolicPair {
        u: pair.u.power_big(&BigInt::from(d1)),
        v: pair.v.power_big(&BigInt::from(d1 as u128 * s as u128)),
        order: d2,
    };
    // v^(d2 t) * v^(d1 s) = v^E with E = 1 mod d1*d2; the excess v^(E-1) is
    // a power of v^d and lands in the radical
    let excess = BigInt::from(d2 as u128 * t as u128 + d1 as u128 * s as u128) - 1;
    let residue = pair.v.power_big(&excess);
    if !residue.is_identity() {
        leftovers.push(residue);
    }
    debug_assert_eq!(p1.u.symp_unchecked(&p1.v), ExactRational::new(1u64, d1));
    debug_assert_eq!(p2.u.symp_unchecked(&p2.v), ExactRational::new(1u64, d2));
    debug_assert!(p1.u.symp_unchecked(&p2.v).is_zero());
    debug_assert!(p2.u.symp_unchecked(&p1.v).is_zero());
    (Some(p1), Some(p2))
}

/// Merges two pairs of coprime orders into one of order `a.order * b.order`,
/// pushing the reconstruction residues of the four original generators onto
/// `leftovers`.
fn merge_coprime(
    a: Option<HyperbolicPair>,
    b: Option<HyperbolicPair>,
    leftovers: &mut Vec<PauliVec>,
) -> Option<HyperbolicPair> {
    let (a, b) = match (a, b) {
        (None, None) => return None,
        (Some(a), None) => return Some(a),
        (None, Some(b)) => return Some(b),
        (Some(a), Some(b)) => (a, b),
    };
    let (alpha, beta) = (a.order, b.order);
    debug_assert_eq!(alpha.gcd(&beta), 1);
    let (g, x, y) = bezout(&BigInt::from(beta), &BigInt::from(alpha)).unwrap();
    debug_assert!(g.is_one());
    let merged_u = a.u.compose(&b.u).expect("same device");
    let merged_v = a.v.power_big(&x).compose(&b.v.power_big(&y)).expect("same device");
    let order = alpha.checked_mul(beta).expect("merged pair order fits u64");
    debug_assert_eq!(merged_u.symp_unchecked(&merged_v), ExactRational::new(1u64, order));

    // residues expressing the four original generators through the merged pair
    let x_inv = inverse_mod((beta % alpha) as u64, alpha);
    let y_inv = inverse_mod((alpha % beta) as u64, beta);
    let recoveries = [
        (&a.u, &merged_u, crt_u64(&[1, 0], &[alpha, beta]).unwrap()),
        (&b.u, &merged_u, crt_u64(&[0, 1], &[alpha, beta]).unwrap()),
        (&a.v, &merged_v, crt_u64(&[x_inv, 0], &[alpha, beta]).unwrap()),
        (&b.v, &merged_v, crt_u64(&[0, y_inv], &[alpha, beta]).unwrap()),
    ];
    for (original, merged, exp) in recoveries {
        let back = merged.power_big(&-BigInt::from(exp));
        let residue = original.compose(&back).expect("same device");
        if !residue.is_identity() {
            leftovers.push(residue);
        }
    }
    Some(HyperbolicPair { u: merged_u, v: merged_v, order })
}

/// Prime-by-prime split of `(a, b)` into `(lcm part of a, rest)`:
/// `a` keeps the primes where its valuation wins (ties included).
fn winning_split(a: u64, b: u64, strict: bool) -> (u64, u64) {
    let mut win = 1u64;
    for (p, e) in factorize(a) {
        let mut eb = 0;
        let mut bb = b;
        while bb % p == 0 {
            bb /= p;
            eb += 1;
        }
        let wins = if strict { e > eb } else { e >= eb };
        if wins {
            win *= p.pow(e);
        }
    }
    (win, a / win)
}

/// Normalizes the pair orders of a decomposition into the invariant-factor
/// chain `d_1 | d_2 | ... | d_c`.
///
/// Non-chain pairs are repeatedly replaced by pairs of orders
/// `(gcd, lcm)` via coprime splits and CRT merges; order-1 pairs dissolve
/// into the isotropic part, as do all reconstruction residues, so the
/// generated subgroup is unchanged. The resulting multiset is the
/// invariant-factor normalization of the input multiset.
pub fn amalgamate(result: &DecompositionResult) -> DecompositionResult {
    let device = result.device.clone();
    let mut iso = result.isotropic.clone();
    let mut pairs: Vec<HyperbolicPair> = Vec::new();
    for p in &result.pairs {
        if p.order == 1 {
            iso.push(p.u.clone());
            iso.push(p.v.clone());
        } else {
            pairs.push(p.clone());
        }
    }
    let mut guard = 0usize;
    loop {
        pairs.sort_by_key(|p| p.order);
        let violation =
            (0..pairs.len().saturating_sub(1)).find(|&i| pairs[i + 1].order % pairs[i].order != 0);
        let Some(i) = violation else { break };
        let b = pairs.remove(i + 1);
        let a = pairs.remove(i);
        let mut leftovers = Vec::new();
        // a keeps the primes it wins (ties included), b strictly-winning primes
        let (a_big, a_small) = winning_split(a.order, b.order, false);
        let (b_big, b_small) = winning_split(b.order, a.order, true);
        let (pa_big, pa_small) = split_pair(&a, a_big, a_small, &mut leftovers);
        let (pb_big, pb_small) = split_pair(&b, b_big, b_small, &mut leftovers);
        if let Some(lcm_pair) = merge_coprime(pa_big, pb_big, &mut leftovers) {
            pairs.push(lcm_pair);
        }
        if let Some(gcd_pair) = merge_coprime(pa_small, pb_small, &mut leftovers) {
            if gcd_pair.order > 1 {
                pairs.push(gcd_pair);
            } else {
                iso.push(gcd_pair.u);
                iso.push(gcd_pair.v);
            }
        }
        iso.extend(leftovers);
        guard += 1;
        assert!(guard <= 64 * (result.pairs.len() + 1).pow(2), "amalgamation failed to terminate");
    }
    let iso = minimal_generating_set(&device, &iso);
    DecompositionResult { device, isotropic: iso, pairs }
}
