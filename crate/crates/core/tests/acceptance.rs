//! Acceptance suite: the exact-value and statistical gates for the whole
//! workspace. Run with `cargo test -p mixedreg --test acceptance -- --nocapture`
//! to see one PASS line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use num::bigint::BigInt;
use num::complex::Complex64;
use rand::Rng;

use mixedreg::analysis::{self, contains, distance, group_order, logical_count};
use mixedreg::construct::{resolution_lower_bound, resolve, scan, ScanMap, StabilizerCode};
use mixedreg::decompose::{amalgamate, gram_schmidt, DecompositionResult};
use mixedreg::exact::{rational_rank, ExactRational};
use mixedreg::oracle;
use mixedreg::pauli::{commutator_matrix, Device, PauliVec};

use common::*;

fn device(moduli: &[u64]) -> Device {
    Device::new(moduli.to_vec()).unwrap()
}

fn pauli(d: &Device, x: &[u64], z: &[u64]) -> PauliVec {
    PauliVec::new(d, x.to_vec(), z.to_vec()).unwrap()
}

fn xx_code(q: u64) -> StabilizerCode {
    let d = device(&[q, q]);
    let g = pauli(&d, &[1, 1], &[0, 0]);
    StabilizerCode::new(&d, vec![g]).unwrap()
}

fn zz_code(q: u64) -> StabilizerCode {
    let d = device(&[q, q]);
    let g = pauli(&d, &[0, 0], &[1, 1]);
    StabilizerCode::new(&d, vec![g]).unwrap()
}

/// Criterion 1: the scanned join of <X2X2> and <X3X3> overlapping at the
/// middle register reproduces the worked three-register code: generators
/// exactly {X2 X6^3 I, I X6^2 X3}, K = 6, and the seed-|000> codeword has
/// amplitude 1/sqrt(6) on exactly the six known basis states.
#[test]
fn criterion_1_example_reproduction() {
    let start = Instant::now();

    let map = ScanMap::new(vec![0, 1], vec![1, 2]).unwrap();
    let joined = scan(&xx_code(2), &xx_code(3), &map).unwrap();
    assert_eq!(joined.device().moduli(), &[2, 6, 3]);
    let d = joined.device().clone();
    assert_eq!(joined.generators(), &[pauli(&d, &[1, 3, 0], &[0, 0, 0]), pauli(&d, &[0, 2, 1], &[0, 0, 0])]);

    assert_eq!(logical_count(&joined), BigInt::from(6));

    let state = oracle::codeword(&joined, 0).unwrap();
    let expected: BTreeSet<usize> = [[0u64, 0, 0], [1, 3, 0], [0, 2, 1], [0, 4, 2], [1, 5, 1], [1, 1, 2]]
        .iter()
        .map(|digits| oracle::basis_index(&d, digits).unwrap())
        .collect();
    let amp = 1.0 / 6.0_f64.sqrt();
    for i in 0..state.dim() {
        let target = if expected.contains(&i) { amp } else { 0.0 };
        let dev = (state.amplitude(i) - Complex64::new(target, 0.0)).norm();
        assert!(dev <= 1e-9, "amplitude {i} off by {dev}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS criterion 1: scanned example reproduced exactly ({elapsed:?})");
}

/// Criterion 2: the mixed [6,5] pair has canonical pairing 9/10 (absolute
/// value 1/10); resolve appends exactly one register of modulus 10, never 30,
/// and the lower bound saturates.
#[test]
fn criterion_2_commutator_example() {
    let start = Instant::now();

    let d = device(&[6, 5]);
    let g1 = pauli(&d, &[3, 0], &[0, 3]);
    let g2 = pauli(&d, &[0, 1], &[1, 0]);
    let s = g1.symp(&g2).unwrap();
    assert_eq!(s, ExactRational::new(9, 10));
    // |s - 1| = 1/10: the canonical representative of -1/10
    assert_eq!((s - ExactRational::one()).abs(), ExactRational::new(1, 10));

    let gens = [g1, g2];
    let code = resolve(&d, &gens);
    assert_eq!(code.device().moduli(), &[6, 5, 10], "one register of modulus 10, never 30");
    let appended = code.device().registers() - d.registers();
    assert_eq!(appended, 1);
    assert_eq!(resolution_lower_bound(&d, &gens), 1);
    assert_eq!(resolution_lower_bound(&d, &gens), appended);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS criterion 2: 9/10 pairing resolved by a single 10-level register ({elapsed:?})");
}

/// Criterion 3: propagating I (x) Z3 through the qubit-qutrit controlled
/// shift yields exactly two terms, (1+w)/2 on I (x) Z3 and (1-w)/2 on
/// Z2 (x) Z3.
#[test]
fn criterion_3_controlled_shift_demo() {
    let start = Instant::now();

    let d = device(&[2, 3]);
    let u = oracle::controlled_shift(2, 3).unwrap();
    let target = pauli(&d, &[0, 0], &[0, 1]);
    let terms = oracle::conjugate_decompose(&u, &target).unwrap();
    assert_eq!(terms.len(), 2);

    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let want_iz = (Complex64::new(1.0, 0.0) + omega) / 2.0;
    let want_zz = (Complex64::new(1.0, 0.0) - omega) / 2.0;
    let iz = pauli(&d, &[0, 0], &[0, 1]);
    let zz = pauli(&d, &[0, 0], &[1, 1]);
    for (coeff, op) in &terms {
        let want = if *op == iz {
            want_iz
        } else if *op == zz {
            want_zz
        } else {
            panic!("unexpected operator {op} in the expansion");
        };
        assert!((coeff - want).norm() <= 1e-9, "coefficient for {op} off: {coeff}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS criterion 3: controlled-shift conjugation splits with (1+w)/2, (1-w)/2 ({elapsed:?})");
}

fn decomposition_corpus(sets: usize) -> Vec<(Device, Vec<PauliVec>)> {
    let mut r = rng(0xC0FFEE);
    (0..sets)
        .map(|_| {
            let d = random_device(&mut r, 4, &[2, 3, 4, 5, 6]);
            let gens = random_generator_set(&mut r, &d, 4);
            (d, gens)
        })
        .collect()
}

/// The four commutation relations of a decomposition, checked exactly.
fn assert_theorem_relations(gens: &[PauliVec], r: &DecompositionResult) {
    for w in &r.isotropic {
        for g in gens {
            assert!(w.symp(g).unwrap().is_zero(), "isotropic generator fails 1(a)");
        }
        for p in &r.pairs {
            assert!(w.symp(&p.u).unwrap().is_zero());
            assert!(w.symp(&p.v).unwrap().is_zero());
        }
    }
    for (i, pi) in r.pairs.iter().enumerate() {
        for (j, pj) in r.pairs.iter().enumerate() {
            assert!(pi.u.symp(&pj.u).unwrap().is_zero(), "1(b) U-U");
            assert!(pi.v.symp(&pj.v).unwrap().is_zero(), "1(b) V-V");
            if i != j {
                assert!(pi.u.symp(&pj.v).unwrap().is_zero(), "1(c)");
            }
        }
        assert_eq!(
            pi.u.symp(&pi.v).unwrap(),
            ExactRational::new(1u64, pi.order),
            "1(d) pairing is exactly 1/d"
        );
    }
}

fn assert_regeneration(d: &Device, gens: &[PauliVec], r: &DecompositionResult) {
    let decomposed = r.generating_set();
    assert_eq!(group_order(d, gens), group_order(d, &decomposed), "order mismatch");
    for g in gens {
        assert!(contains(d, &decomposed, g), "input generator lost");
    }
    for g in &decomposed {
        assert!(contains(d, gens, g), "decomposition escapes the subgroup");
    }
}

/// Criterion 4: on 200 random generator sets (n <= 4, moduli in {2..6}),
/// gram_schmidt + amalgamate satisfies all Theorem relations exactly, the
/// divisibility chain, exact regeneration, and multiset uniqueness across
/// 20 regenerating sets per group.
#[test]
fn criterion_4_decomposition_invariants() {
    let start = Instant::now();
    let corpus = decomposition_corpus(200);
    let mut r = rng(0xDECAF);

    for (d, gens) in &corpus {
        let result = amalgamate(&gram_schmidt(d, gens));
        assert_theorem_relations(gens, &result);
        let orders = result.orders();
        for w in orders.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {orders:?}");
        }
        for o in &orders {
            assert_eq!(d.lcm() % o, 0, "pair order must divide the device lcm");
        }
        assert_regeneration(d, gens, &result);

        let mut baseline: Vec<u64> = orders;
        baseline.sort_unstable();
        for _ in 0..20 {
            let alt = regenerating_set(&mut r, d, gens);
            let alt_result = amalgamate(&gram_schmidt(d, &alt));
            let mut alt_orders = alt_result.orders();
            alt_orders.sort_unstable();
            assert_eq!(alt_orders, baseline, "pair-order multiset is not unique");
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("PASS criterion 4: 200 decompositions x 20 regenerating sets, all invariants exact ({elapsed:?})");
}

/// Criterion 5: on the same corpus, the number of appended registers equals
/// half the rational rank of the commutator matrix of the decomposed
/// generating set, and that rank is always even.
#[test]
fn criterion_5_lower_bound_saturation() {
    let start = Instant::now();
    let corpus = decomposition_corpus(200);

    for (d, gens) in &corpus {
        let result = amalgamate(&gram_schmidt(d, gens));
        let code = resolve(d, gens);
        let appended = code.device().registers() - d.registers();

        let decomposed = result.generating_set();
        let matrix = commutator_matrix(&decomposed).unwrap();
        let rank = rational_rank(&matrix.rows());
        assert_eq!(rank % 2, 0, "commutator rank must be even on a decomposed set");
        assert_eq!(appended, rank / 2, "resolution must saturate the rank bound");
        assert_eq!(appended, resolution_lower_bound(d, &decomposed));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("PASS criterion 5: appended registers = rank/2 with even rank on all 200 sets ({elapsed:?})");
}

/// Criterion 6: on 50 random codes over block-coprime devices, split_coprime
/// yields block-supported generators generating the same group, and the
/// original and split projectors agree entrywise to 1e-9.
#[test]
fn criterion_6_coprime_split() {
    let start = Instant::now();
    let mut r = rng(0x5EED);
    let shapes: [&[u64]; 5] =
        [&[2, 2, 3, 3], &[2, 2, 5, 5], &[4, 4, 3, 3], &[2, 2, 9, 9], &[3, 3, 4, 4]];

    for trial in 0..50 {
        let d = device(shapes[trial % shapes.len()]);
        let code = random_code(&mut r, &d, 3);
        let split = analysis::split_coprime(&code).unwrap();

        let block_of = |reg: usize| usize::from(reg >= 2);
        for g in split.generators() {
            let blocks: BTreeSet<usize> = (0..4)
                .filter(|&i| g.x()[i] != 0 || g.z()[i] != 0)
                .map(block_of)
                .collect();
            assert!(blocks.len() <= 1, "split generator straddles blocks: {g}");
        }
        assert_eq!(
            group_order(&d, code.generators()),
            group_order(&d, split.generators()),
            "split changed the group order"
        );
        for g in code.generators() {
            assert!(contains(&d, split.generators(), g));
        }
        for g in split.generators() {
            assert!(contains(&d, code.generators(), g));
        }

        let original = oracle::projector(&code).unwrap();
        let replaced = oracle::projector(&split).unwrap();
        let dev = original.max_deviation(&replaced);
        assert!(dev <= 1e-9, "projectors differ by {dev}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("PASS criterion 6: 50 coprime splits with matching projectors ({elapsed:?})");
}

/// Criterion 7: scans of the XX/ZZ-type seed pairs at overlaps 0, 1, 2 have
/// K = Q1^k1 * Q2^k2 exactly and brute-force distance (cap 3) equal to the
/// minimum seed distance.
#[test]
fn criterion_7_scanned_parameters() {
    let start = Instant::now();

    let seed_pairs = [
        (xx_code(2), xx_code(3)),
        (zz_code(2), zz_code(3)),
        (xx_code(2), zz_code(3)),
        (zz_code(2), xx_code(3)),
    ];
    for (s1, s2) in &seed_pairs {
        let d1 = distance(s1, 3).expect("seed has a logical operator").distance;
        let d2 = distance(s2, 3).expect("seed has a logical operator").distance;
        // each seed encodes one logical register: k = n - #generators
        let k1 = s1.device().registers() - s1.generators().len();
        let k2 = s2.device().registers() - s2.generators().len();
        let expected_k = BigInt::from(2u64).pow(k1 as u32) * BigInt::from(3u64).pow(k2 as u32);

        for overlap in 0..=2usize {
            let map = ScanMap::contiguous(2, 2, overlap).unwrap();
            let joined = scan(s1, s2, &map).unwrap();
            assert_eq!(logical_count(&joined), expected_k, "K mismatch at overlap {overlap}");
            let got = distance(&joined, 3).expect("scanned code keeps its logicals").distance;
            assert_eq!(got, d1.min(d2), "distance mismatch at overlap {overlap}");
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!("PASS criterion 7: scanned K and distance match the seeds at overlaps 0,1,2 ({elapsed:?})");
}

/// Criterion 8: K * |S| = prod Q_i exactly on fixtures and 200 random codes,
/// with the oracle trace agreeing wherever the dimension is at most 400.
#[test]
fn criterion_8_logical_dimension_identity() {
    let start = Instant::now();

    let mut fixtures = vec![
        {
            let d = device(&[2, 6, 3]);
            StabilizerCode::new(
                &d,
                vec![pauli(&d, &[1, 3, 0], &[0, 0, 0]), pauli(&d, &[0, 2, 1], &[0, 0, 0])],
            )
            .unwrap()
        },
        xx_code(2),
        xx_code(3),
        zz_code(2),
        {
            let d = device(&[2, 2]);
            StabilizerCode::new(
                &d,
                vec![pauli(&d, &[1, 1], &[0, 0]), pauli(&d, &[0, 0], &[1, 1])],
            )
            .unwrap()
        },
        {
            let d = device(&[6, 5, 10]);
            StabilizerCode::new(&d, vec![]).unwrap()
        },
    ];

    let mut r = rng(0xACCE55);
    for _ in 0..200 {
        let d = random_device(&mut r, 4, &[2, 3, 4, 5, 6]);
        let steps = r.random_range(1..=4);
        fixtures.push(random_code(&mut r, &d, steps));
    }

    let mut traced = 0usize;
    for code in &fixtures {
        let order = group_order(code.device(), code.generators());
        let k = logical_count(code);
        assert_eq!(&k * &order, code.device().dimension(), "K * |S| != prod Q");
        if code.device().dimension() <= BigInt::from(400u64) {
            let dim = oracle::codespace_dim(code).unwrap();
            assert_eq!(BigInt::from(dim), k, "oracle trace disagrees with K");
            traced += 1;
        }
    }
    assert!(traced >= 100, "oracle cross-check covered only {traced} codes");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "PASS criterion 8: K * |S| identity on {} codes, oracle-traced on {traced} ({elapsed:?})",
        fixtures.len()
    );
}
