//! Exact coding-theoretic machinery for mixed-register stabilizer codes.
//!
//! A mixed-register device is an ordered list of finite register moduli
//! `Q_1, ..., Q_n` (a qubit next to a qutrit next to a quhex, say). Pauli
//! operators mod phases on such a device are exponent vectors with one
//! shift (X) and one clock (Z) exponent per register, each taken mod its
//! register's modulus, and commutation is decided by a rational-valued
//! symplectic pairing taken mod 1.
//!
//! The crate provides, in layers:
//!
//! - [`exact`]: arbitrary-precision integer and rational linear algebra
//!   (extended gcd, CRT, Hermite and Smith normal forms, rational rank).
//! - [`pauli`]: devices, Pauli exponent vectors, composition, orders, and
//!   the generalized symplectic product.
//! - [`decompose`]: the canonical decomposition of a finitely generated
//!   Pauli subgroup into isotropic generators plus hyperbolic pairs with
//!   invariant-factor orders `d_1 | d_2 | ... | d_c`.
//! - [`construct`]: stabilizer-code constructions — non-commutativity
//!   resolution by appended registers, the scanned join of coprime codes,
//!   and uniform-modulus embedding.
//! - [`analysis`]: group order, membership, logical dimension, centralizer,
//!   brute-force distance, and the coprime generator-splitting transform.
//! - [`oracle`]: dense complex-matrix ground truth (Pauli matrices,
//!   codespace projectors, codewords) for small Hilbert spaces.
//! - [`codefile`]: the plain-text code-file format used by the CLI.
//!
//! Everything outside [`oracle`] is exact: no floating point, no tolerances.

pub mod analysis;
pub mod codefile;
pub mod construct;
pub mod decompose;
pub mod exact;
pub mod oracle;
pub mod pauli;

mod subgroup;

pub use analysis::{code_params, centralizer, contains, distance, group_order, logical_count,
                   split_coprime, CodeParams, DistanceWitness};
pub use construct::{embed_scale, resolution_lower_bound, resolve, scan, scan_many, ScanMap,
                    StabilizerCode};
pub use decompose::{amalgamate, gram_schmidt, radical, DecompositionResult, HyperbolicPair};
pub use exact::{bezout, crt, ExactRational, IntMatrix};
pub use pauli::{commutator_matrix, CommutatorMatrix, Device, PauliVec};
