//! Exact chain-level algebra for Floer-theoretic constructions.
//!
//! Everything is computed over ℤ/2, ℤ, ℚ or Laurent polynomials over them,
//! with homology read off from Smith normal forms. The pieces:
//!
//! - [`linalg`]: dense and sparse matrices, Smith form, solving, kernels.
//! - [`complex`]: graded complexes, chain maps, cones, homology, long exact sequences.
//! - [`equivariant`]: U-complexes, their circle bundles `S_U`, the Jones
//!   flavors of a J-complex, and localization at U.
//! - [`novikov`]: complexes over `R[t, t⁻¹]` and their t-filtered flavors.
//! - [`connect_sum`]: tensor products of U-complexes and the homotopies between them.
//! - [`heegaard`]: generator enumeration and signed counts for Heegaard diagrams.
//! - [`io`] and [`cli`]: text formats and the `floer` command.
//! - [`random`]: seeded random objects with known answers, for testing.
//!
//! ```
//! use num_bigint::BigInt;
//! use floer_algebra::equivariant::{bundle_homology, cpn_ucomplex};
//!
//! // the Hopf bundle S³ → CP¹
//! let h = bundle_homology(&cpn_ucomplex::<BigInt>(1).unwrap()).unwrap();
//! assert_eq!(h.ranks(), [(0, 1), (3, 1)].into_iter().collect());
//! ```

pub mod cli;
pub mod complex;
pub mod connect_sum;
pub mod equivariant;
pub mod error;
pub mod heegaard;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod novikov;
pub mod random;
pub mod ring;
pub mod window;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use ring::{BaseRing, Gf2, Ring, RingSpec};
pub use window::DegreeWindow;
