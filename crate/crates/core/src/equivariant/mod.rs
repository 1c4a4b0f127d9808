//! Circle-bundle and equivariant constructions on chain complexes.

pub mod bundle;
pub mod jones;
pub mod localize;

pub use bundle::{
    bundle_homology, cone_compare, cpn_ucomplex, gysin_check, lift_map_su, preserves_j, s_bundle,
    umap_on_homology, ConeComparison, JComplex, UComplex,
};
pub use jones::{free_circle, fundamental_ses, jones_flavor, jones_map, Flavor, FundamentalSequence, Windowed};
pub use localize::{localize, GradedUModule, LocalizedModule, UTerm};
