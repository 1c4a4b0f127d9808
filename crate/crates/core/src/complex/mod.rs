//! Graded chain complexes, chain maps, homology and long exact sequences.

pub mod chain_map;
pub mod graded;
pub mod homology;
pub mod les;

pub use chain_map::{find_chain_homotopy, is_chain_map, mapping_cone, verify_homotopy, ChainCheck, ChainMap, MapSign};
pub use graded::{make_complex, tensor_id, tensor_product, ComplexBuilder, Generator, GradedComplex};
pub use homology::{homology, homology_in, DegreeModel, HomologyGroup, HomologyModel, HomologyReport};
pub use les::{check_short_exact, les_of_ses, LesNode, LesReport, Position};
