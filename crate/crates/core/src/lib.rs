//! Well-balanced orientations of finite multigraphs whose edge multiplicities
//! may be the countably infinite `ω`.
//!
//! An orientation is well-balanced when `λ⃗(x, y) ≥ ⌊λ(x, y)/2⌋` for every
//! pair of vertices, with `λ⃗(x, y) = ω` required whenever `λ(x, y) = ω`.

pub mod blocks;
pub mod connectivity;
pub mod contraction;
pub mod decomposition;
pub mod error;
pub mod ext;
mod flow;
pub mod format;
pub mod fuzz;
pub mod graph;
pub mod orientation;
pub mod orienter;
pub mod rayless;

pub use blocks::{block_tree, BlockTree};
pub use connectivity::{lambda, lambda_dir, verify_well_balanced, ConnectivityReport, PairReport};
pub use contraction::{contract, induce_quotient, lift_subgraph, ContractionSpec, QuotientResult};
pub use decomposition::{
    bond_faithful, edge_components_of_intersection, efficient_rewrite,
    glue_decomposition_orientations, is_bond, segment_connectivity_check, Decomposition,
    PathWitness,
};
pub use error::{Error, Result};
pub use ext::{ext_floor_half, ExtNat, Fin, Omega};
pub use graph::{components, delete_skeleton, neighbors_in_rest, ExtMultigraph, Pair, Skeleton};
pub use orientation::{ArcMap, Orientation};
pub use orienter::{
    glue_block_orientations, lift_orientation, orient_bounded_vertices, orient_extend_skeleton,
    orient_finite, orient_with_deleted_skeleton, project_path,
};
pub use rayless::{
    instantiate, orient_rayless1, surrogate, verify_symbolic, InductionOutcome, StarRayless,
    SymbolicOrientation, Template,
};
