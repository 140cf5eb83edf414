//! The boundary surfaces of the model block: the strip complex of a type,
//! its topology, its compact leaves and gaps, and the realizability check.

pub mod census;
pub mod complex;
pub mod gaps;
pub mod layout;
pub mod leaves;
pub mod realize;
pub mod render;

pub use census::{half_edge_tally, surface_census, BoundaryCircle, Census, SurfaceComponent};
pub use complex::{build_complex, EdgeSide, Strip, SurfaceComplex};
pub use gaps::{classify_gaps, BoundaryLeaf, GapReport};
pub use layout::{BandLayout, Q};
pub use leaves::{trace_leaf, LeafTrace};
pub use render::render_svg;
pub use realize::{
    analyze_side, block_boundary_summary, check_realizable_filled, check_realizable_with, BlockBoundarySummary,
    BlockTorus, RealizabilityVerdict, SideAnalysis, Violation, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("non-orientable gluing at strip {strip}")]
    NonOrientable { strip: String },
    #[error("leaf trace of {cycle} diverged: {detail}")]
    TraceDiverged { cycle: String, detail: String },
    #[error("cap at {dart}: {detail}")]
    CapLeaf { dart: String, detail: String },
    #[error("unpaired separatrix: {0}")]
    UnpairedSeparatrix(String),
    #[error("type is not realizable: {0}")]
    NotRealizable(String),
}
