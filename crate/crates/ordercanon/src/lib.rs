//! Canonical representations for point-set order types.
//!
//! The order type of a labeled point set assigns to each `(d+1)`-tuple of
//! points the sign of its orientation determinant. Two point sets are
//! isomorphic when some relabeling makes their order types agree on every
//! tuple. This crate computes, using exact arithmetic and orientation
//! queries only:
//!
//! * canonical string forms for planar order types, including degenerate
//!   (collinear) inputs and abstract rank-3 chirotope tables,
//! * canonical forms for general-position point sets in dimension `d >= 3`
//!   via a recursive, flag-driven encoding,
//! * automorphism groups and isomorphism witnesses,
//! * a brute-force reference oracle for small instances,
//! * text file formats, a generator, a dedup store and a bench harness
//!   behind the `ordercanon` CLI.
//!
//! The planar pipeline peels convex layers, walks spiral labelings seeded
//! at keypoints, serializes per-point radial blocks, and picks the
//! lexicographically minimal representation under a fixed token order.

pub mod blocks;
pub mod brute;
pub mod canon2d;
pub mod chirotope;
pub mod fileio;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod generate;
pub mod layers;
pub mod nd;
pub mod oracle;
pub mod predicates;
pub mod runbench;
pub mod spiral;
pub mod tokens;

// TEMP pub use blocks::{
// TEMP     build_knob_positions, build_radial_blocks, compress_level_blocks, decode_orientation,
// TEMP     reconstruct_radial_blocks, to_level_blocks, KnobEntry, KnobPositions, LevelBlocks,
// TEMP     RadialBlocks,
// TEMP };
// TEMP pub use brute::{brute_automorphisms, brute_canonical, brute_isomorphic, FlatEncoding};
// TEMP pub use canon2d::{canonical_form_2d, isomorphic_2d, CanonicalForm, IsoResult};
// TEMP pub use chirotope::{chirotope_from_points, validate_chirotope, ChirotopeTable, ValidationReport};
// TEMP pub use layers::{convex_hull_ccw, convex_layers, keypoints, s_of, ConvexLayers, HullCycle};
// TEMP pub use nd::{
// TEMP     canonical_form_nd, convex_layers_nd, extreme_points_d, face_flags_d, flag_labeling,
// TEMP     isomorphic_nd, otr_nd, Flag, HullFacetsD, LayersD, NdCanonicalForm,
// TEMP };
// TEMP pub use oracle::{
// TEMP     make_view, negated, oracle_query, CountingOracle, OracleView, OrientationOracle, Perm,
// TEMP     RealizableOracle, SubOracle, TabledOracle,
// TEMP };
pub use predicates::{orient, Orientation, PointSet};
// TEMP pub use tokens::{render_tokens, BlockTrie, Token};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("repeated label in query tuple")]
    RepeatedLabel,
    #[error("label {0} out of range for n={1}")]
    LabelOutOfRange(usize, usize),
    #[error("not a bijection on [0,{0})")]
    NotBijection(usize),
    #[error("guard exceeded: n={0} but at most {1} elements are allowed here")]
    GuardExceeded(usize, usize),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("chirotope table is identically zero")]
    ZeroChirotope,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("too few points: need at least {need}, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
