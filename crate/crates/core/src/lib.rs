//! Exact verification toolkit for primitive solvable permutation groups,
//! branched-cover dimension bounds, and the numerical intersection theory of
//! the symmetric square of an elliptic curve.
//!
//! Everything is computed exhaustively at desk scale with exact integer and
//! rational arithmetic; reports are deterministic byte-for-byte.

pub mod affine;
pub mod group;
pub mod hurwitz;
pub mod monodromy;
pub mod perm;
pub mod surface;

pub use affine::{
    affine_group, census_primitive_solvable, semilinear_group, verify_fixed_point_bounds,
    AffineError, CensusEntry, CensusResult, FixedPointReport,
};
pub use group::{BlockSearch, BlockSystem, GroupError, PermGroup, StructureReport};
pub use hurwitz::{
    branch_divisor_degree, family_dimension_bound, rh_genus, scan_dimension_bounds,
    zariski_lower_bound, BranchData, DimensionBound, HurwitzError, Rat, ScanResult, Target,
};
pub use monodromy::{
    check_zariski_on_tuples, enumerate_tuples, genus_census, GenusCensus, MonodromyError,
    MonodromyTuple, TupleFilter, ZariskiTupleReport,
};
pub use perm::{CycleType, PermError, Permutation};
pub use surface::{
    canonical_class, fiber_class, section_class, verify_surface_numerics, DivisorClass,
    SurfaceError, SurfaceReport,
};
