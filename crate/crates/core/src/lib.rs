//! Sum systems, sum-and-distance systems, joint ordered factorisations and
//! principal reversible cuboids, with exact construction, verification and
//! decomposition between them.
//!
//! The set-level primitives live in [`sets`]; everything above builds on the
//! Minkowski sum and arithmetic-progression checks found there.

pub mod cli;
pub mod cuboid;
pub mod error;
pub mod jof;
pub mod report;
pub mod sds;
pub mod sets;
pub mod squares;
pub mod sumsystem;

pub use cuboid::{
    axis_sets, build_cuboid, building_op, cuboid_from_sumsystem, decompose_cuboid, kron_dir, verify_property_V,
    verify_reversible, Cuboid, CuboidDocument, MultiIndex,
};
pub use error::{Error, Result};
pub use jof::{canonicalise, count_jofs, enumerate_jofs, validate_jof, JointOrderedFactorisation, Step};
pub use report::{VerificationReport, Witness};
pub use sds::{
    sds_to_sumsys, sds_to_sumsys_inclusive, sds_to_sumsys_noninclusive, sumsys_to_sds, sumsys_to_sds_inclusive,
    sumsys_to_sds_noninclusive, verify_sds, Flavour, SdsDocument, SdsSystem,
};
pub use sets::{is_progression, minkowski_sum, progression_set, ComponentSet, Limits, Progression};
pub use squares::{
    associated_magic_square, most_perfect_square, reversible_square_even, reversible_square_odd, verify_square,
    SquareKind, SquareMatrix,
};
pub use sumsystem::{
    build_sum_system, check_palindromic, check_parity_dichotomy, decompose_sum_system, parity_signature,
    polynomial_check, verify_sum_system, Parity, SumSystem,
};
