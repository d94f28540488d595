//! Numeric tolerances shared across the crate.
//!
//! Every comparison against an analytic identity goes through one of these
//! named constants so that the tolerance in force at any call site is
//! auditable.

/// LP feasibility tolerance: a returned solution satisfies every equality
/// constraint and bound to within this slack.
pub const LP_FEAS: f64 = 1e-9;

/// LP optimality tolerance on reduced costs.
pub const LP_OPT: f64 = 1e-9;

/// Pivot magnitude below which a basis column is treated as numerically zero.
pub const LP_PIVOT: f64 = 1e-11;

/// Membership is reported as `Boundary` when the smallest support slack over
/// the direction net is at most this band.
pub const BOUNDARY_BAND: f64 = 1e-7;

/// Net-based containment verdicts tolerate this much negative slack.
pub const NET_SLACK: f64 = 1e-7;

/// Atom positions closer than this (per coordinate) merge into one atom.
pub const ATOM_MERGE: f64 = 1e-12;

/// Projection levels closer than this are grouped when locating thresholds.
pub const LEVEL_GROUP: f64 = 1e-12;

/// Direction-net entries are unit vectors to within this tolerance.
pub const UNIT_NORM: f64 = 1e-12;

/// Total mass may fall short of 1 by this much and still generate a set.
pub const MASS_ONE: f64 = 1e-9;

/// Symmetric-generator support identities hold to this tolerance.
pub const ZONOID_EQ: f64 = 1e-10;

/// Forward-then-inverse pushforward returns atoms within this distance.
pub const PUSHFORWARD_ROUNDTRIP: f64 = 1e-10;

/// Determinants smaller than this flag a map as non-invertible.
pub const SINGULAR_DET: f64 = 1e-12;

/// Support comparisons between equivalent formulations (greedy vs. LP,
/// generated set vs. hull/zonotope envelopes).
pub const SUPPORT_EQ: f64 = 1e-9;
