//! Geometry of measure-generated convex sets.
//!
//! A finite measure `mu` with total mass at least 1 generates a convex set:
//! the collection of barycenters of all unit-mass slices of `mu`. For a
//! discrete measure with atoms `(x_i, w_i)` this is
//!
//! ```text
//! { sum_i lambda_i x_i  :  0 <= lambda_i <= w_i,  sum_i lambda_i = 1 }
//! ```
//!
//! This crate provides the supporting geometry (bodies, gauges, a small LP
//! solver, direction nets), the measure toolkit (samplers, rescalings, grid
//! discretization), the generated-set engine (support evaluation, membership
//! certificates, vertex enumeration), explicit approximation constructions
//! with their mass/cost bounds, and fractional vertex-index certificates via
//! zonotope covers and centroid bodies.

pub mod body;
pub mod constructions;
pub mod error;
pub mod fmt;
pub mod lp;
pub mod measure;
pub mod metronoid;
pub mod net;
pub mod par;
pub mod polygon;
pub mod rng;
pub mod tol;
pub mod vector;
pub mod verify;
pub mod vertex_index;

// Re-exports grow as modules land.
pub use body::{bm_known_distance, BodySchema, ConvexBody};
pub use constructions::{
    directional_ratio_exact_2d, evaluate_dstar_dstar, grunbaum_ratio, mean_abs_inner,
    sphere_construction, tail_convexity_check, tail_lower_bound, tail_volume_ratio,
    uniform_body_construction, volume_mc, ConstructionReport, DstarRow, VolumeEstimate,
    DSTAR_CSV_HEADER,
};
pub use error::{Error, Result};
pub use lp::{lp_solve, LpProblem, LpResult, LpStatus, Sense};
pub use measure::{
    density_factor, discretize_grid, required_resolution, sample_body_uniform, sample_sphere,
    snap_to_grid, DiscreteMeasure, GridSpec, MeasureSchema, SamplerSpec, SamplerVariant,
};


pub use metronoid::{
    uniform_cap_extreme_2d, ContainmentMethod, ContainmentReport, MembershipCertificate,
    MembershipStatus, Metronoid, SandwichReport, ThresholdResult, ZonotopeEqualityReport,
};
pub use vertex_index::{
    ball_certificate, bm_transfer, centroid_body, centroid_energy,
    coordinate_one_sided_integrals, cross_polytope_certificate, cross_polytope_lower_functional,
    equivalence_pipeline, fvein_search, zonotope_cover_cost, Certificate, CertificateKind,
    PipelineReport, SearchOutcome,
};
pub use net::DirectionNet;
pub use vector::{LinearMap, Vector};
pub use verify::{verify_suites, PropertyReport, SUITES};
