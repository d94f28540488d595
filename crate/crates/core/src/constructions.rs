//! Explicit approximating measures and the volume inequalities certifying
//! them: the spherical and uniform-density constructions, Monte Carlo
//! volume ratios with exact planar cross-checks, and the concave-profile
//! comparison behind the tail bound.

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::measure::{density_factor, sample_body_uniform, sample_sphere, DiscreteMeasure};
use crate::metronoid::{Metronoid, SandwichReport};
use crate::net::DirectionNet;
use crate::par;
use crate::polygon;
use crate::rng::Stream;
use crate::vector::Vector;
use statrs::function::gamma::ln_gamma;

/// Exact `Gamma(n/2) / (sqrt(pi) * Gamma((n+1)/2))`: the mean of |<u, e1>|
/// over the unit sphere. Asymptotically `sqrt(2/(pi n))`.
pub fn mean_abs_inner(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = n as f64;
    Ok((ln_gamma(n / 2.0) - ln_gamma((n + 1.0) / 2.0)).exp()
        / std::f64::consts::PI.sqrt())
}

/// A sampled measure whose generated set approximates a target body, with
/// the closed-form mass and cost the construction is designed to achieve
/// and the measured containment evidence.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub measure: DiscreteMeasure,
    /// Designed total mass (closed form; the sample total agrees to float
    /// accumulation error).
    pub mass: f64,
    /// Transport cost to the target body: closed form for the spherical
    /// construction, measured for the uniform one.
    pub cost: f64,
    pub containment: SandwichReport,
    /// (mass bound, cost bound) from the closed-form expressions, never
    /// from the sample.
    pub claimed_bounds: (f64, f64),
}

/// Twice the uniform sphere measure at radius `1/mean_abs_inner(n)`, whose
/// generated set is the unit ball in the infinite-sample limit. Mass is 2
/// and the cost to the ball is twice the radius.
pub fn sphere_construction(n: usize, count: usize, seed: u64) -> Result<ConstructionReport> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if count < n {
        return Err(Error::InvalidParam(format!(
            "need at least {n} atoms in dimension {n}, got {count}"
        )));
    }
    let radius = 1.0 / mean_abs_inner(n)?;
    let measure = sample_sphere(n, radius, 2.0, count, seed)?;
    let ball = ConvexBody::ball(n, 1.0)?;
    let net = DirectionNet::standard(n, 0)?;
    let containment = Metronoid::new(measure.clone())?.sandwich_check(&ball, radius, &net)?;
    Ok(ConstructionReport {
        measure,
        mass: 2.0,
        cost: 2.0 * radius,
        containment,
        claimed_bounds: (2.0, 2.0 * radius),
    })
}

/// Equal-weight sample of the uniform density on `R*K` scaled so the total
/// mass is exactly `exp(1 + (n-1)/(R-1))`. Every atom has gauge at most
/// `R`, so the cost is at most `R * mass`, and the generated set contains
/// `K` in the infinite-sample limit.
pub fn uniform_body_construction(
    k: &ConvexBody,
    r: f64,
    count: usize,
    seed: u64,
) -> Result<ConstructionReport> {
    let n = k.dim();
    if !(r > 1.0 && r <= n as f64) {
        return Err(Error::InvalidParam(format!(
            "scale {r} outside (1, {n}]"
        )));
    }
    require_centered(k, seed)?;
    let measure = sample_body_uniform(k, r, count, seed)?;
    let mass = density_factor(n, r)?;
    let cost = measure.transport_cost(k)?;
    let net = DirectionNet::standard(n, 0)?;
    let containment = Metronoid::new(measure.clone())?.sandwich_check(k, r, &net)?;
    Ok(ConstructionReport {
        measure,
        mass,
        cost,
        containment,
        claimed_bounds: (mass, r * mass),
    })
}

/// Monte Carlo estimate with its binomial standard error. For ratio
/// estimates `samples` is the effective count (hits in the reference set).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

fn box_point(units: &[f64], boxes: &[(f64, f64)]) -> Vector {
    Vector(
        units
            .iter()
            .zip(boxes)
            .map(|(u, (lo, hi))| lo + u * (hi - lo))
            .collect(),
    )
}

/// Hit-ratio volume estimate over the bounding box.
pub fn volume_mc(k: &ConvexBody, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParam("sample count must be positive".into()));
    }
    let n = k.dim();
    let boxes = k.bounding_intervals()?;
    let vol_box: f64 = boxes.iter().map(|(lo, hi)| hi - lo).product();
    let stream = Stream::new(seed, "volume-mc");
    let hits: u64 = par::map_blocks(samples, |a, b| {
        let mut h = 0u64;
        for i in a..b {
            let x = box_point(&stream.unit_coords(i, n), &boxes);
            if k.contains(&x, 0.0).unwrap() {
                h += 1;
            }
        }
        h
    })
    .into_iter()
    .sum();
    let p = hits as f64 / samples as f64;
    Ok(VolumeEstimate {
        value: vol_box * p,
        std_error: vol_box * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

fn mc_barycenter(k: &ConvexBody, seed: u64) -> Result<(Vector, f64)> {
    let n = k.dim();
    let boxes = k.bounding_intervals()?;
    let diam = boxes
        .iter()
        .map(|(lo, hi)| (hi - lo).powi(2))
        .sum::<f64>()
        .sqrt();
    let stream = Stream::new(seed, "center-check");
    const SAMPLES: u64 = 60_000;
    let parts = par::map_blocks(SAMPLES, |a, b| {
        let mut sums = vec![0.0f64; n];
        let mut hits = 0u64;
        for i in a..b {
            let x = box_point(&stream.unit_coords(i, n), &boxes);
            if k.contains(&x, 0.0).unwrap() {
                hits += 1;
                for j in 0..n {
                    sums[j] += x[j];
                }
            }
        }
        (sums, hits)
    });
    let mut sums = vec![0.0f64; n];
    let mut hits = 0u64;
    for (s, h) in parts {
        for j in 0..n {
            sums[j] += s[j];
        }
        hits += h;
    }
    if hits < 1000 {
        return Err(Error::RejectionStalled {
            tried: SAMPLES,
            accepted: hits,
        });
    }
    Ok((
        Vector(sums.iter().map(|s| s / hits as f64).collect()),
        diam,
    ))
}

/// Centered means barycenter at the origin; symmetric bodies qualify
/// outright, others get a Monte Carlo barycenter check against 0.01 of the
/// bounding-box diagonal.
fn require_centered(k: &ConvexBody, seed: u64) -> Result<()> {
    if k.is_symmetric() {
        return Ok(());
    }
    let (bary, diam) = mc_barycenter(k, seed)?;
    if bary.norm2() > 0.01 * diam {
        return Err(Error::InvalidBody(format!(
            "barycenter {:?} sits beyond 0.01 of the diameter from the origin",
            bary.0
        )));
    }
    Ok(())
}

/// Shared sampler for directional volume ratios. The tag is fixed so every
/// level over the same `(k, samples, seed)` sees the identical point set.
fn directional_ratio(
    k: &ConvexBody,
    u: &Vector,
    level: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParam("sample count must be positive".into()));
    }
    if u.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: u.dim(),
        });
    }
    if u.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let n = k.dim();
    let boxes = k.bounding_intervals()?;
    let stream = Stream::new(seed, "halfspace-mc");
    let parts = par::map_blocks(samples, |a, b| {
        let mut in_body = 0u64;
        let mut beyond = 0u64;
        for i in a..b {
            let x = box_point(&stream.unit_coords(i, n), &boxes);
            if k.contains(&x, 0.0).unwrap() {
                in_body += 1;
                if x.dot(u) >= level {
                    beyond += 1;
                }
            }
        }
        (in_body, beyond)
    });
    let (in_body, beyond) = parts
        .into_iter()
        .fold((0u64, 0u64), |(a, b), (c, d)| (a + c, b + d));
    if in_body < 1000 {
        return Err(Error::RejectionStalled {
            tried: samples,
            accepted: in_body,
        });
    }
    let p = beyond as f64 / in_body as f64;
    Ok(VolumeEstimate {
        value: p,
        std_error: (p * (1.0 - p) / in_body as f64).sqrt(),
        samples: in_body,
        seed,
    })
}

/// Fraction of the body's volume on the `<x, u> >= 0` side. At least `1/e`
/// for centered bodies, up to the 3-sigma Monte Carlo band.
pub fn grunbaum_ratio(
    k: &ConvexBody,
    u: &Vector,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    require_centered(k, seed)?;
    directional_ratio(k, u, 0.0, samples, seed)
}

/// Certified lower bound for the tail ratio of a centered body beyond the
/// level `h_K(u)/r`: Grünbaum's 1/e times the concave-profile comparison
/// factor `(1-1/r)^n`.
///
/// The oft-quoted stronger constant `exp(-1-(n-1)/(r-1))` overstates the
/// guarantee: at `r = 2` the planar simplex cut toward a vertex has exact
/// tail ratio 1/9, below `e^-2` (see the frozen test). The profile
/// comparison integrates to `(1-1/r)^n`, and the simplex attains it.
pub fn tail_lower_bound(n: usize, r: f64) -> f64 {
    (-1.0f64).exp() * (1.0 - 1.0 / r).powi(n as i32)
}

/// Fraction of the volume beyond the level `h_K(u)/R` for a centered body;
/// at least `tail_lower_bound`. `R = infinity` reduces to the halfspace
/// ratio on the identical sample set.
pub fn tail_volume_ratio(
    k: &ConvexBody,
    u: &Vector,
    r: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if !(r > 1.0) {
        return Err(Error::InvalidParam(format!("tail scale {r} must exceed 1")));
    }
    require_centered(k, seed)?;
    let level = k.support(u)? / r;
    directional_ratio(k, u, level, samples, seed)
}

/// Exact planar counterpart of the directional ratios: polygon clipping for
/// polytopes, the circular-segment formula for disks.
pub fn directional_ratio_exact_2d(k: &ConvexBody, u: &Vector, level: f64) -> Result<f64> {
    if k.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: k.dim(),
        });
    }
    if u.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let corners = match k {
        ConvexBody::Ball { radius, .. } => {
            let t = (level / (radius * u.norm2())).clamp(-1.0, 1.0);
            // Segment area over disk area: (acos t - t sqrt(1-t^2)) / pi.
            return Ok((t.acos() - t * (1.0 - t * t).sqrt()) / std::f64::consts::PI);
        }
        ConvexBody::Cube { radius, .. } => vec![
            Vector(vec![*radius, *radius]),
            Vector(vec![-*radius, *radius]),
            Vector(vec![-*radius, -*radius]),
            Vector(vec![*radius, -*radius]),
        ],
        ConvexBody::CrossPolytope { radius, .. } => vec![
            Vector(vec![*radius, 0.0]),
            Vector(vec![0.0, *radius]),
            Vector(vec![-*radius, 0.0]),
            Vector(vec![0.0, -*radius]),
        ],
        ConvexBody::VPolytope { vertices } => vertices.clone(),
        _ => {
            return Err(Error::InvalidBody(
                "exact planar ratio needs a disk or a polygon".into(),
            ))
        }
    };
    let hull = polygon::convex_hull(&corners)?;
    let total = polygon::polygon_area(&hull);
    if total <= 0.0 {
        return Err(Error::InvalidBody("polygon has no area".into()));
    }
    let clipped = polygon::clip_halfplane(&hull, u, level)?;
    Ok(polygon::polygon_area(&clipped) / total)
}

/// Verifies that the tail-to-total ratio of `g(f(t))` with `g(t) = t^power`
/// does not fall below the same ratio for the line through `(1, f(1))` and
/// `(r, 0)`. Trapezoid quadrature at grid resolution 1e-3; `f` must be
/// nonnegative and concave on the grid.
pub fn tail_convexity_check(f: impl Fn(f64) -> f64, r: f64, power: u32) -> Result<bool> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidParam(format!("range end {r} must exceed 1")));
    }
    if power == 0 {
        return Err(Error::InvalidParam(
            "comparison needs an increasing power".into(),
        ));
    }
    let m = (r / 1e-3).ceil() as usize;
    let h = r / m as f64;
    let values: Vec<f64> = (0..=m).map(|i| f(i as f64 * h)).collect();
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() || *v < -1e-12 * (1.0 + scale) {
            return Err(Error::InvalidParam(format!(
                "profile negative or non-finite at grid point {i}"
            )));
        }
    }
    for i in 1..m {
        if values[i - 1] + values[i + 1] - 2.0 * values[i] > 1e-9 * (1.0 + scale) {
            return Err(Error::InvalidParam(format!(
                "profile not concave at grid point {i}"
            )));
        }
    }
    let split = (m as f64 / r).round() as usize;
    let f1 = values[split];
    let line: Vec<f64> = (0..=m)
        .map(|i| f1 * (r - i as f64 * h) / (r - 1.0))
        .collect();
    let g = |v: f64| v.powi(power as i32);
    let trap = |vals: &[f64], from: usize| -> f64 {
        let mut s = 0.0;
        for i in from..m {
            s += 0.5 * (g(vals[i]) + g(vals[i + 1]));
        }
        s * h
    };
    let lhs = trap(&values, split) / trap(&values, 0);
    let rhs = trap(&line, split) / trap(&line, 0);
    Ok(lhs >= rhs - 1e-9 * (1.0 + rhs.abs()))
}

/// One CSV row comparing a construction against its closed-form bounds.
#[derive(Debug, Clone)]
pub struct DstarRow {
    pub n: usize,
    pub r: f64,
    pub mass: f64,
    pub cost: f64,
    pub bound_mass: f64,
    pub bound_cost: f64,
    pub contain_lo: Option<f64>,
    pub contain_hi: Option<f64>,
    pub verdict: bool,
}

pub const DSTAR_CSV_HEADER: &str = "n,R,mass,cost,bound_mass,bound_cost,contain_lo,contain_hi,verdict";

impl DstarRow {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(g17).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            g17(self.r),
            g17(self.mass),
            g17(self.cost),
            g17(self.bound_mass),
            g17(self.bound_cost),
            opt(self.contain_lo),
            opt(self.contain_hi),
            if self.verdict { "pass" } else { "fail" }
        )
    }
}

/// Flattens a construction report into a table row. `slack_tol` absorbs
/// sampling noise in the verdict: the inner side may dip below exact
/// containment by that much, the outer ratio may exceed `r` by it.
pub fn evaluate_dstar_dstar(report: &ConstructionReport, r: f64, slack_tol: f64) -> DstarRow {
    let inner_ok = match report.containment.inner.worst_slack {
        Some(s) => s >= -slack_tol,
        None => report.containment.inner.contained,
    };
    let outer_ok = match report.containment.outer_ratio {
        Some(q) => q <= r + slack_tol,
        None => true,
    };
    DstarRow {
        n: report.measure.dim(),
        r,
        mass: report.mass,
        cost: report.cost,
        bound_mass: report.claimed_bounds.0,
        bound_cost: report.claimed_bounds.1,
        contain_lo: report.containment.inner.worst_slack,
        contain_hi: report.containment.outer_ratio,
        verdict: inner_ok && outer_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_abs_inner_closed_values() {
        assert!((mean_abs_inner(1).unwrap() - 1.0).abs() <= 1e-14);
        assert!((mean_abs_inner(2).unwrap() - 2.0 / std::f64::consts::PI).abs() <= 1e-14);
        assert!((mean_abs_inner(3).unwrap() - 0.5).abs() <= 1e-14);
        let asym = (2.0 / (100.0 * std::f64::consts::PI)).sqrt();
        assert!((mean_abs_inner(100).unwrap() - asym).abs() <= 0.02 * asym);
        assert!(mean_abs_inner(0).is_err());
    }

    #[test]
    fn mean_abs_inner_recurrence() {
        // Gamma-ratio recurrence: I(n+2) = I(n) * n/(n+1).
        for n in 1..=40 {
            let lhs = mean_abs_inner(n + 2).unwrap();
            let rhs = mean_abs_inner(n).unwrap() * n as f64 / (n as f64 + 1.0);
            assert!((lhs - rhs).abs() <= 1e-12, "n={n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn sphere_construction_exact_fields() {
        let report = sphere_construction(2, 4000, 11).unwrap();
        assert_eq!(report.mass, 2.0);
        assert!((report.cost - std::f64::consts::PI).abs() <= 1e-12);
        assert!((report.measure.total_mass() - 2.0).abs() <= 1e-12);
        let radius = 1.0 / mean_abs_inner(2).unwrap();
        for (x, w) in report.measure.atoms() {
            assert!((x.norm2() - radius).abs() <= 1e-12 * radius);
            assert_eq!(*w, 2.0 / 4000.0);
        }
        let sampled_cost = report
            .measure
            .transport_cost(&ConvexBody::ball(2, 1.0).unwrap())
            .unwrap();
        assert!((sampled_cost - report.cost).abs() <= 1e-9 * report.cost);
        assert_eq!(report.claimed_bounds, (2.0, 2.0 * radius));
        assert!(sphere_construction(3, 2, 0).is_err());
    }

    #[test]
    fn sphere_construction_support_concentrates() {
        let report = sphere_construction(2, 10_000, 0).unwrap();
        let slack = report.containment.inner.worst_slack.unwrap();
        let ratio = report.containment.outer_ratio.unwrap();
        assert!(slack >= -0.02, "support dips to 1{slack:+e}");
        assert!(ratio <= 1.02, "support peaks at {ratio}");
        assert_eq!(report.containment.outer_pass, Some(true));
    }

    #[test]
    fn uniform_construction_mass_cost_containment() {
        let cube = ConvexBody::cube(2, 1.0).unwrap();
        let report = uniform_body_construction(&cube, 2.0, 20_000, 7).unwrap();
        let factor = density_factor(2, 2.0).unwrap();
        assert_eq!(report.mass, factor);
        assert!((report.measure.total_mass() - factor).abs() <= 1e-12 * factor);
        assert!(report.cost <= 2.0 * factor * (1.0 + 1e-12));
        for (x, _) in report.measure.atoms() {
            assert!(cube.gauge(x).unwrap() <= 2.0 + 1e-12);
        }
        assert!(report.containment.inner.worst_slack.unwrap() >= -0.05);
        assert_eq!(report.containment.outer_pass, Some(true));
        assert_eq!(report.claimed_bounds, (factor, 2.0 * factor));
    }

    #[test]
    fn uniform_construction_rejects_bad_inputs() {
        let cube = ConvexBody::cube(2, 1.0).unwrap();
        assert!(uniform_body_construction(&cube, 1.0, 100, 0).is_err());
        assert!(uniform_body_construction(&cube, 2.5, 100, 0).is_err());
        let shifted = ConvexBody::vpolytope(vec![
            Vector(vec![0.0, 0.0]),
            Vector(vec![1.0, 0.0]),
            Vector(vec![0.0, 1.0]),
        ])
        .unwrap();
        assert!(matches!(
            uniform_body_construction(&shifted, 1.5, 100, 0),
            Err(Error::InvalidBody(_))
        ));
    }

    #[test]
    fn volume_mc_examples() {
        let cube = volume_mc(&ConvexBody::cube(2, 1.0).unwrap(), 20_000, 3).unwrap();
        assert_eq!(cube.value, 4.0);
        assert_eq!(cube.std_error, 0.0);

        let ball = volume_mc(&ConvexBody::ball(2, 1.0).unwrap(), 400_000, 3).unwrap();
        assert!((ball.value - std::f64::consts::PI).abs() <= 0.02);
        assert!((ball.value - std::f64::consts::PI).abs() <= 3.0 * ball.std_error);

        let cross = volume_mc(&ConvexBody::cross_polytope(3, 1.0).unwrap(), 400_000, 3).unwrap();
        assert!((cross.value - 4.0 / 3.0).abs() <= 3.0 * cross.std_error);
    }

    fn centered_triangle() -> ConvexBody {
        ConvexBody::vpolytope(vec![
            Vector(vec![1.0, 0.0]),
            Vector(vec![0.0, 1.0]),
            Vector(vec![-1.0, -1.0]),
        ])
        .unwrap()
    }

    #[test]
    fn grunbaum_examples() {
        let u = Vector(vec![0.3, -0.8]);
        let ball = grunbaum_ratio(&ConvexBody::ball(2, 1.0).unwrap(), &u, 200_000, 5).unwrap();
        assert!((ball.value - 0.5).abs() <= 3.0 * ball.std_error);

        // Worst direction of a simplex: toward a vertex, here normal to the
        // opposite side. The small side holds (n/(n+1))^n of the volume.
        let tri = centered_triangle();
        let toward_vertex = Vector(vec![-1.0, -1.0]);
        let exact = directional_ratio_exact_2d(&tri, &toward_vertex, 0.0).unwrap();
        assert!((exact - 4.0 / 9.0).abs() <= 1e-12, "exact {exact}");
        let mc = grunbaum_ratio(&tri, &toward_vertex, 400_000, 5).unwrap();
        assert!((mc.value - exact).abs() <= 3.0 * mc.std_error);
        assert!(mc.value >= 1.0 / std::f64::consts::E - 3.0 * mc.std_error);
    }

    #[test]
    fn grunbaum_simplex_3d() {
        let simplex = ConvexBody::vpolytope(vec![
            Vector(vec![1.0, 0.0, 0.0]),
            Vector(vec![0.0, 1.0, 0.0]),
            Vector(vec![0.0, 0.0, 1.0]),
            Vector(vec![-1.0, -1.0, -1.0]),
        ])
        .unwrap();
        let u = Vector(vec![-1.0, -1.0, -1.0]);
        let mc = grunbaum_ratio(&simplex, &u, 400_000, 9).unwrap();
        let want = (3.0f64 / 4.0).powi(3);
        assert!((mc.value - want).abs() <= 3.0 * mc.std_error, "{}", mc.value);
        assert!(mc.value >= 1.0 / std::f64::consts::E - 3.0 * mc.std_error);
    }

    #[test]
    fn grunbaum_rejects_uncentered() {
        let shifted = ConvexBody::vpolytope(vec![
            Vector(vec![0.0, 0.0]),
            Vector(vec![1.0, 0.0]),
            Vector(vec![0.0, 1.0]),
        ])
        .unwrap();
        assert!(grunbaum_ratio(&shifted, &Vector(vec![1.0, 0.0]), 10_000, 0).is_err());
    }

    #[test]
    fn tail_ratio_examples() {
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        let u = Vector(vec![0.0, 1.0]);
        // Segment beyond half the support: area fraction
        // (acos(1/2) - (1/2)sqrt(3)/2)/pi.
        let want = ((0.5f64).acos() - 0.5 * (0.75f64).sqrt()) / std::f64::consts::PI;
        let exact = directional_ratio_exact_2d(&ball, &u, 0.5).unwrap();
        assert!((exact - want).abs() <= 1e-12);
        let mc = tail_volume_ratio(&ball, &u, 2.0, 400_000, 5).unwrap();
        assert!((mc.value - want).abs() <= 3.0 * mc.std_error);
        let bound = (-2.0f64).exp();
        assert!(mc.value >= bound - 3.0 * mc.std_error);

        let tri = centered_triangle();
        let toward_vertex = Vector(vec![-1.0, -1.0]);
        let level = tri.support(&toward_vertex).unwrap() / 2.0;
        let exact = directional_ratio_exact_2d(&tri, &toward_vertex, level).unwrap();
        let mc = tail_volume_ratio(&tri, &toward_vertex, 2.0, 400_000, 5).unwrap();
        assert!(
            (mc.value - exact).abs() <= 3.0 * mc.std_error,
            "mc {} exact {exact}",
            mc.value
        );
        assert!(mc.value >= tail_lower_bound(2, 2.0) - 3.0 * mc.std_error);
    }

    /// The simplex cut toward a vertex pins down the correct tail constant:
    /// its exact ratio at r=2 is 1/9, strictly below e^-2, yet above the
    /// profile-argument bound e^-1 * (1-1/r)^n = e^-1/4.
    #[test]
    fn simplex_separates_tail_constants() {
        let tri = centered_triangle();
        let u = Vector(vec![-1.0, -1.0]);
        let level = tri.support(&u).unwrap() / 2.0;
        let exact = directional_ratio_exact_2d(&tri, &u, level).unwrap();
        assert!((exact - 1.0 / 9.0).abs() <= 1e-12, "exact {exact}");
        assert!(exact < (-2.0f64).exp());
        assert!(exact >= tail_lower_bound(2, 2.0));
        // The ball clears both constants comfortably.
        let ball_exact =
            directional_ratio_exact_2d(&ConvexBody::ball(2, 1.0).unwrap(), &u, level_for_ball())
                .unwrap();
        assert!(ball_exact >= (-2.0f64).exp());
        fn level_for_ball() -> f64 {
            0.5 * Vector(vec![-1.0, -1.0]).norm2()
        }
    }

    #[test]
    fn tail_at_infinity_is_grunbaum() {
        let tri = centered_triangle();
        let u = Vector(vec![-1.0, -1.0]);
        let g = grunbaum_ratio(&tri, &u, 100_000, 4).unwrap();
        let t = tail_volume_ratio(&tri, &u, f64::INFINITY, 100_000, 4).unwrap();
        assert_eq!(g, t);
    }

    #[test]
    fn tail_convexity_examples() {
        // The comparison line itself: ratios coincide.
        assert!(tail_convexity_check(|t| (2.0 - t) / 1.0, 2.0, 1).unwrap());
        // Constant profile: tail share 1/2 beats the line's 1/4.
        assert!(tail_convexity_check(|_| 1.0, 2.0, 1).unwrap());
        // Elliptic profile under a square power.
        assert!(
            tail_convexity_check(|t| 0.7 * (1.0 - (t / 3.0).powi(2)).max(0.0).sqrt(), 3.0, 2)
                .unwrap()
        );
        // Convex profiles are rejected.
        assert!(tail_convexity_check(|t| (t - 1.0).powi(2), 2.0, 1).is_err());
    }

    #[test]
    fn dstar_row_shapes() {
        let cube = ConvexBody::cube(2, 1.0).unwrap();
        let report = uniform_body_construction(&cube, 2.0, 5_000, 7).unwrap();
        let row = evaluate_dstar_dstar(&report, 2.0, 1e-2);
        assert_eq!(row.n, 2);
        assert_eq!(row.mass, density_factor(2, 2.0).unwrap());
        assert_eq!(row.bound_cost, 2.0 * row.bound_mass);
        assert!(row.verdict);
        let line = row.csv_row();
        assert!(line.ends_with("pass"));
        assert_eq!(line.split(',').count(), DSTAR_CSV_HEADER.split(',').count());
    }
}
