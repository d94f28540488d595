//! Covering certificates and the fractional vertex index.
//!
//! A certificate is a measure whose metronoid provably contains a target
//! body, together with its transport cost. The one-sided zonotope of the
//! weighted atoms gives an equivalent generator picture: searching over
//! generators, costing them by the target's gauge, and converting back to
//! a measure of the form `delta_0 + sum (1/m) delta_{m y_i}`. Centroid
//! bodies and their energy close the loop: for a symmetric probability
//! measure the metronoid of `nu + delta_0` is half the centroid body.

use std::f64::consts::TAU;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::metronoid::{ContainmentReport, Metronoid};
use crate::net::DirectionNet;
use crate::rng::Stream;
use crate::tol;
use crate::vector::{rank, sum_compensated, Vector};
use crate::{constructions, par};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Containment decided by exact vertex membership programs.
    Exact,
    /// Containment checked on a direction net or a shrunken target.
    Sampled,
}

/// A measure covering `body` by its metronoid, at transport cost `cost`.
/// Certificates are only constructed after `verified.contained` holds.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub measure: DiscreteMeasure,
    pub body: ConvexBody,
    pub cost: f64,
    pub verified: ContainmentReport,
    pub kind: CertificateKind,
}

/// Vertex representation for bodies whose vertex set is small and exact:
/// V-polytopes as-is, cross-polytopes as `±r e_i`. Containment checks route
/// through this when available so certificates do not depend on a net.
fn vertex_form(k: &ConvexBody) -> Option<ConvexBody> {
    match k {
        ConvexBody::VPolytope { .. } => Some(k.clone()),
        ConvexBody::CrossPolytope { dim, radius } => {
            let mut v = Vec::with_capacity(2 * dim);
            for i in 0..*dim {
                v.push(Vector::basis(*dim, i).scale(*radius));
                v.push(Vector::basis(*dim, i).scale(-*radius));
            }
            Some(ConvexBody::vpolytope(v).expect("cross vertex list is nonempty"))
        }
        _ => None,
    }
}

fn verify_containment(m: &Metronoid, k: &ConvexBody, net: &DirectionNet) -> Result<ContainmentReport> {
    match vertex_form(k) {
        Some(vb) => m.contains_body(&vb, net),
        None => m.contains_body(k, net),
    }
}

/// Optimal-cost certificate for the unit cross-polytope: unit atoms at
/// `±e_i`. Every atom has gauge exactly 1, so the cost is exactly `2n`,
/// matching the lower functional bound.
pub fn cross_polytope_certificate(n: usize) -> Result<Certificate> {
    let body = ConvexBody::cross_polytope(n, 1.0)?;
    let mut atoms = Vec::with_capacity(2 * n);
    for i in 0..n {
        atoms.push((Vector::basis(n, i), 1.0));
        atoms.push((Vector::basis(n, i).scale(-1.0), 1.0));
    }
    let measure = DiscreteMeasure::new(n, atoms)?;
    let metronoid = Metronoid::new(measure.clone())?;
    let net = DirectionNet::standard(n, 0)?;
    let verified = verify_containment(&metronoid, &body, &net)?;
    if !verified.contained {
        return Err(Error::SearchFailed);
    }
    let cost = measure.transport_cost(&body)?;
    Ok(Certificate {
        measure,
        body,
        cost,
        verified,
        kind: CertificateKind::Exact,
    })
}

/// Certificate for the unit ball from the sphere construction: mass 2 spread
/// uniformly over the sphere of radius `1/mean_abs_inner(n)`. The cost is
/// the closed form `2/mean_abs_inner(n)`; containment is checked against a
/// ball shrunk by a sampling-noise allowance, so the certificate is sampled.
pub fn ball_certificate(n: usize, count: usize, seed: u64) -> Result<Certificate> {
    let report = constructions::sphere_construction(n, count, seed)?;
    let body = ConvexBody::ball(n, 1.0)?;
    let metronoid = Metronoid::new(report.measure.clone())?;
    // Direction-wise support fluctuation is ~1.5/sqrt(count) regardless of
    // dimension; 8/sqrt(count) leaves room for the max over the net.
    let allowance = (8.0 / (count as f64).sqrt()).clamp(0.02, 0.5);
    let shrunk = ConvexBody::ball(n, 1.0 - allowance)?;
    let net = DirectionNet::standard(n, 0)?;
    let verified = metronoid.contains_body(&shrunk, &net)?;
    if !verified.contained {
        return Err(Error::SearchFailed);
    }
    let cost = 2.0 / constructions::mean_abs_inner(n)?;
    Ok(Certificate {
        measure: report.measure,
        body,
        cost,
        verified,
        kind: CertificateKind::Sampled,
    })
}

/// One pair `(∫ (x_i)^+ dμ, ∫ (x_i)^- dμ)` per coordinate.
pub fn coordinate_one_sided_integrals(mu: &DiscreteMeasure) -> Vec<(f64, f64)> {
    (0..mu.dim())
        .map(|i| {
            let pos = sum_compensated(mu.atoms().iter().map(|(x, w)| w * x[i].max(0.0)));
            let neg = sum_compensated(mu.atoms().iter().map(|(x, w)| w * (-x[i]).max(0.0)));
            (pos, neg)
        })
        .collect()
}

/// Sum of all `2n` one-sided coordinate moments. When the metronoid of `mu`
/// contains the unit cross-polytope, taking the unit-mass slice toward
/// `±e_i` shows every summand is at least 1, so the total is at least `2n`.
/// The sum also equals the transport cost of `mu` to the cross-polytope.
pub fn cross_polytope_lower_functional(mu: &DiscreteMeasure, n: usize) -> Result<f64> {
    if mu.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mu.dim(),
        });
    }
    let sides = coordinate_one_sided_integrals(mu);
    Ok(sum_compensated(sides.into_iter().flat_map(|(p, m)| [p, m])))
}

/// Transfer a covering cost through a linear-image distance factor `d >= 1`:
/// if some linear image of the certificate's body sits inside a target with
/// gauge distortion `d`, pushing the measure forward covers that target at
/// cost `d * cert.cost`.
pub fn bm_transfer(cert: &Certificate, d: f64) -> Result<f64> {
    if !d.is_finite() || d < 1.0 {
        return Err(Error::InvalidParam(format!(
            "distance factor must be finite and >= 1, got {d}"
        )));
    }
    Ok(d * cert.cost)
}

fn one_sided_support(generators: &[Vector], theta: &Vector) -> f64 {
    sum_compensated(generators.iter().map(|g| g.dot(theta).max(0.0)))
}

/// Cost and feasibility of covering symmetric `k` by the one-sided zonotope
/// of `generators`. Cost is the gauge sum; feasibility is exact vertex
/// membership when `k` has a vertex form, otherwise a support check on the
/// net with `NET_SLACK` tolerance. Zero generators cost nothing and cover
/// nothing.
pub fn zonotope_cover_cost(
    generators: &[Vector],
    k: &ConvexBody,
    net: &DirectionNet,
) -> Result<(f64, bool)> {
    if !k.is_symmetric() {
        return Err(Error::InvalidBody("cover target must be symmetric".into()));
    }
    let n = k.dim();
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
    }
    let gauges = generators
        .iter()
        .map(|g| k.gauge(g))
        .collect::<Result<Vec<_>>>()?;
    let cost = sum_compensated(gauges);
    let feasible = match vertex_form(k) {
        Some(vb) => {
            let z = ConvexBody::zonotope_one_sided(n, generators.to_vec())?;
            let mut ok = true;
            for v in vb.vertices().expect("vertex form is a V-polytope") {
                if !z.contains(v, tol::LP_FEAS)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
        None => {
            let mut ok = true;
            for theta in net.directions() {
                if k.support(theta)? > one_sided_support(generators, theta) + tol::NET_SLACK {
                    ok = false;
                    break;
                }
            }
            ok
        }
    };
    Ok((cost, feasible))
}

/// One subgradient of the gauge of `k` at `y`. Closed forms for the norm
/// bodies; central differences through the LP gauge otherwise (accurate to
/// ~1e-3, enough to steer the search).
fn gauge_subgradient(k: &ConvexBody, y: &Vector) -> Result<Vector> {
    let n = k.dim();
    Ok(match k {
        ConvexBody::Ball { radius, .. } => {
            let nrm = y.norm2();
            if nrm == 0.0 {
                Vector::zeros(n)
            } else {
                y.scale(1.0 / (radius * nrm))
            }
        }
        ConvexBody::Cube { radius, .. } => {
            let mut j = 0;
            let mut best = 0.0;
            for (i, c) in y.0.iter().enumerate() {
                if c.abs() > best {
                    best = c.abs();
                    j = i;
                }
            }
            if best == 0.0 {
                Vector::zeros(n)
            } else {
                Vector::basis(n, j).scale(y[j].signum() / radius)
            }
        }
        ConvexBody::CrossPolytope { radius, .. } => Vector::new(
            y.0.iter()
                .map(|c| if *c == 0.0 { 0.0 } else { c.signum() / radius })
                .collect(),
        )?,
        _ => {
            let h = 1e-6 * (1.0 + y.norm2());
            let mut g = Vec::with_capacity(n);
            for i in 0..n {
                let mut yp = y.clone();
                yp.0[i] += h;
                let mut ym = y.clone();
                ym.0[i] -= h;
                g.push((k.gauge(&yp)? - k.gauge(&ym)?) / (2.0 * h));
            }
            Vector::new(g)?
        }
    })
}

const RESTARTS: usize = 8;
const STALL_WINDOW: usize = 50;

struct RestartResult {
    cost: f64,
    generators: Vec<Vector>,
    /// Best-so-far cost after each improvement, non-increasing.
    improvements: Vec<f64>,
}

fn initial_generators(
    k: &ConvexBody,
    m: usize,
    net: &DirectionNet,
    stream: &Stream,
    restart: usize,
) -> Result<Vec<Vector>> {
    let n = k.dim();
    let mut gens: Vec<Vector> = Vec::with_capacity(m);
    if n == 2 {
        // Evenly spaced rays; later restarts rotate and jitter the fan.
        let offset = if restart == 0 {
            0.0
        } else {
            stream.unit_at(0) * TAU / m as f64
        };
        for j in 0..m {
            let phi = TAU * j as f64 / m as f64 + offset;
            gens.push(Vector::new(vec![phi.cos(), phi.sin()])?);
        }
    } else {
        for j in 0..m {
            if j < 2 * n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                gens.push(Vector::basis(n, j / 2).scale(sign));
            } else {
                gens.push(Vector::new(stream.unit_coords(j as u64, n))?.normalized()?);
            }
        }
    }
    if restart > 0 {
        let jitter = 0.05 * restart as f64 / RESTARTS as f64;
        for (j, g) in gens.iter_mut().enumerate() {
            let noise = Vector::new(stream.normal_coords(1000 + j as u64, n))?;
            g.add_scaled(&noise, jitter);
        }
    }
    // Scale the fan so the one-sided zonotope covers k where possible.
    // Vertex-form targets verify by exact vertex membership, so their fans
    // are never shrunk below the given scale; sampled targets verify on
    // this same net, which makes a two-sided fit safe.
    let mut t: f64 = if vertex_form(k).is_some() { 1.0 } else { 0.0 };
    let mut coverable = true;
    for theta in net.directions() {
        let hz = one_sided_support(&gens, theta);
        let hk = k.support(theta)?;
        if hz <= 0.0 {
            if hk > 0.0 {
                coverable = false;
            }
            continue;
        }
        t = t.max(hk / hz);
    }
    if coverable && t > 0.0 {
        for g in gens.iter_mut() {
            *g = g.scale(t);
        }
    }
    Ok(gens)
}

fn run_restart(
    k: &ConvexBody,
    m: usize,
    net: &DirectionNet,
    stream: &Stream,
    restart: usize,
    iterations: usize,
) -> Result<Option<RestartResult>> {
    let n = k.dim();
    let mut gens = initial_generators(k, m, net, stream, restart)?;
    let mut penalty = 10.0 * n as f64;
    let mut best: Option<(f64, Vec<Vector>)> = None;
    let mut improvements = Vec::new();
    let mut stall = 0usize;
    // Feasibility during the search is held strictly inside the final
    // verification band so post-hoc checks have headroom.
    let band = 0.5 * tol::NET_SLACK;
    for it in 1..=iterations {
        let mut worst = f64::NEG_INFINITY;
        let mut worst_theta: Option<&Vector> = None;
        for theta in net.directions() {
            let v = k.support(theta)? - one_sided_support(&gens, theta);
            if v > worst {
                worst = v;
                worst_theta = Some(theta);
            }
        }
        let gauges = gens.iter().map(|g| k.gauge(g)).collect::<Result<Vec<_>>>()?;
        let cost = sum_compensated(gauges);
        if worst <= band && best.as_ref().is_none_or(|(c, _)| cost < c - 1e-12) {
            best = Some((cost, gens.clone()));
            improvements.push(cost);
            stall = 0;
        } else {
            stall += 1;
        }
        if stall >= STALL_WINDOW {
            penalty *= 2.0;
            stall = 0;
        }
        let theta_star = worst_theta.expect("net is nonempty");
        let step = 0.1 / (it as f64).sqrt();
        for g in gens.iter_mut() {
            let mut grad = gauge_subgradient(k, g)?;
            if worst > 0.0 && g.dot(theta_star) > 0.0 {
                grad.add_scaled(theta_star, -penalty);
            }
            g.add_scaled(&grad, -step);
        }
    }
    Ok(best.map(|(cost, generators)| RestartResult {
        cost,
        generators,
        improvements,
    }))
}

/// Search result: the sealed certificate, the winning generator fan, and
/// the merged best-so-far cost trace across restarts (non-increasing).
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub certificate: Certificate,
    pub generators: Vec<Vector>,
    pub best_costs: Vec<f64>,
}

/// Projected-subgradient search for a low-cost generator fan covering
/// symmetric `k`, over `m` generators with 8 deterministic restarts.
/// Minimizes gauge cost plus a doubling infeasibility penalty on the net;
/// candidates are re-verified through the measure form before a
/// certificate is emitted.
pub fn fvein_search(
    k: &ConvexBody,
    m: usize,
    seed: u64,
    iterations: usize,
) -> Result<SearchOutcome> {
    if !k.is_symmetric() {
        return Err(Error::InvalidBody("search target must be symmetric".into()));
    }
    let n = k.dim();
    if n > 6 {
        return Err(Error::InvalidParam(format!(
            "search supports dimension <= 6, got {n}"
        )));
    }
    if m == 0 || m > 8 * n {
        return Err(Error::InvalidParam(format!(
            "generator count must be in 1..={}, got {m}",
            8 * n
        )));
    }
    if iterations == 0 {
        return Err(Error::InvalidParam("iterations must be positive".into()));
    }
    let net = DirectionNet::standard(n, 0)?;
    let root = Stream::new(seed, "fvein");
    let runs = par::map_indexed(RESTARTS, |r| {
        run_restart(k, m, &net, &root.substream(r as u64), r, iterations)
    });
    let mut candidates: Vec<RestartResult> = Vec::new();
    let mut best_costs: Vec<f64> = Vec::new();
    for run in runs {
        let Some(rr) = run? else { continue };
        for &c in &rr.improvements {
            if best_costs.last().is_none_or(|&t| c < t) {
                best_costs.push(c);
            }
        }
        candidates.push(rr);
    }
    // Stable by cost; ties keep restart order.
    candidates.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    for cand in candidates {
        let mut atoms = vec![(Vector::zeros(n), 1.0)];
        let wm = 1.0 / m as f64;
        for g in &cand.generators {
            atoms.push((g.scale(m as f64), wm));
        }
        let measure = DiscreteMeasure::new(n, atoms)?;
        let metronoid = Metronoid::new(measure.clone())?;
        let verified = verify_containment(&metronoid, k, &net)?;
        if !verified.contained {
            continue;
        }
        let cost = measure.transport_cost(k)?;
        let kind = if vertex_form(k).is_some() {
            CertificateKind::Exact
        } else {
            CertificateKind::Sampled
        };
        return Ok(SearchOutcome {
            certificate: Certificate {
                measure,
                body: k.clone(),
                cost,
                verified,
                kind,
            },
            generators: cand.generators,
            best_costs,
        });
    }
    Err(Error::SearchFailed)
}

/// Symmetric zonotope with generators `w_i x_i` of a probability measure.
/// Errors when the mass is not 1 within `MASS_ONE` or the atoms do not span
/// the space (the gauge would be infinite off the span).
pub fn centroid_body(mu: &DiscreteMeasure) -> Result<ConvexBody> {
    let total = mu.total_mass();
    if (total - 1.0).abs() > tol::MASS_ONE {
        return Err(Error::InvalidMeasure(format!(
            "centroid body needs a probability measure, total mass {total}"
        )));
    }
    let n = mu.dim();
    let points: Vec<Vector> = mu.atoms().iter().map(|(x, _)| x.clone()).collect();
    if rank(&points, n) < n {
        return Err(Error::DegenerateSpan);
    }
    let generators = mu.atoms().iter().map(|(x, w)| x.scale(*w)).collect();
    ConvexBody::zonotope_symmetric(n, generators)
}

/// `∫ gauge_{Z1(mu)}(x) dμ(x)`: the mean gauge of the atoms in their own
/// centroid body. Scale-invariant in the atom positions.
pub fn centroid_energy(mu: &DiscreteMeasure) -> Result<f64> {
    let z = centroid_body(mu)?;
    let atoms = mu.atoms();
    let terms = par::map_indexed(atoms.len(), |i| {
        let (x, w) = &atoms[i];
        z.gauge(x).map(|g| w * g)
    });
    let mut vals = Vec::with_capacity(terms.len());
    for t in terms {
        vals.push(t?);
    }
    Ok(sum_compensated(vals))
}

/// Result of normalizing a covering measure to the symmetric probability
/// picture: `nu` is the symmetrized probability normalization of the input,
/// `containment` re-checks the cover as `M(nu + delta_0)`, the costs must
/// agree, and `bridge_gap` is the worst deviation on the net between
/// `msupport(nu + delta_0, .)` and half the centroid-body support of `nu`.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub nu: DiscreteMeasure,
    pub containment: ContainmentReport,
    pub cost_in: f64,
    pub cost_out: f64,
    pub bridge_gap: f64,
}

/// Normalize, symmetrize, and re-verify a covering measure for a symmetric
/// target, exposing the half-centroid-body identity. Requires the input
/// metronoid to contain `k`.
pub fn equivalence_pipeline(mu: &DiscreteMeasure, k: &ConvexBody) -> Result<PipelineReport> {
    if !k.is_symmetric() {
        return Err(Error::InvalidBody("pipeline target must be symmetric".into()));
    }
    if mu.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: mu.dim(),
        });
    }
    let net = DirectionNet::standard(k.dim(), 0)?;
    let pre = verify_containment(&Metronoid::new(mu.clone())?, k, &net)?;
    if !pre.contained {
        return Err(Error::InvalidParam(
            "pipeline requires the input metronoid to contain the target".into(),
        ));
    }
    let cost_in = mu.transport_cost(k)?;
    let nu = mu.normalize_probability()?.symmetrize();
    let cost_out = nu.transport_cost(k)?;
    let lifted = Metronoid::new(nu.with_origin(1.0)?)?;
    let containment = verify_containment(&lifted, k, &net)?;
    let z1 = centroid_body(&nu)?;
    let gaps = net
        .directions()
        .iter()
        .map(|theta| Ok((lifted.msupport(theta)? - 0.5 * z1.support(theta)?).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let bridge_gap = gaps.into_iter().fold(0.0, f64::max);
    Ok(PipelineReport {
        nu,
        containment,
        cost_in,
        cost_out,
        bridge_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metronoid::ContainmentMethod;
    use std::f64::consts::PI;

    #[test]
    fn cross_certificate_cost_is_exact() {
        for n in [1usize, 2, 4, 8] {
            let cert = cross_polytope_certificate(n).unwrap();
            assert_eq!(cert.cost, 2.0 * n as f64);
            assert_eq!(cert.kind, CertificateKind::Exact);
            assert!(cert.verified.contained);
            assert_eq!(cert.verified.method, ContainmentMethod::ExactVertices);
            assert_eq!(cert.measure.len(), 2 * n);
            assert_eq!(bm_transfer(&cert, 1.0).unwrap(), cert.cost);
        }
    }

    #[test]
    fn lower_functional_is_exact_on_cross_measure() {
        for n in [1usize, 3, 5] {
            let cert = cross_polytope_certificate(n).unwrap();
            let val = cross_polytope_lower_functional(&cert.measure, n).unwrap();
            assert_eq!(val, 2.0 * n as f64);
            for (p, m) in coordinate_one_sided_integrals(&cert.measure) {
                assert_eq!(p, 1.0);
                assert_eq!(m, 1.0);
            }
            assert_eq!(val, cert.measure.transport_cost(&cert.body).unwrap());
        }
    }

    #[test]
    fn lower_functional_certifies_random_containing_measures() {
        let n = 3;
        let body = ConvexBody::cross_polytope(n, 1.0).unwrap();
        let net = DirectionNet::standard(n, 0).unwrap();
        let stream = Stream::new(42, "lf-test");
        for case in 0..5u64 {
            let sub = stream.substream(case);
            let mut atoms = Vec::new();
            for i in 0..n {
                atoms.push((Vector::basis(n, i), 1.0));
                atoms.push((Vector::basis(n, i).scale(-1.0), 1.0));
            }
            for j in 0..3u64 {
                let coords: Vec<f64> = sub
                    .unit_coords(j, n)
                    .into_iter()
                    .map(|c| 4.0 * c - 2.0)
                    .collect();
                atoms.push((Vector::new(coords).unwrap(), 0.1 + sub.unit_at(100 + j)));
            }
            let mu = DiscreteMeasure::new(n, atoms).unwrap();
            let metro = Metronoid::new(mu.clone()).unwrap();
            let report = verify_containment(&metro, &body, &net).unwrap();
            assert!(report.contained, "adding atoms keeps the cover");
            for (p, m) in coordinate_one_sided_integrals(&mu) {
                assert!(p >= 1.0 - 1e-7 && m >= 1.0 - 1e-7);
            }
            assert!(cross_polytope_lower_functional(&mu, n).unwrap() >= 2.0 * n as f64 - 1e-6);
        }
        // Contrapositive: a shrunken cross measure is no cover and its
        // functional drops below 2n.
        let mut atoms = Vec::new();
        for i in 0..n {
            atoms.push((Vector::basis(n, i).scale(0.5), 1.0));
            atoms.push((Vector::basis(n, i).scale(-0.5), 1.0));
        }
        let mu = DiscreteMeasure::new(n, atoms).unwrap();
        let metro = Metronoid::new(mu.clone()).unwrap();
        assert!(!verify_containment(&metro, &body, &net).unwrap().contained);
        assert!(cross_polytope_lower_functional(&mu, n).unwrap() < 2.0 * n as f64);
    }

    #[test]
    fn ball_certificate_costs_match_closed_forms() {
        let c2 = ball_certificate(2, 4000, 11).unwrap();
        assert!((c2.cost - PI).abs() <= 1e-12);
        assert_eq!(c2.kind, CertificateKind::Sampled);
        assert!(c2.verified.contained);

        let c3 = ball_certificate(3, 4000, 2).unwrap();
        assert!((c3.cost - 4.0).abs() <= 1e-12);

        let c50 = ball_certificate(50, 400, 1).unwrap();
        let asymptotic = (TAU * 25.0).sqrt() * 2.0_f64.sqrt(); // sqrt(2 pi 50)
        let ratio = c50.cost / asymptotic;
        assert!(ratio > 0.95 && ratio < 1.05, "ratio {ratio}");
    }

    #[test]
    fn transfer_scales_cost_and_validates_factor() {
        let cert = cross_polytope_certificate(2).unwrap();
        let d = bm_known_distance_square();
        assert_eq!(bm_transfer(&cert, d).unwrap(), 4.0 * 2.0_f64.sqrt());
        assert!(bm_transfer(&cert, 0.9).is_err());
        assert!(bm_transfer(&cert, f64::NAN).is_err());
    }

    fn bm_known_distance_square() -> f64 {
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        let cross = ConvexBody::cross_polytope(2, 1.0).unwrap();
        crate::body::bm_known_distance(&ball, &cross).unwrap()
    }

    #[test]
    fn cover_cost_examples() {
        let n = 2;
        let k = ConvexBody::cross_polytope(n, 1.0).unwrap();
        let net = DirectionNet::standard(n, 0).unwrap();
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(Vector::basis(n, i));
            gens.push(Vector::basis(n, i).scale(-1.0));
        }
        let (cost, feasible) = zonotope_cover_cost(&gens, &k, &net).unwrap();
        assert_eq!(cost, 4.0);
        assert!(feasible);

        let half: Vec<Vector> = gens.iter().map(|g| g.scale(0.5)).collect();
        let (cost, feasible) = zonotope_cover_cost(&half, &k, &net).unwrap();
        assert_eq!(cost, 2.0);
        assert!(!feasible);

        let zeros = vec![Vector::zeros(n); 3];
        let (cost, feasible) = zonotope_cover_cost(&zeros, &k, &net).unwrap();
        assert_eq!(cost, 0.0);
        assert!(!feasible);

        let tri = ConvexBody::vpolytope(vec![
            Vector::new(vec![1.0, 0.0]).unwrap(),
            Vector::new(vec![0.0, 1.0]).unwrap(),
            Vector::new(vec![-1.0, -1.0]).unwrap(),
        ])
        .unwrap();
        assert!(zonotope_cover_cost(&gens, &tri, &net).is_err());
    }

    #[test]
    fn cover_cost_ball_fan() {
        let k = ConvexBody::ball(2, 1.0).unwrap();
        let net = DirectionNet::standard(2, 0).unwrap();
        let m = 8;
        let mut gens = Vec::new();
        for j in 0..m {
            let phi = TAU * j as f64 / m as f64;
            gens.push(Vector::new(vec![phi.cos(), phi.sin()]).unwrap());
        }
        // Scale to the minimal feasible fan, then price it.
        let mut t: f64 = 0.0;
        for theta in net.directions() {
            let hz = one_sided_support(&gens, theta);
            t = t.max(k.support(theta).unwrap() / hz);
        }
        let scaled: Vec<Vector> = gens.iter().map(|g| g.scale(t)).collect();
        let (cost, feasible) = zonotope_cover_cost(&scaled, &k, &net).unwrap();
        assert!(feasible);
        assert!(cost >= PI - 1e-9 && cost <= 1.06 * PI, "cost {cost}");

        let shrunk: Vec<Vector> = scaled.iter().map(|g| g.scale(0.99)).collect();
        let (_, feasible) = zonotope_cover_cost(&shrunk, &k, &net).unwrap();
        assert!(!feasible);
    }

    #[test]
    fn search_finds_cross_optima() {
        let k2 = ConvexBody::cross_polytope(2, 1.0).unwrap();
        let out = fvein_search(&k2, 4, 0, 300).unwrap();
        assert!(out.certificate.cost >= 4.0 - 1e-9 && out.certificate.cost <= 4.2);
        assert!(out.certificate.verified.contained);
        assert_eq!(out.certificate.kind, CertificateKind::Exact);
        assert!(out
            .best_costs
            .windows(2)
            .all(|w| w[1] <= w[0] + 1e-15));

        let k3 = ConvexBody::cross_polytope(3, 1.0).unwrap();
        let out = fvein_search(&k3, 6, 0, 300).unwrap();
        assert!(out.certificate.cost >= 6.0 - 1e-9 && out.certificate.cost <= 6.3);
    }

    #[test]
    fn search_prices_disc_cover() {
        let k = ConvexBody::ball(2, 1.0).unwrap();
        let out = fvein_search(&k, 16, 0, 2000).unwrap();
        assert!(out.certificate.cost <= 1.10 * PI, "cost {}", out.certificate.cost);
        assert!(out.certificate.cost >= PI - 1e-9);
        assert_eq!(out.certificate.kind, CertificateKind::Sampled);
        assert_eq!(out.generators.len(), 16);
        // The generator fan and the certificate measure price identically.
        let net = DirectionNet::standard(2, 0).unwrap();
        let (zcost, feasible) = zonotope_cover_cost(&out.generators, &k, &net).unwrap();
        assert!(feasible);
        assert!((zcost - out.certificate.cost).abs() <= 1e-12 * (1.0 + zcost));
    }

    #[test]
    fn search_handles_vertex_targets_and_rejects_bad_input() {
        // Square as an explicit V-polytope exercises the finite-difference
        // subgradient path and exact verification.
        let square = ConvexBody::vpolytope(vec![
            Vector::new(vec![1.0, 0.0]).unwrap(),
            Vector::new(vec![0.0, 1.0]).unwrap(),
            Vector::new(vec![-1.0, 0.0]).unwrap(),
            Vector::new(vec![0.0, -1.0]).unwrap(),
        ])
        .unwrap();
        let out = fvein_search(&square, 4, 0, 200).unwrap();
        assert!(out.certificate.cost <= 4.2);
        assert_eq!(out.certificate.kind, CertificateKind::Exact);

        let tri = ConvexBody::vpolytope(vec![
            Vector::new(vec![1.0, 0.0]).unwrap(),
            Vector::new(vec![0.0, 1.0]).unwrap(),
            Vector::new(vec![-1.0, -1.0]).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            fvein_search(&tri, 4, 0, 10),
            Err(Error::InvalidBody(_))
        ));
        let k = ConvexBody::cross_polytope(2, 1.0).unwrap();
        assert!(matches!(
            fvein_search(&k, 0, 0, 10),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            fvein_search(&k, 17, 0, 10),
            Err(Error::InvalidParam(_))
        ));
        let k7 = ConvexBody::cube(7, 1.0).unwrap();
        assert!(matches!(
            fvein_search(&k7, 4, 0, 10),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn centroid_energy_is_exact_on_coordinate_family() {
        for n in 2..=5usize {
            let w = 1.0 / (2 * n) as f64;
            let mut atoms = Vec::new();
            for i in 0..n {
                atoms.push((Vector::basis(n, i), w));
                atoms.push((Vector::basis(n, i).scale(-1.0), w));
            }
            let mu = DiscreteMeasure::new(n, atoms).unwrap();
            let z = centroid_body(&mu).unwrap();
            // Z1 is the cube of radius 1/n: check a support value.
            let e0 = Vector::basis(n, 0);
            assert!((z.support(&e0).unwrap() - 1.0 / n as f64).abs() <= 1e-15);
            let energy = centroid_energy(&mu).unwrap();
            assert!((energy - n as f64).abs() <= 1e-9, "n={n} energy={energy}");
            assert!(energy >= (n as f64).sqrt());
        }
    }

    #[test]
    fn centroid_body_validates_input() {
        let mu = DiscreteMeasure::new(2, vec![(Vector::new(vec![1.0, 0.0]).unwrap(), 2.0)]).unwrap();
        assert!(matches!(centroid_body(&mu), Err(Error::InvalidMeasure(_))));
        let line = DiscreteMeasure::new(
            2,
            vec![
                (Vector::new(vec![1.0, 1.0]).unwrap(), 0.5),
                (Vector::new(vec![-2.0, -2.0]).unwrap(), 0.5),
            ],
        )
        .unwrap();
        assert!(matches!(centroid_body(&line), Err(Error::DegenerateSpan)));
        let single = DiscreteMeasure::new(1, vec![(Vector::new(vec![3.0]).unwrap(), 1.0)]).unwrap();
        assert!((centroid_energy(&single).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn centroid_energy_matches_sphere_closed_form() {
        let mu = crate::measure::sample_sphere(3, 1.0, 1.0, 10_000, 0).unwrap();
        let energy = centroid_energy(&mu).unwrap();
        let target = 1.0 / constructions::mean_abs_inner(3).unwrap();
        assert!(
            (energy - target).abs() <= 0.02 * target,
            "energy {energy} target {target}"
        );
    }

    #[test]
    fn centroid_energy_dimension_sweep_beats_sqrt_n() {
        for n in 2..=8usize {
            let mu = crate::measure::sample_sphere(n, 1.0, 1.0, 1500, n as u64).unwrap();
            let energy = centroid_energy(&mu).unwrap();
            assert!(energy >= (n as f64).sqrt(), "n={n} energy={energy}");
        }
    }

    #[test]
    fn pipeline_preserves_cost_and_bridges_supports() {
        let cert = cross_polytope_certificate(2).unwrap();
        let report = equivalence_pipeline(&cert.measure, &cert.body).unwrap();
        assert!(report.containment.contained);
        assert_eq!(report.cost_in, 4.0);
        assert!((report.cost_out - report.cost_in).abs() <= 1e-9 * (1.0 + report.cost_in));
        assert!(report.bridge_gap <= 1e-10, "gap {}", report.bridge_gap);
        assert!((report.nu.total_mass() - 1.0).abs() <= 1e-12);
        assert!(report.nu.is_symmetric_atoms());
        // Atoms land at ±4 e_i with weight 1/4 after normalization.
        for (x, w) in report.nu.atoms() {
            assert!((x.norm2() - 4.0).abs() <= 1e-12);
            assert!((w - 0.25).abs() <= 1e-15);
        }

        let ball = ball_certificate(2, 2000, 3).unwrap();
        let target = ConvexBody::ball(2, 0.8).unwrap();
        let report = equivalence_pipeline(&ball.measure, &target).unwrap();
        assert!(report.containment.contained);
        assert!((report.cost_out - report.cost_in).abs() <= 1e-9 * (1.0 + report.cost_in));
        assert!(report.bridge_gap <= 1e-10, "gap {}", report.bridge_gap);
    }

    #[test]
    fn pipeline_rejects_non_covering_input() {
        let tiny = DiscreteMeasure::new(
            2,
            vec![
                (Vector::new(vec![0.1, 0.0]).unwrap(), 1.0),
                (Vector::new(vec![-0.1, 0.0]).unwrap(), 1.0),
                (Vector::new(vec![0.0, 0.1]).unwrap(), 1.0),
                (Vector::new(vec![0.0, -0.1]).unwrap(), 1.0),
            ],
        )
        .unwrap();
        let k = ConvexBody::cross_polytope(2, 1.0).unwrap();
        assert!(matches!(
            equivalence_pipeline(&tiny, &k),
            Err(Error::InvalidParam(_))
        ));
    }
}
