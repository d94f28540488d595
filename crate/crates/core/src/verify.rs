//! Randomized cross-module property suites behind the `verify` command.
//! Each property reports the worst slack it observed against the tolerance
//! it must stay under, so a passing line still shows its headroom.

use crate::body::ConvexBody;
use crate::constructions::{grunbaum_ratio, sphere_construction, tail_lower_bound};
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::metronoid::{MembershipStatus, Metronoid};
use crate::rng::Stream;
use crate::tol;
use crate::vector::Vector;
use crate::vertex_index::{
    centroid_energy, cross_polytope_certificate, cross_polytope_lower_functional,
    equivalence_pipeline,
};

pub const SUITES: [&str; 4] = ["metronoid", "body", "constructions", "vertex-index"];

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub suite: &'static str,
    pub property: &'static str,
    pub cases: usize,
    pub worst_slack: f64,
    pub tol: f64,
    pub pass: bool,
}

impl PropertyReport {
    fn new(
        suite: &'static str,
        property: &'static str,
        cases: usize,
        worst_slack: f64,
        tol: f64,
    ) -> Self {
        PropertyReport {
            suite,
            property,
            cases,
            worst_slack,
            tol,
            pass: worst_slack <= tol,
        }
    }
}

/// Runs the named suite (all four when `filter` is None) at the given case
/// count and returns one report per property. Entirely serial and seeded,
/// so outputs are identical for any worker count.
pub fn verify_suites(
    filter: Option<&str>,
    seed: u64,
    cases: usize,
) -> Result<Vec<PropertyReport>> {
    if cases == 0 {
        return Err(Error::InvalidParam("case count must be positive".into()));
    }
    if let Some(f) = filter {
        if !SUITES.contains(&f) {
            return Err(Error::InvalidParam(format!(
                "unknown suite {f:?}; expected one of {SUITES:?}"
            )));
        }
    }
    let run = |name: &str| filter.is_none_or(|f| f == name);
    let mut out = Vec::new();
    if run("metronoid") {
        metronoid_suite(seed, cases, &mut out)?;
    }
    if run("body") {
        body_suite(seed, cases, &mut out)?;
    }
    if run("constructions") {
        constructions_suite(seed, cases, &mut out)?;
    }
    if run("vertex-index") {
        vertex_index_suite(seed, cases, &mut out)?;
    }
    Ok(out)
}

/// Random measure with atoms in [-2, 2]^n and mass comfortably above 1.
fn random_measure(stream: &Stream, n: usize, atoms: usize) -> Result<DiscreteMeasure> {
    let mut pts = Vec::with_capacity(atoms);
    for j in 0..atoms {
        let coords: Vec<f64> = (0..n)
            .map(|i| 4.0 * stream.unit_at((j * n + i) as u64) - 2.0)
            .collect();
        let w = 0.1 + stream.unit_at((atoms * n + j) as u64);
        pts.push((Vector::new(coords)?, w));
    }
    let total: f64 = pts.iter().map(|(_, w)| w).sum();
    if total < 1.2 {
        let s = 1.2 / total;
        for (_, w) in pts.iter_mut() {
            *w *= s;
        }
    }
    DiscreteMeasure::new(n, pts)
}

fn metronoid_suite(seed: u64, cases: usize, out: &mut Vec<PropertyReport>) -> Result<()> {
    let s = Stream::new(seed, "verify-metronoid");
    let mut lp_gap = 0.0f64;
    let mut attain_gap = 0.0f64;
    let mut member_violations = 0usize;
    let mut hull_gap = 0.0f64;
    let mut mono_gap = 0.0f64;
    for c in 0..cases {
        let cs = s.substream(c as u64);
        let n = 2 + c % 4;
        let atoms = 3 + (cs.unit_at(9_000) * 10.0) as usize;
        let mu = random_measure(&cs, n, atoms)?;
        let met = Metronoid::new(mu.clone())?;
        for d in 0..50u64 {
            let theta = Vector::new(cs.normal_coords(10_000 + d, n))?.normalized()?;
            let h = met.msupport(&theta)?;
            lp_gap = lp_gap.max((h - met.msupport_lp(&theta)?).abs());
            if d < 10 {
                let y = met.extreme_point(&theta)?;
                attain_gap = attain_gap.max((y.dot(&theta) - h).abs());
                let hull = mu
                    .atoms()
                    .iter()
                    .map(|(p, _)| p.dot(&theta))
                    .fold(f64::NEG_INFINITY, f64::max);
                hull_gap = hull_gap.max(h - hull);
                if d < 3 && met.membership(&y)?.status == MembershipStatus::Outside {
                    member_violations += 1;
                }
            }
        }
        let scaled = DiscreteMeasure::new(
            n,
            mu.atoms()
                .iter()
                .map(|(p, w)| (p.clone(), 1.5 * w))
                .collect(),
        )?;
        let met_scaled = Metronoid::new(scaled)?;
        for d in 0..5u64 {
            let theta = Vector::new(cs.normal_coords(50_000 + d, n))?.normalized()?;
            mono_gap = mono_gap.max(met.msupport(&theta)? - met_scaled.msupport(&theta)?);
        }
    }
    out.push(PropertyReport::new(
        "metronoid",
        "greedy-support-matches-lp",
        cases,
        lp_gap,
        tol::SUPPORT_EQ,
    ));
    out.push(PropertyReport::new(
        "metronoid",
        "extreme-point-attains-support",
        cases,
        attain_gap,
        tol::SUPPORT_EQ,
    ));
    out.push(PropertyReport::new(
        "metronoid",
        "extreme-point-membership",
        cases,
        member_violations as f64,
        0.0,
    ));
    out.push(PropertyReport::new(
        "metronoid",
        "atom-hull-contains-generated-set",
        cases,
        hull_gap.max(0.0),
        1e-10,
    ));
    out.push(PropertyReport::new(
        "metronoid",
        "support-monotone-under-mass-rescale",
        cases,
        mono_gap.max(0.0),
        1e-10,
    ));
    Ok(())
}

fn body_suite(seed: u64, cases: usize, out: &mut Vec<PropertyReport>) -> Result<()> {
    let s = Stream::new(seed, "verify-body");
    let mut gauge_violations = 0usize;
    let mut even_gap = 0.0f64;
    for c in 0..cases {
        let cs = s.substream(c as u64);
        let n = 2 + c % 3;
        let radius = 0.5 + cs.unit_at(1);
        let body = match c % 4 {
            0 => ConvexBody::ball(n, radius)?,
            1 => ConvexBody::cube(n, radius)?,
            2 => ConvexBody::cross_polytope(n, radius)?,
            _ => {
                let gens: Result<Vec<Vector>> = (0..6)
                    .map(|j| Vector::new(cs.normal_coords(100 + j, n)))
                    .collect();
                ConvexBody::zonotope_symmetric(n, gens?)?
            }
        };
        for (pi, target) in [0.5, 0.9, 1.1, 1.6].into_iter().enumerate() {
            let x = Vector::new(cs.normal_coords(200 + pi as u64, n))?;
            let g = body.gauge(&x)?;
            if g <= 1e-9 {
                continue;
            }
            let probe = x.scale(target / g);
            let pg = body.gauge(&probe)?;
            if (pg - 1.0).abs() < 1e-6 {
                continue;
            }
            if (pg <= 1.0) != body.contains(&probe, tol::LP_FEAS)? {
                gauge_violations += 1;
            }
        }
        for d in 0..6u64 {
            let theta = Vector::new(cs.normal_coords(300 + d, n))?;
            let gap = (body.support(&theta)? - body.support(&theta.scale(-1.0))?).abs();
            even_gap = even_gap.max(gap);
        }
    }
    out.push(PropertyReport::new(
        "body",
        "gauge-agrees-with-membership",
        cases,
        gauge_violations as f64,
        0.0,
    ));
    out.push(PropertyReport::new(
        "body",
        "support-even-for-symmetric",
        cases,
        even_gap,
        0.0,
    ));
    Ok(())
}

fn centered_triangle() -> Result<ConvexBody> {
    let r3 = 3.0f64.sqrt();
    ConvexBody::vpolytope(vec![
        Vector::new(vec![0.0, 2.0])?,
        Vector::new(vec![-r3, -1.0])?,
        Vector::new(vec![r3, -1.0])?,
    ])
}

fn constructions_suite(seed: u64, cases: usize, out: &mut Vec<PropertyReport>) -> Result<()> {
    let mcases = cases.clamp(2, 8);
    let mut mass_gap = 0.0f64;
    for c in 0..mcases {
        let n = 2 + c % 3;
        let report = sphere_construction(n, 400 + 100 * c, seed + c as u64)?;
        mass_gap = mass_gap.max((report.measure.total_mass() - report.mass).abs());
    }
    out.push(PropertyReport::new(
        "constructions",
        "sphere-construction-mass",
        mcases,
        mass_gap,
        tol::MASS_ONE,
    ));

    let scales = [1.5, 2.0, 4.0, 16.0];
    let mut range_violations = 0usize;
    for n in 1..=6 {
        let mut prev = 0.0f64;
        for r in scales {
            let t = tail_lower_bound(n, r);
            let cap = (-1.0f64).exp() + 1e-15;
            if !(t > 0.0 && t <= cap && t + 1e-15 >= prev) {
                range_violations += 1;
            }
            prev = t;
        }
    }
    out.push(PropertyReport::new(
        "constructions",
        "tail-bound-range-and-monotone",
        6 * scales.len(),
        range_violations as f64,
        0.0,
    ));

    let bodies = [centered_triangle()?, ConvexBody::ball(2, 1.0)?];
    let u = Vector::new(vec![0.6, -0.8])?;
    let mut worst = 0.0f64;
    for (i, k) in bodies.iter().enumerate() {
        let est = grunbaum_ratio(k, &u, 20_000, seed + i as u64)?;
        let floor = (-1.0f64).exp() - 4.0 * est.std_error;
        worst = worst.max(floor - est.value);
    }
    out.push(PropertyReport::new(
        "constructions",
        "halfspace-ratio-floor",
        bodies.len(),
        worst.max(0.0),
        0.0,
    ));
    Ok(())
}

fn vertex_index_suite(seed: u64, cases: usize, out: &mut Vec<PropertyReport>) -> Result<()> {
    let mut cost_gap = 0.0f64;
    let mut unverified = 0usize;
    for n in 1..=6 {
        let cert = cross_polytope_certificate(n)?;
        cost_gap = cost_gap.max((cert.cost - 2.0 * n as f64).abs());
        if !cert.verified.contained {
            unverified += 1;
        }
    }
    out.push(PropertyReport::new(
        "vertex-index",
        "cross-certificate-cost-exact",
        6,
        cost_gap + unverified as f64,
        0.0,
    ));

    let s = Stream::new(seed, "verify-functional");
    let fcases = cases.clamp(10, 60);
    let mut functional_gap = 0.0f64;
    for c in 0..fcases {
        let cs = s.substream(c as u64);
        let n = 2 + c % 3;
        let mut atoms: Vec<(Vector, f64)> = (0..2 * n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                (Vector::basis(n, j / 2).scale(sign), 1.0)
            })
            .collect();
        for j in 0..3u64 {
            atoms.push((
                Vector::new(cs.normal_coords(j, n))?,
                0.2 + cs.unit_at(100 + j),
            ));
        }
        let mu = DiscreteMeasure::new(n, atoms)?;
        let value = cross_polytope_lower_functional(&mu, n)?;
        let floor = 2.0 * n as f64 * (1.0 - 1e-6);
        functional_gap = functional_gap.max(floor - value);
    }
    out.push(PropertyReport::new(
        "vertex-index",
        "cross-lower-functional-floor",
        fcases,
        functional_gap.max(0.0),
        0.0,
    ));

    let mut energy_gap = 0.0f64;
    for n in 2..=6 {
        let w = 1.0 / (2 * n) as f64;
        let atoms: Vec<(Vector, f64)> = (0..2 * n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                (Vector::basis(n, j / 2).scale(sign), w)
            })
            .collect();
        let mu = DiscreteMeasure::new(n, atoms)?;
        energy_gap = energy_gap.max((centroid_energy(&mu)? - n as f64).abs());
    }
    out.push(PropertyReport::new(
        "vertex-index",
        "coordinate-family-energy-exact",
        5,
        energy_gap,
        1e-9,
    ));

    let mut bridge_gap = 0.0f64;
    let mut cost_drift = 0.0f64;
    for n in 2..=4 {
        let cert = cross_polytope_certificate(n)?;
        let report = equivalence_pipeline(&cert.measure, &cert.body)?;
        bridge_gap = bridge_gap.max(report.bridge_gap);
        cost_drift = cost_drift.max((report.cost_out - report.cost_in).abs());
    }
    out.push(PropertyReport::new(
        "vertex-index",
        "pipeline-bridge-gap",
        3,
        bridge_gap,
        tol::ZONOID_EQ,
    ));
    out.push(PropertyReport::new(
        "vertex-index",
        "pipeline-cost-preserved",
        3,
        cost_drift,
        1e-9,
    ));
    Ok(())
}
