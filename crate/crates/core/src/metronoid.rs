//! The engine: support, extreme points, membership, and vertices of the
//! convex set generated by a discrete measure.
//!
//! For a measure with atoms `(x_i, w_i)` and total mass at least 1, the
//! generated set is `{ sum_i lambda_i x_i : 0 <= lambda_i <= w_i,
//! sum_i lambda_i = 1 }`. Its support function in direction `theta` is
//! computed greedily: pour coefficient mass onto atoms in order of
//! decreasing `<x_i, theta>` until exactly one unit is used. The crossing
//! level is found by weighted quickselect, so a support query is linear in
//! the atom count.

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpProblem, LpStatus};
use crate::net::DirectionNet;
use crate::par;
use crate::polygon;
use crate::tol;
use crate::vector::{sum_compensated, Vector};

#[derive(Debug, Clone)]
pub struct Metronoid {
    measure: crate::measure::DiscreteMeasure,
}

/// Greedy threshold data for one direction: the level `r` where cumulative
/// weight (from the top) first reaches 1, the weight strictly above the
/// level group, and the weight inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub r: f64,
    pub mass_above: f64,
    pub mass_at: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipStatus {
    Inside,
    Boundary,
    Outside,
}

/// Coefficient witness for a membership query. For inside/boundary points
/// the coefficients satisfy the defining constraints within LP tolerance.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub lambda: Vec<f64>,
    pub status: MembershipStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainmentMethod {
    ExactVertices,
    NetSupport,
}

#[derive(Debug, Clone)]
pub struct ContainmentReport {
    pub contained: bool,
    pub method: ContainmentMethod,
    /// Minimum of `msupport - support_K` over the net (net method only).
    pub worst_slack: Option<f64>,
    /// Violating direction (net method) or vertex (exact method).
    pub witness: Option<Vector>,
    /// Whether the necessary screen `positive_part_integral >= support_K`
    /// held everywhere it was evaluated.
    pub screen_ok: bool,
}

#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub inner: ContainmentReport,
    /// None when `r` is infinite (outer side skipped).
    pub outer_pass: Option<bool>,
    pub outer_ratio: Option<f64>,
    pub outer_witness: Option<Vector>,
    /// True when the outer side was certified through vertex enumeration
    /// rather than the net alone.
    pub outer_exact: bool,
}

#[derive(Debug, Clone)]
pub struct ZonotopeEqualityReport {
    pub equal: bool,
    /// Worst direction and its |support gap| (present even when equal).
    pub witness: Option<(Vector, f64)>,
}

fn check_direction(dim: usize, theta: &Vector) -> Result<()> {
    if theta.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: theta.dim(),
        });
    }
    if theta.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(())
}

/// Level at which cumulative weight from the top first reaches `1`.
/// Expected linear time; the slice is permuted freely.
fn weighted_top_level(scratch: &mut [(f64, f64)]) -> f64 {
    let mut lo = 0usize;
    let mut hi = scratch.len();
    let mut need = 1.0f64;
    loop {
        if hi - lo <= 32 {
            scratch[lo..hi].sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let mut cum = 0.0;
            for item in &scratch[lo..hi] {
                cum += item.1;
                if cum >= need {
                    return item.0;
                }
            }
            // Mass deficit within construction tolerance: lowest level.
            return scratch[hi - 1].0;
        }
        let mid = lo + (hi - lo) / 2;
        let (a, b, c) = (scratch[lo].0, scratch[mid].0, scratch[hi - 1].0);
        let pivot = a.max(b).min(a.min(b).max(c));
        // Three-way partition: [> pivot | == pivot | < pivot].
        let (mut i, mut j, mut k) = (lo, lo, hi);
        let (mut mass_gt, mut mass_eq) = (0.0f64, 0.0f64);
        while j < k {
            if scratch[j].0 > pivot {
                mass_gt += scratch[j].1;
                scratch.swap(i, j);
                i += 1;
                j += 1;
            } else if scratch[j].0 == pivot {
                mass_eq += scratch[j].1;
                j += 1;
            } else {
                k -= 1;
                scratch.swap(j, k);
            }
        }
        if mass_gt >= need {
            hi = i;
        } else if mass_gt + mass_eq >= need {
            return pivot;
        } else {
            need -= mass_gt + mass_eq;
            lo = j;
        }
    }
}

impl Metronoid {
    /// Rejects measures with total mass below 1 (the generated set would be
    /// empty).
    pub fn new(measure: crate::measure::DiscreteMeasure) -> Result<Self> {
        let total = measure.total_mass();
        if total < 1.0 - tol::MASS_ONE {
            return Err(Error::MassBelowOne { total });
        }
        if measure.is_empty() {
            return Err(Error::InvalidMeasure(
                "measure needs at least one atom".into(),
            ));
        }
        Ok(Metronoid { measure })
    }

    pub fn measure(&self) -> &crate::measure::DiscreteMeasure {
        &self.measure
    }

    pub fn dim(&self) -> usize {
        self.measure.dim()
    }

    fn levels(&self, theta: &Vector) -> Vec<(f64, f64)> {
        self.measure
            .atoms()
            .iter()
            .map(|(x, w)| (x.dot(theta), *w))
            .collect()
    }

    pub fn threshold(&self, theta: &Vector) -> Result<ThresholdResult> {
        check_direction(self.dim(), theta)?;
        let levels = self.levels(theta);
        Ok(self.threshold_from_levels(&levels))
    }

    fn threshold_from_levels(&self, levels: &[(f64, f64)]) -> ThresholdResult {
        let mut scratch = levels.to_vec();
        let r = weighted_top_level(&mut scratch);
        let band = tol::LEVEL_GROUP;
        let mass_above = sum_compensated(
            levels
                .iter()
                .filter(|(d, _)| *d > r + band)
                .map(|(_, w)| *w),
        );
        let mass_at = sum_compensated(
            levels
                .iter()
                .filter(|(d, _)| (*d - r).abs() <= band)
                .map(|(_, w)| *w),
        );
        ThresholdResult {
            r,
            mass_above,
            mass_at,
        }
    }

    fn fractional_coefficient(t: &ThresholdResult) -> f64 {
        if t.mass_at > 0.0 {
            ((1.0 - t.mass_above) / t.mass_at).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }

    /// The point of the generated set farthest in direction `theta`:
    /// full weight above the threshold level, fraction `c` of the weight at
    /// the level, spread weight-proportionally across tied atoms.
    pub fn extreme_point(&self, theta: &Vector) -> Result<Vector> {
        check_direction(self.dim(), theta)?;
        let levels = self.levels(theta);
        let t = self.threshold_from_levels(&levels);
        let c = Self::fractional_coefficient(&t);
        let n = self.dim();
        let band = tol::LEVEL_GROUP;
        let mut sum = vec![0.0f64; n];
        let mut comp = vec![0.0f64; n];
        for ((x, w), (d, _)) in self.measure.atoms().iter().zip(&levels) {
            let coeff = if *d > t.r + band {
                *w
            } else if (*d - t.r).abs() <= band {
                c * *w
            } else {
                continue;
            };
            for j in 0..n {
                let term = coeff * x[j];
                let s = sum[j] + term;
                comp[j] += if sum[j].abs() >= term.abs() {
                    (sum[j] - s) + term
                } else {
                    (term - s) + sum[j]
                };
                sum[j] = s;
            }
        }
        Ok(Vector(
            sum.iter().zip(&comp).map(|(s, c)| s + c).collect(),
        ))
    }

    /// Support function of the generated set.
    pub fn msupport(&self, theta: &Vector) -> Result<f64> {
        check_direction(self.dim(), theta)?;
        let levels = self.levels(theta);
        let t = self.threshold_from_levels(&levels);
        let c = Self::fractional_coefficient(&t);
        let band = tol::LEVEL_GROUP;
        Ok(sum_compensated(levels.iter().filter_map(|(d, w)| {
            if *d > t.r + band {
                Some(w * d)
            } else if (*d - t.r).abs() <= band {
                Some(c * w * d)
            } else {
                None
            }
        })))
    }

    /// Reference value for `msupport` through the LP solver; used by
    /// verification suites.
    pub fn msupport_lp(&self, theta: &Vector) -> Result<f64> {
        check_direction(self.dim(), theta)?;
        let atoms = self.measure.atoms();
        let objective: Vec<f64> = atoms.iter().map(|(x, _)| x.dot(theta)).collect();
        let upper: Vec<f64> = atoms.iter().map(|(_, w)| *w).collect();
        let m = atoms.len();
        let r = lp_solve(&LpProblem::maximize(
            objective,
            vec![vec![1.0; m]],
            vec![1.0],
            vec![0.0; m],
            upper,
        ))?;
        if r.status != LpStatus::Optimal {
            return Err(Error::LpFailure(format!(
                "support LP ended {:?}",
                r.status
            )));
        }
        Ok(r.objective)
    }

    pub fn default_net(&self) -> Result<DirectionNet> {
        DirectionNet::standard(self.dim(), 0)
    }

    pub fn membership(&self, x: &Vector) -> Result<MembershipCertificate> {
        self.membership_with_net(x, &self.default_net()?)
    }

    /// Solves the defining feasibility system for `x`. Feasible points are
    /// classified `Boundary` when some net direction's support gap falls
    /// within `BOUNDARY_BAND`, otherwise `Inside`.
    pub fn membership_with_net(
        &self,
        x: &Vector,
        net: &DirectionNet,
    ) -> Result<MembershipCertificate> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        let atoms = self.measure.atoms();
        let m = atoms.len();
        let n = self.dim();
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|i| atoms.iter().map(|(p, _)| p[i]).collect())
            .collect();
        rows.push(vec![1.0; m]);
        let mut rhs = x.0.clone();
        rhs.push(1.0);
        let upper: Vec<f64> = atoms.iter().map(|(_, w)| *w).collect();
        let r = lp_solve(&LpProblem::feasibility(rows, rhs, vec![0.0; m], upper))?;
        if r.status != LpStatus::Optimal {
            return Ok(MembershipCertificate {
                lambda: Vec::new(),
                status: MembershipStatus::Outside,
            });
        }
        let mut boundary = false;
        for theta in net.directions() {
            let gap = self.msupport(theta)? - x.dot(theta);
            if gap <= tol::BOUNDARY_BAND {
                boundary = true;
                break;
            }
        }
        Ok(MembershipCertificate {
            lambda: r.solution,
            status: if boundary {
                MembershipStatus::Boundary
            } else {
                MembershipStatus::Inside
            },
        })
    }

    /// Extreme points of the generated set. Planar measures use an exact
    /// angle sweep; higher dimensions enumerate basic coefficient vectors
    /// (at most one fractional coordinate) and filter to the extremes.
    pub fn vertices(&self) -> Result<Vec<Vector>> {
        if self.measure.total_mass() <= 1.0 {
            let mut bary = Vector::zeros(self.dim());
            for (x, w) in self.measure.atoms() {
                bary.add_scaled(x, *w);
            }
            return Ok(vec![bary]);
        }
        if self.dim() == 2 {
            self.vertices_sweep_2d()
        } else {
            self.vertices_brute()
        }
    }

    fn vertices_sweep_2d(&self) -> Result<Vec<Vector>> {
        let atoms = self.measure.atoms();
        let mut events: Vec<f64> = Vec::new();
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                let d = atoms[i].0.sub(&atoms[j].0);
                if d.norm_inf() <= 1e-15 {
                    continue;
                }
                // Directions where atoms i and j trade places in the level
                // order: perpendicular to their difference.
                let phi = d[0].atan2(-d[1]);
                for shift in [0.0, std::f64::consts::PI] {
                    let mut a = (phi + shift) % std::f64::consts::TAU;
                    if a < 0.0 {
                        a += std::f64::consts::TAU;
                    }
                    events.push(a);
                }
            }
        }
        events.sort_by(|a, b| a.partial_cmp(b).unwrap());
        events.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
        let probes: Vec<f64> = if events.len() < 2 {
            (0..4)
                .map(|k| std::f64::consts::TAU * (2.0 * k as f64 + 1.0) / 8.0)
                .collect()
        } else {
            let m = events.len();
            (0..m)
                .map(|k| {
                    let a = events[k];
                    let b = if k + 1 == m {
                        events[0] + std::f64::consts::TAU
                    } else {
                        events[k + 1]
                    };
                    0.5 * (a + b)
                })
                .collect()
        };
        let mut points = Vec::with_capacity(probes.len());
        for phi in probes {
            points.push(self.extreme_point(&Vector(vec![phi.cos(), phi.sin()]))?);
        }
        polygon::convex_hull(&points)
    }

    fn vertices_brute(&self) -> Result<Vec<Vector>> {
        let atoms = self.measure.atoms();
        let m = atoms.len();
        let n = self.dim();
        if m > 22 {
            return Err(Error::TooManyAtoms { atoms: m, dim: n });
        }
        // Vertices of the coefficient polytope have every coordinate at a
        // bound (0 or w_i) except at most one fractional index topping the
        // sum up to 1. Enumerate subsets by DFS (pruned once the weight
        // passes 1), then try every excluded index as the fractional one.
        fn rec(
            atoms: &[(Vector, f64)],
            idx: usize,
            sum: f64,
            in_set: &mut [bool],
            point: &mut Vector,
            out: &mut Vec<Vector>,
        ) -> Result<()> {
            if sum > 1.0 + 1e-12 {
                return Ok(());
            }
            if out.len() > 2_000_000 {
                return Err(Error::TooManyAtoms {
                    atoms: atoms.len(),
                    dim: point.dim(),
                });
            }
            if (sum - 1.0).abs() <= 1e-12 {
                // Exact full-subset point; extensions only push past 1.
                out.push(point.clone());
                return Ok(());
            }
            if idx == atoms.len() {
                let frac = 1.0 - sum;
                for (f, (x, w)) in atoms.iter().enumerate() {
                    if !in_set[f] && frac <= *w + 1e-12 {
                        let mut p = point.clone();
                        p.add_scaled(x, frac.min(*w));
                        out.push(p);
                    }
                }
                return Ok(());
            }
            rec(atoms, idx + 1, sum, in_set, point, out)?;
            let (x, w) = &atoms[idx];
            in_set[idx] = true;
            point.add_scaled(x, *w);
            rec(atoms, idx + 1, sum + w, in_set, point, out)?;
            point.add_scaled(x, -*w);
            in_set[idx] = false;
            Ok(())
        }
        let mut candidates: Vec<Vector> = Vec::new();
        let mut in_set = vec![false; m];
        let mut point = Vector::zeros(n);
        rec(atoms, 0, 0.0, &mut in_set, &mut point, &mut candidates)?;
        dedupe_window(&mut candidates, 1e-9);
        extreme_filter(candidates)
    }

    /// Support of the generated set against its two outer bounds: the
    /// convex hull of atom positions and the one-sided zonotope of the
    /// weighted positions.
    pub fn hull_zonotope_bounds(&self, theta: &Vector) -> Result<(f64, f64, f64)> {
        check_direction(self.dim(), theta)?;
        let h_m = self.msupport(theta)?;
        let positions: Vec<Vector> = self.measure.atoms().iter().map(|(x, _)| x.clone()).collect();
        let hull = ConvexBody::vpolytope(positions)?;
        let gens: Vec<Vector> = self
            .measure
            .atoms()
            .iter()
            .map(|(x, w)| x.scale(*w))
            .collect();
        let zono = ConvexBody::zonotope_one_sided(self.dim(), gens)?;
        Ok((h_m, hull.support(theta)?, zono.support(theta)?))
    }

    fn origin_weight(merged: &crate::measure::DiscreteMeasure) -> f64 {
        merged
            .atoms()
            .iter()
            .filter(|(x, _)| x.is_zero())
            .map(|(_, w)| w)
            .sum()
    }

    /// Closed form `1/2 sum_i w_i |<x_i, theta>|`, valid when the measure is
    /// symmetric with mass at most 2 and unit origin weight.
    pub fn zonoid_support_symmetric(&self, theta: &Vector) -> Result<f64> {
        check_direction(self.dim(), theta)?;
        let merged = self.measure.merged();
        if !merged.is_symmetric_atoms() {
            return Err(Error::InvalidMeasure(
                "closed zonoid form needs a symmetric measure".into(),
            ));
        }
        if merged.total_mass() > 2.0 + 1e-12 {
            return Err(Error::InvalidMeasure(
                "closed zonoid form needs total mass at most 2".into(),
            ));
        }
        if Self::origin_weight(&merged) < 1.0 - 1e-12 {
            return Err(Error::InvalidMeasure(
                "closed zonoid form needs origin weight at least 1".into(),
            ));
        }
        Ok(0.5
            * sum_compensated(
                merged
                    .atoms()
                    .iter()
                    .map(|(x, w)| w * x.dot(theta).abs()),
            ))
    }

    /// Whether the sufficient condition for the generated set to equal its
    /// one-sided zonotope holds: off-origin mass at most 1 and origin
    /// weight at least 1.
    pub fn meets_zonotope_condition(&self) -> bool {
        let merged = self.measure.merged();
        let origin = Self::origin_weight(&merged);
        let off = merged.total_mass() - origin;
        off <= 1.0 + 1e-12 && origin >= 1.0 - 1e-12
    }

    pub fn zonotope_equality_check(&self) -> Result<ZonotopeEqualityReport> {
        self.zonotope_equality_check_with_net(&self.default_net()?)
    }

    /// Compares msupport against the one-sided zonotope of weighted
    /// positions over the net. Reports the worst direction either way.
    pub fn zonotope_equality_check_with_net(
        &self,
        net: &DirectionNet,
    ) -> Result<ZonotopeEqualityReport> {
        let gens: Vec<Vector> = self
            .measure
            .atoms()
            .iter()
            .map(|(x, w)| x.scale(*w))
            .collect();
        let zono = ConvexBody::zonotope_one_sided(self.dim(), gens)?;
        let gaps = par::map_indexed(net.len(), |i| {
            let theta = &net.directions()[i];
            let gap = (self.msupport(theta).unwrap() - zono.support(theta).unwrap()).abs();
            gap
        });
        let mut worst = 0usize;
        for (i, g) in gaps.iter().enumerate() {
            if *g > gaps[worst] {
                worst = i;
            }
        }
        let gap = gaps[worst];
        Ok(ZonotopeEqualityReport {
            equal: gap <= tol::SUPPORT_EQ,
            witness: Some((net.directions()[worst].clone(), gap)),
        })
    }

    /// `sum over atoms in the open positive halfspace of w_i <x_i, theta>`,
    /// an upper bound for msupport.
    pub fn positive_part_integral(&self, theta: &Vector) -> Result<f64> {
        check_direction(self.dim(), theta)?;
        Ok(sum_compensated(self.measure.atoms().iter().filter_map(
            |(x, w)| {
                let d = x.dot(theta);
                if d > 0.0 {
                    Some(w * d)
                } else {
                    None
                }
            },
        )))
    }

    /// Containment `K` inside the generated set. V-polytopes are decided
    /// exactly through vertex membership; other bodies through a support
    /// comparison over the net plus the positive-part necessary screen.
    pub fn contains_body(&self, k: &ConvexBody, net: &DirectionNet) -> Result<ContainmentReport> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: k.dim(),
            });
        }
        if let Some(vertices) = k.vertices() {
            for v in vertices {
                let cert = self.membership_with_net(v, net)?;
                if cert.status == MembershipStatus::Outside {
                    return Ok(ContainmentReport {
                        contained: false,
                        method: ContainmentMethod::ExactVertices,
                        worst_slack: None,
                        witness: Some(v.clone()),
                        screen_ok: true,
                    });
                }
            }
            return Ok(ContainmentReport {
                contained: true,
                method: ContainmentMethod::ExactVertices,
                worst_slack: None,
                witness: None,
                screen_ok: true,
            });
        }
        let slacks = par::map_indexed(net.len(), |i| {
            let theta = &net.directions()[i];
            let hk = k.support(theta).unwrap();
            let hm = self.msupport(theta).unwrap();
            let ppi = self.positive_part_integral(theta).unwrap();
            (hm - hk, ppi - hk)
        });
        let mut worst = 0usize;
        let mut screen_ok = true;
        for (i, (slack, screen)) in slacks.iter().enumerate() {
            if *slack < slacks[worst].0 {
                worst = i;
            }
            if *screen < -tol::NET_SLACK {
                screen_ok = false;
            }
        }
        let worst_slack = slacks[worst].0;
        let pass = worst_slack >= -tol::NET_SLACK && screen_ok;
        Ok(ContainmentReport {
            contained: pass,
            method: ContainmentMethod::NetSupport,
            worst_slack: Some(worst_slack),
            witness: if pass {
                None
            } else {
                Some(net.directions()[worst].clone())
            },
            screen_ok,
        })
    }

    /// Two-sided check `K inside M inside R K`. Pass `f64::INFINITY` for
    /// `r` to check only the inner side. The outer side uses the net and,
    /// when vertex enumeration is feasible, exact vertex gauges.
    pub fn sandwich_check(
        &self,
        k: &ConvexBody,
        r: f64,
        net: &DirectionNet,
    ) -> Result<SandwichReport> {
        if !(r >= 1.0) {
            return Err(Error::InvalidParam(format!(
                "outer factor {r} must be at least 1"
            )));
        }
        let inner = self.contains_body(k, net)?;
        if r.is_infinite() {
            return Ok(SandwichReport {
                inner,
                outer_pass: None,
                outer_ratio: None,
                outer_witness: None,
                outer_exact: false,
            });
        }
        let ratios = par::map_indexed(net.len(), |i| {
            let theta = &net.directions()[i];
            let hk = k.support(theta).unwrap();
            let hm = self.msupport(theta).unwrap();
            if hk > 0.0 {
                hm / hk
            } else if hm <= tol::NET_SLACK {
                1.0
            } else {
                f64::INFINITY
            }
        });
        let mut worst = 0usize;
        for (i, q) in ratios.iter().enumerate() {
            if *q > ratios[worst] {
                worst = i;
            }
        }
        let mut pass = ratios[worst] <= r + tol::NET_SLACK;
        let mut exact = false;
        // Exact vertex gauges only at enumerable scale; the planar sweep is
        // quadratic in the atom count, so sampled measures stay on the net.
        if self.measure.len() <= 400 {
            match self.vertices() {
                Ok(vs) => {
                    exact = true;
                    for v in &vs {
                        if k.gauge(v)? > r + tol::LP_FEAS {
                            pass = false;
                        }
                    }
                }
                Err(Error::TooManyAtoms { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(SandwichReport {
            inner,
            outer_pass: Some(pass),
            outer_ratio: Some(ratios[worst]),
            outer_witness: Some(net.directions()[worst].clone()),
            outer_exact: exact,
        })
    }
}

/// Extreme point, in direction `theta`, of the set generated by the uniform
/// measure on a planar polygon scaled so caps of area `delta` carry unit
/// mass: the centroid of the cap cut at the level where the cap area equals
/// `delta`.
pub fn uniform_cap_extreme_2d(
    polygon: &ConvexBody,
    delta: f64,
    theta: &Vector,
) -> Result<Vector> {
    let vertices = polygon
        .vertices()
        .ok_or_else(|| Error::InvalidBody("cap extreme needs a vertex polytope".into()))?;
    if polygon.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: polygon.dim(),
        });
    }
    check_direction(2, theta)?;
    let hull = polygon::convex_hull(vertices)?;
    let area = polygon::polygon_area(&hull);
    if !(delta > 0.0 && delta < area) {
        return Err(Error::InvalidParam(format!(
            "cap area {delta} outside (0, {area})"
        )));
    }
    let (_, centroid) = polygon::cap_centroid(&hull, theta, delta)?;
    Ok(centroid)
}

/// Window dedupe on lexicographically sorted points (tolerance per
/// coordinate), linking near-equal points transitively.
fn dedupe_window(points: &mut Vec<Vector>, tol: f64) {
    points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let m = points.len();
    let mut keep = vec![true; m];
    for a in 0..m {
        if !keep[a] {
            continue;
        }
        for b in a + 1..m {
            if points[b][0] - points[a][0] > tol {
                break;
            }
            if keep[b] && points[a].max_coord_dist(&points[b]) <= tol {
                keep[b] = false;
            }
        }
    }
    let mut i = 0;
    points.retain(|_| {
        let k = keep[i];
        i += 1;
        k
    });
}

/// Keeps the points that are not convex combinations of the others.
fn extreme_filter(points: Vec<Vector>) -> Result<Vec<Vector>> {
    if points.len() <= 1 {
        return Ok(points);
    }
    if points.len() > 20_000 {
        return Err(Error::TooManyAtoms {
            atoms: points.len(),
            dim: points.first().map_or(0, |p| p.dim()),
        });
    }
    let n = points[0].dim();
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<&Vector> = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        let m = others.len();
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|c| others.iter().map(|q| q[c]).collect())
            .collect();
        rows.push(vec![1.0; m]);
        let mut rhs = p.0.clone();
        rhs.push(1.0);
        let r = lp_solve(&LpProblem::feasibility(
            rows,
            rhs,
            vec![0.0; m],
            vec![1.0; m],
        ))?;
        if r.status != LpStatus::Optimal {
            out.push(p.clone());
        }
    }
    Ok(out)
}
