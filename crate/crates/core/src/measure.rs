//! Discrete measures: the generators of the convex sets this crate studies.
//!
//! All transformations are pure. Samplers draw from counter-based streams,
//! so a fixed (variant, count, seed) triple yields bit-identical atoms
//! regardless of thread count or call order.

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::tol;
use crate::vector::{sum_compensated, LinearMap, Vector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    dim: usize,
    atoms: Vec<(Vector, f64)>,
}

impl DiscreteMeasure {
    pub fn new(dim: usize, atoms: Vec<(Vector, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (x, w) in &atoms {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: x.dim(),
                });
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "atom weight {w} must be positive and finite"
                )));
            }
        }
        Ok(DiscreteMeasure { dim, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(Vector, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        sum_compensated(self.atoms.iter().map(|(_, w)| *w))
    }

    /// Adds `weight` at the origin (merging with an existing exact origin
    /// atom if present).
    pub fn with_origin(&self, weight: f64) -> Result<Self> {
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::InvalidMeasure(format!(
                "origin weight {weight} must be positive and finite"
            )));
        }
        let mut atoms = self.atoms.clone();
        if let Some(slot) = atoms.iter_mut().find(|(x, _)| x.is_zero()) {
            slot.1 += weight;
        } else {
            atoms.push((Vector::zeros(self.dim), weight));
        }
        DiscreteMeasure::new(self.dim, atoms)
    }

    /// Combines atoms whose positions agree within `ATOM_MERGE` in every
    /// coordinate (transitively). The surviving position is the
    /// lexicographically smallest of each cluster, so merged output is
    /// deterministically ordered. Candidate pairs come from a sweep over
    /// the first coordinate, which keeps typical inputs near-linear.
    pub fn merged(&self) -> Self {
        let mut order: Vec<usize> = (0..self.atoms.len()).collect();
        order.sort_by(|&a, &b| self.atoms[a].0 .0.partial_cmp(&self.atoms[b].0 .0).unwrap());
        let m = order.len();
        let mut root: Vec<usize> = (0..m).collect();
        fn find(root: &mut [usize], mut i: usize) -> usize {
            while root[i] != i {
                root[i] = root[root[i]];
                i = root[i];
            }
            i
        }
        for a in 0..m {
            let xa = &self.atoms[order[a]].0;
            for b in a + 1..m {
                let xb = &self.atoms[order[b]].0;
                if xb[0] - xa[0] > tol::ATOM_MERGE {
                    break;
                }
                if xa.max_coord_dist(xb) <= tol::ATOM_MERGE {
                    let (ra, rb) = (find(&mut root, a), find(&mut root, b));
                    // Keep the smaller rank as representative.
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    root[hi] = lo;
                }
            }
        }
        let mut weight = vec![0.0; m];
        for a in 0..m {
            let r = find(&mut root, a);
            weight[r] += self.atoms[order[a]].1;
        }
        let mut out: Vec<(Vector, f64)> = Vec::with_capacity(m);
        for a in 0..m {
            if find(&mut root, a) == a {
                out.push((self.atoms[order[a]].0.clone(), weight[a]));
            }
        }
        DiscreteMeasure {
            dim: self.dim,
            atoms: out,
        }
    }

    /// `sum_i w_i * gauge_K(x_i)`, the total cost of carrying the measure's
    /// mass measured in units of `K`.
    pub fn transport_cost(&self, k: &ConvexBody) -> Result<f64> {
        let mut costs = Vec::with_capacity(self.atoms.len());
        for (x, w) in &self.atoms {
            costs.push(w * k.gauge(x)?);
        }
        Ok(sum_compensated(costs.into_iter()))
    }

    pub fn pushforward(&self, t: &LinearMap) -> Result<Self> {
        t.inverse()?;
        let atoms = self
            .atoms
            .iter()
            .map(|(x, w)| (t.apply(x), *w))
            .collect::<Vec<_>>();
        for (x, _) in &atoms {
            if x.0.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(DiscreteMeasure {
            dim: self.dim,
            atoms,
        })
    }

    /// Even part: half the mass of every atom is reflected through the
    /// origin. Output atoms come in exact `(x, w), (-x, w)` pairs, built so
    /// that near-opposite input positions collapse onto a common
    /// representative before negation.
    pub fn symmetrize(&self) -> Self {
        let merged = self.merged();
        let m = merged.atoms.len();
        let mut used = vec![false; m];
        let mut out: Vec<(Vector, f64)> = Vec::new();
        for i in 0..m {
            if used[i] {
                continue;
            }
            used[i] = true;
            let (xi, wi) = &merged.atoms[i];
            let neg = xi.neg();
            if xi.max_coord_dist(&neg) <= tol::ATOM_MERGE {
                // Effectively the origin: reflection fixes it.
                out.push((xi.clone(), *wi));
                continue;
            }
            let partner = (i + 1..m)
                .find(|&j| !used[j] && merged.atoms[j].0.max_coord_dist(&neg) <= tol::ATOM_MERGE);
            let half = match partner {
                Some(j) => {
                    used[j] = true;
                    0.5 * (wi + merged.atoms[j].1)
                }
                None => 0.5 * wi,
            };
            out.push((xi.clone(), half));
            out.push((neg, half));
        }
        out.sort_by(|a, b| a.0 .0.partial_cmp(&b.0 .0).unwrap());
        DiscreteMeasure {
            dim: self.dim,
            atoms: out,
        }
    }

    /// True when the atom list is exactly closed under negation.
    pub fn is_symmetric_atoms(&self) -> bool {
        self.atoms.iter().all(|(x, w)| {
            let neg = x.neg();
            self.atoms.iter().any(|(y, wy)| y.0 == neg.0 && wy == w)
        })
    }

    /// Pushes every non-origin atom radially outward by its factor
    /// `r_i >= 1`, dividing its weight by the same factor, and deposits a
    /// unit atom at the origin. Transport cost to any body containing the
    /// origin is unchanged because `w/r * gauge(r x) = w * gauge(x)`.
    pub fn radial_rescale(&self, r: &[f64]) -> Result<Self> {
        let off_origin = self.atoms.iter().filter(|(x, _)| !x.is_zero()).count();
        if r.len() != off_origin {
            return Err(Error::InvalidParam(format!(
                "got {} factors for {} non-origin atoms",
                r.len(),
                off_origin
            )));
        }
        let mut atoms: Vec<(Vector, f64)> = Vec::with_capacity(self.atoms.len() + 1);
        let mut it = r.iter();
        for (x, w) in &self.atoms {
            if x.is_zero() {
                atoms.push((x.clone(), *w));
                continue;
            }
            let ri = *it.next().unwrap();
            if !(ri >= 1.0) || !ri.is_finite() {
                return Err(Error::InvalidParam(format!("rescale factor {ri} below 1")));
            }
            atoms.push((x.scale(ri), w / ri));
        }
        atoms.push((Vector::zeros(self.dim), 1.0));
        Ok(DiscreteMeasure {
            dim: self.dim,
            atoms,
        }
        .merged())
    }

    /// Rescales every atom by the total mass `r` and divides weights by `r`,
    /// producing a probability measure with the same transport cost.
    pub fn normalize_probability(&self) -> Result<Self> {
        let r = self.total_mass();
        if r < 1.0 - tol::MASS_ONE {
            return Err(Error::MassBelowOne { total: r });
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(x, w)| (x.scale(r), w / r))
            .collect();
        Ok(DiscreteMeasure {
            dim: self.dim,
            atoms,
        })
    }

    /// Keeps atoms at Euclidean norm `lambda` or beyond, plus a unit origin
    /// atom; everything strictly inside the ball is dropped.
    pub fn truncate(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParam(format!(
                "truncation radius {lambda} must be positive"
            )));
        }
        let mut atoms: Vec<(Vector, f64)> = vec![(Vector::zeros(self.dim), 1.0)];
        for (x, w) in &self.atoms {
            if x.norm2() >= lambda {
                atoms.push((x.clone(), *w));
            }
        }
        Ok(DiscreteMeasure {
            dim: self.dim,
            atoms,
        }
        .merged())
    }
}

/// Mass scaling factor `exp(1 + (n-1)/(R-1))` that makes the uniform
/// measure on `R K` generate a set containing `K`.
pub fn density_factor(dim: usize, r: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidParam(format!("scale {r} must exceed 1")));
    }
    Ok((1.0 + (dim as f64 - 1.0) / (r - 1.0)).exp())
}

/// `count` atoms uniform on the radius-`radius` sphere, each carrying
/// `total_mass / count`.
pub fn sample_sphere(
    dim: usize,
    radius: f64,
    total_mass: f64,
    count: usize,
    seed: u64,
) -> Result<DiscreteMeasure> {
    if count == 0 {
        return Err(Error::InvalidParam("sample count must be positive".into()));
    }
    if !(radius > 0.0) || !(total_mass > 0.0) {
        return Err(Error::InvalidParam(
            "sphere radius and total mass must be positive".into(),
        ));
    }
    let stream = Stream::new(seed, "sphere");
    let w = total_mass / count as f64;
    let mut atoms = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let g = Vector(stream.normal_coords(i, dim));
        let norm = g.norm2();
        let x = if norm > 0.0 {
            g.scale(radius / norm)
        } else {
            Vector::basis(dim, 0).scale(radius)
        };
        atoms.push((x, w));
    }
    DiscreteMeasure::new(dim, atoms)
}

/// Rejection-samples `count` points uniform in `scale * body` and weights
/// each by `density_factor / count`. Aborts when fewer than one candidate
/// in 10^4 lands inside.
pub fn sample_body_uniform(
    body: &ConvexBody,
    scale: f64,
    count: usize,
    seed: u64,
) -> Result<DiscreteMeasure> {
    if count == 0 {
        return Err(Error::InvalidParam("sample count must be positive".into()));
    }
    let n = body.dim();
    let factor = density_factor(n, scale)?;
    let boxes: Vec<(f64, f64)> = body
        .bounding_intervals()?
        .into_iter()
        .map(|(lo, hi)| (scale * lo, scale * hi))
        .collect();
    let stream = Stream::new(seed, "body-uniform");
    let w = factor / count as f64;
    let mut atoms = Vec::with_capacity(count);
    let mut tried: u64 = 0;
    while atoms.len() < count {
        let units = stream.unit_coords(tried, n);
        tried += 1;
        let x = Vector(
            units
                .iter()
                .zip(&boxes)
                .map(|(u, (lo, hi))| lo + u * (hi - lo))
                .collect(),
        );
        if body.gauge(&x)? <= scale {
            atoms.push((x, w));
        }
        if tried >= 10_000 && (atoms.len() as f64) < 1e-4 * tried as f64 {
            return Err(Error::RejectionStalled {
                tried,
                accepted: atoms.len() as u64,
            });
        }
    }
    DiscreteMeasure::new(n, atoms)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SamplerVariant {
    SphereUniform {
        dim: usize,
        radius: f64,
        total_mass: f64,
    },
    BodyUniform {
        body: crate::body::BodySchema,
        scale: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplerSpec {
    #[serde(flatten)]
    pub variant: SamplerVariant,
    pub count: usize,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn sample(&self) -> Result<DiscreteMeasure> {
        match &self.variant {
            SamplerVariant::SphereUniform {
                dim,
                radius,
                total_mass,
            } => sample_sphere(*dim, *radius, *total_mass, self.count, self.seed),
            SamplerVariant::BodyUniform { body, scale } => {
                let body = ConvexBody::from_schema(body)?;
                sample_body_uniform(&body, *scale, self.count, self.seed)
            }
        }
    }
}

/// Dyadic grid of spacing `2^-resolution` covering the coordinate box of
/// half-width `range`; `epsilon` controls both the cell-size budget and the
/// final expansion factor.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub range: f64,
    pub resolution: u32,
    pub epsilon: f64,
}

impl GridSpec {
    pub fn new(range: f64, resolution: u32, epsilon: f64) -> Result<Self> {
        if !(range > 0.0) || !range.is_finite() {
            return Err(Error::InvalidParam(format!(
                "grid range {range} must be positive"
            )));
        }
        if resolution > 48 {
            return Err(Error::InvalidParam(format!(
                "grid resolution {resolution} exceeds 48"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 0.25) {
            return Err(Error::InvalidParam(format!(
                "epsilon {epsilon} outside (0, 1/4)"
            )));
        }
        Ok(GridSpec {
            range,
            resolution,
            epsilon,
        })
    }

    fn cell_diameter(&self, dim: usize) -> f64 {
        (dim as f64).sqrt() / (1u64 << self.resolution) as f64
    }
}

/// Smallest resolution whose cell diameter fits the budget
/// `epsilon / total_mass`.
pub fn required_resolution(dim: usize, total_mass: f64, epsilon: f64) -> u32 {
    let budget = epsilon / total_mass;
    let mut m = 0u32;
    while (dim as f64).sqrt() / (1u64 << m) as f64 > budget && m < 48 {
        m += 1;
    }
    m
}

/// Snaps every atom to the nearest grid point (half-open boxes, ties
/// upward) and reroutes mass falling outside the grid's box to the origin.
/// Total mass is preserved; positions become exact dyadics.
pub fn snap_to_grid(mu: &DiscreteMeasure, grid: &GridSpec) -> Result<DiscreteMeasure> {
    let n = mu.dim();
    let mass = mu.total_mass();
    let budget = grid.epsilon / mass;
    let diameter = grid.cell_diameter(n);
    if diameter > budget {
        return Err(Error::GridTooCoarse {
            diameter,
            budget,
            required: required_resolution(n, mass, grid.epsilon),
        });
    }
    let s = (1u64 << grid.resolution) as f64;
    let k_max = (grid.range * s).floor() as i64;
    let mut boxes: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    let origin_key = vec![0i64; n];
    for (x, w) in mu.atoms() {
        let ks: Vec<i64> = x.0.iter().map(|c| (c * s + 0.5).floor() as i64).collect();
        let key = if ks.iter().any(|k| k.abs() > k_max) {
            origin_key.clone()
        } else {
            ks
        };
        *boxes.entry(key).or_insert(0.0) += w;
    }
    let atoms = boxes
        .into_iter()
        .map(|(ks, w)| {
            (
                Vector(ks.iter().map(|&k| k as f64 / s).collect()),
                w,
            )
        })
        .collect();
    DiscreteMeasure::new(n, atoms)
}

/// Grid discretization: snap, then dilate positions by `1/(1 - 2 epsilon)`
/// so the generated set of the output contains the original's.
pub fn discretize_grid(mu: &DiscreteMeasure, grid: &GridSpec) -> Result<DiscreteMeasure> {
    let snapped = snap_to_grid(mu, grid)?;
    let t = LinearMap::scaling(mu.dim(), 1.0 / (1.0 - 2.0 * grid.epsilon));
    snapped.pushforward(&t)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AtomSchema {
    pub x: Vec<f64>,
    pub w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MeasureSchema {
    pub dim: usize,
    pub atoms: Vec<AtomSchema>,
}

impl DiscreteMeasure {
    pub fn to_schema(&self) -> MeasureSchema {
        MeasureSchema {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|(x, w)| AtomSchema {
                    x: x.0.clone(),
                    w: *w,
                })
                .collect(),
        }
    }

    pub fn from_schema(s: &MeasureSchema) -> Result<Self> {
        let atoms = s
            .atoms
            .iter()
            .map(|a| Ok((Vector::new(a.x.clone())?, a.w)))
            .collect::<Result<Vec<_>>>()?;
        DiscreteMeasure::new(s.dim, atoms)
    }
}
