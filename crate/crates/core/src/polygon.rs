//! Planar polygon primitives: hulls, areas, centroids, halfplane caps,
//! and zonogon boundaries.
//!
//! Polygons are vertex lists in counterclockwise order. Degenerate inputs
//! (fewer than three distinct points) yield zero area and are tolerated by
//! every routine here; callers that need full dimension check area instead.

use crate::error::{Error, Result};
use crate::vector::Vector;

fn cross(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn check_planar(points: &[Vector]) -> Result<()> {
    for p in points {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.dim(),
            });
        }
    }
    Ok(())
}

/// Convex hull by monotone chain. Output is counterclockwise with strictly
/// convex corners, starting from the lexicographic minimum.
pub fn convex_hull(points: &[Vector]) -> Result<Vec<Vector>> {
    check_planar(points)?;
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort_by(|a, b| (a[0], a[1]).partial_cmp(&(b[0], b[1])).unwrap());
    pts.dedup_by(|a, b| a[0] == b[0] && a[1] == b[1]);
    if pts.len() <= 2 {
        return Ok(pts);
    }
    let mut lower: Vec<Vector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// Signed area by the shoelace formula; counterclockwise is positive.
pub fn polygon_area(poly: &[Vector]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * twice
}

/// Area centroid. Falls back to the vertex average when the polygon is
/// degenerate (area below 1e-300).
pub fn polygon_centroid(poly: &[Vector]) -> Result<Vector> {
    check_planar(poly)?;
    if poly.is_empty() {
        return Err(Error::InvalidParam("empty polygon has no centroid".into()));
    }
    let area = polygon_area(poly);
    if area.abs() < 1e-300 {
        let mut c = Vector::zeros(2);
        for p in poly {
            c.add_scaled(p, 1.0 / poly.len() as f64);
        }
        return Ok(c);
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        let w = a[0] * b[1] - b[0] * a[1];
        cx += (a[0] + b[0]) * w;
        cy += (a[1] + b[1]) * w;
    }
    Ok(Vector(vec![cx / (6.0 * area), cy / (6.0 * area)]))
}

/// Sutherland-Hodgman clip keeping `{ x : <x, normal> >= level }`.
pub fn clip_halfplane(poly: &[Vector], normal: &Vector, level: f64) -> Result<Vec<Vector>> {
    check_planar(poly)?;
    if normal.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: normal.dim(),
        });
    }
    let mut out: Vec<Vector> = Vec::new();
    let m = poly.len();
    for i in 0..m {
        let a = &poly[i];
        let b = &poly[(i + 1) % m];
        let da = a.dot(normal) - level;
        let db = b.dot(normal) - level;
        if da >= 0.0 {
            out.push(a.clone());
        }
        if (da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0) {
            let t = da / (da - db);
            out.push(Vector(vec![
                a[0] + t * (b[0] - a[0]),
                a[1] + t * (b[1] - a[1]),
            ]));
        }
    }
    Ok(out)
}

/// Level `L` such that the cap `{ <x, normal> >= L }` cuts off the target
/// area. Bisection over the support interval; the cap area is continuous
/// and nonincreasing in the level.
pub fn cap_level_for_area(poly: &[Vector], normal: &Vector, target: f64) -> Result<f64> {
    let total = polygon_area(poly);
    if !(target > 0.0) || target > total * (1.0 + 1e-12) {
        return Err(Error::InvalidParam(format!(
            "cap area {target} outside (0, {total}]"
        )));
    }
    let levels: Vec<f64> = poly.iter().map(|p| p.dot(normal)).collect();
    let mut lo = levels.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut hi = levels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let cap = clip_halfplane(poly, normal, mid)?;
        if polygon_area(&cap) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Cap of prescribed area: returns the cut level and the cap's centroid.
pub fn cap_centroid(poly: &[Vector], normal: &Vector, target: f64) -> Result<(f64, Vector)> {
    let level = cap_level_for_area(poly, normal, target)?;
    let cap = clip_halfplane(poly, normal, level)?;
    Ok((level, polygon_centroid(&cap)?))
}

/// Regular polygon inscribed in the radius-`r` circle, counterclockwise.
pub fn regular_polygon(r: f64, count: usize) -> Vec<Vector> {
    (0..count)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / count as f64;
            Vector(vec![r * phi.cos(), r * phi.sin()])
        })
        .collect()
}

/// Boundary polygon of the symmetric zonogon `sum_i [-g_i, g_i]`.
///
/// Generators are reflected into the upper halfplane, sorted by angle, and
/// walked twice (once forward, once reversed) to trace the boundary.
pub fn zonogon_symmetric(generators: &[Vector]) -> Result<Vec<Vector>> {
    check_planar(generators)?;
    let mut gens: Vec<Vector> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if g[1] < 0.0 || (g[1] == 0.0 && g[0] < 0.0) {
                g.neg()
            } else {
                g.clone()
            }
        })
        .collect();
    if gens.is_empty() {
        return Ok(vec![Vector::zeros(2)]);
    }
    gens.sort_by(|a, b| {
        a[1].atan2(a[0])
            .partial_cmp(&b[1].atan2(b[0]))
            .unwrap()
    });
    let mut v = Vector::zeros(2);
    for g in &gens {
        v.add_scaled(g, -1.0);
    }
    let mut boundary = vec![v.clone()];
    for g in &gens {
        v.add_scaled(g, 2.0);
        boundary.push(v.clone());
    }
    for g in &gens {
        v.add_scaled(g, -2.0);
        boundary.push(v.clone());
    }
    boundary.pop();
    // Collinear duplicates appear when generators share an angle; keep the
    // strict hull so downstream area code sees clean corners.
    convex_hull(&boundary)
}

/// Boundary polygon of the one-sided zonogon `sum_i [0, g_i]`, which is the
/// symmetric zonogon of the half-generators translated by their sum.
pub fn zonogon_one_sided(generators: &[Vector]) -> Result<Vec<Vector>> {
    check_planar(generators)?;
    let halves: Vec<Vector> = generators.iter().map(|g| g.scale(0.5)).collect();
    let mut center = Vector::zeros(2);
    for h in &halves {
        center.add_scaled(h, 1.0);
    }
    let sym = zonogon_symmetric(&halves)?;
    Ok(sym
        .into_iter()
        .map(|p| {
            let mut q = p;
            q.add_scaled(&center, 1.0);
            q
        })
        .collect())
}
