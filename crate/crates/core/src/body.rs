//! Convex reference bodies with support and gauge oracles.
//!
//! Analytic bodies (balls, cubes, cross-polytopes) use closed forms.
//! V-polytopes answer gauge queries through a small LP over vertex
//! coefficients. Zonotopes answer them through a cutting-plane maximization
//! over the polar, which stays fast even with tens of thousands of
//! generators because each cut costs one support evaluation.

use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpProblem, LpStatus};
use crate::tol;
use crate::vector::{solve_dense, sum_compensated, Vector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Ball { dim: usize, radius: f64 },
    Cube { dim: usize, radius: f64 },
    CrossPolytope { dim: usize, radius: f64 },
    VPolytope { vertices: Vec<Vector> },
    ZonotopeOneSided { dim: usize, generators: Vec<Vector> },
    ZonotopeSymmetric { dim: usize, generators: Vec<Vector> },
}

fn check_radius(radius: f64) -> Result<f64> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidBody(format!("radius {radius} must be positive")));
    }
    Ok(radius)
}

fn check_family(dim: usize, vectors: &[Vector]) -> Result<()> {
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        if v.0.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

impl ConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(ConvexBody::Ball {
            dim,
            radius: check_radius(radius)?,
        })
    }

    pub fn cube(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(ConvexBody::Cube {
            dim,
            radius: check_radius(radius)?,
        })
    }

    pub fn cross_polytope(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(ConvexBody::CrossPolytope {
            dim,
            radius: check_radius(radius)?,
        })
    }

    pub fn vpolytope(vertices: Vec<Vector>) -> Result<Self> {
        let dim = vertices.first().ok_or(Error::InvalidBody(
            "vertex list must be nonempty".into(),
        ))?
        .dim();
        check_family(dim, &vertices)?;
        Ok(ConvexBody::VPolytope { vertices })
    }

    pub fn zonotope_one_sided(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        check_family(dim, &generators)?;
        Ok(ConvexBody::ZonotopeOneSided { dim, generators })
    }

    pub fn zonotope_symmetric(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        check_family(dim, &generators)?;
        Ok(ConvexBody::ZonotopeSymmetric { dim, generators })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { dim, .. }
            | ConvexBody::Cube { dim, .. }
            | ConvexBody::CrossPolytope { dim, .. }
            | ConvexBody::ZonotopeOneSided { dim, .. }
            | ConvexBody::ZonotopeSymmetric { dim, .. } => *dim,
            ConvexBody::VPolytope { vertices } => vertices[0].dim(),
        }
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Support function `max { <y, theta> : y in K }`.
    pub fn support(&self, theta: &Vector) -> Result<f64> {
        self.check_dim(theta)?;
        Ok(match self {
            ConvexBody::Ball { radius, .. } => radius * theta.norm2(),
            ConvexBody::Cube { radius, .. } => radius * theta.norm1(),
            ConvexBody::CrossPolytope { radius, .. } => radius * theta.norm_inf(),
            ConvexBody::VPolytope { vertices } => vertices
                .iter()
                .map(|v| v.dot(theta))
                .fold(f64::NEG_INFINITY, f64::max),
            ConvexBody::ZonotopeOneSided { generators, .. } => generators
                .iter()
                .map(|g| g.dot(theta).max(0.0))
                .sum(),
            ConvexBody::ZonotopeSymmetric { generators, .. } => generators
                .iter()
                .map(|g| g.dot(theta).abs())
                .sum(),
        })
    }

    /// Gauge (Minkowski functional) `min { t >= 0 : x in t K }`.
    pub fn gauge(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        match self {
            ConvexBody::Ball { radius, .. } => Ok(x.norm2() / radius),
            ConvexBody::Cube { radius, .. } => Ok(x.norm_inf() / radius),
            ConvexBody::CrossPolytope { radius, .. } => Ok(x.norm1() / radius),
            ConvexBody::VPolytope { vertices } => vpolytope_gauge(vertices, x),
            ConvexBody::ZonotopeOneSided { generators, .. } => {
                zonotope_gauge(self.dim(), generators, true, x)
            }
            ConvexBody::ZonotopeSymmetric { generators, .. } => {
                zonotope_gauge(self.dim(), generators, false, x)
            }
        }
    }

    /// Membership with slack `tol` on the gauge or coefficient scale.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        match self {
            ConvexBody::Ball { radius, .. } => Ok(x.norm2() <= radius * (1.0 + tol)),
            ConvexBody::Cube { radius, .. } => Ok(x.norm_inf() <= radius * (1.0 + tol)),
            ConvexBody::CrossPolytope { radius, .. } => Ok(x.norm1() <= radius * (1.0 + tol)),
            ConvexBody::VPolytope { vertices } => {
                if let Some(inside) = simplex_membership(vertices, x, tol) {
                    return Ok(inside);
                }
                let n = x.dim();
                let m = vertices.len();
                let mut rows: Vec<Vec<f64>> = (0..n)
                    .map(|i| vertices.iter().map(|v| v[i]).collect())
                    .collect();
                rows.push(vec![1.0; m]);
                let mut rhs = x.0.clone();
                rhs.push(1.0);
                let r = lp_solve(&LpProblem::feasibility(
                    rows,
                    rhs,
                    vec![-tol; m],
                    vec![1.0 + tol; m],
                ))?;
                Ok(r.status == LpStatus::Optimal)
            }
            ConvexBody::ZonotopeOneSided { generators, .. }
            | ConvexBody::ZonotopeSymmetric { generators, .. } => {
                let one_sided = matches!(self, ConvexBody::ZonotopeOneSided { .. });
                let n = x.dim();
                let m = generators.len();
                let rows: Vec<Vec<f64>> = (0..n)
                    .map(|i| generators.iter().map(|g| g[i]).collect())
                    .collect();
                let lower = if one_sided { vec![-tol; m] } else { vec![-1.0 - tol; m] };
                let r = lp_solve(&LpProblem::feasibility(
                    rows,
                    x.0.clone(),
                    lower,
                    vec![1.0 + tol; m],
                ))?;
                Ok(r.status == LpStatus::Optimal)
            }
        }
    }

    /// Per-axis interval `[-support(-e_i), support(e_i)]` enclosing the body.
    pub fn bounding_intervals(&self) -> Result<Vec<(f64, f64)>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let e = Vector::basis(n, i);
                Ok((-self.support(&e.neg())?, self.support(&e)?))
            })
            .collect()
    }

    /// True when the body is exactly centrally symmetric (up to `ATOM_MERGE`
    /// matching for vertex lists).
    pub fn is_symmetric(&self) -> bool {
        match self {
            ConvexBody::Ball { .. }
            | ConvexBody::Cube { .. }
            | ConvexBody::CrossPolytope { .. }
            | ConvexBody::ZonotopeSymmetric { .. } => true,
            ConvexBody::VPolytope { vertices } => vertices.iter().all(|v| {
                let nv = v.neg();
                vertices
                    .iter()
                    .any(|w| w.max_coord_dist(&nv) <= tol::ATOM_MERGE)
            }),
            ConvexBody::ZonotopeOneSided { generators, .. } => generators.is_empty(),
        }
    }

    pub fn vertices(&self) -> Option<&[Vector]> {
        match self {
            ConvexBody::VPolytope { vertices } => Some(vertices),
            _ => None,
        }
    }

    pub fn generators(&self) -> Option<&[Vector]> {
        match self {
            ConvexBody::ZonotopeOneSided { generators, .. }
            | ConvexBody::ZonotopeSymmetric { generators, .. } => Some(generators),
            _ => None,
        }
    }
}

/// Fast membership for V-polytopes with exactly `n + 1` affinely
/// independent vertices: solve barycentric coordinates directly.
fn simplex_membership(vertices: &[Vector], x: &Vector, tol: f64) -> Option<bool> {
    let n = x.dim();
    if vertices.len() != n + 1 {
        return None;
    }
    // Rows: [v_1 - v_0 | ... | v_n - v_0], solve for barycentric weights.
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (1..=n).map(|j| vertices[j][i] - vertices[0][i]).collect())
        .collect();
    let b: Vec<f64> = (0..n).map(|i| x[i] - vertices[0][i]).collect();
    let coeffs = solve_dense(&a, &b)?;
    let rest: f64 = coeffs.iter().sum();
    let lambda0 = 1.0 - rest;
    Some(lambda0 >= -tol && coeffs.iter().all(|&c| c >= -tol))
}

/// Gauge of a V-polytope: minimize the total vertex coefficient mass that
/// reproduces `x`. Requires the origin strictly inside the polytope.
fn vpolytope_gauge(vertices: &[Vector], x: &Vector) -> Result<f64> {
    let n = x.dim();
    let m = vertices.len();
    // Origin-interior certificate: a convex combination with every
    // coefficient at least 1e-9.
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|i| vertices.iter().map(|v| v[i]).collect())
        .collect();
    rows.push(vec![1.0; m]);
    let mut rhs = vec![0.0; n];
    rhs.push(1.0);
    let interior = lp_solve(&LpProblem::feasibility(
        rows.clone(),
        rhs,
        vec![1e-9; m],
        vec![1.0; m],
    ))?;
    if interior.status != LpStatus::Optimal {
        return Err(Error::OriginNotInterior);
    }

    let cone_rows: Vec<Vec<f64>> = rows[..n].to_vec();
    let r = lp_solve(&LpProblem::minimize(
        vec![1.0; m],
        cone_rows,
        x.0.clone(),
        vec![0.0; m],
        vec![f64::INFINITY; m],
    ))?;
    match r.status {
        LpStatus::Optimal => Ok(r.objective.max(0.0)),
        _ => Err(Error::OutsideCone),
    }
}

/// Coefficient program for a zonotope gauge restricted to `set`: maximize
/// `s` subject to `sum_{j in set} c_j g_j - s x = -frozen` with `c_j` in the
/// generator box. Returns `(s, row_duals)` at the optimum, or `None` when
/// the frozen part makes the program infeasible.
///
/// Symmetric coefficients enter the solver at their lower bound, so the
/// columns are pre-flipped against `orient`: the initial corner is then the
/// extremal signing toward `orient`, which sits next to the optimal facet
/// and cuts the pivot count from O(set) to a handful. Flipping a column
/// negates its coefficient, never the row duals, and only `s` and the duals
/// leave this function.
fn coefficient_gauge_lp(
    dim: usize,
    generators: &[Vector],
    one_sided: bool,
    x: &Vector,
    set: &[usize],
    frozen: &Vector,
    orient: &Vector,
) -> Result<Option<(f64, Vec<f64>)>> {
    let k = set.len();
    let mut objective = vec![0.0; k + 1];
    objective[k] = 1.0;
    let flip: Vec<f64> = set
        .iter()
        .map(|&j| {
            if !one_sided && generators[j].dot(orient) > 0.0 {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            let mut row: Vec<f64> = set
                .iter()
                .zip(&flip)
                .map(|(&j, f)| f * generators[j][i])
                .collect();
            row.push(-x[i]);
            row
        })
        .collect();
    let rhs: Vec<f64> = (0..dim).map(|i| -frozen[i]).collect();
    let mut lower = vec![if one_sided { 0.0 } else { -1.0 }; k + 1];
    let mut upper = vec![1.0; k + 1];
    lower[k] = 0.0;
    upper[k] = f64::INFINITY;
    let r = lp_solve(&LpProblem::maximize(objective, rows, rhs, lower, upper))?;
    match r.status {
        LpStatus::Optimal => Ok(Some((r.solution[k], r.duals))),
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(Error::LpFailure("gauge program unbounded".into())),
    }
}

/// Zonotope gauge through `max { s : s x in Z } = 1/gauge`. Small generator
/// sets solve the coefficient program outright. Large ones run a
/// working-set pursuit: generators decisively signed against the current
/// facet direction are frozen at their bound, the program is solved over
/// the undecided band, and the result is accepted only when its dual
/// direction `y` certifies it through weak duality (`s* <= h_Z(y)/<x,y>`
/// for any `y` with `<x,y> > 0`), else the band widens up to the full set.
/// `s* = 0` covers off-span and off-cone points alike; gauges beyond 1e12
/// also read as outside the cone.
fn zonotope_gauge(dim: usize, generators: &[Vector], one_sided: bool, x: &Vector) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let m = generators.len();
    let finish = |s: f64| {
        if s < 1e-12 {
            Err(Error::OutsideCone)
        } else {
            Ok(1.0 / s)
        }
    };
    let solve_full = |s_floor: f64| -> Result<f64> {
        let all: Vec<usize> = (0..m).collect();
        match coefficient_gauge_lp(dim, generators, one_sided, x, &all, &Vector::zeros(dim), x)? {
            Some((s, _)) => finish(s.max(s_floor)),
            None => Err(Error::LpFailure("unrestricted gauge program infeasible".into())),
        }
    };
    if m <= 512 {
        return solve_full(0.0);
    }

    let mut y = x.clone();
    let mut wcap = (8 * dim).max(64);
    let mut s_best = 0.0_f64;
    for _ in 0..40 {
        if wcap >= m {
            return solve_full(s_best);
        }
        let dots: Vec<f64> = generators.iter().map(|g| g.dot(&y)).collect();
        let mut idx: Vec<usize> = (0..m).collect();
        idx.select_nth_unstable_by(wcap - 1, |&a, &b| dots[a].abs().total_cmp(&dots[b].abs()));
        let mut wset = idx[..wcap].to_vec();
        wset.sort_unstable();
        let mut mask = vec![false; m];
        for &j in &wset {
            mask[j] = true;
        }
        let mut frozen = Vector::zeros(dim);
        for (j, g) in generators.iter().enumerate() {
            if mask[j] {
                continue;
            }
            if dots[j] > 0.0 {
                frozen.add_scaled(g, 1.0);
            } else if !one_sided && dots[j] < 0.0 {
                frozen.add_scaled(g, -1.0);
            }
        }
        let Some((s, duals)) =
            coefficient_gauge_lp(dim, generators, one_sided, x, &wset, &frozen, &y)?
        else {
            wcap = (wcap * 4).min(m);
            continue;
        };
        s_best = s_best.max(s);
        // The s column prices to <x, duals> = -1 at the optimum, so the
        // negated duals point outward along the supporting facet.
        let yn = Vector(duals.iter().map(|d| -d).collect());
        let xy = x.dot(&yn);
        if xy <= 0.0 {
            wcap = (wcap * 4).min(m);
            continue;
        }
        let h = if one_sided {
            sum_compensated(generators.iter().map(|g| g.dot(&yn).max(0.0)))
        } else {
            sum_compensated(generators.iter().map(|g| g.dot(&yn).abs()))
        };
        let upper = h / xy;
        if upper <= s_best + 1e-9 * (1.0 + upper.abs()) {
            return finish(s_best);
        }
        y = yn;
        wcap = (wcap * 2).min(m);
    }
    solve_full(s_best)
}

/// Tabulated Banach-Mazur distances. Identical body classes give 1; the
/// ball-to-cube and ball-to-cross-polytope pairs give sqrt(n); anything else
/// is not in the table.
pub fn bm_known_distance(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let n = a.dim() as f64;
    use ConvexBody::*;
    let same_class = matches!(
        (a, b),
        (Ball { .. }, Ball { .. })
            | (Cube { .. }, Cube { .. })
            | (CrossPolytope { .. }, CrossPolytope { .. })
    );
    if same_class {
        return Ok(1.0);
    }
    match (a, b) {
        (Ball { .. }, Cube { .. })
        | (Cube { .. }, Ball { .. })
        | (Ball { .. }, CrossPolytope { .. })
        | (CrossPolytope { .. }, Ball { .. }) => Ok(n.sqrt()),
        _ => Err(Error::DistanceNotTabulated),
    }
}

/// Serialization schema shared by files and the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodySchema {
    #[serde(rename = "type")]
    pub kind: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<Vec<Vec<f64>>>,
}

impl ConvexBody {
    pub fn to_schema(&self) -> BodySchema {
        let (kind, radius, points) = match self {
            ConvexBody::Ball { radius, .. } => ("ball", Some(*radius), None),
            ConvexBody::Cube { radius, .. } => ("cube", Some(*radius), None),
            ConvexBody::CrossPolytope { radius, .. } => ("cross", Some(*radius), None),
            ConvexBody::VPolytope { vertices } => (
                "vpolytope",
                None,
                Some(vertices.iter().map(|v| v.0.clone()).collect()),
            ),
            ConvexBody::ZonotopeOneSided { generators, .. } => (
                "zonotope_one_sided",
                None,
                Some(generators.iter().map(|v| v.0.clone()).collect()),
            ),
            ConvexBody::ZonotopeSymmetric { generators, .. } => (
                "zonotope_symmetric",
                None,
                Some(generators.iter().map(|v| v.0.clone()).collect()),
            ),
        };
        BodySchema {
            kind: kind.to_string(),
            dim: self.dim(),
            radius,
            points,
        }
    }

    pub fn from_schema(s: &BodySchema) -> Result<Self> {
        let radius = || {
            s.radius
                .ok_or_else(|| Error::InvalidBody("missing radius".into()))
        };
        let points = || -> Result<Vec<Vector>> {
            let pts = s
                .points
                .as_ref()
                .ok_or_else(|| Error::InvalidBody("missing points".into()))?;
            pts.iter().map(|p| {
                let v = Vector::new(p.clone())?;
                if v.dim() != s.dim {
                    return Err(Error::DimensionMismatch {
                        expected: s.dim,
                        got: v.dim(),
                    });
                }
                Ok(v)
            }).collect()
        };
        match s.kind.as_str() {
            "ball" => ConvexBody::ball(s.dim, radius()?),
            "cube" => ConvexBody::cube(s.dim, radius()?),
            "cross" => ConvexBody::cross_polytope(s.dim, radius()?),
            "vpolytope" => ConvexBody::vpolytope(points()?),
            "zonotope_one_sided" => ConvexBody::zonotope_one_sided(s.dim, points()?),
            "zonotope_symmetric" => ConvexBody::zonotope_symmetric(s.dim, points()?),
            other => Err(Error::InvalidBody(format!("unknown body type {other:?}"))),
        }
    }
}
