//! Dense vectors and square linear maps.
//!
//! Dimensions here are small (rarely above 100), so everything is plain
//! `Vec<f64>` with row-major matrices and partial-pivot elimination.

use crate::error::{Error, Result};
use crate::tol;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    /// Validated constructor: nonempty, all coordinates finite.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(coords))
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    /// Standard basis vector `e_i` (0-indexed).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm1(&self) -> f64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, t: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_scaled(&mut self, other: &Vector, t: f64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * t;
        }
    }

    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm2();
        if n <= 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    /// Coordinate-wise distance used for atom merging.
    pub fn max_coord_dist(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Compensated (Neumaier) summation; the workhorse for masses and costs.
pub fn sum_compensated(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Square matrix acting on column vectors, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    rows: Vec<Vec<f64>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if r.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(LinearMap { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = 1.0;
                r
            })
            .collect();
        LinearMap { rows }
    }

    pub fn scaling(n: usize, t: f64) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = t;
                r
            })
            .collect();
        LinearMap { rows }
    }

    /// Rotation by `angle` in the plane, for 2D fixtures.
    pub fn rotation_2d(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        LinearMap {
            rows: vec![vec![c, -s], vec![s, c]],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Apply the transpose, used by the support identity under pushforward.
    pub fn apply_transpose(&self, v: &Vector) -> Vector {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                out[j] += a * v.0[i];
            }
        }
        Vector(out)
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let n = self.dim();
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.rows[i][k];
                if a != 0.0 {
                    for j in 0..n {
                        rows[i][j] += a * other.rows[k][j];
                    }
                }
            }
        }
        LinearMap { rows }
    }

    pub fn determinant(&self) -> f64 {
        let mut lu = self.rows.clone();
        let n = self.dim();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[a][col].abs().total_cmp(&lu[b][col].abs()))
                .unwrap();
            if lu[pivot][col].abs() == 0.0 {
                return 0.0;
            }
            if pivot != col {
                lu.swap(pivot, col);
                det = -det;
            }
            det *= lu[col][col];
            for row in col + 1..n {
                let f = lu[row][col] / lu[col][col];
                for j in col..n {
                    lu[row][j] -= f * lu[col][j];
                }
            }
        }
        det
    }

    /// Inverse; errors when the determinant is within `SINGULAR_DET` of zero
    /// relative to the matrix scale.
    pub fn inverse(&self) -> Result<LinearMap> {
        let n = self.dim();
        let scale = self
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(1.0_f64, |m, c| m.max(c.abs()));
        let det = self.determinant();
        if det.abs() <= tol::SINGULAR_DET * scale.powi(n as i32) {
            return Err(Error::InvalidParam(format!(
                "map is numerically singular (det = {det:e})"
            )));
        }
        let mut aug: Vec<Vec<f64>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs()))
                .unwrap();
            aug.swap(pivot, col);
            let p = aug[col][col];
            for j in 0..2 * n {
                aug[col][j] /= p;
            }
            for row in 0..n {
                if row != col {
                    let f = aug[row][col];
                    if f != 0.0 {
                        for j in 0..2 * n {
                            aug[row][j] -= f * aug[col][j];
                        }
                    }
                }
            }
        }
        Ok(LinearMap {
            rows: aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }
}

/// Solve `A x = b` in place by partial-pivot elimination.
/// Returns `None` when the system is numerically singular.
pub fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-13 {
            return None;
        }
        m.swap(pivot, col);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for j in col..=n {
                    m[row][j] -= f * m[col][j];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = m[col][n];
        for j in col + 1..n {
            s -= m[col][j] * x[j];
        }
        x[col] = s / m[col][col];
    }
    Some(x)
}

/// Rank of the row span of `vectors`, by elimination with a relative cutoff.
pub fn rank(vectors: &[Vector], n: usize) -> usize {
    let mut rows: Vec<Vec<f64>> = vectors.iter().map(|v| v.0.clone()).collect();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(1.0_f64, |m, c| m.max(c.abs()));
    let cutoff = 1e-12 * scale;
    let mut r = 0;
    for col in 0..n {
        let Some(pivot) = (r..rows.len())
            .filter(|&i| rows[i][col].abs() > cutoff)
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            let f = rows[i][col] / rows[r][col];
            if f != 0.0 {
                for j in col..n {
                    rows[i][j] -= f * rows[r][j];
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
