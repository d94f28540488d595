//! Dense two-phase simplex for small linear programs.
//!
//! Problems are given in equality form with per-variable bounds:
//! optimize `c.x` subject to `A x = b`, `l <= x <= u` (entries of `l`, `u`
//! may be infinite). Instances in this crate stay tiny (tens of variables),
//! so the solver keeps no factorization state and refactors the basis every
//! iteration. Bland's rule (smallest index enters, smallest index leaves on
//! ties) guarantees termination on degenerate instances.

use crate::error::{Error, Result};
use crate::tol;
use crate::vector::{solve_dense, sum_compensated};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    /// Equality constraint rows.
    pub constraints: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    /// Empty unless `status == Optimal`.
    pub solution: Vec<f64>,
    /// `NaN` unless `status == Optimal`.
    pub objective: f64,
    /// Equality-row prices at the optimum for the internally maximized
    /// objective (negated for `Minimize` problems). Empty unless optimal.
    pub duals: Vec<f64>,
}

impl LpProblem {
    pub fn maximize(
        objective: Vec<f64>,
        constraints: Vec<Vec<f64>>,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Self {
        LpProblem {
            sense: Sense::Maximize,
            objective,
            constraints,
            rhs,
            lower,
            upper,
        }
    }

    pub fn minimize(
        objective: Vec<f64>,
        constraints: Vec<Vec<f64>>,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Self {
        LpProblem {
            sense: Sense::Minimize,
            objective,
            constraints,
            rhs,
            lower,
            upper,
        }
    }

    /// Pure feasibility problem (zero objective).
    pub fn feasibility(
        constraints: Vec<Vec<f64>>,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Self {
        let n = lower.len();
        LpProblem::maximize(vec![0.0; n], constraints, rhs, lower, upper)
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        let m = self.constraints.len();
        if self.rhs.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: self.rhs.len(),
            });
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.lower.len().min(self.upper.len()),
            });
        }
        for row in &self.constraints {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row.iter().any(|a| !a.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        if self.objective.iter().any(|c| !c.is_finite())
            || self.rhs.iter().any(|b| !b.is_finite())
        {
            return Err(Error::NonFinite);
        }
        for j in 0..n {
            let (l, u) = (self.lower[j], self.upper[j]);
            if l.is_nan() || u.is_nan() || l == f64::INFINITY || u == f64::NEG_INFINITY {
                return Err(Error::NonFinite);
            }
            if l > u {
                return Err(Error::InvalidParam(format!(
                    "variable {j} has lower bound {l} above upper bound {u}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NbState {
    Lower,
    Upper,
    Free,
}

enum Step {
    Optimal,
    Unbounded,
}

struct Simplex {
    ncols: usize,
    m: usize,
    /// Column-major constraint matrix, artificials included.
    cols: Vec<Vec<f64>>,
    b: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    nb: Vec<NbState>,
    /// Row-major LU factors of the basis with their row swaps, refreshed
    /// every iteration; one factorization feeds both triangular solves.
    lu: Vec<f64>,
    piv: Vec<usize>,
}

impl Simplex {
    fn basis_transpose(&self) -> Vec<Vec<f64>> {
        self.basis
            .iter()
            .map(|&j| self.cols[j].clone())
            .collect()
    }

    /// Partial-pivot LU of the basis matrix; same pivot rule and 1e-13
    /// cutoff as `solve_dense`. False when the basis is singular.
    fn factorize_basis(&mut self) -> bool {
        let m = self.m;
        for (c, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                self.lu[i * m + c] = self.cols[j][i];
            }
        }
        for k in 0..m {
            let mut p = k;
            let mut best = self.lu[k * m + k].abs();
            for i in k + 1..m {
                let v = self.lu[i * m + k].abs();
                if v >= best {
                    best = v;
                    p = i;
                }
            }
            if best < 1e-13 {
                return false;
            }
            self.piv[k] = p;
            if p != k {
                for j in 0..m {
                    self.lu.swap(k * m + j, p * m + j);
                }
            }
            let d = self.lu[k * m + k];
            for i in k + 1..m {
                let f = self.lu[i * m + k] / d;
                self.lu[i * m + k] = f;
                if f != 0.0 {
                    for j in k + 1..m {
                        self.lu[i * m + j] -= f * self.lu[k * m + j];
                    }
                }
            }
        }
        true
    }

    /// v <- B^-1 v with the current factors.
    fn solve_b(&self, v: &mut [f64]) {
        let m = self.m;
        for k in 0..m {
            let p = self.piv[k];
            if p != k {
                v.swap(k, p);
            }
        }
        for k in 0..m {
            let vk = v[k];
            if vk != 0.0 {
                for i in k + 1..m {
                    v[i] -= self.lu[i * m + k] * vk;
                }
            }
        }
        for k in (0..m).rev() {
            let mut s = v[k];
            for j in k + 1..m {
                s -= self.lu[k * m + j] * v[j];
            }
            v[k] = s / self.lu[k * m + k];
        }
    }

    /// v <- B^-T v with the current factors.
    fn solve_bt(&self, v: &mut [f64]) {
        let m = self.m;
        for k in 0..m {
            let mut s = v[k];
            for j in 0..k {
                s -= self.lu[j * m + k] * v[j];
            }
            v[k] = s / self.lu[k * m + k];
        }
        for k in (0..m).rev() {
            let mut s = v[k];
            for i in k + 1..m {
                s -= self.lu[i * m + k] * v[i];
            }
            v[k] = s;
        }
        for k in (0..m).rev() {
            let p = self.piv[k];
            if p != k {
                v.swap(k, p);
            }
        }
    }

    /// Recompute basic values from the nonbasic assignment; kills drift.
    fn recompute_basics(&mut self) -> Result<()> {
        if !self.factorize_basis() {
            return Err(Error::LpFailure("singular basis".into()));
        }
        let mut r = self.b.clone();
        for j in 0..self.ncols {
            if !self.in_basis[j] && self.x[j] != 0.0 {
                for i in 0..self.m {
                    r[i] -= self.cols[j][i] * self.x[j];
                }
            }
        }
        self.solve_b(&mut r);
        for (i, &j) in self.basis.iter().enumerate() {
            self.x[j] = r[i];
        }
        Ok(())
    }

    fn run(&mut self, c: &[f64]) -> Result<Step> {
        let cap = 2000 + 60 * (self.ncols + self.m);
        // Dantzig pricing normally; after a run of degenerate steps switch
        // to Bland (smallest improving index), which cannot cycle, and
        // switch back once a strictly positive step is taken.
        //
        // Reduced costs depend on the basis alone and a bound flip keeps
        // the basis, so one pricing pass yields a queue of improving
        // columns that stays valid until the next basis exchange; flips in
        // between are drained from the queue at ratio-test cost. The queue
        // order reproduces the pricing rule: descending score for Dantzig,
        // ascending index for Bland.
        let mut bland = false;
        let mut stalled = 0usize;
        let mut y = vec![0.0; self.m];
        let mut w = vec![0.0; self.m];
        let mut queue: Vec<(f64, usize, f64)> = Vec::new();
        let mut qpos = 0usize;
        let mut queue_bland = false;
        let mut fresh = false;
        let mut recomputed_at = 0usize;
        let mut iter = 0usize;
        while iter < cap {
            if !fresh || queue_bland != bland {
                if !self.factorize_basis() {
                    return Err(Error::LpFailure("singular basis".into()));
                }
                for (i, &j) in self.basis.iter().enumerate() {
                    y[i] = c[j];
                }
                self.solve_bt(&mut y);
                queue.clear();
                qpos = 0;
                for j in 0..self.ncols {
                    if self.in_basis[j] || self.upper[j] - self.lower[j] <= 0.0 {
                        continue;
                    }
                    let d = c[j]
                        - y.iter()
                            .zip(&self.cols[j])
                            .map(|(yi, aij)| yi * aij)
                            .sum::<f64>();
                    let (dir, score) = match self.nb[j] {
                        NbState::Lower if d > tol::LP_OPT => (1.0, d),
                        NbState::Upper if d < -tol::LP_OPT => (-1.0, -d),
                        NbState::Free if d.abs() > tol::LP_OPT => (d.signum(), d.abs()),
                        _ => continue,
                    };
                    queue.push((score, j, dir));
                    if bland {
                        break;
                    }
                }
                if !bland {
                    // Stable sort: equal scores keep ascending index, the
                    // order the single-pass scan would have preferred.
                    queue.sort_by(|a, b| b.0.total_cmp(&a.0));
                }
                queue_bland = bland;
                fresh = true;
            }
            let Some(&(_, j, dir)) = queue.get(qpos) else {
                if queue.is_empty() {
                    return Ok(Step::Optimal);
                }
                // Drained the queue through flips alone; re-price to either
                // confirm optimality or pick up the leftovers.
                fresh = false;
                continue;
            };
            qpos += 1;
            iter += 1;
            if iter > recomputed_at + 63 {
                self.recompute_basics()?;
                recomputed_at = iter;
            }

            w.copy_from_slice(&self.cols[j]);
            self.solve_b(&mut w);

            // Ratio test; ties resolved toward the smallest basic index.
            let mut t_best = f64::INFINITY;
            let mut leave: Option<(usize, NbState)> = None;
            for (i, &bi) in self.basis.iter().enumerate() {
                let wi = dir * w[i];
                let (t, hit) = if wi > tol::LP_PIVOT {
                    if self.lower[bi] == f64::NEG_INFINITY {
                        continue;
                    }
                    (((self.x[bi] - self.lower[bi]) / wi).max(0.0), NbState::Lower)
                } else if wi < -tol::LP_PIVOT {
                    if self.upper[bi] == f64::INFINITY {
                        continue;
                    }
                    (((self.x[bi] - self.upper[bi]) / wi).max(0.0), NbState::Upper)
                } else {
                    continue;
                };
                let replace = match leave {
                    None => t < t_best,
                    Some((r, _)) => t < t_best || (t == t_best && bi < self.basis[r]),
                };
                if replace {
                    t_best = t;
                    leave = Some((i, hit));
                }
            }

            let self_cap = if self.nb[j] == NbState::Free {
                f64::INFINITY
            } else {
                self.upper[j] - self.lower[j]
            };

            if self_cap <= t_best {
                if self_cap == f64::INFINITY {
                    return Ok(Step::Unbounded);
                }
                // Bound flip: no basis change.
                for (i, &bi) in self.basis.iter().enumerate() {
                    self.x[bi] -= dir * self_cap * w[i];
                }
                self.x[j] = if dir > 0.0 {
                    self.upper[j]
                } else {
                    self.lower[j]
                };
                self.nb[j] = if dir > 0.0 {
                    NbState::Upper
                } else {
                    NbState::Lower
                };
                if self_cap > 0.0 {
                    stalled = 0;
                    bland = false;
                } else {
                    stalled += 1;
                    bland = bland || stalled >= 30;
                }
                continue;
            }

            let Some((r, hit)) = leave else {
                return Ok(Step::Unbounded);
            };
            if t_best > 0.0 {
                stalled = 0;
                bland = false;
            } else {
                stalled += 1;
                bland = bland || stalled >= 30;
            }
            for (i, &bi) in self.basis.iter().enumerate() {
                self.x[bi] -= dir * t_best * w[i];
            }
            self.x[j] += dir * t_best;
            let k = self.basis[r];
            self.x[k] = match hit {
                NbState::Lower => self.lower[k],
                NbState::Upper => self.upper[k],
                NbState::Free => unreachable!(),
            };
            self.nb[k] = hit;
            self.in_basis[k] = false;
            self.basis[r] = j;
            self.in_basis[j] = true;
            fresh = false;
        }
        Err(Error::LpFailure("iteration limit reached".into()))
    }
}

/// Solve a bounded-variable linear program.
pub fn lp_solve(p: &LpProblem) -> Result<LpResult> {
    p.validate()?;
    let n = p.objective.len();
    let m = p.constraints.len();
    let ncols = n + m;

    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..m).map(|i| p.constraints[i][j]).collect())
        .collect();

    let mut lower = p.lower.clone();
    let mut upper = p.upper.clone();
    let mut x = vec![0.0; ncols];
    let mut nb = vec![NbState::Free; ncols];
    for j in 0..n {
        if p.lower[j] > f64::NEG_INFINITY {
            x[j] = p.lower[j];
            nb[j] = NbState::Lower;
        } else if p.upper[j] < f64::INFINITY {
            x[j] = p.upper[j];
            nb[j] = NbState::Upper;
        } else {
            x[j] = 0.0;
            nb[j] = NbState::Free;
        }
    }

    // Artificial columns carry the initial residual with nonnegative values.
    let mut residual = p.rhs.clone();
    for j in 0..n {
        if x[j] != 0.0 {
            for i in 0..m {
                residual[i] -= p.constraints[i][j] * x[j];
            }
        }
    }
    for (i, &r) in residual.iter().enumerate() {
        let mut col = vec![0.0; m];
        col[i] = if r >= 0.0 { 1.0 } else { -1.0 };
        cols.push(col);
        lower.push(0.0);
        upper.push(f64::INFINITY);
        x[n + i] = r.abs();
        nb[n + i] = NbState::Lower;
    }

    let mut s = Simplex {
        ncols,
        m,
        cols,
        b: p.rhs.clone(),
        lower,
        upper,
        x,
        basis: (n..ncols).collect(),
        in_basis: (0..ncols).map(|j| j >= n).collect(),
        nb,
        lu: vec![0.0; m * m],
        piv: vec![0; m],
    };

    let scale = 1.0 + p.rhs.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
    let feas_tol = tol::LP_FEAS * scale;

    // Phase 1: drive the artificial mass to zero.
    let mut c1 = vec![0.0; ncols];
    for item in c1.iter_mut().skip(n) {
        *item = -1.0;
    }
    match s.run(&c1)? {
        Step::Optimal => {}
        Step::Unbounded => return Err(Error::LpFailure("phase 1 unbounded".into())),
    }
    s.recompute_basics()?;
    let infeasibility: f64 = (n..ncols).map(|j| s.x[j].max(0.0)).sum();
    if infeasibility > feas_tol {
        return Ok(LpResult {
            status: LpStatus::Infeasible,
            solution: Vec::new(),
            objective: f64::NAN,
            duals: Vec::new(),
        });
    }
    // Pin artificials at zero; basic ones may linger at value zero.
    for j in n..ncols {
        s.upper[j] = 0.0;
        if !s.in_basis[j] {
            s.x[j] = 0.0;
            s.nb[j] = NbState::Lower;
        }
    }

    // Phase 2 with the real objective (internally always maximizing).
    let flip = match p.sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };
    let mut c2 = vec![0.0; ncols];
    for j in 0..n {
        c2[j] = flip * p.objective[j];
    }
    let outcome = s.run(&c2)?;
    if let Step::Unbounded = outcome {
        return Ok(LpResult {
            status: LpStatus::Unbounded,
            solution: Vec::new(),
            objective: f64::NAN,
            duals: Vec::new(),
        });
    }
    s.recompute_basics()?;
    let cb: Vec<f64> = s.basis.iter().map(|&j| c2[j]).collect();
    let duals = solve_dense(&s.basis_transpose(), &cb)
        .ok_or_else(|| Error::LpFailure("singular basis".into()))?;

    let solution: Vec<f64> = s.x[..n].to_vec();
    for i in 0..m {
        let lhs = sum_compensated(
            (0..n)
                .map(|j| p.constraints[i][j] * solution[j])
                .chain((n..ncols).map(|j| s.cols[j][i] * s.x[j])),
        );
        if (lhs - p.rhs[i]).abs() > 10.0 * feas_tol {
            return Err(Error::LpFailure(format!(
                "residual {:e} in row {i} exceeds tolerance",
                (lhs - p.rhs[i]).abs()
            )));
        }
    }
    let objective = sum_compensated((0..n).map(|j| p.objective[j] * solution[j]));
    Ok(LpResult {
        status: LpStatus::Optimal,
        solution,
        objective,
        duals,
    })
}


#[doc(hidden)]
pub static LP_RUNS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
#[doc(hidden)]
pub static LP_ITERS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
