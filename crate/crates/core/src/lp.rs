//! Small dense linear programs: maximize `c·x` subject to `A x ≤ b`, `x` free.
//!
//! Two-phase tableau simplex with Bland's rule. Sized for the handful of
//! variables that inradius and cutting-plane problems need.

const TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<f64>, f64)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f.abs() > 0.0 {
                for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·y` over columns for which `allowed` holds.
    /// Returns false on unboundedness.
    fn optimize(&mut self, cost: &[f64], allowed: impl Fn(usize) -> bool) -> bool {
        for _ in 0..MAX_PIVOTS {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j];
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= cost[b] * self.rows[i][j];
                }
                if r > TOL {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > TOL {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - TOL || ((ratio - lr).abs() <= TOL && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
        true
    }
}

/// Maximizes `c·x` subject to `a[i]·x ≤ b[i]` with `x` unrestricted in sign.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(m, b.len(), "constraint/offset count mismatch");
    // columns: x+ (n), x- (n), slack (m), artificial (one per negative rhs)
    let neg: Vec<usize> = (0..m).filter(|&i| b[i] < 0.0).collect();
    let art0 = 2 * n + m;
    let width = art0 + neg.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "constraint dimension mismatch");
        let mut row = vec![0.0; width + 1];
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = sign * a[i][j];
            row[n + j] = -sign * a[i][j];
        }
        row[2 * n + i] = sign;
        row[width] = sign * b[i];
        if let Some(k) = neg.iter().position(|&r| r == i) {
            row[art0 + k] = 1.0;
            basis.push(art0 + k);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };

    if !neg.is_empty() {
        let mut phase1 = vec![0.0; width];
        for v in phase1.iter_mut().skip(art0) {
            *v = -1.0;
        }
        t.optimize(&phase1, |_| true);
        let infeas: f64 = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &bj)| bj >= art0)
            .map(|(i, _)| t.rhs(i))
            .sum();
        let scale = 1.0 + b.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        if infeas > 1e-9 * scale {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| t.rows[i][j].abs() > 1e-9) {
                    t.pivot(i, j);
                    i += 1;
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![0.0; width];
    for j in 0..n {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    if !t.optimize(&cost, |j| j < art0) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![0.0; width];
    for (i, &bj) in t.basis.iter().enumerate() {
        y[bj] = t.rhs(i);
    }
    let x: Vec<f64> = (0..n).map(|j| y[j] - y[n + j]).collect();
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_maximum() {
        // max x + y on [0,1]^2
        let a = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let b = vec![1.0, 0.0, 1.0, 0.0];
        let (x, v) = maximize(&[1.0, 1.0], &a, &b).optimal().unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x >= 2, y >= 3, x + y <= 10, minimize x (max -x)
        let a = vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]];
        let b = vec![-2.0, -3.0, 10.0];
        let (x, v) = maximize(&[-1.0, 0.0], &a, &b).optimal().unwrap();
        assert!((v + 2.0).abs() < 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let a = vec![vec![-1.0, 0.0]];
        assert_eq!(maximize(&[1.0, 0.0], &a, &[0.0]), LpOutcome::Unbounded);
        let a = vec![vec![1.0], vec![-1.0]];
        assert_eq!(maximize(&[1.0], &a, &[1.0, -2.0]), LpOutcome::Infeasible);
    }

    #[test]
    fn chebyshev_center_of_square() {
        // max r s.t. a_i·t + r|a_i| <= b_i for the unit square
        let a = vec![
            vec![1.0, 0.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, -1.0, 1.0],
        ];
        let b = vec![1.0, 0.0, 1.0, 0.0];
        let (x, v) = maximize(&[0.0, 0.0, 1.0], &a, &b).optimal().unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        assert!((x[0] - 0.5).abs() < 1e-12);
    }
}
