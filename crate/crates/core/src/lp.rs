//! Dense two-phase tableau simplex with Bland's rule, generic over the
//! scalar so the same code serves floating point and exact rationals.

use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::BigRational;

pub trait LpScalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Strictly positive beyond the working tolerance.
    fn is_pos(&self) -> bool;
    /// Strictly negative beyond the working tolerance.
    fn is_neg(&self) -> bool;
    fn is_nil(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

const F64_EPS: f64 = 1e-9;

impl LpScalar for f64 {
    fn is_pos(&self) -> bool {
        *self > F64_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -F64_EPS
    }
}

impl LpScalar for BigRational {
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpResult<T> {
    pub status: LpStatus,
    pub point: Vec<T>,
    pub value: T,
}

/// `maximize c.x` subject to the rows, with `x >= 0` unless `free` is set,
/// in which case every variable is unrestricted.
#[derive(Clone, Debug)]
pub struct Lp<T> {
    pub objective: Vec<T>,
    pub rows: Vec<(Vec<T>, Sense, T)>,
    pub free: bool,
}

impl<T: LpScalar> Lp<T> {
    pub fn new(objective: Vec<T>, free: bool) -> Self {
        Lp {
            objective,
            rows: Vec::new(),
            free,
        }
    }

    pub fn row(&mut self, a: Vec<T>, sense: Sense, b: T) -> &mut Self {
        self.rows.push((a, sense, b));
        self
    }

    pub fn solve(&self) -> LpResult<T> {
        let n = self.objective.len();
        if !self.free {
            return solve_nonneg(&self.objective, &self.rows);
        }
        let split = |v: &[T]| -> Vec<T> { v.iter().cloned().chain(v.iter().map(|x| -x.clone())).collect() };
        let rows: Vec<(Vec<T>, Sense, T)> = self
            .rows
            .iter()
            .map(|(a, s, b)| (split(a), *s, b.clone()))
            .collect();
        let res = solve_nonneg(&split(&self.objective), &rows);
        let point = if res.point.len() == 2 * n {
            (0..n)
                .map(|k| res.point[k].clone() - res.point[n + k].clone())
                .collect()
        } else {
            res.point
        };
        LpResult { point, ..res }
    }
}

struct Tableau<T> {
    // m constraint rows followed by the objective row; last column is rhs
    t: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule on the objective row (reduced costs stored negated,
    /// so a negative entry improves). Columns at or beyond `limit` never enter.
    fn optimize(&mut self, limit: usize) -> bool {
        let m = self.basis.len();
        let rhs = self.cols;
        loop {
            let obj = &self.t[m];
            let Some(c) = (0..limit).find(|&j| obj[j].is_neg()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..m {
                let a = &self.t[r][c];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.t[r][rhs].clone() / a.clone();
                best = match best {
                    None => Some((r, ratio)),
                    Some((br, bv)) => {
                        let diff = ratio.clone() - bv.clone();
                        if diff.is_neg() || (diff.is_nil() && self.basis[r] < self.basis[br]) {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    }
                };
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

fn solve_nonneg<T: LpScalar>(c: &[T], rows: &[(Vec<T>, Sense, T)]) -> LpResult<T> {
    let n = c.len();
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    // normalize to non-negative rhs
    let norm: Vec<(Vec<T>, Sense, T)> = rows
        .iter()
        .map(|(a, s, b)| {
            if b.is_neg() {
                let flip = match s {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                (a.iter().map(|x| -x.clone()).collect(), flip, -b.clone())
            } else {
                (a.clone(), *s, b.clone())
            }
        })
        .collect();
    let n_art = norm.iter().filter(|r| r.1 != Sense::Le).count();
    let cols = n + n_slack + n_art;
    let mut t = vec![vec![T::zero(); cols + 1]; m + 1];
    let mut basis = vec![0; m];
    let (mut si, mut ai) = (n, n + n_slack);
    let mut art_rows = Vec::new();
    for (r, (a, s, b)) in norm.iter().enumerate() {
        for (j, v) in a.iter().enumerate() {
            t[r][j] = v.clone();
        }
        t[r][cols] = b.clone();
        match s {
            Sense::Le => {
                t[r][si] = T::one();
                basis[r] = si;
                si += 1;
            }
            Sense::Ge => {
                t[r][si] = -T::one();
                si += 1;
                t[r][ai] = T::one();
                basis[r] = ai;
                ai += 1;
                art_rows.push(r);
            }
            Sense::Eq => {
                t[r][ai] = T::one();
                basis[r] = ai;
                ai += 1;
                art_rows.push(r);
            }
        }
    }
    let mut tab = Tableau { t, basis, cols };

    if n_art > 0 {
        // phase 1: maximize -(sum of artificials)
        for &r in &art_rows {
            for j in 0..=cols {
                let v = tab.t[r][j].clone();
                tab.t[m][j] = tab.t[m][j].clone() - v;
            }
        }
        for j in n + n_slack..cols {
            tab.t[m][j] = T::zero();
        }
        tab.optimize(cols);
        if tab.t[m][cols].is_neg() || tab.t[m][cols].is_pos() {
            return LpResult {
                status: LpStatus::Infeasible,
                point: Vec::new(),
                value: T::zero(),
            };
        }
        // drive degenerate artificials out of the basis
        for r in 0..m {
            if tab.basis[r] >= n + n_slack {
                if let Some(c) = (0..n + n_slack).find(|&j| !tab.t[r][j].is_nil()) {
                    tab.pivot(r, c);
                }
            }
        }
    }

    // phase 2 objective row: -c for structural columns, expressed in basis
    for v in tab.t[m].iter_mut() {
        *v = T::zero();
    }
    for (j, cj) in c.iter().enumerate() {
        tab.t[m][j] = -cj.clone();
    }
    for r in 0..m {
        let b = tab.basis[r];
        if b < n {
            let f = tab.t[m][b].clone();
            if !f.is_zero() {
                for j in 0..=cols {
                    let v = tab.t[r][j].clone();
                    tab.t[m][j] = tab.t[m][j].clone() - f.clone() * v;
                }
            }
        }
    }
    let bounded = tab.optimize(n + n_slack);
    let mut point = vec![T::zero(); n];
    for r in 0..m {
        if tab.basis[r] < n {
            point[tab.basis[r]] = tab.t[r][cols].clone();
        }
    }
    if !bounded {
        return LpResult {
            status: LpStatus::Unbounded,
            point,
            value: T::zero(),
        };
    }
    let value = c
        .iter()
        .zip(&point)
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    LpResult {
        status: LpStatus::Optimal,
        point,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_max_problem() {
        // max x + y, x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5
        let mut lp = Lp::new(vec![int(1), int(1)], false);
        lp.row(vec![int(1), int(2)], Sense::Le, int(4))
            .row(vec![int(3), int(1)], Sense::Le, int(6));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, rat(14, 5));
        assert_eq!(r.point, vec![rat(8, 5), rat(6, 5)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = Lp::new(vec![1.0], true);
        lp.row(vec![1.0], Sense::Le, 0.0).row(vec![-1.0], Sense::Le, -1.0);
        assert_eq!(lp.solve().status, LpStatus::Infeasible);

        let mut lp = Lp::new(vec![1.0, 0.0], false);
        lp.row(vec![-1.0, 1.0], Sense::Le, 1.0);
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // min x (max -x) with x free, x + y = 1, y <= 3 -> x = -2
        let mut lp = Lp::new(vec![-1.0, 0.0], true);
        lp.row(vec![1.0, 1.0], Sense::Eq, 1.0)
            .row(vec![0.0, 1.0], Sense::Le, 3.0);
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.point[0] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Klee-Minty style degenerate vertex at the origin
        let mut lp = Lp::new(vec![int(10), int(-57), int(-9), int(-24)], false);
        lp.row(vec![rat(1, 2), rat(-11, 2), rat(-5, 2), int(9)], Sense::Le, int(0))
            .row(vec![rat(1, 2), rat(-3, 2), rat(-1, 2), int(1)], Sense::Le, int(0))
            .row(vec![int(1), int(0), int(0), int(0)], Sense::Le, int(1));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, int(1));
    }
}
