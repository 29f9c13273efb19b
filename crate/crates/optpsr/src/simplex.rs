//! Exact two-phase tableau simplex over a generic scalar.
//!
//! Solves `maximize c·x subject to rows, x >= 0` where every row is an
//! inequality `a·x <= b` or `a·x >= b`.  Dense tableau, Bland's smallest-
//! index pivoting rule (entering column and leaving row), which guarantees
//! termination even on degenerate systems.  With an exact scalar such as
//! [`crate::Rat`] the outcome is exact; that is how the crate uses it.
//!
//! This is an internal building block for the feasibility checker; the
//! systems it sees are small (a handful of variables, tens of rows), so a
//! dense textbook implementation is the right tool.

use std::cmp::Ordering;

use crate::scalar::Scalar;

/// Direction of an inequality row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rel {
    /// `coeffs · x <= rhs`
    Le,
    /// `coeffs · x >= rhs`
    Ge,
}

/// One inequality over the structural variables.
#[derive(Debug, Clone)]
pub(crate) struct Row<S> {
    pub coeffs: Vec<S>,
    pub rel: Rel,
    pub rhs: S,
}

/// Result of a solve.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome<S> {
    /// No point satisfies the rows (with `x >= 0`).
    Infeasible,
    /// The objective is unbounded above on the feasible set.
    Unbounded,
    /// An optimal vertex: objective value and the structural variables.
    Optimal { value: S, point: Vec<S> },
}

/// Maximizes `objective · x` over `x >= 0` subject to `rows`.
pub(crate) fn maximize<S: Scalar>(objective: &[S], rows: &[Row<S>]) -> Outcome<S> {
    Tableau::build(objective, rows).solve()
}

struct Tableau<S> {
    /// Number of structural variables.
    n_struct: usize,
    /// First artificial column; columns `>= art_start` never enter in
    /// phase 2.
    art_start: usize,
    /// Column index of the right-hand side.
    rhs_col: usize,
    /// `rows[i]` has length `rhs_col + 1`; basic columns are unit.
    rows: Vec<Vec<S>>,
    /// Basic variable of each row.
    basis: Vec<usize>,
    /// Reduced-cost row, same length as the rows; entry `rhs_col` holds
    /// minus the current phase objective value.
    cost: Vec<S>,
    /// The caller's objective (maximization), over structural variables.
    objective: Vec<S>,
    /// Number of artificial variables introduced.
    n_art: usize,
}

impl<S: Scalar> Tableau<S> {
    fn build(objective: &[S], rows: &[Row<S>]) -> Self {
        let n_struct = objective.len();
        let m = rows.len();

        // Normalize to non-negative right-hand sides.
        let mut normalized: Vec<Row<S>> = rows.to_vec();
        for row in &mut normalized {
            debug_assert_eq!(row.coeffs.len(), n_struct);
            if row.rhs < S::zero() {
                for c in &mut row.coeffs {
                    *c = -c.clone();
                }
                row.rhs = -row.rhs.clone();
                row.rel = match row.rel {
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                };
            }
        }

        let n_art = normalized.iter().filter(|r| r.rel == Rel::Ge).count();
        // Layout: [structural | one slack/surplus per row | artificials | rhs]
        let art_start = n_struct + m;
        let rhs_col = art_start + n_art;

        let mut tab_rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = art_start;
        for (i, row) in normalized.iter().enumerate() {
            let mut r = vec![S::zero(); rhs_col + 1];
            r[..n_struct].clone_from_slice(&row.coeffs);
            r[rhs_col] = row.rhs.clone();
            match row.rel {
                Rel::Le => {
                    r[n_struct + i] = S::one(); // slack, basic
                    basis.push(n_struct + i);
                }
                Rel::Ge => {
                    r[n_struct + i] = -S::one(); // surplus
                    r[next_art] = S::one(); // artificial, basic
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            tab_rows.push(r);
        }

        Tableau {
            n_struct,
            art_start,
            rhs_col,
            rows: tab_rows,
            basis,
            cost: vec![S::zero(); rhs_col + 1],
            objective: objective.to_vec(),
            n_art,
        }
    }

    /// Installs the reduced-cost row for minimizing `c`, canonicalized
    /// against the current basis (basic columns get reduced cost zero).
    fn load_cost(&mut self, c: &[S]) {
        self.cost = vec![S::zero(); self.rhs_col + 1];
        self.cost[..c.len()].clone_from_slice(c);
        for i in 0..self.rows.len() {
            let cb = self.cost[self.basis[i]].clone();
            if !cb.is_zero() {
                for j in 0..=self.rhs_col {
                    let adj = cb.clone() * self.rows[i][j].clone();
                    self.cost[j] = self.cost[j].clone() - adj;
                }
            }
        }
    }

    fn pivot(&mut self, pivot_row: usize, pivot_col: usize) {
        let p = self.rows[pivot_row][pivot_col].clone();
        debug_assert!(!p.is_zero());
        for j in 0..=self.rhs_col {
            self.rows[pivot_row][j] = self.rows[pivot_row][j].clone() / p.clone();
        }
        for i in 0..self.rows.len() {
            if i == pivot_row {
                continue;
            }
            let factor = self.rows[i][pivot_col].clone();
            if !factor.is_zero() {
                for j in 0..=self.rhs_col {
                    let adj = factor.clone() * self.rows[pivot_row][j].clone();
                    self.rows[i][j] = self.rows[i][j].clone() - adj;
                }
            }
        }
        let factor = self.cost[pivot_col].clone();
        if !factor.is_zero() {
            for j in 0..=self.rhs_col {
                let adj = factor.clone() * self.rows[pivot_row][j].clone();
                self.cost[j] = self.cost[j].clone() - adj;
            }
        }
        self.basis[pivot_row] = pivot_col;
    }

    /// Runs simplex iterations on the loaded cost row until optimal or
    /// unbounded.  `allowed_cols` bounds the entering-column search.
    /// Returns `false` on unboundedness.
    fn iterate(&mut self, allowed_cols: usize) -> bool {
        loop {
            // Bland: smallest column with negative reduced cost.
            let entering = (0..allowed_cols).find(|&j| self.cost[j] < S::zero());
            let Some(j) = entering else {
                return true; // optimal
            };
            // Ratio test; Bland tie-break on smallest basis index.
            let mut best: Option<(S, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if *a > S::zero() {
                    let ratio = self.rows[i][self.rhs_col].clone() / a.clone();
                    let replace = match &best {
                        None => true,
                        Some((r, bi)) => match ratio.partial_cmp(r) {
                            Some(Ordering::Less) => true,
                            Some(Ordering::Equal) => self.basis[i] < self.basis[*bi],
                            _ => false,
                        },
                    };
                    if replace {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((_, leave)) = best else {
                return false; // unbounded in direction j
            };
            self.pivot(leave, j);
        }
    }

    /// Current phase objective value (the loaded cost row is for
    /// minimization; the canonical form keeps minus the value at the
    /// right-hand-side entry).
    fn objective_value(&self) -> S {
        -self.cost[self.rhs_col].clone()
    }

    fn solve(mut self) -> Outcome<S> {
        // Phase 1: minimize the sum of artificials.
        if self.n_art > 0 {
            let mut c1 = vec![S::zero(); self.rhs_col];
            for item in c1.iter_mut().take(self.rhs_col).skip(self.art_start) {
                *item = S::one();
            }
            self.load_cost(&c1);
            if !self.iterate(self.rhs_col) {
                // Sum of artificials is bounded below by zero; unbounded
                // cannot happen.  Treat defensively as infeasible.
                return Outcome::Infeasible;
            }
            if self.objective_value() > S::zero() {
                return Outcome::Infeasible;
            }
            // Drive any artificial still basic (at value zero) out of the
            // basis, or drop its row if it is redundant.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.art_start {
                    let col = (0..self.art_start).find(|&j| !self.rows[i][j].is_zero());
                    match col {
                        Some(j) => self.pivot(i, j),
                        None => {
                            // Redundant row: all structural and slack
                            // coefficients vanished.
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        // Phase 2: minimize the negated caller objective.
        let c2: Vec<S> = self.objective.iter().map(|c| -c.clone()).collect();
        self.load_cost(&c2);
        if !self.iterate(self.art_start) {
            return Outcome::Unbounded;
        }

        let mut point = vec![S::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                point[b] = self.rows[i][self.rhs_col].clone();
            }
        }
        // Minimized -c·x, so the maximum of c·x is the negated minimum,
        // which the canonical cost row holds at the rhs entry directly.
        Outcome::Optimal {
            value: self.cost[self.rhs_col].clone(),
            point,
        }
    }
}
