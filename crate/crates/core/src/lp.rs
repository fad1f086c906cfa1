//! Dense two-phase simplex over free variables.
//!
//! Solves `max c·x  s.t.  a_i·x <= b_i` with `x` unconstrained in sign.
//! Free variables are split as `x = u - v`, slacks are appended, and rows
//! with negative right-hand sides receive phase-1 artificials. Pivoting
//! uses Bland's rule throughout, so the iteration provably terminates and
//! the result is deterministic for a fixed constraint order.
//!
//! Every geometric predicate in this crate (emptiness, Chebyshev balls,
//! redundancy, support functions) reduces to this solver.

/// Feasibility / pivot tolerance shared by all LP-backed predicates.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Result of an LP solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// A finite maximizer was found.
    Optimal { x: Vec<f64>, value: f64 },
    /// The constraint set is empty.
    Infeasible,
    /// The objective is unbounded above on the feasible set.
    Unbounded,
}

impl LpOutcome {
    /// Optimal value, if any.
    pub fn value(&self) -> Option<f64> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// Maximize `objective·x` subject to `coeffs·x <= rhs` for each row.
///
/// `objective.len()` fixes the dimension; every row must match it.
pub fn maximize(objective: &[f64], rows: &[(&[f64], f64)]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|(a, _)| a.len() == n));

    // Columns: u_0..u_{n-1}, v_0..v_{n-1}, s_0..s_{m-1}, then artificials.
    let base_cols = 2 * n + m;
    let mut needs_artificial = Vec::new();
    let mut tableau: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, (a, b)) in rows.iter().enumerate() {
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; base_cols + 1];
        for j in 0..n {
            row[j] = sign * a[j];
            row[n + j] = -sign * a[j];
        }
        row[2 * n + i] = sign;
        row[base_cols] = sign * b;
        if sign < 0.0 {
            needs_artificial.push(i);
        }
        tableau.push(row);
    }

    let n_art = needs_artificial.len();
    let total_cols = base_cols + n_art;
    for row in tableau.iter_mut() {
        let rhs = row.pop().expect("row has rhs");
        row.extend(std::iter::repeat(0.0).take(n_art));
        row.push(rhs);
    }
    let mut basis = vec![0usize; m];
    for i in 0..m {
        basis[i] = 2 * n + i; // slack
    }
    for (k, &i) in needs_artificial.iter().enumerate() {
        tableau[i][base_cols + k] = 1.0;
        basis[i] = base_cols + k;
    }

    // Phase 1: drive artificials to zero.
    if n_art > 0 {
        let mut cost = vec![0.0; total_cols];
        for j in base_cols..total_cols {
            cost[j] = -1.0;
        }
        run_simplex(&mut tableau, &mut basis, &cost, total_cols, total_cols);
        let infeas: f64 = basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= base_cols)
            .map(|(i, _)| tableau[i][total_cols])
            .sum();
        if infeas > FEASIBILITY_TOL * (1.0 + m as f64) {
            return LpOutcome::Infeasible;
        }
        // Pivot basic artificials (at value zero) out where possible.
        for i in 0..m {
            if basis[i] >= base_cols {
                if let Some(j) = (0..base_cols).find(|&j| tableau[i][j].abs() > FEASIBILITY_TOL) {
                    pivot(&mut tableau, &mut basis, i, j);
                }
            }
        }
    }

    // Phase 2: original objective over the split variables; artificials stay out.
    let mut cost = vec![0.0; total_cols];
    for j in 0..n {
        cost[j] = objective[j];
        cost[n + j] = -objective[j];
    }
    let bounded = run_simplex(&mut tableau, &mut basis, &cost, total_cols, base_cols);
    if !bounded {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        let val = tableau[i][total_cols];
        if b < n {
            x[b] += val;
        } else if b < 2 * n {
            x[b - n] -= val;
        }
    }
    let value = objective.iter().zip(x.iter()).map(|(c, xi)| c * xi).sum();
    LpOutcome::Optimal { x, value }
}

/// True iff `{x : coeffs·x <= rhs}` is nonempty.
pub fn feasible(rows: &[(&[f64], f64)]) -> bool {
    let n = rows.first().map_or(0, |(a, _)| a.len());
    matches!(maximize(&vec![0.0; n], rows), LpOutcome::Optimal { .. })
}

/// Primal simplex with Bland's rule. Entering columns are restricted to
/// `0..eligible_cols`. Returns false when the objective is unbounded.
fn run_simplex(
    tableau: &mut [Vec<f64>],
    basis: &mut [usize],
    cost: &[f64],
    total_cols: usize,
    eligible_cols: usize,
) -> bool {
    let m = tableau.len();
    // Reduced-cost row: z_j - c_j, kept consistent by the same pivots.
    let mut obj = vec![0.0; total_cols + 1];
    for j in 0..total_cols {
        obj[j] = -cost[j];
    }
    for i in 0..m {
        let cb = cost[basis[i]];
        if cb != 0.0 {
            for j in 0..=total_cols {
                obj[j] += cb * tableau[i][j];
            }
        }
    }

    // Bland's rule terminates; the cap only guards against NaN poisoning.
    let max_iters = 20_000 + 200 * (m + total_cols);
    for _ in 0..max_iters {
        let entering = (0..eligible_cols).find(|&j| obj[j] < -FEASIBILITY_TOL);
        let entering = match entering {
            Some(j) => j,
            None => return true,
        };
        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = tableau[i][entering];
            if a > FEASIBILITY_TOL {
                let ratio = tableau[i][total_cols] / a;
                match leaving {
                    None => leaving = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - FEASIBILITY_TOL
                            || (ratio < lr + FEASIBILITY_TOL && basis[i] < basis[li])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let row = match leaving {
            Some((i, _)) => i,
            None => return false,
        };
        pivot_with_obj(tableau, &mut obj, basis, row, entering, total_cols);
    }
    panic!("simplex exceeded its iteration cap (numerically poisoned input?)");
}

fn pivot(tableau: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let m = tableau.len();
    let cols = tableau[row].len();
    let p = tableau[row][col];
    for j in 0..cols {
        tableau[row][j] /= p;
    }
    for i in 0..m {
        if i != row {
            let f = tableau[i][col];
            if f != 0.0 {
                for j in 0..cols {
                    tableau[i][j] -= f * tableau[row][j];
                }
            }
        }
    }
    basis[row] = col;
}

fn pivot_with_obj(
    tableau: &mut [Vec<f64>],
    obj: &mut [f64],
    basis: &mut [usize],
    row: usize,
    col: usize,
    total_cols: usize,
) {
    pivot(tableau, basis, row, col);
    let f = obj[col];
    if f != 0.0 {
        for j in 0..=total_cols {
            obj[j] -= f * tableau[row][j];
        }
    }
}
