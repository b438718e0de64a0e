//! Dense two-phase simplex for the small linear programs used by the
//! geometry code (hemisphere certificates, boundedness checks).
//!
//! Problems here have at most a few hundred constraints and a handful of
//! variables, so a full-tableau method with Bland's rule is plenty.

use nalgebra::DVector;
use thiserror::Error;

/// Pivot tolerance; entries smaller than this are treated as zero.
const PIVOT_TOL: f64 = 1e-11;
/// Safety cap on pivots (Bland's rule terminates, this guards bugs).
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Values of the original variables.
    pub x: Vec<f64>,
    /// Optimal objective value.
    pub objective: f64,
}

/// Maximize `c . x` subject to `A x <= b`, `x >= 0`.
///
/// Right-hand sides may be negative; a phase-I pass with artificial
/// variables recovers a feasible basis. Bland's rule (lowest index) is used
/// for both entering and leaving variables, which also fixes tie-breaking
/// deterministically.
pub fn solve_max(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution, LpError> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);

    // Column layout: [n original vars | m slacks | artificials | rhs].
    // Rows with negative rhs are negated, turning their slack coefficient
    // to -1; those rows get an artificial variable.
    let mut needs_artificial = Vec::new();
    for (i, &bi) in b.iter().enumerate() {
        if bi < 0.0 {
            needs_artificial.push(i);
        }
    }
    let k = needs_artificial.len();
    let cols = n + m + k;

    let mut tab = vec![vec![0.0f64; cols + 1]; m];
    let mut basis = vec![0usize; m];
    let mut art_of_row = vec![usize::MAX; m];
    for (ai, &r) in needs_artificial.iter().enumerate() {
        art_of_row[r] = n + m + ai;
    }
    for i in 0..m {
        let neg = b[i] < 0.0;
        let s = if neg { -1.0 } else { 1.0 };
        for j in 0..n {
            tab[i][j] = s * a[i][j];
        }
        tab[i][n + i] = s; // slack
        tab[i][cols] = s * b[i];
        if neg {
            tab[i][art_of_row[i]] = 1.0;
            basis[i] = art_of_row[i];
        } else {
            basis[i] = n + i;
        }
    }

    if k > 0 {
        // Phase I: maximize -sum(artificials).
        let mut obj = vec![0.0f64; cols + 1];
        for ai in 0..k {
            obj[n + m + ai] = -1.0;
        }
        reduce_objective(&mut obj, &tab, &basis, cols);
        run_simplex(&mut tab, &mut basis, &mut obj, cols, cols)?;
        if obj[cols] < -1e-9 {
            return Err(LpError::Infeasible);
        }
        // Pivot out any artificial stuck in the basis at level zero.
        for r in 0..m {
            if basis[r] >= n + m {
                if let Some(j) = (0..n + m).find(|&j| tab[r][j].abs() > PIVOT_TOL) {
                    pivot(&mut tab, &mut basis, &mut obj, r, j, cols);
                }
                // An all-zero row is redundant; the artificial stays basic
                // at zero and is excluded from phase II entering columns.
            }
        }
    }

    // Phase II over the original + slack columns only.
    let mut obj = vec![0.0f64; cols + 1];
    obj[..n].copy_from_slice(c);
    reduce_objective(&mut obj, &tab, &basis, cols);
    run_simplex(&mut tab, &mut basis, &mut obj, cols, n + m)?;

    let mut x = vec![0.0f64; n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab[r][cols];
        }
    }
    Ok(LpSolution {
        x,
        objective: obj[cols],
    })
}

fn reduce_objective(obj: &mut [f64], tab: &[Vec<f64>], basis: &[usize], cols: usize) {
    for (r, &bv) in basis.iter().enumerate() {
        let coef = obj[bv];
        if coef != 0.0 {
            for j in 0..=cols {
                obj[j] -= coef * tab[r][j];
            }
            obj[bv] = 0.0;
        }
    }
    // Track the objective's value in the rhs slot with flipped sign
    // convention fixed below in run_simplex/pivot: obj[cols] holds the
    // current objective value.
    obj[cols] = -obj[cols];
}

fn run_simplex(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    obj: &mut [f64],
    cols: usize,
    enter_limit: usize,
) -> Result<(), LpError> {
    for _ in 0..MAX_PIVOTS {
        // Bland: entering column = lowest index with positive reduced cost.
        let Some(e) = (0..enter_limit).find(|&j| obj[j] > PIVOT_TOL) else {
            return Ok(());
        };
        // Ratio test; ties broken by lowest basis variable index.
        let mut row: Option<usize> = None;
        let mut best = f64::INFINITY;
        for r in 0..tab.len() {
            let coef = tab[r][e];
            if coef > PIVOT_TOL {
                let ratio = tab[r][cols] / coef;
                let better = match row {
                    None => true,
                    Some(pr) => {
                        ratio < best - 1e-15
                            || (ratio < best + 1e-15 && basis[r] < basis[pr])
                    }
                };
                if better {
                    row = Some(r);
                    best = ratio;
                }
            }
        }
        let Some(r) = row else {
            return Err(LpError::Unbounded);
        };
        pivot(tab, basis, obj, r, e, cols);
    }
    Err(LpError::IterationLimit)
}

fn pivot(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    obj: &mut [f64],
    r: usize,
    e: usize,
    cols: usize,
) {
    let piv = tab[r][e];
    for j in 0..=cols {
        tab[r][j] /= piv;
    }
    tab[r][e] = 1.0;
    for i in 0..tab.len() {
        if i != r {
            let f = tab[i][e];
            if f != 0.0 {
                for j in 0..=cols {
                    tab[i][j] -= f * tab[r][j];
                }
                tab[i][e] = 0.0;
            }
        }
    }
    let f = obj[e];
    if f != 0.0 {
        for j in 0..cols {
            obj[j] -= f * tab[r][j];
        }
        obj[e] = 0.0;
        obj[cols] += f * tab[r][cols];
    }
    basis[r] = e;
}

/// Searches for a unit vector `u` whose closed hemisphere
/// `{x : <x,u> >= 0}` contains every point of `points` (up to `eps`).
///
/// Solves `max t  s.t.  <x,u> >= t for all points, |u|_inf <= 1` by
/// maximizing over each face `u_k = ±1` of the sup-norm ball; every nonzero
/// optimizer can be scaled onto some face, so a witness is found exactly
/// when one exists. Returns the Euclidean-normalized witness, or `None`
/// when the origin lies in the interior of the convex hull.
pub fn hemisphere_witness_points(points: &[DVector<f64>], eps: f64) -> Option<DVector<f64>> {
    if points.is_empty() {
        return None;
    }
    let n = points[0].len();
    if n == 1 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = lo.min(p[0]);
            hi = hi.max(p[0]);
        }
        if lo >= -eps {
            return Some(DVector::from_element(1, 1.0));
        }
        if hi <= eps {
            return Some(DVector::from_element(1, -1.0));
        }
        return None;
    }

    let m = points.len();
    let mut best: Option<(f64, DVector<f64>)> = None;
    for k in 0..n {
        for sign in [1.0f64, -1.0] {
            // Variables: w_i = u_i + 1 in [0,2] for i != k, then t+, t-.
            let free: Vec<usize> = (0..n).filter(|&i| i != k).collect();
            let nv = free.len() + 2;
            let (ti, tj) = (free.len(), free.len() + 1);
            let mut a = Vec::with_capacity(m + free.len());
            let mut b = Vec::with_capacity(m + free.len());
            for p in points {
                let mut row = vec![0.0f64; nv];
                for (col, &i) in free.iter().enumerate() {
                    row[col] = -p[i];
                }
                row[ti] = 1.0;
                row[tj] = -1.0;
                let rhs = sign * p[k] - free.iter().map(|&i| p[i]).sum::<f64>();
                a.push(row);
                b.push(rhs);
            }
            for col in 0..free.len() {
                let mut row = vec![0.0f64; nv];
                row[col] = 1.0;
                a.push(row);
                b.push(2.0);
            }
            let mut c = vec![0.0f64; nv];
            c[ti] = 1.0;
            c[tj] = -1.0;
            let sol = match solve_max(&c, &a, &b) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if best.as_ref().is_none_or(|(t, _)| sol.objective > *t) {
                let mut u = DVector::zeros(n);
                u[k] = sign;
                for (col, &i) in free.iter().enumerate() {
                    u[i] = sol.x[col] - 1.0;
                }
                best = Some((sol.objective, u));
            }
        }
    }
    match best {
        Some((t, u)) if t >= -eps => {
            let norm = u.norm();
            (norm > 0.0).then(|| u / norm)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn maximizes_simple_bounded_program() {
        // max x + y s.t. x <= 2, y <= 3, x + y <= 4.
        let sol = solve_max(
            &[1.0, 1.0],
            &[
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ],
            &[2.0, 3.0, 4.0],
        )
        .unwrap();
        assert!((sol.objective - 4.0).abs() < 1e-12);
    }

    #[test]
    fn handles_negative_rhs_via_phase_one() {
        // max -x s.t. -x <= -1 (i.e. x >= 1): optimum x = 1.
        let sol = solve_max(&[-1.0], &[vec![-1.0]], &[-1.0]).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.objective + 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible() {
        // x <= 1 and x >= 2.
        let err = solve_max(&[1.0], &[vec![1.0], vec![-1.0]], &[1.0, -2.0]).unwrap_err();
        assert_eq!(err, LpError::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let err = solve_max(&[1.0], &[vec![-1.0]], &[0.0]).unwrap_err();
        assert_eq!(err, LpError::Unbounded);
    }

    #[test]
    fn witness_for_single_point_is_that_direction() {
        let pts = vec![dvector![1.0, 0.0]];
        let u = hemisphere_witness_points(&pts, 1e-9).unwrap();
        assert!((u - dvector![1.0, 0.0]).norm() < 1e-12);
    }

    #[test]
    fn witness_for_equatorial_orbit_is_polar_axis() {
        let pts = vec![
            dvector![1.0, 0.0, 0.0],
            dvector![-1.0, 0.0, 0.0],
            dvector![0.0, 1.0, 0.0],
            dvector![0.0, -1.0, 0.0],
        ];
        let u = hemisphere_witness_points(&pts, 1e-9).unwrap();
        assert!(u[2].abs() > 1.0 - 1e-9, "witness should be ±e3, got {u}");
    }

    #[test]
    fn no_witness_when_origin_interior() {
        // Equilateral triangle directions span the plane around 0.
        let pts: Vec<_> = (0..3)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 3.0;
                dvector![a.cos(), a.sin()]
            })
            .collect();
        assert!(hemisphere_witness_points(&pts, 1e-9).is_none());
    }

    #[test]
    fn one_dimensional_points() {
        assert!(hemisphere_witness_points(&[dvector![1.0]], 1e-9).is_some());
        assert!(
            hemisphere_witness_points(&[dvector![1.0], dvector![-1.0]], 1e-9).is_none()
        );
    }
}
