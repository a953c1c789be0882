//! Exact elimination over ℚ and over the rational-function field.

use num_traits::Zero;

use super::graded::DifferentialForm;
use crate::error::{Error, Result};
use crate::expr::{eval_rational, Expr, Point, Q};

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_q(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let k = &m[r][c] * &inv;
                for j in c..cols {
                    let t = &k * &m[rank][j];
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a two-form's skew coefficient matrix at a rational point.
pub fn two_form_rank(w: &DifferentialForm, point: &Point) -> Result<usize> {
    if w.degree() != 2 {
        return Err(Error::Degree(format!("expected a two-form, got degree {}", w.degree())));
    }
    let n = w.chart().dim();
    let mut m = vec![vec![Q::zero(); n]; n];
    for (k, c) in w.terms() {
        let v = eval_rational(c, point)?;
        m[k[1]][k[0]] = -v.clone();
        m[k[0]][k[1]] = v;
    }
    Ok(rank_q(m))
}

/// Solves `Σ_k c_k cols[k] = rhs` over the rational-function field.
///
/// Returns `Ok(coefficients)` when `rhs` lies in the span, else `Err` with
/// the reduced residual (nonzero entries of the eliminated system).
pub fn solve_span(cols: &[Vec<Expr>], rhs: &[Expr]) -> std::result::Result<Vec<Expr>, Vec<Expr>> {
    let n = rhs.len();
    let k = cols.len();
    // augmented rows: [a_{r,0} .. a_{r,k-1} | b_r]
    let mut m: Vec<Vec<Expr>> = (0..n)
        .map(|r| {
            let mut row: Vec<Expr> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..n).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip().expect("nonzero pivot");
        for j in c..=k {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..n {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=k {
                    let t = &f * &m[rank][j];
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let residual: Vec<Expr> = (rank..n).map(|r| m[r][k].clone()).collect();
    if residual.iter().any(|e| !e.is_zero()) {
        return Err(residual);
    }
    let mut sol = vec![Expr::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][k].clone();
    }
    Ok(sol)
}
