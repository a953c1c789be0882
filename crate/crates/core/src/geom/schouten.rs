use super::field::check_chart;
use super::graded::{MultivectorField, Variance};
use crate::error::{Error, Result};
use crate::expr::Expr;

/// Schouten–Nijenhuis bracket for multivectors of degree at most 2.
///
/// Uses the odd-variable form `[A, B] = Σ_k (A ∂⃖/∂ξ_k)(∂B/∂x^k) - (∂A/∂x^k)(∂⃗/∂ξ_k B)`,
/// which reduces to the Lie bracket on vector fields and to `L_X B` when
/// `A = X` has degree 1.
pub fn schouten_bracket(a: &MultivectorField, b: &MultivectorField) -> Result<MultivectorField> {
    check_chart(a.chart(), b.chart())?;
    for d in [a.degree(), b.degree()] {
        if d > 2 {
            return Err(Error::UnsupportedDegree(d));
        }
    }
    let deg = a.degree() + b.degree();
    if deg == 0 {
        return MultivectorField::zero(a.chart(), 0);
    }
    let chart = a.chart();
    let mut out = MultivectorField::zero(chart, deg - 1)?;
    for k in 0..chart.dim() {
        let ra = odd_derivative(a, k, false);
        let lb = odd_derivative(b, k, true);
        if ra.is_empty() && lb.is_empty() {
            continue;
        }
        let x = chart.coord(k);
        for (ia, ca) in &ra {
            for (ib, cb) in b.terms() {
                let d = cb.diff(x);
                if !d.is_zero() {
                    out.add_term(concat(ia, ib), ca * &d);
                }
            }
        }
        for (ia, ca) in a.terms() {
            let d = ca.diff(x);
            if d.is_zero() {
                continue;
            }
            for (ib, cb) in &lb {
                out.add_term(concat(ia, ib), -(&d * cb));
            }
        }
    }
    Ok(out)
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Terms of `∂/∂ξ_k` applied from the right (`left = false`) or left.
fn odd_derivative<V: Variance>(
    m: &super::graded::Graded<V>,
    k: usize,
    left: bool,
) -> Vec<(Vec<usize>, Expr)> {
    let mut out = Vec::new();
    for (idx, c) in m.terms() {
        if let Some(p) = idx.iter().position(|&i| i == k) {
            let moves = if left { p } else { idx.len() - 1 - p };
            let mut rest = idx.to_vec();
            rest.remove(p);
            out.push((rest, if moves % 2 == 1 { -c.clone() } else { c.clone() }));
        }
    }
    out
}
