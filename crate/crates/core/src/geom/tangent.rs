use std::sync::Arc;

use super::field::{check_chart, VectorField};
use super::tensor::Tensor11;
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

/// Canonical tangent-bundle structure: vertical endomorphism and dilation.
#[derive(Clone, Debug)]
pub struct TangentStructure {
    pub s: Tensor11,
    pub delta: VectorField,
    base: usize,
}

/// `S` maps `∂/∂x^i ↦ ∂/∂ẋ^i` and `∂/∂ẋ^i ↦ 0`; `Δ = ẋ^i ∂/∂ẋ^i`.
pub fn tangent_structure(chart: &Arc<Chart>) -> Result<TangentStructure> {
    let n = chart
        .tangent_base()
        .ok_or_else(|| Error::NotTangentBundle(chart.name().into()))?;
    let mut m = vec![vec![Expr::zero(); 2 * n]; 2 * n];
    for (i, row) in m.iter_mut().enumerate().skip(n) {
        row[i - n] = Expr::one();
    }
    let s = Tensor11::new(chart, m)?;
    let delta = VectorField::from_pairs(chart, (0..n).map(|i| (n + i, chart.x(n + i))));
    Ok(TangentStructure { s, delta, base: n })
}

impl TangentStructure {
    /// Vertical lift `X^i(x) ∂/∂x^i ↦ X^i(x) ∂/∂ẋ^i` of a base field.
    pub fn vertical_lift(&self, x: &VectorField) -> Result<VectorField> {
        check_chart(self.s.chart(), x.chart())?;
        let n = self.base;
        let chart = x.chart();
        let fibre = &chart.coords()[n..];
        for (i, c) in x.comps().iter().enumerate() {
            if (i >= n && !c.is_zero()) || fibre.iter().any(|v| c.depends_on(v)) {
                return Err(Error::NotBaseField(x.to_string()));
            }
        }
        Ok(VectorField::from_pairs(
            chart,
            (0..n).map(|i| (n + i, x.comp(i).clone())),
        ))
    }

    /// Complete (tangent) lift of a base field: `X^i ∂_i + ẋ^j ∂_j X^i ∂/∂ẋ^i`.
    pub fn complete_lift(&self, x: &VectorField) -> Result<VectorField> {
        self.vertical_lift(x)?;
        let n = self.base;
        let chart = x.chart();
        let mut pairs: Vec<(usize, Expr)> = (0..n).map(|i| (i, x.comp(i).clone())).collect();
        for i in 0..n {
            let lifted: Expr = (0..n)
                .map(|j| &chart.x(n + j) * &x.comp(i).diff(chart.coord(j)))
                .sum();
            pairs.push((n + i, lifted));
        }
        Ok(VectorField::from_pairs(chart, pairs))
    }

    pub fn base_dim(&self) -> usize {
        self.base
    }
}
