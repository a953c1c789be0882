use std::fmt;
use std::sync::Arc;

use super::field::{check_chart, VectorField};
use super::graded::DifferentialForm;
use super::linalg::rank_q;
use crate::error::{Error, Result};
use crate::expr::{eval_rational, Chart, Expr, Point};

/// (1,1)-tensor as a matrix; `m[r][c]` maps `∂_c` to `m[r][c] ∂_r`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor11 {
    chart: Arc<Chart>,
    m: Vec<Vec<Expr>>,
}

impl Tensor11 {
    pub fn new(chart: &Arc<Chart>, m: Vec<Vec<Expr>>) -> Result<Self> {
        let n = chart.dim();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Degree(format!("matrix shape does not match dimension {n}")));
        }
        Ok(Tensor11 {
            chart: Arc::clone(chart),
            m,
        })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        Tensor11 {
            chart: Arc::clone(chart),
            m: vec![vec![Expr::zero(); n]; n],
        }
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        let mut t = Self::zero(chart);
        for i in 0..chart.dim() {
            t.m[i][i] = Expr::one();
        }
        t
    }

    /// `α ⊗ V`, acting as `X ↦ α(X) V`.
    pub fn outer(a: &DifferentialForm, v: &VectorField) -> Result<Self> {
        check_chart(a.chart(), v.chart())?;
        if a.degree() != 1 {
            return Err(Error::Degree("outer product needs a one-form".into()));
        }
        let n = v.chart().dim();
        let mut t = Self::zero(v.chart());
        for r in 0..n {
            for c in 0..n {
                t.m[r][c] = v.comp(r) * &a.coeff(&[c]);
            }
        }
        Ok(t)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn entry(&self, r: usize, c: usize) -> &Expr {
        &self.m[r][c]
    }

    pub fn rows(&self) -> &[Vec<Expr>] {
        &self.m
    }

    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        check_chart(&self.chart, x.chart())?;
        let comps = self
            .m
            .iter()
            .map(|row| row.iter().zip(x.comps()).map(|(a, b)| a * b).sum())
            .collect();
        VectorField::new(&self.chart, comps)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Tensor11) -> Result<Tensor11> {
        check_chart(&self.chart, &other.chart)?;
        let n = self.chart.dim();
        let mut t = Self::zero(&self.chart);
        for r in 0..n {
            for c in 0..n {
                t.m[r][c] = (0..n)
                    .filter(|&k| !self.m[r][k].is_zero() && !other.m[k][c].is_zero())
                    .map(|k| &self.m[r][k] * &other.m[k][c])
                    .sum();
            }
        }
        Ok(t)
    }

    pub fn checked_sub(&self, other: &Tensor11) -> Result<Tensor11> {
        self.zip(other, |a, b| a - b)
    }

    pub fn checked_add(&self, other: &Tensor11) -> Result<Tensor11> {
        self.zip(other, |a, b| a + b)
    }

    fn zip(&self, other: &Tensor11, f: impl Fn(&Expr, &Expr) -> Expr) -> Result<Tensor11> {
        check_chart(&self.chart, &other.chart)?;
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Tensor11 {
            chart: Arc::clone(&self.chart),
            m,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Expr::is_zero)
    }

    /// Rank of the matrix at a rational point.
    pub fn rank_at(&self, point: &Point) -> Result<usize> {
        let m = self
            .m
            .iter()
            .map(|row| row.iter().map(|e| eval_rational(e, point)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(rank_q(m))
    }
}

impl fmt::Debug for Tensor11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tensor11[{}]", self.chart.name())?;
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
