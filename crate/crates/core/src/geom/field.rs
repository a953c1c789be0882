use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

/// Vector field `X = X^i ∂/∂x^i` in chart coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<Expr>,
}

pub(crate) fn check_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ChartMismatch(a.name().into(), b.name().into()))
    }
}

impl VectorField {
    pub fn new(chart: &Arc<Chart>, comps: Vec<Expr>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::Degree(format!(
                "{} components for a {}-dimensional chart",
                comps.len(),
                chart.dim()
            )));
        }
        Ok(VectorField {
            chart: Arc::clone(chart),
            comps,
        })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        VectorField {
            chart: Arc::clone(chart),
            comps: vec![Expr::zero(); chart.dim()],
        }
    }

    /// Coordinate field `∂/∂x^i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        Self::from_pairs(chart, [(i, Expr::one())])
    }

    pub fn from_pairs(chart: &Arc<Chart>, pairs: impl IntoIterator<Item = (usize, Expr)>) -> Self {
        let mut v = Self::zero(chart);
        for (i, e) in pairs {
            v.comps[i] = &v.comps[i] + &e;
        }
        v
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Expr {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        let mut acc = Expr::zero();
        for (c, x) in self.comps.iter().zip(self.chart.coords()) {
            if c.is_zero() {
                continue;
            }
            let d = f.diff(x);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// Pointwise product with a function.
    pub fn scale(&self, f: &Expr) -> Self {
        VectorField {
            chart: Arc::clone(&self.chart),
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Result<Expr>) -> Result<Self> {
        Ok(VectorField {
            chart: Arc::clone(&self.chart),
            comps: self.comps.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&Expr, &Expr) -> Expr) -> Self {
        assert!(
            self.chart.same_as(&other.chart),
            "vector fields on different charts"
        );
        VectorField {
            chart: Arc::clone(&self.chart),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// `[X, Y]^i = X(Y^i) - Y(X^i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_chart(&x.chart, &y.chart)?;
    let comps = (0..x.chart.dim())
        .map(|i| &x.apply(&y.comps[i]) - &y.apply(&x.comps[i]))
        .collect();
    Ok(VectorField {
        chart: Arc::clone(&x.chart),
        comps,
    })
}

/// # Panics
/// On chart mismatch.
impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.zip(rhs, |a, b| a + b)
    }
}

/// # Panics
/// On chart mismatch.
impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(&Expr::int(-1))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, x) in self.comps.iter().zip(self.chart.coords()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*@{}", x.name())?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{}]({self})", self.chart.name())
    }
}
