use std::sync::Arc;

use super::field::{check_chart, VectorField};
use super::graded::{DifferentialForm, Graded, MultivectorField};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr, Substitution};

/// Level set `C = 0` of an ambient chart, parametrized by a sub-chart in
/// which one ambient coordinate is replaced by a quadratic-extension branch.
#[derive(Clone, Debug)]
pub struct LevelSet {
    ambient: Arc<Chart>,
    sub: Arc<Chart>,
    constraint: Expr,
    solve_for: usize,
    value: Expr,
    to_sub: Substitution,
    /// ambient coordinate index -> sub-chart coordinate index
    index: Vec<Option<usize>>,
}

impl LevelSet {
    /// `constraint` must be quadratic in `solve_for` without a linear term,
    /// and vanish identically once `solve_for` is replaced by the extension
    /// `branch` of `sub`.
    pub fn new(
        ambient: &Arc<Chart>,
        constraint: Expr,
        solve_for: &str,
        sub: &Arc<Chart>,
        branch: &str,
    ) -> Result<Self> {
        let unsolvable = || Error::Unsolvable(solve_for.to_string());
        let s = ambient.coord_index(solve_for).ok_or_else(unsolvable)?;
        let atom = ambient.coord(s);
        if !constraint.denominator().atoms().is_empty() {
            return Err(unsolvable());
        }
        let cs = constraint.numerator().coeffs_in(atom);
        if cs.len() != 3 || !cs[1].is_zero() {
            return Err(unsolvable());
        }
        let value = Expr::atom(sub.symbol(branch).filter(|a| a.is_radical()).ok_or_else(unsolvable)?);
        let to_sub = Substitution::new()
            .bind(solve_for, value.clone())
            .into_chart(sub);
        if !constraint.substitute(&to_sub)?.is_zero() {
            return Err(unsolvable());
        }
        let mut index = Vec::with_capacity(ambient.dim());
        for (i, a) in ambient.coords().iter().enumerate() {
            if i == s {
                index.push(None);
            } else {
                let j = sub.coord_index(a.name()).ok_or_else(|| {
                    Error::InvalidChart(format!(
                        "sub-chart `{}` lacks coordinate `{}`",
                        sub.name(),
                        a.name()
                    ))
                })?;
                index.push(Some(j));
            }
        }
        if sub.dim() + 1 != ambient.dim() {
            return Err(Error::InvalidChart(format!(
                "sub-chart `{}` must have dimension {}",
                sub.name(),
                ambient.dim() - 1
            )));
        }
        Ok(LevelSet {
            ambient: Arc::clone(ambient),
            sub: Arc::clone(sub),
            constraint,
            solve_for: s,
            value,
            to_sub,
            index,
        })
    }

    pub fn ambient(&self) -> &Arc<Chart> {
        &self.ambient
    }

    pub fn sub(&self) -> &Arc<Chart> {
        &self.sub
    }

    pub fn constraint(&self) -> &Expr {
        &self.constraint
    }

    /// Restriction of an ambient function.
    pub fn pullback_fn(&self, f: &Expr) -> Result<Expr> {
        f.substitute(&self.to_sub)
    }

    /// Pullback of a form along the embedding.
    pub fn pullback(&self, a: &DifferentialForm) -> Result<DifferentialForm> {
        check_chart(&self.ambient, a.chart())?;
        let dvalue = DifferentialForm::exact(&self.sub, &self.value);
        let mut out = DifferentialForm::zero(&self.sub, a.degree())?;
        for (k, c) in a.terms() {
            let mut term = DifferentialForm::scalar(&self.sub, self.pullback_fn(c)?);
            for &i in k {
                let factor = match self.index[i] {
                    Some(j) => DifferentialForm::basis(&self.sub, &[j])?,
                    None => dvalue.clone(),
                };
                term = super::graded::wedge(&term, &factor)?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Restriction of a tangent vector field.
    pub fn restrict_field(&self, x: &VectorField) -> Result<VectorField> {
        self.restrict_multivector(&MultivectorField::from_field(x))?
            .to_field()
    }

    /// Restriction of a tangent multivector: checks that `i_{dC} T` vanishes
    /// on the level set, then drops the dependent direction.
    pub fn restrict_multivector(&self, t: &MultivectorField) -> Result<MultivectorField> {
        check_chart(&self.ambient, t.chart())?;
        if t.degree() == 0 {
            return t.map(|c| self.pullback_fn(c)).map(|g| {
                MultivectorField::scalar(&self.sub, g.to_scalar().expect("degree 0"))
            });
        }
        let dc = DifferentialForm::exact(&self.ambient, &self.constraint);
        let normal = t.contract_form(&dc)?;
        for (_, c) in normal.terms() {
            if !self.pullback_fn(c)?.is_zero() {
                return Err(Error::NotTangent(format!(
                    "{} has a transversal component along d({})",
                    t, self.constraint
                )));
            }
        }
        let mut terms = Vec::new();
        for (k, c) in t.terms() {
            if k.contains(&self.solve_for) {
                continue;
            }
            let idx = k.iter().map(|&i| self.index[i].expect("not solve_for")).collect();
            terms.push((idx, self.pullback_fn(c)?));
        }
        Graded::from_terms(&self.sub, t.degree(), terms)
    }
}
