use std::collections::BTreeMap;
use std::sync::Arc;

use super::atom::{Atom, AtomKind};
use super::chart::Chart;
use super::poly::Poly;
use super::Expr;
use crate::error::{Error, Result};

/// How an opaque function head is replaced.
#[derive(Clone, Debug)]
pub enum FunctionBinding {
    /// `f(u) ↦ body[var := u]`; derivatives are taken of `body` in `var`.
    Template { var: Atom, body: Expr },
    /// Keeps `f` opaque but imposes `f'(u) = rate(u) f(u)`, so that every
    /// derivative `f^(k)(u)` collapses to a multiple of `f(u)`.
    Linear { var: Atom, rate: Expr },
}

/// Simultaneous substitution of symbols (by name) and opaque function heads.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    symbols: BTreeMap<String, Expr>,
    functions: BTreeMap<String, FunctionBinding>,
    target: Option<Arc<Chart>>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, name: &str, value: Expr) -> Self {
        self.symbols.insert(name.to_string(), value);
        self
    }

    pub fn bind_function(mut self, head: &str, binding: FunctionBinding) -> Self {
        self.functions.insert(head.to_string(), binding);
        self
    }

    /// Unbound symbols are re-resolved by name in `chart`.
    pub fn into_chart(mut self, chart: &Arc<Chart>) -> Self {
        self.target = Some(Arc::clone(chart));
        self
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn apply(&self, e: &Expr) -> Result<Expr> {
        let mut cache = BTreeMap::new();
        let num = self.apply_poly(e.numerator(), &mut cache)?;
        if e.denominator().is_one() {
            return Ok(num);
        }
        let den = self.apply_poly(e.denominator(), &mut cache)?;
        if den.is_zero() {
            return Err(Error::Substitution(format!(
                "denominator of {e} vanishes identically"
            )));
        }
        num.try_div(&den)
    }

    fn apply_poly(&self, p: &Poly, cache: &mut BTreeMap<Atom, Expr>) -> Result<Expr> {
        let mut out = Expr::zero();
        for (m, c) in p.terms() {
            let mut t = Expr::rational(c.clone());
            for (a, e) in m.factors() {
                let img = match cache.get(a) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.image(a)?;
                        cache.insert(a.clone(), v.clone());
                        v
                    }
                };
                t = &t * &img.pow(*e as i32)?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn image(&self, a: &Atom) -> Result<Expr> {
        match a.kind() {
            AtomKind::Symbol | AtomKind::Radical { .. } => {
                if let Some(v) = self.symbols.get(a.name()) {
                    return Ok(v.clone());
                }
                if let Some(chart) = &self.target {
                    return chart.symbol(a.name()).map(Expr::atom).ok_or_else(|| {
                        Error::Substitution(format!(
                            "`{}` has no counterpart in chart `{}`",
                            a.name(),
                            chart.name()
                        ))
                    });
                }
                if let Some(q) = a.radicand() {
                    if q.atoms().iter().any(|s| self.symbols.contains_key(s.name())) {
                        return Err(Error::Substitution(format!(
                            "radical `{}` depends on a substituted symbol; bind it explicitly",
                            a.name()
                        )));
                    }
                }
                Ok(Expr::atom(a))
            }
            AtomKind::Apply { order, arg } => {
                let arg = self.apply(arg)?;
                match self.functions.get(a.name()) {
                    None => Ok(Expr::atom(&Atom::apply(a.name(), *order, arg))),
                    Some(FunctionBinding::Template { var, body }) => {
                        let mut d = body.clone();
                        for _ in 0..*order {
                            d = d.diff(var);
                        }
                        Substitution::new().bind(var.name(), arg).apply(&d)
                    }
                    Some(FunctionBinding::Linear { var, rate }) => {
                        let mut coeff = Expr::one();
                        for _ in 0..*order {
                            coeff = &coeff.diff(var) + &(&coeff * rate);
                        }
                        let coeff = Substitution::new().bind(var.name(), arg.clone()).apply(&coeff)?;
                        Ok(&coeff * &Expr::atom(&Atom::apply(a.name(), 0, arg)))
                    }
                }
            }
        }
    }
}

impl Expr {
    pub fn substitute(&self, s: &Substitution) -> Result<Expr> {
        s.apply(self)
    }
}
