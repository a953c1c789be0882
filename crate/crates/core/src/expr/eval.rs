use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::atom::{Atom, AtomKind};
use super::poly::Poly;
use super::{Expr, Q};
use crate::error::{Error, Result};

/// Rational values for chart symbols, keyed by name. Extension symbols may
/// be supplied explicitly; otherwise their positive branch is computed.
pub type Point = BTreeMap<String, Q>;

/// Exact value of `e` at `point`.
pub fn eval_rational(e: &Expr, point: &Point) -> Result<Q> {
    let mut cache = BTreeMap::new();
    let den = eval_poly(e.denominator(), point, &mut cache)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let num = eval_poly(e.numerator(), point, &mut cache)?;
    Ok(num / den)
}

fn eval_poly(p: &Poly, point: &Point, cache: &mut BTreeMap<Atom, Q>) -> Result<Q> {
    let mut total = Q::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (a, e) in m.factors() {
            let v = match cache.get(a) {
                Some(v) => v.clone(),
                None => {
                    let v = eval_atom(a, point)?;
                    cache.insert(a.clone(), v.clone());
                    v
                }
            };
            t *= num_traits::pow(v, *e as usize);
        }
        total += t;
    }
    Ok(total)
}

fn eval_atom(a: &Atom, point: &Point) -> Result<Q> {
    match a.kind() {
        AtomKind::Symbol => point
            .get(a.name())
            .cloned()
            .ok_or_else(|| Error::Eval(format!("symbol `{}` is unbound", a.name()))),
        AtomKind::Radical { radicand } => {
            let q = eval_poly(radicand, point, &mut BTreeMap::new())?;
            if let Some(v) = point.get(a.name()) {
                if v.is_negative() || v * v != q {
                    return Err(Error::Eval(format!(
                        "supplied {} = {} is not the positive root of {}",
                        a.name(),
                        v,
                        q
                    )));
                }
                return Ok(v.clone());
            }
            rational_sqrt(&q).ok_or_else(|| {
                Error::Eval(format!(
                    "branch {} = sqrt({}) is not rational at this point",
                    a.name(),
                    q
                ))
            })
        }
        AtomKind::Apply { .. } => Err(Error::Eval(format!(
            "opaque application `{a}` must be substituted before evaluation"
        ))),
    }
}

/// Non-negative rational square root, if it exists.
pub fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Q::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Expr {
    pub fn eval(&self, point: &Point) -> Result<Q> {
        eval_rational(self, point)
    }
}
