//! Exact symbolic scalars.
//!
//! An [`Expr`] is always stored in canonical form: a ratio of two
//! polynomials over ℚ, coprime, with a monic radical-free denominator and
//! every radical reduced below degree 2. Structural equality of two values
//! is therefore mathematical equality, and [`Expr::is_zero`] is the equality
//! oracle used by every check in the crate.

mod atom;
mod chart;
mod eval;
mod gcd;
mod parse;
mod poly;
mod subst;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use atom::{Atom, AtomKind};
pub use chart::{Chart, ChartBuilder, ChartConfig, ExtensionConfig};
pub use eval::{eval_rational, rational_sqrt, Point};
pub use gcd::gcd;
pub use parse::{parse_ast, Ast};
pub use poly::{Monomial, Poly};
pub use subst::{FunctionBinding, Substitution};

use crate::error::{Error, Result};

/// Exact rational coefficient type.
pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Fraction {
    num: Poly,
    den: Poly,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(Arc<Fraction>);

impl Expr {
    pub fn zero() -> Expr {
        Expr::from_poly(Poly::zero())
    }

    pub fn one() -> Expr {
        Expr::from_poly(Poly::one())
    }

    pub fn rational(q: Q) -> Expr {
        Expr::from_poly(Poly::constant(q))
    }

    pub fn int(n: i64) -> Expr {
        Expr::rational(Q::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::rational(Q::new(n.into(), d.into()))
    }

    pub fn atom(a: &Atom) -> Expr {
        Expr::from_poly(Poly::atom(a.clone()))
    }

    /// Wraps a polynomial, reducing radicals.
    pub fn from_poly(p: Poly) -> Expr {
        Expr(Arc::new(Fraction {
            num: p.reduce_radicals(),
            den: Poly::one(),
        }))
    }

    /// Builds the canonical form of `num / den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Expr> {
        let mut num = num.reduce_radicals();
        let mut den = den.reduce_radicals();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Rationalize: multiply through by the conjugate of each radical.
        while let Some(s) = den.atoms().into_iter().find(Atom::is_radical) {
            let q = s.radicand().expect("radical").clone();
            let cs = den.coeffs_in(&s);
            let c = cs[0].clone();
            let d = cs.get(1).cloned().unwrap_or_default();
            let conj = c.sub(&d.mul(&Poly::atom(s.clone())));
            den = c.mul(&c).sub(&d.mul(&d).mul(&q)).reduce_radicals();
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            num = num.mul(&conj).reduce_radicals();
        }
        Ok(Expr::reduced(num, den))
    }

    /// `num / den` with `den` radical-free and nonzero.
    fn reduced(num: Poly, den: Poly) -> Expr {
        if num.is_zero() {
            return Expr::zero();
        }
        if let Some(k) = den.constant_value() {
            let k = k.recip();
            return Expr(Arc::new(Fraction {
                num: num.scale(&k),
                den: Poly::one(),
            }));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Expr(Arc::new(Fraction { num, den }))
        } else {
            let k = lc.recip();
            Expr(Arc::new(Fraction {
                num: num.scale(&k),
                den: den.scale(&k),
            }))
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.0.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.0.den
    }

    /// True iff the canonical numerator is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.num.is_one() && self.0.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.0.den.is_one() {
            self.0.num.constant_value()
        } else {
            None
        }
    }

    /// Every atom appearing in numerator or denominator.
    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        let mut a = self.0.num.atoms();
        a.extend(self.0.den.atoms());
        a
    }

    /// True if the value depends on `x`, directly or through radicals and
    /// opaque arguments.
    pub fn depends_on(&self, x: &Atom) -> bool {
        self.atoms().iter().any(|a| atom_depends_on(a, x))
    }

    pub fn try_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        Expr::from_parts(
            self.0.num.mul(&other.0.den),
            self.0.den.mul(&other.0.num),
        )
    }

    pub fn recip(&self) -> Result<Expr> {
        Expr::one().try_div(self)
    }

    pub fn scale(&self, k: &Q) -> Expr {
        if k.is_zero() {
            return Expr::zero();
        }
        Expr(Arc::new(Fraction {
            num: self.0.num.scale(k),
            den: self.0.den.clone(),
        }))
    }

    pub fn pow(&self, e: i32) -> Result<Expr> {
        if e >= 0 {
            let mut out = Expr::one();
            for _ in 0..e {
                out = &out * self;
            }
            Ok(out)
        } else {
            self.recip()?.pow(-e)
        }
    }

    /// Formal partial derivative with respect to the symbol `x`, with the
    /// chain rule through radicals and opaque applications.
    pub fn diff(&self, x: &Atom) -> Expr {
        let mut cache = BTreeMap::new();
        let dn = diff_poly(&self.0.num, x, &mut cache);
        if self.0.den.is_one() {
            return dn;
        }
        let dd = diff_poly(&self.0.den, x, &mut cache);
        if dd.is_zero() {
            return dn
                .try_div(&Expr::from_poly(self.0.den.clone()))
                .expect("denominator is nonzero");
        }
        // (n/d)' = n'/d - n d'/d^2
        let den = Expr::from_poly(self.0.den.clone());
        let first = dn.try_div(&den).expect("denominator is nonzero");
        let second = (&Expr::from_poly(self.0.num.clone()) * &dd)
            .try_div(&(&den * &den))
            .expect("denominator is nonzero");
        &first - &second
    }
}

fn atom_depends_on(a: &Atom, x: &Atom) -> bool {
    if a == x {
        return true;
    }
    match a.kind() {
        AtomKind::Symbol => false,
        AtomKind::Radical { radicand } => radicand.atoms().contains(x),
        AtomKind::Apply { arg, .. } => arg.depends_on(x),
    }
}

/// ∂a/∂x for a single atom.
fn atom_partial(a: &Atom, x: &Atom) -> Expr {
    if a == x {
        return Expr::one();
    }
    match a.kind() {
        AtomKind::Symbol => Expr::zero(),
        AtomKind::Radical { radicand } => {
            let dq = radicand.formal_partial(x);
            if dq.is_zero() {
                return Expr::zero();
            }
            // s' = q' / (2 s) = s q' / (2 q)
            Expr::from_parts(
                dq.mul(&Poly::atom(a.clone())),
                radicand.scale(&Q::from_integer(2.into())),
            )
            .expect("radicand is nonzero")
        }
        AtomKind::Apply { order, arg } => {
            let du = arg.diff(x);
            if du.is_zero() {
                return Expr::zero();
            }
            let next = Atom::apply(a.name(), order + 1, arg.clone());
            &Expr::atom(&next) * &du
        }
    }
}

fn diff_poly(p: &Poly, x: &Atom, cache: &mut BTreeMap<Atom, Expr>) -> Expr {
    let mut poly_part = Poly::zero();
    let mut rest = Expr::zero();
    for a in p.atoms() {
        if !atom_depends_on(&a, x) {
            continue;
        }
        let fp = p.formal_partial(&a);
        if a == *x {
            poly_part = poly_part.add(&fp);
            continue;
        }
        let da = cache
            .entry(a.clone())
            .or_insert_with(|| atom_partial(&a, x))
            .clone();
        if da.is_zero() {
            continue;
        }
        rest = &rest + &(&Expr::from_poly(fp) * &da);
    }
    &Expr::from_poly(poly_part) + &rest
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &'a Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &rhs.0);
        if b.den.is_one() && a.den.is_one() {
            return Expr(Arc::new(Fraction {
                num: a.num.add(&b.num),
                den: Poly::one(),
            }));
        }
        if a.den == b.den {
            return Expr::reduced(a.num.add(&b.num), a.den.clone());
        }
        let g = gcd(&a.den, &b.den);
        let bd = b.den.div_exact(&g).expect("gcd divides");
        let ad = a.den.div_exact(&g).expect("gcd divides");
        let num = a.num.mul(&bd).add(&b.num.mul(&ad));
        if num.is_zero() {
            return Expr::zero();
        }
        let den = a.den.mul(&bd);
        if g.is_one() {
            let lc = den.leading_coeff();
            let k = lc.recip();
            return Expr(Arc::new(Fraction {
                num: num.scale(&k),
                den: den.scale(&k),
            }));
        }
        Expr::reduced(num, den)
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &'a Expr) -> Expr {
        self + &(-rhs)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr(Arc::new(Fraction {
            num: self.0.num.neg(),
            den: self.0.den.clone(),
        }))
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &'a Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &rhs.0);
        if a.den.is_one() && b.den.is_one() {
            return Expr::from_poly(a.num.mul(&b.num));
        }
        if a.num.has_radicals() && b.num.has_radicals() {
            return Expr::from_parts(a.num.mul(&b.num), a.den.mul(&b.den))
                .expect("product of nonzero denominators");
        }
        // Cross-cancel; no radical reduction can occur in the numerator.
        let g1 = gcd(&a.num, &b.den);
        let g2 = gcd(&b.num, &a.den);
        let n1 = a.num.div_exact(&g1).expect("gcd divides");
        let d2 = b.den.div_exact(&g1).expect("gcd divides");
        let n2 = b.num.div_exact(&g2).expect("gcd divides");
        let d1 = a.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let k = den.leading_coeff().recip();
        Expr(Arc::new(Fraction {
            num: num.scale(&k),
            den: den.scale(&k),
        }))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &'a Expr) -> Expr { (&self).$m(rhs) }
        }
        impl<'a> $tr<Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Q> for Expr {
    fn from(q: Q) -> Expr {
        Expr::rational(q)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.den.is_one() {
            write!(f, "{}", self.0.num)
        } else {
            write!(f, "({})/({})", self.0.num, self.0.den)
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience for tests and suites: `a == b` as an exact identity.
pub fn is_identity(a: &Expr, b: &Expr) -> bool {
    (a - b).is_zero()
}
