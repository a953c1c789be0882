use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::field::{check_chart, VectorField};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

/// Marker for the variance of a [`Graded`] object.
pub trait Variance: Clone + Default + fmt::Debug + PartialEq + Eq {
    /// Prefix used when printing basis elements (`d` or `@`).
    const PREFIX: &'static str;
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct Covariant;

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct Contravariant;

impl Variance for Covariant {
    const PREFIX: &'static str = "d";
}

impl Variance for Contravariant {
    const PREFIX: &'static str = "@";
}

/// Totally antisymmetric tensor of fixed degree, stored on strictly
/// increasing index tuples. Degree 0 holds a single scalar under `[]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graded<V: Variance> {
    chart: Arc<Chart>,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Expr>,
    _v: PhantomData<V>,
}

pub type DifferentialForm = Graded<Covariant>;
pub type MultivectorField = Graded<Contravariant>;

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
pub(crate) fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl<V: Variance> Graded<V> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Result<Self> {
        if degree > chart.dim() {
            return Err(Error::Degree(format!(
                "degree {degree} exceeds dimension {}",
                chart.dim()
            )));
        }
        Ok(Graded {
            chart: Arc::clone(chart),
            degree,
            coeffs: BTreeMap::new(),
            _v: PhantomData,
        })
    }

    /// Degree-0 object holding `f`.
    pub fn scalar(chart: &Arc<Chart>, f: Expr) -> Self {
        let mut g = Self::zero(chart, 0).expect("degree 0");
        g.add_term(Vec::new(), f);
        g
    }

    /// Builds from terms on arbitrary (possibly unsorted) index tuples.
    pub fn from_terms(
        chart: &Arc<Chart>,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Expr)>,
    ) -> Result<Self> {
        let mut g = Self::zero(chart, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree || idx.iter().any(|&i| i >= chart.dim()) {
                return Err(Error::Degree(format!("bad index tuple {idx:?}")));
            }
            g.add_term(idx, c);
        }
        Ok(g)
    }

    /// Basis element `dx^{i1} ∧ ... ` or `∂_{i1} ∧ ...`.
    pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Result<Self> {
        Self::from_terms(chart, idx.len(), [(idx.to_vec(), Expr::one())])
    }

    pub(crate) fn add_term(&mut self, mut idx: Vec<usize>, c: Expr) {
        if c.is_zero() {
            return;
        }
        let Some(sign) = sort_sign(&mut idx) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient on an index tuple, with the antisymmetry sign applied.
    pub fn coeff(&self, idx: &[usize]) -> Expr {
        let mut k = idx.to_vec();
        match sort_sign(&mut k) {
            None => Expr::zero(),
            Some(s) => {
                let c = self.coeffs.get(&k).cloned().unwrap_or_else(Expr::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Expr)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Scalar value of a degree-0 object.
    pub fn to_scalar(&self) -> Option<Expr> {
        (self.degree == 0).then(|| self.coeff(&[]))
    }

    pub fn scale(&self, f: &Expr) -> Self {
        self.map_unchecked(|c| c * f)
    }

    fn map_unchecked(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        let mut out = Self::zero(&self.chart, self.degree).expect("same degree");
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Result<Expr>) -> Result<Self> {
        let mut out = Self::zero(&self.chart, self.degree)?;
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_chart(&self.chart, &other.chart)?;
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "adding degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }
}

impl DifferentialForm {
    /// One-form from components `α_i dx^i`.
    pub fn one_form(chart: &Arc<Chart>, comps: &[Expr]) -> Result<Self> {
        Self::from_terms(
            chart,
            1,
            comps.iter().enumerate().map(|(i, c)| (vec![i], c.clone())),
        )
    }

    /// `df`.
    pub fn exact(chart: &Arc<Chart>, f: &Expr) -> Self {
        let mut g = Self::zero(chart, 1).expect("dimension at least 1");
        for (i, x) in chart.coords().iter().enumerate() {
            g.add_term(vec![i], f.diff(x));
        }
        g
    }

    /// Value of a one-form on a vector field.
    pub fn pair(&self, x: &VectorField) -> Result<Expr> {
        interior(x, self)?
            .to_scalar()
            .ok_or_else(|| Error::Degree("pairing needs a one-form".into()))
    }
}

impl MultivectorField {
    pub fn from_field(x: &VectorField) -> Self {
        let mut g = Self::zero(x.chart(), 1).expect("dimension at least 1");
        for (i, c) in x.comps().iter().enumerate() {
            g.add_term(vec![i], c.clone());
        }
        g
    }

    pub fn to_field(&self) -> Result<VectorField> {
        if self.degree != 1 {
            return Err(Error::Degree(format!(
                "expected a vector field, got degree {}",
                self.degree
            )));
        }
        let comps = (0..self.chart.dim()).map(|i| self.coeff(&[i])).collect();
        VectorField::new(&self.chart, comps)
    }

    /// `Λ(α, β)` for a bivector and two one-forms.
    pub fn eval2(&self, a: &DifferentialForm, b: &DifferentialForm) -> Result<Expr> {
        let ab = wedge(a, b)?;
        contract(self, &ab)?
            .to_scalar()
            .ok_or_else(|| Error::Degree("eval2 needs a bivector".into()))
    }

    /// Left interior product with a one-form: `(i_α V)^{J} = α_i V^{iJ}`.
    pub fn contract_form(&self, a: &DifferentialForm) -> Result<Self> {
        check_chart(&self.chart, &a.chart)?;
        if a.degree != 1 || self.degree == 0 {
            return Err(Error::Degree("contract_form needs a one-form and degree >= 1".into()));
        }
        let mut out = Self::zero(&self.chart, self.degree - 1)?;
        for (k, c) in &self.coeffs {
            for (pos, &i) in k.iter().enumerate() {
                let ai = a.coeff(&[i]);
                if ai.is_zero() {
                    continue;
                }
                let mut rest = k.clone();
                rest.remove(pos);
                let v = &ai * c;
                out.add_term(rest, if pos % 2 == 1 { -v } else { v });
            }
        }
        Ok(out)
    }
}

/// Graded wedge product.
pub fn wedge<V: Variance>(a: &Graded<V>, b: &Graded<V>) -> Result<Graded<V>> {
    check_chart(&a.chart, &b.chart)?;
    let mut out = Graded::zero(&a.chart, a.degree + b.degree)?;
    for (ka, ca) in &a.coeffs {
        for (kb, cb) in &b.coeffs {
            if ka.iter().any(|i| kb.contains(i)) {
                continue;
            }
            let mut idx = ka.clone();
            idx.extend_from_slice(kb);
            out.add_term(idx, ca * cb);
        }
    }
    Ok(out)
}

/// Exterior derivative.
pub fn exterior_derivative(a: &DifferentialForm) -> Result<DifferentialForm> {
    if a.degree >= a.chart.dim() {
        return Err(Error::Degree(format!(
            "d of a top-degree form (degree {})",
            a.degree
        )));
    }
    let mut out = DifferentialForm::zero(&a.chart, a.degree + 1)?;
    for (k, c) in &a.coeffs {
        for (j, x) in a.chart.coords().iter().enumerate() {
            let d = c.diff(x);
            if d.is_zero() {
                continue;
            }
            let mut idx = Vec::with_capacity(k.len() + 1);
            idx.push(j);
            idx.extend_from_slice(k);
            out.add_term(idx, d);
        }
    }
    Ok(out)
}

/// Interior product of a multivector with a form:
/// `contract(X_1 ∧ ... ∧ X_p, α) = i_{X_p} ... i_{X_1} α`.
pub fn contract(v: &MultivectorField, a: &DifferentialForm) -> Result<DifferentialForm> {
    check_chart(&v.chart, &a.chart)?;
    if v.degree > a.degree {
        return Err(Error::Degree(format!(
            "contracting degree {} into degree {}",
            v.degree, a.degree
        )));
    }
    let mut out = DifferentialForm::zero(&a.chart, a.degree - v.degree)?;
    for (kv, cv) in &v.coeffs {
        for (ka, ca) in &a.coeffs {
            if !kv.iter().all(|i| ka.contains(i)) {
                continue;
            }
            // α_{(I, J)} = sign(I ++ J → K) α_K
            let rest: Vec<usize> = ka.iter().copied().filter(|i| !kv.contains(i)).collect();
            let mut perm = kv.clone();
            perm.extend_from_slice(&rest);
            let sign = sort_sign(&mut perm).expect("distinct indices");
            let c = cv * ca;
            out.add_term(rest, if sign < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// `i_X α`.
pub fn interior(x: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm> {
    contract(&MultivectorField::from_field(x), a)
}

/// Objects that admit a Lie derivative along a vector field.
pub trait LieDerivative: Sized {
    fn lie_derivative_along(&self, x: &VectorField) -> Result<Self>;
}

/// `L_X T`.
pub fn lie_derivative<T: LieDerivative>(x: &VectorField, t: &T) -> Result<T> {
    t.lie_derivative_along(x)
}

impl LieDerivative for Expr {
    fn lie_derivative_along(&self, x: &VectorField) -> Result<Expr> {
        Ok(x.apply(self))
    }
}

impl LieDerivative for VectorField {
    fn lie_derivative_along(&self, x: &VectorField) -> Result<VectorField> {
        super::field::lie_bracket(x, self)
    }
}

impl LieDerivative for DifferentialForm {
    /// Component formula
    /// `L_X (a dx^K) = X(a) dx^K + a Σ_r dx^{k_1} ∧ .. d(X^{k_r}) .. ∧ dx^{k_p}`.
    fn lie_derivative_along(&self, x: &VectorField) -> Result<DifferentialForm> {
        check_chart(&self.chart, x.chart())?;
        let dx: Vec<Vec<Expr>> = x
            .comps()
            .iter()
            .map(|c| self.chart.coords().iter().map(|y| c.diff(y)).collect())
            .collect();
        let mut out = DifferentialForm::zero(&self.chart, self.degree)?;
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), x.apply(c));
            for r in 0..k.len() {
                for (j, d) in dx[k[r]].iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    let mut idx = k.clone();
                    idx[r] = j;
                    out.add_term(idx, c * d);
                }
            }
        }
        Ok(out)
    }
}

impl LieDerivative for MultivectorField {
    /// Component formula
    /// `(L_X V)^K = X(V^K) - Σ_r V^{k_1..j..k_p} ∂_j X^{k_r}`.
    fn lie_derivative_along(&self, x: &VectorField) -> Result<MultivectorField> {
        check_chart(&self.chart, x.chart())?;
        let mut out = MultivectorField::zero(&self.chart, self.degree)?;
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), x.apply(c));
            for r in 0..k.len() {
                let xj = self.chart.coord(k[r]);
                for (j, comp) in x.comps().iter().enumerate() {
                    let d = comp.diff(xj);
                    if d.is_zero() {
                        continue;
                    }
                    let mut idx = k.clone();
                    idx[r] = j;
                    out.add_term(idx, -(c * &d));
                }
            }
        }
        Ok(out)
    }
}

/// # Panics
/// On chart or degree mismatch.
impl<V: Variance> Add for &Graded<V> {
    type Output = Graded<V>;
    fn add(self, rhs: &Graded<V>) -> Graded<V> {
        self.checked_add(rhs).expect("compatible graded operands")
    }
}

/// # Panics
/// On chart or degree mismatch.
impl<V: Variance> Sub for &Graded<V> {
    type Output = Graded<V>;
    fn sub(self, rhs: &Graded<V>) -> Graded<V> {
        self.checked_add(&-rhs).expect("compatible graded operands")
    }
}

impl<V: Variance> Neg for &Graded<V> {
    type Output = Graded<V>;
    fn neg(self) -> Graded<V> {
        self.map_unchecked(|c| -c)
    }
}

impl<V: Variance> fmt::Display for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (m, i) in k.iter().enumerate() {
                f.write_str(if m == 0 { "*" } else { "^" })?;
                write!(f, "{}{}", V::PREFIX, self.chart.coord(*i).name())?;
            }
        }
        Ok(())
    }
}

impl<V: Variance> fmt::Debug for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded<{}>[{}; {}]({self})", V::PREFIX, self.chart.name(), self.degree)
    }
}
