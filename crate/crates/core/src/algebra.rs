//! Finite-dimensional Lie algebras by structure constants, realizations by
//! vector fields, and the Poincaré algebra.

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{Chart, Expr, Q};
use crate::geom::{lie_bracket, solve_span, VectorField};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::{find_witness, rng, Sampler};

/// Basis names and structure constants `[e_i, e_j] = c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    names: Vec<String>,
    c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebraSpec {
    /// Builds and validates antisymmetry and the Jacobi identity.
    pub fn new(
        names: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Q)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, k, q) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidAlgebra(format!("index out of range ({i},{j},{k})")));
            }
            c[i][j][k] += q;
        }
        let spec = LieAlgebraSpec { names, c };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(Error::InvalidAlgebra(format!(
                            "[{}, {}] is not antisymmetric",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_defect() {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.names[i], self.names[j], self.names[k]
            )));
        }
        Ok(())
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for out in 0..n {
                        let mut s = Q::zero();
                        for m in 0..n {
                            s += &self.c[i][j][m] * &self.c[m][k][out];
                            s += &self.c[j][k][m] * &self.c[m][i][out];
                            s += &self.c[k][i][m] * &self.c[m][j][out];
                        }
                        if !s.is_zero() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    /// Coefficient vector of `[e_i, e_j]`.
    pub fn bracket_of_basis(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    /// Adjoins a central element.
    pub fn with_central(&self, name: &str) -> Result<Self> {
        let mut names = self.names.clone();
        names.push(name.into());
        Self::new(names, self.entries())
    }

    fn entries(&self) -> Vec<(usize, usize, usize, Q)> {
        let n = self.dim();
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        v.push((i, j, k, self.c[i][j][k].clone()));
                    }
                }
            }
        }
        v
    }

    /// Re-expresses the algebra in a new basis; row `a` of `t` gives the new
    /// element `a` in terms of the old basis.
    pub fn change_basis(&self, names: Vec<String>, t: &[Vec<Q>]) -> Result<Self> {
        let n = self.dim();
        if names.len() != n || t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra("basis change has the wrong shape".into()));
        }
        let inv = invert(t).ok_or_else(|| Error::InvalidAlgebra("singular basis change".into()))?;
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                // [f_a, f_b] in the old basis
                let mut old = vec![Q::zero(); n];
                for i in 0..n {
                    if t[a][i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if t[b][j].is_zero() {
                            continue;
                        }
                        let w = &t[a][i] * &t[b][j];
                        for (k, o) in old.iter_mut().enumerate() {
                            *o += &w * &self.c[i][j][k];
                        }
                    }
                }
                // old coordinates -> new: x_new = x_old · inv
                for k in 0..n {
                    let mut s = Q::zero();
                    for (i, o) in old.iter().enumerate() {
                        s += o * &inv[i][k];
                    }
                    if !s.is_zero() {
                        entries.push((a, b, k, s));
                    }
                }
            }
        }
        Self::new(names, entries)
    }

    /// Text form: a `basis:` line followed by one line per nonzero bracket
    /// with `i < j`.
    pub fn to_text(&self) -> String {
        let mut out = format!("basis: {}\n", self.names.join(" "));
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<String> = (0..n)
                    .filter(|&k| !self.c[i][j][k].is_zero())
                    .map(|k| format!("{} {}", self.c[i][j][k], self.names[k]))
                    .collect();
                if !terms.is_empty() {
                    let _ = writeln!(out, "[{}, {}] = {}", self.names[i], self.names[j], terms.join(" + "));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |l: &str| Error::Config(format!("bad algebra line `{l}`"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Config("empty algebra text".into()))?;
        let names: Vec<String> = head
            .strip_prefix("basis:")
            .ok_or_else(|| bad(head))?
            .split_whitespace()
            .map(String::from)
            .collect();
        let idx = |s: &str| names.iter().position(|n| n == s);
        let mut entries = Vec::new();
        for l in lines {
            let (lhs, rhs) = l.split_once('=').ok_or_else(|| bad(l))?;
            let lhs = lhs.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| bad(l))?;
            let (a, b) = lhs.split_once(',').ok_or_else(|| bad(l))?;
            let (i, j) = (idx(a.trim()).ok_or_else(|| bad(l))?, idx(b.trim()).ok_or_else(|| bad(l))?);
            for term in rhs.split(" + ") {
                let (q, name) = term.trim().split_once(' ').ok_or_else(|| bad(l))?;
                let q: Q = q.parse().map_err(|_| bad(l))?;
                let k = idx(name.trim()).ok_or_else(|| bad(l))?;
                entries.push((i, j, k, q.clone()));
                entries.push((j, i, k, -q));
            }
        }
        Self::new(names, entries)
    }
}

fn invert(t: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = t.len();
    let mut m: Vec<Vec<Q>> = t
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Labels for the sign convention of the rotation/boost relabeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Signature (−,+,+,+): `[K_1, K_2] = J_3`, the table closed by the
    /// instant-form realization.
    Paper,
    /// Signature (+,−,−,−): `[K_1, K_2] = −J_3`.
    Conventional,
}

impl Convention {
    pub fn signature(self) -> [i32; 4] {
        match self {
            Convention::Paper => [-1, 1, 1, 1],
            Convention::Conventional => [1, -1, -1, -1],
        }
    }
}

const M_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Coefficient vector of `M_{μν}` in the basis `P_0..P_3, M_01, M_02, M_03, M_12, M_13, M_23`.
fn m_vec(mu: usize, nu: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); 10];
    if mu == nu {
        return v;
    }
    let (a, b, s) = if mu < nu { (mu, nu, 1) } else { (nu, mu, -1) };
    let k = M_PAIRS.iter().position(|&p| p == (a, b)).expect("pair");
    v[4 + k] = Q::from_integer(s.into());
    v
}

fn p_vec(mu: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); 10];
    v[mu] = Q::one();
    v
}

fn axpy(acc: &mut [Q], k: i32, v: &[Q]) {
    if k == 0 {
        return;
    }
    let k = Q::from_integer(k.into());
    for (a, b) in acc.iter_mut().zip(v) {
        *a += &k * b;
    }
}

pub fn poincare_names() -> Vec<String> {
    let mut names: Vec<String> = (0..4).map(|i| format!("P{i}")).collect();
    names.extend(M_PAIRS.iter().map(|(a, b)| format!("M{a}{b}")));
    names
}

/// Poincaré algebra on `P_μ, M_{μν}` for a diagonal signature:
/// `[P_μ, P_ν] = 0`, `[M_{μν}, P_ρ] = g_{νρ}P_μ − g_{μρ}P_ν`,
/// `[M_{μν}, M_{ρσ}] = g_{νρ}M_{μσ} − g_{μρ}M_{νσ} + g_{νσ}M_{ρμ} − g_{μσ}M_{ρν}`.
pub fn poincare_spec(signature: &[i32]) -> Result<LieAlgebraSpec> {
    if signature.len() != 4 || signature.iter().any(|s| *s != 1 && *s != -1) {
        return Err(Error::InvalidSignature(format!("{signature:?}")));
    }
    let g = |a: usize, b: usize| if a == b { signature[a] } else { 0 };
    let mut entries = Vec::new();
    let mut push = |i: usize, j: usize, v: Vec<Q>| {
        for (k, q) in v.into_iter().enumerate() {
            if !q.is_zero() {
                entries.push((j, i, k, -q.clone()));
                entries.push((i, j, k, q));
            }
        }
    };
    for (a, &(mu, nu)) in M_PAIRS.iter().enumerate() {
        for rho in 0..4 {
            let mut v = vec![Q::zero(); 10];
            axpy(&mut v, g(nu, rho), &p_vec(mu));
            axpy(&mut v, -g(mu, rho), &p_vec(nu));
            push(4 + a, rho, v);
        }
        for (b, &(rho, sigma)) in M_PAIRS.iter().enumerate().skip(a + 1) {
            let mut v = vec![Q::zero(); 10];
            axpy(&mut v, g(nu, rho), &m_vec(mu, sigma));
            axpy(&mut v, -g(mu, rho), &m_vec(nu, sigma));
            axpy(&mut v, g(nu, sigma), &m_vec(rho, mu));
            axpy(&mut v, -g(mu, sigma), &m_vec(rho, nu));
            push(4 + a, 4 + b, v);
        }
    }
    LieAlgebraSpec::new(poincare_names(), entries)
}

/// Basis `P0, P1, P2, P3, J1, J2, J3, K1, K2, K3` with
/// `J_l = ½ ε_{ljk} M_{jk}` and `K_j = M_{0j}`.
pub fn instant_form_spec(convention: Convention) -> Result<LieAlgebraSpec> {
    let base = poincare_spec(&convention.signature())?;
    let names: Vec<String> = ["P0", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let t: Vec<Vec<Q>> = vec![
        p_vec(0),
        p_vec(1),
        p_vec(2),
        p_vec(3),
        m_vec(2, 3),
        m_vec(3, 1),
        m_vec(1, 2),
        m_vec(0, 1),
        m_vec(0, 2),
        m_vec(0, 3),
    ];
    base.change_basis(names, &t)
}

/// `{û, v̂} = [u, v]^` on coefficient vectors.
pub fn lie_poisson_bracket(u: &[Q], v: &[Q], spec: &LieAlgebraSpec) -> Result<Vec<Q>> {
    let n = spec.dim();
    if u.len() != n || v.len() != n {
        return Err(Error::Degree(format!(
            "coefficient vectors of length {} and {} for a {n}-dimensional algebra",
            u.len(),
            v.len()
        )));
    }
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            let w = &u[i] * &v[j];
            for (k, o) in out.iter_mut().enumerate() {
                *o += &w * &spec.c[i][j][k];
            }
        }
    }
    Ok(out)
}

/// Basis elements mapped to vector fields on a common chart.
#[derive(Clone)]
pub struct Realization {
    spec: LieAlgebraSpec,
    fields: Vec<VectorField>,
    modulo: Vec<VectorField>,
    sampler: Option<Sampler>,
}

/// Residual of one basis pair.
#[derive(Clone, Debug)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    /// `[ν_i, ν_j] − c^k_{ij} ν_k`.
    pub residual: VectorField,
    /// Coefficients along the modulo distribution when the residual lies in
    /// its span.
    pub modulo: Option<Vec<Expr>>,
}

impl PairResidual {
    pub fn closes(&self) -> bool {
        self.residual.is_zero() || self.modulo.is_some()
    }
}

impl Realization {
    pub fn new(spec: LieAlgebraSpec, fields: Vec<VectorField>) -> Result<Self> {
        if fields.len() != spec.dim() {
            return Err(Error::Degree(format!(
                "{} fields for a {}-dimensional algebra",
                fields.len(),
                spec.dim()
            )));
        }
        if let Some(first) = fields.first() {
            for f in &fields[1..] {
                if !first.chart().same_as(f.chart()) {
                    return Err(Error::ChartMismatch(
                        first.chart().name().into(),
                        f.chart().name().into(),
                    ));
                }
            }
        }
        Ok(Realization {
            spec,
            fields,
            modulo: Vec::new(),
            sampler: None,
        })
    }

    /// Directions ignored in closure checks.
    pub fn modulo(mut self, fields: Vec<VectorField>) -> Self {
        self.modulo = fields;
        self
    }

    /// Point sampler used to attach witnesses to failing pairs.
    pub fn with_sampler(mut self, s: Sampler) -> Self {
        self.sampler = Some(s);
        self
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.spec.index(name).map(|i| &self.fields[i])
    }

    pub fn chart(&self) -> Option<&Arc<Chart>> {
        self.fields.first().map(VectorField::chart)
    }

    pub fn pair(&self, i: usize, j: usize) -> Result<PairResidual> {
        let mut r = lie_bracket(&self.fields[i], &self.fields[j])?;
        for k in 0..self.spec.dim() {
            let c = &self.spec.c[i][j][k];
            if !c.is_zero() {
                r = &r - &self.fields[k].scale(&Expr::rational(c.clone()));
            }
        }
        let modulo = if r.is_zero() || self.modulo.is_empty() {
            None
        } else {
            let cols: Vec<Vec<Expr>> = self.modulo.iter().map(|f| f.comps().to_vec()).collect();
            solve_span(&cols, r.comps()).ok()
        };
        Ok(PairResidual {
            i,
            j,
            residual: r,
            modulo,
        })
    }

    /// Records one check per unordered basis pair.
    pub fn record(&self, rec: &mut Recorder, prefix: &str, paper_ref: &str) {
        let n = self.spec.dim();
        let mut wrng = rng(rec.seed());
        for i in 0..n {
            for j in i + 1..n {
                let id = format!("{prefix}[{},{}]", self.spec.names[i], self.spec.names[j]);
                rec.run(&id, paper_ref, "", || {
                    let p = self.pair(i, j)?;
                    Ok(self.outcome(&p, &mut wrng))
                });
            }
        }
    }

    fn outcome(&self, p: &PairResidual, wrng: &mut crate::sample::SampleRng) -> Outcome {
        if p.residual.is_zero() {
            return Outcome::pass();
        }
        if let Some(cs) = &p.modulo {
            let text: Vec<String> = cs.iter().map(|c| format!("({c})")).collect();
            return Outcome::pass().with_description(format!(
                "closes modulo the distribution with coefficients {}",
                text.join(", ")
            ));
        }
        let mut o = Outcome::fail(p.residual.to_string());
        if let Some(s) = &self.sampler {
            if let Some((pt, v)) = find_witness(p.residual.comps(), s, wrng) {
                o.residual = format!("{} ; value {}", o.residual, v);
                o = o.with_witness(Some(pt));
            }
        }
        o
    }
}

/// Closure report for every basis pair.
pub fn check_realization(r: &Realization) -> Report {
    let mut rec = Recorder::new("realization", 0, false);
    r.record(&mut rec, "", "realization/closure");
    rec.finish()
}

/// Dirac's elementary solution on `T*R^4`: `P_μ = p_μ`,
/// `M_{μν} = x_μ p_ν − x_ν p_μ` with the canonical bracket
/// `{f, g} = ∂f/∂p_μ ∂g/∂x^μ − ∂f/∂x^μ ∂g/∂p_μ` reproduce the structure
/// constants of [`poincare_spec`].
pub fn check_elementary_solution(signature: &[i32]) -> Result<Report> {
    let spec = poincare_spec(signature)?;
    let chart = Chart::builder("TstarR4")
        .coords(&["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"])
        .signature(signature)
        .build()?;
    let x = |mu: usize| chart.x(mu).scale(&Q::from_integer(signature[mu].into()));
    let p = |mu: usize| chart.x(4 + mu);
    let mut gens: Vec<Expr> = (0..4).map(p).collect();
    for &(mu, nu) in &M_PAIRS {
        gens.push(&(&x(mu) * &p(nu)) - &(&x(nu) * &p(mu)));
    }
    let bracket = |f: &Expr, g: &Expr| -> Expr {
        (0..4)
            .map(|mu| {
                let xm = chart.coord(mu);
                let pm = chart.coord(4 + mu);
                &(&f.diff(pm) * &g.diff(xm)) - &(&f.diff(xm) * &g.diff(pm))
            })
            .sum()
    };
    let mut rec = Recorder::new("elementary", 0, false);
    let names = spec.names().to_vec();
    for i in 0..10 {
        for j in i + 1..10 {
            let id = format!("{{{},{}}}", names[i], names[j]);
            rec.run(&id, "algebra/elementary-solution", "", || {
                let lhs = bracket(&gens[i], &gens[j]);
                let rhs: Expr = (0..10)
                    .map(|k| gens[k].scale(spec.constant(i, j, k)))
                    .sum();
                Ok(Outcome::zero(&(&lhs - &rhs)))
            });
        }
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn coeffs(spec: &LieAlgebraSpec, a: &str, b: &str) -> Vec<(String, Q)> {
        let (i, j) = (spec.index(a).unwrap(), spec.index(b).unwrap());
        spec.bracket_of_basis(i, j)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (spec.names()[k].clone(), c.clone()))
            .collect()
    }

    #[test]
    fn translations_commute() {
        let s = poincare_spec(&[1, -1, -1, -1]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert!(s.bracket_of_basis(a, b).iter().all(Q::is_zero));
            }
        }
    }

    #[test]
    fn boost_translation_entries() {
        let g = [1, -1, -1, -1];
        let s = poincare_spec(&g).unwrap();
        // [M_01, P_1] = g_11 P_0
        assert_eq!(coeffs(&s, "M01", "P1"), vec![("P0".into(), q(-1))]);
        // [M_01, P_0] = -g_00 P_1
        assert_eq!(coeffs(&s, "M01", "P0"), vec![("P1".into(), q(-1))]);
        // [M_12, P_1] = g_21 P_1 - g_11 P_2 = P_2
        assert_eq!(coeffs(&s, "M12", "P1"), vec![("P2".into(), q(1))]);
    }

    #[test]
    fn jacobi_holds_for_both_signatures() {
        for sig in [[1, -1, -1, -1], [-1, 1, 1, 1]] {
            assert!(poincare_spec(&sig).unwrap().jacobi_defect().is_none());
        }
        assert!(poincare_spec(&[1, 2, 1, 1]).is_err());
        assert!(poincare_spec(&[1, 1, 1]).is_err());
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(LieAlgebraSpec::new(names.clone(), [(0, 1, 0, q(1))]).is_err());
        let names3: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi
        let bad = [
            (0, 1, 0, q(1)),
            (1, 0, 0, q(-1)),
            (0, 2, 1, q(1)),
            (2, 0, 1, q(-1)),
        ];
        assert!(LieAlgebraSpec::new(names3, bad).is_err());
    }

    #[test]
    fn instant_form_relabeling() {
        let p = instant_form_spec(Convention::Paper).unwrap();
        assert_eq!(coeffs(&p, "K1", "K2"), vec![("J3".into(), q(1))]);
        assert_eq!(coeffs(&p, "J1", "J2"), vec![("J3".into(), q(-1))]);
        assert_eq!(coeffs(&p, "K1", "P1"), vec![("P0".into(), q(1))]);
        let c = instant_form_spec(Convention::Conventional).unwrap();
        assert_eq!(coeffs(&c, "K1", "K2"), vec![("J3".into(), q(-1))]);
    }

    #[test]
    fn lie_poisson_examples() {
        let s = poincare_spec(&[1, -1, -1, -1]).unwrap();
        let e = |name: &str| {
            let mut v = vec![Q::zero(); 10];
            v[s.index(name).unwrap()] = Q::one();
            v
        };
        assert!(lie_poisson_bracket(&e("P1"), &e("P2"), &s).unwrap().iter().all(Q::is_zero));
        // [M_12, P_1] = g_21 P_1 - g_11 P_2 = P_2 for g_11 = -1
        assert_eq!(lie_poisson_bracket(&e("M12"), &e("P1"), &s).unwrap(), e("P2"));
        assert!(lie_poisson_bracket(&e("P1")[..3], &e("P2"), &s).is_err());
    }

    #[test]
    fn elementary_solution_reproduces_table() {
        for sig in [[1, -1, -1, -1], [-1, 1, 1, 1]] {
            let r = check_elementary_solution(&sig).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(r.checks.len(), 45);
        }
    }

    #[test]
    fn text_round_trip_and_central_extension() {
        let s = poincare_spec(&[1, -1, -1, -1]).unwrap();
        assert_eq!(LieAlgebraSpec::from_text(&s.to_text()).unwrap(), s);
        let e = s.with_central("G").unwrap();
        assert_eq!(e.dim(), 11);
        assert!(e.bracket_of_basis(10, 4).iter().all(Q::is_zero));
    }
}
