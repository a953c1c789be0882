//! Lagrangian geometry of `L = sqrt(g(xd, xd))` on `TR^4`: `θ_L`, `ω_L`, the
//! connection `A`, the bivector `Λ`, Newton–Wigner positions, the dynamical
//! frame and the modified translations.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{poincare_names, poincare_spec, Realization};
use crate::error::Result;
use crate::expr::{eval_rational, Chart, Expr, Point, Q};
use crate::geom::{
    exterior_derivative, interior, lie_bracket, lie_derivative, tangent_structure, two_form_rank,
    wedge, DifferentialForm, MultivectorField, Tensor11, VectorField,
};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::{rng, SampleRng, Sampler};

use super::charts::{tr4, tr4_sampler};
use super::instant_form::eps;

pub const SIGNATURE: [i32; 4] = [1, -1, -1, -1];
const M_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn g(i: usize) -> Q {
    Q::from_integer(SIGNATURE[i].into())
}

/// `θ_L`, `ω_L`, `Δ`, `Γ`, the connection and `Λ` on TR4 with `m = 1`.
#[derive(Clone, Debug)]
pub struct LagrangianGeometry {
    pub chart: Arc<Chart>,
    /// `L = v`.
    pub l: Expr,
    pub theta: DifferentialForm,
    pub omega: DifferentialForm,
    /// `xd^μ ∂/∂xd^μ`.
    pub delta: VectorField,
    /// `xd^μ ∂/∂x^μ`.
    pub gamma: VectorField,
    /// `xd_μ dxd^μ / L^2`.
    pub alpha1: DifferentialForm,
    /// `(1/L) d(xd_μ x^μ / L)`.
    pub alpha2: DifferentialForm,
    pub a: Tensor11,
}

impl LagrangianGeometry {
    pub fn x(&self, mu: usize) -> Expr {
        self.chart.x(mu)
    }

    pub fn xd(&self, mu: usize) -> Expr {
        self.chart.x(4 + mu)
    }

    pub fn x_lower(&self, mu: usize) -> Expr {
        self.x(mu).scale(&g(mu))
    }

    pub fn xd_lower(&self, mu: usize) -> Expr {
        self.xd(mu).scale(&g(mu))
    }

    /// `f_1 = g(xd, x)`.
    pub fn f1(&self) -> Expr {
        (0..4).map(|mu| &self.xd_lower(mu) * &self.x(mu)).sum()
    }

    /// `τ = xd^μ x_μ / L`.
    pub fn tau(&self) -> Expr {
        self.f1().try_div(&self.l).expect("L != 0")
    }

    /// `k_μ = g_{μν} xd^ν / L`.
    pub fn k(&self, mu: usize) -> Expr {
        self.xd_lower(mu).try_div(&self.l).expect("L != 0")
    }

    /// `Λ = L g^{μν} A(∂/∂xd^μ) ∧ A(∂/∂x^ν)`.
    pub fn lambda_from_connection(&self) -> Result<MultivectorField> {
        let c = &self.chart;
        let mut out = MultivectorField::zero(c, 2)?;
        for mu in 0..4 {
            let a = self.a.apply(&VectorField::coordinate(c, 4 + mu))?;
            let b = self.a.apply(&VectorField::coordinate(c, mu))?;
            let w = wedge(&MultivectorField::from_field(&a), &MultivectorField::from_field(&b))?;
            out = out.checked_add(&w.scale(&self.l.scale(&g(mu))))?;
        }
        Ok(out)
    }

    /// `L (g^{ρσ} − xd^ρ xd^σ / L^2) ∂/∂xd^ρ ∧ ∂/∂x^σ`.
    pub fn lambda_closed_form(&self) -> Result<MultivectorField> {
        let l2 = &self.l * &self.l;
        let mut terms = Vec::new();
        for rho in 0..4 {
            for sigma in 0..4 {
                let gg = if rho == sigma { Expr::rational(g(rho)) } else { Expr::zero() };
                let c = &self.l * &(&gg - &(&self.xd(rho) * &self.xd(sigma)).try_div(&l2)?);
                terms.push((vec![4 + rho, sigma], c));
            }
        }
        MultivectorField::from_terms(&self.chart, 2, terms)
    }

    /// `(1/v^3)(g_{μν} v^2 − xd_μ xd_ν) dxd^ν ∧ dx^μ`.
    pub fn reference_omega(&self) -> Result<DifferentialForm> {
        let v2 = &self.l * &self.l;
        let v3 = &v2 * &self.l;
        let mut terms = Vec::new();
        for mu in 0..4 {
            for nu in 0..4 {
                let gg = if mu == nu { Expr::rational(g(mu)) } else { Expr::zero() };
                let c = (&(&gg * &v2) - &(&self.xd_lower(mu) * &self.xd_lower(nu))).try_div(&v3)?;
                terms.push((vec![4 + nu, mu], c));
            }
        }
        DifferentialForm::from_terms(&self.chart, 2, terms)
    }

    /// Tangent lifts of `x_μ ∂/∂x^ν − x_ν ∂/∂x^μ`, in `M01..M23` order.
    pub fn lorentz_lifts(&self) -> Result<Vec<VectorField>> {
        let c = &self.chart;
        let ts = tangent_structure(c)?;
        M_PAIRS
            .iter()
            .map(|&(mu, nu)| {
                let base = VectorField::from_pairs(c, [(nu, self.x_lower(mu)), (mu, -&self.x_lower(nu))]);
                ts.complete_lift(&base)
            })
            .collect()
    }

    /// `∂/∂x^μ − (x_μ/L) Γ`.
    pub fn modified_translation(&self, mu: usize) -> Result<VectorField> {
        let c = &self.chart;
        Ok(&VectorField::coordinate(c, mu) - &self.gamma.scale(&self.x_lower(mu).try_div(&self.l)?))
    }

    /// `∂/∂x^μ − (xd_μ/L^2) Γ`, tangent to the level sets of `f_1` and `f_2`.
    pub fn corrected_translation(&self, mu: usize) -> Result<VectorField> {
        let c = &self.chart;
        let l2 = &self.l * &self.l;
        Ok(&VectorField::coordinate(c, mu) - &self.gamma.scale(&self.xd_lower(mu).try_div(&l2)?))
    }

    /// `{f, g} = Λ(df, dg)` for the connection-built `Λ`.
    pub fn bracket(&self, lambda: &MultivectorField, f: &Expr, h: &Expr) -> Result<Expr> {
        lambda.eval2(&DifferentialForm::exact(&self.chart, f), &DifferentialForm::exact(&self.chart, h))
    }

    /// Newton–Wigner data `(J_l, K^j, Q^j, P^j)`.
    pub fn newton_wigner(&self) -> Result<NewtonWigner> {
        let l = &self.l;
        let j = (0..3)
            .map(|a| {
                let mut s = Expr::zero();
                for b in 0..3 {
                    for c in 0..3 {
                        let e = eps(a, b, c);
                        if e != 0 {
                            s = &s + &(&(&self.xd(1 + b) * &self.x(1 + c)) * &Expr::int(e));
                        }
                    }
                }
                s.try_div(l)
            })
            .collect::<Result<Vec<_>>>()?;
        let k = (1..4)
            .map(|a| (&(&self.xd(a) * &self.x(0)) - &(&self.xd(0) * &self.x(a))).try_div(l))
            .collect::<Result<Vec<_>>>()?;
        let q = k.iter().map(|kj| (l * kj).try_div(&self.xd(0))).collect::<Result<Vec<_>>>()?;
        let p = (1..4).map(|a| self.xd(a).try_div(l)).collect::<Result<Vec<_>>>()?;
        Ok(NewtonWigner { j, k, q, p })
    }
}

#[derive(Clone, Debug)]
pub struct NewtonWigner {
    pub j: Vec<Expr>,
    pub k: Vec<Expr>,
    pub q: Vec<Expr>,
    pub p: Vec<Expr>,
}

pub fn build_lagrangian_geometry() -> Result<LagrangianGeometry> {
    let c = tr4();
    let l = c.var("v");
    let xdl = |mu: usize| c.x(4 + mu).scale(&g(mu));
    let theta = DifferentialForm::one_form(
        &c,
        &(0..8).map(|i| if i < 4 { xdl(i).try_div(&l) } else { Ok(Expr::zero()) }).collect::<Result<Vec<_>>>()?,
    )?;
    let omega = exterior_derivative(&theta)?;
    let delta = VectorField::from_pairs(&c, (0..4).map(|mu| (4 + mu, c.x(4 + mu))));
    let gamma = VectorField::from_pairs(&c, (0..4).map(|mu| (mu, c.x(4 + mu))));
    let l2 = &l * &l;
    let alpha1 = DifferentialForm::one_form(
        &c,
        &(0..8).map(|i| if i >= 4 { xdl(i - 4).try_div(&l2) } else { Ok(Expr::zero()) }).collect::<Result<Vec<_>>>()?,
    )?;
    let f1: Expr = (0..4).map(|mu| &xdl(mu) * &c.x(mu)).sum();
    let tau = f1.try_div(&l)?;
    let alpha2 = DifferentialForm::exact(&c, &tau).scale(&l.recip()?);
    let a = Tensor11::identity(&c)
        .checked_sub(&Tensor11::outer(&alpha1, &delta)?)?
        .checked_sub(&Tensor11::outer(&alpha2, &gamma)?)?;
    Ok(LagrangianGeometry {
        chart: c,
        l,
        theta,
        omega,
        delta,
        gamma,
        alpha1,
        alpha2,
        a,
    })
}

/// Timelike points: the fixed `x = (1,0,0,0), xd = (5,3,0,0), v = 4` and
/// `n` seeded ones.
pub fn timelike_points(seed: u64, n: usize) -> Vec<Point> {
    let s = tr4_sampler();
    let mut r = rng(seed);
    let mut out = vec![fixed_point()];
    while out.len() < n + 1 {
        if let Some(p) = s(&mut r) {
            out.push(p);
        }
    }
    out
}

pub fn fixed_point() -> Point {
    let mut p = Point::new();
    for (k, v) in [("x0", 1), ("x1", 0), ("x2", 0), ("x3", 0), ("xd0", 5), ("xd1", 3), ("xd2", 0), ("xd3", 0), ("v", 4)] {
        p.insert(k.into(), Q::from_integer(v.into()));
    }
    p
}

/// `A(∂/∂x^1)` at `pt` from hand-written pairings:
/// `V − α1(V) Δ − α2(V) Γ` with `∂τ/∂x^μ = xd_μ/L`,
/// `∂τ/∂xd^μ = x_μ/L − τ xd_μ/L^2`.
fn projector_oracle(pt: &Point, col: usize) -> Vec<Q> {
    let get = |k: String| pt[&k].clone();
    let x: Vec<Q> = (0..4).map(|m| get(format!("x{m}"))).collect();
    let xd: Vec<Q> = (0..4).map(|m| get(format!("xd{m}"))).collect();
    let l = get("v".into());
    let xdl: Vec<Q> = (0..4).map(|m| &g(m) * &xd[m]).collect();
    let xl: Vec<Q> = (0..4).map(|m| &g(m) * &x[m]).collect();
    let tau = xdl.iter().zip(&x).map(|(a, b)| a * b).fold(Q::zero(), |s, t| s + t) / &l;
    let l2 = &l * &l;
    let mut a1 = vec![Q::zero(); 8];
    let mut a2 = vec![Q::zero(); 8];
    for m in 0..4 {
        a1[4 + m] = &xdl[m] / &l2;
        a2[m] = &xdl[m] / &l / &l;
        a2[4 + m] = (&xl[m] / &l - &tau * &xdl[m] / &l2) / &l;
    }
    let delta: Vec<Q> = (0..8).map(|i| if i >= 4 { xd[i - 4].clone() } else { Q::zero() }).collect();
    let gamma: Vec<Q> = (0..8).map(|i| if i < 4 { xd[i].clone() } else { Q::zero() }).collect();
    (0..8)
        .map(|i| {
            let e = if i == col { Q::from_integer(1.into()) } else { Q::zero() };
            e - &a1[col] * &delta[i] - &a2[col] * &gamma[i]
        })
        .collect()
}

/// `@x0^@xd1` style label of a basis multivector.
fn blade(c: &Chart, k: &[usize]) -> String {
    k.iter().map(|i| format!("@{}", c.coord(*i).name())).collect::<Vec<_>>().join("^")
}

fn res_outcome(es: &[(String, Expr)], s: &Sampler, r: &mut SampleRng) -> Outcome {
    super::residuals_outcome(es, Some(s), r)
}

pub fn run(opts: &super::Options) -> Result<Report> {
    let mut rec = Recorder::new("lagrangian", opts.seed, opts.timings);
    let lg = build_lagrangian_geometry()?;
    let c = Arc::clone(&lg.chart);
    let sampler = tr4_sampler();
    let mut wrng = rng(opts.seed);
    let points = timelike_points(opts.seed, 10);

    let gr = "lagrangian/presymplectic";
    rec.run("omega-closed-form", gr, "dtheta_L equals (1/v^3)(g v^2 - xd xd) dxd ^ dx", || {
        let d = &lg.omega - &lg.reference_omega()?;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run("omega-kernel", gr, "i_Delta omega_L = 0 and i_Gamma omega_L = 0", || {
        let a = interior(&lg.delta, &lg.omega)?;
        let b = interior(&lg.gamma, &lg.omega)?;
        Ok(Outcome::check(a.is_zero() && b.is_zero(), format!("i_Delta = {a}; i_Gamma = {b}")))
    });
    rec.run("omega-rank", gr, "rank(omega_L) = 6 at xd = (5,3,0,0) and 10 seeded timelike points", || {
        let mut bad = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let k = two_form_rank(&lg.omega, p)?;
            if k != 6 {
                bad.push(format!("point {i}: rank {k}"));
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });

    let cr = "lagrangian/connection";
    rec.run("A^2=A", cr, "A o A = A", || {
        let d = lg.a.compose(&lg.a)?.checked_sub(&lg.a)?;
        Ok(Outcome::check(d.is_zero(), if d.is_zero() { String::new() } else { format!("{d:?}") }))
    });
    rec.run("A(Delta),A(Gamma)", cr, "A(Delta) = 0 and A(Gamma) = 0", || {
        let a = lg.a.apply(&lg.delta)?;
        let b = lg.a.apply(&lg.gamma)?;
        Ok(Outcome::check(a.is_zero() && b.is_zero(), format!("A(Delta) = {a}; A(Gamma) = {b}")))
    });
    rec.run("pairings", cr, "alpha1(Delta) = 1, alpha2(Delta) = 0, alpha1(Gamma) = 0, alpha2(Gamma) = 1", || {
        let es = [
            ("alpha1(Delta) - 1".to_string(), &lg.alpha1.pair(&lg.delta)? - &Expr::one()),
            ("alpha2(Delta)".to_string(), lg.alpha2.pair(&lg.delta)?),
            ("alpha1(Gamma)".to_string(), lg.alpha1.pair(&lg.gamma)?),
            ("alpha2(Gamma) - 1".to_string(), &lg.alpha2.pair(&lg.gamma)? - &Expr::one()),
        ];
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("[Delta,Gamma]", cr, "[Delta, Gamma] = Gamma", || {
        let d = &lie_bracket(&lg.delta, &lg.gamma)? - &lg.gamma;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run("A-rank", cr, "rank(A) = 6 at 11 timelike points", || {
        let mut bad = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let k = lg.a.rank_at(p)?;
            if k != 6 {
                bad.push(format!("point {i}: rank {k}"));
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    rec.run("A-oracle", cr, "A(d/dx^1) and A(d/dxd^2) agree with a hand-built projector at 11 points", || {
        let mut bad = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for col in [1usize, 6] {
                let want = projector_oracle(p, col);
                for (r, w) in want.iter().enumerate() {
                    let got = eval_rational(lg.a.entry(r, col), p)?;
                    if &got != w {
                        bad.push(format!("point {i} entry ({r},{col}): {got} vs {w}"));
                    }
                }
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });

    let br = "lagrangian/bivector";
    let lam = lg.lambda_from_connection()?;
    let closed = lg.lambda_closed_form()?;
    rec.run("Lambda-closed-form", br, "Lambda from the connection equals L(g - xd xd/L^2) d/dxd ^ d/dx", || {
        let d = &lam - &closed;
        let es: Vec<(String, Expr)> = d.terms().map(|(k, e)| (blade(&c, k), e.clone())).collect();
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    let l2 = &lg.l * &lg.l;
    let mut tab_xdx = Vec::new();
    let mut tab_xdxd = Vec::new();
    let mut tab_xx = Vec::new();
    for rho in 0..4 {
        for sigma in 0..4 {
            let gg = if rho == sigma { Expr::rational(g(rho)) } else { Expr::zero() };
            let want = &lg.l * &(&gg - &(&lg.xd(rho) * &lg.xd(sigma)).try_div(&l2)?);
            tab_xdx.push((format!("{{xd{rho},x{sigma}}}"), &lg.bracket(&lam, &lg.xd(rho), &lg.x(sigma))? - &want));
            tab_xdxd.push((format!("{{xd{rho},xd{sigma}}}"), lg.bracket(&lam, &lg.xd(rho), &lg.xd(sigma))?));
            let want = (&(&lg.xd(sigma) * &lg.x(rho)) - &(&lg.xd(rho) * &lg.x(sigma))).try_div(&lg.l)?;
            tab_xx.push((format!("{{x{rho},x{sigma}}}"), &lg.bracket(&lam, &lg.x(rho), &lg.x(sigma))? - &want));
        }
    }
    rec.run("table:{xd,x}", br, "{xd^r, x^s} = L(g^rs - xd^r xd^s/L^2)", || Ok(res_outcome(&tab_xdx, &sampler, &mut wrng)));
    rec.run("table:{xd,xd}", br, "{xd^r, xd^s} = 0", || Ok(res_outcome(&tab_xdxd, &sampler, &mut wrng)));
    rec.run("table:{x,x}", br, "{x^r, x^s} = (xd^s x^r - xd^r x^s)/L", || Ok(res_outcome(&tab_xx, &sampler, &mut wrng)));
    rec.run("table:{x0,x1}-value", br, "closed form {x0,x1} at x = (1,0,0,0), xd = (5,3,0,0) is 3/4", || {
        let e = (&(&lg.xd(1) * &lg.x(0)) - &(&lg.xd(0) * &lg.x(1))).try_div(&lg.l)?;
        let v = eval_rational(&e, &fixed_point())?;
        let got = eval_rational(&lg.bracket(&lam, &lg.x(0), &lg.x(1))?, &fixed_point())?;
        Ok(Outcome::check(v == Q::new(3.into(), 4.into()), format!("closed form {v}; Lambda bracket {got}")))
    });
    let lifts = lg.lorentz_lifts()?;
    rec.run("Lorentz-invariance", br, "L_X Lambda = 0 for the six lifted Lorentz fields", || {
        let mut es = Vec::new();
        for (x, (mu, nu)) in lifts.iter().zip(M_PAIRS) {
            let d = lie_derivative(x, &lam)?;
            es.extend(d.terms().map(|(k, e)| (format!("M{mu}{nu} {}", blade(&c, k)), e.clone())));
        }
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("Lorentz-invariance-closed-form", br, "", || {
        let zero = lifts.iter().map(|x| lie_derivative(x, &closed)).collect::<Result<Vec<_>>>()?.iter().all(|d| d.is_zero());
        Ok(Outcome::info(format!("L_X of the closed-form bivector vanishes for all lifts: {zero}")))
    });

    let nr = "lagrangian/newton-wigner";
    let nw = lg.newton_wigner()?;
    rec.run("Q-identity", nr, "Q^j = L K^j/xd0 = -x^j + xd^j x0/xd0", || {
        let es: Vec<(String, Expr)> = (0..3)
            .map(|j| {
                let want = &(-&lg.x(1 + j)) + &(&lg.xd(1 + j) * &lg.x(0)).try_div(&lg.xd(0))?;
                Ok((format!("Q{}", j + 1), &nw.q[j] - &want))
            })
            .collect::<Result<_>>()?;
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("descent", nr, "Q, P, J, K are Delta- and Gamma-invariant", || {
        let mut es = Vec::new();
        for (name, fs) in [("Q", &nw.q), ("P", &nw.p), ("J", &nw.j), ("K", &nw.k)] {
            for (i, f) in fs.iter().enumerate() {
                es.push((format!("Delta {name}{}", i + 1), lg.delta.apply(f)));
                es.push((format!("Gamma {name}{}", i + 1), lg.gamma.apply(f)));
            }
        }
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("Q-not-position", nr, "Q^j differs from -x^j: canonical and geometric positions differ", || {
        let es: Vec<(String, Expr)> = (0..3).map(|j| (format!("Q{}", j + 1), &nw.q[j] + &lg.x(1 + j))).collect();
        let o = res_outcome(&es, &sampler, &mut wrng);
        Ok(if o.witness.is_some() {
            Outcome::pass().with_witness(o.witness).with_description(format!("Q + x nonzero: {}", o.residual))
        } else {
            Outcome::fail("Q^j + x^j vanishes at every sampled point")
        })
    });
    rec.run("canonical", nr, "{Q,Q} = {P,P} = 0 and {Q^i,P^j} = s delta^ij with a single sign s", || {
        let mut es = Vec::new();
        let qp11 = lg.bracket(&lam, &nw.q[0], &nw.p[0])?;
        let sign = qp11.as_rational();
        for i in 0..3 {
            for j in 0..3 {
                es.push((format!("{{Q{},Q{}}}", i + 1, j + 1), lg.bracket(&lam, &nw.q[i], &nw.q[j])?));
                es.push((format!("{{P{},P{}}}", i + 1, j + 1), lg.bracket(&lam, &nw.p[i], &nw.p[j])?));
                let want = if i == j { Expr::rational(sign.clone().unwrap_or_else(Q::zero)) } else { Expr::zero() };
                es.push((format!("{{Q{},P{}}}", i + 1, j + 1), &lg.bracket(&lam, &nw.q[i], &nw.p[j])? - &want));
            }
        }
        let o = res_outcome(&es, &sampler, &mut wrng);
        Ok(match sign {
            Some(s) if o.is_pass() && (s == Q::from_integer(1.into()) || s == Q::from_integer((-1).into())) => {
                Outcome::pass().with_description(format!("canonical with {{Q^i, P^j}} = {s} delta^ij"))
            }
            _ => Outcome::fail(format!("{{Q1,P1}} = {qp11}; {}", o.residual)),
        })
    });

    let tr = "lagrangian/modified-translations";
    let (f1, f2) = (lg.f1(), lg.l.clone());
    let mods = (0..4).map(|mu| lg.modified_translation(mu)).collect::<Result<Vec<_>>>()?;
    rec.run("tangent-f2", tr, "L_{P_mu} f2 = 0", || {
        let es: Vec<_> = mods.iter().enumerate().map(|(mu, p)| (format!("P{mu}"), p.apply(&f2))).collect();
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("tangent-f1", tr, "L_{P_mu} f1 = 0 for P_mu = d/dx^mu - (x_mu/L) Gamma", || {
        let es: Vec<_> = mods.iter().enumerate().map(|(mu, p)| (format!("P{mu}"), p.apply(&f1))).collect();
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    rec.run("corrected-translations", tr, "", || {
        let mut parts = Vec::new();
        for mu in 0..4 {
            let p = lg.corrected_translation(mu)?;
            parts.push(format!("P{mu}: f1 {}, f2 {}", p.apply(&f1), p.apply(&f2)));
        }
        Ok(Outcome::info(format!("d/dx^mu - (xd_mu/L^2) Gamma is tangent to both: {}", parts.join("; "))))
    });
    rec.run("[P1,P2]", tr, "[P1, P2] = ((x1 xd2 - x2 xd1)/L^2) Gamma", || {
        let b = lie_bracket(&mods[1], &mods[2])?;
        let coeff = (&(&lg.x_lower(1) * &lg.xd_lower(2)) - &(&lg.x_lower(2) * &lg.xd_lower(1))).try_div(&l2)?;
        let d = &b - &lg.gamma.scale(&coeff);
        Ok(Outcome::check(d.is_zero(), d.to_string()).with_description(format!("[P1,P2] = ({coeff}) Gamma")))
    });
    let mut fields = mods.clone();
    fields.extend(lifts.iter().cloned());
    let real = Realization::new(poincare_spec(&SIGNATURE)?, fields)?
        .modulo(vec![lg.gamma.clone(), lg.delta.clone()])
        .with_sampler(tr4_sampler());
    real.record(&mut rec, "closure", tr);

    let fr = "lagrangian/dynamical-frame";
    rec.run("k.k", fr, "k_mu k^mu = 1", || {
        let kk: Expr = (0..4).map(|mu| (&lg.k(mu) * &lg.k(mu)).scale(&g(mu))).sum();
        Ok(Outcome::zero(&(&kk - &Expr::one())))
    });
    rec.run("f1=L(k.x)", fr, "f1 = L k_nu x^nu", || {
        let kx: Expr = (0..4).map(|mu| &lg.k(mu) * &lg.x(mu)).sum();
        Ok(Outcome::zero(&(&f1 - &(&lg.l * &kx))))
    });
    rec.run("f1=k.x", fr, "", || {
        let kx: Expr = (0..4).map(|mu| &lg.k(mu) * &lg.x(mu)).sum();
        Ok(Outcome::info(format!("f1 - k.x = {}", &f1 - &kx)))
    });
    rec.run("clock", fr, "L_{Gamma/L} tau = 1", || {
        let t = lg.gamma.scale(&lg.l.recip()?).apply(&lg.tau());
        Ok(Outcome::zero(&(&t - &Expr::one())))
    });
    rec.run("S(Gamma)", fr, "S(Gamma) = Delta", || {
        let ts = tangent_structure(&c)?;
        let d = &ts.s.apply(&lg.gamma)? - &lg.delta;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run("frame-invariance", fr, "Gamma(f2) = 0, Gamma(k_mu) = 0 and the Lorentz lifts preserve f1, f2", || {
        let mut es = vec![("Gamma f2".to_string(), lg.gamma.apply(&f2))];
        for mu in 0..4 {
            es.push((format!("Gamma k{mu}"), lg.gamma.apply(&lg.k(mu))));
        }
        for (x, (mu, nu)) in lifts.iter().zip(M_PAIRS) {
            es.push((format!("M{mu}{nu} f1"), x.apply(&f1)));
            es.push((format!("M{mu}{nu} f2"), x.apply(&f2)));
        }
        Ok(res_outcome(&es, &sampler, &mut wrng))
    });
    let _ = poincare_names;
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x0_x1_bracket_at_fixed_point() {
        let lg = build_lagrangian_geometry().unwrap();
        let lam = lg.lambda_from_connection().unwrap();
        let b = lg.bracket(&lam, &lg.x(0), &lg.x(1)).unwrap();
        assert_eq!(eval_rational(&b, &fixed_point()).unwrap(), Q::new(3.into(), 4.into()));
    }

    #[test]
    fn connection_matches_projector_oracle() {
        let lg = build_lagrangian_geometry().unwrap();
        for p in timelike_points(1, 3) {
            for col in 0..8 {
                let want = projector_oracle(&p, col);
                for (r, w) in want.iter().enumerate() {
                    assert_eq!(&eval_rational(lg.a.entry(r, col), &p).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn modified_translation_misses_f1_by_xd_minus_xl() {
        let lg = build_lagrangian_geometry().unwrap();
        let p0 = lg.modified_translation(0).unwrap();
        let want = &lg.xd_lower(0) - &(&lg.x_lower(0) * &lg.l);
        assert_eq!(p0.apply(&lg.f1()), want);
    }
}
