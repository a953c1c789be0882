//! Newtonian realization of the Poincaré algebra on TR3, the world-line
//! condition, the boost PDE system and the Lagrangian compatibility chain.

use std::sync::Arc;

use crate::algebra::{instant_form_spec, Convention, Realization};
use crate::error::{Error, Result};
use crate::expr::{Atom, Chart, Expr, FunctionBinding, Substitution};
use crate::geom::{
    lie_bracket, lie_derivative, tangent_structure, DifferentialForm,
    VectorField,
};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::rng;

use super::charts::{tr3, tr3_sampler};

/// Accelerations of the second-order field.
#[derive(Clone, Debug)]
pub enum Accel {
    /// Arbitrary `a_j(x, xd)`.
    General([Expr; 3]),
    /// `a_j = xd_j f`, with `f` any expression (typically a function of `|xd|^2`).
    Radial(Expr),
}

/// `Γ = xd_j ∂/∂x_j + a_j ∂/∂xd_j` on TR3.
#[derive(Clone, Debug)]
pub struct SecondOrderField {
    pub accel: [Expr; 3],
    pub field: VectorField,
}

/// The ten fields `P0 = Γ, P_j = -∂/∂x_j, J_l, K_j` on TR3.
#[derive(Clone)]
pub struct InstantRealization {
    pub chart: Arc<Chart>,
    pub gamma: SecondOrderField,
    pub delta: VectorField,
    pub p: [VectorField; 3],
    pub j: [VectorField; 3],
    pub k: [VectorField; 3],
    pub realization: Realization,
}

pub(crate) fn eps(l: usize, j: usize, k: usize) -> i64 {
    match (l, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `|xd|^2` on TR3.
pub fn speed_squared(c: &Chart) -> Expr {
    (3..6).map(|i| &c.x(i) * &c.x(i)).sum()
}

/// Opaque `name(|xd|^2)` with derivative order `order`.
pub fn opaque_of_speed(c: &Chart, name: &str, order: u32) -> Expr {
    Expr::atom(&Atom::apply(name, order, speed_squared(c)))
}

pub fn build_instant_realization(accel: Accel) -> Result<InstantRealization> {
    build_with(accel, Convention::Paper)
}

pub fn build_with(accel: Accel, convention: Convention) -> Result<InstantRealization> {
    let c = tr3();
    let accel = match accel {
        Accel::General(a) => a,
        Accel::Radial(f) => [0, 1, 2].map(|j| &c.x(3 + j) * &f),
    };
    for a in &accel {
        if a.atoms().iter().any(|x| x.is_symbol() && c.coord_index(x.name()).is_none() && c.symbol(x.name()).is_none()) {
            return Err(Error::InvalidOption(format!("acceleration `{a}` uses unknown symbols")));
        }
    }
    let ts = tangent_structure(&c)?;
    let gamma = VectorField::from_pairs(
        &c,
        (0..3)
            .map(|j| (j, c.x(3 + j)))
            .chain((0..3).map(|j| (3 + j, accel[j].clone()))),
    );
    let p = [0, 1, 2].map(|j| -&VectorField::coordinate(&c, j));
    let j = [0, 1, 2].map(|l| {
        let mut pairs = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let e = eps(l, a, b);
                if e != 0 {
                    pairs.push((b, &c.x(a) * &Expr::int(e)));
                    pairs.push((3 + b, &c.x(3 + a) * &Expr::int(e)));
                }
            }
        }
        VectorField::from_pairs(&c, pairs)
    });
    let mut k = Vec::with_capacity(3);
    for i in 0..3 {
        let lift = ts.vertical_lift(&p[i])?;
        k.push(&(&gamma.scale(&c.x(i)) + &ts.delta.scale(&c.x(3 + i))) + &lift);
    }
    let k: [VectorField; 3] = k.try_into().expect("three boosts");
    let mut fields = vec![gamma.clone()];
    fields.extend(p.iter().cloned());
    fields.extend(j.iter().cloned());
    fields.extend(k.iter().cloned());
    let realization = Realization::new(instant_form_spec(convention)?, fields)?
        .with_sampler(tr3_sampler());
    Ok(InstantRealization {
        chart: c,
        gamma: SecondOrderField {
            accel,
            field: gamma,
        },
        delta: ts.delta,
        p,
        j,
        k,
        realization,
    })
}

impl InstantRealization {
    /// Boost fields assembled from the explicit component formula
    /// `x_j xd_l ∂/∂x_l + xd_j xd_l ∂/∂xd_l + x_j a_l ∂/∂xd_l − ∂/∂xd_j`.
    pub fn boosts_by_components(&self) -> [VectorField; 3] {
        let c = &self.chart;
        [0, 1, 2].map(|j| {
            let mut pairs = Vec::new();
            for l in 0..3 {
                pairs.push((l, &c.x(j) * &c.x(3 + l)));
                pairs.push((3 + l, &c.x(3 + j) * &c.x(3 + l)));
                pairs.push((3 + l, &c.x(j) * &self.gamma.accel[l]));
            }
            pairs.push((3 + j, Expr::int(-1)));
            VectorField::from_pairs(c, pairs)
        })
    }

    /// Second-order property `S(Γ) = Δ`.
    pub fn second_order_defect(&self) -> Result<VectorField> {
        let ts = tangent_structure(&self.chart)?;
        Ok(&ts.s.apply(&self.gamma.field)? - &self.delta)
    }
}

/// World-line condition residuals (expected minus actual):
/// `x_j xd_l − K_j(x_l)` and `xd_j xd_l + x_j a_l − δ_{jl} − K_j(xd_l)`.
pub fn wlc_residuals_for(
    c: &Chart,
    k: &[VectorField; 3],
    accel: &[Expr; 3],
) -> (Vec<Expr>, Vec<Expr>) {
    let mut pos = Vec::new();
    let mut vel = Vec::new();
    for j in 0..3 {
        for l in 0..3 {
            pos.push(&(&c.x(j) * &c.x(3 + l)) - &k[j].apply(&c.x(l)));
            let delta = if j == l { Expr::one() } else { Expr::zero() };
            let want = &(&(&c.x(3 + j) * &c.x(3 + l)) + &(&c.x(j) * &accel[l])) - &delta;
            vel.push(&want - &k[j].apply(&c.x(3 + l)));
        }
    }
    (pos, vel)
}

pub fn wlc_residuals(r: &InstantRealization) -> (Vec<Expr>, Vec<Expr>) {
    wlc_residuals_for(&r.chart, &r.k, &r.gamma.accel)
}

/// The three reference PDE expressions in `f`, `f' = ∂f/∂(xd^2)`.
pub fn reference_pdes(c: &Chart) -> [Expr; 3] {
    let f = opaque_of_speed(c, "f", 0);
    let fp = opaque_of_speed(c, "f", 1);
    let s = speed_squared(c);
    let bracket = &(&(&Expr::one() - &s) * &fp) + &f;
    let l = &(&c.x(0) * &c.x(4)) - &(&c.x(1) * &c.x(3));
    let common = &(&Expr::int(2) * &l) * &bracket;
    [
        &common * &c.x(5),
        &(-&(&c.x(1) * &f)) + &(&common * &c.x(3)),
        &(&c.x(0) * &f) + &(&common * &c.x(4)),
    ]
}

/// Residual field `[K_1, K_2] − J_3` for `a_j = xd_j f`.
pub fn boost_residual(f: Expr) -> Result<VectorField> {
    let r = build_instant_realization(Accel::Radial(f))?;
    Ok(&lie_bracket(&r.k[0], &r.k[1])? - &r.j[2])
}

/// Components of `[K_1, K_2] − J_3` along `∂/∂xd_3, ∂/∂xd_1, ∂/∂xd_2`, the
/// order of the reference system, for opaque `f(|xd|^2)`.
pub fn derive_boost_pde() -> Result<[Expr; 3]> {
    let c = tr3();
    let r = boost_residual(opaque_of_speed(&c, "f", 0))?;
    Ok([r.comp(5).clone(), r.comp(3).clone(), r.comp(4).clone()])
}

/// `f ↦ template` binding for the opaque head `f` with variable `u`.
pub fn bind_f(c: &Chart, body: Expr) -> Substitution {
    Substitution::new().bind_function(
        "f",
        FunctionBinding::Template {
            var: c.symbol("u").expect("u").clone(),
            body,
        },
    )
}

fn form_coeffs(name: &str, w: &DifferentialForm) -> Vec<(String, Expr)> {
    w.terms()
        .map(|(idx, e)| {
            let idx: Vec<String> = idx.iter().map(|i| w.chart().coord(*i).name().to_string()).collect();
            (format!("{name} d{}", idx.join("^d")), e.clone())
        })
        .collect()
}

fn det3(m: &[[Expr; 3]; 3]) -> Expr {
    let mut out = Expr::zero();
    for (a, b, c, s) in [
        (0, 1, 2, 1),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (0, 2, 1, -1),
        (2, 1, 0, -1),
        (1, 0, 2, -1),
    ] {
        let t = &(&m[0][a] * &m[1][b]) * &m[2][c];
        out = if s > 0 { &out + &t } else { &out - &t };
    }
    out
}

/// Residuals of every link of the Lagrangian compatibility chain for a
/// velocity-dependent `L` under free dynamics.
#[derive(Clone, Debug)]
pub struct ChainResiduals {
    /// `det(∂²L/∂xd_j∂xd_k)`; zero means `θ_L` is degenerate.
    pub hessian: Expr,
    /// Noether links `L_X θ_L − dG_X` for the ten generators.
    pub noether: Vec<(String, Vec<(String, Expr)>)>,
    /// `h = K_1(L)/xd_1`.
    pub h: Expr,
    /// `L_{K_m} L − L_Γ F_m` with `F_m = x_m h`.
    pub generating: Vec<(String, Expr)>,
    /// `h − 2(xd^2 − 1) ∂L/∂(xd^2)`.
    pub h_equation: Expr,
    /// `L_{P_n} F_m + δ_{nm} L`.
    pub translation: Vec<(String, Expr)>,
    /// `2(xd^2 − 1) ∂L/∂(xd^2) − L`.
    pub ode: Expr,
    /// `L_Γ θ_L − dL` alone (free-dynamics compatibility).
    pub free: Vec<(String, Expr)>,
}

impl ChainResiduals {
    pub fn noether_ok(&self) -> bool {
        self.noether.iter().all(|(_, r)| r.iter().all(|(_, e)| e.is_zero()))
    }

    pub fn free_ok(&self) -> bool {
        self.free.iter().all(|(_, e)| e.is_zero())
    }

    /// Every link holds and `θ_L` is nondegenerate.
    pub fn passes(&self) -> bool {
        !self.hessian.is_zero()
            && self.noether_ok()
            && self.generating.iter().all(|(_, e)| e.is_zero())
            && self.h_equation.is_zero()
            && self.translation.iter().all(|(_, e)| e.is_zero())
            && self.ode.is_zero()
    }
}

/// Computes the chain for `lagrangian` on the free (`f = 0`) realization;
/// `post` is applied to every residual before it is inspected.
pub fn chain_residuals(
    free: &InstantRealization,
    lagrangian: &Expr,
    post: &dyn Fn(&Expr) -> Result<Expr>,
) -> Result<ChainResiduals> {
    let c = &free.chart;
    if (0..3).any(|i| lagrangian.depends_on(c.coord(i))) {
        return Err(Error::PositionDependent(lagrangian.to_string()));
    }
    let dl: Vec<Expr> = (0..3).map(|j| lagrangian.diff(c.coord(3 + j))).collect();
    let hess: [[Expr; 3]; 3] =
        [0, 1, 2].map(|j| [0, 1, 2].map(|k| dl[j].diff(c.coord(3 + k))));
    let hessian = post(&det3(&hess))?;
    let mut comps = dl.clone();
    comps.extend((0..3).map(|_| Expr::zero()));
    let theta = DifferentialForm::one_form(c, &comps)?;
    let ds = |e: &Expr| &free.delta.apply(e) * &Expr::ratio(1, 2);
    let s = speed_squared(c);
    let dl_ds = ds(lagrangian).try_div(&s)?;
    let h = post(&free.k[0].apply(lagrangian).try_div(&c.x(3))?)?;

    let post_form = |w: &DifferentialForm| w.map(|e| post(e));
    let mut noether = Vec::new();
    let dlag = DifferentialForm::exact(c, lagrangian);
    let link = |x: &VectorField, g: &DifferentialForm| -> Result<DifferentialForm> {
        post_form(&(&lie_derivative(x, &theta)? - g))
    };
    let zero1 = DifferentialForm::zero(c, 1)?;
    let free_res = link(&free.gamma.field, &dlag)?;
    noether.push(("P0".to_string(), form_coeffs("", &free_res)));
    for m in 0..3 {
        noether.push((format!("P{}", m + 1), form_coeffs("", &link(&free.p[m], &zero1)?)));
    }
    for m in 0..3 {
        noether.push((format!("J{}", m + 1), form_coeffs("", &link(&free.j[m], &zero1)?)));
    }
    for m in 0..3 {
        let fm = &c.x(m) * &h;
        let g = DifferentialForm::exact(c, &fm);
        noether.push((format!("K{}", m + 1), form_coeffs("", &link(&free.k[m], &g)?)));
    }
    let mut generating = Vec::new();
    let mut translation = Vec::new();
    for m in 0..3 {
        let fm = &c.x(m) * &h;
        generating.push((
            format!("K{}", m + 1),
            post(&(&free.k[m].apply(lagrangian) - &free.gamma.field.apply(&fm)))?,
        ));
        for n in 0..3 {
            let mut r = free.p[n].apply(&fm);
            if n == m {
                r = &r + lagrangian;
            }
            translation.push((format!("P{} F{}", n + 1, m + 1), post(&r)?));
        }
    }
    let two_s1 = &Expr::int(2) * &(&s - &Expr::one());
    let h_equation = post(&(&h - &(&two_s1 * &dl_ds)))?;
    let ode = post(&(&(&two_s1 * &dl_ds) - lagrangian))?;
    Ok(ChainResiduals {
        hessian,
        free: form_coeffs("", &free_res),
        noether,
        h,
        generating,
        h_equation,
        translation,
        ode,
    })
}

fn record_chain(rec: &mut Recorder, prefix: &str, ch: &ChainResiduals, wrng: &mut crate::sample::SampleRng) {
    let sampler = tr3_sampler();
    let r = "lagrangian/compatibility-chain";
    rec.run(&format!("{prefix}nondegenerate"), r, "theta_L nondegenerate: det of the velocity Hessian of L is nonzero", || {
        Ok(Outcome::check(!ch.hessian.is_zero(), format!("det = {}", ch.hessian)))
    });
    for (g, res) in &ch.noether {
        let id = format!("{prefix}noether-{g}");
        rec.run(&id, r, &format!("L_{g} theta_L is exact with the expected generating function"), || {
            Ok(super::residuals_outcome(res, Some(&sampler), wrng))
        });
    }
    rec.run(&format!("{prefix}generating-function"), r, "L_{K_m} L = L_Gamma (x_m h) with h = K_1(L)/xd1", || {
        Ok(super::residuals_outcome(&ch.generating, Some(&sampler), wrng))
    });
    rec.run(&format!("{prefix}h-equation"), r, "h = 2(xd^2 - 1) dL/d(xd^2)", || {
        Ok(super::residuals_outcome(&[(String::new(), ch.h_equation.clone())], Some(&sampler), wrng))
    });
    rec.run(&format!("{prefix}translation"), r, "L_{P_n} F_m = -delta_nm L for all n, m", || {
        Ok(super::residuals_outcome(&ch.translation, Some(&sampler), wrng))
    });
    rec.run(&format!("{prefix}ode"), r, "2(xd^2 - 1) dL/d(xd^2) = L", || {
        Ok(super::residuals_outcome(&[(String::new(), ch.ode.clone())], Some(&sampler), wrng))
    });
}

/// The full compatibility chain for `lagrangian` as a report.
pub fn lagrangian_chain(lagrangian: &Expr, seed: u64) -> Result<Report> {
    let free = build_instant_realization(Accel::Radial(Expr::zero()))?;
    let ch = chain_residuals(&free, lagrangian, &|e| Ok(e.clone()))?;
    let mut rec = Recorder::new("lagrangian-chain", seed, false);
    record_chain(&mut rec, "", &ch, &mut rng(seed));
    Ok(rec.finish())
}

/// `L = c F(xd^2)` with `F' = -α F/(1 - u)`, i.e. `F = (1 - xd^2)^α`.
/// Returns the chain together with the constant `ode/L = 2α − 1`.
pub fn alpha_family_member(free: &InstantRealization, alpha: &crate::Q) -> Result<(ChainResiduals, Expr)> {
    let c = &free.chart;
    let u = c.symbol("u").expect("u").clone();
    let rate = (-&Expr::rational(alpha.clone())).try_div(&(&Expr::one() - &Expr::atom(&u)))?;
    let sub = Substitution::new().bind_function("F", FunctionBinding::Linear { var: u, rate });
    let l = &c.var("c") * &opaque_of_speed(c, "F", 0);
    let ch = chain_residuals(free, &l, &|e| e.substitute(&sub))?;
    let ratio = ch.ode.try_div(&l)?;
    Ok((ch, ratio))
}

/// Lagrangians compatible with free dynamics alone, contrasted with the
/// full chain: `(source, expect chain pass, expect degenerate θ_L)`.
pub const DEGENERATE_FAMILY: [(&str, bool, bool); 5] = [
    ("xd1^2 + 2*xd2^2", false, true),
    ("xd1", false, true),
    ("(xd1^2 + xd2^2 + xd3^2)/2", false, false),
    ("1 - xd1^2 - xd2^2 - xd3^2", false, false),
    ("sqrt(1-xd1^2-xd2^2-xd3^2)", true, false),
];

pub fn degenerate_family_demo(seed: u64) -> Result<Report> {
    let mut rec = Recorder::new("degenerate-family", seed, false);
    record_degenerate(&mut rec, "")?;
    Ok(rec.finish())
}

fn record_degenerate(rec: &mut Recorder, prefix: &str) -> Result<()> {
    let free = build_instant_realization(Accel::Radial(Expr::zero()))?;
    for (src, chain_pass, degenerate) in DEGENERATE_FAMILY {
        let l = free.chart.parse(src)?;
        let ch = chain_residuals(&free, &l, &|e| Ok(e.clone()))?;
        rec.run(&format!("{prefix}L={src}:free"), "lagrangian/degenerate-family", "L_Gamma theta_L = dL under free dynamics", || {
            Ok(Outcome::check(ch.free_ok(), "free dynamics not compatible"))
        });
        rec.run(
            &format!("{prefix}L={src}:chain"),
            "lagrangian/degenerate-family",
            if chain_pass { "the boost/translation chain holds" } else { "the boost/translation chain fails" },
            || Ok(Outcome::check(ch.passes() == chain_pass, format!("chain passes = {}", ch.passes()))),
        );
        if degenerate {
            rec.run(&format!("{prefix}L={src}:degenerate"), "lagrangian/degenerate-family", "theta_L is flagged degenerate", || {
                Ok(Outcome::check(ch.hessian.is_zero(), format!("det = {}", ch.hessian)))
            });
        }
    }
    Ok(())
}

/// Falsification battery for the interaction function.
/// Each entry is `f` in velocities and the same function of `u = xd^2`.
pub const BATTERY: [(&str, &str); 3] = [
    ("1", "1"),
    ("xd1^2 + xd2^2 + xd3^2", "u"),
    ("1/(1 - xd1^2 - xd2^2 - xd3^2)", "1/(1 - u)"),
];

pub fn no_interaction_certificate(seed: u64) -> Result<Report> {
    let mut rec = Recorder::new("no-interaction", seed, false);
    record_certificate(&mut rec, "")?;
    Ok(rec.finish())
}

fn record_certificate(rec: &mut Recorder, prefix: &str) -> Result<()> {
    let r = "instant-form/no-interaction";
    let c = tr3();
    let mut wrng = rng(rec.seed());
    let free = build_instant_realization(Accel::Radial(Expr::zero()))?;
    rec.run(&format!("{prefix}f=0"), r, "f = 0 closes all 45 pairs", || {
        let n = free.realization.spec().dim();
        let mut open = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = free.realization.pair(i, j)?;
                if !p.residual.is_zero() {
                    open.push(format!("[{},{}]", free.realization.spec().names()[i], free.realization.spec().names()[j]));
                }
            }
        }
        Ok(Outcome::check(open.is_empty(), open.join(" ")))
    });
    let pde = derive_boost_pde()?;
    for (src, in_u) in BATTERY {
        let f = c.parse(src)?;
        rec.run(&format!("{prefix}f={src}"), r, "nonzero [K1,K2] - J3 residual at a witness point", || {
            let res = boost_residual(f.clone())?;
            let body = c.parse(in_u)?;
            let sub = bind_f(&c, body);
            let mut mismatch = Vec::new();
            for (k, comp) in [5usize, 3, 4].iter().enumerate() {
                if !(&pde[k].substitute(&sub)? - res.comp(*comp)).is_zero() {
                    mismatch.push(k);
                }
            }
            if !mismatch.is_empty() {
                return Ok(Outcome::fail(format!("PDE components {mismatch:?} disagree with the direct bracket")));
            }
            let mut o = super::residuals_outcome(
                &[(String::new(), res.comp(3).clone()), (String::new(), res.comp(4).clone()), (String::new(), res.comp(5).clone())],
                Some(&tr3_sampler()),
                &mut wrng,
            );
            if o.witness.is_none() {
                return Ok(Outcome::fail(format!("no witness found for {}", o.residual)));
            }
            o.status = crate::report::Status::Pass;
            Ok(o)
        });
    }
    rec.run(&format!("{prefix}locus"), r, "on xd1 = xd2 = 0 the second and third PDEs reduce to -x2 f and x1 f; at x1 = 1 the third is f", || {
        let on = Substitution::new().bind("xd1", Expr::zero()).bind("xd2", Expr::zero());
        let f = Expr::atom(&Atom::apply("f", 0, &c.x(5) * &c.x(5)));
        let second = &pde[1].substitute(&on)? + &(&c.x(1) * &f);
        let third = &pde[2].substitute(&on)? - &(&c.x(0) * &f);
        let at = &pde[2].substitute(&on.clone().bind("x1", Expr::one()))? - &f;
        Ok(Outcome::all_zero([
            ("second + x2 f".to_string(), &second),
            ("third - x1 f".to_string(), &third),
            ("third(x1=1) - f".to_string(), &at),
        ]))
    });
    Ok(())
}

/// `[P_l, P_0]` residual against `−(∂a_j/∂x_l) ∂/∂xd_j`, and `[J_l, P_0]`.
fn record_invariants(rec: &mut Recorder, prefix: &str) -> Result<()> {
    let c = tr3();
    let r = "instant-form/invariants";
    let xs = |i: usize| c.x(i);
    let h = |arg: Expr| Expr::atom(&Atom::apply("h", 0, arg));
    let families: Vec<(&str, [Expr; 3], bool)> = vec![
        ("a=0", [Expr::zero(), Expr::zero(), Expr::zero()], true),
        ("a=xd*xd^2", [0, 1, 2].map(|j| &xs(3 + j) * &speed_squared(&c)), true),
        ("a=x", [0, 1, 2].map(xs), false),
        ("a=h(x1*xd2)", [h(&xs(0) * &xs(4)), Expr::zero(), Expr::zero()], false),
        ("a=xd1 e2", [Expr::zero(), xs(3), Expr::zero()], true),
    ];
    for (name, a, x_free) in &families {
        let ir = build_instant_realization(Accel::General(a.clone()))?;
        rec.run(&format!("{prefix}translation:{name}"), r, "[P_l, P0] residual equals -(da_j/dx_l) d/dxd_j and vanishes iff a is position-free", || {
            let mut bad = Vec::new();
            let mut all_zero = true;
            for l in 0..3 {
                let p = ir.realization.pair(1 + l, 0)?;
                let want = VectorField::from_pairs(&c, (0..3).map(|j| (3 + j, -&a[j].diff(c.coord(l)))));
                if p.residual != want {
                    bad.push(format!("l={}: {}", l + 1, &p.residual - &want));
                }
                all_zero &= p.residual.is_zero();
            }
            if all_zero != *x_free {
                bad.push(format!("residual zero = {all_zero}, position-free = {x_free}"));
            }
            Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
        });
    }
    let radial = [0, 1, 2].map(|j| &xs(3 + j) * &opaque_of_speed(&c, "f", 0));
    let rotation: Vec<(&str, [Expr; 3], Option<bool>)> = vec![
        ("a=xd f(xd^2)", radial, Some(true)),
        ("a=xd1 e2", [Expr::zero(), xs(3), Expr::zero()], Some(false)),
        ("a=xd1^2 xd", [0, 1, 2].map(|j| &(&xs(3) * &xs(3)) * &xs(3 + j)), Some(false)),
        ("a=x", [0, 1, 2].map(xs), None),
    ];
    for (name, a, expect) in rotation {
        let ir = build_instant_realization(Accel::General(a))?;
        let mut res = Vec::new();
        for l in 0..3 {
            let p = ir.realization.pair(4 + l, 0)?;
            res.extend(p.residual.comps().iter().map(|e| (format!("J{}", l + 1), e.clone())));
        }
        let zero = res.iter().all(|(_, e)| e.is_zero());
        rec.run(&format!("{prefix}rotation:{name}"), r, "[J_l, P0] closes exactly for rotation-covariant accelerations", || {
            Ok(match expect {
                Some(true) => super::residuals_outcome(&res, None, &mut rng(0)),
                Some(false) => Outcome::check(!zero, "expected a nonzero rotation residual"),
                None => Outcome::info(format!(
                    "rotation residual zero = {zero}; position-dependent but rotation-covariant, excluded by translations"
                )),
            })
        });
    }
    Ok(())
}

/// Every instant-form check: construction, closure, world-line condition,
/// boost PDEs, no-interaction certificate, Lagrangian chain and invariants.
pub fn run(opts: &super::Options) -> Result<Report> {
    let mut rec = Recorder::new("instant-form", opts.seed, opts.timings);
    let c = tr3();
    let f = c.parse(&opts.f)?;
    let ir = build_instant_realization(Accel::Radial(f))?;
    let ch = &ir.chart;
    let r = "instant-form/realization";
    rec.run("construct:J3(x1)", r, "J3 applied to x1 is -x2", || {
        Ok(Outcome::zero(&(&ir.j[2].apply(&ch.x(0)) + &ch.x(1))))
    });
    rec.run("construct:boost-decomposition", r, "K_j = x_j Gamma + xd_j Delta + (P_j)^V equals the component formula", || {
        let comp = ir.boosts_by_components();
        let res: Vec<(String, Expr)> = (0..3)
            .flat_map(|j| {
                (&ir.k[j] - &comp[j]).comps().iter().map(|e| (format!("K{}", j + 1), e.clone())).collect::<Vec<_>>()
            })
            .collect();
        Ok(super::residuals_outcome(&res, None, &mut rng(0)))
    });
    rec.run("construct:second-order", r, "S(Gamma) = Delta", || {
        let d = ir.second_order_defect()?;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    ir.realization.record(&mut rec, "closure", "instant-form/closure");

    let wr = "instant-form/world-line";
    let mut wrng = rng(opts.seed);
    let (pos, vel) = wlc_residuals(&ir);
    rec.run("wlc:position", wr, "L_{K_j} x_l = x_j xd_l", || {
        let named: Vec<_> = pos.iter().map(|e| (String::new(), e.clone())).collect();
        Ok(super::residuals_outcome(&named, Some(&tr3_sampler()), &mut wrng))
    });
    rec.run("wlc:velocity", wr, "L_{K_j} xd_l = xd_j xd_l + x_j a_l - delta_jl", || {
        let named: Vec<_> = vel.iter().map(|e| (String::new(), e.clone())).collect();
        Ok(super::residuals_outcome(&named, Some(&tr3_sampler()), &mut wrng))
    });
    rec.run("wlc:opaque-f", wr, "the world-line condition holds for opaque f", || {
        let g = build_instant_realization(Accel::Radial(opaque_of_speed(ch, "f", 0)))?;
        let (p, v) = wlc_residuals(&g);
        Ok(Outcome::check(p.iter().chain(&v).all(Expr::is_zero), "nonzero"))
    });
    rec.run("wlc:tampered", wr, "dropping the vertical lift leaves the residual -delta_jl", || {
        let tampered = [0, 1, 2].map(|j| &ir.gamma.field.scale(&ch.x(j)) + &ir.delta.scale(&ch.x(3 + j)));
        let (p, v) = wlc_residuals_for(ch, &tampered, &ir.gamma.accel);
        let mut bad = p.iter().filter(|e| !e.is_zero()).count();
        for j in 0..3 {
            for l in 0..3 {
                let want = if j == l { Expr::int(-1) } else { Expr::zero() };
                if v[3 * j + l] != want {
                    bad += 1;
                }
            }
        }
        Ok(Outcome::check(bad == 0, format!("{bad} entries differ from -delta_jl")))
    });

    let pr = "instant-form/boost-pde";
    let pde = derive_boost_pde()?;
    let shown = reference_pdes(ch);
    for k in 0..3 {
        let dir = ["xd3", "xd1", "xd2"][k];
        rec.run(&format!("pde:{}", k + 1), pr, &format!("d/d{dir} component of [K1,K2] - J3 equals the reference PDE (global sign +1)"), || {
            Ok(Outcome::zero(&(&pde[k] - &shown[k])))
        });
    }
    rec.run("pde:f=0", pr, "all three PDEs vanish at f = 0", || {
        let sub = bind_f(ch, Expr::zero());
        let es: Vec<Expr> = pde.iter().map(|e| e.substitute(&sub)).collect::<Result<_>>()?;
        Ok(Outcome::check(es.iter().all(Expr::is_zero), "nonzero"))
    });
    rec.run("pde:f=1-value", pr, "f = 1 at x = (0,1,0), xd = (0,1/2,0): the second PDE is -1", || {
        let e = shown[1].substitute(&bind_f(ch, Expr::one()))?;
        let mut pt = crate::Point::new();
        for (n, v) in [("x1", 0), ("x2", 1), ("x3", 0), ("xd1", 0), ("xd3", 0)] {
            pt.insert(n.into(), crate::Q::from_integer(v.into()));
        }
        pt.insert("xd2".into(), crate::Q::new(1.into(), 2.into()));
        let v = crate::expr::eval_rational(&e, &pt)?;
        Ok(Outcome::check(v == crate::Q::from_integer((-1).into()), format!("value {v}")))
    });
    record_certificate(&mut rec, "certificate:")?;

    let lag = c.parse(&opts.lagrangian)?;
    let free = build_instant_realization(Accel::Radial(Expr::zero()))?;
    let chain = chain_residuals(&free, &lag, &|e| Ok(e.clone()))?;
    record_chain(&mut rec, "chain:", &chain, &mut wrng);
    let lr = "lagrangian/uniqueness";
    for src in ["(xd1^2 + xd2^2 + xd3^2)/2", "1 - xd1^2 - xd2^2 - xd3^2"] {
        let l = c.parse(src)?;
        let chn = chain_residuals(&free, &l, &|e| Ok(e.clone()))?;
        rec.run(&format!("chain-rejects:L={src}"), lr, "the ODE link fails with a witness", || {
            let o = super::residuals_outcome(&[(String::new(), chn.ode.clone())], Some(&tr3_sampler()), &mut wrng);
            Ok(if o.witness.is_some() && !chn.passes() {
                Outcome::pass().with_witness(o.witness).with_description(format!("ode residual {}", o.residual))
            } else {
                Outcome::fail(format!("chain passes = {}, {}", chn.passes(), o.residual))
            })
        });
    }
    for (n, d) in [(1, 2), (1, 3), (2, 3), (3, 10), (7, 10), (49, 100), (51, 100)] {
        let alpha = crate::Q::new(n.into(), d.into());
        let (chn, ratio) = alpha_family_member(&free, &alpha)?;
        let half = alpha == crate::Q::new(1.into(), 2.into());
        rec.run(&format!("alpha:{n}/{d}"), lr, "L = c(1 - xd^2)^alpha passes the chain iff alpha = 1/2", || {
            Ok(Outcome::check(chn.passes() == half, format!("chain passes = {}, ode/L = {}", chn.passes(), ratio)))
        });
    }
    record_degenerate(&mut rec, "degenerate:")?;
    record_invariants(&mut rec, "invariant:")?;
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_rational, Point, Q};

    #[test]
    fn free_world_line_condition_is_exact() {
        let r = build_instant_realization(Accel::Radial(Expr::zero())).unwrap();
        let (pos, vel) = wlc_residuals(&r);
        assert!(pos.iter().chain(&vel).all(Expr::is_zero));
    }

    #[test]
    fn derived_pdes_equal_reference_ones() {
        let c = tr3();
        let got = derive_boost_pde().unwrap();
        let want = reference_pdes(&c);
        for (g, w) in got.iter().zip(&want) {
            assert_eq!(g, w);
        }
    }

    #[test]
    fn constant_f_breaks_boost_closure_at_sample_point() {
        // x = (1,0,0), xd = (0,1/2,0), f = 1: x1 f + 2 (x1 xd2 - x2 xd1)((1 - xd^2) f' + f) xd2 = 1 + 1/2
        let r = boost_residual(Expr::one()).unwrap();
        let mut pt = Point::new();
        for (k, n, d) in [("x1", 1, 1), ("x2", 0, 1), ("x3", 0, 1), ("xd1", 0, 1), ("xd2", 1, 2), ("xd3", 0, 1)] {
            pt.insert(k.into(), Q::new(n.into(), d.into()));
        }
        let v = eval_rational(r.comp(4), &pt).unwrap();
        assert_eq!(v, Q::new(3.into(), 2.into()));
    }

    #[test]
    fn only_half_power_satisfies_the_ode() {
        let free = build_instant_realization(Accel::Radial(Expr::zero())).unwrap();
        for (n, d) in [(1, 2), (1, 3), (51, 100)] {
            let a = Q::new(n.into(), d.into());
            let (ch, ratio) = alpha_family_member(&free, &a).unwrap();
            assert_eq!(ratio, Expr::rational(&a * Q::from_integer(2.into()) - Q::from_integer(1.into())));
            assert_eq!(ch.passes(), n * 2 == d);
        }
    }
}
