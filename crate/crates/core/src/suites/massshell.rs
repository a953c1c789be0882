//! Mass shell `p·p = m^2` of `T*R^4`: contact form, the Jacobi pair
//! `(Λ_m, Γ_m)`, the Jacobi bracket and the eleventh-generator realization.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::{poincare_names, poincare_spec, LieAlgebraSpec, Realization};
use crate::error::{Error, Result};
use crate::expr::{eval_rational, Chart, Expr, Point, Q};
use crate::geom::{
    exterior_derivative, interior, schouten_bracket, wedge, DifferentialForm, LevelSet,
    MultivectorField, VectorField,
};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::{random_poly, rng, Sampler};

use super::charts::{shell_sampler, tstar_r4};

pub const SIGNATURE: [i32; 4] = [1, -1, -1, -1];

const M_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Shell of mass `m` embedded in `T*R^4`.
#[derive(Clone, Debug)]
pub struct MassShell {
    pub mass: Q,
    pub level: LevelSet,
    /// `θ_m`, pullback of `p_μ dx^μ`.
    pub theta: DifferentialForm,
    pub dtheta: DifferentialForm,
    /// `θ_m ∧ (dθ_m)^3`.
    pub volume: DifferentialForm,
}

/// `(Λ_m, Γ_m)` on the shell chart.
#[derive(Clone, Debug)]
pub struct JacobiPair {
    pub lambda: MultivectorField,
    pub gamma: VectorField,
}

fn q_text(q: &Q) -> String {
    format!("({}/{})", q.numer(), q.denom())
}

/// Shell chart with a concrete mass: `x0..x3, p1..p3`, `E = sqrt(m^2 + |p|^2)`.
pub fn shell_chart(m: &Q) -> Result<Arc<Chart>> {
    let m2 = q_text(&(m * m));
    Chart::builder("shell")
        .coords(&["x0", "x1", "x2", "x3", "p1", "p2", "p3"])
        .extension("E", &format!("{m2} + p1^2 + p2^2 + p3^2"))
        .signature(&SIGNATURE)
        .build()
}

fn power(a: &DifferentialForm, n: usize) -> Result<DifferentialForm> {
    let mut out = DifferentialForm::scalar(a.chart(), Expr::one());
    for _ in 0..n {
        out = wedge(&out, a)?;
    }
    Ok(out)
}

pub fn build_mass_shell(m: &Q) -> Result<MassShell> {
    if !m.is_positive() {
        return Err(Error::InvalidMass(format!("{m}")));
    }
    let amb = tstar_r4();
    let sub = shell_chart(m)?;
    let cons = amb.parse(&format!("p0^2 - p1^2 - p2^2 - p3^2 - {}", q_text(&(m * m))))?;
    let level = LevelSet::new(&amb, cons, "p0", &sub, "E")?;
    let theta0 = DifferentialForm::one_form(
        &amb,
        &(0..8)
            .map(|i| if i < 4 { amb.x(4 + i).scale(&Q::from_integer(SIGNATURE[i].into())) } else { Expr::zero() })
            .collect::<Vec<_>>(),
    )?;
    let theta = level.pullback(&theta0)?;
    let dtheta = exterior_derivative(&theta)?;
    let volume = wedge(&theta, &power(&dtheta, 3)?)?;
    Ok(MassShell {
        mass: m.clone(),
        level,
        theta,
        dtheta,
        volume,
    })
}

impl MassShell {
    pub fn chart(&self) -> &Arc<Chart> {
        self.level.sub()
    }

    /// Coefficient of `dx0^...^dp3` in the volume form.
    pub fn volume_coefficient(&self) -> Expr {
        self.volume.coeff(&[0, 1, 2, 3, 4, 5, 6])
    }

    /// Upper-index momentum on the shell (`p^0 = E`).
    pub fn p_upper(&self, mu: usize) -> Expr {
        if mu == 0 {
            self.chart().var("E")
        } else {
            self.chart().x(3 + mu)
        }
    }

    pub fn p_lower(&self, mu: usize) -> Expr {
        self.p_upper(mu).scale(&Q::from_integer(SIGNATURE[mu].into()))
    }

    pub fn x_lower(&self, mu: usize) -> Expr {
        self.chart().x(mu).scale(&Q::from_integer(SIGNATURE[mu].into()))
    }

    /// `P_μ = p_μ` followed by `M_{μν} = x_μ p_ν − x_ν p_μ`, in
    /// [`poincare_names`] order.
    pub fn generators(&self) -> Vec<Expr> {
        let mut g: Vec<Expr> = (0..4).map(|mu| self.p_lower(mu)).collect();
        for (mu, nu) in M_PAIRS {
            g.push(&(&self.x_lower(mu) * &self.p_lower(nu)) - &(&self.x_lower(nu) * &self.p_lower(mu)));
        }
        g
    }

    pub fn sampler(&self) -> Sampler {
        shell_sampler(self.mass.clone())
    }

    /// Ambient Λ = (g^{μν} − p^μ p^ν/(p·p)) ∂/∂p^μ ∧ ∂/∂x^ν and
    /// Γ = p^μ/(p·p) ∂/∂x^μ restricted to the shell.
    pub fn jacobi_pair(&self) -> Result<JacobiPair> {
        let amb = self.level.ambient();
        let pp = amb.parse("p0^2 - p1^2 - p2^2 - p3^2")?;
        let mut terms = Vec::new();
        for mu in 0..4 {
            for nu in 0..4 {
                let g = if mu == nu { Expr::int(SIGNATURE[mu] as i64) } else { Expr::zero() };
                let c = &g - &(&amb.x(4 + mu) * &amb.x(4 + nu)).try_div(&pp)?;
                terms.push((vec![4 + mu, nu], c));
            }
        }
        let lambda = MultivectorField::from_terms(amb, 2, terms)?;
        let gamma = VectorField::from_pairs(amb, (0..4).map(|mu| (mu, amb.x(4 + mu).try_div(&pp).expect("nonzero"))));
        Ok(JacobiPair {
            lambda: self.level.restrict_multivector(&lambda)?,
            gamma: self.level.restrict_field(&gamma)?,
        })
    }

    /// Γ_m = (p^μ/m^2) ∂/∂x^μ written directly on the shell.
    pub fn closed_form_gamma(&self) -> VectorField {
        let m2 = Expr::rational(&self.mass * &self.mass);
        VectorField::from_pairs(self.chart(), (0..4).map(|mu| (mu, self.p_upper(mu).try_div(&m2).expect("m > 0"))))
    }

    /// Restriction of a Lorentz field `x_μ∂/∂x^ν − x_ν∂/∂x^μ + p_μ∂/∂p^ν − p_ν∂/∂p^μ`.
    pub fn closed_form_lorentz(&self, mu: usize, nu: usize) -> Result<VectorField> {
        let amb = self.level.ambient();
        let g = |i: usize| Q::from_integer(SIGNATURE[i].into());
        let mut pairs = vec![
            (nu, amb.x(mu).scale(&g(mu))),
            (mu, -&amb.x(nu).scale(&g(nu))),
            (4 + nu, amb.x(4 + mu).scale(&g(mu))),
            (4 + mu, -&amb.x(4 + nu).scale(&g(nu))),
        ];
        pairs.retain(|(_, e)| !e.is_zero());
        self.level.restrict_field(&VectorField::from_pairs(amb, pairs))
    }
}

impl JacobiPair {
    /// `[f, g]_m = Λ(df, dg) + f Γ(g) − g Γ(f)`.
    pub fn bracket(&self, f: &Expr, g: &Expr) -> Result<Expr> {
        let c = self.gamma.chart();
        let l = self.lambda.eval2(&DifferentialForm::exact(c, f), &DifferentialForm::exact(c, g))?;
        Ok(&(&l + &(f * &self.gamma.apply(g))) - &(g * &self.gamma.apply(f)))
    }

    /// `X_f = Λ(df, ·) + f Γ` and the scalar part `−Γ(f)` of `X̃_f`.
    pub fn hamiltonian_field(&self, f: &Expr) -> Result<(VectorField, Expr)> {
        let c = self.gamma.chart();
        let v = self.lambda.contract_form(&DifferentialForm::exact(c, f))?.to_field()?;
        Ok((&v + &self.gamma.scale(f), -&self.gamma.apply(f)))
    }

    /// `X̃_f(g) = Λ(df, dg) + f Γ(g) − Γ(f) g`, which equals `[f, g]_m`.
    pub fn operator_apply(&self, f: &Expr, g: &Expr) -> Result<Expr> {
        let (x, s) = self.hamiltonian_field(f)?;
        Ok(&x.apply(g) + &(&s * g))
    }
}

/// `[f, g]_m` from `[f,g] θ∧(dθ)^3 = (f dg − g df)∧(dθ)^3 + k df∧dg∧θ∧(dθ)^2`.
/// `k = 3` is the value compatible with `i_Λ(θ∧(dθ)^3) = 3 θ∧(dθ)^2`.
pub fn determinant_bracket(shell: &MassShell, f: &Expr, g: &Expr, k: i64) -> Result<Expr> {
    let c = shell.chart();
    let (df, dg) = (DifferentialForm::exact(c, f), DifferentialForm::exact(c, g));
    let dt2 = power(&shell.dtheta, 2)?;
    let dt3 = wedge(&dt2, &shell.dtheta)?;
    let a = wedge(&(&dg.scale(f) - &df.scale(g)), &dt3)?;
    let b = wedge(&wedge(&wedge(&df, &dg)?, &shell.theta)?, &dt2)?;
    let top = a.checked_add(&b.scale(&Expr::int(k)))?;
    top.coeff(&[0, 1, 2, 3, 4, 5, 6]).try_div(&shell.volume_coefficient())
}

/// Converts the decomposable-formula Schouten bracket of a degree-`a`
/// argument to the Lichnerowicz sign convention, `(−1)^{a−1}`.
pub fn lichnerowicz_sign(b: &MultivectorField, a: usize) -> MultivectorField {
    if a.is_multiple_of(2) {
        -b
    } else {
        b.clone()
    }
}

fn witness_outcome(es: &[(String, Expr)], sampler: &Sampler, wrng: &mut crate::sample::SampleRng) -> Outcome {
    super::residuals_outcome(es, Some(sampler), wrng)
}

/// Eleven fields `X_{P_μ}, X_{M_{μν}}, Γ_m` against the Poincaré table with
/// a central element.
pub fn eleventh_generator_realization(shell: &MassShell, pair: &JacobiPair) -> Result<Realization> {
    let mut fields = Vec::new();
    for g in shell.generators() {
        fields.push(pair.hamiltonian_field(&g)?.0);
    }
    fields.push(pair.gamma.clone());
    Realization::new(eleventh_spec()?, fields).map(|r| r.with_sampler(shell.sampler()))
}

/// `[X_f, X_g] = X_{[f,g]_m}`, so the fields carry the Poincaré table with
/// `Γ_m` adjoined as a central element.
pub fn eleventh_spec() -> Result<LieAlgebraSpec> {
    poincare_spec(&SIGNATURE)?.with_central("Gamma")
}

fn random_triples(shell: &MassShell, seed: u64, n: usize) -> Vec<[Expr; 3]> {
    let c = shell.chart();
    let mut vars: Vec<_> = c.coords().to_vec();
    vars.push(c.symbol("E").expect("E").clone());
    let mut r = rng(seed);
    (0..n)
        .map(|_| [0, 1, 2].map(|_| random_poly(&mut r, &vars, 2, 3)))
        .collect()
}

fn mass_tag(m: &Q) -> String {
    if m.is_integer() {
        m.numer().to_string()
    } else {
        format!("{}/{}", m.numer(), m.denom())
    }
}

/// All mass-shell checks for one mass.
pub fn record_mass(rec: &mut Recorder, m: &Q) -> Result<()> {
    let tag = format!("m={}:", mass_tag(m));
    let shell = build_mass_shell(m)?;
    let c = Arc::clone(shell.chart());
    let sampler = shell.sampler();
    let mut wrng = rng(rec.seed());
    let cr = "mass-shell/contact";
    rec.run(&format!("{tag}theta"), cr, "theta_m = E dx0 - p_j dx^j", || {
        let want = DifferentialForm::one_form(
            &c,
            &[c.var("E"), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero()],
        )?;
        let want = (1..4).try_fold(want, |acc, j| acc.checked_add(&DifferentialForm::basis(&c, &[j])?.scale(&-&c.x(3 + j))))?;
        let d = &shell.theta - &want;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}volume"), cr, "theta_m ^ (dtheta_m)^3 has a nonzero coefficient", || {
        let v = shell.volume_coefficient();
        let pt = sampler(&mut wrng).ok_or_else(|| Error::Eval("no sample".into()))?;
        let at = eval_rational(&v, &pt)?;
        Ok(Outcome::check(!v.is_zero() && !at.is_zero(), format!("coefficient {v}, value {at}"))
            .with_description(format!("volume coefficient {v} is nonzero; value {at} at a sampled point")))
    });
    let pair = shell.jacobi_pair()?;
    let jr = "mass-shell/jacobi-pair";
    rec.run(&format!("{tag}gamma-closed-form"), jr, "restricted Gamma equals p^mu/m^2 d/dx^mu", || {
        let d = &pair.gamma - &shell.closed_form_gamma();
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}contraction-gamma"), jr, "i_Gamma(theta ^ dtheta^3) = dtheta^3", || {
        let d = &interior(&pair.gamma, &shell.volume)? - &power(&shell.dtheta, 3)?;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}contraction-lambda"), jr, "i_Lambda(theta ^ dtheta^3) = 3 theta ^ dtheta^2", || {
        let lhs = crate::geom::contract(&pair.lambda, &shell.volume)?;
        let rhs = wedge(&shell.theta, &power(&shell.dtheta, 2)?)?.scale(&Expr::int(3));
        let d = &lhs - &rhs;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}reeb"), jr, "theta(Gamma) = 1 and i_Gamma dtheta = 0", || {
        let t = &shell.theta.pair(&pair.gamma)? - &Expr::one();
        let i = interior(&pair.gamma, &shell.dtheta)?;
        Ok(Outcome::check(t.is_zero() && i.is_zero(), format!("theta(Gamma) - 1 = {t}; i_Gamma dtheta = {i}")))
    });

    let tr = "mass-shell/bracket-table";
    let g = |a: usize, b: usize| if a == b { Expr::int(SIGNATURE[a] as i64) } else { Expr::zero() };
    let m2 = Expr::rational(m * m);
    let mut table = Vec::new();
    for rho in 0..4 {
        for sigma in 0..4 {
            let (x_r, x_s) = (c.x(rho), c.x(sigma));
            let (p_r, p_s) = (shell.p_upper(rho), shell.p_upper(sigma));
            let xx = (&(&x_r * &p_s) - &(&x_s * &p_r)).try_div(&m2)?;
            table.push((format!("[x{rho},x{sigma}]"), &pair.bracket(&x_r, &x_s)? - &xx));
            table.push((format!("[p{rho},x{sigma}]"), &pair.bracket(&p_r, &x_s)? - &g(rho, sigma)));
            table.push((format!("[p{rho},p{sigma}]"), pair.bracket(&p_r, &p_s)?));
        }
    }
    rec.run(&format!("{tag}table"), tr, "[x,x] = (x^r p^s - x^s p^r)/m^2, [p,x] = g, [p,p] = 0", || {
        Ok(witness_outcome(&table, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}table-value"), tr, "[x1,x2] at x = (0,1,0,0), p = (0,2,0): closed form (x1 p2 - x2 p1)/m^2", || {
        let mut pt = Point::new();
        for (n, v) in [("x0", 0), ("x1", 1), ("x2", 0), ("x3", 0), ("p1", 0), ("p2", 2), ("p3", 0)] {
            pt.insert(n.into(), Q::from_integer(v.into()));
        }
        let e2 = m * m + Q::from_integer(4.into());
        let e = crate::expr::rational_sqrt(&e2);
        let closed = Q::from_integer(2.into()) / (m * m);
        match e {
            Some(e) => {
                pt.insert("E".into(), e);
                let v = eval_rational(&pair.bracket(&c.x(1), &c.x(2))?, &pt)?;
                Ok(Outcome::check(v == closed, format!("bracket {v}, closed form {closed}")))
            }
            None => {
                let v = pair.bracket(&c.x(1), &c.x(2))?;
                let v = crate::expr::Substitution::new()
                    .bind("x1", Expr::one())
                    .bind("x0", Expr::zero())
                    .bind("x2", Expr::zero())
                    .bind("x3", Expr::zero())
                    .bind("p1", Expr::zero())
                    .bind("p2", Expr::int(2))
                    .bind("p3", Expr::zero())
                    .apply(&v)?;
                Ok(Outcome::check(v == Expr::rational(closed.clone()), format!("bracket {v}, closed form {closed}")))
            }
        }
    });

    let sr = "mass-shell/schouten";
    let ll = schouten_bracket(&pair.lambda, &pair.lambda)?;
    let gl = wedge(&MultivectorField::from_field(&pair.gamma), &pair.lambda)?.scale(&Expr::int(2));
    rec.run(&format!("{tag}[Lambda,Lambda]"), sr, "[Lambda, Lambda] = 2 Gamma ^ Lambda (Lichnerowicz sign: minus the decomposable-formula bracket on bivectors)", || {
        let d = &lichnerowicz_sign(&ll, 2) - &gl;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}[Lambda,Lambda]-raw"), sr, "", || {
        let rel = if (&ll + &gl).is_zero() {
            "-2 Gamma ^ Lambda"
        } else if (&ll - &gl).is_zero() {
            "2 Gamma ^ Lambda"
        } else {
            "neither +-2 Gamma ^ Lambda"
        };
        Ok(Outcome::info(format!("decomposable-formula Schouten bracket gives [Lambda, Lambda] = {rel}")))
    });
    rec.run(&format!("{tag}[Gamma,Lambda]"), sr, "[Gamma, Lambda] = 0", || {
        let d = schouten_bracket(&MultivectorField::from_field(&pair.gamma), &pair.lambda)?;
        Ok(Outcome::check(d.is_zero(), d.to_string()))
    });

    let ir = "mass-shell/jacobi-identity";
    let triples = random_triples(&shell, rec.seed() ^ 0x5eed, 20);
    rec.run(&format!("{tag}jacobi-identity"), ir, "[f,[g,h]] + cyclic = 0 on 20 random polynomial triples", || {
        let mut res = Vec::new();
        for (i, [f, g, h]) in triples.iter().enumerate() {
            let a = pair.bracket(f, &pair.bracket(g, h)?)?;
            let b = pair.bracket(g, &pair.bracket(h, f)?)?;
            let cc = pair.bracket(h, &pair.bracket(f, g)?)?;
            res.push((format!("triple {i}"), &(&a + &b) + &cc));
        }
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}leibniz-anomaly"), ir, "[f,gh] = [f,g]h + g[f,h] - [f,1]gh on 20 random triples", || {
        let one = Expr::one();
        let mut res = Vec::new();
        let mut cases: Vec<[Expr; 3]> = triples.clone();
        cases.push([c.x(0), c.x(4), c.x(1)]);
        for (i, [f, g, h]) in cases.iter().enumerate() {
            let lhs = pair.bracket(f, &(g * h))?;
            let rhs = &(&(&pair.bracket(f, g)? * h) + &(g * &pair.bracket(f, h)?)) - &(&pair.bracket(f, &one)? * &(g * h));
            res.push((format!("triple {i}"), &lhs - &rhs));
        }
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}antisymmetry"), ir, "[f,g] = -[g,f] and operator path X~_f(g) agrees", || {
        let mut res = Vec::new();
        for (i, [f, g, _]) in triples.iter().enumerate() {
            let b = pair.bracket(f, g)?;
            res.push((format!("anti {i}"), &b + &pair.bracket(g, f)?));
            res.push((format!("operator {i}"), &b - &pair.operator_apply(f, g)?));
        }
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}determinant-bracket"), ir, "bracket agrees with the volume-form definition", || {
        let mut res = Vec::new();
        for (i, [f, g, _]) in triples.iter().take(5).enumerate() {
            res.push((format!("pair {i}"), &pair.bracket(f, g)? - &determinant_bracket(&shell, f, g, 3)?));
        }
        res.push(("p1,x1".into(), &pair.bracket(&c.x(4), &c.x(1))? - &determinant_bracket(&shell, &c.x(4), &c.x(1), 3)?));
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}determinant-bracket-coefficient-2"), ir, "", || {
        let d = &pair.bracket(&c.x(4), &c.x(1))? - &determinant_bracket(&shell, &c.x(4), &c.x(1), 2)?;
        Ok(Outcome::info(format!("with coefficient 2 instead of 3, [p1,x1]_m differs by {d}")))
    });

    let gens = shell.generators();
    let names = poincare_names();
    let spec = poincare_spec(&SIGNATURE)?;
    let pr = "mass-shell/constants-of-motion";
    rec.run(&format!("{tag}constants"), pr, "Gamma_m(P_mu) = Gamma_m(M_munu) = 0", || {
        let res: Vec<_> = gens.iter().zip(&names).map(|(g, n)| (n.clone(), pair.gamma.apply(g))).collect();
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });
    rec.run(&format!("{tag}poisson-reduction"), pr, "on Gamma-constants [f,g]_m = Lambda(df,dg) and reproduces the Poincare table", || {
        let mut res = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                let b = pair.bracket(&gens[i], &gens[j])?;
                let l = pair.lambda.eval2(&DifferentialForm::exact(&c, &gens[i]), &DifferentialForm::exact(&c, &gens[j]))?;
                let want: Expr = (0..10).map(|k| gens[k].scale(spec.constant(i, j, k))).sum();
                res.push((format!("[{},{}] - Lambda", names[i], names[j]), &b - &l));
                res.push((format!("[{},{}] - table", names[i], names[j]), &b - &want));
            }
        }
        Ok(witness_outcome(&res, &sampler, &mut wrng))
    });

    let er = "mass-shell/eleventh-generator";
    rec.run(&format!("{tag}X_1"), er, "X_c = c Gamma_m", || {
        let (x, s) = pair.hamiltonian_field(&Expr::int(5))?;
        let d = &x - &pair.gamma.scale(&Expr::int(5));
        Ok(Outcome::check(d.is_zero() && s.is_zero(), d.to_string()))
    });
    rec.run(&format!("{tag}Y"), er, "X_{P_mu} = d/dx^mu", || {
        let mut bad = Vec::new();
        for mu in 0..4 {
            let d = &pair.hamiltonian_field(&gens[mu])?.0 - &VectorField::coordinate(&c, mu);
            if !d.is_zero() {
                bad.push(format!("mu={mu}: {d}"));
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    rec.run(&format!("{tag}X_munu"), er, "X_{M_munu} equals the restricted Lorentz field", || {
        let mut bad = Vec::new();
        for (k, (mu, nu)) in M_PAIRS.iter().enumerate() {
            let d = &pair.hamiltonian_field(&gens[4 + k])?.0 - &shell.closed_form_lorentz(*mu, *nu)?;
            if !d.is_zero() {
                bad.push(format!("M{mu}{nu}: {d}"));
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    let real = eleventh_generator_realization(&shell, &pair)?;
    real.record(rec, &format!("{tag}eleven"), er);
    Ok(())
}

/// Mass-shell suite over every requested mass.
pub fn run(opts: &super::Options) -> Result<Report> {
    let mut rec = Recorder::new("jacobi", opts.seed, opts.timings);
    for m in &opts.masses {
        if let Err(e) = record_mass(&mut rec, m) {
            rec.run(&format!("m={}:build", mass_tag(m)), "mass-shell/contact", "build the mass shell", || Err(e));
        }
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn volume_coefficient_matches_hand_expansion() {
        // θ ∧ dθ^3 = -6 m^2/E dx0^dx1^dx2^dx3^dp1^dp2^dp3
        let s = build_mass_shell(&q(12, 1)).unwrap();
        let mut pt = Point::new();
        for (k, v) in [("x0", 0), ("x1", 0), ("x2", 0), ("x3", 0), ("p1", 3), ("p2", 0), ("p3", 4), ("E", 13), ("m", 12)] {
            pt.insert(k.into(), q(v, 1));
        }
        assert_eq!(eval_rational(&s.volume_coefficient(), &pt).unwrap(), q(-864, 13));
    }

    #[test]
    fn nonpositive_mass_is_rejected() {
        assert!(matches!(build_mass_shell(&q(0, 1)), Err(Error::InvalidMass(_))));
        assert!(matches!(build_mass_shell(&q(-1, 2)), Err(Error::InvalidMass(_))));
    }
}
