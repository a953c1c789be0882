//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive PRS on the variable of smallest degree, with fast
//! paths for the shapes that dominate in practice: constants, monomial
//! factors, and one operand dividing the other.

use num_traits::{One, Zero};

use super::atom::Atom;
use super::poly::Poly;
use super::Q;

/// Monic gcd (leading coefficient 1); `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let mpoly = Poly::term(m, Q::one());
    let a = a.div_monomial(&ma).expect("monomial content divides");
    let b = b.div_monomial(&mb).expect("monomial content divides");
    if a.is_constant() || b.is_constant() {
        return mpoly;
    }

    mpoly.mul(&gcd_primitive(&a, &b)).monic()
}

fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }

    let va = a.atoms();
    let vb = b.atoms();

    // A variable present in only one operand: the gcd lives in its coefficients.
    if let Some(x) = va.difference(&vb).next() {
        return gcd_with_coeffs(b, a, x);
    }
    if let Some(x) = vb.difference(&va).next() {
        return gcd_with_coeffs(a, b, x);
    }

    let x = va
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial has atoms")
        .clone();

    let ca = a.coeffs_in(&x);
    let cb = b.coeffs_in(&x);
    let conta = content(&ca);
    let contb = content(&cb);
    let cont = gcd(&conta, &contb);

    let mut p = primitive(&ca, &conta);
    let mut q = primitive(&cb, &contb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q);
        if r.iter().all(Poly::is_zero) {
            break;
        }
        if r.len() == 1 {
            q = vec![Poly::one()];
            break;
        }
        let c = content(&r);
        p = q;
        q = primitive(&r, &c);
    }
    let g = Poly::from_coeffs_in(&x, &q);
    cont.mul(&g).monic()
}

/// gcd of `b` with all coefficients of `a` in `x`, where `x` does not occur in `b`.
fn gcd_with_coeffs(b: &Poly, a: &Poly, x: &Atom) -> Poly {
    let mut g = b.clone();
    for c in a.coeffs_in(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.monic()
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in nz {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive(coeffs: &[Poly], cont: &Poly) -> Vec<Poly> {
    let mut out: Vec<Poly> = if cont.is_one() {
        coeffs.to_vec()
    } else {
        coeffs
            .iter()
            .map(|c| c.div_exact(cont).expect("content divides coefficient"))
            .collect()
    };
    while out.len() > 1 && out.last().is_some_and(Poly::is_zero) {
        out.pop();
    }
    // Keep rational coefficients small: scale so the leading coefficient's
    // leading term is 1.
    let lc = out.last().map(Poly::leading_coeff).unwrap_or_else(Q::one);
    if !lc.is_one() && !lc.is_zero() {
        let k = lc.recip();
        out = out.iter().map(|c| c.scale(&k)).collect();
    }
    out
}

/// Pseudo-remainder of coefficient vectors (index = degree).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    while r.len() > db && !r.iter().all(Poly::is_zero) {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bi) in b.iter().enumerate() {
            let k = i + dr - db;
            r[k] = r[k].sub(&lcr.mul(bi));
        }
        while r.len() > 1 && r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
        if r.len() == 1 && db == 0 {
            break;
        }
        if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
    }
    r
}
