//! Seeded random inputs: polynomials, expression trees and rational points.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Atom, Chart, Expr, Q};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational.
pub fn small_q(rng: &mut SampleRng) -> Q {
    let mut n: i64 = rng.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    let d: i64 = rng.gen_range(1..=3);
    Q::new(n.into(), d.into())
}

/// Random polynomial in `vars` with at most `terms` terms of total degree
/// at most `degree`.
pub fn random_poly(rng: &mut SampleRng, vars: &[Atom], degree: u32, terms: usize) -> Expr {
    let mut acc = Expr::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut t = Expr::rational(small_q(rng));
        let d = rng.gen_range(0..=degree);
        for _ in 0..d {
            let v = vars.choose(rng).expect("nonempty variable list");
            t = &t * &Expr::atom(v);
        }
        acc = &acc + &t;
    }
    acc
}

/// Random expression tree of bounded depth over the chart's symbols,
/// extensions and opaque functions. Division is only by factors that cannot
/// vanish identically.
pub fn random_expr(rng: &mut SampleRng, chart: &Chart, depth: u32) -> Expr {
    let leaves: Vec<Atom> = chart
        .coords()
        .iter()
        .chain(chart.params())
        .chain(chart.extensions())
        .cloned()
        .collect();
    build(rng, chart, &leaves, depth)
}

fn build(rng: &mut SampleRng, chart: &Chart, leaves: &[Atom], depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 => Expr::rational(small_q(rng)),
            _ => Expr::atom(leaves.choose(rng).expect("chart has symbols")),
        };
    }
    let a = build(rng, chart, leaves, depth - 1);
    match rng.gen_range(0..7) {
        0 | 1 => &a + &build(rng, chart, leaves, depth - 1),
        2 => &a - &build(rng, chart, leaves, depth - 1),
        3 | 4 => &a * &build(rng, chart, leaves, depth - 1),
        5 => {
            // 1 + v^2 (times a positive constant) never vanishes
            let v = Expr::atom(leaves.choose(rng).expect("chart has symbols"));
            let den = &Expr::one() + &(&v * &v);
            a.try_div(&den).expect("nonzero denominator")
        }
        _ => match chart.functions().first() {
            Some(head) if depth > 1 => {
                let order = rng.gen_range(0..2);
                Expr::atom(&Atom::apply(head, order, a))
            }
            _ => a.pow(2).expect("nonnegative power"),
        },
    }
}

/// Rational point on the unit 3-sphere via inverse stereographic projection.
pub fn s3_point(rng: &mut SampleRng) -> [Q; 4] {
    let u: Vec<Q> = (0..3).map(|_| small_q(rng)).collect();
    let s: Q = u.iter().map(|x| x * x).sum();
    let d = Q::from_integer(1.into()) + &s;
    let two = Q::from_integer(2.into());
    [
        &two * &u[0] / &d,
        &two * &u[1] / &d,
        &two * &u[2] / &d,
        (s - Q::from_integer(1.into())) / d,
    ]
}

/// Rational number in `(-1, 1)` with small height.
pub fn unit_q(rng: &mut SampleRng) -> Q {
    let d: i64 = rng.gen_range(2..=9);
    let n: i64 = rng.gen_range(-(d - 1)..=(d - 1));
    Q::new(n.into(), d.into())
}

/// Draws rational points (extension values included) for witness search.
pub type Sampler = std::sync::Arc<dyn Fn(&mut SampleRng) -> Option<crate::expr::Point> + Send + Sync>;

/// First sampled point at which some expression of `es` is nonzero,
/// together with that value.
pub fn find_witness(
    es: &[Expr],
    sampler: &Sampler,
    rng: &mut SampleRng,
) -> Option<(crate::expr::Point, Q)> {
    let es: Vec<&Expr> = es.iter().filter(|e| !e.is_zero()).collect();
    for _ in 0..64 {
        let Some(p) = sampler(rng) else { continue };
        for e in &es {
            if let Ok(v) = crate::expr::eval_rational(e, &p) {
                if !num_traits::Zero::is_zero(&v) {
                    return Some((p, v));
                }
            }
        }
    }
    None
}
