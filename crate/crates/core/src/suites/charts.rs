//! Built-in charts and rational point samplers.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{Chart, Point, Q};
use crate::sample::{s3_point, small_q, SampleRng, Sampler};

pub const BUILTIN: [&str; 5] = ["TR3", "TR4", "TstarR4", "shell", "frozen"];

/// Velocity phase space of a single particle in R^3. `w = sqrt(1 - |xd|^2)`;
/// `c`, `u` are parameters; `f`, `h`, `F` are opaque function heads.
pub fn tr3() -> Arc<Chart> {
    Chart::builder("TR3")
        .coords(&["x1", "x2", "x3", "xd1", "xd2", "xd3"])
        .tangent()
        .params(&["c", "u"])
        .extension("w", "1 - xd1^2 - xd2^2 - xd3^2")
        .function("f")
        .function("h")
        .function("F")
        .build()
        .expect("valid chart")
}

/// Tangent bundle of Minkowski space, `v = sqrt(g(xd, xd))`.
pub fn tr4() -> Arc<Chart> {
    Chart::builder("TR4")
        .coords(&["x0", "x1", "x2", "x3", "xd0", "xd1", "xd2", "xd3"])
        .tangent()
        .extension("v", "xd0^2 - xd1^2 - xd2^2 - xd3^2")
        .signature(&[1, -1, -1, -1])
        .build()
        .expect("valid chart")
}

/// Cotangent bundle of Minkowski space with momenta `p0..p3` (upper index).
pub fn tstar_r4() -> Arc<Chart> {
    Chart::builder("TstarR4")
        .coords(&["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"])
        .params(&["m"])
        .signature(&[1, -1, -1, -1])
        .build()
        .expect("valid chart")
}

/// Mass shell `p·p = m^2`, upper branch `p0 = E`.
pub fn shell() -> Arc<Chart> {
    Chart::builder("shell")
        .coords(&["x0", "x1", "x2", "x3", "p1", "p2", "p3"])
        .params(&["m"])
        .extension("E", "m^2 + p1^2 + p2^2 + p3^2")
        .signature(&[1, -1, -1, -1])
        .build()
        .expect("valid chart")
}

/// Off-shell cotangent chart with `r = sqrt(p·p)`.
pub fn frozen() -> Arc<Chart> {
    Chart::builder("frozen")
        .coords(&["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"])
        .extension("r", "p0^2 - p1^2 - p2^2 - p3^2")
        .signature(&[1, -1, -1, -1])
        .build()
        .expect("valid chart")
}

pub fn builtin(name: &str) -> Result<Arc<Chart>> {
    match name {
        "TR3" => Ok(tr3()),
        "TR4" => Ok(tr4()),
        "TstarR4" => Ok(tstar_r4()),
        "shell" => Ok(shell()),
        "frozen" => Ok(frozen()),
        _ => Err(Error::InvalidChart(format!(
            "unknown chart `{name}` (built-in: {})",
            BUILTIN.join(", ")
        ))),
    }
}

fn positions(rng: &mut SampleRng, names: &[&str], p: &mut Point) {
    for n in names {
        p.insert((*n).into(), small_q(rng));
    }
}

/// TR3 points with `|xd| < 1` and rational `w`; `c` and `u` random.
pub fn tr3_sampler() -> Sampler {
    Arc::new(|rng: &mut SampleRng| {
        let s = s3_point(rng);
        if s[3].is_zero() {
            return None;
        }
        let mut p = Point::new();
        positions(rng, &["x1", "x2", "x3", "c", "u"], &mut p);
        for (i, n) in ["xd1", "xd2", "xd3"].iter().enumerate() {
            p.insert((*n).into(), s[i].clone());
        }
        p.insert("w".into(), s[3].abs());
        Some(p)
    })
}

/// Timelike TR4 points with rational `v`: `xd = k (1, s1, s2, s3)/|s0|` for a
/// rational point `s` of the unit 3-sphere has `v = k`.
pub fn tr4_sampler() -> Sampler {
    Arc::new(|rng: &mut SampleRng| {
        let s = s3_point(rng);
        let d = s[3].abs();
        if d.is_zero() {
            return None;
        }
        let k = small_q(rng).abs();
        let mut p = Point::new();
        positions(rng, &["x0", "x1", "x2", "x3"], &mut p);
        let one = Q::from_integer(1.into());
        p.insert("xd0".into(), &k * &one / &d);
        for (i, n) in ["xd1", "xd2", "xd3"].iter().enumerate() {
            p.insert((*n).into(), &k * &s[i] / &d);
        }
        p.insert("v".into(), k);
        Some(p)
    })
}

/// Mass-shell points for a fixed mass: `p = m (s1, s2, s3)/s0`, `E = m/|s0|`.
pub fn shell_sampler(m: Q) -> Sampler {
    Arc::new(move |rng: &mut SampleRng| {
        let s = s3_point(rng);
        let d = s[3].abs();
        if d.is_zero() {
            return None;
        }
        let mut p = Point::new();
        positions(rng, &["x0", "x1", "x2", "x3"], &mut p);
        for (i, n) in ["p1", "p2", "p3"].iter().enumerate() {
            p.insert((*n).into(), &m * &s[i] / &d);
        }
        p.insert("E".into(), &m / &d);
        p.insert("m".into(), m.clone());
        Some(p)
    })
}

/// Non-null timelike cotangent points with rational `r`.
pub fn frozen_sampler() -> Sampler {
    Arc::new(|rng: &mut SampleRng| {
        let s = s3_point(rng);
        let d = s[3].abs();
        if d.is_zero() {
            return None;
        }
        let r = small_q(rng).abs();
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut p = Point::new();
        positions(rng, &["x0", "x1", "x2", "x3"], &mut p);
        p.insert("p0".into(), Q::from_integer(sign.into()) * &r / &d);
        for (i, n) in ["p1", "p2", "p3"].iter().enumerate() {
            p.insert((*n).into(), &r * &s[i] / &d);
        }
        p.insert("r".into(), r);
        Some(p)
    })
}
