//! Shared numeric utilities: difference quotients, quadrature, Γ and ζ.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

/// Central difference of an analytic `f` at `x` along the real direction,
/// refined by `steps` rounds of Richardson extrapolation.
pub fn derivative<F>(f: F, x: C64, h: f64, steps: usize) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    if !(h > 0.0) {
        return Err(Error::domain("step must be positive"));
    }
    let d = |h: f64| -> Result<C64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    richardson(d, h, steps)
}

pub fn derivative_real<F>(f: F, x: f64, h: f64, steps: usize) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    derivative(|t: C64| f(t.re), C64::new(x, 0.0), h, steps)
}

/// `lim_{δ->0} g(δ)` from the symmetric average `(g(δ)+g(-δ))/2`, whose error
/// is even in δ, with Richardson extrapolation.
pub fn limit<G>(g: G, delta: f64, steps: usize) -> Result<C64>
where
    G: Fn(f64) -> Result<C64>,
{
    let s = |d: f64| -> Result<C64> { Ok((g(d)? + g(-d)?) * 0.5) };
    richardson(s, delta, steps)
}

// Richardson table for an approximation with an even error expansion in h.
fn richardson<D>(d: D, h: f64, steps: usize) -> Result<C64>
where
    D: Fn(f64) -> Result<C64>,
{
    let mut row: Vec<C64> = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let mut cur = d(h / 2f64.powi(i as i32))?;
        let mut next_row = Vec::with_capacity(i + 1);
        next_row.push(cur);
        let mut p = 4.0;
        for prev in row.iter() {
            cur = (p * cur - prev) / (p - 1.0);
            next_row.push(cur);
            p *= 4.0;
        }
        row = next_row;
    }
    Ok(*row.last().unwrap())
}

/// `f^{(order)}(z0)` from the Cauchy integral on a circle of the given radius
/// (trapezoid rule with `points` nodes). `f` must be analytic on the closed disc.
pub fn cauchy_derivative<F>(f: F, z0: C64, order: u32, radius: f64, points: usize) -> C64
where
    F: Fn(C64) -> C64,
{
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..points {
        let w = C64::from_polar(1.0, 2.0 * PI * j as f64 / points as f64);
        acc += f(z0 + radius * w) * w.powi(-(order as i32));
    }
    let fact: f64 = (1..=order).map(|k| k as f64).product();
    acc * fact / (points as f64 * radius.powi(order as i32))
}

const GK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GK_WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(C64) -> Result<C64>>(f: &F, a: C64, b: C64) -> Result<(C64, f64)> {
    let c = (a + b) * 0.5;
    let h = (b - a) * 0.5;
    let fc = f(c)?;
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for j in 0..7 {
        let dx = h * GK_X[j];
        let s = f(c - dx)? + f(c + dx)?;
        k += s * GK_WK[j];
        if j % 2 == 1 {
            g += s * GK_WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    Ok((k, (k - g).norm()))
}

/// Adaptive Gauss–Kronrod (7/15) integral of `f` along the segment `a -> b`.
pub fn integrate_segment<F>(f: F, a: C64, b: C64, tol: f64) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    fn rec<F: Fn(C64) -> Result<C64>>(f: &F, a: C64, b: C64, whole: (C64, f64), tol: f64, depth: u32) -> Result<C64> {
        let (val, err) = whole;
        if err <= tol.max(1e-15 * val.norm()) {
            return Ok(val);
        }
        if depth == 0 {
            return Err(Error::PoleOnPath(format!("quadrature did not settle near {}", (a + b) * 0.5)));
        }
        let m = (a + b) * 0.5;
        let l = gk15(f, a, m)?;
        let r = gk15(f, m, b)?;
        Ok(rec(f, a, m, l, tol * 0.5, depth - 1)? + rec(f, m, b, r, tol * 0.5, depth - 1)?)
    }
    let first = gk15(&f, a, b)?;
    let v = rec(&f, a, b, first, tol, 40)?;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::PoleOnPath("non-finite integrand".into()));
    }
    Ok(v)
}

pub fn integrate_real<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_segment(|t: C64| Ok(C64::new(f(t.re), 0.0)), C64::new(a, 0.0), C64::new(b, 0.0), tol).map(|v| v.re)
}

/// Γ(x) for real x, reflecting below 1/2.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * libm::tgamma(1.0 - x))
    } else {
        libm::tgamma(x)
    }
}

/// ζ(s) at integers s != 1: Euler–Maclaurin for s >= 2, the Bernoulli values
/// for s <= 0.
pub fn zeta(s: i32) -> Result<f64> {
    if s == 1 {
        return Err(Error::Pole("zeta(1)".into()));
    }
    if s <= 0 {
        let n = (1 - s) as usize;
        return Ok(-crate::qseries::bernoulli(n) / n as f64 * if n == 1 { -1.0 } else { 1.0 });
    }
    let s = s as f64;
    let n = 50usize;
    let mut acc: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    acc += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // B2/2!, B4/4!, B6/6! corrections
    let c = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
    let mut rising = s;
    let mut pw = nf.powf(-s - 1.0);
    for (j, cj) in c.iter().enumerate() {
        acc += cj * rising * pw;
        rising *= (s + 2.0 * j as f64 + 1.0) * (s + 2.0 * j as f64 + 2.0);
        pw /= nf * nf;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_square() {
        let d = derivative(|x| Ok(x * x), C64::new(3.0, 0.0), 1e-3, 2).unwrap();
        assert!((d - C64::new(6.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn derivative_of_exp_complex_point() {
        let z = C64::new(0.3, 0.7);
        let d = derivative(|x| Ok(x.exp()), z, 1e-2, 3).unwrap();
        assert!((d - z.exp()).norm() < 1e-12);
    }

    #[test]
    fn limit_of_sinc() {
        let v = limit(|d| Ok(C64::new((d.sin()) / d, 0.0)), 1e-2, 2).unwrap();
        assert!((v.re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn cauchy_matches_exp() {
        let d = cauchy_derivative(|z| z.exp(), C64::new(0.0, 0.0), 5, 1.0, 64);
        assert!((d - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn quadrature_polynomial_and_log() {
        let v = integrate_real(|x| x * x, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        let w = integrate_segment(|z| Ok(1.0 / z), C64::new(1.0, 0.0), C64::new(1.0, 1.0), 1e-13).unwrap();
        assert!((w - C64::new(1.0, 1.0).ln()).norm() < 1e-13);
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        // Γ(-1/4) = -4 Γ(3/4)
        assert!((gamma(-0.25) + 4.0 * gamma(0.75)).abs() < 1e-13);
        assert!((gamma(-0.25) - (-4.901666809860710)).abs() < 1e-12);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(3).unwrap() - 1.2020569031595942).abs() < 1e-15);
        assert!((zeta(-1).unwrap() + 1.0 / 12.0).abs() < 1e-15);
        assert!((zeta(0).unwrap() + 0.5).abs() < 1e-15);
        assert!((zeta(-3).unwrap() - 1.0 / 120.0).abs() < 1e-15);
    }
}
