//! Modular angles `θ(q, x) = 2 Σ atanh(q^{n+x})`, the continued fractions
//! `u0` and `U`, and the per-`(a, z)` frame of derived angles.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticContext;
use crate::jacobi;
use crate::numeric;
use crate::qseries::qpochhammer;
use crate::series::{self, SeriesValue, TruncationPolicy};
use crate::{Error, Nome, Result, C64};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// `θ(q, x) = 2 Σ_{n>=0} atanh(q^{n+x})`.
pub fn theta_angle(nome: &Nome, x: f64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let first = nome.pow(x);
    if (first - ONE).norm() == 0.0 || (first + ONE).norm() == 0.0 {
        return Err(Error::Pole(format!("q^x = ±1 at x = {x}")));
    }
    let s = series::sum(policy, 0, |n| 2.0 * nome.pow(n as f64 + x).atanh())?;
    if !s.value.re.is_finite() || !s.value.im.is_finite() {
        return Err(Error::Pole(format!("q^(n+x) = ±1 at x = {x}")));
    }
    Ok(s)
}

/// `log((-q^x; q)_∞ / (q^x; q)_∞)`, principal logarithm. Agrees with
/// [`theta_angle`] modulo `2πi`.
pub fn theta_angle_product(nome: &Nome, x: f64, policy: &TruncationPolicy) -> Result<C64> {
    let qx = nome.pow(x);
    let den = qpochhammer(qx, nome, policy)?.value;
    if den.norm() == 0.0 {
        return Err(Error::Pole(format!("(q^x; q) vanishes at x = {x}")));
    }
    Ok((qpochhammer(-qx, nome, policy)?.value / den).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivMode {
    /// Central differences of [`theta_angle`].
    Numeric,
    /// `a` a positive integer: finite sum plus a Lambert-type tail.
    ClosedInteger,
    /// `4πiz Σ_{n>=0} q^{a(2n+1)} / (1 - q^{2n+1})`.
    Series,
}

/// `dθ(q, a)/da`.
pub fn theta_angle_deriv(nome: &Nome, a: f64, mode: DerivMode, policy: &TruncationPolicy) -> Result<C64> {
    let z = nome.z_or_err()?;
    match mode {
        DerivMode::Numeric => {
            numeric::derivative_real(|t| theta_angle(nome, t, policy).map(|s| s.value), a, 1e-2, 3)
        }
        DerivMode::Series => {
            let s = series::sum(policy, 0, |n| {
                let m = 2.0 * n as f64 + 1.0;
                nome.pow(a * m) / (ONE - nome.pow(m))
            })?;
            Ok(4.0 * PI * I * z * s.value)
        }
        DerivMode::ClosedInteger => {
            if a < 1.0 || a.fract() != 0.0 {
                return Err(Error::domain(format!("closed form needs a positive integer a, got {a}")));
            }
            let lq = nome.ln()?;
            let term = |n: usize| nome.pow(n as f64) / (ONE - nome.pow(2.0 * n as f64));
            let head: C64 = (1..a as usize).map(term).sum();
            let tail = series::sum(policy, 1, term)?.value;
            Ok(-2.0 * lq * head + 2.0 * lq * tail)
        }
    }
}

/// `a1 / (b1 + a2 / (b2 + ...))` with partial numerators `a(j)` and
/// denominators `b(j)`, `j >= 1`.
pub struct ContinuedFraction<A, B> {
    pub a: A,
    pub b: B,
    pub tol: f64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfValue {
    pub value: C64,
    pub depth: usize,
}

impl<A, B> ContinuedFraction<A, B>
where
    A: Fn(usize) -> C64,
    B: Fn(usize) -> C64,
{
    pub fn new(a: A, b: B) -> Self {
        ContinuedFraction { a, b, tol: 1e-16, max_depth: 1 << 14 }
    }

    fn backward(&self, depth: usize) -> Option<C64> {
        let mut t = C64::new(0.0, 0.0);
        for j in (1..=depth).rev() {
            t = (self.a)(j) / ((self.b)(j) + t);
            if !t.re.is_finite() || !t.im.is_finite() {
                return None;
            }
        }
        Some(t)
    }

    // modified Lentz
    fn forward(&self) -> Result<CfValue> {
        const TINY: f64 = 1e-300;
        let mut f = C64::new(TINY, 0.0);
        let mut c = f;
        let mut d = C64::new(0.0, 0.0);
        for j in 1..=self.max_depth {
            let (aj, bj) = ((self.a)(j), (self.b)(j));
            d = bj + aj * d;
            if d.norm() < TINY {
                d = C64::new(TINY, 0.0);
            }
            c = bj + aj / c;
            if c.norm() < TINY {
                c = C64::new(TINY, 0.0);
            }
            d = ONE / d;
            let delta = c * d;
            f *= delta;
            if (delta - ONE).norm() <= self.tol {
                return Ok(CfValue { value: f, depth: j });
            }
        }
        Err(Error::CfStagnation { depth: self.max_depth, delta: f64::NAN })
    }

    /// Backward recurrence with depth doubling; the forward recurrence is
    /// used if the backward pass produces a non-finite value.
    pub fn eval(&self) -> Result<CfValue> {
        let mut depth = 8;
        let Some(mut prev) = self.backward(depth) else { return self.forward() };
        while depth < self.max_depth {
            depth *= 2;
            let Some(cur) = self.backward(depth) else { return self.forward() };
            let delta = (cur - prev).norm();
            if delta <= self.tol * cur.norm() || cur == prev {
                return Ok(CfValue { value: cur, depth });
            }
            prev = cur;
        }
        let last = self.backward(depth / 2).unwrap_or(prev);
        Err(Error::CfStagnation { depth, delta: (prev - last).norm() })
    }
}

fn pochhammer_ratio(a: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    let den = qpochhammer(a, nome, policy)?.value;
    if den.norm() == 0.0 {
        return Err(Error::Pole(format!("(a; q) vanishes at a = {a}")));
    }
    Ok(qpochhammer(-a, nome, policy)?.value / den)
}

/// `P(q, a) = ((-a; q)_∞ / (a; q)_∞)²`.
pub fn p_product(a: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    Ok(pochhammer_ratio(a, nome, policy)?.powi(2))
}

/// `u0(q, a) = (P - 1)/(P + 1)`.
pub fn u0_product(a: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    let p = p_product(a, nome, policy)?;
    Ok((p - ONE) / (p + ONE))
}

/// `u0` as `2a / (1 - q + a²(1+q)² / (1 - q³ + a² q (1+q²)² / (1 - q⁵ + ...)))`.
pub fn u0_cf(a: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<CfValue> {
    if a.norm() != 0.0 && !(nome.abs() < a.norm()) {
        return Err(Error::domain(format!("u0 continued fraction needs |q/a| < 1 (|q| = {}, |a| = {})", nome.abs(), a.norm())));
    }
    let a2 = a * a;
    let cf = ContinuedFraction {
        a: |j: usize| {
            if j == 1 {
                2.0 * a
            } else {
                let jf = j as f64;
                a2 * nome.pow(jf - 2.0) * (ONE + nome.pow(jf - 1.0)).powi(2)
            }
        },
        b: |j: usize| ONE - nome.pow(2.0 * j as f64 - 1.0),
        tol: 1e-16,
        max_depth: policy.max_terms.max(16),
    };
    cf.eval()
}

/// `U(a, b; q)` from `(1 + U)/(1 - U) = (-a; q)(b; q) / ((a; q)(-b; q))`.
pub fn big_u_product(a: C64, b: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    let x = pochhammer_ratio(a, nome, policy)? / pochhammer_ratio(b, nome, policy)?;
    Ok((x - ONE) / (x + ONE))
}

/// `U(a, b; q) = (a - b) / (1 - q + q^0 (a - bq)(aq - b) / (1 - q³ + q (a - bq²)(aq² - b) / ...))`.
pub fn big_u_cf(a: C64, b: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<CfValue> {
    let cf = ContinuedFraction {
        a: |j: usize| {
            if j == 1 {
                a - b
            } else {
                let jf = j as f64;
                let qk = nome.pow(jf - 1.0);
                nome.pow(jf - 2.0) * (a - b * qk) * (a * qk - b)
            }
        },
        b: |j: usize| ONE - nome.pow(2.0 * j as f64 - 1.0),
        tol: 1e-16,
        max_depth: policy.max_terms.max(16),
    };
    cf.eval()
}

/// cd1 through the continued fraction for `u0`:
/// `D = (1/2) d/du log(-1 + 2/(1 - u0(q, A(u))))`, then the same
/// combination as [`jacobi::cd1_via_theta_derivative`].
pub fn cd1_via_cf(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    let nome = ctx.nome;
    let big_a = |t: C64| I * nome.pow(0.5) * (I * PI * t / (2.0 * ctx.big_k)).exp();
    let p_of = |t: C64| -> Result<C64> {
        let u0 = u0_cf(big_a(t), &nome, policy)?.value;
        Ok(-ONE + 2.0 / (ONE - u0))
    };
    let dp = numeric::derivative(p_of, u, 1e-2 * ctx.big_k.norm(), 3)?;
    let d = dp / (2.0 * p_of(u)?);
    let cd = jacobi::cd_ext(ctx, u, policy)?;
    let w = PI * u / ctx.big_k;
    Ok(cd * w.cos() - I * cd * w.sin() - 2.0 * I / ctx.k * w.sin() * d)
}

/// Angles attached to a choice of `a` in (0, 1) and `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularAngleFrame {
    pub a: f64,
    pub z: C64,
    pub ctx: EllipticContext,
    /// context of `-q`
    pub neg: EllipticContext,
    /// `θ0 = -K + (4a - 2) z K`
    pub theta0: C64,
    /// `θ0* = 2K*(a - 1 + (2a - 1) z)`
    pub theta0_star: C64,
    /// `h0* = θ0*/k'`
    pub h0_star: C64,
}

impl ModularAngleFrame {
    pub fn new(a: f64, z: C64, policy: &TruncationPolicy) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::domain(format!("a must lie in (0,1), got {a}")));
        }
        if !(z.re > -0.5 && z.re < 0.5) {
            return Err(Error::domain(format!("Re z must lie in (-1/2, 1/2), got {}", z.re)));
        }
        let ctx = EllipticContext::from_z(z, policy)?;
        let neg = ctx.negated(policy)?;
        let theta0 = -ctx.big_k + (4.0 * a - 2.0) * z * ctx.big_k;
        let theta0_star = 2.0 * neg.big_k * (a - 1.0 + (2.0 * a - 1.0) * z);
        Ok(ModularAngleFrame { a, z, ctx, neg, theta0, theta0_star, h0_star: theta0_star / ctx.k_prime })
    }

    /// Residuals of the frame invariants.
    pub fn invariant_residuals(&self) -> Vec<(&'static str, f64)> {
        let c = &self.ctx;
        let qa = c.nome.pow(self.a);
        let from_theta0 = I * c.nome.pow(0.5) * (I * PI * self.theta0 / (2.0 * c.big_k)).exp();
        let neg_theta0 = -self.neg.big_k + (4.0 * self.a - 2.0) * self.neg.z * self.neg.big_k;
        let h0 = 2.0 * (self.a - 1.0) * c.big_k + I * (2.0 * self.a - 1.0) * c.big_k_prime;
        vec![
            ("q^a = i q^(1/2) exp(iπθ0/2K)", (qa - from_theta0).norm() / qa.norm()),
            ("θ0* is θ0 of -q", (self.theta0_star - neg_theta0).norm() / self.theta0_star.norm().max(1.0)),
            ("h0* = 2(a-1)K + i(2a-1)K'", (self.h0_star - h0).norm() / h0.norm().max(1.0)),
            ("K* = k'K", (self.neg.big_k - c.k_prime * c.big_k).norm() / c.big_k.norm()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn theta_angle_example() {
        let n = Nome::from_real(0.2).unwrap();
        let t = theta_angle(&n, 0.5, &pol()).unwrap().value;
        // direct sum with many terms
        let mut d = 0.0;
        for k in 0..200 {
            d += 2.0 * 0.2f64.powf(k as f64 + 0.5).atanh();
        }
        assert!((t.re - d).abs() < 1e-15);
        let p = theta_angle_product(&n, 0.5, &pol()).unwrap();
        assert!((p - t).norm() < 1e-14);
    }

    #[test]
    fn theta_angle_pole() {
        let n = Nome::from_real(0.2).unwrap();
        assert!(theta_angle(&n, 0.0, &pol()).is_err());
    }

    #[test]
    fn derivative_modes_agree() {
        let n = Nome::from_real(0.2).unwrap();
        for a in [1.0, 2.0, 3.0] {
            let s = theta_angle_deriv(&n, a, DerivMode::Series, &pol()).unwrap();
            let c = theta_angle_deriv(&n, a, DerivMode::ClosedInteger, &pol()).unwrap();
            let m = theta_angle_deriv(&n, a, DerivMode::Numeric, &pol()).unwrap();
            assert!((s - c).norm() < 1e-14 * s.norm().max(1.0), "a={a}");
            assert!((s - m).norm() < 1e-9 * s.norm().max(1.0), "a={a}");
        }
        assert!(theta_angle_deriv(&n, 0.5, DerivMode::ClosedInteger, &pol()).is_err());
    }

    #[test]
    fn cf_golden_ratio() {
        let cf = ContinuedFraction::new(|_| ONE, |_| ONE);
        let v = cf.eval().unwrap();
        assert!((v.value.re - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn u0_forms_agree() {
        let n = Nome::from_real(0.1).unwrap();
        let a = C64::new(0.3, 0.0);
        let cf = u0_cf(a, &n, &pol()).unwrap().value;
        let pr = u0_product(a, &n, &pol()).unwrap();
        assert!((cf - pr).norm() < 1e-14);
        assert!(u0_cf(C64::new(0.05, 0.0), &n, &pol()).is_err());
        assert_eq!(u0_cf(C64::new(0.0, 0.0), &n, &pol()).unwrap().value, C64::new(0.0, 0.0));
    }

    #[test]
    fn big_u_forms_agree() {
        let n = Nome::from_real(0.3).unwrap();
        let (a, b) = (C64::new(0.4, 0.0), C64::new(0.2, 0.0));
        let cf = big_u_cf(a, b, &n, &pol()).unwrap().value;
        let pr = big_u_product(a, b, &n, &pol()).unwrap();
        assert!((cf - pr).norm() < 1e-14);
        // U(a, a; q) = 0
        assert_eq!(big_u_cf(a, a, &n, &pol()).unwrap().value, C64::new(0.0, 0.0));
    }

    #[test]
    fn cf_route_matches_fourier() {
        let c = EllipticContext::from_r(2.0, &pol()).unwrap();
        let u = C64::new(0.8, 0.0);
        let f = jacobi::eval(jacobi::FourierKind::Cd1, &c, u, &pol()).unwrap();
        let g = cd1_via_cf(&c, u, &pol()).unwrap();
        assert!((f - g).norm() < 1e-10);
    }

    #[test]
    fn frame_invariants() {
        let f = ModularAngleFrame::new(0.3, C64::new(0.1, 0.4), &pol()).unwrap();
        for (name, r) in f.invariant_residuals() {
            assert!(r < 1e-12, "{name}: {r}");
        }
        assert!(ModularAngleFrame::new(1.2, C64::new(0.1, 0.4), &pol()).is_err());
    }
}
