use std::f64::consts::PI;

use super::{ctx_r, re, rsum, sign};
use crate::elliptic::{alpha, ellip_e, ellip_k, modulus_from_nome};
use crate::harness::{CompareMode, IdentityCase};
use crate::numeric::{derivative_real, gamma, zeta};
use crate::qseries::{bernoulli, divisor_count, lambert_dual, lambert_sum, q_deriv_q, qpochhammer, ArithmeticFunctionSpec};
use crate::{Nome, C64};

const HYP: &str = "hyperbolic sums";
const LAMBERT: &str = "Lambert series";

const R_GRID: &[f64] = &[1.0, 2.0, 3.0, 4.0];

fn q_of_r(r: f64) -> f64 {
    (-PI * r.sqrt()).exp()
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    v.push(
        IdentityCase::new("EQ2", HYP, "Σ n^{4ν+1}/(e^{2πn}-1) = B_{4ν+2}/(8ν+4)", |p, pol| {
            let nu = p["nu"];
            let e = 4.0 * nu + 1.0;
            let lhs = rsum(pol, 1, |n| n.powf(e) / (2.0 * PI * n).exp_m1())?;
            Ok((re(lhs), re(bernoulli(4 * nu as usize + 2) / (8.0 * nu + 4.0))))
        })
        .labels(&["2"])
        .param("nu", 1.0, 3.0)
        .each(&[1.0, 2.0, 3.0]),
    );
    v.push(
        IdentityCase::new(
            "EQ3",
            HYP,
            "Σ_{n odd} n^{4ν+1}/(e^{nπ}+1) = -Q_{4ν+1}/4 - 2^{4ν-1} B_{4ν+2}/(2ν+1)",
            |p, pol| {
                let nu = p["nu"];
                let e = 4.0 * nu + 1.0;
                let lhs = rsum(pol, 0, |j| {
                    let n = 2.0 * j + 1.0;
                    n.powf(e) / ((n * PI).exp() + 1.0)
                })?;
                let b = bernoulli(4 * nu as usize + 2);
                let rhs = -q_deriv_q(4 * nu as u32 + 1) / 4.0 - 2f64.powf(4.0 * nu - 1.0) * b / (2.0 * nu + 1.0);
                Ok((re(lhs), re(rhs)))
            },
        )
        .labels(&["3"])
        .param("nu", 0.0, 2.0)
        .each(&[0.0, 1.0, 2.0])
        .tol(1e-8),
    );
    v.push(
        IdentityCase::new(
            "EQ4",
            HYP,
            "Q_ν = 2 (d/dx)^ν 1/(e^x+1) at 0 equals 2(1-2^{ν+1}) B_{ν+1}/(ν+1)",
            |p, _| {
                let nu = p["nu"];
                let b = bernoulli(nu as usize + 1);
                let closed = 2.0 * (1.0 - 2f64.powf(nu + 1.0)) * b / (nu + 1.0);
                Ok((re(q_deriv_q(nu as u32)), re(closed)))
            },
        )
        .labels(&["4"])
        .param("nu", 0.0, 9.0)
        .each(&[1.0, 3.0, 5.0, 9.0])
        .floor(1.0),
    );
    v.push(
        IdentityCase::new(
            "T1",
            HYP,
            "a^{-ν}{ζ(2ν+1)/2 + Σ n^{-2ν-1}/(e^{2an}-1)} - (-b)^{-ν}{...b...} = -2^{2ν} Σ_{j=0}^{ν+1} (-1)^j B_{2j}B_{2ν+2-2j}/((2j)!(2ν+2-2j)!) a^{ν+1-j} b^j, ab = π²",
            |p, pol| {
                let a = p["a"];
                let nu = p["nu"] as i32;
                let b = PI * PI / a;
                let z = zeta(2 * nu + 1)?;
                let e = (-2 * nu - 1) as f64;
                let part = |t: f64| -> crate::Result<f64> {
                    Ok(0.5 * z + rsum(pol, 1, |n| n.powf(e) / (2.0 * t * n).exp_m1())?)
                };
                let lhs = a.powi(-nu) * part(a)? - (-b).powi(-nu) * part(b)?;
                let mut s = 0.0;
                let fact = |m: i32| (1..=m).map(f64::from).product::<f64>();
                for j in 0..=(nu + 1) {
                    let m = 2 * nu + 2 - 2 * j;
                    s += sign(j as f64) * bernoulli(2 * j as usize) * bernoulli(m as usize) / (fact(2 * j) * fact(m))
                        * a.powi(nu + 1 - j)
                        * b.powi(j);
                }
                Ok((re(lhs), re(-(4f64.powi(nu)) * s)))
            },
        )
        .labels(&["6"])
        .param("a", 0.5, 20.0)
        .param("nu", -3.0, 3.0)
        .sample(&[PI, 1.0])
        .sample(&[2.0, 1.0])
        .sample(&[1.5, 2.0])
        .sample(&[3.0, 3.0])
        .sample(&[2.5, -1.0])
        .sample(&[2.0, -2.0])
        .sample(&[4.0, -3.0])
        .floor(1.0),
    );
    v.push(
        IdentityCase::new("EQ7", HYP, "Σ n/(e^{2πn}-1) = 1/24 - 1/(8π)", |_, pol| {
            let lhs = rsum(pol, 1, |n| n / (2.0 * PI * n).exp_m1())?;
            Ok((re(lhs), re(1.0 / 24.0 - 1.0 / (8.0 * PI))))
        })
        .labels(&["7"])
        .sample(&[])
        .tol(1e-10),
    );
    v.push(
        IdentityCase::new(
            "EQ8",
            LAMBERT,
            "Eisenstein series at q = e^{-2π}: 1-24Σ n q^n/(1-q^n) = 3/π, 1+240Σ n³q^n/(1-q^n) = 3Γ(1/4)^8/(2π)^6, 1-504Σ n⁵q^n/(1-q^n) = 0",
            |p, pol| {
                let nu = p["nu"] as i32;
                let nome = Nome::from_r(4.0)?;
                let s = lambert_sum(&ArithmeticFunctionSpec::Power(2 * nu - 1), &nome, pol)?.value;
                Ok(match nu {
                    1 => (1.0 - 24.0 * s, re(3.0 / PI)),
                    2 => (1.0 + 240.0 * s, re(3.0 * gamma(0.25).powi(8) / (2.0 * PI).powi(6))),
                    _ => (1.0 - 504.0 * s, re(0.0)),
                })
            },
        )
        .labels(&["8"])
        .param("nu", 1.0, 3.0)
        .each(&[1.0, 2.0, 3.0])
        .floor(1.0)
        .tol(1e-8),
    );
    v.push(
        IdentityCase::new("EQ9", LAMBERT, "A = Σ q^n/(n(1-q^n)) = -log Π(1-q^n)", |p, pol| {
            let q = q_of_r(p["r"]);
            let a = rsum(pol, 1, |n| q.powf(n) / (n * (1.0 - q.powf(n))))?;
            let f = qpochhammer(re(q), &Nome::from_real(q)?, pol)?.value;
            Ok((re(a), -f.ln()))
        })
        .labels(&["9"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ10",
            LAMBERT,
            "f(-q) = Π(1-q^n) = 2^{1/3} π^{-1/2} q^{-1/24} k^{1/12} k'^{1/3} K^{1/2}",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let f = qpochhammer(c.nome.q(), &c.nome, pol)?.value;
                let closed = 2f64.powf(1.0 / 3.0) / PI.sqrt()
                    * c.nome.pow(-1.0 / 24.0)
                    * c.k.powf(1.0 / 12.0)
                    * c.k_prime.powf(1.0 / 3.0)
                    * c.big_k.sqrt();
                Ok((f, closed))
            },
        )
        .labels(&["10", "84"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ10.1",
            LAMBERT,
            "K = (π/2) 2F1(1/2,1/2;1;k²), E = (π/2) 2F1(-1/2,1/2;1;k²); both packed as K + iE",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let x2 = (c.k * c.k).re;
                let mut t = 1.0;
                let kh = rsum(pol, 0, |n| {
                    let cur = t;
                    t *= ((n + 0.5) / (n + 1.0)).powi(2) * x2;
                    cur
                })?;
                let mut t = 1.0;
                let eh = rsum(pol, 0, |n| {
                    let cur = t;
                    t *= (n - 0.5) * (n + 0.5) / (n + 1.0).powi(2) * x2;
                    cur
                })?;
                let e = ellip_e(c.k)?;
                Ok((c.big_k + super::I * e, C64::new(PI / 2.0 * kh, PI / 2.0 * eh)))
            },
        )
        .labels(&["10.1"])
        .param("r", 0.5, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ10.2", LAMBERT, "K(k')/K(k) = sqrt(r) at the singular modulus", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            Ok((ellip_k(c.k_prime)? / ellip_k(c.k)?, re(p["r"].sqrt())))
        })
        .labels(&["10.2"])
        .param("r", 0.1, 16.0)
        .each(&[0.5, 1.0, 2.0, 3.0, 4.0]),
    );
    v.push(
        IdentityCase::new("EQ11", LAMBERT, "dA/dq = (e^{2x}/4) Σ 1/sinh²(nx), q = e^{-2x}", |p, pol| {
            let x = p["x"];
            let q = (-2.0 * x).exp();
            let a = |q: f64| Ok(re(rsum(pol, 1, |n| q.powf(n) / (n * (1.0 - q.powf(n))))?));
            let d = derivative_real(a, q, 0.1 * q, 3)?;
            let s = rsum(pol, 1, |n| (n * x).sinh().powi(-2))?;
            Ok((d, re((2.0 * x).exp() / 4.0 * s)))
        })
        .labels(&["11"])
        .param("x", 0.3, 5.0)
        .each(&[0.5, 1.0, PI / 2.0])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ11.1", LAMBERT, "dk/dq = 2 k k'² K²/(q π²), q = e^{-π sqrt r}", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let k_of = |t: f64| Ok(modulus_from_nome(&Nome::from_real(t)?, pol)?.0);
            let d = derivative_real(k_of, q, 0.05 * q, 3)?;
            Ok((d, 2.0 * c.k * c.k_prime * c.k_prime * c.big_k * c.big_k / (q * PI * PI)))
        })
        .labels(&["11.1"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ11.1-PRINTED", LAMBERT, "dk/dq = -2 k k'² K²/(q π²)", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let k_of = |t: f64| Ok(modulus_from_nome(&Nome::from_real(t)?, pol)?.0);
            let d = derivative_real(k_of, q, 0.05 * q, 3)?;
            Ok((d, -2.0 * c.k * c.k_prime * c.k_prime * c.big_k * c.big_k / (q * PI * PI)))
        })
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .mode(CompareMode::Derivative)
        .quarantine("stated with a minus sign; k increases with q, so the sign cannot hold"),
    );
    v.push(
        IdentityCase::new("EQ12", LAMBERT, "Σ 1/sinh²(nx) = -4q d/dq log f(-q), q = e^{-2x}", |p, pol| {
            let x = p["x"];
            let q = (-2.0 * x).exp();
            let lf = |t: f64| Ok(qpochhammer(re(t), &Nome::from_real(t)?, pol)?.value.ln());
            let d = derivative_real(lf, q, 0.1 * q, 3)?;
            let s = rsum(pol, 1, |n| (n * x).sinh().powi(-2))?;
            Ok((re(s), -4.0 * q * d))
        })
        .labels(&["12"])
        .param("x", 0.3, 5.0)
        .each(&[0.5, 1.0, PI / 2.0])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ13",
            HYP,
            "Σ (-1)^n n/(e^{2πn/sqrt r}-1) = 1/8 - sqrt(r)/(4π) + rK(E-K)/(2π²)",
            |p, pol| {
                let r = p["r"];
                let c = ctx_r(r, pol)?;
                let e = ellip_e(c.k)?;
                let lhs = rsum(pol, 1, |n| sign(n) * n / (2.0 * PI * n / r.sqrt()).exp_m1())?;
                Ok((re(lhs), 0.125 - r.sqrt() / (4.0 * PI) + r * c.big_k * (e - c.big_k) / (2.0 * PI * PI)))
            },
        )
        .labels(&["13"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .floor(1.0),
    );
    v.push(
        IdentityCase::new("EQ14", HYP, "α(r) = π/(4K²) - sqrt(r)(E/K - 1) against known α(1..4)", |p, pol| {
            let r = p["r"];
            let s2 = 2f64.sqrt();
            let known = match r as i32 {
                1 => 0.5,
                2 => s2 - 1.0,
                3 => (3f64.sqrt() - 1.0) / 2.0,
                _ => 6.0 - 4.0 * s2,
            };
            Ok((re(alpha(r, pol)?), re(known)))
        })
        .labels(&["14"])
        .param("r", 1.0, 4.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ15", HYP, "E = π/(4 sqrt(r) K) + K(1 - α(r)/sqrt r)", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let a = alpha(r, pol)?;
            let rhs = PI / (4.0 * r.sqrt() * c.big_k) + c.big_k * (1.0 - a / r.sqrt());
            Ok((ellip_e(c.k)?, rhs))
        })
        .labels(&["15"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ16",
            HYP,
            "2Σ n/(e^{4πn/sqrt r}-1) - Σ_{n odd} n/(e^{2πn/sqrt r}-1) = 1/8 - sqrt(r)/(8π) - α(r) sqrt(r) K²/(2π²)",
            |p, pol| {
                let r = p["r"];
                let sr = r.sqrt();
                let c = ctx_r(r, pol)?;
                let a = alpha(r, pol)?;
                let s1 = rsum(pol, 1, |n| n / (4.0 * PI * n / sr).exp_m1())?;
                let s2 = rsum(pol, 0, |j| (2.0 * j + 1.0) / (2.0 * PI * (2.0 * j + 1.0) / sr).exp_m1())?;
                let rhs = 0.125 - sr / (8.0 * PI) - a * sr * c.big_k * c.big_k / (2.0 * PI * PI);
                Ok((re(2.0 * s1 - s2), rhs))
            },
        )
        .labels(&["16"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .floor(1.0),
    );
    v.push(
        IdentityCase::new("EQ17", HYP, "Σ_{n odd} n/(e^{πn}-1) = -1/24 + 16π/Γ(-1/4)^4", |_, pol| {
            let lhs = rsum(pol, 0, |j| (2.0 * j + 1.0) / (PI * (2.0 * j + 1.0)).exp_m1())?;
            Ok((re(lhs), re(-1.0 / 24.0 + 16.0 * PI / gamma(-0.25).powi(4))))
        })
        .labels(&["17"])
        .sample(&[])
        .tol(1e-8),
    );
    v.push(
        IdentityCase::new(
            "T2",
            HYP,
            "1 - 24Σ n/(e^{πn sqrt r}-1) = 6/(π sqrt r) + (1 + k² - 6α/sqrt r) 4K²/π²",
            |p, pol| {
                let r = p["r"];
                let sr = r.sqrt();
                let c = ctx_r(r, pol)?;
                let a = alpha(r, pol)?;
                let lhs = 1.0 - 24.0 * rsum(pol, 1, |n| n / (PI * n * sr).exp_m1())?;
                let rhs = 6.0 / (PI * sr) + (1.0 + c.k * c.k - 6.0 * a / sr) * 4.0 * c.big_k * c.big_k / (PI * PI);
                Ok((re(lhs), rhs))
            },
        )
        .labels(&["18"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ19", HYP, "α(4r) = (1 + k_{4r})² α(r) - 2 sqrt(r) k_{4r}", |p, pol| {
            let r = p["r"];
            let k4 = ctx_r(4.0 * r, pol)?.k;
            let rhs = (1.0 + k4).powi(2) * alpha(r, pol)? - 2.0 * r.sqrt() * k4;
            Ok((re(alpha(4.0 * r, pol)?), rhs))
        })
        .labels(&["19"])
        .param("r", 0.25, 4.0)
        .each(&[0.5, 1.0, 2.0]),
    );
    v.push(
        IdentityCase::new("T3", HYP, "1 + 24Σ_{n odd} n/(e^{πn sqrt r}-1) = 4(1 + k²) K²/π²", |p, pol| {
            let r = p["r"];
            let sr = r.sqrt();
            let c = ctx_r(r, pol)?;
            let lhs = 1.0 + 24.0 * rsum(pol, 0, |j| (2.0 * j + 1.0) / (PI * (2.0 * j + 1.0) * sr).exp_m1())?;
            Ok((re(lhs), 4.0 * (1.0 + c.k * c.k) * c.big_k * c.big_k / (PI * PI)))
        })
        .labels(&["20"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ21", HYP, "α(1/r) = 1/sqrt(r) - α(r)/r", |p, pol| {
            let r = p["r"];
            Ok((re(alpha(1.0 / r, pol)?), re(1.0 / r.sqrt() - alpha(r, pol)? / r)))
        })
        .labels(&["21"])
        .param("r", 0.25, 4.0)
        .each(&[2.0, 3.0, 4.0, 0.5]),
    );
    v.push(
        IdentityCase::new("T4", HYP, "1 - 24Σ_{n odd} n/(e^{ny}+1) = (2K/π)²(1 - 2k²), y = π sqrt r", |p, pol| {
            let r = p["r"];
            let y = PI * r.sqrt();
            let c = ctx_r(r, pol)?;
            let lhs = 1.0 - 24.0 * rsum(pol, 0, |j| (2.0 * j + 1.0) / (((2.0 * j + 1.0) * y).exp() + 1.0))?;
            Ok((re(lhs), (2.0 * c.big_k / PI).powi(2) * (1.0 - 2.0 * c.k * c.k)))
        })
        .labels(&["22"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .floor(1.0),
    );
    v.push(
        IdentityCase::new("T5", HYP, "Σ_{n odd} 1/cosh(nπ sqrt(r)/2) = K k/π", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let lhs = rsum(pol, 0, |j| 1.0 / ((2.0 * j + 1.0) * PI * r.sqrt() / 2.0).cosh())?;
            Ok((re(lhs), c.big_k * c.k / PI))
        })
        .labels(&["23"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .tol(1e-10),
    );
    v.push(
        IdentityCase::new(
            "EQ24",
            HYP,
            "sn/(cn dn) = π tan(πu/2K)/(2k'²K) + (2π/(k'²K)) Σ (-1)^n q^n sin(nπu/K)/(1+q^n)",
            |p, pol| {
                use crate::jacobi::{dn, eval, FourierKind};
                let c = ctx_r(p["r"], pol)?;
                let u = re(p["u"]);
                let q = c.nome.q().re;
                let kk = c.big_k.re;
                let kp2 = (c.k_prime * c.k_prime).re;
                let lhs = eval(FourierKind::Sn, &c, u, pol)? / (eval(FourierKind::Cn, &c, u, pol)? * dn(&c, u, pol)?);
                let s = rsum(pol, 1, |n| sign(n) * q.powf(n) / (1.0 + q.powf(n)) * (n * PI * u.re / kk).sin())?;
                let rhs = PI / (2.0 * kp2 * kk) * (PI * u.re / (2.0 * kk)).tan() + 2.0 * PI / (kp2 * kk) * s;
                Ok((lhs, re(rhs)))
            },
        )
        .labels(&["24"])
        .param("r", 0.25, 16.0)
        .param("u", -1.5, 1.5)
        .sample(&[1.0, 0.4])
        .sample(&[2.0, 0.7])
        .sample(&[3.0, 0.25])
        .sample(&[4.0, -0.6]),
    );
    v.push(
        IdentityCase::new("T6", HYP, "Σ (-1)^n/(e^{(2n+1)π sqrt r}+1) = 1/4 - K k'/(2π)", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let lhs = rsum(pol, 0, |n| sign(n) / (((2.0 * n + 1.0) * PI * r.sqrt()).exp() + 1.0))?;
            Ok((re(lhs), 0.25 - c.big_k * c.k_prime / (2.0 * PI)))
        })
        .labels(&["25"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ26",
            LAMBERT,
            "Σ X(n)/(e^{nx}-1) = Σ e^{-nx} Σ_{d|n} X(d) for X = 1 (kind 0), n (kind 1), χ (kind 2)",
            |p, pol| {
                let spec = match p["kind"] as i32 {
                    0 => ArithmeticFunctionSpec::Constant,
                    1 => ArithmeticFunctionSpec::Power(1),
                    _ => ArithmeticFunctionSpec::chi8(),
                };
                let nome = Nome::from_real(p["q"])?;
                Ok((lambert_sum(&spec, &nome, pol)?.value, lambert_dual(&spec, &nome, pol)?.value))
            },
        )
        .labels(&["26"])
        .param("kind", 0.0, 2.0)
        .param("q", 0.01, 0.6)
        .grid(&[0.0, 1.0, 2.0], &[0.1, 0.3])
        .tol(1e-10),
    );
    v.push(
        IdentityCase::new("EQ27", LAMBERT, "g(x) = Σ 1/(e^{nx}-1) = Σ d(n) q^n, q = e^{-x}", |p, pol| {
            let x = p["x"];
            let q = (-x).exp();
            let g = rsum(pol, 1, |n| 1.0 / (n * x).exp_m1())?;
            let d = rsum(pol, 1, |n| divisor_count(n as u64) as f64 * q.powf(n))?;
            Ok((re(g), re(d)))
        })
        .labels(&["1", "27"])
        .param("x", 0.5, 20.0)
        .each(&[PI, 2.0 * PI, 3.0 * PI])
        .tol(1e-10),
    );
    v.push(
        IdentityCase::new("EQ29", HYP, "1 + 4Σ (-1)^n/(e^{(2n+1)π sqrt r}-1) = 2K/π", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let lhs = 1.0 + 4.0 * rsum(pol, 0, |n| sign(n) / ((2.0 * n + 1.0) * PI * r.sqrt()).exp_m1())?;
            Ok((re(lhs), 2.0 * c.big_k / PI))
        })
        .labels(&["29"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ30",
            HYP,
            "1 + 4Σ_{n≡1 (4)} 1/(e^{nπ sqrt r}-1) - 4Σ_{n≡3 (4)} 1/(e^{nπ sqrt r}-1) = 2K/π",
            |p, pol| {
                let r = p["r"];
                let c = ctx_r(r, pol)?;
                let y = PI * r.sqrt();
                let s1 = rsum(pol, 0, |j| 1.0 / ((4.0 * j + 1.0) * y).exp_m1())?;
                let s3 = rsum(pol, 0, |j| 1.0 / ((4.0 * j + 3.0) * y).exp_m1())?;
                Ok((re(1.0 + 4.0 * s1 - 4.0 * s3), 2.0 * c.big_k / PI))
            },
        )
        .labels(&["30"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("T7", HYP, "Σ n/sinh²(nx) = -2 d/dx Σ 1/(e^{2nx}-1)", |p, pol| {
            let x = p["x"];
            let lhs = rsum(pol, 1, |n| n / (n * x).sinh().powi(2))?;
            let g = |t: f64| Ok(re(rsum(pol, 1, |n| 1.0 / (2.0 * n * t).exp_m1())?));
            let d = derivative_real(g, x, 0.1 * x, 3)?;
            Ok((re(lhs), -2.0 * d))
        })
        .labels(&["31"])
        .param("x", 0.3, 5.0)
        .each(&[0.5, 1.0, 2.0])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ85", LAMBERT, "Π(1+q^n) = 2^{-1/6} q^{-1/24} k^{1/12} k'^{-1/6}", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let prod = qpochhammer(-c.nome.q(), &c.nome, pol)?.value;
            let closed = 2f64.powf(-1.0 / 6.0) * c.nome.pow(-1.0 / 24.0) * c.k.powf(1.0 / 12.0) * c.k_prime.powf(-1.0 / 6.0);
            Ok((prod, closed))
        })
        .labels(&["85"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
}

