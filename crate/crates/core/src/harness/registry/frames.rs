use std::f64::consts::PI;

use super::{csum, ctx_z, dtheta, ell, four, re, rsum, sign, theta, zpt, I, ONE};
use crate::angle::{big_u_cf, u0_cf, u0_product, ModularAngleFrame};
use crate::elliptic::EllipticContext;
use crate::harness::{CompareMode, IdentityCase, Point};
use crate::jacobi::{nd, FourierKind::*};
use crate::numeric::{derivative_real, integrate_segment, limit};
use crate::qseries::{divisors, qpochhammer};
use crate::{Error, Nome, Result, TruncationPolicy, C64};

const ANGLE: &str = "modular angles";
const DERIV: &str = "angle derivatives";

fn frame(p: &Point, pol: &TruncationPolicy) -> Result<ModularAngleFrame> {
    ModularAngleFrame::new(p["a"], zpt(p["x"], p["y"]), pol)
}

/// Cases over `(a, x, y)` with `z = x + iy`.
fn axy(c: IdentityCase) -> IdentityCase {
    c.param("a", 0.05, 0.95)
        .param("x", -0.45, 0.45)
        .param("y", 0.2, 2.0)
        .sample(&[0.3, 0.1, 0.4])
        .sample(&[0.6, 0.1, 0.4])
        .sample(&[0.3, -0.2, 0.35])
        .sample(&[0.6, -0.2, 0.35])
}

fn xy(c: IdentityCase) -> IdentityCase {
    c.param("x", -0.45, 0.45)
        .param("y", 0.2, 2.0)
        .sample(&[0.1, 0.4])
        .sample(&[-0.2, 0.35])
        .sample(&[0.0, 0.5])
}

fn nome_y(y: f64) -> Result<Nome> {
    Nome::from_z(C64::new(0.0, y))
}

fn ctx_y(y: f64, pol: &TruncationPolicy) -> Result<EllipticContext> {
    EllipticContext::from_z(C64::new(0.0, y), pol)
}

/// `Σ q^{a(2n+1)} e^{πia(2n+1)}/(1 + q^{2n+1})`.
fn signed_a_sum(nome: &Nome, a: f64, pol: &TruncationPolicy) -> Result<C64> {
    csum(pol, 0, |n| {
        let m = 2.0 * n + 1.0;
        nome.pow(a * m) * (PI * a * m * I).exp() / (ONE + nome.pow(m))
    })
}

/// `Σ q^{a(2n+1)}/(1 - q^{2n+1})`.
fn a_sum(nome: &Nome, a: f64, pol: &TruncationPolicy) -> Result<C64> {
    csum(pol, 0, |n| {
        let m = 2.0 * n + 1.0;
        nome.pow(a * m) / (ONE - nome.pow(m))
    })
}

/// `Σ (-1)^n q^{n+1/2} cos((2n+1)πu/2K)/((2n+1)(1-q^{2n+1}))`.
fn cos_sum(c: &EllipticContext, u: C64, pol: &TruncationPolicy) -> Result<C64> {
    csum(pol, 0, |n| {
        let m = 2.0 * n + 1.0;
        sign(n) * c.nome.pow(n + 0.5) * (m * PI * u / (2.0 * c.big_k)).cos() / (m * (ONE - c.nome.pow(m)))
    })
}

fn count_odd_cofactor(n: u64, above: u64) -> f64 {
    divisors(n).into_iter().filter(|&d| d > above && (n / d) % 2 == 1).count() as f64
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    v.push(
        IdentityCase::new(
            "EQ81",
            ANGLE,
            "e^{-θ(q,a)} = (q^a;q)/(-q^a;q) with θ(q,a) = 2Σ atanh(q^{n+a})",
            |p, pol| {
                let nome = Nome::from_z(zpt(p["x"], p["y"]))?;
                let qa = nome.pow(p["a"]);
                let ratio = qpochhammer(qa, &nome, pol)?.value / qpochhammer(-qa, &nome, pol)?.value;
                Ok((-theta(&nome, p["a"], pol)?, ratio.ln()))
            },
        )
        .labels(&["81", "82"])
        .param("a", 0.05, 5.0)
        .param("x", -0.45, 0.45)
        .param("y", 0.05, 2.0)
        .sample(&[0.5, 0.0, 0.3])
        .sample(&[1.7, 0.0, 0.2])
        .sample(&[0.3, 0.1, 0.4])
        .sample(&[0.6, -0.2, 0.35])
        .mode(CompareMode::Exponentiated),
    );
    v.push(
        IdentityCase::new(
            "EQ83",
            ANGLE,
            "θ(q,a) - θ(q,b) = 2Σ atanh(q^{n+a}) - 2Σ atanh(q^{n+b}) = log L(U(q^a, q^b; q))",
            |p, pol| {
                let nome = Nome::from_real(p["q"])?;
                let (a, b) = (p["a"], p["b"]);
                let u = big_u_cf(nome.pow(a), nome.pow(b), &nome, pol)?.value;
                Ok((theta(&nome, a, pol)? - theta(&nome, b, pol)?, ell(u).ln()))
            },
        )
        .labels(&["83"])
        .param("a", 0.05, 5.0)
        .param("b", 0.05, 5.0)
        .param("q", 0.01, 0.6)
        .sample(&[0.5, 1.0, 0.2])
        .sample(&[0.3, 0.8, 0.1])
        .sample(&[1.5, 0.4, 0.3])
        .mode(CompareMode::Exponentiated),
    );
    v.push(
        IdentityCase::new("EQ83-LEAD", ANGLE, "2θ(q,a) - 2θ(q,b) = log L(U(q^a, q^b; q))", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let (a, b) = (p["a"], p["b"]);
            let u = big_u_cf(nome.pow(a), nome.pow(b), &nome, pol)?.value;
            Ok((2.0 * (theta(&nome, a, pol)? - theta(&nome, b, pol)?), ell(u).ln()))
        })
        .param("a", 0.05, 5.0)
        .param("b", 0.05, 5.0)
        .param("q", 0.01, 0.6)
        .sample(&[0.5, 1.0, 0.2])
        .sample(&[0.3, 0.8, 0.1])
        .mode(CompareMode::Exponentiated)
        .quarantine("leading member carries a spurious factor 2; the arctanh and U members agree"),
    );
    v.push(
        IdentityCase::new("T17.1", ANGLE, "log L(u0(q, q^a)) = 2θ(q,a)", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let a = p["a"];
            let qa = nome.pow(a);
            // the continued fraction needs |q| < |q^a|
            let u0 = if a < 1.0 { u0_cf(qa, &nome, pol)?.value } else { u0_product(qa, &nome, pol)? };
            Ok((ell(u0).ln(), 2.0 * theta(&nome, a, pol)?))
        })
        .labels(&["83.1"])
        .param("a", 0.05, 5.0)
        .param("q", 0.01, 0.6)
        .grid(&[0.5, 1.0, 1.7], &[0.1, (-PI).exp()])
        .mode(CompareMode::Exponentiated),
    );
    v.push(
        IdentityCase::new(
            "EQ86",
            ANGLE,
            "e^{-θ(q,a)} = e^{-2 atanh(q^a)} sqrt(2Kk'/π) Π_{j=1}^{a} (1+q^j)/(1-q^j), integer a",
            |p, pol| {
                let a = p["a"];
                let c = EllipticContext::from_r(p["r"], pol)?;
                let q = c.nome.q();
                let prod: C64 = (1..=a as i32).map(|j| (ONE + q.powi(j)) / (ONE - q.powi(j))).product();
                let qa = q.powi(a as i32);
                let rhs = (-2.0 * qa.atanh()).exp() * (2.0 * c.big_k * c.k_prime / PI).sqrt() * prod;
                Ok(((-theta(&c.nome, a, pol)?).exp(), rhs))
            },
        )
        .labels(&["86"])
        .param("a", 1.0, 6.0)
        .param("r", 0.25, 16.0)
        .grid(&[1.0, 2.0, 3.0], &[1.0, 2.0]),
    );
    v.push(axy(IdentityCase::new("EQ86.1", ANGLE, "q^a = i q^{1/2} e^{iπθ0/2K}, θ0 = -K + (4a-2)zK", |p, pol| {
        let f = frame(p, pol)?;
        let c = &f.ctx;
        Ok((c.nome.pow(f.a), I * c.nome.pow(0.5) * (I * PI * f.theta0 / (2.0 * c.big_k)).exp()))
    }))
    .labels(&["86.1", "99"]));
    v.push(axy(IdentityCase::new(
        "T18",
        ANGLE,
        "Σ (-1)^n q^{n+1/2} cos((2n+1)πθ0/2K)/((2n+1)(1-q^{2n+1})) = θ/(2i) + log(nd(θ0) + m sd(θ0))/(4i)",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let s = cos_sum(c, f.theta0, pol)?;
            let t = nd(c, f.theta0, pol)? + c.k * four(Sd, c, f.theta0, pol)?;
            Ok((4.0 * I * s - 2.0 * theta(&c.nome, f.a, pol)?, t.ln()))
        },
    ))
    .labels(&["87"])
    .mode(CompareMode::Exponentiated));
    v.push(xy(IdentityCase::new(
        "EQ88",
        ANGLE,
        "m(q) = ϑ2²/ϑ3² equals 4 q^{1/2} Π ((1+q^{2n})/(1+q^{2n-1}))^4",
        |p, pol| {
            let c = ctx_z(p["x"], p["y"], pol)?;
            let nome = c.nome;
            let prod = crate::series::product(pol, 1, |n| {
                let n = n as f64;
                ((ONE + nome.pow(2.0 * n)) / (ONE + nome.pow(2.0 * n - 1.0))).powi(4) - ONE
            })?
            .value;
            Ok((c.k, 4.0 * nome.pow(0.5) * prod))
        },
    ))
    .labels(&["88", "89"]));
    v.push(xy(IdentityCase::new("EQ89.1", ANGLE, "m(-q) = i m(q)/m'(q)", |p, pol| {
        let c = ctx_z(p["x"], p["y"], pol)?;
        Ok((c.negated(pol)?.k, I * c.k / c.k_prime))
    }))
    .labels(&["89.1"]));
    v.push(xy(IdentityCase::new("EQ89.2", ANGLE, "i K'/K = 2z with K = K(m), K' = K(m')", |p, pol| {
        let c = ctx_z(p["x"], p["y"], pol)?;
        Ok((I * c.big_k_prime / c.big_k, 2.0 * c.z))
    }))
    .labels(&["89.2"]));
    v.push(axy(IdentityCase::new(
        "EQ90",
        ANGLE,
        "∫_0^{θ0} ss(-q, m't) dt = -(4/m) Σ (-1)^n q^{n+1/2} cos((2n+1)πθ0/2K)/((2n+1)(1-q^{2n+1})) + (4/m) Σ (-1)^n q^{n+1/2}/((2n+1)(1-q^{2n+1}))",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let lhs = ss_integral(&f, pol)?;
            let s0 = cos_sum(c, C64::new(0.0, 0.0), pol)?;
            Ok((lhs, -4.0 / c.k * cos_sum(c, f.theta0, pol)? + 4.0 / c.k * s0))
        },
    ))
    .labels(&["90"]));
    v.push(axy(IdentityCase::new(
        "T19",
        ANGLE,
        "∫_0^{θ0} ss(-q, m't) dt = (i/m) log(e^{2θ}(nd(θ0) + m sd(θ0))) + (4/m) Σ (-1)^n q^{n+1/2}/((2n+1)(1-q^{2n+1}))",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let s0 = cos_sum(c, C64::new(0.0, 0.0), pol)?;
            let lhs = -I * c.k * (ss_integral(&f, pol)? - 4.0 / c.k * s0);
            let t = nd(c, f.theta0, pol)? + c.k * four(Sd, c, f.theta0, pol)?;
            Ok((lhs, 2.0 * theta(&c.nome, f.a, pol)? + t.ln()))
        },
    ))
    .labels(&["91"])
    .mode(CompareMode::Exponentiated));
    v.push(axy(IdentityCase::new(
        "EQ92",
        ANGLE,
        "ss(-q, m'θ0) = -(2π/(mK)) Σ q^{a(2n+1)}/(1-q^{2n+1}) + i cd(θ0)",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let rhs = -2.0 * PI / (c.k * c.big_k) * a_sum(&c.nome, f.a, pol)? + I * four(Cd, c, f.theta0, pol)?;
            Ok((four(Ss, &f.neg, c.k_prime * f.theta0, pol)?, rhs))
        },
    ))
    .labels(&["92"]));
    v.push(axy(IdentityCase::new(
        "T20",
        DERIV,
        "4πiz Σ (-1)^n q^{n+1/2} sin((2n+1)πθ0/2K)/(1-q^{2n+1}) = -θ'(a) - 2zKm cd(θ0)",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let s = csum(pol, 0, |n| {
                let m = 2.0 * n + 1.0;
                sign(n) * c.nome.pow(n + 0.5) * (m * PI * f.theta0 / (2.0 * c.big_k)).sin() / (ONE - c.nome.pow(m))
            })?;
            let rhs = -dtheta(&c.nome, f.a, pol)? - 2.0 * f.z * c.big_k * c.k * four(Cd, c, f.theta0, pol)?;
            Ok((4.0 * PI * I * f.z * s, rhs))
        },
    ))
    .labels(&["93"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new(
        "EQ94",
        DERIV,
        "4πi(z+1/2) Σ q^{n+1/2} sin((2n+1)πθ0'/2K)/(1+q^{2n+1}) = iθ*'(a) - 2(z+1/2)Km cn(θ0'), θ0' = -K + (4a-2)(z+1/2)K",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let zh = f.z + 0.5;
            let t0 = -c.big_k + (4.0 * f.a - 2.0) * zh * c.big_k;
            let s = csum(pol, 0, |n| {
                let m = 2.0 * n + 1.0;
                c.nome.pow(n + 0.5) * (m * PI * t0 / (2.0 * c.big_k)).sin() / (ONE + c.nome.pow(m))
            })?;
            let rhs = I * dtheta(&f.neg.nome, f.a, pol)? - 2.0 * zh * c.big_k * c.k * four(Cn, c, t0, pol)?;
            Ok((4.0 * PI * I * zh * s, rhs))
        },
    ))
    .labels(&["94"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new(
        "T20.1",
        DERIV,
        "ss(q, θ0') = θ*'(a)/((2z+1) m K) + i cn(θ0')",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let t0 = -c.big_k + (4.0 * f.a - 2.0) * (f.z + 0.5) * c.big_k;
            let ds = dtheta(&f.neg.nome, f.a, pol)?;
            Ok((four(Ss, c, t0, pol)?, ds / ((2.0 * f.z + 1.0) * c.k * c.big_k) + I * four(Cn, c, t0, pol)?))
        },
    ))
    .labels(&["95", "95.1"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new("EQ97", DERIV, "dθ0/da = 4zK = 2iK'", |p, pol| {
        let (a, z) = (p["a"], zpt(p["x"], p["y"]));
        let f = frame(p, pol)?;
        let d = derivative_real(|t| Ok(ModularAngleFrame::new(t, z, pol)?.theta0), a, 1e-2, 2)?;
        Ok((d, 2.0 * I * f.ctx.big_k_prime))
    }))
    .labels(&["97"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new("EQ98", DERIV, "Σ q^{a(2n+1)}/(1-q^{2n+1}) = θ'(a)/(4πiz)", |p, pol| {
        let f = frame(p, pol)?;
        let nome = f.ctx.nome;
        Ok((a_sum(&nome, f.a, pol)?, dtheta(&nome, f.a, pol)? / (4.0 * PI * I * f.z)))
    }))
    .labels(&["96", "98"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new(
        "EQ100",
        DERIV,
        "cd1(θ0) = e^{-iπθ0/K} cd(θ0) - sin(πθ0/K) θ'(a)/(mK')",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let w = PI * f.theta0 / c.big_k;
            let rhs = (-I * w).exp() * four(Cd, c, f.theta0, pol)? - w.sin() * dtheta(&c.nome, f.a, pol)? / (c.k * c.big_k_prime);
            Ok((four(Cd1, c, f.theta0, pol)?, rhs))
        },
    ))
    .labels(&["100"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new("EQ101", DERIV, "ss(-q, m'θ0) = θ'(a)/(mK') + i cd(θ0)", |p, pol| {
        let f = frame(p, pol)?;
        let c = &f.ctx;
        let rhs = dtheta(&c.nome, f.a, pol)? / (c.k * c.big_k_prime) + I * four(Cd, c, f.theta0, pol)?;
        Ok((four(Ss, &f.neg, c.k_prime * f.theta0, pol)?, rhs))
    }))
    .labels(&["101"])
    .mode(CompareMode::Derivative));
    v.push(axy(IdentityCase::new(
        "EQ102",
        ANGLE,
        "e^{πia} q^a = -q^{1/2} e^{πiθ0*/(2K*)}, θ0* = 2K*(a - 1 + (2a-1)z)",
        |p, pol| {
            let f = frame(p, pol)?;
            let n = f.ctx.nome;
            let lhs = (PI * f.a * I).exp() * n.pow(f.a);
            Ok((lhs, -n.pow(0.5) * (PI * I * f.theta0_star / (2.0 * f.neg.big_k)).exp()))
        },
    ))
    .labels(&["102"]));
    v.push(axy(IdentityCase::new(
        "EQ103",
        ANGLE,
        "cd1(-q, θ0*) = e^{-iπθ0*/(Km')} cn(q, θ0*/m') - (2πi/(Km)) sin(πθ0*/(Km')) Σ q^{a(2n+1)} e^{πia(2n+1)}/(1+q^{2n+1})",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let w = PI * f.theta0_star / (c.big_k * c.k_prime);
            let rhs = (-I * w).exp() * four(Cn, c, f.theta0_star / c.k_prime, pol)?
                - 2.0 * PI * I / (c.big_k * c.k) * w.sin() * signed_a_sum(&c.nome, f.a, pol)?;
            Ok((four(Cd1, &f.neg, f.theta0_star, pol)?, rhs))
        },
    ))
    .labels(&["103"]));
    let mut e104 = IdentityCase::new("EQ104", ANGLE, "cd(-q, u) = cn(q, u/m')", |p, pol| {
        let c = ctx_z(p["x"], p["y"], pol)?;
        let u = C64::new(p["u"], p["v"]);
        Ok((four(Cd, &c.negated(pol)?, u, pol)?, four(Cn, &c, u / c.k_prime, pol)?))
    })
    .labels(&["104"]);
    let mut e105 = IdentityCase::new(
        "EQ105",
        ANGLE,
        "ss(q, u) = cd(-q, m'u) cot(πu/K) - cd1(-q, m'u) csc(πu/K)",
        |p, pol| {
            let c = ctx_z(p["x"], p["y"], pol)?;
            let n = c.negated(pol)?;
            let u = C64::new(p["u"], p["v"]);
            let w = PI * u / c.big_k;
            let rhs = four(Cd, &n, c.k_prime * u, pol)? * w.cos() / w.sin() - four(Cd1, &n, c.k_prime * u, pol)? / w.sin();
            Ok((four(Ss, &c, u, pol)?, rhs))
        },
    )
    .labels(&["105"]);
    for case in [&mut e104, &mut e105] {
        *case = std::mem::replace(case, IdentityCase::new("", "", "", |_, _| Err(Error::domain("unused"))))
            .param("x", -0.45, 0.45)
            .param("y", 0.2, 2.0)
            .param("u", -4.0, 4.0)
            .param("v", -1.0, 1.0)
            .sample(&[0.1, 0.4, 0.3, 0.1])
            .sample(&[-0.2, 0.35, 0.5, -0.05])
            .sample(&[0.0, 0.5, 0.8, 0.0]);
    }
    v.push(e104);
    v.push(e105);
    v.push(axy(IdentityCase::new(
        "T22",
        ANGLE,
        "ss(q, θ0*/m') = i cn(q, θ0*/m') + (2πi/(mK)) Σ q^{a(2n+1)} e^{πia(2n+1)}/(1+q^{2n+1})",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let h = f.theta0_star / c.k_prime;
            let rhs = I * four(Cn, c, h, pol)? + 2.0 * PI * I / (c.k * c.big_k) * signed_a_sum(&c.nome, f.a, pol)?;
            Ok((four(Ss, c, h, pol)?, rhs))
        },
    ))
    .labels(&["106"]));
    v.push(axy(IdentityCase::new(
        "T23",
        DERIV,
        "θ*'(a) = 2πi(2z-1) Σ q^{a(2n+1)} e^{πia(2n+1)}/(1+q^{2n+1})",
        |p, pol| {
            let f = frame(p, pol)?;
            let n = f.ctx.nome;
            Ok((dtheta(&f.neg.nome, f.a, pol)?, 2.0 * PI * I * (2.0 * f.z - 1.0) * signed_a_sum(&n, f.a, pol)?))
        },
    ))
    .labels(&["107"])
    .mode(CompareMode::Derivative)
    .quarantine("factor (2z-1) should be (2z+1); see EQ121"));
    v.push(axy(IdentityCase::new("EQ108", ANGLE, "θ0*/K* - θ0/K = 2a - 1", |p, pol| {
        let f = frame(p, pol)?;
        Ok((f.theta0_star / f.neg.big_k - f.theta0 / f.ctx.big_k, re(2.0 * f.a - 1.0)))
    }))
    .labels(&["108"])
    .floor(1.0));
    v.push(axy(IdentityCase::new(
        "EQ109",
        DERIV,
        "dθ0*/da = 2K* + 4zK*, and (1/m') dθ0*/da = 2K + 2iK'",
        |p, pol| {
            let (a, z) = (p["a"], zpt(p["x"], p["y"]));
            let f = frame(p, pol)?;
            let d = derivative_real(|t| Ok(ModularAngleFrame::new(t, z, pol)?.theta0_star), a, 1e-2, 2)?;
            let c = &f.ctx;
            let ks = f.neg.big_k;
            let first = (d - (2.0 * ks + 4.0 * z * ks)).norm() / d.norm();
            Ok((d / c.k_prime + first, 2.0 * c.big_k + 2.0 * I * c.big_k_prime))
        },
    ))
    .labels(&["109"])
    .mode(CompareMode::Derivative));
    v.push(
        IdentityCase::new(
            "EQ110",
            ANGLE,
            "at x = 0: Σ q^{a(2n+1)} e^{πia(2n+1)}/(1+q^{2n+1}) = Σ (-q)^{a(2n+1)}/(1+q^{2n+1})",
            |p, pol| {
                let nome = nome_y(p["y"])?;
                let neg = nome.negated();
                let rhs = csum(pol, 0, |n| {
                    let m = 2.0 * n + 1.0;
                    neg.pow(p["a"] * m) / (ONE + nome.pow(m))
                })?;
                Ok((signed_a_sum(&nome, p["a"], pol)?, rhs))
            },
        )
        .labels(&["110"])
        .param("a", 0.05, 5.0)
        .param("y", 0.1, 2.0)
        .grid(&[0.3, 0.6, 1.5], &[0.4, 0.8]),
    );
    v.push(axy(IdentityCase::new(
        "EQ111",
        DERIV,
        "ss(q, θ0*/m') = i cn(q, θ0*/m') + θ*'(a)/(m(-q) K'(-q))",
        |p, pol| {
            let f = frame(p, pol)?;
            let c = &f.ctx;
            let h = f.theta0_star / c.k_prime;
            let ds = dtheta(&f.neg.nome, f.a, pol)?;
            Ok((four(Ss, c, h, pol)?, I * four(Cn, c, h, pol)? + ds / (f.neg.k * f.neg.big_k_prime)))
        },
    ))
    .labels(&["111"])
    .mode(CompareMode::Derivative));
    add_integer_angles(v);
}

fn ss_integral(f: &ModularAngleFrame, pol: &TruncationPolicy) -> Result<C64> {
    let kp = f.ctx.k_prime;
    integrate_segment(
        |t| match four(Ss, &f.neg, kp * t, pol) {
            Err(Error::Strip(m)) => Err(Error::PoleOnPath(m)),
            other => other,
        },
        C64::new(0.0, 0.0),
        f.theta0,
        1e-13,
    )
}

const Y_GRID: &[f64] = &[0.3, 0.5, 1.0];

fn add_integer_angles(v: &mut Vec<IdentityCase>) {
    v.push(
        IdentityCase::new("EQ112", DERIV, "Σ q^{n+1/2}/(1-q^{2n+1}) = -θ'(1/2)/(4πy), q = e^{-2πy}", |p, pol| {
            let y = p["y"];
            let nome = nome_y(y)?;
            let q = nome.q().re;
            let s = rsum(pol, 0, |n| q.powf(n + 0.5) / (1.0 - q.powf(2.0 * n + 1.0)))?;
            Ok((re(s), -dtheta(&nome, 0.5, pol)? / (4.0 * PI * y)))
        })
        .labels(&["112"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ113", DERIV, "lim_{u->K} cd1(u)/(u-K) = 1 - πθ'(1/2)/(2myK²)", |p, pol| {
            let y = p["y"];
            let c = ctx_y(y, pol)?;
            let kk = c.big_k;
            let lim = limit(|d| Ok(four(Cd1, &c, kk + d, pol)? / d), 1e-2 * kk.re, 3)?;
            Ok((lim, ONE - PI * dtheta(&c.nome, 0.5, pol)? / (2.0 * c.k * y * kk * kk)))
        })
        .labels(&["113"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Limit),
    );
    v.push(
        IdentityCase::new("EQ114", DERIV, "Σ 1/(e^{2(2n+1)πy}-1) = -θ'(1)/(4πy)", |p, pol| {
            let y = p["y"];
            let s = rsum(pol, 0, |n| 1.0 / (2.0 * (2.0 * n + 1.0) * PI * y).exp_m1())?;
            Ok((re(s), -dtheta(&nome_y(y)?, 1.0, pol)? / (4.0 * PI * y)))
        })
        .labels(&["114"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ115",
            DERIV,
            "ss(q, -K*/m') = i cn(q, K*/m') + θ*'(1/2)/(m(-q) K'(-q))",
            |p, pol| {
                let c = ctx_y(p["y"], pol)?;
                let n = c.negated(pol)?;
                let h = n.big_k / c.k_prime;
                let ds = dtheta(&n.nome, 0.5, pol)?;
                Ok((four(Ss, &c, -h, pol)?, I * four(Cn, &c, h, pol)? + ds / (n.k * n.big_k_prime)))
            },
        )
        .labels(&["115"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ116", DERIV, "ss(q, K) = -θ*'(1/2)/((1+2iy) m K)", |p, pol| {
            let y = p["y"];
            let c = ctx_y(y, pol)?;
            let ds = dtheta(&c.nome.negated(), 0.5, pol)?;
            Ok((four(Ss, &c, c.big_k, pol)?, -ds / ((ONE + 2.0 * I * y) * c.k * c.big_k)))
        })
        .labels(&["116"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ117",
            DERIV,
            "Σ (-1)^n q^{n+1/2}/(1+q^{2n+1}) = -θ*'(1/2)/(2π(1+2iy))",
            |p, pol| {
                let y = p["y"];
                let nome = nome_y(y)?;
                let q = nome.q().re;
                let s = rsum(pol, 0, |n| sign(n) * q.powf(n + 0.5) / (1.0 + q.powf(2.0 * n + 1.0)))?;
                let ds = dtheta(&nome.negated(), 0.5, pol)?;
                Ok((re(s), -ds / (2.0 * PI * (ONE + 2.0 * I * y))))
            },
        )
        .labels(&["117"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new("EQ118", ANGLE, "at x = 0: θ0*/m' = 2(a-1)K + i(2a-1)K'", |p, pol| {
            let f = ModularAngleFrame::new(p["a"], C64::new(0.0, p["y"]), pol)?;
            let c = &f.ctx;
            Ok((f.h0_star, 2.0 * (f.a - 1.0) * c.big_k + I * (2.0 * f.a - 1.0) * c.big_k_prime))
        })
        .labels(&["118"])
        .param("a", 0.05, 0.95)
        .param("y", 0.2, 2.0)
        .grid(&[0.3, 0.6], &[0.4, 0.8]),
    );
    v.push(
        IdentityCase::new(
            "EQ119",
            DERIV,
            "at x = 0: ss(h0*) = i cn(h0*) + θ*'(a)/((1+2iy) m K)",
            |p, pol| {
                let y = p["y"];
                let f = ModularAngleFrame::new(p["a"], C64::new(0.0, y), pol)?;
                let c = &f.ctx;
                let ds = dtheta(&f.neg.nome, f.a, pol)?;
                let rhs = I * four(Cn, c, f.h0_star, pol)? + ds / ((ONE + 2.0 * I * y) * c.k * c.big_k);
                Ok((four(Ss, c, f.h0_star, pol)?, rhs))
            },
        )
        .labels(&["119"])
        .param("a", 0.05, 0.95)
        .param("y", 0.2, 2.0)
        .grid(&[0.3, 0.6], &[0.4, 0.8])
        .mode(CompareMode::Derivative),
    );
    v.push(axy(IdentityCase::new("EQ120", ANGLE, "h0* = θ0*/m' = 2(a-1)K + i(2a-1)K'", |p, pol| {
        let f = frame(p, pol)?;
        let c = &f.ctx;
        Ok((f.theta0_star / c.k_prime, 2.0 * (f.a - 1.0) * c.big_k + I * (2.0 * f.a - 1.0) * c.big_k_prime))
    }))
    .labels(&["120"]));
    v.push(axy(IdentityCase::new(
        "EQ121",
        DERIV,
        "θ*'(a) = 2πi(1+2z) Σ q^{a(2n+1)} e^{πia(2n+1)}/(1+q^{2n+1})",
        |p, pol| {
            let f = frame(p, pol)?;
            let n = f.ctx.nome;
            Ok((dtheta(&f.neg.nome, f.a, pol)?, 2.0 * PI * I * (1.0 + 2.0 * f.z) * signed_a_sum(&n, f.a, pol)?))
        },
    ))
    .labels(&["121"])
    .mode(CompareMode::Derivative));
    v.push(
        IdentityCase::new(
            "EQ122",
            DERIV,
            "θ'(a) = 2q^a log q/(1-q^{2a}) + 2 log q Σ q^n #{d | n : d > a, n/d odd}, integer a",
            |p, pol| {
                let a = p["a"];
                let nome = Nome::from_real(p["q"])?;
                let q = p["q"];
                let lq = q.ln();
                let s = rsum(pol, 1, |n| q.powf(n) * count_odd_cofactor(n as u64, a as u64))?;
                let rhs = 2.0 * q.powf(a) * lq / (1.0 - q.powf(2.0 * a)) + 2.0 * lq * s;
                Ok((dtheta(&nome, a, pol)?, re(rhs)))
            },
        )
        .labels(&["122"])
        .param("a", 1.0, 6.0)
        .param("q", 0.01, 0.6)
        .grid(&[1.0, 2.0, 3.0], &[0.1, 0.3])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ123",
            DERIV,
            "Σ 1/(e^{2(2n+1)πy}-1) = q/(1-q²) + Σ q^n #{d | n : d > 1, n/d odd}, q = e^{-2πy}",
            |p, pol| {
                let y = p["y"];
                let q = (-2.0 * PI * y).exp();
                let lhs = rsum(pol, 0, |n| 1.0 / (2.0 * (2.0 * n + 1.0) * PI * y).exp_m1())?;
                let s = rsum(pol, 1, |n| q.powf(n) * count_odd_cofactor(n as u64, 1))?;
                Ok((re(lhs), re(q / (1.0 - q * q) + s)))
            },
        )
        .labels(&["123"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID),
    );
    v.push(
        IdentityCase::new("EQ124", DERIV, "θ'(a+1) - θ'(a) = -2q^a log q/(1-q^{2a})", |p, pol| {
            let (a, q) = (p["a"], p["q"]);
            let nome = Nome::from_real(q)?;
            let lhs = dtheta(&nome, a + 1.0, pol)? - dtheta(&nome, a, pol)?;
            Ok((lhs, re(-2.0 * q.powf(a) * q.ln() / (1.0 - q.powf(2.0 * a)))))
        })
        .labels(&["124"])
        .param("a", 0.1, 6.0)
        .param("q", 0.01, 0.6)
        .grid(&[0.5, 1.0, 2.3], &[0.1, 0.3])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ125",
            DERIV,
            "θ'(a) = -2 log q Σ_{n<a} q^n/(1-q^{2n}) + 2 log q Σ_{n>=1} q^n/(1-q^{2n}), integer a",
            |p, pol| {
                let (a, q) = (p["a"], p["q"]);
                let lq = q.ln();
                let t = |n: f64| q.powf(n) / (1.0 - q.powf(2.0 * n));
                let head: f64 = (1..a as usize).map(|n| t(n as f64)).sum();
                let rhs = -2.0 * lq * head + 2.0 * lq * rsum(pol, 1, t)?;
                Ok((dtheta(&Nome::from_real(q)?, a, pol)?, re(rhs)))
            },
        )
        .labels(&["125"])
        .param("a", 1.0, 6.0)
        .param("q", 0.01, 0.6)
        .grid(&[1.0, 2.0, 3.0], &[0.1, 0.3])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ126",
            DERIV,
            "θ'(a)/(2πy) = Σ_{n<a} 1/sinh(2πny) - Σ 1/(e^{2πny}-1) - Σ 1/(e^{2πny}+1), q = e^{-2πy}",
            |p, pol| {
                let (a, y) = (p["a"], p["y"]);
                let t = 2.0 * PI * y;
                let head: f64 = (1..a as usize).map(|n| 1.0 / (t * n as f64).sinh()).sum();
                let s1 = rsum(pol, 1, |n| 1.0 / (t * n).exp_m1())?;
                let s2 = rsum(pol, 1, |n| 1.0 / ((t * n).exp() + 1.0))?;
                Ok((dtheta(&nome_y(y)?, a, pol)? / t, re(head - s1 - s2)))
            },
        )
        .labels(&["126"])
        .param("a", 1.0, 6.0)
        .param("y", 0.1, 2.0)
        .grid(&[1.0, 2.0, 3.0], &[0.3, 0.5])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ127",
            DERIV,
            "θ'(a)/(2πy) = Σ_{n<a} 1/sinh(2πny) - 2Σ_{n>=0} 1/(e^{2π(2n+1)y}-1)",
            |p, pol| {
                let (a, y) = (p["a"], p["y"]);
                let t = 2.0 * PI * y;
                let head: f64 = (1..a as usize).map(|n| 1.0 / (t * n as f64).sinh()).sum();
                let s = rsum(pol, 0, |n| 1.0 / (t * (2.0 * n + 1.0)).exp_m1())?;
                Ok((dtheta(&nome_y(y)?, a, pol)? / t, re(head - 2.0 * s)))
            },
        )
        .labels(&["127"])
        .param("a", 1.0, 6.0)
        .param("y", 0.1, 2.0)
        .grid(&[1.0, 2.0, 3.0], &[0.3, 0.5])
        .mode(CompareMode::Derivative),
    );
    v.push(xy(IdentityCase::new("EQ128", ANGLE, "θ(q, 1/2) = -(1/2) log(m'/(1+m))", |p, pol| {
        let c = ctx_z(p["x"], p["y"], pol)?;
        Ok((-2.0 * theta(&c.nome, 0.5, pol)?, (c.k_prime / (ONE + c.k)).ln()))
    }))
    .labels(&["128"])
    .mode(CompareMode::Exponentiated));
    v.push(
        IdentityCase::new(
            "EQ128.1",
            DERIV,
            "Σ (-1)^n e^{-π(n+1/2)(λ1+iλ2)/λ2}/sinh((n+1/2)π/λ2) = iλ2 θ'(a)/(π sqrt r), λ2 = 1/sqrt r, a = (1+λ1)/2",
            |p, pol| {
                let (lhs, d, r) = lambda_sum(p, pol)?;
                Ok((lhs, I * d / (PI * r.sqrt() * r.sqrt())))
            },
        )
        .labels(&["128.1"])
        .param("r", 0.25, 16.0)
        .param("lambda1", -0.9, 0.9)
        .grid(&[2.0, 3.0], &[0.2, -0.3])
        .mode(CompareMode::Derivative)
        .quarantine("extra factor λ2 on the right; EQ128.1-FIX drops it"),
    );
    v.push(
        IdentityCase::new(
            "EQ128.1-FIX",
            DERIV,
            "Σ (-1)^n e^{-π(n+1/2)(λ1+iλ2)/λ2}/sinh((n+1/2)π/λ2) = i θ'(a)/(π sqrt r), λ2 = 1/sqrt r, a = (1+λ1)/2",
            |p, pol| {
                let (lhs, d, r) = lambda_sum(p, pol)?;
                Ok((lhs, I * d / (PI * r.sqrt())))
            },
        )
        .param("r", 0.25, 16.0)
        .param("lambda1", -0.9, 0.9)
        .grid(&[2.0, 3.0], &[0.2, -0.3])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ129",
            DERIV,
            "Σ e^{-π(n+1/2)(2a-1) sqrt r}/sinh((n+1/2)π sqrt r) = -θ'(a)/(π sqrt r), (2a-1)² + 1/r < 1",
            |p, pol| {
                let (r, a) = (p["r"], p["a"]);
                let y = PI * r.sqrt();
                if (2.0 * a - 1.0).powi(2) + 1.0 / r >= 1.0 {
                    return Err(Error::domain("EQ129 needs (2a-1)² + 1/r < 1"));
                }
                let s = rsum(pol, 0, |n| (-(n + 0.5) * (2.0 * a - 1.0) * y).exp() / ((n + 0.5) * y).sinh())?;
                Ok((re(s), -dtheta(&Nome::from_r(r)?, a, pol)? / y))
            },
        )
        .labels(&["129"])
        .param("r", 1.05, 16.0)
        .param("a", 0.05, 0.95)
        .sample(&[2.0, 0.6])
        .sample(&[4.0, 0.3])
        .sample(&[3.0, 0.55])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ129.1",
            DERIV,
            "integer a: Σ e^{-π(n+1/2)(2a-1) sqrt r}/sinh((n+1/2)π sqrt r) = -Σ_{n<a} 1/sinh(πn sqrt r) + 2Σ 1/(e^{π(2n+1) sqrt r}-1) = -θ'(a)/(π sqrt r)",
            |p, pol| {
                let (r, a) = (p["r"], p["a"]);
                let y = PI * r.sqrt();
                let head: f64 = (1..a as usize).map(|n| 1.0 / (y * n as f64).sinh()).sum();
                let s = rsum(pol, 0, |n| 1.0 / (y * (2.0 * n + 1.0)).exp_m1())?;
                let direct = rsum(pol, 0, |n| (-(n + 0.5) * (2.0 * a - 1.0) * y).exp() / ((n + 0.5) * y).sinh())?;
                let closed = -head + 2.0 * s;
                let th = -dtheta(&Nome::from_r(r)?, a, pol)? / y;
                // all three members must agree
                Ok((re(closed) + (direct - closed), th))
            },
        )
        .labels(&["129.1"])
        .param("r", 0.25, 16.0)
        .param("a", 1.0, 5.0)
        .grid(&[1.0, 2.0], &[1.0, 2.0, 3.0])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ130",
            DERIV,
            "-4πy Σ_{n>=1} q^{n/2}/(1-q^n) = θ'(1/2) + θ'(1), q = e^{-2πy}",
            |p, pol| {
                let y = p["y"];
                let nome = nome_y(y)?;
                let q = nome.q().re;
                let s = rsum(pol, 1, |n| q.powf(n / 2.0) / (1.0 - q.powf(n)))?;
                Ok((re(-4.0 * PI * y * s), dtheta(&nome, 0.5, pol)? + dtheta(&nome, 1.0, pol)?))
            },
        )
        .labels(&["130"])
        .param("y", 0.1, 2.0)
        .each(Y_GRID)
        .mode(CompareMode::Derivative),
    );
}

// (Σ (-1)^n e^{-π(n+1/2)(λ1+iλ2)/λ2}/sinh((n+1/2)π/λ2), θ'(a), r)
fn lambda_sum(p: &Point, pol: &TruncationPolicy) -> Result<(C64, C64, f64)> {
    let (r, l1) = (p["r"], p["lambda1"]);
    let l2 = 1.0 / r.sqrt();
    let w = C64::new(l1, l2) / l2;
    let s = csum(pol, 0, |n| sign(n) * (-PI * (n + 0.5) * w).exp() / ((n + 0.5) * PI / l2).sinh())?;
    let a = (1.0 + l1) / 2.0;
    Ok((s, dtheta(&Nome::from_r(r)?, a, pol)?, r))
}
