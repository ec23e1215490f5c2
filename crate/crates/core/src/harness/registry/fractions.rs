use std::f64::consts::PI;

use super::{csum, ctx_r, ell, four, re, sign, I, ONE};
use crate::angle::{big_u_cf, big_u_product, p_product, u0_cf, u0_product};
use crate::elliptic::EllipticContext;
use crate::harness::{CompareMode, IdentityCase, Point};
use crate::jacobi::{cd_antiderivative_check, nd, FourierKind::*};
use crate::numeric::derivative;
use crate::qseries::{qpochhammer, qpochhammer_finite};
use crate::{Nome, Result, TruncationPolicy, C64};

const CF: &str = "continued fractions";

fn big_a(c: &EllipticContext, t: C64) -> C64 {
    I * c.nome.pow(0.5) * (I * PI * t / (2.0 * c.big_k)).exp()
}

fn uv(p: &Point) -> C64 {
    C64::new(p["u"], p["v"])
}

fn ruv(c: IdentityCase) -> IdentityCase {
    c.param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.45, 0.0])
        .sample(&[2.0, 0.7, 0.1])
        .sample(&[3.0, -0.3, -0.15])
}

/// `d/dt log L(u0(A(t)))` by differences of the continued fraction.
fn dlog_l(c: &EllipticContext, u: C64, pol: &TruncationPolicy) -> Result<C64> {
    let l = |t: C64| Ok(ell(u0_cf(big_a(c, t), &c.nome, pol)?.value));
    Ok(derivative(l, u, 1e-2 * c.big_k.re, 3)? / l(u)?)
}

fn cos_sum(c: &EllipticContext, u: C64, pol: &TruncationPolicy) -> Result<C64> {
    csum(pol, 0, |n| {
        let m = 2.0 * n + 1.0;
        sign(n) * c.nome.pow(n + 0.5) * (m * PI * u / (2.0 * c.big_k)).cos() / (m * (ONE - c.nome.pow(m)))
    })
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    let mut t13 = IdentityCase::new(
        "T13",
        CF,
        "U(a,b;q) as the ratio of q-products equals (a-b)/(1-q+) (a-bq)(aq-b)/(1-q³+) q(a-bq²)(aq²-b)/(1-q⁵+) ...",
        |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let (a, b) = (re(p["a"]), re(p["b"]));
            Ok((big_u_cf(a, b, &nome, pol)?.value, big_u_product(a, b, &nome, pol)?))
        },
    )
    .labels(&["61"])
    .param("a", -0.95, 0.95)
    .param("b", -0.95, 0.95)
    .param("q", 0.0, 0.6)
    .tol(1e-10);
    for (a, b) in [(0.3, 0.1), (0.5, -0.2), (0.2, 0.6)] {
        for q in [0.1, 0.2, 0.3] {
            t13 = t13.sample(&[a, b, q]);
        }
    }
    v.push(t13);
    v.push(
        IdentityCase::new("EQ62", CF, "L(U(a,b;q))² = L(u0(q,a))/L(u0(q,b)), L(u) = -1 + 2/(1-u)", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let (a, b) = (re(p["a"]), re(p["b"]));
            let lhs = ell(big_u_cf(a, b, &nome, pol)?.value).powi(2);
            let rhs = ell(u0_cf(a, &nome, pol)?.value) / ell(u0_cf(b, &nome, pol)?.value);
            Ok((lhs, rhs))
        })
        .labels(&["62"])
        .param("a", -0.95, 0.95)
        .param("b", -0.95, 0.95)
        .param("q", 0.0, 0.6)
        .sample(&[0.5, 0.3, 0.1])
        .sample(&[0.6, -0.4, 0.2])
        .sample(&[0.35, 0.8, 0.3]),
    );
    v.push(
        IdentityCase::new("EQ63", CF, "(z;q)_∞ = Σ (-1)^n q^{n(n-1)/2} z^n/(q;q)_n", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let z = re(p["x"]);
            let q = nome.q();
            let rhs = csum(pol, 0, |n| {
                let k = n as usize;
                sign(n) * nome.pow(n * (n - 1.0) / 2.0) * z.powi(k as i32) / qpochhammer_finite(q, &nome, k)
            })?;
            Ok((qpochhammer(z, &nome, pol)?.value, rhs))
        })
        .labels(&["63"])
        .param("x", -3.0, 3.0)
        .param("q", 0.0, 0.8)
        .grid(&[0.5, -1.5, 2.5], &[0.2, 0.5]),
    );
    let mut u0 = IdentityCase::new(
        "EQ75",
        CF,
        "u0(q,a) = (P-1)/(P+1), P = ((-a;q)/(a;q))², equals 2a/(1-q+) a²(1+q)²/(1-q³+) a²q(1+q²)²/(1-q⁵+) ...",
        |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let a = re(p["a"]);
            Ok((u0_cf(a, &nome, pol)?.value, u0_product(a, &nome, pol)?))
        },
    )
    .labels(&["64", "65", "75"])
    .param("a", -0.95, 0.95)
    .param("q", 0.0, 0.6)
    .tol(1e-10);
    for a in [0.3, 0.5, 0.7] {
        for q in [0.1, 0.2, 0.25] {
            u0 = u0.sample(&[a, q]);
        }
    }
    v.push(u0);
    v.push(
        IdentityCase::new("EQ66", CF, "log L(u0(q,A)) = log P = 4 Σ_n atanh(A q^n)", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let a = re(p["a"]);
            let lhs = ell(u0_cf(a, &nome, pol)?.value).ln();
            let rhs = 4.0 * csum(pol, 0, |n| (a * nome.pow(n)).atanh())?;
            Ok((lhs, rhs))
        })
        .labels(&["66"])
        .param("a", -0.95, 0.95)
        .param("q", 0.0, 0.6)
        .grid(&[0.3, 0.6], &[0.1, 0.25])
        .mode(CompareMode::Exponentiated),
    );
    v.push(
        IdentityCase::new("EQ67", CF, "log P = 4 Σ A^{2n+1}/((2n+1)(1-q^{2n+1}))", |p, pol| {
            let nome = Nome::from_real(p["q"])?;
            let a = C64::new(p["a"], p["b"]);
            let rhs = 4.0 * csum(pol, 0, |n| {
                let m = 2.0 * n + 1.0;
                a.powi(m as i32) / (m * (ONE - nome.pow(m)))
            })?;
            Ok((p_product(a, &nome, pol)?.ln(), rhs))
        })
        .labels(&["67"])
        .param("a", -0.95, 0.95)
        .param("b", -0.95, 0.95)
        .param("q", 0.0, 0.6)
        .sample(&[0.4, 0.0, 0.2])
        .sample(&[0.3, 0.5, 0.1])
        .sample(&[-0.6, 0.2, 0.3])
        .mode(CompareMode::Exponentiated),
    );
    v.push(ruv(IdentityCase::new(
        "EQ68",
        CF,
        "d/dt log L(u0(q,A)) = (2πi/K) Σ A^{2n+1}/(1-q^{2n+1}), A = i q^{1/2} e^{iπt/2K}",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = uv(p);
            let a = big_a(&c, u);
            let s = csum(pol, 0, |n| {
                let m = 2.0 * n + 1.0;
                a.powi(m as i32) / (ONE - c.nome.pow(m))
            })?;
            Ok((dlog_l(&c, u, pol)?, 2.0 * PI * I / c.big_k * s))
        },
    ))
    .labels(&["68"])
    .mode(CompareMode::Derivative));
    v.push(ruv(IdentityCase::new(
        "EQ69",
        CF,
        "d/dt log L(u0(q,A)) = -k cd(q,t) - i k ss(-q, k't)",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            let rhs = -c.k * four(Cd, &c, u, pol)? - I * c.k * four(Ss, &n, c.k_prime * u, pol)?;
            Ok((dlog_l(&c, u, pol)?, rhs))
        },
    ))
    .labels(&["69", "70"])
    .mode(CompareMode::Derivative));
    v.push(ruv(IdentityCase::new(
        "T14",
        CF,
        "log L(u0(q,A)) = -log(nd + k sd) + 4i Σ (-1)^n q^{n+1/2} cos((2n+1)πu/2K)/((2n+1)(1-q^{2n+1}))",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = uv(p);
            let lhs = ell(u0_cf(big_a(&c, u), &c.nome, pol)?.value).ln();
            let t = nd(&c, u, pol)? + c.k * four(Sd, &c, u, pol)?;
            Ok((lhs, -t.ln() + 4.0 * I * cos_sum(&c, u, pol)?))
        },
    ))
    .labels(&["71"])
    .mode(CompareMode::Exponentiated));
    v.push(
        IdentityCase::new("EQ71.0", CF, "k* = ik/k' for the nome -q", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            Ok((c.negated(pol)?.k, I * c.k / c.k_prime))
        })
        .labels(&["71.0"])
        .param("r", 0.1, 16.0)
        .each(&[1.0, 2.0, 3.0, 4.0]),
    );
    v.push(ruv(IdentityCase::new(
        "EQ71.1",
        CF,
        "ss(-q, uk') = (2π/(Kk)) Σ (-1)^n q^{n+1/2} sin((2n+1)πu/2K)/(1-q^{2n+1})",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            let s = csum(pol, 0, |j| {
                let m = 2.0 * j + 1.0;
                sign(j) * c.nome.pow(j + 0.5) * (m * PI * u / (2.0 * c.big_k)).sin() / (ONE - c.nome.pow(m))
            })?;
            Ok((four(Ss, &n, c.k_prime * u, pol)?, 2.0 * PI / (c.big_k * c.k) * s))
        },
    ))
    .labels(&["71.1"]));
    v.push(ruv(IdentityCase::new("EQ72", CF, "∫_0^u cd(t) dt = log(nd(u) + k sd(u))", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let ci = cd_antiderivative_check(&c, uv(p), pol)?;
        Ok((ci.integral, ci.target.ln()))
    }))
    .labels(&["72"])
    .mode(CompareMode::Exponentiated)
    .quarantine("off by the modulus: d/du log(nd + k sd) = k cd; see EQ72-K"));
    v.push(ruv(IdentityCase::new("EQ72-K", CF, "k ∫_0^u cd(t) dt = log(nd(u) + k sd(u))", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let ci = cd_antiderivative_check(&c, uv(p), pol)?;
        Ok((c.k * ci.integral, ci.target.ln()))
    }))
    .mode(CompareMode::Exponentiated));
    v.push(
        IdentityCase::new("EQ73", CF, "Re log L(u0(q,A)) = -log(nd + k sd) for real u", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = re(p["u"]);
            let lhs = ell(u0_cf(big_a(&c, u), &c.nome, pol)?.value).ln().re;
            let t = nd(&c, u, pol)? + c.k * four(Sd, &c, u, pol)?;
            Ok((re(lhs), re(-t.ln().re)))
        })
        .labels(&["73"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .sample(&[1.0, 0.45])
        .sample(&[2.0, 0.7])
        .sample(&[3.0, -1.2])
        .floor(1.0),
    );
    v.push(
        IdentityCase::new(
            "EQ74",
            CF,
            "cd1 = cd cos(πu/K) + (2/k) sin(πu/K) Im[d/du log((-A;q)/(A;q))] for real u",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let u = p["u"];
                let lr = |t: C64| {
                    let a = big_a(&c, t);
                    Ok((qpochhammer(-a, &c.nome, pol)?.value / qpochhammer(a, &c.nome, pol)?.value).ln())
                };
                let d = derivative(lr, re(u), 1e-2 * c.big_k.re, 3)?;
                let w = PI * u / c.big_k.re;
                let rhs = four(Cd, &c, re(u), pol)? * w.cos() + 2.0 / c.k * w.sin() * d.im;
                Ok((four(Cd1, &c, re(u), pol)?, rhs))
            },
        )
        .labels(&["74"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .sample(&[1.0, 0.45])
        .sample(&[2.0, 0.7])
        .sample(&[3.0, -1.2])
        .mode(CompareMode::Derivative),
    );
}
