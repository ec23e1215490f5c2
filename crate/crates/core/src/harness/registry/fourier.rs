use std::f64::consts::PI;

use super::{csum, ctx_r, four, re, rsum, sign, I, ONE};
use crate::elliptic::ellip_k;
use crate::harness::IdentityCase;
use crate::jacobi::{dn, FourierKind::*};
use crate::C64;

const FOURIER: &str = "Fourier expansions";
const NEG: &str = "sign change of the nome";

const R_GRID: &[f64] = &[1.0, 2.0, 3.0, 4.0];

fn uv(p: &crate::harness::Point) -> C64 {
    C64::new(p["u"], p["v"])
}

fn cot(z: C64) -> C64 {
    z.cos() / z.sin()
}

fn csc(z: C64) -> C64 {
    ONE / z.sin()
}

fn ruv(c: IdentityCase) -> IdentityCase {
    c.param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[3.0, 1.3, 0.3])
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    v.push(ruv(IdentityCase::new("EQ32", FOURIER, "sn² + cn² = 1 from the Fourier series", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let u = uv(p);
        let (s, k) = (four(Sn, &c, u, pol)?, four(Cn, &c, u, pol)?);
        Ok((s * s + k * k, ONE))
    }))
    .labels(&["32", "98.1"]));
    v.push(ruv(IdentityCase::new("EQ32-DN", FOURIER, "k² sn² + dn² = 1, dn = cn/cd", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let u = uv(p);
        let (s, d) = (four(Sn, &c, u, pol)?, dn(&c, u, pol)?);
        Ok((c.k * c.k * s * s + d * d, ONE))
    })));
    v.push(ruv(IdentityCase::new("EQ32-SD", FOURIER, "sd = sn/dn", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let u = uv(p);
        Ok((four(Sd, &c, u, pol)?, four(Sn, &c, u, pol)? / dn(&c, u, pol)?))
    })));
    v.push(ruv(IdentityCase::new(
        "EQ32-CC",
        FOURIER,
        "cc = (2π/(Kk)) q^{1/2} cos(z)/(1 + q^{-1}) + q cn1, z = πu/2K",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = uv(p);
            let z = PI * u / (2.0 * c.big_k);
            let q = c.nome.q();
            let rhs = 2.0 * PI / (c.big_k * c.k) * c.nome.pow(0.5) * z.cos() / (ONE + ONE / q) + q * four(Cn1, &c, u, pol)?;
            Ok((four(Cc, &c, u, pol)?, rhs))
        },
    )));
    v.push(
        IdentityCase::new("EQ32.1", NEG, "sn(-q, u) = i (K k k'/(K* k*)) sd(q, uK/K*)", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            let pre = I * c.big_k * c.k * c.k_prime / (n.big_k * n.k);
            Ok((four(Sn, &n, u, pol)?, pre * four(Sd, &c, u * c.big_k / n.big_k, pol)?))
        })
        .labels(&["32.1"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[3.0, 1.1, 0.0]),
    );
    v.push(
        IdentityCase::new("EQ33", NEG, "K(x) = K(x/(x-1))/sqrt(1-x), K as a function of the parameter x = k²", |p, _| {
            let x = re(p["x"]);
            Ok((ellip_k(x.sqrt())?, ellip_k((x / (x - 1.0)).sqrt())? / (ONE - x).sqrt()))
        })
        .labels(&["33"])
        .param("x", -5.0, 0.95)
        .each(&[0.1, 0.3, 0.5, 0.8])
        .note("parameter convention: K(x) means K with k² = x"),
    );
    v.push(
        IdentityCase::new("EQ34", NEG, "K*/K = k', with K* = K(k*), k* = ik/k'", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let ks = I * c.k / c.k_prime;
            Ok((ellip_k(ks)? / ellip_k(c.k)?, c.k_prime))
        })
        .labels(&["34"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ35", NEG, "sn(-q, u) = k' sd(q, u/k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            Ok((four(Sn, &n, u, pol)?, c.k_prime * four(Sd, &c, u / c.k_prime, pol)?))
        })
        .labels(&["35"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[4.0, 0.6, 0.0]),
    );
    v.push(
        IdentityCase::new("EQ36", FOURIER, "2Σ_{n odd} q^{n/2}/(1+q^n) = Kk/π", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let s = rsum(pol, 0, |j| {
                let n = 2.0 * j + 1.0;
                q.powf(n / 2.0) / (1.0 + q.powf(n))
            })?;
            Ok((re(2.0 * s), c.big_k * c.k / PI))
        })
        .labels(&["36"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("T8", NEG, "2Σ_{m>=1} (-1)^{m-1} q^{(2m-1)/2}/(1-q^{2m-1}) = Kk/π", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let s = rsum(pol, 0, |j| {
                let n = 2.0 * j + 1.0;
                sign(j) * q.powf(n / 2.0) / (1.0 - q.powf(n))
            })?;
            Ok((re(2.0 * s), c.big_k * c.k / PI))
        })
        .labels(&["37"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("T8-SINH", NEG, "Σ (-1)^n/sinh((n+1/2)π sqrt r) = Kk/π", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let s = rsum(pol, 0, |n| sign(n) / ((n + 0.5) * PI * r.sqrt()).sinh())?;
            Ok((re(s), c.big_k * c.k / PI))
        })
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(ruv(IdentityCase::new("EQ39", FOURIER, "ss = cn cot(2z) - cn1 csc(2z), z = πu/2K", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let u = uv(p);
        let z2 = PI * u / c.big_k;
        Ok((four(Ss, &c, u, pol)?, four(Cn, &c, u, pol)? * cot(z2) - four(Cn1, &c, u, pol)? * csc(z2)))
    }))
    .labels(&["38", "39"]));
    v.push(ruv(IdentityCase::new(
        "EQ39-CC",
        FOURIER,
        "ss = cot(2z) cn - q^{-1} csc(2z) cc + π sqrt(q) csc(z)/((1+q) k K)",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = uv(p);
            let z = PI * u / (2.0 * c.big_k);
            let q = c.nome.q();
            let rhs = cot(2.0 * z) * four(Cn, &c, u, pol)? - csc(2.0 * z) * four(Cc, &c, u, pol)? / q
                + PI * q.sqrt() * csc(z) / ((ONE + q) * c.k * c.big_k);
            Ok((four(Ss, &c, u, pol)?, rhs))
        },
    )));
    v.push(
        IdentityCase::new("EQ40", NEG, "cn(-q, u) = cd(q, u/k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            Ok((four(Cn, &n, u, pol)?, four(Cd, &c, u / c.k_prime, pol)?))
        })
        .labels(&["40"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[4.0, 0.6, 0.0]),
    );
    v.push(
        IdentityCase::new("EQ41", NEG, "i K k/(K* k*) = 1", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            Ok((I * c.big_k * c.k / (n.big_k * n.k), ONE))
        })
        .labels(&["41"])
        .param("r", 0.1, 16.0)
        .each(R_GRID),
    );
    v.push(ruv(IdentityCase::new(
        "T9",
        FOURIER,
        "(2π/(Kk)) Σ A^{2n+1}/(1-q^{2n+1}) = -cd cot(πu/K) + cd1 csc(πu/K) + i cd, A = i q^{1/2} e^{iπu/2K}",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let u = uv(p);
            let lhs = a_sum(&c, u, pol)?;
            let w = PI * u / c.big_k;
            let cd = four(Cd, &c, u, pol)?;
            Ok((lhs, -cd * cot(w) + four(Cd1, &c, u, pol)? * csc(w) + I * cd))
        },
    ))
    .labels(&["42"]));
    v.push(ruv(IdentityCase::new(
        "EQ42.1",
        FOURIER,
        "(2π/(Kk)) Σ A^{2n+1}/(1-q^{2n+1}) = i cd(q, u) - ss(-q, u k')",
        |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            Ok((a_sum(&c, u, pol)?, I * four(Cd, &c, u, pol)? - four(Ss, &n, u * c.k_prime, pol)?))
        },
    ))
    .labels(&["42.1"]));
    v.push(
        IdentityCase::new("EQ43", NEG, "cn1(-q, u) = cd1(q, u/k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let n = c.negated(pol)?;
            let u = uv(p);
            Ok((four(Cn1, &n, u, pol)?, four(Cd1, &c, u / c.k_prime, pol)?))
        })
        .labels(&["43"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[4.0, 0.6, 0.0]),
    );
    v.push(
        IdentityCase::new(
            "EQ44",
            NEG,
            "ss(-q, u) = cd(q, u/k') cot(2z/k') - cd1(q, u/k') csc(2z/k'), z = πu/2K",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let n = c.negated(pol)?;
                let u = uv(p);
                let z2 = PI * u / (c.big_k * c.k_prime);
                let w = u / c.k_prime;
                Ok((four(Ss, &n, u, pol)?, four(Cd, &c, w, pol)? * cot(z2) - four(Cd1, &c, w, pol)? * csc(z2)))
            },
        )
        .labels(&["44"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.4, 0.1])
        .sample(&[2.0, 0.9, -0.2])
        .sample(&[4.0, 0.6, 0.0]),
    );
    v.push(
        IdentityCase::new(
            "T10",
            FOURIER,
            "(π/(Kk)) Σ (-1)^n e^{-π sqrt(r)(n+1/2)λ}/sinh((n+1/2)π sqrt r) = cd(λiK') coth(λπ sqrt r) - cd1(λiK') csch(λπ sqrt r) + cd(λiK')",
            |p, pol| {
                let (r, lam) = (p["r"], p["lambda"]);
                let c = ctx_r(r, pol)?;
                let y = PI * r.sqrt();
                let s = rsum(pol, 0, |n| sign(n) * (-y * (n + 0.5) * lam).exp() / ((n + 0.5) * y).sinh())?;
                let u = lam * I * c.big_k_prime;
                let cd = four(Cd, &c, u, pol)?;
                let rhs = cd / (lam * y).tanh() - four(Cd1, &c, u, pol)? / (lam * y).sinh() + cd;
                Ok((PI / (c.big_k * c.k) * s, rhs))
            },
        )
        .labels(&["45"])
        .param("r", 0.25, 16.0)
        .param("lambda", 0.05, 0.95)
        .grid(&[1.0, 2.0], &[0.3, 0.6]),
    );
    v.push(
        IdentityCase::new(
            "T11",
            FOURIER,
            "(2π/(Kk)) Σ q^{(2n+1)(1/2+1/ν)}/(1-q^{2n+1}) = i sn(2iK'/ν) coth(2π sqrt(r)/ν) + i cd1(u1) csch(2π sqrt(r)/ν) + i sn(2iK'/ν), u1 = -K + 2iK'/ν",
            |p, pol| {
                let (r, nu) = (p["r"], p["nu"]);
                let c = ctx_r(r, pol)?;
                let q = c.nome.q().re;
                let s = rsum(pol, 0, |n| {
                    let m = 2.0 * n + 1.0;
                    q.powf(m * (0.5 + 1.0 / nu)) / (1.0 - q.powf(m))
                })?;
                let x = 2.0 * PI * r.sqrt() / nu;
                let sn = four(Sn, &c, 2.0 * I * c.big_k_prime / nu, pol)?;
                let u1 = -c.big_k + 2.0 * I * c.big_k_prime / nu;
                let rhs = I * sn / x.tanh() + I * four(Cd1, &c, u1, pol)? / x.sinh() + I * sn;
                Ok((2.0 * PI / (c.big_k * c.k) * s, rhs))
            },
        )
        .labels(&["46", "47"])
        .param("r", 0.25, 16.0)
        .param("nu", 2.1, 20.0)
        .grid(&[1.0, 2.0], &[3.0, 5.0, 2.5]),
    );
    v.push(ruv(IdentityCase::new("EQ48", FOURIER, "cn(w + K) = -k' sn(w)/dn(w)", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let w = uv(p);
        Ok((four(Cn, &c, w + c.big_k, pol)?, -c.k_prime * four(Sn, &c, w, pol)? / dn(&c, w, pol)?))
    }))
    .labels(&["48"]));
    v.push(ruv(IdentityCase::new("EQ49", FOURIER, "dn(w + K) = k'/dn(w)", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let w = uv(p);
        Ok((dn(&c, w + c.big_k, pol)?, c.k_prime / dn(&c, w, pol)?))
    }))
    .labels(&["49"]));
    v.push(ruv(IdentityCase::new("EQ50", FOURIER, "cd(w + K) = -sn(w)", |p, pol| {
        let c = ctx_r(p["r"], pol)?;
        let w = uv(p);
        Ok((four(Cd, &c, w + c.big_k, pol)?, -four(Sn, &c, w, pol)?))
    }))
    .labels(&["50"]));
}

/// `(2π/(Kk)) Σ A^{2n+1}/(1 - q^{2n+1})`, `A = i q^{1/2} e^{iπu/2K}`.
pub(super) fn a_sum(c: &crate::elliptic::EllipticContext, u: C64, pol: &crate::TruncationPolicy) -> crate::Result<C64> {
    let a = I * c.nome.pow(0.5) * (I * PI * u / (2.0 * c.big_k)).exp();
    let s = csum(pol, 0, |n| {
        let m = 2.0 * n + 1.0;
        a.powi(m as i32) / (ONE - c.nome.pow(m))
    })?;
    Ok(2.0 * PI / (c.big_k * c.k) * s)
}
