use std::f64::consts::PI;

use super::{csum, ctx_r, four, re, rsum, sign, I, ONE};
use crate::angle::cd1_via_cf;
use crate::harness::{CompareMode, IdentityCase};
use crate::jacobi::{cd1_via_theta_derivative, cd_ext, dn, FourierKind::*};
use crate::numeric::limit;
use crate::{Result, TruncationPolicy, C64};

const CD1: &str = "values of cd1";

const R_GRID: &[f64] = &[1.0, 2.0, 3.0, 4.0];

// S1 and S3 of the quarter-period evaluations
fn s13(q: f64, pol: &TruncationPolicy, shift: f64) -> Result<f64> {
    rsum(pol, 0, |j| {
        let n = 4.0 * j + shift;
        sign(j) * q.powf(n / 2.0) / (1.0 - q.powf(n))
    })
}

fn chi(n: f64) -> f64 {
    match (n as i64).rem_euclid(8) {
        1 | 3 => -1.0,
        5 | 7 => 1.0,
        _ => 0.0,
    }
}

fn lattice_value(c: &crate::elliptic::EllipticContext, m: f64, l: f64) -> C64 {
    let nu1 = 2.0 * l;
    let y = nu1 * PI * (c.big_k_prime / c.big_k).re;
    let s: C64 = (0..l as usize)
        .map(|j| c.nome.pow(j as f64 + 0.5) / (ONE + c.nome.pow(2.0 * j as f64 + 1.0)))
        .sum();
    let e = sign(m / 2.0);
    e * y.exp() - e * y.sinh() * (ONE - 2.0 * PI / (c.big_k * c.k) * s)
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    v.push(
        IdentityCase::new(
            "EQ51",
            CD1,
            "lim_{y->K} cd1(y)/(y-K) = 1 + (2π²/(K²k)) Σ_{n odd} q^{n/2}/(1-q^n)",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let kk = c.big_k;
                let g = |d: f64| Ok(four(Cd1, &c, kk + d, pol)? / d);
                let lim = limit(g, 1e-2 * kk.re, 3)?;
                let q = c.nome.q().re;
                let s = rsum(pol, 0, |j| {
                    let n = 2.0 * j + 1.0;
                    q.powf(n / 2.0) / (1.0 - q.powf(n))
                })?;
                Ok((lim, 1.0 + 2.0 * PI * PI / (kk * kk * c.k) * s))
            },
        )
        .labels(&["51"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .mode(CompareMode::Limit),
    );
    v.push(
        IdentityCase::new("COR2", CD1, "cd1(mK) = 1, 0, -1 for m = 0, 1, 2", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let m = p["m"];
            let expect = [1.0, 0.0, -1.0][m as usize];
            Ok((four(Cd1, &c, m * c.big_k, pol)?, re(expect)))
        })
        .param("r", 0.25, 16.0)
        .param("m", 0.0, 2.0)
        .grid(&[1.0, 3.0], &[0.0, 1.0, 2.0])
        .floor(1.0),
    );
    v.push(
        IdentityCase::new("T12", CD1, "cd1(iK') = 1/(qk) - (sinh(π sqrt r)/k)(1 - π/(2K))", |p, pol| {
            let r = p["r"];
            let c = ctx_r(r, pol)?;
            let lhs = cd1_via_theta_derivative(&c, I * c.big_k_prime, pol)?;
            let rhs = ONE / (c.nome.q() * c.k) - (PI * r.sqrt()).sinh() / c.k * (ONE - PI / (2.0 * c.big_k));
            Ok((lhs, rhs))
        })
        .labels(&["52"])
        .param("r", 0.25, 16.0)
        .each(&[1.0, 2.0, 3.0]),
    );
    v.push(
        IdentityCase::new(
            "EQ53",
            CD1,
            "cd1(iK'/2) = 1/sqrt(qk) - (π sinh(π sqrt(r)/2)/(Kk)) Σ (-1)^n e^{-(n+1/2)π sqrt(r)/2}/sinh((n+1/2)π sqrt r)",
            |p, pol| {
                let r = p["r"];
                let y = PI * r.sqrt();
                let c = ctx_r(r, pol)?;
                let s = rsum(pol, 0, |n| sign(n) * (-(n + 0.5) * y / 2.0).exp() / ((n + 0.5) * y).sinh())?;
                let rhs = ONE / (c.nome.q() * c.k).sqrt() - PI * (y / 2.0).sinh() / (c.big_k * c.k) * s;
                Ok((four(Cd1, &c, I * c.big_k_prime / 2.0, pol)?, rhs))
            },
        )
        .labels(&["53"])
        .param("r", 0.25, 16.0)
        .each(&[1.0, 2.0, 3.0]),
    );
    v.push(
        IdentityCase::new("EQ54", CD1, "cd1(K/2) = 1/sqrt(1+k') - (π sqrt(8)/(Kk)) S1", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let s1 = s13(c.nome.q().re, pol, 1.0)?;
            let rhs = ONE / (ONE + c.k_prime).sqrt() - PI * 8f64.sqrt() / (c.big_k * c.k) * s1;
            Ok((four(Cd1, &c, c.big_k / 2.0, pol)?, rhs))
        })
        .labels(&["54"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ55", CD1, "-Σ χ(n) q^{n/2}/(1-q^n) = Kk/(sqrt(2) π sqrt(1+k'))", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let s = rsum(pol, 1, |n| chi(n) * q.powf(n / 2.0) / (1.0 - q.powf(n)))?;
            Ok((re(-s), c.big_k * c.k / (2f64.sqrt() * PI * (ONE + c.k_prime).sqrt())))
        })
        .labels(&["55"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ56", CD1, "cn(K/2) = sqrt(k')/sqrt(1+k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            Ok((four(Cn, &c, c.big_k / 2.0, pol)?, c.k_prime.sqrt() / (ONE + c.k_prime).sqrt()))
        })
        .labels(&["56"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ56-DN", CD1, "dn(K/2) = sqrt(k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            Ok((dn(&c, c.big_k / 2.0, pol)?, c.k_prime.sqrt()))
        })
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ57", CD1, "cd(K/2) = 1/sqrt(1+k')", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            Ok((four(Cd, &c, c.big_k / 2.0, pol)?, ONE / (ONE + c.k_prime).sqrt()))
        })
        .labels(&["57"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new(
            "EQ58",
            CD1,
            "cd1(K/2) = e^{3πi/4} (2π/(Kk)) Σ q^{n+1/2} e^{3πin/2}/(1-q^{2n+1}) - i cd(K/2)",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let s = csum(pol, 0, |n| {
                    c.nome.pow(n + 0.5) * (1.5 * PI * n * I).exp() / (ONE - c.nome.pow(2.0 * n + 1.0))
                })?;
                let half = c.big_k / 2.0;
                let rhs = (0.75 * PI * I).exp() * 2.0 * PI / (c.big_k * c.k) * s - I * four(Cd, &c, half, pol)?;
                Ok((four(Cd1, &c, half, pol)?, rhs))
            },
        )
        .labels(&["58"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ59", CD1, "S1 + S3 = (sqrt(2)/sqrt(1+k')) Kk/(2π)", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let lhs = s13(q, pol, 1.0)? + s13(q, pol, 3.0)?;
            Ok((re(lhs), 2f64.sqrt() / (ONE + c.k_prime).sqrt() * c.big_k * c.k / (2.0 * PI)))
        })
        .labels(&["59"])
        .param("r", 0.25, 16.0)
        .each(R_GRID),
    );
    v.push(
        IdentityCase::new("EQ60", CD1, "(π sqrt(2)/(Kk)) (S3 - S1) = cd1(K/2)", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let q = c.nome.q().re;
            let d = s13(q, pol, 3.0)? - s13(q, pol, 1.0)?;
            Ok((PI * 2f64.sqrt() / (c.big_k * c.k) * d, four(Cd1, &c, c.big_k / 2.0, pol)?))
        })
        .labels(&["60"])
        .param("r", 0.25, 16.0)
        .each(R_GRID)
        .floor(1e-3),
    );
    v.push(
        IdentityCase::new(
            "EQ76",
            CD1,
            "cd1 = cd cos(πu/K) - i cd sin(πu/K) - (i/k) sin(πu/K) d/du log L(u0(A)), u0 by continued fraction",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let u = C64::new(p["u"], p["v"]);
                Ok((cd1_via_cf(&c, u, pol)?, four(Cd1, &c, u, pol)?))
            },
        )
        .labels(&["76"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.3, 0.0])
        .sample(&[2.0, 0.4, 0.2])
        .sample(&[3.0, 1.1, -0.1])
        .mode(CompareMode::Derivative),
    );
    v.push(
        IdentityCase::new(
            "EQ77",
            CD1,
            "cd1 through the logarithmic derivative of (-A;q)/(A;q), against the Fourier series",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let u = C64::new(p["u"], p["v"]);
                Ok((cd1_via_theta_derivative(&c, u, pol)?, four(Cd1, &c, u, pol)?))
            },
        )
        .labels(&["77"])
        .param("r", 0.5, 16.0)
        .param("u", -4.0, 4.0)
        .param("v", -1.0, 1.0)
        .sample(&[1.0, 0.3, 0.0])
        .sample(&[2.0, 0.4, 0.2])
        .sample(&[3.0, 1.1, -0.1]),
    );
    v.push(
        IdentityCase::new(
            "T17",
            CD1,
            "cd1(mK + ν1 iK') = (-1)^{m/2} e^{ν1π sqrt r} - (-1)^{m/2} sinh(ν1π sqrt r)(1 - (2π/(Kk)) Σ_{j<ν1/2} q^{j+1/2}/(1+q^{2j+1})), m, ν1 even",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let (m, l) = (p["m"], p["l"]);
                let u = m * c.big_k + 2.0 * l * I * c.big_k_prime;
                Ok((cd1_via_theta_derivative(&c, u, pol)?, lattice_value(&c, m, l)))
            },
        )
        .labels(&["78"])
        .param("r", 0.25, 16.0)
        .param("m", -8.0, 8.0)
        .param("l", 1.0, 3.0)
        .sample(&[1.0, 0.0, 1.0])
        .sample(&[1.0, 2.0, 1.0])
        .sample(&[2.0, 2.0, 2.0])
        .sample(&[1.0, -2.0, 1.0])
        .sample(&[3.0, 4.0, 1.0]),
    );
    v.push(
        IdentityCase::new(
            "EQ79",
            CD1,
            "Σ (-1)^n q^{(2n+1)(l+1/2)}/(1-q^{2n+1}) = -Σ_{j<l} q^{j+1/2}/(1+q^{2j+1}) + Kk/(2π)",
            |p, pol| {
                let c = ctx_r(p["r"], pol)?;
                let l = p["l"];
                let q = c.nome.q().re;
                let lhs = rsum(pol, 0, |n| {
                    let m = 2.0 * n + 1.0;
                    sign(n) * q.powf(m * (l + 0.5)) / (1.0 - q.powf(m))
                })?;
                let head: f64 = (0..l as usize)
                    .map(|j| q.powf(j as f64 + 0.5) / (1.0 + q.powf(2.0 * j as f64 + 1.0)))
                    .sum();
                Ok((re(lhs), -head + c.big_k * c.k / (2.0 * PI)))
            },
        )
        .labels(&["79"])
        .param("r", 0.25, 16.0)
        .param("l", 1.0, 5.0)
        .grid(&[1.0, 2.0], &[1.0, 2.0, 3.0])
        .floor(1.0)
        .tol(1e-11),
    );
    v.push(
        IdentityCase::new("EQ80", CD1, "cd(mK + ν1 iK') = (-1)^{m/2} for even m and ν1", |p, pol| {
            let c = ctx_r(p["r"], pol)?;
            let (m, l) = (p["m"], p["l"]);
            let u = m * c.big_k + 2.0 * l * I * c.big_k_prime;
            Ok((cd_ext(&c, u, pol)?, re(sign(m / 2.0))))
        })
        .labels(&["80"])
        .param("r", 0.25, 16.0)
        .param("m", -8.0, 8.0)
        .param("l", 0.0, 3.0)
        .sample(&[1.0, 0.0, 1.0])
        .sample(&[2.0, 2.0, 1.0])
        .sample(&[1.0, -2.0, 2.0]),
    );
}
