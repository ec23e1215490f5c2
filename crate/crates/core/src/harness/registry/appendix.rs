use super::{ell, re, rsum, ONE};
use crate::angle::{big_u_cf, u0_cf};
use crate::harness::{CompareMode, IdentityCase, Point};
use crate::qseries::{divisor_series, divisors, qpochhammer, sigma1, ResidueFilter, Weight, Parity};
use crate::theta::{agile, general_theta, ramanujan_quantity_r, rogers_ramanujan, h_sum_from_one, Sign};
use crate::{Error, Nome, Result, TruncationPolicy, C64};

const GEN: &str = "generalized theta";
const LOGS: &str = "divisor-sum logarithms";

fn nq(p: &Point) -> Result<Nome> {
    Nome::from_real(p["q"])
}

/// `ϑ3(p/2, p/2 - a; q)` or the ϑ4 analogue.
fn th(s: Sign, a: f64, p: f64, nome: &Nome, pol: &TruncationPolicy) -> Result<C64> {
    Ok(general_theta(s, p / 2.0, p / 2.0 - a, nome, pol)?.value)
}

fn ag(s: Sign, a: f64, p: f64, nome: &Nome, pol: &TruncationPolicy) -> Result<C64> {
    Ok(agile(a, p, s, nome, pol)?.value)
}

/// `L(U(x, y; q^p))`.
fn lu(x: C64, y: C64, p: f64, nome: &Nome, pol: &TruncationPolicy) -> Result<C64> {
    Ok(ell(big_u_cf(x, y, &nome.scaled(p)?, pol)?.value))
}

/// `Σ_{n>=1} q^n Σ_{AB=n, keep(A,B)} w(A)`.
fn ab_sum(q: f64, pol: &TruncationPolicy, keep: impl Fn(u64, u64) -> bool, w: impl Fn(u64) -> f64) -> Result<f64> {
    rsum(pol, 1, |n| {
        let n = n as u64;
        let c: f64 = divisors(n).into_iter().filter(|&a| keep(a, n / a)).map(&w).sum();
        q.powi(n as i32) * c
    })
}

fn res(b: u64, r: f64, p: f64) -> bool {
    b % p as u64 == (r as i64).rem_euclid(p as i64) as u64
}

fn odd(a: u64) -> bool {
    a % 2 == 1
}

fn inv(a: u64) -> f64 {
    1.0 / a as f64
}

fn alt(a: u64) -> f64 {
    if odd(a) {
        -1.0 / a as f64
    } else {
        1.0 / a as f64
    }
}

fn apq(c: IdentityCase) -> IdentityCase {
    c.param("a", 0.1, 10.0)
        .param("p", 0.5, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 5.0, 0.3])
        .sample(&[2.0, 5.0, 0.2])
        .sample(&[0.7, 3.0, 0.4])
        .sample(&[1.0, 2.0, 0.3])
}

/// Integer `a < p` with `a != p/2`.
fn apq_int(c: IdentityCase) -> IdentityCase {
    c.param("a", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 5.0, 0.3])
        .sample(&[2.0, 5.0, 0.2])
        .sample(&[1.0, 3.0, 0.4])
}

fn q_grid(c: IdentityCase) -> IdentityCase {
    c.param("q", 0.01, 0.6).each(&[0.05, 0.1, 0.3])
}

fn abp_int(c: IdentityCase) -> IdentityCase {
    c.param("a", 1.0, 11.0)
        .param("b", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 2.0, 5.0, 0.3])
        .sample(&[1.0, 3.0, 4.0, 0.2])
        .sample(&[2.0, 4.0, 7.0, 0.4])
}

fn a158(p: &Point, pol: &TruncationPolicy, pp: f64) -> Result<(C64, C64)> {
    let (a, q) = (p["a"], p["q"]);
    let nome = nq(p)?;
    let l = lu(nome.pow(a), -nome.pow(pp - a), pp, &nome, pol)?;
    let s = ab_sum(q, pol, |x, b| odd(x) && (res(b, a, pp) || res(b, -a, pp)), inv)?;
    Ok((l.ln(), re(4.0 * s)))
}

fn a6(p: &Point, pol: &TruncationPolicy, coef: f64) -> Result<(C64, C64)> {
    let (a, b, pp, q) = (p["a"], p["b"], p["p"], p["q"]);
    let nome = nq(p)?;
    let l = lu(nome.pow(a), -nome.pow(b), pp, &nome, pol)?;
    let s = ab_sum(q, pol, |x, y| odd(x) && (res(y, a, pp) || res(y, b, pp)), inv)?;
    Ok((l.ln(), re(coef * s)))
}

fn a8_single(p: &Point, pol: &TruncationPolicy, coef: f64) -> Result<(C64, C64)> {
    let (a, b, pp, q, x) = (p["a"], p["b"], p["p"], p["q"], p["x"]);
    let nome = nq(p)?;
    let l = lu(x * nome.pow(a), -x * nome.pow(b), pp, &nome, pol)?;
    let s = ab_sum(q, pol, |d, y| odd(d) && (res(y, a, pp) || res(y, b, pp)), |d| x.powi(d as i32) / d as f64)?;
    Ok((l.ln(), re(coef * s)))
}

fn a8_double(p: &Point, pol: &TruncationPolicy, coef: f64) -> Result<(C64, C64)> {
    let (a, b, pp, q, x, y) = (p["a"], p["b"], p["p"], p["q"], p["x"], p["y"]);
    let nome = nq(p)?;
    let l = lu(x * nome.pow(a), -y * nome.pow(b), pp, &nome, pol)?;
    let sx = ab_sum(q, pol, |d, e| odd(d) && res(e, a, pp), |d| x.powi(d as i32) / d as f64)?;
    let sy = ab_sum(q, pol, |d, e| odd(d) && res(e, b, pp), |d| y.powi(d as i32) / d as f64)?;
    Ok((l.ln(), re(coef * (sx + sy))))
}

fn a8x(c: IdentityCase) -> IdentityCase {
    c.param("a", 1.0, 11.0)
        .param("b", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("q", 0.01, 0.6)
        .param("x", -1.5, 1.5)
        .sample(&[1.0, 2.0, 5.0, 0.3, 0.5])
        .sample(&[1.0, 3.0, 4.0, 0.2, -0.8])
        .sample(&[2.0, 4.0, 7.0, 0.4, 1.2])
}

fn a8xy(c: IdentityCase) -> IdentityCase {
    c.param("a", 1.0, 11.0)
        .param("b", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("q", 0.01, 0.6)
        .param("x", -1.5, 1.5)
        .param("y", -1.5, 1.5)
        .sample(&[1.0, 2.0, 5.0, 0.3, 0.5, 0.9])
        .sample(&[1.0, 3.0, 4.0, 0.2, -0.8, 0.3])
        .sample(&[2.0, 2.0, 7.0, 0.4, 1.2, -0.6])
}

fn main_a1_dom(c: IdentityCase) -> IdentityCase {
    c.param("x", -3.0, 3.0)
        .param("y", -3.0, 3.0)
        .param("q", 0.01, 0.6)
        .sample(&[0.4, 0.2, 0.25])
        .sample(&[0.1, 0.7, 0.3])
        .sample(&[-0.5, 1.5, 0.2])
}

/// `2 Σ_{n odd} x^n q^n/(n(1-q^n))`.
fn odd_lambert(x: f64, q: f64, pol: &TruncationPolicy) -> Result<f64> {
    rsum(pol, 0, |k| {
        let n = 2.0 * k + 1.0;
        2.0 * (x * q).powf(n) / (n * (1.0 - q.powf(n)))
    })
}

pub(super) fn add(v: &mut Vec<IdentityCase>) {
    v.push(
        IdentityCase::new(
            "A1-131",
            GEN,
            "-1 + 2/(1 - U(q^{k+h}, -q^{k-h}; q^{2k})) = Σ q^{kn²+hn} / Σ (-1)^n q^{kn²+hn}",
            |p, pol| {
                let (k, h) = (p["k"], p["h"]);
                let nome = nq(p)?;
                let l = lu(nome.pow(k + h), -nome.pow(k - h), 2.0 * k, &nome, pol)?;
                let t3 = general_theta(Sign::Plus, k, h, &nome, pol)?.value;
                let t4 = general_theta(Sign::Minus, k, h, &nome, pol)?.value;
                Ok((l, t3 / t4))
            },
        )
        .labels(&["131"])
        .param("k", 0.1, 10.0)
        .param("h", -10.0, 10.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 0.5, 0.3])
        .sample(&[2.5, 1.5, 0.2])
        .sample(&[1.5, -0.5, 0.4]),
    );
    v.push(apq(IdentityCase::new(
        "A1-132",
        GEN,
        "ϑ3(p/2, (p-2a)/2; q) / ϑ4(p/2, (p-2a)/2; q) = -1 + 2/(1 - U(q^a, -q^{p-a}; q^p))",
        |p, pol| {
            let (a, pp) = (p["a"], p["p"]);
            let nome = nq(p)?;
            let l = lu(nome.pow(a), -nome.pow(pp - a), pp, &nome, pol)?;
            Ok((th(Sign::Plus, a, pp, &nome, pol)? / th(Sign::Minus, a, pp, &nome, pol)?, l))
        },
    ))
    .labels(&["132"]));
    v.push(apq(IdentityCase::new("EQ135", GEN, "[a,p;q]^- [a,p;q]^+ = [2a,2p;q]^- = [a,p;q²]^-", |p, pol| {
        let (a, pp) = (p["a"], p["p"]);
        let nome = nq(p)?;
        let lhs = ag(Sign::Minus, a, pp, &nome, pol)? * ag(Sign::Plus, a, pp, &nome, pol)?;
        let mid = ag(Sign::Minus, 2.0 * a, 2.0 * pp, &nome, pol)?;
        let rhs = ag(Sign::Minus, a, pp, &nome.scaled(2.0)?, pol)?;
        Ok((lhs + (mid - rhs), rhs))
    }))
    .labels(&["133", "134", "135"]));
    v.push(
        IdentityCase::new(
            "EQ136",
            GEN,
            "(-1 + 2/(1 - U(q^a, -q^b; q^c)))² = (-1 + 2/(1 - u0(q^a; q^c))) (-1 + 2/(1 - u0(q^b; q^c)))",
            |p, pol| {
                let (a, b, c) = (p["a"], p["b"], p["c"]);
                let nome = nq(p)?;
                let qc = nome.scaled(c)?;
                let l = lu(nome.pow(a), -nome.pow(b), c, &nome, pol)?;
                let r = ell(u0_cf(nome.pow(a), &qc, pol)?.value) * ell(u0_cf(nome.pow(b), &qc, pol)?.value);
                Ok((l * l, r))
            },
        )
        .labels(&["136"])
        .param("a", 0.1, 10.0)
        .param("b", 0.1, 10.0)
        .param("c", 0.2, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 2.0, 3.0, 0.3])
        .sample(&[0.5, 1.5, 2.0, 0.2])
        .sample(&[1.2, 0.4, 2.5, 0.4]),
    );
    v.push(apq(IdentityCase::new(
        "EQ137",
        GEN,
        "([a,p]^-/[a,p]^+)² = ((q^a;q^p)/(-q^a;q^p))² ((q^{p-a};q^p)/(-q^{p-a};q^p))² = (-1 + 2/(1 - U(q^a, -q^{p-a}; q^p)))^{-2}",
        |p, pol| {
            let (a, pp) = (p["a"], p["p"]);
            let nome = nq(p)?;
            let qp = nome.scaled(pp)?;
            let ratio = ag(Sign::Minus, a, pp, &nome, pol)? / ag(Sign::Plus, a, pp, &nome, pol)?;
            let poch = |x: C64| -> Result<C64> { Ok(qpochhammer(x, &qp, pol)?.value / qpochhammer(-x, &qp, pol)?.value) };
            let mid = (poch(nome.pow(a))? * poch(nome.pow(pp - a))?).powi(2);
            let l = lu(nome.pow(a), -nome.pow(pp - a), pp, &nome, pol)?;
            let rhs = l.powi(-2);
            Ok((ratio.powi(2) + (mid - rhs), rhs))
        },
    ))
    .labels(&["137"]));
    v.push(apq(IdentityCase::new(
        "EQ140",
        GEN,
        "[a,p]^-/[a,p]^+ = ϑ4(p/2, (p-2a)/2; q)/ϑ3(p/2, (p-2a)/2; q), with ϑ3(a,b;q) = Σ q^{an²+bn}, ϑ4(a,b;q) = Σ (-1)^n q^{an²+bn}",
        |p, pol| {
            let (a, pp) = (p["a"], p["p"]);
            let nome = nq(p)?;
            let lhs = ag(Sign::Minus, a, pp, &nome, pol)? / ag(Sign::Plus, a, pp, &nome, pol)?;
            Ok((lhs, th(Sign::Minus, a, pp, &nome, pol)? / th(Sign::Plus, a, pp, &nome, pol)?))
        },
    ))
    .labels(&["138", "139", "140"]));
    v.push(apq(IdentityCase::new("A2-141", GEN, "[a,p;q²]^- = (ϑ3/ϑ4)(p/2, (p-2a)/2; q) ([a,p;q]^-)²", |p, pol| {
        let (a, pp) = (p["a"], p["p"]);
        let nome = nq(p)?;
        let lhs = ag(Sign::Minus, a, pp, &nome.scaled(2.0)?, pol)?;
        let t = th(Sign::Plus, a, pp, &nome, pol)? / th(Sign::Minus, a, pp, &nome, pol)?;
        Ok((lhs, t * ag(Sign::Minus, a, pp, &nome, pol)?.powi(2)))
    }))
    .labels(&["141"]));
    v.push(apq(IdentityCase::new("A2-142", GEN, "[a,p;q²]^- = (ϑ4/ϑ3)(p/2, (p-2a)/2; q) ([a,p;q]^+)²", |p, pol| {
        let (a, pp) = (p["a"], p["p"]);
        let nome = nq(p)?;
        let lhs = ag(Sign::Minus, a, pp, &nome.scaled(2.0)?, pol)?;
        let t = th(Sign::Minus, a, pp, &nome, pol)? / th(Sign::Plus, a, pp, &nome, pol)?;
        Ok((lhs, t * ag(Sign::Plus, a, pp, &nome, pol)?.powi(2)))
    }))
    .labels(&["142"]));
    v.push(
        q_grid(IdentityCase::new("EQ143", GEN, "G(q) = Σ q^{n²}/(q;q)_n = 1/[1,5;q]^-", |p, pol| {
            let nome = nq(p)?;
            Ok((rogers_ramanujan(&nome, pol)?.g, ONE / ag(Sign::Minus, 1.0, 5.0, &nome, pol)?))
        }))
        .labels(&["143"])
        .tol(1e-11),
    );
    v.push(
        q_grid(IdentityCase::new(
            "EQ144",
            GEN,
            "G(q²) = (ϑ4/ϑ3)(5/2, -3/2; q) G(q)² = (ϑ4/ϑ3)(5/2, 3/2; q) G(q)²",
            |p, pol| {
                let nome = nq(p)?;
                let g = rogers_ramanujan(&nome, pol)?.g;
                let g2 = rogers_ramanujan(&nome.scaled(2.0)?, pol)?.g;
                let r = |b: f64| -> Result<C64> {
                    Ok(general_theta(Sign::Minus, 2.5, b, &nome, pol)?.value / general_theta(Sign::Plus, 2.5, b, &nome, pol)?.value)
                };
                let (m, pl) = (r(-1.5)? * g * g, r(1.5)? * g * g);
                Ok((g2 + (m - pl), pl))
            },
        ))
        .labels(&["144"]),
    );
    v.push(
        q_grid(IdentityCase::new("EQ145", GEN, "H(q) = Σ_{n>=1} q^{n²+n}/(q;q)_n = 1/[2,5;q]^-", |p, pol| {
            let nome = nq(p)?;
            Ok((h_sum_from_one(&nome, pol)?, ONE / ag(Sign::Minus, 2.0, 5.0, &nome, pol)?))
        }))
        .labels(&["145"])
        .quarantine("the sum from n = 1 omits the n = 0 term 1; see EQ145-N0"),
    );
    v.push(
        q_grid(IdentityCase::new("EQ145-N0", GEN, "H(q) = Σ_{n>=0} q^{n²+n}/(q;q)_n = 1/[2,5;q]^-", |p, pol| {
            let nome = nq(p)?;
            Ok((rogers_ramanujan(&nome, pol)?.h, ONE / ag(Sign::Minus, 2.0, 5.0, &nome, pol)?))
        }))
        .tol(1e-11),
    );
    v.push(
        q_grid(IdentityCase::new(
            "EQ146",
            GEN,
            "H(q²) = 1/[2,5;q²]^- = (ϑ4/ϑ3)(5/2, -1/2; q) H(q)² = (ϑ4/ϑ3)(5/2, 1/2; q) H(q)²",
            |p, pol| {
                let nome = nq(p)?;
                let h = rogers_ramanujan(&nome, pol)?.h;
                let q2 = nome.scaled(2.0)?;
                let h2 = rogers_ramanujan(&q2, pol)?.h;
                let ag2 = ONE / ag(Sign::Minus, 2.0, 5.0, &q2, pol)?;
                let r = |b: f64| -> Result<C64> {
                    Ok(general_theta(Sign::Minus, 2.5, b, &nome, pol)?.value / general_theta(Sign::Plus, 2.5, b, &nome, pol)?.value)
                };
                let (m, pl) = (r(-0.5)? * h * h, r(0.5)? * h * h);
                Ok((h2 + (ag2 - pl) + (m - pl), pl))
            },
        ))
        .labels(&["146"]),
    );
    v.push(
        q_grid(IdentityCase::new("EQ147", GEN, "R(q) = q^{1/5} H(q)/G(q) = q^{1/5} [1,5]^-/[2,5]^-", |p, pol| {
            let nome = nq(p)?;
            let rr = rogers_ramanujan(&nome, pol)?;
            let rhs = nome.pow(0.2) * ag(Sign::Minus, 1.0, 5.0, &nome, pol)? / ag(Sign::Minus, 2.0, 5.0, &nome, pol)?;
            Ok((nome.pow(0.2) * rr.h / rr.g, rhs))
        }))
        .labels(&["147"]),
    );
    v.push(
        q_grid(IdentityCase::new(
            "EQ148",
            GEN,
            "R(q²) = q^{1/5} R(q) ϑ3(5/2, 3/2; q)/ϑ3(5/2, 1/2; q)",
            |p, pol| {
                let nome = nq(p)?;
                let r1 = rogers_ramanujan(&nome, pol)?.r;
                let r2 = rogers_ramanujan(&nome.scaled(2.0)?, pol)?.r;
                let t = general_theta(Sign::Plus, 2.5, 1.5, &nome, pol)?.value / general_theta(Sign::Plus, 2.5, 0.5, &nome, pol)?.value;
                Ok((r2, nome.pow(0.2) * r1 * t))
            },
        ))
        .labels(&["148"]),
    );
    v.push(
        q_grid(IdentityCase::new(
            "EQ149",
            GEN,
            "ϑ3(5/2, 3/2; q)/ϑ3(5/2, 1/2; q) = q^{-1/5} R(q²)/R(q)",
            |p, pol| {
                let nome = nq(p)?;
                let t = general_theta(Sign::Plus, 2.5, 1.5, &nome, pol)?.value / general_theta(Sign::Plus, 2.5, 0.5, &nome, pol)?.value;
                // R from the agile products, independent of the G and H sums
                let r = |n: &Nome| -> Result<C64> {
                    Ok(n.pow(0.2) * ag(Sign::Minus, 1.0, 5.0, n, pol)? / ag(Sign::Minus, 2.0, 5.0, n, pol)?)
                };
                Ok((t, nome.pow(-0.2) * r(&nome.scaled(2.0)?)? / r(&nome)?))
            },
        ))
        .labels(&["149"]),
    );
    let abp_odd = |c: IdentityCase| {
        c.param("a", 1.0, 11.0)
            .param("b", 1.0, 11.0)
            .param("p", 2.0, 12.0)
            .param("q", 0.01, 0.6)
            .sample(&[1.0, 3.0, 6.0, 0.2])
            .sample(&[1.0, 3.0, 8.0, 0.4])
            .sample(&[3.0, 5.0, 10.0, 0.3])
    };
    v.push(
        abp_odd(IdentityCase::new(
            "A3-150",
            GEN,
            "a, b odd, p even, a < b < a+b < p: R(a,b,p;-q) = ϑ3(p/2, (p-2a)/2; q)/ϑ3(p/2, (p-2b)/2; q)",
            |p, pol| {
                let (a, b, pp) = (p["a"], p["b"], p["p"]);
                let nome = nq(p)?;
                let lhs = ramanujan_quantity_r(a, b, pp, &nome.negated(), pol)?;
                Ok((lhs, th(Sign::Plus, a, pp, &nome, pol)? / th(Sign::Plus, b, pp, &nome, pol)?))
            },
        ))
        .labels(&["150"]),
    );
    v.push(
        abp_odd(IdentityCase::new("EQ151", GEN, "R(a,b,p;q²) = R(a,b,p;q) R(a,b,p;-q)", |p, pol| {
            let (a, b, pp) = (p["a"], p["b"], p["p"]);
            let nome = nq(p)?;
            let lhs = ramanujan_quantity_r(a, b, pp, &nome.scaled(2.0)?, pol)?;
            let rhs = ramanujan_quantity_r(a, b, pp, &nome, pol)? * ramanujan_quantity_r(a, b, pp, &nome.negated(), pol)?;
            Ok((lhs, rhs))
        }))
        .labels(&["151"]),
    );
    v.push(
        IdentityCase::new(
            "EQ152",
            GEN,
            "R(a,b,p;q) = [a,p]^-/[b,p]^- = ϑ4(p/2, (p-2a)/2; q)/ϑ4(p/2, (p-2b)/2; q)",
            |p, pol| {
                let (a, b, pp) = (p["a"], p["b"], p["p"]);
                let nome = nq(p)?;
                let lhs = ramanujan_quantity_r(a, b, pp, &nome, pol)?;
                Ok((lhs, th(Sign::Minus, a, pp, &nome, pol)? / th(Sign::Minus, b, pp, &nome, pol)?))
            },
        )
        .labels(&["152", "153"])
        .param("a", 0.1, 10.0)
        .param("b", 0.1, 10.0)
        .param("p", 0.5, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 2.0, 5.0, 0.3])
        .sample(&[1.0, 3.0, 8.0, 0.2])
        .sample(&[0.5, 1.5, 4.0, 0.4]),
    );
    v.push(apq(IdentityCase::new(
        "A4-154",
        GEN,
        "[a,p;q]^+ = ϑ3(p/2, (p-2a)/2; q)/f(-q^p), f(-q) = Π (1-q^n)",
        |p, pol| {
            let (a, pp) = (p["a"], p["p"]);
            let nome = nq(p)?;
            let qp = nome.scaled(pp)?;
            let f = qpochhammer(qp.q(), &qp, pol)?.value;
            Ok((ag(Sign::Plus, a, pp, &nome, pol)?, th(Sign::Plus, a, pp, &nome, pol)? / f))
        },
    ))
    .labels(&["154", "156"]));
    v.push(apq(IdentityCase::new("A4-155", GEN, "[a,p;q]^- = ϑ4(p/2, (p-2a)/2; q)/f(-q^p)", |p, pol| {
        let (a, pp) = (p["a"], p["p"]);
        let nome = nq(p)?;
        let qp = nome.scaled(pp)?;
        let f = qpochhammer(qp.q(), &qp, pol)?.value;
        Ok((ag(Sign::Minus, a, pp, &nome, pol)?, th(Sign::Minus, a, pp, &nome, pol)? / f))
    }))
    .labels(&["155"]));
    v.push(
        apq(IdentityCase::new(
            "A5-157",
            LOGS,
            "ϑ4(p/2, p/2-a; q)/ϑ3(p/2, p/2-a; q) = (-1 + 2/(1 - U(q^a, -q^{p-a}; q^p)))^{-2}",
            |p, pol| {
                let (a, pp) = (p["a"], p["p"]);
                let nome = nq(p)?;
                let l = lu(nome.pow(a), -nome.pow(pp - a), pp, &nome, pol)?;
                Ok((th(Sign::Minus, a, pp, &nome, pol)? / th(Sign::Plus, a, pp, &nome, pol)?, l.powi(-2)))
            },
        ))
        .labels(&["157"])
        .quarantine("exponent -2 should be -1; see A5-157-FIX"),
    );
    v.push(apq(IdentityCase::new(
        "A5-157-FIX",
        LOGS,
        "ϑ4(p/2, p/2-a; q)/ϑ3(p/2, p/2-a; q) = (-1 + 2/(1 - U(q^a, -q^{p-a}; q^p)))^{-1}",
        |p, pol| {
            let (a, pp) = (p["a"], p["p"]);
            let nome = nq(p)?;
            let l = lu(nome.pow(a), -nome.pow(pp - a), pp, &nome, pol)?;
            Ok((th(Sign::Minus, a, pp, &nome, pol)? / th(Sign::Plus, a, pp, &nome, pol)?, l.powi(-1)))
        },
    )));
    v.push(
        IdentityCase::new(
            "A5-158",
            LOGS,
            "p = 2a: log(-1 + 2/(1 - U(q^a, -q^{p-a}; q^p))) = 4 Σ q^n Σ_{AB=n, A odd, B = ±a (p)} 1/A",
            |p, pol| a158(p, pol, 2.0 * p["a"]),
        )
        .labels(&["158"])
        .param("a", 1.0, 6.0)
        .param("q", 0.01, 0.6)
        .grid(&[1.0, 2.0, 3.0], &[0.1, 0.3]),
    );
    v.push(
        IdentityCase::new(
            "A5-158-GEN",
            LOGS,
            "p != 2a: log(-1 + 2/(1 - U(q^a, -q^{p-a}; q^p))) = 4 Σ q^n Σ_{AB=n, A odd, B = ±a (p)} 1/A",
            |p, pol| a158(p, pol, p["p"]),
        )
        .param("a", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 5.0, 0.3])
        .sample(&[2.0, 5.0, 0.2])
        .quarantine("coefficient 4 is twice the true value when a != -a (mod p)"),
    );
    v.push(
        IdentityCase::new(
            "A6-159",
            LOGS,
            "log(-1 + 2/(1 - U(q^a, εq^b; q^p))) = 2 Σ q^n Σ_{AB=n, A odd, B = a (p)} 1/A - 2ε Σ q^n Σ_{AB=n, A odd, B = b (p)} 1/A",
            |p, pol| {
                let (a, b, pp, eps, q) = (p["a"], p["b"], p["p"], p["eps"], p["q"]);
                if eps.abs() != 1.0 {
                    return Err(Error::domain("ε must be +1 or -1"));
                }
                let nome = nq(p)?;
                let l = lu(nome.pow(a), eps * nome.pow(b), pp, &nome, pol)?;
                let sa = ab_sum(q, pol, |x, y| odd(x) && res(y, a, pp), inv)?;
                let sb = ab_sum(q, pol, |x, y| odd(x) && res(y, b, pp), inv)?;
                Ok((l.ln(), re(2.0 * sa - 2.0 * eps * sb)))
            },
        )
        .labels(&["159"])
        .param("a", 1.0, 11.0)
        .param("b", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("eps", -1.0, 1.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 2.0, 5.0, 1.0, 0.3])
        .sample(&[1.0, 2.0, 5.0, -1.0, 0.3])
        .sample(&[2.0, 3.0, 7.0, 1.0, 0.2])
        .sample(&[3.0, 1.0, 4.0, -1.0, 0.4]),
    );
    v.push(apq_int(IdentityCase::new(
        "EQ160",
        LOGS,
        "log ϑ3(p/2, (p-2a)/2; q) - log ϑ4(p/2, (p-2a)/2; q) = 2 Σ q^n Σ_{AB=n, A odd, B = ±a (p)} 1/A",
        |p, pol| {
            let (a, pp, q) = (p["a"], p["p"], p["q"]);
            let nome = nq(p)?;
            let lhs = th(Sign::Plus, a, pp, &nome, pol)?.ln() - th(Sign::Minus, a, pp, &nome, pol)?.ln();
            let s = ab_sum(q, pol, |x, y| odd(x) && (res(y, a, pp) || res(y, -a, pp)), inv)?;
            Ok((lhs, re(2.0 * s)))
        },
    ))
    .labels(&["160"]));
    v.push(
        apq_int(IdentityCase::new(
            "EQ161",
            LOGS,
            "log ϑ3(p/2, p/2-a; q) = Σ q^{pn} σ1(n)/n + Σ q^n Σ_{AB=n, B = ±a (p)} (-1)^A/A",
            |p, pol| eq161(p, pol, 1.0),
        ))
        .labels(&["161"])
        .quarantine("both terms carry the wrong sign; see EQ161-SIGN"),
    );
    v.push(apq_int(IdentityCase::new(
        "EQ161-SIGN",
        LOGS,
        "log ϑ3(p/2, p/2-a; q) = -Σ q^{pn} σ1(n)/n - Σ q^n Σ_{AB=n, B = ±a (p)} (-1)^A/A",
        |p, pol| eq161(p, pol, -1.0),
    )));
    v.push(apq_int(IdentityCase::new(
        "EQ162",
        LOGS,
        "log [a,p;q]^- = -Σ q^n Σ_{AB=n, B = ±a (p)} 1/A",
        |p, pol| {
            let (a, pp, q) = (p["a"], p["p"], p["q"]);
            let nome = nq(p)?;
            let s = ab_sum(q, pol, |_, y| res(y, a, pp) || res(y, -a, pp), inv)?;
            Ok((ag(Sign::Minus, a, pp, &nome, pol)?.ln(), re(-s)))
        },
    ))
    .labels(&["162"]));
    v.push(apq_int(IdentityCase::new(
        "EQ163",
        LOGS,
        "log [a,p;q]^+ = -Σ q^n Σ_{AB=n, B = ±a (p)} (-1)^A/A",
        |p, pol| {
            let (a, pp, q) = (p["a"], p["p"], p["q"]);
            let nome = nq(p)?;
            let s = ab_sum(q, pol, |_, y| res(y, a, pp) || res(y, -a, pp), alt)?;
            Ok((ag(Sign::Plus, a, pp, &nome, pol)?.ln(), re(-s)))
        },
    ))
    .labels(&["163"]));
    v.push(
        abp_int(IdentityCase::new(
            "EQ164",
            LOGS,
            "log(-1 + 2/(1 - U(q^a, -q^b; q^p))) = 4 Σ q^n Σ_{AB=n, A odd, B = a,b (p)} 1/A",
            |p, pol| a6(p, pol, 4.0),
        ))
        .labels(&["164"])
        .quarantine("coefficient 4 is twice the true value; see EQ164-COEF"),
    );
    v.push(abp_int(IdentityCase::new(
        "EQ164-COEF",
        LOGS,
        "log(-1 + 2/(1 - U(q^a, -q^b; q^p))) = 2 Σ q^n Σ_{AB=n, A odd, B = a,b (p)} 1/A",
        |p, pol| a6(p, pol, 2.0),
    )));
    v.push(
        IdentityCase::new(
            "EQ165",
            LOGS,
            "log (±q^a; q^p) = -Σ q^n Σ_{AB=n, B = a (p)} (±1)^A/A",
            |p, pol| {
                let (a, pp, s, q) = (p["a"], p["p"], p["s"], p["q"]);
                if s.abs() != 1.0 {
                    return Err(Error::domain("s must be +1 or -1"));
                }
                let nome = nq(p)?;
                let lhs = qpochhammer(s * nome.pow(a), &nome.scaled(pp)?, pol)?.value.ln();
                let w = |x: u64| s.powi(x as i32) / x as f64;
                Ok((lhs, re(-ab_sum(q, pol, |_, y| res(y, a, pp), w)?)))
            },
        )
        .labels(&["165"])
        .param("a", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("s", -1.0, 1.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 5.0, 1.0, 0.3])
        .sample(&[1.0, 5.0, -1.0, 0.3])
        .sample(&[2.0, 3.0, -1.0, 0.4]),
    );
    v.push(
        IdentityCase::new(
            "A7-166",
            LOGS,
            "log L(U(q^a, εq^b; q^p)) + log L(U(q^{p-a}, εq^{p-b}; q^p)) = log (ϑ3/ϑ4)(p/2, (p-2a)/2) - ε log (ϑ3/ϑ4)(p/2, (p-2b)/2)",
            |p, pol| {
                let (a, b, pp, eps) = (p["a"], p["b"], p["p"], p["eps"]);
                let nome = nq(p)?;
                let l1 = lu(nome.pow(a), eps * nome.pow(b), pp, &nome, pol)?;
                let l2 = lu(nome.pow(pp - a), eps * nome.pow(pp - b), pp, &nome, pol)?;
                let r = |x: f64| -> Result<C64> { Ok((th(Sign::Plus, x, pp, &nome, pol)? / th(Sign::Minus, x, pp, &nome, pol)?).ln()) };
                Ok((l1.ln() + l2.ln(), r(a)? - eps * r(b)?))
            },
        )
        .labels(&["166"])
        .param("a", 1.0, 11.0)
        .param("b", 1.0, 11.0)
        .param("p", 2.0, 12.0)
        .param("eps", -1.0, 1.0)
        .param("q", 0.01, 0.6)
        .sample(&[1.0, 2.0, 5.0, 1.0, 0.3])
        .sample(&[1.0, 2.0, 5.0, -1.0, 0.3])
        .sample(&[2.0, 3.0, 7.0, -1.0, 0.2])
        .mode(CompareMode::Exponentiated),
    );
    v.push(
        a8x(IdentityCase::new(
            "A8-167",
            LOGS,
            "log(-1 + 2/(1 - U(xq^a, -xq^b; q^p))) = Σ q^n Σ_{AB=n, A odd, B = a,b (p)} x^A/A",
            |p, pol| a8_single(p, pol, 1.0),
        ))
        .labels(&["167"])
        .quarantine("missing factor 2; see A8-167-COEF"),
    );
    v.push(a8x(IdentityCase::new(
        "A8-167-COEF",
        LOGS,
        "log(-1 + 2/(1 - U(xq^a, -xq^b; q^p))) = 2 Σ q^n Σ_{AB=n, A odd, B = a,b (p)} x^A/A",
        |p, pol| a8_single(p, pol, 2.0),
    )));
    v.push(
        a8xy(IdentityCase::new(
            "A8-168",
            LOGS,
            "log(-1 + 2/(1 - U(xq^a, -yq^b; q^p))) = Σ q^n Σ_{AB=n, A odd, B = a (p)} x^A/A + Σ q^n Σ_{AB=n, A odd, B = b (p)} y^A/A",
            |p, pol| a8_double(p, pol, 1.0),
        ))
        .labels(&["168"])
        .quarantine("missing factor 2; see A8-168-COEF"),
    );
    v.push(a8xy(IdentityCase::new(
        "A8-168-COEF",
        LOGS,
        "log(-1 + 2/(1 - U(xq^a, -yq^b; q^p))) = 2 Σ q^n Σ_{AB=n, A odd, B = a (p)} x^A/A + 2 Σ q^n Σ_{AB=n, A odd, B = b (p)} y^A/A",
        |p, pol| a8_double(p, pol, 2.0),
    )));
    v.push(
        IdentityCase::new(
            "EQ169",
            LOGS,
            "log((-xq^a; q^p)/(xq^a; q^p)) = 2 Σ q^n Σ_{AB=n, A odd, B = a (p)} x^A/A",
            |p, pol| {
                let (a, pp, q, x) = (p["a"], p["p"], p["q"], p["x"]);
                let nome = nq(p)?;
                let qp = nome.scaled(pp)?;
                let xa = x * nome.pow(a);
                let lhs = (qpochhammer(-xa, &qp, pol)?.value / qpochhammer(xa, &qp, pol)?.value).ln();
                let s = ab_sum(q, pol, |d, e| odd(d) && res(e, a, pp), |d| x.powi(d as i32) / d as f64)?;
                Ok((lhs, re(2.0 * s)))
            },
        )
        .labels(&["169"])
        .param("a", 1.0, 11.0)
        .param("p", 1.0, 12.0)
        .param("q", 0.01, 0.6)
        .param("x", -1.5, 1.5)
        .sample(&[1.0, 5.0, 0.3, 0.5])
        .sample(&[2.0, 3.0, 0.2, -0.9])
        .sample(&[1.0, 1.0, 0.4, 1.2]),
    );
    v.push(
        IdentityCase::new(
            "EQ170",
            LOGS,
            "(-1 + 2/(1 - U(a, -b; q)))² = (-1 + 2/(1 - u0(a, q))) (-1 + 2/(1 - u0(b, q)))",
            |p, pol| {
                let nome = nq(p)?;
                let (a, b) = (re(p["a"]), re(p["b"]));
                let l = ell(big_u_cf(a, -b, &nome, pol)?.value);
                let r = ell(u0_cf(a, &nome, pol)?.value) * ell(u0_cf(b, &nome, pol)?.value);
                Ok((l * l, r))
            },
        )
        .labels(&["170"])
        .param("a", 0.0, 0.95)
        .param("b", 0.0, 0.95)
        .param("q", 0.01, 0.6)
        .sample(&[0.5, 0.3, 0.2])
        .sample(&[0.4, 0.7, 0.1])
        .sample(&[0.8, 0.6, 0.3]),
    );
    v.push(
        main_a1_dom(IdentityCase::new(
            "MAIN-A1",
            LOGS,
            "log(-1 + 2/(1 - U(xq, yq; q))) = 2 Σ q^n Σ_{d|n, d odd} x^d/d - 2 Σ q^n Σ_{d|n, d odd} y^d/d",
            |p, pol| {
                let (x, y) = (p["x"], p["y"]);
                let nome = nq(p)?;
                let q = nome.q();
                let l = ell(big_u_cf(x * q, y * q, &nome, pol)?.value);
                let fx = ResidueFilter::new(2, &[1], Weight::XPowerOverA)?.with_parity(Parity::Odd);
                let fy = ResidueFilter::new(2, &[1], Weight::YPowerOverA)?.with_parity(Parity::Odd);
                let (cx, cy) = (re(x), re(y));
                let rhs = 2.0 * divisor_series(&fx, &nome, cx, cy, pol)?.value - 2.0 * divisor_series(&fy, &nome, cx, cy, pol)?.value;
                Ok((l.ln(), rhs))
            },
        ))
        .labels(&["171"])
        .tol(1e-9),
    );
    v.push(main_a1_dom(IdentityCase::new(
        "MAIN-A1-LAMBERT",
        LOGS,
        "log(-1 + 2/(1 - U(xq, yq; q))) = 2 Σ_{n odd} x^n q^n/(n(1-q^n)) - 2 Σ_{n odd} y^n q^n/(n(1-q^n))",
        |p, pol| {
            let (x, y, q) = (p["x"], p["y"], p["q"]);
            let nome = nq(p)?;
            let l = ell(big_u_cf(re(x * q), re(y * q), &nome, pol)?.value);
            Ok((l.ln(), re(odd_lambert(x, q, pol)? - odd_lambert(y, q, pol)?)))
        },
    )));
}

fn eq161(p: &Point, pol: &TruncationPolicy, sign: f64) -> Result<(C64, C64)> {
    let (a, pp, q) = (p["a"], p["p"], p["q"]);
    let nome = nq(p)?;
    let qp = q.powf(pp);
    let s1 = rsum(pol, 1, |n| qp.powf(n) * sigma1(n as u64) as f64 / n)?;
    let s2 = ab_sum(q, pol, |_, y| res(y, a, pp) || res(y, -a, pp), alt)?;
    Ok((th(Sign::Plus, a, pp, &nome, pol)?.ln(), re(sign * (s1 + s2))))
}
