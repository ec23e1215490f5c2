//! Two-parameter theta functions, agile products and the Rogers–Ramanujan
//! quantities.

use serde::{Deserialize, Serialize};

use crate::qseries::qpochhammer_finite;
use crate::series::{self, SeriesValue, TruncationPolicy};
use crate::{Error, Nome, Result, C64};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `ϑ(a, b; q) = Σ_{n∈Z} s^n q^{an² + bn}` with `s = +1` (ϑ₃-type) or
/// `s = -1` (ϑ₄-type). Needs `a > 0`.
pub fn general_theta(sign: Sign, a: f64, b: f64, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("general theta needs a > 0, got {a}")));
    }
    let s = sign.value();
    let tail = series::sum(policy, 1, |n| {
        let nf = n as f64;
        let sn = if n % 2 == 0 { 1.0 } else { s };
        sn * (nome.pow(a * nf * nf + b * nf) + nome.pow(a * nf * nf - b * nf))
    })?;
    Ok(SeriesValue { value: ONE + tail.value, ..tail })
}

/// Agile product `[a, p; q]^∓ = ∏_{n>=0} (1 ∓ q^{pn+a})(1 ∓ q^{pn+p-a})`.
/// `Sign::Minus` gives the `(1 - ...)` product.
pub fn agile(a: f64, p: f64, sign: Sign, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if !(p > 0.0) {
        return Err(Error::domain(format!("agile product needs p > 0, got {p}")));
    }
    let s = sign.value();
    let v = series::product(policy, 0, |n| {
        let nf = n as f64;
        let x = nome.pow(p * nf + a);
        let y = nome.pow(p * nf + p - a);
        // (1 + s x)(1 + s y) - 1
        s * (x + y) + x * y
    })?;
    if sign == Sign::Minus && v.value.norm() == 0.0 {
        return Err(Error::Pole(format!("[{a},{p}]^- vanishes")));
    }
    Ok(v)
}

/// `R(a, b, p; q) = [a, p]^- / [b, p]^-`.
pub fn ramanujan_quantity_r(a: f64, b: f64, p: f64, nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    let den = agile(b, p, Sign::Minus, nome, policy)?.value;
    Ok(agile(a, p, Sign::Minus, nome, policy)?.value / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RogersRamanujan {
    /// `Σ_{n>=0} q^{n²} / (q;q)_n`
    pub g: C64,
    /// `Σ_{n>=0} q^{n²+n} / (q;q)_n`
    pub h: C64,
    /// `q^{1/5} H / G`
    pub r: C64,
}

fn rr_sum(nome: &Nome, shift: f64, start: usize, policy: &TruncationPolicy) -> Result<C64> {
    let q = nome.q();
    // term_n = q^{n²+shift n} / (q;q)_n, built incrementally
    let mut prev: Option<(usize, C64)> = None;
    let s = series::sum(policy, start, |n| {
        let t = match prev {
            Some((m, t)) if m + 1 == n => t * nome.pow(2.0 * n as f64 - 1.0 + shift) / (ONE - q.powu(n as u32)),
            _ => nome.pow((n * n) as f64 + shift * n as f64) / qpochhammer_finite(q, nome, n),
        };
        prev = Some((n, t));
        t
    })?;
    Ok(s.value)
}

pub fn rogers_ramanujan(nome: &Nome, policy: &TruncationPolicy) -> Result<RogersRamanujan> {
    let g = rr_sum(nome, 0.0, 0, policy)?;
    let h = rr_sum(nome, 1.0, 0, policy)?;
    if g.norm() == 0.0 {
        return Err(Error::Pole("G(q) vanishes".into()));
    }
    Ok(RogersRamanujan { g, h, r: nome.pow(0.2) * h / g })
}

/// The H sum taken from n = 1, without the leading 1.
pub fn h_sum_from_one(nome: &Nome, policy: &TruncationPolicy) -> Result<C64> {
    rr_sum(nome, 1.0, 1, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn general_theta_reduces_to_theta_nulls() {
        use crate::elliptic::{theta_null, ThetaIndex};
        let n = Nome::from_real(0.3).unwrap();
        let t3 = general_theta(Sign::Plus, 1.0, 0.0, &n, &pol()).unwrap().value;
        let t4 = general_theta(Sign::Minus, 1.0, 0.0, &n, &pol()).unwrap().value;
        assert!((t3 - theta_null(ThetaIndex::Three, &n, &pol()).unwrap().value).norm() < 1e-15);
        assert!((t4 - theta_null(ThetaIndex::Four, &n, &pol()).unwrap().value).norm() < 1e-15);
    }

    #[test]
    fn triple_product() {
        // Σ (-1)^n q^{(5n²+3n)/2} = (q, q^4, q^5; q^5)_∞
        let n = Nome::from_real(0.2).unwrap();
        let lhs = general_theta(Sign::Minus, 2.5, 1.5, &n, &pol()).unwrap().value;
        let q5 = n.scaled(5.0).unwrap();
        let e = crate::qseries::qpochhammer(q5.q(), &q5, &pol()).unwrap().value;
        let rhs = agile(1.0, 5.0, Sign::Minus, &n, &pol()).unwrap().value * e;
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn rogers_ramanujan_identities() {
        // G = 1/[1,5]^-, H = 1/[2,5]^-
        let n = Nome::from_real(0.1).unwrap();
        let rr = rogers_ramanujan(&n, &pol()).unwrap();
        let a1 = agile(1.0, 5.0, Sign::Minus, &n, &pol()).unwrap().value;
        let a2 = agile(2.0, 5.0, Sign::Minus, &n, &pol()).unwrap().value;
        assert!((rr.g * a1 - ONE).norm() < 1e-15);
        assert!((rr.h * a2 - ONE).norm() < 1e-15);
        let printed = h_sum_from_one(&n, &pol()).unwrap();
        assert!((printed + ONE - rr.h).norm() < 1e-15);
    }

    #[test]
    fn r_at_e_minus_2pi() {
        // R(e^{-2π}) = sqrt((5+√5)/2) - (1+√5)/2
        let n = Nome::from_r(4.0).unwrap();
        let rr = rogers_ramanujan(&n, &pol()).unwrap();
        let s5 = 5f64.sqrt();
        let exact = ((5.0 + s5) / 2.0).sqrt() - (1.0 + s5) / 2.0;
        assert!((rr.r.re - exact).abs() < 1e-15);
    }
}
