//! q-Pochhammer products, arithmetic functions and Lambert series.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::series::{self, SeriesValue, TruncationPolicy};
use crate::{numeric, Error, Nome, Result, C64};

/// `(a; q)_∞ = ∏_{n>=0} (1 - a q^n)`.
pub fn qpochhammer(a: C64, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if nome.is_zero() {
        return Ok(SeriesValue { value: 1.0 - a, terms_used: 1, est_tail: 0.0, converged: true });
    }
    series::product(policy, 0, |n| -a * nome.pow(n as f64))
}

/// Finite `(a; q)_n`.
pub fn qpochhammer_finite(a: C64, nome: &Nome, n: usize) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, k| acc * (1.0 - a * nome.pow(k as f64)))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn divisor_count(n: u64) -> u64 {
    divisors(n).len() as u64
}

pub fn sigma1(n: u64) -> u64 {
    divisors(n).iter().sum()
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut tz = 0;
    while n % 2 == 0 {
        n /= 2;
        tz += 1;
    }
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if tz % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n), n odd positive
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `χ(n) = ((n+2)/8)`: -1, -1, +1, +1 on n ≡ 1, 3, 5, 7 (mod 8), 0 on even n.
pub fn chi8(n: i64) -> i32 {
    kronecker(n + 2, 8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Weight {
    /// 1/A
    Reciprocal,
    /// x^A / A
    XPowerOverA,
    /// y^A / A (second variable of a two-sided sum)
    YPowerOverA,
    /// (-1)^A / A
    AlternatingOverA,
    /// s^A / A with s = ±1
    SignPowerOverA(i8),
}

/// Divisors `A` of `n` restricted by residue class and parity, with a weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueFilter {
    pub modulus: u64,
    pub residues: BTreeSet<u64>,
    pub parity: Option<Parity>,
    pub weight: Weight,
}

impl ResidueFilter {
    pub fn new(modulus: u64, residues: &[i64], weight: Weight) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("residue modulus must be positive"));
        }
        let residues = residues.iter().map(|r| r.rem_euclid(modulus as i64) as u64).collect();
        Ok(ResidueFilter { modulus, residues, parity: None, weight })
    }

    pub fn with_parity(mut self, p: Parity) -> Self {
        self.parity = Some(p);
        self
    }

    pub fn admits(&self, a: u64) -> bool {
        let parity_ok = match self.parity {
            None => true,
            Some(Parity::Odd) => a % 2 == 1,
            Some(Parity::Even) => a % 2 == 0,
        };
        parity_ok && self.residues.contains(&(a % self.modulus))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ArithmeticFunctionSpec {
    Constant,
    /// n^k
    Power(i32),
    /// Kronecker symbol ((n + shift) / modulus)
    Kronecker { shift: i64, modulus: i64 },
    ResidueFiltered(ResidueFilter),
}

impl ArithmeticFunctionSpec {
    pub fn chi8() -> Self {
        ArithmeticFunctionSpec::Kronecker { shift: 2, modulus: 8 }
    }

    /// Pointwise value X(n). Residue-filtered specs are divisor weights, not
    /// point functions.
    pub fn at(&self, n: u64) -> Result<f64> {
        match self {
            ArithmeticFunctionSpec::Constant => Ok(1.0),
            ArithmeticFunctionSpec::Power(k) => Ok((n as f64).powi(*k)),
            ArithmeticFunctionSpec::Kronecker { shift, modulus } => Ok(kronecker(n as i64 + shift, *modulus) as f64),
            ArithmeticFunctionSpec::ResidueFiltered(_) => {
                Err(Error::domain("residue-filtered specs are evaluated through divisor_series"))
            }
        }
    }
}

/// `Σ_{A | n, A admitted} weight(A)`.
pub fn restricted_divisor_weight(n: u64, filter: &ResidueFilter, x: C64, y: C64) -> C64 {
    divisors(n)
        .into_iter()
        .filter(|&a| filter.admits(a))
        .map(|a| {
            let af = a as f64;
            let inv = C64::new(1.0 / af, 0.0);
            match filter.weight {
                Weight::Reciprocal => inv,
                Weight::XPowerOverA => x.powu(a as u32) * inv,
                Weight::YPowerOverA => y.powu(a as u32) * inv,
                Weight::AlternatingOverA => inv * if a % 2 == 0 { 1.0 } else { -1.0 },
                Weight::SignPowerOverA(s) => inv * if s < 0 && a % 2 == 1 { -1.0 } else { 1.0 },
            }
        })
        .sum()
}

/// `Σ_{n>=1} q^n Σ_{A|n} weight(A)`.
pub fn divisor_series(filter: &ResidueFilter, nome: &Nome, x: C64, y: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    series::sum(policy, 1, |n| nome.pow(n as f64) * restricted_divisor_weight(n as u64, filter, x, y))
}

/// `Σ_{n>=1} X(n) q^n / (1 - q^n)`.
pub fn lambert_sum(spec: &ArithmeticFunctionSpec, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    spec.at(1)?;
    series::sum(policy, 1, |n| {
        let qn = nome.pow(n as f64);
        spec.at(n as u64).unwrap_or(0.0) * qn / (1.0 - qn)
    })
}

/// The same series expanded as `Σ_{n>=1} q^n Σ_{d|n} X(d)`.
pub fn lambert_dual(spec: &ArithmeticFunctionSpec, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    spec.at(1)?;
    series::sum(policy, 1, |n| {
        let c: f64 = divisors(n as u64).iter().map(|&d| spec.at(d).unwrap_or(0.0)).sum();
        c * nome.pow(n as f64)
    })
}

/// Bernoulli number `B_j` (with `B_1 = -1/2`) from
/// `Σ_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli(j: usize) -> f64 {
    let mut b = vec![0.0f64; j + 1];
    b[0] = 1.0;
    for m in 1..=j {
        let mut binom = 1.0; // C(m+1, 0)
        let mut s = 0.0;
        for (k, bk) in b.iter().enumerate().take(m) {
            s += binom * bk;
            binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b[m] = -s / (m + 1) as f64;
    }
    b[j]
}

/// `Q_ν = 2 d^ν/dx^ν (1/(e^x + 1))` at `x = 0`.
pub fn q_deriv_q(nu: u32) -> f64 {
    if nu == 0 {
        return 1.0;
    }
    // poles of 1/(e^x+1) sit at ±iπ; radius 2.5 keeps them outside
    2.0 * numeric::cauchy_derivative(|x| 1.0 / (x.exp() + 1.0), C64::new(0.0, 0.0), nu, 2.5, 256).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_factor_law() {
        let p = TruncationPolicy::default();
        let nome = Nome::from_real(0.3).unwrap();
        let a = C64::new(0.2, 0.1);
        let lhs = qpochhammer(a, &nome, &p).unwrap().value;
        let rhs = (1.0 - a) * qpochhammer(a * 0.3, &nome, &p).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn pochhammer_at_zero_nome() {
        let p = TruncationPolicy::default();
        let v = qpochhammer(C64::new(0.25, 0.0), &Nome::ZERO, &p).unwrap();
        assert_eq!(v.value, C64::new(0.75, 0.0));
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(sigma1(12), 28);
        assert_eq!(divisor_count(1), 1);
    }

    #[test]
    fn chi_table() {
        let v: Vec<i32> = (1..=8).map(chi8).collect();
        assert_eq!(v, vec![-1, 0, -1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn jacobi_symbol_examples() {
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(3, 7), -1);
        assert_eq!(kronecker(5, 21), 1);
        assert_eq!(kronecker(6, 9), 0);
    }

    #[test]
    fn bernoulli_values() {
        assert!((bernoulli(1) + 0.5).abs() < 1e-16);
        assert!((bernoulli(6) - 1.0 / 42.0).abs() < 1e-15);
        assert!((bernoulli(10) - 5.0 / 66.0).abs() < 1e-13);
        assert!(bernoulli(7).abs() < 1e-13);
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_deriv_q(0), 1.0);
        assert!((q_deriv_q(1) + 0.5).abs() < 1e-14);
        assert!(q_deriv_q(2).abs() < 1e-14);
        assert!((q_deriv_q(3) - 0.25).abs() < 1e-13);
    }

    #[test]
    fn residue_filter_set_semantics() {
        let f = ResidueFilter::new(4, &[2, -2], Weight::Reciprocal).unwrap();
        assert_eq!(f.residues.len(), 1);
        let w = restricted_divisor_weight(6, &f, C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        // divisors of 6 that are 2 mod 4: 2 and 6
        assert!((w.re - (0.5 + 1.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn residue_spec_is_not_pointwise() {
        let f = ResidueFilter::new(5, &[1], Weight::Reciprocal).unwrap();
        let nome = Nome::from_real(0.1).unwrap();
        assert!(lambert_sum(&ArithmeticFunctionSpec::ResidueFiltered(f), &nome, &TruncationPolicy::default()).is_err());
    }
}
