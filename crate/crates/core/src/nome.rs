//! The nome `q = exp(2πiz)`, stored through `z`.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nome {
    // None encodes q = 0
    z: Option<C64>,
}

const I: C64 = C64 { re: 0.0, im: 1.0 };

impl Nome {
    pub const ZERO: Nome = Nome { z: None };

    /// From `z` with `Im z > 0`.
    pub fn from_z(z: C64) -> Result<Self> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::domain(format!("Im z must be positive, got z = {z}")));
        }
        Ok(Nome { z: Some(z) })
    }

    /// From `q` with `|q| < 1`. The principal logarithm fixes `z`, so a negative
    /// real `q` gets `Re z = 1/2`.
    pub fn from_q(q: C64) -> Result<Self> {
        let m = q.norm();
        if !(m < 1.0) {
            return Err(Error::domain(format!("|q| must be below 1, got |q| = {m}")));
        }
        if m == 0.0 {
            return Ok(Self::ZERO);
        }
        let z = C64::new(q.arg() / (2.0 * PI), -m.ln() / (2.0 * PI));
        Self::from_z(z)
    }

    pub fn from_real(q: f64) -> Result<Self> {
        Self::from_q(C64::new(q, 0.0))
    }

    /// `q = exp(-π sqrt r)`, i.e. `z = i sqrt(r) / 2`.
    pub fn from_r(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("r must be positive, got {r}")));
        }
        Self::from_z(C64::new(0.0, r.sqrt() / 2.0))
    }

    pub fn z(&self) -> Option<C64> {
        self.z
    }

    pub fn z_or_err(&self) -> Result<C64> {
        self.z.ok_or_else(|| Error::domain("operation needs q != 0"))
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_none()
    }

    pub fn q(&self) -> C64 {
        self.pow(1.0)
    }

    /// `q^s = exp(2πizs)`. For `q = 0`, `q^0 = 1` and positive powers vanish.
    pub fn pow(&self, s: f64) -> C64 {
        match self.z {
            None if s == 0.0 => C64::new(1.0, 0.0),
            None if s > 0.0 => C64::new(0.0, 0.0),
            None => C64::new(f64::INFINITY, 0.0),
            Some(z) => (2.0 * PI * I * z * s).exp(),
        }
    }

    pub fn powc(&self, s: C64) -> C64 {
        match self.z {
            None if s == C64::new(0.0, 0.0) => C64::new(1.0, 0.0),
            None if s.re > 0.0 => C64::new(0.0, 0.0),
            None => C64::new(f64::INFINITY, 0.0),
            Some(z) => (2.0 * PI * I * z * s).exp(),
        }
    }

    /// `log q = 2πiz`.
    pub fn ln(&self) -> Result<C64> {
        Ok(2.0 * PI * I * self.z_or_err()?)
    }

    pub fn abs(&self) -> f64 {
        match self.z {
            None => 0.0,
            Some(z) => (-2.0 * PI * z.im).exp(),
        }
    }

    /// `-q`, realised as `z -> z + 1/2`.
    pub fn negated(&self) -> Self {
        Nome { z: self.z.map(|z| z + 0.5) }
    }

    /// `q^p` as a nome (`z -> p z`), `p > 0`.
    pub fn scaled(&self, p: f64) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::domain(format!("nome power must be positive, got {p}")));
        }
        Ok(Nome { z: self.z.map(|z| z * p) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_nome_roundtrip() {
        let n = Nome::from_real(0.3).unwrap();
        assert!((n.q() - C64::new(0.3, 0.0)).norm() < 1e-15);
        assert!(n.z().unwrap().re.abs() < 1e-15);
    }

    #[test]
    fn negative_nome_has_half_shift() {
        let n = Nome::from_real(-0.2).unwrap();
        assert!((n.z().unwrap().re - 0.5).abs() < 1e-15);
        assert!((n.q() - C64::new(-0.2, 0.0)).norm() < 1e-15);
        let m = Nome::from_real(0.2).unwrap().negated();
        assert!((m.q() - C64::new(-0.2, 0.0)).norm() < 1e-15);
        // (-q)^(1/2) = i q^(1/2)
        let h = m.pow(0.5);
        assert!((h - C64::new(0.0, 0.2f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn r_nome() {
        let n = Nome::from_r(4.0).unwrap();
        assert!((n.q().re - (-2.0 * PI).exp()).abs() < 1e-18);
    }

    #[test]
    fn rejects_outside_disc() {
        assert!(Nome::from_real(1.0).is_err());
        assert!(Nome::from_z(C64::new(0.1, -0.1)).is_err());
        assert!(Nome::from_real(0.0).unwrap().is_zero());
    }
}
