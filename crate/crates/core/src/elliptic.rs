//! AGM, complete elliptic integrals, theta nulls and the per-nome context.

use std::f64::consts::PI;

use crate::qseries::qpochhammer;
use crate::series::{self, SeriesValue, TruncationPolicy};
use crate::{Error, Nome, Result, C64};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Arithmetic-geometric mean with the right choice of square root at every step
/// (`|a - b| <= |a + b|`).
pub fn agm(a: C64, b: C64) -> Result<C64> {
    agm_steps(a, b).map(|(m, _)| m)
}

// returns the mean and the c_n = (a_{n-1} - b_{n-1}) / 2 sequence
fn agm_steps(mut a: C64, mut b: C64) -> Result<(C64, Vec<C64>)> {
    if a == C64::new(0.0, 0.0) || b == C64::new(0.0, 0.0) {
        return Ok((C64::new(0.0, 0.0), Vec::new()));
    }
    let mut cs = Vec::new();
    for _ in 0..64 {
        if (a - b).norm() <= 1e-15 * a.norm() {
            return Ok((a, cs));
        }
        let a1 = (a + b) * 0.5;
        let mut b1 = (a * b).sqrt();
        if (a1 - b1).norm() > (a1 + b1).norm() {
            b1 = -b1;
        }
        cs.push((a - b) * 0.5);
        a = a1;
        b = b1;
    }
    Ok((a, cs))
}

fn on_cut(k: C64) -> bool {
    k.im == 0.0 && k.re.abs() >= 1.0
}

/// `K(k) = π / (2 AGM(1, sqrt(1 - k²)))`, principal branch.
pub fn ellip_k(k: C64) -> Result<C64> {
    if on_cut(k) {
        return Err(Error::domain(format!("K(k) is singular or on its branch cut at k = {k}")));
    }
    let kp = (ONE - k * k).sqrt();
    Ok(PI / (2.0 * agm(ONE, kp)?))
}

/// `E(k)` from the same AGM run: `E = K (1 - Σ 2^{n-1} c_n²)` with `c_0 = k`.
pub fn ellip_e(k: C64) -> Result<C64> {
    if k.im == 0.0 && k.re.abs() == 1.0 {
        return Ok(ONE);
    }
    if on_cut(k) {
        return Err(Error::domain(format!("E(k) is on its branch cut at k = {k}")));
    }
    let kp = (ONE - k * k).sqrt();
    let (m, cs) = agm_steps(ONE, kp)?;
    let kk = PI / (2.0 * m);
    // c_0 = k contributes k²/2; cs[j] is c_{j+1} with weight 2^j
    let mut s = k * k * 0.5;
    let mut w = 1.0;
    for c in &cs {
        s += c * c * w;
        w *= 2.0;
    }
    Ok(kk * (ONE - s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIndex {
    Two,
    Three,
    Four,
}

/// Theta nulls ϑ₂, ϑ₃, ϑ₄ at nome q.
pub fn theta_null(index: ThetaIndex, nome: &Nome, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if nome.is_zero() {
        let v = if index == ThetaIndex::Two { 0.0 } else { 1.0 };
        return Ok(SeriesValue { value: C64::new(v, 0.0), terms_used: 0, est_tail: 0.0, converged: true });
    }
    match index {
        ThetaIndex::Three => {
            let s = series::sum(policy, 1, |n| nome.pow((n * n) as f64))?;
            Ok(SeriesValue { value: 1.0 + 2.0 * s.value, est_tail: 2.0 * s.est_tail, ..s })
        }
        ThetaIndex::Four => theta_null(ThetaIndex::Three, &nome.negated(), policy),
        ThetaIndex::Two => {
            let s = series::sum(policy, 0, |n| nome.pow((n * (n + 1)) as f64))?;
            let pre = 2.0 * nome.pow(0.25);
            Ok(SeriesValue { value: pre * s.value, est_tail: pre.norm() * s.est_tail, ..s })
        }
    }
}

/// `(k, k')` with `k = ϑ₂²/ϑ₃²` and principal `k' = sqrt(1 - k²)`.
pub fn modulus_from_nome(nome: &Nome, policy: &TruncationPolicy) -> Result<(C64, C64)> {
    if nome.is_zero() {
        return Ok((C64::new(0.0, 0.0), ONE));
    }
    let t2 = theta_null(ThetaIndex::Two, nome, policy)?.value;
    let t3 = theta_null(ThetaIndex::Three, nome, policy)?.value;
    if t3.norm() == 0.0 {
        return Err(Error::domain("theta3 vanishes"));
    }
    let k = (t2 * t2) / (t3 * t3);
    Ok((k, (ONE - k * k).sqrt()))
}

/// Modulus, complementary modulus and the two quarter periods for one nome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticContext {
    pub nome: Nome,
    pub z: C64,
    pub k: C64,
    pub k_prime: C64,
    pub big_k: C64,
    pub big_k_prime: C64,
}

impl EllipticContext {
    pub fn new(nome: Nome, policy: &TruncationPolicy) -> Result<Self> {
        let z = nome.z_or_err()?;
        let (k, k_prime) = modulus_from_nome(&nome, policy)?;
        if on_cut(k) || k.norm() == 0.0 {
            return Err(Error::domain(format!("degenerate modulus k = {k}")));
        }
        // K' through AGM(1, k) keeps iK'/K = 2z on negative and complex nomes,
        // where k' sits on the cut of the principal K(k').
        let big_k = PI / (2.0 * agm(ONE, k_prime)?);
        let big_k_prime = PI / (2.0 * agm(ONE, k)?);
        let ctx = EllipticContext { nome, z, k, k_prime, big_k, big_k_prime };
        let r = ctx.period_residual();
        if !(r <= 1e-8) {
            return Err(Error::domain(format!("AGM branch does not track z here (|iK'/K - 2z| = {r:e})")));
        }
        Ok(ctx)
    }

    pub fn from_r(r: f64, policy: &TruncationPolicy) -> Result<Self> {
        Self::new(Nome::from_r(r)?, policy)
    }

    pub fn from_z(z: C64, policy: &TruncationPolicy) -> Result<Self> {
        Self::new(Nome::from_z(z)?, policy)
    }

    /// Context of `-q`.
    pub fn negated(&self, policy: &TruncationPolicy) -> Result<Self> {
        Self::new(self.nome.negated(), policy)
    }

    pub fn period_residual(&self) -> f64 {
        (I * self.big_k_prime / self.big_k - 2.0 * self.z).norm()
    }

    /// Residuals of the context invariants: k² + k'² = 1 and iK'/K = 2z.
    pub fn invariant_residuals(&self) -> [f64; 2] {
        [(self.k * self.k + self.k_prime * self.k_prime - ONE).norm(), self.period_residual()]
    }
}

pub fn build_context(nome: Nome) -> Result<EllipticContext> {
    EllipticContext::new(nome, &TruncationPolicy::default())
}

/// Singular modulus `k_r` for `q = exp(-π sqrt r)`.
pub fn singular_modulus(r: f64, policy: &TruncationPolicy) -> Result<f64> {
    Ok(modulus_from_nome(&Nome::from_r(r)?, policy)?.0.re)
}

/// Elliptic alpha function `α(r) = π/(4K²) - sqrt(r) (E/K - 1)`.
pub fn alpha(r: f64, policy: &TruncationPolicy) -> Result<f64> {
    let ctx = EllipticContext::from_r(r, policy)?;
    let e = ellip_e(ctx.k)?;
    let kk = ctx.big_k;
    Ok((PI / (4.0 * kk * kk) - r.sqrt() * (e / kk - 1.0)).re)
}

/// `(q;q)_∞` and `(-q;q)_∞` from the products, alongside their closed forms
/// in `k, k', K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaProducts {
    pub f_minus_q: C64,
    pub plus_product: C64,
    pub f_minus_q_closed: C64,
    pub plus_product_closed: C64,
}

pub fn eta_products(ctx: &EllipticContext, policy: &TruncationPolicy) -> Result<EtaProducts> {
    let q = ctx.nome.q();
    let f = qpochhammer(q, &ctx.nome, policy)?.value;
    let plus = qpochhammer(-q, &ctx.nome, policy)?.value;
    let q24 = ctx.nome.pow(-1.0 / 24.0);
    let f_closed = 2f64.powf(1.0 / 3.0) / PI.sqrt()
        * q24
        * ctx.k.powf(1.0 / 12.0)
        * ctx.k_prime.powf(1.0 / 3.0)
        * ctx.big_k.sqrt();
    let plus_closed = 2f64.powf(-1.0 / 6.0) * q24 * ctx.k.powf(1.0 / 12.0) * ctx.k_prime.powf(-1.0 / 6.0);
    Ok(EtaProducts { f_minus_q: f, plus_product: plus, f_minus_q_closed: f_closed, plus_product_closed: plus_closed })
}

/// `dk/dq = 2 k k'² K² / (q π²)` for real `q` in (0, 1).
pub fn nome_derivative_dk_dq(q: f64, policy: &TruncationPolicy) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("dk/dq needs real q in (0,1), got {q}")));
    }
    let ctx = EllipticContext::new(Nome::from_real(q)?, policy)?;
    Ok((2.0 * ctx.k * ctx.k_prime * ctx.k_prime * ctx.big_k * ctx.big_k / (q * PI * PI)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate_real;

    fn k_quad(k: f64) -> f64 {
        integrate_real(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 1e-14).unwrap()
    }

    fn e_quad(k: f64) -> f64 {
        integrate_real(|t| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 1e-14).unwrap()
    }

    #[test]
    fn agm_of_one_and_root_two() {
        // Gauss's constant
        let m = agm(ONE, C64::new(2f64.sqrt(), 0.0)).unwrap();
        assert!((m.re - 1.1981402347355922).abs() < 1e-15);
    }

    #[test]
    fn complete_integrals_against_quadrature() {
        for &k in &[0.0, 0.3, 0.7, 0.95] {
            let kk = ellip_k(C64::new(k, 0.0)).unwrap();
            let ee = ellip_e(C64::new(k, 0.0)).unwrap();
            assert!((kk.re - k_quad(k)).abs() < 1e-13, "K({k})");
            assert!((ee.re - e_quad(k)).abs() < 1e-13, "E({k})");
        }
        assert!((ellip_e(ONE).unwrap() - ONE).norm() < 1e-16);
        assert!(ellip_k(ONE).is_err());
        assert!(ellip_k(C64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn legendre_relation() {
        let k: f64 = 0.6;
        let kp = (1.0 - k * k).sqrt();
        let (kk, ee) = (ellip_k(C64::new(k, 0.0)).unwrap().re, ellip_e(C64::new(k, 0.0)).unwrap().re);
        let (kkp, eep) = (ellip_k(C64::new(kp, 0.0)).unwrap().re, ellip_e(C64::new(kp, 0.0)).unwrap().re);
        assert!((ee * kkp + eep * kk - kk * kkp - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn theta_at_zero_and_jacobi_identity() {
        let p = TruncationPolicy::default();
        assert_eq!(theta_null(ThetaIndex::Three, &Nome::ZERO, &p).unwrap().value, ONE);
        let n = Nome::from_real(0.37).unwrap();
        let t2 = theta_null(ThetaIndex::Two, &n, &p).unwrap().value;
        let t3 = theta_null(ThetaIndex::Three, &n, &p).unwrap().value;
        let t4 = theta_null(ThetaIndex::Four, &n, &p).unwrap().value;
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).norm() < 1e-13);
    }

    #[test]
    fn first_singular_modulus() {
        let p = TruncationPolicy::default();
        assert!((singular_modulus(1.0, &p).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((singular_modulus(4.0, &p).unwrap() - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn alpha_values() {
        let p = TruncationPolicy::default();
        assert!((alpha(1.0, &p).unwrap() - 0.5).abs() < 1e-14);
        assert!((alpha(4.0, &p).unwrap() - (6.0 - 4.0 * 2f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn context_tracks_complex_and_negative_nomes() {
        let p = TruncationPolicy::default();
        for z in [C64::new(0.1, 0.4), C64::new(-0.2, 0.35), C64::new(0.6, 0.4), C64::new(0.5, 0.5)] {
            let c = EllipticContext::from_z(z, &p).unwrap();
            let [a, b] = c.invariant_residuals();
            assert!(a < 1e-14 && b < 1e-12, "{z}: {a} {b}");
        }
    }

    #[test]
    fn dk_dq_positive_and_matches_difference() {
        let p = TruncationPolicy::default();
        let q = (-PI).exp();
        let d = nome_derivative_dk_dq(q, &p).unwrap();
        let h = 1e-5;
        let m = |q: f64| modulus_from_nome(&Nome::from_real(q).unwrap(), &p).unwrap().0.re;
        let fd = (m(q + h) - m(q - h)) / (2.0 * h);
        assert!(d > 0.0);
        assert!((d - fd).abs() < 1e-6 * d);
    }
}
