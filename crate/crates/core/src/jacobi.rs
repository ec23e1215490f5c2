//! Jacobi-type functions from their nome Fourier expansions.
//!
//! With `v = πu/(2K)` and `h = q^{n+1/2}` every kind is
//! `pre · Σ_{n>=0} s_n · h · trig(m_n v) / (1 ± q^{e_n})`, convergent in the
//! strip `|Im(u/K)| < Im(2z)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticContext;
use crate::numeric;
use crate::series::{self, SeriesValue, TruncationPolicy};
use crate::{Error, Result, C64};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FourierKind {
    Sn,
    Cn,
    Cn1,
    Sd,
    Cc,
    Cd,
    Dd,
    Cd1,
    Ss,
}

impl FourierKind {
    pub const ALL: [FourierKind; 9] = [
        FourierKind::Sn,
        FourierKind::Cn,
        FourierKind::Cn1,
        FourierKind::Sd,
        FourierKind::Cc,
        FourierKind::Cd,
        FourierKind::Dd,
        FourierKind::Cd1,
        FourierKind::Ss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FourierKind::Sn => "sn",
            FourierKind::Cn => "cn",
            FourierKind::Cn1 => "cn1",
            FourierKind::Sd => "sd",
            FourierKind::Cc => "cc",
            FourierKind::Cd => "cd",
            FourierKind::Dd => "dd",
            FourierKind::Cd1 => "cd1",
            FourierKind::Ss => "ss",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// `e^{±iv} q^{1/2}`, the ratios of the two geometric halves of each series.
fn strip_ratios(ctx: &EllipticContext, u: C64) -> (C64, C64, C64) {
    let v = PI * u / (2.0 * ctx.big_k);
    let h = ctx.nome.pow(0.5);
    (h * (I * v).exp(), h * (-I * v).exp(), v)
}

pub fn in_strip(ctx: &EllipticContext, u: C64) -> bool {
    let (ap, am, _) = strip_ratios(ctx, u);
    ap.norm() < 1.0 && am.norm() < 1.0
}

/// One Fourier series at `u`. Fails with [`Error::Strip`] outside the strip.
pub fn fourier(kind: FourierKind, ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let (ap, am, v) = strip_ratios(ctx, u);
    if !(ap.norm() < 1.0 && am.norm() < 1.0) {
        return Err(Error::Strip(format!(
            "{} at u = {u}: |Im(u/K)| = {:.6} >= Im(2z) = {:.6}",
            kind.name(),
            (u / ctx.big_k).im.abs(),
            2.0 * ctx.z.im
        )));
    }
    let nome = ctx.nome;
    let ap2 = ap * ap;
    let am2 = am * am;
    let shift_p = (2.0 * I * v).exp();
    let shift_m = (-2.0 * I * v).exp();
    // p = A+^{2n+1}, m = A-^{2n+1}
    let mut p = ap;
    let mut m = am;
    let term = move |n: usize| -> C64 {
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let cos1 = (p + m) * 0.5;
        let sin1 = (p - m) / (2.0 * I);
        let cos3 = (p * shift_p + m * shift_m) * 0.5;
        let t = match kind {
            FourierKind::Sn => sin1 / (ONE - nome.pow(2.0 * nf + 1.0)),
            FourierKind::Cn => cos1 / (ONE + nome.pow(2.0 * nf + 1.0)),
            FourierKind::Cn1 => cos3 / (ONE + nome.pow(2.0 * nf + 1.0)),
            FourierKind::Sd => sign * sin1 / (ONE + nome.pow(2.0 * nf + 1.0)),
            FourierKind::Cc => cos1 / (ONE + nome.pow(2.0 * nf - 1.0)),
            FourierKind::Cd => sign * cos1 / (ONE - nome.pow(2.0 * nf + 1.0)),
            FourierKind::Dd => sign * cos1 / (ONE - nome.pow(2.0 * nf - 1.0)),
            FourierKind::Cd1 => sign * cos3 / (ONE - nome.pow(2.0 * nf + 1.0)),
            FourierKind::Ss => sin1 / (ONE + nome.pow(2.0 * nf + 1.0)),
        };
        p *= ap2;
        m *= am2;
        t
    };
    let s = series::sum(policy, 0, term)?;
    let mut pre = 2.0 * PI / (ctx.big_k * ctx.k);
    if kind == FourierKind::Sd {
        pre /= ctx.k_prime;
    }
    Ok(SeriesValue { value: pre * s.value, est_tail: pre.norm() * s.est_tail, ..s })
}

pub fn eval(kind: FourierKind, ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    fourier(kind, ctx, u, policy).map(|s| s.value)
}

const POLE_EPS: f64 = 1e-13;

/// `dn = cn / cd`.
pub fn dn(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    let cd = eval(FourierKind::Cd, ctx, u, policy)?;
    if cd.norm() < POLE_EPS {
        return Err(Error::Pole(format!("dn = cn/cd with cd(u) = 0 at u = {u}")));
    }
    Ok(eval(FourierKind::Cn, ctx, u, policy)? / cd)
}

/// `nd = 1/dn = cd / cn`.
pub fn nd(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    let cn = eval(FourierKind::Cn, ctx, u, policy)?;
    if cn.norm() < POLE_EPS {
        return Err(Error::Pole(format!("nd = cd/cn with cn(u) = 0 at u = {u}")));
    }
    Ok(eval(FourierKind::Cd, ctx, u, policy)? / cn)
}

// u = u' + n iK' with u' inside the strip
fn lattice_reduce(ctx: &EllipticContext, u: C64) -> (C64, i64) {
    let t = u / ctx.big_k;
    let n = (t.im / (2.0 * ctx.z.im)).round() as i64;
    (u - n as f64 * I * ctx.big_k_prime, n)
}

fn continued(kind: FourierKind, ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    let (u0, n) = lattice_reduce(ctx, u);
    let v = eval(kind, ctx, u0, policy)?;
    if n % 2 == 0 {
        return Ok(v);
    }
    // f(u + iK') = 1/(k f(u)) for f = cd, sn
    if v.norm() < POLE_EPS {
        return Err(Error::Pole(format!("{} at u = {u}", kind.name())));
    }
    Ok(ONE / (ctx.k * v))
}

/// cd anywhere off its poles: lattice reduction by `iK'` into the strip.
pub fn cd_ext(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    continued(FourierKind::Cd, ctx, u, policy)
}

/// sn anywhere off its poles.
pub fn sn_ext(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    continued(FourierKind::Sn, ctx, u, policy)
}

/// cd1 through the logarithmic derivative of the theta quotient:
/// `cd1 = cd cos(πu/K) - i cd sin(πu/K) - (2i/k) sin(πu/K) D` with
/// `D = Σ_{n>=0} A' q^n [1/(1 + A q^n) + 1/(1 - A q^n)]`, `A = i q^{1/2} e^{iπu/(2K)}`.
/// Valid wherever `|A| < 1`, including outside the Fourier strip.
pub fn cd1_via_theta_derivative(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<C64> {
    let a = I * ctx.nome.pow(0.5) * (I * PI * u / (2.0 * ctx.big_k)).exp();
    if !(a.norm() < 1.0) {
        return Err(Error::Strip(format!("|i q^(1/2) e^(iπu/2K)| = {} >= 1", a.norm())));
    }
    let a_prime = a * I * PI / (2.0 * ctx.big_k);
    let nome = ctx.nome;
    let d = series::sum(policy, 0, |n| {
        let aq = a * nome.pow(n as f64);
        a_prime * nome.pow(n as f64) * (ONE / (ONE + aq) + ONE / (ONE - aq))
    })?
    .value;
    let cd = cd_ext(ctx, u, policy)?;
    let w = PI * u / ctx.big_k;
    Ok(cd * w.cos() - I * cd * w.sin() - 2.0 * I / ctx.k * w.sin() * d)
}

/// One special value: the series evaluation next to its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialValue {
    pub name: &'static str,
    pub computed: C64,
    pub expected: C64,
}

pub fn special_values(ctx: &EllipticContext, policy: &TruncationPolicy) -> Result<Vec<SpecialValue>> {
    let kk = ctx.big_k;
    let kp = ctx.k_prime;
    let half = kk * 0.5;
    let mut out = vec![
        SpecialValue { name: "cn(K/2)", computed: eval(FourierKind::Cn, ctx, half, policy)?, expected: kp.sqrt() / (ONE + kp).sqrt() },
        SpecialValue { name: "dn(K/2)", computed: dn(ctx, half, policy)?, expected: kp.sqrt() },
        SpecialValue { name: "cd(K/2)", computed: eval(FourierKind::Cd, ctx, half, policy)?, expected: ONE / (ONE + kp).sqrt() },
        SpecialValue { name: "cd1(0)", computed: eval(FourierKind::Cd1, ctx, C64::new(0.0, 0.0), policy)?, expected: ONE },
        SpecialValue { name: "cd1(K)", computed: eval(FourierKind::Cd1, ctx, kk, policy)?, expected: C64::new(0.0, 0.0) },
        SpecialValue { name: "cd1(2K)", computed: eval(FourierKind::Cd1, ctx, 2.0 * kk, policy)?, expected: -ONE },
    ];
    // off the strip at 2K + 2iK', through the theta-quotient route
    let u = 2.0 * kk + 2.0 * I * ctx.big_k_prime;
    out.push(SpecialValue {
        name: "cd1(2K+2iK')",
        computed: cd1_via_theta_derivative(ctx, u, policy)?,
        expected: cd1_lattice_closed_form(ctx, 2, 1),
    });
    Ok(out)
}

/// Closed form of `cd1(mK + ν1 iK')` for even `m` and `ν1 = 2l`:
/// `(-1)^{m/2} [e^{ν1 π√r} - sinh(ν1 π√r) (1 - (2π/(Kk)) Σ_{j<l} q^{j+1/2}/(1+q^{2j+1}))]`,
/// with `e^{π√r} = 1/q`.
pub fn cd1_lattice_closed_form(ctx: &EllipticContext, m: i64, l: usize) -> C64 {
    let nome = ctx.nome;
    let nu1 = 2.0 * l as f64;
    let e = nome.pow(-nu1);
    let sinh = (e - nome.pow(nu1)) * 0.5;
    let s: C64 = (0..l)
        .map(|j| nome.pow(j as f64 + 0.5) / (ONE + nome.pow(2.0 * j as f64 + 1.0)))
        .sum();
    let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (e - sinh * (ONE - 2.0 * PI / (ctx.big_k * ctx.k) * s))
}

/// `∫_0^u cd(t) dt` along the segment, and `nd(u) + k sd(u)`, which equals
/// `exp(k ∫_0^u cd)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdIntegral {
    pub integral: C64,
    pub target: C64,
}

pub fn cd_antiderivative_check(ctx: &EllipticContext, u: C64, policy: &TruncationPolicy) -> Result<CdIntegral> {
    let integral = numeric::integrate_segment(
        |t| match eval(FourierKind::Cd, ctx, t, policy) {
            Err(Error::Strip(m)) => Err(Error::PoleOnPath(m)),
            other => other,
        },
        C64::new(0.0, 0.0),
        u,
        1e-13,
    )?;
    let target = nd(ctx, u, policy)? + ctx.k * eval(FourierKind::Sd, ctx, u, policy)?;
    Ok(CdIntegral { integral, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: f64) -> EllipticContext {
        EllipticContext::from_r(r, &TruncationPolicy::default()).unwrap()
    }

    #[test]
    fn quarter_period_values() {
        let p = TruncationPolicy::default();
        let c = ctx(1.0);
        let kk = c.big_k;
        assert!((eval(FourierKind::Sn, &c, kk, &p).unwrap() - ONE).norm() < 1e-14);
        assert!(eval(FourierKind::Cn, &c, kk, &p).unwrap().norm() < 1e-14);
        assert!(eval(FourierKind::Cd, &c, kk, &p).unwrap().norm() < 1e-14);
        assert!((eval(FourierKind::Cd, &c, C64::new(0.0, 0.0), &p).unwrap() - ONE).norm() < 1e-14);
    }

    #[test]
    fn sn_at_small_nome_is_nearly_sine() {
        // q = 0.05, k = 0.742879765..., reference sn(0.4 | k²) from mpmath
        let p = TruncationPolicy::default();
        let c = EllipticContext::new(crate::Nome::from_real(0.05).unwrap(), &p).unwrap();
        assert!((c.k.re - 0.742879765148418154).abs() < 1e-15);
        let s = eval(FourierKind::Sn, &c, C64::new(0.4, 0.0), &p).unwrap();
        assert!((s.re - 0.384181134153873541).abs() < 1e-14, "{s}");
        assert!(s.im.abs() < 1e-15);
    }

    #[test]
    fn pythagorean_relations() {
        let p = TruncationPolicy::default();
        for c in [ctx(2.0), EllipticContext::from_z(C64::new(0.1, 0.4), &p).unwrap()] {
            let u = C64::new(0.37, 0.05);
            let sn = eval(FourierKind::Sn, &c, u, &p).unwrap();
            let cn = eval(FourierKind::Cn, &c, u, &p).unwrap();
            let dn = dn(&c, u, &p).unwrap();
            assert!((sn * sn + cn * cn - ONE).norm() < 1e-13);
            assert!((c.k * c.k * sn * sn + dn * dn - ONE).norm() < 1e-13);
        }
    }

    #[test]
    fn strip_violation_reported() {
        let p = TruncationPolicy::default();
        let c = ctx(1.0);
        let u = C64::new(0.0, 1.5) * c.big_k_prime;
        assert!(matches!(eval(FourierKind::Cd, &c, u, &p), Err(Error::Strip(_))));
        // but continuation works: cd(iK') = 1/k
        let v = cd_ext(&c, I * c.big_k_prime, &p).unwrap();
        assert!((v - ONE / c.k).norm() < 1e-12);
    }

    #[test]
    fn dn_pole_reported() {
        let p = TruncationPolicy::default();
        let c = ctx(1.0);
        assert!(matches!(dn(&c, c.big_k, &p), Err(Error::Pole(_))));
    }

    #[test]
    fn theta_route_matches_fourier_cd1_in_strip() {
        let p = TruncationPolicy::default();
        let c = ctx(2.0);
        for u in [C64::new(0.3, 0.0), C64::new(1.1, 0.2)] {
            let a = eval(FourierKind::Cd1, &c, u, &p).unwrap();
            let b = cd1_via_theta_derivative(&c, u, &p).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn special_value_table() {
        let p = TruncationPolicy::default();
        for sv in special_values(&ctx(3.0), &p).unwrap() {
            assert!((sv.computed - sv.expected).norm() < 1e-10 * sv.expected.norm().max(1.0), "{} {} {}", sv.name, sv.computed, sv.expected);
        }
    }

    #[test]
    fn cd_integral_is_log_nd_plus_ksd() {
        let p = TruncationPolicy::default();
        let c = ctx(2.0);
        let r = cd_antiderivative_check(&c, C64::new(0.7, 0.1), &p).unwrap();
        assert!(((c.k * r.integral).exp() - r.target).norm() < 1e-12);
        let z = cd_antiderivative_check(&c, C64::new(0.0, 0.0), &p).unwrap();
        assert_eq!(z.integral, C64::new(0.0, 0.0));
    }
}
