//! The identity registry.

use std::sync::OnceLock;

use super::IdentityCase;
use crate::angle::{theta_angle, theta_angle_deriv, DerivMode};
use crate::elliptic::EllipticContext;
use crate::jacobi::{self, FourierKind};
use crate::series::{self, TruncationPolicy};
use crate::{Nome, Result, C64};

mod appendix;
mod cd1;
mod fourier;
mod fractions;
mod frames;
mod sums;

pub(super) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub(super) const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Numbered results that are definitions or out of scope, with the reason.
pub const EXCLUDED: &[(&str, &str)] = &[
    ("5", "definition of the Bernoulli-type sums evaluated in T1"),
    ("28", "two-variable generalisation; not evaluated"),
];

const TAGGED: &[&str] = &[
    "10.1", "10.2", "11.1", "32.1", "42.1", "71.0", "71.1", "83.1", "86.1", "89.1", "89.2", "95.1", "98.1",
    "128.1", "129.1",
];

/// Every numbered result: 1 to 171 and the tagged sub-results.
pub fn equation_labels() -> Vec<String> {
    let mut out: Vec<String> = (1..=171).map(|n| n.to_string()).collect();
    out.extend(TAGGED.iter().map(|s| s.to_string()));
    out
}

/// All cases, built once.
pub fn registry() -> &'static [IdentityCase] {
    static REG: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v = Vec::new();
        sums::add(&mut v);
        fourier::add(&mut v);
        cd1::add(&mut v);
        fractions::add(&mut v);
        frames::add(&mut v);
        appendix::add(&mut v);
        v
    })
}

pub(super) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub(super) fn rsum(pol: &TruncationPolicy, start: usize, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    Ok(series::sum(pol, start, |n| re(f(n as f64)))?.value.re)
}

pub(super) fn csum(pol: &TruncationPolicy, start: usize, mut f: impl FnMut(f64) -> C64) -> Result<C64> {
    Ok(series::sum(pol, start, |n| f(n as f64))?.value)
}

pub(super) fn sign(n: f64) -> f64 {
    if n.rem_euclid(2.0) == 0.0 {
        1.0
    } else {
        -1.0
    }
}

pub(super) fn ctx_r(r: f64, pol: &TruncationPolicy) -> Result<EllipticContext> {
    EllipticContext::from_r(r, pol)
}

pub(super) fn zpt(x: f64, y: f64) -> C64 {
    C64::new(x, y)
}

pub(super) fn ctx_z(x: f64, y: f64, pol: &TruncationPolicy) -> Result<EllipticContext> {
    EllipticContext::from_z(zpt(x, y), pol)
}

pub(super) fn four(kind: FourierKind, ctx: &EllipticContext, u: C64, pol: &TruncationPolicy) -> Result<C64> {
    jacobi::eval(kind, ctx, u, pol)
}

/// `L(u) = -1 + 2/(1 - u)`.
pub(super) fn ell(u: C64) -> C64 {
    -ONE + 2.0 / (ONE - u)
}

pub(super) fn theta(nome: &Nome, a: f64, pol: &TruncationPolicy) -> Result<C64> {
    Ok(theta_angle(nome, a, pol)?.value)
}

/// `dθ/da` by differences, independent of the series forms under test.
pub(super) fn dtheta(nome: &Nome, a: f64, pol: &TruncationPolicy) -> Result<C64> {
    theta_angle_deriv(nome, a, DerivMode::Numeric, pol)
}

