//! Truncated summation of convergent series and infinite products.
//!
//! Every infinite sum or product in the crate goes through [`sum`] or
//! [`product`], which stop once the last `stagnation_window` terms are all
//! below the relative cutoff and the geometric tail estimate is too.

use std::cell::Cell;

use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tail_cutoff: f64,
    pub max_terms: usize,
    pub stagnation_window: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            rel_tail_cutoff: 1e-16,
            max_terms: 100_000,
            stagnation_window: 8,
        }
    }
}

impl TruncationPolicy {
    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    pub terms_used: usize,
    /// Bound on the magnitude of the discarded tail.
    pub est_tail: f64,
    pub converged: bool,
}

thread_local! {
    static TERMS: Cell<usize> = const { Cell::new(0) };
}

/// Terms consumed on this thread since the last [`take_term_count`].
pub fn take_term_count() -> usize {
    TERMS.with(|c| c.replace(0))
}

fn record_terms(n: usize) {
    TERMS.with(|c| c.set(c.get() + n));
}

const TINY: f64 = 1e-300;

/// Tracks the magnitudes of recent terms to estimate the remainder.
struct Tail {
    window: usize,
    mags: Vec<f64>,
    small_run: usize,
}

impl Tail {
    fn new(window: usize) -> Self {
        Tail { window: window.max(1), mags: Vec::new(), small_run: 0 }
    }

    fn push(&mut self, mag: f64, small: bool) {
        self.mags.push(mag);
        if self.mags.len() > self.window + 1 {
            self.mags.remove(0);
        }
        self.small_run = if small { self.small_run + 1 } else { 0 };
    }

    // last |t| / (1 - ratio), ratio fitted over the window
    fn estimate(&self) -> f64 {
        let last = *self.mags.last().unwrap_or(&0.0);
        if last == 0.0 {
            return 0.0;
        }
        let first = self.mags[0];
        let span = (self.mags.len() - 1) as f64;
        if span == 0.0 || first == 0.0 {
            return last * self.window as f64;
        }
        let ratio = (last / first).powf(1.0 / span);
        if ratio < 0.999 {
            last * ratio / (1.0 - ratio)
        } else {
            last * self.window as f64
        }
    }
}

/// Sum `f(start) + f(start+1) + ...` under `policy`.
pub fn sum<F>(policy: &TruncationPolicy, start: usize, mut f: F) -> Result<SeriesValue>
where
    F: FnMut(usize) -> C64,
{
    let mut acc = C64::new(0.0, 0.0);
    let mut tail = Tail::new(policy.stagnation_window);
    for i in 0..policy.max_terms {
        let t = f(start + i);
        if !t.re.is_finite() || !t.im.is_finite() {
            record_terms(i + 1);
            return Err(Error::NonConvergence { terms: i + 1, tail: f64::INFINITY });
        }
        acc += t;
        let scale = acc.norm().max(TINY);
        let mag = t.norm();
        tail.push(mag, mag <= policy.rel_tail_cutoff * scale);
        if tail.small_run >= policy.stagnation_window {
            let est = tail.estimate();
            if est <= policy.rel_tail_cutoff * scale {
                record_terms(i + 1);
                return Ok(SeriesValue { value: acc, terms_used: i + 1, est_tail: est, converged: true });
            }
        }
    }
    record_terms(policy.max_terms);
    Err(Error::NonConvergence { terms: policy.max_terms, tail: tail.estimate() })
}

/// Product `(1 + d(start)) (1 + d(start+1)) ...` under `policy`, where `d`
/// returns the deviation of each factor from one.
pub fn product<F>(policy: &TruncationPolicy, start: usize, mut d: F) -> Result<SeriesValue>
where
    F: FnMut(usize) -> C64,
{
    let mut acc = C64::new(1.0, 0.0);
    let mut tail = Tail::new(policy.stagnation_window);
    for i in 0..policy.max_terms {
        let di = d(start + i);
        acc *= C64::new(1.0, 0.0) + di;
        if !acc.re.is_finite() || !acc.im.is_finite() {
            record_terms(i + 1);
            return Err(Error::NonConvergence { terms: i + 1, tail: f64::INFINITY });
        }
        if acc == C64::new(0.0, 0.0) {
            record_terms(i + 1);
            return Ok(SeriesValue { value: acc, terms_used: i + 1, est_tail: 0.0, converged: true });
        }
        let mag = di.norm();
        tail.push(mag, mag <= policy.rel_tail_cutoff);
        if tail.small_run >= policy.stagnation_window {
            // remaining factors move the product by about |acc| * sum |d|
            let est = tail.estimate() * acc.norm();
            if est <= policy.rel_tail_cutoff * acc.norm().max(TINY) {
                record_terms(i + 1);
                return Ok(SeriesValue { value: acc, terms_used: i + 1, est_tail: est, converged: true });
            }
        }
    }
    record_terms(policy.max_terms);
    Err(Error::NonConvergence { terms: policy.max_terms, tail: tail.estimate() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let p = TruncationPolicy::default();
        let s = sum(&p, 0, |n| C64::new(0.5f64.powi(n as i32), 0.0)).unwrap();
        assert!((s.value.re - 2.0).abs() < 1e-15);
        assert!(s.converged);
        assert!(s.est_tail <= p.rel_tail_cutoff * s.value.norm());
    }

    #[test]
    fn zero_series_converges_immediately() {
        let p = TruncationPolicy::default();
        let s = sum(&p, 1, |_| C64::new(0.0, 0.0)).unwrap();
        assert_eq!(s.value, C64::new(0.0, 0.0));
        assert_eq!(s.terms_used, p.stagnation_window);
    }

    #[test]
    fn harmonic_series_hits_max_terms() {
        let p = TruncationPolicy::default().with_max_terms(1000);
        let e = sum(&p, 1, |n| C64::new(1.0 / n as f64, 0.0)).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { terms: 1000, .. }));
    }

    #[test]
    fn euler_product() {
        // prod (1 - 2^-n) for n >= 1, compare with a long direct loop
        let p = TruncationPolicy::default();
        let s = product(&p, 1, |n| C64::new(-(0.5f64.powi(n as i32)), 0.0)).unwrap();
        let mut direct = 1.0;
        for n in 1..200 {
            direct *= 1.0 - 0.5f64.powi(n);
        }
        assert!((s.value.re - direct).abs() < 1e-15);
    }

    #[test]
    fn term_counter_accumulates() {
        let p = TruncationPolicy::default();
        take_term_count();
        let s = sum(&p, 0, |n| C64::new(0.1f64.powi(n as i32), 0.0)).unwrap();
        assert_eq!(take_term_count(), s.terms_used);
        assert_eq!(take_term_count(), 0);
    }
}
