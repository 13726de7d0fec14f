//! Elliptope volumes in log space: Joe's recursion, a Stirling-series
//! log-gamma, the Barnes G expansion and the large-n asymptotics.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::exactvol::rmet_volume;
use crate::rational::ln_rational;

/// A volume stored as its natural log. `exact` is false for asymptotic
/// approximations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogVol {
    pub log_value: f64,
    pub exact: bool,
}

impl LogVol {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// Base-10 mantissa in `[1, 10)` and exponent, usable far below
    /// `f64::MIN_POSITIVE`.
    pub fn sci(&self) -> (f64, i32) {
        let l10 = self.log_value / std::f64::consts::LN_10;
        let e = l10.floor() as i32;
        normalize(10f64.powf(l10 - e as f64), e)
    }

    /// Scientific notation rounded to `digits` significant digits, e.g. `9.08e-150`.
    pub fn format_sci(&self, digits: usize) -> String {
        self.format_with(digits, f64::round)
    }

    /// Like [`format_sci`](Self::format_sci) but truncating the mantissa.
    pub fn format_sci_truncated(&self, digits: usize) -> String {
        // guard against 1.2299999 style representation error
        self.format_with(digits, |x| (x + 1e-9).floor())
    }

    fn format_with(&self, digits: usize, cut: impl Fn(f64) -> f64) -> String {
        let p = digits.max(1) - 1;
        let (m, e) = self.sci();
        let scale = 10f64.powi(p as i32);
        let (m, e) = normalize(cut(m * scale) / scale, e);
        let sign = if e < 0 { '-' } else { '+' };
        format!("{m:.p$}e{sign}{:02}", e.abs())
    }
}

fn normalize(m: f64, e: i32) -> (f64, i32) {
    if m >= 10.0 {
        (m / 10.0, e + 1)
    } else {
        (m, e)
    }
}

/// Bernoulli numbers `B_2, B_4, B_6, B_8`.
const BERNOULLI: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];

/// Stirling series truncation: `terms = N` keeps `B_2 .. B_{2N-2}` in the
/// sum and leaves `R_N`, bounded by the `B_{2N}` term. Arguments below
/// `shift_threshold` are raised with `Γ(x+1) = x Γ(x)` first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StirlingParams {
    pub terms: usize,
    pub shift_threshold: f64,
}

impl Default for StirlingParams {
    fn default() -> Self {
        StirlingParams {
            terms: 4,
            shift_threshold: 24.0,
        }
    }
}

impl StirlingParams {
    pub fn new(terms: usize, shift_threshold: f64) -> Result<Self> {
        if !(1..=4).contains(&terms) {
            return Err(Error::InvalidArgument(format!("Stirling terms must be 1..=4, got {terms}")));
        }
        if !(shift_threshold >= 8.0) {
            return Err(Error::InvalidArgument("shift threshold must be at least 8".into()));
        }
        Ok(StirlingParams {
            terms,
            shift_threshold,
        })
    }

    /// `|R_N|` at argument `x`.
    pub fn remainder_bound(&self, x: f64) -> f64 {
        let n = self.terms as f64;
        BERNOULLI[self.terms - 1].abs() / (2.0 * n * (2.0 * n - 1.0) * x.powf(2.0 * n - 1.0))
    }
}

fn stirling(x: f64, terms: usize) -> f64 {
    let mut s = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln();
    let x2 = x * x;
    let mut xp = x;
    for (k, b) in BERNOULLI.iter().enumerate().take(terms - 1) {
        let k = (k + 1) as f64;
        s += b / (2.0 * k * (2.0 * k - 1.0) * xp);
        xp *= x2;
    }
    s
}

pub fn lgamma_with(x: f64, p: &StirlingParams) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log-gamma needs x > 0, got {x}")));
    }
    let mut y = x;
    let mut prod = 1.0;
    while y < p.shift_threshold {
        prod *= y;
        y += 1.0;
    }
    Ok(stirling(y, p.terms) - prod.ln())
}

pub fn lgamma(x: f64) -> Result<f64> {
    lgamma_with(x, &StirlingParams::default())
}

pub fn lbeta(a: f64, b: f64) -> Result<f64> {
    Ok(lgamma(a)? + lgamma(b)? - lgamma(a + b)?)
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// One step of Joe's recursion: `log V_{j+1} - log V_j`.
pub fn joe_increment(j: usize) -> f64 {
    let jf = j as f64;
    let h = (jf + 1.0) / 2.0;
    jf * jf * LN_2 + jf * lbeta(h, h).expect("positive argument")
}

/// `log vol(E_n)` with `V_2 = 2`, `V_n = V_{n-1} 2^{(n-1)^2} B(n/2, n/2)^{n-1}`.
pub fn joe_log_volume(n: usize) -> Result<LogVol> {
    check_n(n, 2)?;
    let log_value = LN_2 + (2..n).map(joe_increment).sum::<f64>();
    Ok(LogVol {
        log_value,
        exact: true,
    })
}

/// `log V_n` for every `n` in `2..=max`, index `n - 2`.
pub fn joe_log_volumes(max: usize) -> Result<Vec<f64>> {
    check_n(max, 2)?;
    let mut out = vec![LN_2];
    for j in 2..max {
        let last = *out.last().expect("nonempty");
        out.push(last + joe_increment(j));
    }
    Ok(out)
}

fn pairs(n: usize) -> f64 {
    (n * (n - 1) / 2) as f64
}

/// `log vol(I_n)`, the elliptope in 0/1 coordinates `x = (1 - y)/2`.
pub fn i_log_volume(n: usize) -> Result<LogVol> {
    let j = joe_log_volume(n)?;
    Ok(LogVol {
        log_value: j.log_value - pairs(n) * LN_2,
        exact: true,
    })
}

fn ln_sqrt_2pi() -> f64 {
    0.5 * (2.0 * PI).ln()
}

/// The five-term expression `log v_n` exactly as stated with the
/// boundedness claim for `log V_n - log v_n`.
pub fn asymptotic_log_volume(n: usize) -> Result<LogVol> {
    check_n(n, 2)?;
    let nf = n as f64;
    let ln = nf.ln();
    let c = ln_sqrt_2pi();
    let log_value = -nf * nf * ln / 4.0 + nf * nf * (5.0 / 8.0 + c / 2.0) - 3.0 * nf * ln / 4.0
        - nf * (3.0 / 4.0 + c / 2.0)
        - ln / 24.0;
    Ok(LogVol {
        log_value,
        exact: false,
    })
}

/// Expansion of `log V_n` that does stay within a constant of Joe's
/// recursion; differs from [`asymptotic_log_volume`] by
/// `n^2/2 - n log n - n/2`.
pub fn corrected_asymptotic_log_volume(n: usize) -> Result<LogVol> {
    check_n(n, 2)?;
    let nf = n as f64;
    let ln = nf.ln();
    let c = ln_sqrt_2pi();
    let log_value = -nf * nf * ln / 4.0 + nf * nf * (1.0 / 8.0 + c / 2.0) + nf * ln / 4.0
        - nf * (1.0 / 4.0 + c / 2.0)
        - ln / 24.0;
    Ok(LogVol {
        log_value,
        exact: false,
    })
}

/// `log A = 1/12 - ζ'(-1)`.
pub const LOG_GLAISHER: f64 = 0.2487544770337843;
pub const ZETA2: f64 = PI * PI / 6.0;
pub const ZETA3: f64 = 1.2020569031595943;
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;

/// `log G(n+1)` from the large-n expansion (error `O(1/n^2)`).
pub fn barnes_g_log(n: usize) -> Result<f64> {
    check_n(n, 2)?;
    let nf = n as f64;
    Ok(nf * nf / 4.0 + nf * lgamma(nf + 1.0)? - nf * (nf + 1.0) * nf.ln() / 2.0 - nf.ln() / 12.0
        - LOG_GLAISHER)
}

/// `log G(n+1) = sum_{i=1}^{n-1} log i!`, summed directly.
pub fn barnes_g_log_exact(n: usize) -> f64 {
    (1..n).map(|j| (n - j) as f64 * (j as f64).ln()).sum()
}

/// The additive constant collected in the upper bound on `log V_n`.
pub fn upper_bound_constant() -> f64 {
    LN_2 - LOG_GLAISHER - 5.0 / 6.0 + 9.0 / 2.0 - ln_sqrt_2pi() - 2.0 * (ZETA2 - 5.0 / 4.0) / 45.0
        + 2.0 * (ZETA3 - 9.0 / 8.0) / 45.0
        + 16.0 * (ZETA4 - 17.0 / 16.0) / 315.0
        + (ZETA2 - 1.0) / 360.0
}

/// `log(vol(I_n) / vol(RMet_n))`.
pub fn ratio_log_i_over_rmet(n: usize) -> Result<f64> {
    check_n(n, 3)?;
    Ok(i_log_volume(n)?.log_value - ln_rational(&rmet_volume(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln_factorial(k: u64) -> f64 {
        (1..=k).map(|i| (i as f64).ln()).sum()
    }

    #[test]
    fn lgamma_reference_values() {
        assert!(lgamma(1.0).unwrap().abs() < 1e-12);
        assert!((lgamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-12);
        assert!((lgamma(10.0).unwrap() - 362880f64.ln()).abs() < 1e-12);
        assert!(matches!(lgamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(lgamma(-1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn lgamma_factorials() {
        for k in 0..=20u64 {
            let err = (lgamma(k as f64 + 1.0).unwrap() - ln_factorial(k)).abs();
            assert!(err <= 1e-12, "k = {k}: {err:e}");
        }
    }

    #[test]
    fn lgamma_recurrence() {
        for x in [0.5, 1.5, 7.3, 40.0] {
            let d = lgamma(x + 1.0).unwrap() - lgamma(x).unwrap();
            assert!((d - f64::ln(x)).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn stirling_params_validation() {
        assert!(StirlingParams::new(0, 10.0).is_err());
        assert!(StirlingParams::new(5, 10.0).is_err());
        assert!(StirlingParams::new(3, 7.5).is_err());
        let p = StirlingParams::new(1, 8.0).unwrap();
        // only the leading terms: error within the first Bernoulli bound
        let err = (lgamma_with(8.0, &p).unwrap() - ln_factorial(7)).abs();
        assert!(err <= p.remainder_bound(8.0));
    }

    #[test]
    fn lbeta_values() {
        assert!(lbeta(1.0, 1.0).unwrap().abs() < 1e-12);
        assert!((lbeta(1.5, 1.5).unwrap() - (PI / 8.0).ln()).abs() < 1e-12);
        assert_eq!(lbeta(2.5, 7.0).unwrap(), lbeta(7.0, 2.5).unwrap());
    }

    #[test]
    fn joe_small_n() {
        assert!((joe_log_volume(2).unwrap().log_value - LN_2).abs() < 1e-15);
        let v3 = joe_log_volume(3).unwrap();
        assert!((v3.log_value - (PI * PI / 2.0).ln()).abs() < 1e-12);
        assert!(v3.exact);
        let i3 = i_log_volume(3).unwrap();
        assert!((i3.log_value - (PI * PI / 16.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn joe_recursion_identity() {
        let all = joe_log_volumes(40).unwrap();
        for n in 3..=40 {
            let diff = joe_log_volume(n).unwrap().log_value - joe_log_volume(n - 1).unwrap().log_value;
            let m = (n - 1) as f64;
            let expect = m * m * LN_2 + m * lbeta(n as f64 / 2.0, n as f64 / 2.0).unwrap();
            assert!((diff - expect).abs() < 1e-9 * expect.abs().max(1.0));
            assert!((all[n - 2] - joe_log_volume(n).unwrap().log_value).abs() < 1e-9);
        }
    }

    #[test]
    fn i_volumes_decrease() {
        let mut prev = i_log_volume(3).unwrap().log_value;
        for n in 4..=200 {
            let cur = i_log_volume(n).unwrap().log_value;
            assert!(cur < prev, "n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn barnes_small_values() {
        assert!((barnes_g_log_exact(3) - LN_2).abs() < 1e-15);
        assert_eq!(barnes_g_log_exact(2), 0.0);
        // with the exact n log Γ(n+1) kept, the leading neglected term is 1/(720 n^2)
        for n in [3usize, 10, 50] {
            let err = barnes_g_log(n).unwrap() - barnes_g_log_exact(n);
            let next = 1.0 / (720.0 * (n * n) as f64);
            assert!((err - next).abs() < 2.0 / (n as f64).powi(4), "n = {n}: {err:e}");
        }
    }

    #[test]
    fn sum_j_log_j_from_barnes() {
        let n = 50usize;
        let direct: f64 = (1..n).map(|j| j as f64 * (j as f64).ln()).sum();
        let via = n as f64 * lgamma(n as f64).unwrap() - barnes_g_log(n).unwrap();
        assert!((via - direct).abs() < 1e-6, "{:e}", via - direct);
    }

    #[test]
    fn printed_expansion_evaluation() {
        let n = 10f64;
        let c = 0.5 * (2.0 * PI).ln();
        let expect = -n * n * n.ln() / 4.0 + n * n * (0.625 + c / 2.0) - 0.75 * n * n.ln()
            - n * (0.75 + c / 2.0)
            - n.ln() / 24.0;
        let v = asymptotic_log_volume(10).unwrap();
        assert!((v.log_value - expect).abs() < 1e-12);
        assert!(!v.exact);
    }

    #[test]
    fn corrected_expansion_tracks_joe() {
        let d = |n| {
            joe_log_volume(n).unwrap().log_value - corrected_asymptotic_log_volume(n).unwrap().log_value
        };
        assert!((d(500) - d(400)).abs() < 1e-3);
        let ds: Vec<f64> = (20..=500).map(d).collect();
        let (lo, hi) = ds.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(hi - lo < 0.01);
    }

    #[test]
    fn ratio_against_rooted_metric() {
        let r6 = ratio_log_i_over_rmet(6).unwrap();
        assert!((r6 - (9.495201911854834e-4f64 * 945.0).ln()).abs() < 1e-9);
        assert!(ratio_log_i_over_rmet(5).unwrap() > 0.0);
        assert!(ratio_log_i_over_rmet(2).is_err());
    }

    #[test]
    fn scientific_formatting() {
        let v = LogVol {
            log_value: (5.5436e-8f64).ln(),
            exact: true,
        };
        assert_eq!(v.format_sci(3), "5.54e-08");
        let tiny = LogVol {
            log_value: -150.0 * std::f64::consts::LN_10 + 9.08f64.ln(),
            exact: true,
        };
        assert_eq!(tiny.format_sci(3), "9.08e-150");
        let nine = LogVol {
            log_value: 9.9996f64.ln(),
            exact: true,
        };
        assert_eq!(nine.format_sci(3), "1.00e+01");
    }
}
