//! Log-log least-squares fitting of power laws and saturating loss curves.

use serde::{Deserialize, Serialize};

use super::ScalingSeries;
use crate::{Error, Result};

/// A fitted `y = beta * x^alpha` relation.
///
/// `r_squared` is the coefficient of determination in (ln x, ln y) space,
/// where the fit itself is computed; `r_squared_linear` is the same
/// statistic evaluated against the raw y values as a diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub beta: f64,
    pub r_squared: f64,
    pub r_squared_linear: f64,
    pub n_points: usize,
}

impl PowerLawFit {
    /// Tag for the space the estimator works in.
    pub const FIT_SPACE: &'static str = "log-log";

    /// Evaluate `beta * x^alpha`.
    pub fn predict(&self, x: f64) -> Result<f64> {
        check_positive_x(x)?;
        Ok(self.beta * x.powf(self.alpha))
    }
}

/// A fitted `y = l_inf + beta * x^alpha` relation with an irreducible floor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossCurveFit {
    pub l_inf: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Coefficient of determination in (ln x, ln(y - l_inf)) space at the
    /// selected floor.
    pub r_squared: f64,
    pub r_squared_linear: f64,
    pub n_points: usize,
}

impl LossCurveFit {
    /// Evaluate `l_inf + beta * x^alpha`.
    pub fn predict(&self, x: f64) -> Result<f64> {
        check_positive_x(x)?;
        Ok(self.l_inf + self.beta * x.powf(self.alpha))
    }
}

fn check_positive_x(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::DomainError(format!(
            "prediction point must be finite and positive, got {x}"
        )));
    }
    Ok(())
}

/// Raw log-log OLS output, shared by the public fits, the bootstrap
/// (which feeds multisets with repeated points), and the holdout
/// diagnostics.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogOls {
    pub alpha: f64,
    pub ln_beta: f64,
    /// Residual sum of squares in log space.
    pub ssr: f64,
    /// Total sum of squares in log space.
    pub sst: f64,
}

impl LogOls {
    pub fn beta(&self) -> f64 {
        self.ln_beta.exp()
    }

    pub fn r_squared(&self) -> f64 {
        if self.sst == 0.0 {
            // all log-y equal: the horizontal line is an exact fit
            1.0
        } else {
            1.0 - self.ssr / self.sst
        }
    }
}

/// OLS of ln y on ln x over the given points (repeats allowed; at least
/// two distinct x values required by the caller).
pub(crate) fn ols_loglog(points: &[(f64, f64)]) -> LogOls {
    let n = points.len() as f64;
    let mut mean_lx = 0.0;
    let mut mean_ly = 0.0;
    for &(x, y) in points {
        mean_lx += x.ln();
        mean_ly += y.ln();
    }
    mean_lx /= n;
    mean_ly /= n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut sst = 0.0;
    for &(x, y) in points {
        let dx = x.ln() - mean_lx;
        let dy = y.ln() - mean_ly;
        sxx += dx * dx;
        sxy += dx * dy;
        sst += dy * dy;
    }
    let alpha = sxy / sxx;
    let ln_beta = mean_ly - alpha * mean_lx;
    let mut ssr = 0.0;
    for &(x, y) in points {
        let resid = y.ln() - (ln_beta + alpha * x.ln());
        ssr += resid * resid;
    }
    LogOls {
        alpha,
        ln_beta,
        ssr,
        sst,
    }
}

/// R² of predictions against raw y values.
fn r_squared_linear(points: &[(f64, f64)], predict: impl Fn(f64) -> f64) -> f64 {
    let n = points.len() as f64;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut ssr = 0.0;
    let mut sst = 0.0;
    for &(x, y) in points {
        let d = y - predict(x);
        ssr += d * d;
        let t = y - mean_y;
        sst += t * t;
    }
    if sst == 0.0 {
        if ssr == 0.0 {
            1.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        1.0 - ssr / sst
    }
}

/// Fit `y = beta * x^alpha` by ordinary least squares in log-log space.
pub fn fit_power_law(series: &ScalingSeries) -> Result<PowerLawFit> {
    let points = series.points();
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "power-law fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    let ols = ols_loglog(points);
    let (alpha, beta) = (ols.alpha, ols.beta());
    Ok(PowerLawFit {
        alpha,
        beta,
        r_squared: ols.r_squared(),
        r_squared_linear: r_squared_linear(points, |x| beta * x.powf(alpha)),
        n_points: points.len(),
    })
}

/// Number of floor candidates in the coarse grid.
const FLOOR_GRID: usize = 1000;
/// The floor is searched over [0, FLOOR_CAP_FRACTION * min y].
const FLOOR_CAP_FRACTION: f64 = 0.999;

/// Fit `y = l_inf + beta * x^alpha` by searching the floor over a grid of
/// [`FLOOR_GRID`] candidates in `[0, 0.999 * min y]` (inner log-log OLS per
/// candidate), then refining around the best candidate by golden-section
/// search to `1e-6 * min y`.
pub fn fit_loss_curve(series: &ScalingSeries) -> Result<LossCurveFit> {
    let points = series.points();
    if points.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "loss-curve fit needs at least 4 points, got {}",
            points.len()
        )));
    }
    let min_y = series.min_y();
    let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if min_y == max_y {
        return Err(Error::DegenerateSeries(
            "all y values equal; no reducible component to fit".into(),
        ));
    }

    let cap = FLOOR_CAP_FRACTION * min_y;
    let step = cap / (FLOOR_GRID - 1) as f64;
    let ssr_at = |floor: f64| shifted_ols(points, floor).ssr;

    let mut best_i = 0;
    let mut best_ssr = f64::INFINITY;
    for i in 0..FLOOR_GRID {
        let ssr = ssr_at(i as f64 * step);
        if ssr < best_ssr {
            best_ssr = ssr;
            best_i = i;
        }
    }
    let lo = (best_i as f64 * step - step).max(0.0);
    let hi = (best_i as f64 * step + step).min(cap);
    let l_inf = golden_section_min(ssr_at, lo, hi, 1e-6 * min_y);

    fit_loss_curve_at(series, l_inf)
}

/// Fit the power-law component with the irreducible floor pinned to a
/// given value. With `l_inf = 0` this coincides with [`fit_power_law`].
pub fn fit_loss_curve_at(series: &ScalingSeries, l_inf: f64) -> Result<LossCurveFit> {
    let points = series.points();
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "loss-curve fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    if !l_inf.is_finite() || l_inf < 0.0 || l_inf >= series.min_y() {
        return Err(Error::DomainError(format!(
            "floor must satisfy 0 <= l_inf < min y = {}, got {l_inf}",
            series.min_y()
        )));
    }
    let ols = shifted_ols(points, l_inf);
    let (alpha, beta) = (ols.alpha, ols.beta());
    Ok(LossCurveFit {
        l_inf,
        alpha,
        beta,
        r_squared: ols.r_squared(),
        r_squared_linear: r_squared_linear(points, |x| l_inf + beta * x.powf(alpha)),
        n_points: points.len(),
    })
}

fn shifted_ols(points: &[(f64, f64)], floor: f64) -> LogOls {
    let shifted: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x, y - floor)).collect();
    ols_loglog(&shifted)
}

/// Golden-section minimization of a unimodal function on [a, b].
fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    if b - a <= tol {
        return 0.5 * (a + b);
    }
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaling::ScaleAxis;

    fn series(points: Vec<(f64, f64)>) -> ScalingSeries {
        ScalingSeries::new(ScaleAxis::ModelParams, "WER", "test", points).unwrap()
    }

    #[test]
    fn exact_power_law_recovered() {
        let pts: Vec<(f64, f64)> = [1.0f64, 4.0, 16.0, 64.0]
            .iter()
            .map(|&x| (x, 2.0 * x.powf(-0.5)))
            .collect();
        let fit = fit_power_law(&series(pts)).unwrap();
        assert!((fit.alpha - -0.5).abs() < 1e-9);
        assert!((fit.beta - 2.0).abs() / 2.0 < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_points_determine_the_line() {
        let fit = fit_power_law(&series(vec![(1.0, 10.0), (100.0, 1.0)])).unwrap();
        assert!((fit.alpha - -0.5).abs() < 1e-12);
        assert!((fit.beta - 10.0).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        // predict reproduces both observations exactly
        assert!((fit.predict(1.0).unwrap() - 10.0).abs() < 1e-9);
        assert!((fit.predict(100.0).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn predict_closed_form() {
        let fit = PowerLawFit {
            alpha: -0.5,
            beta: 2.0,
            r_squared: 1.0,
            r_squared_linear: 1.0,
            n_points: 4,
        };
        assert!((fit.predict(4.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(fit.predict(0.0).is_err());
        assert!(fit.predict(-3.0).is_err());
    }

    #[test]
    fn loss_curve_recovers_floor() {
        let pts: Vec<(f64, f64)> = (0..11)
            .map(|i| {
                let x = (1u64 << i) as f64;
                (x, 2.0 + 5.0 * x.powf(-0.7))
            })
            .collect();
        let fit = fit_loss_curve(&series(pts)).unwrap();
        assert!((fit.l_inf - 2.0).abs() / 2.0 < 0.01, "l_inf = {}", fit.l_inf);
        assert!((fit.alpha - -0.7).abs() / 0.7 < 0.01, "alpha = {}", fit.alpha);
        assert!((fit.beta - 5.0).abs() / 5.0 < 0.01, "beta = {}", fit.beta);
        // closed-form evaluation at x = 1
        assert!((fit.predict(1.0).unwrap() - (fit.l_inf + fit.beta)).abs() < 1e-12);
    }

    #[test]
    fn loss_curve_zero_floor_reduces_to_power_law() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0]
            .iter()
            .map(|&x| (x, 3.0 / x))
            .collect();
        let s = series(pts);
        let fit = fit_loss_curve(&s).unwrap();
        let cap = 0.999 * s.min_y();
        let grid_step = cap / (FLOOR_GRID - 1) as f64;
        assert!(fit.l_inf <= grid_step, "l_inf = {}", fit.l_inf);
        assert!((fit.alpha - -1.0).abs() < 0.01);
        assert!((fit.beta - 3.0).abs() / 3.0 < 0.01);
    }

    #[test]
    fn loss_curve_rejects_constant_series() {
        let s = series(vec![(1.0, 5.0), (2.0, 5.0), (4.0, 5.0), (8.0, 5.0)]);
        assert!(matches!(fit_loss_curve(&s), Err(Error::DegenerateSeries(_))));
    }

    #[test]
    fn loss_curve_needs_four_points() {
        let s = series(vec![(1.0, 5.0), (2.0, 4.0), (4.0, 3.0)]);
        assert!(matches!(fit_loss_curve(&s), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn forced_zero_floor_matches_power_law() {
        let pts = vec![(1.0, 9.3), (2.0, 7.1), (4.0, 6.2), (8.0, 5.9)];
        let s = series(pts);
        let plain = fit_power_law(&s).unwrap();
        let forced = fit_loss_curve_at(&s, 0.0).unwrap();
        assert_eq!(forced.alpha, plain.alpha);
        assert_eq!(forced.beta, plain.beta);
        assert_eq!(forced.r_squared, plain.r_squared);
    }

    #[test]
    fn scale_equivariance_in_x_and_y() {
        let pts = vec![(1.0, 16.8), (2.0, 11.8), (4.0, 9.7), (9.0, 8.5)];
        let base = fit_power_law(&series(pts.clone())).unwrap();
        for c in [0.001, 3.0, 1e9] {
            let sx: Vec<_> = pts.iter().map(|&(x, y)| (c * x, y)).collect();
            let fx = fit_power_law(&series(sx)).unwrap();
            assert!((fx.alpha - base.alpha).abs() < 1e-9 * base.alpha.abs());
            let expect_beta = base.beta * c.powf(-base.alpha);
            assert!((fx.beta - expect_beta).abs() / expect_beta < 1e-9);
            assert!((fx.r_squared - base.r_squared).abs() < 1e-9);

            let sy: Vec<_> = pts.iter().map(|&(x, y)| (x, c * y)).collect();
            let fy = fit_power_law(&series(sy)).unwrap();
            assert!((fy.alpha - base.alpha).abs() < 1e-9 * base.alpha.abs());
            assert!((fy.beta - c * base.beta).abs() / (c * base.beta) < 1e-9);
            assert!((fy.r_squared - base.r_squared).abs() < 1e-9);
        }
    }

    #[test]
    fn r_squared_one_iff_collinear_in_log_space() {
        // collinear
        let exact: Vec<(f64, f64)> = [1.0f64, 3.0, 9.0, 27.0]
            .iter()
            .map(|&x| (x, 4.0 * x.powf(1.7)))
            .collect();
        let fit = fit_power_law(&series(exact)).unwrap();
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        // visibly off the line
        let bent = vec![(1.0, 4.0), (3.0, 26.0), (9.0, 170.0), (27.0, 400.0)];
        let fit = fit_power_law(&series(bent)).unwrap();
        assert!(fit.r_squared < 1.0 - 1e-9);
    }
}
