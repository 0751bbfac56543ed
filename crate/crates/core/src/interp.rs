//! Piecewise cubic interpolation and bracketed root finding.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Piecewise cubic through a set of knots.
///
/// On the interval between knots `i` and `i + 1` the curve is the Newton
/// cubic through knots `i - 1 ..= i + 2`; the window is clamped so that it
/// always holds four knots. Adjacent pieces share the two knots bounding
/// their interval, which makes the curve continuous.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

pub fn interpolate_cubic(points: &[(f64, f64)]) -> Result<PiecewiseCubic> {
    if points.len() < 4 {
        return Err(Error::InsufficientData { got: points.len() });
    }
    if points
        .windows(2)
        .any(|w| w[1].0.partial_cmp(&w[0].0) != Some(Ordering::Greater))
    {
        return Err(Error::NonMonotoneAbscissae);
    }
    Ok(PiecewiseCubic {
        xs: points.iter().map(|p| p.0).collect(),
        ys: points.iter().map(|p| p.1).collect(),
    })
}

impl PiecewiseCubic {
    /// Knots at abscissae `first, first + 1, ...`.
    pub fn from_unit_knots(first: usize, values: &[f64]) -> Result<PiecewiseCubic> {
        let points: Vec<(f64, f64)> = values
            .iter()
            .enumerate()
            .map(|(i, &y)| ((first + i) as f64, y))
            .collect();
        interpolate_cubic(&points)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// Index `i` of the interval `[xs[i], xs[i + 1]]` holding `x`. Points
    /// outside the domain use the nearest end interval.
    fn interval(&self, x: f64) -> usize {
        let last = self.xs.len() - 2;
        match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p => (p - 1).min(last),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.interval(x);
        if x == self.xs[i] {
            return self.ys[i];
        }
        if x == self.xs[i + 1] {
            return self.ys[i + 1];
        }
        let start = i.saturating_sub(1).min(self.xs.len() - 4);
        newton_cubic(&self.xs[start..start + 4], &self.ys[start..start + 4], x)
    }
}

fn newton_cubic(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut coef = [ys[0], ys[1], ys[2], ys[3]];
    for order in 1..4 {
        for j in (order..4).rev() {
            coef[j] = (coef[j] - coef[j - 1]) / (xs[j] - xs[j - order]);
        }
    }
    let mut acc = coef[3];
    for j in (0..3).rev() {
        acc = acc * (x - xs[j]) + coef[j];
    }
    acc
}

/// Brent's method on a bracket `[a, b]` with `f(a)` and `f(b)` of opposite
/// sign (or one of them zero). Stops once `|f(x)| <= f_tol` or the bracket
/// is narrower than `x_tol`.
pub fn brent_root<F>(f: F, a: f64, b: f64, x_tol: f64, f_tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    const MAX_ITER: usize = 200;
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * x_tol;
        let m = 0.5 * (c - b);
        if fb.abs() <= f_tol || m.abs() <= tol {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when a == c.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KNOTS: [(f64, f64); 4] = [(10.0, 0.128), (11.0, 0.028), (12.0, -0.028), (13.0, -0.056)];

    #[test]
    fn reproduces_knots() {
        let c = interpolate_cubic(&KNOTS).unwrap();
        for (x, y) in KNOTS {
            assert_eq!(c.eval(x), y);
        }
    }

    #[test]
    fn midpoint_value() {
        // Lagrange weights at the centre of four equispaced nodes are
        // (-1, 9, 9, -1) / 16.
        let c = interpolate_cubic(&KNOTS).unwrap();
        assert!((c.eval(11.5) - (-0.0045)).abs() < 1e-15);
    }

    #[test]
    fn linear_data_stays_linear() {
        let pts: Vec<_> = (1..=12).map(|k| (k as f64, 2.0 * k as f64)).collect();
        let c = interpolate_cubic(&pts).unwrap();
        for i in 0..=1100 {
            let x = 1.0 + i as f64 * 0.01;
            assert!((c.eval(x) - 2.0 * x).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn cubic_data_is_exact_everywhere() {
        let f = |x: f64| 0.5 * x * x * x - 2.0 * x * x + x - 7.0;
        let pts: Vec<_> = (1..=9).map(|k| (k as f64, f(k as f64))).collect();
        let c = interpolate_cubic(&pts).unwrap();
        for i in 0..=80 {
            let x = 1.0 + i as f64 * 0.1;
            assert!((c.eval(x) - f(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn continuity_at_interior_knots() {
        let pts: Vec<_> = (0..8).map(|k| (k as f64, ((k * k) % 5) as f64)).collect();
        let c = interpolate_cubic(&pts).unwrap();
        for k in 1..7 {
            let x = k as f64;
            assert!((c.eval(x - 1e-9) - c.eval(x + 1e-9)).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            interpolate_cubic(&KNOTS[..3]),
            Err(Error::InsufficientData { got: 3 })
        ));
        let bad = [(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (3.0, 0.0)];
        assert!(matches!(
            interpolate_cubic(&bad),
            Err(Error::NonMonotoneAbscissae)
        ));
    }

    #[test]
    fn brent_on_cubic_window() {
        let c = interpolate_cubic(&KNOTS).unwrap();
        let root = brent_root(|x| c.eval(x), 11.0, 12.0, 1e-12, 0.0).unwrap();
        // scipy.optimize.brentq on the same Lagrange cubic.
        assert!((root - 11.420_742_171_329_428).abs() < 1e-9);
    }

    #[test]
    fn brent_requires_bracket() {
        assert!(brent_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0).is_none());
        assert_eq!(brent_root(|x| x - 1.0, 1.0, 2.0, 1e-12, 0.0), Some(1.0));
        let r = brent_root(|x: f64| x.cos(), 1.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
