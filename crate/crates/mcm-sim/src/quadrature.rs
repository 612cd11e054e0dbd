//! Small numeric toolbox: adaptive Simpson quadrature, golden-section
//! minimization, and bisection root finding.

use crate::error::{Error, Result};

/// Adaptive Simpson integration of `f` on `[a, b]` to absolute tolerance
/// `tol`. Errors out if the recursion fails to converge.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || tol <= 0.0 {
        return Err(Error::Quadrature(format!(
            "bad quadrature request: [{a}, {b}], tol {tol}"
        )));
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "max subdivision depth reached on [{a}, {b}] (residual {delta:.3e}, tol {tol:.3e})"
        )));
    }
    let l = simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
    let r = simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
    Ok(l + r)
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x_min, f(x_min))` once the bracket shrinks below `tol`.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(a < b) || tol <= 0.0 {
        return Err(Error::solver(format!("bad minimize bracket [{a}, {b}]")));
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..400 {
        if b - a < tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)))
}

/// Bisection root of `f` on `[a, b]`; requires a sign change on the bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::solver(format!(
            "no sign change on [{a}, {b}]: f(a) = {fa:.3e}, f(b) = {fb:.3e}"
        )));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a).abs() < tol {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn integrates_gaussian() {
        let f = |x: f64| (-x * x / 2.0).exp();
        let v = adaptive_simpson(&f, -8.0, 8.0, 1e-10).unwrap();
        assert_relative_eq!(v, (2.0 * PI).sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn integrates_oscillatory() {
        let f = |x: f64| (10.0 * x).sin();
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-10).unwrap();
        assert_relative_eq!(v, (1.0 - (10.0f64).cos()) / 10.0, epsilon = 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        let f = |x: f64| x;
        assert!(adaptive_simpson(&f, 0.0, f64::INFINITY, 1e-8).is_err());
        assert!(adaptive_simpson(&f, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn minimizes_quartic() {
        let f = |x: f64| (x - 1.5).powi(2) + 0.3;
        let (x, fx) = golden_section_min(&f, -10.0, 10.0, 1e-10).unwrap();
        assert_relative_eq!(x, 1.5, epsilon = 1e-8);
        assert_relative_eq!(fx, 0.3, epsilon = 1e-10);
    }

    #[test]
    fn bisects_cosine_root() {
        let r = bisect(&|x: f64| x.cos(), 0.0, 3.0, 1e-12).unwrap();
        assert_relative_eq!(r, PI / 2.0, epsilon = 1e-10);
        assert!(bisect(&|x: f64| x.cos(), 0.0, 1.0, 1e-12).is_err());
    }
}
