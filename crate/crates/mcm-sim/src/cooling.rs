//! Semi-classical 1-D Sisyphus cooling on the 685-nm quadrupole transition.
//!
//! A long-lived excited state trapped more tightly than the ground state
//! (ω_e > ω_g) converts excited-state motion into net energy loss. The model
//! averages the per-cycle energy change δU(x₀) over the excitation rate
//! r(x) — a saturated Lorentzian with a position-dependent trap Stark
//! detuning — and the thermal position density ρ(x).

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::units::{E_RECOIL_852, Freq, HBAR, KB, M_CS, Temp, TWO_PI};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Parameters of the 1-D Sisyphus cooling model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CoolingParams {
    /// Excited-state decay rate, rad/s (5d₅/₂: 2π × 124 kHz).
    pub gamma: Freq,
    /// Ground-state trap angular frequency.
    pub omega_g: Freq,
    /// Excited-state trap angular frequency (must exceed 0; cooling needs
    /// ω_e > ω_g).
    pub omega_e: Freq,
    /// Atom mass, kg.
    pub mass: f64,
    /// Cooling-beam saturation parameter I/I_s.
    pub s: f64,
    /// Cooling-laser detuning from resonance at the trap center.
    pub delta_0: Freq,
    /// Atom temperature.
    pub temperature: Temp,
    /// Trap depth at center (expressed as a temperature, U/k_B).
    pub u_trap: Temp,
    /// Tweezer beam waist, m.
    pub waist: f64,
    /// Include the saturation term in the Lorentzian denominator.
    pub saturation_in_denominator: bool,
}

impl Default for CoolingParams {
    fn default() -> Self {
        let gamma = TWO_PI * 124e3;
        CoolingParams {
            gamma: Freq(gamma),
            omega_g: Freq(0.32 * gamma),
            omega_e: Freq(0.64 * gamma),
            mass: M_CS,
            s: 0.2,
            delta_0: Freq(0.0),
            temperature: Temp(10e-6),
            u_trap: Temp(500e-6),
            waist: 1e-6,
            saturation_in_denominator: true,
        }
    }
}

impl CoolingParams {
    pub fn validate(&self) -> Result<()> {
        if self.omega_e.0 <= 0.0 || self.omega_g.0 < 0.0 {
            return Err(Error::Validation("need omega_e > 0 and omega_g >= 0".into()));
        }
        if self.gamma.0 <= 0.0 || self.mass <= 0.0 || self.s < 0.0 {
            return Err(Error::Validation("gamma, mass must be positive; s >= 0".into()));
        }
        if self.temperature.0 <= 0.0 || self.u_trap.0 <= 0.0 || self.waist <= 0.0 {
            return Err(Error::Validation(
                "temperature, trap depth, waist must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Thermal turning point in the excited-state well,
    /// x_m = √(2k_B T/(m ω_e²)).
    pub fn x_m(&self) -> f64 {
        (2.0 * KB * self.temperature.0 / (self.mass * self.omega_e.0 * self.omega_e.0)).sqrt()
    }

    /// RMS width of the thermal position density, σ = (w/2)√(k_B T/U_trap).
    pub fn sigma(&self) -> f64 {
        self.waist / 2.0 * (self.temperature.0 / self.u_trap.0).sqrt()
    }

    /// Trap depth in joules.
    fn u_trap_j(&self) -> f64 {
        KB * self.u_trap.0
    }
}

/// Decay-weighted mean energy change of one cooling cycle excited at x₀:
/// δU = −(mω_e²(1 − ω_g²/ω_e²)/(4[1 + γ²/(4ω_e²)]))(x_m² − 2x₀²), joules.
///
/// Negative at the trap center (cooling), flipping sign at x₀ = x_m/√2.
/// `x0` must lie in the classically accessible range |x₀| ≤ x_m.
pub fn delta_u(x0: f64, p: &CoolingParams) -> Result<f64> {
    let xm = p.x_m();
    if x0.abs() > xm {
        return Err(Error::domain(format!(
            "x0 = {x0:.3e} m outside the classical range |x0| <= {xm:.3e} m"
        )));
    }
    Ok(delta_u_raw(x0, p))
}

/// δU without the accessibility check, as used inside the spatial average
/// (where the analytic form is continued smoothly past x_m).
pub fn delta_u_raw(x0: f64, p: &CoolingParams) -> f64 {
    let we = p.omega_e.0;
    let wg = p.omega_g.0;
    let g = p.gamma.0;
    let c = p.mass * we * we * (1.0 - (wg * wg) / (we * we))
        / (4.0 * (1.0 + g * g / (4.0 * we * we)));
    let xm = p.x_m();
    -c * (xm * xm - 2.0 * x0 * x0)
}

/// Position-dependent trap Stark detuning of the cooling transition:
/// Δ(x) = (U_trap/ħ)(ω_e²/ω_g² − 1)(1 − e^{−2x²/w²}).
pub fn stark_detuning(x: f64, p: &CoolingParams) -> f64 {
    if p.omega_g.0 == 0.0 {
        return 0.0;
    }
    let ratio = (p.omega_e.0 / p.omega_g.0).powi(2) - 1.0;
    p.u_trap_j() / HBAR * ratio * (1.0 - (-2.0 * x * x / (p.waist * p.waist)).exp())
}

/// Excitation rate r(x) = (γ/2)·s/(1 + s + 4[(Δ₀ + Δ(x))/γ]²), 1/s.
pub fn excitation_rate(x: f64, p: &CoolingParams) -> f64 {
    let g = p.gamma.0;
    let d = (p.delta_0.0 + stark_detuning(x, p)) / g;
    let sat = if p.saturation_in_denominator { p.s } else { 0.0 };
    (g / 2.0) * p.s / (1.0 + sat + 4.0 * d * d)
}

/// Normalized thermal position density ρ(x), 1/m.
pub fn position_density(x: f64, p: &CoolingParams) -> f64 {
    let s = p.sigma();
    (-x * x / (2.0 * s * s)).exp() / (s * (TWO_PI).sqrt())
}

/// Result of the spatially averaged cooling-rate integral.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoolingRate {
    /// Temperature cooling rate, K/s (positive = net cooling).
    pub temp_rate: f64,
    /// Same in µK/ms for reporting.
    pub temp_rate_uk_per_ms: f64,
    /// Thermally averaged photon scattering rate ∫ r ρ, 1/s.
    pub scatter_rate: f64,
}

/// Mean cooling rate −∫ δU(x) r(x) ρ(x) dx / k_B over ±5σ.
pub fn mean_cooling_rate(p: &CoolingParams) -> Result<CoolingRate> {
    p.validate()?;
    let sig = p.sigma();
    let f = |x: f64| delta_u_raw(x, p) * excitation_rate(x, p) * position_density(x, p);
    // tolerance: 1e-4 of the integrand peak, scaled by the integration width
    let peak = f(0.0).abs().max(
        (1..5)
            .map(|i| f(i as f64 * sig).abs())
            .fold(0.0, f64::max),
    );
    let tol = (1e-4 * peak * sig).max(f64::MIN_POSITIVE);
    let energy_rate = adaptive_simpson(&f, -5.0 * sig, 5.0 * sig, tol)?;
    let r = |x: f64| excitation_rate(x, p) * position_density(x, p);
    let r_peak = r(0.0).abs().max(r(2.0 * sig).abs()).max(f64::MIN_POSITIVE);
    let scatter_rate = adaptive_simpson(&r, -5.0 * sig, 5.0 * sig, 1e-6 * r_peak * sig)?;
    let temp_rate = -energy_rate / KB;
    Ok(CoolingRate {
        temp_rate,
        temp_rate_uk_per_ms: temp_rate * 1e3,
        scatter_rate,
    })
}

/// One point of a cooling-rate scan over ω_g/γ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanPoint {
    /// Scanned ratio ω_g/γ.
    pub wg_over_gamma: f64,
    pub temp_rate_uk_per_ms: f64,
    pub scatter_rate: f64,
}

/// Cooling-rate scan with molasses-heating crossovers.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub points: Vec<ScanPoint>,
    /// For each supplied molasses scattering rate r_mol: the smallest scanned
    /// ω_g/γ above which cooling exceeds the recoil heating r_mol·2E_rec/k_B.
    pub crossovers: Vec<(f64, Option<f64>)>,
}

/// Scan the cooling rate over a range of ω_g/γ, keeping the ω_e/ω_g ratio of
/// the base parameters fixed. `r_mol` lists molasses scattering rates (1/s)
/// for heating-crossover reporting.
pub fn scan(
    base: &CoolingParams,
    wg_over_gamma: (f64, f64),
    n: usize,
    r_mol: &[f64],
) -> Result<ScanResult> {
    base.validate()?;
    let (lo, hi) = wg_over_gamma;
    if !(lo > 0.0 && hi > lo) || n < 1 {
        return Err(Error::domain("need 0 < lo < hi and n >= 1"));
    }
    if base.omega_g.0 <= 0.0 {
        return Err(Error::domain("scan needs a positive base omega_g"));
    }
    let ratio_eg = base.omega_e.0 / base.omega_g.0;
    let points: Vec<ScanPoint> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = if n == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            let mut p = *base;
            p.omega_g = Freq(x * base.gamma.0);
            p.omega_e = Freq(ratio_eg * p.omega_g.0);
            let r = mean_cooling_rate(&p)?;
            Ok(ScanPoint {
                wg_over_gamma: x,
                temp_rate_uk_per_ms: r.temp_rate_uk_per_ms,
                scatter_rate: r.scatter_rate,
            })
        })
        .collect::<Result<_>>()?;
    let crossovers = r_mol
        .iter()
        .map(|&rm| {
            // recoil heating of 1-D molasses at scattering rate r_mol, µK/ms
            let heating = rm * 2.0 * E_RECOIL_852 / KB * 1e3;
            let x = points
                .iter()
                .find(|pt| pt.temp_rate_uk_per_ms > heating)
                .map(|pt| pt.wg_over_gamma);
            (rm, x)
        })
        .collect();
    Ok(ScanResult { points, crossovers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn no_differential_trap_no_cooling() {
        let mut p = CoolingParams::default();
        p.omega_e = p.omega_g;
        assert_eq!(delta_u(0.0, &p).unwrap(), 0.0);
        let r = mean_cooling_rate(&p).unwrap();
        assert!(r.temp_rate.abs() < 1e-12);
    }

    #[test]
    fn cooling_at_trap_center_sign_flip() {
        let p = CoolingParams::default();
        assert!(delta_u(0.0, &p).unwrap() < 0.0);
        let flip = p.x_m() / 2f64.sqrt();
        assert!(delta_u(0.999 * flip, &p).unwrap() < 0.0);
        assert!(delta_u(1.001 * flip, &p).unwrap() > 0.0);
        assert!(delta_u(1.5 * p.x_m(), &p).is_err());
    }

    #[test]
    fn excitation_rate_center_and_symmetry() {
        let p = CoolingParams::default();
        let r0 = excitation_rate(0.0, &p);
        assert_relative_eq!(r0, p.gamma.0 / 2.0 * 0.2 / 1.2, max_relative = 1e-12);
        assert_relative_eq!(
            excitation_rate(3e-8, &p),
            excitation_rate(-3e-8, &p),
            max_relative = 1e-12
        );
        // without saturation in the denominator the central rate is higher
        let mut p2 = p;
        p2.saturation_in_denominator = false;
        assert!(excitation_rate(0.0, &p2) > r0);
    }

    #[test]
    fn density_normalized() {
        let p = CoolingParams::default();
        let sig = p.sigma();
        let v = adaptive_simpson(&|x| position_density(x, &p), -8.0 * sig, 8.0 * sig, 1e-9)
            .unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn peak_rate_at_reference_params() {
        // ω_g/γ = 0.32, ω_e = 2ω_g, s = 0.2, Δ0 = 0, T = 10 µK,
        // U = 500 µK, w = 1 µm → ≈ 42 µK/ms
        let r = mean_cooling_rate(&CoolingParams::default()).unwrap();
        assert_relative_eq!(r.temp_rate_uk_per_ms, 42.08, max_relative = 1e-2);
        assert_relative_eq!(r.scatter_rate, 2.48e4, max_relative = 2e-2);
    }

    #[test]
    fn scan_consistency_and_crossover() {
        let base = CoolingParams::default();
        let single = scan(&base, (0.32, 0.4), 1, &[]).unwrap();
        let direct = mean_cooling_rate(&base).unwrap();
        assert_relative_eq!(
            single.points[0].temp_rate_uk_per_ms,
            direct.temp_rate_uk_per_ms,
            max_relative = 1e-10
        );
        let sc = scan(&base, (0.05, 0.5), 20, &[1e5]).unwrap();
        assert_eq!(sc.points.len(), 20);
        // crossover exists for a modest molasses rate
        assert!(sc.crossovers[0].1.is_some());
        assert!(scan(&base, (0.5, 0.1), 5, &[]).is_err());
    }

    #[test]
    fn validation_rejects_bad_params() {
        let mut p = CoolingParams::default();
        p.temperature = Temp(0.0);
        assert!(mean_cooling_rate(&p).is_err());
    }
}
