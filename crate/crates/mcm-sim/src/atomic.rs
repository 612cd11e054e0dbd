//! Static physics of the Cs 6s₁/₂ ground manifold in a bias magnetic field.
//!
//! The 16 hyperfine-Zeeman levels (f = 3: 7 states, f = 4: 9 states) are
//! indexed by [`LevelState`]. The qubit is encoded in the clock pair
//! |0⟩ = |3,0⟩, |1⟩ = |4,0⟩. A [`FieldEnvironment`] supplies level energies
//! (linear Zeeman by default, Breit-Rabi optionally), microwave transition
//! frequencies, and relative magnetic-dipole coupling weights.
//!
//! Photon-scattering rates for the fluorescence readout live here too:
//! the near-resonant rate for a bright atom cycling on f=4 → f'=5, the
//! far-off-resonant rate seen by qubits shelved in f=3, and the
//! cycling/non-cycling rate ratio for 685-nm quadrupole recooling.

use crate::angular::clebsch_gordan;
use crate::error::{Error, Result};
use crate::units::{GAMMA_6P32, HBAR, MU_B, OMEGA_Q, TWO_PI};
use serde::{Deserialize, Serialize};

/// Number of ground-manifold hyperfine-Zeeman levels.
pub const N_LEVELS: usize = 16;

/// 5d₅/₂ quadrupole-transition decay rate, rad/s.
pub const GAMMA_5D52: f64 = TWO_PI * 124e3;

/// 6p₃/₂ hyperfine shifts of f' = 4, 3, 2 relative to f' = 5, rad/s
/// (negative: those levels lie below f' = 5).
pub const D2_HF_SHIFTS: [f64; 3] = [
    -TWO_PI * 251.09e6,
    -TWO_PI * 452.38e6,
    -TWO_PI * 603.60e6,
];

/// Relative oscillator strengths S₃f' for f = 3 → f' = 4, 3, 2
/// (I_sat,f' = I_sat / S₃f').
pub const D2_F3_STRENGTHS: [f64; 3] = [15.0 / 56.0, 3.0 / 8.0, 5.0 / 14.0];

/// Average shelved-state scattering is 9% below the |4,4⟩ stretched-state
/// value at the same detuning (hyperfine-resolved angular-momentum average
/// over the |3,-1⟩ and |3,0⟩ shelving states).
pub const SHELVED_VS_STRETCHED: f64 = 0.91;

/// 5d₅/₂ hyperfine shifts of f' = 5, 4 relative to f' = 6, rad/s.
pub const QUAD_HF_SHIFTS: [f64; 2] = [TWO_PI * 127.4e6, TWO_PI * 233.6e6];

/// Quadrupole saturation-intensity ratios I_sat,f' / I_sat,6 for f' = 5, 4
/// (Zeeman-averaged).
pub const QUAD_SAT_RATIOS: [f64; 2] = [1.7, 3.2];

/// One hyperfine-Zeeman level |f, m⟩ of the Cs ground manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelState {
    pub f: u8,
    pub m: i8,
}

impl LevelState {
    /// Clock qubit |0⟩ = |3,0⟩.
    pub const QUBIT_ZERO: LevelState = LevelState { f: 3, m: 0 };
    /// Clock qubit |1⟩ = |4,0⟩.
    pub const QUBIT_ONE: LevelState = LevelState { f: 4, m: 0 };
    /// Stretched bright state for fluorescence readout.
    pub const BRIGHT: LevelState = LevelState { f: 4, m: 4 };

    pub fn new(f: u8, m: i8) -> Result<Self> {
        let s = LevelState { f, m };
        if !s.is_valid() {
            return Err(Error::domain(format!("|{f},{m}> is not a Cs ground level")));
        }
        Ok(s)
    }

    pub fn is_valid(&self) -> bool {
        matches!(self.f, 3 | 4) && self.m.unsigned_abs() <= self.f
    }

    /// Dense index 0..16: f = 3 maps to m+3 ∈ 0..7, f = 4 to 7+m+4 ∈ 7..16.
    pub fn index(&self) -> usize {
        debug_assert!(self.is_valid());
        match self.f {
            3 => (self.m + 3) as usize,
            _ => 7 + (self.m + 4) as usize,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0..=6 => Ok(LevelState { f: 3, m: i as i8 - 3 }),
            7..=15 => Ok(LevelState { f: 4, m: i as i8 - 11 }),
            _ => Err(Error::domain(format!("level index {i} out of range 0..16"))),
        }
    }

    /// Iterate all 16 levels in index order.
    pub fn all() -> impl Iterator<Item = LevelState> {
        (0..N_LEVELS).map(|i| LevelState::from_index(i).unwrap())
    }
}

impl std::fmt::Display for LevelState {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "|{},{}>", self.f, self.m)
    }
}

/// Zeeman energy model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeemanModel {
    /// First-order Zeeman: E(4,m) = ω_q/2 + mκ, E(3,m) = −ω_q/2 − mκ with
    /// κ = μ_B B / (4ħ).
    #[default]
    Linear,
    /// Full Breit-Rabi diagonalization of the hyperfine + Zeeman Hamiltonian.
    BreitRabi,
}

/// Electron g-factor of the 6s₁/₂ state.
const G_J: f64 = 2.002_540_32;
/// Nuclear g-factor of Cs-133 (electron-Bohr-magneton convention).
const G_I: f64 = -0.000_398_853_95;

/// Bias magnetic field plus the Zeeman model choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldEnvironment {
    /// Bias field magnitude, tesla.
    pub b_field: f64,
    pub model: ZeemanModel,
}

impl FieldEnvironment {
    pub fn new(b_field: f64, model: ZeemanModel) -> Result<Self> {
        if !(b_field >= 0.0 && b_field.is_finite()) {
            return Err(Error::domain(format!("invalid bias field {b_field} T")));
        }
        Ok(FieldEnvironment { b_field, model })
    }

    /// First-order Zeeman slope κ = μ_B B / (4ħ), rad/s per unit m.
    pub fn kappa(&self) -> f64 {
        MU_B * self.b_field / (4.0 * HBAR)
    }

    /// Level energy in rad/s, zero-referenced to the hyperfine centroid at
    /// the midpoint of the clock pair.
    pub fn zeeman_energy(&self, s: LevelState) -> f64 {
        debug_assert!(s.is_valid());
        match self.model {
            ZeemanModel::Linear => {
                let k = self.kappa();
                match s.f {
                    4 => OMEGA_Q / 2.0 + s.m as f64 * k,
                    _ => -OMEGA_Q / 2.0 - s.m as f64 * k,
                }
            }
            ZeemanModel::BreitRabi => self.breit_rabi(s),
        }
    }

    /// Breit-Rabi energy for I = 7/2, J = 1/2 (2I+1 = 8).
    fn breit_rabi(&self, s: LevelState) -> f64 {
        let x = (G_J - G_I) * MU_B * self.b_field / (HBAR * OMEGA_Q);
        let m = s.m as f64;
        // the textbook −ω_q/(2(2I+1)) offset is dropped so that the zero
        // reference matches the linear model (clock pair symmetric at ±ω_q/2)
        let common = G_I * MU_B * m * self.b_field / HBAR;
        let sign = if s.f == 4 { 1.0 } else { -1.0 };
        // stretched states |4, ±4>: the square root degenerates to |1 ± x|
        let root = (1.0 + m * x / 2.0 + x * x).max(0.0).sqrt();
        common + sign * (OMEGA_Q / 2.0) * root
    }

    /// Microwave transition (angular) frequency between a pair of levels in
    /// opposite hyperfine manifolds: E(f=4 level) − E(f=3 level).
    pub fn transition_frequency(&self, a: LevelState, b: LevelState) -> Result<f64> {
        let (lo, hi) = match (a.f, b.f) {
            (3, 4) => (a, b),
            (4, 3) => (b, a),
            _ => {
                return Err(Error::domain(format!(
                    "no microwave transition between {a} and {b} (same manifold)"
                )))
            }
        };
        Ok(self.zeeman_energy(hi) - self.zeeman_energy(lo))
    }

    /// Relative magnetic-dipole coupling weight between |3,m₃⟩ and |4,m₄⟩:
    /// the Clebsch-Gordan factor ⟨3 m₃; 1 q | 4 m₄⟩ with spherical component
    /// q = m₄ − m₃. Zero unless |Δm| ≤ 1.
    pub fn mw_coupling_weight(lower: LevelState, upper: LevelState) -> f64 {
        debug_assert!(lower.f == 3 && upper.f == 4);
        let q = upper.m as i32 - lower.m as i32;
        if q.abs() > 1 {
            return 0.0;
        }
        clebsch_gordan(6, 2, 8, 2 * lower.m as i32, 2 * q, 2 * upper.m as i32)
    }
}

/// Spherical polarization component driving |3,m₃⟩ ↔ |4,m₄⟩:
/// q = m₄ − m₃ ∈ {−1, 0, +1} (σ⁻, π, σ⁺). `None` if dipole-forbidden.
pub fn transition_component(lower: LevelState, upper: LevelState) -> Option<i8> {
    let q = upper.m - lower.m;
    (lower.f == 3 && upper.f == 4 && q.abs() <= 1).then_some(q)
}

/// Near-resonant scattering rate of a two-level cycling transition:
/// r = (γ/2) · s / (1 + s + 4Δ²/γ²), with saturation parameter s = I/I_sat.
pub fn scattering_rate_resonant(s: f64, delta: f64, gamma: f64) -> f64 {
    (gamma / 2.0) * s / (1.0 + s + 4.0 * delta * delta / (gamma * gamma))
}

/// Off-resonant scattering rate of a data qubit shelved in f = 3 while the
/// readout light runs at saturation s and detuning Δ from f=4 → f'=5.
///
/// Sums the contributions through f' = 4, 3, 2 with hyperfine-resolved
/// saturation intensities, each detuned by the full 9.2 GHz ground splitting,
/// and applies the shelved-vs-stretched angular factor.
pub fn scattering_rate_shelved(s: f64, delta: f64) -> f64 {
    let g = GAMMA_6P32;
    let mut rate = 0.0;
    for (shift, strength) in D2_HF_SHIFTS.iter().zip(D2_F3_STRENGTHS) {
        let s_f = s * strength;
        let d = delta + OMEGA_Q + shift;
        rate += (g / 2.0) * s_f / (1.0 + s_f + 4.0 * d * d / (g * g));
    }
    SHELVED_VS_STRETCHED * rate
}

/// Ratio r_nc / r_c of non-cycling (via 5d₅/₂ f' = 5, 4) to cycling
/// (f' = 6) scattering for 685-nm quadrupole recooling.
///
/// `s6` is the saturation parameter I/I_sat,6 on the cycling line and
/// `delta` the detuning of the cooling light from it.
pub fn quadrupole_cycling_ratio(s6: f64, delta: f64) -> Result<f64> {
    if s6 <= 0.0 {
        return Err(Error::domain("quadrupole saturation must be positive"));
    }
    let g = GAMMA_5D52;
    let r_c = (g / 2.0) * s6 / (1.0 + s6 + 4.0 * delta * delta / (g * g));
    let mut r_nc = 0.0;
    for (shift, ratio) in QUAD_HF_SHIFTS.iter().zip(QUAD_SAT_RATIOS) {
        let s_f = s6 / ratio;
        let d = delta + shift;
        r_nc += (g / 2.0) * s_f / (1.0 + s_f + 4.0 * d * d / (g * g));
    }
    Ok(r_nc / r_c)
}
