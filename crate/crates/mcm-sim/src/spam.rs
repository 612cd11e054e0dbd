//! State-preparation-and-measurement (SPAM) correction algebra.
//!
//! Raw mid-circuit measurement fidelities are limited by atom loss, imperfect
//! optical pumping, and blow-away leakage that have nothing to do with the
//! measurement itself. Auxiliary reference experiments (`R_3prep`, `R_4prep`,
//! `R_base`, `R_BA`) pin those channels down, and the correction formulas here
//! invert the first-order conditional-probability model to recover the
//! underlying conditional fidelities.
//!
//! Uncertainty propagation is first-order (delta method). For the ratio
//! formulas the numerator and denominator are propagated as independent
//! aggregates; across the six process-fidelity inputs the per-input results
//! are combined as independent.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A measured probability with its 1σ uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    pub sigma: f64,
}

impl Measured {
    pub fn new(value: f64, sigma: f64) -> Result<Self> {
        let m = Measured { value, sigma };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.value) || self.sigma < 0.0 {
            return Err(Error::Validation(format!(
                "measured probability must be in [0,1] with sigma >= 0: {} ({})",
                self.value, self.sigma
            )));
        }
        Ok(())
    }
}

/// A corrected fidelity with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectedFidelity {
    pub value: f64,
    pub sigma: f64,
    /// Which correction formula produced this value.
    pub formula: &'static str,
    /// Set when the corrected value exceeds 1; the bound is one-sided, so the
    /// value is reported as-is rather than clamped.
    pub exceeds_unity: bool,
}

impl CorrectedFidelity {
    fn from_ratio(num: Measured, den: Measured, formula: &'static str) -> Result<Self> {
        if den.value <= 0.0 {
            return Err(Error::domain(format!(
                "non-positive correction denominator {:.4} in {formula}"
            , den.value)));
        }
        let value = num.value / den.value;
        // numerator and denominator propagated as independent
        let rel = ((num.sigma / num.value).powi(2) + (den.sigma / den.value).powi(2)).sqrt();
        let sigma = if num.value == 0.0 {
            num.sigma / den.value
        } else {
            value.abs() * rel
        };
        Ok(CorrectedFidelity {
            value,
            sigma,
            formula,
            exceeds_unity: value > 1.0,
        })
    }
}

/// Measured SPAM-reference inputs. The data-qubit and ancilla analyses used
/// separate preparation-reference runs, hence the two (R3, R4) pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpamInputs {
    /// Minimum of the raw bright-detection Ramsey fringe.
    pub p_db_min: Measured,
    /// f=3 retention reference for the data-qubit analysis.
    pub r3_prep_data: Measured,
    /// f=4 retention reference for the data-qubit analysis.
    pub r4_prep_data: Measured,
    /// f=3 retention reference for the ancilla analysis.
    pub r3_prep: Measured,
    /// f=4 retention reference for the ancilla analysis.
    pub r4_prep: Measured,
    /// Back-to-back measurement retention, 1 − ε_l,pre − ε_l,post.
    pub r_base: Measured,
    /// Blow-away survival reference, ≈ ε_BA.
    pub r_ba: Measured,
    /// Dark-detection probability with a |0⟩ input (ancilla experiment 1).
    pub p1_d: Measured,
    /// Bright-detection probability with a |1⟩ input (ancilla experiment 2).
    pub p2_b: Measured,
    /// Raw bright-detection probability per data-qubit input state.
    pub data_rows: Vec<(String, Measured)>,
}

impl Default for SpamInputs {
    fn default() -> Self {
        let m = |v, s| Measured { value: v, sigma: s };
        SpamInputs {
            p_db_min: m(0.01, 0.01),
            r3_prep_data: m(0.970, 0.003),
            r4_prep_data: m(0.014, 0.002),
            r3_prep: m(0.977, 0.005),
            r4_prep: m(0.020, 0.002),
            r_base: m(0.977, 0.005),
            r_ba: m(0.005, 0.002),
            p1_d: m(0.936, 0.005),
            p2_b: m(0.943, 0.005),
            data_rows: vec![
                ("(|0>+|1>)/sqrt2".into(), m(0.930, 0.008)),
                ("(|0>-|1>)/sqrt2".into(), m(0.941, 0.008)),
                ("(|0>+i|1>)/sqrt2".into(), m(0.934, 0.009)),
                ("(|0>-i|1>)/sqrt2".into(), m(0.934, 0.010)),
                ("|0>".into(), m(0.940, 0.004)),
                ("|1>".into(), m(0.946, 0.003)),
            ],
        }
    }
}

impl SpamInputs {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("p_db_min", &self.p_db_min),
            ("r3_prep_data", &self.r3_prep_data),
            ("r4_prep_data", &self.r4_prep_data),
            ("r3_prep", &self.r3_prep),
            ("r4_prep", &self.r4_prep),
            ("r_base", &self.r_base),
            ("r_ba", &self.r_ba),
            ("p1_d", &self.p1_d),
            ("p2_b", &self.p2_b),
        ] {
            v.validate()
                .map_err(|e| Error::Validation(format!("{name}: {e}")))?;
        }
        for (label, v) in &self.data_rows {
            v.validate()
                .map_err(|e| Error::Validation(format!("row {label:?}: {e}")))?;
        }
        Ok(())
    }
}

/// Lower bound on the data-qubit conditional fidelity,
/// P(|0⟩_out | |0⟩_in) ≥ (P_DB − P_DB,min) / (R_3prep − R_4prep).
pub fn correct_data_fidelity(
    p_db: Measured,
    p_db_min: Measured,
    r3_prep: Measured,
    r4_prep: Measured,
) -> Result<CorrectedFidelity> {
    let num = Measured {
        value: p_db.value - p_db_min.value,
        sigma: (p_db.sigma.powi(2) + p_db_min.sigma.powi(2)).sqrt(),
    };
    let den = Measured {
        value: r3_prep.value - r4_prep.value,
        sigma: (r3_prep.sigma.powi(2) + r4_prep.sigma.powi(2)).sqrt(),
    };
    CorrectedFidelity::from_ratio(num, den, "(P_DB - P_DB_min)/(R3prep - R4prep)")
}

/// Arithmetic mean of the six per-input process fidelities (±x, ±y, ±z),
/// uncertainties combined as independent.
pub fn average_process_fidelity(rows: &[CorrectedFidelity]) -> Result<CorrectedFidelity> {
    if rows.len() != 6 {
        return Err(Error::domain(format!(
            "process-fidelity average needs exactly 6 inputs, got {}",
            rows.len()
        )));
    }
    let n = rows.len() as f64;
    let value = rows.iter().map(|r| r.value).sum::<f64>() / n;
    let sigma = rows.iter().map(|r| r.sigma * r.sigma).sum::<f64>().sqrt() / n;
    Ok(CorrectedFidelity {
        value,
        sigma,
        formula: "mean of 6 per-input fidelities",
        exceeds_unity: value > 1.0,
    })
}

/// Preparation-corrected ancilla detection fidelities
/// (P(D | |0⟩), P(B | |1⟩)).
pub fn correct_ancilla(
    p1_d: Measured,
    p2_b: Measured,
    r_base: Measured,
    r4_prep: Measured,
    r3_prep: Measured,
    r_ba: Measured,
) -> Result<(CorrectedFidelity, CorrectedFidelity)> {
    let den = Measured {
        value: 0.5 - r4_prep.value + r3_prep.value - r_base.value / 2.0 + r_ba.value,
        sigma: (r4_prep.sigma.powi(2)
            + r3_prep.sigma.powi(2)
            + (r_base.sigma / 2.0).powi(2)
            + r_ba.sigma.powi(2))
        .sqrt(),
    };
    let num_d = Measured {
        value: p1_d.value - 0.5 * (1.0 - r_base.value),
        sigma: (p1_d.sigma.powi(2) + (r_base.sigma / 2.0).powi(2)).sqrt(),
    };
    let num_b = Measured {
        value: p2_b.value - r4_prep.value + r3_prep.value - r_base.value + r_ba.value,
        sigma: (p2_b.sigma.powi(2)
            + r4_prep.sigma.powi(2)
            + r3_prep.sigma.powi(2)
            + r_base.sigma.powi(2)
            + r_ba.sigma.powi(2))
        .sqrt(),
    };
    let p_d = CorrectedFidelity::from_ratio(
        num_d,
        den,
        "(P1_D - (1-R_base)/2)/(1/2 - R4prep + R3prep - R_base/2 + R_BA)",
    )?;
    let p_b = CorrectedFidelity::from_ratio(
        num_b,
        den,
        "(P2_B - R4prep + R3prep - R_base + R_BA)/(1/2 - R4prep + R3prep - R_base/2 + R_BA)",
    )?;
    Ok((p_d, p_b))
}

/// One named term of the SPAM error decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorTerm {
    pub name: &'static str,
    pub value: f64,
    pub sigma: f64,
    pub provenance: &'static str,
}

/// Named ε terms extracted from the reference measurements.
pub fn decompose_error_budget(inputs: &SpamInputs) -> Result<Vec<ErrorTerm>> {
    inputs.validate()?;
    let r_base = inputs.r_base;
    let eps_l_pre = ErrorTerm {
        name: "eps_l_pre",
        value: (1.0 - r_base.value) / 2.0,
        sigma: r_base.sigma / 2.0,
        provenance: "(1 - R_base)/2, assuming eps_l_pre ~ eps_l_post",
    };
    let eps_prep = ErrorTerm {
        name: "eps_prep",
        value: inputs.r4_prep.value - inputs.r3_prep.value + r_base.value - inputs.r_ba.value,
        sigma: (inputs.r4_prep.sigma.powi(2)
            + inputs.r3_prep.sigma.powi(2)
            + r_base.sigma.powi(2)
            + inputs.r_ba.sigma.powi(2))
        .sqrt(),
        provenance: "R4prep - R3prep + R_base - R_BA",
    };
    let eps_ba = ErrorTerm {
        name: "eps_ba",
        value: inputs.r_ba.value,
        sigma: inputs.r_ba.sigma,
        provenance: "R_BA = eps_BA(1 - eps_l_pre - eps_l_post) ~ eps_BA",
    };
    let eps_sh3 = ErrorTerm {
        name: "eps_sh3_bound",
        value: inputs.p_db_min.value - inputs.r_ba.value,
        sigma: (inputs.p_db_min.sigma.powi(2) + inputs.r_ba.sigma.powi(2)).sqrt(),
        provenance: "P_DB_min - eps_BA (conservative over-estimate)",
    };
    let eps_l_post = ErrorTerm {
        name: "eps_l_post",
        provenance: "equal to eps_l_pre by assumption",
        ..eps_l_pre
    };
    Ok(vec![eps_l_pre, eps_l_post, eps_prep, eps_ba, eps_sh3])
}

/// One row of the corrected data-qubit fidelity table.
#[derive(Debug, Clone, Serialize)]
pub struct SpamTableRow {
    pub input: String,
    pub raw: Measured,
    pub corrected: CorrectedFidelity,
}

/// Full data-qubit correction table plus averages.
#[derive(Debug, Clone, Serialize)]
pub struct SpamTable {
    pub rows: Vec<SpamTableRow>,
    pub raw_average: Measured,
    pub corrected_average: CorrectedFidelity,
}

/// Correct every data row and compute the process-fidelity averages.
pub fn correct_table(inputs: &SpamInputs) -> Result<SpamTable> {
    inputs.validate()?;
    let rows: Vec<SpamTableRow> = inputs
        .data_rows
        .iter()
        .map(|(label, raw)| {
            let corrected = correct_data_fidelity(
                *raw,
                inputs.p_db_min,
                inputs.r3_prep_data,
                inputs.r4_prep_data,
            )?;
            Ok(SpamTableRow {
                input: label.clone(),
                raw: *raw,
                corrected,
            })
        })
        .collect::<Result<_>>()?;
    let corrected_average =
        average_process_fidelity(&rows.iter().map(|r| r.corrected.clone()).collect::<Vec<_>>())?;
    let n = rows.len() as f64;
    let raw_average = Measured {
        value: rows.iter().map(|r| r.raw.value).sum::<f64>() / n,
        sigma: rows.iter().map(|r| r.raw.sigma.powi(2)).sum::<f64>().sqrt() / n,
    };
    Ok(SpamTable {
        rows,
        raw_average,
        corrected_average,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn data_correction_reference_rows() {
        let i = SpamInputs::default();
        let c = correct_data_fidelity(
            Measured::new(0.930, 0.008).unwrap(),
            i.p_db_min,
            i.r3_prep_data,
            i.r4_prep_data,
        )
        .unwrap();
        assert_relative_eq!(c.value, 0.962, epsilon = 1e-3);
        let c1 = correct_data_fidelity(
            Measured::new(0.946, 0.003).unwrap(),
            i.p_db_min,
            i.r3_prep_data,
            i.r4_prep_data,
        )
        .unwrap();
        assert_relative_eq!(c1.value, 0.979, epsilon = 1e-3);
    }

    #[test]
    fn floor_case_and_bad_denominator() {
        let i = SpamInputs::default();
        let c =
            correct_data_fidelity(i.p_db_min, i.p_db_min, i.r3_prep_data, i.r4_prep_data).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(correct_data_fidelity(i.p_db_min, i.p_db_min, i.r4_prep_data, i.r3_prep_data)
            .is_err());
    }

    #[test]
    fn table_averages_match_reference() {
        let t = correct_table(&SpamInputs::default()).unwrap();
        assert_relative_eq!(t.raw_average.value, 0.9375, epsilon = 1e-4);
        assert_relative_eq!(t.raw_average.sigma, 0.003, epsilon = 5e-4);
        assert_relative_eq!(t.corrected_average.value, 0.970, epsilon = 1e-3);
        assert_relative_eq!(t.corrected_average.sigma, 0.0055, epsilon = 1e-3);
    }

    #[test]
    fn ancilla_correction_reference() {
        let i = SpamInputs::default();
        let (d, b) =
            correct_ancilla(i.p1_d, i.p2_b, i.r_base, i.r4_prep, i.r3_prep, i.r_ba).unwrap();
        assert_relative_eq!(d.value, 0.949, epsilon = 1e-3);
        assert_relative_eq!(b.value, 0.953, epsilon = 1e-3);
        assert_relative_eq!(d.sigma, 0.0084, epsilon = 5e-4);
        assert_relative_eq!(b.sigma, 0.0112, epsilon = 5e-4);
    }

    #[test]
    fn perfect_inputs_give_unit_fidelity() {
        let one = Measured::new(1.0, 0.0).unwrap();
        let zero = Measured::new(0.0, 0.0).unwrap();
        let (d, b) = correct_ancilla(one, one, one, zero, one, zero).unwrap();
        assert_relative_eq!(d.value, 1.0);
        assert_relative_eq!(b.value, 1.0);
        assert!(!d.exceeds_unity && !b.exceeds_unity);
    }

    #[test]
    fn above_unity_flagged_not_clamped() {
        let i = SpamInputs::default();
        let c = correct_data_fidelity(
            Measured::new(0.99, 0.005).unwrap(),
            i.p_db_min,
            i.r3_prep_data,
            i.r4_prep_data,
        )
        .unwrap();
        assert!(c.value > 1.0);
        assert!(c.exceeds_unity);
    }

    #[test]
    fn monotone_in_raw_probability() {
        let i = SpamInputs::default();
        let f = |p| {
            correct_data_fidelity(
                Measured::new(p, 0.005).unwrap(),
                i.p_db_min,
                i.r3_prep_data,
                i.r4_prep_data,
            )
            .unwrap()
            .value
        };
        assert!(f(0.95) > f(0.94));
    }

    #[test]
    fn error_decomposition_values() {
        let terms = decompose_error_budget(&SpamInputs::default()).unwrap();
        let get = |n: &str| terms.iter().find(|t| t.name == n).unwrap().value;
        assert_relative_eq!(get("eps_l_pre"), 0.0115, epsilon = 1e-6);
        assert_relative_eq!(get("eps_ba"), 0.005, epsilon = 1e-9);
        assert_relative_eq!(get("eps_sh3_bound"), 0.005, epsilon = 1e-9);
        assert_relative_eq!(get("eps_prep"), 0.020 - 0.977 + 0.977 - 0.005, epsilon = 1e-9);
    }

    #[test]
    fn average_requires_six_rows() {
        let t = correct_table(&SpamInputs::default()).unwrap();
        assert!(average_process_fidelity(&t.rows.iter().map(|r| r.corrected.clone()).take(3).collect::<Vec<_>>()).is_err());
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(Measured::new(1.2, 0.0).is_err());
        assert!(Measured::new(0.5, -0.1).is_err());
        let mut i = SpamInputs::default();
        i.p1_d = Measured { value: 2.0, sigma: 0.1 };
        assert!(i.validate().is_err());
    }
}
