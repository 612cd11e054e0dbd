//! Physical constants and a small unit grammar for config and CLI inputs.
//!
//! Internally every frequency is an *angular* frequency in rad/s. The parser
//! accepts ordinary (cycles-per-second) frequencies with an explicit suffix
//! (`Hz`, `kHz`, `MHz`, `GHz`) and multiplies by 2π; bare numbers are taken
//! to already be in the internal base unit (rad/s, s, K, T).

use crate::error::{Error, Result};
use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;
/// Bohr magneton, J/T.
pub const MU_B: f64 = 9.274_010_078_3e-24;
/// Cs-133 atomic mass, kg.
pub const M_CS: f64 = 2.206_946_50e-25;
/// Cs clock hyperfine splitting, rad/s (exact SI definition of the second).
pub const OMEGA_Q: f64 = TWO_PI * 9.192_631_770e9;
/// Cs 6p_3/2 decay rate, rad/s.
pub const GAMMA_6P32: f64 = TWO_PI * 5.2e6;
/// Saturation intensity of the 6s |4,4> -> 6p_3/2 |5,5> cycling transition, W/m².
pub const I_SAT_CYCLING: f64 = 11.0;
/// D2-line photon recoil energy (852 nm), joules.
pub const E_RECOIL_852: f64 = 1.37e-30;

/// Dimension accepted by the unit grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Angular frequency, rad/s (suffixes Hz..GHz multiply by 2π).
    Frequency,
    /// Time, seconds.
    Time,
    /// Temperature, kelvin.
    Temperature,
    /// Magnetic field, tesla.
    MagneticField,
}

/// Parse a quantity like `"9.192631770 GHz"`, `"4 ms"`, `"500 uK"`, `"10.2 G"`.
///
/// A bare number is returned unchanged (interpreted in the base unit of the
/// requested dimension). Frequencies are converted to angular rad/s.
pub fn parse_quantity(s: &str, dim: Dimension) -> Result<f64> {
    let s = s.trim();
    let split = s
        .find(|c: char| !(c.is_ascii_digit() || "+-.eE".contains(c)))
        .unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| Error::UnitParse(format!("bad numeric value in {s:?}")))?;
    let unit = unit.trim();
    if unit.is_empty() {
        return Ok(value);
    }
    let factor = match dim {
        Dimension::Frequency => match unit {
            "Hz" => TWO_PI,
            "kHz" => TWO_PI * 1e3,
            "MHz" => TWO_PI * 1e6,
            "GHz" => TWO_PI * 1e9,
            "rad/s" => 1.0,
            _ => return Err(Error::UnitParse(format!("unknown frequency unit {unit:?}"))),
        },
        Dimension::Time => match unit {
            "s" => 1.0,
            "ms" => 1e-3,
            "us" | "µs" => 1e-6,
            "ns" => 1e-9,
            _ => return Err(Error::UnitParse(format!("unknown time unit {unit:?}"))),
        },
        Dimension::Temperature => match unit {
            "K" => 1.0,
            "mK" => 1e-3,
            "uK" | "µK" => 1e-6,
            _ => return Err(Error::UnitParse(format!("unknown temperature unit {unit:?}"))),
        },
        Dimension::MagneticField => match unit {
            "T" => 1.0,
            "mT" => 1e-3,
            "G" => 1e-4,
            "mG" => 1e-7,
            _ => return Err(Error::UnitParse(format!("unknown field unit {unit:?}"))),
        },
    };
    Ok(value * factor)
}

macro_rules! unit_newtype {
    ($(#[$doc:meta])* $name:ident, $dim:expr) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
        #[serde(transparent)]
        pub struct $name(pub f64);

        impl<'de> serde::Deserialize<'de> for $name {
            fn deserialize<D>(de: D) -> std::result::Result<Self, D::Error>
            where
                D: serde::Deserializer<'de>,
            {
                use serde::de::Error as _;
                #[derive(serde::Deserialize)]
                #[serde(untagged)]
                enum Raw {
                    Num(f64),
                    Str(String),
                }
                match Raw::deserialize(de)? {
                    Raw::Num(v) => Ok($name(v)),
                    Raw::Str(s) => parse_quantity(&s, $dim)
                        .map($name)
                        .map_err(|e| D::Error::custom(e.to_string())),
                }
            }
        }
    };
}

unit_newtype!(
    /// Angular frequency in rad/s; deserializes from `"62.8 kHz"` etc.
    Freq,
    Dimension::Frequency
);
unit_newtype!(
    /// Time in seconds; deserializes from `"4 ms"` etc.
    Time,
    Dimension::Time
);
unit_newtype!(
    /// Temperature in kelvin; deserializes from `"500 uK"` etc.
    Temp,
    Dimension::Temperature
);
unit_newtype!(
    /// Magnetic field in tesla; deserializes from `"10.2 G"` etc.
    BField,
    Dimension::MagneticField
);

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frequency_suffixes() {
        assert_relative_eq!(
            parse_quantity("9.192631770 GHz", Dimension::Frequency).unwrap(),
            OMEGA_Q
        );
        assert_relative_eq!(
            parse_quantity("62.8 kHz", Dimension::Frequency).unwrap(),
            TWO_PI * 62.8e3
        );
        // bare numbers are already rad/s
        assert_relative_eq!(parse_quantity("1.5e4", Dimension::Frequency).unwrap(), 1.5e4);
    }

    #[test]
    fn field_and_time() {
        assert_relative_eq!(
            parse_quantity("10.2 G", Dimension::MagneticField).unwrap(),
            1.02e-3
        );
        assert_relative_eq!(parse_quantity("200 us", Dimension::Time).unwrap(), 2e-4);
        assert_relative_eq!(
            parse_quantity("500 uK", Dimension::Temperature).unwrap(),
            5e-4
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_quantity("4 parsec", Dimension::Time).is_err());
        assert!(parse_quantity("fast", Dimension::Time).is_err());
    }
}
