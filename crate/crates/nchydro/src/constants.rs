//! Physical constants (CODATA 2018) and unit conversions.
//!
//! Every other module obtains `alpha` and the electron mass through
//! [`PhysicalConstants`]; no other module hard-codes their values. All
//! energies are carried internally in MeV and the noncommutativity parameter
//! theta in MeV^-2; conversions go through the factor tables here.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Planck constant, J s (exact, 2019 SI definition).
pub const PLANCK_J_S: f64 = 6.626_070_15e-34;

/// Elementary charge, C (exact, 2019 SI definition).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;

/// Energy of one photon of 1 Hz, in MeV: h / e * 1e-6.
///
/// Exact consequence of the SI definitions above
/// (= 4.135667696923859e-21 MeV/Hz).
pub const MEV_PER_HZ: f64 = PLANCK_J_S / ELEMENTARY_CHARGE_C * 1e-6;

/// Fine-structure constant (CODATA 2018).
pub const FINE_STRUCTURE_CODATA2018: f64 = 7.297_352_569_3e-3;

/// Electron mass energy equivalent, MeV (CODATA 2018).
pub const ELECTRON_MASS_MEV_CODATA2018: f64 = 0.510_998_950_00;

/// Fundamental inputs of the model: the fine-structure constant and the
/// electron rest energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Fine-structure constant alpha (dimensionless).
    pub alpha: f64,
    /// Electron rest energy m_e c^2, MeV.
    pub electron_mass_mev: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values.
    pub fn codata2018() -> Self {
        Self {
            alpha: FINE_STRUCTURE_CODATA2018,
            electron_mass_mev: ELECTRON_MASS_MEV_CODATA2018,
        }
    }

    /// Same electron mass, different coupling — used for limit studies
    /// (e.g. the nonrelativistic check at alpha = 1e-4).
    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Energy units understood by the converters and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyUnit {
    #[serde(rename = "MeV")]
    MeV,
    #[serde(rename = "GeV")]
    GeV,
    #[serde(rename = "eV")]
    EV,
    #[serde(rename = "Hz")]
    Hz,
}

impl EnergyUnit {
    /// Value of 1 of this unit, expressed in MeV. Single source of truth for
    /// all energy conversions.
    pub fn in_mev(self) -> f64 {
        match self {
            EnergyUnit::MeV => 1.0,
            EnergyUnit::GeV => 1e3,
            EnergyUnit::EV => 1e-6,
            EnergyUnit::Hz => MEV_PER_HZ,
        }
    }

    /// Multiplicative factor converting a value in `self` to a value in `to`.
    pub fn factor_to(self, to: EnergyUnit) -> f64 {
        self.in_mev() / to.in_mev()
    }
}

impl fmt::Display for EnergyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EnergyUnit::MeV => "MeV",
            EnergyUnit::GeV => "GeV",
            EnergyUnit::EV => "eV",
            EnergyUnit::Hz => "Hz",
        };
        f.write_str(s)
    }
}

impl FromStr for EnergyUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mev" => Ok(EnergyUnit::MeV),
            "gev" => Ok(EnergyUnit::GeV),
            "ev" => Ok(EnergyUnit::EV),
            "hz" => Ok(EnergyUnit::Hz),
            other => Err(format!(
                "unknown energy unit '{other}' (expected MeV, GeV, eV or Hz)"
            )),
        }
    }
}

/// A value tagged with its energy unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyQuantity {
    pub value: f64,
    pub unit: EnergyUnit,
}

impl EnergyQuantity {
    pub fn new(value: f64, unit: EnergyUnit) -> Self {
        Self { value, unit }
    }

    /// Express the same quantity in another unit.
    pub fn to(self, unit: EnergyUnit) -> Self {
        Self {
            value: self.value * self.unit.factor_to(unit),
            unit,
        }
    }

    /// Shorthand: numeric value in MeV.
    pub fn mev(self) -> f64 {
        self.value * self.unit.in_mev()
    }
}

impl fmt::Display for EnergyQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.*e} {}", 16, self.value, self.unit)
    }
}

/// Units for the noncommutativity parameter theta (an inverse energy squared).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaUnit {
    #[serde(rename = "MeV-2")]
    InverseMeV2,
    #[serde(rename = "GeV-2")]
    InverseGeV2,
}

impl ThetaUnit {
    /// Value of 1 of this unit in MeV^-2 (1 GeV^-2 = 1e-6 MeV^-2).
    pub fn in_inverse_mev2(self) -> f64 {
        match self {
            ThetaUnit::InverseMeV2 => 1.0,
            ThetaUnit::InverseGeV2 => 1e-6,
        }
    }
}

impl fmt::Display for ThetaUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThetaUnit::InverseMeV2 => "MeV-2",
            ThetaUnit::InverseGeV2 => "GeV-2",
        };
        f.write_str(s)
    }
}

impl FromStr for ThetaUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mev-2" | "mev^-2" | "1/mev2" => Ok(ThetaUnit::InverseMeV2),
            "gev-2" | "gev^-2" | "1/gev2" => Ok(ThetaUnit::InverseGeV2),
            other => Err(format!(
                "unknown theta unit '{other}' (expected MeV-2 or GeV-2)"
            )),
        }
    }
}
