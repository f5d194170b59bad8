//! Unperturbed relativistic (Klein-Gordon) hydrogen bound states.
//!
//! The Coulomb problem for a spin-0 electron has exact solutions indexed by a
//! radial quantum number n_r and orbital quantum number l, with an effective
//! real order
//!
//!   nu = -1/2 + sqrt((l + 1/2)^2 - alpha^2),
//!
//! energies E_{n,l} below the rest energy, decay parameter
//! a = sqrt(m^2 - E^2), and normalized radial functions
//!
//!   R_nl(r) = sqrt(a/(n + nu + 1)) sqrt(n!/Gamma(n + 2 nu + 2))
//!             x^(nu+1) e^(-x/2) L_n^(2nu+1)(x),   x = 2 a r.
//!
//! Here n always means the radial quantum number n_r; the spectroscopic
//! label uses the principal number N = n_r + l + 1 (1S, 2S, 2P, ...). The
//! alpha -> 0 limits E - m -> -m alpha^2 / (2 N^2) fix that convention.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::special::{laguerre, ln_factorial, ln_gamma};
use serde::{Deserialize, Serialize};

/// Spectroscopic letters for l = 0, 1, 2, ... (J is skipped by convention).
const L_LETTERS: &[u8] = b"SPDFGHIKLMNOQRTUVWXYZ";

/// A bound-state label (n_r, l, m) with |m| <= l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumState {
    /// Radial quantum number (number of radial nodes), >= 0.
    pub n_r: u32,
    /// Orbital quantum number, >= 0.
    pub l: u32,
    /// Magnetic quantum number, |m| <= l.
    pub m: i32,
}

impl QuantumState {
    pub fn new(n_r: u32, l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidState(format!(
                "|m| = {} exceeds l = {l}",
                m.unsigned_abs()
            )));
        }
        Ok(Self { n_r, l, m })
    }

    /// Principal quantum number N = n_r + l + 1.
    pub fn principal(&self) -> u32 {
        self.n_r + self.l + 1
    }

    /// Spectroscopic label, e.g. (0,0,0) -> "1S", (1,0,0) -> "2S",
    /// (0,1,0) -> "2P".
    pub fn label(&self) -> String {
        let n = self.principal();
        match L_LETTERS.get(self.l as usize) {
            Some(&c) => format!("{n}{}", c as char),
            None => format!("{n}(l={})", self.l),
        }
    }

    /// Parse a spectroscopic label like "1S" or "2p" (case-insensitive).
    /// The magnetic quantum number is set to 0.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let split = label
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidState(format!("label '{label}' has no orbital letter")))?;
        let (digits, letter) = label.split_at(split);
        let n: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidState(format!("label '{label}' has no principal number")))?;
        if n == 0 {
            return Err(Error::InvalidState(format!(
                "label '{label}': principal number must be >= 1"
            )));
        }
        if letter.len() != 1 {
            return Err(Error::InvalidState(format!(
                "label '{label}': expected a single orbital letter, got '{letter}'"
            )));
        }
        let c = letter.as_bytes()[0].to_ascii_uppercase();
        let l = L_LETTERS
            .iter()
            .position(|&x| x == c)
            .ok_or_else(|| Error::InvalidState(format!("unknown orbital letter '{letter}'")))?
            as u32;
        if l > n - 1 {
            return Err(Error::InvalidState(format!(
                "label '{label}': l = {l} exceeds N - 1 = {}",
                n - 1
            )));
        }
        Self::new(n - 1 - l, l, 0)
    }

    /// Same state with a different magnetic quantum number.
    pub fn with_m(self, m: i32) -> Result<Self> {
        Self::new(self.n_r, self.l, m)
    }
}

impl std::fmt::Display for QuantumState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (n_r={}, l={}, m={})",
            self.label(),
            self.n_r,
            self.l,
            self.m
        )
    }
}

/// The Klein-Gordon hydrogen model at fixed physical constants.
#[derive(Debug, Clone, Copy)]
pub struct HydrogenModel {
    pub constants: PhysicalConstants,
}

impl HydrogenModel {
    pub fn new(constants: PhysicalConstants) -> Self {
        Self { constants }
    }

    /// Effective order nu(l) = -1/2 + sqrt((l+1/2)^2 - alpha^2), evaluated in
    /// the cancellation-free form (l^2 + l - alpha^2) / (sqrt(...) + 1/2) so
    /// that the l = 0 value (~ -alpha^2) keeps full relative accuracy.
    ///
    /// Errors with critical coupling when alpha >= l + 1/2.
    pub fn nu_of(&self, l: u32) -> Result<f64> {
        let alpha = self.constants.alpha;
        let lf = l as f64;
        let disc = (lf + 0.5) * (lf + 0.5) - alpha * alpha;
        if disc <= 0.0 {
            return Err(Error::CriticalCoupling { l, alpha });
        }
        Ok((lf * lf + lf - alpha * alpha) / (disc.sqrt() + 0.5))
    }

    /// Effective principal number N_nu = n_r + nu + 1.
    pub fn effective_principal(&self, n_r: u32, l: u32) -> Result<f64> {
        Ok(n_r as f64 + self.nu_of(l)? + 1.0)
    }

    /// Bound-state energy E_{n,l} in MeV:
    ///
    ///   E = m (n + 1/2 + s) / sqrt((n+1/2)^2 + (l+1/2)^2 + 2 (n+1/2) s),
    ///   s = sqrt((l+1/2)^2 - alpha^2),  n = n_r.
    ///
    /// Algebraically equal to m N_nu / sqrt(N_nu^2 + alpha^2) with
    /// N_nu = n + s + 1/2; all denominator terms are positive, so the
    /// displayed form is evaluated directly.
    pub fn energy(&self, n_r: u32, l: u32) -> Result<f64> {
        let alpha = self.constants.alpha;
        let m = self.constants.electron_mass_mev;
        let lf = l as f64;
        let nf = n_r as f64;
        let disc = (lf + 0.5) * (lf + 0.5) - alpha * alpha;
        if disc <= 0.0 {
            return Err(Error::CriticalCoupling { l, alpha });
        }
        let s = disc.sqrt();
        let half_n = nf + 0.5;
        let denom = (half_n * half_n + (lf + 0.5) * (lf + 0.5) + 2.0 * half_n * s).sqrt();
        Ok(m * (half_n + s) / denom)
    }

    /// Binding energy E - m < 0, in the cancellation-free form
    /// -m alpha^2 / (sqrt(N^2+alpha^2) (N + sqrt(N^2+alpha^2))), N = N_nu.
    pub fn binding_energy(&self, n_r: u32, l: u32) -> Result<f64> {
        let alpha = self.constants.alpha;
        let m = self.constants.electron_mass_mev;
        let n = self.effective_principal(n_r, l)?;
        let root = (n * n + alpha * alpha).sqrt();
        Ok(-m * alpha * alpha / (root * (n + root)))
    }

    /// Decay parameter a = sqrt(m^2 - E^2) = m alpha / sqrt(N_nu^2 + alpha^2),
    /// in MeV. The second form is used: it has no cancellation.
    pub fn a_of(&self, n_r: u32, l: u32) -> Result<f64> {
        let alpha = self.constants.alpha;
        let m = self.constants.electron_mass_mev;
        let n = self.effective_principal(n_r, l)?;
        Ok(m * alpha / (n * n + alpha * alpha).sqrt())
    }

    /// Radial basis data for one (n_r, l) level.
    pub fn radial_basis(&self, n_r: u32, l: u32) -> Result<RadialBasis> {
        let nu = self.nu_of(l)?;
        let energy = self.energy(n_r, l)?;
        let a = self.a_of(n_r, l)?;
        // ln of sqrt(a/(n+nu+1) * n!/Gamma(n+2nu+2)).
        let ln_norm = 0.5
            * (a.ln() - (n_r as f64 + nu + 1.0).ln() + ln_factorial(n_r)
                - ln_gamma(n_r as f64 + 2.0 * nu + 2.0));
        Ok(RadialBasis {
            n_r,
            l,
            nu,
            energy,
            a,
            ln_norm,
        })
    }
}

/// One radial level: quantum numbers, effective order, energy, decay
/// parameter, and the log-space normalization prefactor. Immutable snapshot.
#[derive(Debug, Clone, Copy)]
pub struct RadialBasis {
    pub n_r: u32,
    pub l: u32,
    /// Effective order nu(l).
    pub nu: f64,
    /// Level energy, MeV.
    pub energy: f64,
    /// Decay parameter a = sqrt(m^2 - E^2), MeV.
    pub a: f64,
    /// ln of the normalization prefactor sqrt(a n! / ((n+nu+1) Gamma(n+2nu+2))).
    ln_norm: f64,
}

impl RadialBasis {
    /// Log normalization prefactor, needed by radial matrix-element
    /// assembly elsewhere in the crate.
    pub(crate) fn ln_norm(&self) -> f64 {
        self.ln_norm
    }

    /// Dimensionless argument x = 2 a r (r in MeV^-1).
    pub fn x_of_r(&self, r: f64) -> f64 {
        2.0 * self.a * r
    }

    /// R_nl(r) for r > 0 (r in MeV^-1). Prefactors combine in log space so
    /// large quantum numbers cannot overflow.
    pub fn value(&self, r: f64) -> Result<f64> {
        if r <= 0.0 {
            return Err(Error::InvalidState(format!(
                "radial_value requires r > 0, got {r}"
            )));
        }
        let x = self.x_of_r(r);
        let lag = laguerre(self.n_r, 2.0 * self.nu + 1.0, x);
        if lag == 0.0 {
            return Ok(0.0);
        }
        let ln_mag = self.ln_norm + (self.nu + 1.0) * x.ln() - 0.5 * x + lag.abs().ln();
        Ok(lag.signum() * ln_mag.exp())
    }

    /// Count sign changes of R_nl on a log grid r in [1e-4, 50]/a with
    /// `points` samples (2000 in the standard scan). Exact zeros are skipped
    /// rather than double-counted.
    pub fn node_count(&self, points: usize) -> Result<usize> {
        let (lo, hi) = (1e-4 / self.a, 50.0 / self.a);
        let ratio = hi / lo;
        let mut nodes = 0;
        let mut last_sign = 0.0f64;
        for i in 0..points {
            let r = lo * ratio.powf(i as f64 / (points - 1) as f64);
            let v = self.value(r)?;
            let sign = v.signum();
            if sign != 0.0 {
                if last_sign != 0.0 && sign != last_sign {
                    nodes += 1;
                }
                last_sign = sign;
            }
        }
        Ok(nodes)
    }
}
