//! Deformation perturbation engine: the deformed Coulomb potential, the
//! order-theta and order-theta^2 operators, the identically-vanishing
//! first-order shift, the l -/+ 1 mixing amplitudes, and the second-order
//! level shift in two normalization modes.
//!
//! Every shift is computed as a theta-independent coefficient multiplied by
//! theta^2 once at the end, so theta^2 homogeneity holds to the last bit
//! (scaling theta by 2 scales every field by exactly 4).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{EnergyQuantity, EnergyUnit, ThetaUnit};
use crate::error::{Error, Result};
use crate::hydrogen::{HydrogenModel, QuantumState};
use crate::matrix_elements::{b_coeff, cos_element, cross_inverse_moment, f_closed};

/// Noncommutativity strength theta >= 0, stored in MeV^-2. The deformation
/// axis is fixed to the quantization axis, which reduces the space-time
/// contraction theta^{0j} x_j to theta * r * cos(theta_angle).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NCParameter {
    /// theta in MeV^-2.
    pub theta_mev2: f64,
}

impl NCParameter {
    /// Build from a value in the given unit; rejects negative or non-finite
    /// strengths.
    pub fn new(value: f64, unit: ThetaUnit) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidState(format!(
                "theta must be finite and >= 0, got {value}"
            )));
        }
        Ok(NCParameter {
            theta_mev2: value * unit.in_inverse_mev2(),
        })
    }

    /// The commutative limit theta = 0.
    pub fn zero() -> Self {
        NCParameter { theta_mev2: 0.0 }
    }
}

/// Normalization mode for the second-order shift.
///
/// `Literal` evaluates the printed closed-form shift exactly as displayed:
/// plain energy-difference denominators, the ket's diagonal f(k) moments
/// standing in for the off-diagonal radial integrals, analytic continuations
/// where those moments diverge, and the B-coefficient terms dropped for
/// l = 0 S states.
///
/// `Corrected` treats the radial problem as what it is -- an eigenproblem in
/// E^2 -- so second-order theory shifts E^2 and delta E = delta(E^2)/(2E),
/// with E^2-difference denominators, honest cross-basis radial integrals
/// (continued only where genuinely divergent, and flagged), and the l = 0
/// diagonal cos^2 term kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Literal,
    Corrected,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Literal => write!(f, "literal"),
            Mode::Corrected => write!(f, "corrected"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(Mode::Literal),
            "corrected" => Ok(Mode::Corrected),
            other => Err(Error::Usage(format!(
                "unknown mode '{other}' (expected literal or corrected)"
            ))),
        }
    }
}

/// Angular factor carried by one operator term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngularKind {
    Isotropic,
    Cos,
    Cos2,
}

/// One term coefficient * angular-factor / r^radial_power of a perturbation
/// operator. Coefficients are built from E, alpha, and theta in natural
/// units (MeV powers).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OperatorTerm {
    pub coefficient: f64,
    pub angular: AngularKind,
    pub radial_power: u32,
}

/// Perturbation operator at a fixed level energy E, as an explicit term list.
///
/// order 1: 2 theta e^4 (E cos/r^3 + e^2 cos/r^4)        -- two cos terms
/// order 2: theta^2 e^6 (5 E cos^2/r^5 - 4 e^2 cos^2/r^6
///                        - E/r^5 + e^2/r^6)              -- four terms
///
/// with e^2 = alpha.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbationOperator {
    pub order: u32,
    pub terms: Vec<OperatorTerm>,
}

impl PerturbationOperator {
    /// The order-theta operator for a level of energy `energy` (MeV).
    pub fn order1(alpha: f64, energy: f64, theta: &NCParameter) -> Self {
        let pref = 2.0 * theta.theta_mev2 * alpha * alpha;
        PerturbationOperator {
            order: 1,
            terms: vec![
                OperatorTerm {
                    coefficient: pref * energy,
                    angular: AngularKind::Cos,
                    radial_power: 3,
                },
                OperatorTerm {
                    coefficient: pref * alpha,
                    angular: AngularKind::Cos,
                    radial_power: 4,
                },
            ],
        }
    }

    /// The order-theta^2 operator for a level of energy `energy` (MeV).
    pub fn order2(alpha: f64, energy: f64, theta: &NCParameter) -> Self {
        let pref = theta.theta_mev2 * theta.theta_mev2 * alpha.powi(3);
        PerturbationOperator {
            order: 2,
            terms: vec![
                OperatorTerm {
                    coefficient: pref * 5.0 * energy,
                    angular: AngularKind::Cos2,
                    radial_power: 5,
                },
                OperatorTerm {
                    coefficient: -pref * 4.0 * alpha,
                    angular: AngularKind::Cos2,
                    radial_power: 6,
                },
                OperatorTerm {
                    coefficient: -pref * energy,
                    angular: AngularKind::Isotropic,
                    radial_power: 5,
                },
                OperatorTerm {
                    coefficient: pref * alpha,
                    angular: AngularKind::Isotropic,
                    radial_power: 6,
                },
            ],
        }
    }
}

/// Deformed Coulomb potential to O(theta^2), natural units with e = sqrt(alpha):
///
///   -e/r - e^3 theta cos(th)/r^3 + (e^5/(2 r^5)) theta^2 (1 - 5 cos^2(th))
///
/// Errors: r <= 0.
pub fn deformed_potential(alpha: f64, r: f64, cos_theta: f64, theta: &NCParameter) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::InvalidState(format!(
            "deformed_potential requires r > 0, got {r}"
        )));
    }
    let e = alpha.sqrt();
    let t = theta.theta_mev2;
    Ok(-e / r - e.powi(3) * t * cos_theta / r.powi(3)
        + e.powi(5) / (2.0 * r.powi(5)) * t * t * (1.0 - 5.0 * cos_theta * cos_theta))
}

/// Matrix element of the order-theta operator between states with the same
/// n_r, evaluated with the printed prescription: the angular cos element
/// times the KET's diagonal radial moments,
///
///   2 theta e^4 <bra|cos|ket> (E_ket f(3) + e^2 f(4)).
///
/// Errors: differing n_r (the mixing ansatz holds n_r fixed).
pub fn h1_element(
    model: &HydrogenModel,
    bra: &QuantumState,
    ket: &QuantumState,
    theta: &NCParameter,
) -> Result<f64> {
    if bra.n_r != ket.n_r {
        return Err(Error::InvalidState(format!(
            "h1_element couples states of equal n_r, got {} and {}",
            bra.n_r, ket.n_r
        )));
    }
    let angular = cos_element(bra, ket);
    if angular == 0.0 {
        return Ok(0.0);
    }
    let alpha = model.constants.alpha;
    let energy = model.energy(ket.n_r, ket.l)?;
    let f3 = f_closed(model, 3, ket.n_r, ket.l)?;
    let f4 = f_closed(model, 4, ket.n_r, ket.l)?;
    Ok(2.0 * theta.theta_mev2 * alpha * alpha * angular * (energy * f3.value + alpha * f4.value))
}

/// First-order energy shift: identically zero. The order-theta operator is
/// odd in cos(theta_angle), so its diagonal angular element vanishes for
/// every (l, m); returned as an exact 0 rather than recomputed. The
/// quadrature cross-check lives in [`crate::oracles::first_order_quadrature`].
pub fn first_order_shift(_state: &QuantumState, _theta: &NCParameter) -> f64 {
    0.0
}

/// Amplitudes of the l-1 and l+1 admixtures in the first-order wavefunction,
///
///   c_down/up = theta e^4 B (E_nl f(3) + e^2 f(4)) / (E_nl - E_{n, l-/+1}),
///
/// with B the cos coupling coefficient of the pair and f(k) the diagonal
/// moments of the unperturbed state. First order in theta.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MixingAmplitudes {
    /// Amplitude on (n_r, l-1, m); None when l = 0 (no lower level). Zero
    /// when |m| = l (the lower level exists but cannot carry this m).
    pub down: Option<f64>,
    /// Amplitude on (n_r, l+1, m).
    pub up: f64,
}

pub fn psi1_coefficients(
    model: &HydrogenModel,
    state: &QuantumState,
    theta: &NCParameter,
) -> Result<MixingAmplitudes> {
    let alpha = model.constants.alpha;
    let energy = model.energy(state.n_r, state.l)?;
    let f3 = f_closed(model, 3, state.n_r, state.l)?;
    let f4 = f_closed(model, 4, state.n_r, state.l)?;
    let radial = theta.theta_mev2 * alpha * alpha * (energy * f3.value + alpha * f4.value);
    let amplitude = |l_other: u32| -> Result<f64> {
        let b = b_coeff(state.l.max(l_other), state.m)?;
        if b == 0.0 {
            return Ok(0.0);
        }
        let e_other = model.energy(state.n_r, l_other)?;
        let denom = energy - e_other;
        if denom.abs() <= f64::EPSILON * energy.abs() {
            return Err(Error::DegenerateDenominator {
                a: energy,
                b: e_other,
            });
        }
        Ok(radial * b / denom)
    };
    let down = if state.l == 0 {
        None
    } else {
        Some(amplitude(state.l - 1)?)
    };
    let up = amplitude(state.l + 1)?;
    Ok(MixingAmplitudes { down, up })
}

/// Provenance flags carried alongside a shift value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ShiftFlags {
    /// Literal mode at l = 0: the printed S-state shift drops the
    /// B-coefficient terms that the general formula contains.
    pub b_terms_dropped: bool,
    /// Some diagonal f(k) moment entering the value is the analytic
    /// continuation of a divergent integral (always the case for l <= 1
    /// at k = 5, 6).
    pub diagonal_moment_continued: bool,
    /// Some cross-basis radial integral entering the mixing part is a
    /// continued divergent integral (corrected mode, S-P r^-4 band).
    pub cross_moment_continued: bool,
}

/// Second-order level shift, broken into the wavefunction-mixing part
/// 2<psi1|H1|psi0> and the direct part <psi0|H2|psi0>.
///
/// In corrected mode the values are honest energies in MeV. In literal mode
/// they are the printed expression evaluated as-is, whose two parts carry
/// different physical dimensions (the report's unit trail documents this);
/// the numbers are still reported on the MeV scale for comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftBreakdown {
    pub state: QuantumState,
    pub mode: Mode,
    /// theta in MeV^-2.
    pub theta_mev2: f64,
    /// Order-theta diagonal term; identically zero.
    pub first_order: f64,
    pub mixing: f64,
    pub direct: f64,
    /// mixing + direct.
    pub total: f64,
    pub flags: ShiftFlags,
}

/// The shift with theta factored out: `total = coefficient * theta^2`, and
/// componentwise for mixing and direct. Computing the coefficient once and
/// scaling keeps theta^2 homogeneity exact in floating point.
#[derive(Debug, Clone, Copy)]
pub struct ShiftCoefficient {
    /// Mixing-part coefficient (per theta^2, theta in MeV^-2).
    pub mixing: f64,
    /// Direct-part coefficient.
    pub direct: f64,
    pub flags: ShiftFlags,
}

impl ShiftCoefficient {
    pub fn total(&self) -> f64 {
        self.mixing + self.direct
    }
}

/// theta^2-coefficient of the second-order shift of `state` in the given
/// mode. See [`second_order_shift`] for the formulas.
pub fn shift_coefficient(
    model: &HydrogenModel,
    state: &QuantumState,
    mode: Mode,
) -> Result<ShiftCoefficient> {
    let alpha = model.constants.alpha;
    let energy = model.energy(state.n_r, state.l)?;
    let mut flags = ShiftFlags::default();

    // Diagonal moments of the state feed both modes' direct part and the
    // literal mixing part.
    let f5 = f_closed(model, 5, state.n_r, state.l)?;
    let f6 = f_closed(model, 6, state.n_r, state.l)?;
    if !f5.convergent || !f6.convergent {
        flags.diagonal_moment_continued = true;
    }
    let b_down = b_coeff(state.l, state.m)?; // zero for l = 0 by convention
    let b_up = b_coeff(state.l + 1, state.m)?;
    let b2_sum = b_down * b_down + b_up * b_up;

    match mode {
        Mode::Literal => {
            // Printed closed form: alpha^3 [ 8 alpha (B_l^2/(E - E_{l-1})
            //   + B_{l+1}^2/(E - E_{l+1})) (E f3 + alpha f4)^2
            //   + (B_l^2 + B_{l+1}^2)(5 E f5 - 4 alpha f6) - E f5 + alpha f6 ],
            // with every B term dropped for l = 0 (the printed S-state case).
            if state.l == 0 {
                flags.b_terms_dropped = true;
                let direct = alpha.powi(3) * (-energy * f5.value + alpha * f6.value);
                return Ok(ShiftCoefficient {
                    mixing: 0.0,
                    direct,
                    flags,
                });
            }
            let f3 = f_closed(model, 3, state.n_r, state.l)?;
            let f4 = f_closed(model, 4, state.n_r, state.l)?;
            if !f3.convergent || !f4.convergent {
                flags.diagonal_moment_continued = true;
            }
            let radial_sq = {
                let r = energy * f3.value + alpha * f4.value;
                r * r
            };
            let mut denom_sum = 0.0;
            if b_down != 0.0 {
                let e_down = model.energy(state.n_r, state.l - 1)?;
                denom_sum += b_down * b_down / degenerate_guard(energy, e_down)?;
            }
            let e_up = model.energy(state.n_r, state.l + 1)?;
            if b_up != 0.0 {
                denom_sum += b_up * b_up / degenerate_guard(energy, e_up)?;
            }
            let mixing = alpha.powi(3) * 8.0 * alpha * denom_sum * radial_sq;
            let direct = alpha.powi(3)
                * (b2_sum * (5.0 * energy * f5.value - 4.0 * alpha * f6.value) - energy * f5.value
                    + alpha * f6.value);
            Ok(ShiftCoefficient {
                mixing,
                direct,
                flags,
            })
        }
        Mode::Corrected => {
            // The radial equation is an eigenproblem in E^2: the operators
            // perturb E^2, so delta E = delta(E^2)/(2E) with E^2-difference
            // denominators and honest cross-basis radial integrals.
            let mut mixing_e2 = 0.0;
            for l_other in neighbor_ls(state.l) {
                if state.m.unsigned_abs() > l_other {
                    continue; // the neighbor level cannot carry this m
                }
                let other = QuantumState::new(state.n_r, l_other, state.m)?;
                let angular = cos_element(&other, state);
                if angular == 0.0 {
                    continue;
                }
                let g3 = cross_inverse_moment(model, &other, state, 3)?;
                let g4 = cross_inverse_moment(model, &other, state, 4)?;
                if g3.continued || g4.continued {
                    flags.cross_moment_continued = true;
                }
                let m_elem = 2.0 * alpha * alpha * angular * (energy * g3.value + alpha * g4.value);
                let e_other = model.energy(state.n_r, l_other)?;
                let denom = degenerate_guard(energy * energy, e_other * e_other)?;
                mixing_e2 += m_elem * m_elem / denom;
            }
            let direct_e2 = alpha.powi(3)
                * (b2_sum * (5.0 * energy * f5.value - 4.0 * alpha * f6.value) - energy * f5.value
                    + alpha * f6.value);
            Ok(ShiftCoefficient {
                mixing: mixing_e2 / (2.0 * energy),
                direct: direct_e2 / (2.0 * energy),
                flags,
            })
        }
    }
}

/// l-1 (when it exists) and l+1.
fn neighbor_ls(l: u32) -> Vec<u32> {
    if l == 0 {
        vec![1]
    } else {
        vec![l - 1, l + 1]
    }
}

/// Denominator a - b, rejected when the pair is numerically degenerate.
fn degenerate_guard(a: f64, b: f64) -> Result<f64> {
    let d = a - b;
    if d.abs() <= f64::EPSILON * a.abs() {
        return Err(Error::DegenerateDenominator { a, b });
    }
    Ok(d)
}

/// Second-order shift of `state` at strength `theta` in the given mode.
/// Fields scale exactly as theta^2.
pub fn second_order_shift(
    model: &HydrogenModel,
    state: &QuantumState,
    theta: &NCParameter,
    mode: Mode,
) -> Result<ShiftBreakdown> {
    let coeff = shift_coefficient(model, state, mode)?;
    let t2 = theta.theta_mev2 * theta.theta_mev2;
    let mixing = coeff.mixing * t2;
    let direct = coeff.direct * t2;
    Ok(ShiftBreakdown {
        state: *state,
        mode,
        theta_mev2: theta.theta_mev2,
        first_order: first_order_shift(state, theta),
        mixing,
        direct,
        total: mixing + direct,
        flags: coeff.flags,
    })
}

/// Unperturbed level energy plus the second-order shift, in MeV.
pub fn total_energy(
    model: &HydrogenModel,
    state: &QuantumState,
    theta: &NCParameter,
    mode: Mode,
) -> Result<EnergyQuantity> {
    let energy = model.energy(state.n_r, state.l)?;
    let shift = second_order_shift(model, state, theta, mode)?;
    Ok(EnergyQuantity {
        value: energy + shift.total,
        unit: EnergyUnit::MeV,
    })
}
