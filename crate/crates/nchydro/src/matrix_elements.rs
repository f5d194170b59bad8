//! Angular selection rules and radial inverse-power matrix elements.
//!
//! Angular part: matrix elements of cos(theta) and cos^2(theta) between
//! spherical harmonics reduce to products of the ladder coefficients
//!
//!   B_l^m = sqrt((l+m)(l-m) / ((2l+1)(2l-1))),   B_0^m := 0,
//!
//! with selection rules delta_m m' and delta l,l'+-1 (cos) or
//! delta l,l' / l,l'+-2 (cos^2).
//!
//! Radial part: expectation values f(k) = <n l | r^-k | n l> for k = 3..6 in
//! closed form (finite hypergeometric sums collapsed to nu-rational
//! expressions times a^k) and by quadrature, plus cross elements
//! <n' l' | r^-k | n l> between different levels.

use crate::error::{Error, Result};
use crate::hydrogen::{HydrogenModel, QuantumState};
use crate::special::{gamma, integrate_halfline, laguerre};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::RwLock;

/// Ladder coefficient B_l^m; zero at l = 0 (matching the absent l = -1
/// state, so the l'-1 selection branch needs no special case).
///
/// Errors when |m| > l.
pub fn b_coeff(l: u32, m: i32) -> Result<f64> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidState(format!(
            "b_coeff: |m| = {} exceeds l = {l}",
            m.unsigned_abs()
        )));
    }
    if l == 0 {
        return Ok(0.0);
    }
    let lf = l as f64;
    let mf = m as f64;
    Ok((((lf + mf) * (lf - mf)) / ((2.0 * lf + 1.0) * (2.0 * lf - 1.0))).sqrt())
}

/// <l' m' | cos(theta) | l m>: nonzero only for l' = l +- 1 and m' = m, with
/// value B of the larger l. States carry valid quantum numbers by
/// construction, so this is total (forbidden pairs give exactly 0).
pub fn cos_element(bra: &QuantumState, ket: &QuantumState) -> f64 {
    if bra.m != ket.m {
        return 0.0;
    }
    let (lo, hi) = (bra.l.min(ket.l), bra.l.max(ket.l));
    if hi - lo != 1 {
        return 0.0;
    }
    // |m| <= lo is required for both states to exist; b_coeff(hi, m) is then
    // in-domain.
    b_coeff(hi, bra.m).expect("validated state")
}

/// <l' m' | cos^2(theta) | l m>: nonzero for m' = m with l' = l (value
/// (B_{l+1}^m)^2 + (B_l^m)^2) or l' = l +- 2 (value
/// B_{min+1}^m B_{min+2}^m).
pub fn cos2_element(bra: &QuantumState, ket: &QuantumState) -> f64 {
    if bra.m != ket.m {
        return 0.0;
    }
    let m = bra.m;
    let (lo, hi) = (bra.l.min(ket.l), bra.l.max(ket.l));
    match hi - lo {
        0 => {
            let b_up = b_coeff(lo + 1, m).expect("validated state");
            let b_dn = b_coeff(lo, m).expect("validated state");
            b_up * b_up + b_dn * b_dn
        }
        2 => {
            b_coeff(lo + 1, m).expect("validated state")
                * b_coeff(lo + 2, m).expect("validated state")
        }
        _ => 0.0,
    }
}

/// A diagonal radial moment <n_r l | r^-k | n_r l>, k in {3,4,5,6}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RadialMoment {
    pub k: u32,
    pub n_r: u32,
    pub l: u32,
    /// Value in MeV^k.
    pub value: f64,
    /// True iff the defining integral converges at the origin
    /// (2 nu + 2 - k > -1). A closed-form value with `convergent: false` is
    /// an analytic continuation and must be treated as such by callers.
    pub convergent: bool,
    /// Escalation error estimate for quadrature values; None for closed form.
    pub error_estimate: Option<f64>,
}

fn check_k(k: u32) -> Result<()> {
    if (3..=6).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidState(format!(
            "radial moment order k = {k} outside 3..=6"
        )))
    }
}

/// Closed-form f(k) = <n_r l | r^-k | n_r l>.
///
/// The four closed forms (n = n_r):
///
///   f(3) = 2a^3 / (nu (2nu+1) (n+nu+1)) * {1 + n/(nu+1)}
///   f(4) = 4a^4 / ((2nu-1) nu (2nu+1) (n+nu+1)) * [1 + 3n/(nu+1)
///          + 3n(n-1)/((nu+1)(2nu+3))]
///   f(5) = 4a^5 / ((2nu-1)(nu-1) nu (2nu+1) (n+nu+1)) * [1 + 6n/(nu+1)
///          + 15n(n-1)/((nu+1)(2nu+3)) + 5n(n-1)(n-2)/((nu+1)(2nu+3)(nu+2))]
///   f(6) = 8a^6 / ((2nu-3)(2nu-1)(nu-1) nu (2nu+1) (n+nu+1)) * [1 + 10n/(nu+1)
///          + 45n(n-1)/((nu+1)(2nu+3)) + 35n(n-1)(n-2)/((nu+1)(2nu+3)(nu+2))
///          + 35n(n-1)(n-2)(n-3)/(2(nu+1)(2nu+3)(nu+2)(2nu+5))]
///
/// For 2 nu + 2 - k <= -1 the defining integral diverges and the returned
/// value is the analytic continuation of the convergent region, flagged by
/// `convergent: false`.
///
/// Errors when a denominator factor vanishes exactly (nu in {0, 1/2, 1, 3/2}
/// depending on k), naming the offending factor; brace denominators
/// (nu+1, 2nu+3, nu+2, 2nu+5) are always positive since nu > -1/2.
pub fn f_closed(model: &HydrogenModel, k: u32, n_r: u32, l: u32) -> Result<RadialMoment> {
    check_k(k)?;
    let nu = model.nu_of(l)?;
    let a = model.a_of(n_r, l)?;
    let n = n_r as f64;

    let factors: &[(&'static str, f64)] = &[
        ("nu", nu),
        ("2nu+1", 2.0 * nu + 1.0),
        ("2nu-1", 2.0 * nu - 1.0),
        ("nu-1", nu - 1.0),
        ("2nu-3", 2.0 * nu - 3.0),
    ];
    // Number of leading factors participating in the denominator for each k.
    let active = match k {
        3 => 2,
        4 => 3,
        5 => 4,
        _ => 5,
    };
    for &(name, value) in &factors[..active] {
        if value == 0.0 {
            return Err(Error::MomentPole { factor: name, nu });
        }
    }
    let denom: f64 = factors[..active].iter().map(|&(_, v)| v).product::<f64>() * (n + nu + 1.0);

    let braces = match k {
        3 => 1.0 + n / (nu + 1.0),
        4 => 1.0 + 3.0 * n / (nu + 1.0) + 3.0 * n * (n - 1.0) / ((nu + 1.0) * (2.0 * nu + 3.0)),
        5 => {
            1.0 + 6.0 * n / (nu + 1.0)
                + 15.0 * n * (n - 1.0) / ((nu + 1.0) * (2.0 * nu + 3.0))
                + 5.0 * n * (n - 1.0) * (n - 2.0) / ((nu + 1.0) * (2.0 * nu + 3.0) * (nu + 2.0))
        }
        _ => {
            1.0 + 10.0 * n / (nu + 1.0)
                + 45.0 * n * (n - 1.0) / ((nu + 1.0) * (2.0 * nu + 3.0))
                + 35.0 * n * (n - 1.0) * (n - 2.0) / ((nu + 1.0) * (2.0 * nu + 3.0) * (nu + 2.0))
                + 35.0 * n * (n - 1.0) * (n - 2.0) * (n - 3.0)
                    / (2.0 * (nu + 1.0) * (2.0 * nu + 3.0) * (nu + 2.0) * (2.0 * nu + 5.0))
        }
    };
    let pre = match k {
        3 => 2.0 * a.powi(3),
        4 => 4.0 * a.powi(4),
        5 => 4.0 * a.powi(5),
        _ => 8.0 * a.powi(6),
    };
    Ok(RadialMoment {
        k,
        n_r,
        l,
        value: pre * braces / denom,
        convergent: 2.0 * nu + 2.0 - k as f64 > -1.0,
        error_estimate: None,
    })
}

/// Quadrature evaluation of f(k) = int R_nl^2 r^-k dr, via x = 2 a r:
///
///   f(k) = 2^(k-1) a^k n! / ((n+nu+1) Gamma(n+2nu+2)) *
///          int x^(2nu+2-k) e^-x [L_n^(2nu+1)(x)]^2 dx.
///
/// Errors when the integrand is non-integrable at the origin
/// (2 nu + 2 - k <= -1: all k for S states, k >= 5 for P states).
pub fn f_numeric(model: &HydrogenModel, k: u32, n_r: u32, l: u32) -> Result<RadialMoment> {
    check_k(k)?;
    let basis = model.radial_basis(n_r, l)?;
    let nu = basis.nu;
    let s = 2.0 * nu + 2.0 - k as f64;
    if s <= -1.0 {
        return Err(Error::DivergentIntegral { exponent: s });
    }
    let integral = integrate_halfline(s, |x| {
        let lag = laguerre(n_r, 2.0 * nu + 1.0, x);
        lag * lag
    })?;
    // exp(2 ln_norm) = a n! / ((n+nu+1) Gamma(n+2nu+2)); substitution
    // contributes (2a)^k from r^-k and dx/(2a): net (2a)^(k-1).
    let pref = (2.0 * basis.ln_norm()).exp() * (2.0 * basis.a).powi(k as i32 - 1);
    Ok(RadialMoment {
        k,
        n_r,
        l,
        value: pref * integral.value,
        convergent: true,
        error_estimate: Some(pref * integral.error_estimate),
    })
}

/// Cross radial element <n_r' l' | r^-k | n_r l> between two levels
/// (independent of m). `continued` marks values obtained by analytic
/// continuation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossMoment {
    pub value: f64,
    /// True when the origin exponent s = nu + nu' + 2 - k lies in (-2, -1]
    /// and the value is the single-subtraction continuation
    /// g(0) Gamma(s+1) + int t^(s+1) e^-t (g(t)-g(0))/t dt.
    pub continued: bool,
}

/// Radial integral int R_{n'l'} R_{nl} r^-k dr for k >= 0.
///
/// Substituting t = (a + a') r turns the integrand into
/// t^(nu+nu'+2-k) e^-t times the polynomial
/// L_{n'}^(2nu'+1)(b' t) L_n^(2nu+1)(b t), b = 2a/(a+a'), b' = 2a'/(a+a').
///
/// For origin exponent s = nu + nu' + 2 - k in (-2, -1] (the S <-> P r^-4
/// coupling: s ~ -1.00007) the integral diverges and the value returned is
/// the analytic continuation by a single subtraction at the origin, flagged
/// `continued`. s <= -2 errors as divergent.
pub fn cross_inverse_moment(
    model: &HydrogenModel,
    bra: &QuantumState,
    ket: &QuantumState,
    k: u32,
) -> Result<CrossMoment> {
    let b1 = model.radial_basis(bra.n_r, bra.l)?;
    let b2 = model.radial_basis(ket.n_r, ket.l)?;
    let s = b1.nu + b2.nu + 2.0 - k as f64;
    let a_sum = b1.a + b2.a;
    let beta1 = 2.0 * b1.a / a_sum;
    let beta2 = 2.0 * b2.a / a_sum;
    let ln_pref = b1.ln_norm()
        + b2.ln_norm()
        + (b1.nu + 1.0) * (2.0 * b1.a).ln()
        + (b2.nu + 1.0) * (2.0 * b2.a).ln()
        - (b1.nu + b2.nu + 3.0 - k as f64) * a_sum.ln();
    let g = |t: f64| {
        laguerre(b1.n_r, 2.0 * b1.nu + 1.0, beta1 * t)
            * laguerre(b2.n_r, 2.0 * b2.nu + 1.0, beta2 * t)
    };
    if s > -1.0 {
        let integral = integrate_halfline(s, g)?;
        Ok(CrossMoment {
            value: ln_pref.exp() * integral.value,
            continued: false,
        })
    } else if s > -2.0 {
        let g0 = g(0.0);
        let remainder = integrate_halfline(s + 1.0, |t| (g(t) - g0) / t)?;
        Ok(CrossMoment {
            value: ln_pref.exp() * (g0 * gamma(s + 1.0) + remainder.value),
            continued: true,
        })
    } else {
        Err(Error::DivergentIntegral { exponent: s })
    }
}

/// Memoized closed-form moments for one model. Reads are lock-cheap and safe
/// under concurrent access; the cache key is (k, n_r, l).
#[derive(Debug)]
pub struct MomentTable {
    model: HydrogenModel,
    cache: RwLock<HashMap<(u32, u32, u32), RadialMoment>>,
}

impl MomentTable {
    pub fn new(model: HydrogenModel) -> Self {
        Self {
            model,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &HydrogenModel {
        &self.model
    }

    /// Cached f_closed(k, n_r, l).
    pub fn closed(&self, k: u32, n_r: u32, l: u32) -> Result<RadialMoment> {
        if let Some(m) = self
            .cache
            .read()
            .expect("moment cache poisoned")
            .get(&(k, n_r, l))
        {
            return Ok(*m);
        }
        let m = f_closed(&self.model, k, n_r, l)?;
        self.cache
            .write()
            .expect("moment cache poisoned")
            .insert((k, n_r, l), m);
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;

    fn model() -> HydrogenModel {
        HydrogenModel::new(PhysicalConstants::codata2018())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    fn state(n_r: u32, l: u32, m: i32) -> QuantumState {
        QuantumState::new(n_r, l, m).unwrap()
    }

    #[test]
    fn b_coeff_examples() {
        // Extremal m annihilates the coefficient.
        for l in 1..=5u32 {
            assert_eq!(b_coeff(l, l as i32).unwrap(), 0.0);
            assert_eq!(b_coeff(l, -(l as i32)).unwrap(), 0.0);
        }
        assert_eq!(b_coeff(0, 0).unwrap(), 0.0, "B_0 defined as 0");
        assert!(rel(b_coeff(1, 0).unwrap(), (1.0f64 / 3.0).sqrt()) < 1e-15);
        assert!(rel(b_coeff(2, 1).unwrap(), (1.0f64 / 5.0).sqrt()) < 1e-15);
        assert!(rel(b_coeff(2, 0).unwrap(), (4.0f64 / 15.0).sqrt()) < 1e-15);
        // m-sign symmetry.
        for l in 1..=4u32 {
            for m in 0..=l as i32 {
                assert_eq!(b_coeff(l, m).unwrap(), b_coeff(l, -m).unwrap());
            }
        }
        assert!(b_coeff(1, 2).is_err(), "|m| > l is a domain error");
    }

    #[test]
    fn cos_element_selection_rules() {
        // Parity: diagonal elements vanish.
        for l in 0..=4u32 {
            let s = state(0, l, 0);
            assert_eq!(cos_element(&s, &s), 0.0);
        }
        // Azimuthal orthogonality.
        assert_eq!(cos_element(&state(0, 1, 1), &state(0, 2, 0)), 0.0);
        // Allowed pair.
        assert!(
            rel(
                cos_element(&state(0, 1, 0), &state(0, 0, 0)),
                (1.0f64 / 3.0).sqrt()
            ) < 1e-15
        );
        // Symmetric in bra/ket.
        assert_eq!(
            cos_element(&state(0, 1, 0), &state(0, 2, 0)),
            cos_element(&state(0, 2, 0), &state(0, 1, 0))
        );
        // |delta l| >= 2 forbidden.
        assert_eq!(cos_element(&state(0, 3, 0), &state(0, 1, 0)), 0.0);
    }

    #[test]
    fn cos2_element_selection_rules() {
        // l = 0 diagonal: exact sphere average of cos^2.
        assert!(rel(cos2_element(&state(0, 0, 0), &state(0, 0, 0)), 1.0 / 3.0) < 1e-15);
        // Parity: delta l = +-1 vanishes.
        assert_eq!(cos2_element(&state(0, 1, 0), &state(0, 0, 0)), 0.0);
        // delta l = 2 product value.
        assert!(
            rel(
                cos2_element(&state(0, 2, 0), &state(0, 0, 0)),
                (1.0f64 / 3.0).sqrt() * (4.0f64 / 15.0).sqrt()
            ) < 1e-15
        );
        // General diagonal: (B_{l+1})^2 + (B_l)^2.
        for l in 0..=4u32 {
            for m in -(l as i32)..=l as i32 {
                let s = state(0, l, m);
                let expect = b_coeff(l + 1, m).unwrap().powi(2) + b_coeff(l, m).unwrap().powi(2);
                assert_eq!(cos2_element(&s, &s), expect);
            }
        }
    }

    #[test]
    fn cos_completeness_within_shell() {
        // sum_{l'} <l m|cos|l' m>^2 = <l m|cos^2|l m>: the identity holds
        // exactly in the B algebra.
        for l in 0..=4u32 {
            for m in -(l as i32)..=l as i32 {
                let bra = state(0, l, m);
                let mut sum = 0.0;
                for lp in l.saturating_sub(1)..=l + 1 {
                    if m.unsigned_abs() > lp {
                        continue;
                    }
                    let ket = state(0, lp, m);
                    sum += cos_element(&bra, &ket).powi(2);
                }
                assert!(
                    (sum - cos2_element(&bra, &bra)).abs() < 1e-14,
                    "completeness at l={l} m={m}"
                );
            }
        }
    }

    #[test]
    fn f_closed_low_radial_examples() {
        let m = model();
        // n_r = 0 collapses the braces to 1: f(3) = 2a^3/(nu(2nu+1)(nu+1)).
        for l in 1..=3u32 {
            let nu = m.nu_of(l).unwrap();
            let a = m.a_of(0, l).unwrap();
            let expect = 2.0 * a.powi(3) / (nu * (2.0 * nu + 1.0) * (nu + 1.0));
            let f = f_closed(&m, 3, 0, l).unwrap();
            assert!(rel(f.value, expect) < 1e-14, "f(3) at n_r=0, l={l}");
        }
    }

    #[test]
    fn f_closed_matches_quadrature_where_convergent() {
        let m = model();
        for &(k, n_r, l) in &[
            (3u32, 0u32, 1u32),
            (3, 1, 2),
            (4, 2, 1),
            (5, 0, 2),
            (6, 3, 2),
            (6, 0, 4),
        ] {
            let closed = f_closed(&m, k, n_r, l).unwrap();
            assert!(closed.convergent, "expected convergent at k={k}, l={l}");
            let numeric = f_numeric(&m, k, n_r, l).unwrap();
            assert!(
                rel(closed.value, numeric.value) < 1e-8,
                "f({k}) at ({n_r},{l}): closed {:e} vs quad {:e}",
                closed.value,
                numeric.value
            );
        }
    }

    #[test]
    fn f_convergence_flags() {
        let m = model();
        // S states: every k in 3..=6 is divergent (2nu - 1 ~ -1.0001).
        for k in 3..=6u32 {
            let f = f_closed(&m, k, 0, 0).unwrap();
            assert!(!f.convergent, "k={k}, l=0 must be flagged divergent");
            assert!(f.value.is_finite(), "continuation value still finite");
            assert!(matches!(
                f_numeric(&m, k, 0, 0),
                Err(Error::DivergentIntegral { .. })
            ));
        }
        // P states: k = 3, 4 convergent (barely), k = 5, 6 divergent.
        assert!(f_closed(&m, 3, 0, 1).unwrap().convergent);
        assert!(f_closed(&m, 4, 0, 1).unwrap().convergent);
        assert!(!f_closed(&m, 5, 0, 1).unwrap().convergent);
        assert!(!f_closed(&m, 6, 0, 1).unwrap().convergent);
        assert!(matches!(
            f_numeric(&m, 5, 0, 1),
            Err(Error::DivergentIntegral { .. })
        ));
        // l >= 2: all orders convergent.
        for l in 2..=4u32 {
            for k in 3..=6u32 {
                assert!(f_closed(&m, k, 0, l).unwrap().convergent);
            }
        }
    }

    #[test]
    fn f_closed_pole_errors_name_the_factor() {
        // alpha = 0, l = 0: nu = 0 exactly.
        let free = HydrogenModel::new(PhysicalConstants::codata2018().with_alpha(0.0));
        match f_closed(&free, 3, 0, 0) {
            Err(Error::MomentPole { factor, .. }) => assert_eq!(factor, "nu"),
            other => panic!("expected nu pole, got {other:?}"),
        }
        // alpha = 0, l = 1: nu = 1 exactly; f(5) has the (nu-1) factor.
        match f_closed(&free, 5, 0, 1) {
            Err(Error::MomentPole { factor, .. }) => assert_eq!(factor, "nu-1"),
            other => panic!("expected nu-1 pole, got {other:?}"),
        }
        // f(3) at nu = 1 is fine (no nu-1 factor).
        assert!(f_closed(&free, 3, 0, 1).is_ok());
        // alpha = 1.5, l = 2: nu = 3/2 exactly; f(6) has the (2nu-3) factor.
        let strong = HydrogenModel::new(PhysicalConstants::codata2018().with_alpha(1.5));
        assert_eq!(strong.nu_of(2).unwrap(), 1.5);
        match f_closed(&strong, 6, 0, 2) {
            Err(Error::MomentPole { factor, .. }) => assert_eq!(factor, "2nu-3"),
            other => panic!("expected 2nu-3 pole, got {other:?}"),
        }
        assert!(f_closed(&strong, 5, 0, 2).is_ok());
    }

    #[test]
    fn f3_nonrelativistic_limit() {
        // alpha -> 0: <r^-3> = (m alpha)^3 / (N^3 l (l+1/2) (l+1)).
        let m = HydrogenModel::new(PhysicalConstants::codata2018().with_alpha(1e-4));
        let me = m.constants.electron_mass_mev;
        let alpha = m.constants.alpha;
        for (n_r, l) in [(0u32, 1u32), (1, 1), (0, 2), (2, 3)] {
            let nn = (n_r + l + 1) as f64;
            let lf = l as f64;
            let expect = (me * alpha).powi(3) / (nn.powi(3) * lf * (lf + 0.5) * (lf + 1.0));
            let f = f_closed(&m, 3, n_r, l).unwrap();
            assert!(
                rel(f.value, expect) < 1e-6,
                "nonrel <r^-3> at ({n_r},{l}): {:e} vs {expect:e}",
                f.value
            );
        }
    }

    #[test]
    fn cross_moment_reduces_to_diagonal() {
        // bra = ket reproduces f_numeric.
        let m = model();
        for &(k, n_r, l) in &[(3u32, 0u32, 2u32), (4, 1, 2), (0, 2, 1)] {
            let s = state(n_r, l, 0);
            let cross = cross_inverse_moment(&m, &s, &s, k).unwrap();
            assert!(!cross.continued);
            if k >= 3 {
                let diag = f_numeric(&m, k, n_r, l).unwrap();
                assert!(
                    rel(cross.value, diag.value) < 1e-9,
                    "cross vs diagonal k={k} ({n_r},{l})"
                );
            } else {
                // k = 0: the norm.
                assert!((cross.value - 1.0).abs() < 1e-9, "norm via cross route");
            }
        }
    }

    #[test]
    fn kg_levels_are_not_dr_orthogonal_but_energy_weighted_are() {
        // The KG radial problem at fixed l is an eigenproblem with an
        // energy-dependent effective potential: plain overlaps
        // int R R' dr do not vanish; the exact identity is
        //   (E + E') int R R' dr + 2 alpha int R R' r^-1 dr = 0.
        let m = model();
        let alpha = m.constants.alpha;
        for (na, nb, l) in [(0u32, 1u32, 0u32), (0, 2, 0), (1, 2, 0), (0, 1, 1)] {
            let sa = state(na, l, 0);
            let sb = state(nb, l, 0);
            let overlap = cross_inverse_moment(&m, &sa, &sb, 0).unwrap().value;
            let rinv = cross_inverse_moment(&m, &sa, &sb, 1).unwrap().value;
            let ea = m.energy(na, l).unwrap();
            let eb = m.energy(nb, l).unwrap();
            let weighted = (ea + eb) * overlap + 2.0 * alpha * rinv;
            // Tolerance: the overlap itself is rounding-limited (the exact
            // value is ~1e-5 of the quadrature term mass), which caps the
            // identity residual near 1e-10 of the canceling terms.
            assert!(
                weighted.abs() <= 1e-9 * (2.0 * alpha * rinv).abs(),
                "energy-weighted orthogonality ({na},{nb},l={l}): {weighted:e}"
            );
            // The plain overlap is genuinely nonzero, of order alpha^2.
            assert!(
                overlap.abs() > 1e-6 && overlap.abs() < 1e-3,
                "plain overlap ({na},{nb},l={l}) = {overlap:e}"
            );
        }
    }

    #[test]
    fn cross_moment_s_p_coupling_continues() {
        // <n_r l=0 | r^-4 | n_r l=1> has origin exponent ~ -1.00007: the
        // integral is log-divergent and the value is a continuation.
        let m = model();
        let s0 = state(0, 0, 0);
        let p0 = state(0, 1, 0);
        let k4 = cross_inverse_moment(&m, &s0, &p0, 4).unwrap();
        assert!(k4.continued, "S-P r^-4 must be continued");
        assert!(k4.value.is_finite());
        // r^-3 between the same pair converges directly.
        let k3 = cross_inverse_moment(&m, &s0, &p0, 3).unwrap();
        assert!(!k3.continued);
        // Deeper powers are outright divergent (s <= -2).
        assert!(matches!(
            cross_inverse_moment(&m, &s0, &p0, 5),
            Err(Error::DivergentIntegral { .. })
        ));
    }

    #[test]
    fn moment_table_caches_and_agrees() {
        let table = MomentTable::new(model());
        let direct = f_closed(table.model(), 4, 1, 2).unwrap();
        let first = table.closed(4, 1, 2).unwrap();
        let second = table.closed(4, 1, 2).unwrap();
        assert_eq!(first.value, direct.value);
        assert_eq!(first.value, second.value);
        // Concurrent reads are safe.
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for k in 3..=6u32 {
                        let _ = table.closed(k, 0, 2).unwrap();
                    }
                });
            }
        });
    }
}
