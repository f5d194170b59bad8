//! Independent recomputation routes used to cross-check the closed-form
//! machinery: product quadrature over the sphere for the angular algebra, a
//! double-exponential radial rule and an explicit Gamma series for the cross
//! moments, and a full 3D product quadrature for the first-order shift.
//! Everything here is deliberately built from different primitives than the
//! code it checks (Legendre instead of Laguerre nodes, trapezoid sums instead
//! of Golub-Welsch weights, termwise Gamma values instead of closed-form
//! ratios), trading speed for auditability.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hydrogen::{HydrogenModel, QuantumState, RadialBasis};
use crate::special::{gamma, ln_factorial, ln_gamma};

/// Gauss-Legendre rule on [-1, 1]: nodes are the roots of P_n located by
/// Newton iteration from the Tricomi cosine guess, weights
/// 2 / ((1 - x^2) P_n'(x)^2).
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> GaussLegendre {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let nf = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(order, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(order, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // The i-th guess converges to the i-th largest root; mirror it.
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence; the derivative uses
/// (x^2 - 1) P_n' = n (x P_n - P_{n-1}), valid for |x| < 1.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fully normalized associated Legendre bar-P_l^m for m >= 0, Condon-Shortley
/// phase folded in, normalized so that int_-1^1 (bar-P_l^m)^2 du = 1.
fn normalized_assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    assert!(m <= l, "requires m <= l");
    // Diagonal start P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then upward in l.
    let sin_th = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * sin_th;
        odd += 2.0;
    }
    let norm =
        ((2.0 * l as f64 + 1.0) / 2.0 * (ln_factorial(l - m) - ln_factorial(l + m)).exp()).sqrt();
    if l == m {
        return norm * pmm;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 1.0) * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let next = ((2.0 * lf - 1.0) * x * cur - (lf + mf - 1.0) * prev) / (lf - mf);
        prev = cur;
        cur = next;
    }
    norm * cur
}

/// Complex spherical harmonic Y_l^m(theta, phi) as (re, im), Condon-Shortley
/// convention, with Y_l^{-m} = (-1)^m conj(Y_l^m).
pub fn spherical_harmonic(l: u32, m: i32, cos_theta: f64, phi: f64) -> (f64, f64) {
    let ma = m.unsigned_abs();
    assert!(ma <= l, "requires |m| <= l");
    let p = normalized_assoc_legendre(l, ma, cos_theta) / (2.0 * PI).sqrt();
    let (s, c) = (ma as f64 * phi).sin_cos();
    if m >= 0 {
        (p * c, p * s)
    } else if ma % 2 == 0 {
        (p * c, -p * s)
    } else {
        (-p * c, p * s)
    }
}

/// Product quadrature over the unit sphere: Gauss-Legendre in u = cos(theta),
/// uniform trapezoid in phi. The Gauss rule is exact for the polynomial
/// u-integrands that same-m harmonic pairs produce (degree <= 2*order - 1);
/// the trapezoid's discrete orthogonality integrates e^{i k phi} exactly for
/// |k| < phi_points.
pub struct AngularQuadrature {
    gl: GaussLegendre,
    phi_points: usize,
}

impl Default for AngularQuadrature {
    fn default() -> Self {
        AngularQuadrature::new(64, 32)
    }
}

impl AngularQuadrature {
    pub fn new(u_order: usize, phi_points: usize) -> Self {
        AngularQuadrature {
            gl: GaussLegendre::new(u_order),
            phi_points,
        }
    }

    /// <bra| f(cos theta) |ket> over the sphere as (re, im); the imaginary
    /// part must come out at rounding level for real f and is returned
    /// unassembled so callers can assert it.
    pub fn element<F: Fn(f64) -> f64>(
        &self,
        bra: &QuantumState,
        ket: &QuantumState,
        f: F,
    ) -> (f64, f64) {
        let dphi = 2.0 * PI / self.phi_points as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&u, &w) in self.gl.nodes.iter().zip(&self.gl.weights) {
            let fv = f(u);
            for j in 0..self.phi_points {
                let phi = dphi * j as f64;
                let (br, bi) = spherical_harmonic(bra.l, bra.m, u, phi);
                let (kr, ki) = spherical_harmonic(ket.l, ket.m, u, phi);
                // conj(bra) * ket
                re += w * dphi * fv * (br * kr + bi * ki);
                im += w * dphi * fv * (br * ki - bi * kr);
            }
        }
        (re, im)
    }

    /// Real part of <bra| cos(theta) |ket>.
    pub fn cos_element(&self, bra: &QuantumState, ket: &QuantumState) -> f64 {
        self.element(bra, ket, |u| u).0
    }

    /// Real part of <bra| cos^2(theta) |ket>.
    pub fn cos2_element(&self, bra: &QuantumState, ket: &QuantumState) -> f64 {
        self.element(bra, ket, |u| u * u).0
    }
}

/// Trapezoid step of the double-exponential grid.
const EXPSINH_STEP: f64 = 0.03;
/// Half-width of the double-exponential grid in the t variable.
const EXPSINH_HALF_WIDTH: f64 = 6.0;

/// Integrate f over (0, inf) with the exp-sinh double-exponential rule:
/// r = exp(sinh t), trapezoid in t. Spectrally accurate for integrands
/// analytic on (0, inf) that behave like r^s with s > -1/2 at the origin and
/// decay exponentially. Grid corners whose terms leave f64 range evaluate
/// non-finite and are skipped; under the s > -1/2 constraint their true
/// contribution is below e^-100 of the total.
pub fn integrate_expsinh<F: Fn(f64) -> f64>(f: F) -> f64 {
    let n = (EXPSINH_HALF_WIDTH / EXPSINH_STEP).round() as i64;
    let mut sum = 0.0;
    for k in -n..=n {
        let t = k as f64 * EXPSINH_STEP;
        let r = t.sinh().exp();
        let term = t.cosh() * r * f(r);
        if term.is_finite() {
            sum += term;
        }
    }
    sum * EXPSINH_STEP
}

/// Cross radial moment int R_bra R_ket r^-k dr recomputed as an explicit
/// finite Gamma series: expanding both Laguerre polynomials termwise in
/// t = (a + a') r gives sum_{i,j} d_i d'_j Gamma(s + 1 + i + j) with
/// s = nu + nu' + 2 - k. For -2 < s <= -1 the leading Gamma argument lies in
/// (-1, 0) and the series value is the analytic continuation, term by term --
/// which makes this an independent check of the continued moments as well.
///
/// Errors: s <= -2 (not continuable by one subtraction).
pub fn gamma_series_cross_moment(
    model: &HydrogenModel,
    bra: &QuantumState,
    ket: &QuantumState,
    k: u32,
) -> Result<f64> {
    let ba = model.radial_basis(bra.n_r, bra.l)?;
    let bb = model.radial_basis(ket.n_r, ket.l)?;
    let s = ba.nu + bb.nu + 2.0 - k as f64;
    if s <= -2.0 {
        return Err(Error::DivergentIntegral { exponent: s });
    }
    let asum = ba.a + bb.a;
    let ln_pref = ba.ln_norm()
        + bb.ln_norm()
        + (ba.nu + 1.0) * (2.0 * ba.a / asum).ln()
        + (bb.nu + 1.0) * (2.0 * bb.a / asum).ln()
        + (k as f64 - 1.0) * asum.ln();
    // L_n^A(beta t) = sum_i d_i t^i with
    // d_i = (-1)^i binom(n + A, n - i) beta^i / i!.
    let coeffs = |basis: &RadialBasis| -> Vec<f64> {
        let n = basis.n_r;
        let aa = 2.0 * basis.nu + 1.0;
        let beta = 2.0 * basis.a / asum;
        (0..=n)
            .map(|i| {
                let ln_c = ln_gamma(n as f64 + aa + 1.0)
                    - ln_factorial(n - i)
                    - ln_gamma(aa + i as f64 + 1.0)
                    - ln_factorial(i)
                    + i as f64 * beta.ln();
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                sign * ln_c.exp()
            })
            .collect()
    };
    let da = coeffs(&ba);
    let db = coeffs(&bb);
    let mut series = 0.0;
    for (i, ci) in da.iter().enumerate() {
        for (j, cj) in db.iter().enumerate() {
            series += ci * cj * gamma(s + 1.0 + (i + j) as f64);
        }
    }
    Ok(ln_pref.exp() * series)
}

/// Cross radial moment by direct numerical quadrature on the
/// double-exponential grid where the origin exponent allows it (s > -1/2);
/// steeper exponents route through the Gamma series, whose continuation is
/// the defined value in the divergent band.
pub fn radial_cross_moment_oracle(
    model: &HydrogenModel,
    bra: &QuantumState,
    ket: &QuantumState,
    k: u32,
) -> Result<f64> {
    let ba = model.radial_basis(bra.n_r, bra.l)?;
    let bb = model.radial_basis(ket.n_r, ket.l)?;
    let s = ba.nu + bb.nu + 2.0 - k as f64;
    if s > -0.5 {
        Ok(integrate_expsinh(|r| {
            let va = ba.value(r).expect("grid radius is positive");
            let vb = bb.value(r).expect("grid radius is positive");
            va * vb * r.powi(-(k as i32))
        }))
    } else {
        gamma_series_cross_moment(model, bra, ket, k)
    }
}

/// <psi | H | psi> for the order-theta operator
/// H = 2 theta e^4 (E cos(theta)/r^3 + e^2 cos(theta)/r^4), by full 3D
/// product quadrature (double-exponential radial grid x Gauss-Legendre in
/// u = cos(theta) x uniform trapezoid in phi). Returns (value, mass) where
/// mass is the L1 sum of the quadrature terms -- the scale against which the
/// vanishing of the value is judged.
///
/// Requires l >= 1: for l = 0 the r^-3 and r^-4 factors are not integrable
/// against R^2, so the 3D integral exists only through the angular zero and
/// a product quadrature of it is not absolutely convergent.
pub fn first_order_quadrature(
    model: &HydrogenModel,
    state: &QuantumState,
    theta_mev2: f64,
) -> Result<(f64, f64)> {
    if state.l == 0 {
        let nu = model.nu_of(0)?;
        return Err(Error::DivergentIntegral {
            exponent: 2.0 * nu - 1.0,
        });
    }
    let basis = model.radial_basis(state.n_r, state.l)?;
    let alpha = model.constants.alpha;
    let e_level = basis.energy;
    let pref = 2.0 * theta_mev2 * alpha * alpha;
    let gl = GaussLegendre::new(64);
    let phi_points = 32usize;
    let dphi = 2.0 * PI / phi_points as f64;
    let mut value = 0.0;
    let mut mass = 0.0;
    let n = (EXPSINH_HALF_WIDTH / EXPSINH_STEP).round() as i64;
    for idx in -n..=n {
        let t = idx as f64 * EXPSINH_STEP;
        let r = t.sinh().exp();
        let rr = basis.value(r).expect("grid radius is positive");
        let radial = EXPSINH_STEP
            * t.cosh()
            * r
            * rr
            * rr
            * pref
            * (e_level / r.powi(3) + alpha / r.powi(4));
        if !radial.is_finite() {
            continue;
        }
        for (&u, &wu) in gl.nodes.iter().zip(&gl.weights) {
            for j in 0..phi_points {
                let phi = dphi * j as f64;
                let (yr, yi) = spherical_harmonic(state.l, state.m, u, phi);
                let term = radial * wu * dphi * (yr * yr + yi * yi) * u;
                value += term;
                mass += term.abs();
            }
        }
    }
    Ok((value, mass))
}
