//! Which levels does the deformation couple? The angular factor cos(theta)
//! enforces l' = l +- 1 at fixed m, so the first-order admixture drags each
//! level toward its dipole partners, and the second-order shift then splits
//! levels of different |m| -- the deformation axis acts like an internal
//! orientation.
//!
//!     cargo run --example level_mixing

use nchydro::constants::{PhysicalConstants, ThetaUnit};
use nchydro::hydrogen::{HydrogenModel, QuantumState};
use nchydro::matrix_elements::{cos2_element, cos_element};
use nchydro::perturbation::{psi1_coefficients, second_order_shift, Mode, NCParameter};

fn main() -> nchydro::Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());
    let theta = NCParameter::new(1.0, ThetaUnit::InverseMeV2)?;

    // Selection rules: <l' m'|cos|l m> vanishes unless |l - l'| = 1, m = m'.
    println!("cos matrix elements from 2P (l = 1, m = 0):");
    let bra = QuantumState::new(0, 1, 0)?;
    for l in 0..=3u32 {
        let ket = QuantumState::new(0, l, 0)?;
        println!("  -> l' = {l}: {:+.15e}", cos_element(&bra, &ket));
    }
    println!("cos^2 reaches l' = l and l' = l +- 2:");
    for l in 0..=3u32 {
        let ket = QuantumState::new(0, l, 0)?;
        println!("  -> l' = {l}: {:+.15e}", cos2_element(&bra, &ket));
    }

    // First-order admixture amplitudes on the dipole partners.
    println!("\nfirst-order admixture amplitudes at theta = 1 MeV^-2:");
    for (n_r, l, m) in [(0u32, 1u32, 0i32), (0, 1, 1), (0, 2, 0), (0, 2, 2)] {
        let state = QuantumState::new(n_r, l, m)?;
        let amps = psi1_coefficients(&model, &state, &theta)?;
        match amps.down {
            Some(d) => println!(
                "  {} m={m}: down(l={}) = {d:+.6e}, up(l={}) = {:+.6e}",
                state.label(),
                l - 1,
                l + 1,
                amps.up
            ),
            None => println!(
                "  {} m={m}: no lower partner, up(l={}) = {:+.6e}",
                state.label(),
                l + 1,
                amps.up
            ),
        }
    }

    // m-splitting of the 2P shift: the deformation lifts the m degeneracy
    // (same |m| stays degenerate).
    println!("\nsecond-order 2P shifts by m (corrected mode, theta = 1 MeV^-2):");
    for m in -1..=1i32 {
        let state = QuantumState::new(0, 1, m)?;
        let shift = second_order_shift(&model, &state, &theta, Mode::Corrected)?;
        println!("  m = {m:+}: {:+.15e} MeV", shift.total);
    }
    Ok(())
}
