//! Print the low-lying Klein-Gordon hydrogen levels with their
//! noncommutative shifts.
//!
//!     cargo run --example spectrum_table

use nchydro::constants::{PhysicalConstants, ThetaUnit};
use nchydro::hydrogen::{HydrogenModel, QuantumState};
use nchydro::perturbation::{second_order_shift, Mode, NCParameter};

fn main() -> nchydro::Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());
    // A deliberately enormous theta so the shifts are visible next to the
    // binding energies; realistic bounds are ~1e3 GeV^-2.
    let theta = NCParameter::new(1e8, ThetaUnit::InverseGeV2)?;

    println!(
        "{:>5} {:>3} {:>3} {:>6} {:>22} {:>22} {:>22}",
        "n_r", "l", "m", "label", "binding [MeV]", "shift [MeV]", "shifted binding [MeV]"
    );
    for n_r in 0..=2u32 {
        for l in 0..=2u32 {
            for m in 0..=l as i32 {
                let state = QuantumState::new(n_r, l, m)?;
                let binding = model.binding_energy(n_r, l)?;
                let shift = second_order_shift(&model, &state, &theta, Mode::Corrected)?;
                println!(
                    "{:>5} {:>3} {:>3} {:>6} {:>22.15e} {:>22.15e} {:>22.15e}",
                    n_r,
                    l,
                    m,
                    state.label(),
                    binding,
                    shift.total,
                    binding + shift.total
                );
            }
        }
    }

    // The nonrelativistic ladder -m alpha^2 / (2 N^2) for comparison.
    let alpha = model.constants.alpha;
    let m_e = model.constants.electron_mass_mev;
    println!("\nnonrelativistic binding for N = 1..=3 [MeV]:");
    for n in 1..=3u32 {
        println!(
            "  N = {n}: {:>22.15e}",
            -m_e * alpha * alpha / (2.0 * (n * n) as f64)
        );
    }
    Ok(())
}
