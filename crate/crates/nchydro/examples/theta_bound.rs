//! Turn the 34 Hz precision of 1S-2S spectroscopy into an upper bound on
//! the noncommutativity strength theta, in both evaluation modes, with the
//! full unit-conversion trail.
//!
//!     cargo run --example theta_bound

use nchydro::constants::{EnergyQuantity, EnergyUnit, PhysicalConstants};
use nchydro::hydrogen::{HydrogenModel, QuantumState};
use nchydro::perturbation::Mode;
use nchydro::phenomenology::{transition_report, REFERENCE_PRECISION_HZ};

fn main() -> nchydro::Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());
    let s1 = QuantumState::new(0, 0, 0)?;
    let s2 = QuantumState::new(1, 0, 0)?;
    let precision = EnergyQuantity {
        value: REFERENCE_PRECISION_HZ,
        unit: EnergyUnit::Hz,
    };

    for mode in [Mode::Literal, Mode::Corrected] {
        let report = transition_report(&model, &s1, &s2, &precision, mode)?;
        println!("mode {mode}:");
        println!(
            "  coefficient = {:.15e} [{}]",
            report.coefficient, report.coefficient_unit
        );
        println!("  theta_max   = {:.15e} GeV^-2", report.theta_bound_gev2);
        println!("  unit trail:");
        for (i, step) in report.unit_trail.iter().enumerate() {
            println!(
                "    {}. {} = {:.15e} {}",
                i + 1,
                step.description,
                step.value,
                step.unit
            );
        }
        println!();
    }
    Ok(())
}
