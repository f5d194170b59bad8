//! Show how the noncommutative deformation reshapes the Coulomb potential:
//! a cos(theta)/r^3 dipole-like term at first order and a
//! (1 - 5cos^2)/r^5 term at second order, largest near the nucleus and
//! strongest along the deformation axis.
//!
//!     cargo run --example deformed_potential

use nchydro::constants::{PhysicalConstants, ThetaUnit};
use nchydro::hydrogen::HydrogenModel;
use nchydro::perturbation::{deformed_potential, NCParameter, PerturbationOperator};

fn main() -> nchydro::Result<()> {
    let constants = PhysicalConstants::codata2018();
    let model = HydrogenModel::new(constants);
    let alpha = constants.alpha;
    let theta = NCParameter::new(1.0, ThetaUnit::InverseMeV2)?;

    // Bohr radius in MeV^-1 for scale.
    let bohr = 1.0 / (constants.electron_mass_mev * alpha);
    println!("Bohr radius = {bohr:.6e} MeV^-1, theta = 1 MeV^-2\n");

    println!(
        "{:>10} {:>12} {:>22} {:>22} {:>22}",
        "r/Bohr", "cos(angle)", "Coulomb [MeV]", "deformed [MeV]", "difference"
    );
    for &frac in &[0.01, 0.1, 1.0] {
        for &c in &[-1.0, 0.0, 1.0] {
            let r = frac * bohr;
            let coulomb = -alpha / r;
            let v = deformed_potential(alpha, r, c, &theta)?;
            println!(
                "{frac:>10} {c:>12} {coulomb:>22.12e} {v:>22.12e} {:>22.12e}",
                v - coulomb
            );
        }
    }

    // At the equator (cos = 0) the first-order term dies and only the
    // second-order r^-5 piece survives; along the axis both act. The
    // perturbation operators carry the level energy, here the ground state.
    let e_1s = model.energy(0, 0)?;
    println!("\noperator term lists at E(1S) = {e_1s:.12e} MeV:");
    for op in [
        PerturbationOperator::order1(alpha, e_1s, &theta),
        PerturbationOperator::order2(alpha, e_1s, &theta),
    ] {
        println!("  order {}:", op.order);
        for term in &op.terms {
            println!(
                "    {:>13.6e} x {:?} / r^{}",
                term.coefficient, term.angular, term.radial_power
            );
        }
    }
    Ok(())
}
