//! Run the built-in oracle suites from library code: closed-form radial
//! moments against quadrature, angular elements against spherical
//! quadrature, normalization, and first-order nullity.
//!
//!     cargo run --example selfcheck

use nchydro::constants::PhysicalConstants;
use nchydro::hydrogen::HydrogenModel;
use nchydro::report::run_selfcheck;

fn main() -> nchydro::Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());
    let rows = run_selfcheck(&model, None)?;
    println!(
        "{:>38} {:>6} {:>14} {:>9} {:>7}",
        "suite", "cases", "worst rel err", "tolerance", "passed"
    );
    let mut all = true;
    for row in &rows {
        println!(
            "{:>38} {:>6} {:>14.3e} {:>9.0e} {:>7}",
            row.suite, row.cases, row.worst_rel_error, row.tolerance, row.passed
        );
        all &= row.passed;
    }
    assert!(all, "a fresh build must pass every suite");
    Ok(())
}
