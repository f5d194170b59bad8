//! Inverse radial moments <r^-k> of the relativistic radial functions:
//! closed forms against adaptive Gauss-Laguerre quadrature, and the
//! analytic continuation that takes over where the defining integral
//! diverges (k = 5, 6 on s levels; k = 5, 6 on p levels).
//!
//!     cargo run --example radial_moments

use nchydro::constants::PhysicalConstants;
use nchydro::hydrogen::HydrogenModel;
use nchydro::matrix_elements::{f_closed, f_numeric};

fn main() -> nchydro::Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());

    println!(
        "{:>3} {:>4} {:>3} {:>24} {:>24} {:>12}",
        "k", "n_r", "l", "closed form [MeV^k]", "quadrature [MeV^k]", "rel diff"
    );
    for k in 3..=6u32 {
        for (n_r, l) in [(0u32, 2u32), (1, 2), (0, 3)] {
            let closed = f_closed(&model, k, n_r, l)?;
            let numeric = f_numeric(&model, k, n_r, l)?;
            let rel = (closed.value - numeric.value).abs() / closed.value.abs();
            println!(
                "{k:>3} {n_r:>4} {l:>3} {:>24.15e} {:>24.15e} {rel:>12.3e}",
                closed.value, numeric.value
            );
        }
    }

    // On s and p levels the high moments have no convergent integral; the
    // closed form continues analytically and is flagged.
    println!("\ncontinued moments (no convergent defining integral):");
    for (k, n_r, l) in [(5u32, 0u32, 0u32), (6, 0, 0), (5, 1, 0), (5, 0, 1)] {
        let m = f_closed(&model, k, n_r, l)?;
        println!(
            "  k = {k}, n_r = {n_r}, l = {l}: {:>24.15e}  convergent = {}",
            m.value, m.convergent
        );
        assert!(
            f_numeric(&model, k, n_r, l).is_err(),
            "quadrature must refuse"
        );
    }
    Ok(())
}
