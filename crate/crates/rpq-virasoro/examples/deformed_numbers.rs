//! Deformed integers, factorials and binomials for every shipped preset,
//! with the tau factorization and the classical limit.
//!
//! Run with: cargo run --release --example deformed_numbers

use rpq_virasoro::deformation::{preset, PRESET_NAMES};
use rpq_virasoro::poly::{Ctx, SubstTarget};
use rpq_virasoro::scalar::Scalar;

fn main() -> rpq_virasoro::Result<()> {
    for name in PRESET_NAMES {
        let d = preset(name)?;
        println!("{}", d.describe());
        for n in 0..=4 {
            println!("  [{n}] = {}", d.bracket_number(n)?);
        }
        println!("  [-2] = {}", d.bracket_number(-2)?);
        println!("  [4]! = {}", d.deformed_factorial(4)?);
        println!("  [4 choose 2] = {}", d.deformed_binomial(4, 2)?);

        // the factorized form and the regularized ratio [2m]/[m]
        let tau = d.tau().expect("every preset ships a tau pair");
        println!("  tau form at n = 3: {}", tau.number(3));
        println!("  [2m]/[m] at m = 0: {}", d.bracket_ratio_2m_over_m(0)?);

        // classical limit: the tau polynomial evaluated at p = q = 1
        let classical = [
            SubstTarget::value_i64(1),
            SubstTarget::value_i64(1),
            SubstTarget::Power("c", 1),
        ];
        let n = 5i64;
        let mut poly = Scalar::zero(Ctx::Pqc);
        for i in 0..n {
            poly = &poly + &(&tau.pow1(n - 1 - i) * &tau.pow2(i));
        }
        let limit = (&d.bracket_number(1)? * &poly).substitute(Ctx::Pqc, &classical)?;
        println!("  [{n}] at p = q = 1: {limit}");
        println!();
    }
    Ok(())
}
