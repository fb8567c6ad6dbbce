//! Constraint differential operators on the truncated ring of times:
//! Bell polynomials, the operator's action, and one dictionary comparison.
//!
//! Run with: cargo run --release --example virasoro_constraints

use rpq_virasoro::constraints::{
    bell_polynomial, constraint_diff_op, dictionary_check, TimesPolynomial, Trunc,
};
use rpq_virasoro::deformation::preset;
use rpq_virasoro::poly::Ctx;

fn main() -> rpq_virasoro::Result<()> {
    let trunc = Trunc::new(8, 4);
    println!("complete Bell polynomials from the recurrence:");
    for k in 0..=4 {
        println!("  B_{k} = {}", bell_polynomial(k, trunc, Ctx::Pqc)?);
    }
    println!();

    let d = preset("jagannathan-srinivasa")?;
    let op = constraint_diff_op(&d, 1, 1, 0, Trunc::new(4, 3))?;
    println!("constraint operator at m = 1, level 1, gamma = 0 (times capped at t_4):");
    for (coeff, derivs) in op.terms() {
        println!("  ({coeff}) * d/dt_{}", derivs[0]);
    }
    let t1 = TimesPolynomial::time(Trunc::new(4, 3), Ctx::Pqc, 1)?;
    println!("applied to t_1: {}", op.apply(&t1));
    println!();

    // one dictionary cell: compose two operators, push both sides through
    // n! d/dt_n <-> x^n, and compare against the stated product identity
    let trunc = Trunc::new(6, 2);
    let cmp = dictionary_check(&d, 1, 1, 1, 1, 0, trunc, false)?;
    println!("dictionary comparison at (a=b=1, m=n=1, gamma=0), degree cap 2:");
    println!("  composed image:  {}", cmp.lhs);
    println!("  identity image:  {}", cmp.rhs);
    println!("  equal: {}", cmp.verdict());
    Ok(())
}
