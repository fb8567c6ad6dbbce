//! Level-graded multiplication operators over the formal tau field:
//! product and commutator identities checked exactly, plus specialization
//! to a concrete parameter pair by substitution.
//!
//! Run with: cargo run --release --example toy_model

use rpq_virasoro::deformation::preset;
use rpq_virasoro::poly::{Ctx, SubstTarget};
use rpq_virasoro::toy::{toy_commutator, toy_product, toy_value, TauPair, ToyOperator};

fn main() -> rpq_virasoro::Result<()> {
    let tp = TauPair::formal();

    let a = ToyOperator::bosonic(1, 1);
    let b = ToyOperator::bosonic(2, -1);
    println!("T^(1)_1 as a multiplication operator:  {}", toy_value(&tp, a)?);
    println!("T^(2)_-1 as a multiplication operator: {}", toy_value(&tp, b)?);

    let cmp = toy_product(&tp, a, b)?;
    println!();
    println!("product identity at (a=1, b=2, m=1, n=-1):");
    println!("  direct product: {}", cmp.lhs);
    println!("  stated combination: {}", cmp.rhs);
    println!("  equal: {}", cmp.verdict());

    let cmp = toy_commutator(&tp, a, b)?;
    println!();
    println!("commutator at the same indices:");
    println!("  [A, B] as multiplication operators: {}", cmp.lhs);
    println!("  stated right-hand side: {}", cmp.rhs);
    println!("  collapses to the left side: {}", cmp.verdict());

    // specialization: substitute tau1 -> p, tau2 -> q and compare with the
    // same construction done over the concrete pair
    let js = preset("jagannathan-srinivasa")?;
    let concrete = TauPair::for_deformation(&js)?;
    let map = [
        SubstTarget::Power("p", 1),
        SubstTarget::Power("q", 1),
        SubstTarget::Power("c", 1),
    ];
    let formal_then_subst = toy_product(&tp, a, b)?.lhs.substitute(&map, Ctx::Pqc)?;
    let direct = toy_product(&concrete, a, b)?.lhs;
    println!();
    println!("specialization consistency (tau1 -> p, tau2 -> q):");
    println!("  substituted formal result: {formal_then_subst}");
    println!("  direct concrete result:    {direct}");
    println!("  equal: {}", formal_then_subst == direct);
    Ok(())
}
