//! Central extensions: the binary centrally extended bracket and the
//! 4-bracket with its permutation-sum central term.
//!
//! Run with: cargo run --release --example virasoro_central

use rpq_virasoro::brackets::{
    binary_central_coefficient, central_term_2n, virasoro_2n_bracket, BinaryKind,
};
use rpq_virasoro::deformation::preset;

fn main() -> rpq_virasoro::Result<()> {
    let d = preset("jagannathan-srinivasa")?;

    println!("binary central coefficient C(m1) = c phi^m1 [m1+1][m1][m1-1] / (6 (tau1^m1 + tau2^m1)):");
    for m1 in 0..=3i64 {
        println!("  C({m1}) = {}", binary_central_coefficient(&d, m1)?);
    }
    println!("(C(0) and C(1) vanish through the triple product, exactly like the");
    println!(" classical cocycle m(m-1)(m+1))");
    println!();

    let e = rpq_virasoro::brackets::super_virasoro_binary(&d, 2, -2, BinaryKind::LL)?;
    println!("[l_2, l_-2] central part (gate m1 + m2 = 0 open): {}", e.central);
    let e = rpq_virasoro::brackets::super_virasoro_binary(&d, 2, -1, BinaryKind::LL)?;
    println!("[l_2, l_-1] central part (gate closed): {}", e.central);
    println!();

    println!("4-bracket central term, a signed sum over all 24 pairings:");
    for ms in [[1i64, -1, 2, -2], [2, -2, 3, -3], [1, 2, 3, 4]] {
        println!("  central{ms:?} = {}", central_term_2n(&d, &ms)?);
    }
    println!();

    let a = virasoro_2n_bracket(&d, &[2, -2, 3, -3])?;
    let b = virasoro_2n_bracket(&d, &[-2, 2, 3, -3])?;
    println!(
        "central part flips sign under a transposition: {}",
        a.central == b.central.neg_ref()
    );
    Ok(())
}
