//! The superspace maps sigma, d_t, d_theta and Delta, and the twisted
//! Leibniz rule checked per preset.
//!
//! Run with: cargo run --release --example superspace_action

use rpq_virasoro::deformation::{preset, PRESET_NAMES};
use rpq_virasoro::superspace::{check_sigma_derivation, d_t, d_theta, delta, sigma, SuperElement};

fn main() -> rpq_virasoro::Result<()> {
    let d = preset("jagannathan-srinivasa")?;
    let t2 = SuperElement::t_pow(2);
    let th1 = SuperElement::theta_t_pow(1);

    println!("sigma(t^2)        = {}", sigma(&d, &t2));
    println!("sigma(theta t)    = {}", sigma(&d, &th1));
    println!("Delta(t^2)        = {}", delta(&d, &t2)?);
    println!("Delta(theta t)    = {}", delta(&d, &th1)?);
    println!("d_t(theta t)      = {}", d_t(&d, &th1)?);
    println!("d_theta(theta t)  = {}", d_theta(&d, &th1));

    // products respect theta^2 = 0
    let e = SuperElement::one().add(&SuperElement::theta_t_pow(0));
    println!("(1 + theta)^2     = {}", e.super_mul(&e));

    // Delta is a sigma-derivation only for deformations whose numbers
    // satisfy [m + n] = [m] + phi^m [n]; the check reports, per preset
    println!();
    println!("twisted Leibniz rule Delta(xy) = Delta(x) y + sigma(x) Delta(y) on t^2 * t^3:");
    for name in PRESET_NAMES {
        let d = preset(name)?;
        let holds = check_sigma_derivation(&d, &SuperElement::t_pow(2), &SuperElement::t_pow(3))?;
        println!("  {name:24} {}", if holds { "holds" } else { "fails" });
    }
    Ok(())
}
