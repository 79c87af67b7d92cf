//! Calibrates the Picard envelope constant ĉ: the smallest c with
//! `‖U_k(t)‖_X ≤ (c t)^{k-1} ‖u0‖_{ℱL¹}^{k-1} ‖u0‖_X` for k ≤ 5 on a
//! training set of torus data, X ranging over ℱL¹ and ŵ^{p,q}_s, s ∈ [0, 1].
//!
//! The value printed here is the one frozen as `DEFAULT_C_HAT`.
//!
//!     cargo run --release --example calibrate_c_hat

use bbmlab::dynamics::{DEFAULT_C_HAT, PROVABLE_C_HAT};
use bbmlab::oracles::{calibrate_c_hat, envelope_cases};

fn main() -> bbmlab::Result<()> {
    let n_list = [16, 64, 256, 1024];
    let cases = envelope_cases(&n_list, 0..16, 5)?;
    let (c, label) = calibrate_c_hat(&cases, 5)?;
    println!("training cases: {}", cases.len());
    println!("calibrated c_hat = {c:.6} (attained by {label})");
    let (c_phi, label_phi) = calibrate_c_hat(
        &cases.iter().filter(|c| c.label.starts_with("phi0N")).cloned().collect::<Vec<_>>(),
        5,
    )?;
    println!("phi_0N cases alone: {c_phi:.6} ({label_phi})");
    println!("frozen DEFAULT_C_HAT = {DEFAULT_C_HAT}, provable bound = {PROVABLE_C_HAT}");
    Ok(())
}
