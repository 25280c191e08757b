//! Even levels up to 200 whose 3-dimensional representation `ρ_{k−2}` is
//! certified non-congruence by the order of `ρ(T)`.
//!
//! Run with `cargo run --release --example dim3_sweep`.

fn main() {
    let levels = sl2torus::rep::dim3_noncongruence_levels(200).unwrap();
    println!("non-congruence: {levels:?}");
    let undetermined: Vec<u32> = (4..=200).step_by(2).filter(|k| !levels.contains(k)).collect();
    println!("undetermined: {undetermined:?}");
}
