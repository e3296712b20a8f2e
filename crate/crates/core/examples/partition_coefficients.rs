//! Signed subgraph counts C_I: closed form against enumeration of edge subsets.
//!
//! `cargo run --release --example partition_coefficients -- 6`

use torcfg::combinatorics::{
    coeff_bruteforce, coeff_closed, falling_factorial_coefficients, partitions, BRUTE_FORCE_MAX_K,
};

fn main() -> torcfg::Result<()> {
    let k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let brute = (k <= BRUTE_FORCE_MAX_K).then(|| coeff_bruteforce(k)).transpose()?;
    for part in partitions(k)? {
        let closed = coeff_closed(&part);
        match brute.as_ref().map(|b| &b[&part]) {
            Some(b) => println!(
                "{part:14} {closed:>8}  brute force {b:>8}  {}",
                if *b == closed { "ok" } else { "MISMATCH" }
            ),
            None => println!("{part:14} {closed:>8}"),
        }
    }
    let stirling: Vec<String> = falling_factorial_coefficients(k)
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("x(x-1)...(x-{}) coefficients: {}", k - 1, stirling.join(" "));
    Ok(())
}
