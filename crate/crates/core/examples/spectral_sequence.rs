//! Pages of the spectral sequence of a cover model and the homology they converge to.
//!
//! `cargo run --example spectral_sequence -- simplex 3 1`

use torcfg::spectral::{build_model, compare_real_complex_pages, run_model, Family};
use torcfg::{Coeff, Torus};

fn main() -> torcfg::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let size: usize = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let family = match args.first().map(String::as_str) {
        Some("simplex") => Family::Simplex(size),
        _ => Family::Polygon(size),
    };
    let torus = Torus::from_d(args.get(2).and_then(|a| a.parse().ok()).unwrap_or(1))?;
    let run = run_model(&build_model(family, torus, Coeff::Z2)?, 3)?;

    let sp = run.pages.as_ref().expect("field coefficients");
    for (i, page) in sp.pages.iter().enumerate() {
        println!("E{}: {:?}", i + 1, page);
    }
    println!("E∞: {:?}", sp.infinity);
    println!(
        "collapse page {:?}, total mod 2 betti {:?}",
        sp.collapse_page,
        run.total.trimmed_betti()
    );
    println!("converged: {}", run.convergence.as_ref().is_some_and(|c| c.pass));

    let rep = compare_real_complex_pages(family)?;
    println!("real and complex second pages agree: {}", rep.pass);
    Ok(())
}
