//! Integral homology of a complex read from JSON, plus a Smith normal form.
//!
//! `cargo run --example complex_homology -- complex.json`; without an argument a
//! triangulated real projective plane is used.

use num_bigint::BigInt;
use torcfg::homology::{reduced_betti, simplicial_homology};
use torcfg::io::complex_from_json;
use torcfg::linalg::smith_normal_form;
use torcfg::Coeff;

const RP2: &str = r#"{
  "vertices": [1, 2, 3, 4, 5, 6],
  "maximal_simplices": [
    [1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],
    [2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]
  ]
}"#;

fn main() -> torcfg::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|e| torcfg::Error::Parse(format!("{path}: {e}")))?,
        None => RP2.to_string(),
    };
    let k = complex_from_json(&text)?;
    println!(
        "faces {:?}, euler characteristic {}",
        k.face_counts(),
        k.euler_characteristic()
    );
    for coeff in [Coeff::Z, Coeff::Q, Coeff::Z2] {
        println!(
            "over {coeff}: {}",
            serde_json::to_string(&simplicial_homology(&k, coeff)).unwrap()
        );
    }
    println!("reduced mod 2 betti: {:?}", reduced_betti(&k, Coeff::Z2));

    let m: Vec<Vec<BigInt>> = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    println!(
        "smith form of a 3x3 matrix: {}",
        serde_json::to_string(&smith_normal_form(&m)).unwrap()
    );
    Ok(())
}
