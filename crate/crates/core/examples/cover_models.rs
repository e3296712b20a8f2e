//! Cover models: pieces over nerve simplices and their validation.

use torcfg::cover::{polygon_cover_model, simplex_cover_model, validate_cover_model};
use torcfg::{Coeff, Torus};

fn main() -> torcfg::Result<()> {
    let cm = polygon_cover_model(5, Torus::Complex, Coeff::Z)?;
    println!("{}: nerve faces {:?}", cm.context, cm.nerve.face_counts());
    for p in 0..=cm.nerve_dim() {
        let a = 0;
        let carrier = cm.carrier(p, a).label(&cm.polytope());
        println!("  first {p}-simplex: carrier {carrier}, piece {}", cm.piece_space(p, a));
    }
    let report = validate_cover_model(&cm)?;
    println!(
        "  {} face maps checked, pass = {}",
        report.face_maps_checked, report.pass
    );

    let cm = simplex_cover_model(3, Torus::Real, Coeff::Z2)?;
    let report = validate_cover_model(&cm)?;
    println!(
        "{}: nerve faces {:?}, pass = {}",
        cm.context,
        cm.nerve.face_counts(),
        report.pass
    );

    if std::env::args().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&cm.to_json()).unwrap());
    }
    Ok(())
}
