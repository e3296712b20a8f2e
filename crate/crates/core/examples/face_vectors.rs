//! f- and h-vectors of the built-in polytopes, and a characteristic function check.
//!
//! `cargo run --example face_vectors`

use torcfg::polytope::{validate_characteristic_function, CharacteristicFunction};
use torcfg::{SimplePolytope, Torus};

fn main() -> torcfg::Result<()> {
    let polytopes = [
        ("triangle", SimplePolytope::ngon(3)?),
        ("hexagon", SimplePolytope::ngon(6)?),
        ("tetrahedron", SimplePolytope::simplex(3)?),
        ("cube", SimplePolytope::cube(3)?),
    ];
    for (name, p) in &polytopes {
        let h: Vec<String> = p.h_polynomial().0.iter().map(|c| c.to_string()).collect();
        println!("{name:12} f = {:?}  h = ({})", p.f_vector().0, h.join(", "));
    }

    // the standard small cover over the square: opposite facets share a vector
    let square = SimplePolytope::ngon(4)?;
    let lambda = CharacteristicFunction {
        torus: Torus::Real,
        vectors: vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]],
    };
    let report = validate_characteristic_function(&square, &lambda)?;
    println!("square characteristic function valid: {}", report.valid);

    let broken = CharacteristicFunction {
        torus: Torus::Real,
        vectors: vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
    };
    let report = validate_characteristic_function(&square, &broken)?;
    for v in report.failing() {
        println!("  fails at vertex {} (det {})", v.vertex, v.determinant);
    }
    Ok(())
}
