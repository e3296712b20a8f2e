//! Euler characteristics of orbit configuration spaces.
//!
//! `cargo run --example euler_characteristics -- 5` prints k = 2..=5.

use torcfg::euler::{chi_classical_closed, chi_orbit_config, chi_real_moment_angle, OrbitConfigSpec};
use torcfg::{SimplePolytope, Torus};

fn main() -> torcfg::Result<()> {
    let k_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let polytopes = [
        ("segment", SimplePolytope::simplex(1)?),
        ("triangle", SimplePolytope::simplex(2)?),
        ("pentagon", SimplePolytope::ngon(5)?),
        ("cube", SimplePolytope::cube(3)?),
    ];
    for (name, p) in &polytopes {
        for torus in [Torus::Real, Torus::Complex] {
            let chis: Vec<String> = (2..=k_max)
                .map(|k| chi_orbit_config(&OrbitConfigSpec { polytope: p, torus, k }).map(|c| c.to_string()))
                .collect::<torcfg::Result<_>>()?;
            println!("{name:9} d={}  chi(k=2..{k_max}) = {}", torus.d(), chis.join(" "));
        }
    }

    let chi_sphere = 2.into();
    println!(
        "ordered configurations on S^2: {}",
        chi_classical_closed(&chi_sphere, 2, 3)
    );

    let square = SimplePolytope::ngon(4)?;
    println!(
        "real moment-angle over the square, k=2: {}",
        chi_real_moment_angle(&square, 2, true)?
    );
    Ok(())
}
