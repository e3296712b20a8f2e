//! The nerve of the disjoint face pair cover and its subcomplexes.

use torcfg::complexes::{complement_vertex_map, k_ij, k_p, k_pm, l_pm, sd_boundary_simplex};
use torcfg::homology::{betti, verify_simplicial_iso_labels};
use torcfg::{Coeff, SimplePolytope};

fn main() -> torcfg::Result<()> {
    for (name, p) in [
        ("square", SimplePolytope::ngon(4)?),
        ("tetrahedron", SimplePolytope::simplex(3)?),
        ("cube", SimplePolytope::cube(3)?),
    ] {
        let k = k_p(&p)?;
        println!(
            "K_P({name}): faces {:?}, betti {:?}",
            k.face_counts(),
            betti(&k, Coeff::Z)
        );
    }

    for m in 5..=8 {
        let (k, l) = (k_pm(m)?, l_pm(m)?);
        println!(
            "m={m}: nerve {:?}, annulus {:?} betti {:?}",
            k.face_counts(),
            l.face_counts(),
            betti(&l, Coeff::Z)
        );
    }

    let sd = sd_boundary_simplex(3)?;
    println!("sd(Bd Δ^3): {:?}", sd.face_counts());
    let (a, b) = (k_ij(4, 1, 0)?, k_ij(4, 0, 1)?);
    println!("K_(1,0) in n=4: betti {:?}", betti(&a, Coeff::Z));
    println!(
        "complement map K_(1,0) -> K_(0,1) is an isomorphism: {}",
        verify_simplicial_iso_labels(&a, &b, &complement_vertex_map(4)?)
    );
    Ok(())
}
