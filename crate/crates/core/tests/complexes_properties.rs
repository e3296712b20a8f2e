use proptest::prelude::*;
use torcfg::complexes::{k_p, k_pm, l_pm, locally_nice_check};
use torcfg::homology::{betti, is_acyclic, simplicial_homology};
use torcfg::{Coeff, SimplePolytope, SimplicialComplex};

#[test]
fn explicit_polygon_nerve_matches_construction() {
    for m in 3..=9 {
        let nerve = k_p(&SimplePolytope::ngon(m).unwrap()).unwrap();
        assert_eq!(k_pm(m).unwrap().label_sets(), nerve.label_sets(), "m={m}");
    }
}

#[test]
fn annulus_is_locally_nice() {
    for m in 3..=9 {
        let rep = locally_nice_check(&l_pm(m).unwrap(), &SimplePolytope::ngon(m).unwrap()).unwrap();
        assert!(rep.pass, "m={m}: {:?}", rep.failures);
    }
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..8).prop_map(|sets| {
        let mut used: Vec<usize> = sets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let labels = used.iter().map(|v| v.to_string()).collect();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| s.iter().map(|v| used.binary_search(v).unwrap()).collect())
            .collect();
        SimplicialComplex::from_maximal(labels, &maximal).unwrap()
    })
}

proptest! {
    #[test]
    fn betti_sums_give_euler_characteristic(k in random_complex()) {
        for coeff in [Coeff::Z, Coeff::Q, Coeff::Z2] {
            let b = betti(&k, coeff);
            let alt: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(alt, k.euler_characteristic());
        }
    }

    #[test]
    fn rational_and_integral_ranks_agree(k in random_complex()) {
        prop_assert_eq!(simplicial_homology(&k, Coeff::Z).betti, betti(&k, Coeff::Q));
    }

    #[test]
    fn cones_are_acyclic(k in random_complex()) {
        let apex = k.vertex_count();
        let mut labels = k.labels().to_vec();
        labels.push("apex".into());
        let maximal: Vec<Vec<usize>> = k
            .maximal_simplices()
            .iter()
            .map(|s| s.iter().map(|&v| v as usize).chain([apex]).collect())
            .collect();
        let cone = SimplicialComplex::from_maximal(labels, &maximal).unwrap();
        prop_assert!(is_acyclic(&cone));
    }
}
