use proptest::prelude::*;
use torcfg::complexes::sd_boundary_simplex;
use torcfg::homology::betti;
use torcfg::spectral::{build_model, double_complex, pages, Family};
use torcfg::{Coeff, Torus};

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (3usize..=7).prop_map(Family::Polygon),
        (2usize..=3).prop_map(Family::Simplex)
    ]
}

fn torus() -> impl Strategy<Value = Torus> {
    prop_oneof![Just(Torus::Real), Just(Torus::Complex)]
}

fn field() -> impl Strategy<Value = Coeff> {
    prop_oneof![Just(Coeff::Q), Just(Coeff::Z2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pages_shrink_and_keep_euler_characteristic(f in family(), t in torus(), c in field()) {
        let Ok(cm) = build_model(f, t, c) else { return Ok(()) };
        let dc = double_complex(&cm).unwrap();
        dc.check_identities().unwrap();
        let sp = pages(&dc, 4).unwrap();
        let chi = |g: &torcfg::spectral::Grid| -> i64 {
            g.iter().map(|(&(p, q), &d)| if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
        };
        let expected = dc.total().complex.euler_characteristic();
        let mut previous: Option<&torcfg::spectral::Grid> = None;
        for g in &sp.pages {
            prop_assert_eq!(chi(g), expected);
            if let Some(prev) = previous {
                for (key, &d) in g {
                    prop_assert!(d <= prev.get(key).copied().unwrap_or(0));
                }
            }
            previous = Some(g);
        }
        prop_assert_eq!(sp.collapse_page, Some(2));
    }
}

#[test]
fn bottom_row_is_nerve_homology() {
    for (family, nerve_betti) in [
        (Family::Polygon(6), vec![1, 1]),
        (Family::Simplex(3), betti(&sd_boundary_simplex(3).unwrap(), Coeff::Q)),
    ] {
        let cm = build_model(family, Torus::Complex, Coeff::Q).unwrap();
        let sp = pages(&double_complex(&cm).unwrap(), 2).unwrap();
        for (p, &b) in nerve_betti.iter().enumerate() {
            assert_eq!(sp.entry(2, p, 0), b, "{family:?} E2_({p},0)");
        }
    }
}

#[test]
fn square_model_column_sizes() {
    let cm = build_model(Family::Polygon(4), Torus::Real, Coeff::Q).unwrap();
    let dc = double_complex(&cm).unwrap();
    assert_eq!(dc.dim(0, 0), cm.nerve.count(0));
    assert_eq!(dc.dim(0, 2), 4);
}
