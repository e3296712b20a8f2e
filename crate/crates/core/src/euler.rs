//! Euler characteristics of orbit configuration spaces and of classical
//! configuration spaces.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{coeff_closed, partitions};
use crate::error::{Error, Result};
use crate::polytope::{SimplePolytope, Torus};

#[derive(Clone, Debug)]
pub struct OrbitConfigSpec<'a> {
    pub polytope: &'a SimplePolytope,
    pub torus: Torus,
    pub k: u32,
}

fn sign(exp: u64) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// χ of the orbit configuration space of `k` points in the manifold over `P`.
///
/// `d = 1`: `(-1)^{kn} Σ_I C_I Π_i h_P(1 - 2^{k_i})`; `d = 2`: `Σ_I C_I h_P(1)^s`.
pub fn chi_orbit_config(spec: &OrbitConfigSpec) -> Result<BigInt> {
    let k = spec.k;
    if k < 2 {
        return Err(Error::BadParameter(format!("k must be >= 2, got {k}")));
    }
    let h = spec.polytope.h_polynomial();
    let n = spec.polytope.dim() as u64;
    let mut total = BigInt::zero();
    match spec.torus {
        Torus::Real => {
            let values: Vec<BigInt> = (0..=k)
                .map(|part| h.eval(&(BigInt::one() - (BigInt::one() << part))))
                .collect();
            for part in partitions(k)? {
                let product = part
                    .parts()
                    .iter()
                    .fold(BigInt::one(), |acc, &ki| acc * &values[ki as usize]);
                total += coeff_closed(&part) * product;
            }
            Ok(sign(k as u64 * n) * total)
        }
        Torus::Complex => {
            let vertices = h.eval_i64(1);
            for part in partitions(k)? {
                total += coeff_closed(&part) * num_traits::pow(vertices.clone(), part.len());
            }
            Ok(total)
        }
    }
}

/// `(-1)^{kn} χ(χ-1)...(χ-k+1)` for a closed manifold of dimension `n`.
pub fn chi_classical_closed(chi_m: &BigInt, n: u64, k: u32) -> BigInt {
    let falling = (0..k).fold(BigInt::one(), |acc, i| acc * (chi_m - BigInt::from(i)));
    sign(k as u64 * n) * falling
}

/// `(-1)^{kn} Σ_I C_I χ^s`, the partition form of [`chi_classical_closed`].
pub fn chi_classical_partition(chi_m: &BigInt, n: u64, k: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for part in partitions(k)? {
        total += coeff_closed(&part) * num_traits::pow(chi_m.clone(), part.len());
    }
    Ok(sign(k as u64 * n) * total)
}

/// `2^{(m-n)k}` times the `d = 1` orbit configuration χ.
///
/// Only meaningful when a small cover over `P` exists; the caller has to say so
/// explicitly through `assume_small_cover`.
pub fn chi_real_moment_angle(polytope: &SimplePolytope, k: u32, assume_small_cover: bool) -> Result<BigInt> {
    if !assume_small_cover {
        return Err(Error::SmallCoverNotAssumed);
    }
    let orbit = chi_orbit_config(&OrbitConfigSpec {
        polytope,
        torus: Torus::Real,
        k,
    })?;
    let shift = (polytope.facet_count() - polytope.dim()) as u64 * k as u64;
    Ok(orbit << shift)
}

/// The diagonal circle of `T^m` acts freely, so this is always zero.
pub fn chi_moment_angle_torus(_polytope: &SimplePolytope, k: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::BadParameter(format!("k must be >= 2, got {k}")));
    }
    Ok(BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;
    use proptest::prelude::*;

    fn orbit(p: &SimplePolytope, torus: Torus, k: u32) -> BigInt {
        chi_orbit_config(&OrbitConfigSpec { polytope: p, torus, k }).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn triangle_values() {
        let tri = SimplePolytope::simplex(2).unwrap();
        assert_eq!(orbit(&tri, Torus::Real, 2), b(-6));
        assert_eq!(orbit(&tri, Torus::Real, 3), b(66));
        let pent = SimplePolytope::ngon(5).unwrap();
        assert_eq!(orbit(&pent, Torus::Real, 2), b(0));
        assert!(chi_orbit_config(&OrbitConfigSpec {
            polytope: &tri,
            torus: Torus::Real,
            k: 1
        })
        .is_err());
    }

    #[test]
    fn classical() {
        assert_eq!(chi_classical_closed(&b(2), 2, 3), b(0));
        assert_eq!(chi_classical_closed(&b(3), 4, 2), b(6));
        for points in 0..3 {
            assert_eq!(chi_classical_closed(&b(points), 0, 3), b(0));
        }
        assert_eq!(chi_classical_partition(&b(2), 2, 3).unwrap(), b(0));
        assert_eq!(chi_classical_partition(&b(1), 2, 2).unwrap(), b(0));
        assert_eq!(chi_classical_partition(&b(5), 2, 2).unwrap(), b(20));
    }

    #[test]
    fn moment_angle() {
        let tri = SimplePolytope::simplex(2).unwrap();
        assert_eq!(chi_real_moment_angle(&tri, 2, true).unwrap(), b(-24));
        let square = SimplePolytope::ngon(4).unwrap();
        assert_eq!(chi_real_moment_angle(&square, 2, true).unwrap(), b(-64));
        let seg = SimplePolytope::simplex(1).unwrap();
        assert_eq!(chi_real_moment_angle(&seg, 2, true).unwrap(), b(8));
        assert!(matches!(
            chi_real_moment_angle(&tri, 2, false),
            Err(Error::SmallCoverNotAssumed)
        ));
        for (p, k) in [
            (tri, 2),
            (SimplePolytope::ngon(6).unwrap(), 3),
            (SimplePolytope::simplex(4).unwrap(), 2),
        ] {
            assert_eq!(chi_moment_angle_torus(&p, k).unwrap(), b(0));
        }
    }

    #[test]
    fn segment_point_counts() {
        let seg = SimplePolytope::simplex(1).unwrap();
        for k in 2..8u32 {
            assert_eq!(orbit(&seg, Torus::Real, k), factorial(k) << (k - 2));
            assert_eq!(orbit(&seg, Torus::Complex, k), if k == 2 { b(2) } else { b(0) });
        }
    }

    #[test]
    fn complex_case_is_classical() {
        let polys = [
            SimplePolytope::ngon(3).unwrap(),
            SimplePolytope::ngon(6).unwrap(),
            SimplePolytope::simplex(3).unwrap(),
            SimplePolytope::cube(3).unwrap(),
        ];
        for p in &polys {
            let chi_m = p.h_polynomial().eval_i64(1);
            for k in 2..7 {
                assert_eq!(
                    orbit(p, Torus::Complex, k),
                    chi_classical_closed(&chi_m, 2 * p.dim() as u64, k)
                );
            }
        }
    }

    proptest! {
        #[test]
        fn closed_equals_partition(chi in -6i64..=6, n in 0u64..4, k in 1u32..8) {
            prop_assert_eq!(
                chi_classical_closed(&b(chi), n, k),
                chi_classical_partition(&b(chi), n, k).unwrap()
            );
        }
    }
}
