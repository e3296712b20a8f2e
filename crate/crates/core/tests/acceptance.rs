//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! All comparisons are exact. Oracles are restated here rather than taken from
//! the library so that a wrong closed form in `reproduce` cannot hide a wrong
//! computation.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use torcfg::combinatorics::{coeff_bruteforce, coeff_closed, partitions};
use torcfg::complexes::{complement_vertex_map, k_ij, k_p, l_pm};
use torcfg::euler::{chi_orbit_config, OrbitConfigSpec};
use torcfg::homology::{betti, simplicial_homology, verify_simplicial_iso_labels};
use torcfg::spectral::{
    build_model, compare_real_complex_pages, convergence_report, double_complex, pages, total_homology, Family, Grid,
};
use torcfg::{Coeff, HomologyResult, SimplePolytope, Torus};

const LIMIT_COEFF: Duration = Duration::from_secs(10);
const LIMIT_KIJ: Duration = Duration::from_secs(120);
const LIMIT_POLYGON: Duration = Duration::from_secs(120);
const LIMIT_SIMPLEX: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

fn fact(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * big(i))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn trimmed(h: &HomologyResult) -> Vec<i64> {
    h.trimmed_betti().into_iter().map(|b| b as i64).collect()
}

fn alternating(b: &[i64]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { *x } else { -x })
        .sum()
}

/// h-polynomial from the f-vector by direct expansion of `Σ f_{i-1}(t-1)^{n-i}` at a point.
fn h_at(p: &SimplePolytope, t: &BigInt) -> BigInt {
    let n = p.dim();
    let f = p.f_vector().0;
    (0..=n)
        .map(|i| {
            let fi = if i == 0 { BigInt::one() } else { BigInt::from(f[i - 1]) };
            fi * num_traits::pow(t - BigInt::one(), n - i)
        })
        .sum()
}

fn c1_coefficients() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for k in 1..=6u32 {
        let brute = coeff_bruteforce(k).map_err(|e| e.to_string())?;
        let parts = partitions(k).map_err(|e| e.to_string())?;
        ensure(brute.len() == parts.len(), || {
            format!("k={k}: {} buckets for {} partitions", brute.len(), parts.len())
        })?;
        for part in parts {
            let closed = coeff_closed(&part);
            ensure(brute.get(&part) == Some(&closed), || {
                format!("k={k} {part}: closed {closed}, brute {:?}", brute.get(&part))
            })?;
            checked += 1;
        }
    }
    let t = within(start, LIMIT_COEFF)?;
    Ok(format!("{checked} partitions, k<=6, {t:.2?}"))
}

fn c2_stirling() -> Outcome {
    for k in 1..=8u32 {
        // Π_{l<k} (x - l), coefficients low to high
        let mut poly = vec![BigInt::one()];
        for l in 0..k as i64 {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * big(l);
            }
            poly = next;
        }
        let mut sums = vec![BigInt::zero(); k as usize + 1];
        for part in partitions(k).map_err(|e| e.to_string())? {
            sums[part.len()] += coeff_closed(&part);
        }
        ensure(sums == poly, || format!("k={k}: sums {sums:?} vs {poly:?}"))?;
    }
    Ok("k=1..8".into())
}

fn c3_segment_counts() -> Outcome {
    let seg = SimplePolytope::simplex(1).map_err(|e| e.to_string())?;
    for k in 2..=7u32 {
        for torus in [Torus::Real, Torus::Complex] {
            let chi = chi_orbit_config(&OrbitConfigSpec {
                polytope: &seg,
                torus,
                k,
            })
            .map_err(|e| e.to_string())?;
            let expected = match (torus, k) {
                (Torus::Real, _) => fact(k as i64) * (BigInt::one() << (k - 2)),
                (Torus::Complex, 2) => big(2),
                (Torus::Complex, _) => big(0),
            };
            ensure(chi == expected, || {
                format!("d={} k={k}: {chi} vs {expected}", torus.d())
            })?;
        }
    }
    Ok("k=2..7, both d".into())
}

fn c4_diagonal_preimage() -> Outcome {
    let mut ps = Vec::new();
    for m in 3..=8 {
        ps.push(SimplePolytope::ngon(m).map_err(|e| e.to_string())?);
    }
    for n in 2..=5 {
        ps.push(SimplePolytope::simplex(n).map_err(|e| e.to_string())?);
    }
    let mut checked = 0;
    for p in &ps {
        for ell in 1..=5u32 {
            for torus in [Torus::Real, Torus::Complex] {
                let (cells, chi) = p.diagonal_preimage_cell_vector(torus, ell).map_err(|e| e.to_string())?;
                let expected = match torus {
                    Torus::Real => h_at(p, &(BigInt::one() - (BigInt::one() << ell))),
                    Torus::Complex => h_at(p, &BigInt::one()),
                };
                let alt: BigInt = cells
                    .counts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                    .sum();
                ensure(chi == expected && alt == chi, || {
                    format!("dim {} ell={ell} d={}: {chi} vs {expected}", p.dim(), torus.d())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn c5_complex_counts() -> Outcome {
    for m in 5..=12usize {
        let counts = l_pm(m).map_err(|e| e.to_string())?.face_counts();
        let expected = vec![m * (m - 3), m * (3 * m - 11), 2 * m * (m - 4)];
        ensure(counts == expected, || format!("l_pm({m}) {counts:?} vs {expected:?}"))?;
    }
    for m in 3..=9usize {
        let k = k_p(&SimplePolytope::ngon(m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        // the triangle's nerve is a hexagon; from the square on the count is m(m-3)
        let expected = if m == 3 { 6 } else { m * (m - 3) };
        ensure(k.vertex_count() == expected, || {
            format!("k_p(ngon({m})) has {} vertices", k.vertex_count())
        })?;
    }
    Ok("l_pm m=5..12, k_p(ngon) m=3..9".into())
}

fn kij_expected(n: i64, i: i64, j: i64) -> Vec<i64> {
    if n == i + j + 1 {
        return vec![i64::try_from(binom(n + 1, i + 1)).unwrap()];
    }
    let top = (n - i - j - 1) as usize;
    let b: BigInt = (0..=j)
        .map(|s| {
            let t = binom(n + 1, s) * binom(n - s, n - i - s);
            if (s + j) % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let mut out = vec![0; top + 1];
    out[0] += 1;
    out[top] += i64::try_from(b).unwrap();
    out
}

fn c6_kij() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=6usize {
        let map = complement_vertex_map(n).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n - i {
                let k = k_ij(n, i, j).map_err(|e| e.to_string())?;
                let h = simplicial_homology(&k, Coeff::Z);
                ensure(h.is_torsion_free(), || format!("K({n},{i},{j}) has torsion"))?;
                let expected = kij_expected(n as i64, i as i64, j as i64);
                ensure(trimmed(&h) == expected, || {
                    format!("K({n},{i},{j}): {:?} vs {expected:?}", trimmed(&h))
                })?;
                let swapped = k_ij(n, j, i).map_err(|e| e.to_string())?;
                ensure(verify_simplicial_iso_labels(&k, &swapped, &map), || {
                    format!("complement map fails on K({n},{i},{j})")
                })?;
                checked += 1;
            }
        }
    }
    let t = within(start, LIMIT_KIJ)?;
    Ok(format!("{checked} complexes, n<=6, {t:.2?}"))
}

fn polygon_expected(m: i64, d: u32) -> Vec<i64> {
    match (m, d) {
        (3, 1) => vec![1, 7],
        (3, _) => vec![1, 1, 6],
        (_, 1) => vec![1, 2 * m + 1, m * (m - 3)],
        _ => vec![1, 1, 2 * m, 0, m * (m - 3)],
    }
}

fn simplex_expected(n: i64, d: u32) -> Vec<i64> {
    if d == 1 {
        let mut v: Vec<i64> = (1..n).collect();
        v.push((3i64.pow(n as u32 + 1) + 2 * n - 3) / 4);
        return v;
    }
    let f = |i: i64| -> i64 {
        if i < 0 {
            return 0;
        }
        let s: BigInt = (0..=i).map(|s| binom(n + 1, s) * binom(n - s - 1, i - s)).sum();
        i64::try_from(s).unwrap()
    };
    (0..=2 * n - 2)
        .map(|k| {
            if k % 2 == 0 {
                k / 2 + 1 + f(k - n + 1)
            } else {
                f(k - n + 1)
            }
        })
        .collect()
}

struct ModelCase {
    family: Family,
    torus: Torus,
    coeff: Coeff,
    betti: Vec<i64>,
}

fn total(family: Family, torus: Torus, coeff: Coeff) -> Result<HomologyResult, String> {
    let cm = build_model(family, torus, coeff).map_err(|e| e.to_string())?;
    Ok(total_homology(&double_complex(&cm).map_err(|e| e.to_string())?))
}

fn c7_polygons(cases: &mut Vec<ModelCase>) -> Outcome {
    let start = Instant::now();
    for m in 3..=8usize {
        for torus in [Torus::Real, Torus::Complex] {
            let h = total(Family::Polygon(m), torus, Coeff::Z)?;
            let expected = polygon_expected(m as i64, torus.d());
            ensure(h.is_torsion_free(), || format!("m={m} d={} has torsion", torus.d()))?;
            ensure(trimmed(&h) == expected, || {
                format!("m={m} d={}: {:?} vs {expected:?}", torus.d(), trimmed(&h))
            })?;
            cases.push(ModelCase {
                family: Family::Polygon(m),
                torus,
                coeff: Coeff::Z,
                betti: trimmed(&h),
            });
        }
    }
    let t = within(start, LIMIT_POLYGON)?;
    Ok(format!("m=3..8, both d, {t:.2?}"))
}

fn c8_simplices(cases: &mut Vec<ModelCase>) -> Outcome {
    let start = Instant::now();
    for n in 2..=5usize {
        let h = total(Family::Simplex(n), Torus::Real, Coeff::Z2)?;
        let expected = simplex_expected(n as i64, 1);
        ensure(trimmed(&h) == expected, || {
            format!("n={n} d=1: {:?} vs {expected:?}", trimmed(&h))
        })?;
        cases.push(ModelCase {
            family: Family::Simplex(n),
            torus: Torus::Real,
            coeff: Coeff::Z2,
            betti: trimmed(&h),
        });
    }
    for n in 2..=4usize {
        let h = total(Family::Simplex(n), Torus::Complex, Coeff::Z)?;
        let expected = simplex_expected(n as i64, 2);
        ensure(h.is_torsion_free(), || format!("n={n} d=2 has torsion"))?;
        ensure(trimmed(&h) == expected, || {
            format!("n={n} d=2: {:?} vs {expected:?}", trimmed(&h))
        })?;
        cases.push(ModelCase {
            family: Family::Simplex(n),
            torus: Torus::Complex,
            coeff: Coeff::Z,
            betti: trimmed(&h),
        });
    }
    let t = within(start, LIMIT_SIMPLEX)?;
    Ok(format!("d=1 n=2..5 mod 2, d=2 n=2..4 integral, {t:.2?}"))
}

fn second_page(family: Family, torus: Torus, coeff: Coeff) -> Result<(Grid, Option<usize>, bool), String> {
    let cm = build_model(family, torus, coeff).map_err(|e| e.to_string())?;
    let dc = double_complex(&cm).map_err(|e| e.to_string())?;
    let sp = pages(&dc, 3).map_err(|e| e.to_string())?;
    let conv = convergence_report(&sp, &total_homology(&dc));
    Ok((sp.pages[1].clone(), sp.collapse_page, conv.pass))
}

fn cor_e2(n: usize) -> Grid {
    let ni = n as i64;
    let mut g = Grid::new();
    for q in 0..n - 1 {
        g.insert((0, q), q + 1);
    }
    g.insert((0, n - 1), (1 << (n + 1)) - 2);
    for p in 1..n {
        let q = (n - 1 - p) as i64;
        let sum: i64 = (0..=q).map(|i| *kij_expected(ni, i, q - i).last().unwrap()).sum();
        if sum > 0 {
            g.insert((p, q as usize), sum as usize);
        }
    }
    g
}

fn c9_convergence() -> Outcome {
    let mut runs = Vec::new();
    for m in 3..=8 {
        for torus in [Torus::Real, Torus::Complex] {
            for coeff in [Coeff::Q, Coeff::Z2] {
                runs.push((Family::Polygon(m), torus, coeff));
            }
        }
    }
    for n in 2..=5 {
        runs.push((Family::Simplex(n), Torus::Real, Coeff::Z2));
    }
    for n in 2..=4 {
        runs.push((Family::Simplex(n), Torus::Complex, Coeff::Q));
        runs.push((Family::Simplex(n), Torus::Complex, Coeff::Z2));
    }
    for &(family, torus, coeff) in &runs {
        let (e2, collapse, converged) = second_page(family, torus, coeff)?;
        ensure(converged, || {
            format!("{family:?} d={} {coeff}: E∞ does not match total homology", torus.d())
        })?;
        ensure(collapse == Some(2), || {
            format!("{family:?} d={} {coeff}: collapse page {collapse:?}", torus.d())
        })?;
        if let (Family::Simplex(n), Torus::Real) = (family, torus) {
            ensure(e2 == cor_e2(n), || {
                format!("n={n}: E2 {e2:?} vs closed form {:?}", cor_e2(n))
            })?;
            let mut from_kij = Grid::new();
            for i in 0..n {
                for j in 0..n - i {
                    let k = k_ij(n, i, j).map_err(|e| e.to_string())?;
                    for (p, b) in betti(&k, Coeff::Z2).into_iter().enumerate() {
                        if b > 0 {
                            *from_kij.entry((p, i + j)).or_default() += b;
                        }
                    }
                }
            }
            ensure(e2 == from_kij, || {
                format!("n={n}: E2 {e2:?} vs K_ij homology {from_kij:?}")
            })?;
        }
    }
    Ok(format!("{} models converge and collapse at r=2", runs.len()))
}

fn c10_real_complex_pages() -> Outcome {
    let families = (3..=6).map(Family::Polygon).chain((2..=4).map(Family::Simplex));
    let mut count = 0;
    for family in families {
        let rep = compare_real_complex_pages(family).map_err(|e| e.to_string())?;
        ensure(rep.pass, || {
            format!("{}: {:?} odd rows {:?}", rep.context, rep.entries, rep.odd_rows)
        })?;
        count += 1;
    }
    Ok(format!("{count} contexts"))
}

fn c11_cross(cases: &[ModelCase]) -> Outcome {
    ensure(!cases.is_empty(), || "no models from criteria 7-8".into())?;
    for c in cases {
        let p = match c.family {
            Family::Polygon(m) => SimplePolytope::ngon(m),
            Family::Simplex(n) => SimplePolytope::simplex(n),
        }
        .map_err(|e| e.to_string())?;
        let chi = chi_orbit_config(&OrbitConfigSpec {
            polytope: &p,
            torus: c.torus,
            k: 2,
        })
        .map_err(|e| e.to_string())?;
        let alt = big(alternating(&c.betti));
        ensure(chi == alt, || {
            format!(
                "{:?} d={} {}: χ {chi} vs Betti sum {alt}",
                c.family,
                c.torus.d(),
                c.coeff
            )
        })?;
    }
    Ok(format!("{} models", cases.len()))
}

fn c12_nerve_spheres() -> Outcome {
    let mut ps = vec![
        SimplePolytope::simplex(2).map_err(|e| e.to_string())?,
        SimplePolytope::simplex(3).map_err(|e| e.to_string())?,
        SimplePolytope::cube(3).map_err(|e| e.to_string())?,
    ];
    for m in 3..=9 {
        ps.push(SimplePolytope::ngon(m).map_err(|e| e.to_string())?);
    }
    for p in &ps {
        let n = p.dim();
        let b = betti(&k_p(p).map_err(|e| e.to_string())?, Coeff::Z);
        let mut sphere = vec![0; n];
        sphere[0] += 1;
        sphere[n - 1] += 1;
        let mut b = b;
        while b.len() > n && b.last() == Some(&0) {
            b.pop();
        }
        ensure(b == sphere, || {
            format!("dim {n} with {} facets: {b:?}", p.facet_count())
        })?;
    }
    Ok(format!("{} polytopes", ps.len()))
}

fn main() {
    let mut cases = Vec::new();
    let mut results: BTreeMap<u32, (&str, Outcome)> = BTreeMap::new();
    results.insert(1, ("coefficient oracle", c1_coefficients()));
    results.insert(2, ("Stirling identity", c2_stirling()));
    results.insert(3, ("segment point counts", c3_segment_counts()));
    results.insert(4, ("diagonal preimage", c4_diagonal_preimage()));
    results.insert(5, ("complex counts", c5_complex_counts()));
    results.insert(6, ("K_ij homology", c6_kij()));
    results.insert(7, ("polygon models", c7_polygons(&mut cases)));
    results.insert(8, ("simplex models", c8_simplices(&mut cases)));
    results.insert(9, ("convergence and collapse", c9_convergence()));
    results.insert(10, ("real/complex second pages", c10_real_complex_pages()));
    results.insert(11, ("Betti sums against Euler characteristic", c11_cross(&cases)));
    results.insert(12, ("nerve is a sphere", c12_nerve_spheres()));

    let mut failed = 0;
    for (i, (name, outcome)) in &results {
        match outcome {
            Ok(detail) => println!("criterion {i:2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {i:2} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
