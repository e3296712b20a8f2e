//! Double complexes of cover models, their total homology and the spectral
//! sequence of the column filtration.
//!
//! Page dimensions come from ranks alone. Write `ρ_n(a, b)` for the rank of the
//! part of the total differential `d_n` that starts in filtration `<= b` and
//! lands in filtration `>= a`, and
//!
//! ```text
//! Z(s, t, n) = dim F_t Tot_n - ρ_n(max(0, t - s + 1), t)
//! ```
//!
//! for the dimension of `{x ∈ F_t Tot_n : dx ∈ F_{t-s}}`. Then
//!
//! ```text
//! dim E^r_{p,q} = Z(r, p, n) - Z(r-1, p-1, n) - Z(r-1, p+r-1, n+1) + Z(r, p+r-1, n+1)
//! ```
//!
//! with `n = p + q`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cover::{validate_cover_model, CoverModel, ModelContext};
use crate::error::{Error, Result};
use crate::homology::{homology, ChainComplex, Coeff, HomologyResult};
use crate::linalg::{rank, SparseMatrix};
use crate::polytope::Torus;

#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub coeff: Coeff,
    /// `dims[p][q] = dim D_{p,q}`.
    dims: Vec<Vec<usize>>,
    /// `d1[p][q] : D_{p,q} -> D_{p,q-1}` (`q >= 1`; index 0 is an empty placeholder).
    d1: Vec<Vec<SparseMatrix>>,
    /// `d2[p][q] : D_{p,q} -> D_{p-1,q}` (`p >= 1`; row 0 holds empty placeholders).
    d2: Vec<Vec<SparseMatrix>>,
}

impl DoubleComplex {
    /// Largest column index `p` (the nerve dimension).
    pub fn p_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn q_max(&self) -> usize {
        self.dims[0].len() - 1
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn d1(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.d1[p][q]
    }

    pub fn d2(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.d2[p][q]
    }

    fn is_zero(&self, m: &SparseMatrix) -> bool {
        match self.coeff {
            Coeff::Z2 => m.mod2().is_zero(),
            _ => m.is_zero(),
        }
    }

    /// `∂₁² = 0`, `∂₂² = 0` and `∂₁∂₂ = ∂₂∂₁` as matrix identities.
    pub fn check_identities(&self) -> Result<()> {
        let (pm, qm) = (self.p_max(), self.q_max());
        for p in 0..=pm {
            for q in 0..=qm {
                if q >= 2 && !self.is_zero(&self.d1[p][q - 1].mul(&self.d1[p][q])) {
                    return Err(Error::NotAComplex(format!("d1 squares to nonzero at ({p},{q})")));
                }
                if p >= 2 && !self.is_zero(&self.d2[p - 1][q].mul(&self.d2[p][q])) {
                    return Err(Error::NotAComplex(format!("d2 squares to nonzero at ({p},{q})")));
                }
                if p >= 1 && q >= 1 {
                    let a = self.d1[p - 1][q].mul(&self.d2[p][q]);
                    let b = self.d2[p][q - 1].mul(&self.d1[p][q]);
                    if !self.is_zero(&a.sub(&b)) {
                        return Err(Error::NotAComplex(format!("d1 and d2 do not commute at ({p},{q})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Total complex with `d = ∂₁ + (-1)^q ∂₂`; basis of `Tot_n` ordered by `p`.
    pub fn total(&self) -> TotalComplex {
        let (pm, qm) = (self.p_max(), self.q_max());
        let top = pm + qm;
        // offsets[n][p]: start of D_{p, n-p} inside Tot_n; offsets[n][pm+1] = dim Tot_n
        let mut offsets = vec![vec![0usize; pm + 2]; top + 1];
        for (n, off) in offsets.iter_mut().enumerate() {
            for p in 0..=pm {
                let d = if n >= p { self.dim(p, n - p) } else { 0 };
                off[p + 1] = off[p] + d;
            }
        }
        let boundaries: Vec<SparseMatrix> = (0..=top)
            .into_par_iter()
            .map(|n| {
                let ncols = offsets[n][pm + 1];
                if n == 0 {
                    return SparseMatrix::zeros(0, ncols);
                }
                let nrows = offsets[n - 1][pm + 1];
                let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); ncols];
                for p in 0..=pm.min(n) {
                    let q = n - p;
                    if q > qm {
                        continue;
                    }
                    let col0 = offsets[n][p];
                    if q >= 1 {
                        let row0 = offsets[n - 1][p];
                        for (j, col) in self.d1[p][q].columns().iter().enumerate() {
                            cols[col0 + j].extend(col.iter().map(|&(i, v)| (i + row0 as u32, v)));
                        }
                    }
                    if p >= 1 {
                        let row0 = offsets[n - 1][p - 1];
                        let sign = if q % 2 == 0 { 1 } else { -1 };
                        for (j, col) in self.d2[p][q].columns().iter().enumerate() {
                            cols[col0 + j].extend(col.iter().map(|&(i, v)| (i + row0 as u32, sign * v)));
                        }
                    }
                }
                SparseMatrix::from_columns(nrows, cols)
            })
            .collect();
        let ranks = offsets.iter().map(|o| o[pm + 1]).collect();
        let complex = ChainComplex::new(self.coeff, ranks, boundaries).expect("total differential squares to zero");
        TotalComplex { complex, offsets }
    }
}

/// Total complex plus the filtration offsets of each degree.
pub struct TotalComplex {
    pub complex: ChainComplex,
    /// `offsets[n][p]`: first basis index of column `p` in `Tot_n`.
    pub offsets: Vec<Vec<usize>>,
}

/// Builds `D_{p,q}` from a validated cover model.
pub fn double_complex(cm: &CoverModel) -> Result<DoubleComplex> {
    let report = validate_cover_model(cm)?;
    if !report.pass {
        let mut reasons = Vec::new();
        reasons.extend(
            report
                .chain_map_failures
                .iter()
                .take(3)
                .map(|s| format!("not a chain map: {s}")),
        );
        reasons.extend(
            report
                .commutation_failures
                .iter()
                .take(3)
                .map(|s| format!("faces do not commute: {s}")),
        );
        if let Some(ln) = &report.locally_nice {
            reasons.extend(
                ln.failures
                    .iter()
                    .take(3)
                    .map(|f| format!("support of {} is not acyclic", f.face)),
            );
        }
        return Err(Error::ValidationFailed(reasons.join("; ")));
    }
    Ok(double_complex_unchecked(cm))
}

/// [`double_complex`] without running the model validation.
pub fn double_complex_unchecked(cm: &CoverModel) -> DoubleComplex {
    let nerve = &cm.nerve;
    let pm = cm.nerve_dim();
    let qm = (0..=pm)
        .flat_map(|p| (0..nerve.count(p)).map(move |a| (p, a)))
        .map(|(p, a)| cm.piece_complex(p, a).ranks().len() - 1)
        .max()
        .unwrap_or(0);
    // block offsets[p][q][a]
    let mut offsets = vec![vec![Vec::new(); qm + 1]; pm + 1];
    let mut dims = vec![vec![0usize; qm + 1]; pm + 1];
    for p in 0..=pm {
        for q in 0..=qm {
            let mut acc = 0;
            for a in 0..nerve.count(p) {
                offsets[p][q].push(acc);
                acc += cm.piece_complex(p, a).rank(q);
            }
            dims[p][q] = acc;
        }
    }
    let z2 = cm.coeff == Coeff::Z2;
    let d1: Vec<Vec<SparseMatrix>> = (0..=pm)
        .map(|p| {
            (0..=qm)
                .map(|q| {
                    if q == 0 {
                        return SparseMatrix::zeros(0, dims[p][0]);
                    }
                    let mut cols = Vec::with_capacity(dims[p][q]);
                    for a in 0..nerve.count(p) {
                        let piece = cm.piece_complex(p, a);
                        if piece.rank(q) == 0 {
                            continue;
                        }
                        let row0 = offsets[p][q - 1][a] as u32;
                        for col in piece.boundary(q).columns() {
                            cols.push(col.iter().map(|&(i, v)| (i + row0, v)).collect());
                        }
                    }
                    SparseMatrix::from_columns(dims[p][q - 1], cols)
                })
                .collect()
        })
        .collect();
    let d2: Vec<Vec<SparseMatrix>> = (0..=pm)
        .map(|p| {
            (0..=qm)
                .map(|q| {
                    if p == 0 {
                        return SparseMatrix::zeros(0, dims[0][q]);
                    }
                    let mut cols: Vec<Vec<(u32, i64)>> = Vec::with_capacity(dims[p][q]);
                    for a in 0..nerve.count(p) {
                        let width = cm.piece_complex(p, a).rank(q);
                        let start = cols.len();
                        cols.resize_with(start + width, Vec::new);
                        for k in 0..=p {
                            let b = cm.face_index(p, a, k);
                            let Some(m) = cm.face_map(p, a, k).degree(q) else {
                                continue;
                            };
                            let sign = if z2 || k % 2 == 0 { 1 } else { -1 };
                            let row0 = offsets[p - 1][q][b] as u32;
                            for (j, col) in m.columns().iter().enumerate() {
                                cols[start + j].extend(col.iter().map(|&(i, v)| (i + row0, sign * v)));
                            }
                        }
                    }
                    SparseMatrix::from_columns(dims[p - 1][q], cols)
                })
                .collect()
        })
        .collect();
    DoubleComplex {
        coeff: cm.coeff,
        dims,
        d1,
        d2,
    }
}

/// Homology of the total complex over the double complex's coefficients.
pub fn total_homology(dc: &DoubleComplex) -> HomologyResult {
    homology(&dc.total().complex)
}

pub type Grid = BTreeMap<(usize, usize), usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPages {
    pub coeff: Coeff,
    /// `pages[r - 1]` is `E^r`, nonzero entries only.
    pub pages: Vec<Grid>,
    pub infinity: Grid,
    /// Smallest `r` with `E^r = E^∞`, when it is among the computed pages.
    pub collapse_page: Option<usize>,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> Option<&Grid> {
        self.pages.get(r.checked_sub(1)?)
    }

    pub fn entry(&self, r: usize, p: usize, q: usize) -> usize {
        self.page(r).and_then(|g| g.get(&(p, q))).copied().unwrap_or(0)
    }

    pub fn infinity_entry(&self, p: usize, q: usize) -> usize {
        self.infinity.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=n} dim E^∞_{p,q}`.
    pub fn infinity_by_degree(&self) -> Vec<usize> {
        let top = self.infinity.keys().map(|(p, q)| p + q).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for (&(p, q), &d) in &self.infinity {
            out[p + q] += d;
        }
        out
    }
}

fn grid_json(g: &Grid) -> Value {
    let map: serde_json::Map<String, Value> = g
        .iter()
        .map(|(&(p, q), &d)| (format!("{p},{q}"), Value::String(d.to_string())))
        .collect();
    Value::Object(map)
}

/// Dimension tables of `E^1, ..., E^{r_max}` and `E^∞` over a field.
pub fn pages(dc: &DoubleComplex, r_max: usize) -> Result<SpectralPages> {
    if !dc.coeff.is_field() {
        return Err(Error::NonFieldCoefficients(dc.coeff));
    }
    let total = dc.total();
    let pm = dc.p_max();
    let top = total.offsets.len() - 1;
    // rho[n][(a, b)] for 0 <= a <= b <= pm
    let jobs: Vec<(usize, usize, usize)> = (1..=top)
        .flat_map(|n| (0..=pm).flat_map(move |b| (0..=b).map(move |a| (n, a, b))))
        .collect();
    let ranks: Vec<usize> = jobs
        .par_iter()
        .map(|&(n, a, b)| {
            let d = total.complex.boundary(n);
            let cols: Vec<usize> = (0..total.offsets[n][b + 1]).collect();
            let rows: Vec<usize> = (total.offsets[n - 1][a]..total.offsets[n - 1][pm + 1]).collect();
            if cols.is_empty() || rows.is_empty() {
                0
            } else {
                rank(&d.select(&rows, &cols), dc.coeff)
            }
        })
        .collect();
    let rho: HashMap<(usize, usize, usize), usize> = jobs.into_iter().zip(ranks).collect();
    let rho = |n: usize, a: usize, b: usize| -> usize {
        if n == 0 || n > top || a > b {
            0
        } else {
            rho[&(n, a, b)]
        }
    };
    let filt_dim = |n: usize, t: usize| -> usize {
        if n > top {
            0
        } else {
            total.offsets[n][t.min(pm) + 1]
        }
    };
    let z = |s: usize, t: i64, n: usize| -> i64 {
        if t < 0 {
            return 0;
        }
        let a = (t as usize + 1).saturating_sub(s);
        let t = (t as usize).min(pm);
        (filt_dim(n, t) - rho(n, a, t)) as i64
    };
    let page = |r: usize| -> Grid {
        let mut g = Grid::new();
        for n in 0..=top {
            for p in 0..=pm.min(n) {
                let (pi, ri) = (p as i64, r as i64);
                let d = z(r, pi, n) - z(r - 1, pi - 1, n) - z(r - 1, pi + ri - 1, n + 1) + z(r, pi + ri - 1, n + 1);
                debug_assert!(d >= 0);
                if d > 0 {
                    g.insert((p, n - p), d as usize);
                }
            }
        }
        g
    };
    let infinity = page(pm + 1);
    let computed: Vec<Grid> = (1..=r_max.max(1)).map(page).collect();
    let collapse_page = computed.iter().position(|g| *g == infinity).map(|i| i + 1);
    Ok(SpectralPages {
        coeff: dc.coeff,
        pages: computed,
        infinity,
        collapse_page,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    #[serde(serialize_with = "crate::io::ser_usize")]
    pub degree: usize,
    #[serde(serialize_with = "crate::io::ser_usize")]
    pub total: usize,
    #[serde(serialize_with = "crate::io::ser_usize")]
    pub e_infinity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub degrees: Vec<DegreeCheck>,
    pub collapse_page: Option<usize>,
    pub pass: bool,
}

/// Compares `Σ_{p+q=i} dim E^∞_{p,q}` with the total homology in every degree.
pub fn convergence_report(pages: &SpectralPages, total: &HomologyResult) -> ConvergenceReport {
    let einf = pages.infinity_by_degree();
    let top = einf.len().max(total.betti.len());
    let degrees: Vec<DegreeCheck> = (0..top)
        .map(|i| DegreeCheck {
            degree: i,
            total: total.betti.get(i).copied().unwrap_or(0),
            e_infinity: einf.get(i).copied().unwrap_or(0),
        })
        .collect();
    let pass = pages.coeff == total.coeff && degrees.iter().all(|d| d.total == d.e_infinity);
    ConvergenceReport {
        degrees,
        collapse_page: pages.collapse_page,
        pass,
    }
}

/// Everything computed for one model: total homology, pages and convergence.
#[derive(Clone, Debug)]
pub struct SpectralRun {
    pub context: ModelContext,
    pub total: HomologyResult,
    pub pages: Option<SpectralPages>,
    pub convergence: Option<ConvergenceReport>,
}

impl SpectralRun {
    pub fn to_json(&self) -> Value {
        let mut pages = serde_json::Map::new();
        if let Some(sp) = &self.pages {
            for (i, g) in sp.pages.iter().enumerate() {
                pages.insert((i + 1).to_string(), grid_json(g));
            }
            pages.insert("inf".into(), grid_json(&sp.infinity));
        }
        let context = match self.context {
            ModelContext::Polygon { m, d } => json!({ "family": "polygon", "m": m.to_string(), "d": d.to_string() }),
            ModelContext::Simplex { n, d } => json!({ "family": "simplex", "n": n.to_string(), "d": d.to_string() }),
        };
        json!({
            "context": context,
            "coeff": self.total.coeff.to_string(),
            "pages": pages,
            "total": self.total,
            "collapse_page": self.pages.as_ref().and_then(|p| p.collapse_page).map(|r| r.to_string()),
            "converged": self.convergence.as_ref().map(|c| c.pass),
        })
    }
}

/// Builds the double complex of `cm`, its total homology, and (over a field) the
/// pages up to `r_max` with the convergence check.
pub fn run_model(cm: &CoverModel, r_max: usize) -> Result<SpectralRun> {
    let dc = double_complex(cm)?;
    let total = total_homology(&dc);
    let (pages, convergence) = if dc.coeff.is_field() {
        let sp = pages(&dc, r_max)?;
        let conv = convergence_report(&sp, &total);
        (Some(sp), Some(conv))
    } else {
        (None, None)
    };
    Ok(SpectralRun {
        context: cm.context,
        total,
        pages,
        convergence,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PageComparisonEntry {
    pub p: usize,
    pub q: usize,
    #[serde(serialize_with = "crate::io::ser_usize")]
    pub real: usize,
    #[serde(serialize_with = "crate::io::ser_usize")]
    pub complex: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageComparison {
    pub context: String,
    /// `dim E²_{p,q}` for `d = 1` against `dim E²_{p,2q}` for `d = 2`, both over `Z_2`.
    pub entries: Vec<PageComparisonEntry>,
    /// Nonzero `E²_{p,q}` entries of the `d = 2` model with `q` odd.
    pub odd_rows: Vec<(usize, usize)>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Polygon(usize),
    Simplex(usize),
}

pub fn build_model(family: Family, torus: Torus, coeff: Coeff) -> Result<CoverModel> {
    match family {
        Family::Polygon(m) => crate::cover::polygon_cover_model(m, torus, coeff),
        Family::Simplex(n) => crate::cover::simplex_cover_model(n, torus, coeff),
    }
}

/// Compares the `E²` pages of the `d = 1` and `d = 2` models over `Z_2`
/// (dimensions only).
pub fn compare_real_complex_pages(family: Family) -> Result<PageComparison> {
    let e2 = |torus| -> Result<Grid> {
        let cm = build_model(family, torus, Coeff::Z2)?;
        let dc = double_complex(&cm)?;
        Ok(pages(&dc, 2)?.pages[1].clone())
    };
    let real = e2(Torus::Real)?;
    let complex = e2(Torus::Complex)?;
    let mut keys: Vec<(usize, usize)> = real.keys().copied().collect();
    keys.extend(complex.keys().filter(|(_, q)| q % 2 == 0).map(|&(p, q)| (p, q / 2)));
    keys.sort_unstable();
    keys.dedup();
    let entries: Vec<PageComparisonEntry> = keys
        .into_iter()
        .map(|(p, q)| PageComparisonEntry {
            p,
            q,
            real: real.get(&(p, q)).copied().unwrap_or(0),
            complex: complex.get(&(p, 2 * q)).copied().unwrap_or(0),
        })
        .collect();
    let odd_rows: Vec<(usize, usize)> = complex.keys().filter(|(_, q)| q % 2 == 1).copied().collect();
    let pass = odd_rows.is_empty() && entries.iter().all(|e| e.real == e.complex);
    let context = match family {
        Family::Polygon(m) => format!("polygon m={m}"),
        Family::Simplex(n) => format!("simplex n={n}"),
    };
    Ok(PageComparison {
        context,
        entries,
        odd_rows,
        pass,
    })
}
