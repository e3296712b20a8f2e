//! Simplicial complexes, chain complexes and their exact homology.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coeff {
    Z,
    Q,
    Z2,
}

impl Coeff {
    pub fn is_field(self) -> bool {
        !matches!(self, Coeff::Z)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coeff::Z => "z",
            Coeff::Q => "q",
            Coeff::Z2 => "z2",
        })
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Coeff::Z),
            "q" => Ok(Coeff::Q),
            "z2" => Ok(Coeff::Z2),
            other => Err(Error::Parse(format!(
                "unknown coefficient ring {other:?} (use z, q or z2)"
            ))),
        }
    }
}

/// Abstract simplicial complex on an ordered, labelled vertex list.
///
/// Simplices are stored per dimension as sorted vectors of vertex indices, and
/// each dimension is kept in lexicographic order. That order fixes the bases of
/// every chain complex built from the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Downward closure of `maximal` (given as vertex indices).
    pub fn from_maximal(labels: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::BadParameter("duplicate vertex labels".into()));
        }
        let mut by_dim: Vec<HashSet<Vec<u32>>> = Vec::new();
        for simplex in maximal {
            let mut s: Vec<u32> = simplex.iter().map(|&v| v as u32).collect();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&bad) = s.iter().find(|&&v| v as usize >= labels.len()) {
                return Err(Error::BadParameter(format!("vertex index {bad} out of range")));
            }
            if by_dim.len() < s.len() {
                by_dim.resize_with(s.len(), HashSet::new);
            }
            if by_dim[s.len() - 1].contains(&s) {
                continue;
            }
            let size = s.len();
            for mask in 1u64..(1u64 << size) {
                let face: Vec<u32> = (0..size).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<u32>>> = by_dim
            .into_iter()
            .map(|set| {
                let mut v: Vec<Vec<u32>> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let complex = SimplicialComplex { labels, simplices };
        let used = complex.simplices.first().map_or(0, Vec::len);
        if used != complex.labels.len() {
            return Err(Error::BadParameter(format!(
                "{} of {} listed vertices lie in no simplex",
                complex.labels.len() - used,
                complex.labels.len()
            )));
        }
        Ok(complex)
    }

    /// Closure of simplices given by vertex labels, with vertex order as given.
    pub fn from_labelled<S: AsRef<str>>(labels: Vec<String>, maximal: &[Vec<S>]) -> Result<Self> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut simplices = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut idx = Vec::with_capacity(s.len());
            for l in s {
                match index.get(l.as_ref()) {
                    Some(&i) => idx.push(i),
                    None => {
                        return Err(Error::VertexMismatch(format!(
                            "simplex uses unknown vertex {:?}",
                            l.as_ref()
                        )))
                    }
                }
            }
            simplices.push(idx);
        }
        Self::from_maximal(labels, &simplices)
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            simplices: Vec::new(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Simplex counts `(f_0, f_1, ...)` by dimension.
    pub fn face_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Position of a sorted simplex in its dimension's list.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let dim = simplex.len().checked_sub(1)?;
        self.simplices
            .get(dim)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn simplex_labels(&self, simplex: &[u32]) -> Vec<String> {
        simplex.iter().map(|&v| self.labels[v as usize].clone()).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Simplices not contained in any larger simplex, by dimension then lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut covered: Vec<HashSet<&[u32]>> = vec![HashSet::new(); self.simplices.len()];
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let pos = self.index_of(&face).expect("closed under faces");
                    covered[d - 1].insert(self.simplices[d - 1][pos].as_slice());
                }
            }
        }
        let mut out = Vec::new();
        for (d, list) in self.simplices.iter().enumerate() {
            for s in list {
                if !covered[d].contains(s.as_slice()) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// All simplices as sorted label lists.
    pub fn label_sets(&self) -> BTreeSet<Vec<String>> {
        self.simplices
            .iter()
            .flatten()
            .map(|s| {
                let mut l = self.simplex_labels(s);
                l.sort();
                l
            })
            .collect()
    }

    /// Full subcomplex on the vertices where `keep` is true (vertex order kept).
    pub fn full_subcomplex(&self, keep: &[bool]) -> SimplicialComplex {
        let mut new_index = vec![u32::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if keep[i] {
                new_index[i] = labels.len() as u32;
                labels.push(l.clone());
            }
        }
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        for list in &self.simplices {
            let kept: Vec<Vec<u32>> = list
                .iter()
                .filter(|s| s.iter().all(|&v| keep[v as usize]))
                .map(|s| s.iter().map(|&v| new_index[v as usize]).collect())
                .collect();
            if kept.is_empty() {
                break;
            }
            simplices.push(kept);
        }
        SimplicialComplex { labels, simplices }
    }

    /// True when every simplex of `self` is a simplex of `other`, matching vertices by label.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let map: Option<Vec<u32>> = self
            .labels
            .iter()
            .map(|l| other.vertex_index(l).map(|i| i as u32))
            .collect();
        let Some(map) = map else { return false };
        self.simplices.iter().flatten().all(|s| {
            let mut image: Vec<u32> = s.iter().map(|&v| map[v as usize]).collect();
            image.sort_unstable();
            other.contains(&image)
        })
    }

    /// Builds directly from per-dimension simplex lists that are already closed.
    pub(crate) fn from_closed_unchecked(labels: Vec<String>, mut simplices: Vec<Vec<Vec<u32>>>) -> Self {
        for list in simplices.iter_mut() {
            list.sort_unstable();
        }
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        SimplicialComplex { labels, simplices }
    }
}

/// Graded free module with boundary matrices `∂_q : C_q → C_{q-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    coeff: Coeff,
    ranks: Vec<usize>,
    /// `boundaries[q]` is `∂_q`; `boundaries[0]` is the zero map to nothing.
    boundaries: Vec<SparseMatrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl ChainComplex {
    /// Checks shapes and `∂_{q-1} ∂_q = 0` over `coeff`.
    pub fn new(coeff: Coeff, ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::NotAComplex(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                ranks.len()
            )));
        }
        let boundaries: Vec<SparseMatrix> = match coeff {
            Coeff::Z2 => boundaries.iter().map(SparseMatrix::mod2).collect(),
            _ => boundaries,
        };
        for (q, b) in boundaries.iter().enumerate() {
            let rows = if q == 0 { 0 } else { ranks[q - 1] };
            if b.ncols() != ranks[q] || b.nrows() != rows {
                return Err(Error::NotAComplex(format!(
                    "boundary in degree {q} is {}x{}, expected {rows}x{}",
                    b.nrows(),
                    b.ncols(),
                    ranks[q]
                )));
            }
        }
        for q in 2..boundaries.len() {
            let mut square = boundaries[q - 1].mul(&boundaries[q]);
            if coeff == Coeff::Z2 {
                square = square.mod2();
            }
            if !square.is_zero() {
                return Err(Error::NotAComplex(format!("boundary squares to nonzero in degree {q}")));
            }
        }
        Ok(ChainComplex {
            coeff,
            ranks,
            boundaries,
            labels: None,
        })
    }

    /// Complex with the given ranks and all differentials zero.
    pub fn minimal(coeff: Coeff, ranks: Vec<usize>) -> Self {
        let boundaries = (0..ranks.len())
            .map(|q| SparseMatrix::zeros(if q == 0 { 0 } else { ranks[q - 1] }, ranks[q]))
            .collect();
        ChainComplex {
            coeff,
            ranks,
            boundaries,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, &r)| l.len() != r) {
            return Err(Error::DimensionMismatch("basis labels do not match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn coeff(&self) -> Coeff {
        self.coeff
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn boundary(&self, q: usize) -> &SparseMatrix {
        &self.boundaries[q]
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Same matrices read over other coefficients (re-checking `∂² = 0`).
    pub fn with_coeff(&self, coeff: Coeff) -> Result<Self> {
        let mut out = ChainComplex::new(coeff, self.ranks.clone(), self.boundaries.clone())?;
        out.labels = self.labels.clone();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coeff: Coeff,
    pub betti: Vec<usize>,
    /// Torsion coefficients per degree (only over `Z`), each `> 1`, each dividing the next.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Betti numbers with trailing zero degrees removed.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        while b.len() > 1 && b.last() == Some(&0) && self.torsion.get(b.len() - 1).is_none_or(Vec::is_empty) {
            b.pop();
        }
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl Serialize for HomologyResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.betti.len()))?;
        for (q, b) in self.betti.iter().enumerate() {
            let torsion: Vec<String> = self.torsion[q].iter().map(|t| t.to_string()).collect();
            seq.serialize_element(&serde_json::json!({ "betti": b.to_string(), "torsion": torsion }))?;
        }
        seq.end()
    }
}

/// Simplicial chains with the orientation induced by the vertex order.
pub fn oriented_chain_complex(k: &SimplicialComplex, coeff: Coeff) -> ChainComplex {
    let top = k.simplices.len();
    let ranks: Vec<usize> = k.face_counts();
    let boundaries: Vec<SparseMatrix> = (0..top)
        .into_par_iter()
        .map(|q| {
            if q == 0 {
                return SparseMatrix::zeros(0, ranks[0]);
            }
            let cols = k.simplices[q]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|skip| {
                            let face: Vec<u32> = s
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != skip)
                                .map(|(_, &v)| v)
                                .collect();
                            let row = k.index_of(&face).expect("complex is closed under faces");
                            let sign = if skip % 2 == 0 { 1 } else { -1 };
                            (row as u32, if coeff == Coeff::Z2 { 1 } else { sign })
                        })
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(ranks[q - 1], cols)
        })
        .collect();
    ChainComplex {
        coeff,
        ranks,
        boundaries,
        labels: None,
    }
}

/// Homology of a chain complex over its coefficient ring.
pub fn homology(c: &ChainComplex) -> HomologyResult {
    let top = c.ranks.len();
    // rank and invariant factors of each ∂_q, q >= 1
    let per_degree: Vec<(usize, Vec<BigInt>)> = (0..top)
        .into_par_iter()
        .map(|q| {
            if q == 0 || c.boundaries[q].nnz() == 0 {
                return (0, Vec::new());
            }
            match c.coeff {
                Coeff::Z => {
                    let inv = linalg::invariant_factors(&c.boundaries[q]);
                    (inv.len(), inv.into_iter().filter(|d| !d.is_one()).collect())
                }
                field => (linalg::rank(&c.boundaries[q], field), Vec::new()),
            }
        })
        .collect();
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for q in 0..top {
        let out_rank = per_degree[q].0;
        let (in_rank, tors) = per_degree.get(q + 1).cloned().unwrap_or((0, Vec::new()));
        betti.push(c.ranks[q] - out_rank - in_rank);
        torsion.push(tors);
    }
    HomologyResult {
        coeff: c.coeff,
        betti,
        torsion,
    }
}

pub fn simplicial_homology(k: &SimplicialComplex, coeff: Coeff) -> HomologyResult {
    homology(&oriented_chain_complex(k, coeff))
}

pub fn betti(k: &SimplicialComplex, coeff: Coeff) -> Vec<usize> {
    simplicial_homology(k, coeff).betti
}

/// Reduced Betti numbers from degree 0 (`[]` for the empty complex).
pub fn reduced_betti(k: &SimplicialComplex, coeff: Coeff) -> Vec<usize> {
    let mut b = betti(k, coeff);
    if let Some(b0) = b.first_mut() {
        *b0 -= 1;
    }
    b
}

/// Nonempty with vanishing reduced integral homology.
pub fn is_acyclic(k: &SimplicialComplex) -> bool {
    if k.vertex_count() == 0 {
        return false;
    }
    if k.vertex_count() == 1 {
        return true;
    }
    let h = simplicial_homology(k, Coeff::Z);
    h.is_torsion_free() && h.betti[0] == 1 && h.betti[1..].iter().all(|&b| b == 0)
}

/// True iff `vertex_map` (indices of `k1` to indices of `k2`) is a bijection on
/// vertices that carries the simplices of `k1` bijectively onto those of `k2`.
pub fn verify_simplicial_iso(k1: &SimplicialComplex, k2: &SimplicialComplex, vertex_map: &[usize]) -> bool {
    if vertex_map.len() != k1.vertex_count() || k1.vertex_count() != k2.vertex_count() {
        return false;
    }
    let distinct: HashSet<usize> = vertex_map.iter().copied().collect();
    if distinct.len() != vertex_map.len() || vertex_map.iter().any(|&v| v >= k2.vertex_count()) {
        return false;
    }
    if k1.face_counts() != k2.face_counts() {
        return false;
    }
    k1.simplices.par_iter().flatten().all(|s| {
        let mut image: Vec<u32> = s.iter().map(|&v| vertex_map[v as usize] as u32).collect();
        image.sort_unstable();
        k2.contains(&image)
    })
}

/// [`verify_simplicial_iso`] with the map given on vertex labels.
pub fn verify_simplicial_iso_labels(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    vertex_map: &HashMap<String, String>,
) -> bool {
    let map: Option<Vec<usize>> = k1
        .labels()
        .iter()
        .map(|l| vertex_map.get(l).and_then(|t| k2.vertex_index(t)))
        .collect();
    map.is_some_and(|m| verify_simplicial_iso(k1, k2, &m))
}
