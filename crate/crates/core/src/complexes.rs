//! The simplicial complexes attached to a polytope: the nerve `K_P` of the
//! maximal disjoint face pairs, the explicit polygon complexes, the barycentric
//! subdivision of `Bd Δ^n` and its subcomplexes `K^n_{i,j}`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{is_acyclic, SimplicialComplex};
use crate::polytope::SimplePolytope;

/// Two faces of `P` (indices into [`SimplePolytope::faces`]) with disjoint vertex sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacePair {
    pub first: usize,
    pub second: usize,
}

impl FacePair {
    pub fn label(&self, p: &SimplePolytope) -> String {
        format!("{}x{}", p.face_label(self.first), p.face_label(self.second))
    }

    /// Componentwise containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &FacePair, p: &SimplePolytope) -> bool {
        is_subset(&p.face(self.first).vertices, &p.face(other.first).vertices)
            && is_subset(&p.face(self.second).vertices, &p.face(other.second).vertices)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

fn is_disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_err())
}

/// Sort key listing vertices by their label order and larger faces by their facets.
fn face_key(p: &SimplePolytope, f: usize) -> (usize, Vec<usize>) {
    let face = p.face(f);
    if face.dim == 0 {
        (0, face.vertices.clone())
    } else {
        (face.dim, face.facets.clone())
    }
}

/// Every pair of faces with disjoint vertex sets.
pub fn disjoint_face_pairs(p: &SimplePolytope) -> Vec<FacePair> {
    let n = p.faces().len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if is_disjoint(&p.face(a).vertices, &p.face(b).vertices) {
                out.push(FacePair { first: a, second: b });
            }
        }
    }
    out
}

/// Disjoint pairs not properly contained in another disjoint pair, in canonical order.
pub fn maximal_face_pairs(p: &SimplePolytope) -> Vec<FacePair> {
    let all = disjoint_face_pairs(p);
    let mut maximal: Vec<FacePair> = all
        .iter()
        .filter(|x| !all.iter().any(|y| y != *x && x.is_contained_in(y, p)))
        .copied()
        .collect();
    maximal.sort_by_cached_key(|x| (face_key(p, x.first), face_key(p, x.second)));
    maximal
}

/// The nerve of the cover of the disjoint-pair region of `P×P` by maximal pairs.
pub fn k_p(p: &SimplePolytope) -> Result<SimplicialComplex> {
    if p.dim() < 2 {
        return Err(Error::BadParameter(format!(
            "the pair nerve needs dim P >= 2, got {}",
            p.dim()
        )));
    }
    let pairs = maximal_face_pairs(p);
    let labels = pairs.iter().map(|x| x.label(p)).collect();
    // A set of pairs has a common point iff some (u, w) lies in all of them, so the
    // maximal simplices are among the sets of pairs through a fixed (u, w).
    let nv = p.vertices().len();
    let mut maximal = BTreeSet::new();
    for u in 0..nv {
        for w in 0..nv {
            if u == w {
                continue;
            }
            let through: Vec<usize> = pairs
                .iter()
                .enumerate()
                .filter(|(_, x)| {
                    p.face(x.first).vertices.binary_search(&u).is_ok()
                        && p.face(x.second).vertices.binary_search(&w).is_ok()
                })
                .map(|(i, _)| i)
                .collect();
            if !through.is_empty() {
                maximal.insert(through);
            }
        }
    }
    let maximal: Vec<Vec<usize>> = maximal.into_iter().collect();
    SimplicialComplex::from_maximal(labels, &maximal)
}

/// Vertex indexing shared by the polygon complexes: `(facet i, facet j)` (0-based)
/// or `(vertex, facet)` pairs, looked up in the `k_p` vertex order.
struct PolygonPairs {
    polygon: SimplePolytope,
    labels: Vec<String>,
    index: HashMap<FacePair, usize>,
}

impl PolygonPairs {
    fn new(m: usize) -> Result<Self> {
        let polygon = SimplePolytope::ngon(m)?;
        let pairs = maximal_face_pairs(&polygon);
        let labels = pairs.iter().map(|x| x.label(&polygon)).collect();
        let index = pairs.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        Ok(PolygonPairs { polygon, labels, index })
    }

    fn m(&self) -> usize {
        self.polygon.facet_count()
    }

    /// Pair of facets `F_{i+1} x F_{j+1}` (indices taken mod m), if it is a vertex.
    fn ff(&self, i: usize, j: usize) -> Option<usize> {
        let m = self.m();
        let pair = FacePair {
            first: self.polygon.facet_face(i % m),
            second: self.polygon.facet_face(j % m),
        };
        self.index.get(&pair).copied()
    }

    /// Vertex `v_{i+1}` times facet `F_{j+1}` (or reversed), indices mod m.
    fn vf(&self, v: usize, f: usize, vertex_first: bool) -> Option<usize> {
        let m = self.m();
        let vertex = self.polygon.face_of_vertices(&[v % m])?;
        let facet = self.polygon.facet_face(f % m);
        let pair = if vertex_first {
            FacePair {
                first: vertex,
                second: facet,
            }
        } else {
            FacePair {
                first: facet,
                second: vertex,
            }
        };
        self.index.get(&pair).copied()
    }

    fn finish(self, simplices: Vec<Option<Vec<usize>>>) -> Result<SimplicialComplex> {
        // keep only simplices whose vertices are all disjoint pairs
        let mut maximal: Vec<Vec<usize>> = simplices.into_iter().flatten().collect();
        maximal.extend((0..self.labels.len()).map(|v| vec![v]));
        SimplicialComplex::from_maximal(self.labels, &maximal)
    }
}

fn collect(ids: &[Option<usize>]) -> Option<Vec<usize>> {
    ids.iter().copied().collect()
}

/// The polygon pair complex written out explicitly by its simplices.
pub fn k_pm(m: usize) -> Result<SimplicialComplex> {
    let pp = PolygonPairs::new(m)?;
    let mut simplices = Vec::new();
    match m {
        3 => {
            // hexagon v1xF2 - F1xv3 - v2xF3 - F2xv1 - v3xF1 - F3xv2 - v1xF2
            let mut cycle = Vec::new();
            for i in 0..3 {
                cycle.push(pp.vf(i, i + 1, true));
                cycle.push(pp.vf(i + 2, i, false));
            }
            for t in 0..6 {
                simplices.push(collect(&[cycle[t], cycle[(t + 1) % 6]]));
            }
        }
        4 => {
            let cycle: Vec<Option<usize>> = (0..4).map(|i| pp.ff(i, i + 2)).collect();
            for t in 0..4 {
                simplices.push(collect(&[cycle[t], cycle[(t + 1) % 4]]));
            }
        }
        _ => {
            for i in 0..m {
                for j in 0..m {
                    simplices.push(collect(&[
                        pp.ff(i, j),
                        pp.ff(i + 1, j),
                        pp.ff(i, j + 1),
                        pp.ff(i + 1, j + 1),
                    ]));
                }
                simplices.push(collect(&[pp.ff(i, i + 2), pp.ff(i, i + 3), pp.ff(i + 1, i + 3)]));
                simplices.push(collect(&[pp.ff(i + 2, i), pp.ff(i + 3, i), pp.ff(i + 3, i + 1)]));
            }
        }
    }
    pp.finish(simplices)
}

/// The annulus triangulation used as the locally nice subcomplex for polygons.
pub fn l_pm(m: usize) -> Result<SimplicialComplex> {
    if m <= 5 {
        return k_pm(m);
    }
    let pp = PolygonPairs::new(m)?;
    let mut simplices = Vec::new();
    for i in 0..m {
        for j in 0..m {
            simplices.push(collect(&[pp.ff(i, j), pp.ff(i + 1, j), pp.ff(i + 1, j + 1)]));
            simplices.push(collect(&[pp.ff(i, j), pp.ff(i, j + 1), pp.ff(i + 1, j + 1)]));
        }
    }
    pp.finish(simplices)
}

/// Label `{0,2,3}` of a subset of `{0..n}` given as a bit mask.
pub fn subset_label(mask: u32) -> String {
    let parts: Vec<String> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Inverse of [`subset_label`].
pub fn parse_subset_label(label: &str) -> Option<u32> {
    let inner = label.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(0);
    }
    inner.split(',').try_fold(0u32, |acc, part| {
        let b: u32 = part.trim().parse().ok()?;
        (b < 32).then_some(acc | 1 << b)
    })
}

/// Chain label `{0}<{0,1}` for a simplex of the subdivision.
pub fn chain_label(k: &SimplicialComplex, simplex: &[u32]) -> String {
    k.simplex_labels(simplex).join("<")
}

/// Faces of `Δ^n` with between `lo` and `hi` vertices, ordered by (size, lexicographic).
fn faces_by_size(n: usize, lo: usize, hi: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for size in lo..=hi {
        let mut level: Vec<u32> = (0u32..1 << (n + 1))
            .filter(|m| m.count_ones() as usize == size)
            .collect();
        level.sort_by_key(|&m| (0..=n).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>());
        out.extend(level);
    }
    out
}

/// Chains of faces of `Δ^n` whose sizes stay in `lo..=hi`.
fn chain_complex_between(n: usize, lo: usize, hi: usize) -> SimplicialComplex {
    let faces = faces_by_size(n, lo, hi);
    let labels = faces.iter().map(|&m| subset_label(m)).collect();
    let index: HashMap<u32, u32> = faces.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    // a maximal chain: a starting face of size lo, then one new vertex at a time up to size hi
    let mut simplices: Vec<Vec<Vec<u32>>> = vec![Vec::new(); hi - lo + 1];
    let mut seen: Vec<std::collections::HashSet<Vec<u32>>> = vec![Default::default(); hi - lo + 1];
    let full = (1u32 << (n + 1)) - 1;
    let mut stack: Vec<(u32, Vec<u32>)> = faces
        .iter()
        .filter(|m| m.count_ones() as usize == lo)
        .map(|&m| (m, vec![index[&m]]))
        .collect();
    while let Some((mask, chain)) = stack.pop() {
        if (mask.count_ones() as usize) < hi {
            let free = full & !mask;
            for b in 0..=n {
                if free >> b & 1 == 1 {
                    let next = mask | 1 << b;
                    let mut c = chain.clone();
                    c.push(index[&next]);
                    stack.push((next, c));
                }
            }
            continue;
        }
        // every subchain of a maximal chain is a simplex
        let len = chain.len();
        for sub in 1u64..(1u64 << len) {
            let s: Vec<u32> = (0..len).filter(|i| sub >> i & 1 == 1).map(|i| chain[i]).collect();
            let d = s.len() - 1;
            if seen[d].insert(s.clone()) {
                simplices[d].push(s);
            }
        }
    }
    // chain entries increase in size, and face indices increase with size, so
    // each simplex is already sorted
    SimplicialComplex::from_closed_unchecked(labels, simplices)
}

/// Barycentric subdivision of the boundary of `Δ^n`.
pub fn sd_boundary_simplex(n: usize) -> Result<SimplicialComplex> {
    if !(2..=12).contains(&n) {
        return Err(Error::BadParameter(format!("need 2 <= n <= 12, got {n}")));
    }
    Ok(chain_complex_between(n, 1, n))
}

/// Chains `σ_1 ⊂ ... ⊂ σ_l` with `dim σ_1 >= i` and `dim σ_l <= n - j - 1`.
pub fn k_ij(n: usize, i: usize, j: usize) -> Result<SimplicialComplex> {
    if !(2..=12).contains(&n) {
        return Err(Error::BadParameter(format!("need 2 <= n <= 12, got {n}")));
    }
    if i + j + 1 > n {
        return Err(Error::BadParameter(format!(
            "need i + j + 1 <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(chain_complex_between(n, i + 1, n - j))
}

/// `σ ↦ σ̄`, the face spanned by the complementary vertices, on vertex labels.
pub fn complement_vertex_map(n: usize) -> Result<HashMap<String, String>> {
    let sd = sd_boundary_simplex(n)?;
    let full = (1u32 << (n + 1)) - 1;
    Ok(sd
        .labels()
        .iter()
        .map(|l| {
            let m = parse_subset_label(l).expect("subset label");
            (l.clone(), subset_label(full & !m))
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportFailure {
    pub face: String,
    pub support: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocallyNiceReport {
    pub supports_checked: usize,
    pub is_subcomplex: bool,
    pub failures: Vec<SupportFailure>,
    pub pass: bool,
}

/// Checks that `l` has the vertices of `K_P` and that every cell support spans an
/// acyclic full subcomplex.
///
/// The cells of the manifold square that lie in some piece are grouped by their
/// carrier, a disjoint face pair `G`; the support of `G` is the set of vertices
/// `B` of `l` with `G ⊆ B`.
pub fn locally_nice_check(l: &SimplicialComplex, p: &SimplePolytope) -> Result<LocallyNiceReport> {
    let k = k_p(p)?;
    let pairs = maximal_face_pairs(p);
    let by_label: HashMap<&str, FacePair> = k
        .labels()
        .iter()
        .map(String::as_str)
        .zip(pairs.iter().copied())
        .collect();
    if let Some(extra) = l.labels().iter().find(|v| !by_label.contains_key(v.as_str())) {
        return Err(Error::VertexMismatch(format!("{extra} is not a vertex of K_P")));
    }
    if let Some(missing) = k.labels().iter().find(|v| l.vertex_index(v).is_none()) {
        return Err(Error::VertexMismatch(format!("vertex {missing} of K_P is missing")));
    }
    let l_pairs: Vec<FacePair> = l.labels().iter().map(|v| by_label[v.as_str()]).collect();
    let mut supports: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut witness: HashMap<Vec<usize>, FacePair> = HashMap::new();
    for g in disjoint_face_pairs(p) {
        let support: Vec<usize> = (0..l_pairs.len())
            .filter(|&b| g.is_contained_in(&l_pairs[b], p))
            .collect();
        if supports.insert(support.clone()) {
            witness.insert(support, g);
        }
    }
    let failures: Vec<SupportFailure> = supports
        .par_iter()
        .filter_map(|support| {
            let mut keep = vec![false; l.vertex_count()];
            for &b in support {
                keep[b] = true;
            }
            if is_acyclic(&l.full_subcomplex(&keep)) {
                None
            } else {
                Some(SupportFailure {
                    face: witness[support].label(p),
                    support: support.iter().map(|&b| l.labels()[b].clone()).collect(),
                })
            }
        })
        .collect();
    let is_subcomplex = l.is_subcomplex_of(&k);
    Ok(LocallyNiceReport {
        supports_checked: supports.len(),
        pass: failures.is_empty() && is_subcomplex,
        is_subcomplex,
        failures,
    })
}
