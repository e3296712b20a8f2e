//! Chain-level cover models: a nerve, one chain complex per nerve simplex and
//! an inclusion chain map for every codimension-one face.
//!
//! Every piece is a product of standard spaces (point, circle, 2-sphere, real
//! and complex projective spaces) with its minimal cell structure.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complexes::{self, chain_label, locally_nice_check, FacePair, LocallyNiceReport};
use crate::error::{Error, Result};
use crate::homology::{is_acyclic, ChainComplex, Coeff, SimplicialComplex};
use crate::linalg::SparseMatrix;
use crate::polytope::{SimplePolytope, Torus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    Point,
    Circle,
    Sphere2,
    RealProjective(u32),
    ComplexProjective(u32),
}

impl Factor {
    /// Degrees of the cells, in basis order.
    pub fn cell_degrees(self) -> Vec<usize> {
        match self {
            Factor::Point => vec![0],
            Factor::Circle => vec![0, 1],
            Factor::Sphere2 => vec![0, 2],
            Factor::RealProjective(s) => (0..=s as usize).collect(),
            Factor::ComplexProjective(s) => (0..=s as usize).map(|i| 2 * i).collect(),
        }
    }

    /// Cellular boundary of cell `i` as `(cell, coefficient)` terms over `Z`.
    fn boundary(self, i: usize) -> Vec<(usize, i64)> {
        match self {
            // e_i -> (1 + (-1)^i) e_{i-1}
            Factor::RealProjective(_) if i > 0 && i.is_multiple_of(2) => vec![(i - 1, 2)],
            _ => Vec::new(),
        }
    }

    fn needs_z2(self) -> bool {
        matches!(self, Factor::RealProjective(s) if s >= 2)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Point => write!(f, "pt"),
            Factor::Circle => write!(f, "S1"),
            Factor::Sphere2 => write!(f, "S2"),
            Factor::RealProjective(s) => write!(f, "RP{s}"),
            Factor::ComplexProjective(s) => write!(f, "CP{s}"),
        }
    }
}

/// Product of standard factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StandardSpace {
    pub factors: Vec<Factor>,
}

impl StandardSpace {
    pub fn new(factors: Vec<Factor>) -> Self {
        StandardSpace { factors }
    }

    pub fn single(f: Factor) -> Self {
        StandardSpace { factors: vec![f] }
    }

    /// Product cells `(c_1, ..., c_r)` grouped by total degree, each group lexicographic.
    pub fn cells(&self) -> Vec<Vec<Vec<usize>>> {
        let degrees: Vec<Vec<usize>> = self.factors.iter().map(|f| f.cell_degrees()).collect();
        let top: usize = degrees.iter().map(|d| d.last().copied().unwrap_or(0)).sum();
        let mut by_degree = vec![Vec::new(); top + 1];
        let mut tuple = vec![0usize; self.factors.len()];
        loop {
            let deg: usize = tuple.iter().zip(&degrees).map(|(&c, d)| d[c]).sum();
            by_degree[deg].push(tuple.clone());
            // odometer, last factor fastest, which keeps each degree group lexicographic
            let mut k = self.factors.len();
            loop {
                if k == 0 {
                    return by_degree;
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < degrees[k].len() {
                    break;
                }
                tuple[k] = 0;
            }
        }
    }
}

impl fmt::Display for StandardSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}

fn check_coeff(s: &StandardSpace, coeff: Coeff) -> Result<()> {
    if coeff != Coeff::Z2 && s.factors.iter().any(|f| f.needs_z2()) {
        return Err(Error::CoefficientMismatch(format!(
            "{s} is modelled with zero differentials only over z2, got {coeff}"
        )));
    }
    Ok(())
}

fn cell_index(s: &StandardSpace) -> (Vec<Vec<Vec<usize>>>, HashMap<Vec<usize>, (usize, usize)>) {
    let cells = s.cells();
    let mut index = HashMap::new();
    for (q, list) in cells.iter().enumerate() {
        for (i, t) in list.iter().enumerate() {
            index.insert(t.clone(), (q, i));
        }
    }
    (cells, index)
}

/// Cellular chains of a product of standard spaces, with Koszul signs
/// `∂(a ⊗ b) = ∂a ⊗ b + (-1)^{|a|} a ⊗ ∂b`.
pub fn standard_complex(s: &StandardSpace, coeff: Coeff) -> Result<ChainComplex> {
    check_coeff(s, coeff)?;
    let (cells, index) = cell_index(s);
    let degrees: Vec<Vec<usize>> = s.factors.iter().map(|f| f.cell_degrees()).collect();
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(ranks.len());
    for (q, list) in cells.iter().enumerate() {
        let rows = if q == 0 { 0 } else { ranks[q - 1] };
        let mut cols = Vec::with_capacity(list.len());
        for t in list {
            let mut col = Vec::new();
            let mut sign_degree = 0;
            for (k, f) in s.factors.iter().enumerate() {
                for (target, c) in f.boundary(t[k]) {
                    let mut image = t.clone();
                    image[k] = target;
                    let (_, row) = index[&image];
                    let sign = if sign_degree % 2 == 0 { 1 } else { -1 };
                    col.push((row as u32, sign * c));
                }
                sign_degree += degrees[k][t[k]];
            }
            cols.push(col);
        }
        boundaries.push(SparseMatrix::from_columns(rows, cols));
    }
    let labels = cells
        .iter()
        .map(|list| {
            list.iter()
                .map(|t| {
                    t.iter()
                        .zip(&degrees)
                        .map(|(&c, d)| format!("e{}", d[c]))
                        .collect::<Vec<_>>()
                        .join("x")
                })
                .collect()
        })
        .collect();
    ChainComplex::new(coeff, ranks, boundaries)?.with_labels(labels)
}

/// Degree-preserving map between chain complexes, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn degree(&self, q: usize) -> Option<&SparseMatrix> {
        self.maps.get(q)
    }

    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    /// `target.∂ ∘ f = f ∘ source.∂` in every degree, read over `coeff`.
    pub fn is_chain_map(&self, source: &ChainComplex, target: &ChainComplex, coeff: Coeff) -> bool {
        if self.maps.len() != source.ranks().len() {
            return false;
        }
        for (q, f) in self.maps.iter().enumerate() {
            if f.ncols() != source.rank(q) || f.nrows() != target.rank(q) {
                return false;
            }
        }
        for q in 1..self.maps.len() {
            let lhs = match target.ranks().len() > q {
                true => target.boundary(q).mul(&self.maps[q]),
                false => SparseMatrix::zeros(target.rank(q - 1), source.rank(q)),
            };
            let rhs = self.maps[q - 1].mul(source.boundary(q));
            let diff = lhs.sub(&rhs);
            let zero = match coeff {
                Coeff::Z2 => diff.mod2().is_zero(),
                _ => diff.is_zero(),
            };
            if !zero {
                return false;
            }
        }
        true
    }
}

fn factor_image(sub: Factor, sup: Factor, cell: usize) -> Option<usize> {
    use Factor::*;
    match (sub, sup) {
        (Point, _) => Some(0),
        (Circle, Circle) | (Sphere2, Sphere2) => Some(cell),
        (RealProjective(s), RealProjective(t)) | (ComplexProjective(s), ComplexProjective(t)) if s <= t => Some(cell),
        _ => None,
    }
}

/// Cellular inclusion `sub ↪ sup`, factor by factor: skeletal inclusions of
/// projective spaces, identities, and points onto the base 0-cell.
pub fn inclusion_chain_map(sub: &StandardSpace, sup: &StandardSpace, coeff: Coeff) -> Result<ChainMap> {
    check_coeff(sub, coeff)?;
    check_coeff(sup, coeff)?;
    let pattern = || Error::NotASubspacePattern(format!("{sub} does not include into {sup}"));
    if sub.factors.len() != sup.factors.len() {
        return Err(pattern());
    }
    let (sub_cells, _) = cell_index(sub);
    let (sup_cells, sup_index) = cell_index(sup);
    let mut maps = Vec::with_capacity(sub_cells.len());
    for (q, list) in sub_cells.iter().enumerate() {
        let rows = sup_cells.get(q).map_or(0, Vec::len);
        let mut cols = Vec::with_capacity(list.len());
        for t in list {
            let image: Option<Vec<usize>> = t
                .iter()
                .enumerate()
                .map(|(k, &c)| factor_image(sub.factors[k], sup.factors[k], c))
                .collect();
            let image = image.ok_or_else(pattern)?;
            let (dq, row) = sup_index[&image];
            debug_assert_eq!(dq, q);
            cols.push(vec![(row as u32, 1)]);
        }
        maps.push(SparseMatrix::from_columns(rows, cols));
    }
    Ok(ChainMap { maps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelContext {
    Polygon { m: usize, d: u32 },
    Simplex { n: usize, d: u32 },
}

impl ModelContext {
    pub fn polytope(&self) -> SimplePolytope {
        match *self {
            ModelContext::Polygon { m, .. } => SimplePolytope::ngon(m).expect("validated m"),
            ModelContext::Simplex { n, .. } => SimplePolytope::simplex(n).expect("validated n"),
        }
    }

    pub fn d(&self) -> u32 {
        match *self {
            ModelContext::Polygon { d, .. } | ModelContext::Simplex { d, .. } => d,
        }
    }
}

impl fmt::Display for ModelContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelContext::Polygon { m, d } => write!(f, "polygon m={m} d={d}"),
            ModelContext::Simplex { n, d } => write!(f, "simplex n={n} d={d}"),
        }
    }
}

/// Nerve, pieces and face maps over fixed coefficients.
#[derive(Clone, Debug)]
pub struct CoverModel {
    pub nerve: SimplicialComplex,
    pub coeff: Coeff,
    pub context: ModelContext,
    /// Face pair `(A, B)` of `P` that each nerve vertex stands for.
    pub vertex_pairs: Vec<FacePair>,
    spaces: Vec<StandardSpace>,
    complexes: Vec<ChainComplex>,
    /// `piece[p][a]`: space id of the `a`-th `p`-simplex.
    piece: Vec<Vec<usize>>,
    /// `carrier[p][a]`: componentwise intersection of the vertex pairs.
    carrier: Vec<Vec<FacePair>>,
    /// `face_maps[p][a][k]`: map into the face that drops vertex position `k`.
    face_maps: Vec<Vec<Vec<Arc<ChainMap>>>>,
}

impl CoverModel {
    pub fn polytope(&self) -> SimplePolytope {
        self.context.polytope()
    }

    pub fn piece_space(&self, p: usize, a: usize) -> &StandardSpace {
        &self.spaces[self.piece[p][a]]
    }

    pub fn piece_complex(&self, p: usize, a: usize) -> &ChainComplex {
        &self.complexes[self.piece[p][a]]
    }

    pub fn carrier(&self, p: usize, a: usize) -> FacePair {
        self.carrier[p][a]
    }

    pub fn face_map(&self, p: usize, a: usize, k: usize) -> &ChainMap {
        &self.face_maps[p][a][k]
    }

    /// Mutable access to one face map (copy-on-write if shared).
    pub fn face_map_mut(&mut self, p: usize, a: usize, k: usize) -> &mut ChainMap {
        Arc::make_mut(&mut self.face_maps[p][a][k])
    }

    /// Index of the face of simplex `(p, a)` obtained by dropping position `k`.
    pub fn face_index(&self, p: usize, a: usize, k: usize) -> usize {
        let s = &self.nerve.simplices(p)[a];
        let face: Vec<u32> = s.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &v)| v).collect();
        self.nerve.index_of(&face).expect("nerve is closed under faces")
    }

    pub fn nerve_dim(&self) -> usize {
        self.nerve.dim().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let p = self.polytope();
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for (dim, list) in self.piece.iter().enumerate() {
            for (a, &id) in list.iter().enumerate() {
                let simplex = self.nerve.simplex_labels(&self.nerve.simplices(dim)[a]);
                pieces.push(json!({
                    "simplex": simplex,
                    "carrier": self.carrier[dim][a].label(&p),
                    "space": self.spaces[id].to_string(),
                    "ranks": self.complexes[id].ranks().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                }));
                if dim == 0 {
                    continue;
                }
                for (k, f) in self.face_maps[dim][a].iter().enumerate() {
                    let face = self.face_index(dim, a, k);
                    let degrees: Vec<Value> = f
                        .maps
                        .iter()
                        .map(|m| {
                            let entries: Vec<[String; 3]> = m
                                .columns()
                                .iter()
                                .enumerate()
                                .flat_map(|(j, col)| {
                                    col.iter()
                                        .map(move |&(i, v)| [i.to_string(), j.to_string(), v.to_string()])
                                })
                                .collect();
                            json!({ "rows": m.nrows().to_string(), "cols": m.ncols().to_string(), "entries": entries })
                        })
                        .collect();
                    maps.push(json!({
                        "simplex": simplex,
                        "face": self.nerve.simplex_labels(&self.nerve.simplices(dim - 1)[face]),
                        "degrees": degrees,
                    }));
                }
            }
        }
        json!({
            "context": self.context,
            "coeff": self.coeff.to_string(),
            "nerve": crate::io::complex_to_json(&self.nerve),
            "pieces": pieces,
            "face_maps": maps,
        })
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Builds a model whose nerve vertex `v` stands for `pairs[v]`; the piece over a
/// simplex is `fiber(G_1) x fiber(G_2)` for the componentwise intersection `G`.
fn pair_cover_model(
    p: &SimplePolytope,
    nerve: SimplicialComplex,
    vertex_pairs: Vec<FacePair>,
    fiber: impl Fn(usize) -> Factor + Sync,
    coeff: Coeff,
    context: ModelContext,
) -> Result<CoverModel> {
    let mut space_ids: HashMap<StandardSpace, usize> = HashMap::new();
    let mut spaces = Vec::new();
    let mut piece = Vec::new();
    let mut carrier = Vec::new();
    for dim in 0..=nerve.dim().unwrap_or(0) {
        let mut ids = Vec::with_capacity(nerve.count(dim));
        let mut carriers = Vec::with_capacity(nerve.count(dim));
        for s in nerve.simplices(dim) {
            let mut first = p.face(vertex_pairs[s[0] as usize].first).vertices.clone();
            let mut second = p.face(vertex_pairs[s[0] as usize].second).vertices.clone();
            for &v in &s[1..] {
                first = intersect(&first, &p.face(vertex_pairs[v as usize].first).vertices);
                second = intersect(&second, &p.face(vertex_pairs[v as usize].second).vertices);
            }
            let (Some(f1), Some(f2)) = (p.face_of_vertices(&first), p.face_of_vertices(&second)) else {
                return Err(Error::ValidationFailed(format!(
                    "nerve simplex {:?} has an empty intersection",
                    nerve.simplex_labels(s)
                )));
            };
            let space = StandardSpace::new(vec![fiber(p.face(f1).dim), fiber(p.face(f2).dim)]);
            let next = spaces.len();
            let id = *space_ids.entry(space.clone()).or_insert_with(|| {
                spaces.push(space);
                next
            });
            ids.push(id);
            carriers.push(FacePair { first: f1, second: f2 });
        }
        piece.push(ids);
        carrier.push(carriers);
    }
    let complexes = spaces
        .iter()
        .map(|s| standard_complex(s, coeff))
        .collect::<Result<Vec<_>>>()?;

    let mut cache: HashMap<(usize, usize), Arc<ChainMap>> = HashMap::new();
    let mut face_maps = vec![Vec::new()];
    for dim in 1..piece.len() {
        let mut per_simplex = Vec::with_capacity(nerve.count(dim));
        for (a, s) in nerve.simplices(dim).iter().enumerate() {
            let mut maps = Vec::with_capacity(s.len());
            for k in 0..s.len() {
                let face: Vec<u32> = s.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &v)| v).collect();
                let b = nerve.index_of(&face).expect("closed");
                let key = (piece[dim][a], piece[dim - 1][b]);
                let map = match cache.get(&key) {
                    Some(m) => m.clone(),
                    None => {
                        let m = Arc::new(inclusion_chain_map(&spaces[key.0], &spaces[key.1], coeff)?);
                        cache.insert(key, m.clone());
                        m
                    }
                };
                maps.push(map);
            }
            per_simplex.push(maps);
        }
        face_maps.push(per_simplex);
    }
    Ok(CoverModel {
        nerve,
        coeff,
        context,
        vertex_pairs,
        spaces,
        complexes,
        piece,
        carrier,
        face_maps,
    })
}

/// Model of the disjoint-pair region over the `m`-gon: nerve `L_{P(m)}`, pieces
/// products of points and circles (`d = 1`) or points and 2-spheres (`d = 2`).
pub fn polygon_cover_model(m: usize, torus: Torus, coeff: Coeff) -> Result<CoverModel> {
    let polygon = SimplePolytope::ngon(m)?;
    let nerve = complexes::l_pm(m)?;
    let pairs = complexes::maximal_face_pairs(&polygon);
    let by_label: HashMap<String, FacePair> = pairs.iter().map(|x| (x.label(&polygon), *x)).collect();
    let vertex_pairs = nerve.labels().iter().map(|l| by_label[l]).collect();
    let fiber = move |dim: usize| match (dim, torus) {
        (0, _) => Factor::Point,
        (_, Torus::Real) => Factor::Circle,
        (_, Torus::Complex) => Factor::Sphere2,
    };
    let context = ModelContext::Polygon { m, d: torus.d() };
    pair_cover_model(&polygon, nerve, vertex_pairs, fiber, coeff, context)
}

/// Model over `Δ^n`: nerve `sd(Bd Δ^n)`, vertex `σ` standing for `σ x σ̄`, and
/// pieces `RP^s x RP^t` (`d = 1`, over `Z_2`) or `CP^s x CP^t` (`d = 2`).
pub fn simplex_cover_model(n: usize, torus: Torus, coeff: Coeff) -> Result<CoverModel> {
    if torus == Torus::Real && coeff != Coeff::Z2 {
        return Err(Error::CoefficientMismatch(format!(
            "real projective pieces are only modelled over z2, got {coeff}"
        )));
    }
    let simplex = SimplePolytope::simplex(n)?;
    let nerve = complexes::sd_boundary_simplex(n)?;
    let full: Vec<usize> = (0..=n).collect();
    let mut vertex_pairs = Vec::with_capacity(nerve.vertex_count());
    for label in nerve.labels() {
        let mask = complexes::parse_subset_label(label).expect("subset label");
        let sigma: Vec<usize> = full.iter().copied().filter(|b| mask >> b & 1 == 1).collect();
        let complement: Vec<usize> = full.iter().copied().filter(|b| mask >> b & 1 == 0).collect();
        vertex_pairs.push(FacePair {
            first: simplex.face_of_vertices(&sigma).expect("face of the simplex"),
            second: simplex.face_of_vertices(&complement).expect("face of the simplex"),
        });
    }
    let fiber = move |dim: usize| match torus {
        Torus::Real => Factor::RealProjective(dim as u32),
        Torus::Complex => Factor::ComplexProjective(dim as u32),
    };
    let context = ModelContext::Simplex { n, d: torus.d() };
    pair_cover_model(&simplex, nerve, vertex_pairs, fiber, coeff, context)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub face_maps_checked: usize,
    pub chain_map_failures: Vec<String>,
    pub commutation_failures: Vec<String>,
    /// Acyclicity of cell supports (plus vertex checks against `K_P` for polygons).
    pub locally_nice: Option<LocallyNiceReport>,
    pub pass: bool,
}

/// Checks every face map is a chain map, that the two routes to each
/// codimension-2 face agree, and that the nerve is locally nice for the cover.
pub fn validate_cover_model(cm: &CoverModel) -> Result<ValidationReport> {
    let nerve = &cm.nerve;
    let name = |p: usize, a: usize| chain_label(nerve, &nerve.simplices(p)[a]);
    let mut chain_map_failures = Vec::new();
    let mut commutation_failures = Vec::new();
    let mut checked = 0;
    for p in 1..cm.piece.len() {
        let results: Vec<(Vec<String>, Vec<String>)> = (0..nerve.count(p))
            .into_par_iter()
            .map(|a| {
                let mut bad_maps = Vec::new();
                let mut bad_squares = Vec::new();
                for k in 0..=p {
                    let b = cm.face_index(p, a, k);
                    if !cm
                        .face_map(p, a, k)
                        .is_chain_map(cm.piece_complex(p, a), cm.piece_complex(p - 1, b), cm.coeff)
                    {
                        bad_maps.push(format!("{} -> {}", name(p, a), name(p - 1, b)));
                    }
                }
                if p >= 2 {
                    for l in 1..=p {
                        for k in 0..l {
                            // drop l then k, versus drop k then l (now at l - 1)
                            let bl = cm.face_index(p, a, l);
                            let bk = cm.face_index(p, a, k);
                            let route1 = cm.face_map(p - 1, bl, k).compose(cm.face_map(p, a, l));
                            let route2 = cm.face_map(p - 1, bk, l - 1).compose(cm.face_map(p, a, k));
                            let same = route1.maps.iter().zip(&route2.maps).all(|(x, y)| {
                                let diff = x.sub(y);
                                if cm.coeff == Coeff::Z2 {
                                    diff.mod2().is_zero()
                                } else {
                                    diff.is_zero()
                                }
                            });
                            if !same {
                                bad_squares.push(format!("{} (positions {k}, {l})", name(p, a)));
                            }
                        }
                    }
                }
                (bad_maps, bad_squares)
            })
            .collect();
        for (maps, squares) in results {
            chain_map_failures.extend(maps);
            commutation_failures.extend(squares);
        }
        checked += nerve.count(p) * (p + 1);
    }
    let p = cm.polytope();
    let locally_nice = match cm.context {
        ModelContext::Polygon { .. } => locally_nice_check(nerve, &p)?,
        ModelContext::Simplex { .. } => support_check(nerve, &cm.vertex_pairs, &p),
    };
    let pass = chain_map_failures.is_empty() && commutation_failures.is_empty() && locally_nice.pass;
    Ok(ValidationReport {
        face_maps_checked: checked,
        chain_map_failures,
        commutation_failures,
        locally_nice: Some(locally_nice),
        pass,
    })
}

/// Support acyclicity for an arbitrary assignment of face pairs to nerve vertices.
fn support_check(nerve: &SimplicialComplex, pairs: &[FacePair], p: &SimplePolytope) -> LocallyNiceReport {
    let mut supports: HashMap<Vec<usize>, FacePair> = HashMap::new();
    for g in complexes::disjoint_face_pairs(p) {
        let support: Vec<usize> = (0..pairs.len()).filter(|&b| g.is_contained_in(&pairs[b], p)).collect();
        supports.entry(support).or_insert(g);
    }
    let mut entries: Vec<(Vec<usize>, FacePair)> = supports.into_iter().collect();
    entries.sort();
    let failures: Vec<complexes::SupportFailure> = entries
        .par_iter()
        .filter_map(|(support, g)| {
            let mut keep = vec![false; nerve.vertex_count()];
            for &b in support {
                keep[b] = true;
            }
            (!is_acyclic(&nerve.full_subcomplex(&keep))).then(|| complexes::SupportFailure {
                face: g.label(p),
                support: support.iter().map(|&b| nerve.labels()[b].clone()).collect(),
            })
        })
        .collect();
    LocallyNiceReport {
        supports_checked: entries.len(),
        is_subcomplex: true,
        pass: failures.is_empty(),
        failures,
    }
}
