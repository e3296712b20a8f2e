//! Combinatorial simple polytopes.
//!
//! A polytope is given purely by its facet-vertex incidences. The face lattice
//! is recovered by closing the facet list under intersection, which is valid
//! for simple polytopes: every face of dimension `l` is the intersection of
//! exactly `n - l` facets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which torus acts: the real torus `Z_2^n` (small covers, `d = 1`) or the
/// compact torus `T^n` (quasi-toric manifolds, `d = 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Torus {
    Real,
    Complex,
}

impl Torus {
    pub fn from_d(d: u32) -> Result<Self> {
        match d {
            1 => Ok(Torus::Real),
            2 => Ok(Torus::Complex),
            _ => Err(Error::BadParameter(format!("d must be 1 or 2, got {d}"))),
        }
    }

    pub fn d(self) -> u32 {
        match self {
            Torus::Real => 1,
            Torus::Complex => 2,
        }
    }
}

impl fmt::Display for Torus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.d())
    }
}

/// A face of a simple polytope, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sorted vertex indices into [`SimplePolytope::vertices`].
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Sorted indices of the facets containing this face.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SimplePolytope {
    dim: usize,
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
    faces: Vec<Face>,
    face_index: HashMap<Vec<usize>, usize>,
}

/// Orders labels numerically when every label is an integer, lexicographically otherwise.
pub(crate) fn sort_labels(labels: &mut [String]) {
    let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse::<i64>().ok()).collect();
    if numeric.is_some() {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

impl SimplePolytope {
    /// Builds the face lattice of a simple `n`-polytope from its facets.
    ///
    /// Facet order is preserved: facet `i` is reported as `F{i+1}`.
    pub fn build<S: AsRef<str>>(facets: &[Vec<S>], n: usize) -> Result<Self> {
        if facets.iter().any(|f| f.is_empty()) {
            return Err(Error::BadParameter("facets must be nonempty".into()));
        }
        if n == 0 {
            return Err(Error::BadParameter("polytope dimension must be at least 1".into()));
        }
        let mut labels: Vec<String> = facets
            .iter()
            .flatten()
            .map(|s| s.as_ref().to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        sort_labels(&mut labels);
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let facet_sets: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let set: BTreeSet<usize> = f.iter().map(|v| index[v.as_ref()]).collect();
                set.into_iter().collect()
            })
            .collect();

        let mut containing = vec![0usize; labels.len()];
        for f in &facet_sets {
            for &v in f {
                containing[v] += 1;
            }
        }
        if let Some((v, &count)) = containing.iter().enumerate().find(|(_, &c)| c != n) {
            return Err(Error::NotSimple {
                vertex: labels[v].clone(),
                count,
                expected: n,
            });
        }

        // Intersection closure of the facets.
        let mut seen: BTreeSet<Vec<usize>> = facet_sets.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
        while let Some(face) = frontier.pop() {
            for f in &facet_sets {
                let meet: Vec<usize> = face.iter().copied().filter(|v| f.binary_search(v).is_ok()).collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        seen.insert((0..labels.len()).collect());

        let mut faces = Vec::with_capacity(seen.len());
        for verts in seen {
            let in_facets: Vec<usize> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, f)| verts.iter().all(|v| f.binary_search(v).is_ok()))
                .map(|(i, _)| i)
                .collect();
            if in_facets.len() > n {
                return Err(Error::InconsistentLattice(format!(
                    "a face with {} vertices lies in {} facets (n = {n})",
                    verts.len(),
                    in_facets.len()
                )));
            }
            let dim = n - in_facets.len();
            if dim == 0 && verts.len() != 1 {
                return Err(Error::InconsistentLattice(format!(
                    "intersection of {n} facets has {} vertices",
                    verts.len()
                )));
            }
            faces.push(Face {
                vertices: verts,
                dim,
                facets: in_facets,
            });
        }
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        let face_index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        Ok(SimplePolytope {
            dim: n,
            vertices: labels,
            facets: facet_sets,
            faces,
            face_index,
        })
    }

    /// The `m`-gon with vertices `1..=m` and facets `F_i = {v_i, v_{i+1}}`.
    pub fn ngon(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadParameter(format!("an m-gon needs m >= 3, got {m}")));
        }
        let facets: Vec<Vec<String>> = (1..=m).map(|i| vec![i.to_string(), (i % m + 1).to_string()]).collect();
        Self::build(&facets, 2)
    }

    /// The `n`-simplex on vertices `0..=n`; facet `i` omits vertex `i`.
    pub fn simplex(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameter(format!("simplex dimension must be >= 1, got {n}")));
        }
        let facets: Vec<Vec<String>> = (0..=n)
            .map(|skip| (0..=n).filter(|&v| v != skip).map(|v| v.to_string()).collect())
            .collect();
        Self::build(&facets, n)
    }

    /// The `n`-cube `[0,1]^n`, vertices labelled by bit strings.
    pub fn cube(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameter(format!("cube dimension must be >= 1, got {n}")));
        }
        let label = |bits: usize| {
            (0..n)
                .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        };
        let mut facets = Vec::new();
        for axis in 0..n {
            for side in 0..2 {
                facets.push(
                    (0..1usize << n)
                        .filter(|b| (b >> axis) & 1 == side)
                        .map(label)
                        .collect::<Vec<_>>(),
                );
            }
        }
        Self::build(&facets, n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// All faces (including the polytope itself), sorted by `(dim, vertex set)`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, index: usize) -> &Face {
        &self.faces[index]
    }

    pub fn face_of_vertices(&self, vertices: &[usize]) -> Option<usize> {
        self.face_index.get(vertices).copied()
    }

    pub fn facet_face(&self, facet: usize) -> usize {
        self.face_index[&self.facets[facet]]
    }

    /// Index of the smallest face containing the given (sorted) vertex set.
    pub fn face_hull(&self, vertices: &[usize]) -> usize {
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&i| vertices.iter().all(|v| self.facets[i].binary_search(v).is_ok()))
            .collect();
        let verts: Vec<usize> = (0..self.vertices.len())
            .filter(|v| facets.iter().all(|&i| self.facets[i].binary_search(v).is_ok()))
            .collect();
        self.face_index[&verts]
    }

    /// Short human label: `v{label}` for vertices, `F{i}` for facets, `P` for the
    /// polytope and `F{i}^F{j}^...` otherwise.
    pub fn face_label(&self, index: usize) -> String {
        let face = &self.faces[index];
        if face.dim == 0 {
            format!("v{}", self.vertices[face.vertices[0]])
        } else if face.facets.is_empty() {
            "P".to_string()
        } else {
            face.facets
                .iter()
                .map(|i| format!("F{}", i + 1))
                .collect::<Vec<_>>()
                .join("^")
        }
    }

    pub fn f_vector(&self) -> FVector {
        let n = self.dim;
        let mut counts = vec![0u64; n];
        for face in &self.faces {
            if face.dim < n {
                counts[n - face.dim - 1] += 1;
            }
        }
        FVector(counts)
    }

    pub fn h_polynomial(&self) -> HPolynomial {
        h_from_f(&self.f_vector(), self.dim)
    }

    /// Cell counts and Euler characteristic of the preimage of the strong
    /// diagonal of `P^ell` in `M^ell`.
    pub fn diagonal_preimage_cell_vector(&self, torus: Torus, ell: u32) -> Result<(CellVector, BigInt)> {
        if ell == 0 {
            return Err(Error::BadParameter("ell must be >= 1".into()));
        }
        let n = self.dim;
        let f = self.f_vector();
        // number of i-dimensional faces: f_{n-i-1}, with the top face counted once
        let faces_of_dim = |i: usize| -> BigInt {
            if i == n {
                BigInt::one()
            } else {
                BigInt::from(f.0[n - i - 1])
            }
        };
        let counts: Vec<BigInt> = match torus {
            Torus::Real => (0..=n).map(|i| faces_of_dim(i) << (i as u64 * ell as u64)).collect(),
            Torus::Complex => {
                let top = n + n * ell as usize;
                let mut counts = vec![BigInt::zero(); top + 1];
                for i in 0..=n {
                    let torus_rank = i * ell as usize;
                    for j in 0..=torus_rank {
                        counts[i + j] += binomial(BigInt::from(torus_rank), BigInt::from(j)) * faces_of_dim(i);
                    }
                }
                counts
            }
        };
        let chi = alternating_sum(&counts);
        Ok((CellVector { torus, ell, counts }, chi))
    }
}

fn alternating_sum(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c })
}

/// `f_i` is the number of faces of codimension `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

/// Coefficients `h_0..h_n` of the h-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial(pub Vec<BigInt>);

impl HPolynomial {
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }
}

/// Expands `sum_i f_{i-1} (t-1)^{n-i}` (with `f_{-1} = 1`).
pub fn h_from_f(f: &FVector, n: usize) -> HPolynomial {
    let mut h = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        let coeff = if i == 0 {
            BigInt::one()
        } else {
            BigInt::from(f.0[i - 1])
        };
        let power = n - i;
        for k in 0..=power {
            let mut term = binomial(BigInt::from(power), BigInt::from(k)) * &coeff;
            if (power - k) % 2 == 1 {
                term = -term;
            }
            h[k] += term;
        }
    }
    HPolynomial(h)
}

/// Recovers the f-vector from an h-vector: `f_{i-1}` is the coefficient of
/// `(t-1)^{n-i}` in the expansion of `h(t)` around `t = 1`.
pub fn f_from_h(h: &HPolynomial) -> Vec<BigInt> {
    let n = h.0.len() - 1;
    // h(t) = sum_k h_k ((t-1)+1)^k = sum_j (sum_k h_k C(k,j)) (t-1)^j
    (0..=n)
        .map(|j| {
            h.0.iter()
                .enumerate()
                .filter(|(k, _)| *k >= j)
                .map(|(k, hk)| hk * binomial(BigInt::from(k), BigInt::from(j)))
                .sum::<BigInt>()
        })
        .rev()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVector {
    pub torus: Torus,
    pub ell: u32,
    pub counts: Vec<BigInt>,
}

/// Assignment of a vector in `R_d^n` to each facet (`R_1 = Z_2`, `R_2 = Z`).
#[derive(Clone, Debug)]
pub struct CharacteristicFunction {
    pub torus: Torus,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCheck {
    pub vertex: String,
    pub facets: Vec<usize>,
    pub determinant: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicReport {
    pub vertices: Vec<VertexCheck>,
    pub valid: bool,
}

impl CharacteristicReport {
    pub fn failing(&self) -> impl Iterator<Item = &VertexCheck> {
        self.vertices.iter().filter(|v| !v.pass)
    }
}

pub fn validate_characteristic_function(
    polytope: &SimplePolytope,
    lambda: &CharacteristicFunction,
) -> Result<CharacteristicReport> {
    let n = polytope.dim();
    if lambda.vectors.len() != polytope.facet_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors for {} facets",
            lambda.vectors.len(),
            polytope.facet_count()
        )));
    }
    if let Some(v) = lambda.vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in dimension {n}",
            v.len()
        )));
    }
    let mut checks = Vec::new();
    for face in polytope.faces().iter().filter(|f| f.dim == 0) {
        let rows: Vec<Vec<BigInt>> = face
            .facets
            .iter()
            .map(|&i| lambda.vectors[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let det = determinant(rows);
        let pass = match lambda.torus {
            Torus::Real => (&det % 2u32) != BigInt::zero(),
            Torus::Complex => det.abs().is_one(),
        };
        checks.push(VertexCheck {
            vertex: polytope.vertices()[face.vertices[0]].clone(),
            facets: face.facets.clone(),
            determinant: det.to_string(),
            pass,
        });
    }
    let valid = checks.iter().all(|c| c.pass);
    Ok(CharacteristicReport {
        vertices: checks,
        valid,
    })
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
