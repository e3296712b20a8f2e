use std::collections::BTreeMap;

/// Column-major sparse integer matrix. Each column is sorted by row index and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds from unsorted column entries; duplicates are summed.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols.into_iter().map(normalize).collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    cols[j].push((i as u32, v));
                }
            }
        }
        SparseMatrix { nrows, cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            cols: (0..n).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let col = &self.cols[j];
        col.binary_search_by_key(&(i as u32), |e| e.0).map_or(0, |k| col[k].1)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) if v == 0 => {
                col.remove(k);
            }
            Ok(k) => col[k].1 = v,
            Err(_) if v == 0 => {}
            Err(k) => col.insert(k, (i as u32, v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i as usize].push((j as u32, v));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols,
        }
    }

    /// Entries reduced to `{0, 1}`.
    pub fn mod2(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().filter(|e| e.1 % 2 != 0).map(|&(i, _)| (i, 1)).collect())
                .collect(),
        }
    }

    /// `self * rhs`. Panics on shape mismatch or `i64` overflow.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "matrix shapes do not compose");
        let cols = rhs
            .cols
            .iter()
            .map(|rcol| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(k, b) in rcol {
                    for &(i, a) in &self.cols[k as usize] {
                        let e = acc.entry(i).or_insert(0);
                        *e = a
                            .checked_mul(b)
                            .and_then(|p| e.checked_add(p))
                            .expect("integer overflow in sparse product");
                    }
                }
                acc.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (rhs.nrows, rhs.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut merged: Vec<(u32, i64)> = a.clone();
                merged.extend(b.iter().map(|&(i, v)| (i, -v)));
                normalize(merged)
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn scale(&self, factor: i64) -> SparseMatrix {
        if factor == 0 {
            return SparseMatrix::zeros(self.nrows, self.ncols());
        }
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|&(i, v)| (i, v * factor)).collect())
                .collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`, with row `(i, k)` at `i * rhs.nrows + k`.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut cols = Vec::with_capacity(self.ncols() * rhs.ncols());
        for acol in &self.cols {
            for bcol in &rhs.cols {
                let mut col = Vec::with_capacity(acol.len() * bcol.len());
                for &(i, a) in acol {
                    for &(k, b) in bcol {
                        col.push((i * rhs.nrows as u32 + k, a * b));
                    }
                }
                cols.push(col);
            }
        }
        SparseMatrix {
            nrows: self.nrows * rhs.nrows,
            cols,
        }
    }

    /// Submatrix on the given rows and columns (each list in increasing order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_map = vec![u32::MAX; self.nrows];
        for (new, &old) in rows.iter().enumerate() {
            row_map[old] = new as u32;
        }
        let cols = cols
            .iter()
            .map(|&j| {
                self.cols[j]
                    .iter()
                    .filter(|e| row_map[e.0 as usize] != u32::MAX)
                    .map(|&(i, v)| (row_map[i as usize], v))
                    .collect()
            })
            .collect();
        SparseMatrix {
            nrows: rows.len(),
            cols,
        }
    }
}

fn normalize(mut col: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (i, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}
