//! Exact linear algebra over `Z`, `Q` and `Z_2`.
//!
//! Ranks and Smith forms first strip unit pivots with sparse elimination and
//! finish the (usually tiny) remainder densely over big integers.

mod elim;
mod snf;
mod sparse;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

pub use elim::Arith;
pub use snf::{dense_invariants, dense_rank, divisibility_chain};
pub use sparse::SparseMatrix;

use crate::homology::Coeff;

fn residual_dense(residual: &[Vec<(u32, i64)>]) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<u32> = residual.iter().flatten().map(|e| e.0).collect();
    cols.sort_unstable();
    cols.dedup();
    residual
        .iter()
        .map(|row| {
            let mut dense = vec![BigInt::from(0); cols.len()];
            for &(c, v) in row {
                dense[cols.binary_search(&c).unwrap()] = BigInt::from(v);
            }
            dense
        })
        .collect()
}

fn lines(m: &SparseMatrix) -> (Vec<Vec<(u32, i64)>>, usize) {
    // Eliminate on the transpose: columns of `m` become rows.
    (m.columns().to_vec(), m.nrows())
}

/// Rank of `m` over the given coefficients (`Z` and `Q` agree).
pub fn rank(m: &SparseMatrix, coeff: Coeff) -> usize {
    let (rows, width) = lines(m);
    match coeff {
        Coeff::Z2 => elim::eliminate(rows, width, Arith::Mod2).unit_pivots,
        Coeff::Z | Coeff::Q => {
            let red = elim::eliminate(rows, width, Arith::Integer);
            red.unit_pivots + dense_rank(residual_dense(&red.residual))
        }
    }
}

/// Nonzero invariant factors of `m` over `Z`, as a divisibility chain.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let (rows, width) = lines(m);
    let red = elim::eliminate(rows, width, Arith::Integer);
    let mut out = vec![BigInt::one(); red.unit_pivots];
    out.extend(dense_invariants(residual_dense(&red.residual)));
    divisibility_chain(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, written as decimal strings.
    #[serde(serialize_with = "crate::io::ser_bigints")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form of a dense integer matrix.
pub fn smith_normal_form(rows: &[Vec<BigInt>]) -> SmithForm {
    let small: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_i64().filter(|x| x.checked_abs().is_some()))
                .collect()
        })
        .collect();
    let diagonal = match small {
        Some(entries) => invariant_factors(&SparseMatrix::from_dense(&entries)),
        None => dense_invariants(rows.to_vec()),
    };
    SmithForm {
        rank: diagonal.len(),
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.rank, 2);
        assert_eq!(smith_normal_form(&big(&[&[0, 0, 0]])).rank, 0);
        let id = smith_normal_form(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(id.diagonal, vec![BigInt::from(1); 3]);
    }

    #[test]
    fn huge_entries_use_dense_path() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(4);
        let s = smith_normal_form(&[
            vec![huge.clone(), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ]);
        assert_eq!(s.diagonal, vec![BigInt::from(2), huge]);
    }

    #[test]
    fn rank_by_coefficients() {
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(rank(&m, Coeff::Q), 2);
        assert_eq!(rank(&m, Coeff::Z2), 1);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn overflow_falls_back() {
        // entries that blow past i64 during elimination
        let big = 1i64 << 40;
        let m = SparseMatrix::from_dense(&[vec![1, big, 0], vec![big, 1, big], vec![0, big, 1]]);
        assert_eq!(rank(&m, Coeff::Q), 3);
        let inv = invariant_factors(&m);
        assert_eq!(inv.len(), 3);
        assert_eq!(inv[0], BigInt::from(1));
    }
}
