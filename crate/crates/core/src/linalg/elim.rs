//! Sparse elimination on unit pivots.
//!
//! Every step picks an entry `±1` (any nonzero entry mod 2), clears its column
//! with row operations and then drops the pivot row and column, which is a
//! column operation that touches nothing else. Both steps are unimodular, so the
//! Smith form of the input equals `I_pivots ⊕ SNF(residual)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Integer,
    Mod2,
}

pub struct Reduced {
    pub unit_pivots: usize,
    /// Nonzero rows left over, in the original column coordinates.
    pub residual: Vec<Vec<(u32, i64)>>,
    /// Set when an `i64` overflow stopped elimination early.
    #[cfg_attr(not(test), allow(dead_code))]
    pub overflowed: bool,
}

fn is_unit(v: i64, arith: Arith) -> bool {
    match arith {
        Arith::Integer => v == 1 || v == -1,
        Arith::Mod2 => v & 1 == 1,
    }
}

/// `target - factor * src`, along with the columns that were not in `target`.
fn axpy(target: &[(u32, i64)], factor: i64, src: &[(u32, i64)], arith: Arith) -> Option<(Vec<(u32, i64)>, Vec<u32>)> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let mut fills = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let tc = target.get(i).map_or(u32::MAX, |e| e.0);
        let sc = src.get(j).map_or(u32::MAX, |e| e.0);
        if tc < sc {
            out.push(target[i]);
            i += 1;
            continue;
        }
        let scaled = match arith {
            Arith::Integer => src[j].1.checked_mul(factor)?,
            Arith::Mod2 => 1,
        };
        if sc < tc {
            let v = match arith {
                Arith::Integer => scaled.checked_neg()?,
                Arith::Mod2 => 1,
            };
            out.push((sc, v));
            fills.push(sc);
            j += 1;
        } else {
            let v = match arith {
                Arith::Integer => target[i].1.checked_sub(scaled)?,
                Arith::Mod2 => 0,
            };
            if v != 0 {
                out.push((tc, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some((out, fills))
}

/// Eliminates unit pivots from `lines` (rows of a matrix with `width` columns).
pub fn eliminate(lines: Vec<Vec<(u32, i64)>>, width: usize, arith: Arith) -> Reduced {
    let mut rows: Vec<Vec<(u32, i64)>> = match arith {
        Arith::Integer => lines,
        Arith::Mod2 => lines
            .into_iter()
            .map(|r| r.into_iter().filter(|e| e.1 & 1 == 1).map(|(c, _)| (c, 1)).collect())
            .collect(),
    };
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); width];
    let mut heap = BinaryHeap::new();
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
        if !row.is_empty() {
            heap.push(Reverse((row.len(), r as u32)));
        }
    }

    let mut pivots = 0;
    let mut overflowed = false;
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !alive[r] || rows[r].len() != len {
            continue;
        }
        let pick = rows[r]
            .iter()
            .filter(|e| is_unit(e.1, arith))
            .min_by_key(|e| col_rows[e.0 as usize].len())
            .copied();
        let Some((pc, pv)) = pick else { continue };

        let mut others = std::mem::take(&mut col_rows[pc as usize]);
        others.sort_unstable();
        others.dedup();
        let mut updates = Vec::new();
        for &r2 in &others {
            let r2 = r2 as usize;
            if r2 == r || !alive[r2] {
                continue;
            }
            let Ok(pos) = rows[r2].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = rows[r2][pos].1 * pv;
            match axpy(&rows[r2], factor, &rows[r], arith) {
                Some(update) => updates.push((r2, update)),
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed {
            col_rows[pc as usize] = others;
            break;
        }
        alive[r] = false;
        rows[r] = Vec::new();
        pivots += 1;
        for (r2, (row, fills)) in updates {
            for c in fills {
                col_rows[c as usize].push(r2 as u32);
            }
            if !row.is_empty() {
                heap.push(Reverse((row.len(), r2 as u32)));
            }
            rows[r2] = row;
        }
    }

    let residual = rows
        .into_iter()
        .zip(alive)
        .filter(|(row, alive)| *alive && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    Reduced {
        unit_pivots: pivots,
        residual,
        overflowed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_all_pivots() {
        let rows = (0..5).map(|i| vec![(i, 1)]).collect();
        let red = eliminate(rows, 5, Arith::Integer);
        assert_eq!(red.unit_pivots, 5);
        assert!(red.residual.is_empty());
    }

    #[test]
    fn non_unit_survives() {
        // [[2, 0], [0, 1]]
        let red = eliminate(vec![vec![(0, 2)], vec![(1, 1)]], 2, Arith::Integer);
        assert_eq!(red.unit_pivots, 1);
        assert_eq!(red.residual, vec![vec![(0, 2)]]);
        let red = eliminate(vec![vec![(0, 2)], vec![(1, 1)]], 2, Arith::Mod2);
        assert_eq!(red.unit_pivots, 1);
        assert!(red.residual.is_empty());
    }

    #[test]
    fn fill_in_is_tracked() {
        // rows 0: x0 + x1, 1: x0 + x2, 2: x1 - x2 ; rank 2 over Z
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (2, 1)], vec![(1, 1), (2, -1)]];
        let red = eliminate(rows, 3, Arith::Integer);
        assert_eq!(red.unit_pivots, 2);
        assert!(red.residual.is_empty());
    }

    #[test]
    fn overflow_stops_early() {
        let big = 1i64 << 62;
        let rows = vec![vec![(0, 1), (1, big)], vec![(0, big), (1, 3)]];
        let red = eliminate(rows, 2, Arith::Integer);
        assert!(red.overflowed);
        assert_eq!(red.unit_pivots + red.residual.len(), 2);
        assert!(!eliminate(vec![vec![(0, 1)]], 1, Arith::Integer).overflowed);
    }
}
