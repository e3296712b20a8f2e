//! Integer partitions and the signed subgraph counts `C_I`.
//!
//! `C_I` sums `(-1)^{|E(Γ)|}` over spanning subgraphs `Γ` of the complete graph
//! on `k` vertices whose connected components have sizes given by `I`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A partition of `k`, parts in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into canonical order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadParameter(format!("invalid partition {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts `s`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, r)) if *q == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.pad(&format!("({})", parts.join(",")))
    }
}

/// All partitions of `k`, in lexicographically descending order.
pub fn partitions(k: u32) -> Result<Vec<Partition>> {
    if k == 0 {
        return Err(Error::BadParameter("k must be >= 1".into()));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(k, k, &mut current, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        current.push(p);
        fill(rest - p, p, current, out);
        current.pop();
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `k! / (prod r_i! * prod k_i)`: permutations of `[k]` with cycle type `I`.
pub fn cycle_type_count(partition: &Partition) -> BigInt {
    let denom = partition
        .multiplicities()
        .iter()
        .fold(BigInt::one(), |acc, &(_, r)| acc * factorial(r))
        * partition.parts().iter().fold(BigInt::one(), |acc, &p| acc * p);
    factorial(partition.k()) / denom
}

/// Closed form `k!(-1)^{k-s} / (prod r_i! * prod k_i)`.
pub fn coeff_closed(partition: &Partition) -> BigInt {
    let count = cycle_type_count(partition);
    if (partition.k() as usize - partition.len()) % 2 == 1 {
        -count
    } else {
        count
    }
}

/// Number of set partitions of `[k]` whose block sizes form `I`:
/// `k! / (prod k_i! * prod r_i!)`.
pub fn set_partition_count(partition: &Partition) -> BigInt {
    let denom = partition
        .multiplicities()
        .iter()
        .fold(BigInt::one(), |acc, &(_, r)| acc * factorial(r))
        * partition
            .parts()
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(partition.k()) / denom
}

/// Connected-component structure of one spanning subgraph of `K_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphSummary {
    pub edge_subset: Vec<(u32, u32)>,
    pub component_size_partition: Partition,
    /// Vertex sets of the components, each sorted, listed by smallest vertex.
    pub components: Vec<Vec<u32>>,
    pub edge_count: usize,
}

fn edges_of(k: u32) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    edges
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Components of the spanning subgraph of `K_k` selected by `mask` over
/// [`edges_of`]. Vertices are `1..=k` in the summary.
pub fn summarize_subgraph(k: u32, mask: u64) -> SubgraphSummary {
    let edges = edges_of(k);
    let mut parent: Vec<u32> = (0..k).collect();
    let mut chosen = Vec::new();
    for (bit, &(a, b)) in edges.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            chosen.push((a + 1, b + 1));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb) as usize] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in 0..k {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v + 1);
    }
    let components: Vec<Vec<u32>> = groups.into_values().collect();
    let sizes = components.iter().map(|c| c.len() as u32).collect();
    SubgraphSummary {
        edge_count: chosen.len(),
        edge_subset: chosen,
        component_size_partition: Partition::new(sizes).expect("k >= 1"),
        components,
    }
}

pub const BRUTE_FORCE_MAX_K: u32 = 6;

/// Enumerates all `2^{C(k,2)}` edge subsets of `K_k` and buckets the signs by
/// component-size partition.
pub fn coeff_bruteforce(k: u32) -> Result<BTreeMap<Partition, BigInt>> {
    if k > BRUTE_FORCE_MAX_K {
        return Err(Error::TooLarge(k));
    }
    if k < 1 {
        return Err(Error::BadParameter("k must be >= 1".into()));
    }
    let edge_count = k * (k - 1) / 2;
    let buckets: BTreeMap<Partition, i64> = (0..1u64 << edge_count)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Partition, i64>, mask| {
            let summary = summarize_subgraph(k, mask);
            let sign = if summary.edge_count.is_multiple_of(2) { 1 } else { -1 };
            *acc.entry(summary.component_size_partition).or_insert(0) += sign;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        });
    Ok(buckets.into_iter().map(|(p, v)| (p, BigInt::from(v))).collect())
}

/// Coefficients of the falling factorial `x(x-1)...(x-k+1)`, index = power of `x`.
pub fn falling_factorial_coefficients(k: u32) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for l in 0..k {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * l;
        }
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(1).unwrap(), vec![p(&[1])]);
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert_eq!(partitions(7).unwrap().len(), 15);
        assert!(partitions(0).is_err());
        let four: Vec<String> = partitions(4).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn closed_form_values() {
        for k in 1..9u32 {
            let expected = factorial(k - 1) * if (k - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(coeff_closed(&p(&[k])), expected);
            assert_eq!(coeff_closed(&Partition(vec![1; k as usize])), BigInt::one());
        }
        assert_eq!(coeff_closed(&p(&[2, 1])), BigInt::from(-3));
    }

    #[test]
    fn brute_force_small() {
        let k2 = coeff_bruteforce(2).unwrap();
        assert_eq!(k2[&p(&[1, 1])], BigInt::from(1));
        assert_eq!(k2[&p(&[2])], BigInt::from(-1));
        let k3 = coeff_bruteforce(3).unwrap();
        assert_eq!(k3.len(), 3);
        assert_eq!(k3[&p(&[1, 1, 1])], BigInt::from(1));
        assert_eq!(k3[&p(&[2, 1])], BigInt::from(-3));
        assert_eq!(k3[&p(&[3])], BigInt::from(2));
        assert_eq!(coeff_bruteforce(4).unwrap()[&p(&[2, 2])], BigInt::from(3));
        assert!(matches!(coeff_bruteforce(7), Err(Error::TooLarge(7))));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type_count(&p(&[5])), BigInt::from(24));
        assert_eq!(cycle_type_count(&p(&[1, 1, 1])), BigInt::one());
        assert_eq!(cycle_type_count(&p(&[2, 2])), BigInt::from(3));
        // cycle types partition the symmetric group
        for k in 1..9 {
            let total: BigInt = partitions(k).unwrap().iter().map(cycle_type_count).sum();
            assert_eq!(total, factorial(k));
        }
    }

    #[test]
    fn subgraph_components() {
        // edges of K_4 in order: 12 13 14 23 24 34; pick 12 and 34
        let s = summarize_subgraph(4, 0b100001);
        assert_eq!(s.edge_subset, vec![(1, 2), (3, 4)]);
        assert_eq!(s.components, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(s.component_size_partition, p(&[2, 2]));
        let empty = summarize_subgraph(3, 0);
        assert_eq!(empty.component_size_partition, p(&[1, 1, 1]));
    }

    #[test]
    fn falling_factorial() {
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        let c = falling_factorial_coefficients(3);
        assert_eq!(
            c,
            vec![BigInt::zero(), BigInt::from(2), BigInt::from(-3), BigInt::one()]
        );
    }

    proptest! {
        #[test]
        fn sign_and_magnitude(k in 1u32..11) {
            for part in partitions(k).unwrap() {
                let c = coeff_closed(&part);
                let mag = cycle_type_count(&part);
                let sign_positive = (k as usize - part.len()).is_multiple_of(2);
                prop_assert_eq!(c.clone(), if sign_positive { mag } else { -mag });
            }
        }

        #[test]
        fn partitions_sum_to_k(k in 1u32..16) {
            for part in partitions(k).unwrap() {
                prop_assert_eq!(part.k(), k);
                prop_assert!(part.parts().windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}
