//! Index sets `I_{kappa,r}`, Lissajous-Chebyshev nodes, weights, cardinality
//! formulas and the decoding map from curve samples to node indices.

use std::collections::HashMap;

use crate::arith::{gcd, ParamVec, SharpFlat};
use crate::error::{Error, Result};
use crate::trig::cos_pi_ratio;

/// Integer multi-index of one node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIndex {
    pub i: Vec<usize>,
    /// Parity class `r`: `i_j ≡ kappa_j - r (mod 2)` for every `j`.
    pub r: u8,
    /// Bit `j` is set iff `0 < i_j < m_j`.
    pub face: u64,
}

impl NodeIndex {
    pub fn face_size(&self) -> u32 {
        self.face.count_ones()
    }

    /// Exact quadrature weight of this node.
    pub fn weight(&self, pv: &ParamVec) -> Weight {
        Weight { num: 1 << self.face_size(), den: 2 * pv.p() }
    }

    /// `x_j = cos(i_j pi / m_j)`.
    pub fn coords(&self, pv: &ParamVec) -> Vec<f64> {
        self.i.iter().zip(pv.m()).map(|(&i, &m)| cos_pi_ratio(i as i64, m)).collect()
    }
}

/// Face bitmask of a grid index.
pub fn face_of(pv: &ParamVec, i: &[usize]) -> u64 {
    i.iter()
        .zip(pv.m())
        .enumerate()
        .filter(|(_, (&i, &m))| i > 0 && (i as u64) < m)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// The node index with coordinates `i`, if `i` belongs to `I_kappa`.
pub fn classify(pv: &ParamVec, i: &[usize]) -> Option<NodeIndex> {
    if i.len() != pv.dim() || i.iter().zip(pv.m()).any(|(&v, &m)| v as u64 > m) {
        return None;
    }
    let r = (pv.kappa()[0] - i[0] as i64).rem_euclid(2);
    let consistent = i
        .iter()
        .enumerate()
        .all(|(j, &v)| (pv.kappa()[j] - v as i64).rem_euclid(2) == r);
    consistent.then(|| NodeIndex { i: i.to_vec(), r: r as u8, face: face_of(pv, i) })
}

/// Weight `2^{#M} / (2 p[m])`, kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    pub num: u64,
    pub den: u64,
}

impl Weight {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Lowest terms.
    pub fn reduced(self) -> (u64, u64) {
        let g = gcd(self.num, self.den);
        (self.num / g, self.den / g)
    }
}

/// A node with its coordinates and weight.
#[derive(Debug, Clone, PartialEq)]
pub struct NodePoint {
    pub x: Vec<f64>,
    pub weight: Weight,
    pub index: NodeIndex,
}

/// Which parity classes to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Zero,
    One,
    Both,
}

impl Parity {
    fn admits(self, r: u8) -> bool {
        match self {
            Parity::Zero => r == 0,
            Parity::One => r == 1,
            Parity::Both => true,
        }
    }
}

/// Visits every grid index of `x{0..=n_j}` in lexicographic order.
pub(crate) fn for_each_grid_index(n: &[usize], mut f: impl FnMut(&[usize])) {
    let mut i = vec![0usize; n.len()];
    loop {
        f(&i);
        let mut j = n.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if i[j] < n[j] {
                i[j] += 1;
                break;
            }
            i[j] = 0;
        }
    }
}

/// `I_{kappa,r}` in lexicographic order of `i`.
pub fn enumerate_index_set(pv: &ParamVec, parity: Parity) -> Vec<NodeIndex> {
    let n: Vec<usize> = pv.m().iter().map(|&m| m as usize).collect();
    let mut out = Vec::new();
    for_each_grid_index(&n, |i| {
        if let Some(node) = classify(pv, i) {
            if parity.admits(node.r) {
                out.push(node);
            }
        }
    });
    out
}

/// `#I_{kappa,r}` from the closed-form product.
pub fn cardinality_formula(pv: &ParamVec, r: u8) -> u64 {
    let mut prod = 1u64;
    for j in 0..pv.dim() {
        let m = pv.m()[j];
        let s = m % 2;
        let t = (pv.kappa()[j] - r as i64).rem_euclid(2) as u64;
        prod *= m + 2 + 2 * s * t - s - 2 * t;
    }
    prod >> pv.dim()
}

/// `#I_{kappa,M,r}` from the closed-form product; `face` is a bitmask of `M`.
pub fn face_cardinality_formula(pv: &ParamVec, face: u64, r: u8) -> u64 {
    let mut prod = 1u64;
    for j in 0..pv.dim() {
        let m = pv.m()[j] as i64;
        let s = m % 2;
        let t = (pv.kappa()[j] - r as i64).rem_euclid(2);
        let factor = if face >> j & 1 == 1 { m - 2 + s + 2 * t - 2 * s * t } else { 2 - s - 2 * t + 2 * s * t };
        if factor <= 0 {
            return 0;
        }
        prod *= factor as u64;
    }
    prod >> face.count_ones()
}

/// The full node set with a lookup from grid index to position.
#[derive(Debug, Clone)]
pub struct NodeSet {
    pv: ParamVec,
    nodes: Vec<NodeIndex>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl NodeSet {
    pub fn new(pv: &ParamVec) -> Self {
        let nodes = enumerate_index_set(pv, Parity::Both);
        let lookup = nodes.iter().enumerate().map(|(k, n)| (n.i.clone(), k)).collect();
        NodeSet { pv: pv.clone(), nodes, lookup }
    }

    pub fn params(&self) -> &ParamVec {
        &self.pv
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeIndex] {
        &self.nodes
    }

    pub fn position(&self, i: &[usize]) -> Option<usize> {
        self.lookup.get(i).copied()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.nodes.iter().map(|n| n.weight(&self.pv).value()).collect()
    }

    pub fn points(&self) -> Vec<NodePoint> {
        self.nodes
            .iter()
            .map(|n| NodePoint { x: n.coords(&self.pv), weight: n.weight(&self.pv), index: n.clone() })
            .collect()
    }
}

/// All nodes with coordinates and weights, in lexicographic index order.
pub fn node_points(pv: &ParamVec) -> Vec<NodePoint> {
    NodeSet::new(pv).points()
}

/// Node index reached by the curve with parameter `rho` at sample `l`.
pub fn decode(pv: &ParamVec, sf: &SharpFlat, l: u64, rho: &[u64]) -> Result<NodeIndex> {
    let d = pv.dim();
    if rho.len() != d || sf.m_sharp.len() != d {
        return Err(Error::Domain("rho and decomposition must match the dimension".into()));
    }
    if l >= 2 * sf.sharp_product() {
        return Err(Error::Domain(format!("sample index {l} outside 0..{}", 2 * sf.sharp_product())));
    }
    if let Some(j) = (0..d).find(|&j| rho[j] >= sf.m_flat[j]) {
        return Err(Error::Domain(format!("rho_{} = {} outside 0..{}", j + 1, rho[j], sf.m_flat[j])));
    }
    let i: Vec<usize> = (0..d)
        .map(|j| {
            let m2 = 2 * pv.m()[j] as i128;
            let a = (l as i128 - 2 * rho[j] as i128 * sf.m_sharp[j] as i128 - pv.kappa()[j] as i128).rem_euclid(m2);
            a.min(m2 - a) as usize
        })
        .collect();
    Ok(NodeIndex { face: face_of(pv, &i), r: (l % 2) as u8, i })
}

/// Node family for pairwise coprime `n`.
pub fn padua_like(n: &[u64], kappa: &[i64]) -> Result<ParamVec> {
    for a in 0..n.len() {
        for b in a + 1..n.len() {
            if gcd(n[a], n[b]) != 1 {
                return Err(Error::Domain(format!(
                    "n_{} = {} and n_{} = {} are not coprime",
                    a + 1,
                    n[a],
                    b + 1,
                    n[b]
                )));
            }
        }
    }
    ParamVec::new(n.to_vec(), kappa.to_vec())
}

/// Node family with all frequencies equal to `m`.
pub fn mpx(m: u64, d: usize, kappa: &[i64]) -> Result<ParamVec> {
    ParamVec::new(vec![m; d], kappa.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sharp_flat_decompose;

    fn pv(m: &[u64], k: &[i64]) -> ParamVec {
        ParamVec::new(m.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn index_set_sizes() {
        let p = pv(&[10, 5], &[0, 0]);
        assert_eq!(enumerate_index_set(&p, Parity::Zero).len(), 18);
        assert_eq!(enumerate_index_set(&p, Parity::One).len(), 15);
        let all: Vec<Vec<usize>> =
            enumerate_index_set(&pv(&[2], &[0]), Parity::Both).into_iter().map(|n| n.i).collect();
        assert_eq!(all, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(cardinality_formula(&pv(&[10, 5], &[0, 0]), 0), 18);
        assert_eq!(cardinality_formula(&pv(&[4, 4], &[0, 0]), 0), 9);
        assert_eq!(cardinality_formula(&pv(&[4, 4], &[0, 0]), 1), 4);
        assert_eq!(cardinality_formula(&pv(&[1], &[0]), 0), 1);
    }

    #[test]
    fn face_cardinality_examples() {
        let p = pv(&[10, 5], &[0, 0]);
        // i_1 in {1,3,5,7,9}, i_2 in {1,3}
        assert_eq!(face_cardinality_formula(&p, 0b11, 1), 10);
        // corners (0,0) and (10,0)
        assert_eq!(face_cardinality_formula(&p, 0, 0), 2);
        assert_eq!(face_cardinality_formula(&pv(&[2], &[0]), 1, 1), 1);
    }

    #[test]
    fn points_and_weights() {
        let pts = node_points(&pv(&[2], &[0]));
        let xs: Vec<f64> = pts.iter().map(|p| p.x[0]).collect();
        let ws: Vec<(u64, u64)> = pts.iter().map(|p| p.weight.reduced()).collect();
        assert_eq!(xs, vec![1.0, 0.0, -1.0]);
        assert_eq!(ws, vec![(1, 4), (1, 2), (1, 4)]);
        let pts = node_points(&pv(&[10, 5], &[0, 0]));
        assert_eq!(pts.len(), 33);
        assert_eq!(pts[0].x, vec![1.0, 1.0]);
        assert_eq!(pts[0].weight.reduced(), (1, 100));
    }

    #[test]
    fn decode_examples() {
        let p = pv(&[10, 5], &[0, 0]);
        let sf = sharp_flat_decompose(p.m());
        assert_eq!(decode(&p, &sf, 0, &[0, 0]).unwrap().i, vec![0, 0]);
        // a_1 = 7, a_2 = (7 - 20) mod 10 = 7 -> 3
        let n = decode(&p, &sf, 7, &[0, 2]).unwrap();
        assert_eq!((n.i.clone(), n.r), (vec![7, 3], 1));
        assert!(decode(&p, &sf, 20, &[0, 0]).is_err());
        assert!(decode(&p, &sf, 0, &[0, 5]).is_err());
    }

    #[test]
    fn special_families() {
        assert_eq!(NodeSet::new(&padua_like(&[5, 6], &[0, 0]).unwrap()).len(), 21);
        assert_eq!(NodeSet::new(&padua_like(&[3, 4, 5], &[0, 0, 0]).unwrap()).len(), 30);
        assert!(padua_like(&[2, 4], &[0, 0]).is_err());
        assert_eq!(NodeSet::new(&mpx(4, 2, &[0, 0]).unwrap()).len(), 13);
        assert_eq!(NodeSet::new(&mpx(5, 2, &[0, 0]).unwrap()).len(), 18);
        assert_eq!(NodeSet::new(&mpx(4, 3, &[0, 0, 0]).unwrap()).len(), 35);
    }
}
