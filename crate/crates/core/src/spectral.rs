//! Spectral index sets, reflections and the class decomposition of the
//! extended index set `Gamma_bar`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::{gcd, ParamVec};
use crate::error::{Error, Result};
use crate::nodes::for_each_grid_index;

/// Frequency multi-index; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralIndex(pub Vec<usize>);

impl SpectralIndex {
    pub fn zero(d: usize) -> Self {
        SpectralIndex(vec![0; d])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for SpectralIndex {
    fn from(v: Vec<usize>) -> Self {
        SpectralIndex(v)
    }
}

impl fmt::Display for SpectralIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `gamma` in `Gamma_{kappa,r}`: `2 gamma_j <= m_j` where `kappa_j ≡ r`,
/// `2 gamma_j < m_j` elsewhere.
pub fn in_gamma_kr(pv: &ParamVec, g: &[usize], r: u8) -> bool {
    (0..pv.dim()).all(|j| {
        let (two_g, m) = (2 * g[j] as u64, pv.m()[j]);
        if pv.kappa_parity(j) == r as u64 {
            two_g <= m
        } else {
            two_g < m
        }
    })
}

/// `2 gamma_j < m_j` for all `j`, i.e. `Gamma_{0,1}`.
pub fn in_gamma_lower(pv: &ParamVec, g: &[usize]) -> bool {
    (0..pv.dim()).all(|j| 2 * (g[j] as u64) < pv.m()[j])
}

fn pair_sum(pv: &ParamVec, g: &[usize], i: usize, j: usize) -> (u128, u128) {
    let (mi, mj) = (pv.m()[i] as u128, pv.m()[j] as u128);
    (g[i] as u128 * mj + g[j] as u128 * mi, mi * mj)
}

pub fn in_gamma_bar(pv: &ParamVec, g: &[usize]) -> bool {
    let d = pv.dim();
    if (0..d).any(|j| g[j] as u64 > pv.m()[j]) {
        return false;
    }
    for i in 0..d {
        for j in i + 1..d {
            let (lhs, rhs) = pair_sum(pv, g, i, j);
            if lhs > rhs {
                return false;
            }
            let halves = 2 * g[i] as u64 == pv.m()[i] && 2 * g[j] as u64 == pv.m()[j];
            if halves && pv.kappa_parity(i) != pv.kappa_parity(j) {
                return false;
            }
        }
    }
    true
}

pub fn in_gamma_circ(pv: &ParamVec, g: &[usize]) -> bool {
    let d = pv.dim();
    (0..d).all(|j| (g[j] as u64) < pv.m()[j])
        && (0..d).all(|i| {
            (i + 1..d).all(|j| {
                let (lhs, rhs) = pair_sum(pv, g, i, j);
                lhs < rhs
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Membership {
    pub circ: bool,
    pub kappa0: bool,
    pub kappa1: bool,
    pub bar: bool,
}

pub fn membership(pv: &ParamVec, g: &[usize]) -> Membership {
    Membership {
        circ: in_gamma_circ(pv, g),
        kappa0: in_gamma_kr(pv, g, 0),
        kappa1: in_gamma_kr(pv, g, 1),
        bar: in_gamma_bar(pv, g),
    }
}

/// The four index sets, each sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSets {
    pub kappa0: Vec<SpectralIndex>,
    pub kappa1: Vec<SpectralIndex>,
    pub circ: Vec<SpectralIndex>,
    pub bar: Vec<SpectralIndex>,
}

pub fn gamma_sets(pv: &ParamVec) -> GammaSets {
    let n: Vec<usize> = pv.m().iter().map(|&m| m as usize).collect();
    let mut sets = GammaSets { kappa0: vec![], kappa1: vec![], circ: vec![], bar: vec![] };
    for_each_grid_index(&n, |g| {
        let mb = membership(pv, g);
        let gi = || SpectralIndex(g.to_vec());
        if mb.kappa0 {
            sets.kappa0.push(gi());
        }
        if mb.kappa1 {
            sets.kappa1.push(gi());
        }
        if mb.circ {
            sets.circ.push(gi());
        }
        if mb.bar {
            sets.bar.push(gi());
        }
    });
    sets
}

/// Replaces `gamma_j` by `m_j - gamma_j` (`j` zero-based).
pub fn reflect(pv: &ParamVec, g: &SpectralIndex, j: usize) -> SpectralIndex {
    let mut out = g.clone();
    out.0[j] = pv.m()[j] as usize - g.0[j];
    out
}

/// Coordinates maximizing `gamma_j / m_j`, ascending.
pub fn k_set(pv: &ParamVec, g: &[usize]) -> Vec<usize> {
    let mut best = vec![0usize];
    for j in 1..pv.dim() {
        let b = best[0];
        // gamma_j / m_j vs gamma_b / m_b
        let lhs = g[j] as u128 * pv.m()[b] as u128;
        let rhs = g[b] as u128 * pv.m()[j] as u128;
        if lhs > rhs {
            best = vec![j];
        } else if lhs == rhs {
            best.push(j);
        }
    }
    best
}

/// `{ s_k(eta) : k in K(eta) }`.
pub fn frak_s(pv: &ParamVec, eta: &SpectralIndex) -> Vec<SpectralIndex> {
    let mut out: Vec<SpectralIndex> = k_set(pv, &eta.0).into_iter().map(|k| reflect(pv, eta, k)).collect();
    out.sort();
    out
}

/// Number of positive entries.
pub fn e_count(g: &[usize]) -> u32 {
    g.iter().filter(|&&v| v > 0).count() as u32
}

/// `#{ j : 2 gamma_j = m_j } - 1`, or `0` if no coordinate sits at `m_j / 2`.
pub fn f_count(pv: &ParamVec, g: &[usize]) -> u32 {
    let halves = (0..pv.dim()).filter(|&j| 2 * g[j] as u64 == pv.m()[j]).count() as u32;
    halves.saturating_sub(1)
}

/// All pairwise gcds of `m` are at most 2.
pub fn gcd_le2_criterion(pv: &ParamVec) -> bool {
    let m = pv.m();
    (0..m.len()).all(|i| (i + 1..m.len()).all(|j| gcd(m[i], m[j]) <= 2))
}

/// `(0, ..., 0, m_d)`, the representative of the class of `0`.
pub fn gamma_star(pv: &ParamVec) -> SpectralIndex {
    let mut g = SpectralIndex::zero(pv.dim());
    *g.0.last_mut().unwrap() = *pv.m().last().unwrap() as usize;
    g
}

/// Coordinate `k` with `2 gamma_k > m_k`, if there is exactly one.
fn upper_coordinate(pv: &ParamVec, g: &[usize]) -> Option<usize> {
    let mut it = (0..pv.dim()).filter(|&j| 2 * g[j] as u64 > pv.m()[j]);
    match (it.next(), it.next()) {
        (Some(k), None) => Some(k),
        _ => None,
    }
}

/// One class of `Gamma_bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralClass {
    /// Sorted lexicographically.
    pub members: Vec<SpectralIndex>,
    pub representative: SpectralIndex,
    /// `(-1)^{kappa[rep, member]}` for each member.
    pub signs: Vec<i8>,
}

impl SpectralClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partition of `Gamma_bar` into classes, ordered by representative.
#[derive(Debug, Clone)]
pub struct ClassDecomposition {
    pv: ParamVec,
    classes: Vec<SpectralClass>,
    bar: Vec<SpectralIndex>,
    // gamma -> (class id, position within the class)
    lookup: HashMap<SpectralIndex, (usize, usize)>,
}

fn kappa_of(pv: &ParamVec, g: &[usize]) -> Option<u64> {
    upper_coordinate(pv, g).map(|k| pv.kappa_parity(k))
}

pub fn class_decomposition(pv: &ParamVec) -> ClassDecomposition {
    let bar = gamma_sets(pv).bar;
    let mut singletons = Vec::new();
    let mut grouped: BTreeMap<SpectralIndex, Vec<SpectralIndex>> = BTreeMap::new();
    for g in &bar {
        if pv.dim() == 1 || in_gamma_kr(pv, &g.0, 0) || in_gamma_kr(pv, &g.0, 1) {
            singletons.push(g.clone());
        } else {
            let k = upper_coordinate(pv, &g.0).expect("outside Gamma_kappa,r exactly one coordinate exceeds m/2");
            grouped.entry(reflect(pv, g, k)).or_default().push(g.clone());
        }
    }
    let mut classes: Vec<SpectralClass> = singletons
        .into_iter()
        .map(|g| SpectralClass { members: vec![g.clone()], representative: g, signs: vec![1] })
        .collect();
    for (eta, mut members) in grouped {
        members.sort();
        let k = *k_set(pv, &eta.0).last().unwrap();
        let rep = reflect(pv, &eta, k);
        let rep_kappa = kappa_of(pv, &rep.0).unwrap();
        let signs = members
            .iter()
            .map(|g| if kappa_of(pv, &g.0).unwrap() == rep_kappa { 1 } else { -1 })
            .collect();
        classes.push(SpectralClass { members, representative: rep, signs });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    let lookup = classes
        .iter()
        .enumerate()
        .flat_map(|(c, cls)| cls.members.iter().enumerate().map(move |(p, g)| (g.clone(), (c, p))))
        .collect();
    ClassDecomposition { pv: pv.clone(), classes, bar, lookup }
}

impl ClassDecomposition {
    pub fn params(&self) -> &ParamVec {
        &self.pv
    }

    pub fn classes(&self) -> &[SpectralClass] {
        &self.classes
    }

    /// `Gamma_bar`, lexicographically sorted.
    pub fn gamma_bar(&self) -> &[SpectralIndex] {
        &self.bar
    }

    /// The representative set `Gamma`, in class order.
    pub fn representatives(&self) -> Vec<SpectralIndex> {
        self.classes.iter().map(|c| c.representative.clone()).collect()
    }

    pub fn class_id(&self, g: &SpectralIndex) -> Option<usize> {
        self.lookup.get(g).map(|&(c, _)| c)
    }

    pub fn class_of(&self, g: &SpectralIndex) -> Option<&SpectralClass> {
        self.class_id(g).map(|c| &self.classes[c])
    }

    /// `#[gamma]`.
    pub fn class_size(&self, g: &SpectralIndex) -> Option<usize> {
        self.class_of(g).map(|c| c.len())
    }

    pub fn is_representative(&self, g: &SpectralIndex) -> bool {
        self.class_of(g).is_some_and(|c| &c.representative == g)
    }

    /// `(-1)^{kappa[gamma]}` relative to the representative of its class.
    pub fn sign_to_representative(&self, g: &SpectralIndex) -> Option<i8> {
        self.lookup.get(g).map(|&(c, p)| self.classes[c].signs[p])
    }

    /// Class of `0`: the `d` vectors `m_j e_j`.
    pub fn zero_class(&self) -> &SpectralClass {
        self.class_of(&gamma_star(&self.pv)).expect("gamma_star lies in Gamma_bar")
    }

    pub fn in_zero_class(&self, g: &SpectralIndex) -> bool {
        self.class_id(g) == self.class_id(&gamma_star(&self.pv))
    }
}

/// `(-1)^{kappa[gamma, gamma']}` for two members of one class.
pub fn kappa_sign(cd: &ClassDecomposition, g: &SpectralIndex, h: &SpectralIndex) -> Result<i8> {
    let (cg, pg) = *cd.lookup.get(g).ok_or_else(|| Error::Domain(format!("{g} is not in Gamma_bar")))?;
    let (ch, ph) = *cd.lookup.get(h).ok_or_else(|| Error::Domain(format!("{h} is not in Gamma_bar")))?;
    if cg != ch {
        return Err(Error::Domain(format!("{g} and {h} lie in different classes")));
    }
    let signs = &cd.classes[cg].signs;
    Ok(signs[pg] * signs[ph])
}
