//! Generating Lissajous curves, their degeneracy and equivalence classes, and
//! the Chebyshev variety they lie on.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::arith::{crt_solve, ParamVec, SharpFlat};
use crate::error::{Error, Result};
use crate::interp::cheb_t1;
use crate::nodes::{decode, NodeIndex, NodePoint, NodeSet};

/// One curve `t -> (u_j cos((lcm(m) t - xi_j pi) / m_j))_j` of the family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub rho: Vec<u64>,
    /// `xi_j = 2 rho_j m_sharp_j + kappa_j`.
    pub xi: Vec<i64>,
    pub u: Vec<i8>,
}

impl CurveSpec {
    pub fn new(pv: &ParamVec, sf: &SharpFlat, rho: Vec<u64>) -> Self {
        let xi = (0..pv.dim())
            .map(|j| 2 * rho[j] as i64 * sf.m_sharp[j] as i64 + pv.kappa()[j])
            .collect();
        CurveSpec { rho, xi, u: vec![1; pv.dim()] }
    }

    /// Floating-point curve point at parameter `t`.
    pub fn point(&self, pv: &ParamVec, t: f64) -> Vec<f64> {
        let l = pv.lcm() as f64;
        (0..pv.dim())
            .map(|j| self.u[j] as f64 * ((l * t - self.xi[j] as f64 * PI) / pv.m()[j] as f64).cos())
            .collect()
    }
}

/// Every `rho` in `x{0..m_flat_j - 1}`, lexicographically.
pub fn rho_range(sf: &SharpFlat) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &f in &sf.m_flat {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..f).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// One curve per `rho`, in lexicographic order of `rho`.
pub fn curve_family(pv: &ParamVec, sf: &SharpFlat) -> Vec<CurveSpec> {
    rho_range(sf).into_iter().map(|rho| CurveSpec::new(pv, sf, rho)).collect()
}

/// CGL grid index of the curve point at `t_l = l pi / lcm(m)`.
///
/// For `u = 1` this is the node index returned by [`decode`]; a negative sign
/// mirrors the coordinate to `m_j - i_j`.
pub fn sample_curve(pv: &ParamVec, sf: &SharpFlat, c: &CurveSpec, l: u64) -> Result<Vec<usize>> {
    let node = decode(pv, sf, l, &c.rho)?;
    Ok(node
        .i
        .iter()
        .enumerate()
        .map(|(j, &i)| if c.u[j] < 0 { pv.m()[j] as usize - i } else { i })
        .collect())
}

/// `l_dagger`: the solution of `l ≡ kappa_j mod m_sharp_j` in `0..p[m_sharp]`.
pub fn l_dagger(pv: &ParamVec, sf: &SharpFlat) -> u64 {
    crt_solve(&sf.m_sharp, pv.kappa()).expect("sharp parts are pairwise coprime")
}

/// The partner parameter whose curve has the same image.
pub fn rho_dagger(pv: &ParamVec, sf: &SharpFlat, rho: &[u64]) -> Vec<u64> {
    let ld = l_dagger(pv, sf) as i64;
    (0..pv.dim())
        .map(|j| {
            let s = sf.m_sharp[j] as i64;
            let diff = ld - pv.kappa()[j];
            debug_assert_eq!(diff.rem_euclid(s), 0);
            (diff.div_euclid(s) - rho[j] as i64).rem_euclid(sf.m_flat[j] as i64) as u64
        })
        .collect()
}

/// Number of degenerate curves from the case analysis on even frequencies
/// and shift parities.
pub fn n_deg_closed_form(pv: &ParamVec) -> u64 {
    let even: Vec<usize> = (0..pv.dim()).filter(|&j| pv.m()[j].is_multiple_of(2)).collect();
    if even.is_empty() {
        return 1;
    }
    let k0 = even.iter().filter(|&&j| pv.kappa_parity(j) == 0).count() as u32;
    let k1 = even.len() as u32 - k0;
    match (k0, k1) {
        (0, k) | (k, 0) => 1 << (k - 1),
        _ => 0,
    }
}

/// A pair `{rho, rho_dagger}` of parameters of equivalent curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    /// One entry if degenerate, otherwise `rho` and its partner, smaller first.
    pub members: Vec<Vec<u64>>,
}

impl CurveClass {
    pub fn degenerate(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClassification {
    pub n_deg: u64,
    /// Ordered by smallest member.
    pub classes: Vec<CurveClass>,
    /// For each curve of [`curve_family`], its class position.
    pub class_of: Vec<usize>,
    /// For each curve of [`curve_family`], its partner parameter.
    pub partner: Vec<Vec<u64>>,
}

pub fn classify_curves(pv: &ParamVec, sf: &SharpFlat) -> CurveClassification {
    let rhos = rho_range(sf);
    let partner: Vec<Vec<u64>> = rhos.iter().map(|r| rho_dagger(pv, sf, r)).collect();
    let mut classes = Vec::new();
    let mut class_of = vec![usize::MAX; rhos.len()];
    for (k, rho) in rhos.iter().enumerate() {
        if class_of[k] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[k] = id;
        if &partner[k] == rho {
            classes.push(CurveClass { members: vec![rho.clone()] });
        } else {
            let other = rhos.binary_search(&partner[k]).expect("partner lies in the parameter range");
            class_of[other] = id;
            classes.push(CurveClass { members: vec![rho.clone(), partner[k].clone()] });
        }
    }
    let n_deg = classes.iter().filter(|c| c.degenerate()).count() as u64;
    CurveClassification { n_deg, classes, class_of, partner }
}

/// Sample indices `l` at which the curve passes through a vertex of the
/// hypercube, with the vertex as a sign vector.
pub fn curve_vertices(pv: &ParamVec, sf: &SharpFlat, c: &CurveSpec) -> Vec<(u64, Vec<i8>)> {
    (0..2 * sf.sharp_product())
        .filter_map(|l| {
            let i = sample_curve(pv, sf, c, l).ok()?;
            let corner = i.iter().zip(pv.m()).all(|(&v, &m)| v == 0 || v as u64 == m);
            corner.then(|| (l, i.iter().map(|&v| if v == 0 { 1 } else { -1 }).collect()))
        })
        .collect()
}

/// Image of the curve sampled at `t = k pi / (refine * lcm(m))`, as CGL grid
/// indices of the refined grids `cos(a pi / (refine * m_j))`.
pub fn refined_trace(pv: &ParamVec, c: &CurveSpec, refine: u64) -> BTreeSet<Vec<u64>> {
    let period = 2 * refine * pv.lcm();
    (0..period)
        .map(|k| {
            (0..pv.dim())
                .map(|j| {
                    let m2 = 2 * refine as i128 * pv.m()[j] as i128;
                    let a = (k as i128 - refine as i128 * c.xi[j] as i128).rem_euclid(m2);
                    let a = a.min(m2 - a) as u64;
                    if c.u[j] < 0 {
                        refine * pv.m()[j] - a
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect()
}

/// Whether two curves trace the same point set, compared exactly on a refined
/// sampling grid.
pub fn curves_equivalent(pv: &ParamVec, a: &CurveSpec, b: &CurveSpec, refine: u64) -> bool {
    refined_trace(pv, a, refine) == refined_trace(pv, b, refine)
}

/// `max_j |(-1)^{kappa_1} T_{m_1}(x_1) - (-1)^{kappa_j} T_{m_j}(x_j)|`.
pub fn variety_residual(pv: &ParamVec, x: &[f64]) -> Result<f64> {
    if x.len() != pv.dim() {
        return Err(Error::Domain(format!("point has {} coordinates, expected {}", x.len(), pv.dim())));
    }
    let signed = |j: usize| -> Result<f64> {
        let t = cheb_t1(pv.m()[j] as usize, x[j])?;
        Ok(if pv.kappa_parity(j) == 1 { -t } else { t })
    };
    let first = signed(0)?;
    (1..pv.dim()).try_fold(0.0f64, |acc, j| Ok(acc.max((first - signed(j)?).abs())))
}

/// Nodes with at least two interior coordinates.
pub fn singular_points(pv: &ParamVec) -> Vec<NodePoint> {
    if pv.dim() < 2 {
        return Vec::new();
    }
    NodeSet::new(pv).points().into_iter().filter(|p| p.index.face_size() >= 2).collect()
}

/// Singular node indices, without coordinates.
pub fn singular_indices(pv: &ParamVec) -> Vec<NodeIndex> {
    singular_points(pv).into_iter().map(|p| p.index).collect()
}

/// `samples` equispaced points `(t, x(t))` over one period `[0, 2 pi)`.
pub fn polyline(pv: &ParamVec, c: &CurveSpec, samples: usize) -> Vec<(f64, Vec<f64>)> {
    (0..samples)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / samples as f64;
            (t, c.point(pv, t))
        })
        .collect()
}
