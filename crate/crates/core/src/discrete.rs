//! Cosine functions `chi_gamma` on the index set, the discrete measure given
//! by the node weights, inner products and the aliasing criterion.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::arith::ParamVec;
use crate::error::{list_indices, Error, Result};
use crate::exec::Execution;
use crate::nodes::NodeSet;
use crate::spectral::{e_count, f_count, ClassDecomposition, SpectralIndex};
use crate::trig::{cos_pi_ratio, cos_table};

/// `prod_j cos(gamma_j i_j pi / m_j)`.
pub fn chi(pv: &ParamVec, g: &[usize], i: &[usize]) -> f64 {
    (0..pv.dim()).map(|j| cos_pi_ratio((g[j] * i[j]) as i64, pv.m()[j])).product()
}

/// Values of `chi_gamma` at every node, in node-set order.
pub fn chi_vector(nodes: &NodeSet, g: &[usize]) -> Vec<f64> {
    let pv = nodes.params();
    let tables: Vec<Vec<f64>> = pv.m().iter().map(|&m| cos_table(m)).collect();
    nodes
        .nodes()
        .iter()
        .map(|n| {
            (0..pv.dim())
                .map(|j| {
                    let m2 = 2 * pv.m()[j] as usize;
                    tables[j][(g[j] * n.i[j]) % m2]
                })
                .product()
        })
        .collect()
}

/// Scalars a grid function may take.
pub trait Scalar: Copy + Send + Sync + PartialEq + std::fmt::Debug + 'static {
    fn conj(self) -> Self;
    fn to_complex(self) -> Complex64;
    fn from_complex(z: Complex64) -> Self;
}

impl Scalar for f64 {
    fn conj(self) -> Self {
        self
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
}

impl Scalar for Complex64 {
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

/// A value at every node of one node set, stored in node-set order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    pv: ParamVec,
    values: Vec<T>,
}

impl<T: Scalar> GridFunction<T> {
    /// Values listed in node-set order.
    pub fn from_values(nodes: &NodeSet, values: Vec<T>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::InvalidParams(format!(
                "expected {} values, got {}",
                nodes.len(),
                values.len()
            )));
        }
        Ok(GridFunction { pv: nodes.params().clone(), values })
    }

    pub fn from_fn(nodes: &NodeSet, f: impl Fn(&[usize]) -> T) -> Self {
        GridFunction { pv: nodes.params().clone(), values: nodes.nodes().iter().map(|n| f(&n.i)).collect() }
    }

    /// Values keyed by index; the keys must be exactly the node indices.
    pub fn from_pairs(nodes: &NodeSet, pairs: impl IntoIterator<Item = (Vec<usize>, T)>) -> Result<Self> {
        let mut slots: Vec<Option<T>> = vec![None; nodes.len()];
        let mut extra = Vec::new();
        let mut dup = Vec::new();
        for (i, v) in pairs {
            match nodes.position(&i) {
                Some(k) if slots[k].is_some() => dup.push(i),
                Some(k) => slots[k] = Some(v),
                None => extra.push(i),
            }
        }
        if !dup.is_empty() {
            return Err(Error::DuplicateValues(list_indices(&dup)));
        }
        if !extra.is_empty() {
            return Err(Error::ExtraValues(list_indices(&extra)));
        }
        let missing: Vec<Vec<usize>> =
            nodes.nodes().iter().zip(&slots).filter(|(_, s)| s.is_none()).map(|(n, _)| n.i.clone()).collect();
        if !missing.is_empty() {
            return Err(Error::MissingValues(missing.len(), list_indices(&missing)));
        }
        Ok(GridFunction { pv: nodes.params().clone(), values: slots.into_iter().map(Option::unwrap).collect() })
    }

    pub fn params(&self) -> &ParamVec {
        &self.pv
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// `sum_i h1(i) conj(h2(i)) w_i`.
pub fn discrete_inner<T: Scalar>(nodes: &NodeSet, h1: &GridFunction<T>, h2: &GridFunction<T>) -> Result<T> {
    if &h1.pv != nodes.params() || &h2.pv != nodes.params() {
        return Err(Error::DomainMismatch);
    }
    let (mut re, mut im) = (CompensatedSum::default(), CompensatedSum::default());
    for ((a, b), w) in h1.values.iter().zip(&h2.values).zip(nodes.weights()) {
        let z = a.to_complex() * b.conj().to_complex() * w;
        re.add(z.re);
        im.add(z.im);
    }
    Ok(T::from_complex(Complex64::new(re.value(), im.value())))
}

/// Weighted dot product of two real node vectors.
pub fn weighted_dot(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    a.iter().zip(b).zip(w).map(|((x, y), w)| x * y * w).collect::<CompensatedSum>().value()
}

/// Squared discrete norm of `chi_gamma` on `Gamma_bar`: `2^{f - e}`, or `1` on
/// the class of zero.
pub fn chi_norm_sq(cd: &ClassDecomposition, g: &SpectralIndex) -> f64 {
    if cd.in_zero_class(g) {
        1.0
    } else {
        let pv = cd.params();
        2f64.powi(f_count(pv, &g.0) as i32 - e_count(&g.0) as i32)
    }
}

/// `Some(theta)` if `gamma = h m` componentwise with `sum h` even, in which case
/// the discrete integral of `chi_gamma` is `(-1)^theta`; otherwise `None` and
/// the integral vanishes.
pub fn is_alias(pv: &ParamVec, g: &[usize]) -> Option<u8> {
    let mut h_sum = 0u64;
    let mut theta = 0u64;
    for j in 0..pv.dim() {
        let m = pv.m()[j];
        if !(g[j] as u64).is_multiple_of(m) {
            return None;
        }
        let h = g[j] as u64 / m;
        h_sum += h;
        theta += h * pv.kappa_parity(j);
    }
    h_sum.is_multiple_of(2).then_some((theta % 2) as u8)
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }
}

/// Discrete inner products `<chi_a, chi_b>` for all pairs of `gammas`.
pub fn gram_matrix(nodes: &NodeSet, gammas: &[SpectralIndex], exec: Execution) -> Matrix {
    let w = nodes.weights();
    let table: Vec<Vec<f64>> = exec.map(gammas.len(), |k| chi_vector(nodes, &gammas[k].0));
    let n = gammas.len();
    let rows = exec.map(n, |r| (0..n).map(|c| weighted_dot(&table[r], &table[c], &w)).collect::<Vec<_>>());
    Matrix { n, data: rows.concat() }
}

/// Position of each spectral index in a slice.
pub fn position_map(gammas: &[SpectralIndex]) -> HashMap<&SpectralIndex, usize> {
    gammas.iter().enumerate().map(|(k, g)| (g, k)).collect()
}
