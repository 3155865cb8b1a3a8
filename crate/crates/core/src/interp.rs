//! Chebyshev polynomials, interpolation kernels, interpolation on the nodes
//! in the plain and the averaged polynomial space, evaluation and quadrature.

use std::collections::HashMap;

use crate::arith::ParamVec;
use crate::dct::{dct1_tensor, DctStrategy};
use crate::discrete::{chi_norm_sq, chi_vector, weighted_dot, CompensatedSum, GridFunction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::nodes::NodeSet;
use crate::spectral::{class_decomposition, e_count, f_count, gamma_star, ClassDecomposition, SpectralIndex};

fn check_unit(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 {
        return Err(Error::Domain(format!("coordinate {x} outside [-1, 1]")));
    }
    Ok(())
}

/// `T_0(x), ..., T_n(x)` by the three-term recurrence.
fn cheb_table(n: usize, x: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(1.0);
    if n >= 1 {
        t.push(x);
    }
    for k in 2..=n {
        t.push(2.0 * x * t[k - 1] - t[k - 2]);
    }
    t
}

/// Univariate `T_n(x)`.
pub fn cheb_t1(n: usize, x: f64) -> Result<f64> {
    check_unit(x)?;
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return Ok(1.0);
    }
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    Ok(cur)
}

/// `T_gamma(x) = prod_j T_{gamma_j}(x_j)`.
pub fn cheb_t(g: &[usize], x: &[f64]) -> Result<f64> {
    if g.len() != x.len() {
        return Err(Error::Domain(format!("point has {} coordinates, expected {}", x.len(), g.len())));
    }
    g.iter().zip(x).try_fold(1.0, |acc, (&n, &xj)| Ok(acc * cheb_t1(n, xj)?))
}

/// Target polynomial space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Space {
    /// Spanned by `T_gamma` over the canonical representative set.
    #[default]
    Plain,
    /// Spanned by class averages of `T_gamma` over `Gamma_bar`.
    Averaged,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Plain => "plain",
            Space::Averaged => "averaged",
        }
    }
}

/// Chebyshev coefficients `c_gamma(h) = <h, chi_gamma> / |chi_gamma|^2`, stored
/// densely over `Gamma_bar` in lexicographic order.
///
/// For [`Space::Plain`] entries off the representative set are zero. For
/// [`Space::Averaged`] every entry is kept; the interpolant weights `c_gamma`
/// by `1 / #[gamma]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebCoeffs {
    pub pv: ParamVec,
    pub space: Space,
    pub gammas: Vec<SpectralIndex>,
    pub values: Vec<f64>,
}

impl ChebCoeffs {
    pub fn get(&self, g: &SpectralIndex) -> Option<f64> {
        self.gammas.binary_search(g).ok().map(|k| self.values[k])
    }

    /// The entries that define the polynomial: the representative set for
    /// the plain space, all of `Gamma_bar` for the averaged one.
    pub fn entries<'a>(&'a self, cd: &'a ClassDecomposition) -> impl Iterator<Item = (&'a SpectralIndex, f64)> + 'a {
        self.gammas
            .iter()
            .zip(self.values.iter().copied())
            .filter(move |(g, _)| self.space == Space::Averaged || cd.is_representative(g))
    }

    pub fn max_abs_diff(&self, other: &ChebCoeffs) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// Everything needed to interpolate on one node family.
#[derive(Debug, Clone)]
pub struct Interpolator {
    pv: ParamVec,
    nodes: NodeSet,
    classes: ClassDecomposition,
    weights: Vec<f64>,
    gammas: Vec<SpectralIndex>,
    representative: Vec<bool>,
    class_size: Vec<usize>,
    zero_class: Vec<bool>,
    norm_sq: Vec<f64>,
    exec: Execution,
}

impl Interpolator {
    pub fn new(pv: &ParamVec) -> Self {
        let nodes = NodeSet::new(pv);
        let classes = class_decomposition(pv);
        let gammas = classes.gamma_bar().to_vec();
        let representative = gammas.iter().map(|g| classes.is_representative(g)).collect();
        let class_size = gammas.iter().map(|g| classes.class_size(g).unwrap()).collect();
        let zero_class = gammas.iter().map(|g| classes.in_zero_class(g)).collect();
        let norm_sq = gammas.iter().map(|g| chi_norm_sq(&classes, g)).collect();
        Interpolator {
            pv: pv.clone(),
            weights: nodes.weights(),
            nodes,
            classes,
            gammas,
            representative,
            class_size,
            zero_class,
            norm_sq,
            exec: Execution::default(),
        }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn params(&self) -> &ParamVec {
        &self.pv
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn classes(&self) -> &ClassDecomposition {
        &self.classes
    }

    pub fn gamma_bar(&self) -> &[SpectralIndex] {
        &self.gammas
    }

    /// `2^{e - f}`, the kernel factor `2^{-f} / |T_gamma|^2`.
    fn kernel_factor(&self, k: usize) -> f64 {
        let g = &self.gammas[k].0;
        2f64.powi(e_count(g) as i32 - f_count(&self.pv, g) as i32)
    }

    fn axis_tables(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        if x.len() != self.pv.dim() {
            return Err(Error::Domain(format!("point has {} coordinates, expected {}", x.len(), self.pv.dim())));
        }
        x.iter()
            .zip(self.pv.m())
            .map(|(&xj, &m)| {
                check_unit(xj)?;
                Ok(cheb_table(m as usize, xj))
            })
            .collect()
    }

    fn t_at(tables: &[Vec<f64>], g: &[usize]) -> f64 {
        g.iter().zip(tables).map(|(&n, t)| t[n]).product()
    }

    /// `sum_{gamma in Gamma} 2^{e-f} T(z) T(x) - T_{gamma*}(z) T_{gamma*}(x)`.
    pub fn kernel_plain(&self, z: &[f64], x: &[f64]) -> Result<f64> {
        let (tz, tx) = (self.axis_tables(z)?, self.axis_tables(x)?);
        let mut acc = CompensatedSum::default();
        for (k, g) in self.gammas.iter().enumerate() {
            if self.representative[k] {
                acc.add(self.kernel_factor(k) * Self::t_at(&tz, &g.0) * Self::t_at(&tx, &g.0));
            }
        }
        let gs = gamma_star(&self.pv);
        acc.add(-Self::t_at(&tz, &gs.0) * Self::t_at(&tx, &gs.0));
        Ok(acc.value())
    }

    /// `sum_{gamma in Gamma_bar} 2^{e-f} / #[gamma] T(z) T(x)` minus the mean of
    /// `T(z) T(x)` over the class of zero.
    pub fn kernel_averaged(&self, z: &[f64], x: &[f64]) -> Result<f64> {
        let (tz, tx) = (self.axis_tables(z)?, self.axis_tables(x)?);
        let mut acc = CompensatedSum::default();
        let d = self.pv.dim() as f64;
        for (k, g) in self.gammas.iter().enumerate() {
            let prod = Self::t_at(&tz, &g.0) * Self::t_at(&tx, &g.0);
            acc.add(self.kernel_factor(k) / self.class_size[k] as f64 * prod);
            if self.zero_class[k] {
                acc.add(-prod / d);
            }
        }
        Ok(acc.value())
    }

    pub fn kernel(&self, space: Space, z: &[f64], x: &[f64]) -> Result<f64> {
        match space {
            Space::Plain => self.kernel_plain(z, x),
            Space::Averaged => self.kernel_averaged(z, x),
        }
    }

    /// Fundamental polynomial of node `node` (position in the node set) at `x`.
    pub fn fundamental(&self, space: Space, node: usize, x: &[f64]) -> Result<f64> {
        let z = self.nodes.nodes()[node].coords(&self.pv);
        Ok(self.weights[node] * self.kernel(space, &z, x)?)
    }

    /// Averaged fundamental polynomial written over the representative set
    /// with the class-averaged polynomials.
    pub fn fundamental_averaged_by_representatives(&self, node: usize, x: &[f64]) -> Result<f64> {
        let z = self.nodes.nodes()[node].coords(&self.pv);
        let (tz, tx) = (self.axis_tables(&z)?, self.axis_tables(x)?);
        let averaged = |tables: &[Vec<f64>], rep: &SpectralIndex| {
            let cls = self.classes.class_of(rep).unwrap();
            let sum: f64 = cls.members.iter().zip(&cls.signs).map(|(g, &s)| s as f64 * Self::t_at(tables, &g.0)).sum();
            sum / cls.len() as f64
        };
        let mut acc = CompensatedSum::default();
        for (k, g) in self.gammas.iter().enumerate() {
            if self.representative[k] {
                acc.add(self.kernel_factor(k) * averaged(&tz, g) * averaged(&tx, g));
            }
        }
        let gs = gamma_star(&self.pv);
        acc.add(-averaged(&tz, &gs) * averaged(&tx, &gs));
        Ok(self.weights[node] * acc.value())
    }

    /// Matrix of all fundamental polynomials at all nodes, row `i` holding
    /// `L_i(z_j)`. Built from the spectral expansion in one pass.
    pub fn fundamental_matrix(&self, space: Space) -> Vec<Vec<f64>> {
        let n = self.nodes.len();
        let d = self.pv.dim() as f64;
        let coords: Vec<Vec<f64>> = self.nodes.nodes().iter().map(|nd| nd.coords(&self.pv)).collect();
        let terms: Vec<(f64, Vec<f64>)> = self
            .gammas
            .iter()
            .enumerate()
            .filter_map(|(k, g)| {
                let mut a = match space {
                    Space::Plain if !self.representative[k] => return None,
                    Space::Plain => self.kernel_factor(k),
                    Space::Averaged => self.kernel_factor(k) / self.class_size[k] as f64,
                };
                match space {
                    Space::Plain if *g == gamma_star(&self.pv) => a -= 1.0,
                    Space::Averaged if self.zero_class[k] => a -= 1.0 / d,
                    _ => {}
                }
                let values = coords.iter().map(|x| cheb_t(&g.0, x).unwrap()).collect();
                Some((a, values))
            })
            .collect();
        self.exec.map(n, |i| {
            (0..n)
                .map(|j| {
                    let s: CompensatedSum = terms.iter().map(|(a, t)| a * t[i] * t[j]).collect();
                    self.weights[i] * s.value()
                })
                .collect()
        })
    }

    fn check_domain(&self, h: &GridFunction<f64>) -> Result<()> {
        if h.params() != &self.pv {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    fn finish(&self, space: Space, mut values: Vec<f64>) -> ChebCoeffs {
        match space {
            Space::Plain => {
                for (v, &rep) in values.iter_mut().zip(&self.representative) {
                    if !rep {
                        *v = 0.0;
                    }
                }
            }
            Space::Averaged => {
                let index: HashMap<&SpectralIndex, usize> =
                    self.gammas.iter().enumerate().map(|(k, g)| (g, k)).collect();
                for cls in self.classes.classes().iter().filter(|c| c.len() > 1) {
                    let rep = values[index[&cls.representative]];
                    for (g, &s) in cls.members.iter().zip(&cls.signs) {
                        values[index[g]] = s as f64 * rep;
                    }
                }
            }
        }
        ChebCoeffs { pv: self.pv.clone(), space, gammas: self.gammas.clone(), values }
    }

    /// Coefficients from discrete inner products with every `chi_gamma`.
    pub fn coefficients_direct(&self, h: &GridFunction<f64>, space: Space) -> Result<ChebCoeffs> {
        self.check_domain(h)?;
        let values = self.exec.map(self.gammas.len(), |k| {
            let chi = chi_vector(&self.nodes, &self.gammas[k].0);
            weighted_dot(h.values(), &chi, &self.weights) / self.norm_sq[k]
        });
        Ok(self.finish(space, values))
    }

    /// Coefficients from a `d`-dimensional type-I cosine transform of the
    /// weighted data, zero-extended to the full grid `x{0..=m_j}`.
    pub fn coefficients_dct(&self, h: &GridFunction<f64>, space: Space, strategy: DctStrategy) -> Result<ChebCoeffs> {
        self.check_domain(h)?;
        let dims: Vec<usize> = self.pv.m().iter().map(|&m| m as usize + 1).collect();
        let offset = |i: &[usize]| i.iter().zip(&dims).fold(0, |acc, (&v, &n)| acc * n + v);
        let mut g = vec![0.0; dims.iter().product()];
        for ((node, &v), &w) in self.nodes.nodes().iter().zip(h.values()).zip(&self.weights) {
            g[offset(&node.i)] = w * v;
        }
        dct1_tensor(&mut g, &dims, strategy, self.exec);
        let values = self.gammas.iter().zip(&self.norm_sq).map(|(gm, &n)| g[offset(&gm.0)] / n).collect();
        Ok(self.finish(space, values))
    }

    /// Interpolant of `h` in `space`.
    pub fn interpolate(&self, h: &GridFunction<f64>, space: Space) -> Result<Interpolant> {
        let coeffs = self.coefficients_dct(h, space, DctStrategy::Auto)?;
        Ok(self.interpolant(coeffs))
    }

    /// Interpolant of `h` from inner products, without transforms.
    pub fn interpolate_direct(&self, h: &GridFunction<f64>, space: Space) -> Result<Interpolant> {
        let coeffs = self.coefficients_direct(h, space)?;
        Ok(self.interpolant(coeffs))
    }

    /// Wraps coefficients for evaluation.
    pub fn interpolant(&self, coeffs: ChebCoeffs) -> Interpolant {
        let scaled = coeffs
            .values
            .iter()
            .enumerate()
            .map(|(k, &c)| match coeffs.space {
                Space::Plain => c,
                Space::Averaged => c / self.class_size[k] as f64,
            })
            .collect();
        Interpolant { coeffs, scaled, exec: self.exec }
    }

    /// Coefficients from explicit `(gamma, c)` pairs; unlisted entries are zero.
    pub fn coeffs_from_entries(
        &self,
        space: Space,
        entries: impl IntoIterator<Item = (SpectralIndex, f64)>,
    ) -> Result<ChebCoeffs> {
        let mut values = vec![0.0; self.gammas.len()];
        for (g, c) in entries {
            let k = self
                .gammas
                .binary_search(&g)
                .map_err(|_| Error::Domain(format!("{g} is not in Gamma_bar")))?;
            if space == Space::Plain && !self.representative[k] {
                return Err(Error::Domain(format!("{g} is not a class representative")));
            }
            values[k] = c;
        }
        Ok(ChebCoeffs { pv: self.pv.clone(), space, gammas: self.gammas.clone(), values })
    }

    /// `sum_i h(i) L_i(x)` evaluated through the kernel.
    pub fn evaluate_by_fundamentals(&self, h: &GridFunction<f64>, space: Space, x: &[f64]) -> Result<f64> {
        self.check_domain(h)?;
        let mut acc = CompensatedSum::default();
        for (k, &v) in h.values().iter().enumerate() {
            acc.add(v * self.fundamental(space, k, x)?);
        }
        Ok(acc.value())
    }

    /// Weighted node sum `sum_i w_i h(i)`.
    pub fn quadrature(&self, h: &GridFunction<f64>) -> Result<f64> {
        self.check_domain(h)?;
        Ok(weighted_dot(h.values(), &vec![1.0; h.values().len()], &self.weights))
    }
}

/// Polynomial `sum c_gamma T_gamma` (plain) or `sum c_gamma / #[gamma] T_gamma`
/// (averaged).
#[derive(Debug, Clone)]
pub struct Interpolant {
    coeffs: ChebCoeffs,
    scaled: Vec<f64>,
    exec: Execution,
}

impl Interpolant {
    pub fn coeffs(&self) -> &ChebCoeffs {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let pv = &self.coeffs.pv;
        if x.len() != pv.dim() {
            return Err(Error::Domain(format!("point has {} coordinates, expected {}", x.len(), pv.dim())));
        }
        let tables: Vec<Vec<f64>> = x
            .iter()
            .zip(pv.m())
            .map(|(&xj, &m)| {
                check_unit(xj)?;
                Ok(cheb_table(m as usize, xj))
            })
            .collect::<Result<_>>()?;
        let mut acc = CompensatedSum::default();
        for (g, &c) in self.coeffs.gammas.iter().zip(&self.scaled) {
            if c != 0.0 {
                acc.add(c * Interpolator::t_at(&tables, &g.0));
            }
        }
        Ok(acc.value())
    }

    pub fn evaluate_batch(&self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        self.exec.map(points.len(), |k| self.evaluate(&points[k])).into_iter().collect()
    }

    /// Values on the product grid `x_k = (cos(k_j pi / n_j))_j`, `0 <= k_j <= n_j`,
    /// in lexicographic order of `k`, by one cosine transform.
    pub fn evaluate_grid(&self, n: &[usize]) -> Result<Vec<f64>> {
        let pv = &self.coeffs.pv;
        if n.len() != pv.dim() || n.contains(&0) {
            return Err(Error::Domain(format!("grid needs {} positive sizes", pv.dim())));
        }
        let dims: Vec<usize> = n.iter().map(|&v| v + 1).collect();
        let mut data = vec![0.0; dims.iter().product()];
        for (g, &c) in self.coeffs.gammas.iter().zip(&self.scaled) {
            let off = g.0.iter().zip(n).fold(0, |acc, (&gj, &nj)| {
                let r = gj % (2 * nj);
                acc * (nj + 1) + if r > nj { 2 * nj - r } else { r }
            });
            data[off] += c;
        }
        dct1_tensor(&mut data, &dims, DctStrategy::Auto, self.exec);
        Ok(data)
    }
}
