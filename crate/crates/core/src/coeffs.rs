//! Volterra-type kernels with monomial weights, their Fourier coefficients
//! with respect to a CONS, collapsed coefficients for adjacent index pairs,
//! and quadrature coefficients for general square-integrable kernels.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKind, BasisSpec, Interval, Quadrature};
use crate::error::{Error, Result};
use crate::nested::{
    nested_exact_legendre, nested_quadrature, trig_panels, Level, QUAD_NODES_PER_PANEL,
};
use crate::partitions::PairPartition;

/// Default memory cap for dense coefficient tensors: `(p+1)^k` entries.
pub const DEFAULT_TENSOR_CAP: usize = 1 << 24;

/// Monomial weight functions `psi_i(tau) = (tau - t)^{l_i}`, `i = 1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub exponents: Vec<u32>,
}

impl WeightSpec {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Domain("weight list must be nonempty".into()));
        }
        Ok(Self { exponents })
    }

    /// All weights identically one.
    pub fn ones(k: usize) -> Result<Self> {
        Self::new(vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }
}

/// `K(t_1, ..., t_k) = psi_1(t_1) ... psi_k(t_k)` on the open ordered simplex
/// `t_1 < ... < t_k`, zero elsewhere (ties included).
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraKernel {
    pub weights: WeightSpec,
    pub interval: Interval,
}

impl VolterraKernel {
    pub fn new(weights: WeightSpec, interval: Interval) -> Self {
        Self { weights, interval }
    }

    pub fn k(&self) -> usize {
        self.weights.k()
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.k() {
            return Err(Error::Shape(format!(
                "kernel of order {} evaluated at {} coordinates",
                self.k(),
                point.len()
            )));
        }
        for &tau in point {
            if !self.interval.contains(tau) {
                return Err(Error::Domain(format!(
                    "point {tau} outside interval [{}, {}]",
                    self.interval.left(),
                    self.interval.right()
                )));
            }
        }
        if point.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(0.0);
        }
        let t = self.interval.left();
        let mut prod = 1.0;
        for (tau, l) in point.iter().zip(&self.weights.exponents) {
            if *l > 0 {
                prod *= (tau - t).powi(*l as i32);
            }
        }
        Ok(prod)
    }
}

/// A caller-supplied kernel on the full cube `[t, T]^k`; square-integrability
/// is the caller's responsibility.
#[derive(Clone)]
pub struct GeneralKernel {
    pub k: usize,
    evaluator: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl GeneralKernel {
    pub fn new(k: usize, evaluator: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            k,
            evaluator: Arc::new(evaluator),
        }
    }

    /// Wraps a Volterra kernel as a pointwise evaluator (zero on ties and
    /// off the simplex, per the kernel's definition).
    pub fn from_volterra(kern: &VolterraKernel) -> Self {
        let kern = kern.clone();
        Self::new(kern.k(), move |point| {
            kern.eval(point).unwrap_or(0.0)
        })
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        (self.evaluator)(point)
    }
}

impl std::fmt::Debug for GeneralKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneralKernel").field("k", &self.k).finish()
    }
}

/// Dense order-`k` tensor of Fourier coefficients `C_{j_k ... j_1}` with
/// every index running `0..=p`. Layout is flat with `j_1` fastest-varying.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTensor {
    pub basis: BasisSpec,
    pub weights: Option<WeightSpec>,
    pub k: usize,
    pub p: usize,
    pub data: Vec<f64>,
}

impl CoeffTensor {
    pub fn index(&self, jvec: &[usize]) -> usize {
        debug_assert_eq!(jvec.len(), self.k);
        let stride = self.p + 1;
        let mut idx = 0;
        for j in jvec.iter().rev() {
            debug_assert!(*j <= self.p);
            idx = idx * stride + j;
        }
        idx
    }

    pub fn get(&self, jvec: &[usize]) -> f64 {
        self.data[self.index(jvec)]
    }

    /// `Sigma C^2` over all stored entries (partial Parseval sum).
    pub fn parseval_sum(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        let weights = self.weights.as_ref().ok_or_else(|| {
            Error::Contract("only Volterra-sourced tensors serialize to JSON".into())
        })?;
        let dto = CoeffTensorDto {
            basis: basis_name(self.basis.kind).into(),
            interval: [self.basis.interval.left(), self.basis.interval.right()],
            weights: weights.exponents.clone(),
            p: self.p,
            layout: "j1-fastest".into(),
            data: self.data.clone(),
        };
        serde_json::to_string_pretty(&dto)
            .map_err(|e| Error::Contract(format!("serialization failed: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: CoeffTensorDto = serde_json::from_str(text)
            .map_err(|e| Error::Contract(format!("invalid tensor JSON: {e}")))?;
        if dto.layout != "j1-fastest" {
            return Err(Error::Contract(format!("unknown layout {:?}", dto.layout)));
        }
        let kind = match dto.basis.as_str() {
            "legendre" => BasisKind::Legendre,
            "trigonometric" => BasisKind::Trigonometric,
            other => return Err(Error::Contract(format!("unknown basis {other:?}"))),
        };
        let weights = WeightSpec::new(dto.weights)?;
        let k = weights.k();
        let expect = (dto.p + 1).pow(k as u32);
        if dto.data.len() != expect {
            return Err(Error::Shape(format!(
                "tensor data has {} entries, expected {expect}",
                dto.data.len()
            )));
        }
        Ok(Self {
            basis: BasisSpec::new(kind, Interval::new(dto.interval[0], dto.interval[1])?),
            weights: Some(weights),
            k,
            p: dto.p,
            data: dto.data,
        })
    }

    /// One row per multi-index: `j1,...,jk,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for a in 1..=self.k {
            out.push_str(&format!("j{a},"));
        }
        out.push_str("value\n");
        let mut jvec = vec![0usize; self.k];
        for idx in 0..self.data.len() {
            let mut rem = idx;
            for j in jvec.iter_mut() {
                *j = rem % (self.p + 1);
                rem /= self.p + 1;
            }
            for j in &jvec {
                out.push_str(&format!("{j},"));
            }
            out.push_str(&format!("{}\n", self.data[idx]));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffTensorDto {
    basis: String,
    interval: [f64; 2],
    weights: Vec<u32>,
    p: usize,
    layout: String,
    data: Vec<f64>,
}

pub(crate) fn basis_name(kind: BasisKind) -> &'static str {
    match kind {
        BasisKind::Legendre => "legendre",
        BasisKind::Trigonometric => "trigonometric",
    }
}

/// Computes a nested-simplex integral in unit coordinates from a level list
/// and applies the interval scaling.
pub(crate) fn nested_scaled(basis: &BasisSpec, levels: &[Level]) -> f64 {
    let delta = basis.interval.len();
    let basis_count = levels.iter().filter(|l| l.basis_index.is_some()).count();
    let exponent: f64 = levels
        .iter()
        .map(|l| l.exponent as f64 + 1.0)
        .sum::<f64>()
        - 0.5 * basis_count as f64;
    let unit = match basis.kind {
        BasisKind::Legendre => nested_exact_legendre(levels),
        BasisKind::Trigonometric => {
            let max_j = levels
                .iter()
                .filter_map(|l| l.basis_index)
                .max()
                .unwrap_or(0);
            nested_quadrature(
                BasisKind::Trigonometric,
                levels,
                trig_panels(max_j),
                QUAD_NODES_PER_PANEL,
            )
        }
    };
    unit * delta.powf(exponent)
}

fn volterra_levels(kern: &VolterraKernel, jvec: &[usize]) -> Vec<Level> {
    kern.weights
        .exponents
        .iter()
        .zip(jvec)
        .map(|(l, j)| Level {
            exponent: *l,
            basis_index: Some(*j),
        })
        .collect()
}

/// The Fourier coefficient `C_{j_k ... j_1}` of a Volterra kernel:
/// `int_t^T psi_k phi_{j_k} int_t^{t_k} ... int_t^{t_2} psi_1 phi_{j_1}`.
pub fn fourier_coeff(basis: &BasisSpec, kern: &VolterraKernel, jvec: &[usize]) -> Result<f64> {
    check_kernel_basis(basis, kern)?;
    if jvec.len() != kern.k() {
        return Err(Error::Shape(format!(
            "multi-index length {} does not match order {}",
            jvec.len(),
            kern.k()
        )));
    }
    Ok(nested_scaled(basis, &volterra_levels(kern, jvec)))
}

/// Quadrature route for the same coefficient, used as a cross-check oracle
/// for the exact Legendre path.
pub(crate) fn fourier_coeff_via_quadrature(
    basis: &BasisSpec,
    kern: &VolterraKernel,
    jvec: &[usize],
    panels: usize,
) -> f64 {
    let delta = basis.interval.len();
    let levels = volterra_levels(kern, jvec);
    let basis_count = levels.len();
    let exponent: f64 = levels
        .iter()
        .map(|l| l.exponent as f64 + 1.0)
        .sum::<f64>()
        - 0.5 * basis_count as f64;
    nested_quadrature(basis.kind, &levels, panels, QUAD_NODES_PER_PANEL) * delta.powf(exponent)
}

/// Dense tensor of all coefficients with `j_a <= p`.
pub fn coeff_tensor(basis: &BasisSpec, kern: &VolterraKernel, p: usize) -> Result<CoeffTensor> {
    coeff_tensor_with_cap(basis, kern, p, DEFAULT_TENSOR_CAP)
}

pub fn coeff_tensor_with_cap(
    basis: &BasisSpec,
    kern: &VolterraKernel,
    p: usize,
    cap: usize,
) -> Result<CoeffTensor> {
    check_kernel_basis(basis, kern)?;
    let k = kern.k();
    let size = (p + 1)
        .checked_pow(k as u32)
        .filter(|s| *s <= cap)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "tensor of (p+1)^k = {}^{k} entries exceeds the cap of {cap}",
                p + 1
            ))
        })?;
    let mut data = vec![0.0; size];
    let mut jvec = vec![0usize; k];
    for (idx, slot) in data.iter_mut().enumerate() {
        let mut rem = idx;
        for j in jvec.iter_mut() {
            *j = rem % (p + 1);
            rem /= p + 1;
        }
        *slot = nested_scaled(basis, &volterra_levels(kern, &jvec));
    }
    Ok(CoeffTensor {
        basis: *basis,
        weights: Some(kern.weights.clone()),
        k,
        p,
        data,
    })
}

/// Collapsed coefficient: each adjacent pair `{g, g+1}` in the partition
/// replaces its two integrations by a single integration of
/// `psi_g psi_{g+1}` with no basis factor; `jfree` indexes the free slots in
/// ascending position order.
pub fn collapsed_coeff(
    basis: &BasisSpec,
    kern: &VolterraKernel,
    partition: &PairPartition,
    jfree: &[usize],
) -> Result<f64> {
    check_kernel_basis(basis, kern)?;
    let k = kern.k();
    if partition.k != k {
        return Err(Error::Shape(format!(
            "partition over {} slots does not match order {k}",
            partition.k
        )));
    }
    if !partition.is_adjacent() {
        return Err(Error::Contract(
            "collapsed coefficients require every pair to be adjacent".into(),
        ));
    }
    if jfree.len() != partition.free_order() {
        return Err(Error::Shape(format!(
            "{} free indices supplied for {} free slots",
            jfree.len(),
            partition.free_order()
        )));
    }
    let exps = &kern.weights.exponents;
    let mut levels = Vec::with_capacity(k - partition.r());
    let mut free_iter = jfree.iter();
    let mut pos = 1usize;
    while pos <= k {
        if partition.pairs.iter().any(|&(a, _)| a == pos) {
            levels.push(Level {
                exponent: exps[pos - 1] + exps[pos],
                basis_index: None,
            });
            pos += 2;
        } else {
            levels.push(Level {
                exponent: exps[pos - 1],
                basis_index: Some(*free_iter.next().expect("free count checked")),
            });
            pos += 1;
        }
    }
    Ok(nested_scaled(basis, &levels))
}

/// Fourier coefficient of a general kernel over the full cube, by
/// tensor-product composite Gauss quadrature with `panels` panels per axis.
pub fn general_coeff(
    basis: &BasisSpec,
    kern: &GeneralKernel,
    jvec: &[usize],
    panels: usize,
) -> Result<f64> {
    if jvec.len() != kern.k {
        return Err(Error::Shape(format!(
            "multi-index length {} does not match order {}",
            jvec.len(),
            kern.k
        )));
    }
    let quad = Quadrature::composite(basis.interval, panels.max(1), 4);
    let n = quad.nodes.len();
    // Per-axis basis values at the nodes.
    let mut phi = vec![vec![0.0; n]; kern.k];
    for (axis, row) in phi.iter_mut().enumerate() {
        for (q, node) in quad.nodes.iter().enumerate() {
            row[q] = basis.eval(jvec[axis], *node)?;
        }
    }
    let mut point = vec![0.0; kern.k];
    let mut acc = 0.0;
    let mut counter = vec![0usize; kern.k];
    loop {
        let mut w = 1.0;
        for (axis, &q) in counter.iter().enumerate() {
            point[axis] = quad.nodes[q];
            w *= quad.weights[q] * phi[axis][q];
        }
        acc += w * kern.eval(&point);
        // Odometer increment over the k-dimensional node grid.
        let mut axis = 0;
        loop {
            if axis == kern.k {
                return Ok(acc);
            }
            counter[axis] += 1;
            if counter[axis] < n {
                break;
            }
            counter[axis] = 0;
            axis += 1;
        }
    }
}

fn check_kernel_basis(basis: &BasisSpec, kern: &VolterraKernel) -> Result<()> {
    if basis.interval != kern.interval {
        return Err(Error::Contract(
            "kernel and basis must share the same interval".into(),
        ));
    }
    Ok(())
}
