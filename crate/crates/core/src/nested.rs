//! Engines for nested integrals of the form
//! `int_0^1 f_k(u_k) int_0^{u_k} ... int_0^{u_2} f_1(u_1) du_1 ... du_k`
//! on the unit interval, where each level factor is
//! `f_a(u) = u^{e_a} * phi_{j_a}(u)` with an optional unit-orthonormal basis
//! factor.
//!
//! The Legendre engine is exact for polynomial integrands: intermediate
//! antiderivatives are carried as Legendre series (values at Gauss nodes,
//! re-projected per level), which stays stable for basis indices in the
//! hundreds where monomial coefficient arithmetic would overflow.
//! The quadrature engine handles the trigonometric system with composite
//! Gauss panels and per-panel polynomial partial integration.

use crate::basis::{eval_unit, gauss_legendre_unit, BasisKind};

/// One integration level in unit coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Level {
    /// Monomial exponent of the weight factor `u^e`.
    pub exponent: u32,
    /// Basis index of the `phi_j` factor, if this level carries one
    /// (collapsed pair levels do not).
    pub basis_index: Option<usize>,
}

impl Level {
    fn factor(&self, kind: BasisKind, u: f64) -> f64 {
        let w = if self.exponent == 0 {
            1.0
        } else {
            u.powi(self.exponent as i32)
        };
        match self.basis_index {
            Some(j) => w * eval_unit(kind, j, u),
            None => w,
        }
    }
}

/// Exact nested integral for the Legendre system.
pub(crate) fn nested_exact_legendre(levels: &[Level]) -> f64 {
    assert!(!levels.is_empty());
    let degree: usize = levels
        .iter()
        .map(|l| l.exponent as usize + l.basis_index.unwrap_or(0))
        .sum::<usize>()
        + levels.len();
    let n = degree + 1;
    let (x_ref, w_ref) = gauss_legendre_unit(n);
    // Map to [0, 1].
    let nodes: Vec<f64> = x_ref.iter().map(|x| (x + 1.0) / 2.0).collect();
    let weights: Vec<f64> = w_ref.iter().map(|w| w / 2.0).collect();

    // Shifted Legendre values P_b(2u - 1) at the nodes, b = 0..=degree + 1.
    let bmax = degree + 1;
    let mut table = vec![vec![0.0; n]; bmax + 1];
    for (i, u) in nodes.iter().enumerate() {
        let x = 2.0 * u - 1.0;
        table[0][i] = 1.0;
        if bmax >= 1 {
            table[1][i] = x;
        }
        for b in 1..bmax {
            let bf = b as f64;
            table[b + 1][i] =
                ((2.0 * bf + 1.0) * x * table[b][i] - bf * table[b - 1][i]) / (bf + 1.0);
        }
    }

    let mut vals = vec![1.0; n];
    let mut running_degree = 0usize;
    for (idx, level) in levels.iter().enumerate() {
        let g: Vec<f64> = nodes
            .iter()
            .zip(&vals)
            .map(|(u, v)| level.factor(BasisKind::Legendre, *u) * v)
            .collect();
        running_degree += level.exponent as usize + level.basis_index.unwrap_or(0);
        if idx + 1 == levels.len() {
            return g.iter().zip(&weights).map(|(gi, wi)| gi * wi).sum();
        }
        // Project onto shifted Legendre coefficients (exact: the rule
        // integrates degree 2n - 1 and running_degree + b <= 2 * degree).
        let mut coeffs = vec![0.0; running_degree + 1];
        for (b, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..n {
                acc += weights[i] * g[i] * table[b][i];
            }
            *c = (2 * b + 1) as f64 * acc;
        }
        // Antiderivative int_0^u, coefficient-wise:
        // int_0^u P_b(2v - 1) dv = (P_{b+1} - P_{b-1})(2u - 1) / (2(2b+1)),
        // and int_0^u P_0 dv = u = (P_0 + P_1)(2u - 1) / 2.
        let mut anti = vec![0.0; running_degree + 2];
        anti[0] += coeffs[0] / 2.0;
        anti[1] += coeffs[0] / 2.0;
        for (b, c) in coeffs.iter().enumerate().skip(1) {
            let scale = 1.0 / (2.0 * (2 * b + 1) as f64);
            anti[b + 1] += c * scale;
            anti[b - 1] -= c * scale;
        }
        running_degree += 1;
        for i in 0..n {
            let mut acc = 0.0;
            for (b, a) in anti.iter().enumerate() {
                acc += a * table[b][i];
            }
            vals[i] = acc;
        }
    }
    unreachable!()
}

/// Composite-panel iterated quadrature; works for either basis kind.
pub(crate) fn nested_quadrature(
    kind: BasisKind,
    levels: &[Level],
    panels: usize,
    nodes_per_panel: usize,
) -> f64 {
    assert!(!levels.is_empty());
    let n = nodes_per_panel;
    let (x_ref, w_ref) = gauss_legendre_unit(n);
    let partial = partial_integration_matrix(&x_ref);
    let h = 1.0 / panels as f64;

    let total = panels * n;
    let mut nodes = vec![0.0; total];
    for m in 0..panels {
        let mid = (m as f64 + 0.5) * h;
        for i in 0..n {
            nodes[m * n + i] = mid + h / 2.0 * x_ref[i];
        }
    }

    let mut vals = vec![1.0; total];
    for (idx, level) in levels.iter().enumerate() {
        let g: Vec<f64> = nodes
            .iter()
            .zip(&vals)
            .map(|(u, v)| level.factor(kind, *u) * v)
            .collect();
        if idx + 1 == levels.len() {
            let mut acc = 0.0;
            for m in 0..panels {
                for i in 0..n {
                    acc += h / 2.0 * w_ref[i] * g[m * n + i];
                }
            }
            return acc;
        }
        let mut cum = 0.0;
        for m in 0..panels {
            for i in 0..n {
                let mut part = 0.0;
                for j in 0..n {
                    part += partial[i][j] * g[m * n + j];
                }
                vals[m * n + i] = cum + h / 2.0 * part;
            }
            let mut tot = 0.0;
            for i in 0..n {
                tot += w_ref[i] * g[m * n + i];
            }
            cum += h / 2.0 * tot;
        }
    }
    unreachable!()
}

/// Default panel count used for trigonometric coefficients up to index `p`:
/// at least four panels per oscillation of the highest frequency.
pub(crate) fn trig_panels(max_index: usize) -> usize {
    (2 * max_index).max(32)
}

pub(crate) const QUAD_NODES_PER_PANEL: usize = 12;

/// `S[i][j] = int_{-1}^{x_i} l_j(x) dx` for the Lagrange basis on the nodes.
fn partial_integration_matrix(x: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut s = vec![vec![0.0; n]; n];
    for j in 0..n {
        // Monomial coefficients of l_j.
        let mut coeffs = vec![1.0];
        let mut denom = 1.0;
        for m in 0..n {
            if m == j {
                continue;
            }
            denom *= x[j] - x[m];
            let mut next = vec![0.0; coeffs.len() + 1];
            for (d, c) in coeffs.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * x[m];
            }
            coeffs = next;
        }
        for c in coeffs.iter_mut() {
            *c /= denom;
        }
        for (i, s_row) in s.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (d, c) in coeffs.iter().enumerate() {
                let dp1 = (d + 1) as f64;
                let upper = x[i].powi(d as i32 + 1);
                let lower = (-1.0f64).powi(d as i32 + 1);
                acc += c * (upper - lower) / dp1;
            }
            s_row[j] = acc;
        }
    }
    s
}
