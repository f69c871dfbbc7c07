//! Complete orthonormal systems (CONS) on an interval `[t, T]`.
//!
//! Two systems are provided: shifted Legendre polynomials and the
//! trigonometric system. Both share the constant `phi_0 = 1/sqrt(len)`.
//! The trigonometric indexing interleaves sine and cosine: odd `j` is the
//! sine of frequency `(j+1)/2`, even `j >= 2` is the cosine of frequency
//! `j/2`.

use crate::error::{Error, Result};

use core::f64::consts::PI;

/// Time interval `[t, T]` with positive length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    t: f64,
    t_end: f64,
}

impl Interval {
    pub fn new(t: f64, t_end: f64) -> Result<Self> {
        if !(t_end > t) || !t.is_finite() || !t_end.is_finite() {
            return Err(Error::Domain(format!(
                "interval requires finite T > t, got [{t}, {t_end}]"
            )));
        }
        Ok(Self { t, t_end })
    }

    pub fn left(&self) -> f64 {
        self.t
    }

    pub fn right(&self) -> f64 {
        self.t_end
    }

    pub fn len(&self) -> f64 {
        self.t_end - self.t
    }

    pub fn contains(&self, tau: f64) -> bool {
        tau >= self.t && tau <= self.t_end
    }

    /// Maps `tau` to the unit coordinate `u = (tau - t) / len` in `[0, 1]`.
    pub fn to_unit(&self, tau: f64) -> f64 {
        (tau - self.t) / self.len()
    }
}

/// Which CONS to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Legendre,
    Trigonometric,
}

/// A CONS on a concrete interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub kind: BasisKind,
    pub interval: Interval,
}

impl BasisSpec {
    pub fn new(kind: BasisKind, interval: Interval) -> Self {
        Self { kind, interval }
    }

    /// Evaluates `phi_j(tau)`.
    pub fn eval(&self, j: usize, tau: f64) -> Result<f64> {
        if !self.interval.contains(tau) {
            return Err(Error::Domain(format!(
                "point {tau} outside interval [{}, {}]",
                self.interval.left(),
                self.interval.right()
            )));
        }
        let u = self.interval.to_unit(tau);
        Ok(eval_unit(self.kind, j, u) / self.interval.len().sqrt())
    }

    /// Evaluates the antiderivative `F_j(s) = int_t^s phi_j`.
    pub fn antiderivative(&self, j: usize, s: f64) -> Result<f64> {
        if !self.interval.contains(s) {
            return Err(Error::Domain(format!(
                "point {s} outside interval [{}, {}]",
                self.interval.left(),
                self.interval.right()
            )));
        }
        let u = self.interval.to_unit(s);
        // dtau = len * du and phi = unit_phi / sqrt(len).
        Ok(antiderivative_unit(self.kind, j, u) * self.interval.len().sqrt())
    }

    /// `F_j(T)`: `sqrt(len)` for `j = 0`, zero for `j >= 1` in both systems.
    pub fn antiderivative_at_end(&self, j: usize) -> f64 {
        if j == 0 {
            self.interval.len().sqrt()
        } else {
            0.0
        }
    }

    /// Gram matrix `(a, b) -> int phi_a phi_b` computed with `quad`.
    pub fn gram_matrix(&self, p: usize, quad: &Quadrature) -> Result<Vec<Vec<f64>>> {
        let n = p + 1;
        let mut vals = vec![vec![0.0; quad.nodes.len()]; n];
        for (a, row) in vals.iter_mut().enumerate() {
            for (q, node) in quad.nodes.iter().enumerate() {
                row[q] = self.eval(a, *node)?;
            }
        }
        let mut gram = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in 0..n {
                gram[a][b] = quad
                    .weights
                    .iter()
                    .enumerate()
                    .map(|(q, w)| w * vals[a][q] * vals[b][q])
                    .sum();
            }
        }
        Ok(gram)
    }
}

/// Unit-interval orthonormal basis value (orthonormal w.r.t. `du` on `[0,1]`).
pub(crate) fn eval_unit(kind: BasisKind, j: usize, u: f64) -> f64 {
    match kind {
        BasisKind::Legendre => ((2 * j + 1) as f64).sqrt() * legendre(j, 2.0 * u - 1.0),
        BasisKind::Trigonometric => {
            if j == 0 {
                1.0
            } else if j % 2 == 1 {
                let r = ((j + 1) / 2) as f64;
                core::f64::consts::SQRT_2 * (2.0 * PI * r * u).sin()
            } else {
                let r = (j / 2) as f64;
                core::f64::consts::SQRT_2 * (2.0 * PI * r * u).cos()
            }
        }
    }
}

/// `int_0^u` of the unit-interval basis function.
pub(crate) fn antiderivative_unit(kind: BasisKind, j: usize, u: f64) -> f64 {
    match kind {
        BasisKind::Legendre => {
            if j == 0 {
                u
            } else {
                // int P_j = (P_{j+1} - P_{j-1}) / (2j + 1) in x = 2u - 1,
                // and du = dx / 2.
                let x = 2.0 * u - 1.0;
                let scale = ((2 * j + 1) as f64).sqrt();
                scale * (legendre(j + 1, x) - legendre(j - 1, x)) / (2.0 * (2 * j + 1) as f64)
            }
        }
        BasisKind::Trigonometric => {
            if j == 0 {
                u
            } else if j % 2 == 1 {
                let r = ((j + 1) / 2) as f64;
                core::f64::consts::SQRT_2 * (1.0 - (2.0 * PI * r * u).cos()) / (2.0 * PI * r)
            } else {
                let r = (j / 2) as f64;
                core::f64::consts::SQRT_2 * (2.0 * PI * r * u).sin() / (2.0 * PI * r)
            }
        }
    }
}

/// Standard Legendre polynomial `P_j(x)` by the three-term recurrence.
pub(crate) fn legendre(j: usize, x: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for n in 1..j {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * cur - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// A quadrature rule on an interval; weights sum to the interval length.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Gauss-Legendre rule with `n` nodes; exact for polynomials of degree
    /// `<= 2n - 1`.
    pub fn gauss_legendre(interval: Interval, n: usize) -> Self {
        let (x, w) = gauss_legendre_unit(n);
        let half = interval.len() / 2.0;
        let mid = (interval.left() + interval.right()) / 2.0;
        Quadrature {
            nodes: x.iter().map(|xi| mid + half * xi).collect(),
            weights: w.iter().map(|wi| half * wi).collect(),
        }
    }

    /// Composite Gauss-Legendre rule: `panels` uniform panels of `n` nodes.
    pub fn composite(interval: Interval, panels: usize, n: usize) -> Self {
        let (x, w) = gauss_legendre_unit(n);
        let h = interval.len() / panels as f64;
        let mut nodes = Vec::with_capacity(panels * n);
        let mut weights = Vec::with_capacity(panels * n);
        for m in 0..panels {
            let a = interval.left() + m as f64 * h;
            let mid = a + h / 2.0;
            for i in 0..n {
                nodes.push(mid + h / 2.0 * x[i]);
                weights.push(h / 2.0 * w[i]);
            }
        }
        Quadrature { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-type initial guess, refined by Newton iterations.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let d = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_degenerate_interval() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn legendre_constant_mode() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        assert_abs_diff_eq!(spec.eval(0, 0.3).unwrap(), 1.0);
        // phi_1 at the left endpoint: sqrt(3) * (2*0 - 1).
        assert_abs_diff_eq!(spec.eval(1, 0.0).unwrap(), -(3.0f64.sqrt()), epsilon = 1e-14);
    }

    #[test]
    fn legendre_endpoint_values() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        for j in 0..12 {
            let scale = ((2 * j + 1) as f64).sqrt();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(spec.eval(j, 1.0).unwrap(), scale, epsilon = 1e-12);
            assert_abs_diff_eq!(spec.eval(j, 0.0).unwrap(), sign * scale, epsilon = 1e-12);
        }
    }

    #[test]
    fn trigonometric_constant_mode() {
        let spec = BasisSpec::new(
            BasisKind::Trigonometric,
            Interval::new(0.0, 4.0).unwrap(),
        );
        assert_abs_diff_eq!(spec.eval(0, 1.7).unwrap(), 0.5);
    }

    #[test]
    fn outside_interval_is_domain_error() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        assert!(spec.eval(0, 1.5).is_err());
        assert!(spec.antiderivative(0, -0.1).is_err());
    }

    #[test]
    fn antiderivative_endpoints() {
        for kind in [BasisKind::Legendre, BasisKind::Trigonometric] {
            let spec = BasisSpec::new(kind, Interval::new(2.0, 5.0).unwrap());
            assert_abs_diff_eq!(
                spec.antiderivative(0, 5.0).unwrap(),
                3.0f64.sqrt(),
                epsilon = 1e-13
            );
            for j in 1..=8 {
                assert!(spec.antiderivative(j, 5.0).unwrap().abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn antiderivative_midpoint_legendre() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        // int_0^{1/2} sqrt(3) (2u - 1) du = -sqrt(3)/4.
        assert_abs_diff_eq!(
            spec.antiderivative(1, 0.5).unwrap(),
            -(3.0f64.sqrt()) / 4.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        for kind in [BasisKind::Legendre, BasisKind::Trigonometric] {
            let iv = Interval::new(0.5, 2.0).unwrap();
            let spec = BasisSpec::new(kind, iv);
            for j in 0..7 {
                for s in [0.7, 1.1, 1.9] {
                    let sub = Interval::new(0.5, s).unwrap();
                    let quad = Quadrature::composite(sub, 64, 8);
                    let by_quad = quad.integrate(|x| spec.eval(j, x).unwrap());
                    assert_abs_diff_eq!(
                        spec.antiderivative(j, s).unwrap(),
                        by_quad,
                        epsilon = 1e-11
                    );
                }
            }
        }
    }

    #[test]
    fn gram_matrix_legendre_identity() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        let quad = Quadrature::gauss_legendre(unit(), 6);
        let gram = spec.gram_matrix(4, &quad).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[a][b], expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn gram_matrix_trigonometric_identity() {
        let iv = Interval::new(1.0, 3.0).unwrap();
        let spec = BasisSpec::new(BasisKind::Trigonometric, iv);
        let quad = Quadrature::composite(iv, 2048, 4);
        let gram = spec.gram_matrix(5, &quad).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[a][b], expect, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gram_matrix_trivial_order() {
        let spec = BasisSpec::new(BasisKind::Legendre, unit());
        let quad = Quadrature::gauss_legendre(unit(), 4);
        let gram = spec.gram_matrix(0, &quad).unwrap();
        assert_eq!(gram.len(), 1);
        assert_abs_diff_eq!(gram[0][0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn quadrature_weights_sum_to_length() {
        let iv = Interval::new(-1.0, 2.5).unwrap();
        for quad in [
            Quadrature::gauss_legendre(iv, 9),
            Quadrature::composite(iv, 17, 5),
        ] {
            let total: f64 = quad.weights.iter().sum();
            assert_abs_diff_eq!(total, iv.len(), epsilon = 1e-12);
        }
    }

    #[test]
    fn gauss_rule_exact_for_polynomials() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let quad = Quadrature::gauss_legendre(iv, 6);
        // degree 11 monomial: int_0^1 x^11 = 1/12.
        assert_abs_diff_eq!(quad.integrate(|x| x.powi(11)), 1.0 / 12.0, epsilon = 1e-14);
    }
}
