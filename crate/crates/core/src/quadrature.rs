//! Gauss–Laguerre and Gauss–Legendre rules.
//!
//! Nodes start from the Golub–Welsch eigenvalues (Laguerre) or the usual
//! cosine estimate (Legendre) and are polished by Newton iteration on the
//! three-term recurrence; weights come from the closed-form expressions in
//! the polished nodes rather than from eigenvector components, which keeps
//! the tiny weights of far Laguerre nodes accurate in relative terms.

use nalgebra::DMatrix;

use crate::{Error, Result};

/// `∫₀^∞ e^{−x} f(x) dx ≈ Σ wᵢ f(xᵢ)`, exact for polynomials of degree
/// `2·len − 1`.
#[derive(Clone, Debug)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `(L_n(x), L_{n−1}(x))`.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut curr = 1.0 - x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * curr - kf * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    (curr, prev)
}

impl GaussLaguerre {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Validation("a quadrature rule needs at least one node".into()));
        }
        // Jacobi matrix: diagonal 2k+1, off-diagonal k+1.
        let jacobi = DMatrix::<f64>::from_fn(len, len, |i, j| {
            if i == j {
                2.0 * i as f64 + 1.0
            } else if i + 1 == j || j + 1 == i {
                i.max(j) as f64
            } else {
                0.0
            }
        });
        let mut guesses: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        guesses.sort_by(f64::total_cmp);

        let n = len as f64;
        let mut nodes = Vec::with_capacity(len);
        let mut weights = Vec::with_capacity(len);
        for guess in guesses {
            let mut x = guess;
            for _ in 0..100 {
                let (ln, ln1) = laguerre_pair(len, x);
                // x L_n′(x) = n (L_n − L_{n−1})
                let derivative = n * (ln - ln1) / x;
                let step = ln / derivative;
                x -= step;
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    break;
                }
            }
            let (ln_next, _) = laguerre_pair(len + 1, x);
            let w = x / ((n + 1.0) * (n + 1.0) * ln_next * ln_next);
            if !w.is_finite() || !x.is_finite() {
                return Err(Error::Numeric(format!(
                    "Gauss–Laguerre construction failed for {len} nodes"
                )));
            }
            nodes.push(x);
            weights.push(w);
        }
        Ok(GaussLaguerre { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `∫_{−1}^{1} f(x) dx ≈ Σ wᵢ f(xᵢ)`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `(P_n(x), P_n′(x))`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut curr = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * curr - kf * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    let nf = n as f64;
    let derivative = nf * (x * curr - prev) / (x * x - 1.0);
    (curr, derivative)
}

impl GaussLegendre {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Validation("a quadrature rule needs at least one node".into()));
        }
        if len == 1 {
            return Ok(GaussLegendre {
                nodes: vec![0.0],
                weights: vec![2.0],
            });
        }
        let n = len as f64;
        let mut nodes = vec![0.0; len];
        let mut weights = vec![0.0; len];
        for i in 0..len.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(len, x);
                let step = p / dp;
                x -= step;
                if step.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(len, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // ascending order: the cosine guesses run from +1 downwards
            nodes[len - 1 - i] = x;
            weights[len - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: u32) -> f64 {
        (1..=k).map(f64::from).product()
    }

    #[test]
    fn laguerre_rule_integrates_monomials() {
        let rule = GaussLaguerre::new(12).unwrap();
        for k in 0..=23u32 {
            let s: f64 = rule.pairs().map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = factorial(k);
            assert!((s - exact).abs() <= 1e-12 * exact, "k={k}: {s} vs {exact}");
        }
    }

    #[test]
    fn legendre_rule_integrates_monomials() {
        let rule = GaussLegendre::new(9).unwrap();
        for k in 0..=17 {
            let s: f64 = rule.pairs().map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "k={k}: {s}");
        }
        let even = GaussLegendre::new(64).unwrap();
        assert!(even.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!((even.weights().iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}
