//! Globally adaptive composite Gauss–Legendre quadrature for vector-valued
//! integrands.
//!
//! Each panel carries the fixed-order rule on the whole panel and on its two
//! halves; the difference of the two is the panel's error estimate and the
//! half-panel sum is its value. The panel with the largest estimate is split
//! until the summed estimate meets `max(abs_tol, rel_tol·‖I‖∞)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::SVector;

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<const N: usize, F>(&self, f: &F, a: f64, b: f64) -> SVector<f64, N>
    where
        F: Fn(f64) -> SVector<f64, N>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = SVector::<f64, N>::zeros();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * (*w);
        }
        acc * half
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub order: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            order: 16,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_panels: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integral<const N: usize> {
    pub value: SVector<f64, N>,
    pub error: f64,
    pub panels: usize,
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    left: SVector<f64, N>,
    right: SVector<f64, N>,
    error: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn inf_norm<const N: usize>(v: &SVector<f64, N>) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from the
/// panels delimited by the sorted breakpoints.
pub fn integrate<const N: usize, F>(f: F, breaks: &[f64], opts: &AdaptiveOptions) -> Result<Integral<N>>
where
    F: Fn(f64) -> SVector<f64, N>,
{
    assert!(breaks.len() >= 2, "need at least one panel");
    let rule = GaussLegendre::new(opts.order);
    let make = |a: f64, b: f64, whole: SVector<f64, N>| -> Panel<N> {
        let m = 0.5 * (a + b);
        let left = rule.integrate(&f, a, m);
        let right = rule.integrate(&f, m, b);
        let error = inf_norm(&(whole - left - right));
        Panel { a, b, left, right, error }
    };

    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let whole = rule.integrate(&f, w[0], w[1]);
            heap.push(make(w[0], w[1], whole));
        }
    }
    let span = breaks[breaks.len() - 1] - breaks[0];
    let mut total: SVector<f64, N> = heap.iter().map(|p| p.left + p.right).sum();
    let mut err: f64 = heap.iter().map(|p| p.error).sum();

    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * inf_norm(&total));
        if !err.is_finite() || !inf_norm(&total).is_finite() {
            return Err(Error::QuadratureFailure {
                panels: heap.len(),
                estimate: err,
                tolerance: tol,
            });
        }
        if err <= tol {
            // running sums drift; confirm against a fresh summation
            total = heap.iter().map(|p| p.left + p.right).sum();
            err = heap.iter().map(|p| p.error).sum();
            let tol = opts.abs_tol.max(opts.rel_tol * inf_norm(&total));
            if err <= tol {
                return Ok(Integral {
                    value: total,
                    error: err,
                    panels: heap.len(),
                });
            }
        }
        let worst = heap.pop().expect("non-empty panel set");
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() + 2 > opts.max_panels || (worst.b - worst.a) < 1e-14 * span {
            heap.push(worst);
            return Err(Error::QuadratureFailure {
                panels: heap.len(),
                estimate: err,
                tolerance: tol,
            });
        }
        let l = make(worst.a, m, worst.left);
        let r = make(m, worst.b, worst.right);
        total += l.left + l.right + r.left + r.right - worst.left - worst.right;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
}
