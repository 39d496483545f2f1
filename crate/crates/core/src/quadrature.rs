//! Composite Gauss–Legendre quadrature with panel doubling.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_order`, found by Newton iteration from the
    /// Chebyshev-like initial guesses.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(order, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// The 20-point rule used throughout the crate.
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(20))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    /// The rule applied on `panels` equal sub-intervals of `[a, b]`.
    pub fn composite(&self, f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + h * i as f64;
                self.integrate(&f, lo, lo + h)
            })
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub panels: usize,
}

/// Doubles the panel count from `start_panels` until two successive
/// composite estimates agree to `rel_tol` (relative, with a tiny absolute
/// floor), or fails once `max_panels` is exceeded.
pub fn integrate_doubling(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    start_panels: usize,
    max_panels: usize,
) -> Result<Integral> {
    let rule = GaussLegendre::standard();
    let mut panels = start_panels.max(1);
    let mut prev = rule.composite(&f, a, b, panels);
    while panels * 2 <= max_panels {
        panels *= 2;
        let next = rule.composite(&f, a, b, panels);
        if !next.is_finite() {
            return Err(Error::NonFinite);
        }
        if (next - prev).abs() <= rel_tol * next.abs() + 1e-300 {
            return Ok(Integral {
                value: next,
                panels,
            });
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged {
        tolerance: rel_tol,
        panels,
    })
}
