//! Deterministic Gaussian quadrature: Gauss-Hermite and Gauss-Legendre rules
//! plus σ-scaled evaluation grids for wavefunction tabulation.
//!
//! Rules are built by Newton iteration on the orthonormal-polynomial
//! recurrences, so nodes come out symmetric by construction and no linear
//! algebra is needed. Gauss-Hermite stores two weight sets: the classical
//! weights w_i for ∫ e^{−x²} f(x) dx and the lifted weights w_i e^{x_i²}
//! (computed stably, never through the underflowing product) so callers can
//! integrate plain f over the real line.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    GaussHermite,
    GaussLegendre,
}

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lifted: Vec<f64>,
}

impl QuadratureRule {
    /// Gauss-Hermite rule of the given order for weight e^{−x²} on (−∞, ∞).
    pub fn gauss_hermite(order: usize) -> Result<Self> {
        check_order(order)?;
        let m = order.div_ceil(2);
        let nf = order as f64;
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let mut lifted = vec![0.0; order];

        let mut roots: Vec<f64> = Vec::with_capacity(m);
        let mut z = 0.0;
        for i in 0..m {
            // Initial guesses for the descending positive roots.
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * roots[0],
                3 => 1.91 * z - 0.91 * roots[1],
                _ => 2.0 * z - roots[i - 2],
            };
            let mut converged = false;
            for _ in 0..100 {
                let (p, p_prev) = hermite_orthonormal_pair(order, z);
                let slope = (2.0 * nf).sqrt() * p_prev;
                let dz = p / slope;
                z -= dz;
                if dz.abs() <= 1e-14 * (1.0 + z.abs()) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence {
                    what: format!("Gauss-Hermite root {i} of order {order}"),
                });
            }
            roots.push(z);
        }

        let odd = order % 2 == 1;
        for (i, &z) in roots.iter().enumerate() {
            let z = if odd && i == m - 1 { 0.0 } else { z };
            let (_, p_prev) = hermite_orthonormal_pair(order, z);
            let slope = (2.0 * nf).sqrt() * p_prev;
            let w = 2.0 / (slope * slope);
            // Lifted weight w e^{z²} = 1/(n φ_{n−1}(z)²) with the Gaussian
            // folded into the recurrence, bypassing the tiny w entirely.
            let phi_prev = super::special::fock_mode_unchecked(order - 1, z);
            let lw = 1.0 / (nf * phi_prev * phi_prev);
            let hi = order - 1 - i;
            nodes[hi] = z;
            nodes[i] = -z;
            weights[hi] = w;
            weights[i] = w;
            lifted[hi] = lw;
            lifted[i] = lw;
        }

        Ok(QuadratureRule {
            kind: RuleKind::GaussHermite,
            nodes,
            weights,
            lifted,
        })
    }

    /// Gauss-Legendre rule of the given order on [lo, hi].
    pub fn gauss_legendre(order: usize, lo: f64, hi: f64) -> Result<Self> {
        check_order(order)?;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidArgument {
                reason: format!("Gauss-Legendre interval [{lo}, {hi}] must be finite and increasing"),
            });
        }
        let n = order;
        let nf = n as f64;
        let mid = 0.5 * (hi + lo);
        let half = 0.5 * (hi - lo);
        let m = n.div_ceil(2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut pp = 0.0;
            let mut converged = false;
            for _ in 0..100 {
                let mut p1 = 1.0;
                let mut p2 = 0.0;
                for j in 1..=n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
                }
                pp = nf * (z * p1 - p2) / (z * z - 1.0);
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= 1e-15 {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence {
                    what: format!("Gauss-Legendre root {i} of order {order}"),
                });
            }
            nodes[i] = mid - half * z;
            nodes[n - 1 - i] = mid + half * z;
            let w = 2.0 * half / ((1.0 - z * z) * pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        let lifted = weights.clone();
        Ok(QuadratureRule {
            kind: RuleKind::GaussLegendre,
            nodes,
            weights,
            lifted,
        })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Classical weights: relative to e^{−x²} for Gauss-Hermite, plain for
    /// Gauss-Legendre.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for integrating plain f: w_i e^{x_i²} for Gauss-Hermite,
    /// identical to [`QuadratureRule::weights`] for Gauss-Legendre.
    pub fn lifted_weights(&self) -> &[f64] {
        &self.lifted
    }

    /// ∫ f(x) dx over the rule's natural domain ((−∞,∞) or [lo,hi]).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.lifted)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn check_order(order: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidOrder {
            order,
            min: MIN_ORDER,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

// Orthonormal Hermite pair (p_n(x), p_{n−1}(x)) without the Gaussian factor:
// p_0 = π^{−1/4}, p_j = x √(2/j) p_{j−1} − √((j−1)/j) p_{j−2}.
fn hermite_orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p1 = PI.powf(-0.25);
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = x * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

static HERMITE_CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();

/// Shared, cached Gauss-Hermite rule. Rules are immutable after construction
/// and safe to share across threads.
pub fn hermite_rule(order: usize) -> Result<Arc<QuadratureRule>> {
    let cache = HERMITE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(rule) = guard.get(&order) {
            return Ok(Arc::clone(rule));
        }
    }
    let rule = Arc::new(QuadratureRule::gauss_hermite(order)?);
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(guard.entry(order).or_insert(rule)))
}

/// A σ-scaled Gauss-Hermite evaluation grid.
///
/// Points are σ x_i and weights σ w_i e^{x_i²}, so Σ weights[i] f(points[i])
/// approximates ∫ f over the real line for integrands whose Gaussian decay
/// is at least as fast as e^{−x²/σ²}. Operations pick σ from the widest
/// marginal standard deviation of their integrand, which keeps one rule
/// accurate across all squeezing levels.
#[derive(Clone, Debug)]
pub struct Grid {
    sigma: f64,
    order: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl Grid {
    pub fn hermite_scaled(order: usize, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument {
                reason: format!("grid scale sigma = {sigma} must be positive and finite"),
            });
        }
        let rule = hermite_rule(order)?;
        let points = rule.nodes().iter().map(|&x| sigma * x).collect();
        let weights = rule.lifted_weights().iter().map(|&w| sigma * w).collect();
        Ok(Grid {
            sigma,
            order,
            points,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Grids compare equal when built from the same order and the same σ bits.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.order == other.order && self.sigma.to_bits() == other.sigma.to_bits()
    }
}
