use crate::exec::ExecMode;

/// Numerical settings shared by every quadrature-backed operation.
///
/// The defaults follow one rule: integrands here are Gaussians times
/// polynomials, for which scaled Gauss-Hermite rules converge
/// superexponentially, so moderate fixed orders suffice and every order is
/// overridable for convergence checks (see [`QuadConfig::doubled`]).
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    /// Gauss-Hermite order for one-dimensional integrals.
    pub order_1d: usize,
    /// Gauss-Hermite order per axis for 2-D and 3-D tensor products.
    pub order_2d: usize,
    /// Gauss-Legendre order per axis for loss-distribution averages.
    pub loss_order: usize,
    /// Cap on Fock indices accepted by mode-function and expansion routines.
    pub n_cap: usize,
    /// Heralding probabilities below this are treated as unheraldable.
    pub herald_eps: f64,
    /// Maximum tolerated tail mass of a Fock expansion.
    pub tail_tol: f64,
    /// Execution strategy for data-parallel loops.
    pub exec: ExecMode,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            order_1d: 120,
            order_2d: 80,
            loss_order: 64,
            n_cap: 60,
            herald_eps: 1e-14,
            tail_tol: 1e-6,
            exec: ExecMode::default(),
        }
    }
}

impl QuadConfig {
    /// Scale all quadrature orders relative to the default 1-D order of 120.
    ///
    /// `order` becomes the 1-D order; the 2-D and loss orders scale
    /// proportionally (minimum 16 each).
    pub fn with_order(order: usize) -> Self {
        let base = QuadConfig::default();
        let scale = order as f64 / base.order_1d as f64;
        let at_least = |x: usize| ((x as f64 * scale).round() as usize).max(16);
        QuadConfig {
            order_1d: order.max(16),
            order_2d: at_least(base.order_2d),
            loss_order: at_least(base.loss_order),
            ..base
        }
    }

    /// Same settings with every quadrature order doubled. Used by
    /// convergence checks: a converged quantity must be insensitive to this.
    pub fn doubled(&self) -> Self {
        QuadConfig {
            order_1d: self.order_1d * 2,
            order_2d: self.order_2d * 2,
            loss_order: self.loss_order * 2,
            ..*self
        }
    }

    pub fn with_exec(mut self, exec: ExecMode) -> Self {
        self.exec = exec;
        self
    }
}
