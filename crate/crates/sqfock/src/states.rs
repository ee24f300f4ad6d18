//! Two-mode entangled Gaussian states, squeezed Fock targets, heralded
//! conditional states, and overlaps between them.
//!
//! Wavefunctions move between operations as tabulations on σ-scaled
//! Gauss-Hermite grids; every downstream quantity is an integral, so the
//! grid weights make overlaps one dot product. Heralding with vanishing
//! probability is an explicit error state, never a NaN.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::config::QuadConfig;
use crate::error::{Error, Result};
use crate::numerics::{fock_mode_row, fock_mode_unchecked, hermite_eval_c, hermite_rule, ln_factorial, Grid};

type C64 = Complex64;

/// The complex triple (a, b, d) defining a non-displaced two-mode entangled
/// Gaussian wavefunction
/// Ψ(x1,x2) = (Re a Re d − (Re b)²)^{1/4} π^{−1/2} e^{−(a x1² + 2b x1x2 + d x2²)/2}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TmegParams {
    a: C64,
    b: C64,
    d: C64,
}

impl TmegParams {
    /// Validates normalizability: Re a > 0, Re d > 0, Re a Re d − (Re b)² > 0.
    pub fn new(a: C64, b: C64, d: C64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && d.is_finite()) {
            return Err(Error::InvalidTmeg {
                reason: "parameters must be finite".into(),
            });
        }
        if a.re <= 0.0 {
            return Err(Error::InvalidTmeg {
                reason: format!("Re a = {} must be positive", a.re),
            });
        }
        if d.re <= 0.0 {
            return Err(Error::InvalidTmeg {
                reason: format!("Re d = {} must be positive", d.re),
            });
        }
        let det = a.re * d.re - b.re * b.re;
        if det <= 0.0 {
            return Err(Error::InvalidTmeg {
                reason: format!("Re a Re d − (Re b)² = {det} must be positive"),
            });
        }
        Ok(TmegParams { a, b, d })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn d(&self) -> C64 {
        self.d
    }

    /// Re a Re d − (Re b)², the quantity fixing the normalization prefactor.
    pub fn gauss_det(&self) -> f64 {
        self.a.re * self.d.re - self.b.re * self.b.re
    }

    /// Ψ(x1, x2).
    pub fn wavefunction(&self, x1: f64, x2: f64) -> C64 {
        let pref = self.gauss_det().powf(0.25) / PI.sqrt();
        let quad = self.a * x1 * x1 + 2.0 * self.b * x1 * x2 + self.d * x2 * x2;
        pref * (-0.5 * quad).exp()
    }

    /// Gaussian decay exponent of the conditional amplitude in mode 2:
    /// Re(d − b²/(a+1)). Positive for every valid parameter triple.
    pub(crate) fn conditional_decay(&self) -> f64 {
        (self.d - self.b * self.b / (self.a + 1.0)).re
    }
}

/// Target state descriptor: photon number n squeezed with parameter r.
/// Positive r squeezes the x quadrature, negative r the y quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SFTarget {
    n: usize,
    r: f64,
}

impl SFTarget {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidArgument {
                reason: "squeezing parameter must be finite".into(),
            });
        }
        Ok(SFTarget { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Normalized wavefunction e^{−e^{2r}x²/2} H_n(e^r x)/√(A_n e^{−r}) with
    /// A_n = 2ⁿ n! √π, evaluated through the stable identity
    /// Ψ(x) = e^{r/2} φ_n(e^r x).
    pub fn wavefunction(&self, x: f64) -> f64 {
        (0.5 * self.r).exp() * fock_mode_unchecked(self.n, self.r.exp() * x)
    }

    /// Width parameter for grids covering this state: 1/e^{r}.
    pub(crate) fn sigma(&self) -> f64 {
        (-self.r).exp()
    }
}

/// A wavefunction tabulated on a shared grid. Values at `grid.points()[i]`
/// with quadrature weights attached, so inner products are dot products.
#[derive(Clone, Debug)]
pub struct Tabulated {
    grid: Arc<Grid>,
    values: Vec<C64>,
}

impl Tabulated {
    pub fn sample<F: Fn(f64) -> C64>(grid: Arc<Grid>, f: F) -> Self {
        let values = grid.points().iter().map(|&x| f(x)).collect();
        Tabulated { grid, values }
    }

    pub(crate) fn from_values(grid: Arc<Grid>, values: Vec<C64>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        Tabulated { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// ∫ ψ1* ψ2 on the shared grid.
    pub fn inner(&self, other: &Tabulated) -> Result<C64> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .grid
            .weights()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(&w, (a, b))| w * a.conj() * b)
            .sum())
    }

    /// ∫ |ψ|².
    pub fn norm_sq(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(&w, v)| w * v.norm_sqr())
            .sum()
    }

    pub fn scaled(&self, factor: C64) -> Tabulated {
        Tabulated {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|v| factor * v).collect(),
        }
    }
}

/// Result of projecting mode 1 of a TMEG state onto the n-photon Fock state.
#[derive(Clone, Debug)]
pub struct ProjectionResult {
    /// Heralding probability P_n.
    pub probability: f64,
    /// Normalized conditional wavefunction of mode 2.
    pub conditional: Tabulated,
}

// Tabulate the unnormalized conditional amplitude
// Φ_n(x2) = ∫ φ_n(x1) Ψ(x1, x2) dx1 on the given grid, together with the
// heralding probability ∫ |Φ_n|² dx2 evaluated on that same grid.
pub(crate) fn conditional_amplitude_on(
    p: &TmegParams,
    n: usize,
    grid: &Arc<Grid>,
    cfg: &QuadConfig,
) -> Result<(Vec<C64>, f64)> {
    if n > cfg.n_cap {
        return Err(Error::Capacity { n, cap: cfg.n_cap });
    }
    let rule = hermite_rule(cfg.order_1d)?;
    // Mode-1 integrand carries e^{−(1+Re a) x1²/2}.
    let beta1 = 0.5 * (1.0 + p.a.re);
    let sigma1 = (1.0 / beta1).sqrt();
    let x1: Vec<f64> = rule.nodes().iter().map(|&u| sigma1 * u).collect();
    let w1: Vec<f64> = rule
        .lifted_weights()
        .iter()
        .map(|&w| sigma1 * w)
        .collect();
    let mut row = vec![0.0; n + 1];
    let phi1: Vec<f64> = x1
        .iter()
        .map(|&x| {
            fock_mode_row(x, &mut row);
            row[n]
        })
        .collect();
    let pref = C64::new(p.gauss_det().powf(0.25) / PI.sqrt(), 0.0);

    let values: Vec<C64> = grid
        .points()
        .iter()
        .map(|&x2| {
            let mut acc = C64::new(0.0, 0.0);
            let dx2 = p.d * x2 * x2;
            for i in 0..x1.len() {
                let q = p.a * x1[i] * x1[i] + 2.0 * p.b * x1[i] * x2 + dx2;
                acc += w1[i] * phi1[i] * (-0.5 * q).exp();
            }
            pref * acc
        })
        .collect();

    let prob: f64 = grid
        .weights()
        .iter()
        .zip(&values)
        .map(|(&w, v)| w * v.norm_sqr())
        .sum();
    Ok((values, prob))
}

/// Project the measured mode onto |n⟩ by quadrature: heralding probability
/// and the normalized conditional state of the unmeasured mode.
///
/// The quadrature route is deliberately independent of the closed-form
/// output amplitude; the two must agree, which is the module's central
/// correctness property.
pub fn project_fock(p: &TmegParams, n: usize, cfg: &QuadConfig) -> Result<ProjectionResult> {
    let beta_c = p.conditional_decay();
    if !(beta_c > 0.0) {
        return Err(Error::Convergence {
            what: format!("conditional decay {beta_c} not positive"),
        });
    }
    let grid = Arc::new(Grid::hermite_scaled(cfg.order_1d, (1.0 / beta_c).sqrt())?);
    let (values, prob) = conditional_amplitude_on(p, n, &grid, cfg)?;
    if prob < cfg.herald_eps {
        return Err(Error::Unheraldable { probability: prob });
    }
    let scale = 1.0 / prob.sqrt();
    let conditional = Tabulated::from_values(
        Arc::clone(&grid),
        values.into_iter().map(|v| v * scale).collect(),
    );
    Ok(ProjectionResult {
        probability: prob,
        conditional,
    })
}

/// Closed-form conditional amplitude of the unmeasured mode after an
/// n-photon detection,
///
/// Ψ_out(x) = (−1)ⁿ (Re a Re d − (Re b)²)^{1/4} √(2(a−1)ⁿ/(a+1)^{n+1})
///            e^{−x²(d − b²/(a+1))/2} H_n(b x/√(a²−1)) / √(A_n P_n),
///
/// with every fractional power taken on the principal branch. The overall
/// phase is therefore fixed only up to convention; comparisons against the
/// quadrature route align the global phase first.
#[derive(Clone, Debug)]
pub struct ClosedFormOutput {
    prefactor: C64,
    gauss: C64,
    hermite_scale: C64,
    n: usize,
}

impl ClosedFormOutput {
    /// `probability` is P_n as computed by [`project_fock`].
    pub fn new(p: &TmegParams, n: usize, probability: f64) -> Result<Self> {
        if (p.a - 1.0).norm() < 1e-12 || (p.a + 1.0).norm() < 1e-12 {
            return Err(Error::SingularConfiguration {
                reason: format!("a = {} is a branch point of the closed form", p.a),
            });
        }
        if !(probability > 0.0) {
            return Err(Error::Unheraldable {
                probability,
            });
        }
        let ln_an = n as f64 * std::f64::consts::LN_2 + ln_factorial(n) + 0.5 * PI.ln();
        // √(2 (a−1)ⁿ / (a+1)^{n+1}) on the principal branch, assembled in
        // log space together with 1/√(A_n P_n).
        let log_pow = 0.5
            * (C64::new(std::f64::consts::LN_2, 0.0) + (p.a - 1.0).ln() * n as f64
                - (p.a + 1.0).ln() * (n as f64 + 1.0)
                - C64::new(ln_an + probability.ln(), 0.0));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let prefactor = sign * p.gauss_det().powf(0.25) * log_pow.exp();
        let gauss = p.d - p.b * p.b / (p.a + 1.0);
        let hermite_scale = p.b / (p.a * p.a - 1.0).sqrt();
        Ok(ClosedFormOutput {
            prefactor,
            gauss,
            hermite_scale,
            n,
        })
    }

    pub fn eval(&self, x: f64) -> C64 {
        self.prefactor
            * (-0.5 * self.gauss * x * x).exp()
            * hermite_eval_c(self.n, self.hermite_scale * x)
    }

    pub fn tabulate(&self, grid: Arc<Grid>) -> Tabulated {
        Tabulated::sample(grid, |x| self.eval(x))
    }
}

/// |⟨ψ1|ψ2⟩|² for normalized tabulations on a shared grid; global-phase
/// invariant by construction and symmetric in its arguments.
pub fn fidelity_pure(psi1: &Tabulated, psi2: &Tabulated) -> Result<f64> {
    for t in [psi1, psi2] {
        let dev = (t.norm_sq() - 1.0).abs();
        if dev > 1e-6 {
            return Err(Error::Unnormalized { deviation: dev });
        }
    }
    Ok(psi1.inner(psi2)?.norm_sqr())
}

/// Heralding probability and fidelity of the conditional state against the
/// squeezed-Fock target, evaluated on one grid wide enough for both.
pub fn heralded_fidelity(p: &TmegParams, target: &SFTarget, cfg: &QuadConfig) -> Result<(f64, f64)> {
    let beta_c = p.conditional_decay();
    if !(beta_c > 0.0) {
        return Err(Error::Convergence {
            what: format!("conditional decay {beta_c} not positive"),
        });
    }
    let sigma = (1.0 / beta_c).sqrt().max(target.sigma());
    let grid = Arc::new(Grid::hermite_scaled(cfg.order_1d, sigma)?);
    let (values, prob) = conditional_amplitude_on(p, target.n(), &grid, cfg)?;
    if prob < cfg.herald_eps {
        return Err(Error::Unheraldable { probability: prob });
    }
    let overlap: C64 = grid
        .weights()
        .iter()
        .zip(grid.points().iter().zip(&values))
        .map(|(&w, (&x, v))| w * v.conj() * target.wavefunction(x))
        .sum();
    Ok((prob, overlap.norm_sqr() / prob))
}

/// Truncated Fock-basis expansion C_mn = ⟨m, n|Ψ⟩ of a TMEG state.
#[derive(Clone, Debug)]
pub struct FockExpansion {
    n_max: usize,
    coeffs: Vec<C64>,
    tail_mass: f64,
}

impl FockExpansion {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// 1 − Σ |C_mn|² over the kept block.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn coeff(&self, m: usize, n: usize) -> C64 {
        self.coeffs[m * (self.n_max + 1) + n]
    }

    /// Row m: the unnormalized mode-2 state heralded by an m-photon
    /// detection, Σ_n C_mn |n⟩.
    pub fn herald_row(&self, m: usize) -> &[C64] {
        let w = self.n_max + 1;
        &self.coeffs[m * w..(m + 1) * w]
    }
}

/// Expand a TMEG state on the two-mode Fock basis by 2-D tensor quadrature,
/// C_mn = ∫∫ φ_m(x1) φ_n(x2) Ψ(x1,x2) dx1 dx2.
pub fn fock_expand(p: &TmegParams, n_max: usize, cfg: &QuadConfig) -> Result<FockExpansion> {
    if n_max > cfg.n_cap {
        return Err(Error::Capacity {
            n: n_max,
            cap: cfg.n_cap,
        });
    }
    let rule = hermite_rule(cfg.order_2d)?;
    let sigma1 = (2.0 / (1.0 + p.a.re)).sqrt();
    let sigma2 = (2.0 / (1.0 + p.d.re)).sqrt();
    let npts = rule.order();
    let width = n_max + 1;

    // Mode-function tables weighted by the grid weights, φ[k][i] w_i.
    let mode_table = |sigma: f64| -> Vec<f64> {
        let mut table = vec![0.0; width * npts];
        let mut row = vec![0.0; width];
        for (i, (&u, &w)) in rule.nodes().iter().zip(rule.lifted_weights()).enumerate() {
            let x = sigma * u;
            fock_mode_row(x, &mut row);
            let wt = sigma * w;
            for k in 0..width {
                table[k * npts + i] = row[k] * wt;
            }
        }
        table
    };
    let t1 = mode_table(sigma1);
    let t2 = mode_table(sigma2);

    let pref = C64::new(p.gauss_det().powf(0.25) / PI.sqrt(), 0.0);
    let x1s: Vec<f64> = rule.nodes().iter().map(|&u| sigma1 * u).collect();
    let x2s: Vec<f64> = rule.nodes().iter().map(|&u| sigma2 * u).collect();

    // T[m][j] = Σ_i φ_m(x1_i) w1_i Ψ(x1_i, x2_j), then C[m][n] = Σ_j T[m][j] φ_n(x2_j) w2_j.
    let kernel: Vec<C64> = crate::exec::map_range(cfg.exec, npts, |i| {
        let x1 = x1s[i];
        x2s.iter()
            .map(|&x2| {
                let q = p.a * x1 * x1 + 2.0 * p.b * x1 * x2 + p.d * x2 * x2;
                pref * (-0.5 * q).exp()
            })
            .collect::<Vec<C64>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let rows: Vec<Vec<C64>> = crate::exec::map_range(cfg.exec, width, |m| {
        let mut t_row = vec![C64::new(0.0, 0.0); npts];
        for i in 0..npts {
            let w = t1[m * npts + i];
            if w == 0.0 {
                continue;
            }
            let base = i * npts;
            for j in 0..npts {
                t_row[j] += w * kernel[base + j];
            }
        }
        (0..width)
            .map(|n| {
                (0..npts)
                    .map(|j| t_row[j] * t2[n * npts + j])
                    .sum::<C64>()
            })
            .collect()
    });

    let coeffs: Vec<C64> = rows.into_iter().flatten().collect();
    let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if captured > 1.0 + 1e-8 {
        return Err(Error::Convergence {
            what: format!("Fock expansion captured mass {captured} exceeds 1"),
        });
    }
    let tail_mass = (1.0 - captured).max(0.0);
    if tail_mass > cfg.tail_tol {
        return Err(Error::TruncationInsufficient {
            tail_mass,
            threshold: cfg.tail_tol,
        });
    }
    Ok(FockExpansion {
        n_max,
        coeffs,
        tail_mass,
    })
}

/// Fock-basis coefficients ⟨k|Ψ_SF⟩ of the target state, k = 0..=k_max,
/// by quadrature overlaps.
pub fn sf_fock_overlaps(target: &SFTarget, k_max: usize, cfg: &QuadConfig) -> Result<Vec<f64>> {
    if k_max > cfg.n_cap {
        return Err(Error::Capacity {
            n: k_max,
            cap: cfg.n_cap,
        });
    }
    let rule = hermite_rule(cfg.order_1d)?;
    // Combined Gaussian decay of φ_k Ψ_SF is (1 + e^{2r})/2.
    let sigma = (2.0 / (1.0 + (2.0 * target.r()).exp())).sqrt();
    let mut out = vec![0.0; k_max + 1];
    let mut row = vec![0.0; k_max + 1];
    for (&u, &w) in rule.nodes().iter().zip(rule.lifted_weights()) {
        let x = sigma * u;
        let wt = sigma * w * target.wavefunction(x);
        fock_mode_row(x, &mut row);
        for k in 0..=k_max {
            out[k] += wt * row[k];
        }
    }
    Ok(out)
}

/// Align the global phase of `candidate` to `reference` (maximizing
/// Re⟨reference|candidate⟩) and return the aligned copy.
pub fn phase_align(reference: &Tabulated, candidate: &Tabulated) -> Result<Tabulated> {
    let inner = reference.inner(candidate)?;
    if inner.norm() == 0.0 {
        return Ok(candidate.clone());
    }
    Ok(candidate.scaled(inner.conj() / inner.norm()))
}
