//! Linear generator of the master equation, its stationary solution, and a
//! time-evolution oracle.
//!
//! The tracked variables are ordered (ρ₀₀, ρ₊₊, ρ₋₋, ρ_DD, X, Y) with the
//! bright-state coherence split as ρ₊₋ = X + iY. Coherences with the empty and
//! dark states are dropped (weak system-reservoir coupling).

use nalgebra::{Complex, Matrix4, Matrix6, Vector6};

use crate::error::{Error, Result};
use crate::model::{EigenStructure, ModelParams};
use crate::rates::{BoundState, RateSet};

/// Residual tolerance ‖A·v‖∞ the stationary solver guarantees.
pub const STEADY_STATE_RESIDUAL_TOL: f64 = 1e-10;
/// Populations in [−NEGATIVITY_TOL, 0) are clamped to zero.
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Relative singular-value gap below which the null space is considered degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// The six tracked components of the reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    /// Empty-state population ρ₀₀.
    pub p0: f64,
    /// Upper bright-state population ρ₊₊.
    pub pp: f64,
    /// Lower bright-state population ρ₋₋.
    pub pm: f64,
    /// Dark-state population ρ_DD.
    pub pd: f64,
    /// Real part of the bright-state coherence.
    pub x: f64,
    /// Imaginary part of the bright-state coherence.
    pub y: f64,
}

impl StateVector {
    /// The physically prepared initial condition: everything in |0⟩.
    pub fn empty() -> Self {
        Self { p0: 1.0, pp: 0.0, pm: 0.0, pd: 0.0, x: 0.0, y: 0.0 }
    }

    pub fn from_vector(v: &Vector6<f64>) -> Self {
        Self { p0: v[0], pp: v[1], pm: v[2], pd: v[3], x: v[4], y: v[5] }
    }

    pub fn to_vector(self) -> Vector6<f64> {
        Vector6::new(self.p0, self.pp, self.pm, self.pd, self.x, self.y)
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.p0, self.pp, self.pm, self.pd]
    }

    /// Sum of the populations.
    pub fn trace(&self) -> f64 {
        self.p0 + self.pp + self.pm + self.pd
    }

    /// Largest componentwise deviation from another state.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.to_vector() - other.to_vector()).amax()
    }
}

/// Dense 6×6 generator A with d(state)/dt = A · state.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    matrix: Matrix6<f64>,
    chi: f64,
}

impl Generator {
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.matrix
    }

    /// Bright-state splitting χ, the fastest coherent scale.
    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// Apply the generator to a state.
    pub fn apply(&self, v: &StateVector) -> Vector6<f64> {
        self.matrix * v.to_vector()
    }
}

/// Assemble the generator from the golden-rule rates and the measurement terms.
///
/// Population rows exchange probability with |0⟩ at the summed rates; the
/// detector mixes ρ₊₊ ↔ ρ₋₋ at γβ₊²β₋², couples them to X with ∓γβ₊β₋Λ, and
/// damps the coherence at ½γ(β₊² ∓ β₋²)² on top of the tunneling decay
/// ½Σ_{l,i=±} W_{0i}^l. X and Y rotate into each other at χ/ħ.
pub fn build_generator(params: &ModelParams, eig: &EigenStructure, rates: &RateSet) -> Generator {
    let g = params.meas;
    let bp2 = eig.beta_plus * eig.beta_plus;
    let bm2 = eig.beta_minus * eig.beta_minus;
    let mixing = g * bp2 * bm2;
    let coupling = g * eig.beta_plus * eig.beta_minus * eig.lambda_cap;

    let win = [
        rates.total_filling(BoundState::Plus),
        rates.total_filling(BoundState::Minus),
        rates.total_filling(BoundState::Dark),
    ];
    let wout = [
        rates.total_emptying(BoundState::Plus),
        rates.total_emptying(BoundState::Minus),
        rates.total_emptying(BoundState::Dark),
    ];

    let mut m = Matrix6::zeros();

    // dρ₀₀/dt
    m[(0, 0)] = -(win[0] + win[1] + win[2]);
    m[(0, 1)] = wout[0];
    m[(0, 2)] = wout[1];
    m[(0, 3)] = wout[2];

    // dρ₊₊/dt
    m[(1, 0)] = win[0];
    m[(1, 1)] = -wout[0] - mixing;
    m[(1, 2)] = mixing;
    m[(1, 4)] = -coupling;

    // dρ₋₋/dt
    m[(2, 0)] = win[1];
    m[(2, 1)] = mixing;
    m[(2, 2)] = -wout[1] - mixing;
    m[(2, 4)] = coupling;

    // dρ_DD/dt
    m[(3, 0)] = win[2];
    m[(3, 3)] = -wout[2];

    // dX/dt
    let tunneling_decay = wout[0] + wout[1];
    m[(4, 1)] = -0.5 * coupling;
    m[(4, 2)] = 0.5 * coupling;
    m[(4, 4)] = -0.5 * (tunneling_decay + g * (bp2 - bm2) * (bp2 - bm2));
    m[(4, 5)] = eig.chi;

    // dY/dt
    m[(5, 4)] = -eig.chi;
    m[(5, 5)] = -0.5 * (tunneling_decay + g * (bp2 + bm2) * (bp2 + bm2));

    Generator { matrix: m, chi: eig.chi }
}

/// Action of the measurement dissipator D[ρ] = L ρ L† − ½{L†L, ρ} with
/// L = √γ |C⟩⟨C| restricted to the bright doublet, projected onto the six
/// tracked variables.
///
/// Built by explicit complex matrix algebra on the four-state space, column by
/// column, independently of the hand-transcribed terms in [`build_generator`];
/// the two must agree entrywise on the γ-dependent part.
pub fn build_measurement_dissipator(params: &ModelParams, eig: &EigenStructure) -> Matrix6<f64> {
    type C = Complex<f64>;
    let one = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);

    // Basis order (|0⟩, |+⟩, |−⟩, |D⟩); ⟨+|C⟩ = −β₊, ⟨−|C⟩ = β₋.
    let bp = C::new(eig.beta_plus, 0.0);
    let bm = C::new(eig.beta_minus, 0.0);
    let mut lindblad_op = Matrix4::<C>::zeros();
    lindblad_op[(1, 1)] = bp * bp;
    lindblad_op[(1, 2)] = -bp * bm;
    lindblad_op[(2, 1)] = -bm * bp;
    lindblad_op[(2, 2)] = bm * bm;
    lindblad_op *= C::new(params.meas.sqrt(), 0.0);

    let l_dag = lindblad_op.adjoint();
    let l_dag_l = l_dag * lindblad_op;

    // Hermitian basis elements spanning the tracked subspace.
    let basis = |entries: &[((usize, usize), C)]| {
        let mut b = Matrix4::<C>::zeros();
        for &((r, c), v) in entries {
            b[(r, c)] = v;
        }
        b
    };
    let tracked = [
        basis(&[((0, 0), one)]),
        basis(&[((1, 1), one)]),
        basis(&[((2, 2), one)]),
        basis(&[((3, 3), one)]),
        basis(&[((1, 2), one), ((2, 1), one)]),
        basis(&[((1, 2), i), ((2, 1), -i)]),
    ];

    let mut out = Matrix6::zeros();
    for (col, b) in tracked.iter().enumerate() {
        let d = lindblad_op * b * l_dag - (l_dag_l * b + b * l_dag_l) * C::new(0.5, 0.0);
        out[(0, col)] = d[(0, 0)].re;
        out[(1, col)] = d[(1, 1)].re;
        out[(2, col)] = d[(2, 2)].re;
        out[(3, col)] = d[(3, 3)].re;
        out[(4, col)] = d[(1, 2)].re;
        out[(5, col)] = d[(1, 2)].im;
    }
    out
}

fn sorted_singular_values(m: &Matrix6<f64>) -> [f64; 6] {
    let svd = m.svd(false, false);
    let mut sv = [0.0; 6];
    for (i, s) in svd.singular_values.iter().enumerate() {
        sv[i] = *s;
    }
    sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sv
}

/// Solve A·v = 0 with unit trace.
///
/// One redundant population row is replaced by the trace row (1,1,1,1,0,0) and
/// the 6×6 system is solved by LU with iterative refinement. If the
/// second-smallest singular value of A falls below `DEGENERACY_GAP`·‖A‖ the
/// null space is (numerically) more than one-dimensional and the bistable
/// regime is reported instead of an arbitrary branch.
pub fn steady_state(gen: &Generator) -> Result<StateVector> {
    let a = &gen.matrix;
    let sv = sorted_singular_values(a);
    let norm = sv[5];
    let gap = if norm > 0.0 { sv[1] / norm } else { 0.0 };
    if norm == 0.0 || sv[1] < DEGENERACY_GAP * norm {
        return Err(Error::DegenerateSteadyState { gap });
    }

    let mut b = *a;
    for col in 0..6 {
        b[(0, col)] = if col < 4 { 1.0 } else { 0.0 };
    }
    let rhs = Vector6::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);

    let lu = b.lu();
    let mut v = lu
        .solve(&rhs)
        .ok_or(Error::DegenerateSteadyState { gap })?;

    // Iterative refinement against the constrained system.
    for _ in 0..4 {
        let residual = b * v - rhs;
        if residual.amax() <= 1e-14 * norm.max(1.0) {
            break;
        }
        match lu.solve(&residual) {
            Some(correction) => v -= correction,
            None => break,
        }
    }

    let mut state = StateVector::from_vector(&v);
    for p in [&mut state.p0, &mut state.pp, &mut state.pm, &mut state.pd] {
        if *p < 0.0 && *p >= -NEGATIVITY_TOL {
            *p = 0.0;
        }
    }

    let residual = gen.apply(&state).amax();
    let negativity = state.populations().iter().cloned().fold(0.0, f64::min);
    if residual > STEADY_STATE_RESIDUAL_TOL || negativity < -NEGATIVITY_TOL {
        // The solve did not meet the contract; treat as effective degeneracy.
        return Err(Error::DegenerateSteadyState { gap });
    }
    Ok(state)
}

/// Stable step for the fixed-step integrator: resolves both the fastest decay
/// (bounded by the largest generator entry) and the coherent rotation at χ.
pub fn default_dt(gen: &Generator) -> f64 {
    let amax = gen.matrix.amax();
    0.1 / (6.0 * amax).max(gen.chi)
}

/// Classic fixed-step fourth-order integration of dv/dt = A·v over `t_final`.
///
/// The step is shrunk to divide `t_final` evenly. The population-block trace
/// is conserved by every stage, so the trace drifts only at rounding level.
pub fn evolve(gen: &Generator, v0: &StateVector, t_final: f64, dt: f64) -> StateVector {
    assert!(t_final >= 0.0 && dt > 0.0, "evolve needs t_final >= 0 and dt > 0");
    if t_final == 0.0 {
        return *v0;
    }
    let steps = (t_final / dt).ceil().max(1.0) as u64;
    let h = t_final / steps as f64;
    let a = &gen.matrix;

    let mut v = v0.to_vector();
    for _ in 0..steps {
        let k1 = a * v;
        let k2 = a * (v + k1 * (0.5 * h));
        let k3 = a * (v + k2 * (0.5 * h));
        let k4 = a * (v + k3 * h);
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    StateVector::from_vector(&v)
}

/// Propagate to `t_final` with the default step and require the trajectory to
/// have settled: the states at t_final/2 and t_final must agree to 1e−6.
pub fn relax_to_steady_state(
    gen: &Generator,
    v0: &StateVector,
    t_final: f64,
) -> Result<StateVector> {
    let dt = default_dt(gen);
    let halfway = evolve(gen, v0, 0.5 * t_final, dt);
    let settled = evolve(gen, &halfway, 0.5 * t_final, dt);
    let drift = settled.max_abs_diff(&halfway);
    if drift > 1e-6 {
        return Err(Error::NonConvergence { drift });
    }
    Ok(settled)
}

/// Slowest relaxation rate of the generator, i.e. min |Re λ| over the
/// eigenvalues that are not (numerically) part of the stationary subspace.
pub fn slowest_relaxation_rate(gen: &Generator) -> f64 {
    let norm = gen.matrix.amax();
    let cutoff = 1e-12 * norm.max(1.0);
    gen.matrix
        .complex_eigenvalues()
        .iter()
        .map(|z| -z.re)
        .filter(|&r| r > cutoff)
        .fold(f64::INFINITY, f64::min)
}

/// Stationary state with the physically prepared fallback.
///
/// On a degenerate (bistable) generator the system is instead relaxed from the
/// empty state — the experimentally natural preparation — and the point is
/// flagged. The returned flag is `true` when the fallback was used.
pub fn steady_state_or_prepared(gen: &Generator) -> Result<(StateVector, bool)> {
    match steady_state(gen) {
        Ok(state) => Ok((state, false)),
        Err(Error::DegenerateSteadyState { .. }) => {
            let rate = slowest_relaxation_rate(gen);
            let horizon = if rate.is_finite() && rate > 0.0 { 18.0 / rate } else { 1e6 };
            let state = relax_to_steady_state(gen, &StateVector::empty(), horizon)?;
            Ok((state, true))
        }
        Err(e) => Err(e),
    }
}
