//! Physical parameters of the monitored triple-dot chain and the closed-form
//! eigenstructure of its single-electron block.
//!
//! Units: ħ = k_B = e = 1 and the reference (cold) temperature sets the energy
//! scale, so energies and potentials are in units of k_B T_ref and rates in
//! k_B T_ref / ħ.

use crate::error::{Error, Result};

/// All physical inputs, in dimensionless units.
///
/// The three dots sit at energies ε (outer, degenerate) and ε + Δ (central),
/// tunnel-coupled by Ω. Each dot exchanges electrons with its own reservoir
/// (tunnel rate Γ_l, potential μ_l, temperature T_l), and the central dot is
/// monitored by a charge detector of strength γ (`meas`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Outer-dot level ε.
    pub eps: f64,
    /// Central-dot detuning Δ (central level is ε + Δ). May be negative.
    pub delta: f64,
    /// Interdot hopping Ω > 0.
    pub omega: f64,
    /// Tunnel rate to the left reservoir.
    pub gamma_l: f64,
    /// Tunnel rate to the central reservoir.
    pub gamma_c: f64,
    /// Tunnel rate to the right reservoir.
    pub gamma_r: f64,
    /// Detector measurement strength γ.
    pub meas: f64,
    /// Electrochemical potential of the left reservoir.
    pub mu_l: f64,
    /// Electrochemical potential of the central reservoir.
    pub mu_c: f64,
    /// Electrochemical potential of the right reservoir.
    pub mu_r: f64,
    /// Temperature of the left reservoir.
    pub t_l: f64,
    /// Temperature of the central reservoir.
    pub t_c: f64,
    /// Temperature of the right reservoir.
    pub t_r: f64,
}

impl Default for ModelParams {
    /// Workhorse configuration: Ω = 1, Γ = 0.1, Δ = 10, everything grounded at
    /// unit temperature, detector off.
    fn default() -> Self {
        Self {
            eps: 0.0,
            delta: 10.0,
            omega: 1.0,
            gamma_l: 0.1,
            gamma_c: 0.1,
            gamma_r: 0.1,
            meas: 0.0,
            mu_l: 0.0,
            mu_c: 0.0,
            mu_r: 0.0,
            t_l: 1.0,
            t_c: 1.0,
            t_r: 1.0,
        }
    }
}

impl ModelParams {
    /// Outer-reservoir reference potential μ. The left/right reservoirs are
    /// expected to be at a common potential in every configuration of interest;
    /// derived sweep axes ("eps_minus_mu", "mu_c_minus_mu") are relative to it.
    pub fn mu_ref(&self) -> f64 {
        self.mu_l
    }

    /// Tunnel rates indexed (left, center, right).
    pub fn gammas(&self) -> [f64; 3] {
        [self.gamma_l, self.gamma_c, self.gamma_r]
    }

    /// Potentials indexed (left, center, right).
    pub fn mus(&self) -> [f64; 3] {
        [self.mu_l, self.mu_c, self.mu_r]
    }

    /// Temperatures indexed (left, center, right).
    pub fn temperatures(&self) -> [f64; 3] {
        [self.t_l, self.t_c, self.t_r]
    }

    fn fields(&self) -> [(&'static str, f64); 13] {
        [
            ("eps", self.eps),
            ("delta", self.delta),
            ("omega", self.omega),
            ("gamma_l", self.gamma_l),
            ("gamma_c", self.gamma_c),
            ("gamma_r", self.gamma_r),
            ("meas", self.meas),
            ("mu_l", self.mu_l),
            ("mu_c", self.mu_c),
            ("mu_r", self.mu_r),
            ("t_l", self.t_l),
            ("t_c", self.t_c),
            ("t_r", self.t_r),
        ]
    }
}

/// Check the physical admissibility of a parameter set.
///
/// Requires Ω > 0, all rates ≥ 0 with at least one Γ > 0, γ ≥ 0, all T > 0 and
/// every field finite. The error names the offending field.
pub fn validate(params: &ModelParams) -> Result<()> {
    for (name, value) in params.fields() {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                field: name,
                reason: format!("must be finite, got {value}"),
            });
        }
    }
    if params.omega <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "omega",
            reason: format!("hopping must be > 0, got {}", params.omega),
        });
    }
    for (name, value) in [
        ("gamma_l", params.gamma_l),
        ("gamma_c", params.gamma_c),
        ("gamma_r", params.gamma_r),
        ("meas", params.meas),
    ] {
        if value < 0.0 {
            return Err(Error::InvalidParameter {
                field: name,
                reason: format!("rate must be >= 0, got {value}"),
            });
        }
    }
    if params.gamma_l == 0.0 && params.gamma_c == 0.0 && params.gamma_r == 0.0 {
        return Err(Error::InvalidParameter {
            field: "gamma_l",
            reason: "at least one tunnel rate must be > 0".to_string(),
        });
    }
    for (name, value) in [("t_l", params.t_l), ("t_c", params.t_c), ("t_r", params.t_r)] {
        if value <= 0.0 {
            return Err(Error::InvalidParameter {
                field: name,
                reason: format!("temperature must be > 0, got {value}"),
            });
        }
    }
    Ok(())
}

/// Eigenbasis of the single-electron block.
///
/// The dark state |D⟩ = (|L⟩ − |R⟩)/√2 stays at E_D = ε; the bright states
/// |±⟩ = θ_Ω±(|L⟩ + |R⟩) − θ_α±|C⟩ split to E± = ε + α± with α± = (Δ ± χ)/2
/// and χ = √(Δ² + 8Ω²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenStructure {
    /// Bright-state splitting χ = E₊ − E₋ = √(Δ² + 8Ω²).
    pub chi: f64,
    /// Upper bright-state shift α₊ = (Δ + χ)/2 (> 0 for Ω > 0).
    pub alpha_plus: f64,
    /// Lower bright-state shift α₋ = (Δ − χ)/2 (< 0 for Ω > 0).
    pub alpha_minus: f64,
    /// Dark-state energy E_D = ε.
    pub e_d: f64,
    /// Upper bright-state energy E₊ = ε + α₊.
    pub e_plus: f64,
    /// Lower bright-state energy E₋ = ε + α₋.
    pub e_minus: f64,
    /// Outer-dot amplitude of |+⟩: θ_Ω₊ = Ω/𝒩₊.
    pub theta_omega_plus: f64,
    /// Outer-dot amplitude of |−⟩: θ_Ω₋ = Ω/𝒩₋.
    pub theta_omega_minus: f64,
    /// Central-dot amplitude of |+⟩: θ_α₊ = α₊/𝒩₊.
    pub theta_alpha_plus: f64,
    /// Central-dot amplitude of |−⟩: θ_α₋ = α₋/𝒩₋ (negative).
    pub theta_alpha_minus: f64,
    /// Detector weight β₊ = 𝒩₊/χ of |+⟩ in |C⟩, stored as a positive magnitude.
    pub beta_plus: f64,
    /// Detector weight β₋ = 𝒩₋/χ of |−⟩ in |C⟩, stored as a positive magnitude.
    pub beta_minus: f64,
    /// Detector-weight imbalance Λ = β₊² − β₋² = Δ/χ.
    pub lambda_cap: f64,
}

impl EigenStructure {
    /// Energy of a bound eigenstate.
    pub fn energy(&self, state: crate::rates::BoundState) -> f64 {
        match state {
            crate::rates::BoundState::Plus => self.e_plus,
            crate::rates::BoundState::Minus => self.e_minus,
            crate::rates::BoundState::Dark => self.e_d,
        }
    }
}

/// Diagonalize the single-electron block in closed form.
///
/// Valid for any sign of Δ. The ill-conditioned root (Δ ∓ χ cancels at large
/// |Δ|) is recovered from the exact product α₊α₋ = −2Ω².
pub fn diagonalize(params: &ModelParams) -> EigenStructure {
    let omega = params.omega;
    let delta = params.delta;
    let chi = delta.hypot(8.0_f64.sqrt() * omega);

    let (alpha_plus, alpha_minus) = if delta >= 0.0 {
        let ap = 0.5 * (delta + chi);
        (ap, -2.0 * omega * omega / ap)
    } else {
        let am = 0.5 * (delta - chi);
        (-2.0 * omega * omega / am, am)
    };

    let norm_plus = (2.0 * omega * omega + alpha_plus * alpha_plus).sqrt();
    let norm_minus = (2.0 * omega * omega + alpha_minus * alpha_minus).sqrt();

    let beta_plus = norm_plus / chi;
    let beta_minus = norm_minus / chi;

    EigenStructure {
        chi,
        alpha_plus,
        alpha_minus,
        e_d: params.eps,
        e_plus: params.eps + alpha_plus,
        e_minus: params.eps + alpha_minus,
        theta_omega_plus: omega / norm_plus,
        theta_omega_minus: omega / norm_minus,
        theta_alpha_plus: alpha_plus / norm_plus,
        theta_alpha_minus: alpha_minus / norm_minus,
        beta_plus,
        beta_minus,
        lambda_cap: beta_plus * beta_plus - beta_minus * beta_minus,
    }
}

/// Effective outer-dot coupling Ω²/Δ of the virtual (second-order) transition
/// through the detuned central dot.
pub fn effective_coupling(params: &ModelParams) -> Result<f64> {
    if params.delta == 0.0 {
        return Err(Error::DegenerateDetuning);
    }
    Ok(params.omega * params.omega / params.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base() -> ModelParams {
        // Workhorse map parameters: Ω = 1, Γ = 0.1, Δ = 10, ε − μ = −1.
        ModelParams {
            eps: -1.0,
            delta: 10.0,
            meas: 0.5,
            ..ModelParams::default()
        }
    }

    #[test]
    fn accepts_reference_parameters() {
        assert!(validate(&base()).is_ok());
    }

    #[test]
    fn rejects_zero_hopping() {
        let p = ModelParams { omega: 0.0, ..base() };
        match validate(&p) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "omega"),
            other => panic!("expected InvalidParameter, got {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_temperature() {
        let p = ModelParams { t_c: -1.0, ..base() };
        match validate(&p) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "t_c"),
            other => panic!("expected InvalidParameter, got {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_rate_and_nonfinite() {
        let p = ModelParams { gamma_r: -0.1, ..base() };
        assert!(matches!(
            validate(&p),
            Err(Error::InvalidParameter { field: "gamma_r", .. })
        ));
        let p = ModelParams { eps: f64::NAN, ..base() };
        assert!(matches!(
            validate(&p),
            Err(Error::InvalidParameter { field: "eps", .. })
        ));
        let p = ModelParams {
            gamma_l: 0.0,
            gamma_c: 0.0,
            gamma_r: 0.0,
            ..base()
        };
        assert!(validate(&p).is_err());
    }

    #[test]
    fn symmetric_detuning_closed_form() {
        let p = ModelParams { delta: 0.0, omega: 1.0, eps: 0.3, ..base() };
        let eig = diagonalize(&p);
        assert_relative_eq!(eig.chi, 2.0 * 2.0_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(eig.e_plus, 0.3 + 2.0_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(eig.e_minus, 0.3 - 2.0_f64.sqrt(), max_relative = 1e-14);
        // Λ = Δ/χ = 0: the detector weights are balanced.
        assert!(eig.lambda_cap.abs() < 1e-15);
        assert_relative_eq!(eig.beta_plus, eig.beta_minus, max_relative = 1e-14);
    }

    #[test]
    fn weight_normalization_identity() {
        let p = base();
        let eig = diagonalize(&p);
        let sum = eig.beta_plus * eig.beta_plus + eig.beta_minus * eig.beta_minus;
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn effective_coupling_values() {
        let p = ModelParams { omega: 1.0, delta: 10.0, ..base() };
        assert_relative_eq!(effective_coupling(&p).unwrap(), 0.1, max_relative = 1e-14);
        let p = ModelParams { omega: 2.0, delta: 4.0, ..base() };
        assert_relative_eq!(effective_coupling(&p).unwrap(), 1.0, max_relative = 1e-14);
        let p = ModelParams { delta: 0.0, ..base() };
        assert_eq!(effective_coupling(&p), Err(Error::DegenerateDetuning));
    }
}
