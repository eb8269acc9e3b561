//! Fermi occupations and golden-rule transition rates between the empty
//! configuration and the single-electron eigenstates.

use crate::model::{EigenStructure, ModelParams};

/// Electron reservoirs, one per dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reservoir {
    Left,
    Center,
    Right,
}

impl Reservoir {
    pub const ALL: [Reservoir; 3] = [Reservoir::Left, Reservoir::Center, Reservoir::Right];

    pub fn index(self) -> usize {
        match self {
            Reservoir::Left => 0,
            Reservoir::Center => 1,
            Reservoir::Right => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Reservoir::Left => "L",
            Reservoir::Center => "C",
            Reservoir::Right => "R",
        }
    }
}

/// Single-electron eigenstates reachable by tunneling from the empty state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundState {
    Plus,
    Minus,
    Dark,
}

impl BoundState {
    pub const ALL: [BoundState; 3] = [BoundState::Plus, BoundState::Minus, BoundState::Dark];

    pub fn index(self) -> usize {
        match self {
            BoundState::Plus => 0,
            BoundState::Minus => 1,
            BoundState::Dark => 2,
        }
    }
}

/// Fermi occupation f(E − μ) = 1/[1 + exp((E − μ)/T)].
///
/// Branches on the sign of the reduced energy so neither branch ever
/// exponentiates a positive argument; safe for |E − μ|/T up to ±1e4 and beyond.
pub fn fermi(e: f64, mu: f64, t: f64) -> f64 {
    let x = (e - mu) / t;
    if x >= 0.0 {
        let z = (-x).exp();
        z / (1.0 + z)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Golden-rule rates W for every (reservoir, eigenstate) pair and direction.
///
/// `w_in[l][λ]` fills |λ⟩ from the empty state through reservoir l, `w_out`
/// empties it. The dark state carries no central-dot amplitude, so both
/// central-reservoir entries for it are exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    pub w_in: [[f64; 3]; 3],
    pub w_out: [[f64; 3]; 3],
}

impl RateSet {
    /// Filling rate W_{λ0}^l for |0⟩ → |λ⟩ via reservoir l.
    pub fn filling(&self, l: Reservoir, s: BoundState) -> f64 {
        self.w_in[l.index()][s.index()]
    }

    /// Emptying rate W_{0λ}^l for |λ⟩ → |0⟩ via reservoir l.
    pub fn emptying(&self, l: Reservoir, s: BoundState) -> f64 {
        self.w_out[l.index()][s.index()]
    }

    /// Filling rate summed over reservoirs.
    pub fn total_filling(&self, s: BoundState) -> f64 {
        Reservoir::ALL.iter().map(|&l| self.filling(l, s)).sum()
    }

    /// Emptying rate summed over reservoirs.
    pub fn total_emptying(&self, s: BoundState) -> f64 {
        Reservoir::ALL.iter().map(|&l| self.emptying(l, s)).sum()
    }
}

/// Squared tunneling matrix element connecting reservoir l to eigenstate λ,
/// in units of the bare rate Γ_l.
pub fn tunnel_weight(eig: &EigenStructure, l: Reservoir, s: BoundState) -> f64 {
    match (l, s) {
        (Reservoir::Left | Reservoir::Right, BoundState::Plus) => {
            eig.theta_omega_plus * eig.theta_omega_plus
        }
        (Reservoir::Left | Reservoir::Right, BoundState::Minus) => {
            eig.theta_omega_minus * eig.theta_omega_minus
        }
        (Reservoir::Left | Reservoir::Right, BoundState::Dark) => 0.5,
        (Reservoir::Center, BoundState::Plus) => eig.theta_alpha_plus * eig.theta_alpha_plus,
        (Reservoir::Center, BoundState::Minus) => eig.theta_alpha_minus * eig.theta_alpha_minus,
        (Reservoir::Center, BoundState::Dark) => 0.0,
    }
}

/// Build the full rate set from validated parameters and their eigenstructure.
///
/// Filling rates carry the Fermi factor f(E_λ − μ_l) of the emitting
/// reservoir; emptying rates carry 1 − f.
pub fn golden_rule_rates(params: &ModelParams, eig: &EigenStructure) -> RateSet {
    let gammas = params.gammas();
    let mus = params.mus();
    let temps = params.temperatures();

    let mut w_in = [[0.0; 3]; 3];
    let mut w_out = [[0.0; 3]; 3];
    for l in Reservoir::ALL {
        let li = l.index();
        for s in BoundState::ALL {
            let si = s.index();
            let weight = tunnel_weight(eig, l, s);
            if weight == 0.0 {
                continue;
            }
            let occ = fermi(eig.energy(s), mus[li], temps[li]);
            w_in[li][si] = gammas[li] * weight * occ;
            w_out[li][si] = gammas[li] * weight * (1.0 - occ);
        }
    }
    RateSet { w_in, w_out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{diagonalize, ModelParams};
    use approx::assert_relative_eq;

    #[test]
    fn fermi_symmetry_point() {
        assert_eq!(fermi(1.3, 1.3, 0.7), 0.5);
    }

    #[test]
    fn fermi_particle_hole_symmetry() {
        let (mu, t) = (0.4, 1.7);
        for e in [-3.0, -0.2, 0.9, 5.0] {
            let sum = fermi(e, mu, t) + fermi(2.0 * mu - e, mu, t);
            assert_relative_eq!(sum, 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn fermi_extreme_arguments_stay_finite() {
        // Oracle: for x = (e-mu)/t >> 1, f = e^{-x}/(1+e^{-x}) ~ e^{-x}.
        let f = fermi(700.0, 0.0, 1.0);
        assert!(f.is_finite() && f > 0.0);
        assert_relative_eq!(f, (-700.0_f64).exp(), max_relative = 1e-12);
        // Deep beyond the representable range the value rounds to 0/1 without
        // overflowing.
        let lo = fermi(1e4, 0.0, 1.0);
        let hi = fermi(-1e4, 0.0, 1.0);
        assert!(lo.is_finite() && (0.0..1.0).contains(&lo));
        assert!(hi.is_finite() && hi <= 1.0 && hi > 0.99);
    }

    #[test]
    fn dark_state_decoupled_from_center() {
        let params = ModelParams { gamma_c: 0.73, ..ModelParams::default() };
        let eig = diagonalize(&params);
        let rates = golden_rule_rates(&params, &eig);
        assert_eq!(rates.filling(Reservoir::Center, BoundState::Dark), 0.0);
        assert_eq!(rates.emptying(Reservoir::Center, BoundState::Dark), 0.0);
    }

    #[test]
    fn filled_reservoir_cannot_absorb() {
        let params = ModelParams { mu_l: 1e6, ..ModelParams::default() };
        let eig = diagonalize(&params);
        let rates = golden_rule_rates(&params, &eig);
        for s in BoundState::ALL {
            assert_eq!(rates.emptying(Reservoir::Left, s), 0.0);
        }
    }

    #[test]
    fn dark_filling_rate_reference_value() {
        // W_{D0}^L = Γ/2 · f(ε − μ) with ε − μ = −1, T = 1.
        let params = ModelParams { eps: -1.0, ..ModelParams::default() };
        let eig = diagonalize(&params);
        let rates = golden_rule_rates(&params, &eig);
        let f = 1.0 / (1.0 + (-1.0_f64).exp());
        assert_relative_eq!(
            rates.filling(Reservoir::Left, BoundState::Dark),
            0.05 * f,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            rates.filling(Reservoir::Left, BoundState::Dark),
            0.0365529,
            max_relative = 1e-5
        );
    }

    #[test]
    fn local_detailed_balance() {
        let params = ModelParams {
            eps: -0.7,
            delta: 4.0,
            mu_l: 0.3,
            mu_c: -1.1,
            mu_r: 0.9,
            t_l: 0.8,
            t_c: 1.4,
            t_r: 2.3,
            meas: 0.2,
            ..ModelParams::default()
        };
        let eig = diagonalize(&params);
        let rates = golden_rule_rates(&params, &eig);
        let mus = params.mus();
        let temps = params.temperatures();
        for l in Reservoir::ALL {
            for s in BoundState::ALL {
                let (win, wout) = (rates.filling(l, s), rates.emptying(l, s));
                if win == 0.0 && wout == 0.0 {
                    continue;
                }
                let expected = (-(eig.energy(s) - mus[l.index()]) / temps[l.index()]).exp();
                assert_relative_eq!(win / wout, expected, max_relative = 1e-12);
            }
        }
    }
}
