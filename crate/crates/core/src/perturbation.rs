//! Second-order time-dependent perturbation theory for the initial state
//! `|eg⟩ ⊗ |0⟩`, keeping the counter-rotating terms.
//!
//! In the interaction picture the state after a time `t` is, to second
//! order in `g`,
//!
//! ```text
//! |ψ⟩ ≈ |eg,0⟩ + X |ge,0⟩ + Σ_k A_k |gg,1_k⟩ + Σ_k B_k |ee,1_k⟩ + …
//! ```
//!
//! - `A_k`: qubit A decays and emits into mode k (rotating channel);
//! - `B_k`: qubit B is excited while emitting (counter-rotating channel);
//! - `X`: a photon emitted by one qubit is absorbed by the other, either
//!   A→B through the rotating terms or B→A through the counter-rotating
//!   ones.
//!
//! The reduced two-qubit state is an X-state and its concurrence is
//! `max(0, 2(|X| − √(Σ|A_k|²·Σ|B_k|²)))`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::field_model::{FieldModeSet, InteractionSpec};
use crate::geometry::WormholeGeometry;
use crate::kinematics::{self, LightconeParams, QubitPairConfig};
use crate::linalg::{pairwise_sum, pairwise_sum_real};
use crate::{Error, Result};

/// `|ν·t|` below which the phase integrals switch to Taylor series.
pub const SMALL_PHASE: f64 = 1e-6;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn sinc(x: f64) -> f64 {
    if x.abs() < SMALL_PHASE {
        1.0 - x * x / 6.0
    } else {
        libm::sin(x) / x
    }
}

/// `E(ν, t) = ∫₀ᵗ e^{iνs} ds`, with `E(0, t) = t`.
pub fn phase_integral(nu: f64, t: f64) -> Complex64 {
    let half = 0.5 * nu * t;
    Complex64::from_polar(t * sinc(half), half)
}

/// `(θ − sin θ)/θ²`, exact to rounding for every θ.
fn sine_defect(theta: f64) -> f64 {
    if theta.abs() < 0.5 {
        // θ/6 − θ³/120 + θ⁵/5040 − …
        let t2 = theta * theta;
        let mut term = theta / 6.0;
        let mut sum = term;
        let mut n = 3.0;
        for _ in 0..10 {
            term *= -t2 / ((n + 1.0) * (n + 2.0));
            sum += term;
            n += 2.0;
        }
        sum
    } else {
        (theta - libm::sin(theta)) / (theta * theta)
    }
}

/// Time-ordered kernel `D(ν, −ν; t) = ∫₀ᵗ dt₁ e^{−iνt₁} ∫₀^{t₁} dt₂ e^{iνt₂}`
/// that enters every exchange path.
pub fn exchange_kernel(nu: f64, t: f64) -> Complex64 {
    let theta = nu * t;
    let s = sinc(0.5 * theta);
    Complex64::new(0.5 * t * t * s * s, -t * t * sine_defect(theta))
}

/// General time-ordered double integral
/// `D(ν₂, ν₁; t) = ∫₀ᵗ dt₁ e^{iν₁t₁} ∫₀^{t₁} dt₂ e^{iν₂t₂}`.
pub fn nested_phase_integral(nu2: f64, nu1: f64, t: f64) -> Complex64 {
    if (nu2 * t).abs() >= SMALL_PHASE {
        (phase_integral(nu1 + nu2, t) - phase_integral(nu1, t)) / (I * nu2)
    } else if (nu1 * t).abs() >= SMALL_PHASE {
        // both orderings together give the product of the single integrals
        let swapped = (phase_integral(nu1 + nu2, t) - phase_integral(nu2, t)) / (I * nu1);
        phase_integral(nu1, t) * phase_integral(nu2, t) - swapped
    } else {
        // Σ_{m,n} (iν₁)^m (iν₂)^n t^{m+n+2} / (m! (n+1)! (m+n+2))
        let mut sum = Complex64::new(0.0, 0.0);
        let a = I * nu1;
        let b = I * nu2;
        let mut am = Complex64::new(1.0, 0.0);
        let mut m_fact = 1.0;
        for m in 0..4 {
            let mut bn = Complex64::new(1.0, 0.0);
            let mut n1_fact = 1.0;
            for n in 0..4 {
                n1_fact *= (n + 1) as f64;
                let power = libm::pow(t, (m + n + 2) as f64);
                sum += am * bn * power / (m_fact * n1_fact * (m + n + 2) as f64);
                bn *= b;
            }
            am *= a;
            m_fact *= (m + 1) as f64;
        }
        sum
    }
}

fn check_reference(spec: &InteractionSpec, modes: &FieldModeSet) -> Result<()> {
    let rel = (spec.omega() - modes.reference_frequency()).abs() / spec.omega();
    if rel > 1e-12 {
        return Err(Error::InvalidParameter(
            "mode set was normalized for a different qubit frequency",
        ));
    }
    Ok(())
}

/// First-order emission amplitudes `(A_k, B_k)` in mode order.
///
/// `A_k = −i g f_k e^{−ikχ_A} E(ω_k − Ω, t)` and
/// `B_k = −i g f_k e^{−ikχ_B} E(ω_k + Ω, t)`.
pub fn first_order_amplitudes(
    spec: &InteractionSpec,
    modes: &FieldModeSet,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    check_reference(spec, modes)?;
    let (g, omega, t) = (spec.g(), spec.omega(), spec.time());
    let (chi_a, chi_b) = (spec.position(crate::Qubit::A), spec.position(crate::Qubit::B));
    let mut a = Vec::with_capacity(modes.len());
    let mut b = Vec::with_capacity(modes.len());
    for mode in modes.modes() {
        let scale = g * mode.weight;
        a.push(-I * Complex64::from_polar(scale, -mode.k * chi_a) * phase_integral(mode.omega - omega, t));
        b.push(-I * Complex64::from_polar(scale, -mode.k * chi_b) * phase_integral(mode.omega + omega, t));
    }
    Ok((a, b))
}

/// Second-order amplitude of `|ge,0⟩`:
/// `X = −g² Σ_k f_k² [e^{ikρ} D(ω_k − Ω, Ω − ω_k) + e^{−ikρ} D(ω_k + Ω, −Ω − ω_k)]`
/// with `ρ = χ_B − χ_A`, summed pairwise over modes.
pub fn exchange_amplitude(spec: &InteractionSpec, modes: &FieldModeSet) -> Result<Complex64> {
    check_reference(spec, modes)?;
    let (g, omega, t) = (spec.g(), spec.omega(), spec.time());
    let rho = spec.separation();
    let terms: Vec<Complex64> = modes
        .modes()
        .iter()
        .map(|mode| {
            let w2 = mode.weight * mode.weight;
            let forward = Complex64::from_polar(w2, mode.k * rho);
            forward * exchange_kernel(mode.omega - omega, t)
                + forward.conj() * exchange_kernel(mode.omega + omega, t)
        })
        .collect();
    Ok(-(g * g) * pairwise_sum(&terms))
}

/// Everything the second-order state needs for one interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeAmplitudes {
    /// Photon-exchange amplitude X of `|ge,0⟩`.
    pub exchange: Complex64,
    /// Rotating emission amplitudes `A_k` of `|gg,1_k⟩`.
    pub emission_a: Vec<Complex64>,
    /// Counter-rotating emission amplitudes `B_k` of `|ee,1_k⟩`.
    pub emission_b: Vec<Complex64>,
    /// `Σ_k |A_k|²`.
    pub p_a: f64,
    /// `Σ_k |B_k|²`.
    pub p_b: f64,
}

impl PerturbativeAmplitudes {
    /// Evaluates all amplitudes on a mode set.
    pub fn compute(spec: &InteractionSpec, modes: &FieldModeSet) -> Result<Self> {
        let (emission_a, emission_b) = first_order_amplitudes(spec, modes)?;
        let exchange = exchange_amplitude(spec, modes)?;
        let norms = |v: &[Complex64]| pairwise_sum_real(&v.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>());
        let p_a = norms(&emission_a);
        let p_b = norms(&emission_b);
        Ok(Self { exchange, emission_a, emission_b, p_a, p_b })
    }

    /// `2(|X| − √(p_A p_B))` before clamping; negative means separable.
    pub fn raw_concurrence(&self) -> f64 {
        2.0 * (self.exchange.norm() - libm::sqrt(self.p_a * self.p_b))
    }

    /// Second-order reduced state of the two qubits.
    pub fn x_state(&self) -> TwoQubitXState {
        TwoQubitXState::from_amplitudes(self)
    }
}

/// `max(0, 2(|X| − √(Σ|A_k|² Σ|B_k|²)))`.
pub fn concurrence_perturbative(amps: &PerturbativeAmplitudes) -> f64 {
    amps.raw_concurrence().max(0.0)
}

/// Reduced two-qubit state in X form, to second order.
///
/// Only the `|eg⟩⟨ge|` coherence is kept. `p_ge = |X|²` is fourth order in
/// `g` and is dropped, so `p_eg·p_ge ≥ |x|²` fails for any nonzero
/// exchange; [`TwoQubitXState::positivity_violated`] reports it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitXState {
    /// Population of `|eg⟩`.
    pub p_eg: f64,
    /// Population of `|ge⟩`.
    pub p_ge: f64,
    /// Population of `|gg⟩`.
    pub p_gg: f64,
    /// Population of `|ee⟩`.
    pub p_ee: f64,
    /// Coherence `⟨eg|ρ|ge⟩`.
    pub x: Complex64,
}

impl TwoQubitXState {
    fn from_amplitudes(amps: &PerturbativeAmplitudes) -> Self {
        Self {
            p_eg: 1.0 - amps.p_a - amps.p_b,
            p_ge: 0.0,
            p_gg: amps.p_a,
            p_ee: amps.p_b,
            x: amps.exchange.conj(),
        }
    }

    /// Sum of the populations.
    pub fn trace(&self) -> f64 {
        self.p_eg + self.p_ge + self.p_gg + self.p_ee
    }

    /// The `{eg, ge}` block is not positive semidefinite.
    pub fn positivity_violated(&self) -> bool {
        self.p_eg * self.p_ge < self.x.norm_sqr()
    }

    /// `max(0, 2(|x| − √(p_gg p_ee)))`.
    pub fn concurrence(&self) -> f64 {
        (2.0 * (self.x.norm() - libm::sqrt(self.p_gg * self.p_ee))).max(0.0)
    }

    /// Dense 4×4 matrix, row-major in the basis `{gg, ge, eg, ee}`.
    pub fn to_matrix(&self) -> [[Complex64; 4]; 4] {
        let z = Complex64::new(0.0, 0.0);
        let r = |v: f64| Complex64::new(v, 0.0);
        [
            [r(self.p_gg), z, z, z],
            [z, r(self.p_ge), self.x.conj(), z],
            [z, self.x, r(self.p_eg), z],
            [z, z, z, r(self.p_ee)],
        ]
    }
}

/// Result of mapping a laboratory configuration onto the flat-space engine.
#[derive(Debug, Clone, PartialEq)]
pub struct WormholeEvaluation {
    /// Light-cone parameters of the configuration.
    pub params: LightconeParams,
    /// Amplitudes at free-falling separation ρ_l.
    pub amplitudes: PerturbativeAmplitudes,
}

impl WormholeEvaluation {
    /// Clamped concurrence.
    pub fn concurrence(&self) -> f64 {
        concurrence_perturbative(&self.amplitudes)
    }
}

/// Flat-space concurrence of qubits a distance `separation` apart.
pub fn flat_concurrence(
    separation: f64,
    omega: f64,
    coupling: f64,
    time: f64,
    modes: &FieldModeSet,
) -> Result<f64> {
    let spec = InteractionSpec::symmetric(separation, omega, coupling, time)?;
    Ok(concurrence_perturbative(&PerturbativeAmplitudes::compute(&spec, modes)?))
}

/// Runs the flat-space engine at the free-falling separation `ρ_l` of a
/// laboratory configuration.
pub fn evaluate_wormhole(
    geom: &WormholeGeometry,
    cfg: &QubitPairConfig,
    modes: &FieldModeSet,
) -> Result<WormholeEvaluation> {
    let params = kinematics::params_from_physical(geom, cfg)?;
    let spec = InteractionSpec::symmetric(params.rho_l, cfg.omega(), cfg.coupling(), cfg.time())?;
    let amplitudes = PerturbativeAmplitudes::compute(&spec, modes)?;
    Ok(WormholeEvaluation { params, amplitudes })
}

/// Concurrence of a laboratory configuration on the wormhole background.
pub fn wormhole_concurrence(
    geom: &WormholeGeometry,
    cfg: &QubitPairConfig,
    modes: &FieldModeSet,
) -> Result<f64> {
    Ok(evaluate_wormhole(geom, cfg, modes)?.concurrence())
}
