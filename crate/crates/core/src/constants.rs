//! Physical constants (CODATA 2018 exact or recommended values, SI units).

/// Reduced Planck constant ħ in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant k_B in J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Magnetic flux quantum φ₀ = h/2e in Wb (exact).
pub const FLUX_QUANTUM: f64 = 2.067_833_848_461_929e-15;
