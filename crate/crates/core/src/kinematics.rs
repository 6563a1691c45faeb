//! Light-cone bookkeeping between the laboratory frame `{t, x}` and the
//! free-falling frame `{t, l}` in which the line is flat.
//!
//! Qubits sit symmetrically about the throat, `x_A = −x_B`. The
//! dimensionless parameters are
//!
//! | symbol | definition | meaning |
//! |--------|------------|---------|
//! | ξ_b    | b₀/x_B     | throat size relative to the qubit position |
//! | ξ_F    | ct/(2x_B)  | light-cone parameter if the line were flat |
//! | ξ_x    | t/t_AB     | light-cone parameter in the laboratory |
//! | ξ_l    | ct/ρ_l     | light-cone parameter in free-falling coordinates |
//!
//! The throat-to-distance ratio plotted on sweep axes, ε_b = 2b₀/ρ_x, is
//! numerically the same quantity as ξ_b; [`LightconeParams::epsilon_b`] is an
//! alias. Likewise ε_x and ξ_x name the same laboratory parameter.
//!
//! The closed form of `t_AB` carries an `arcsinh` and a `log` term; they
//! cancel identically, so `c·t_AB = ρ_l` and `ξ_x = ξ_l`. Both are still
//! evaluated term by term so that [`xi_l_from_xi_x`] and the direct ratio
//! can be checked against each other.

use crate::geometry::WormholeGeometry;
use crate::quadrature;
use crate::{Error, Result};

/// Below this ξ_b the throat terms use their small-ξ_b expansions.
const SERIES_XI_B: f64 = 1e-8;

/// Two identical qubits at `x_A = −x_B`, `x_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitPairConfig {
    x_b: f64,
    omega: f64,
    coupling: f64,
    time: f64,
}

impl QubitPairConfig {
    /// `x_b` (m, > 0), transition frequency `omega` (rad/s, > 0),
    /// dimensionless coupling `K = (g/Ω)²` (> 0) and interaction time (s, ≥ 0).
    pub fn new(x_b: f64, omega: f64, coupling: f64, time: f64) -> Result<Self> {
        if !(x_b > 0.0) || !x_b.is_finite() {
            return Err(Error::InvalidParameter("x_B must be > 0"));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter("qubit frequency must be > 0"));
        }
        if !(coupling > 0.0) || !coupling.is_finite() {
            return Err(Error::InvalidParameter("coupling K must be > 0"));
        }
        if !(time >= 0.0) || !time.is_finite() {
            return Err(Error::InvalidParameter("interaction time must be >= 0"));
        }
        Ok(Self { x_b, omega, coupling, time })
    }

    /// Position of qubit B.
    pub fn x_b(&self) -> f64 {
        self.x_b
    }

    /// Position of qubit A, always `−x_B`.
    pub fn x_a(&self) -> f64 {
        -self.x_b
    }

    /// Laboratory separation `ρ_x = 2x_B`.
    pub fn rho_x(&self) -> f64 {
        2.0 * self.x_b
    }

    /// Qubit transition frequency Ω.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Dimensionless coupling K.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Qubit–field coupling `g = Ω√K` in rad/s.
    pub fn g(&self) -> f64 {
        self.omega * libm::sqrt(self.coupling)
    }

    /// Interaction time.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Same pair with a different interaction time.
    pub fn with_time(&self, time: f64) -> Result<Self> {
        Self::new(self.x_b, self.omega, self.coupling, time)
    }

    /// `K·Ω·t`, the small parameter of the perturbative expansion.
    pub fn perturbative_parameter(&self) -> f64 {
        self.coupling * self.omega * self.time
    }

    /// Whether `K·Ω·t` stays below `bound`.
    pub fn is_perturbative(&self, bound: f64) -> bool {
        self.perturbative_parameter() <= bound
    }
}

/// Dimensionless light-cone parameters of one physical configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightconeParams {
    /// b₀/x_B.
    pub xi_b: f64,
    /// t/t_AB.
    pub xi_x: f64,
    /// ct/ρ_l.
    pub xi_l: f64,
    /// ct/(2x_B).
    pub xi_f: f64,
    /// Separation in free-falling coordinates.
    pub rho_l: f64,
    /// Separation in laboratory coordinates.
    pub rho_x: f64,
    /// Laboratory light travel time between the qubits.
    pub t_ab: f64,
}

impl LightconeParams {
    /// Throat-to-distance ratio `2b₀/ρ_x`, identical to ξ_b.
    pub fn epsilon_b(&self) -> f64 {
        self.xi_b
    }

    /// Qubits cannot exchange signals in the laboratory frame.
    pub fn is_spacelike(&self) -> bool {
        self.xi_x < 1.0
    }
}

/// Free-falling separation `ρ_l = 2x_B·√(1 + 2b₀/x_B)`.
pub fn rho_l_from_lab(geom: &WormholeGeometry, x_b: f64) -> Result<f64> {
    if !(x_b > 0.0) {
        return Err(Error::Domain("x_B must be > 0"));
    }
    let xi_b = geom.throat() / x_b;
    Ok(2.0 * x_b * libm::sqrt(1.0 + 2.0 * xi_b))
}

/// `2·arcsinh(1/√(2ξ))` and `log(1 + (1 + √(1 + 2ξ))/ξ)` for `ξ > 0`.
fn throat_terms(xi_b: f64) -> (f64, f64) {
    if xi_b < SERIES_XI_B {
        // Both expand as ln(2/ξ) + ξ − 3ξ²/4 + O(ξ³).
        let lead = libm::log(2.0 / xi_b);
        let asinh_term = lead + xi_b - 0.75 * xi_b * xi_b;
        let log_term = lead + xi_b - 0.75 * xi_b * xi_b;
        return (asinh_term, log_term);
    }
    let s = libm::sqrt(1.0 + 2.0 * xi_b);
    let asinh_term = 2.0 * libm::asinh(1.0 / libm::sqrt(2.0 * xi_b));
    let log_term = libm::log1p((1.0 + s) / xi_b);
    (asinh_term, log_term)
}

/// `c·t_AB`: optical path between the qubits measured with the lab clock.
fn light_path_length(geom: &WormholeGeometry, x_b: f64) -> Result<f64> {
    let rho_l = rho_l_from_lab(geom, x_b)?;
    if geom.is_flat() {
        return Ok(rho_l);
    }
    let b0 = geom.throat();
    let (asinh_term, log_term) = throat_terms(b0 / x_b);
    Ok(rho_l - b0 * asinh_term + b0 * log_term)
}

/// Laboratory light travel time between `−x_B` and `x_B`, in closed form.
pub fn light_travel_time(geom: &WormholeGeometry, x_b: f64) -> Result<f64> {
    Ok(light_path_length(geom, x_b)? / geom.c_flat())
}

/// Independent evaluation of `t_AB = ∫ dx / c(x)` over `[−x_B, x_B]` by
/// adaptive quadrature.
///
/// The integrand is even, so only `[0, x_B]` is integrated. The
/// substitution `x = u²` removes the `1/√x` singularity at the throat.
pub fn light_travel_time_by_quadrature(
    geom: &WormholeGeometry,
    x_b: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(x_b > 0.0) {
        return Err(Error::Domain("x_B must be > 0"));
    }
    if geom.is_flat() {
        return Ok(2.0 * x_b / geom.c_flat());
    }
    let integrand = |u: f64| {
        let x = u * u;
        if x == 0.0 {
            // limit u → 0 of 2u/c(u²)
            return libm::sqrt(2.0 * geom.throat()) / geom.c_flat();
        }
        2.0 * u / geom.effective_speed(x)
    };
    let upper = libm::sqrt(x_b);
    let knee = libm::sqrt(geom.throat()).min(upper);
    let inner = quadrature::integrate(integrand, 0.0, knee, rel_tol, 4000)?;
    let outer = quadrature::integrate(integrand, knee, upper, rel_tol, 4000)?;
    Ok(2.0 * (inner + outer))
}

/// ξ_l from the laboratory parameters:
/// `1/(1/ξ_x + (ξ_b/ξ_F)·arcsinh(1/√(2ξ_b)) − (ξ_b/(2ξ_F))·log(1 + (1 + √(1 + 2ξ_b))/ξ_b))`.
pub fn xi_l_from_xi_x(xi_x: f64, xi_b: f64, xi_f: f64) -> Result<f64> {
    if !(xi_x > 0.0) {
        return Err(Error::Domain("xi_x must be > 0"));
    }
    if !(xi_f > 0.0) {
        return Err(Error::Domain("xi_F must be > 0"));
    }
    if !(xi_b >= 0.0) {
        return Err(Error::Domain("xi_b must be >= 0"));
    }
    if xi_b == 0.0 {
        return Ok(xi_x);
    }
    let (asinh_term, log_term) = throat_terms(xi_b);
    let weight = xi_b / (2.0 * xi_f);
    Ok(1.0 / (1.0 / xi_x + weight * asinh_term - weight * log_term))
}

/// Fills every [`LightconeParams`] field from one physical configuration.
///
/// ξ_l is taken from [`xi_l_from_xi_x`]; when the interaction time is zero
/// all light-cone parameters are zero.
pub fn params_from_physical(
    geom: &WormholeGeometry,
    cfg: &QubitPairConfig,
) -> Result<LightconeParams> {
    let x_b = cfg.x_b();
    let c = geom.c_flat();
    let rho_x = cfg.rho_x();
    let rho_l = rho_l_from_lab(geom, x_b)?;
    let t_ab = light_travel_time(geom, x_b)?;
    let t = cfg.time();
    let xi_b = geom.throat() / x_b;
    let xi_x = t / t_ab;
    let xi_f = t / (rho_x / c);
    let xi_l = if t == 0.0 { 0.0 } else { xi_l_from_xi_x(xi_x, xi_b, xi_f)? };
    Ok(LightconeParams { xi_b, xi_x, xi_l, xi_f, rho_l, rho_x, t_ab })
}

/// Direct `ct/ρ_l`, the second route to ξ_l.
pub fn xi_l_direct(geom: &WormholeGeometry, cfg: &QubitPairConfig) -> Result<f64> {
    let rho_l = rho_l_from_lab(geom, cfg.x_b())?;
    Ok(cfg.time() / (rho_l / geom.c_flat()))
}

/// Interaction time that realises a laboratory light-cone parameter `xi_x`.
pub fn time_for_xi_x(geom: &WormholeGeometry, x_b: f64, xi_x: f64) -> Result<f64> {
    if !(xi_x >= 0.0) {
        return Err(Error::Domain("xi_x must be >= 0"));
    }
    Ok(xi_x * light_travel_time(geom, x_b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn rho_l_examples() {
        let flat = WormholeGeometry::flat(1.0).unwrap();
        assert_eq!(rho_l_from_lab(&flat, 1.0).unwrap(), 2.0);
        let g = WormholeGeometry::new(4.0, 1.0).unwrap();
        assert_eq!(rho_l_from_lab(&g, 1.0).unwrap(), 6.0);
        let g = WormholeGeometry::new(1.0, 1.0).unwrap();
        assert!(rel(rho_l_from_lab(&g, 2.0).unwrap(), 4.0 * libm::sqrt(2.0)) < 1e-15);
        assert!(rho_l_from_lab(&g, 0.0).is_err());
    }

    #[test]
    fn rho_l_is_twice_proper_radial() {
        let g = WormholeGeometry::new(0.37, 1.0).unwrap();
        for &x in &[1e-3, 0.2, 1.0, 55.0] {
            let direct = rho_l_from_lab(&g, x).unwrap();
            assert!(rel(direct, 2.0 * g.proper_radial(x)) < 1e-14);
        }
    }

    #[test]
    fn flat_travel_time() {
        let flat = WormholeGeometry::flat(1.0).unwrap();
        assert_eq!(light_travel_time(&flat, 1.0).unwrap(), 2.0);
        let g = WormholeGeometry::new(1e-9, 1.0).unwrap();
        assert!(rel(light_travel_time(&g, 1.0).unwrap(), 2.0) < 1e-6);
    }

    #[test]
    fn series_branch_is_continuous() {
        let below = throat_terms(SERIES_XI_B * (1.0 - 1e-12));
        let above = throat_terms(SERIES_XI_B);
        assert!(rel(below.0, above.0) < 1e-10);
        assert!(rel(below.1, above.1) < 1e-10);
    }

    #[test]
    fn xi_l_examples() {
        assert_eq!(xi_l_from_xi_x(0.7, 0.0, 3.0).unwrap(), 0.7);
        let near = xi_l_from_xi_x(0.7, 1e-12, 0.7).unwrap();
        assert!(rel(near, 0.7) < 1e-10);
        assert!(xi_l_from_xi_x(0.0, 1.0, 1.0).is_err());
        assert!(xi_l_from_xi_x(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn wide_throat_gives_one_third() {
        // b0 = 4 x_B gives rho_l = 3 rho_x
        let g = WormholeGeometry::new(4.0, 1.0).unwrap();
        let cfg = QubitPairConfig::new(1.0, 1.0, 1e-3, 2.0).unwrap();
        let p = params_from_physical(&g, &cfg).unwrap();
        assert_eq!(p.xi_f, 1.0);
        assert!(rel(p.xi_l, 1.0 / 3.0) < 1e-12);
        assert!(rel(xi_l_direct(&g, &cfg).unwrap(), 1.0 / 3.0) < 1e-15);
    }

    #[test]
    fn xi_x_is_one_at_travel_time() {
        let g = WormholeGeometry::new(0.3, 2.0).unwrap();
        let t_ab = light_travel_time(&g, 1.3).unwrap();
        let cfg = QubitPairConfig::new(1.3, 5.0, 1e-3, t_ab).unwrap();
        assert_eq!(params_from_physical(&g, &cfg).unwrap().xi_x, 1.0);
    }

    #[test]
    fn flat_light_cone_exactly_reached() {
        let g = WormholeGeometry::flat(3.0).unwrap();
        let cfg = QubitPairConfig::new(1.0, 1.0, 1e-3, 2.0 / 3.0).unwrap();
        let p = params_from_physical(&g, &cfg).unwrap();
        assert_eq!(p.xi_f, 1.0);
        assert_eq!(p.xi_x, 1.0);
        assert_eq!(p.xi_l, 1.0);
    }

    #[test]
    fn config_validation() {
        assert!(QubitPairConfig::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(QubitPairConfig::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(QubitPairConfig::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(QubitPairConfig::new(1.0, 1.0, 1.0, -1.0).is_err());
        let cfg = QubitPairConfig::new(1.0, 2.0, 0.01, 10.0).unwrap();
        assert_eq!(cfg.x_a(), -1.0);
        assert!((cfg.perturbative_parameter() - 0.2).abs() < 1e-15);
        assert!(!cfg.is_perturbative(0.1));
    }
}
