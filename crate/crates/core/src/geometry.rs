//! One-dimensional section of the massless Ellis wormhole,
//! `ds² = −c²dt² + dr²/(1 − b(r)/r)` with shape function `b(r) = b₀²/r`.
//!
//! Laboratory position `x` along the transmission line is related to the
//! areal radius by `|x| = r − b₀`, so the throat sits at `x = 0` and the two
//! signs of `x` are the two asymptotically flat branches. The proper radial
//! coordinate is `l = sign(x)·√(|x|(|x| + 2b₀))`.

use crate::{Error, Result};

/// Throat radius and asymptotic propagation speed of the emulated wormhole.
///
/// `b0 = 0` is a valid value and describes flat spacetime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WormholeGeometry {
    b0: f64,
    c_flat: f64,
}

impl WormholeGeometry {
    /// Throat radius `b0` in meters (≥ 0) and flat-space speed in m/s (> 0).
    pub fn new(b0: f64, c_flat: f64) -> Result<Self> {
        if !(b0 >= 0.0) || !b0.is_finite() {
            return Err(Error::InvalidParameter("throat radius must be finite and >= 0"));
        }
        if !(c_flat > 0.0) || !c_flat.is_finite() {
            return Err(Error::InvalidParameter("flat-space speed must be finite and > 0"));
        }
        Ok(Self { b0, c_flat })
    }

    /// Flat spacetime (no throat).
    pub fn flat(c_flat: f64) -> Result<Self> {
        Self::new(0.0, c_flat)
    }

    /// Throat radius b₀ in meters.
    pub fn throat(&self) -> f64 {
        self.b0
    }

    /// Asymptotic (flat-space) propagation speed.
    pub fn c_flat(&self) -> f64 {
        self.c_flat
    }

    /// True when there is no throat.
    pub fn is_flat(&self) -> bool {
        self.b0 == 0.0
    }

    /// Shape function `b(r) = b₀²/r`, defined for `r ≥ b₀ > 0`.
    pub fn shape(&self, r: f64) -> Result<f64> {
        if self.is_flat() {
            return Err(Error::Domain("flat geometry has no shape function"));
        }
        if !(r >= self.b0) {
            return Err(Error::Domain("shape function needs r >= b0"));
        }
        Ok(self.b0 * (self.b0 / r))
    }

    /// Unsigned laboratory distance from the throat, `|x| = r − b₀`.
    pub fn lab_from_radial(&self, r: f64) -> Result<f64> {
        if !(r >= self.b0) {
            return Err(Error::Domain("radial coordinate must satisfy r >= b0"));
        }
        Ok(r - self.b0)
    }

    /// Proper radial distance `l(x)`; the branch sign follows the sign of `x`.
    pub fn proper_radial(&self, x: f64) -> f64 {
        if self.is_flat() {
            return x;
        }
        let a = x.abs();
        let l = libm::sqrt(a * (a + 2.0 * self.b0));
        if x < 0.0 {
            -l
        } else {
            l
        }
    }

    /// Squared throat ratio `b₀²/(|x| + b₀)²`, which equals `b(r)/r`.
    pub fn throat_ratio(&self, x: f64) -> f64 {
        if self.is_flat() {
            return 0.0;
        }
        let q = self.b0 / (x.abs() + self.b0);
        q * q
    }

    /// Local propagation speed `c(x) = c·√(1 − b₀²/(|x| + b₀)²)`.
    ///
    /// Vanishes at the throat; `1/c(x)` has an integrable `|x|^{-1/2}`
    /// singularity there.
    pub fn effective_speed(&self, x: f64) -> f64 {
        if self.is_flat() {
            return self.c_flat;
        }
        let a = x.abs();
        // c·l/(|x| + b0), free of the 1 − q² cancellation at large |x|
        self.c_flat * libm::sqrt(a * (a + 2.0 * self.b0)) / (a + self.b0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MM: f64 = 1e-3;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn shape_examples() {
        let g = WormholeGeometry::new(1.0 * MM, 1.0).unwrap();
        assert!(close(g.shape(1.0 * MM).unwrap(), 1.0 * MM, 1e-15));
        assert!(close(g.shape(2.0 * MM).unwrap(), 0.5 * MM, 1e-15));
        let g = WormholeGeometry::new(0.5 * MM, 1.0).unwrap();
        assert!(close(g.shape(5.0 * MM).unwrap(), 0.05 * MM, 1e-15));
    }

    #[test]
    fn shape_domain_errors() {
        let g = WormholeGeometry::new(1.0, 1.0).unwrap();
        assert!(matches!(g.shape(0.5), Err(Error::Domain(_))));
        let flat = WormholeGeometry::flat(1.0).unwrap();
        assert!(matches!(flat.shape(3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn lab_from_radial_examples() {
        let g = WormholeGeometry::new(1.0, 1.0).unwrap();
        assert_eq!(g.lab_from_radial(1.0).unwrap(), 0.0);
        assert_eq!(g.lab_from_radial(3.0).unwrap(), 2.0);
        assert!(g.lab_from_radial(0.9).is_err());
        let flat = WormholeGeometry::flat(1.0).unwrap();
        assert_eq!(flat.lab_from_radial(7.0).unwrap(), 7.0);
    }

    #[test]
    fn proper_radial_examples() {
        let g = WormholeGeometry::new(4.0, 1.0).unwrap();
        assert_eq!(g.proper_radial(0.0), 0.0);
        assert_eq!(g.proper_radial(1.0), 3.0);
        assert_eq!(g.proper_radial(-1.0), -3.0);
        let flat = WormholeGeometry::flat(1.0).unwrap();
        assert_eq!(flat.proper_radial(-3.0), -3.0);
    }

    #[test]
    fn effective_speed_examples() {
        let flat = WormholeGeometry::flat(2.5).unwrap();
        assert_eq!(flat.effective_speed(0.0), 2.5);
        assert_eq!(flat.effective_speed(-17.0), 2.5);
        let g = WormholeGeometry::new(1.0, 1.0).unwrap();
        assert_eq!(g.effective_speed(0.0), 0.0);
        assert!(close(g.effective_speed(1.0), libm::sqrt(3.0) / 2.0, 1e-15));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WormholeGeometry::new(-1.0, 1.0).is_err());
        assert!(WormholeGeometry::new(1.0, 0.0).is_err());
        assert!(WormholeGeometry::new(f64::NAN, 1.0).is_err());
    }
}
