//! Primitive and conservative fluid states for the ideal-gas Euler equations.

use std::ops::{Add, AddAssign, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{AfError, Result};

/// Ratio of specific heats.
pub const GAMMA: f64 = 1.4;

/// Default absolute floor used for all "ρ ≤ 0 or p ≤ 0" admissibility tests.
pub const POSITIVITY_FLOOR: f64 = 1e-12;

/// Primitive variables `(ρ, u, v, p)`.
///
/// Also used as a plain 4-vector for increments (for example the
/// linearisation correction), in which case no admissibility is implied.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

/// Conservative variables `(ρ, ρu, ρv, E)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConsState {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub e: f64,
}

impl PrimState {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }

    pub const ZERO: PrimState = PrimState::new(0.0, 0.0, 0.0, 0.0);

    pub fn sound_speed(&self) -> f64 {
        (GAMMA * self.p / self.rho).sqrt()
    }

    pub fn is_admissible(&self, floor: f64) -> bool {
        self.rho > floor && self.p > floor
    }

    pub fn is_finite(&self) -> bool {
        self.rho.is_finite() && self.u.is_finite() && self.v.is_finite() && self.p.is_finite()
    }

    /// Checks `ρ > floor` and `p > floor`, naming `location` in the error.
    pub fn check_admissible(&self, floor: f64, location: impl FnOnce() -> String) -> Result<()> {
        if !(self.rho > floor) {
            return Err(AfError::NonPositiveDensity {
                rho: self.rho,
                location: location(),
            });
        }
        if !(self.p > floor) {
            return Err(AfError::NonPositivePressure {
                p: self.p,
                location: location(),
            });
        }
        Ok(())
    }

    pub fn to_cons(&self) -> ConsState {
        prim_to_cons(*self)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.rho, self.u, self.v, self.p]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Same state with the velocity component normal to `axis` negated.
    pub fn reflect(&self, axis: Axis) -> Self {
        match axis {
            Axis::X => Self { u: -self.u, ..*self },
            Axis::Y => Self { v: -self.v, ..*self },
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl ConsState {
    pub const fn new(rho: f64, mx: f64, my: f64, e: f64) -> Self {
        Self { rho, mx, my, e }
    }

    pub const ZERO: ConsState = ConsState::new(0.0, 0.0, 0.0, 0.0);

    pub fn to_prim(&self) -> Result<PrimState> {
        cons_to_prim(*self)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.rho, self.mx, self.my, self.e]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn reflect(&self, axis: Axis) -> Self {
        match axis {
            Axis::X => Self { mx: -self.mx, ..*self },
            Axis::Y => Self { my: -self.my, ..*self },
        }
    }

    /// Pressure from the equation of state (may be negative).
    pub fn pressure(&self) -> f64 {
        (GAMMA - 1.0) * (self.e - 0.5 * (self.mx * self.mx + self.my * self.my) / self.rho)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Coordinate axis; also names the normal direction of a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

pub fn cons_to_prim(q: ConsState) -> Result<PrimState> {
    if !(q.rho > POSITIVITY_FLOOR) {
        return Err(AfError::NonPositiveDensity {
            rho: q.rho,
            location: "conservative to primitive conversion".into(),
        });
    }
    let u = q.mx / q.rho;
    let v = q.my / q.rho;
    let p = (GAMMA - 1.0) * (q.e - 0.5 * (q.mx * u + q.my * v));
    Ok(PrimState::new(q.rho, u, v, p))
}

pub fn prim_to_cons(w: PrimState) -> ConsState {
    ConsState::new(
        w.rho,
        w.rho * w.u,
        w.rho * w.v,
        w.p / (GAMMA - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v),
    )
}

/// x-direction physical flux `f(q)`.
pub fn flux_x(q: &ConsState) -> ConsState {
    let u = q.mx / q.rho;
    let p = q.pressure();
    ConsState::new(q.mx, q.mx * u + p, q.my * u, u * (q.e + p))
}

/// y-direction physical flux `g(q)`.
pub fn flux_y(q: &ConsState) -> ConsState {
    let v = q.my / q.rho;
    let p = q.pressure();
    ConsState::new(q.my, q.mx * v, q.my * v + p, v * (q.e + p))
}

macro_rules! vector_ops {
    ($t:ident, $a:ident, $b:ident, $c:ident, $d:ident) => {
        impl Add for $t {
            type Output = $t;
            #[inline]
            fn add(self, o: $t) -> $t {
                $t::new(self.$a + o.$a, self.$b + o.$b, self.$c + o.$c, self.$d + o.$d)
            }
        }
        impl Sub for $t {
            type Output = $t;
            #[inline]
            fn sub(self, o: $t) -> $t {
                $t::new(self.$a - o.$a, self.$b - o.$b, self.$c - o.$c, self.$d - o.$d)
            }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            #[inline]
            fn mul(self, s: f64) -> $t {
                $t::new(self.$a * s, self.$b * s, self.$c * s, self.$d * s)
            }
        }
        impl Mul<$t> for f64 {
            type Output = $t;
            #[inline]
            fn mul(self, w: $t) -> $t {
                w * self
            }
        }
        impl AddAssign for $t {
            #[inline]
            fn add_assign(&mut self, o: $t) {
                *self = *self + o;
            }
        }
    };
}

vector_ops!(PrimState, rho, u, v, p);
vector_ops!(ConsState, rho, mx, my, e);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * (1.0 + b.abs())
    }

    #[test]
    fn cons_to_prim_examples() {
        let w = cons_to_prim(ConsState::new(1.0, 0.0, 0.0, 2.5)).unwrap();
        assert!(close(w.p, 1.0) && w.u == 0.0 && w.rho == 1.0);

        let w = cons_to_prim(ConsState::new(1.0, 1.0, 0.0, 3.0)).unwrap();
        assert!(close(w.u, 1.0) && close(w.p, 1.0));

        let w = cons_to_prim(ConsState::new(7.0, -7.0, 0.0, 4.0)).unwrap();
        assert!(close(w.rho, 7.0) && close(w.u, -1.0) && w.v == 0.0 && close(w.p, 0.2));
    }

    #[test]
    fn prim_to_cons_examples() {
        let q = prim_to_cons(PrimState::new(1.0, 0.0, 0.0, 1.0));
        assert!(close(q.e, 2.5) && q.mx == 0.0);

        let q = prim_to_cons(PrimState::new(0.5, 1.0, 1.0, 0.1));
        assert!(close(q.rho, 0.5) && close(q.mx, 0.5) && close(q.my, 0.5) && close(q.e, 0.75));
    }

    #[test]
    fn non_positive_density_is_rejected() {
        assert!(matches!(
            cons_to_prim(ConsState::new(0.0, 0.0, 0.0, 1.0)),
            Err(AfError::NonPositiveDensity { .. })
        ));
        assert!(cons_to_prim(ConsState::new(-1.0, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn fluxes_of_state_at_rest_are_pressure_only() {
        let q = prim_to_cons(PrimState::new(2.0, 0.0, 0.0, 3.0));
        assert_eq!(flux_x(&q), ConsState::new(0.0, 3.0, 0.0, 0.0));
        assert_eq!(flux_y(&q), ConsState::new(0.0, 0.0, 3.0, 0.0));
    }

    #[test]
    fn reflection_flips_only_normal_velocity() {
        let w = PrimState::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(w.reflect(Axis::Y), PrimState::new(1.0, 2.0, -3.0, 4.0));
        let q = w.to_cons();
        assert_eq!(q.reflect(Axis::X).to_prim().unwrap().u, -2.0);
        assert_eq!(q.reflect(Axis::X).e, q.e);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn round_trip_is_identity(
            rho in 1e-3f64..1e3,
            mx in -1e3f64..1e3,
            my in -1e3f64..1e3,
            eint in 1e-3f64..1e3,
        ) {
            let e = eint + 0.5 * (mx * mx + my * my) / rho;
            let q = ConsState::new(rho, mx, my, e);
            let back = prim_to_cons(cons_to_prim(q).unwrap());
            for (a, b) in back.as_array().iter().zip(q.as_array()) {
                prop_assert!((a - b).abs() <= 1e-13 * b.abs());
            }
        }
    }
}
