//! Bloch-ball vectors and qubit states.
//!
//! A qubit density operator is `½(I + b·σ)`; every quantity in this crate is
//! carried in that real three-vector form.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{PURITY_TOL, STATE_NORM_TOL};

/// A real three-vector in Bloch coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector::new(0.0, 0.0, 0.0);
    pub const X: BlochVector = BlochVector::new(1.0, 0.0, 0.0);
    pub const Y: BlochVector = BlochVector::new(0.0, 1.0, 0.0);
    pub const Z: BlochVector = BlochVector::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    /// Checked constructor for values arriving from outside the crate.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = BlochVector::new(x, y, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("Bloch vector ({x}, {y}, {z})")))
        }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        BlochVector::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Spherical direction: polar angle from +z, azimuth from +x.
    pub fn spherical(radius: f64, theta: f64, phi: f64) -> Self {
        BlochVector::new(
            radius * theta.sin() * phi.cos(),
            radius * theta.sin() * phi.sin(),
            radius * theta.cos(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Euclidean length.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        (*self - *other).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<BlochVector> {
        let n = self.norm();
        if n > 0.0 {
            Some(*self / n)
        } else {
            None
        }
    }

    pub fn max_abs_diff(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.10}, {:.10}, {:.10})", self.x, self.y, self.z)
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for BlochVector {
    fn add_assign(&mut self, rhs: BlochVector) {
        *self = *self + rhs;
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = BlochVector;
    fn mul(self, s: f64) -> BlochVector {
        BlochVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<BlochVector> for f64 {
    type Output = BlochVector;
    fn mul(self, v: BlochVector) -> BlochVector {
        v * self
    }
}

impl Div<f64> for BlochVector {
    type Output = BlochVector;
    fn div(self, s: f64) -> BlochVector {
        BlochVector::new(self.x / s, self.y / s, self.z / s)
    }
}

impl std::iter::Sum for BlochVector {
    fn sum<I: Iterator<Item = BlochVector>>(iter: I) -> BlochVector {
        iter.fold(BlochVector::ZERO, |acc, v| acc + v)
    }
}

/// Euclidean length of a Bloch vector.
pub fn norm(v: &BlochVector) -> f64 {
    v.norm()
}

/// A qubit density operator `½(I + b·σ)` with `|b| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlochVector", into = "BlochVector")]
pub struct QubitState {
    bloch: BlochVector,
}

impl QubitState {
    pub fn new(bloch: BlochVector) -> Result<Self> {
        if !bloch.is_finite() {
            return Err(Error::NonFinite(format!("state Bloch vector {bloch}")));
        }
        let n = bloch.norm();
        if n > 1.0 + STATE_NORM_TOL {
            return Err(Error::BlochNorm { norm: n });
        }
        Ok(QubitState { bloch })
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    pub fn is_pure(&self) -> bool {
        self.bloch.norm() >= 1.0 - PURITY_TOL
    }
}

impl TryFrom<BlochVector> for QubitState {
    type Error = Error;
    fn try_from(b: BlochVector) -> Result<Self> {
        QubitState::new(b)
    }
}

impl From<QubitState> for BlochVector {
    fn from(s: QubitState) -> BlochVector {
        s.bloch
    }
}
