//! Small fixed-size vector/matrix types used throughout the crate.
//!
//! Nothing here is clever: 3-vectors and 3×3/4×4 matrices with the handful
//! of operations the physics needs, kept dependency-free.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Index, Mul, Neg, Sub};

/// Real 3-vector. Serializes as the array `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 3]>::deserialize(d).map(Vec3::from_array)
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        self.scale(1.0 / n)
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    /// Polar angle θ ∈ [0, π] and azimuth φ ∈ (-π, π] of the direction.
    /// `atan2(0, 0) = 0`, so vectors along ±ẑ get φ = 0.
    pub fn angles(self) -> (f64, f64) {
        let r = self.norm();
        let theta = if r == 0.0 { 0.0 } else { (self.z / r).clamp(-1.0, 1.0).acos() };
        let phi = self.y.atan2(self.x);
        (theta, phi)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

/// Complex 3-vector (polarization vectors, vector wave-function samples).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CVec3 {
    pub const ZERO: CVec3 = CVec3 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
        z: Complex64::new(0.0, 0.0),
    };

    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        CVec3 { x, y, z }
    }

    pub fn from_real(v: Vec3) -> Self {
        CVec3::new(v.x.into(), v.y.into(), v.z.into())
    }

    /// Hermitian inner product `self* · other`.
    pub fn dot_conj(self, o: CVec3) -> Complex64 {
        self.x.conj() * o.x + self.y.conj() * o.y + self.z.conj() * o.z
    }

    /// Plain bilinear dot (no conjugation).
    pub fn dot(self, o: CVec3) -> Complex64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm_sq(self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn scale(self, s: Complex64) -> CVec3 {
        CVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn conj(self) -> CVec3 {
        CVec3::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn component(self, i: usize) -> Complex64 {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("CVec3 index {i} out of range"),
        }
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Complex 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub m: [[Complex64; 3]; 3],
}

impl Mat3 {
    pub fn zero() -> Self {
        Mat3 { m: [[Complex64::new(0.0, 0.0); 3]; 3] }
    }

    pub fn identity() -> Self {
        let mut a = Mat3::zero();
        for i in 0..3 {
            a.m[i][i] = Complex64::new(1.0, 0.0);
        }
        a
    }

    pub fn from_real(r: [[f64; 3]; 3]) -> Self {
        let mut a = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                a.m[i][j] = r[i][j].into();
            }
        }
        a
    }

    pub fn adjoint(&self) -> Mat3 {
        let mut a = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                a.m[i][j] = self.m[j][i].conj();
            }
        }
        a
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply(&self, v: CVec3) -> CVec3 {
        let row = |i: usize| self.m[i][0] * v.x + self.m[i][1] * v.y + self.m[i][2] * v.z;
        CVec3::new(row(0), row(1), row(2))
    }

    pub fn scale(&self, s: Complex64) -> Mat3 {
        let mut a = *self;
        for i in 0..3 {
            for j in 0..3 {
                a.m[i][j] *= s;
            }
        }
        a
    }

    /// Max entrywise absolute difference.
    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - o.m[i][j]).norm());
            }
        }
        d
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut a = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..3 {
                    s += self.m[i][k] * o.m[k][j];
                }
                a.m[i][j] = s;
            }
        }
        a
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut a = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                a.m[i][j] = self.m[i][j] + o.m[i][j];
            }
        }
        a
    }
}

/// Real 4×4 matrix (Lorentz transformations), row-major, index 0 = time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub m: [[f64; 4]; 4],
}

impl Mat4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Mat4 { m }
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = (0..4).map(|j| self.m[i][j] * v[j]).sum();
        }
        out
    }

    pub fn apply_complex(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.m[i][j] * v[j];
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat4 {
        let mut t = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                t[i][j] = self.m[j][i];
            }
        }
        Mat4 { m: t }
    }

    pub fn max_abs_diff(&self, o: &Mat4) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.m[i][j] - o.m[i][j]).abs());
            }
        }
        d
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, o: Mat4) -> Mat4 {
        let mut a = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = (0..4).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Mat4 { m: a }
    }
}
