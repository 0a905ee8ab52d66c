//! Unit-quaternion rotation algebra plus an independent rotation-matrix
//! path used to cross-validate every quaternion computation.

use crate::Error;

/// A rotation stored as a scalar and a three-vector: `s = cos(theta/2)`,
/// `v = sin(theta/2) * axis` for a rotation by `theta` about a unit `axis`.
///
/// `{s, v}` and `{-s, -v}` represent the same rotation (the double cover),
/// so rotations are compared through [`Quaternion::fidelity`], never by raw
/// component equality. Every constructor and product keeps `s^2 + |v|^2 = 1`
/// within 1e-12.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub s: f64,
    pub v: [f64; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        s: 1.0,
        v: [0.0, 0.0, 0.0],
    };

    /// Rotation by `theta` radians about `axis`, which must be unit length
    /// within 1e-9.
    pub fn from_axis_angle(theta: f64, axis: [f64; 3]) -> Result<Quaternion, Error> {
        let norm = dot(axis, axis).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitAxis { norm });
        }
        let (sin, cos) = (theta / 2.0).sin_cos();
        Ok(Quaternion {
            s: cos,
            v: [sin * axis[0], sin * axis[1], sin * axis[2]],
        })
    }

    /// The composite rotation "`self` applied first, then `next`".
    ///
    /// This is the one composition entry point for the whole crate; pulse
    /// sequences written left to right in time fold through it in order.
    /// Equivalently it is the operator product next * self, so its matrix
    /// image is `next.to_matrix() * self.to_matrix()` for column vectors.
    #[must_use]
    pub fn then(self, next: Quaternion) -> Quaternion {
        let (s1, a) = (self.s, self.v);
        let (s2, b) = (next.s, next.v);
        Quaternion {
            s: s1 * s2 - dot(a, b),
            v: [
                s1 * b[0] + s2 * a[0] + b[1] * a[2] - b[2] * a[1],
                s1 * b[1] + s2 * a[1] + b[2] * a[0] - b[0] * a[2],
                s1 * b[2] + s2 * a[2] + b[0] * a[1] - b[1] * a[0],
            ],
        }
        .renormalized()
    }

    /// Rescales to unit norm, but only when drift exceeds 1e-12; small
    /// drift is left alone so real bugs are not masked.
    fn renormalized(self) -> Quaternion {
        let norm = (self.s * self.s + dot(self.v, self.v)).sqrt();
        if (norm - 1.0).abs() <= 1e-12 {
            return self;
        }
        Quaternion {
            s: self.s / norm,
            v: [self.v[0] / norm, self.v[1] / norm, self.v[2] / norm],
        }
    }

    /// `|s1*s2 + v1.v2|`: 1 exactly when the two rotations agree up to a
    /// multiple of 2 pi, strictly less otherwise. Symmetric in its
    /// arguments and insensitive to the double-cover sign.
    pub fn fidelity(self, other: Quaternion) -> f64 {
        (self.s * other.s + dot(self.v, other.v)).abs().min(1.0)
    }

    /// Flips the overall sign if needed so the dot product with `reference`
    /// is non-negative. Resolves the double cover before finite differencing.
    #[must_use]
    pub fn aligned_with(self, reference: Quaternion) -> Quaternion {
        if self.s * reference.s + dot(self.v, reference.v) < 0.0 {
            Quaternion {
                s: -self.s,
                v: [-self.v[0], -self.v[1], -self.v[2]],
            }
        } else {
            self
        }
    }

    /// The equivalent rotation matrix (column-vector convention).
    pub fn to_matrix(self) -> RotationMatrix {
        let (s, [x, y, z]) = (self.s, self.v);
        RotationMatrix {
            m: [
                [
                    1.0 - 2.0 * (y * y + z * z),
                    2.0 * (x * y - s * z),
                    2.0 * (x * z + s * y),
                ],
                [
                    2.0 * (x * y + s * z),
                    1.0 - 2.0 * (x * x + z * z),
                    2.0 * (y * z - s * x),
                ],
                [
                    2.0 * (x * z - s * y),
                    2.0 * (y * z + s * x),
                    1.0 - 2.0 * (x * x + y * y),
                ],
            ],
        }
    }

    /// `s^2 + |v|^2`, which every constructor keeps at 1.
    pub fn norm_squared(self) -> f64 {
        self.s * self.s + dot(self.v, self.v)
    }
}

/// A 3x3 rotation matrix. Built by Rodrigues' formula rather than through
/// [`Quaternion`], so the two representations form independent computation
/// paths that can be checked against each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationMatrix {
    pub m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub const IDENTITY: RotationMatrix = RotationMatrix {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rotation by `theta` radians about a unit `axis`, via Rodrigues'
    /// formula `R = I + sin(theta) K + (1 - cos(theta)) K^2` with K the
    /// cross-product matrix of the axis. Deliberately avoids quaternions.
    pub fn from_axis_angle(theta: f64, axis: [f64; 3]) -> Result<RotationMatrix, Error> {
        let norm = dot(axis, axis).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitAxis { norm });
        }
        let [x, y, z] = axis;
        let k = [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]];
        let (sin, cos) = theta.sin_cos();
        let mut m = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                let k2 = (0..3).map(|i| k[r][i] * k[i][c]).sum::<f64>();
                m[r][c] = f64::from(u8::from(r == c)) + sin * k[r][c] + (1.0 - cos) * k2;
            }
        }
        Ok(RotationMatrix { m })
    }

    /// The composite rotation "`self` applied first, then `next`": the
    /// matrix product next * self. Mirrors [`Quaternion::then`].
    #[must_use]
    pub fn then(self, next: RotationMatrix) -> RotationMatrix {
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..3).map(|i| next.m[r][i] * self.m[i][c]).sum())
        });
        RotationMatrix { m }
    }

    /// Converts back to a quaternion using the largest-pivot branch rule,
    /// which stays well-conditioned for every rotation angle.
    pub fn to_quaternion(self) -> Quaternion {
        let m = &self.m;
        let trace = m[0][0] + m[1][1] + m[2][2];
        let q = if trace > 0.0 {
            let r = (1.0 + trace).sqrt();
            let w = 0.5 * r;
            let c = 0.5 / r;
            Quaternion {
                s: w,
                v: [
                    (m[2][1] - m[1][2]) * c,
                    (m[0][2] - m[2][0]) * c,
                    (m[1][0] - m[0][1]) * c,
                ],
            }
        } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
            let r = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt();
            let c = 0.5 / r;
            Quaternion {
                s: (m[2][1] - m[1][2]) * c,
                v: [0.5 * r, (m[0][1] + m[1][0]) * c, (m[0][2] + m[2][0]) * c],
            }
        } else if m[1][1] >= m[2][2] {
            let r = (1.0 - m[0][0] + m[1][1] - m[2][2]).sqrt();
            let c = 0.5 / r;
            Quaternion {
                s: (m[0][2] - m[2][0]) * c,
                v: [(m[0][1] + m[1][0]) * c, 0.5 * r, (m[1][2] + m[2][1]) * c],
            }
        } else {
            let r = (1.0 - m[0][0] - m[1][1] + m[2][2]).sqrt();
            let c = 0.5 / r;
            Quaternion {
                s: (m[1][0] - m[0][1]) * c,
                v: [(m[0][2] + m[2][0]) * c, (m[1][2] + m[2][1]) * c, 0.5 * r],
            }
        };
        q.renormalized()
    }

    /// Max absolute entry of `m^T m - I`; 0 for an exactly orthogonal matrix.
    pub fn orthogonality_defect(self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..3 {
            for c in 0..3 {
                let e: f64 = (0..3).map(|i| self.m[i][r] * self.m[i][c]).sum();
                worst = worst.max((e - f64::from(u8::from(r == c))).abs());
            }
        }
        worst
    }

    pub fn determinant(self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}
