use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Multivector;

/// 2×2 complex matrix in the standard (Pauli) representation of the algebra,
/// `e1 → σx`, `e2 → σy`, `e3 → σz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixRep(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl MatrixRep {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);

    pub fn pauli(k: usize) -> Self {
        let i = Complex64::i();
        match k {
            1 => Self([[ZERO, ONE], [ONE, ZERO]]),
            2 => Self([[ZERO, -i], [i, ZERO]]),
            3 => Self([[ONE, ZERO], [ZERO, -ONE]]),
            _ => panic!("Pauli matrix index must be 1, 2 or 3, got {k}"),
        }
    }

    /// Sums the basis images coefficient by coefficient:
    /// bivectors map to `i σ_k` and the pseudoscalar to `i·1`.
    pub fn from_multivector(x: &Multivector) -> Self {
        let c = x.coefficients();
        let i = Complex64::i();
        let mut m = Self::IDENTITY.scale(Complex64::new(c[0], 0.0));
        for k in 1..=3 {
            let s = Self::pauli(k);
            m = m + s.scale(Complex64::new(c[k], 0.0)) + s.scale(i * c[k + 3]);
        }
        m + Self::IDENTITY.scale(i * c[7])
    }

    /// Inverse of [`MatrixRep::from_multivector`] via the trace projections
    /// `c = tr(σ_k M)/2`.
    pub fn to_multivector(&self) -> Multivector {
        let half_tr = |m: &Self| (m.0[0][0] + m.0[1][1]) * 0.5;
        let scalar = half_tr(self);
        let mut c = [0.0; 8];
        c[0] = scalar.re;
        c[7] = scalar.im;
        for k in 1..=3 {
            let ck = half_tr(&(Self::pauli(k) * *self));
            c[k] = ck.re;
            c[k + 3] = ck.im;
        }
        Multivector::new(c)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|e| e * z)))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Adjugate `[[d, -b], [-c, a]]`; the image of the Clifford conjugate.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Self([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// First column, the two complex components of an ideal spinor.
    pub fn first_column(&self) -> [Complex64; 2] {
        [self.0[0][0], self.0[1][0]]
    }

    /// Row-major entries.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]]
    }
}

impl Mul for MatrixRep {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c])
        }))
    }
}

impl Add for MatrixRep {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][c] + rhs.0[r][c])
        }))
    }
}

impl Sub for MatrixRep {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][c] - rhs.0[r][c])
        }))
    }
}

// Four complex pairs `[re, im]`, row-major.
impl Serialize for MatrixRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for e in self.entries() {
            seq.serialize_element(&[e.re, e.im])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MatrixRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = <[[f64; 2]; 4]>::deserialize(deserializer)?;
        let e = pairs.map(|[re, im]| Complex64::new(re, im));
        Ok(Self([[e[0], e[1]], [e[2], e[3]]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e3_is_diagonal() {
        let m = Multivector::E3.to_rep();
        assert_eq!(m, MatrixRep([[ONE, ZERO], [ZERO, -ONE]]));
    }

    #[test]
    fn identity_maps_to_one() {
        assert_eq!(
            Multivector::from_rep(&MatrixRep::IDENTITY),
            Multivector::ONE
        );
    }

    #[test]
    fn pseudoscalar_is_i_times_identity() {
        let m = Multivector::I.to_rep();
        assert_eq!(m, MatrixRep::IDENTITY.scale(Complex64::i()));
    }

    #[test]
    fn basis_images_are_pauli_matrices() {
        for (k, e) in [Multivector::E1, Multivector::E2, Multivector::E3]
            .iter()
            .enumerate()
        {
            assert_eq!(e.to_rep(), MatrixRep::pauli(k + 1));
        }
    }

    #[test]
    fn serializes_row_major_pairs() {
        let s = serde_json::to_string(&MatrixRep::pauli(2)).unwrap();
        assert_eq!(s, "[[0.0,0.0],[-0.0,-1.0],[0.0,1.0],[0.0,0.0]]");
        let back: MatrixRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, MatrixRep::pauli(2));
    }
}
