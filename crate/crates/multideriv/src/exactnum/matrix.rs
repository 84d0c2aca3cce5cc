//! Exact 2x2 matrices over a cyclotomic field, used for group elements
//! and linear changes of variables.

use super::field::FieldScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[FieldScalar; 2]; 2],
}

impl Mat2 {
    pub fn new(m: [[FieldScalar; 2]; 2]) -> Self {
        let tag = m[0][0].two_h();
        for row in &m {
            for e in row {
                assert_eq!(e.two_h(), tag, "matrix entries from mixed fields");
            }
        }
        Mat2 { m }
    }

    pub fn identity(two_h: u32) -> Self {
        let one = FieldScalar::one(two_h);
        let zero = FieldScalar::zero(two_h);
        Mat2::new([[one.clone(), zero.clone()], [zero, one]])
    }

    pub fn two_h(&self) -> u32 {
        self.m[0][0].two_h()
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::identity(self.two_h());
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0]
                    .mul(&rhs.m[0][j])
                    .add(&self.m[i][1].mul(&rhs.m[1][j]));
            }
        }
        out
    }

    pub fn det(&self) -> FieldScalar {
        self.m[0][0]
            .mul(&self.m[1][1])
            .sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new([
            [self.m[0][0].clone(), self.m[1][0].clone()],
            [self.m[0][1].clone(), self.m[1][1].clone()],
        ])
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Mat2::identity(self.two_h())
    }

    /// Inverse of an orthogonal matrix.
    pub fn orthogonal_inverse(&self) -> Mat2 {
        debug_assert!(self.is_orthogonal());
        self.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{trig_constant, TrigKind};

    fn rotation(h: u32, j: i64) -> Mat2 {
        // rotation by j * (2 pi / h): cos = cos(2j * pi/h), sin likewise
        let c = trig_constant(TrigKind::Cos, 2 * j, h);
        let s = trig_constant(TrigKind::Sin, 2 * j, h);
        Mat2::new([[c.clone(), s.neg()], [s, c]])
    }

    #[test]
    fn rotations_compose_and_close() {
        let h = 6;
        let r = rotation(h, 1);
        assert!(r.is_orthogonal());
        assert!(r.det().is_one());
        let mut acc = Mat2::identity(2 * h);
        for _ in 0..h {
            acc = acc.mul(&r);
        }
        assert_eq!(acc, Mat2::identity(2 * h), "r^h = id");
        assert_eq!(r.mul(&r), rotation(h, 2));
    }

    #[test]
    fn orthogonal_inverse_is_transpose() {
        let r = rotation(4, 1);
        assert_eq!(r.mul(&r.orthogonal_inverse()), Mat2::identity(8));
    }
}
