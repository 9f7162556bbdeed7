use super::LaurentPoly;

/// A 2×2 matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[LaurentPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity(nvars: usize) -> Self {
        let (o, z) = (LaurentPoly::one(nvars), LaurentPoly::zero(nvars));
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn pow(&self, k: u32) -> Mat2 {
        let n = self.m[0][0].nvars();
        let mut acc = Mat2::identity(n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &LaurentPoly) -> Mat2 {
        let s = |p: &LaurentPoly| p * c;
        Mat2::new(s(&self.m[0][0]), s(&self.m[0][1]), s(&self.m[1][0]), s(&self.m[1][1]))
    }
}

/// `Tr(S^k)`.
pub fn mat2_trace_power(s: &Mat2, k: u32) -> LaurentPoly {
    s.pow(k).trace()
}
