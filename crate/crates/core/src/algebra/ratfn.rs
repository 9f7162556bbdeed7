use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPoly};

/// A quotient of Laurent polynomials.
///
/// Equality is tested by cross-multiplication; [`RationalFn::reduce`] only
/// removes monomial factors and exact polynomial quotients, which is all the
/// transport formulas need.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::VariableMismatch(num.nvars(), den.nvars()));
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RationalFn { num: p, den: LaurentPoly::one(n) }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a single monomial, if it is one.
    pub fn as_monomial(&self) -> Option<LaurentPoly> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        Some(&self.num * &self.den.monomial_inverse()?)
    }

    /// The value as a Laurent polynomial, if the denominator divides.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if let Some(inv) = self.den.monomial_inverse() {
            return Some(&self.num * &inv);
        }
        self.num.exact_div(&self.den).ok()
    }

    /// Cancels monomial denominators and exact quotients, then makes the
    /// leading coefficient of the denominator 1.
    pub fn reduce(&mut self) {
        if let Some(p) = self.as_poly() {
            let n = p.nvars();
            self.num = p;
            self.den = LaurentPoly::one(n);
            return;
        }
        // Pull the smallest monomial out of the denominator so it has
        // integer, nonnegative exponents.
        let n = self.den.nvars();
        let mut shift = alloc::vec![0i32; n];
        for (i, s) in shift.iter_mut().enumerate() {
            let (lo, _) = self.den.degree_range(i).unwrap();
            *s = -lo;
        }
        self.den = self.den.shift(&shift);
        self.num = self.num.shift(&shift);
        let lc = self.den.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::one);
        if !lc.is_one() && !lc.is_zero() {
            let inv = lc.recip();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFn { num, den: &self.den * &o.den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) - &(&o.num * &self.den);
        RationalFn { num, den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFn { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RationalFn { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, k: i64) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RationalFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn equals_poly(&self, p: &LaurentPoly) -> bool {
        self.num == p * &self.den
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}
