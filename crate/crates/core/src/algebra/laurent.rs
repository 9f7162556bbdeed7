use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat, AlgebraError, HalfInt, RationalFn};

/// Exact Laurent polynomial in `nvars` variables with exponents in ½ℤ.
///
/// Exponent vectors are stored doubled. Terms live in a `BTreeMap`, so
/// iteration is lexicographic in the exponent vector and equality is
/// structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rat(1))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// The variable `X_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 2;
        Self::monomial(nvars, e, rat(1))
    }

    /// `c · X^(e/2)` for a doubled exponent vector `e`.
    pub fn monomial(nvars: usize, doubled: Vec<i32>, c: BigRational) -> Self {
        assert_eq!(doubled.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(doubled, c);
        }
        p
    }

    /// `X^v` for a half-integer exponent vector.
    pub fn monomial_half(v: &[HalfInt]) -> Self {
        let e = v.iter().map(|h| h.doubled() as i32).collect();
        Self::monomial(v.len(), e, rat(1))
    }

    /// `X^v` for an integer exponent vector.
    pub fn monomial_int(v: &[i64]) -> Self {
        let e = v.iter().map(|&x| 2 * x as i32).collect();
        Self::monomial(v.len(), e, rat(1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their doubled exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, doubled: &[i32]) -> BigRational {
        self.terms.get(doubled).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&[i32], &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| x % 2 == 0))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Largest exponent of variable `i` (doubled), if nonzero.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Adds `c · X^(e/2)` in place.
    pub fn add_term(&mut self, doubled: Vec<i32>, c: BigRational) {
        debug_assert_eq!(doubled.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(doubled) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `X^(shift/2)`.
    pub fn shift(&self, doubled: &[i32]) -> Self {
        assert_eq!(doubled.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(doubled).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a monomial; `None` for anything else.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(self.nvars, e.iter().map(|x| -x).collect(), c.recip()))
    }

    /// Raises a monomial to the power `num/2`; fails on non-monomials and on
    /// quarter exponents.
    pub(crate) fn monomial_half_power(&self, doubled_power: i64) -> Result<Self, AlgebraError> {
        let (e, c) = self.terms.iter().next().ok_or(AlgebraError::DivisionByZero)?;
        debug_assert!(self.is_monomial());
        let mut out = Vec::with_capacity(self.nvars);
        for &x in e {
            let p = x as i64 * doubled_power;
            if p % 2 != 0 {
                return Err(AlgebraError::QuarterExponent(p));
            }
            out.push((p / 2) as i32);
        }
        let coeff = if doubled_power % 2 == 0 {
            pow_rat(c, doubled_power / 2)
        } else if c.is_one() {
            c.clone()
        } else {
            return Err(AlgebraError::QuarterExponent(doubled_power));
        };
        Ok(Self::monomial(self.nvars, out, coeff))
    }

    /// Exact division; fails with [`AlgebraError::NotDivisible`] when the
    /// remainder is nonzero.
    ///
    /// Uses lexicographic leading terms. The quotient's exponents are
    /// confined to the box `[min f − min g, max f − max g]` in every
    /// variable, which bounds the loop.
    pub fn exact_div(&self, g: &Self) -> Result<Self, AlgebraError> {
        if self.nvars != g.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, g.nvars));
        }
        let (lt_e, lt_c) = match g.terms.iter().next_back() {
            Some(t) => t,
            None => return Err(AlgebraError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut bounds = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let (flo, fhi) = self.degree_range(i).unwrap();
            let (glo, ghi) = g.degree_range(i).unwrap();
            if flo - glo > fhi - ghi {
                return Err(AlgebraError::NotDivisible);
            }
            bounds.push((flo - glo, fhi - ghi));
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = r.terms.iter().next_back() {
            let te: Vec<i32> = e.iter().zip(lt_e).map(|(a, b)| a - b).collect();
            if te.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(AlgebraError::NotDivisible);
            }
            let tc = c / lt_c;
            for (ge, gc) in &g.terms {
                let ne = ge.iter().zip(&te).map(|(a, b)| a + b).collect();
                r.add_term(ne, -(gc * &tc));
            }
            q.add_term(te, tc);
        }
        Ok(q)
    }

    /// Substitutes a rational function for each variable.
    ///
    /// Variables occurring with a half-integer exponent must be mapped to
    /// monomials. All images must live in `target_nvars` variables.
    pub fn substitute(
        &self,
        map: &BTreeMap<usize, RationalFn>,
        target_nvars: usize,
    ) -> Result<RationalFn, AlgebraError> {
        // Per variable: monomial image (handled term-wise) or a fraction
        // brought over a common denominator.
        let mut mono: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut frac: BTreeMap<usize, (LaurentPoly, LaurentPoly, i64, i64)> = BTreeMap::new();
        for i in 0..self.nvars {
            let Some((lo, hi)) = self.degree_range(i) else { continue };
            if lo == 0 && hi == 0 {
                continue;
            }
            let img = map.get(&i).ok_or(AlgebraError::UndefinedVariable(i))?;
            if img.num().nvars() != target_nvars {
                return Err(AlgebraError::VariableMismatch(img.num().nvars(), target_nvars));
            }
            if let Some(m) = img.as_monomial() {
                mono.insert(i, m);
                continue;
            }
            if self.terms.keys().any(|e| e[i] % 2 != 0) {
                return Err(AlgebraError::HalfExponentOnNonMonomial(i));
            }
            let pos = (hi.max(0) / 2) as i64;
            let neg = ((-lo).max(0) / 2) as i64;
            frac.insert(i, (img.num().clone(), img.den().clone(), pos, neg));
        }
        let mut cache: BTreeMap<(usize, bool, i64), LaurentPoly> = BTreeMap::new();
        let mut power = |i: usize, num: bool, k: i64, base: &LaurentPoly| -> LaurentPoly {
            cache.entry((i, num, k)).or_insert_with(|| base.pow(k as u32)).clone()
        };
        let mut den = LaurentPoly::one(target_nvars);
        for (&i, (n, d, pos, neg)) in &frac {
            den = &den * &(&power(i, false, *pos, d) * &power(i, true, *neg, n));
        }
        let mut numer = LaurentPoly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut acc = LaurentPoly::constant(target_nvars, c.clone());
            for (&i, m) in &mono {
                if e[i] != 0 {
                    acc = &acc * &m.monomial_half_power(e[i] as i64)?;
                }
            }
            for (&i, (n, d, pos, neg)) in &frac {
                let k = (e[i] / 2) as i64;
                let (pn, pd) = (k + neg, pos - k);
                acc = &acc * &(&power(i, true, pn, n) * &power(i, false, pd, d));
            }
            numer += &acc;
        }
        let mut out = RationalFn::new(numer, den)?;
        out.reduce();
        Ok(out)
    }

    /// Canonical text: terms in lexicographic order, variables named
    /// `{prefix}{index}`, half exponents as `X0^(3/2)`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let mut f = alloc::format!("{prefix}{i}");
                if x % 2 != 0 {
                    let _ = write!(f, "^({x}/2)");
                } else if x != 2 {
                    let _ = write!(f, "^{}", x / 2);
                }
                factors.push(f);
            }
            if factors.is_empty() {
                let _ = write!(s, "{a}");
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{a}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    /// Renames variables: variable `i` becomes `perm[i]` in a ring with
    /// `nvars` variables.
    pub fn relabel(&self, perm: &[usize], nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Integer coefficients as `BigInt`, or `None` if some coefficient is
    /// fractional.
    pub fn integer_terms(&self) -> Option<Vec<(Vec<i32>, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (e.clone(), c.to_integer())))
            .collect()
    }
}

pub(crate) fn pow_rat(c: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { c.recip() } else { c.clone() };
    let mut acc = rat(1);
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
