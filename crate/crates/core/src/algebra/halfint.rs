use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of ½ℤ, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_doubled(d: i64) -> Self {
        HalfInt(d)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Multiplies by ½.
    pub fn halve_int(n: i64) -> Self {
        HalfInt(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.0 += o.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt(self.0 * k)
    }
}
