use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LaurentPoly;

/// `P_k` with `P_0 = 2`, `P_1 = t`, `P_{N+1} = t P_N − P_{N−1}`, as a
/// coefficient vector indexed by degree.
pub fn chebyshev_poly(k: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(1)];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// The coefficients `c_0..c_K` with `t^K = Σ c_k P_k(t)`.
///
/// Panics if a coefficient is negative or has the wrong parity; both would
/// be arithmetic bugs.
pub fn monomial_power_expansion(big_k: usize) -> Vec<BigInt> {
    assert!(big_k >= 1);
    let mut rest = vec![BigInt::zero(); big_k + 1];
    rest[big_k] = BigInt::from(1);
    let mut c = vec![BigInt::zero(); big_k + 1];
    for k in (0..=big_k).rev() {
        let p = chebyshev_poly(k);
        let lead = &p[k];
        let (q, r) = rest[k].div_rem(lead);
        assert!(r.is_zero(), "non-integral Chebyshev coefficient");
        for (i, pc) in p.iter().enumerate() {
            rest[i] -= &q * pc;
        }
        c[k] = q;
    }
    assert!(rest.iter().all(Zero::is_zero));
    for (k, ck) in c.iter().enumerate() {
        assert!(!ck.is_negative(), "negative Chebyshev coefficient");
        assert!(ck.is_zero() || (big_k - k).is_multiple_of(2), "parity violated");
    }
    c
}

/// Evaluates a univariate integer polynomial at a Laurent polynomial.
pub fn eval_univariate(coeffs: &[BigInt], t: &LaurentPoly) -> LaurentPoly {
    let n = t.nvars();
    let mut acc = LaurentPoly::zero(n);
    for c in coeffs.iter().rev() {
        acc = &acc * t;
        acc += &LaurentPoly::constant(n, BigRational::from_integer(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_chebyshev() {
        assert_eq!(chebyshev_poly(0), ints(&[2]));
        assert_eq!(chebyshev_poly(2), ints(&[-2, 0, 1]));
        assert_eq!(chebyshev_poly(3), ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn small_power_expansions() {
        assert_eq!(monomial_power_expansion(1), ints(&[0, 1]));
        assert_eq!(monomial_power_expansion(2), ints(&[1, 0, 1]));
        assert_eq!(monomial_power_expansion(3), ints(&[0, 3, 0, 1]));
    }
}
