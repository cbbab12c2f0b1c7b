//! Base-p digit arithmetic and binomial coefficients modulo a prime.
//!
//! Elements of F_p are plain `u64` values kept in `[0, p)`; every operation
//! on [`Prime`] reduces eagerly so equality is integer equality.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 15;

/// A prime modulus below [`MAX_PRIME`], validated once on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        let is_prime = p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d));
        if is_prime && p < MAX_PRIME {
            Ok(Prime(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`, saturating at `u64::MAX`.
    ///
    /// Saturation keeps comparisons such as `b < p^v` correct for every `b`
    /// that fits in a `u64`.
    #[inline]
    pub fn pow(self, k: u32) -> u64 {
        self.0.saturating_pow(k)
    }

    /// The digit of `a` at position `k`.
    #[inline]
    pub fn digit(self, a: u64, k: u32) -> u64 {
        match self.0.checked_pow(k) {
            Some(q) => (a / q) % self.0,
            None => 0,
        }
    }

    /// Index of the top nonzero digit. Panics on zero; see [`len_p`].
    #[inline]
    pub fn len(self, a: u64) -> u32 {
        assert!(a > 0, "len_p(0) is undefined");
        let mut l = 0;
        let mut a = a / self.0;
        while a > 0 {
            a /= self.0;
            l += 1;
        }
        l
    }

    /// Exponent of the largest power of p dividing `a`. Panics on zero; see [`val_p`].
    #[inline]
    pub fn val(self, a: u64) -> u32 {
        assert!(a > 0, "val_p(0) is undefined");
        let mut v = 0;
        let mut a = a;
        while a.is_multiple_of(self.0) {
            a /= self.0;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.0
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    /// The representative of `a` in `(-p/2, p/2]`, for display.
    #[inline]
    pub fn signed(self, a: u64) -> i64 {
        let a = (a % self.0) as i64;
        let p = self.0 as i64;
        if 2 * a > p {
            a - p
        } else {
            a
        }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b % self.0) % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a % self.0) * (b % self.0) % self.0
    }

    pub fn pow_mod(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(
            !a.is_multiple_of(self.0),
            "zero has no inverse in F_{}",
            self.0
        );
        self.pow_mod(a, self.0 - 2)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Base-p expansion of a non-negative integer, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDigits {
    pub digits: Vec<u64>,
    pub p: Prime,
}

impl PDigits {
    /// Reassemble the integer, or `None` on overflow.
    pub fn evaluate(&self) -> Option<u64> {
        self.digits.iter().rev().try_fold(0u64, |acc, &d| {
            acc.checked_mul(self.p.get())?.checked_add(d)
        })
    }
}

pub fn digits_base_p(a: u64, p: Prime) -> PDigits {
    let mut digits = Vec::new();
    let mut a = a;
    while a > 0 {
        digits.push(a % p.get());
        a /= p.get();
    }
    PDigits { digits, p }
}

pub fn len_p(a: u64, p: Prime) -> Result<u32> {
    if a == 0 {
        return domain("len_p(0) is undefined");
    }
    Ok(p.len(a))
}

pub fn val_p(a: u64, p: Prime) -> Result<u32> {
    if a == 0 {
        return domain("val_p(0) is undefined");
    }
    Ok(p.val(a))
}

/// `C(a, b) mod p` by Lucas's formula. Zero when `b > a`.
pub fn binom_mod_p(a: u64, b: u64, p: Prime) -> u64 {
    let q = p.get();
    let (mut a, mut b) = (a, b);
    let mut acc = 1 % q;
    while b > 0 {
        let (ai, bi) = (a % q, b % q);
        if bi > ai {
            return 0;
        }
        acc = p.mul(acc, small_binom(ai, bi, p));
        a /= q;
        b /= q;
    }
    acc
}

/// `C(a, b) mod p` for `b <= a < p`, where every denominator is a unit.
fn small_binom(a: u64, b: u64, p: Prime) -> u64 {
    let b = b.min(a - b);
    let (mut num, mut den) = (1, 1);
    for k in 0..b {
        num = p.mul(num, a - k);
        den = p.mul(den, k + 1);
    }
    p.mul(num, p.inv(den))
}

/// True iff every base-p digit of `b` is at most the matching digit of `a`,
/// which by Lucas's formula is exactly `C(a, b) != 0 mod p`.
pub fn binom_nonzero(a: u64, b: u64, p: Prime) -> bool {
    let q = p.get();
    let (mut a, mut b) = (a, b);
    while b > 0 {
        if b % q > a % q {
            return false;
        }
        a /= q;
        b /= q;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64) -> Prime {
        Prime::new(q).unwrap()
    }

    #[test]
    fn prime_validation() {
        for q in [2, 3, 5, 7, 11, 32749] {
            assert!(Prime::new(q).is_ok(), "{q}");
        }
        for q in [0, 1, 4, 9, 15, 32768, 32771, 65537] {
            assert_eq!(Prime::new(q), Err(Error::InvalidModulus(q)));
        }
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(digits_base_p(8, p(3)).digits, vec![2, 2]);
        assert_eq!(digits_base_p(0, p(5)).digits, Vec::<u64>::new());
        assert_eq!(digits_base_p(26, p(3)).digits, vec![2, 2, 2]);
        assert_eq!(digits_base_p(26, p(3)).evaluate(), Some(26));
    }

    #[test]
    fn length_and_valuation() {
        assert_eq!(len_p(8, p(3)), Ok(1));
        assert_eq!(len_p(1, p(7)), Ok(0));
        assert_eq!(len_p(26, p(3)), Ok(2));
        assert_eq!(val_p(9, p(3)), Ok(2));
        assert_eq!(val_p(10, p(3)), Ok(0));
        assert_eq!(val_p(54, p(3)), Ok(3));
        assert!(matches!(len_p(0, p(3)), Err(Error::Domain(_))));
        assert!(matches!(val_p(0, p(3)), Err(Error::Domain(_))));
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binom_mod_p(17, 0, p(5)), 1);
        assert_eq!(binom_mod_p(5, 2, p(3)), 1);
        assert_eq!(binom_mod_p(9, 1, p(3)), 0);
        assert_eq!(binom_mod_p(3, 5, p(7)), 0);
        assert!(binom_nonzero(5, 2, p(3)));
        assert!(!binom_nonzero(9, 1, p(3)));
        assert!(binom_nonzero(12, 12, p(2)));
    }

    #[test]
    fn saturating_powers() {
        assert_eq!(p(2).pow(64), u64::MAX);
        assert_eq!(p(3).digit(u64::MAX, 60), 0);
        assert_eq!(p(3).digit(26, 2), 2);
    }

    #[test]
    fn field_ops() {
        let f = p(7);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(f.inv(3), 3), 1);
        assert_eq!(f.signed(6), -1);
        assert_eq!(f.from_i64(-1), 6);
    }
}
