//! Exact rationals with a machine-word fast path. Values that fit in i64
//! numerator/denominator stay there; anything larger promotes to an
//! arbitrary-precision rational. The representation is canonical (reduced,
//! positive denominator, demoted whenever it fits), so derived equality and
//! hashing are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum QQ {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl QQ {
    pub fn zero() -> Self {
        QQ::Small(0, 1)
    }

    pub fn one() -> Self {
        QQ::Small(1, 1)
    }

    pub fn from_i64(n: i64) -> Self {
        QQ::Small(n, 1)
    }

    fn from_i128_pair(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(num, den).max(1);
        let (num, den) = (num / g, den / g);
        if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
            QQ::Small(n, d)
        } else {
            QQ::Big(Box::new(BigRational::new(num.into(), den.into())))
        }
    }

    pub fn from_big(r: &BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            QQ::Small(n, d)
        } else {
            QQ::Big(Box::new(r.clone()))
        }
    }

    fn demote(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            QQ::Small(n, d)
        } else {
            QQ::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            QQ::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            QQ::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QQ::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, QQ::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            QQ::Small(_, d) => *d == 1,
            QQ::Big(r) => r.is_integer(),
        }
    }

    pub fn add(&self, other: &QQ) -> QQ {
        match (self, other) {
            (QQ::Small(n1, d1), QQ::Small(n2, d2)) => {
                let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
                let den = *d1 as i128 * *d2 as i128;
                QQ::from_i128_pair(num, den)
            }
            _ => QQ::demote(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &QQ) -> QQ {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QQ) -> QQ {
        match (self, other) {
            (QQ::Small(n1, d1), QQ::Small(n2, d2)) => {
                QQ::from_i128_pair(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => QQ::demote(self.to_big() * other.to_big()),
        }
    }

    pub fn mul_i64(&self, k: i64) -> QQ {
        match self {
            QQ::Small(n, d) => QQ::from_i128_pair(*n as i128 * k as i128, *d as i128),
            QQ::Big(r) => QQ::demote(&**r * BigRational::from_integer(BigInt::from(k))),
        }
    }

    pub fn neg(&self) -> QQ {
        match self {
            QQ::Small(n, d) => QQ::Small(-n, *d),
            QQ::Big(r) => QQ::Big(Box::new(-(**r).clone())),
        }
    }

    pub fn recip(&self) -> QQ {
        assert!(!self.is_zero(), "division by zero");
        match self {
            QQ::Small(n, d) => {
                let (n, d) = if *n < 0 { (-d, -n) } else { (*d, *n) };
                QQ::Small(n, d)
            }
            QQ::Big(r) => QQ::demote(BigRational::one() / (**r).clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            QQ::Small(n, d) => *n as f64 / *d as f64,
            QQ::Big(r) => crate::cyc::rational_to_f64(r),
        }
    }
}
