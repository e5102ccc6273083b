//! Exact scalar fields: the rationals and small prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl FieldTag {
    pub fn parse(s: &str) -> Option<FieldTag> {
        match s {
            "Q" | "q" | "QQ" => Some(FieldTag::Rational),
            _ => {
                let p: u64 = s.strip_prefix('F').or_else(|| s.strip_prefix("GF"))?.parse().ok()?;
                is_prime(p).then_some(FieldTag::Prime(p))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldTag::Rational => "Q".to_string(),
            FieldTag::Prime(p) => format!("F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Arithmetic needed by the linear algebra layer.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self) -> Self;
    fn tag() -> FieldTag;
    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;
    /// A small random element (uniform for prime fields).
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Exact rational numbers. Small values stay on machine integers and spill
/// over to big integers on overflow.
#[derive(Clone, Debug)]
pub enum Q {
    /// Reduced, denominator positive.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    /// The value as an `i64`, if it is an integer of that size.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Q::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn abs(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::from_i128((*n as i128).abs(), *d as i128),
            Q::Big(r) => Q::from_big(r.abs()),
        }
    }

    fn combine(&self, o: &Q, small: impl Fn(i128, i128, i128, i128) -> Option<(i128, i128)>, big: impl Fn(BigRational, BigRational) -> BigRational) -> Q {
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, o) {
            if let Some((n, m)) = small(*a as i128, *b as i128, *c as i128, *d as i128) {
                return Q::from_i128(n, m);
            }
        }
        Q::from_big(big(self.to_big(), o.to_big()))
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            (Q::Big(a), Q::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(n, d) => (0u8, n, d).hash(state),
            Q::Big(r) => (1u8, r.numer(), r.denom()).hash(state),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q::Small(0, 1)
    }
    fn one() -> Self {
        Q::Small(1, 1)
    }
    fn from_i64(n: i64) -> Self {
        Q::Small(n, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
    fn add(&self, o: &Self) -> Self {
        if let (Q::Small(a, 1), Q::Small(c, 1)) = (self, o) {
            if let Some(s) = a.checked_add(*c) {
                return Q::Small(s, 1);
            }
        }
        self.combine(o, |a, b, c, d| Some((a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?, b.checked_mul(d)?)), |x, y| x + y)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if let (Q::Small(a, 1), Q::Small(c, 1)) = (self, o) {
            if let Some(s) = a.checked_mul(*c) {
                return Q::Small(s, 1);
            }
        }
        self.combine(o, |a, b, c, d| Some((a.checked_mul(c)?, b.checked_mul(d)?)), |x, y| x * y)
    }
    fn neg(&self) -> Self {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }
    fn tag() -> FieldTag {
        FieldTag::Rational
    }
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Q::from_i64(rng.gen_range(-3..=3))
    }
    fn to_json(&self) -> serde_json::Value {
        match self.to_i64() {
            Some(n) => serde_json::Value::from(n),
            None => serde_json::Value::from(self.to_string()),
        }
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Number(n) => n.as_i64().map(Q::from_i64),
            serde_json::Value::String(s) => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
                    None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
                };
                (!d.is_zero()).then(|| Q::from_big(BigRational::new(n, d)))
            }
            _ => None,
        }
    }
}

/// The prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }
    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat
        let mut result = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(result)
    }
    fn tag() -> FieldTag {
        FieldTag::Prime(P)
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.0)
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        v.as_i64().map(Fp::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        for a in 1..7 {
            let x = Fp::<7>::new(a);
            assert_eq!(x.mul(&x.inv()), Fp::one());
        }
    }

    #[test]
    fn rational_json_roundtrip() {
        let x = Q::new(-3, 4);
        assert_eq!(Q::from_json(&x.to_json()), Some(x));
        assert_eq!(Q::from_json(&serde_json::json!(5)), Some(Q::from_i64(5)));
    }

    #[test]
    fn rational_overflow_spills_to_big() {
        let big = Q::from_i64(i64::MAX);
        let s = big.add(&big);
        assert!(matches!(s, Q::Big(_)));
        assert_eq!(s.sub(&big), big);
        let x = Q::new(1, 3).add(&Q::new(1, 6));
        assert_eq!(x, Q::new(1, 2));
        assert_eq!(Q::new(2, -4), Q::new(-1, 2));
    }

    #[test]
    fn tags_parse() {
        assert_eq!(FieldTag::parse("F2"), Some(FieldTag::Prime(2)));
        assert_eq!(FieldTag::parse("Q"), Some(FieldTag::Rational));
        assert_eq!(FieldTag::parse("F4"), None);
    }
}
