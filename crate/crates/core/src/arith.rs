//! Half-integers, the modular context (ℓ, e, f) and partitions.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::CalcError;

/// A half-integer `twice / 2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integral().then_some(self.twice / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt::from_twice(self.twice + 2 * rhs)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt::from_twice(self.twice - 2 * rhs)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = CalcError;

    /// Accepts `3`, `-3`, `3/2`, `-3/2`.
    fn from_str(s: &str) -> Result<Self, CalcError> {
        let s = s.trim();
        let bad = || CalcError::parse(0, format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::int).map_err(|_| bad()),
            Some((num, den)) => {
                if den.trim() != "2" {
                    return Err(bad());
                }
                num.trim().parse::<i64>().map(HalfInt::from_twice).map_err(|_| bad())
            }
        }
    }
}

/// Order of q in R^×.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{e}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = CalcError;
    fn from_str(s: &str) -> Result<Self, CalcError> {
        match s.trim() {
            "inf" | "infinity" | "Infinity" | "oo" => Ok(Order::Infinity),
            t => match t.parse::<u64>() {
                Ok(e) if e >= 1 => Ok(Order::Finite(e)),
                _ => Err(CalcError::InvalidContext(format!("bad value for e: {t:?}"))),
            },
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The arithmetic regime: characteristic ℓ of R and order e of q.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModContext {
    ell: u64,
    e: Order,
}

impl ModContext {
    /// Validated constructor. `ell = 0` means characteristic zero.
    pub fn new(ell: u64, e: Order) -> Result<Self, CalcError> {
        let bad = |m: &str| Err(CalcError::InvalidContext(m.to_string()));
        match (ell, e) {
            (0, Order::Infinity) => Ok(ModContext { ell, e }),
            (0, Order::Finite(_)) => bad("finite e requires a prime ell"),
            (_, Order::Infinity) => bad("e = inf requires ell = 0"),
            (l, Order::Finite(e)) => {
                if !is_prime(l) {
                    return bad("ell must be 0 or a prime");
                }
                if e == 0 {
                    return bad("e must be positive");
                }
                if e > 1 && l == 2 {
                    return bad("e > 1 forces odd characteristic");
                }
                if (l - 1) % e != 0 {
                    return bad("e must divide ell - 1");
                }
                Ok(ModContext { ell, e: Order::Finite(e) })
            }
        }
    }

    /// Characteristic zero.
    pub fn char0() -> Self {
        ModContext { ell: 0, e: Order::Infinity }
    }

    /// A context of order `e > 1`, with ℓ the least prime congruent to 1 mod e.
    pub fn with_e(e: u64) -> Self {
        assert!(e >= 2, "with_e needs e >= 2; use e_one(ell) for e = 1");
        let ell = (1..).map(|k| k * e + 1).find(|&p| is_prime(p) && p != 2).unwrap();
        ModContext { ell, e: Order::Finite(e) }
    }

    /// The context q ≡ 1 mod ℓ.
    pub fn e_one(ell: u64) -> Result<Self, CalcError> {
        ModContext::new(ell, Order::Finite(1))
    }

    /// Builds a context from optional CLI values.
    pub fn from_flags(ell: Option<u64>, e: Option<Order>) -> Result<Self, CalcError> {
        match (ell, e) {
            (None, None) | (Some(0), None) | (None, Some(Order::Infinity)) => Ok(Self::char0()),
            (Some(l), None) => Err(CalcError::InvalidContext(format!(
                "--ell {l} given without --e"
            ))),
            (None, Some(Order::Finite(1))) => Err(CalcError::InvalidContext(
                "--e 1 requires --ell".to_string(),
            )),
            (None, Some(Order::Finite(e))) => Ok(Self::with_e(e)),
            (Some(l), Some(e)) => Self::new(l, e),
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn e(&self) -> Order {
        self.e
    }

    /// Finite e, if any.
    pub fn e_finite(&self) -> Option<u64> {
        match self.e {
            Order::Finite(e) => Some(e),
            Order::Infinity => None,
        }
    }

    /// Quantum characteristic: e if e > 1, ℓ if e = 1, 0 in characteristic zero.
    pub fn f(&self) -> u64 {
        match self.e {
            Order::Infinity => 0,
            Order::Finite(1) => self.ell,
            Order::Finite(e) => e,
        }
    }

    /// Whether e divides the integer n (never, in characteristic zero).
    pub fn e_divides(&self, n: i64) -> bool {
        match self.e {
            Order::Finite(e) => n.rem_euclid(e as i64) == 0,
            Order::Infinity => n == 0,
        }
    }

    /// Canonical representative of the class of `x`: the unique y ≡ x with
    /// -e/2 < y ≤ e/2 for finite e, and x itself otherwise.
    pub fn reduce(&self, x: HalfInt) -> HalfInt {
        match self.e {
            Order::Infinity => x,
            Order::Finite(e) => {
                let m = 2 * e as i64;
                let mut r = x.twice().rem_euclid(m);
                if r > e as i64 {
                    r -= m;
                }
                HalfInt::from_twice(r)
            }
        }
    }
}

impl fmt::Display for ModContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ell={} e={} f={}", self.ell, self.e, self.f())
    }
}

/// `a ≡ b`: integer difference lying in eZ (equality when e is infinite).
pub fn congruent(a: HalfInt, b: HalfInt, ctx: &ModContext) -> bool {
    let d = a - b;
    d.is_integral() && ctx.e_divides(d.twice() / 2)
}

/// `f | n`, with f = 0 dividing nothing.
pub fn divides_f(f: u64, n: u64) -> bool {
    f >= 1 && n.is_multiple_of(f)
}

/// A weakly decreasing list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u64>);

impl Partition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<u64>) -> Result<Self, CalcError> {
        if parts.contains(&0) {
            return Err(CalcError::OutOfRange("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u64) -> Vec<Partition> {
        fn go(rem: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(rem)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// λ ⊵ μ in the dominance order.
pub fn dominates(lam: &Partition, mu: &Partition) -> Result<bool, CalcError> {
    if lam.total() != mu.total() {
        return Err(CalcError::OutOfRange(format!(
            "partitions of different integers: {lam} and {mu}"
        )));
    }
    let len = lam.0.len().max(mu.0.len());
    let (mut sl, mut sm) = (0u64, 0u64);
    for i in 0..len {
        sl += lam.0.get(i).copied().unwrap_or(0);
        sm += mu.0.get(i).copied().unwrap_or(0);
        if sl < sm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// λ ▷ μ: dominance with λ ≠ μ.
pub fn strictly_dominates(lam: &Partition, mu: &Partition) -> Result<bool, CalcError> {
    Ok(dominates(lam, mu)? && lam != mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn p(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn halfint_parse_display_roundtrip() {
        for s in ["0", "3", "-2", "1/2", "-7/2"] {
            assert_eq!(h(s).to_string(), s);
        }
        assert_eq!(h("4/2"), HalfInt::int(2));
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn congruence_examples() {
        let e3 = ModContext::with_e(3);
        assert!(congruent(h("1"), h("4"), &e3));
        assert!(congruent(h("1/2"), h("7/2"), &e3));
        assert!(!congruent(h("1"), h("4"), &ModContext::char0()));
        assert!(!congruent(h("1/2"), h("1"), &ModContext::e_one(5).unwrap()));
    }

    #[test]
    fn divides_f_examples() {
        assert!(divides_f(3, 6));
        assert!(!divides_f(3, 4));
        assert!(!divides_f(0, 5));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominates(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(strictly_dominates(&p(&[4]), &p(&[2, 2])).unwrap());
        assert!(!strictly_dominates(&p(&[3, 1]), &p(&[3, 1])).unwrap());
        assert!(dominates(&p(&[3]), &p(&[2])).is_err());
    }

    #[test]
    fn context_validation() {
        assert!(ModContext::new(0, Order::Finite(2)).is_err());
        assert!(ModContext::new(5, Order::Infinity).is_err());
        assert!(ModContext::new(2, Order::Finite(3)).is_err());
        assert!(ModContext::new(7, Order::Finite(4)).is_err());
        assert_eq!(ModContext::with_e(3).f(), 3);
        assert_eq!(ModContext::e_one(5).unwrap().f(), 5);
        assert_eq!(ModContext::char0().f(), 0);
        assert_eq!(ModContext::e_one(2).unwrap().f(), 2);
    }

    #[test]
    fn reduce_picks_symmetric_representative() {
        let e4 = ModContext::with_e(4);
        assert_eq!(e4.reduce(h("3")), h("-1"));
        assert_eq!(e4.reduce(h("2")), h("2"));
        assert_eq!(e4.reduce(h("-2")), h("2"));
        assert_eq!(e4.reduce(h("5/2")), h("-3/2"));
        let e1 = ModContext::e_one(3).unwrap();
        assert_eq!(e1.reduce(h("7")), h("0"));
        assert_eq!(e1.reduce(h("7/2")), h("1/2"));
    }

    #[test]
    fn partitions_enumerate() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(8).len(), 22);
    }
}
