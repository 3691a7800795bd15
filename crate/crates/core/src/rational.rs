use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative rational `num / den` used for ε and the UAR control
/// parameter. All comparisons go through 128-bit cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(value: u64) -> Self {
        Ratio { num: value, den: 1 }
    }

    /// Nearest rational with denominator 10^9. Used only where the value is
    /// intrinsically irrational (logarithmic control parameters).
    pub fn approximate(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidInput(format!("cannot represent {value}")));
        }
        let den = 1_000_000_000u64;
        let scaled = (value * den as f64).round();
        if scaled > u64::MAX as f64 {
            return Err(Error::Overflow("rational approximation"));
        }
        Ratio::new(scaled as u64, den)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(&self, other: Ratio) -> Result<Ratio> {
        let num = self.num as u128 * other.den as u128 + other.num as u128 * self.den as u128;
        let den = self.den as u128 * other.den as u128;
        reduce128(num, den)
    }

    pub fn checked_mul(&self, other: Ratio) -> Result<Ratio> {
        reduce128(
            self.num as u128 * other.num as u128,
            self.den as u128 * other.den as u128,
        )
    }

    /// `self / k` for a positive integer `k`.
    pub fn div_int(&self, k: u64) -> Result<Ratio> {
        if k == 0 {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        reduce128(self.num as u128, self.den as u128 * k as u128)
    }

    /// `floor(self * x)`.
    pub fn mul_floor(&self, x: u64) -> Result<u64> {
        let v = self.num as u128 * x as u128 / self.den as u128;
        u64::try_from(v).map_err(|_| Error::Overflow("ratio product"))
    }

    /// Exact test `a >= self * b`.
    pub fn le_ratio_of(&self, b: u64, a: u64) -> bool {
        a as u128 * self.den as u128 >= self.num as u128 * b as u128
    }

    /// Exact test `self * b >= a`.
    pub fn times_ge(&self, b: u64, a: u64) -> bool {
        self.num as u128 * b as u128 >= a as u128 * self.den as u128
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn reduce128(num: u128, den: u128) -> Result<Ratio> {
    let g = gcd128(num, den);
    let (num, den) = (num / g, den / g);
    match (u64::try_from(num), u64::try_from(den)) {
        (Ok(num), Ok(den)) => Ok(Ratio { num, den }),
        _ => Err(Error::Overflow("rational arithmetic")),
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `3`, `0.25` and `1/4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a nonnegative rational: `{s}`"));
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse::<u64>().map_err(|_| bad())?;
            let d = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Ratio::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int_part: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_part: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int_part
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or(Error::Overflow("rational literal"))?;
        Ratio::new(num, den)
    }
}

impl TryFrom<String> for Ratio {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Ratio> for String {
    fn from(r: Ratio) -> String {
        r.to_string()
    }
}
