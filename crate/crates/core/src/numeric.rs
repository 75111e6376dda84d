//! Small numeric helpers shared by the tensor and bound code.

use serde::{Serialize, Serializer};

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nonnegative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `d^(num/den)` for a nonnegative integer base.
///
/// Starts from `exp(num/den * ln d)` and applies one Newton step on
/// `y^den = d^num`, which recovers the last bits lost by the exp/log route
/// for large degrees.
pub fn int_pow_frac(d: u64, num: u32, den: u32) -> f64 {
    if d == 0 {
        return if num == 0 { 1.0 } else { 0.0 };
    }
    if d == 1 {
        return 1.0;
    }
    let df = d as f64;
    let y = (num as f64 / den as f64 * df.ln()).exp();
    if den == 1 {
        return df.powi(num as i32);
    }
    let target = df.powi(num as i32);
    let y_pow = y.powi(den as i32 - 1);
    let f = y_pow * y - target;
    y - f / (den as f64 * y_pow)
}

/// Real power for the general case; uses [`int_pow_frac`] when the base is
/// an exact nonnegative integer.
pub fn pow_frac(x: f64, num: u32, den: u32) -> f64 {
    if x >= 0.0 && x.fract() == 0.0 && x < 9.0e15 {
        int_pow_frac(x as u64, num, den)
    } else {
        x.powf(num as f64 / den as f64)
    }
}

/// Neumaier-compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for v in iter {
            s.add(v);
        }
        s
    }
}
