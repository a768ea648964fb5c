//! Laurent polynomials in one variable (`z`) and two variables (`a`, `z`)
//! with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer Laurent polynomial in one variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Laurent1 {
    /// exponent -> nonzero coefficient
    pub coeffs: BTreeMap<i64, i64>,
    /// display variable
    pub var: &'static str,
}

impl Laurent1 {
    pub fn zero() -> Laurent1 {
        Laurent1 { coeffs: BTreeMap::new(), var: "z" }
    }

    pub fn with_var(var: &'static str) -> Laurent1 {
        Laurent1 { coeffs: BTreeMap::new(), var }
    }

    pub fn monomial(c: i64, e: i64) -> Laurent1 {
        let mut p = Laurent1::zero();
        p.add_coeff(e, c);
        p
    }

    pub fn one() -> Laurent1 {
        Laurent1::monomial(1, 0)
    }

    pub fn add_coeff(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Substitute the variable by its inverse.
    pub fn invert_var(&self) -> Laurent1 {
        let mut p = Laurent1::with_var(self.var);
        for (&e, &c) in &self.coeffs {
            p.add_coeff(-e, c);
        }
        p
    }
}

impl Add for &Laurent1 {
    type Output = Laurent1;
    fn add(self, rhs: &Laurent1) -> Laurent1 {
        let mut p = self.clone();
        for (&e, &c) in &rhs.coeffs {
            p.add_coeff(e, c);
        }
        p
    }
}

impl Sub for &Laurent1 {
    type Output = Laurent1;
    fn sub(self, rhs: &Laurent1) -> Laurent1 {
        let mut p = self.clone();
        for (&e, &c) in &rhs.coeffs {
            p.add_coeff(e, -c);
        }
        p
    }
}

impl Mul for &Laurent1 {
    type Output = Laurent1;
    fn mul(self, rhs: &Laurent1) -> Laurent1 {
        let mut p = Laurent1::with_var(self.var);
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                p.add_coeff(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Laurent1 {
    type Output = Laurent1;
    fn neg(self) -> Laurent1 {
        let mut p = Laurent1::with_var(self.var);
        for (&e, &c) in &self.coeffs {
            p.add_coeff(e, -c);
        }
        p
    }
}

impl fmt::Display for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    write!(f, "{}", self.var)?;
                } else {
                    write!(f, "{}^{}", self.var, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Integer Laurent polynomial in the two variables `a` and `z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent2 {
    /// (a-exponent, z-exponent) -> nonzero coefficient
    pub coeffs: BTreeMap<(i64, i64), i64>,
}

impl Laurent2 {
    pub fn zero() -> Laurent2 {
        Laurent2 { coeffs: BTreeMap::new() }
    }

    pub fn monomial(c: i64, a: i64, z: i64) -> Laurent2 {
        let mut p = Laurent2::zero();
        p.add_coeff(a, z, c);
        p
    }

    pub fn one() -> Laurent2 {
        Laurent2::monomial(1, 0, 0)
    }

    pub fn add_coeff(&mut self, a: i64, z: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry((a, z)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&(a, z));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of a^k as a polynomial in z.
    pub fn coeff_of_a(&self, k: i64) -> Laurent1 {
        let mut p = Laurent1::zero();
        for (&(a, z), &c) in &self.coeffs {
            if a == k {
                p.add_coeff(z, c);
            }
        }
        p
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = self.clone();
        for (&(a, z), &c) in &rhs.coeffs {
            p.add_coeff(a, z, c);
        }
        p
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = self.clone();
        for (&(a, z), &c) in &rhs.coeffs {
            p.add_coeff(a, z, -c);
        }
        p
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = Laurent2::zero();
        for (&(a1, z1), &c1) in &self.coeffs {
            for (&(a2, z2), &c2) in &rhs.coeffs {
                p.add_coeff(a1 + a2, z1 + z2, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, z), &c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || (a == 0 && z == 0) {
                parts.push(mag.to_string());
            }
            for (var, e) in [("a", a), ("z", z)] {
                if e == 1 {
                    parts.push(var.to_string());
                } else if e != 0 {
                    parts.push(format!("{var}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// An exact value of the form m·2^{k/2} with integer m ≥ 0 and integer k,
/// as produced by the normalized augmentation count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfPow2 {
    /// odd (or zero) mantissa
    pub mantissa: i64,
    /// exponent of √2
    pub half_exp: i64,
}

impl HalfPow2 {
    pub fn new(mut mantissa: i64, mut half_exp: i64) -> HalfPow2 {
        if mantissa == 0 {
            return HalfPow2 { mantissa: 0, half_exp: 0 };
        }
        while mantissa % 2 == 0 {
            mantissa /= 2;
            half_exp += 2;
        }
        HalfPow2 { mantissa, half_exp }
    }

    pub fn zero() -> HalfPow2 {
        HalfPow2 { mantissa: 0, half_exp: 0 }
    }
}

impl fmt::Display for HalfPow2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa == 0 {
            return write!(f, "0");
        }
        // integer * sqrt(2)^k, rendered as p or p*sqrt(2) or p/sqrt(2) forms
        let int_part = self.half_exp.div_euclid(2);
        let has_root = self.half_exp.rem_euclid(2) == 1;
        let mut num = self.mantissa;
        let mut den: i64 = 1;
        if int_part >= 0 {
            num <<= int_part as u32;
        } else {
            den <<= (-int_part) as u32;
        }
        match (has_root, den) {
            (false, 1) => write!(f, "{num}"),
            (false, _) => write!(f, "{num}/{den}"),
            (true, 1) if num == 1 => write!(f, "sqrt(2)"),
            (true, 1) => write!(f, "{num}*sqrt(2)"),
            (true, _) if num == 1 => write!(f, "sqrt(2)/{den}"),
            (true, _) => write!(f, "{num}*sqrt(2)/{den}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent1_arithmetic_and_display() {
        let p = &Laurent1::monomial(1, -2) + &(&Laurent1::monomial(1, 1) + &Laurent1::monomial(1, 2));
        assert_eq!(p.to_string(), "z^-2 + z + z^2");
        let q = &Laurent1::monomial(2, 0) + &Laurent1::monomial(1, 1);
        assert_eq!(q.to_string(), "2 + z");
        assert_eq!((&p * &Laurent1::one()), p);
        assert_eq!((&p - &p), Laurent1::zero());
        assert_eq!(p.invert_var().coeff(2), 1);
    }

    #[test]
    fn laurent2_coeff_extraction() {
        // a^2 z + a^2 z^3 + a^-1
        let mut p = Laurent2::zero();
        p.add_coeff(2, 1, 1);
        p.add_coeff(2, 3, 1);
        p.add_coeff(-1, 0, 1);
        let c = p.coeff_of_a(2);
        assert_eq!(c.to_string(), "z + z^3");
        assert!(p.coeff_of_a(5).is_zero());
    }

    #[test]
    fn half_pow2_normalization_and_display() {
        assert_eq!(HalfPow2::new(2, -1), HalfPow2::new(1, 1));
        assert_eq!(HalfPow2::new(1, 1).to_string(), "sqrt(2)");
        assert_eq!(HalfPow2::new(3, -1).to_string(), "3*sqrt(2)/2");
        assert_eq!(HalfPow2::new(4, 0).to_string(), "4");
        assert_eq!(HalfPow2::new(1, -2).to_string(), "1/2");
        assert_eq!(HalfPow2::new(0, 5).to_string(), "0");
    }
}
