//! Exact rational-coefficient univariate polynomials in the family parameter
//! m: the lingua franca of the transcribed tables, the fitting machinery and
//! the duality checks.
//!
//! The text form ("108m^2+55m+7") is what the table asset stores; parsing and
//! printing round-trip losslessly on canonical polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients ascending by degree, canonical: no trailing zeros, the zero
/// polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn constant(c: impl Into<BigRational>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn constant_int(c: impl Into<BigInt>) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// p(m) = c₀ + c₁m + … from ascending coefficients; trailing zeros trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The monomial c·m^deg.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        PolyQ { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of m^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    /// Evaluation that must land on an integer.
    pub fn eval_int_exact(&self, x: &BigInt) -> Result<BigInt> {
        let v = self.eval_int(x);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Inconsistent(format!(
                "polynomial {self} at m={x} is not an integer: {v}"
            )))
        }
    }

    pub fn neg(&self) -> Self {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// p(−m).
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c.clone() })
                .collect(),
        )
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The unique interpolating polynomial through the points, degree < #points.
    /// Distinct abscissae required.
    pub fn interpolate(points: &[(BigInt, BigRational)]) -> Result<PolyQ> {
        if points.len() < 2 {
            return Err(Error::InsufficientData(
                "interpolation needs at least 2 points".into(),
            ));
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in points.iter().skip(i + 1) {
                if xi == xj {
                    return Err(Error::Parse(format!("duplicate abscissa {xi}")));
                }
            }
        }
        // Newton divided differences, then expansion into the monomial basis.
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(x.clone()))
            .collect();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        let mut newton_coeffs = vec![table[0].clone()];
        for level in 1..points.len() {
            for i in 0..points.len() - level {
                table[i] = (&table[i + 1] - &table[i]) / (&xs[i + level] - &xs[i]);
            }
            table.truncate(points.len() - level);
            newton_coeffs.push(table[0].clone());
        }
        let mut poly = PolyQ::zero();
        let mut basis = PolyQ::constant_int(1);
        for (i, c) in newton_coeffs.iter().enumerate() {
            poly = poly.add(&basis.scale(c));
            if i + 1 < newton_coeffs.len() {
                let factor = PolyQ::from_coeffs(vec![-xs[i].clone(), BigRational::one()]);
                basis = basis.mul(&factor);
            }
        }
        Ok(poly)
    }

    /// Interpolation that must be over-determined: the fit is returned only
    /// if a polynomial of degree ≤ #points − 3 already matches every point,
    /// i.e. at least two points beyond what any polynomial could absorb.
    pub fn fit_overdetermined(points: &[(BigInt, BigRational)]) -> Result<Option<PolyQ>> {
        let p = Self::interpolate(points)?;
        let max_deg = points.len() as i64 - 3;
        if max_deg < 0 {
            return Ok(None);
        }
        match p.degree() {
            None => Ok(Some(p)),
            Some(d) if d as i64 <= max_deg => Ok(Some(p)),
            _ => Ok(None),
        }
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = mag.is_one() && deg > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "m")?,
                _ => write!(f, "m^{deg}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PolyQ {
    type Err = Error;

    /// Parses sums of terms like `108m^2`, `-55m`, `7`, `3/2m`, `m^4`.
    fn from_str(s: &str) -> Result<PolyQ> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut chars = compact.chars().peekable();
        loop {
            let mut sign = 1i32;
            match chars.peek() {
                Some('+') => {
                    chars.next();
                }
                Some('-') => {
                    sign = -1;
                    chars.next();
                }
                Some(_) => {}
                None => break,
            }
            let mut digits = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits.push(chars.next().unwrap());
            }
            let mut denom = String::new();
            if chars.peek() == Some(&'/') {
                chars.next();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    denom.push(chars.next().unwrap());
                }
                if denom.is_empty() {
                    return Err(bad("missing denominator"));
                }
            }
            let mut deg = 0usize;
            if chars.peek() == Some(&'m') {
                chars.next();
                deg = 1;
                if chars.peek() == Some(&'^') {
                    chars.next();
                    let mut e = String::new();
                    while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                        e.push(chars.next().unwrap());
                    }
                    deg = e.parse().map_err(|_| bad("missing exponent"))?;
                }
            } else if digits.is_empty() {
                return Err(bad("term without coefficient or variable"));
            }
            let num: BigInt = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse().map_err(|_| bad("bad coefficient"))?
            };
            let den: BigInt = if denom.is_empty() {
                BigInt::one()
            } else {
                denom.parse().map_err(|_| bad("bad denominator"))?
            };
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let c = BigRational::new(num * BigInt::from(sign), den);
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigRational::zero());
            }
            coeffs[deg] += c;
        }
        Ok(PolyQ::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        s.parse().unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "108m^2+55m+7",
            "-m^3+2m-5",
            "0",
            "16",
            "m",
            "54m+11",
            "3/2m^2-1/2",
            "629856m^5+215784m^4+34020m^3+1890m^2-109m-1",
        ] {
            let poly = p(s);
            assert_eq!(p(&poly.to_string()), poly, "round trip through {s}");
        }
        assert_eq!(p("108m^2 + 55m + 7"), p("7+55m+108m^2"));
    }

    #[test]
    fn eval_exact() {
        let poly = p("272m^3-168m^2+m-2");
        assert_eq!(poly.eval_int_exact(&BigInt::from(2)).unwrap(), BigInt::from(1504));
        let half = p("1/2m^2-1/2m");
        assert!(half.eval_int_exact(&BigInt::from(5)).is_ok()); // triangular numbers
        assert_eq!(half.eval_int_exact(&BigInt::from(5)).unwrap(), BigInt::from(10));
    }

    #[test]
    fn arithmetic_and_reflection() {
        let a = p("m^2+3m+2");
        let b = p("m-1");
        assert_eq!(a.mul(&b), p("m^3+2m^2-m-2"));
        assert_eq!(a.sub(&a), PolyQ::zero());
        assert_eq!(p("m^2-3m+2"), a.sub(&p("6m")));
        assert_eq!(a.reflect(), p("m^2-3m+2"));
    }

    #[test]
    fn interpolation_recovers_square() {
        let pts: Vec<(BigInt, BigRational)> =
            (1..=5).map(|i| (BigInt::from(i), q(i * i))).collect();
        let fit = PolyQ::fit_overdetermined(&pts).unwrap();
        assert_eq!(fit, Some(p("m^2")));
    }

    #[test]
    fn three_points_never_overdetermine() {
        let pts = vec![
            (BigInt::from(1), q(1)),
            (BigInt::from(2), q(2)),
            (BigInt::from(3), q(4)),
        ];
        assert_eq!(PolyQ::fit_overdetermined(&pts).unwrap(), None);
    }

    #[test]
    fn duplicate_abscissae_rejected() {
        let pts = vec![(BigInt::from(1), q(1)), (BigInt::from(1), q(2))];
        assert!(PolyQ::interpolate(&pts).is_err());
    }

    #[test]
    fn interpolation_is_exact_on_rationals() {
        let target = p("3/2m^2-1/2m+4");
        let pts: Vec<(BigInt, BigRational)> = (0..6)
            .map(|i| (BigInt::from(i), target.eval_int(&BigInt::from(i))))
            .collect();
        assert_eq!(
            PolyQ::fit_overdetermined(&pts).unwrap(),
            Some(target)
        );
    }
}
