//! Sparse multivariate polynomials in `X1, X2, ...` with integer coefficients.
//!
//! Text form: expanded monomials `c*X1^a1*...*Xk^ak` in decreasing
//! graded-lex order, without spaces, e.g. `2*X1^2+X1*X2-9*X1-X2+7`.
//! A coefficient of ±1 is left implicit on non-constant monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector; index 0 is the exponent of `X1`. Trailing zeros are trimmed.
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn degree_of(e: &Exponents) -> u32 {
    e.iter().sum()
}

/// Graded-lex comparison (total degree first, then `X1`, `X2`, ...).
fn grlex(a: &Exponents, b: &Exponents) -> Ordering {
    degree_of(a).cmp(&degree_of(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> MultiPoly {
        MultiPoly::monomial(Vec::new(), c)
    }

    /// The variable `X_i`, 1-based.
    pub fn var(i: usize) -> MultiPoly {
        assert!(i >= 1, "variables are numbered from 1");
        let mut e = vec![0; i];
        e[i - 1] = 1;
        MultiPoly::monomial(e, 1)
    }

    pub fn monomial(exponents: Exponents, c: impl Into<BigInt>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(exponents, c.into());
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    /// Largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Terms in decreasing graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let len = e1.len().max(e2.len());
                let e: Exponents = (0..len)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Evaluates at `X_i = point[i-1]`; missing coordinates count as zero.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let zero = BigInt::zero();
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.clone(), |acc, (i, &k)| {
                    if k == 0 {
                        acc
                    } else {
                        acc * point.get(i).unwrap_or(&zero).pow(k)
                    }
                })
            })
            .sum()
    }

    pub fn eval_i64(&self, point: &[i64]) -> BigInt {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&p)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let zero = BigRational::zero();
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point.get(i).unwrap_or(&zero).clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes the integer `value` for `X_i` (1-based).
    pub fn substitute(&self, i: usize, value: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let k = e.get(i - 1).copied().unwrap_or(0);
            if k > 0 {
                e[i - 1] = 0;
            }
            out.add_term(e, c * value.pow(k));
        }
        out
    }

    /// True when `X1 - 1` divides the polynomial.
    pub fn divisible_by_x1_minus_1(&self) -> bool {
        self.substitute(1, &BigInt::one()).is_zero()
    }

    pub fn to_records(&self) -> Vec<MonomialRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(e, c)| MonomialRecord {
                coefficient: c.to_string(),
                exponents: e.clone(),
            })
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("X{}", v + 1)
                    } else {
                        format!("X{}^{}", v + 1, k)
                    }
                })
                .collect();
            match (factors.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&factors.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses expanded sums of monomials such as `3*X1*X2 - 22*X1 + 59`.
    fn from_str(s: &str) -> Result<MultiPoly> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if chars.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let mut out = MultiPoly::zero();
        let mut i = 0;
        let at = |i: usize| chars.get(i).map_or(s.len(), |&(p, _)| p);
        while i < chars.len() {
            let mut sign = BigInt::one();
            match chars[i].1 {
                '+' => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1
                }
                _ if i > 0 => return Err(Error::parse(at(i), "expected `+` or `-`")),
                _ => {}
            }
            let mut coeff = sign;
            let mut exps: Exponents = Vec::new();
            let mut first = true;
            loop {
                if !first {
                    if i < chars.len() && chars[i].1 == '*' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                first = false;
                match chars.get(i).map(|c| c.1) {
                    Some(c) if c.is_ascii_digit() => {
                        let start = i;
                        while i < chars.len() && chars[i].1.is_ascii_digit() {
                            i += 1;
                        }
                        let digits: String = chars[start..i].iter().map(|c| c.1).collect();
                        coeff *= digits.parse::<BigInt>().expect("digits");
                    }
                    Some('X') | Some('x') => {
                        i += 1;
                        let start = i;
                        while i < chars.len() && chars[i].1.is_ascii_digit() {
                            i += 1;
                        }
                        let var: usize = chars[start..i]
                            .iter()
                            .map(|c| c.1)
                            .collect::<String>()
                            .parse()
                            .map_err(|_| Error::parse(at(start), "expected a variable index"))?;
                        if var == 0 {
                            return Err(Error::parse(at(start), "variables start at X1"));
                        }
                        let mut k = 1u32;
                        if i < chars.len() && chars[i].1 == '^' {
                            i += 1;
                            let start = i;
                            while i < chars.len() && chars[i].1.is_ascii_digit() {
                                i += 1;
                            }
                            k = chars[start..i]
                                .iter()
                                .map(|c| c.1)
                                .collect::<String>()
                                .parse()
                                .map_err(|_| Error::parse(at(start), "expected an exponent"))?;
                        }
                        if exps.len() < var {
                            exps.resize(var, 0);
                        }
                        exps[var - 1] += k;
                    }
                    _ => return Err(Error::parse(at(i), "expected a coefficient or variable")),
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}
