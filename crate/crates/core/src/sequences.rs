//! Integer-sequence families read off the coefficient tables, together with
//! the independent formulas they are checked against.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cm::{coeff_recursion, index_with_tail, IndexSeq};
use crate::dominant::{b_with_tail, DominantSeq};
use crate::error::{Error, Result};
use crate::util::{factorial, rational_to_string};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `|a_{n,0,...,0}|`
    A000142,
    /// `|a_{n-2,1,0,...,0}|`
    A001563,
    /// `a_{1,0,...,0,1,0}`
    A152947,
    /// `|a_{n-3,0,1,0,...,0}|`
    A067318,
    /// `|a_{n-4,0,0,1,0,...,0}|`
    A122105,
    /// `b_{(n - Σ k i_k, tail, 0, ...)}` as exact rationals.
    Tail(DominantSeq),
}

impl Family {
    pub const NAMED: [&'static str; 5] = ["a000142", "a001563", "a152947", "a067318", "a122105"];

    /// Parses a family name; `tail` is required for the custom family.
    pub fn parse(name: &str, tail: Option<&str>) -> Result<Family> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "a000142" => Family::A000142,
            "a001563" => Family::A001563,
            "a152947" => Family::A152947,
            "a067318" => Family::A067318,
            "a122105" => Family::A122105,
            "tail" => {
                let t = tail.ok_or_else(|| {
                    Error::InvalidArgument("the tail family needs --tail".into())
                })?;
                Family::Tail(t.parse()?)
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family `{other}`; expected one of {}, tail",
                    Family::NAMED.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Family::A000142 => "a000142".into(),
            Family::A001563 => "a001563".into(),
            Family::A152947 => "a152947".into(),
            Family::A067318 => "a067318".into(),
            Family::A122105 => "a122105".into(),
            Family::Tail(t) => format!("tail{t}"),
        }
    }

    pub fn min_n(&self) -> usize {
        match self {
            Family::A000142 => 1,
            Family::A001563 => 2,
            Family::A152947 | Family::A067318 => 3,
            Family::A122105 => 4,
            Family::Tail(t) => t.min_order(),
        }
    }

    /// The index sequence the family reads at order `n`.
    pub fn index(&self, n: usize) -> Option<IndexSeq> {
        if n < self.min_n() {
            return None;
        }
        match self {
            Family::A000142 => index_with_tail(n, &[]),
            Family::A001563 => index_with_tail(n, &[1]),
            Family::A152947 => {
                let mut v = vec![0; n];
                v[0] = 1;
                v[n - 2] = 1;
                IndexSeq::new(v).ok()
            }
            Family::A067318 => index_with_tail(n, &[0, 1]),
            Family::A122105 => index_with_tail(n, &[0, 0, 1]),
            Family::Tail(t) => index_with_tail(n, t.entries()),
        }
    }

    /// The term at order `n`, computed from the coefficient recursion.
    pub fn value(&self, n: usize) -> Option<BigRational> {
        let idx = self.index(n)?;
        if let Family::Tail(t) = self {
            return b_with_tail(n, t);
        }
        let a = coeff_recursion(&idx);
        let v = match self {
            Family::A152947 => a,
            _ => a.abs(),
        };
        Some(BigRational::from_integer(v))
    }

    /// The signed coefficient `a` predicted by the family's closed formula,
    /// independently of the recursion. `None` for custom tails.
    pub fn formula_a(&self, n: usize) -> Option<BigInt> {
        if n < self.min_n() {
            return None;
        }
        let fact = BigRational::from_integer(factorial(n - 1));
        let sign = |e: usize| if e % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let q = |num: i64, den: i64| BigRational::new(num.into(), den.into());
        Some(match self {
            Family::A000142 => sign(n) * factorial(n - 1),
            Family::A001563 => sign(n - 1) * factorial(n - 1) * BigInt::from(n - 1),
            Family::A152947 => BigInt::from(n * (n - 1) / 2 + 1),
            Family::A067318 => {
                let s: BigRational = (1..n as i64).map(|p| q(p - 1, p)).sum();
                sign(n) * (fact * s).to_integer()
            }
            Family::A122105 => {
                let mut s = BigRational::zero();
                for i1 in 2..n as i64 {
                    for i2 in i1 + 1..n as i64 {
                        s += q(i1 - 1, i1 * i2);
                    }
                }
                sign(n - 3) * (fact * s).to_integer()
            }
            Family::Tail(_) => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::parse(s, None)
    }
}

/// `a_{n-4,2,0,...,0} = (-1)^n (n-1)! Σ_{p<n} (p-2)(p-1)/p`, `n ≥ 4`.
pub fn two_twos_formula(n: usize) -> BigInt {
    let s: BigRational = (1..n as i64)
        .map(|p| BigRational::new(((p - 2) * (p - 1)).into(), p.into()))
        .sum();
    let v = (BigRational::from_integer(factorial(n - 1)) * s).to_integer();
    if n % 2 == 0 {
        v
    } else {
        -v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub n: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub family: String,
    pub terms: Vec<SequenceTerm>,
}

/// Terms for `n_min ≤ n ≤ n_max`; orders below the family's start are skipped.
pub fn sequence(family: &Family, n_min: usize, n_max: usize) -> SequenceRecord {
    let terms = (n_min.max(family.min_n())..=n_max)
        .filter_map(|n| {
            family.value(n).map(|v| SequenceTerm {
                n,
                value: rational_to_string(&v),
            })
        })
        .collect();
    SequenceRecord {
        family: family.name(),
        terms,
    }
}
