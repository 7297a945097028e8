//! Elements of the forest algebra and of its tensor square, with integer
//! coefficients.
//!
//! Text form of a combination: `c1*F1 + c2*F2 + ...`, terms in decreasing
//! forest order, `0` for the zero element. Tensors print as `c*L⊗R`, the
//! coefficient being omitted when it equals 1.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{parse, Forest, Tree};

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A finite integer combination of forests. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<Forest, BigInt>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    pub fn one() -> LinComb {
        LinComb::from(Forest::unit())
    }

    pub fn term(forest: Forest, coeff: impl Into<BigInt>) -> LinComb {
        let mut x = LinComb::zero();
        x.add_term(forest, coeff.into());
        x
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

    /// Terms in increasing forest order.
    pub fn iter(&self) -> btree_map::Iter<'_, Forest, BigInt> {
        self.terms.iter()
    }

    pub fn coeff(&self, f: &Forest) -> BigInt {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, forest: Forest, coeff: BigInt) {
        add_term(&mut self.terms, forest, coeff);
    }

    pub fn add_scaled(&mut self, other: &LinComb, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for (f, c) in &other.terms {
            self.add_term(f.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &BigInt) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scaled(&-BigInt::one())
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    /// Applies a linear map given on forests.
    pub fn map_linear<F>(&self, mut f: F) -> LinComb
    where
        F: FnMut(&Forest) -> LinComb,
    {
        let mut out = LinComb::zero();
        for (forest, c) in &self.terms {
            out.add_scaled(&f(forest), c);
        }
        out
    }

    /// The common vertex count of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Forest::vertex_count);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components by vertex count.
    pub fn graded_parts(&self) -> BTreeMap<usize, LinComb> {
        let mut out: BTreeMap<usize, LinComb> = BTreeMap::new();
        for (f, c) in &self.terms {
            out.entry(f.vertex_count())
                .or_default()
                .add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(f, c)| TermRecord {
                coefficient: c.to_string(),
                forest: f.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for r in records {
            out.add_term(parse(&r.forest)?, parse_int(&r.coefficient)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialise")
    }

    pub fn from_json(text: &str) -> Result<LinComb> {
        let records: Vec<TermRecord> = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), e.to_string()))?;
        LinComb::from_records(&records)
    }
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| Error::parse(0, format!("bad integer `{s}`: {e}")))
}

impl From<Forest> for LinComb {
    fn from(f: Forest) -> Self {
        LinComb::term(f, 1)
    }
}

impl From<Tree> for LinComb {
    fn from(t: Tree) -> Self {
        LinComb::from(Forest::from(t))
    }
}

impl FromIterator<(Forest, BigInt)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Forest, BigInt)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (f, c) in iter {
            out.add_term(f, c);
        }
        out
    }
}

impl<'a> IntoIterator for &'a LinComb {
    type Item = (&'a Forest, &'a BigInt);
    type IntoIter = btree_map::Iter<'a, Forest, BigInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (forest, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{forest}")?;
        }
        Ok(())
    }
}

/// Parses the text form `c1*F1 + c2*F2 + ...`. A bare forest has coefficient
/// 1 and `-F` has coefficient -1; `0` is the zero element.
impl std::str::FromStr for LinComb {
    type Err = Error;

    fn from_str(s: &str) -> Result<LinComb> {
        if s.trim() == "0" {
            return Ok(LinComb::zero());
        }
        let mut out = LinComb::zero();
        let mut offset = 0;
        for piece in s.split('+') {
            let lead = piece.len() - piece.trim_start().len();
            let term = piece.trim();
            let start = offset + lead;
            offset += piece.len() + 1;
            if term.is_empty() {
                return Err(Error::parse(start, "empty term"));
            }
            let (coeff, forest_text, forest_start) = match term.find('*') {
                Some(star) => {
                    let c = term[..star].trim().parse::<BigInt>().map_err(|_| {
                        Error::parse(start, format!("bad coefficient `{}`", term[..star].trim()))
                    })?;
                    (c, &term[star + 1..], start + star + 1)
                }
                None => match term.strip_prefix('-') {
                    Some(rest) => (-BigInt::one(), rest, start + 1),
                    None => (BigInt::one(), term, start),
                },
            };
            let forest = parse(forest_text).map_err(|e| match e {
                Error::Parse { position, message } => Error::parse(forest_start + position, message),
                other => other,
            })?;
            out.add_term(forest, coeff);
        }
        Ok(out)
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb({self})")
    }
}

/// JSON record of one term of a combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub forest: String,
}

/// JSON record of one term of a tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub coefficient: String,
    pub left: String,
    pub right: String,
}

/// An integer combination of pure tensors `L⊗R` of forests.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(Forest, Forest), BigInt>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    pub fn pure(left: Forest, right: Forest, coeff: impl Into<BigInt>) -> Tensor {
        let mut t = Tensor::zero();
        t.add_term(left, right, coeff.into());
        t
    }

    /// `a ⊗ b` extended bilinearly.
    pub fn outer(a: &LinComb, b: &LinComb) -> Tensor {
        let mut t = Tensor::zero();
        for (fa, ca) in a {
            for (fb, cb) in b {
                t.add_term(fa.clone(), fb.clone(), ca * cb);
            }
        }
        t
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

    pub fn iter(&self) -> btree_map::Iter<'_, (Forest, Forest), BigInt> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Forest, right: &Forest) -> BigInt {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, left: Forest, right: Forest, coeff: BigInt) {
        add_term(&mut self.terms, (left, right), coeff);
    }

    pub fn add_scaled(&mut self, other: &Tensor, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for ((l, r), c) in &other.terms {
            self.add_term(l.clone(), r.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term(l1.union(l2), r1.union(r2), c1 * c2);
            }
        }
        out
    }

    /// Applies `f ⊗ g` for linear maps given on forests.
    pub fn map_both<F, G>(&self, mut f: F, mut g: G) -> Tensor
    where
        F: FnMut(&Forest) -> LinComb,
        G: FnMut(&Forest) -> LinComb,
    {
        let mut out = Tensor::zero();
        for ((l, r), c) in &self.terms {
            let fl = f(l);
            if fl.is_zero() {
                continue;
            }
            let gr = g(r);
            for (a, ca) in &fl {
                for (b, cb) in &gr {
                    out.add_term(a.clone(), b.clone(), c * ca * cb);
                }
            }
        }
        out
    }

    pub fn map_left<F>(&self, f: F) -> Tensor
    where
        F: FnMut(&Forest) -> LinComb,
    {
        self.map_both(f, |r| LinComb::from(r.clone()))
    }

    pub fn map_right<G>(&self, g: G) -> Tensor
    where
        G: FnMut(&Forest) -> LinComb,
    {
        self.map_both(|l| LinComb::from(l.clone()), g)
    }

    /// `m(f ⊗ g)`: applies the maps and multiplies the two sides.
    pub fn contract<F, G>(&self, mut f: F, mut g: G) -> LinComb
    where
        F: FnMut(&Forest) -> LinComb,
        G: FnMut(&Forest) -> LinComb,
    {
        let mut out = LinComb::zero();
        for ((l, r), c) in &self.terms {
            let fl = f(l);
            if fl.is_zero() {
                continue;
            }
            let gr = g(r);
            for (a, ca) in &fl {
                for (b, cb) in &gr {
                    out.add_term(a.union(b), c * ca * cb);
                }
            }
        }
        out
    }

    pub fn to_records(&self) -> Vec<TensorRecord> {
        self.terms
            .iter()
            .rev()
            .map(|((l, r), c)| TensorRecord {
                coefficient: c.to_string(),
                left: l.to_string(),
                right: r.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TensorRecord]) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for r in records {
            out.add_term(parse(&r.left)?, parse(&r.right)?, parse_int(&r.coefficient)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialise")
    }

    pub fn from_json(text: &str) -> Result<Tensor> {
        let records: Vec<TensorRecord> = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), e.to_string()))?;
        Tensor::from_records(&records)
    }
}

impl<'a> IntoIterator for &'a Tensor {
    type Item = (&'a (Forest, Forest), &'a BigInt);
    type IntoIter = btree_map::Iter<'a, (Forest, Forest), BigInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, r), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{l}⊗{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({self})")
    }
}
