//! The generators `δ_n`, monomials in them, and the integer coefficients of
//! the antipode `S(δ_n) = Σ a_{i_1..i_n} δ_1^{i_1} ⋯ δ_n^{i_n}`.
//!
//! Coefficients are available by brute force (antipode in the forest basis
//! followed by an exact change of basis) and by the integer recursion
//! obtained from the compatibility of the antipode with `N`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::hopf::{antipode_recursive, coproduct, product};
use crate::lincomb::{LinComb, Tensor};
use crate::linalg::solve_integer;
use crate::prelie::growth_n;
use crate::util::{factorial, rational_to_string};

/// Exponents `(i_1, ..., i_n)` of a monomial `δ_1^{i_1} ⋯ δ_n^{i_n}` of
/// degree `n`, stored with trailing zeros up to length `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSeq(Vec<u32>);

impl IndexSeq {
    pub fn new(entries: Vec<u32>) -> Result<IndexSeq> {
        let n = entries.len();
        let weight: usize = entries
            .iter()
            .enumerate()
            .map(|(k, &i)| (k + 1) * i as usize)
            .sum();
        if weight != n {
            return Err(Error::InvalidArgument(format!(
                "index sequence {entries:?} has weighted sum {weight}, expected {n}"
            )));
        }
        Ok(IndexSeq(entries))
    }

    /// The sequence for `δ_n` alone.
    pub fn generator(n: usize) -> IndexSeq {
        let mut v = vec![0; n];
        if n > 0 {
            v[n - 1] = 1;
        }
        IndexSeq(v)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `i_k`, 1-based; zero past the end.
    pub fn get(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// `i_1 + ... + i_n`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(i_2, ..., i_n)`.
    pub fn tail(&self) -> &[u32] {
        self.0.get(1..).unwrap_or(&[])
    }

    /// Renders the monomial, e.g. `δ1^2*δ2`; the empty monomial is `1`.
    pub fn monomial_string(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &i)| i > 0)
            .map(|(k, &i)| {
                if i == 1 {
                    format!("δ{}", k + 1)
                } else {
                    format!("δ{}^{}", k + 1, i)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSeq{self}")
    }
}

/// All index sequences of order `n` (one per partition of `n`), sorted
/// lexicographically.
pub fn index_seqs(n: usize) -> Vec<IndexSeq> {
    fn go(k: usize, remaining: usize, cur: &mut Vec<u32>, out: &mut Vec<IndexSeq>) {
        // chooses i_k for k = n, n-1, ..., 1
        if k == 0 {
            if remaining == 0 {
                out.push(IndexSeq(cur.clone()));
            }
            return;
        }
        for i in 0..=remaining / k {
            cur[k - 1] = i as u32;
            go(k - 1, remaining - i * k, cur, out);
        }
        cur[k - 1] = 0;
    }
    let mut cur = vec![0; n];
    let mut out = Vec::new();
    go(n, n, &mut cur, &mut out);
    out.sort();
    out
}

thread_local! {
    static DELTAS: RefCell<Vec<LinComb>> = RefCell::new(vec![LinComb::one()]);
    static RECURSION: RefCell<HashMap<IndexSeq, BigInt>> = RefCell::new(HashMap::new());
}

/// `δ_1 = [ ]`, `δ_n = N(δ_{n-1})`.
pub fn delta(n: usize) -> Result<LinComb> {
    if n == 0 {
        return Err(Error::InvalidArgument("δ_n needs n ≥ 1".into()));
    }
    Ok(delta_cached(n))
}

fn delta_cached(n: usize) -> LinComb {
    DELTAS.with(|d| {
        let mut d = d.borrow_mut();
        while d.len() <= n {
            let next = if d.len() == 1 {
                LinComb::from(Tree::leaf())
            } else {
                growth_n(d.last().expect("nonempty"))
            };
            d.push(next);
        }
        d[n].clone()
    })
}

pub fn delta_coproduct(n: usize) -> Result<Tensor> {
    Ok(coproduct(&delta(n)?))
}

/// `δ_1^{i_1} ⋯ δ_n^{i_n}` in the forest basis.
pub fn monomial_forest_expansion(idx: &IndexSeq) -> LinComb {
    let mut acc = LinComb::one();
    for (k, &i) in idx.entries().iter().enumerate() {
        if i == 0 {
            continue;
        }
        let d = delta_cached(k + 1);
        for _ in 0..i {
            acc = product(&acc, &d);
        }
    }
    acc
}

/// Writes a combination of forests in the basis of `δ`-monomials. Fails if
/// some homogeneous part lies outside the subalgebra they generate, or if a
/// coordinate is not an integer.
pub fn express_in_deltas(x: &LinComb) -> Result<BTreeMap<IndexSeq, BigInt>> {
    let mut out = BTreeMap::new();
    for (deg, part) in x.graded_parts() {
        let coords = express_homogeneous(&part, deg)?;
        out.extend(coords.into_iter().filter(|(_, c)| !c.is_zero()));
    }
    Ok(out)
}

fn express_homogeneous(x: &LinComb, deg: usize) -> Result<Vec<(IndexSeq, BigInt)>> {
    let monomials = index_seqs(deg);
    let expansions: Vec<LinComb> = monomials.iter().map(monomial_forest_expansion).collect();
    let forests: BTreeSet<Forest> = expansions
        .iter()
        .flat_map(|e| e.iter().map(|(f, _)| f.clone()))
        .chain(x.iter().map(|(f, _)| f.clone()))
        .collect();
    let rows: Vec<Vec<BigInt>> = forests
        .iter()
        .map(|f| expansions.iter().map(|e| e.coeff(f)).collect())
        .collect();
    let rhs: Vec<BigInt> = forests.iter().map(|f| x.coeff(f)).collect();
    let solution = solve_integer(&rows, &rhs)?;
    monomials
        .into_iter()
        .zip(solution)
        .map(|(m, q)| {
            if q.is_integer() {
                Ok((m, q.to_integer()))
            } else {
                Err(Error::NonIntegral {
                    context: format!("coefficient of {}", m.monomial_string()),
                    value: rational_to_string(&q),
                })
            }
        })
        .collect()
}

/// A tensor written in `δ`-monomials on both sides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaTensor {
    terms: BTreeMap<(IndexSeq, IndexSeq), BigInt>,
}

impl DeltaTensor {
    pub fn coeff(&self, left: &IndexSeq, right: &IndexSeq) -> BigInt {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(IndexSeq, IndexSeq), &BigInt)> {
        self.terms.iter()
    }

    /// Terms ordered by decreasing left degree.
    fn display_order(&self) -> Vec<(&(IndexSeq, IndexSeq), &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let (la, ra) = a.0;
            let (lb, rb) = b.0;
            lb.order()
                .cmp(&la.order())
                .then_with(|| lb.cmp(la))
                .then_with(|| rb.cmp(ra))
        });
        v
    }
}

impl fmt::Display for DeltaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, r), c)) in self.display_order().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{}⊗{}", l.monomial_string(), r.monomial_string())?;
        }
        Ok(())
    }
}

/// One term of a [`DeltaTensor`], monomials written as in `δ1^2*δ2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTermRecord {
    pub coefficient: String,
    pub left: String,
    pub right: String,
}

impl DeltaTensor {
    pub fn to_records(&self) -> Vec<DeltaTermRecord> {
        self.display_order()
            .into_iter()
            .map(|((l, r), c)| DeltaTermRecord {
                coefficient: c.to_string(),
                left: l.monomial_string(),
                right: r.monomial_string(),
            })
            .collect()
    }
}

/// Rewrites a tensor of forests in `δ`-monomials on both sides.
pub fn express_tensor_in_deltas(t: &Tensor) -> Result<DeltaTensor> {
    // left coordinates first, keeping the right forests
    let mut by_right: BTreeMap<Forest, LinComb> = BTreeMap::new();
    for ((l, r), c) in t {
        by_right
            .entry(r.clone())
            .or_default()
            .add_term(l.clone(), c.clone());
    }
    let mut by_left_monomial: BTreeMap<IndexSeq, LinComb> = BTreeMap::new();
    for (r, left) in by_right {
        for (m, c) in express_in_deltas(&left)? {
            by_left_monomial
                .entry(m)
                .or_default()
                .add_term(r.clone(), c);
        }
    }
    let mut terms = BTreeMap::new();
    for (lm, right) in by_left_monomial {
        for (rm, c) in express_in_deltas(&right)? {
            terms.insert((lm.clone(), rm), c);
        }
    }
    Ok(DeltaTensor { terms })
}

/// `Δ(δ_n)` in `δ`-monomials.
pub fn delta_coproduct_monomials(n: usize) -> Result<DeltaTensor> {
    express_tensor_in_deltas(&delta_coproduct(n)?)
}

/// How a coefficient table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Antipode in the forest basis, then an exact change of basis.
    #[serde(rename = "extract")]
    Extraction,
    Recursion,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Extraction => "extract",
            Method::Recursion => "recursion",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The coefficients `a` of `S(δ_n)`, keyed by every index sequence of order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub n: usize,
    pub method: Method,
    pub entries: BTreeMap<IndexSeq, BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntryRecord {
    pub index: Vec<u32>,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTableRecord {
    pub n: usize,
    pub method: Method,
    pub entries: Vec<CoeffEntryRecord>,
}

impl CoeffTable {
    /// Builds a table by evaluating `a` on every index sequence of order `n`.
    pub fn build<F>(n: usize, method: Method, mut a: F) -> Result<CoeffTable>
    where
        F: FnMut(&IndexSeq) -> Result<BigInt>,
    {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        let entries = index_seqs(n)
            .into_iter()
            .map(|idx| a(&idx).map(|v| (idx, v)))
            .collect::<Result<_>>()?;
        Ok(CoeffTable { n, method, entries })
    }

    pub fn get(&self, idx: &IndexSeq) -> Option<&BigInt> {
        self.entries.get(idx)
    }

    /// First index where the two tables differ, if any.
    pub fn first_difference(&self, other: &CoeffTable) -> Option<IndexSeq> {
        let keys: BTreeSet<&IndexSeq> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .find(|k| self.entries.get(*k) != other.entries.get(*k))
            .cloned()
    }

    pub fn same_values(&self, other: &CoeffTable) -> bool {
        self.n == other.n && self.entries == other.entries
    }

    pub fn to_record(&self) -> CoeffTableRecord {
        CoeffTableRecord {
            n: self.n,
            method: self.method,
            entries: self
                .entries
                .iter()
                .map(|(idx, a)| CoeffEntryRecord {
                    index: idx.entries().to_vec(),
                    a: a.to_string(),
                    b: rational_to_string(&b_normalize(idx, a)),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &CoeffTableRecord) -> Result<CoeffTable> {
        let mut entries = BTreeMap::new();
        for e in &rec.entries {
            let idx = IndexSeq::new(e.index.clone())?;
            if idx.order() != rec.n {
                return Err(Error::InvalidArgument(format!(
                    "index {idx} in a table of order {}",
                    rec.n
                )));
            }
            entries.insert(idx, crate::lincomb::parse_int(&e.a)?);
        }
        Ok(CoeffTable {
            n: rec.n,
            method: rec.method,
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records serialise")
    }

    pub fn from_json(text: &str) -> Result<CoeffTable> {
        let rec: CoeffTableRecord = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), e.to_string()))?;
        CoeffTable::from_record(&rec)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "a", "b"]).expect("in-memory write");
        for e in self.to_record().entries {
            let idx = IndexSeq(e.index).to_string();
            w.write_record([idx.as_str(), e.a.as_str(), e.b.as_str()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// `S(δ_n)` rebuilt from the table, in the forest basis.
    pub fn reassemble(&self) -> LinComb {
        let mut out = LinComb::zero();
        for (idx, a) in &self.entries {
            out.add_scaled(&monomial_forest_expansion(idx), a);
        }
        out
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, method = {}", self.n, self.method)?;
        let width = self.entries.keys().map(|k| k.to_string().len()).max().unwrap_or(0);
        for (idx, a) in &self.entries {
            let b = rational_to_string(&b_normalize(idx, a));
            writeln!(f, "{:<width$}  a = {a}  b = {b}", idx.to_string())?;
        }
        Ok(())
    }
}

/// Coefficients of `S(δ_n)` by brute force in the forest basis.
pub fn extract_coefficients(n: usize) -> Result<CoeffTable> {
    let s = antipode_recursive(&delta(n)?);
    let coords = express_homogeneous(&s, n)?;
    let coords: BTreeMap<IndexSeq, BigInt> = coords.into_iter().collect();
    CoeffTable::build(n, Method::Extraction, |idx| {
        Ok(coords.get(idx).cloned().unwrap_or_default())
    })
}

/// `a_{i_1..i_n}` by the integer recursion in the order `n`.
pub fn coeff_recursion(idx: &IndexSeq) -> BigInt {
    if let Some(hit) = RECURSION.with(|m| m.borrow().get(idx).cloned()) {
        return hit;
    }
    let value = recursion_step(idx);
    RECURSION.with(|m| m.borrow_mut().insert(idx.clone(), value.clone()));
    value
}

fn recursion_step(idx: &IndexSeq) -> BigInt {
    let n = idx.order();
    if n == 0 {
        return BigInt::one();
    }
    let e = idx.entries();
    if e[n - 1] == 1 {
        return -BigInt::one();
    }
    debug_assert_eq!(e[n - 1], 0);
    let shorter = &e[..n - 1];
    let mut acc = BigInt::zero();
    // moves one unit from i_j to i_{j-1}, for j ≥ 2 with i_j ≥ 1
    for j in 2..n {
        if shorter[j - 1] == 0 {
            continue;
        }
        let mut v = shorter.to_vec();
        v[j - 2] += 1;
        v[j - 1] -= 1;
        acc += BigInt::from(shorter[j - 2] + 1) * coeff_recursion(&IndexSeq(v));
    }
    if shorter[0] >= 1 {
        let mut v = shorter.to_vec();
        v[0] -= 1;
        acc -= BigInt::from(n - 1) * coeff_recursion(&IndexSeq(v));
    }
    acc
}

pub fn recursion_table(n: usize) -> Result<CoeffTable> {
    CoeffTable::build(n, Method::Recursion, |idx| Ok(coeff_recursion(idx)))
}

/// `b = (-1)^{i_1+...+i_n} a / (n-1)!`.
pub fn b_normalize(idx: &IndexSeq, a: &BigInt) -> BigRational {
    let n = idx.order().max(1);
    let mut b = BigRational::new(a.clone(), factorial(n - 1));
    if idx.total() % 2 == 1 {
        b = -b;
    }
    b
}

/// The index `(n - Σ_{k≥2} k i_k, tail..., 0, ...)` of order `n`, if valid.
pub fn index_with_tail(n: usize, tail: &[u32]) -> Option<IndexSeq> {
    let tail_weight: usize = tail
        .iter()
        .enumerate()
        .map(|(m, &i)| (m + 2) * i as usize)
        .sum();
    // a nonzero i_k forces k ≤ tail_weight ≤ n, so the tail always fits
    if n == 0 || tail_weight > n {
        return None;
    }
    let mut v = vec![0u32; n];
    v[0] = (n - tail_weight) as u32;
    for (m, &i) in tail.iter().enumerate() {
        if i > 0 {
            v[m + 1] = i;
        }
    }
    Some(IndexSeq(v))
}
