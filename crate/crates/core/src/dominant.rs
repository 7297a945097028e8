//! Closed forms for the antipode coefficients: dominant sequences, their
//! weights, the polynomial family `P`, iterated harmonic sums, and fitting
//! of `b` sequences to polynomial-times-harmonic ansätze.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cm::{b_normalize, coeff_recursion, index_with_tail, CoeffTable, IndexSeq, Method};
use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::poly::{MonomialRecord, MultiPoly};
use crate::util::{factorial, rational_to_string};

/// `(i_2, ..., i_n)`, possibly with trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TailSeq(Vec<u32>);

/// A tail truncated after its last nonzero entry; `()` when all zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DominantSeq(Vec<u32>);

/// `Σ_{k≥2} k i_k` for entries `(i_2, i_3, ...)`.
fn weighted_sum(entries: &[u32]) -> u32 {
    entries
        .iter()
        .enumerate()
        .map(|(m, &i)| (m as u32 + 2) * i)
        .sum()
}

fn format_seq(f: &mut fmt::Formatter<'_>, entries: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

/// Parses `1,1`, `(1,1)`, `()` or the empty string.
fn parse_entries(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = text.len() - text.trim_start().len() + usize::from(t.starts_with('('));
    let mut out = Vec::new();
    for part in inner.split(',') {
        let v = part
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(offset, format!("expected a nonnegative integer, got `{}`", part.trim())))?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

impl TailSeq {
    pub fn new(entries: Vec<u32>) -> TailSeq {
        TailSeq(entries)
    }

    pub fn of_index(idx: &IndexSeq) -> TailSeq {
        TailSeq(idx.tail().to_vec())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dominant(&self) -> DominantSeq {
        let end = self.0.iter().rposition(|&i| i != 0).map_or(0, |p| p + 1);
        DominantSeq(self.0[..end].to_vec())
    }

    pub fn weight(&self) -> u32 {
        self.dominant().weight()
    }
}

impl FromStr for TailSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<TailSeq> {
        parse_entries(s).map(TailSeq)
    }
}

impl fmt::Display for TailSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_seq(f, &self.0)
    }
}

impl DominantSeq {
    pub fn new(entries: Vec<u32>) -> Result<DominantSeq> {
        if entries.last() == Some(&0) {
            return Err(Error::InvalidArgument(format!(
                "dominant sequence {entries:?} ends with zero"
            )));
        }
        Ok(DominantSeq(entries))
    }

    pub fn empty() -> DominantSeq {
        DominantSeq(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `1 i_2 + ... + (n-1) i_n - 1`, with `ω() = 0` and `ω(1) = 1`.
    pub fn weight(&self) -> u32 {
        match self.0.as_slice() {
            [] => 0,
            [1] => 1,
            e => weighted_sum(e) - self.size() - 1,
        }
    }

    /// `i_2 + ... + i_n`, the total degree of `P`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `2 i_2 + ... + n i_n`: the smallest order `n` with this tail.
    pub fn min_order(&self) -> usize {
        (weighted_sum(&self.0) as usize).max(1)
    }

    /// The unit sequence `(0, ..., 0, 1)` with the 1 at index position `k ≥ 2`.
    pub fn unit(k: usize) -> DominantSeq {
        assert!(k >= 2, "tails start at position 2");
        let mut v = vec![0; k - 1];
        v[k - 2] = 1;
        DominantSeq(v)
    }
}

impl FromStr for DominantSeq {
    type Err = Error;

    /// Accepts any tail and takes its dominant.
    fn from_str(s: &str) -> Result<DominantSeq> {
        s.parse::<TailSeq>().map(|t| t.dominant())
    }
}

impl fmt::Display for DominantSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_seq(f, &self.0)
    }
}

impl fmt::Debug for DominantSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DominantSeq{self}")
    }
}

pub fn weight(t: &TailSeq) -> u32 {
    t.weight()
}

pub fn dominant(t: &TailSeq) -> DominantSeq {
    t.dominant()
}

/// Dominant sequences whose weight `Σ (k-1) i_k - 1` equals `w ≥ 1`, sorted.
/// These correspond to partitions of `w + 1`. The sequence `(1)`, whose
/// weight is 1 only by convention, is not included.
pub fn dominant_seqs_of_weight(w: u32) -> Vec<DominantSeq> {
    fn go(part: u32, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<DominantSeq>) {
        // part p stands for position k = p + 1, entry index p - 1
        if remaining == 0 {
            out.push(TailSeq(cur.clone()).dominant());
            return;
        }
        if part == 0 {
            return;
        }
        for mult in (0..=remaining / part).rev() {
            cur[part as usize - 1] = mult;
            go(part - 1, remaining - mult * part, cur, out);
        }
        cur[part as usize - 1] = 0;
    }
    if w == 0 {
        return Vec::new();
    }
    let mut cur = vec![0; (w + 1) as usize];
    let mut out = Vec::new();
    go(w + 1, w + 1, &mut cur, &mut out);
    out.sort();
    out
}

thread_local! {
    static POLYS: RefCell<HashMap<DominantSeq, MultiPoly>> = RefCell::new(HashMap::new());
}

/// The polynomial `P_d` in the variables `X_1, ..., X_ω`.
pub fn poly_p(d: &DominantSeq) -> MultiPoly {
    if let Some(hit) = POLYS.with(|m| m.borrow().get(d).cloned()) {
        return hit;
    }
    let p = poly_p_step(d);
    POLYS.with(|m| m.borrow_mut().insert(d.clone(), p.clone()));
    p
}

fn poly_p_step(d: &DominantSeq) -> MultiPoly {
    let x1 = MultiPoly::var(1);
    let one = MultiPoly::one();
    match d.entries() {
        [] => return one,
        [1] => return x1,
        [2] => return x1.sub(&MultiPoly::constant(2)).mul(&x1.sub(&one)),
        [0, 1] => return x1.sub(&one),
        _ => {}
    }
    let e = d.entries();
    let w = d.weight() as usize;
    let mut out = MultiPoly::zero();
    // positions j ≥ 3 live at entry index j - 2 ≥ 1
    for m in 1..e.len() {
        if e[m] == 0 {
            continue;
        }
        let mut v = e.to_vec();
        v[m - 1] += 1;
        v[m] -= 1;
        let factor = BigInt::from(e[m - 1] + 1);
        out = out.add(&poly_p(&TailSeq(v).dominant()).scale(&factor));
    }
    if e[0] >= 1 {
        let mut v = e.to_vec();
        v[0] -= 1;
        let shift = 2 - i64::from(weighted_sum(e));
        let linear = MultiPoly::var(w).add(&MultiPoly::constant(shift));
        out = out.add(&linear.mul(&poly_p(&TailSeq(v).dominant())));
    }
    out
}

/// Calls `f` on every strictly increasing tuple `1 ≤ p_1 < ... < p_len ≤ max`
/// until it returns `false`. The empty tuple is visited once when `len = 0`.
pub fn for_each_increasing<F>(max: usize, len: usize, mut f: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    fn go<F: FnMut(&[usize]) -> bool>(start: usize, max: usize, len: usize, cur: &mut Vec<usize>, f: &mut F) -> bool {
        if cur.len() == len {
            return f(cur);
        }
        let need = len - cur.len();
        let mut p = start;
        while p + need - 1 <= max {
            cur.push(p);
            let go_on = go(p + 1, max, len, cur, f);
            cur.pop();
            if !go_on {
                return false;
            }
            p += 1;
        }
        true
    }
    go(1, max, len, &mut Vec::with_capacity(len), &mut f)
}

/// Upper bound `2 i_2 + ... + n i_n - 2` of the vanishing range.
pub fn lemma26_bound(d: &DominantSeq) -> usize {
    (weighted_sum(d.entries()) as usize).saturating_sub(2)
}

/// First increasing tuple in `[1, bound]` where `P_d` does not vanish.
pub fn lemma26_witness(d: &DominantSeq, bound: usize) -> Option<Vec<usize>> {
    let p = poly_p(d);
    let mut witness = None;
    for_each_increasing(bound, d.weight() as usize, |tuple| {
        let point: Vec<BigInt> = tuple.iter().map(|&x| BigInt::from(x)).collect();
        if p.eval(&point).is_zero() {
            true
        } else {
            witness = Some(tuple.to_vec());
            false
        }
    });
    witness
}

/// True iff `P_d` vanishes on every increasing tuple in `[1, bound]`.
pub fn lemma26_check(d: &DominantSeq, bound: usize) -> bool {
    lemma26_witness(d, bound).is_none()
}

/// `Σ_{1≤p_1<...<p_N≤m} P_d(p) / (p_1 ⋯ p_N)` with `N = ω(d)`.
pub fn weighted_poly_sum(d: &DominantSeq, m: usize) -> BigRational {
    let p = poly_p(d);
    let mut acc = BigRational::zero();
    for_each_increasing(m, d.weight() as usize, |tuple| {
        let point: Vec<BigInt> = tuple.iter().map(|&x| BigInt::from(x)).collect();
        let denom: BigInt = point.iter().product();
        acc += BigRational::new(p.eval(&point), denom);
        true
    });
    acc
}

/// `a_{i_1..i_n}` from the iterated-sum closed form.
pub fn coeff_closed_form(idx: &IndexSeq) -> Result<BigInt> {
    let n = idx.order();
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let d = TailSeq::of_index(idx).dominant();
    let sum = weighted_poly_sum(&d, n - 1);
    let mut value = sum * BigRational::from_integer(factorial(n - 1));
    if idx.total() % 2 == 1 {
        value = -value;
    }
    if !value.is_integer() {
        return Err(Error::NonIntegral {
            context: format!("closed form at {idx}"),
            value: rational_to_string(&value),
        });
    }
    Ok(value.to_integer())
}

pub fn closed_form_table(n: usize) -> Result<CoeffTable> {
    CoeffTable::build(n, Method::ClosedForm, coeff_closed_form)
}

/// `H_n^{(0)}, ..., H_n^{(k_max)}`, where `H_n^{(0)} = 1`.
pub fn harmonic_row(n: usize, k_max: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); k_max + 1];
    e[0] = BigRational::one();
    for p in 1..=n {
        let inv = BigRational::new(BigInt::one(), BigInt::from(p));
        for j in (1..=k_max.min(p)).rev() {
            let add = &e[j - 1] * &inv;
            e[j] += add;
        }
    }
    e
}

/// `H_n^{(k)} = Σ_{1≤p_1<...<p_k≤n} 1/(p_1 ⋯ p_k)`.
pub fn harmonic(n: usize, k: usize) -> BigRational {
    harmonic_row(n, k).pop().expect("row has k + 1 entries")
}

/// `b` of the index `(n - Σ k i_k, tail, 0, ...)`, via the recursion.
pub fn b_with_tail(n: usize, tail: &DominantSeq) -> Option<BigRational> {
    let idx = index_with_tail(n, tail.entries())?;
    Some(b_normalize(&idx, &coeff_recursion(&idx)))
}

/// Univariate polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + c)
    }
}

impl fmt::Display for RatPoly {
    /// Decreasing powers of `n`, e.g. `1/2*n^2-7/2*n+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let abs = rational_to_string(&c.abs());
            let power = match k {
                0 => String::new(),
                1 => "n".into(),
                _ => format!("n^{k}"),
            };
            match (k, c.abs().is_one()) {
                (0, _) => f.write_str(&abs)?,
                (_, true) => f.write_str(&power)?,
                (_, false) => write!(f, "{abs}*{power}")?,
            }
        }
        Ok(())
    }
}

/// `poly(n) + Σ_{l≥1} coeff_l(n) H_{n-1}^{(l)}`; entry `l` of `coeffs`
/// multiplies `H_{n-1}^{(l)}`, entry 0 is the polynomial part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HarmonicForm {
    coeffs: Vec<RatPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicTermRecord {
    pub depth: usize,
    /// Rational coefficients of `n^0, n^1, ...`.
    pub coefficients: Vec<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicFormRecord {
    pub text: String,
    pub terms: Vec<HarmonicTermRecord>,
}

impl HarmonicForm {
    pub fn new(mut coeffs: Vec<RatPoly>) -> HarmonicForm {
        while coeffs.last().is_some_and(RatPoly::is_zero) {
            coeffs.pop();
        }
        HarmonicForm { coeffs }
    }

    /// Builds from `(depth, polynomial)` pairs.
    pub fn from_terms(terms: Vec<(usize, RatPoly)>) -> HarmonicForm {
        let len = terms.iter().map(|(l, _)| l + 1).max().unwrap_or(0);
        let mut coeffs = vec![RatPoly::default(); len];
        for (l, p) in terms {
            coeffs[l] = coeffs[l].add(&p);
        }
        HarmonicForm::new(coeffs)
    }

    pub fn coeff(&self, depth: usize) -> RatPoly {
        self.coeffs.get(depth).cloned().unwrap_or_default()
    }

    pub fn max_depth(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let row = harmonic_row(n.saturating_sub(1), self.max_depth());
        let nq = BigRational::from_integer(n.into());
        self.coeffs
            .iter()
            .zip(&row)
            .map(|(c, h)| c.eval(&nq) * h)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_record(&self) -> HarmonicFormRecord {
        HarmonicFormRecord {
            text: self.to_string(),
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(depth, c)| HarmonicTermRecord {
                    depth,
                    coefficients: c.coeffs().iter().map(rational_to_string).collect(),
                    text: c.to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for HarmonicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if l == 0 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("({c})*H(n-1,{l})"));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitOutcome {
    Fitted(HarmonicForm),
    NoFit { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub tail: DominantSeq,
    pub n_min: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub max_depth: usize,
    /// Inclusive range of the held-out orders.
    pub held_out: (usize, usize),
    pub outcome: FitOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitRecord {
    pub tail: Vec<u32>,
    pub n_min: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub max_depth: usize,
    pub held_out: (usize, usize),
    pub fitted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<HarmonicFormRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub const HELD_OUT: usize = 5;

impl FitReport {
    pub fn form(&self) -> Option<&HarmonicForm> {
        match &self.outcome {
            FitOutcome::Fitted(f) => Some(f),
            FitOutcome::NoFit { .. } => None,
        }
    }

    pub fn to_record(&self) -> FitRecord {
        let (form, reason) = match &self.outcome {
            FitOutcome::Fitted(f) => (Some(f.to_record()), None),
            FitOutcome::NoFit { reason } => (None, Some(reason.clone())),
        };
        FitRecord {
            tail: self.tail.entries().to_vec(),
            n_min: self.n_min,
            n_max: self.n_max,
            max_degree: self.max_degree,
            max_depth: self.max_depth,
            held_out: self.held_out,
            fitted: form.is_some(),
            form,
            reason,
        }
    }
}

impl fmt::Display for FitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{} = ", self.tail)?;
        match &self.outcome {
            FitOutcome::Fitted(form) => write!(f, "{form}")?,
            FitOutcome::NoFit { reason } => write!(f, "no fit ({reason})")?,
        }
        write!(
            f,
            "  [fit n={}..{}, held out n={}..{}]",
            self.n_min, self.n_max, self.held_out.0, self.held_out.1
        )
    }
}

/// Ansatz bounds: polynomial degree `|tail| + 1`, harmonic depth `ω(tail)`.
pub fn ansatz_bounds(tail: &DominantSeq) -> (usize, usize) {
    (tail.size() as usize + 1, tail.weight() as usize)
}

pub fn ansatz_dimension(tail: &DominantSeq) -> usize {
    let (deg, depth) = ansatz_bounds(tail);
    (deg + 1) * (depth + 1)
}

/// Fits `n ↦ b_{(n - Σ k i_k, tail, 0, ...)}` on `[n_min, n_max]` and checks
/// the result on the next five orders.
pub fn fit_harmonic_form(tail: &DominantSeq, n_min: usize, n_max: usize) -> Result<FitReport> {
    let (max_degree, max_depth) = ansatz_bounds(tail);
    fit_with_bounds(tail, n_min, n_max, max_degree, max_depth)
}

/// [`fit_harmonic_form`] with explicit ansatz bounds.
pub fn fit_with_bounds(
    tail: &DominantSeq,
    n_min: usize,
    n_max: usize,
    max_degree: usize,
    max_depth: usize,
) -> Result<FitReport> {
    let dim = (max_degree + 1) * (max_depth + 1);
    if n_min < tail.min_order() {
        return Err(Error::InvalidArgument(format!(
            "tail {tail} needs n ≥ {}, got n_min = {n_min}",
            tail.min_order()
        )));
    }
    if n_max < n_min || n_max - n_min < dim {
        return Err(Error::InvalidArgument(format!(
            "fitting {dim} unknowns needs more than {dim} orders, got [{n_min}, {n_max}]"
        )));
    }
    let row_at = |n: usize| -> Vec<BigRational> {
        let h = harmonic_row(n - 1, max_depth);
        let nq = BigRational::from_integer(n.into());
        let mut row = Vec::with_capacity(dim);
        for hl in &h {
            let mut power = BigRational::one();
            for _ in 0..=max_degree {
                row.push(&power * hl);
                power *= &nq;
            }
        }
        row
    };
    let b = |n: usize| b_with_tail(n, tail).expect("n is at least the minimal order");

    let rows: Vec<Vec<BigRational>> = (n_min..=n_max).map(row_at).collect();
    let rhs: Vec<BigRational> = (n_min..=n_max).map(b).collect();
    let held_out = (n_max + 1, n_max + HELD_OUT);
    let report = |outcome| FitReport {
        tail: tail.clone(),
        n_min,
        n_max,
        max_degree,
        max_depth,
        held_out,
        outcome,
    };

    let solution = match solve_rational(&rows, &rhs) {
        Ok(x) => x,
        Err(e @ (Error::RankDeficient { .. } | Error::Inconsistent)) => {
            return Ok(report(FitOutcome::NoFit {
                reason: e.to_string(),
            }))
        }
        Err(e) => return Err(e),
    };
    let form = HarmonicForm::new(
        solution
            .chunks(max_degree + 1)
            .map(|c| RatPoly::new(c.to_vec()))
            .collect(),
    );
    for n in held_out.0..=held_out.1 {
        let expected = b(n);
        let got = form.eval(n);
        if got != expected {
            return Ok(report(FitOutcome::NoFit {
                reason: format!(
                    "held-out n = {n}: fit gives {}, recursion gives {}",
                    rational_to_string(&got),
                    rational_to_string(&expected)
                ),
            }));
        }
    }
    Ok(report(FitOutcome::Fitted(form)))
}

/// Fit on the smallest admissible window: `dim + 1` orders from the
/// minimal order of the tail.
pub fn fit_harmonic_form_auto(tail: &DominantSeq) -> Result<FitReport> {
    let n_min = tail.min_order();
    fit_harmonic_form(tail, n_min, n_min + ansatz_dimension(tail))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderMismatch {
    pub n: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderReport {
    pub k: usize,
    pub checked: usize,
    pub mismatch: Option<LadderMismatch>,
}

impl LadderReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `n - 1 - Σ_{i=1}^{k-2} H_{n-1}^{(i)}`.
pub fn ladder_rhs(k: usize, n: usize) -> BigRational {
    let row = harmonic_row(n - 1, k.saturating_sub(2));
    row.iter()
        .skip(1)
        .fold(BigRational::from_integer(BigInt::from(n) - 1), |acc, h| acc - h)
}

/// Checks `b_{(n-k, 0, ..., 0, 1, 0, ...)} = n - 1 - Σ_{i=1}^{k-2} H_{n-1}^{(i)}`,
/// with the 1 at position `k`, for `k ≤ n ≤ n_max`.
pub fn ladder_identity_check(k: usize, n_max: usize) -> Result<LadderReport> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("ladder position {k} < 2")));
    }
    let tail = DominantSeq::unit(k);
    let mut checked = 0;
    for n in k..=n_max {
        let lhs = b_with_tail(n, &tail).expect("n ≥ k");
        let rhs = ladder_rhs(k, n);
        checked += 1;
        if lhs != rhs {
            return Ok(LadderReport {
                k,
                checked,
                mismatch: Some(LadderMismatch { n, lhs, rhs }),
            });
        }
    }
    Ok(LadderReport {
        k,
        checked,
        mismatch: None,
    })
}

/// The closed form of the ladder identity as a [`HarmonicForm`].
pub fn ladder_form(k: usize) -> HarmonicForm {
    let mut terms = vec![(0, RatPoly::from_ints(&[-1, 1]))];
    for i in 1..=k.saturating_sub(2) {
        terms.push((i, RatPoly::from_ints(&[-1])));
    }
    HarmonicForm::from_terms(terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub tail: Vec<u32>,
    pub dominant: Vec<u32>,
    pub weight: u32,
    pub degree: u32,
    pub polynomial: String,
    pub monomials: Vec<MonomialRecord>,
}

pub fn poly_record(t: &TailSeq) -> PolyRecord {
    let d = t.dominant();
    let p = poly_p(&d);
    PolyRecord {
        tail: t.entries().to_vec(),
        dominant: d.entries().to_vec(),
        weight: d.weight(),
        degree: p.degree().unwrap_or(0),
        polynomial: p.to_string(),
        monomials: p.to_records(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::{index_seqs, recursion_table};

    fn d(v: &[u32]) -> DominantSeq {
        DominantSeq::new(v.to_vec()).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn q(n: i64, den: i64) -> BigRational {
        BigRational::new(n.into(), den.into())
    }

    fn x1m1() -> MultiPoly {
        p("X1-1")
    }

    #[test]
    fn weights_and_dominants() {
        assert_eq!(TailSeq::new(vec![2]).weight(), 1);
        assert_eq!(TailSeq::new(vec![1, 1]).weight(), 2);
        assert_eq!(TailSeq::new(vec![]).weight(), 0);
        assert_eq!(TailSeq::new(vec![1]).weight(), 1);
        assert_eq!(TailSeq::new(vec![1, 0]).dominant(), d(&[1]));
        assert_eq!(TailSeq::new(vec![0, 1, 0, 0]).dominant(), d(&[0, 1]));
        assert_eq!(TailSeq::new(vec![0, 0, 0]).dominant(), DominantSeq::empty());
        assert!(DominantSeq::new(vec![1, 0]).is_err());
        assert_eq!("0,1,0".parse::<DominantSeq>().unwrap(), d(&[0, 1]));
        assert_eq!("(2,1)".parse::<TailSeq>().unwrap(), TailSeq::new(vec![2, 1]));
        assert_eq!("()".parse::<TailSeq>().unwrap(), TailSeq::new(vec![]));
        assert!("1,x".parse::<TailSeq>().is_err());
    }

    #[test]
    fn dominant_enumeration_counts_partitions() {
        let counts: Vec<usize> = (1..=5).map(|w| dominant_seqs_of_weight(w).len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 7, 11]);
        for w in 1..=5 {
            for s in dominant_seqs_of_weight(w) {
                assert_eq!(s.weight(), w, "{s}");
            }
        }
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(poly_p(&DominantSeq::empty()), MultiPoly::one());
        assert_eq!(poly_p(&d(&[1])), p("X1"));
        assert_eq!(poly_p(&d(&[0, 1])), p("X1-1"));
        assert_eq!(poly_p(&d(&[2])), p("X1-2").mul(&x1m1()));
        assert_eq!(poly_p(&d(&[1, 1])), p("2*X1+X2-7").mul(&x1m1()));
        // the X3 coefficient is -7; +7 breaks agreement with the recursion at n = 7
        assert_eq!(
            poly_p(&d(&[2, 1])),
            p("3*X1*X2+2*X1*X3+X2*X3-22*X1-11*X2-7*X3+59").mul(&x1m1())
        );
        assert_eq!(poly_p(&d(&[0, 0, 0, 1])), x1m1());
        // (m): (X1-2)(X1-1)(X2-4)...(X_{m-1}-2m+2)
        let mut expected = p("X1-2").mul(&x1m1());
        for m in 3..=6usize {
            let factor = MultiPoly::var(m - 1).sub(&MultiPoly::constant(2 * m as i64 - 2));
            expected = expected.mul(&factor);
            let mut v = vec![0; 1];
            v[0] = m as u32;
            assert_eq!(poly_p(&d(&v)), expected);
        }
    }

    #[test]
    fn degree_and_divisibility() {
        for w in 1..=5 {
            for s in dominant_seqs_of_weight(w) {
                let poly = poly_p(&s);
                assert_eq!(poly.degree(), Some(s.size()), "{s}");
                assert!(poly.divisible_by_x1_minus_1(), "{s}");
                assert!(poly.num_vars() <= w as usize, "{s}");
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        assert!(lemma26_check(&d(&[2]), 2));
        assert!(lemma26_check(&d(&[0, 1]), 1));
        assert!(lemma26_check(&d(&[1, 1]), 3));
        assert_eq!(lemma26_bound(&d(&[1, 1])), 3);
        // one step past the range: (2X1+X2-7)(X1-1) at (2,4) is 1
        assert_eq!(lemma26_witness(&d(&[1, 1]), 4), Some(vec![2, 4]));
        assert!(!lemma26_check(&d(&[2]), 3));
    }

    #[test]
    fn increasing_tuples() {
        let mut seen = Vec::new();
        for_each_increasing(4, 2, |t| {
            seen.push(t.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
        assert_eq!(seen[5], vec![3, 4]);
        let mut empty = 0;
        for_each_increasing(3, 0, |t| {
            assert!(t.is_empty());
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
        let mut none = 0;
        for_each_increasing(2, 3, |_| {
            none += 1;
            true
        });
        assert_eq!(none, 0);
    }

    #[test]
    fn closed_form_examples() {
        let c = |v: &[u32]| coeff_closed_form(&IndexSeq::new(v.to_vec()).unwrap()).unwrap();
        assert_eq!(c(&[1, 1, 0]), BigInt::from(4));
        assert_eq!(c(&[0, 0, 1]), BigInt::from(-1));
        assert_eq!(c(&[0, 2, 0, 0]), BigInt::from(4));
        assert_eq!(c(&[1]), BigInt::from(-1));
        assert_eq!(c(&[3, 0, 0]), BigInt::from(-2));
    }

    #[test]
    fn closed_form_matches_recursion() {
        for n in 1..=7 {
            let closed = closed_form_table(n).unwrap();
            let rec = recursion_table(n).unwrap();
            assert_eq!(closed.first_difference(&rec), None, "order {n}");
            assert_eq!(closed.entries.len(), index_seqs(n).len());
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1, 1), q(1, 1));
        assert_eq!(harmonic(3, 2), q(1, 1));
        assert_eq!(harmonic(3, 1), q(11, 6));
        assert_eq!(harmonic(2, 3), q(0, 1));
        assert_eq!(harmonic(0, 0), q(1, 1));
        assert_eq!(harmonic(5, 0), q(1, 1));
        // H_n^{(n)} = 1/n!
        assert_eq!(harmonic(5, 5), q(1, 120));
    }

    #[test]
    fn harmonic_pascal_recurrence() {
        for n in 1..=30 {
            for k in 1..=n {
                let lhs = harmonic(n, k);
                let rhs = harmonic(n - 1, k) + harmonic(n - 1, k - 1) / BigRational::from_integer(n.into());
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rat_poly_display() {
        let half = q(1, 2);
        let p = RatPoly::from_ints(&[6, -7, 1]).scale(&half);
        assert_eq!(p.to_string(), "1/2*n^2-7/2*n+3");
        assert_eq!(RatPoly::from_ints(&[-1, 1]).to_string(), "n-1");
        assert_eq!(RatPoly::from_ints(&[0, 0]).to_string(), "0");
        assert_eq!(RatPoly::from_ints(&[-14, 2]).to_string(), "2*n-14");
        assert_eq!(p.eval(&q(6, 1)), q(0, 1));
    }

    #[test]
    fn fit_recovers_simple_tail() {
        let report = fit_harmonic_form_auto(&d(&[0, 1])).unwrap();
        let expected = HarmonicForm::from_terms(vec![
            (0, RatPoly::from_ints(&[-1, 1])),
            (1, RatPoly::from_ints(&[-1])),
        ]);
        assert_eq!(report.form(), Some(&expected), "{report}");
        assert_eq!(expected.to_string(), "n-1 + (-1)*H(n-1,1)");
    }

    #[test]
    fn fit_rejects_thin_windows() {
        let t = d(&[0, 1]);
        assert!(fit_harmonic_form(&t, 3, 5).is_err());
        assert!(fit_harmonic_form(&t, 2, 20).is_err());
    }

    #[test]
    fn undersized_ansatz_is_reported() {
        // b for tail (2) needs H_{n-1}^{(1)}; a purely polynomial ansatz cannot fit
        let r = fit_with_bounds(&d(&[2]), 4, 12, 3, 0).unwrap();
        assert!(r.form().is_none());
        assert!(r.to_string().contains("no fit"), "{r}");
        assert!(!r.to_record().fitted);
    }

    #[test]
    fn ladder_small() {
        for k in 2..=4 {
            let r = ladder_identity_check(k, 10).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.checked, 11 - k);
        }
        assert!(ladder_identity_check(1, 5).is_err());
        assert_eq!(ladder_form(4).to_string(), "n-1 + (-1)*H(n-1,1) + (-1)*H(n-1,2)");
    }

    #[test]
    fn poly_records() {
        let r = poly_record(&"1,1".parse().unwrap());
        assert_eq!(r.weight, 2);
        assert_eq!(r.degree, 2);
        assert_eq!(r.polynomial, "2*X1^2+X1*X2-9*X1-X2+7");
        let unit = poly_record(&"0,0,0".parse().unwrap());
        assert_eq!(unit.polynomial, "1");
        assert_eq!(unit.weight, 0);
    }
}
