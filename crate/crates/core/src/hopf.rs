//! Hopf algebra structure on forests: product by disjoint union, the cut
//! coproduct, counit, reduced coproduct and the antipode.
//!
//! The coproduct puts the trunk (the part containing the roots) on the left
//! and the pruned forest on the right. It is computed from multiplicativity
//! and `Δ(B(F)) = 1⊗B(F) + (B⊗Id)Δ(F)`.
//!
//! Tree coproducts and forest antipodes are cached per thread.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::lincomb::{LinComb, Tensor};

thread_local! {
    static TREE_COPRODUCT: RefCell<HashMap<Tree, Rc<Tensor>>> = RefCell::new(HashMap::new());
    static FOREST_ANTIPODE: RefCell<HashMap<Forest, Rc<LinComb>>> = RefCell::new(HashMap::new());
}

/// Bilinear extension of the disjoint union.
pub fn product(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    for (fa, ca) in a {
        for (fb, cb) in b {
            out.add_term(fa.union(fb), ca * cb);
        }
    }
    out
}

/// Product of a combination with a single forest.
pub fn product_forest(a: &LinComb, f: &Forest) -> LinComb {
    a.iter().map(|(g, c)| (g.union(f), c.clone())).collect()
}

/// The grafting operator `B`: each forest is grafted on a new root.
pub fn graft_b(x: &LinComb) -> LinComb {
    x.iter()
        .map(|(f, c)| (Forest::from(f.graft_root()), c.clone()))
        .collect()
}

pub fn counit(x: &LinComb) -> BigInt {
    x.coeff(&Forest::unit())
}

pub fn coproduct(x: &LinComb) -> Tensor {
    let mut out = Tensor::zero();
    for (f, c) in x {
        out.add_scaled(&coproduct_forest(f), c);
    }
    out
}

pub fn coproduct_forest(f: &Forest) -> Tensor {
    let mut acc = Tensor::pure(Forest::unit(), Forest::unit(), 1);
    for t in f.trees() {
        acc = acc.mul(&coproduct_tree(t));
    }
    acc
}

pub fn coproduct_tree(t: &Tree) -> Rc<Tensor> {
    if let Some(hit) = TREE_COPRODUCT.with(|m| m.borrow().get(t).cloned()) {
        return hit;
    }
    let lower = coproduct_forest(&t.branches());
    let mut out = lower.map_left(|l| LinComb::from(l.graft_root()));
    out.add_term(Forest::unit(), Forest::from(t.clone()), BigInt::one());
    let out = Rc::new(out);
    TREE_COPRODUCT.with(|m| m.borrow_mut().insert(t.clone(), out.clone()));
    out
}

/// `Δ̃(F) = Δ(F) - F⊗1 - 1⊗F` for a nonempty forest.
fn reduced_coproduct_forest(f: &Forest) -> Tensor {
    let full = coproduct_forest(f);
    let mut out = Tensor::zero();
    for ((l, r), c) in &full {
        if !l.is_unit() && !r.is_unit() {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
    }
    out
}

/// The reduced coproduct, defined on the augmentation ideal.
pub fn reduced_coproduct(x: &LinComb) -> Result<Tensor> {
    let eps = counit(x);
    if !eps.is_zero() {
        return Err(Error::NotAugmented(eps.to_string()));
    }
    let mut out = Tensor::zero();
    for (f, c) in x {
        out.add_scaled(&reduced_coproduct_forest(f), c);
    }
    Ok(out)
}

/// Element of a tensor power, as a combination of forest tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiTensor {
    terms: BTreeMap<Vec<Forest>, BigInt>,
}

impl MultiTensor {
    pub fn from_lincomb(x: &LinComb) -> MultiTensor {
        MultiTensor {
            terms: x.iter().map(|(f, c)| (vec![f.clone()], c.clone())).collect(),
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Forest>, &BigInt)> {
        self.terms.iter()
    }

    /// Applies `Δ̃ ⊗ Id ⊗ ... ⊗ Id`.
    pub fn split_first(&self) -> MultiTensor {
        let mut terms: BTreeMap<Vec<Forest>, BigInt> = BTreeMap::new();
        for (slots, c) in &self.terms {
            let (head, rest) = slots.split_first().expect("tensor slots are nonempty");
            for ((l, r), d) in &reduced_coproduct_forest(head) {
                let mut key = Vec::with_capacity(slots.len() + 1);
                key.push(l.clone());
                key.push(r.clone());
                key.extend_from_slice(rest);
                let e = terms.entry(key).or_default();
                *e += c * d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiTensor { terms }
    }

    /// `m_k`: multiplies all slots together.
    pub fn multiply_out(&self) -> LinComb {
        self.terms
            .iter()
            .map(|(slots, c)| {
                let f = slots
                    .iter()
                    .fold(Forest::unit(), |acc, s| acc.union(s));
                (f, c.clone())
            })
            .collect()
    }
}

/// `Δ̃^{(n)}(x)`, an element of the `(n+1)`-fold tensor power.
pub fn iterated_reduced_coproduct(x: &LinComb, n: usize) -> Result<MultiTensor> {
    let eps = counit(x);
    if !eps.is_zero() {
        return Err(Error::NotAugmented(eps.to_string()));
    }
    let mut cur = MultiTensor::from_lincomb(x);
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = cur.split_first();
    }
    Ok(cur)
}

/// Antipode by `S(a) = -a - S(a')a''` over `Δ̃(a) = a'⊗a''`, memoised per forest.
pub fn antipode_recursive(x: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    for (f, c) in x {
        out.add_scaled(&antipode_forest(f), c);
    }
    out
}

pub fn antipode(x: &LinComb) -> LinComb {
    antipode_recursive(x)
}

pub fn antipode_forest(f: &Forest) -> Rc<LinComb> {
    if let Some(hit) = FOREST_ANTIPODE.with(|m| m.borrow().get(f).cloned()) {
        return hit;
    }
    let result = if f.is_unit() {
        LinComb::one()
    } else {
        let mut s = LinComb::term(f.clone(), -1);
        for ((l, r), c) in &reduced_coproduct_forest(f) {
            let sl = antipode_forest(l);
            s.add_scaled(&product_forest(&sl, r), &-c);
        }
        s
    };
    let result = Rc::new(result);
    FOREST_ANTIPODE.with(|m| m.borrow_mut().insert(f.clone(), result.clone()));
    result
}

/// Antipode by the alternating sum `ε(x)1 + Σ_{k≥1} (-1)^k m_k Δ̃^{(k-1)}(x - ε(x)1)`.
pub fn antipode_takeuchi(x: &LinComb) -> LinComb {
    let eps = counit(x);
    let mut out = LinComb::term(Forest::unit(), eps.clone());
    let mut cur = MultiTensor::from_lincomb(&x.sub(&LinComb::term(Forest::unit(), eps)));
    let mut sign = -BigInt::one();
    while !cur.is_zero() {
        out.add_scaled(&cur.multiply_out(), &sign);
        cur = cur.split_first();
        sign = -sign;
    }
    out
}

/// `m(S⊗Id)Δ(x) - ε(x)1`, zero exactly when the antipode axiom holds on `x`.
pub fn antipode_axiom_defect(x: &LinComb) -> LinComb {
    let lhs = coproduct(x).contract(|l| (*antipode_forest(l)).clone(), |r| LinComb::from(r.clone()));
    lhs.sub(&LinComb::term(Forest::unit(), counit(x)))
}

/// Drops the per-thread caches.
pub fn clear_caches() {
    TREE_COPRODUCT.with(|m| m.borrow_mut().clear());
    FOREST_ANTIPODE.with(|m| m.borrow_mut().clear());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse;

    fn x(s: &str) -> LinComb {
        LinComb::from(parse(s).unwrap())
    }

    fn f(s: &str) -> Forest {
        parse(s).unwrap()
    }

    fn tensor(terms: &[(i64, &str, &str)]) -> Tensor {
        let mut t = Tensor::zero();
        for &(c, l, r) in terms {
            t.add_term(f(l), f(r), BigInt::from(c));
        }
        t
    }

    #[test]
    fn product_is_disjoint_union() {
        assert_eq!(product(&x("[[]]"), &x("[] [[][]]")), x("[[]] [] [[][]]"));
        assert_eq!(product(&x("[] []"), &x("[[][][]]")), x("[] [] [[][][]]"));
        assert_eq!(product(&LinComb::one(), &x("[[]]")), x("[[]]"));
    }

    #[test]
    fn coproduct_of_paper_trees() {
        assert_eq!(coproduct(&x("[]")), tensor(&[(1, "[]", "1"), (1, "1", "[]")]));
        // root with a leaf child and a chain-2 child
        let t = x("[[][[]]]");
        let expected = tensor(&[
            (1, "[[][[]]]", "1"),
            (1, "[[][]]", "[]"),
            (1, "[[[]]]", "[]"),
            (1, "[[]]", "[[]]"),
            (1, "[[]]", "[] []"),
            (1, "[]", "[[]] []"),
            (1, "1", "[[][[]]]"),
        ]);
        assert_eq!(coproduct(&t), expected);
        let corolla = x("[[][][]]");
        let expected = tensor(&[
            (1, "[[][][]]", "1"),
            (3, "[[][]]", "[]"),
            (3, "[[]]", "[] []"),
            (1, "[]", "[] [] []"),
            (1, "1", "[[][][]]"),
        ]);
        assert_eq!(coproduct(&corolla), expected);
        assert_eq!(coproduct(&LinComb::one()).to_string(), "1⊗1");
    }

    #[test]
    fn counit_values() {
        assert_eq!(counit(&LinComb::one()), BigInt::one());
        assert!(counit(&x("[[]]")).is_zero());
    }

    #[test]
    fn reduced_coproduct_examples() {
        assert!(reduced_coproduct(&x("[]")).unwrap().is_zero());
        assert_eq!(reduced_coproduct(&x("[[]]")).unwrap(), tensor(&[(1, "[]", "[]")]));
        assert!(matches!(
            reduced_coproduct(&LinComb::one()),
            Err(Error::NotAugmented(_))
        ));
    }

    #[test]
    fn antipode_small_cases() {
        assert_eq!(antipode(&x("[]")), x("[]").neg());
        assert_eq!(antipode(&x("[[]]")), x("[[]]").neg().add(&x("[] []")));
        assert_eq!(antipode(&LinComb::one()), LinComb::one());
        assert_eq!(antipode_takeuchi(&x("[] []")), x("[] []"));
        assert_eq!(antipode_takeuchi(&LinComb::one()), LinComb::one());
    }

    #[test]
    fn takeuchi_handles_mixed_degrees() {
        let y = x("[[]]").add(&LinComb::term(Forest::unit(), 5)).add(&x("[[][]]"));
        assert_eq!(antipode_takeuchi(&y), antipode_recursive(&y));
    }

    #[test]
    fn graft_b_examples() {
        assert_eq!(graft_b(&LinComb::one()), x("[]"));
        assert_eq!(graft_b(&x("[[]] []")), x("[[][[]]]"));
        assert_eq!(graft_b(&x("[[][]]")), x("[[[][]]]"));
    }

    #[test]
    fn iterated_reduced_coproduct_dies_at_the_degree() {
        let t = x("[[][[]]]");
        assert!(!iterated_reduced_coproduct(&t, 3).unwrap().is_zero());
        assert!(iterated_reduced_coproduct(&t, 4).unwrap().is_zero());
    }
}
