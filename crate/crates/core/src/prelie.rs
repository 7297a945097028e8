//! The grafting preLie product and the growth operator.
//!
//! `F •_v G` attaches every root of `G` to the vertex `v` of `F`, and
//! `F • G` sums this over all vertices of `F`.

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree, VertexId};
use crate::lincomb::LinComb;

/// `F •_v G`.
pub fn graft_at(f: &Forest, v: &VertexId, g: &Forest) -> Result<Forest> {
    if !v.is_valid_for(f) {
        return Err(Error::InvalidVertex(format!("{v} in {f}")));
    }
    let mut trees = f.trees().to_vec();
    trees[v.tree] = graft_at_path(&trees[v.tree], &v.path, g.trees());
    Ok(Forest::new(trees))
}

fn graft_at_path(t: &Tree, path: &[usize], g: &[Tree]) -> Tree {
    let mut children = t.children().to_vec();
    match path.split_first() {
        None => children.extend_from_slice(g),
        Some((&i, rest)) => children[i] = graft_at_path(&children[i], rest, g),
    }
    Tree::with_children(children)
}

/// Every `t •_v G`, one per vertex of `t`, in preorder.
fn graft_everywhere(t: &Tree, g: &[Tree]) -> Vec<Tree> {
    let mut out = Vec::with_capacity(t.vertex_count());
    let mut at_root = t.children().to_vec();
    at_root.extend_from_slice(g);
    out.push(Tree::with_children(at_root));
    for (i, child) in t.children().iter().enumerate() {
        for grafted in graft_everywhere(child, g) {
            let mut children = t.children().to_vec();
            children[i] = grafted;
            out.push(Tree::with_children(children));
        }
    }
    out
}

/// The summands of `F • G` before collection, one per vertex of `F`.
pub fn prelie_summands(f: &Forest, g: &Forest) -> Vec<Forest> {
    let trees = f.trees();
    let mut out = Vec::with_capacity(f.vertex_count());
    for (i, t) in trees.iter().enumerate() {
        for grafted in graft_everywhere(t, g.trees()) {
            let mut ts = Vec::with_capacity(trees.len());
            ts.extend_from_slice(&trees[..i]);
            ts.push(grafted);
            ts.extend_from_slice(&trees[i + 1..]);
            out.push(Forest::new(ts));
        }
    }
    out
}

pub fn prelie_forest(f: &Forest, g: &Forest) -> LinComb {
    let mut out = LinComb::zero();
    for s in prelie_summands(f, g) {
        out.add_term(s, 1.into());
    }
    out
}

/// Bilinear extension of the grafting product.
pub fn prelie(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    for (fa, ca) in a {
        for (fb, cb) in b {
            out.add_scaled(&prelie_forest(fa, fb), &(ca * cb));
        }
    }
    out
}

/// `N(x) = x • [ ]`: adds one leaf in every possible way.
pub fn growth_n(x: &LinComb) -> LinComb {
    prelie(x, &LinComb::from(Tree::leaf()))
}
