//! Rooted trees and forests in canonical form.
//!
//! Trees are unordered, so every [`Tree`] keeps its children sorted
//! (largest first) under the canonical order. Two trees are equal iff their
//! canonical forms are equal, which makes them usable as map keys.
//!
//! The canonical order compares, in turn, the vertex count, the number of
//! children of the root, and the child lists lexicographically. Forests are
//! compared by vertex count, then lexicographically on their sorted tree
//! lists.
//!
//! Text form: `tree := "[" tree* "]"`, a forest is trees separated by
//! spaces, and the empty forest (the unit) is `1`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    size: usize,
    children: Vec<Tree>,
}

/// A canonical unordered rooted tree.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

impl Tree {
    /// The one-vertex tree.
    pub fn leaf() -> Tree {
        Tree::with_children(Vec::new())
    }

    /// Builds the tree whose root has the given subtrees as children.
    pub fn with_children(mut children: Vec<Tree>) -> Tree {
        children.sort_unstable_by(|a, b| b.cmp(a));
        let size = 1 + children.iter().map(Tree::vertex_count).sum::<usize>();
        Tree(Arc::new(Node { size, children }))
    }

    pub fn vertex_count(&self) -> usize {
        self.0.size
    }

    /// Children of the root, largest first.
    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    /// The forest obtained by deleting the root.
    pub fn branches(&self) -> Forest {
        Forest::from_sorted(self.0.children.clone())
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Vertex paths in preorder; the root is the empty path.
    pub fn vertex_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut path = Vec::new();
        collect_paths(self, &mut path, &mut out);
        out
    }

    /// Drawing of the tree as an ordered tree, in canonical child order.
    pub fn to_raw(&self) -> RawTree {
        RawTree {
            children: self.children().iter().map(Tree::to_raw).collect(),
        }
    }
}

fn collect_paths(t: &Tree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(path.clone());
    for (i, c) in t.children().iter().enumerate() {
        path.push(i);
        collect_paths(c, path, out);
        path.pop();
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .size
            .cmp(&other.0.size)
            .then_with(|| self.0.children.len().cmp(&other.0.children.len()))
            .then_with(|| self.0.children.cmp(&other.0.children))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for c in self.children() {
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

/// An ordered (planar) drawing of a rooted tree, before canonicalisation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawTree {
    pub children: Vec<RawTree>,
}

impl RawTree {
    pub fn leaf() -> RawTree {
        RawTree::default()
    }

    pub fn node(children: Vec<RawTree>) -> RawTree {
        RawTree { children }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(RawTree::vertex_count).sum::<usize>()
    }

    pub fn canonicalize(&self) -> Tree {
        canonicalize(self)
    }
}

/// Returns the canonical representative of an ordered drawing.
pub fn canonicalize(raw: &RawTree) -> Tree {
    Tree::with_children(raw.children.iter().map(canonicalize).collect())
}

/// A finite multiset of trees; the empty forest is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn unit() -> Forest {
        Forest { trees: Vec::new() }
    }

    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort_unstable_by(|a, b| b.cmp(a));
        Forest { trees }
    }

    fn from_sorted(trees: Vec<Tree>) -> Forest {
        debug_assert!(trees.windows(2).all(|w| w[0] >= w[1]));
        Forest { trees }
    }

    pub fn from_tree(tree: Tree) -> Forest {
        Forest { trees: vec![tree] }
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    /// Trees of the forest, largest first.
    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(Tree::vertex_count).sum()
    }

    /// Disjoint union (the commutative product on forests).
    pub fn union(&self, other: &Forest) -> Forest {
        let mut out = Vec::with_capacity(self.trees.len() + other.trees.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.trees, &other.trees);
        while i < a.len() && j < b.len() {
            if a[i] >= b[j] {
                out.push(a[i].clone());
                i += 1;
            } else {
                out.push(b[j].clone());
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Forest::from_sorted(out)
    }

    /// Grafts all trees of the forest on a new root.
    pub fn graft_root(&self) -> Tree {
        Tree(Arc::new(Node {
            size: 1 + self.vertex_count(),
            children: self.trees.clone(),
        }))
    }

    /// All vertices of the forest, tree by tree, in preorder.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.trees
            .iter()
            .enumerate()
            .flat_map(|(i, t)| {
                t.vertex_paths()
                    .into_iter()
                    .map(move |path| VertexId { tree: i, path })
            })
            .collect()
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest::from_tree(t)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}

impl FromStr for Forest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Forest> {
        parse(s)
    }
}

/// Address of a vertex: index of its tree in the canonical forest, then the
/// child indices leading down from that tree's root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub tree: usize,
    pub path: Vec<usize>,
}

impl VertexId {
    pub fn root(tree: usize) -> VertexId {
        VertexId {
            tree,
            path: Vec::new(),
        }
    }

    pub fn new(tree: usize, path: Vec<usize>) -> VertexId {
        VertexId { tree, path }
    }

    pub fn is_valid_for(&self, forest: &Forest) -> bool {
        let Some(mut t) = forest.trees().get(self.tree) else {
            return false;
        };
        for &i in &self.path {
            match t.children().get(i) {
                Some(c) => t = c,
                None => return false,
            }
        }
        true
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)?;
        for i in &self.path {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

/// Parses a forest from bracket notation.
pub fn parse(text: &str) -> Result<Forest> {
    parse_raw(text).map(|raws| Forest::new(raws.iter().map(canonicalize).collect()))
}

/// Parses bracket notation without canonicalising, keeping the drawing order.
pub fn parse_raw(text: &str) -> Result<Vec<RawTree>> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    if pos == bytes.len() {
        return Err(Error::parse(pos, "expected a forest, found end of input"));
    }
    if bytes[pos] == b'1' {
        let end = skip_ws(bytes, pos + 1);
        if end != bytes.len() {
            return Err(Error::parse(end, "unexpected input after the unit `1`"));
        }
        return Ok(Vec::new());
    }
    let mut trees = Vec::new();
    while pos < bytes.len() {
        let (t, next) = parse_tree(bytes, pos)?;
        trees.push(t);
        pos = skip_ws(bytes, next);
    }
    Ok(trees)
}

fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

fn parse_tree(bytes: &[u8], start: usize) -> Result<(RawTree, usize)> {
    // Iterative so that deep chains cannot overflow the stack.
    if bytes[start] != b'[' {
        return Err(Error::parse(
            start,
            format!("expected `[`, found `{}`", bytes[start] as char),
        ));
    }
    let mut stack: Vec<(usize, Vec<RawTree>)> = vec![(start, Vec::new())];
    let mut pos = start + 1;
    loop {
        let Some(&c) = bytes.get(pos) else {
            let open = stack.last().map(|s| s.0).unwrap_or(start);
            return Err(Error::parse(
                pos,
                format!("unbalanced `[` opened at {open}"),
            ));
        };
        match c {
            b'[' => stack.push((pos, Vec::new())),
            b']' => {
                let (_, children) = stack.pop().expect("stack holds the open tree");
                let node = RawTree::node(children);
                match stack.last_mut() {
                    Some((_, siblings)) => siblings.push(node),
                    None => return Ok((node, pos + 1)),
                }
            }
            c if c.is_ascii_whitespace() => {}
            c => {
                return Err(Error::parse(
                    pos,
                    format!("unexpected character `{}`", c as char),
                ))
            }
        }
        pos += 1;
    }
}

/// All canonical trees with `n` vertices, in increasing canonical order.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "trees have at least one vertex".into(),
        ));
    }
    let mut trees: Vec<Tree> = enumerate_forests(n - 1)
        .iter()
        .map(Forest::graft_root)
        .collect();
    trees.sort();
    Ok(trees)
}

/// All forests with exactly `n` vertices, in increasing canonical order.
/// `n = 0` yields only the unit.
pub fn enumerate_forests(n: usize) -> Vec<Forest> {
    // trees_by_size[k] = trees with k vertices, built bottom-up.
    let mut trees_by_size: Vec<Vec<Tree>> = vec![Vec::new()];
    let mut forests_by_size: Vec<Vec<Forest>> = vec![vec![Forest::unit()]];
    for k in 1..=n {
        let mut trees: Vec<Tree> = forests_by_size[k - 1]
            .iter()
            .map(Forest::graft_root)
            .collect();
        trees.sort();
        trees_by_size.push(trees);
        let mut forests = Vec::new();
        let mut current = Vec::new();
        multisets(&trees_by_size, k, None, &mut current, &mut forests);
        forests.sort();
        forests_by_size.push(forests);
    }
    forests_by_size.swap_remove(n)
}

/// Non-increasing sequences of trees with total size `remaining`, each tree
/// at most `bound`.
fn multisets(
    trees_by_size: &[Vec<Tree>],
    remaining: usize,
    bound: Option<&Tree>,
    current: &mut Vec<Tree>,
    out: &mut Vec<Forest>,
) {
    if remaining == 0 {
        out.push(Forest::from_sorted(current.clone()));
        return;
    }
    let max_size = bound.map_or(remaining, |b| b.vertex_count().min(remaining));
    for size in (1..=max_size).rev() {
        for t in trees_by_size[size].iter().rev() {
            if bound.is_some_and(|b| t > b) {
                continue;
            }
            current.push(t.clone());
            multisets(trees_by_size, remaining - size, Some(t), current, out);
            current.pop();
        }
    }
}

/// All forests with at most `max` vertices, grouped by increasing size.
pub fn forests_up_to(max: usize) -> Vec<Forest> {
    (0..=max).flat_map(enumerate_forests).collect()
}
