//! Finite rooted in-trees and forests.
//!
//! Trees are kept in canonical form at all times: at every node the child
//! subtrees are stored sorted by their code, so structural equality and the
//! total order on trees are both plain code comparisons. The code of a tree
//! is its level-order sequence of child counts after the recursive sort;
//! it is prefix-free and injective on isomorphism classes.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// A finite rooted in-tree, immutable and cheaply cloneable.
///
/// Children are stored as (subtree, multiplicity) runs sorted by the code
/// order, which collapses the heavy repetition produced by products.
#[derive(Clone)]
pub struct Tree(Arc<TreeNode>);

struct TreeNode {
    children: Box<[(Tree, u64)]>,
    vertex_count: u64,
    depth: u32,
}

/// Canonical code of a tree: child counts in level order of the sorted tree.
pub type Code = Vec<u32>;

/// Why a code failed to decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// The running child debt reached zero before the end of the sequence.
    DebtZeroEarly { at: usize },
    /// The sequence ended while children were still owed.
    DebtNeverZero,
    /// Empty code: there is no code for the empty forest.
    Empty,
    /// Structurally valid but not the canonical (sorted) code of its tree.
    NotCanonical,
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::DebtZeroEarly { at } => {
                write!(f, "code complete at entry {at} but input continues")
            }
            CodeError::DebtNeverZero => write!(f, "code ends while children are still owed"),
            CodeError::Empty => write!(f, "empty code"),
            CodeError::NotCanonical => write!(f, "code is not in canonical sorted order"),
        }
    }
}

impl std::error::Error for CodeError {}

impl Tree {
    /// The single-vertex tree.
    pub fn leaf() -> Tree {
        static LEAF: OnceLock<Tree> = OnceLock::new();
        LEAF.get_or_init(|| {
            Tree(Arc::new(TreeNode {
                children: Box::new([]),
                vertex_count: 1,
                depth: 0,
            }))
        })
        .clone()
    }

    /// Builds a tree from its child subtrees; sorts and coalesces them.
    pub fn new(children: Vec<Tree>) -> Tree {
        Tree::from_runs(children.into_iter().map(|t| (t, 1)).collect())
    }

    /// Builds a tree from (subtree, multiplicity) runs.
    pub fn from_runs(mut runs: Vec<(Tree, u64)>) -> Tree {
        runs.retain(|(_, m)| *m > 0);
        runs.sort_by(|a, b| a.0.cmp(&b.0));
        runs.dedup_by(|next, acc| {
            if acc.0 == next.0 {
                acc.1 += next.1;
                true
            } else {
                false
            }
        });
        if runs.is_empty() {
            return Tree::leaf();
        }
        let mut vertex_count = 1u64;
        let mut depth = 0u32;
        for (t, m) in &runs {
            vertex_count += m * t.vertex_count();
            depth = depth.max(1 + t.depth());
        }
        Tree(Arc::new(TreeNode {
            children: runs.into_boxed_slice(),
            vertex_count,
            depth,
        }))
    }

    /// A path of the given depth (depth 0 is a leaf).
    pub fn path(depth: u32) -> Tree {
        let mut t = Tree::leaf();
        for _ in 0..depth {
            t = Tree::new(vec![t]);
        }
        t
    }

    /// A root with `leaves` leaf children.
    pub fn star(leaves: u64) -> Tree {
        Tree::from_runs(vec![(Tree::leaf(), leaves)])
    }

    pub fn vertex_count(&self) -> u64 {
        self.0.vertex_count
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Child subtrees with multiplicities, sorted by code.
    pub fn child_runs(&self) -> &[(Tree, u64)] {
        &self.0.children
    }

    /// Total number of children of the root.
    pub fn child_count(&self) -> u64 {
        self.0.children.iter().map(|(_, m)| m).sum()
    }

    /// The multiset of subtrees anchored on the children of the root.
    pub fn child_multiset(&self) -> TreeMultiset {
        TreeMultiset {
            runs: self.0.children.to_vec(),
        }
    }

    /// Keeps the vertices at depth at most `k` from the root.
    pub fn truncate(&self, k: u32) -> Tree {
        if self.depth() <= k {
            return self.clone();
        }
        if k == 0 {
            return Tree::leaf();
        }
        Tree::from_runs(
            self.0
                .children
                .iter()
                .map(|(t, m)| (t.truncate(k - 1), *m))
                .collect(),
        )
    }

    /// The canonical code: level-order child counts of the sorted tree.
    pub fn code(&self) -> Code {
        let mut out = Vec::with_capacity(self.vertex_count() as usize);
        for (value, repeat) in CodeRuns::new(self) {
            debug_assert!(value <= u32::MAX as u64);
            for _ in 0..repeat {
                out.push(value as u32);
            }
        }
        out
    }

    fn ptr_eq(&self, other: &Tree) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// Lexicographic order on canonical codes; agrees with tree isomorphism.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        let mut a = CodeRuns::new(self);
        let mut b = CodeRuns::new(other);
        let mut ra = a.next();
        let mut rb = b.next();
        loop {
            match (ra, rb) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((va, ca)), Some((vb, cb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    match ca.cmp(&cb) {
                        Ordering::Equal => {
                            ra = a.next();
                            rb = b.next();
                        }
                        Ordering::Less => {
                            ra = a.next();
                            rb = Some((vb, cb - ca));
                        }
                        Ordering::Greater => {
                            ra = Some((va, ca - cb));
                            rb = b.next();
                        }
                    }
                }
            }
        }
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.depth() == other.depth()
            && self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tree {}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree{:?}", self.code())
    }
}

/// Streams the canonical code as (value, repeat) runs in level order.
///
/// The frontier holds (subtree, consecutive-copies) runs of one level. A run
/// of m copies of the same subtree emits its child count m times; expanding
/// to the next level keeps single-child patterns collapsed, so star-like
/// repetition never materialises.
struct CodeRuns<'a> {
    frontier: VecDeque<(&'a Tree, u64)>,
}

impl<'a> CodeRuns<'a> {
    fn new(t: &'a Tree) -> Self {
        let mut frontier = VecDeque::new();
        frontier.push_back((t, 1));
        CodeRuns { frontier }
    }
}

impl<'a> Iterator for CodeRuns<'a> {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let (tree, copies) = self.frontier.pop_front()?;
        let kids = tree.child_runs();
        if !kids.is_empty() {
            if kids.len() == 1 {
                self.frontier.push_back((&kids[0].0, copies * kids[0].1));
            } else if copies == 1 {
                for (c, m) in kids {
                    self.frontier.push_back((c, *m));
                }
            } else {
                // Distinct children repeat per parent copy; level order
                // interleaves them, so the pattern cannot be collapsed.
                for _ in 0..copies {
                    for (c, m) in kids {
                        self.frontier.push_back((c, *m));
                    }
                }
            }
        }
        Some((tree.child_count(), copies))
    }
}

/// Decodes a canonical code back into its tree.
///
/// Rejects sequences whose child debt closes early or never, and sequences
/// that are valid level-order codes of an unsorted tree.
pub fn decode_code(code: &[u32]) -> Result<Tree, CodeError> {
    if code.is_empty() {
        return Err(CodeError::Empty);
    }
    // Partition into levels: level 0 is the root, each level announces the
    // size of the next.
    let mut levels: Vec<(usize, usize)> = Vec::new();
    let mut start = 0usize;
    let mut len = 1usize;
    loop {
        let end = start + len;
        if end > code.len() {
            return Err(CodeError::DebtNeverZero);
        }
        levels.push((start, end));
        let next: usize = code[start..end].iter().map(|&c| c as usize).sum();
        if next == 0 {
            if end != code.len() {
                return Err(CodeError::DebtZeroEarly { at: end });
            }
            break;
        }
        start = end;
        len = next;
    }
    // Build bottom-up; each vertex of a level owns a contiguous child range
    // in the next level.
    let mut below: Vec<Tree> = Vec::new();
    for &(start, end) in levels.iter().rev() {
        let mut current: Vec<Tree> = Vec::with_capacity(end - start);
        let mut cursor = 0usize;
        for &c in &code[start..end] {
            let c = c as usize;
            current.push(Tree::new(below[cursor..cursor + c].to_vec()));
            cursor += c;
        }
        below = current;
    }
    debug_assert_eq!(below.len(), 1);
    let tree = below.pop().expect("root level has one vertex");
    if tree.code() != code {
        return Err(CodeError::NotCanonical);
    }
    Ok(tree)
}

/// Depth-matched product of two trees: children multisets multiply level by
/// level, so the result's depth is the minimum of the factors' depths.
pub fn tree_product(a: &Tree, b: &Tree) -> Tree {
    let mut memo = std::collections::HashMap::new();
    tree_product_memo(a, b, &mut memo)
}

fn tree_product_memo(
    a: &Tree,
    b: &Tree,
    memo: &mut std::collections::HashMap<(usize, usize), Tree>,
) -> Tree {
    if a.is_leaf() || b.is_leaf() {
        return Tree::leaf();
    }
    let key = (Arc::as_ptr(&a.0) as usize, Arc::as_ptr(&b.0) as usize);
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let mut runs = Vec::with_capacity(a.child_runs().len() * b.child_runs().len());
    for (ca, ma) in a.child_runs() {
        for (cb, mb) in b.child_runs() {
            runs.push((tree_product_memo(ca, cb, memo), ma * mb));
        }
    }
    let t = Tree::from_runs(runs);
    memo.insert(key, t.clone());
    t
}

/// k-th power of a tree under the depth-matched product.
pub fn tree_pow(t: &Tree, k: u32) -> Tree {
    assert!(k >= 1, "zeroth tree power is the infinite path");
    let mut acc = t.clone();
    for _ in 1..k {
        acc = tree_product(&acc, t);
    }
    acc
}

/// A multiset of trees, kept sorted by the code order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TreeMultiset {
    runs: Vec<(Tree, u64)>,
}

/// Forests are multisets of trees; the empty forest is the additive identity.
pub type Forest = TreeMultiset;

impl TreeMultiset {
    pub fn empty() -> Self {
        TreeMultiset::default()
    }

    pub fn singleton(t: Tree) -> Self {
        TreeMultiset { runs: vec![(t, 1)] }
    }

    pub fn from_trees(trees: Vec<Tree>) -> Self {
        Self::from_runs(trees.into_iter().map(|t| (t, 1)).collect())
    }

    pub fn from_runs(mut runs: Vec<(Tree, u64)>) -> Self {
        runs.retain(|(_, m)| *m > 0);
        runs.sort_by(|a, b| a.0.cmp(&b.0));
        runs.dedup_by(|next, acc| {
            if acc.0 == next.0 {
                acc.1 += next.1;
                true
            } else {
                false
            }
        });
        TreeMultiset { runs }
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of trees, with multiplicity.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(_, m)| m).sum()
    }

    /// Total vertex count over all trees.
    pub fn total_vertices(&self) -> u64 {
        self.runs.iter().map(|(t, m)| t.vertex_count() * m).sum()
    }

    pub fn runs(&self) -> &[(Tree, u64)] {
        &self.runs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Tree> + '_ {
        self.runs
            .iter()
            .flat_map(|(t, m)| std::iter::repeat_n(t, *m as usize))
    }

    pub fn contains(&self, t: &Tree) -> bool {
        self.runs.binary_search_by(|(u, _)| u.cmp(t)).is_ok()
    }

    pub fn insert(&mut self, t: Tree, m: u64) {
        if m == 0 {
            return;
        }
        match self.runs.binary_search_by(|(u, _)| u.cmp(&t)) {
            Ok(i) => self.runs[i].1 += m,
            Err(i) => self.runs.insert(i, (t, m)),
        }
    }

    /// Removes one occurrence; false if absent.
    pub fn remove_one(&mut self, t: &Tree) -> bool {
        match self.runs.binary_search_by(|(u, _)| u.cmp(t)) {
            Ok(i) => {
                if self.runs[i].1 == 1 {
                    self.runs.remove(i);
                } else {
                    self.runs[i].1 -= 1;
                }
                true
            }
            Err(_) => false,
        }
    }

    /// Multiset union (forest sum).
    pub fn union(&self, other: &TreeMultiset) -> TreeMultiset {
        let mut runs = Vec::with_capacity(self.runs.len() + other.runs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() && j < other.runs.len() {
            match self.runs[i].0.cmp(&other.runs[j].0) {
                Ordering::Less => {
                    runs.push(self.runs[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    runs.push(other.runs[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    runs.push((self.runs[i].0.clone(), self.runs[i].1 + other.runs[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        runs.extend_from_slice(&self.runs[i..]);
        runs.extend_from_slice(&other.runs[j..]);
        TreeMultiset { runs }
    }

    /// Multiset difference; None unless `other` is contained in `self`.
    pub fn checked_sub(&self, other: &TreeMultiset) -> Option<TreeMultiset> {
        let mut runs = Vec::with_capacity(self.runs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() {
            if j < other.runs.len() {
                match self.runs[i].0.cmp(&other.runs[j].0) {
                    Ordering::Less => {
                        runs.push(self.runs[i].clone());
                        i += 1;
                    }
                    Ordering::Greater => return None,
                    Ordering::Equal => {
                        let (have, want) = (self.runs[i].1, other.runs[j].1);
                        if have < want {
                            return None;
                        }
                        if have > want {
                            runs.push((self.runs[i].0.clone(), have - want));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            } else {
                runs.push(self.runs[i].clone());
                i += 1;
            }
        }
        if j < other.runs.len() {
            return None;
        }
        Some(TreeMultiset { runs })
    }

    /// Pairwise product of all trees (forest product).
    pub fn product(&self, other: &TreeMultiset) -> TreeMultiset {
        let mut memo = std::collections::HashMap::new();
        let mut runs = Vec::with_capacity(self.runs.len() * other.runs.len());
        for (a, ma) in &self.runs {
            for (b, mb) in &other.runs {
                runs.push((tree_product_memo(a, b, &mut memo), ma * mb));
            }
        }
        TreeMultiset::from_runs(runs)
    }

    /// Product of every tree with one fixed tree.
    pub fn scale(&self, t: &Tree) -> TreeMultiset {
        let mut memo = std::collections::HashMap::new();
        TreeMultiset::from_runs(
            self.runs
                .iter()
                .map(|(u, m)| (tree_product_memo(t, u, &mut memo), *m))
                .collect(),
        )
    }

    /// Truncates every tree at depth `k`.
    pub fn truncate(&self, k: u32) -> TreeMultiset {
        TreeMultiset::from_runs(self.runs.iter().map(|(t, m)| (t.truncate(k), *m)).collect())
    }

    /// Depth of the forest; -1 for the empty forest.
    pub fn depth(&self) -> i64 {
        self.runs
            .iter()
            .map(|(t, _)| t.depth() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Smallest tree of depth at least `d`, if any.
    pub fn min_with_depth_at_least(&self, d: u32) -> Option<&Tree> {
        self.runs.iter().map(|(t, _)| t).find(|t| t.depth() >= d)
    }

    pub fn codes(&self) -> Vec<Code> {
        self.iter().map(|t| t.code()).collect()
    }
}

impl fmt::Debug for TreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.runs.iter().map(|(t, m)| (t.code(), m)))
            .finish()
    }
}

/// Joins all trees of a forest under a fresh common root.
pub fn root_join(f: &Forest) -> Tree {
    Tree::from_runs(f.runs().to_vec())
}

/// Parses a one-line comma-separated code.
pub fn parse_code(line: &str) -> Result<Code, String> {
    line.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect()
}

/// Formats a code as a comma-separated line.
pub fn format_code(code: &[u32]) -> String {
    code.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_tree_code() {
        // Root with children B and C, C with children D and E.
        let c = Tree::new(vec![Tree::leaf(), Tree::leaf()]);
        let t = Tree::new(vec![Tree::leaf(), c]);
        assert_eq!(t.code(), vec![2, 0, 2, 0, 0]);
    }

    #[test]
    fn leaf_and_path_codes() {
        assert_eq!(Tree::leaf().code(), vec![0]);
        assert_eq!(Tree::path(2).code(), vec![1, 1, 0]);
    }

    #[test]
    fn level_order_interleaves_repeated_parents() {
        // Two copies of a parent with distinct children must interleave the
        // children pattern, not group it.
        let p = Tree::new(vec![Tree::leaf(), Tree::path(1)]);
        let t = Tree::new(vec![p.clone(), p]);
        assert_eq!(t.code(), vec![2, 2, 2, 0, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn decode_round_trip() {
        for t in [
            Tree::leaf(),
            Tree::path(3),
            Tree::star(4),
            Tree::new(vec![
                Tree::leaf(),
                Tree::new(vec![Tree::leaf(), Tree::leaf()]),
            ]),
        ] {
            assert_eq!(decode_code(&t.code()).unwrap(), t);
        }
    }

    #[test]
    fn decode_rejects_malformed() {
        assert_eq!(decode_code(&[1, 2]), Err(CodeError::DebtNeverZero));
        assert_eq!(
            decode_code(&[0, 0]),
            Err(CodeError::DebtZeroEarly { at: 1 })
        );
        assert_eq!(decode_code(&[]), Err(CodeError::Empty));
        // Valid level-order code of an unsorted tree.
        assert_eq!(decode_code(&[2, 1, 0, 0]), Err(CodeError::NotCanonical));
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(Tree::leaf() < Tree::path(1));
        let a = Tree::new(vec![Tree::leaf(), Tree::leaf()]);
        let b = Tree::path(2);
        // (2,0,0) vs (1,1,0)
        assert!(b < a);
    }

    #[test]
    fn product_depth_and_leaf_absorption() {
        let t = Tree::new(vec![Tree::path(2), Tree::leaf()]);
        assert_eq!(tree_product(&Tree::leaf(), &t), Tree::leaf());
        assert_eq!(tree_product(&Tree::path(3), &Tree::path(5)), Tree::path(3));
        let s2 = Tree::star(2);
        let s3 = Tree::star(3);
        assert_eq!(tree_product(&s2, &s3), Tree::star(6));
    }

    #[test]
    fn product_children_multiply_level_by_level() {
        let a = Tree::new(vec![Tree::path(1), Tree::leaf()]);
        let b = Tree::new(vec![Tree::path(1), Tree::path(1)]);
        let p = tree_product(&a, &b);
        let expected = TreeMultiset::from_trees(vec![
            tree_product(&Tree::path(1), &Tree::path(1)),
            tree_product(&Tree::path(1), &Tree::path(1)),
            tree_product(&Tree::leaf(), &Tree::path(1)),
            tree_product(&Tree::leaf(), &Tree::path(1)),
        ]);
        assert_eq!(p.child_multiset(), expected);
        assert_eq!(p.depth(), a.depth().min(b.depth()));
    }

    #[test]
    fn truncate_tree_behaviour() {
        let t = Tree::new(vec![Tree::path(2), Tree::leaf()]);
        assert_eq!(t.truncate(0), Tree::leaf());
        assert_eq!(t.truncate(t.depth()), t);
        assert_eq!(
            t.truncate(1),
            Tree::new(vec![Tree::path(1), Tree::leaf()]).truncate(1)
        );
    }

    #[test]
    fn multiset_union_sub_product() {
        let a = TreeMultiset::from_trees(vec![Tree::leaf(), Tree::path(1)]);
        let b = TreeMultiset::from_trees(vec![Tree::path(1)]);
        let u = a.union(&b);
        assert_eq!(u.len(), 3);
        assert_eq!(u.checked_sub(&b), Some(a.clone()));
        assert_eq!(b.checked_sub(&a), None);
        // {T} x {U, U} = {TU, TU}
        let t = Tree::star(2);
        let prod = TreeMultiset::singleton(t.clone()).product(&b.union(&b));
        assert_eq!(prod.len(), 2);
        assert!(prod.contains(&tree_product(&t, &Tree::path(1))));
        // empty annihilates
        assert!(a.product(&TreeMultiset::empty()).is_empty());
    }

    #[test]
    fn root_join_children() {
        assert_eq!(root_join(&TreeMultiset::empty()), Tree::leaf());
        let f = TreeMultiset::from_trees(vec![Tree::leaf(), Tree::leaf()]);
        assert_eq!(root_join(&f), Tree::star(2));
    }

    #[test]
    fn code_text_round_trip() {
        let t = Tree::new(vec![Tree::leaf(), Tree::path(1)]);
        let line = format_code(&t.code());
        assert_eq!(parse_code(&line).unwrap(), t.code());
    }
}
