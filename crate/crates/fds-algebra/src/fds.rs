//! Finite dynamical systems: self-maps of a finite state set, considered up
//! to isomorphism of their functional graphs.
//!
//! Equality up to isomorphism is decided through [`FdsCode`]: two systems are
//! isomorphic exactly when their canonical codes are equal, so every test in
//! the crate compares codes rather than searching for isomorphisms.

use crate::forest::{decode_code, format_code, Code, Tree};
use std::fmt;

/// A finite dynamical system: `succ[s]` is the image of state `s`.
///
/// The empty system (zero states) is the additive identity of the semiring;
/// the single fixpoint is the multiplicative identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fds {
    succ: Vec<u32>,
}

/// Per-state depth and cycle information plus the cycle length multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateClassification {
    pub depth: Vec<u32>,
    pub on_cycle: Vec<bool>,
    /// One entry per cycle, sorted ascending.
    pub cycle_lengths: Vec<u64>,
}

/// Canonical code of one connected component: the cycle length and the
/// anchored-tree codes in cyclic successor order, minimal rotation first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ComponentCode {
    pub cycle_len: u64,
    pub tree_codes: Vec<Code>,
}

/// Canonical code of a system: sorted component codes. Equal codes are
/// equivalent to isomorphic functional graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FdsCode {
    pub components: Vec<ComponentCode>,
}

impl FdsCode {
    pub fn size(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.tree_codes.iter().map(|t| t.len() as u64).sum::<u64>())
            .sum()
    }
}

/// Structural analysis shared by most operations.
pub(crate) struct Analysis {
    pub depth: Vec<u32>,
    pub on_cycle: Vec<bool>,
    /// Predecessor lists (a self-loop lists itself).
    pub preds: Vec<Vec<u32>>,
    /// Cycles in successor order.
    pub cycles: Vec<Vec<u32>>,
    /// Index into `cycles` per state.
    pub comp_of: Vec<u32>,
}

impl Fds {
    pub fn empty() -> Fds {
        Fds { succ: Vec::new() }
    }

    /// The multiplicative identity: one fixpoint.
    pub fn identity() -> Fds {
        Fds { succ: vec![0] }
    }

    /// The cycle of length `len`.
    pub fn cycle(len: u32) -> Fds {
        assert!(len >= 1);
        Fds {
            succ: (0..len).map(|i| (i + 1) % len).collect(),
        }
    }

    /// Builds from a successor table, checking the range.
    pub fn from_succ(succ: Vec<u32>) -> Result<Fds, ParseError> {
        let n = succ.len() as u32;
        for (s, &t) in succ.iter().enumerate() {
            if t >= n {
                return Err(ParseError::SuccessorOutOfRange { state: s, value: t });
            }
        }
        Ok(Fds { succ })
    }

    pub fn size(&self) -> u64 {
        self.succ.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successor(&self, s: u32) -> u32 {
        self.succ[s as usize]
    }

    pub fn successors(&self) -> &[u32] {
        &self.succ
    }

    pub fn has_fixpoint(&self) -> bool {
        self.succ.iter().enumerate().any(|(s, &t)| s as u32 == t)
    }

    pub(crate) fn analyze(&self) -> Analysis {
        let n = self.succ.len();
        let mut on_cycle = vec![false; n];
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        // 0 = unseen, 1 = on current walk, 2 = settled
        let mut color = vec![0u8; n];
        let mut path: Vec<u32> = Vec::new();
        for start in 0..n as u32 {
            if color[start as usize] != 0 {
                continue;
            }
            path.clear();
            let mut s = start;
            while color[s as usize] == 0 {
                color[s as usize] = 1;
                path.push(s);
                s = self.succ[s as usize];
            }
            if color[s as usize] == 1 {
                // Closed a new cycle within the current walk.
                let pos = path.iter().position(|&u| u == s).expect("on walk");
                let cyc: Vec<u32> = path[pos..].to_vec();
                for &u in &cyc {
                    on_cycle[u as usize] = true;
                }
                cycles.push(cyc);
            }
            for &u in &path {
                color[u as usize] = 2;
            }
        }
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (s, &t) in self.succ.iter().enumerate() {
            preds[t as usize].push(s as u32);
        }
        let mut depth = vec![0u32; n];
        let mut comp_of = vec![0u32; n];
        let mut queue = std::collections::VecDeque::new();
        for (ci, cyc) in cycles.iter().enumerate() {
            for &s in cyc {
                comp_of[s as usize] = ci as u32;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &p in &preds[u as usize] {
                if !on_cycle[p as usize] {
                    depth[p as usize] = depth[u as usize] + 1;
                    comp_of[p as usize] = comp_of[u as usize];
                    queue.push_back(p);
                }
            }
        }
        Analysis {
            depth,
            on_cycle,
            preds,
            cycles,
            comp_of,
        }
    }

    /// Depth, cycle flags and the cycle length multiset.
    pub fn classify(&self) -> StateClassification {
        let a = self.analyze();
        let mut cycle_lengths: Vec<u64> = a.cycles.iter().map(|c| c.len() as u64).collect();
        cycle_lengths.sort_unstable();
        StateClassification {
            depth: a.depth,
            on_cycle: a.on_cycle,
            cycle_lengths,
        }
    }

    /// Maximum state depth; 0 for permutations, -1 for the empty system.
    pub fn depth(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        self.analyze().depth.iter().copied().max().unwrap_or(0) as i64
    }

    /// Disjoint union.
    pub fn sum(&self, other: &Fds) -> Fds {
        let offset = self.succ.len() as u32;
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|&t| t + offset));
        Fds { succ }
    }

    /// Direct product on the Cartesian state set, relabelled canonically.
    pub fn product(&self, other: &Fds) -> Fds {
        self.product_isomorphism(other).0.canonical_form()
    }

    /// Direct product keeping the pair labelling of its states:
    /// state `i * |other| + j` of the product is the pair `(i, j)`.
    pub fn product_isomorphism(&self, other: &Fds) -> (Fds, Vec<(u32, u32)>) {
        let (n, m) = (self.succ.len() as u64, other.succ.len() as u64);
        assert!(n * m <= u32::MAX as u64, "product too large");
        let mut succ = Vec::with_capacity((n * m) as usize);
        let mut pairs = Vec::with_capacity((n * m) as usize);
        for i in 0..n as u32 {
            for j in 0..m as u32 {
                succ.push(self.succ[i as usize] * m as u32 + other.succ[j as usize]);
                pairs.push((i, j));
            }
        }
        (Fds { succ }, pairs)
    }

    /// k-th power under the product; the zeroth power is the identity.
    pub fn pow(&self, k: u32) -> Fds {
        let mut acc = Fds::identity();
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Sub-system of the states at depth at most `k`.
    pub fn truncate(&self, k: u32) -> Fds {
        let a = self.analyze();
        self.restrict(|s| a.depth[s as usize] <= k)
    }

    /// Sum of the components whose cycle length satisfies `keep`.
    pub fn supp(&self, keep: impl Fn(u64) -> bool) -> Fds {
        let a = self.analyze();
        self.restrict(|s| keep(a.cycles[a.comp_of[s as usize] as usize].len() as u64))
    }

    /// Components with cycle length in `lengths`.
    pub fn supp_in(&self, lengths: &[u64]) -> Fds {
        self.supp(|l| lengths.contains(&l))
    }

    /// Components with cycle length at most `limit`.
    pub fn supp_le(&self, limit: u64) -> Fds {
        self.supp(|l| l <= limit)
    }

    fn restrict(&self, keep: impl Fn(u32) -> bool) -> Fds {
        let n = self.succ.len() as u32;
        let mut relabel = vec![u32::MAX; n as usize];
        let mut next = 0u32;
        for s in 0..n {
            if keep(s) {
                relabel[s as usize] = next;
                next += 1;
            }
        }
        let mut succ = Vec::with_capacity(next as usize);
        for s in 0..n {
            if relabel[s as usize] != u32::MAX {
                let t = self.succ[s as usize];
                debug_assert_ne!(relabel[t as usize], u32::MAX, "successor not kept");
                succ.push(relabel[t as usize]);
            }
        }
        Fds { succ }
    }

    /// Connected components, each relabelled densely.
    pub fn components(&self) -> Vec<Fds> {
        let a = self.analyze();
        (0..a.cycles.len())
            .map(|ci| self.restrict(|s| a.comp_of[s as usize] == ci as u32))
            .collect()
    }

    /// The tree of tree-state predecessors anchored on every state.
    pub(crate) fn anchored_trees(&self, a: &Analysis) -> Vec<Tree> {
        let n = self.succ.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&s| std::cmp::Reverse(a.depth[s as usize]));
        let mut trees: Vec<Option<Tree>> = vec![None; n];
        for s in order {
            let kids: Vec<Tree> = a.preds[s as usize]
                .iter()
                .filter(|&&p| !a.on_cycle[p as usize])
                .map(|&p| trees[p as usize].clone().expect("deeper state built first"))
                .collect();
            trees[s as usize] = Some(Tree::new(kids));
        }
        trees.into_iter().map(|t| t.expect("built")).collect()
    }

    /// Canonical code; equal codes are equivalent to isomorphic systems.
    pub fn canonical_code(&self) -> FdsCode {
        let a = self.analyze();
        let trees = self.anchored_trees(&a);
        let mut components: Vec<ComponentCode> = a
            .cycles
            .iter()
            .map(|cyc| {
                let codes: Vec<Code> = cyc.iter().map(|&s| trees[s as usize].code()).collect();
                let start = minimal_rotation_start(&codes);
                let rotated: Vec<Code> = (0..codes.len())
                    .map(|k| codes[(start + k) % codes.len()].clone())
                    .collect();
                ComponentCode {
                    cycle_len: cyc.len() as u64,
                    tree_codes: rotated,
                }
            })
            .collect();
        components.sort();
        FdsCode { components }
    }

    /// Canonically relabelled copy: `canonical_form` is a fixpoint of itself
    /// and depends only on the isomorphism class.
    pub fn canonical_form(&self) -> Fds {
        self.canonical_code().reconstruct()
    }

    /// Anchored tree of a dendron (root = the fixpoint), including the root.
    pub fn dendron_tree(&self) -> Option<Tree> {
        let a = self.analyze();
        if a.cycles.len() != 1 || a.cycles[0].len() != 1 {
            return None;
        }
        let root = a.cycles[0][0];
        let trees = self.anchored_trees(&a);
        Some(trees[root as usize].clone())
    }

    /// True when connected with a fixpoint.
    pub fn is_dendron(&self) -> bool {
        let a = self.analyze();
        a.cycles.len() == 1 && a.cycles[0].len() == 1
    }

    pub fn is_connected(&self) -> bool {
        self.analyze().cycles.len() == 1
    }

    /// DOT export, one edge per state.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fds {\n");
        for (u, &v) in self.succ.iter().enumerate() {
            s.push_str(&format!("  {u} -> {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl FdsCode {
    /// Deterministic rebuild of the canonical representative.
    pub fn reconstruct(&self) -> Fds {
        let mut out = Fds::empty();
        for comp in &self.components {
            let trees: Vec<Tree> = comp
                .tree_codes
                .iter()
                .map(|c| decode_code(c).expect("component codes are canonical"))
                .collect();
            out = out.sum(&anchor_trees(comp.cycle_len as u32, &trees));
        }
        out
    }
}

/// Builds the connected system with the given cycle length and anchored
/// trees in cyclic successor order. Each tree's root is the cycle state it
/// is anchored on, so `anchor_trees(k, [leaf; k])` is the bare cycle.
pub fn anchor_trees(cycle_len: u32, trees: &[Tree]) -> Fds {
    assert_eq!(trees.len(), cycle_len as usize, "one tree per cycle state");
    let total: u64 = trees.iter().map(|t| t.vertex_count()).sum();
    assert!(total <= u32::MAX as u64);
    let mut succ = vec![0u32; total as usize];
    for i in 0..cycle_len {
        succ[i as usize] = (i + 1) % cycle_len;
    }
    let mut next = cycle_len;
    for (i, tree) in trees.iter().enumerate() {
        attach(tree, i as u32, &mut succ, &mut next);
    }
    Fds { succ }
}

fn attach(tree: &Tree, root_state: u32, succ: &mut [u32], next: &mut u32) {
    for (child, mult) in tree.child_runs() {
        for _ in 0..*mult {
            let s = *next;
            *next += 1;
            succ[s as usize] = root_state;
            attach(child, s, succ, next);
        }
    }
}

/// The dendron realising a tree (loop on the tree's root).
pub fn dendron_from_tree(tree: &Tree) -> Fds {
    anchor_trees(1, std::slice::from_ref(tree))
}

/// Isomorphism test through canonical codes.
pub fn iso_eq(a: &Fds, b: &Fds) -> bool {
    a.size() == b.size() && a.canonical_code() == b.canonical_code()
}

/// Start index of the lexicographically minimal rotation.
pub(crate) fn minimal_rotation_start<T: Ord>(xs: &[T]) -> usize {
    let n = xs.len();
    if n <= 1 || xs.iter().all(|x| x == &xs[0]) {
        return 0;
    }
    let mut best = 0;
    for cand in 1..n {
        for k in 0..n {
            match xs[(cand + k) % n].cmp(&xs[(best + k) % n]) {
                std::cmp::Ordering::Less => {
                    best = cand;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => continue,
            }
        }
    }
    best
}

/// Errors from the `.fds` text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    MissingStateCount,
    MissingSuccessorLine,
    BadInteger(String),
    WrongSuccessorCount { expected: usize, got: usize },
    SuccessorOutOfRange { state: usize, value: u32 },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingStateCount => write!(f, "missing state count line"),
            ParseError::MissingSuccessorLine => write!(f, "missing successor line"),
            ParseError::BadInteger(s) => write!(f, "bad integer: {s}"),
            ParseError::WrongSuccessorCount { expected, got } => {
                write!(f, "expected {expected} successors, got {got}")
            }
            ParseError::SuccessorOutOfRange { state, value } => {
                write!(f, "successor {value} of state {state} out of range")
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses the `.fds` format: state count line, successor line, `#` comments.
pub fn parse_fds(text: &str) -> Result<Fds, ParseError> {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or(ParseError::MissingStateCount)?
        .trim()
        .parse()
        .map_err(|_| ParseError::MissingStateCount)?;
    let line = if n == 0 {
        lines.next().unwrap_or("")
    } else {
        lines.next().ok_or(ParseError::MissingSuccessorLine)?
    };
    let succ: Vec<u32> = line
        .split_whitespace()
        .map(|w| {
            w.parse::<u32>()
                .map_err(|_| ParseError::BadInteger(w.into()))
        })
        .collect::<Result<_, _>>()?;
    if succ.len() != n {
        return Err(ParseError::WrongSuccessorCount {
            expected: n,
            got: succ.len(),
        });
    }
    Fds::from_succ(succ)
}

/// Writes the `.fds` format with a trailing newline.
pub fn format_fds(fds: &Fds) -> String {
    let succ = fds
        .successors()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{}\n{}\n", fds.size(), succ)
}

impl fmt::Display for FdsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "C{}(", c.cycle_len)?;
            for (j, t) in c.tree_codes.iter().enumerate() {
                if j > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{}", format_code(t))?;
            }
            write!(f, ")")?;
        }
        if self.components.is_empty() {
            write!(f, "0")?;
        }
        Ok(())
    }
}
