//! The space-time expansion of a system into periodic trees.
//!
//! Each cycle state yields one infinite tree: a spine following the cycle's
//! predecessors, with the finite predecessor trees re-anchored along it. A
//! [`PeriodicTree`] stores one period of that spine sequence; everything
//! infinite is compared through truncations at depths derived from periods
//! and anchored-tree depths, which is exact for periodic data.

use crate::cycles::lcm;
use crate::fds::{anchor_trees, Fds};
use crate::forest::{Forest, Tree, TreeMultiset};
use std::cmp::Ordering;

/// An infinite tree with a single infinite spine and eventually-periodic
/// (in fact immediately periodic) anchored trees.
///
/// `tseq` is kept in its lexicographically minimal rotation; `phase` points
/// at the tree anchored on the root, so rerolling stays deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTree {
    tseq: Vec<Tree>,
    phase: usize,
}

impl PeriodicTree {
    /// Builds from the anchored trees read outward from the root.
    pub fn from_root_seq(seq: Vec<Tree>) -> PeriodicTree {
        assert!(!seq.is_empty());
        let codes: Vec<_> = seq.iter().map(|t| t.code()).collect();
        let start = crate::fds::minimal_rotation_start(&codes);
        let n = seq.len();
        let tseq: Vec<Tree> = (0..n).map(|i| seq[(start + i) % n].clone()).collect();
        PeriodicTree {
            tseq,
            phase: (n - start) % n,
        }
    }

    /// The bare spine: multiplicative identity among periodic trees.
    pub fn spine() -> PeriodicTree {
        PeriodicTree::from_root_seq(vec![Tree::leaf()])
    }

    /// Stored spine period.
    pub fn period(&self) -> usize {
        self.tseq.len()
    }

    /// One period of anchored trees, minimal rotation first.
    pub fn tseq(&self) -> &[Tree] {
        &self.tseq
    }

    /// The tree anchored at spine position `j` (position 0 is the root).
    pub fn tree_at(&self, j: usize) -> &Tree {
        &self.tseq[(self.phase + j) % self.tseq.len()]
    }

    /// Anchored trees from the root over one stored period.
    pub fn root_seq(&self) -> Vec<Tree> {
        (0..self.period())
            .map(|j| self.tree_at(j).clone())
            .collect()
    }

    /// Smallest period dividing the stored one.
    pub fn minimal_period(&self) -> usize {
        let n = self.tseq.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (0..n).all(|i| self.tseq[i] == self.tseq[(i + p) % n]))
            .expect("stored period always qualifies")
    }

    /// Same infinite tree with the minimal stored period.
    pub fn reduce(&self) -> PeriodicTree {
        let p = self.minimal_period();
        if p == self.period() {
            return self.clone();
        }
        PeriodicTree::from_root_seq(self.root_seq().into_iter().take(p).collect())
    }

    pub fn max_anchor_depth(&self) -> u32 {
        self.tseq.iter().map(|t| t.depth()).max().unwrap_or(0)
    }

    /// Truncation at depth `k`: spine of length `k` with the anchored trees
    /// cut to the remaining depth.
    pub fn truncate_to(&self, k: u32) -> Tree {
        let mut node = Tree::leaf();
        for j in (0..k).rev() {
            let anch = self.tree_at(j as usize);
            let mut runs: Vec<(Tree, u64)> = anch
                .child_runs()
                .iter()
                .map(|(t, m)| (t.truncate(k - j - 1), *m))
                .collect();
            runs.push((node, 1));
            node = Tree::from_runs(runs);
        }
        node
    }

    /// Equality as infinite trees (period-insensitive).
    pub fn eq_infinite(&self, other: &PeriodicTree) -> bool {
        let p = self.minimal_period();
        if p != other.minimal_period() {
            return false;
        }
        (0..p).all(|j| self.tree_at(j) == other.tree_at(j))
    }

    /// The extended order on infinite trees: lexicographic over the codes of
    /// the truncations. Periodicity bounds the depth that must be compared.
    pub fn cmp_infinite(&self, other: &PeriodicTree) -> Ordering {
        let bound = self.max_anchor_depth().max(other.max_anchor_depth())
            + lcm(self.period() as u64, other.period() as u64) as u32
            + 1;
        for d in 1..=bound {
            let ord = self.truncate_to(d).cmp(&other.truncate_to(d));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

/// The full unrolling: one periodic tree per cycle state.
#[derive(Clone, Debug)]
pub struct UnrolledFds {
    pub parts: Vec<PeriodicTree>,
}

impl UnrolledFds {
    /// Multiset equality of the parts as infinite trees.
    pub fn multiset_eq(&self, other: &UnrolledFds) -> bool {
        if self.parts.len() != other.parts.len() {
            return false;
        }
        let mut a: Vec<&PeriodicTree> = self.parts.iter().collect();
        let mut b: Vec<&PeriodicTree> = other.parts.iter().collect();
        a.sort_by(|x, y| x.cmp_infinite(y));
        b.sort_by(|x, y| x.cmp_infinite(y));
        a.iter().zip(&b).all(|(x, y)| x.eq_infinite(y))
    }

    /// The smallest part in the extended order.
    pub fn min_part(&self) -> Option<&PeriodicTree> {
        self.parts.iter().min_by(|x, y| x.cmp_infinite(y))
    }

    pub fn truncate_to(&self, k: u32) -> Forest {
        TreeMultiset::from_trees(self.parts.iter().map(|p| p.truncate_to(k)).collect())
    }
}

/// Unrolls a system: for every cycle state, the spine follows the cycle's
/// predecessors and carries the anchored trees in that order. Distributes
/// over sums; the empty system unrolls to no parts.
pub fn unroll(a: &Fds) -> UnrolledFds {
    let analysis = a.analyze();
    let trees = a.anchored_trees(&analysis);
    let mut parts = Vec::new();
    for cyc in &analysis.cycles {
        let l = cyc.len();
        let anchored: Vec<Tree> = cyc.iter().map(|&s| trees[s as usize].clone()).collect();
        for i in 0..l {
            // Position j of the spine holds the tree of the state mapping to
            // cycle state i in exactly j steps.
            let seq: Vec<Tree> = (0..l).map(|j| anchored[(i + l - j) % l].clone()).collect();
            parts.push(PeriodicTree::from_root_seq(seq));
        }
    }
    UnrolledFds { parts }
}

/// The depth-`k` truncation of every part of the unrolling.
pub fn unroll_truncated(a: &Fds, k: u32) -> Forest {
    unroll(a).truncate_to(k)
}

/// Reads the anchored trees off the spine of a truncated periodic tree.
///
/// `total_depth` must exceed `count` by more than the deepest anchored tree,
/// so the spine child is the unique child of full remaining depth. Returns
/// None when the input does not have that shape.
pub fn read_spine(t: &Tree, count: usize, total_depth: u32) -> Option<Vec<Tree>> {
    let mut cur = t.clone();
    let mut out = Vec::with_capacity(count);
    for j in 0..count as u32 {
        let remaining = total_depth.checked_sub(j)?;
        if remaining == 0 {
            return None;
        }
        let spine_depth = remaining - 1;
        let mut spine: Option<Tree> = None;
        for (child, mult) in cur.child_runs() {
            if child.depth() == spine_depth {
                if spine.is_some() || *mult > 1 {
                    return None;
                }
                spine = Some(child.clone());
            }
        }
        let spine = spine?;
        let runs: Vec<(Tree, u64)> = cur
            .child_runs()
            .iter()
            .filter(|(c, _)| *c != spine)
            .cloned()
            .collect();
        out.push(Tree::from_runs(runs));
        cur = spine;
    }
    Some(out)
}

/// Product of two periodic trees, realised on truncations deep enough to
/// read one full period, then verified one level deeper.
pub fn periodic_product(a: &PeriodicTree, b: &PeriodicTree) -> PeriodicTree {
    let l = lcm(a.period() as u64, b.period() as u64) as u32;
    let m = a.max_anchor_depth().max(b.max_anchor_depth());
    let d = m + l + 1;
    let prod = crate::forest::tree_product(&a.truncate_to(d), &b.truncate_to(d));
    let seq =
        read_spine(&prod, l as usize, d).expect("product of periodic trees has a readable spine");
    let out = PeriodicTree::from_root_seq(seq).reduce();
    let check = d + 1;
    assert_eq!(
        out.truncate_to(check),
        crate::forest::tree_product(&a.truncate_to(check), &b.truncate_to(check)),
        "periodic product failed its depth post-check"
    );
    out
}

/// Rebuilds the connected system whose unrolling contains `p`, with cycle
/// length equal to the stored period: the anchored trees are attached to
/// consecutive cycle predecessors.
pub fn reroll(p: &PeriodicTree) -> Fds {
    let l = p.period();
    let seq = p.root_seq();
    let mut order: Vec<Tree> = Vec::with_capacity(l);
    order.push(seq[0].clone());
    for j in 1..l {
        order.push(seq[l - j].clone());
    }
    anchor_trees(l as u32, &order)
}

/// Parses the periodic tree format: the period on the first line, then one
/// tree code per spine position outward from the root.
pub fn parse_periodic_tree(text: &str) -> Result<PeriodicTree, String> {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
    let period: usize = lines
        .next()
        .ok_or("missing period line")?
        .trim()
        .parse()
        .map_err(|e| format!("bad period: {e}"))?;
    if period == 0 {
        return Err("period must be positive".into());
    }
    let mut seq = Vec::with_capacity(period);
    for _ in 0..period {
        let line = lines.next().ok_or("missing tree code line")?;
        let code = crate::forest::parse_code(line)?;
        seq.push(crate::forest::decode_code(&code).map_err(|e| e.to_string())?);
    }
    Ok(PeriodicTree::from_root_seq(seq))
}

/// Writes the periodic tree format with a trailing newline.
pub fn format_periodic_tree(p: &PeriodicTree) -> String {
    let mut out = format!("{}\n", p.period());
    for j in 0..p.period() {
        out.push_str(&crate::forest::format_code(&p.tree_at(j).code()));
        out.push('\n');
    }
    out
}
