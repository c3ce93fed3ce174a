//! Division: the divide loop on finite trees, dendron division through
//! truncated unrollings, and division of arbitrary systems by a divisor
//! with a fixpoint.
//!
//! Every public entry point re-multiplies its answer and returns a failure
//! instead of a wrong quotient, so a representation bug can only surface as
//! a loud bottom.

use crate::fds::{dendron_from_tree, Fds};
use crate::forest::{tree_product, Tree};
use crate::unrolling::{read_spine, reroll, unroll, PeriodicTree};
use std::fmt;

/// The bottom value of a failed division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivideError {
    /// No admissible minimal tree at some round.
    NoCandidate,
    /// A removal step was not contained in the working multiset.
    MultisetMismatch,
    /// A reconstructed quotient failed the final re-multiplication.
    PostCheckFailed,
}

impl DivideError {
    pub fn reason(&self) -> &'static str {
        match self {
            DivideError::NoCandidate => "no-candidate",
            DivideError::MultisetMismatch => "multiset-mismatch",
            DivideError::PostCheckFailed => "post-check-failed",
        }
    }
}

impl fmt::Display for DivideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

impl std::error::Error for DivideError {}

/// Divides `c` by `a` in the forest of finite trees.
///
/// Returns the unique tree `b` of depth at most `depth(a)` with
/// `a * b = [c]_{depth(a)}`, or bottom when none exists.
pub fn divide_trees(c: &Tree, a: &Tree) -> Result<Tree, DivideError> {
    let b = divide_trees_loop(c, a)?;
    let truncated = c.truncate(a.depth());
    if tree_product(a, &b) != truncated {
        return Err(DivideError::PostCheckFailed);
    }
    Ok(b)
}

fn divide_trees_loop(c: &Tree, a: &Tree) -> Result<Tree, DivideError> {
    let c = c.truncate(a.depth());
    let divisor_children = a.child_multiset();
    let mut work = c.child_multiset();
    let mut quotient_children: Vec<(Tree, u64)> = Vec::new();
    while !work.is_empty() {
        let d = work.depth() as u32;
        let t_c = work
            .min_with_depth_at_least(d)
            .expect("maximal depth is attained")
            .clone();
        let t_a = divisor_children
            .min_with_depth_at_least(d)
            .ok_or(DivideError::NoCandidate)?
            .clone();
        let t_b = divide_trees_loop(&t_c, &t_a)?;
        debug_assert_eq!(tree_product(&t_a, &t_b), t_c.truncate(t_a.depth()));
        let removal = divisor_children.scale(&t_b);
        work = work
            .checked_sub(&removal)
            .ok_or(DivideError::MultisetMismatch)?;
        quotient_children.push((t_b, 1));
    }
    Ok(Tree::from_runs(quotient_children))
}

/// Divides dendron `c` by dendron `a` in polynomial time: run the tree
/// divide on the unrollings truncated at `depth(c)`, then re-roll.
pub fn divide_dendrons(c: &Fds, a: &Fds) -> Result<Fds, DivideError> {
    assert!(
        c.is_dendron() && a.is_dendron(),
        "dendron division needs dendrons"
    );
    let k = c.depth() as u32;
    if a.depth() > k as i64 || !c.size().is_multiple_of(a.size()) {
        return Err(DivideError::NoCandidate);
    }
    if k == 0 {
        // Both are the single fixpoint.
        return Ok(Fds::identity());
    }
    let tc = unroll(c).parts.remove(0).truncate_to(k);
    let ta = unroll(a).parts.remove(0).truncate_to(k);
    let x = divide_trees_loop(&tc, &ta)?;
    // x must be the depth-k truncated unrolling of the quotient: its spine
    // child subtree is its own depth-(k-1) truncation, the rest of the root
    // children form the quotient's anchored tree.
    let spine = x.truncate(k - 1);
    let mut rest = x.child_multiset();
    if !rest.remove_one(&spine) {
        return Err(DivideError::PostCheckFailed);
    }
    let b = dendron_from_tree(&crate::forest::root_join(&rest));
    if !crate::fds::iso_eq(&a.product(&b), c) {
        return Err(DivideError::PostCheckFailed);
    }
    Ok(b)
}

/// Divides `d` by a divisor with a fixpoint, peeling one smallest-cycle
/// component of the quotient per round.
///
/// Each round takes the support of both sides on the divisors of the
/// smallest cycle length of `d`, divides the minimal periodic trees of the
/// unrolled supports, re-rolls the quotient component, and subtracts its
/// product with `a` from `d`.
pub fn divide_by_cancellative(d: &Fds, a: &Fds) -> Result<Fds, DivideError> {
    assert!(
        a.has_fixpoint(),
        "divisor must be cancellative (have a fixpoint)"
    );
    let mut remaining = d.clone();
    let mut quotient = Fds::empty();
    while !remaining.is_empty() {
        let lengths = remaining.classify().cycle_lengths;
        let smallest = lengths[0];
        let a_support = a.supp(|l| smallest.is_multiple_of(l));
        if a_support.is_empty() {
            return Err(DivideError::NoCandidate);
        }
        let d_support = remaining.supp(|l| smallest.is_multiple_of(l));
        let unrolled_a = unroll(&a_support);
        let unrolled_d = unroll(&d_support);
        let min_a = unrolled_a.min_part().expect("support is nonempty");
        let min_d = unrolled_d.min_part().expect("support is nonempty");
        let component = divide_periodic(min_d, min_a, smallest as usize, &remaining)?;
        let product = a.product(&component);
        remaining =
            subtract_components(&remaining, &product).ok_or(DivideError::MultisetMismatch)?;
        quotient = quotient.sum(&component);
    }
    if !crate::fds::iso_eq(&a.product(&quotient), d) {
        return Err(DivideError::PostCheckFailed);
    }
    Ok(quotient)
}

/// Divides two periodic trees and re-rolls the quotient into a connected
/// system with cycle length `cycle_len`.
///
/// The truncation depth `depth(d) + 2 * cycle_len + 1` leaves enough spine
/// below the anchored trees to read one full period of the quotient; the
/// final re-multiplication in the caller covers the bound.
fn divide_periodic(
    dividend: &PeriodicTree,
    divisor: &PeriodicTree,
    cycle_len: usize,
    d: &Fds,
) -> Result<Fds, DivideError> {
    let depth = d.depth().max(0) as u32 + 2 * cycle_len as u32 + 1;
    let num = dividend.truncate_to(depth);
    let den = divisor.truncate_to(depth);
    let quotient_tree = divide_trees_loop(&num, &den)?;
    let seq = read_spine(&quotient_tree, cycle_len, depth).ok_or(DivideError::PostCheckFailed)?;
    Ok(reroll(&PeriodicTree::from_root_seq(seq)))
}

/// Component-multiset difference; None when `sub` is not contained in `d`.
fn subtract_components(d: &Fds, sub: &Fds) -> Option<Fds> {
    let mut remaining: Vec<(crate::fds::FdsCode, Fds)> = d
        .components()
        .into_iter()
        .map(|c| (c.canonical_code(), c))
        .collect();
    for comp in sub.components() {
        let code = comp.canonical_code();
        let idx = remaining.iter().position(|(c, _)| *c == code)?;
        remaining.swap_remove(idx);
    }
    let mut out = Fds::empty();
    for (_, c) in remaining {
        out = out.sum(&c);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fds::{anchor_trees, iso_eq};

    #[test]
    fn tree_division_examples() {
        // star6 / star2 = star3 as depth-1 trees
        let q = divide_trees(&Tree::star(6), &Tree::star(2)).unwrap();
        assert_eq!(q, Tree::star(3));
        // dividing by a leaf truncates to depth 0
        let t = Tree::new(vec![Tree::path(2), Tree::leaf()]);
        assert_eq!(divide_trees(&t, &Tree::leaf()).unwrap(), Tree::leaf());
        // dividing by a full-depth path returns the tree itself
        let p = Tree::path(t.depth());
        assert_eq!(divide_trees(&t, &p).unwrap(), t);
        // no tree with 2 |D(B)| = 5
        assert!(divide_trees(&Tree::star(5), &Tree::star(2)).is_err());
    }

    #[test]
    fn tree_division_round_trips() {
        let trees = [
            Tree::leaf(),
            Tree::path(1),
            Tree::path(2),
            Tree::star(2),
            Tree::star(3),
            Tree::new(vec![Tree::path(1), Tree::leaf()]),
            Tree::new(vec![Tree::star(2), Tree::path(2)]),
        ];
        for a in &trees {
            for b in &trees {
                let c = tree_product(a, b);
                let q = divide_trees(&c, a).expect("product divides");
                assert_eq!(q, b.truncate(a.depth()), "a={a:?} b={b:?}");
            }
        }
    }

    #[test]
    fn dendron_division_round_trips() {
        let dendrons = [
            Fds::identity(),
            dendron_from_tree(&Tree::path(1)),
            dendron_from_tree(&Tree::path(3)),
            dendron_from_tree(&Tree::star(3)),
            dendron_from_tree(&Tree::new(vec![Tree::path(1), Tree::leaf()])),
        ];
        for a in &dendrons {
            for b in &dendrons {
                let c = a.product(b);
                let q = divide_dendrons(&c, a).expect("product divides");
                assert!(iso_eq(&q, b), "a={a:?} b={b:?}");
            }
        }
        for a in &dendrons {
            assert!(iso_eq(&divide_dendrons(a, &Fds::identity()).unwrap(), a));
        }
    }

    #[test]
    fn dendron_division_rejects_nondivisors() {
        // size gate: 5 states cannot split off 3
        let s5 = dendron_from_tree(&Tree::star(4));
        let s3 = dendron_from_tree(&Tree::star(2));
        assert_eq!(divide_dendrons(&s5, &s3), Err(DivideError::NoCandidate));
        // sizes divide but the only candidate size fails structurally:
        // P_1 * P_1 is the 4-state star, not the 4-state path dendron.
        let p3 = dendron_from_tree(&Tree::path(3));
        let p1 = dendron_from_tree(&Tree::path(1));
        assert!(divide_dendrons(&p3, &p1).is_err());
    }

    #[test]
    fn cancellative_division_examples() {
        // (C_1 + C_2) * B = 6C_2 has the unique solution found by rounds.
        let a = Fds::identity().sum(&Fds::cycle(2));
        let b = Fds::cycle(2).sum(&Fds::cycle(2));
        let d = a.product(&b);
        let q = divide_by_cancellative(&d, &a).unwrap();
        assert!(iso_eq(&q, &b));
        // A / A = C_1
        for a in [
            Fds::identity(),
            Fds::identity().sum(&Fds::cycle(3)),
            dendron_from_tree(&Tree::star(2)).sum(&Fds::cycle(2)),
        ] {
            let q = divide_by_cancellative(&a, &a).unwrap();
            assert!(iso_eq(&q, &Fds::identity()));
        }
    }

    #[test]
    fn cancellative_division_failure() {
        // (C_1 + C_1) * B = C_2 has no solution.
        let a = Fds::identity().sum(&Fds::identity());
        assert!(divide_by_cancellative(&Fds::cycle(2), &a).is_err());
    }

    #[test]
    fn cancellative_division_mixed_components() {
        let a = dendron_from_tree(&Tree::path(1)).sum(&Fds::identity());
        let b = anchor_trees(2, &[Tree::star(2), Tree::leaf()])
            .sum(&Fds::cycle(3))
            .sum(&dendron_from_tree(&Tree::path(2)));
        let d = a.product(&b);
        let q = divide_by_cancellative(&d, &a).unwrap();
        assert!(iso_eq(&q, &b));
    }

    #[test]
    fn quotients_can_differ_outside_dendrons() {
        // C_2 (2 T1 + C_2(T2)) = C_2 (C_2(T1) + 2 T2) with T1 != T2.
        let t1 = Tree::leaf();
        let t2 = Tree::path(1);
        let x = dendron_from_tree(&t1)
            .sum(&dendron_from_tree(&t1))
            .sum(&anchor_trees(2, &[t2.clone(), t2.clone()]));
        let y = dendron_from_tree(&t2)
            .sum(&dendron_from_tree(&t2))
            .sum(&anchor_trees(2, &[t1.clone(), t1.clone()]));
        let c2 = Fds::cycle(2);
        assert!(iso_eq(&c2.product(&x), &c2.product(&y)));
        assert!(!iso_eq(&x, &y));
    }
}
