//! The monoids generated by linear dendrons with a fixed number of rhizomes:
//! recognition, the i-fixed state analysis, the extraction lemma, and the
//! complete unique-factorisation procedure.
//!
//! In a product of linear dendrons with K rhizomes each, every non-leaf
//! state has (K+1)^i predecessors where i counts the coordinates sitting at
//! factor fixpoints. Extraction reads the truncated product of the fixed
//! factors off the tree anchored on a depth-1 state; the factorisation
//! recovers the factor multiset from extractions alone and re-multiplies as
//! a membership post-check.

use crate::division::{divide_dendrons, DivideError};
use crate::fds::{dendron_from_tree, iso_eq, Fds};
use crate::forest::{root_join, Tree};
use std::fmt;

/// A linear dendron: only the fixpoint may branch. Stored as the multiset
/// of rhizome lengths.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LinearDendron {
    rhizome_lengths: Vec<u32>,
}

impl LinearDendron {
    pub fn new(mut rhizome_lengths: Vec<u32>) -> Self {
        assert!(rhizome_lengths.iter().all(|&l| l >= 1));
        rhizome_lengths.sort_unstable();
        LinearDendron { rhizome_lengths }
    }

    /// Number of rhizomes.
    pub fn k(&self) -> usize {
        self.rhizome_lengths.len()
    }

    pub fn rhizome_lengths(&self) -> &[u32] {
        &self.rhizome_lengths
    }

    pub fn size(&self) -> u64 {
        1 + self.rhizome_lengths.iter().map(|&l| l as u64).sum::<u64>()
    }

    pub fn depth(&self) -> u32 {
        self.rhizome_lengths.last().copied().unwrap_or(0)
    }

    pub fn is_star(&self) -> bool {
        !self.rhizome_lengths.is_empty() && self.rhizome_lengths.iter().all(|&l| l == 1)
    }

    pub fn is_path(&self) -> bool {
        self.rhizome_lengths.len() == 1
    }

    pub fn to_fds(&self) -> Fds {
        make_linear(&self.rhizome_lengths)
    }
}

impl fmt::Display for LinearDendron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "linear{:?}", self.rhizome_lengths)
    }
}

/// The star with `n` states (fixpoint plus n-1 depth-1 predecessors).
pub fn make_star(n: u32) -> Fds {
    assert!(n >= 1);
    make_linear(&vec![1; (n - 1) as usize])
}

/// The path with `n+1` states: a single rhizome of length `n`.
pub fn make_path(n: u32) -> Fds {
    assert!(n >= 1);
    make_linear(&[n])
}

/// The linear dendron with the given rhizome lengths.
pub fn make_linear(lengths: &[u32]) -> Fds {
    let total: u64 = 1 + lengths.iter().map(|&l| l as u64).sum::<u64>();
    assert!(total <= u32::MAX as u64);
    let mut succ = vec![0u32];
    let mut next = 1u32;
    for &len in lengths {
        let mut parent = 0u32;
        for _ in 0..len {
            succ.push(parent);
            parent = next;
            next += 1;
        }
    }
    Fds::from_succ(succ).unwrap()
}

/// Failure reasons of the LD_K procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LdkError {
    NotDendron,
    /// A non-leaf state whose predecessor count is not a power of K+1.
    NonPowerPredecessors {
        state: u32,
        count: u64,
    },
    /// A dendron with a branching non-fixpoint state.
    NotLinear,
    /// A state failed the preconditions of extraction.
    BadExtractionSite,
    /// The anchored tree does not have the product shape.
    ExtractionFailed,
    DivisionFailed(DivideError),
    /// Class multiplicities do not add up to the factor count.
    InconsistentMultiplicities,
    /// The Vieta polynomial lacks a full set of positive integer roots.
    NoIntegerRoots,
    /// Re-multiplying the factors does not reproduce the input.
    PostCheckFailed,
}

impl fmt::Display for LdkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LdkError::NotDendron => write!(f, "not a dendron"),
            LdkError::NonPowerPredecessors { state, count } => {
                write!(
                    f,
                    "state {state} has {count} predecessors, not a power of K+1"
                )
            }
            LdkError::NotLinear => write!(f, "not a linear dendron with the expected rhizomes"),
            LdkError::BadExtractionSite => write!(f, "state is not a depth-1 extraction site"),
            LdkError::ExtractionFailed => write!(f, "anchored tree lacks the product shape"),
            LdkError::DivisionFailed(e) => write!(f, "division failed: {e}"),
            LdkError::InconsistentMultiplicities => {
                write!(f, "class multiplicities do not sum to the factor count")
            }
            LdkError::NoIntegerRoots => {
                write!(f, "path-count polynomial lacks positive integer roots")
            }
            LdkError::PostCheckFailed => write!(f, "factors do not multiply back to the input"),
        }
    }
}

impl std::error::Error for LdkError {}

/// The rhizome multiset of a linear dendron, or why the input is not one.
pub fn recognize_linear(a: &Fds) -> Result<LinearDendron, LdkError> {
    if !a.is_dendron() {
        return Err(LdkError::NotDendron);
    }
    let cls = a.classify();
    let fixpoint = (0..a.size() as u32)
        .find(|&s| cls.on_cycle[s as usize])
        .expect("dendron has a fixpoint");
    let mut preds = vec![0u64; a.size() as usize];
    for s in 0..a.size() as u32 {
        preds[a.successor(s) as usize] += 1;
    }
    for s in 0..a.size() as u32 {
        if s != fixpoint && preds[s as usize] > 1 {
            return Err(LdkError::NotLinear);
        }
    }
    let lengths: Vec<u32> = (0..a.size() as u32)
        .filter(|&s| preds[s as usize] == 0 || (s == fixpoint && a.size() == 1))
        .filter(|&s| s != fixpoint)
        .map(|leaf| cls.depth[leaf as usize])
        .collect();
    Ok(LinearDendron::new(lengths))
}

/// Only stars with a composite number of states factor.
pub fn is_irreducible_linear(a: &LinearDendron) -> bool {
    if !a.is_star() {
        return true;
    }
    let n = a.size();
    !(2..n).any(|d| n.is_multiple_of(d))
}

/// How a state sits inside a product of linear dendrons.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StateFix {
    /// No predecessors at all.
    Leaf,
    /// `(K+1)^i` predecessors: `i` coordinates at factor fixpoints.
    Fixed(u32),
}

/// Per-state fixedness and codepth (height of the anchored tree).
pub struct FixedStateIndex {
    pub fix: Vec<StateFix>,
    pub codepth: Vec<u32>,
    pub depth: Vec<u32>,
}

impl FixedStateIndex {
    /// i-fixed depth-1 states of the given codepth.
    pub fn extraction_sites(&self, i: u32, codepth: u32) -> Vec<u32> {
        (0..self.fix.len() as u32)
            .filter(|&s| {
                self.depth[s as usize] == 1
                    && self.codepth[s as usize] == codepth
                    && self.fix[s as usize] == StateFix::Fixed(i)
            })
            .collect()
    }
}

fn log_base(base: u64, value: u64) -> Option<u32> {
    let mut acc = 1u64;
    let mut exp = 0u32;
    while acc < value {
        acc = acc.checked_mul(base)?;
        exp += 1;
    }
    (acc == value).then_some(exp)
}

/// Classifies each state by predecessor count as a power of K+1 and
/// records the anchored-tree height as its codepth.
pub fn fixed_index(p: &Fds, big_k: u32) -> Result<FixedStateIndex, LdkError> {
    assert!(big_k >= 1);
    let analysis = p.analyze();
    let anchored = p.anchored_trees(&analysis);
    let mut fix = Vec::with_capacity(p.size() as usize);
    for s in 0..p.size() as u32 {
        let count = analysis.preds[s as usize].len() as u64;
        if count == 0 {
            fix.push(StateFix::Leaf);
        } else {
            let i = log_base(big_k as u64 + 1, count)
                .ok_or(LdkError::NonPowerPredecessors { state: s, count })?;
            fix.push(StateFix::Fixed(i));
        }
    }
    Ok(FixedStateIndex {
        fix,
        codepth: anchored.iter().map(|t| t.depth()).collect(),
        depth: analysis.depth,
    })
}

/// Recovers the extraction value from a tree anchored on a depth-1 state.
///
/// In a product, the tree anchored on an i-fixed depth-1 state of codepth l
/// is the truncated product E of the fixed factors with one extra branch:
/// the subtree of the unique pattern-continuing predecessor, itself a tower
/// of the truncations of E. Peeling level by level recovers E uniquely.
fn peel_extraction(anchored: &Tree, codepth: u32) -> Option<Tree> {
    let mut value = Tree::leaf();
    let mut tower = Tree::leaf();
    for level in 1..=codepth {
        let mut rest = anchored.truncate(level).child_multiset();
        if !rest.remove_one(&tower) {
            return None;
        }
        value = root_join(&rest);
        let mut runs = value.child_runs().to_vec();
        runs.push((tower, 1));
        tower = Tree::from_runs(runs);
    }
    Some(value)
}

/// The extraction lemma at one state: the tree anchored on a depth-1,
/// i-fixed state of codepth l, with the branch of its i-fixed predecessor
/// removed, equals the depth-l truncation of the product of the factors
/// fixed at that state.
pub fn extract(p: &Fds, s: u32, big_k: u32) -> Result<Tree, LdkError> {
    let index = fixed_index(p, big_k)?;
    if s as u64 >= p.size()
        || index.depth[s as usize] != 1
        || index.fix[s as usize] == StateFix::Leaf
    {
        return Err(LdkError::BadExtractionSite);
    }
    let analysis = p.analyze();
    let anchored = p.anchored_trees(&analysis);
    peel_extraction(&anchored[s as usize], index.codepth[s as usize])
        .ok_or(LdkError::ExtractionFailed)
}

/// The unique factorisation of a product of linear dendrons with `big_k`
/// rhizomes each; fails on inputs outside the monoid.
pub fn factor_ldk(p: &Fds, big_k: u32) -> Result<Vec<LinearDendron>, LdkError> {
    assert!(big_k >= 1);
    if !p.is_dendron() {
        return Err(LdkError::NotDendron);
    }
    let factors = factor_rec(p, big_k)?;
    let product = factors
        .iter()
        .fold(Fds::identity(), |acc, f| acc.product(&f.to_fds()));
    if !iso_eq(&product, p) {
        return Err(LdkError::PostCheckFailed);
    }
    let mut factors = factors;
    factors.sort();
    Ok(factors)
}

/// Tries each K that makes all predecessor counts powers of K+1.
pub fn factor_ldk_auto(p: &Fds) -> Option<(u32, Vec<LinearDendron>)> {
    for big_k in candidate_ks(p) {
        if let Ok(f) = factor_ldk(p, big_k) {
            return Some((big_k, f));
        }
    }
    None
}

/// Rhizome counts under which every predecessor count is a power of K+1.
pub fn candidate_ks(p: &Fds) -> Vec<u32> {
    let mut preds = vec![0u64; p.size() as usize];
    for s in 0..p.size() as u32 {
        preds[p.successor(s) as usize] += 1;
    }
    let max = preds.iter().copied().max().unwrap_or(0);
    (2..=max.max(2))
        .filter(|&base| preds.iter().all(|&c| c == 0 || log_base(base, c).is_some()))
        .map(|base| (base - 1) as u32)
        .collect()
}

fn factor_rec(p: &Fds, big_k: u32) -> Result<Vec<LinearDendron>, LdkError> {
    if p.size() == 1 {
        return Ok(Vec::new());
    }
    let depth = p.depth() as u32;
    if depth == 1 {
        return factor_equal_depth(p, big_k);
    }
    let index = fixed_index(p, big_k)?;
    // Depth-1 states on a maximal rhizome; the least fixed of them counts
    // the factors of lower depth.
    let mut least: Option<(u32, u32)> = None;
    for s in 0..p.size() as u32 {
        if index.depth[s as usize] == 1 && index.codepth[s as usize] == depth - 1 {
            if let StateFix::Fixed(i) = index.fix[s as usize] {
                if least.is_none_or(|(j, _)| i < j) {
                    least = Some((i, s));
                }
            }
        }
    }
    let (low_count, site) = least.ok_or(LdkError::ExtractionFailed)?;
    if low_count == 0 {
        return factor_equal_depth(p, big_k);
    }
    // Split off the product of the shallow factors and recurse on both parts.
    let analysis = p.analyze();
    let anchored = p.anchored_trees(&analysis);
    let low_tree = peel_extraction(&anchored[site as usize], index.codepth[site as usize])
        .ok_or(LdkError::ExtractionFailed)?;
    if low_tree.is_leaf() {
        return Err(LdkError::ExtractionFailed);
    }
    let low = dendron_from_tree(&low_tree);
    let high = divide_dendrons(p, &low).map_err(LdkError::DivisionFailed)?;
    let mut factors = factor_equal_depth(&high, big_k)?;
    factors.extend(factor_rec(&low, big_k)?);
    Ok(factors)
}

/// Factorisation of a product whose factors all share the input's depth.
fn factor_equal_depth(p: &Fds, big_k: u32) -> Result<Vec<LinearDendron>, LdkError> {
    if p.size() == 1 {
        return Ok(Vec::new());
    }
    let index = fixed_index(p, big_k)?;
    let depth = p.depth() as u32;
    let fixpoint = (0..p.size() as u32)
        .find(|&s| index.depth[s as usize] == 0)
        .expect("dendron fixpoint");
    let factor_count = match index.fix[fixpoint as usize] {
        StateFix::Fixed(n) if n >= 1 => n,
        _ => {
            return Err(LdkError::NonPowerPredecessors {
                state: fixpoint,
                count: 1,
            })
        }
    };
    if depth == 1 {
        // Depth-1 linear dendrons with K rhizomes are exactly the K+1 star.
        let expected = (big_k as u64 + 1).pow(factor_count);
        let lin = recognize_linear(p)?;
        if p.size() != expected || !lin.is_star() {
            return Err(LdkError::NotLinear);
        }
        return Ok(vec![
            LinearDendron::new(vec![1; big_k as usize]);
            factor_count as usize
        ]);
    }
    if factor_count == 1 {
        let lin = recognize_linear(p)?;
        if lin.k() != big_k as usize {
            return Err(LdkError::NotLinear);
        }
        return Ok(vec![lin]);
    }
    let truncated_depth = depth - 1;

    // Extraction values over the i-fixed depth-1 states of full codepth.
    let analysis = p.analyze();
    let anchored = p.anchored_trees(&analysis);
    let mut extraction_by_level: Vec<Vec<Tree>> = Vec::with_capacity(factor_count as usize);
    for i in 0..factor_count {
        let mut values = Vec::new();
        for s in index.extraction_sites(i, truncated_depth) {
            values.push(
                peel_extraction(&anchored[s as usize], truncated_depth)
                    .ok_or(LdkError::ExtractionFailed)?,
            );
        }
        extraction_by_level.push(values);
    }

    // Set of truncated factors from the 1-fixed extractions.
    let mut class_trees: Vec<Tree> = Vec::new();
    for t in &extraction_by_level[1.min(extraction_by_level.len() - 1)] {
        if !class_trees.contains(t) {
            class_trees.push(t.clone());
        }
    }
    if class_trees.is_empty() {
        return Err(LdkError::InconsistentMultiplicities);
    }

    // Multiplicity of each class: the largest i whose extractions contain
    // the i-th power of the class representative.
    let mut classes: Vec<(Fds, Tree, u32)> = Vec::new();
    let mut total = 0u32;
    for tree in &class_trees {
        let base = dendron_from_tree(tree);
        let mut multiplicity = 0u32;
        for i in 1..factor_count.max(1) {
            let power = base.pow(i).dendron_tree().expect("dendron power");
            if extraction_by_level[i as usize].contains(&power) {
                multiplicity = i;
            }
        }
        if multiplicity == 0 {
            return Err(LdkError::InconsistentMultiplicities);
        }
        classes.push((base, tree.clone(), multiplicity));
        total += multiplicity;
    }
    if total == factor_count - 1 && classes.len() == 1 {
        // A single class saturates every coordinate; the fixpoint itself is
        // the only N-fixed state, so the scan tops out one short.
        classes[0].2 += 1;
        total += 1;
    }
    if total != factor_count {
        return Err(LdkError::InconsistentMultiplicities);
    }

    // Per class, count extraction sites realising [P]_k / B^n to build the
    // elementary symmetric sums of the full-depth path counts, then read
    // the path counts off the Vieta polynomial.
    let truncated = p.truncate(truncated_depth);
    let mut factors = Vec::new();
    for (base, _tree, multiplicity) in classes {
        let mut symmetric = vec![1i128];
        for n in 1..=multiplicity {
            let divisor = base.pow(n);
            let quotient =
                divide_dendrons(&truncated, &divisor).map_err(LdkError::DivisionFailed)?;
            let target = quotient.dendron_tree().expect("dendron quotient");
            let level = factor_count - n;
            let count = extraction_by_level
                .get(level as usize)
                .map_or(0, |v| v.iter().filter(|t| **t == target).count());
            symmetric.push(count as i128);
        }
        let path_counts = positive_integer_roots(&symmetric, multiplicity)?;
        let lin = recognize_linear(&base)?;
        if lin.k() != big_k as usize {
            return Err(LdkError::NotLinear);
        }
        for f in path_counts {
            factors.push(extend_rhizomes(&lin, truncated_depth, f)?);
        }
    }
    Ok(factors)
}

/// Roots of `X^m - p_1 X^(m-1) + ... +- p_m` with multiplicity, by trial
/// division over the divisors of the constant term.
fn positive_integer_roots(symmetric: &[i128], m: u32) -> Result<Vec<u64>, LdkError> {
    let mut poly: Vec<i128> = (0..=m as usize)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * symmetric[j]
        })
        .collect();
    // poly[j] is the coefficient of X^(m-j), leading first.
    let product = symmetric[m as usize];
    if product <= 0 {
        return Err(LdkError::NoIntegerRoots);
    }
    let mut roots = Vec::new();
    for r in 1..=product {
        if product % r != 0 {
            continue;
        }
        loop {
            // Horner evaluation and synthetic division by (X - r).
            let mut value = 0i128;
            for c in &poly {
                value = value * r + c;
            }
            if value != 0 {
                break;
            }
            let mut next = Vec::with_capacity(poly.len() - 1);
            let mut carry = 0i128;
            for c in &poly[..poly.len() - 1] {
                carry = carry * r + c;
                next.push(carry);
            }
            poly = next;
            roots.push(r as u64);
            if roots.len() == m as usize {
                break;
            }
        }
        if roots.len() == m as usize {
            break;
        }
    }
    if roots.len() != m as usize {
        return Err(LdkError::NoIntegerRoots);
    }
    Ok(roots)
}

/// Rebuilds a full-depth factor from its truncation: `paths` of the
/// rhizomes of truncated length grow by one.
fn extend_rhizomes(
    truncated: &LinearDendron,
    truncated_depth: u32,
    paths: u64,
) -> Result<LinearDendron, LdkError> {
    let mut lengths = truncated.rhizome_lengths().to_vec();
    let available = lengths.iter().filter(|&&l| l == truncated_depth).count() as u64;
    if paths == 0 || paths > available {
        return Err(LdkError::InconsistentMultiplicities);
    }
    let mut remaining = paths;
    for l in lengths.iter_mut() {
        if *l == truncated_depth && remaining > 0 {
            *l += 1;
            remaining -= 1;
        }
    }
    Ok(LinearDendron::new(lengths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::couturier_dendron;

    #[test]
    fn constructors() {
        assert!(iso_eq(&make_star(1), &Fds::identity()));
        assert!(iso_eq(&make_linear(&[1]), &make_path(1)));
        assert!(iso_eq(&make_linear(&[1]), &make_star(2)));
        assert_eq!(make_star(4).size(), 4);
        assert_eq!(make_path(3).size(), 4);
    }

    #[test]
    fn star_products_multiply_like_integers() {
        for (a, b) in [(2u32, 3u32), (2, 2), (3, 4)] {
            assert!(iso_eq(
                &make_star(a).product(&make_star(b)),
                &make_star(a * b)
            ));
        }
        assert!(iso_eq(&make_path(1).product(&make_path(1)), &make_star(4)));
    }

    #[test]
    fn recognizing_linear_dendrons() {
        let lin = recognize_linear(&Fds::identity()).unwrap();
        assert_eq!(lin.k(), 0);
        let lin = recognize_linear(&make_linear(&[2, 2, 3])).unwrap();
        assert_eq!(lin.rhizome_lengths(), &[2, 2, 3]);
        assert_eq!(lin.k(), 3);
        // The six-state Couturier factor branches off the fixpoint.
        let b = dendron_from_tree(&Tree::new(vec![Tree::leaf(), Tree::star(3)]));
        assert_eq!(recognize_linear(&b), Err(LdkError::NotLinear));
        assert_eq!(recognize_linear(&Fds::cycle(2)), Err(LdkError::NotDendron));
    }

    #[test]
    fn irreducibility() {
        let s6 = recognize_linear(&make_star(6)).unwrap();
        assert!(!is_irreducible_linear(&s6));
        let s5 = recognize_linear(&make_star(5)).unwrap();
        assert!(is_irreducible_linear(&s5));
        let deep = LinearDendron::new(vec![1, 2]);
        assert!(is_irreducible_linear(&deep));
    }

    #[test]
    fn fixedness_in_products() {
        // P_1 x P_2 with K = 1: the fixpoint is 2-fixed.
        let p = make_path(1).product(&make_path(2));
        let index = fixed_index(&p, 1).unwrap();
        let fixpoint = (0..p.size() as u32)
            .find(|&s| index.depth[s as usize] == 0)
            .unwrap();
        assert_eq!(index.fix[fixpoint as usize], StateFix::Fixed(2));
        // Leaves are flagged.
        assert!(index.fix.contains(&StateFix::Leaf));
        // Three predecessors is not a power of 2.
        let s3 = make_star(3);
        assert!(matches!(
            fixed_index(&s3, 1),
            Err(LdkError::NonPowerPredecessors { .. })
        ));
    }

    #[test]
    fn extraction_in_p1_times_p2() {
        let p = make_path(1).product(&make_path(2));
        let index = fixed_index(&p, 1).unwrap();
        let sites = index.extraction_sites(1, 1);
        assert_eq!(sites.len(), 1);
        let e = extract(&p, sites[0], 1).unwrap();
        assert_eq!(e, make_path(1).dendron_tree().unwrap());
        // 0-fixed sites extract the single vertex (take them from P_2^2,
        // where both coordinates can sit on a live rhizome).
        let sq = make_path(2).product(&make_path(2));
        let index = fixed_index(&sq, 1).unwrap();
        let zero_sites = index.extraction_sites(0, 1);
        assert!(!zero_sites.is_empty());
        assert_eq!(extract(&sq, zero_sites[0], 1).unwrap(), Tree::leaf());
    }

    #[test]
    fn factor_simple_products() {
        let p = make_path(1).product(&make_path(2));
        let factors = factor_ldk(&p, 1).unwrap();
        assert_eq!(
            factors,
            vec![LinearDendron::new(vec![1]), LinearDendron::new(vec![2])]
        );
        let s4 = make_star(4);
        assert_eq!(
            factor_ldk(&s4, 1).unwrap(),
            vec![LinearDendron::new(vec![1]); 2]
        );
        assert_eq!(
            factor_ldk(&s4, 3).unwrap(),
            vec![LinearDendron::new(vec![1, 1, 1])]
        );
    }

    #[test]
    fn factor_equal_depth_square() {
        let p2 = make_path(2);
        let sq = p2.product(&p2);
        assert_eq!(
            factor_ldk(&sq, 1).unwrap(),
            vec![LinearDendron::new(vec![2]); 2]
        );
    }

    #[test]
    fn factor_mixed_three() {
        let f1 = LinearDendron::new(vec![1, 2]);
        let f2 = LinearDendron::new(vec![2, 2]);
        let f3 = LinearDendron::new(vec![1, 1]);
        let p = f1.to_fds().product(&f2.to_fds()).product(&f3.to_fds());
        let mut expected = vec![f1, f2, f3];
        expected.sort();
        assert_eq!(factor_ldk(&p, 2).unwrap(), expected);
    }

    #[test]
    fn couturier_is_not_in_any_ldk() {
        let c = couturier_dendron();
        for k in 1..=6 {
            assert!(factor_ldk(&c, k).is_err(), "k={k}");
        }
        assert!(factor_ldk_auto(&c).is_none());
    }

    #[test]
    fn auto_k_discovery() {
        let p = make_path(2).product(&make_path(3));
        let (k, factors) = factor_ldk_auto(&p).unwrap();
        assert_eq!(k, 1);
        assert_eq!(factors.len(), 2);
    }
}
