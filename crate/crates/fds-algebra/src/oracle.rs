//! Ground truth at desk scale: exhaustive enumeration of isomorphism
//! classes, brute-force divisor search, the named identities of the theory
//! as regression fixtures, and a deterministic generator for random corpora.

use crate::division::divide_by_cancellative;
use crate::fds::{anchor_trees, dendron_from_tree, iso_eq, Fds};
use crate::forest::Tree;
use crate::unrolling::unroll;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// What a cursor enumerates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumKind {
    Fds,
    Tree,
    Dendron,
    Permutation,
}

impl EnumKind {
    pub fn parse(s: &str) -> Option<EnumKind> {
        match s {
            "fds" => Some(EnumKind::Fds),
            "tree" => Some(EnumKind::Tree),
            "dendron" => Some(EnumKind::Dendron),
            "permutation" | "perm" => Some(EnumKind::Permutation),
            _ => None,
        }
    }
}

/// Resumable stream over the isomorphism classes of one kind and size, in
/// canonical-code order. Trees and dendrons enumerate the same classes; the
/// tree view is the dendron with its fixpoint read as the root.
pub struct EnumerationCursor {
    pub kind: EnumKind,
    pub size: u64,
    items: Vec<Fds>,
    pos: usize,
}

impl EnumerationCursor {
    /// Opaque resumable position.
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn resume(kind: EnumKind, size: u64, pos: usize) -> EnumerationCursor {
        let mut c = enumerate(kind, size);
        c.pos = pos.min(c.items.len());
        c
    }

    pub fn remaining(&self) -> usize {
        self.items.len() - self.pos
    }
}

impl Iterator for EnumerationCursor {
    type Item = Fds;

    fn next(&mut self) -> Option<Fds> {
        let item = self.items.get(self.pos)?.clone();
        self.pos += 1;
        Some(item)
    }
}

/// All isomorphism classes of the kind with exactly `size` states.
pub fn enumerate(kind: EnumKind, size: u64) -> EnumerationCursor {
    let mut items = match kind {
        EnumKind::Fds => fds_classes(size),
        EnumKind::Tree | EnumKind::Dendron => dendron_classes(size),
        EnumKind::Permutation => permutation_classes(size),
    };
    items.sort_by_cached_key(Fds::canonical_code);
    EnumerationCursor {
        kind,
        size,
        items,
        pos: 0,
    }
}

/// All rooted trees with `n` vertices, cached.
pub fn all_trees(n: u64) -> Vec<Tree> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Tree>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let out: Vec<Tree> = if n == 0 {
        Vec::new()
    } else {
        tree_multisets(n - 1, u64::MAX, usize::MAX)
            .into_iter()
            .map(Tree::new)
            .collect()
    };
    cache.lock().unwrap().insert(n, out.clone());
    out
}

/// Multisets of trees with the given total vertex count, where every chosen
/// tree is bounded by (max_size, below_idx) to enumerate each multiset once.
fn tree_multisets(total: u64, max_size: u64, below_idx: usize) -> Vec<Vec<Tree>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for size in (1..=total.min(max_size)).rev() {
        let pool = all_trees(size);
        let limit = if size == max_size {
            below_idx.min(pool.len())
        } else {
            pool.len()
        };
        for (idx, tree) in pool.iter().enumerate().take(limit) {
            for mut rest in tree_multisets(total - size, size, idx + 1) {
                rest.push(tree.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// Connected classes with a given cycle length and total size: necklaces of
/// anchored trees.
pub fn connected_classes_with_cycle(cycle_len: u64, size: u64) -> Vec<Fds> {
    if cycle_len == 0 || size < cycle_len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seq: Vec<Tree> = Vec::new();
    necklaces(cycle_len as usize, size, &mut seq, &mut out);
    out
}

fn necklaces(slots: usize, budget: u64, seq: &mut Vec<Tree>, out: &mut Vec<Fds>) {
    if seq.len() == slots {
        if budget == 0 {
            let codes: Vec<_> = seq.iter().map(|t| t.code()).collect();
            if crate::fds::minimal_rotation_start(&codes) == 0 {
                out.push(anchor_trees(slots as u32, seq));
            }
        }
        return;
    }
    let remaining_slots = (slots - seq.len() - 1) as u64;
    for size in 1..=(budget - remaining_slots) {
        for t in all_trees(size) {
            seq.push(t);
            necklaces(slots, budget - size, seq, out);
            seq.pop();
        }
    }
}

/// All connected classes of a given size.
pub fn connected_classes(size: u64) -> Vec<Fds> {
    (1..=size)
        .flat_map(|l| connected_classes_with_cycle(l, size))
        .collect()
}

fn connected_cached(size: u64) -> Vec<Fds> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Fds>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&size) {
        return v.clone();
    }
    let out = connected_classes(size);
    cache.lock().unwrap().insert(size, out.clone());
    out
}

/// All classes of the given size: multisets of connected classes.
pub fn fds_classes(size: u64) -> Vec<Fds> {
    fn rec(total: u64, max_size: u64, below_idx: usize, acc: &Fds, out: &mut Vec<Fds>) {
        if total == 0 {
            out.push(acc.clone());
            return;
        }
        for size in (1..=total.min(max_size)).rev() {
            let pool = connected_cached(size);
            let limit = if size == max_size {
                below_idx.min(pool.len())
            } else {
                pool.len()
            };
            for (idx, comp) in pool.iter().enumerate().take(limit) {
                rec(total - size, size, idx + 1, &acc.sum(comp), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(size, u64::MAX, usize::MAX, &Fds::empty(), &mut out);
    out
}

pub fn dendron_classes(size: u64) -> Vec<Fds> {
    all_trees(size)
        .into_iter()
        .map(|t| dendron_from_tree(&t))
        .collect()
}

pub fn permutation_classes(size: u64) -> Vec<Fds> {
    fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.push(first);
                out.push(rest);
            }
        }
        out
    }
    partitions(size, size.max(1))
        .into_iter()
        .map(|part| {
            part.into_iter()
                .fold(Fds::empty(), |acc, l| acc.sum(&Fds::cycle(l as u32)))
        })
        .collect()
}

/// All classes of size at most `size`, including the empty system.
pub fn fds_classes_up_to(size: u64) -> Vec<Fds> {
    (0..=size).flat_map(fds_classes).collect()
}

/// Independent check of the enumerator: canonicalise every one of the n^n
/// self-maps on n states and collect the distinct codes.
pub fn all_maps_class_count(n: u32) -> usize {
    let mut codes = std::collections::HashSet::new();
    let count = (n as u64).pow(n);
    for mut index in 0..count {
        let mut succ = Vec::with_capacity(n as usize);
        for _ in 0..n {
            succ.push((index % n as u64) as u32);
            index /= n as u64;
        }
        codes.insert(Fds::from_succ(succ).unwrap().canonical_code());
    }
    codes.len()
}

/// All unordered factorisations `c = a * b` with `|a| <= |b|`.
///
/// Cancellative candidates are divided exactly; fixpoint-free candidates are
/// checked against an enumeration of the cofactor size, which stays small
/// because a product has a fixpoint exactly when both factors do.
pub fn brute_divisor_pairs(c: &Fds) -> Vec<(Fds, Fds)> {
    assert!(!c.is_empty(), "every pair with a zero factor yields zero");
    let n = c.size();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut push = |a: Fds, b: Fds| {
        let (a, b) = if a.canonical_code() <= b.canonical_code() {
            (a, b)
        } else {
            (b, a)
        };
        if seen.insert((a.canonical_code(), b.canonical_code())) {
            out.push((a, b));
        }
    };
    for d in 1..=n {
        if !n.is_multiple_of(d) || d * d > n {
            continue;
        }
        for a in fds_classes(d) {
            if a.has_fixpoint() {
                if let Ok(b) = divide_by_cancellative(c, &a) {
                    push(a, b);
                }
            } else {
                if c.has_fixpoint() {
                    // product with a fixpoint-free factor has no fixpoint
                    continue;
                }
                for b in fds_classes(n / d) {
                    if iso_eq(&a.product(&b), c) {
                        push(a.clone(), b);
                    }
                }
            }
        }
    }
    out.sort_by_cached_key(|(a, b)| (a.canonical_code(), b.canonical_code()));
    out
}

/// How a fixture pair is expected to relate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixtureCheck {
    Isomorphic,
    Distinct,
    EqualUnrollings,
}

/// A named identity materialised as a pair of systems.
pub struct Fixture {
    pub name: &'static str,
    pub lhs: Fds,
    pub rhs: Fds,
    pub check: FixtureCheck,
}

impl Fixture {
    pub fn holds(&self) -> bool {
        match self.check {
            FixtureCheck::Isomorphic => iso_eq(&self.lhs, &self.rhs),
            FixtureCheck::Distinct => !iso_eq(&self.lhs, &self.rhs),
            FixtureCheck::EqualUnrollings => unroll(&self.lhs).multiset_eq(&unroll(&self.rhs)),
        }
    }
}

/// The 12-state dendron with two distinct factorisations into irreducibles,
/// together with both factor pairs.
pub fn couturier_factor_pairs() -> ((Fds, Fds), (Fds, Fds)) {
    let s2 = dendron_from_tree(&Tree::star(1));
    let b = dendron_from_tree(&Tree::new(vec![Tree::leaf(), Tree::star(3)]));
    let s3 = dendron_from_tree(&Tree::star(2));
    let d = dendron_from_tree(&Tree::new(vec![Tree::star(2)]));
    ((s2, b), (s3, d))
}

pub fn couturier_dendron() -> Fds {
    let ((s2, b), _) = couturier_factor_pairs();
    s2.product(&b)
}

/// The two sides of the equal-products, distinct-quotients identity, built
/// from two distinct trees.
pub fn two_quotient_pair(t1: &Tree, t2: &Tree) -> (Fds, Fds) {
    let x = dendron_from_tree(t1)
        .sum(&dendron_from_tree(t1))
        .sum(&anchor_trees(2, &[t2.clone(), t2.clone()]));
    let y = dendron_from_tree(t2)
        .sum(&dendron_from_tree(t2))
        .sum(&anchor_trees(2, &[t1.clone(), t1.clone()]));
    (x, y)
}

/// Every named identity of the theory as a checkable fixture.
pub fn fixtures() -> Vec<Fixture> {
    let c2 = Fds::cycle(2);
    let (x, y) = two_quotient_pair(&Tree::leaf(), &Tree::path(1));
    let three_c1 = Fds::identity().sum(&Fds::identity()).sum(&Fds::identity());
    let ((s2, b), (s3, d)) = couturier_factor_pairs();
    vec![
        Fixture {
            name: "c2-squared-is-2c2",
            lhs: c2.product(&c2),
            rhs: c2.sum(&c2),
            check: FixtureCheck::Isomorphic,
        },
        Fixture {
            name: "two-quotient-products-equal",
            lhs: c2.product(&x),
            rhs: c2.product(&y),
            check: FixtureCheck::Isomorphic,
        },
        Fixture {
            name: "two-quotient-quotients-differ",
            lhs: x.clone(),
            rhs: y.clone(),
            check: FixtureCheck::Distinct,
        },
        Fixture {
            name: "unroll-c3-equals-unroll-3c1",
            lhs: Fds::cycle(3),
            rhs: three_c1.clone(),
            check: FixtureCheck::EqualUnrollings,
        },
        Fixture {
            name: "c3-differs-from-3c1",
            lhs: Fds::cycle(3),
            rhs: three_c1,
            check: FixtureCheck::Distinct,
        },
        Fixture {
            name: "noninjectivity-pair-unrollings",
            lhs: x.clone(),
            rhs: y.clone(),
            check: FixtureCheck::EqualUnrollings,
        },
        Fixture {
            name: "couturier-two-factorisations",
            lhs: s2.product(&b),
            rhs: s3.product(&d),
            check: FixtureCheck::Isomorphic,
        },
    ]
}

/// SplitMix64: tiny deterministic generator for reproducible test corpora.
#[derive(Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Uniformly random self-map on `n` states.
pub fn random_fds(rng: &mut SplitMix64, n: u64) -> Fds {
    if n == 0 {
        return Fds::empty();
    }
    Fds::from_succ((0..n).map(|_| rng.below(n) as u32).collect()).unwrap()
}

/// Random dendron: state 0 is the fixpoint, every later state attaches to
/// an earlier one.
pub fn random_dendron(rng: &mut SplitMix64, n: u64) -> Fds {
    assert!(n >= 1);
    Fds::from_succ(
        (0..n)
            .map(|i| if i == 0 { 0 } else { rng.below(i) as u32 })
            .collect(),
    )
    .unwrap()
}
