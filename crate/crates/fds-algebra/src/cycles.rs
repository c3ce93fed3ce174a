//! Permutation algebra: products of cycles, the delta scalar, k-th roots of
//! permutations by triangular solving, the cancellativity test, and the
//! two-witness construction for fixpoint-free systems.
//!
//! The product here is the direct product of cycle digraphs, not function
//! composition: `C_a x C_b = gcd(a,b) C_lcm(a,b)`.

use crate::fds::{anchor_trees, Fds};
use crate::forest::Tree;
use std::collections::BTreeMap;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A permutation up to isomorphism: cycle length -> multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Permutation {
    counts: BTreeMap<u64, u64>,
}

impl Permutation {
    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn cycle(len: u64) -> Self {
        Permutation::from_counts([(len, 1)])
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (len, mult) in counts {
            if mult > 0 {
                assert!(len >= 1);
                *map.entry(len).or_insert(0) += mult;
            }
        }
        Permutation { counts: map }
    }

    /// The periodic part `[a]_0` of any system.
    pub fn from_fds(a: &Fds) -> Self {
        Permutation::from_counts(a.classify().cycle_lengths.into_iter().map(|l| (l, 1)))
    }

    pub fn to_fds(&self) -> Fds {
        let mut out = Fds::empty();
        for (&len, &mult) in &self.counts {
            for _ in 0..mult {
                out = out.sum(&Fds::cycle(len as u32));
            }
        }
        out
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().map(|(l, m)| l * m).sum()
    }

    pub fn multiplicity(&self, len: u64) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Distinct cycle lengths, ascending.
    pub fn lengths(&self) -> Vec<u64> {
        self.counts.keys().copied().collect()
    }

    pub fn add(&self, other: &Permutation) -> Permutation {
        let mut counts = self.counts.clone();
        for (&l, &m) in &other.counts {
            *counts.entry(l).or_insert(0) += m;
        }
        Permutation { counts }
    }

    pub fn scaled(&self, k: u64) -> Permutation {
        if k == 0 {
            return Permutation::empty();
        }
        Permutation {
            counts: self.counts.iter().map(|(&l, &m)| (l, m * k)).collect(),
        }
    }

    pub fn product(&self, other: &Permutation) -> Permutation {
        let mut counts = BTreeMap::new();
        for (&a, &ma) in &self.counts {
            for (&b, &mb) in &other.counts {
                *counts.entry(lcm(a, b)).or_insert(0) += ma * mb * gcd(a, b);
            }
        }
        Permutation { counts }
    }

    pub fn pow(&self, k: u32) -> Permutation {
        let mut acc = Permutation::cycle(1);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }
}

/// `cycle_product(a, b)` = gcd(a,b) copies of the lcm(a,b) cycle.
pub fn cycle_product(a: u64, b: u64) -> Permutation {
    assert!(a >= 1 && b >= 1);
    Permutation::from_counts([(lcm(a, b), gcd(a, b))])
}

/// The scalar with `prod_{j in J} C_j = delta(J) * C_lcm(J)`.
///
/// `delta(empty) = 1`, and inserting `a` multiplies by `gcd(a, lcm so far)`;
/// the result does not depend on the insertion order.
pub fn delta(multiset: &[u64]) -> u64 {
    let mut d = 1u64;
    let mut l = 1u64;
    for &a in multiset {
        d *= gcd(a, l);
        l = lcm(a, l);
    }
    d
}

/// lcm of a multiset, 1 when empty.
pub fn lcm_of(multiset: &[u64]) -> u64 {
    multiset.iter().fold(1, |acc, &a| lcm(acc, a))
}

/// True exactly when the system has a fixpoint.
pub fn is_cancellative(a: &Fds) -> bool {
    a.has_fixpoint()
}

/// The pair witnessing non-cancellativity of every cycle in a generating
/// set: two distinct permutations with equal products against each `C_a`.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub x: Permutation,
    pub x_prime: Permutation,
    /// Per subset `I` of the generating set: (I, alpha_I, alpha'_I).
    pub table: Vec<(Vec<u64>, u64, u64)>,
}

/// Builds `X != X'` with `C_a X = C_a X'` for every `a` in the set.
///
/// For every subset `I` of the set, `alpha_I` is the constant
/// `delta(set) * prod(set)` and `alpha'_I` adds the alternating correction
/// `(-1)^|I| delta(I) prod(set \ I)`; the products are verified before
/// returning.
pub fn chinese_witness(lengths: &[u64]) -> WitnessPair {
    assert!(!lengths.is_empty(), "generating set must be nonempty");
    assert!(lengths.iter().all(|&a| a >= 2), "entries must exceed 1");
    let mut set: Vec<u64> = lengths.to_vec();
    set.sort_unstable();
    set.dedup();
    let full_product: u64 = set.iter().product();
    let alpha = delta(&set) * full_product;

    let mut x = Permutation::empty();
    let mut x_prime = Permutation::empty();
    let mut table = Vec::new();
    for mask in 0u32..(1 << set.len()) {
        let subset: Vec<u64> = set
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let complement_product: u64 = set
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 0)
            .map(|(_, &a)| a)
            .product();
        let correction = delta(&subset) * complement_product;
        let alpha_prime = if subset.len().is_multiple_of(2) {
            alpha + correction
        } else {
            alpha
                .checked_sub(correction)
                .expect("alternating correction stays nonnegative")
        };
        let support = lcm_of(&subset);
        x = x.add(&Permutation::cycle(support).scaled(alpha));
        x_prime = x_prime.add(&Permutation::cycle(support).scaled(alpha_prime));
        table.push((subset, alpha, alpha_prime));
    }

    debug_assert_ne!(x, x_prime);
    for &a in &set {
        let ca = Permutation::cycle(a);
        assert_eq!(
            ca.product(&x),
            ca.product(&x_prime),
            "witness verification failed for C_{a}"
        );
    }
    WitnessPair { x, x_prime, table }
}

/// For a fixpoint-free system, two distinct systems with equal products
/// against it. Panics on systems with a fixpoint.
pub fn noncancellative_witness(a: &Fds) -> (Fds, Fds) {
    assert!(!a.has_fixpoint(), "witness exists only without a fixpoint");
    if a.is_empty() {
        // Everything annihilates against the empty system.
        return (Fds::identity(), Fds::identity().sum(&Fds::identity()));
    }
    let mut lengths = Permutation::from_fds(a).lengths();
    lengths.retain(|&l| l >= 2);
    let pair = chinese_witness(&lengths);
    (pair.x.to_fds(), pair.x_prime.to_fds())
}

/// The unique permutation k-th root, solved in increasing cycle length.
///
/// For each length `i` the equation sum over k-tuples with lcm `i` of
/// `delta * prod lambda^B` equals `lambda^A_i`; it is strictly increasing in
/// `lambda^B_i`, so a monotone integer search finds the only candidate. A
/// final re-powering check rejects roots whose cross terms disagree.
pub fn perm_kth_root(p: &Permutation, k: u32) -> Option<Permutation> {
    assert!(k >= 1);
    if k == 1 {
        return Some(p.clone());
    }
    let mut root = Permutation::empty();
    for &i in &p.lengths() {
        let lower: Vec<u64> = (1..i).filter(|d| i % d == 0).collect();
        // Contribution of tuples avoiding length i; their own lcm must be i.
        let mut base = 0u64;
        for m in multisets_of(&lower, k as usize) {
            if lcm_of(&m) != i {
                continue;
            }
            base += tuple_count(&m)
                * delta(&m)
                * m.iter().map(|&l| root.multiplicity(l)).product::<u64>();
        }
        let target = p.multiplicity(i);
        if base > target {
            return None;
        }
        // Coefficient of x^j over tuples using length i exactly j times;
        // any divisors fill the rest, the i-entries close the lcm.
        let mut coeff = vec![0u64; k as usize + 1];
        for (j, slot) in coeff.iter_mut().enumerate().skip(1) {
            for mut m in multisets_of(&lower, k as usize - j) {
                let known: u64 = m.iter().map(|&l| root.multiplicity(l)).product();
                for _ in 0..j {
                    m.push(i);
                }
                *slot += tuple_count(&m) * delta(&m) * known;
            }
        }
        // coeff[k] = i^(k-1) > 0, so the evaluation is strictly increasing.
        let eval = |x: u64| -> u64 {
            base + (1..=k as usize)
                .map(|j| coeff[j] * x.pow(j as u32))
                .sum::<u64>()
        };
        let mut x = 0u64;
        loop {
            let v = eval(x);
            if v == target {
                break;
            }
            if v > target {
                return None;
            }
            x += 1;
        }
        if x > 0 {
            root = root.add(&Permutation::cycle(i).scaled(x));
        }
    }
    if root.pow(k) == *p {
        Some(root)
    } else {
        None
    }
}

/// All nondecreasing k-element multisets over `pool`.
fn multisets_of(pool: &[u64], k: usize) -> Vec<Vec<u64>> {
    fn rec(pool: &[u64], k: usize, start: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for idx in start..pool.len() {
            current.push(pool[idx]);
            rec(pool, k, idx, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of ordered k-tuples realising a nondecreasing multiset.
fn tuple_count(multiset: &[u64]) -> u64 {
    let k = multiset.len() as u64;
    let mut total = factorial(k);
    let mut run = 1u64;
    for w in multiset.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            total /= factorial(run);
            run = 1;
        }
    }
    total /= factorial(run);
    total
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Lifts a witness pair through the anchored-trees identity: multiplying a
/// connected component `C_k(T_1..T_k)` by a permutation re-anchors the same
/// trees on the product of the cycles.
pub fn anchored_component_times_permutation(
    cycle_len: u32,
    trees: &[Tree],
    p: &Permutation,
) -> Fds {
    let cycles = Permutation::cycle(cycle_len as u64).product(p);
    let mut out = Fds::empty();
    for (&l, &m) in cycles.counts() {
        // Every cycle length in the product is a multiple of cycle_len, so
        // the tree sequence tiles around it.
        debug_assert_eq!(l % cycle_len as u64, 0);
        let tiled: Vec<Tree> = (0..l)
            .map(|i| trees[(i % cycle_len as u64) as usize].clone())
            .collect();
        for _ in 0..m {
            out = out.sum(&anchor_trees(l as u32, &tiled));
        }
    }
    out
}

/// Parses the permutation format: one "length multiplicity" pair per line.
pub fn parse_permutation(text: &str) -> Result<Permutation, String> {
    let mut counts = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let len: u64 = parts
            .next()
            .ok_or("missing cycle length")?
            .parse()
            .map_err(|e| format!("bad length: {e}"))?;
        let mult: u64 = parts
            .next()
            .ok_or("missing multiplicity")?
            .parse()
            .map_err(|e| format!("bad multiplicity: {e}"))?;
        if len == 0 {
            return Err("cycle length must be positive".into());
        }
        counts.push((len, mult));
    }
    Ok(Permutation::from_counts(counts))
}

/// Writes the permutation format with a trailing newline.
pub fn format_permutation(p: &Permutation) -> String {
    let mut out = String::new();
    for (len, mult) in p.counts() {
        out.push_str(&format!("{len} {mult}\n"));
    }
    out
}
