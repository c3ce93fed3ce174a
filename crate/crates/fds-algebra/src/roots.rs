//! k-th roots of systems and injectivity of semiring polynomials.
//!
//! The permutation part of a root is solved exactly by the triangular
//! equations on cycle counts. The transient part is recovered support by
//! support: for each cycle length of the root, the decorated components are
//! found by bounded search over anchored-tree decorations, validated by
//! exact re-multiplication. Root uniqueness guarantees at most one survivor
//! at every stage.

use crate::cycles::{perm_kth_root, Permutation};
use crate::fds::{iso_eq, Fds};
use crate::oracle::connected_classes_with_cycle;
use std::fmt;

/// A polynomial over the semiring of systems, coefficients `a_0..a_d`.
#[derive(Clone, Debug)]
pub struct NatPolynomial {
    pub coefficients: Vec<Fds>,
}

impl NatPolynomial {
    pub fn new(coefficients: Vec<Fds>) -> Self {
        NatPolynomial { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Evaluates the polynomial by iterated product and sum.
pub fn poly_eval(p: &NatPolynomial, a: &Fds) -> Fds {
    let mut power = Fds::identity();
    let mut acc = Fds::empty();
    for (i, coeff) in p.coefficients.iter().enumerate() {
        if i > 0 {
            power = power.product(a);
        }
        acc = acc.sum(&coeff.product(&power));
    }
    acc
}

/// Why no k-th root was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootError {
    /// |a| is not a perfect k-th power.
    NotPerfectPower,
    /// The triangular solve on the periodic part has no solution.
    NoPermutationRoot,
    /// No decoration of some support reproduces the target.
    SearchExhausted,
}

impl RootError {
    pub fn reason(&self) -> &'static str {
        match self {
            RootError::NotPerfectPower => "not-a-perfect-power",
            RootError::NoPermutationRoot => "no-permutation-root",
            RootError::SearchExhausted => "search-exhausted",
        }
    }
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

impl std::error::Error for RootError {}

fn integer_kth_root(n: u64, k: u32) -> Option<u64> {
    if n <= 1 {
        return Some(n);
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r.pow(k) > n {
        r -= 1;
    }
    while (r + 1).pow(k) <= n {
        r += 1;
    }
    (r.pow(k) == n).then_some(r)
}

/// The unique `b` with `b^k = a`, or why none exists.
///
/// After the periodic part is solved, the transient decorations are found
/// level by level over the root's cycle lengths. A candidate prefix must
/// reproduce the dividend's support at its level: the support of a power is
/// the truncated power of the support (products of short cycles can spill
/// into longer ones, so the support is applied on both sides). Backtracking
/// over the level survivors ends in a full re-multiplication check, and
/// root uniqueness leaves at most one survivor overall.
pub fn kth_root(a: &Fds, k: u32) -> Result<Fds, RootError> {
    assert!(k >= 1);
    if k == 1 {
        return Ok(a.clone());
    }
    if a.is_empty() {
        return Ok(Fds::empty());
    }
    let root_size = integer_kth_root(a.size(), k).ok_or(RootError::NotPerfectPower)?;
    let periodic =
        perm_kth_root(&Permutation::from_fds(a), k).ok_or(RootError::NoPermutationRoot)?;
    let lengths = periodic.lengths();
    search_levels(a, k, &periodic, &lengths, &Fds::empty(), root_size)
        .ok_or(RootError::SearchExhausted)
}

fn search_levels(
    a: &Fds,
    k: u32,
    periodic: &Permutation,
    lengths: &[u64],
    prefix: &Fds,
    budget: u64,
) -> Option<Fds> {
    let Some((&len, rest)) = lengths.split_first() else {
        return (budget == 0 && iso_eq(&prefix.pow(k), a)).then(|| prefix.clone());
    };
    let copies = periodic.multiplicity(len);
    let reserve: u64 = rest.iter().map(|&l| l * periodic.multiplicity(l)).sum();
    let target = a.supp_le(len);
    let max_total = budget.checked_sub(reserve)?;
    for total in copies * len..=max_total {
        if rest.is_empty() && total != budget {
            continue;
        }
        for decoration in component_multisets(len, copies, total) {
            let mut cand = prefix.clone();
            for c in &decoration {
                cand = cand.sum(c);
            }
            if !iso_eq(&cand.pow(k).supp_le(len), &target) {
                continue;
            }
            if let Some(found) = search_levels(a, k, periodic, rest, &cand, budget - total) {
                return Some(found);
            }
        }
    }
    None
}

/// Multisets of `copies` connected systems with the given cycle length and
/// total size `budget`.
fn component_multisets(cycle_len: u64, copies: u64, budget: u64) -> Vec<Vec<Fds>> {
    fn rec(
        cycle_len: u64,
        copies: u64,
        budget: u64,
        max_size: u64,
        below_idx: usize,
        acc: &mut Vec<Fds>,
        out: &mut Vec<Vec<Fds>>,
    ) {
        if copies == 0 {
            if budget == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let reserve = (copies - 1) * cycle_len;
        if budget < cycle_len + reserve {
            return;
        }
        for size in (cycle_len..=(budget - reserve).min(max_size)).rev() {
            let pool = connected_classes_with_cycle(cycle_len, size);
            let limit = if size == max_size {
                below_idx.min(pool.len())
            } else {
                pool.len()
            };
            for (idx, comp) in pool.iter().enumerate().take(limit) {
                acc.push(comp.clone());
                rec(
                    cycle_len,
                    copies - 1,
                    budget - size,
                    size,
                    idx + 1,
                    acc,
                    out,
                );
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(
        cycle_len,
        copies,
        budget,
        u64::MAX,
        usize::MAX,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// One colliding pair found by the injectivity probe.
#[derive(Clone, Debug)]
pub struct InjectivityViolation {
    pub first: Fds,
    pub second: Fds,
    pub image: Fds,
}

/// Outcome of exhaustively testing `P(A) = P(B) => A = B` up to a size.
pub struct InjectivityReport {
    pub size_bound: u64,
    pub classes_tested: usize,
    pub violations: Vec<InjectivityViolation>,
}

impl InjectivityReport {
    pub fn is_injective(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the polynomial on every class of size at most `size_bound` and
/// reports every collision of non-isomorphic arguments.
pub fn check_poly_injectivity(p: &NatPolynomial, size_bound: u64) -> InjectivityReport {
    let classes = crate::oracle::fds_classes_up_to(size_bound);
    let mut by_image: std::collections::HashMap<crate::fds::FdsCode, usize> =
        std::collections::HashMap::new();
    let mut violations = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        let image = poly_eval(p, a);
        let code = image.canonical_code();
        if let Some(&j) = by_image.get(&code) {
            violations.push(InjectivityViolation {
                first: classes[j].clone(),
                second: a.clone(),
                image,
            });
        } else {
            by_image.insert(code, i);
        }
    }
    InjectivityReport {
        size_bound,
        classes_tested: classes.len(),
        violations,
    }
}
