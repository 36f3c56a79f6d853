//! Brute-force oracle for membership, Apéry sets, gaps, Frobenius number,
//! genus, symmetry and truncated Hilbert series.
//!
//! The Apéry set w.r.t. a generator d is computed by shortest-path relaxation
//! over the d residue classes, with the two remaining generators as edge
//! weights. Since there are only two distinct weights, a pair of FIFO queues
//! replaces the usual binary heap: parents are finalized in nondecreasing
//! value order, so each queue's candidate values are already sorted and the
//! global minimum is one comparison. O(d) time, O(d) memory, no heap churn.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Default bound on the number of residue classes a single sieve may use.
pub const DEFAULT_APERY_CAP: u64 = 100_000_000;

/// Listing every gap is refused beyond this genus; the count is still exact.
const GAP_LIST_LIMIT: u128 = 50_000_000;

/// Apéry set of a semigroup with respect to one generator `base`:
/// `elements[r]` is the least semigroup element congruent to r (mod base).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    base: u64,
    elements: Vec<u64>,
}

impl AperyTable {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Largest integer outside the semigroup: max(elements) − base.
    pub fn frobenius(&self) -> u64 {
        self.elements.iter().copied().max().unwrap() - self.base
    }

    /// Number of gaps: Σ elements / base − (base−1)/2.
    pub fn genus(&self) -> u128 {
        let sum: u128 = self.elements.iter().map(|&w| w as u128).sum();
        let d = self.base as u128;
        (2 * sum - d * (d - 1)) / (2 * d)
    }

    /// Membership via the table: x ∈ S iff x ≥ element of its class.
    pub fn contains(&self, x: u64) -> bool {
        x >= self.elements[(x % self.base) as usize]
    }
}

fn cap_err(what: &'static str, needed: impl ToString, cap: impl ToString) -> Error {
    Error::ResourceCap {
        what,
        needed: needed.to_string(),
        cap: cap.to_string(),
    }
}

/// Apéry set of `s` w.r.t. the generator `d` (one of the three), capped at
/// `cap` residue classes.
pub fn apery_set(s: &Semigroup, d: &BigInt, cap: u64) -> Result<AperyTable> {
    if !s.gens().iter().any(|g| g == d) {
        return Err(Error::InvalidSemigroup(format!(
            "apery base {d} is not a generator of {s}"
        )));
    }
    let base = d
        .to_u64()
        .filter(|&v| v <= cap)
        .ok_or_else(|| cap_err("apery sieve residue classes", d, cap))?;
    let mut weights = Vec::with_capacity(2);
    let mut skipped_base = false;
    for g in s.gens() {
        if g == d && !skipped_base {
            skipped_base = true;
            continue;
        }
        // A generator beyond u64 would overflow the value arithmetic;
        // escalate rather than wrap.
        weights.push(g.to_u64().ok_or(Error::Overflow("apery sieve edge weight"))?);
    }
    apery_sieve(base, &weights)
}

fn apery_sieve(d: u64, weights: &[u64]) -> Result<AperyTable> {
    // steps that stay inside their class never improve a distance
    let mut steps: Vec<(u64, u64)> = weights
        .iter()
        .copied()
        .filter(|&w| w % d != 0)
        .map(|w| (w, w % d))
        .collect();
    steps.sort_unstable();
    steps.dedup();

    let n = d as usize;
    const UNSET: u64 = u64::MAX;
    let mut dist = vec![UNSET; n];
    dist[0] = 0;

    // One FIFO of finalized parents per edge weight; the head's candidate
    // value is dist[parent] + weight, nondecreasing over pops.
    let mut queues: Vec<VecDeque<u32>> = steps.iter().map(|_| VecDeque::new()).collect();
    for q in queues.iter_mut() {
        q.push_back(0u32);
    }

    loop {
        let mut best: Option<(u64, usize)> = None;
        for (qi, q) in queues.iter().enumerate() {
            if let Some(&parent) = q.front() {
                let cand = dist[parent as usize]
                    .checked_add(steps[qi].0)
                    .ok_or(Error::Overflow("apery sieve value"))?;
                if best.map_or(true, |(bv, _)| cand < bv) {
                    best = Some((cand, qi));
                }
            }
        }
        let Some((value, qi)) = best else { break };
        let parent = queues[qi].pop_front().unwrap() as u64;
        let child = {
            let c = parent + steps[qi].1;
            if c >= d {
                c - d
            } else {
                c
            }
        };
        let slot = &mut dist[child as usize];
        if *slot == UNSET {
            *slot = value;
            for q in queues.iter_mut() {
                q.push_back(child as u32);
            }
        }
    }

    if dist.iter().any(|&v| v == UNSET) {
        // unreachable for gcd(d1,d2,d3)=1, kept as a hard consistency check
        return Err(Error::Inconsistent(
            "apery sieve left residue classes unreached".into(),
        ));
    }
    Ok(AperyTable {
        base: d,
        elements: dist,
    })
}

/// Apéry table w.r.t. the smallest generator, the cheapest oracle entry point.
pub fn apery_min(s: &Semigroup, cap: u64) -> Result<AperyTable> {
    apery_set(s, &s.d1().clone(), cap)
}

/// Largest integer not in `s`.
pub fn frobenius_oracle(s: &Semigroup, cap: u64) -> Result<BigInt> {
    Ok(BigInt::from(apery_min(s, cap)?.frobenius()))
}

/// Number of gaps of `s`.
pub fn genus_oracle(s: &Semigroup, cap: u64) -> Result<BigInt> {
    Ok(BigInt::from(apery_min(s, cap)?.genus()))
}

/// All gaps, sorted ascending.
pub fn gaps(s: &Semigroup, cap: u64) -> Result<Vec<u64>> {
    let table = apery_min(s, cap)?;
    let g = table.genus();
    if g > GAP_LIST_LIMIT {
        return Err(cap_err("gap listing", g, GAP_LIST_LIMIT));
    }
    let d = table.base();
    let mut out = Vec::with_capacity(g as usize);
    for &w in table.elements() {
        // the gaps in this class are w−d, w−2d, …, down to the residue
        let mut x = w;
        while x >= d {
            x -= d;
            if x > 0 {
                out.push(x);
            }
        }
    }
    out.sort_unstable();
    debug_assert_eq!(out.len() as u128, g);
    Ok(out)
}

/// True iff the gap set is closed under x ↦ F − x, equivalently 2G = F + 1.
pub fn is_symmetric_oracle(s: &Semigroup, cap: u64) -> Result<bool> {
    let t = apery_min(s, cap)?;
    Ok(2 * t.genus() == t.frobenius() as u128 + 1)
}

/// Membership test backed by the Apéry table.
pub fn membership(s: &Semigroup, x: &BigInt, cap: u64) -> Result<bool> {
    if x.is_negative() {
        return Err(Error::NegativeArgument(x.clone()));
    }
    let t = apery_min(s, cap)?;
    let r = (x % BigInt::from(t.base())).to_u64().unwrap();
    Ok(*x >= BigInt::from(t.elements()[r as usize]))
}

/// Indicator coefficients of the Hilbert series, truncated at degree `n`:
/// entry i is true iff i ∈ S.
pub fn hilbert_series_truncated(s: &Semigroup, n: usize) -> Vec<bool> {
    let gens: Vec<usize> = s
        .gens()
        .iter()
        .filter_map(|g| g.to_usize())
        .filter(|&g| g <= n)
        .collect();
    dp_members(&gens, n)
}

/// Plain dynamic-programming membership sieve over arbitrary generators;
/// the independent cross-check for the modular machinery.
pub fn dp_members(gens: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for i in 1..=n {
        for &g in gens {
            if g <= i && s[i - g] {
                s[i] = true;
                break;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(a: u64, b: u64, c: u64) -> Semigroup {
        Semigroup::new(a, b, c).unwrap()
    }

    #[test]
    fn apery_small() {
        let t = apery_set(&sg(3, 4, 5), &BigInt::from(3), DEFAULT_APERY_CAP).unwrap();
        assert_eq!(t.elements(), &[0, 4, 5]);
        assert_eq!(t.frobenius(), 2);
        assert_eq!(t.genus(), 2);
    }

    #[test]
    fn apery_respects_base_choice() {
        let s = sg(9, 16, 25);
        let t = apery_set(&s, &BigInt::from(9), DEFAULT_APERY_CAP).unwrap();
        assert_eq!(t.elements().iter().max(), Some(&128));
        assert_eq!(t.frobenius(), 119);
        // Every base gives the same F and G.
        for base in [16u64, 25] {
            let tb = apery_set(&s, &BigInt::from(base), DEFAULT_APERY_CAP).unwrap();
            assert_eq!(tb.frobenius(), 119);
            assert_eq!(tb.genus(), t.genus());
        }
    }

    #[test]
    fn apery_structure_against_dp() {
        let s = sg(25, 36, 49);
        let t = apery_min(&s, DEFAULT_APERY_CAP).unwrap();
        assert_eq!(t.elements().len(), 25);
        assert_eq!(t.frobenius(), 312);
        let members = dp_members(&[25, 36, 49], 1000);
        for (r, &w) in t.elements().iter().enumerate() {
            assert_eq!(w as usize % 25, r);
            assert!(members[w as usize], "apery element {w} not a member");
            assert!(
                w < 25 || !members[(w - 25) as usize],
                "apery element {w} not minimal in its class"
            );
        }
    }

    #[test]
    fn frobenius_examples() {
        let cap = DEFAULT_APERY_CAP;
        assert_eq!(frobenius_oracle(&sg(3, 4, 5), cap).unwrap(), BigInt::from(2));
        assert_eq!(
            frobenius_oracle(&sg(25, 36, 49), cap).unwrap(),
            BigInt::from(312)
        );
        assert_eq!(
            frobenius_oracle(&sg(125, 216, 343), cap).unwrap(),
            BigInt::from(5249)
        );
    }

    #[test]
    fn genus_examples() {
        let cap = DEFAULT_APERY_CAP;
        assert_eq!(genus_oracle(&sg(3, 4, 5), cap).unwrap(), BigInt::from(2));
        assert_eq!(genus_oracle(&sg(25, 36, 49), cap).unwrap(), BigInt::from(167));
        assert_eq!(genus_oracle(&sg(27, 64, 125), cap).unwrap(), BigInt::from(558));
    }

    #[test]
    fn gaps_examples() {
        let cap = DEFAULT_APERY_CAP;
        assert_eq!(gaps(&sg(3, 4, 5), cap).unwrap(), vec![1, 2]);

        let g = gaps(&sg(9, 16, 25), cap).unwrap();
        assert_eq!(g.len(), 60);
        assert_eq!(*g.last().unwrap(), 119);
        // symmetric case: G = (F+1)/2
        assert_eq!(2 * 60, 119 + 1);

        let g = gaps(&sg(25, 36, 49), cap).unwrap();
        assert_eq!(g.len(), 167);
        assert_eq!(*g.last().unwrap(), 312);
        // consistency with the DP sieve
        let members = dp_members(&[25, 36, 49], 312);
        let brute: Vec<u64> = (1..=312u64).filter(|&x| !members[x as usize]).collect();
        assert_eq!(g, brute);
    }

    #[test]
    fn symmetry_examples() {
        let cap = DEFAULT_APERY_CAP;
        assert!(is_symmetric_oracle(&sg(9, 16, 25), cap).unwrap());
        assert!(!is_symmetric_oracle(&sg(25, 36, 49), cap).unwrap());
        assert!(is_symmetric_oracle(&sg(256, 625, 1296), cap).unwrap());
    }

    #[test]
    fn membership_examples() {
        let cap = DEFAULT_APERY_CAP;
        let s = sg(27, 64, 125);
        assert!(membership(&s, &BigInt::from(91), cap).unwrap());
        assert!(!membership(&s, &BigInt::from(1098), cap).unwrap());
        assert!(membership(&s, &BigInt::from(1099), cap).unwrap());
        assert!(membership(&s, &BigInt::from(0), cap).unwrap());
        assert!(membership(&s, &BigInt::from(-1), cap).is_err());
        // 1099 cross-checked by brute DP
        assert!(dp_members(&[27, 64, 125], 1099)[1099]);
    }

    #[test]
    fn hilbert_truncation() {
        let h = hilbert_series_truncated(&sg(3, 4, 5), 6);
        assert_eq!(h, vec![true, false, false, true, true, true, true]);

        let h = hilbert_series_truncated(&sg(27, 64, 125), 1098 + 500);
        assert!(!h[1098]);
        assert!(h[1099..].iter().all(|&b| b));

        let h = hilbert_series_truncated(&sg(25, 36, 49), 312);
        let zeros = h[1..].iter().filter(|&&b| !b).count();
        assert_eq!(zeros, 167);
    }

    #[test]
    fn cap_is_enforced() {
        let s = sg(101, 103, 107);
        match apery_min(&s, 100) {
            Err(Error::ResourceCap { cap, .. }) => assert_eq!(cap, "100"),
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
