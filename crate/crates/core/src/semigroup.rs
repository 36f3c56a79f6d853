//! The numerical semigroup ⟨d₁,d₂,d₃⟩ and its construction from the
//! consecutive-power families ⟨(n−1)^k, n^k, (n+1)^k⟩.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// A numerical semigroup given by three generators, sorted ascending.
///
/// Invariants enforced on construction: all generators ≥ 1, the smallest is
/// ≥ 3, and gcd(d₁,d₂,d₃) = 1 so the complement in ℕ is finite. Repeated or
/// non-minimal generators (e.g. 25 = 9 + 16 in ⟨9,16,25⟩) are accepted; the
/// oracle is generator-set agnostic and minimality is reported, not enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    gens: [BigInt; 3],
    /// Provenance when built as R_n^k = ⟨(n−1)^k, n^k, (n+1)^k⟩.
    provenance: Option<(u32, u64)>,
}

impl Semigroup {
    pub fn new(d1: impl Into<BigInt>, d2: impl Into<BigInt>, d3: impl Into<BigInt>) -> Result<Self> {
        let mut gens = [d1.into(), d2.into(), d3.into()];
        gens.sort();
        if gens[0] < BigInt::from(3) {
            return Err(Error::InvalidSemigroup(format!(
                "smallest generator must be >= 3, got {}",
                gens[0]
            )));
        }
        let g = gens[0].gcd(&gens[1]).gcd(&gens[2]);
        if !g.is_one() {
            return Err(Error::InvalidSemigroup(format!(
                "generators must be globally coprime, gcd = {g}"
            )));
        }
        Ok(Semigroup {
            gens,
            provenance: None,
        })
    }

    /// R_n^k = ⟨(n−1)^k, n^k, (n+1)^k⟩ for n ≥ 3, k ≥ 2.
    ///
    /// Consecutive integers are pairwise coprime up to the shared factor of
    /// n−1 and n+1, which never divides n, so the global gcd is always 1.
    pub fn family(k: u32, n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSemigroup(format!("family index n={n} < 3")));
        }
        if k < 2 {
            return Err(Error::InvalidSemigroup(format!("family power k={k} < 2")));
        }
        let p = |b: u64| BigInt::from(b).pow(k);
        let mut s = Semigroup::new(p(n - 1), p(n), p(n + 1))?;
        s.provenance = Some((k, n));
        Ok(s)
    }

    pub fn gens(&self) -> &[BigInt; 3] {
        &self.gens
    }

    pub fn d1(&self) -> &BigInt {
        &self.gens[0]
    }
    pub fn d2(&self) -> &BigInt {
        &self.gens[1]
    }
    pub fn d3(&self) -> &BigInt {
        &self.gens[2]
    }

    /// `(k, n)` when this semigroup was constructed via [`Semigroup::family`].
    pub fn provenance(&self) -> Option<(u32, u64)> {
        self.provenance
    }

    /// The generators as machine integers, when they fit.
    pub fn small_gens(&self) -> Option<[u64; 3]> {
        let a = self.gens[0].to_u64()?;
        let b = self.gens[1].to_u64()?;
        let c = self.gens[2].to_u64()?;
        Some([a, b, c])
    }

    /// D₃ = d₁ + d₂ + d₃.
    pub fn gen_sum(&self) -> BigInt {
        &self.gens[0] + &self.gens[1] + &self.gens[2]
    }

    /// Generators that are not representable by the other two; a generator
    /// like 25 in ⟨9,16,25⟩ is redundant and drops out here.
    pub fn minimal_generators(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for i in 0..3 {
            let others: Vec<&BigInt> = (0..3).filter(|&j| j != i).map(|j| &self.gens[j]).collect();
            if crate::pairs::representable_by_pair(&self.gens[i], others[0], others[1]).is_none() {
                out.push(self.gens[i].clone());
            }
        }
        out.dedup();
        out
    }

    pub fn is_minimally_generated(&self) -> bool {
        self.minimal_generators().len() == 3
            && self.gens[0] < self.gens[1]
            && self.gens[1] < self.gens[2]
    }
}

impl std::fmt::Display for Semigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{},{},{}>", self.gens[0], self.gens[1], self.gens[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_generators_sorted_and_coprime() {
        let s = Semigroup::family(3, 4).unwrap();
        assert_eq!(s.small_gens(), Some([27, 64, 125]));
        assert_eq!(s.provenance(), Some((3, 4)));
    }

    #[test]
    fn rejects_common_factor() {
        assert!(Semigroup::new(4, 6, 8).is_err());
        assert!(Semigroup::new(2, 3, 5).is_err()); // d1 < 3
        assert!(Semigroup::new(3, 4, 5).is_ok());
    }

    #[test]
    fn non_minimal_generator_detected() {
        let s = Semigroup::new(9, 16, 25).unwrap();
        assert!(!s.is_minimally_generated());
        assert_eq!(
            s.minimal_generators(),
            vec![BigInt::from(9), BigInt::from(16)]
        );
        assert!(Semigroup::new(27, 64, 125).unwrap().is_minimally_generated());
    }
}
