//! Two-generator representability: nonnegative solutions of x·da + y·db = M.
//!
//! This is the subproblem behind every minimal-relation row v·dⱼ = x·dᵢ + y·dₖ
//! and behind the membership side of the symmetry conditions. The decision is
//! O(1) modular arithmetic, never an enumeration, so it stays exact for the
//! multi-thousand-digit generators of the high-power scans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Least nonnegative solution of `a·x ≡ m (mod n)` for `gcd(a, n) = 1`, n ≥ 1.
pub fn mod_solve(a: &BigInt, m: &BigInt, n: &BigInt) -> BigInt {
    if n.is_zero() {
        return m.clone();
    }
    let e = a.extended_gcd(n);
    debug_assert!(e.gcd.is_one(), "mod_solve requires gcd(a,n)=1");
    let x = (e.x * m) % n;
    if x.is_negative() {
        x + n
    } else {
        x
    }
}

use num_traits::One;

/// Some `(x, y)` with `x·da + y·db = m`, `x, y ≥ 0`, if one exists; the
/// returned solution has minimal `y`. Negative `m` yields `None`.
pub fn representable_by_pair(m: &BigInt, da: &BigInt, db: &BigInt) -> Option<(BigInt, BigInt)> {
    if m.is_negative() {
        return None;
    }
    let g = da.gcd(db);
    let (m_red, rem) = m.div_rem(&g);
    if !rem.is_zero() {
        return None;
    }
    let a = da / &g;
    let b = db / &g;
    // y ≡ m_red · b⁻¹ (mod a); minimal such y, then x from the remainder.
    let y = mod_solve(&b, &m_red, &a);
    let used = &y * &b;
    if used > m_red {
        return None;
    }
    let x = (m_red - used) / a;
    Some((x, y))
}

/// Membership of `m` in the two-generator semigroup ⟨da, db⟩.
pub fn pair_member(m: &BigInt, da: &BigInt, db: &BigInt) -> bool {
    representable_by_pair(m, da, db).is_some()
}

/// Frobenius number of ⟨a, b⟩ with gcd(a,b) = 1, a,b ≥ 2: ab − a − b.
pub fn pair_frobenius(a: &BigInt, b: &BigInt) -> BigInt {
    a * b - a - b
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Exhaustive oracle: scan all x with x·da ≤ m.
    fn brute(m: u64, da: u64, db: u64) -> Option<(u64, u64)> {
        let mut best: Option<(u64, u64)> = None;
        for x in 0..=m / da {
            let rest = m - x * da;
            if rest % db == 0 {
                let y = rest / db;
                if best.map_or(true, |(_, by)| y < by) {
                    best = Some((x, y));
                }
            }
        }
        best
    }

    fn rep(m: u64, da: u64, db: u64) -> Option<(u64, u64)> {
        representable_by_pair(&BigInt::from(m), &BigInt::from(da), &BigInt::from(db))
            .map(|(x, y)| (x.to_u64().unwrap(), y.to_u64().unwrap()))
    }

    #[test]
    fn examples() {
        assert_eq!(rep(91, 27, 64), Some((1, 1)));
        assert_eq!(rep(20, 9, 16), None);
        // cross-checked against the exhaustive scan
        assert_eq!(brute(250, 27, 64), None);
        assert_eq!(rep(250, 27, 64), None);
        assert_eq!(rep(0, 5, 7), Some((0, 0)));
    }

    #[test]
    fn negative_rejected() {
        assert!(representable_by_pair(&BigInt::from(-3), &BigInt::from(2), &BigInt::from(3)).is_none());
    }

    #[test]
    fn minimal_y_and_agreement_with_brute() {
        for da in [4u64, 9, 12, 27] {
            for db in [6u64, 16, 25, 64] {
                for m in 0..400 {
                    assert_eq!(rep(m, da, db), brute(m, da, db), "m={m} da={da} db={db}");
                }
            }
        }
    }

    #[test]
    fn two_gen_frobenius() {
        // F(⟨9,16⟩) = 119: largest non-representable
        let f = pair_frobenius(&BigInt::from(9), &BigInt::from(16));
        assert_eq!(f, BigInt::from(119));
        assert_eq!(brute(119, 9, 16), None);
        for m in 120..200 {
            assert!(brute(m, 9, 16).is_some());
        }
    }
}
