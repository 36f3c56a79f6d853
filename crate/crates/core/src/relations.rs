//! Minimal-relation matrices of nonsymmetric 3-generated semigroups and the
//! invariants they determine: syzygy degrees b₁₁/b₂₂, pseudo-Frobenius
//! numbers, Frobenius number, genus, and the six-term Hilbert numerator.
//!
//! For each generator dⱼ the diagonal entry is the least multiplier v ≥ 2
//! such that v·dⱼ is a nonnegative combination of the other two generators.
//! The off-diagonal entries are the combination coefficients; among all
//! candidate representations per row, exactly one combination satisfies the
//! column identities and generator recovery for a nonsymmetric semigroup — we
//! verify that rather than trust it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pairs::mod_solve;
use crate::semigroup::Semigroup;

/// Default cap on the diagonal-multiplier search, in candidate steps.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000_000;

/// How many representations of one row we are willing to enumerate.
const REP_LIMIT: usize = 8_192;

/// The 3×3 matrix of minimal relations, stored as nonnegative magnitudes;
/// the sign convention is positive diagonal, negative off-diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    a: [[BigInt; 3]; 3],
}

impl RelationMatrix {
    /// Build from row-major magnitudes.
    pub fn from_magnitudes(a: [[BigInt; 3]; 3]) -> Result<Self> {
        if a.iter().flatten().any(|e| e.is_negative()) {
            return Err(Error::InvalidSemigroup(
                "relation matrix magnitudes must be nonnegative".into(),
            ));
        }
        Ok(RelationMatrix { a })
    }

    pub fn from_i64(a: [[i64; 3]; 3]) -> Result<Self> {
        Self::from_magnitudes(a.map(|row| row.map(BigInt::from)))
    }

    /// Magnitude of entry (i, j), 0-indexed.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i][j]
    }

    /// Entry with the sign convention applied.
    pub fn signed(&self, i: usize, j: usize) -> BigInt {
        if i == j {
            self.a[i][j].clone()
        } else {
            -self.a[i][j].clone()
        }
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.a
    }

    /// Row relation residual aⱼⱼdⱼ − Σ aⱼᵢdᵢ; zero iff the row holds.
    fn row_residual(&self, j: usize, gens: &[BigInt; 3]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..3 {
            acc += self.signed(j, i) * &gens[i];
        }
        acc
    }

    pub fn row_relations_hold(&self, s: &Semigroup) -> bool {
        (0..3).all(|j| self.row_residual(j, s.gens()).is_zero())
    }

    /// a₁₁ = a₂₁+a₃₁ and the two cyclic variants.
    pub fn column_identities_hold(&self) -> bool {
        (0..3).all(|j| {
            let sum: BigInt = (0..3).filter(|&i| i != j).map(|i| &self.a[i][j]).sum();
            sum == self.a[j][j]
        })
    }

    /// d₁ = a₂₂a₃₃ − a₂₃a₃₂ and cyclic variants.
    pub fn generators_recovered(&self, s: &Semigroup) -> bool {
        let a = &self.a;
        let d1 = &a[1][1] * &a[2][2] - &a[1][2] * &a[2][1];
        let d2 = &a[2][2] * &a[0][0] - &a[2][0] * &a[0][2];
        let d3 = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        [d1, d2, d3] == *s.gens()
    }

    pub fn row_gcds_are_one(&self) -> bool {
        self.a
            .iter()
            .all(|row| row[0].gcd(&row[1]).gcd(&row[2]).is_one())
    }

    /// aⱼⱼ ≥ 2 and aᵢⱼ ≥ 1 off the diagonal.
    pub fn strictly_positive(&self) -> bool {
        let two = BigInt::from(2);
        (0..3).all(|i| {
            (0..3).all(|j| {
                if i == j {
                    self.a[i][j] >= two
                } else {
                    !self.a[i][j].is_zero()
                }
            })
        })
    }
}

impl std::fmt::Display for RelationMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..3 {
            writeln!(
                f,
                "[{:>8} {:>8} {:>8}]",
                self.signed(i, 0).to_string(),
                self.signed(i, 1).to_string(),
                self.signed(i, 2).to_string()
            )?;
        }
        Ok(())
    }
}

/// Minimal multiplier v ≥ 2 with v·dⱼ = x·dᵢ + y·dₖ solvable in nonnegative
/// integers, together with every representation (x, y) at that v.
fn min_multiplier(
    dj: &BigInt,
    di: &BigInt,
    dk: &BigInt,
    cap: u64,
) -> Result<(BigInt, Vec<(BigInt, BigInt)>)> {
    let g = di.gcd(dk);
    debug_assert!(g.gcd(dj).is_one());
    let a = di / &g; // coprime pair after the gcd split
    let b = dk / &g;

    // candidates are the multiples of g, starting at the first one ≥ 2
    let v0 = if g >= BigInt::from(2) { g.clone() } else { BigInt::from(2) };

    if let (Some(dj_s), Some(a_s), Some(b_s), Some(g_s), Some(v0_s)) = (
        dj.to_u64(),
        a.to_u64(),
        b.to_u64(),
        g.to_u64(),
        v0.to_u64(),
    ) {
        return min_multiplier_u64(dj_s, a_s, b_s, g_s, v0_s, cap);
    }
    min_multiplier_big(dj, &a, &b, &g, &v0, cap)
}

fn min_multiplier_u64(
    dj: u64,
    a: u64,
    b: u64,
    g: u64,
    v0: u64,
    cap: u64,
) -> Result<(BigInt, Vec<(BigInt, BigInt)>)> {
    // y₀(v) = (v·dj/g)·b⁻¹ mod a advances by a fixed modular step per candidate.
    let big = |x: u64| BigInt::from(x);
    if a == 1 {
        // every multiple of b fits; the first candidate already works
        let m = (v0 as u128 / g as u128) * dj as u128;
        return reps_at(&BigInt::from(m), &big(1), &big(b), big(v0));
    }
    let inv_b = mod_solve(&big(b), &BigInt::one(), &big(a))
        .to_u64()
        .ok_or(Error::Overflow("modular inverse"))?;
    let m_step = dj as u128; // ΔM per candidate (Δv = g)
    let y_step = ((dj as u128 % a as u128) * inv_b as u128 % a as u128) as u64;

    let mut m = (v0 as u128 / g as u128) * dj as u128;
    let mut y = (m % a as u128 * inv_b as u128 % a as u128) as u64;
    let mut v = v0;
    let mut steps = 0u64;
    loop {
        if (y as u128) * (b as u128) <= m {
            return reps_at(&BigInt::from(m), &big(a), &big(b), big(v));
        }
        steps += 1;
        if steps > cap {
            return Err(Error::ResourceCap {
                what: "minimal-relation multiplier search",
                needed: format!("more than {cap} candidates"),
                cap: cap.to_string(),
            });
        }
        v = v.checked_add(g).ok_or(Error::Overflow("multiplier search"))?;
        m += m_step;
        y += y_step;
        if y >= a {
            y -= a;
        }
    }
}

fn min_multiplier_big(
    dj: &BigInt,
    a: &BigInt,
    b: &BigInt,
    g: &BigInt,
    v0: &BigInt,
    cap: u64,
) -> Result<(BigInt, Vec<(BigInt, BigInt)>)> {
    if a.is_one() {
        let m = v0 / g * dj;
        return reps_at(&m, a, b, v0.clone());
    }
    let inv_b = mod_solve(b, &BigInt::one(), a);
    let y_step = dj * &inv_b % a;
    let mut m = v0 / g * dj;
    let mut y = &m * &inv_b % a;
    let mut v = v0.clone();
    let mut steps = 0u64;
    loop {
        if &y * b <= m {
            return reps_at(&m, a, b, v);
        }
        steps += 1;
        if steps > cap {
            return Err(Error::ResourceCap {
                what: "minimal-relation multiplier search",
                needed: format!("more than {cap} candidates"),
                cap: cap.to_string(),
            });
        }
        v += g;
        m += dj;
        y += &y_step;
        if y >= *a {
            y -= a;
        }
    }
}

/// All nonnegative solutions of x·a + y·b = m given the minimal-y one exists;
/// x is scaled back by the gcd split on return.
fn reps_at(
    m: &BigInt,
    a: &BigInt,
    b: &BigInt,
    v: BigInt,
) -> Result<(BigInt, Vec<(BigInt, BigInt)>)> {
    let mut y = if a.is_one() {
        BigInt::zero()
    } else {
        mod_solve(b, m, a)
    };
    let mut reps = Vec::new();
    while &y * b <= *m {
        let x = (m - &y * b) / a;
        reps.push((x, y.clone()));
        y += a;
        if reps.len() > REP_LIMIT {
            return Err(Error::Inconsistent(format!(
                "row representation enumeration exceeded {REP_LIMIT} solutions"
            )));
        }
    }
    Ok((v, reps))
}

/// The minimal-relation matrix of a nonsymmetric semigroup.
///
/// Each row's representations are computed independently; the combination
/// satisfying the column identities and generator recovery is selected and
/// must be unique. No valid combination means the semigroup is symmetric or
/// otherwise outside the framework; several mean the input is ambiguous.
pub fn minimal_relation_matrix(s: &Semigroup, cap: u64) -> Result<RelationMatrix> {
    let [d1, d2, d3] = s.gens();
    let (a11, reps1) = min_multiplier(d1, d2, d3, cap)?;
    let (a22, reps2) = min_multiplier(d2, d1, d3, cap)?;
    let (a33, reps3) = min_multiplier(d3, d1, d2, cap)?;

    let mut valid: Vec<RelationMatrix> = Vec::new();
    for (a12, a13) in &reps1 {
        for (a21, a23) in &reps2 {
            for (a31, a32) in &reps3 {
                let m = RelationMatrix {
                    a: [
                        [a11.clone(), a12.clone(), a13.clone()],
                        [a21.clone(), a22.clone(), a23.clone()],
                        [a31.clone(), a32.clone(), a33.clone()],
                    ],
                };
                if m.column_identities_hold() && m.generators_recovered(s) {
                    valid.push(m);
                }
            }
        }
    }
    match valid.len() {
        0 => Err(Error::SymmetricOrDegenerate(s.to_string())),
        1 => {
            let m = valid.pop().unwrap();
            debug_assert!(m.row_relations_hold(s));
            if !m.strictly_positive() || !m.row_gcds_are_one() {
                return Err(Error::SymmetricOrDegenerate(format!(
                    "{s}: selected matrix is degenerate"
                )));
            }
            Ok(m)
        }
        n => Err(Error::Ambiguous(n)),
    }
}

/// D₀–D₃, syzygy degrees, pseudo-Frobenius numbers, Frobenius number, genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyData {
    pub d0: BigInt,
    pub d1: BigInt,
    pub d2: BigInt,
    pub d3: BigInt,
    pub b11: BigInt,
    pub b22: BigInt,
    pub f1: BigInt,
    pub f2: BigInt,
    pub frobenius: BigInt,
    pub genus: BigInt,
}

/// Invariants of the Hilbert-series numerator from a valid relation matrix:
/// D₀ = a₁₁a₂₂a₃₃, D₁ = a₁₂a₂₃a₃₁, D₂ = a₁₃a₃₂a₂₁, D₃ = d₁+d₂+d₃,
/// b₁₁ = D₀+D₁, b₂₂ = D₀+D₂, F = max(b₁₁,b₂₂) − D₃, 2G = 1+D₀+D₁+D₂−D₃.
pub fn syzygy_data(a: &RelationMatrix, s: &Semigroup) -> Result<SyzygyData> {
    if !a.row_relations_hold(s) {
        return Err(Error::Inconsistent(format!(
            "matrix row relations fail for {s}"
        )));
    }
    let m = a.rows();
    let d0 = &m[0][0] * &m[1][1] * &m[2][2];
    let d1 = &m[0][1] * &m[1][2] * &m[2][0];
    let d2 = &m[0][2] * &m[2][1] * &m[1][0];
    let d3 = s.gen_sum();
    let b11 = &d0 + &d1;
    let b22 = &d0 + &d2;
    let f1 = &b11 - &d3;
    let f2 = &b22 - &d3;
    let frobenius = f1.clone().max(f2.clone());
    let two_g = BigInt::one() + &d0 + &d1 + &d2 - &d3;
    if two_g.is_odd() {
        return Err(Error::Inconsistent(format!(
            "1 + D0 + D1 + D2 - D3 = {two_g} is odd for {s}"
        )));
    }
    let genus = two_g / 2;
    Ok(SyzygyData {
        d0,
        d1,
        d2,
        d3,
        b11,
        b22,
        f1,
        f2,
        frobenius,
        genus,
    })
}

/// The six signed exponents of the Hilbert-series numerator
/// 1 − z^{a₁₁d₁} − z^{a₂₂d₂} − z^{a₃₃d₃} + z^{b₁₁} + z^{b₂₂}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numerator {
    /// (sign, exponent) pairs, starting with (+1, 0).
    pub terms: Vec<(i8, BigInt)>,
}

pub fn hilbert_numerator(a: &RelationMatrix, s: &Semigroup) -> Result<Numerator> {
    let syz = syzygy_data(a, s)?;
    let neg: Vec<BigInt> = (0..3).map(|j| a.entry(j, j) * &s.gens()[j]).collect();
    let sum_neg: BigInt = neg.iter().sum();
    let sum_pos = &syz.b11 + &syz.b22;
    if sum_neg != sum_pos {
        return Err(Error::Inconsistent(format!(
            "numerator sum identity fails: {sum_neg} != {sum_pos}"
        )));
    }
    let mut terms = vec![(1i8, BigInt::zero())];
    terms.extend(neg.into_iter().map(|e| (-1i8, e)));
    terms.push((1, syz.b11));
    terms.push((1, syz.b22));
    Ok(Numerator { terms })
}

/// Itemized validation of a matrix against a semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixReport {
    pub row_relations: [bool; 3],
    pub column_identities: [bool; 3],
    pub generator_recovery: [bool; 3],
    pub row_gcds: [bool; 3],
    pub strictly_positive: bool,
}

impl MatrixReport {
    /// Everything except strict positivity, which degenerate matrices waive.
    pub fn structurally_valid(&self) -> bool {
        self.row_relations.iter().all(|&b| b)
            && self.column_identities.iter().all(|&b| b)
            && self.generator_recovery.iter().all(|&b| b)
            && self.row_gcds.iter().all(|&b| b)
    }

    pub fn fully_valid(&self) -> bool {
        self.structurally_valid() && self.strictly_positive
    }
}

pub fn validate_matrix(a: &RelationMatrix, s: &Semigroup) -> MatrixReport {
    let gens = s.gens();
    let m = a.rows();
    let row_relations = [0, 1, 2].map(|j| a.row_residual(j, gens).is_zero());
    let column_identities = [0, 1, 2].map(|j| {
        let sum: BigInt = (0..3).filter(|&i| i != j).map(|i| &m[i][j]).sum();
        sum == m[j][j]
    });
    let rec = [
        &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1],
        &m[2][2] * &m[0][0] - &m[2][0] * &m[0][2],
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
    ];
    let generator_recovery = [0, 1, 2].map(|i| rec[i] == gens[i]);
    let row_gcds = [0, 1, 2].map(|i| m[i][0].gcd(&m[i][1]).gcd(&m[i][2]).is_one());
    MatrixReport {
        row_relations,
        column_identities,
        generator_recovery,
        row_gcds,
        strictly_positive: a.strictly_positive(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(a: u64, b: u64, c: u64) -> Semigroup {
        Semigroup::new(a, b, c).unwrap()
    }

    fn matrix(s: &Semigroup) -> RelationMatrix {
        minimal_relation_matrix(s, DEFAULT_SEARCH_CAP).unwrap()
    }

    #[test]
    fn r4_cubed_matrix() {
        let m = matrix(&sg(27, 64, 125));
        let expect = RelationMatrix::from_i64([[7, 1, 1], [1, 18, 9], [6, 17, 10]]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn r6_cubed_matrix() {
        let m = matrix(&sg(125, 216, 343));
        let expect = RelationMatrix::from_i64([[31, 10, 5], [6, 13, 6], [25, 3, 11]]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn r6_squared_matrix() {
        let m = matrix(&sg(25, 36, 49));
        let expect = RelationMatrix::from_i64([[14, 7, 2], [11, 9, 1], [3, 2, 3]]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn syzygy_r4_cubed() {
        let s = sg(27, 64, 125);
        let syz = syzygy_data(&matrix(&s), &s).unwrap();
        assert_eq!(syz.d0, BigInt::from(1260));
        assert_eq!(syz.d1, BigInt::from(54));
        assert_eq!(syz.d2, BigInt::from(17));
        assert_eq!(syz.d3, BigInt::from(216));
        assert_eq!(syz.b11, BigInt::from(1314));
        assert_eq!(syz.b22, BigInt::from(1277));
        assert_eq!(syz.frobenius, BigInt::from(1098));
        assert_eq!(syz.genus, BigInt::from(558));
    }

    #[test]
    fn syzygy_examples() {
        let s = sg(125, 216, 343);
        let syz = syzygy_data(&matrix(&s), &s).unwrap();
        assert_eq!(syz.frobenius, BigInt::from(5249));
        assert_eq!(syz.genus, BigInt::from(2670));

        let s = sg(25, 36, 49);
        let syz = syzygy_data(&matrix(&s), &s).unwrap();
        assert_eq!(syz.frobenius, BigInt::from(312));
        assert_eq!(syz.genus, BigInt::from(167));
    }

    #[test]
    fn numerator_r4_cubed() {
        let s = sg(27, 64, 125);
        let num = hilbert_numerator(&matrix(&s), &s).unwrap();
        let exps: Vec<(i8, i64)> = num
            .terms
            .iter()
            .map(|(s, e)| (*s, e.to_i64().unwrap()))
            .collect();
        assert_eq!(
            exps,
            vec![(1, 0), (-1, 189), (-1, 1152), (-1, 1250), (1, 1314), (1, 1277)]
        );
        assert_eq!(189 + 1152 + 1250, 1314 + 1277);
    }

    #[test]
    fn numerator_r6_squared() {
        let s = sg(25, 36, 49);
        let num = hilbert_numerator(&matrix(&s), &s).unwrap();
        let negs: Vec<i64> = num
            .terms
            .iter()
            .filter(|(s, _)| *s < 0)
            .map(|(_, e)| e.to_i64().unwrap())
            .collect();
        assert_eq!(negs, vec![350, 324, 147]);
        let pos: Vec<i64> = num
            .terms
            .iter()
            .filter(|(s, e)| *s > 0 && !e.is_zero())
            .map(|(_, e)| e.to_i64().unwrap())
            .collect();
        assert_eq!(pos, vec![399, 422]);
    }

    #[test]
    fn symmetric_inputs_are_rejected() {
        for s in [sg(9, 16, 25), sg(256, 625, 1296), sg(16, 81, 256)] {
            match minimal_relation_matrix(&s, DEFAULT_SEARCH_CAP) {
                Err(Error::SymmetricOrDegenerate(_)) => {}
                other => panic!("expected degenerate error for {s}, got {other:?}"),
            }
        }
    }

    #[test]
    fn validate_matrix_reports() {
        let s = sg(27, 64, 125);
        let good = matrix(&s);
        let report = validate_matrix(&good, &s);
        assert!(report.fully_valid());

        // perturb a23 by +1: row 2 must fail
        let mut rows = good.rows().clone();
        rows[1][2] += 1;
        let bad = RelationMatrix::from_magnitudes(rows).unwrap();
        let report = validate_matrix(&bad, &s);
        assert!(!report.row_relations[1]);
        assert!(report.row_relations[0] && report.row_relations[2]);

        // degenerate matrix of a symmetric quartic: rows hold, positivity fails
        let deg =
            RelationMatrix::from_i64([[256, 0, 81], [17, 16, 4], [256, 0, 81]]).unwrap();
        let s = sg(1296, 2401, 4096);
        let report = validate_matrix(&deg, &s);
        assert!(report.row_relations.iter().all(|&b| b));
        assert!(!report.strictly_positive);
    }

    #[test]
    fn smallest_nonsymmetric_case() {
        let s = sg(3, 4, 5);
        let m = matrix(&s);
        let expect = RelationMatrix::from_i64([[3, 1, 1], [1, 2, 1], [2, 1, 2]]).unwrap();
        assert_eq!(m, expect);
        let syz = syzygy_data(&m, &s).unwrap();
        assert_eq!(syz.frobenius, BigInt::from(2));
        assert_eq!(syz.genus, BigInt::from(2));
    }
}
