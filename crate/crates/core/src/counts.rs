//! Exact counts: `f_q(n)` by definition and by the totient-weighted formula,
//! and the segment, line and threshold-function counts derived from it.
//!
//! Conventions: `gcd(0, k) = |k|` and `gcd(0, 0) = 0`, so axis-parallel
//! difference vectors belong to a class and the zero vector to none. For
//! `n = 1` every count is zero and `t(1) = 2`.

use num_integer::Integer;

use crate::totient::TotientTable;
use crate::{GridError, Result};

/// Largest supported grid side. `f_q(10⁷) ≈ 6·10²⁷` still fits in `u128`
/// with ample margin.
pub const MAX_N: u64 = 10_000_000;

/// One `(n, q)` address: grid side `n` and gcd class / points-per-line `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridQuery {
    n: u64,
    q: u64,
}

impl GridQuery {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(GridError::InvalidArgument("grid side n must be at least 1".into()));
        }
        if q == 0 {
            return Err(GridError::InvalidArgument("q must be at least 1".into()));
        }
        if n > MAX_N {
            return Err(GridError::ResourceLimit(format!(
                "grid side {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        Ok(GridQuery { n, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Totient table size needed by [`f_fast`]: `⌊(n-1)/q⌋`.
    pub fn required_limit(&self) -> usize {
        ((self.n - 1) / self.q) as usize
    }
}

/// Table size needed to evaluate every count for `(n, q)`, including the
/// neighbouring classes `q - 1` and `q + 1` used by the line counts.
pub fn required_limit_for_counts(n: u64, q: u64) -> usize {
    let lowest = q.saturating_sub(1).max(1);
    (n.saturating_sub(1) / lowest) as usize
}

/// `f_q(n)` straight from its definition, `O(n²)`. Reference path.
pub fn f_direct(query: GridQuery) -> u128 {
    let n = query.n as i64;
    let q = query.q as i64;
    let mut total: u128 = 0;
    for i in -(n - 1)..n {
        for j in -(n - 1)..n {
            if i.gcd(&j) == q {
                total += ((n - i.abs()) * (n - j.abs())) as u128;
            }
        }
    }
    total
}

/// `f_q(n) = 4 · Σ_{i=1}^{⌊(n-1)/q⌋} (n - qi)(2n - qi) φ(i)`, `O(n/q)`.
pub fn f_fast(query: GridQuery, table: &TotientTable) -> Result<u128> {
    let top = query.required_limit();
    ensure_table(table, top)?;
    let n = query.n as u128;
    let q = query.q as u128;
    let phi = table.phi_values();
    let mut sum: u128 = 0;
    for i in 1..=top {
        let qi = q * i as u128;
        sum += (n - qi) * (2 * n - qi) * phi[i - 1] as u128;
    }
    Ok(4 * sum)
}

fn ensure_table(table: &TotientTable, need: usize) -> Result<()> {
    if need > table.limit() {
        return Err(GridError::TableTooSmall { have: table.limit(), need });
    }
    Ok(())
}

/// The split `f_q(n+1) = 8·s₁ + 8(t+1)·s₂` with `n = qm + t`.
///
/// `s₁` and `s₂` can be half-integers, so both are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaDecomposition {
    pub m: u64,
    pub t: u64,
    pub s1_doubled: u128,
    pub s2_doubled: u128,
}

impl LemmaDecomposition {
    /// `4·(2s₁) + 4(t+1)·(2s₂)`, which equals `f_q(n+1)`.
    pub fn reconstruct(&self) -> u128 {
        4 * self.s1_doubled + 4 * (self.t as u128 + 1) * self.s2_doubled
    }
}

pub fn decompose_lemma(query: GridQuery, table: &TotientTable) -> Result<LemmaDecomposition> {
    let (m, t) = query.n.div_rem(&query.q);
    ensure_table(table, m as usize)?;
    let q = query.q as u128;
    let qm = q * m as u128;
    // 2·(qm + t + 1 - (q/2)i) = 2(qm + t + 1) - qi
    let twice_top = 2 * (qm + t as u128 + 1);
    let phi = table.phi_values();
    let (mut s1, mut s2) = (0u128, 0u128);
    for i in 1..=m as usize {
        let qi = q * i as u128;
        let w = (twice_top - qi) * phi[i - 1] as u128;
        s1 += (qm - qi) * w;
        s2 += w;
    }
    Ok(LemmaDecomposition { m, t, s1_doubled: s1, s2_doubled: s2 })
}

fn f(n: u64, q: u64, table: &TotientTable) -> Result<u128> {
    f_fast(GridQuery::new(n, q)?, table)
}

/// `s_p(n) = f_{p-1}(n) / 2`: segments through exactly `p` gridpoints.
pub fn segments_count(n: u64, p: u64, table: &TotientTable) -> Result<u128> {
    if p < 2 {
        return Err(GridError::InvalidArgument(format!("segment point count p={p} must be at least 2")));
    }
    halve(f(n, p - 1, table)?)
}

/// `l_{≥q}(n) = (f_{q-1}(n) - f_q(n)) / 2`.
pub fn lines_at_least(n: u64, q: u64, table: &TotientTable) -> Result<u128> {
    check_line_q(q)?;
    let below = f(n, q - 1, table)?;
    let at = f(n, q, table)?;
    let diff = below.checked_sub(at).ok_or_else(|| {
        GridError::InvariantViolation(format!("f_{}({n}) < f_{q}({n})", q - 1))
    })?;
    halve(diff)
}

/// `l_q(n) = (f_{q+1}(n) - 2 f_q(n) + f_{q-1}(n)) / 2`.
pub fn lines_exactly(n: u64, q: u64, table: &TotientTable) -> Result<u128> {
    check_line_q(q)?;
    let above = f(n, q + 1, table)? as i128;
    let at = f(n, q, table)? as i128;
    let below = f(n, q - 1, table)? as i128;
    let second = above - 2 * at + below;
    if second < 0 {
        return Err(GridError::InvariantViolation(format!(
            "negative second difference for n={n}, q={q}"
        )));
    }
    halve(second as u128)
}

/// Number of threshold functions on the grid: `t(n) = f_1(n) + 2`.
pub fn threshold_count(n: u64, table: &TotientTable) -> Result<u128> {
    Ok(f(n, 1, table)? + 2)
}

fn check_line_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(GridError::InvalidArgument(format!("line point count q={q} must be at least 2")));
    }
    Ok(())
}

fn halve(v: u128) -> Result<u128> {
    if !v.is_multiple_of(2) {
        return Err(GridError::InvariantViolation(format!("expected an even count, got {v}")));
    }
    Ok(v / 2)
}

/// Every count addressed by one `(n, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountSet {
    pub n: u64,
    pub q: u64,
    pub f: u128,
    /// `s_{q+1}(n)`.
    pub segments: u128,
    /// `l_{≥q}(n)`, only for `q ≥ 2`.
    pub lines_at_least: Option<u128>,
    /// `l_q(n)`, only for `q ≥ 2`.
    pub lines_exactly: Option<u128>,
}

impl CountSet {
    pub fn compute(query: GridQuery, table: &TotientTable) -> Result<Self> {
        let (n, q) = (query.n, query.q);
        let f = f_fast(query, table)?;
        let segments = halve(f)?;
        let (lines_at_least, lines_exactly) = if q >= 2 {
            (Some(lines_at_least(n, q, table)?), Some(lines_exactly(n, q, table)?))
        } else {
            (None, None)
        };
        Ok(CountSet { n, q, f, segments, lines_at_least, lines_exactly })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, q: u64) -> GridQuery {
        GridQuery::new(n, q).unwrap()
    }

    #[test]
    fn direct_examples() {
        assert_eq!(f_direct(q(2, 1)), 12);
        assert_eq!(f_direct(q(2, 2)), 0);
        assert_eq!(f_direct(q(3, 2)), 16);
        assert_eq!(f_direct(q(3, 1)), 56);
        assert_eq!(f_direct(q(1, 1)), 0);
    }

    #[test]
    fn fast_examples() {
        let t = TotientTable::build(10).unwrap();
        assert_eq!(f_fast(q(2, 1), &t).unwrap(), 12);
        assert_eq!(f_fast(q(3, 1), &t).unwrap(), 56);
        assert_eq!(f_fast(q(5, 7), &t).unwrap(), 0);
        assert_eq!(f_fast(q(1, 1), &t).unwrap(), 0);
    }

    #[test]
    fn fast_equals_direct_small_range() {
        let t = TotientTable::build(40).unwrap();
        for n in 1..=40 {
            for k in 1..=8 {
                assert_eq!(f_fast(q(n, k), &t).unwrap(), f_direct(q(n, k)), "n={n} q={k}");
            }
        }
    }

    #[test]
    fn table_too_small_names_requirement() {
        let t = TotientTable::build(3).unwrap();
        let err = f_fast(q(10, 1), &t).unwrap_err();
        assert_eq!(err, GridError::TableTooSmall { have: 3, need: 9 });
        assert!(err.to_string().contains('9'));
    }

    #[test]
    fn query_validation() {
        assert_eq!(GridQuery::new(0, 1).unwrap_err().kind(), "invalid-argument");
        assert_eq!(GridQuery::new(1, 0).unwrap_err().kind(), "invalid-argument");
        assert_eq!(GridQuery::new(MAX_N + 1, 1).unwrap_err().kind(), "resource-limit");
    }

    #[test]
    fn lemma_examples() {
        let t = TotientTable::build(10).unwrap();
        let d = decompose_lemma(q(2, 1), &t).unwrap();
        assert_eq!((d.m, d.t), (2, 0));
        assert_eq!(d.reconstruct(), 56);
        let d = decompose_lemma(q(5, 2), &t).unwrap();
        assert_eq!((d.m, d.t), (2, 1));
        assert_eq!(d.reconstruct(), f_fast(q(6, 2), &t).unwrap());
        let d = decompose_lemma(q(3, 5), &t).unwrap();
        assert_eq!((d.m, d.t, d.s1_doubled, d.s2_doubled), (0, 3, 0, 0));
        assert_eq!(f_fast(q(4, 5), &t).unwrap(), 0);
    }

    #[test]
    fn derived_count_examples() {
        let t = TotientTable::build(10).unwrap();
        assert_eq!(segments_count(2, 2, &t).unwrap(), 6);
        assert_eq!(segments_count(3, 3, &t).unwrap(), 8);
        assert_eq!(segments_count(2, 3, &t).unwrap(), 0);
        assert_eq!(lines_at_least(3, 2, &t).unwrap(), 20);
        assert_eq!(lines_at_least(2, 2, &t).unwrap(), 6);
        assert_eq!(lines_at_least(2, 3, &t).unwrap(), 0);
        assert_eq!(lines_exactly(3, 2, &t).unwrap(), 12);
        assert_eq!(lines_exactly(3, 3, &t).unwrap(), 8);
        assert_eq!(lines_exactly(4, 5, &t).unwrap(), 0);
        assert_eq!(threshold_count(1, &t).unwrap(), 2);
        assert_eq!(threshold_count(2, &t).unwrap(), 14);
        assert_eq!(threshold_count(3, &t).unwrap(), 58);
    }

    #[test]
    fn line_counts_reject_small_q() {
        let t = TotientTable::build(10).unwrap();
        assert_eq!(lines_at_least(3, 1, &t).unwrap_err().kind(), "invalid-argument");
        assert_eq!(lines_exactly(3, 1, &t).unwrap_err().kind(), "invalid-argument");
        assert_eq!(segments_count(3, 1, &t).unwrap_err().kind(), "invalid-argument");
    }

    #[test]
    fn count_set_cross_consistency() {
        let t = TotientTable::build(30).unwrap();
        let c = CountSet::compute(q(3, 2), &t).unwrap();
        assert_eq!((c.f, c.segments, c.lines_at_least, c.lines_exactly), (16, 8, Some(20), Some(12)));
        let c = CountSet::compute(q(5, 1), &t).unwrap();
        assert_eq!(c.lines_at_least, None);
        for n in 2..=30 {
            for k in 2..=n {
                let c = CountSet::compute(q(n, k), &t).unwrap();
                let next = lines_at_least(n, k + 1, &t).unwrap();
                assert_eq!(c.lines_exactly.unwrap(), c.lines_at_least.unwrap() - next);
            }
        }
    }

    #[test]
    fn total_pair_identity() {
        let t = TotientTable::build(40).unwrap();
        for n in 2..=40u64 {
            let total: u128 = (1..n).map(|k| f_fast(q(n, k), &t).unwrap()).sum();
            let nn = (n * n) as u128;
            assert_eq!(total, nn * (nn - 1));
        }
    }

    #[test]
    fn wide_values_do_not_overflow() {
        // f_1(10^5) ≈ 6.08·10^19 > 2^63.
        let t = TotientTable::build(100_000).unwrap();
        let v = f_fast(q(100_000, 1), &t).unwrap();
        assert!(v > i64::MAX as u128);
    }
}
