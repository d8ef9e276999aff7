//! Geometric brute force on small grids. Nothing here uses φ or the gcd-sum
//! formulas; lines, segments and separable dichotomies are enumerated
//! directly so the fast counts can be checked against them.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer;

use crate::{GridError, Result};

/// Default largest grid side accepted by the pair-enumeration oracles.
pub const ORACLE_LIMIT: u64 = 25;

/// Largest grid side for the threshold oracle without [`Guardrail::Lift`].
pub const THRESHOLD_ORACLE_LIMIT: u64 = 4;

/// Hard cap for the threshold oracle: dichotomies are `u64` bitmasks.
pub const THRESHOLD_ORACLE_HARD_LIMIT: u64 = 8;

/// Whether the default size limits of the oracles apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guardrail {
    #[default]
    Enforce,
    Lift,
}

/// The line `a·x + b·y + c = 0` in lowest terms with `a > 0`, or `a = 0` and
/// `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CanonicalLine {
    /// Line through two distinct points. Returns `None` when they coincide.
    pub fn through(p: (i64, i64), q: (i64, i64)) -> Option<Self> {
        let a = q.1 - p.1;
        let b = -(q.0 - p.0);
        if a == 0 && b == 0 {
            return None;
        }
        let c = -(a * p.0 + b * p.1);
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / g, b / g, c / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Some(CanonicalLine { a, b, c })
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.a * p.0 + self.b * p.1 + self.c == 0
    }
}

/// Number of lines through exactly `p` gridpoints, for each `p ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineHistogram {
    pub n: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl LineHistogram {
    pub fn lines_exactly(&self, p: u64) -> u64 {
        self.counts.get(&p).copied().unwrap_or(0)
    }

    pub fn lines_at_least(&self, p: u64) -> u64 {
        self.counts.range(p..).map(|(_, &c)| c).sum()
    }

    /// `Σ_p C(p,2) · counts[p]`; equals `C(n², 2)`.
    pub fn pair_total(&self) -> u128 {
        self.counts.iter().map(|(&p, &c)| (p * (p - 1) / 2) as u128 * c as u128).sum()
    }
}

fn check_pair_oracle(n: u64, guard: Guardrail) -> Result<()> {
    if n < 2 {
        return Err(GridError::InvalidArgument(format!("oracle needs n ≥ 2, got {n}")));
    }
    if n > ORACLE_LIMIT && guard == Guardrail::Enforce {
        return Err(GridError::ResourceLimit(format!(
            "oracle grid side {n} exceeds the limit {ORACLE_LIMIT} (use force to override)"
        )));
    }
    Ok(())
}

fn grid_points(n: u64) -> Vec<(i64, i64)> {
    let n = n as i64;
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
}

/// Canonicalize the line through every pair of gridpoints and count the
/// distinct gridpoints on each.
pub fn oracle_line_histogram(n: u64, guard: Guardrail) -> Result<LineHistogram> {
    check_pair_oracle(n, guard)?;
    let points = grid_points(n);
    let mut on_line: HashMap<CanonicalLine, HashSet<(i64, i64)>> = HashMap::new();
    for (k, &p) in points.iter().enumerate() {
        for &r in &points[k + 1..] {
            let line = CanonicalLine::through(p, r).expect("distinct points");
            let members = on_line.entry(line).or_default();
            members.insert(p);
            members.insert(r);
        }
    }
    let mut counts = BTreeMap::new();
    for members in on_line.values() {
        *counts.entry(members.len() as u64).or_insert(0) += 1;
    }
    Ok(LineHistogram { n, counts })
}

/// Unordered gridpoint pairs whose difference has gcd `p - 1`, i.e. whose
/// segment holds exactly `p - 2` interior gridpoints.
pub fn oracle_segments(n: u64, p: u64, guard: Guardrail) -> Result<u64> {
    check_pair_oracle(n, guard)?;
    if p < 2 {
        return Err(GridError::InvalidArgument(format!("segment point count p={p} must be at least 2")));
    }
    let want = (p - 1) as i64;
    let points = grid_points(n);
    let mut count = 0;
    for (k, &a) in points.iter().enumerate() {
        for &b in &points[k + 1..] {
            if (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs()) == want {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Count the dichotomies `d` of the grid realized as
/// `d(x) = 0 ⇔ a₁x₁ + a₂x₂ + b ≤ 0`.
///
/// Candidate normals range over `a₁, a₂ ∈ [-(n-1), n-1]`; for each normal the
/// offset is placed below all projections, above all of them, and midway
/// between each adjacent pair of distinct projection values.
pub fn oracle_threshold_count(n: u64, guard: Guardrail) -> Result<u64> {
    if n == 0 {
        return Err(GridError::InvalidArgument("grid side n must be at least 1".into()));
    }
    let cap = match guard {
        Guardrail::Enforce => THRESHOLD_ORACLE_LIMIT,
        Guardrail::Lift => THRESHOLD_ORACLE_HARD_LIMIT,
    };
    if n > cap {
        return Err(GridError::ResourceLimit(format!(
            "threshold oracle grid side {n} exceeds the limit {cap}"
        )));
    }
    let points = grid_points(n);
    let all: u64 = if points.len() == 64 { u64::MAX } else { (1u64 << points.len()) - 1 };
    // Bit k set ⇔ point k takes the value 1. The constants come from the
    // degenerate normal (0, 0) with b > 0 or b ≤ 0.
    let mut seen: HashSet<u64> = HashSet::from([0, all]);
    let r = n as i64 - 1;
    for a1 in -r..=r {
        for a2 in -r..=r {
            let proj: Vec<i64> = points.iter().map(|&(x, y)| a1 * x + a2 * y).collect();
            let mut levels = proj.clone();
            levels.sort_unstable();
            levels.dedup();
            for w in levels.windows(2) {
                // Doubled offset: 2·proj - (v_k + v_{k+1}) ≤ 0 classifies as 0.
                let mid2 = w[0] + w[1];
                let mask = proj
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| 2 * v - mid2 > 0)
                    .fold(0u64, |m, (k, _)| m | (1 << k));
                seen.insert(mask);
            }
        }
    }
    Ok(seen.len() as u64)
}
