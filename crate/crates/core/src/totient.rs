//! Euler totient table: φ, its summatory function Φ, and the error terms
//! `E_Φ(i) = Φ(i) - 3i²/π²` and `E_R(i) = Σ_{j≤i} E_Φ(j) - 3i²/(2π²)`.
//!
//! φ is produced by a linear sieve. Φ and the second-order prefix `ΣΦ` are
//! stored as `u128`, so every integer part of the error terms is exact and
//! only the final subtraction of the real main term rounds.

use crate::numeric::{exact_minus_scaled, PI_SQUARED};
use crate::{GridError, Result};

/// Default memory budget for a table, in bytes.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 30;

/// Bytes held per sieved index: φ as `u32`, Φ and ΣΦ as `u128`.
pub const BYTES_PER_ENTRY: usize = 4 + 16 + 16;

/// Sieved totient data for `1..=limit`. Immutable once built.
#[derive(Debug, Clone)]
pub struct TotientTable {
    limit: usize,
    // Index 0 is a zero placeholder so that `phi[i]` is φ(i).
    phi: Vec<u32>,
    phi_prefix: Vec<u128>,
    phi_prefix2: Vec<u128>,
}

impl TotientTable {
    /// Sieve φ up to `limit` under [`DEFAULT_MEMORY_BUDGET`].
    pub fn build(limit: usize) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with_budget(limit: usize, budget_bytes: usize) -> Result<Self> {
        if limit == 0 {
            return Err(GridError::InvalidArgument("sieve limit must be at least 1".into()));
        }
        let need = limit
            .checked_add(1)
            .and_then(|len| len.checked_mul(BYTES_PER_ENTRY))
            .filter(|&bytes| bytes <= budget_bytes && limit <= u32::MAX as usize);
        if need.is_none() {
            return Err(GridError::ResourceLimit(format!(
                "sieve limit {limit} exceeds the memory budget of {budget_bytes} bytes"
            )));
        }

        let phi = linear_sieve_phi(limit);
        let mut phi_prefix = vec![0u128; limit + 1];
        let mut phi_prefix2 = vec![0u128; limit + 1];
        for i in 1..=limit {
            phi_prefix[i] = phi_prefix[i - 1] + phi[i] as u128;
            phi_prefix2[i] = phi_prefix2[i - 1] + phi_prefix[i];
        }
        Ok(TotientTable { limit, phi, phi_prefix, phi_prefix2 })
    }

    /// Largest sieved index.
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// φ(1..=limit) as a slice; element 0 is φ(1).
    pub fn phi_values(&self) -> &[u32] {
        &self.phi[1..]
    }

    pub fn phi(&self, i: usize) -> Result<u32> {
        self.check(i)?;
        Ok(self.phi[i])
    }

    /// Φ(i) = Σ_{j≤i} φ(j).
    pub fn summatory_phi(&self, i: usize) -> Result<u128> {
        self.check(i)?;
        Ok(self.phi_prefix[i])
    }

    /// Σ_{j≤i} Φ(j), the second-order prefix.
    pub fn summatory_phi2(&self, i: usize) -> Result<u128> {
        self.check(i)?;
        Ok(self.phi_prefix2[i])
    }

    /// `E_Φ(i) = Φ(i) - 3i²/π²`.
    pub fn e_phi(&self, i: usize) -> Result<f64> {
        self.check(i)?;
        let k = i as u128;
        Ok(exact_minus_scaled(self.phi_prefix[i] as i128, 3.0 / PI_SQUARED, k * k))
    }

    /// `E_R(i) = Σ_{j≤i} E_Φ(j) - 3i²/(2π²)`.
    ///
    /// Rearranged as `ΣΦ(i) - (3/(2π²)) · (2·Σ_{j≤i} j² + i²)`, with the
    /// integer bracket and `ΣΦ(i)` exact.
    pub fn e_r(&self, i: usize) -> Result<f64> {
        self.check(i)?;
        let k = i as u128;
        let bracket = k * (k + 1) * (2 * k + 1) / 3 + k * k;
        Ok(exact_minus_scaled(self.phi_prefix2[i] as i128, 1.5 / PI_SQUARED, bracket))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.limit {
            return Err(GridError::InvalidArgument(format!(
                "index {i} outside the sieved range 1..={}",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Linear sieve: each composite is visited once, through its smallest prime
/// factor. Uses φ(i·p) = φ(i)·p when p | i and φ(i)·(p-1) otherwise.
fn linear_sieve_phi(limit: usize) -> Vec<u32> {
    let mut phi = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    phi[1] = 1;
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u32;
            primes.push(i as u32);
        }
        let phi_i = phi[i];
        for &p in &primes {
            let ip = i * p as usize;
            if ip > limit {
                break;
            }
            if i % p as usize == 0 {
                phi[ip] = phi_i * p;
                break;
            }
            phi[ip] = phi_i * (p - 1);
        }
    }
    phi
}

/// Check the partial summation identity
///
/// ```text
/// Σ a_i b_i = (Σ a_i) b_N - Σ_{i<N} (Σ_{j≤i} a_j)(b_{i+1} - b_i)
/// ```
///
/// to a relative tolerance of `1e-12`, measured against the total magnitude
/// of the terms on both sides.
pub fn check_partial_summation(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(GridError::InvalidArgument(format!(
            "sequence lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(GridError::InvalidArgument("sequences must be nonempty".into()));
    }
    let n = a.len();
    let mut lhs = 0.0;
    let mut scale = 0.0;
    for (x, y) in a.iter().zip(b) {
        lhs += x * y;
        scale += (x * y).abs();
    }

    let mut rhs_tail = 0.0;
    let mut running = 0.0;
    for i in 0..n - 1 {
        running += a[i];
        let term = running * (b[i + 1] - b[i]);
        rhs_tail += term;
        scale += term.abs();
    }
    running += a[n - 1];
    let head = running * b[n - 1];
    scale += head.abs();
    let rhs = head - rhs_tail;

    Ok((lhs - rhs).abs() <= 1e-12 * scale)
}
