//! Jordan-block data of the Milnor monodromy on the top cohomology of the
//! Milnor fiber, the parts of it fixed by the Newton boundary, and the
//! weight-graded dimensions it induces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hodge::{build_q3, build_q4, LaurentPolynomialZ};
use crate::newton::{interior_vertices, pi_f, NewtonBoundary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("Newton boundary is not convenient")]
    NotConvenient,
    #[error("eigenvalue 1 is not allowed here")]
    EigenvalueOne,
    #[error("invalid Jordan data: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidJordanData(Vec<Violation>),
    #[error("malformed Jordan data: {0}")]
    Malformed(String),
}

/// A root of unity `exp(2πi·k/m)` stored as the reduced fraction `k/m` with
/// `0 <= k < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Eigenvalue {
    k: u64,
    m: u64,
}

impl Eigenvalue {
    pub const ONE: Eigenvalue = Eigenvalue { k: 0, m: 1 };

    /// Normalizes `k/m` modulo 1.
    pub fn new(k: i64, m: u64) -> Result<Self, MonodromyError> {
        if m == 0 {
            return Err(MonodromyError::Malformed("zero denominator in eigenvalue".into()));
        }
        let k = k.rem_euclid(m as i64) as u64;
        let g = k.gcd(&m);
        Ok(Eigenvalue { k: k / g, m: m / g })
    }

    pub fn numerator(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    /// `λ^d = 1`.
    pub fn is_root_of(&self, d: i64) -> bool {
        d.rem_euclid(self.m as i64) == 0
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k as u128 * other.m as u128).cmp(&(other.k as u128 * self.m as u128))
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.m)
    }
}

impl FromStr for Eigenvalue {
    type Err = MonodromyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MonodromyError::Malformed(format!("bad eigenvalue '{s}', expected k/m"));
        let s = s.trim();
        match s.split_once('/') {
            Some((k, m)) => {
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                let m: u64 = m.trim().parse().map_err(|_| bad())?;
                Eigenvalue::new(k, m)
            }
            None => Eigenvalue::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for Eigenvalue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Eigenvalue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Violation of the monodromy-theorem size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub eigenvalue: Eigenvalue,
    pub size: usize,
    pub bound: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block of size {} for eigenvalue {} exceeds the bound {}",
            self.size, self.eigenvalue, self.bound
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub eigenvalue: Eigenvalue,
    pub size: usize,
    pub count: u64,
}

#[derive(Serialize, Deserialize)]
struct JordanFile {
    n: usize,
    blocks: Vec<BlockEntry>,
}

/// Multiset of Jordan blocks `(λ, s)` with multiplicities `J^λ_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "JordanFile", into = "JordanFile")]
pub struct JordanBlockData {
    n: usize,
    blocks: BTreeMap<(Eigenvalue, usize), u64>,
}

impl TryFrom<JordanFile> for JordanBlockData {
    type Error = MonodromyError;

    fn try_from(file: JordanFile) -> Result<Self, Self::Error> {
        let mut j = JordanBlockData::new(file.n)?;
        for b in file.blocks {
            j.add(b.eigenvalue, b.size, b.count)?;
        }
        Ok(j)
    }
}

impl From<JordanBlockData> for JordanFile {
    fn from(j: JordanBlockData) -> Self {
        JordanFile {
            n: j.n,
            blocks: j.entries().collect(),
        }
    }
}

impl JordanBlockData {
    pub fn new(n: usize) -> Result<Self, MonodromyError> {
        if n == 0 {
            return Err(MonodromyError::Malformed("ambient dimension must be positive".into()));
        }
        Ok(JordanBlockData {
            n,
            blocks: BTreeMap::new(),
        })
    }

    pub fn from_blocks<I>(n: usize, blocks: I) -> Result<Self, MonodromyError>
    where
        I: IntoIterator<Item = (Eigenvalue, usize, u64)>,
    {
        let mut j = JordanBlockData::new(n)?;
        for (lambda, size, count) in blocks {
            j.add(lambda, size, count)?;
        }
        Ok(j)
    }

    pub fn from_json(text: &str) -> Result<Self, MonodromyError> {
        serde_json::from_str(text).map_err(|e| MonodromyError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn add(&mut self, lambda: Eigenvalue, size: usize, count: u64) -> Result<(), MonodromyError> {
        if size == 0 {
            return Err(MonodromyError::Malformed("block sizes start at 1".into()));
        }
        if count > 0 {
            *self.blocks.entry((lambda, size)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `J^λ_s`.
    pub fn count(&self, lambda: Eigenvalue, size: usize) -> u64 {
        self.blocks.get(&(lambda, size)).copied().unwrap_or(0)
    }

    /// `J^1_s`.
    pub fn unipotent(&self, size: usize) -> u64 {
        self.count(Eigenvalue::ONE, size)
    }

    pub fn entries(&self) -> impl Iterator<Item = BlockEntry> + '_ {
        self.blocks.iter().map(|(&(eigenvalue, size), &count)| BlockEntry {
            eigenvalue,
            size,
            count,
        })
    }

    pub fn eigenvalues(&self) -> Vec<Eigenvalue> {
        let mut out: Vec<Eigenvalue> = self.blocks.keys().map(|(l, _)| *l).collect();
        out.dedup();
        out
    }

    pub fn max_size(&self) -> usize {
        self.blocks.keys().map(|&(_, s)| s).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ_{s>=0} J^λ_{first + 2s}`.
    pub(crate) fn parity_sum(&self, lambda: Eigenvalue, first: i64) -> u64 {
        if first < 1 {
            // sizes start at 1; indices below that contribute nothing
            let first = if first.rem_euclid(2) == 1 { 1 } else { 2 };
            return self.parity_sum(lambda, first);
        }
        (first as usize..=self.max_size())
            .step_by(2)
            .map(|s| self.count(lambda, s))
            .sum()
    }
}

pub fn validate_jordan_data(j: &JordanBlockData) -> Result<(), Vec<Violation>> {
    let violations: Vec<Violation> = j
        .blocks
        .keys()
        .filter_map(|&(eigenvalue, size)| {
            let bound = if eigenvalue.is_one() { j.n - 1 } else { j.n };
            (size > bound).then_some(Violation {
                eigenvalue,
                size,
                bound,
            })
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn ensure_valid(j: &JordanBlockData) -> Result<(), MonodromyError> {
    validate_jordan_data(j).map_err(MonodromyError::InvalidJordanData)
}

/// The Jordan counts fixed directly by the Newton boundary: for `λ != 1`,
/// `J^λ_n = #{i : λ^{d_i} = 1}`, and `J^1_{n-1} = Π_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialJordanData {
    pub top_distances: Vec<i64>,
    pub sub_top_for_one: u64,
}

pub fn jordan_from_geometry(boundary: &NewtonBoundary, n: usize) -> Result<PartialJordanData, MonodromyError> {
    if boundary.n != n || !boundary.is_convenient() {
        return Err(MonodromyError::NotConvenient);
    }
    let mut top_distances: Vec<i64> = interior_vertices(boundary).iter().map(|iv| iv.d).collect();
    top_distances.sort_unstable();
    Ok(PartialJordanData {
        top_distances,
        sub_top_for_one: pi_f(boundary) as u64,
    })
}

/// `J^λ_n` for `λ != 1`; depends only on the order of `λ`.
pub fn top_block_count(partial: &PartialJordanData, lambda: Eigenvalue) -> Result<u64, MonodromyError> {
    if lambda.is_one() {
        return Err(MonodromyError::EigenvalueOne);
    }
    Ok(partial
        .top_distances
        .iter()
        .filter(|&&d| lambda.is_root_of(d))
        .count() as u64)
}

/// Jordan data of a flat convenient boundary `v·α = C`.
///
/// The monodromy then agrees with that of the quasi-homogeneous polynomial
/// on the boundary, which is semisimple with one eigenvalue
/// `exp(2πi Σ (k_i+1) v_i / C)` per tuple `0 <= k_i <= C/v_i - 2`.
pub fn jordan_from_flat_boundary(weights: &[i64], degree: i64) -> Result<JordanBlockData, MonodromyError> {
    if weights.is_empty() || degree <= 0 || weights.iter().any(|&v| v <= 0 || degree % v != 0) {
        return Err(MonodromyError::NotConvenient);
    }
    let c = degree as u64;
    let mut residues: BTreeMap<u64, u64> = BTreeMap::from([(0, 1)]);
    for &v in weights {
        let a = degree / v;
        let mut next = BTreeMap::new();
        for (&r, &count) in &residues {
            for k in 0..a - 1 {
                *next.entry((r + (k as u64 + 1) * v as u64) % c).or_insert(0) += count;
            }
        }
        residues = next;
    }
    let mut j = JordanBlockData::new(weights.len())?;
    for (r, count) in residues {
        j.add(Eigenvalue::new(r as i64, c)?, 1, count)?;
    }
    Ok(j)
}

/// `(order, J^λ_n)` for every order `m >= 2` with a nonzero count.
pub fn top_blocks_by_order(partial: &PartialJordanData) -> Vec<(u64, u64)> {
    let max = partial.top_distances.iter().copied().max().unwrap_or(0);
    (2..=max as u64)
        .filter_map(|m| {
            let lambda = Eigenvalue::new(1, m).expect("m >= 2");
            let c = top_block_count(partial, lambda).expect("λ != 1");
            (c > 0).then_some((m, c))
        })
        .collect()
}

/// `dim Gr^W_r H^{n-1}(F_0)_λ` for every `r` in the possibly nonzero range.
///
/// For `λ != 1` the range is `[0, 2(n-1)]`, symmetric about `n - 1`; for
/// `λ = 1` it is `[2, 2(n-1)]`, symmetric about `n`.
pub fn milnor_weight_table(j: &JordanBlockData, lambda: Eigenvalue) -> Result<BTreeMap<i64, u64>, MonodromyError> {
    ensure_valid(j)?;
    let n = j.n as i64;
    let top = 2 * (n - 1);
    let mut table = BTreeMap::new();
    if lambda.is_one() {
        for r in 2..=top {
            let lower = if r <= n { r } else { 2 * n - r };
            table.insert(r, j.parity_sum(lambda, n + 1 - lower));
        }
    } else {
        for r in 0..=top {
            let lower = if r < n { r } else { top - r };
            table.insert(r, j.parity_sum(lambda, n - lower));
        }
    }
    Ok(table)
}

/// `N_0 = J^1_1 + ... + J^1_{n-1}`.
pub fn invariant_dimension_n0(j: &JordanBlockData) -> u64 {
    (1..j.n).map(|s| j.unipotent(s)).sum()
}

/// `μ = Σ s·J^λ_s`.
pub fn milnor_number(j: &JordanBlockData) -> u64 {
    j.blocks.iter().map(|(&(_, s), &c)| s as u64 * c).sum()
}

/// Virtual Poincaré polynomial of `H^{n-1}(F_0)[-(n-1)]`, i.e. `Q_3 + Q_4`.
pub fn vp_milnor_fiber(j: &JordanBlockData) -> LaurentPolynomialZ {
    &build_q3(j.n, j) + &build_q4(j.n, j)
}
