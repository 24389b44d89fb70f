//! Weight-graded dimensions of the IC stalk and the link at the singular
//! point, the Laurent-polynomial bookkeeping behind them, and purity.

mod laurent;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monodromy::{invariant_dimension_n0, milnor_weight_table, validate_jordan_data, Eigenvalue, JordanBlockData, MonodromyError, Violation};

pub use laurent::{vp_add, vp_mul, LaurentPolynomialZ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("ambient dimension {0} is not supported here")]
    BadDimension(usize),
    #[error("Jordan data is for n = {data}, but n = {requested} was requested")]
    DimensionMismatch { data: usize, requested: usize },
    #[error("invalid Jordan data: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidJordanData(Vec<Violation>),
    #[error("purity evidence disagrees: Jordan data says pure = {from_jordan}, flatness says pure = {from_flatness}")]
    InconsistentInputs { from_jordan: bool, from_flatness: bool },
    #[error("purity needs Jordan data or a flatness verdict")]
    InsufficientData,
    #[error("perturbation is not symmetric about degree {0}")]
    AsymmetricS(i64),
}

impl From<MonodromyError> for HodgeError {
    fn from(e: MonodromyError) -> Self {
        match e {
            MonodromyError::InvalidJordanData(v) => HodgeError::InvalidJordanData(v),
            other => unreachable!("unexpected monodromy error {other}"),
        }
    }
}

fn check(n: usize, j: &JordanBlockData) -> Result<(), HodgeError> {
    if j.n() != n {
        return Err(HodgeError::DimensionMismatch {
            data: j.n(),
            requested: n,
        });
    }
    validate_jordan_data(j).map_err(HodgeError::InvalidJordanData)
}

fn sign(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    MilnorFiber,
    IcStalk,
    Link,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub k: i64,
    pub r: i64,
    pub dim: u64,
}

/// `dim Gr^W_r H^k` indexed by `(k, r)`; pairs not stored are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WeightTableRepr", from = "WeightTableRepr")]
pub struct WeightTable {
    pub kind: WeightKind,
    pub n: usize,
    pub eigenvalue: Option<Eigenvalue>,
    entries: BTreeMap<(i64, i64), u64>,
}

#[derive(Serialize, Deserialize)]
struct WeightTableRepr {
    kind: WeightKind,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    eigenvalue: Option<Eigenvalue>,
    entries: Vec<WeightEntry>,
}

impl From<WeightTable> for WeightTableRepr {
    fn from(t: WeightTable) -> Self {
        WeightTableRepr {
            kind: t.kind,
            n: t.n,
            eigenvalue: t.eigenvalue,
            entries: t.iter().collect(),
        }
    }
}

impl From<WeightTableRepr> for WeightTable {
    fn from(r: WeightTableRepr) -> Self {
        let mut t = WeightTable::new(r.kind, r.n);
        t.eigenvalue = r.eigenvalue;
        for e in r.entries {
            t.set(e.k, e.r, e.dim);
        }
        t
    }
}

impl WeightTable {
    pub fn new(kind: WeightKind, n: usize) -> Self {
        WeightTable {
            kind,
            n,
            eigenvalue: None,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, k: i64, r: i64, dim: u64) {
        self.entries.insert((k, r), dim);
    }

    pub fn get(&self, k: i64, r: i64) -> u64 {
        self.entries.get(&(k, r)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = WeightEntry> + '_ {
        self.entries.iter().map(|(&(k, r), &dim)| WeightEntry { k, r, dim })
    }

    /// `r -> dim Gr^W_r H^k` for one cohomological degree.
    pub fn row(&self, k: i64) -> BTreeMap<i64, u64> {
        self.entries
            .range((k, i64::MIN)..=(k, i64::MAX))
            .map(|(&(_, r), &d)| (r, d))
            .collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.entries.keys().map(|&(k, _)| k).collect();
        ks.dedup();
        ks
    }

    /// `dim H^k`.
    pub fn total(&self, k: i64) -> u64 {
        self.row(k).values().sum()
    }

    /// `Σ_r (Σ_k (-1)^k dim Gr^W_r H^k) T^r`.
    pub fn virtual_poincare(&self) -> LaurentPolynomialZ {
        LaurentPolynomialZ::from_pairs(
            self.iter()
                .map(|e| (e.r, sign(e.k.unsigned_abs() as usize) * e.dim as i64)),
        )
    }

    /// True when every nonzero entry sits in weight `k + shift`.
    pub fn is_pure(&self, shift: i64) -> bool {
        self.iter().all(|e| e.dim == 0 || e.r == e.k + shift)
    }
}

/// Milnor-fiber table for one eigenvalue, placed in degree `n - 1`.
pub fn milnor_fiber_table(j: &JordanBlockData, lambda: Eigenvalue) -> Result<WeightTable, HodgeError> {
    let row = milnor_weight_table(j, lambda)?;
    let mut t = WeightTable::new(WeightKind::MilnorFiber, j.n());
    t.eigenvalue = Some(lambda);
    let k = j.n() as i64 - 1;
    for (r, d) in row {
        t.set(k, r, d);
    }
    Ok(t)
}

fn mirror_fill(lower: impl IntoIterator<Item = (i64, i64)>, center: i64) -> LaurentPolynomialZ {
    let mut p = LaurentPolynomialZ::zero();
    for (i, c) in lower {
        p.add_term(i, c);
        if i != center {
            p.add_term(2 * center - i, c);
        }
    }
    p
}

/// Non-unipotent part of the Milnor-fiber virtual Poincaré polynomial:
/// symmetric about `n - 1`, with lower half
/// `(-1)^{n-1} Σ_{λ≠1} Σ_{i=0}^{n-1} (Σ_s J^λ_{n-i+2s}) T^i`.
pub fn build_q3(n: usize, j: &JordanBlockData) -> LaurentPolynomialZ {
    let ni = n as i64;
    let eigenvalues: Vec<Eigenvalue> = j.eigenvalues().into_iter().filter(|l| !l.is_one()).collect();
    mirror_fill(
        (0..ni).map(|i| {
            let c: u64 = eigenvalues.iter().map(|&l| j.parity_sum(l, ni - i)).sum();
            (i, sign(n - 1) * c as i64)
        }),
        ni - 1,
    )
}

/// Unipotent part: symmetric about `n`, with lower half
/// `(-1)^{n-1} Σ_{i=2}^{n} (Σ_s J^1_{n+1-i+2s}) T^i`.
pub fn build_q4(n: usize, j: &JordanBlockData) -> LaurentPolynomialZ {
    let ni = n as i64;
    mirror_fill(
        (2..=ni).map(|i| {
            let c = j.parity_sum(Eigenvalue::ONE, ni + 1 - i);
            (i, sign(n - 1) * c as i64)
        }),
        ni,
    )
}

/// `dim H^k` of the IC stalk from `N_0` alone.
pub fn stalk_cohomology_dims(n: usize, n0: u64) -> Result<BTreeMap<i64, u64>, HodgeError> {
    match n {
        0 | 1 => Err(HodgeError::BadDimension(n)),
        2 => Ok(BTreeMap::from([(0, n0 + 1)])),
        _ => Ok(BTreeMap::from([(0, 1), (n as i64 - 2, n0)])),
    }
}

/// Weight table of the IC stalk.
///
/// For `n >= 3`: `Gr^W_0 H^0 = 1` and `Gr^W_r H^{n-2} = J^1_{n-r-1}` for
/// `0 <= r <= n-2`. For `n = 2` the stalk is `H^0` of weight 0 and
/// dimension `N_0 + 1`.
pub fn ic_stalk_weight_table(n: usize, j: &JordanBlockData) -> Result<WeightTable, HodgeError> {
    if n < 2 {
        return Err(HodgeError::BadDimension(n));
    }
    check(n, j)?;
    let mut t = WeightTable::new(WeightKind::IcStalk, n);
    if n == 2 {
        t.set(0, 0, invariant_dimension_n0(j) + 1);
        return Ok(t);
    }
    let ni = n as i64;
    t.set(0, 0, 1);
    for r in 0..=ni - 2 {
        t.set(ni - 2, r, j.unipotent((ni - r - 1) as usize));
    }
    Ok(t)
}

/// `1 + (-1)^{n-2} Σ_{i=0}^{n-2} J^1_{n-i-1} T^i`.
pub fn vp_ic_stalk(n: usize, j: &JordanBlockData) -> Result<LaurentPolynomialZ, HodgeError> {
    if n < 3 {
        return Err(HodgeError::BadDimension(n));
    }
    check(n, j)?;
    let ni = n as i64;
    let mut p = LaurentPolynomialZ::one();
    for i in 0..=ni - 2 {
        p.add_term(i, sign(n - 2) * j.unipotent((ni - i - 1) as usize) as i64);
    }
    Ok(p)
}

/// Weight table of the link of the singular point, obtained from the stalk
/// in degrees `<= n-2` and by duality `H^k ≅ H^{2n-3-k}(n-1)^*` above.
pub fn link_weight_table(n: usize, j: &JordanBlockData) -> Result<WeightTable, HodgeError> {
    if n < 3 {
        return Err(HodgeError::BadDimension(n));
    }
    check(n, j)?;
    let ni = n as i64;
    let top = 2 * (ni - 1);
    let mut t = WeightTable::new(WeightKind::Link, n);
    t.set(0, 0, 1);
    t.set(2 * ni - 3, top, 1);
    for r in 0..=ni - 2 {
        let c = j.unipotent((ni - r - 1) as usize);
        t.set(ni - 2, r, c);
        t.set(ni - 1, top - r, c);
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum PurityReason {
    /// The Newton polyhedron is flat.
    Flat,
    NotFlat,
    /// No eigenvalue-1 block has size above one.
    NoLargeUnipotentBlocks,
    /// `count` eigenvalue-1 blocks of size `size >= 2`.
    LargeUnipotentBlocks { size: usize, count: u64 },
    QuasiHomogeneous,
    SmoothPoint,
    /// For `n = 2` the stalk is concentrated in weight 0.
    CurveCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityVerdict {
    pub pure: bool,
    pub witnesses: Vec<PurityReason>,
}

/// Purity of the IC stalk from Jordan data (no eigenvalue-1 block of size
/// `> 1`) and/or flatness of the Newton polyhedron.
///
/// Flatness forces purity. A non-flat polyhedron decides nothing on its own.
pub fn purity_verdict(n: usize, j: Option<&JordanBlockData>, flat: Option<bool>) -> Result<PurityVerdict, HodgeError> {
    if n < 3 {
        return Err(HodgeError::BadDimension(n));
    }
    let mut witnesses = Vec::new();
    let from_jordan = match j {
        Some(j) => {
            check(n, j)?;
            let large: Vec<PurityReason> = (2..n)
                .filter(|&s| j.unipotent(s) > 0)
                .map(|s| PurityReason::LargeUnipotentBlocks {
                    size: s,
                    count: j.unipotent(s),
                })
                .collect();
            let pure = large.is_empty();
            if pure {
                witnesses.push(PurityReason::NoLargeUnipotentBlocks);
            }
            witnesses.extend(large);
            Some(pure)
        }
        None => None,
    };
    if let Some(f) = flat {
        witnesses.push(if f { PurityReason::Flat } else { PurityReason::NotFlat });
    }
    let pure = match (from_jordan, flat) {
        (Some(false), Some(true)) => {
            return Err(HodgeError::InconsistentInputs {
                from_jordan: false,
                from_flatness: true,
            })
        }
        (Some(a), _) => a,
        (None, Some(true)) => true,
        // x^3 + y^3 + z^3 + xy is pure without being flat
        (None, _) => return Err(HodgeError::InsufficientData),
    };
    Ok(PurityVerdict { pure, witnesses })
}

/// Replays the truncation argument that computes the IC-stalk virtual
/// Poincaré polynomial:
///
/// `1 + reflect_{n-1}(trun_{>=n-1}(S - Q_4)) - trun_{<=n-1}(S - Q_4)`,
///
/// where `S` stands for the part symmetric about `n - 1` (zero by default).
/// The symmetric part cancels, so the result equals [`vp_ic_stalk`].
pub fn replay_main_pipeline(
    n: usize,
    j: &JordanBlockData,
    s: Option<&LaurentPolynomialZ>,
) -> Result<LaurentPolynomialZ, HodgeError> {
    if n < 3 {
        return Err(HodgeError::BadDimension(n));
    }
    check(n, j)?;
    let center = n as i64 - 1;
    let zero = LaurentPolynomialZ::zero();
    let s = s.unwrap_or(&zero);
    if !s.is_symmetric(center) {
        return Err(HodgeError::AsymmetricS(center));
    }
    let q4 = build_q4(n, j);
    let rest = s - &q4;
    let upper = rest.trun_ge(center).reflect(center);
    let lower = rest.trun_le(center);
    Ok(&(&LaurentPolynomialZ::one() + &upper) - &lower)
}
