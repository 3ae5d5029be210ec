//! The decomposition count 𝔑, Gaussian binomials, and the two distances on
//! the subspace lattice.
//!
//! 𝔑 of an `n`-dimensional space over `F_q` is the number of minimal atomic
//! decompositions, given in closed form by
//!
//! ```text
//!            ∏_{i=0}^{n-1} (q^n - q^i)
//!   𝔑(n) = ---------------------------
//!              n! · (q - 1)^n
//! ```
//!
//! and the atomic distance is `𝔑(S) + 𝔑(T) - 2·𝔑(S ∩ T)`. Everything here
//! is exact integer arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::Subspace;
use crate::linalg::MatrixFq;

/// Exact nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - other`, or `None` if that would be negative.
    pub fn checked_sub(&self, other: &BigCount) -> Option<BigCount> {
        if self.0 >= other.0 {
            Some(BigCount(&self.0 - &other.0))
        } else {
            None
        }
    }

    pub fn double(&self) -> BigCount {
        BigCount(&self.0 << 1u32)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl FromStr for BigCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim())
            .map(BigCount)
            .map_err(|_| Error::InvalidArgument(format!("not a nonnegative integer: {s:?}")))
    }
}

impl Add for &BigCount {
    type Output = BigCount;

    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Mul for &BigCount {
    type Output = BigCount;

    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `dim S + dim T - 2 dim(S ∩ T)`.
    Subspace,
    /// `𝔑(S) + 𝔑(T) - 2 𝔑(S ∩ T)`.
    Atomic,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subspace" => Ok(Metric::Subspace),
            "atomic" => Ok(Metric::Atomic),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Subspace => "subspace",
            Metric::Atomic => "atomic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceValue {
    pub metric: Metric,
    pub value: BigCount,
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

/// 𝔑 of a `dim`-dimensional space over a field with `q` elements, from the
/// closed form. The division is checked to be exact.
pub fn n_count(dim: usize, q: u64) -> Result<BigCount> {
    check_q(q)?;
    let qb = BigUint::from(q);
    let qn = qb.pow(dim as u32);
    let mut numerator = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..dim {
        numerator *= &qn - &qi;
        qi *= &qb;
    }
    let factorial: BigUint = (1..=dim as u64).map(BigUint::from).product();
    let denominator = factorial * BigUint::from(q - 1).pow(dim as u32);
    let (quot, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(Error::Arithmetic(format!("closed form for dim={dim}, q={q} left remainder {rem}")));
    }
    Ok(BigCount(quot))
}

fn memo() -> &'static Mutex<HashMap<(u64, usize), BigCount>> {
    static TABLE: OnceLock<Mutex<HashMap<(u64, usize), BigCount>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Memoized [`n_count`]; 𝔑 depends only on `(dim, q)`.
pub fn n_count_cached(dim: usize, q: u64) -> Result<BigCount> {
    if let Some(v) = memo().lock().expect("memo poisoned").get(&(q, dim)) {
        return Ok(v.clone());
    }
    let v = n_count(dim, q)?;
    memo().lock().expect("memo poisoned").insert((q, dim), v.clone());
    Ok(v)
}

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over
/// `F_q`; zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Result<BigCount> {
    check_q(q)?;
    if k > n {
        return Ok(BigCount::zero());
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((i + 1) as u32) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Arithmetic(format!("[{n} choose {k}]_{q} left remainder {rem}")));
    }
    Ok(BigCount(quot))
}

/// `f(a) + f(b) - 2 f(c)` for dimensions with `c ≤ min(a, b)`.
pub fn atomic_from_dims(dim_a: usize, dim_b: usize, dim_meet: usize, q: u64) -> Result<BigCount> {
    let fa = n_count_cached(dim_a, q)?;
    let fb = n_count_cached(dim_b, q)?;
    let fm = n_count_cached(dim_meet, q)?;
    (&fa + &fb)
        .checked_sub(&fm.double())
        .ok_or_else(|| Error::Arithmetic(format!("negative atomic distance for dims {dim_a},{dim_b},{dim_meet}")))
}

/// Classical subspace distance.
pub fn d_subspace(s: &Subspace, t: &Subspace) -> Result<DistanceValue> {
    let m = s.meet_dim(t)?;
    Ok(DistanceValue {
        metric: Metric::Subspace,
        value: BigCount::from((s.dim() + t.dim() - 2 * m) as u64),
    })
}

/// Atomic distance via the rank identity; the meet is never materialized.
pub fn d_atomic(s: &Subspace, t: &Subspace) -> Result<DistanceValue> {
    let m = s.meet_dim(t)?;
    Ok(DistanceValue {
        metric: Metric::Atomic,
        value: atomic_from_dims(s.dim(), t.dim(), m, s.spec().order())?,
    })
}

pub fn distance(metric: Metric, s: &Subspace, t: &Subspace) -> Result<DistanceValue> {
    match metric {
        Metric::Subspace => d_subspace(s, t),
        Metric::Atomic => d_atomic(s, t),
    }
}

/// Atomic distance between the row spaces of two arbitrary generator
/// matrices, using three rank computations and no canonicalization.
pub fn d_atomic_generators(a: &MatrixFq, b: &MatrixFq) -> Result<DistanceValue> {
    let da = a.rank();
    let db = b.rank();
    let dj = a.stack(b)?.rank();
    Ok(DistanceValue {
        metric: Metric::Atomic,
        value: atomic_from_dims(da, db, da + db - dj, a.spec().order())?,
    })
}

/// Erasure, insertion and total atomic cost of receiving `u` when `s` was sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorCosts {
    pub surviving: Subspace,
    pub erasure: BigCount,
    pub insertion: BigCount,
    pub total: BigCount,
}

pub fn atomic_error_costs(s: &Subspace, u: &Subspace) -> Result<ErrorCosts> {
    let surviving = s.meet(u)?;
    let erasure = d_atomic(s, &surviving)?.value;
    let insertion = d_atomic(u, &surviving)?.value;
    let total = d_atomic(u, s)?.value;
    Ok(ErrorCosts { surviving, erasure, insertion, total })
}
