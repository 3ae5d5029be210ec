//! Prime field arithmetic.
//!
//! Only prime moduli up to 2^16 are supported; every product of two residues
//! then fits comfortably in a `u64` before reduction.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted modulus.
pub const MAX_MODULUS: u64 = 1 << 16;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.p as u64
    }

    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: (value % self.p as u64) as u32,
            spec: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// Checks that `value` is already a canonical residue.
    pub fn check(self, value: u64) -> Result<u32> {
        if value < self.p as u64 {
            Ok(value as u32)
        } else {
            Err(Error::EntryOutOfRange { value, p: self.p })
        }
    }

    // Raw residue arithmetic used by the matrix kernels.

    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Inverse by Fermat's little theorem. `a` must be nonzero.
    pub(crate) fn inv_raw(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A canonical residue together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    spec: FieldSpec,
}

// Fallible because operands may come from different fields.
#[allow(clippy::should_implement_trait)]
impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn spec(self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElement) -> Result<FieldSpec> {
        if self.spec == other.spec {
            Ok(self.spec)
        } else {
            Err(Error::FieldMismatch {
                left: self.spec.p,
                right: other.spec.p,
            })
        }
    }

    pub fn add(self, other: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(FieldElement {
            value: f.add_raw(self.value, other.value),
            spec: f,
        })
    }

    pub fn sub(self, other: FieldElement) -> Result<FieldElement> {
        self.add(other.neg())
    }

    pub fn neg(self) -> FieldElement {
        FieldElement {
            value: self.spec.neg_raw(self.value),
            spec: self.spec,
        }
    }

    pub fn mul(self, other: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(FieldElement {
            value: f.mul_raw(self.value, other.value),
            spec: f,
        })
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(FieldElement {
            value: self.spec.inv_raw(self.value),
            spec: self.spec,
        })
    }

    pub fn div(self, other: FieldElement) -> Result<FieldElement> {
        self.mul(other.inv()?)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
