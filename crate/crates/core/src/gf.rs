//! Exact arithmetic over prime fields GF(p).
//!
//! Vectors store canonical residues `0..p`. Everything here is integer
//! arithmetic; nothing rounds.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Default cap on `p^t` for anything that enumerates a whole space.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must fit in 32 bits)")]
    ModulusTooLarge(u64),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coordinate {value} out of range for GF({p})")]
    CoordinateOutOfRange { value: u64, p: u32 },
    #[error("vectors must have dimension at least 1")]
    EmptyVector,
    #[error("tensor chain needs at least one factor")]
    EmptyChain,
    #[error("cannot pad a vector of dimension {dim} down to {target}")]
    PadTooShort { dim: usize, target: usize },
    #[error("enumerating {p}^{t} vectors exceeds the budget of {budget}")]
    BudgetExceeded { p: u32, t: usize, budget: u64 },
}

/// A prime field GF(p), verified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let p = u32::try_from(p).map_err(|_| GfError::ModulusTooLarge(p))?;
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    /// `p^t`, or `None` on overflow.
    pub fn space_size(self, t: usize) -> Option<u64> {
        let t = u32::try_from(t).ok()?;
        (self.p as u64).checked_pow(t)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A vector in GF(p)^dim. Ordering is lexicographic on coordinates, which is
/// the canonical order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector {
    field: FieldSpec,
    coords: Vec<u32>,
}

impl FVector {
    pub fn new(field: FieldSpec, coords: Vec<u32>) -> Result<Self, GfError> {
        if coords.is_empty() {
            return Err(GfError::EmptyVector);
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= field.p()) {
            return Err(GfError::CoordinateOutOfRange {
                value: bad as u64,
                p: field.p(),
            });
        }
        Ok(Self { field, coords })
    }

    /// Builds a vector from arbitrary integers, reducing each mod p.
    pub fn from_residues(field: FieldSpec, values: &[i64]) -> Result<Self, GfError> {
        let p = field.p() as i64;
        Self::new(
            field,
            values.iter().map(|v| v.rem_euclid(p) as u32).collect(),
        )
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Result<Self, GfError> {
        Self::new(field, vec![0; dim])
    }

    /// The `i`-th standard basis vector of GF(p)^dim.
    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Result<Self, GfError> {
        let mut coords = vec![0; dim];
        if let Some(c) = coords.get_mut(i) {
            *c = 1;
        }
        Self::new(field, coords)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn inner_product(&self, other: &FVector) -> Result<u32, GfError> {
        self.check_compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    /// Inner product without the field/dimension checks. Callers guarantee
    /// compatibility.
    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &FVector) -> u32 {
        let p = self.field.p() as u64;
        let acc = self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
        acc as u32
    }

    pub fn is_orthogonal_to(&self, other: &FVector) -> Result<bool, GfError> {
        Ok(self.inner_product(other)? == 0)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.dot_unchecked(self) == 0
    }

    pub fn add(&self, other: &FVector) -> Result<FVector, GfError> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FVector {
            field: self.field,
            coords,
        })
    }

    /// Kronecker product: coordinate `i * other.dim() + j` is `self[i] * other[j]`.
    pub fn tensor(&self, other: &FVector) -> Result<FVector, GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.p(), other.field.p()));
        }
        let mut coords = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.coords {
            coords.extend(other.coords.iter().map(|&b| self.field.mul(a, b)));
        }
        Ok(FVector {
            field: self.field,
            coords,
        })
    }

    /// Appends zero coordinates up to dimension `target`.
    pub fn pad_to_dimension(&self, target: usize) -> Result<FVector, GfError> {
        if target < self.dim() {
            return Err(GfError::PadTooShort {
                dim: self.dim(),
                target,
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(target, 0);
        Ok(FVector {
            field: self.field,
            coords,
        })
    }

    fn check_compatible(&self, other: &FVector) -> Result<(), GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.dim() != other.dim() {
            return Err(GfError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Left-associated tensor product `v_1 ⊗ v_2 ⊗ … ⊗ v_m`.
pub fn tensor_chain(factors: &[FVector]) -> Result<FVector, GfError> {
    let (first, rest) = factors.split_first().ok_or(GfError::EmptyChain)?;
    rest.iter().try_fold(first.clone(), |acc, v| acc.tensor(v))
}

/// Every vector of GF(p)^t in lexicographic order, zero vector first.
pub fn all_vectors(field: FieldSpec, t: usize, budget: u64) -> Result<Vec<FVector>, GfError> {
    if t == 0 {
        return Err(GfError::EmptyVector);
    }
    let size = field
        .space_size(t)
        .filter(|&s| s <= budget)
        .ok_or(GfError::BudgetExceeded {
            p: field.p(),
            t,
            budget,
        })?;
    let p = field.p();
    let mut out = Vec::with_capacity(size as usize);
    let mut coords = vec![0u32; t];
    for _ in 0..size {
        out.push(FVector {
            field,
            coords: coords.clone(),
        });
        // odometer increment, last coordinate fastest
        for c in coords.iter_mut().rev() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

/// The non-self-orthogonal vectors of GF(p)^t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSet {
    field: FieldSpec,
    t: usize,
    members: Vec<FVector>,
}

impl QSet {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn members(&self) -> &[FVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The guaranteed lower bound `p^(t-1)` on `|Q|`.
    pub fn lower_bound(&self) -> u64 {
        (self.field.p() as u64).pow(self.t as u32 - 1)
    }
}

/// All nonzero, non-self-orthogonal vectors of GF(p)^t in lexicographic order.
pub fn generate_q(field: FieldSpec, t: usize, budget: u64) -> Result<QSet, GfError> {
    let members = all_vectors(field, t, budget)?
        .into_iter()
        .filter(|v| !v.is_zero() && !v.is_self_orthogonal())
        .collect();
    Ok(QSet { field, t, members })
}
