//! The subspace lattice of `F_p^N`: canonical subspaces, join, meet, atoms.
//!
//! A [`Subspace`] always stores its RREF basis with zero rows dropped, so two
//! subspaces are equal exactly when their stored bases are equal.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::MatrixFq;

/// Upper bound on the number of atoms [`Subspace::enumerate_atoms`] will list.
pub const ATOM_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatrixFq,
}

/// A one-dimensional subspace, stored as its representative vector whose
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    spec: FieldSpec,
    vector: Vec<u32>,
}

/// `(q^d - 1)/(q - 1)` if it does not exceed `limit`.
pub(crate) fn projective_count(q: u64, d: usize, limit: u64) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..d {
        total = total.checked_add(pow)?;
        if total > limit {
            return None;
        }
        pow = pow.saturating_mul(q);
    }
    Some(total)
}

impl Subspace {
    /// Span of the rows of `generators`, canonicalized.
    pub fn from_generators(spec: FieldSpec, ambient_dim: usize, generators: &MatrixFq) -> Result<Self> {
        if generators.spec() != spec {
            return Err(Error::FieldMismatch { left: spec.p(), right: generators.spec().p() });
        }
        if generators.cols() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "generators have {} columns, ambient dimension is {ambient_dim}",
                generators.cols()
            )));
        }
        let r = generators.rref();
        Ok(Subspace { basis: r.matrix.truncate_rows(r.rank) })
    }

    /// Convenience constructor from explicit row vectors.
    pub fn from_rows<R: AsRef<[u32]>>(spec: FieldSpec, ambient_dim: usize, rows: &[R]) -> Result<Self> {
        let m = MatrixFq::from_rows(spec, ambient_dim, rows)?;
        Self::from_generators(spec, ambient_dim, &m)
    }

    pub fn zero(spec: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { basis: MatrixFq::zeros(spec, 0, ambient_dim) }
    }

    pub fn full(spec: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { basis: MatrixFq::identity(spec, ambient_dim) }
    }

    /// Span of the given standard basis vectors (0-based indices).
    pub fn coordinate(spec: FieldSpec, ambient_dim: usize, axes: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<u32>> = axes
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    return Err(Error::DimensionMismatch(format!("axis {i} outside F^{ambient_dim}")));
                }
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                Ok(v)
            })
            .collect::<Result<_>>()?;
        Self::from_rows(spec, ambient_dim, &rows)
    }

    /// Uniformly random subspace of the given dimension.
    pub fn random<R: Rng + ?Sized>(spec: FieldSpec, ambient_dim: usize, dim: usize, rng: &mut R) -> Result<Self> {
        if dim > ambient_dim {
            return Err(Error::InvalidArgument(format!("dimension {dim} exceeds ambient {ambient_dim}")));
        }
        loop {
            let g = MatrixFq::random(spec, dim, ambient_dim, rng);
            let s = Self::from_generators(spec, ambient_dim, &g)?;
            if s.dim() == dim {
                return Ok(s);
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.basis.spec()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis (RREF, no zero rows).
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub(crate) fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::FieldMismatch { left: self.spec().p(), right: other.spec().p() });
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// `S + T`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Self::from_generators(self.spec(), self.ambient_dim(), &self.basis.stack(&other.basis)?)
    }

    /// `dim(S + T)` without materializing the sum.
    pub fn join_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(self.basis.stack(&other.basis)?.rank())
    }

    /// `dim(S ∩ T)` by the rank identity.
    pub fn meet_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.join_dim(other)?)
    }

    /// `S ∩ T` by Zassenhaus elimination: reduce `[[A, A], [B, 0]]`; the rows
    /// whose left half vanishes carry a basis of the intersection on the right.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let spec = self.spec();
        let n = self.ambient_dim();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in self.basis.row_iter() {
            let mut v = r.to_vec();
            v.extend_from_slice(r);
            rows.push(v);
        }
        for r in other.basis.row_iter() {
            let mut v = r.to_vec();
            v.extend(std::iter::repeat_n(0, n));
            rows.push(v);
        }
        let z = MatrixFq::from_rows(spec, 2 * n, &rows)?.rref();
        let common: Vec<Vec<u32>> = z
            .matrix
            .row_iter()
            .take(z.rank)
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Self::from_rows(spec, n, &common)
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F^{}",
                v.len(),
                self.ambient_dim()
            )));
        }
        for &x in v {
            self.spec().check(x as u64)?;
        }
        // reduce v against the RREF basis
        let spec = self.spec();
        let mut w = v.to_vec();
        for row in self.basis.row_iter() {
            let pc = row.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let c = w[pc];
            if c != 0 {
                crate::linalg::axpy(spec, &mut w, row, spec.neg_raw(c));
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for r in self.basis.row_iter() {
            if !other.contains_vector(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of atoms `(q^d - 1)/(q - 1)`, if it is at most `limit`.
    pub fn atom_count(&self, limit: u64) -> Option<u64> {
        projective_count(self.spec().order(), self.dim(), limit)
    }

    /// All one-dimensional subspaces of `self`, sorted by vector.
    pub fn enumerate_atoms(&self) -> Result<Vec<Atom>> {
        let count = self.atom_count(ATOM_ENUMERATION_LIMIT).ok_or_else(|| {
            Error::GuardExceeded(format!(
                "{}-dimensional subspace over {} has more than {ATOM_ENUMERATION_LIMIT} atoms",
                self.dim(),
                self.spec()
            ))
        })?;
        let d = self.dim();
        let q = self.spec().p();
        let mut atoms = Vec::with_capacity(count as usize);
        // Coefficient vectors whose first nonzero entry is 1. Because the basis
        // is in RREF the combination is already normalized.
        for lead in 0..d {
            let tail = d - lead - 1;
            let mut coeffs = vec![0u32; d];
            coeffs[lead] = 1;
            for idx in 0..(q as u64).pow(tail as u32) {
                let mut rest = idx;
                for c in coeffs[lead + 1..].iter_mut().rev() {
                    *c = (rest % q as u64) as u32;
                    rest /= q as u64;
                }
                atoms.push(Atom { spec: self.spec(), vector: self.basis.combine_rows(&coeffs) });
            }
        }
        debug_assert_eq!(atoms.len() as u64, count);
        atoms.sort();
        Ok(atoms)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::format_subspace(self))
    }
}

impl Atom {
    /// Normalizes `vector` so its first nonzero coordinate is 1.
    pub fn new(spec: FieldSpec, vector: Vec<u32>) -> Result<Self> {
        for &x in &vector {
            spec.check(x as u64)?;
        }
        let lead = vector
            .iter()
            .copied()
            .find(|&x| x != 0)
            .ok_or_else(|| Error::InvalidArgument("an atom needs a nonzero vector".into()))?;
        let inv = spec.inv_raw(lead);
        let vector = vector.into_iter().map(|x| spec.mul_raw(x, inv)).collect();
        Ok(Atom { spec, vector })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &[u32] {
        &self.vector
    }

    pub fn to_subspace(&self) -> Subspace {
        let basis = MatrixFq::from_rows(self.spec, self.vector.len(), &[&self.vector[..]])
            .expect("atom vectors are valid residues");
        Subspace { basis }
    }
}

/// Join of a collection of atoms inside `F^n`.
pub fn span_of_atoms<'a, I>(spec: FieldSpec, ambient_dim: usize, atoms: I) -> Result<Subspace>
where
    I: IntoIterator<Item = &'a Atom>,
{
    let rows: Vec<&[u32]> = atoms.into_iter().map(|a| a.vector()).collect();
    Subspace::from_rows(spec, ambient_dim, &rows)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector.iter().map(u32::to_string).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn sub(p: u64, n: usize, rows: &[&[u32]]) -> Subspace {
        Subspace::from_rows(f(p), n, rows).unwrap()
    }

    #[test]
    fn from_generators_examples() {
        let s = sub(2, 2, &[&[1, 1], &[1, 1]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis().to_rows(), vec![vec![1, 1]]);

        let s1 = Subspace::coordinate(f(257), 4, &[0, 1]).unwrap();
        assert_eq!(s1.dim(), 2);
        assert_eq!(s1.basis().to_rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);

        let z = Subspace::from_rows::<Vec<u32>>(f(5), 3, &[]).unwrap();
        assert_eq!(z.dim(), 0);
        assert_eq!(z, Subspace::zero(f(5), 3));
        assert!(Subspace::from_rows(f(5), 3, &[[1u32, 0]]).is_err());
    }

    #[test]
    fn join_examples() {
        let s = sub(3, 3, &[&[1, 2, 0]]);
        assert_eq!(s.join(&s).unwrap(), s);
        let e1 = Subspace::coordinate(f(2), 3, &[0]).unwrap();
        let e2 = Subspace::coordinate(f(2), 3, &[1]).unwrap();
        let j = e1.join(&e2).unwrap();
        assert_eq!(j, Subspace::coordinate(f(2), 3, &[0, 1]).unwrap());
        assert_eq!(j.dim(), 2);

        let f257 = f(257);
        let s1 = Subspace::coordinate(f257, 4, &[0, 1]).unwrap();
        let e3 = Subspace::coordinate(f257, 4, &[2]).unwrap();
        assert_eq!(s1.join(&e3).unwrap(), Subspace::coordinate(f257, 4, &[0, 1, 2]).unwrap());

        assert!(e1.join(&Subspace::zero(f(2), 4)).is_err());
        assert!(e1.join(&Subspace::zero(f(3), 3)).is_err());
    }

    #[test]
    fn meet_examples() {
        let s = sub(5, 3, &[&[1, 2, 3], &[0, 1, 4]]);
        assert_eq!(s.meet(&s).unwrap(), s);
        let e1 = Subspace::coordinate(f(2), 3, &[0]).unwrap();
        let e2 = Subspace::coordinate(f(2), 3, &[1]).unwrap();
        assert!(e1.meet(&e2).unwrap().is_zero());

        let f257 = f(257);
        let u = Subspace::coordinate(f257, 4, &[0, 2]).unwrap();
        let s1 = Subspace::coordinate(f257, 4, &[0, 1]).unwrap();
        let m = u.meet(&s1).unwrap();
        assert_eq!(m, Subspace::coordinate(f257, 4, &[0]).unwrap());
        assert_eq!(u.meet_dim(&s1).unwrap(), 1);
    }

    #[test]
    fn contains_vector_examples() {
        let s = Subspace::coordinate(f(2), 3, &[0, 1]).unwrap();
        assert!(s.contains_vector(&[0, 0, 0]).unwrap());
        assert!(Subspace::zero(f(2), 3).contains_vector(&[0, 0, 0]).unwrap());
        let e1 = Subspace::coordinate(f(2), 2, &[0]).unwrap();
        assert!(!e1.contains_vector(&[0, 1]).unwrap());
        assert!(s.contains_vector(&[1, 1, 0]).unwrap());
        assert!(s.contains_vector(&[1, 1]).is_err());
    }

    #[test]
    fn atom_enumeration_examples() {
        let atoms = Subspace::full(f(2), 2).enumerate_atoms().unwrap();
        let vs: Vec<_> = atoms.iter().map(|a| a.vector().to_vec()).collect();
        assert_eq!(vs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(sub(7, 3, &[&[3, 1, 2]]).enumerate_atoms().unwrap().len(), 1);
        assert_eq!(Subspace::full(f(3), 2).enumerate_atoms().unwrap().len(), 4);
        assert!(Subspace::zero(f(3), 2).enumerate_atoms().unwrap().is_empty());
        assert_eq!(Subspace::full(f(257), 3).atom_count(u64::MAX), Some(66_307));
        // 257^3 + 257^2 + 257 + 1 > 10^6
        assert!(matches!(
            Subspace::full(f(257), 4).enumerate_atoms(),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn atom_to_subspace_examples() {
        let a = Atom::new(f(2), vec![1, 0]).unwrap();
        assert_eq!(a.to_subspace(), Subspace::coordinate(f(2), 2, &[0]).unwrap());
        assert_eq!(Atom::new(f(2), vec![1, 1]).unwrap().to_subspace().dim(), 1);
        let a = Atom::new(f(257), vec![0, 5, 0, 0]).unwrap();
        assert_eq!(a.vector(), &[0, 1, 0, 0]);
        assert_eq!(a.to_subspace(), Subspace::coordinate(f(257), 4, &[1]).unwrap());
        assert!(Atom::new(f(3), vec![0, 0]).is_err());
    }

    fn arb_subspace(p: u64, n: usize) -> impl Strategy<Value = Subspace> {
        (any::<u64>(), 0..=n).prop_map(move |(seed, d)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Subspace::random(f(p), n, d, &mut rng).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lattice_laws(s in arb_subspace(2, 6), t in arb_subspace(2, 6), u in arb_subspace(2, 6)) {
            prop_assert_eq!(s.join(&t)?, t.join(&s)?);
            prop_assert_eq!(s.meet(&t)?, t.meet(&s)?);
            prop_assert_eq!(s.join(&t)?.join(&u)?, s.join(&t.join(&u)?)?);
            prop_assert_eq!(s.meet(&t)?.meet(&u)?, s.meet(&t.meet(&u)?)?);
            prop_assert_eq!(s.join(&s)?, s.clone());
            prop_assert_eq!(s.meet(&s)?, s.clone());
            prop_assert_eq!(s.join(&s.meet(&t)?)?, s.clone());
            prop_assert_eq!(s.meet(&s.join(&t)?)?, s.clone());
        }

        #[test]
        fn modular_law(s in arb_subspace(2, 6), t in arb_subspace(2, 6), u in arb_subspace(2, 6)) {
            // force S ⊆ U by replacing U with S ∨ U
            let u = s.join(&u)?;
            prop_assert!(s.is_subspace_of(&u)?);
            prop_assert_eq!(s.join(&t.meet(&u)?)?, s.join(&t)?.meet(&u)?);
        }

        #[test]
        fn dimension_identity(s in arb_subspace(3, 5), t in arb_subspace(3, 5)) {
            let m = s.meet(&t)?;
            let j = s.join(&t)?;
            prop_assert_eq!(s.dim() + t.dim(), m.dim() + j.dim());
            prop_assert_eq!(m.dim(), s.meet_dim(&t)?);
            prop_assert!(m.is_subspace_of(&s)? && m.is_subspace_of(&t)?);
            prop_assert!(s.is_subspace_of(&j)? && t.is_subspace_of(&j)?);
        }

        #[test]
        fn atoms_are_distinct_members(s in arb_subspace(3, 4)) {
            let atoms = s.enumerate_atoms()?;
            let expected = (3u64.pow(s.dim() as u32) - 1) / 2;
            prop_assert_eq!(atoms.len() as u64, expected);
            let uniq: std::collections::HashSet<_> = atoms.iter().collect();
            prop_assert_eq!(uniq.len(), atoms.len());
            for a in &atoms {
                prop_assert!(s.contains_vector(a.vector())?);
                prop_assert_eq!(Atom::new(s.spec(), a.vector().to_vec())?, a.clone());
            }
        }
    }
}

