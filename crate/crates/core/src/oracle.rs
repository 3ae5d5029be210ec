//! Brute-force enumeration of minimal atomic decompositions.
//!
//! This is a test fixture for small subspaces. It never touches the closed
//! form in [`crate::invariant`]: decompositions are found by listing every
//! `dim(S)`-subset of atoms and keeping the linearly independent ones.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::invariant::BigCount;
use crate::lattice::{span_of_atoms, Atom, Subspace};
use crate::linalg::MatrixFq;

pub const MAX_ORACLE_ATOMS: u64 = 2000;
pub const MAX_ORACLE_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSet {
    pub subspace: Subspace,
    /// Each entry is a sorted atom set; the list is in lexicographic order.
    pub decompositions: Vec<Vec<Atom>>,
}

fn oracle_atoms(s: &Subspace) -> Result<Vec<Atom>> {
    if s.dim() > MAX_ORACLE_DIM || s.atom_count(MAX_ORACLE_ATOMS).is_none() {
        return Err(Error::GuardExceeded(format!(
            "oracle is limited to dim ≤ {MAX_ORACLE_DIM} and ≤ {MAX_ORACLE_ATOMS} atoms (dim {} over {})",
            s.dim(),
            s.spec()
        )));
    }
    s.enumerate_atoms()
}

fn independent(s: &Subspace, vectors: &[&[u32]]) -> bool {
    let m = MatrixFq::from_rows(s.spec(), s.ambient_dim(), vectors).expect("vectors come from s");
    m.rank() == vectors.len()
}

pub fn enumerate_minimal_decompositions(s: &Subspace) -> Result<DecompositionSet> {
    let atoms = oracle_atoms(s)?;
    let d = s.dim();
    let decompositions = atoms
        .iter()
        .combinations(d)
        .filter(|combo| {
            let vs: Vec<&[u32]> = combo.iter().map(|a| a.vector()).collect();
            independent(s, &vs)
        })
        .map(|combo| combo.into_iter().cloned().collect())
        .collect();
    Ok(DecompositionSet { subspace: s.clone(), decompositions })
}

pub fn count_minimal_decompositions(s: &Subspace) -> Result<BigCount> {
    let atoms = oracle_atoms(s)?;
    let count = atoms
        .iter()
        .combinations(s.dim())
        .filter(|combo| {
            let vs: Vec<&[u32]> = combo.iter().map(|a| a.vector()).collect();
            independent(s, &vs)
        })
        .count();
    Ok(BigCount::from(count as u64))
}

/// Counts unordered bases of `s` by enumerating subsets of its nonzero vectors.
pub fn count_unordered_bases(s: &Subspace) -> Result<BigCount> {
    let q = s.spec().order();
    if s.dim() > 3 || q > 5 {
        return Err(Error::GuardExceeded(format!(
            "basis enumeration is limited to dim ≤ 3 and q ≤ 5 (dim {}, q {q})",
            s.dim()
        )));
    }
    let d = s.dim();
    let vectors: Vec<Vec<u32>> = (1..q.pow(d as u32))
        .map(|mut idx| {
            let coeffs: Vec<u32> = (0..d)
                .map(|_| {
                    let c = (idx % q) as u32;
                    idx /= q;
                    c
                })
                .collect();
            s.basis().combine_rows(&coeffs)
        })
        .collect();
    let count = vectors
        .iter()
        .combinations(d)
        .filter(|combo| {
            let vs: Vec<&[u32]> = combo.iter().map(|v| v.as_slice()).collect();
            independent(s, &vs)
        })
        .count();
    Ok(BigCount::from(count as u64))
}

/// True if `atoms` spans `s` and dropping any single atom does not.
pub fn is_minimal_decomposition(s: &Subspace, atoms: &[Atom]) -> Result<bool> {
    let spec = s.spec();
    let n = s.ambient_dim();
    if span_of_atoms(spec, n, atoms)? != *s {
        return Ok(false);
    }
    for skip in 0..atoms.len() {
        let rest = atoms.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, a)| a);
        if span_of_atoms(spec, n, rest)? == *s {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::invariant::n_count;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn f2_squared_decompositions() {
        let s = Subspace::full(f(2), 2);
        let set = enumerate_minimal_decompositions(&s).unwrap();
        let listed: Vec<Vec<Vec<u32>>> = set
            .decompositions
            .iter()
            .map(|d| d.iter().map(|a| a.vector().to_vec()).collect())
            .collect();
        assert_eq!(
            listed,
            vec![
                vec![vec![0, 1], vec![1, 0]],
                vec![vec![0, 1], vec![1, 1]],
                vec![vec![1, 0], vec![1, 1]],
            ]
        );
    }

    #[test]
    fn small_counts() {
        let line = Subspace::from_rows(f(5), 3, &[[1u32, 2, 3]]).unwrap();
        assert_eq!(enumerate_minimal_decompositions(&line).unwrap().decompositions.len(), 1);
        assert_eq!(count_minimal_decompositions(&Subspace::full(f(3), 2)).unwrap(), big(6));
        assert_eq!(count_minimal_decompositions(&Subspace::full(f(2), 2)).unwrap(), big(3));
        assert_eq!(count_minimal_decompositions(&Subspace::full(f(3), 3)).unwrap(), big(234));
        assert_eq!(count_minimal_decompositions(&Subspace::full(f(5), 3)).unwrap(), big(3875));
        assert_eq!(count_minimal_decompositions(&Subspace::zero(f(5), 3)).unwrap(), big(1));
    }

    #[test]
    fn unordered_basis_counts() {
        assert_eq!(count_unordered_bases(&Subspace::full(f(2), 2)).unwrap(), big(3));
        assert_eq!(count_unordered_bases(&Subspace::full(f(3), 2)).unwrap(), big(24));
        let line = Subspace::from_rows(f(5), 2, &[[1u32, 4]]).unwrap();
        assert_eq!(count_unordered_bases(&line).unwrap(), big(4));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            count_minimal_decompositions(&Subspace::full(f(2), 5)),
            Err(Error::GuardExceeded(_))
        ));
        // 257^2 + 257 + 1 atoms
        assert!(count_minimal_decompositions(&Subspace::full(f(257), 3)).is_err());
        assert!(count_unordered_bases(&Subspace::full(f(7), 2)).is_err());
        assert!(count_unordered_bases(&Subspace::full(f(2), 4)).is_err());
    }

    #[test]
    fn every_decomposition_is_minimal() {
        for (p, n) in [(2u64, 3usize), (3, 3), (2, 4)] {
            let s = Subspace::full(f(p), n);
            let set = enumerate_minimal_decompositions(&s).unwrap();
            assert_eq!(BigCount::from(set.decompositions.len() as u64), n_count(n, p).unwrap());
            for d in &set.decompositions {
                assert_eq!(d.len(), n);
                assert!(is_minimal_decomposition(&s, d).unwrap());
            }
        }
    }

    #[test]
    fn decompositions_extend_to_superspaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let t = Subspace::random(f(2), 4, 3, &mut rng).unwrap();
            let s = Subspace::random(f(2), 4, 2, &mut rng).unwrap().meet(&t).unwrap();
            let t_decomps = enumerate_minimal_decompositions(&t).unwrap().decompositions;
            for sd in enumerate_minimal_decompositions(&s).unwrap().decompositions {
                assert!(t_decomps.iter().any(|td| sd.iter().all(|a| td.contains(a))));
            }
        }
    }
}
