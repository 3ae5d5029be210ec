//! The atomic operator channel.
//!
//! A transmitted subspace travels as a redundant set of atoms. The channel
//! erases some of them and inserts fresh atoms lying outside the transmitted
//! subspace; the receiver only sees the join of what arrives.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{projective_count, span_of_atoms, Atom, Subspace};
use crate::linalg::MatrixFq;
use crate::rng::{derive_seed, rng_from_seed, SimRng, STREAM_CHANNEL, STREAM_DECOMPOSITION};

/// Below this many candidate atoms, sampling without replacement switches to
/// explicit enumeration once more than half of them are requested.
const ENUMERATION_FALLBACK: u64 = 1 << 16;

/// A set of distinct atoms of `subspace` whose join is `subspace`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicDecomposition {
    subspace: Subspace,
    atoms: Vec<Atom>,
}

impl AtomicDecomposition {
    pub fn new(subspace: Subspace, atoms: Vec<Atom>) -> Result<Self> {
        let mut seen = HashSet::new();
        for a in &atoms {
            if a.spec() != subspace.spec() || a.ambient_dim() != subspace.ambient_dim() {
                return Err(Error::DimensionMismatch(format!("atom {a} does not live in the ambient space")));
            }
            if !subspace.contains_vector(a.vector())? {
                return Err(Error::InvalidArgument(format!("atom {a} is not contained in the subspace")));
            }
            if !seen.insert(a) {
                return Err(Error::InvalidArgument(format!("duplicate atom {a}")));
            }
        }
        if span_of_atoms(subspace.spec(), subspace.ambient_dim(), &atoms)? != subspace {
            return Err(Error::InvalidArgument("atoms do not span the subspace".into()));
        }
        Ok(AtomicDecomposition { subspace, atoms })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// More atoms than the dimension.
    pub fn is_redundant(&self) -> bool {
        self.atoms.len() > self.subspace.dim()
    }
}

/// Largest decomposition size accepted for `s`.
pub fn max_decomposition_size(s: &Subspace) -> u64 {
    s.atom_count(u64::MAX / 2).unwrap_or(10 * s.dim() as u64)
}

fn random_nonzero_coeffs(rng: &mut SimRng, d: usize, q: u32) -> Vec<u32> {
    loop {
        let c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..q)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// `k` distinct atoms of `s` spanning it: a uniformly random minimal
/// decomposition (from a random basis) plus `k - dim(s)` further random atoms.
pub fn redundant_decomposition(s: &Subspace, k: usize, seed: u64) -> Result<AtomicDecomposition> {
    let d = s.dim();
    if d == 0 {
        return Err(Error::InvalidArgument("the zero subspace has no atoms".into()));
    }
    if k < d {
        return Err(Error::InvalidArgument(format!("{k} atoms cannot span a {d}-dimensional subspace")));
    }
    let available = s.atom_count(u64::MAX / 2);
    let cap = available.unwrap_or(10 * d as u64);
    if k as u64 > cap {
        return Err(Error::Infeasible(format!("{k} atoms requested, at most {cap} available")));
    }
    let spec = s.spec();
    let q = spec.p();
    let mut rng = rng_from_seed(derive_seed(seed, STREAM_DECOMPOSITION));

    let coeffs = loop {
        let c = MatrixFq::random(spec, d, d, &mut rng);
        if c.rank() == d {
            break c;
        }
    };
    let mut atoms: Vec<Atom> = coeffs
        .row_iter()
        .map(|c| Atom::new(spec, s.basis().combine_rows(c)))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<Atom> = atoms.iter().cloned().collect();

    let extra = k - d;
    let enumerate = matches!(available, Some(n) if n <= ENUMERATION_FALLBACK && (k as u64) * 2 > n);
    if enumerate {
        let mut pool: Vec<Atom> = s.enumerate_atoms()?.into_iter().filter(|a| !seen.contains(a)).collect();
        pool.shuffle(&mut rng);
        atoms.extend(pool.into_iter().take(extra));
    } else {
        while atoms.len() < k {
            let a = Atom::new(spec, s.basis().combine_rows(&random_nonzero_coeffs(&mut rng, d, q)))?;
            if seen.insert(a.clone()) {
                atoms.push(a);
            }
        }
    }
    Ok(AtomicDecomposition { subspace: s.clone(), atoms })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErasureModel {
    /// Exactly this many atoms, chosen uniformly.
    FixedCount(usize),
    /// Each atom independently with this probability.
    Iid(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub erasures: ErasureModel,
    pub insertions: usize,
    pub seed: u64,
}

/// Everything that happened during one channel use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelTranscript {
    pub input: AtomicDecomposition,
    pub survivors: Vec<Atom>,
    pub erased: Vec<Atom>,
    pub inserted: Vec<Atom>,
    pub output: Subspace,
}

fn draw_insertions(s: &Subspace, t: usize, rng: &mut SimRng) -> Result<Vec<Atom>> {
    if t == 0 {
        return Ok(Vec::new());
    }
    let spec = s.spec();
    let n = s.ambient_dim();
    if s.dim() == n {
        return Err(Error::Infeasible("no atom lies outside a subspace equal to the ambient space".into()));
    }
    let total = projective_count(spec.order(), n, u64::MAX / 2);
    let inside = s.atom_count(u64::MAX / 2);
    let outside = match (total, inside) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    if let Some(avail) = outside {
        if t as u64 > avail {
            return Err(Error::Infeasible(format!("{t} insertions requested, only {avail} atoms lie outside S")));
        }
    }
    if matches!(total, Some(v) if v <= ENUMERATION_FALLBACK) && (t as u64) * 2 > outside.unwrap_or(u64::MAX) {
        let full = Subspace::full(spec, n);
        let mut pool = Vec::new();
        for a in full.enumerate_atoms()? {
            if !s.contains_vector(a.vector())? {
                pool.push(a);
            }
        }
        pool.shuffle(rng);
        pool.truncate(t);
        return Ok(pool);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(t);
    while out.len() < t {
        let v = random_nonzero_coeffs(rng, n, spec.p());
        if s.contains_vector(&v)? {
            continue;
        }
        let a = Atom::new(spec, v)?;
        if seen.insert(a.clone()) {
            out.push(a);
        }
    }
    Ok(out)
}

fn assemble(input: &AtomicDecomposition, erased_mask: &[bool], inserted: Vec<Atom>) -> Result<ChannelTranscript> {
    let (mut survivors, mut erased) = (Vec::new(), Vec::new());
    for (a, &gone) in input.atoms.iter().zip(erased_mask) {
        if gone {
            erased.push(a.clone());
        } else {
            survivors.push(a.clone());
        }
    }
    let s = &input.subspace;
    let output = span_of_atoms(s.spec(), s.ambient_dim(), survivors.iter().chain(&inserted))?;
    Ok(ChannelTranscript { input: input.clone(), survivors, erased, inserted, output })
}

/// One seeded channel use.
pub fn transmit(d: &AtomicDecomposition, params: &ChannelParams) -> Result<ChannelTranscript> {
    let k = d.atoms.len();
    let mut rng = rng_from_seed(derive_seed(params.seed, STREAM_CHANNEL));
    let mut mask = vec![false; k];
    match params.erasures {
        ErasureModel::FixedCount(e) => {
            if e > k {
                return Err(Error::Infeasible(format!("{e} erasures requested from {k} atoms")));
            }
            for i in rand::seq::index::sample(&mut rng, k, e) {
                mask[i] = true;
            }
        }
        ErasureModel::Iid(rho) => {
            if !(0.0..=1.0).contains(&rho) {
                return Err(Error::InvalidArgument(format!("erasure probability {rho} outside [0, 1]")));
            }
            for m in mask.iter_mut() {
                *m = rng.gen_bool(rho);
            }
        }
    }
    let inserted = draw_insertions(&d.subspace, params.insertions, &mut rng)?;
    assemble(d, &mask, inserted)
}

/// Channel use with explicitly chosen erasures and insertions.
pub fn transmit_explicit(d: &AtomicDecomposition, erase: &[Atom], insert: &[Atom]) -> Result<ChannelTranscript> {
    let mut mask = vec![false; d.atoms.len()];
    for a in erase {
        let i = d
            .atoms
            .iter()
            .position(|b| b == a)
            .ok_or_else(|| Error::InvalidArgument(format!("erased atom {a} is not part of the decomposition")))?;
        if mask[i] {
            return Err(Error::InvalidArgument(format!("atom {a} erased twice")));
        }
        mask[i] = true;
    }
    let s = &d.subspace;
    let mut seen = HashSet::new();
    for b in insert {
        if b.spec() != s.spec() || b.ambient_dim() != s.ambient_dim() {
            return Err(Error::DimensionMismatch(format!("inserted atom {b} does not live in the ambient space")));
        }
        if s.contains_vector(b.vector())? {
            return Err(Error::InvalidArgument(format!("inserted atom {b} meets the transmitted subspace")));
        }
        if !seen.insert(b) {
            return Err(Error::InvalidArgument(format!("atom {b} inserted twice")));
        }
    }
    assemble(d, &mask, insert.to_vec())
}

impl ChannelTranscript {
    /// `S ∩ U`.
    pub fn surviving_subspace(&self) -> Subspace {
        self.input.subspace.meet(&self.output).expect("transcript spaces share an ambient space")
    }

    /// Join of survivors and insertions, recomputed from the recorded atoms.
    pub fn rederive_output(&self) -> Result<Subspace> {
        let s = &self.input.subspace;
        span_of_atoms(s.spec(), s.ambient_dim(), self.survivors.iter().chain(&self.inserted))
    }

    /// Line-oriented dump: field, ambient dimension, the atom lists, and the
    /// canonical output basis.
    pub fn to_text(&self) -> String {
        let s = &self.input.subspace;
        let mut out = String::new();
        let _ = writeln!(out, "q {}", s.spec().p());
        let _ = writeln!(out, "N {}", s.ambient_dim());
        let section = |out: &mut String, name: &str, rows: &mut dyn Iterator<Item = &[u32]>, count: usize| {
            let _ = writeln!(out, "{name} {count}");
            for r in rows {
                out.push_str(&crate::io::format_row(r));
                out.push('\n');
            }
        };
        section(&mut out, "input", &mut self.input.atoms.iter().map(Atom::vector), self.input.atoms.len());
        section(&mut out, "erased", &mut self.erased.iter().map(Atom::vector), self.erased.len());
        section(&mut out, "inserted", &mut self.inserted.iter().map(Atom::vector), self.inserted.len());
        section(&mut out, "output", &mut self.output.basis().row_iter(), self.output.dim());
        out
    }
}
