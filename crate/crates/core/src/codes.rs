//! Subspace codes, minimum-distance decoding, and the Singleton-type bound.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::invariant::{distance, gaussian_binomial, n_count_cached, BigCount, DistanceValue, Metric};
use crate::lattice::Subspace;
use crate::rng::{derive_seed, rng_from_seed, STREAM_CODE};

/// Grassmannians at most this large may be listed outright.
pub const GRASSMANNIAN_ENUMERATION_LIMIT: u64 = 1 << 20;

/// A nonempty list of distinct subspaces of a common ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    spec: FieldSpec,
    ambient_dim: usize,
    codewords: Vec<Subspace>,
}

impl Code {
    pub fn new(spec: FieldSpec, ambient_dim: usize, codewords: Vec<Subspace>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidArgument("a code needs at least one codeword".into()));
        }
        let mut seen = HashSet::new();
        for (i, w) in codewords.iter().enumerate() {
            if w.spec() != spec {
                return Err(Error::FieldMismatch { left: spec.p(), right: w.spec().p() });
            }
            if w.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "codeword {i} lives in dimension {}, code in {ambient_dim}",
                    w.ambient_dim()
                )));
            }
            if !seen.insert(w) {
                return Err(Error::InvalidArgument(format!("codeword {i} is a duplicate")));
            }
        }
        Ok(Code { spec, ambient_dim, codewords })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// The common dimension, if every codeword has the same one.
    pub fn constant_dimension(&self) -> Option<usize> {
        let k = self.codewords[0].dim();
        self.codewords.iter().all(|w| w.dim() == k).then_some(k)
    }

    /// Smallest pairwise distance.
    pub fn min_distance(&self, metric: Metric) -> Result<DistanceValue> {
        if self.codewords.len() < 2 {
            return Err(Error::InvalidArgument("minimum distance needs at least two codewords".into()));
        }
        let mut best: Option<DistanceValue> = None;
        for (a, b) in self.codewords.iter().tuple_combinations() {
            let d = distance(metric, a, b)?;
            if best.as_ref().is_none_or(|cur| d.value < cur.value) {
                best = Some(d);
            }
        }
        Ok(best.expect("at least one pair"))
    }

    /// Exhaustive nearest-codeword search. Ties are reported, never broken.
    pub fn decode(&self, received: &Subspace, metric: Metric) -> Result<DecodeResult> {
        let dists: Vec<BigCount> = self
            .codewords
            .par_iter()
            .map(|w| distance(metric, received, w).map(|d| d.value))
            .collect::<Result<_>>()?;
        let min = dists.iter().min().expect("nonempty code").clone();
        let tied: Vec<usize> = dists.iter().positions(|d| *d == min).collect();
        let outcome = if tied.len() == 1 {
            DecodeOutcome::Unique(tied[0])
        } else {
            DecodeOutcome::Ambiguous(tied)
        };
        Ok(DecodeResult { outcome, distance: DistanceValue { metric, value: min } })
    }

    /// Whether `2 d_𝔑(U, S) < D(C)` for the codeword at `index`. When it
    /// holds, atomic decoding of `received` returns `index` uniquely.
    pub fn half_distance_guarantee(&self, index: usize, received: &Subspace) -> Result<bool> {
        let w = self
            .codewords
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no codeword {index}")))?;
        let d = distance(Metric::Atomic, received, w)?.value;
        let min = self.min_distance(Metric::Atomic)?.value;
        Ok(d.double() < min)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Unique(usize),
    Ambiguous(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub outcome: DecodeOutcome,
    pub distance: DistanceValue,
}

impl DecodeResult {
    pub fn unique(&self) -> Option<usize> {
        match self.outcome {
            DecodeOutcome::Unique(i) => Some(i),
            DecodeOutcome::Ambiguous(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonReport {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: BigCount,
    pub s_star: usize,
    pub delta_eff: usize,
    pub bound: BigCount,
}

impl SingletonReport {
    /// `q,N,k,D,s_star,delta_eff,bound`.
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{},{},{}", self.q, self.n, self.k, self.d, self.s_star, self.delta_eff, self.bound)
    }
}

/// Bound on the size of a constant-dimension code in `G_q(N, k)` with
/// minimum atomic distance `d`.
///
/// `s_star` is the largest `s ≤ k` with `2 (f(k) - f(s)) ≥ d`, found by a
/// descending scan, and the bound is `[N - (k - s_star) + 1 choose k]_q`.
pub fn singleton_bound(q: u64, n: usize, k: usize, d: &BigCount) -> Result<SingletonReport> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ N, got k={k}, N={n}")));
    }
    if d.is_zero() {
        return Err(Error::InvalidArgument("minimum distance must be at least 1".into()));
    }
    let fk = n_count_cached(k, q)?;
    let mut s_star = None;
    for s in (0..=k).rev() {
        let gap = fk.checked_sub(&n_count_cached(s, q)?).expect("𝔑 is isotone").double();
        if gap >= *d {
            s_star = Some(s);
            break;
        }
    }
    let s_star = s_star.ok_or_else(|| {
        let max = fk.checked_sub(&BigCount::one()).expect("𝔑 ≥ 1").double();
        Error::Infeasible(format!("D = {d} exceeds the largest distance {max} between {k}-dimensional subspaces"))
    })?;
    let delta_eff = k - s_star;
    let bound = gaussian_binomial(n - delta_eff + 1, k, q)?;
    Ok(SingletonReport { q, n, k, d: d.clone(), s_star, delta_eff, bound })
}

/// [`singleton_bound`] evaluated at a constant-dimension code's own parameters.
pub fn singleton_bound_for_code(c: &Code) -> Result<SingletonReport> {
    let k = c
        .constant_dimension()
        .ok_or_else(|| Error::InvalidArgument("the bound applies to constant-dimension codes".into()))?;
    let d = c.min_distance(Metric::Atomic)?.value;
    singleton_bound(c.spec().order(), c.ambient_dim(), k, &d)
}

/// Every `k`-dimensional subspace of `F_q^n`, in RREF enumeration order.
pub fn enumerate_grassmannian(spec: FieldSpec, n: usize, k: usize) -> Result<Vec<Subspace>> {
    let total = gaussian_binomial(n, k, spec.order())?;
    if total.to_u64().is_none_or(|t| t > GRASSMANNIAN_ENUMERATION_LIMIT) {
        return Err(Error::GuardExceeded(format!("G_{}({n},{k}) has {total} elements", spec.p())));
    }
    let q = spec.p() as u64;
    let mut out = Vec::with_capacity(total.to_u64().unwrap_or(0) as usize);
    for pivots in (0..n).combinations(k) {
        // free slots: row i, column j > pivots[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        for idx in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u32; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut rest = idx;
            for &(i, j) in &free {
                rows[i][j] = (rest % q) as u32;
                rest /= q;
            }
            out.push(Subspace::from_rows(spec, n, &rows)?);
        }
    }
    Ok(out)
}

/// `size` distinct uniformly random `k`-dimensional subspaces of `F_q^n`.
pub fn random_constant_dimension_code(spec: FieldSpec, n: usize, k: usize, size: usize, seed: u64) -> Result<Code> {
    if k > n {
        return Err(Error::Infeasible(format!("k = {k} exceeds N = {n}")));
    }
    if size == 0 {
        return Err(Error::InvalidArgument("code size must be positive".into()));
    }
    let total = gaussian_binomial(n, k, spec.order())?;
    if BigCount::from(size as u64) > total {
        return Err(Error::Infeasible(format!("{size} codewords requested, G_{}({n},{k}) has {total}", spec.p())));
    }
    let mut rng = rng_from_seed(derive_seed(seed, STREAM_CODE));
    let small = total.to_u64().filter(|&t| t <= GRASSMANNIAN_ENUMERATION_LIMIT);
    if let Some(t) = small {
        if (size as u64) * 2 > t {
            let mut all = enumerate_grassmannian(spec, n, k)?;
            all.shuffle(&mut rng);
            all.truncate(size);
            return Code::new(spec, n, all);
        }
    }
    let mut seen = HashSet::new();
    let mut words = Vec::with_capacity(size);
    let mut misses = 0usize;
    while words.len() < size {
        let w = Subspace::random(spec, n, k, &mut rng)?;
        if seen.insert(w.clone()) {
            words.push(w);
            misses = 0;
        } else {
            misses += 1;
            if misses > 10_000 {
                if small.is_none() {
                    return Err(Error::Infeasible("rejection sampling stalled".into()));
                }
                let mut rest: Vec<Subspace> =
                    enumerate_grassmannian(spec, n, k)?.into_iter().filter(|w| !seen.contains(w)).collect();
                rest.shuffle(&mut rng);
                words.extend(rest.into_iter().take(size - words.len()));
            }
        }
    }
    Code::new(spec, n, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::n_count;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn e257(axes: &[usize]) -> Subspace {
        Subspace::coordinate(f(257), 4, axes).unwrap()
    }

    fn worked_code() -> Code {
        Code::new(f(257), 4, vec![e257(&[0, 1]), e257(&[0, 1, 2])]).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn min_distance_examples() {
        let c = worked_code();
        assert_eq!(c.min_distance(Metric::Atomic).unwrap().value, big(48_397_976_503_040));
        assert_eq!(c.min_distance(Metric::Subspace).unwrap().value, big(1));
        let lines = Code::new(
            f(2),
            2,
            vec![Subspace::coordinate(f(2), 2, &[0]).unwrap(), Subspace::coordinate(f(2), 2, &[1]).unwrap()],
        )
        .unwrap();
        assert_eq!(lines.min_distance(Metric::Subspace).unwrap().value, big(2));
        let one = Code::new(f(2), 2, vec![Subspace::full(f(2), 2)]).unwrap();
        assert!(one.min_distance(Metric::Atomic).is_err());
    }

    #[test]
    fn code_construction_errors() {
        assert!(Code::new(f(2), 2, vec![]).is_err());
        let a = Subspace::coordinate(f(2), 2, &[0]).unwrap();
        assert!(Code::new(f(2), 2, vec![a.clone(), a.clone()]).is_err());
        assert!(Code::new(f(2), 3, vec![a.clone()]).is_err());
        assert!(Code::new(f(3), 2, vec![a]).is_err());
    }

    #[test]
    fn decode_examples() {
        let c = worked_code();
        let u = e257(&[0, 2]);
        let m1 = c.decode(&u, Metric::Subspace).unwrap();
        assert_eq!((m1.unique(), m1.distance.value), (Some(1), big(1)));
        let m2 = c.decode(&u, Metric::Atomic).unwrap();
        assert_eq!((m2.unique(), m2.distance.value), (Some(0), big(66304)));
        for metric in [Metric::Subspace, Metric::Atomic] {
            let r = c.decode(&e257(&[0, 1]), metric).unwrap();
            assert_eq!(r.unique(), Some(0));
            assert!(r.distance.value.is_zero());
        }
        assert!(c.decode(&Subspace::zero(f(257), 3), Metric::Atomic).is_err());
    }

    #[test]
    fn ties_are_reported() {
        let f2 = f(2);
        let c = Code::new(
            f2,
            3,
            vec![Subspace::coordinate(f2, 3, &[0]).unwrap(), Subspace::coordinate(f2, 3, &[1]).unwrap()],
        )
        .unwrap();
        let r = c.decode(&Subspace::coordinate(f2, 3, &[2]).unwrap(), Metric::Subspace).unwrap();
        assert_eq!(r.outcome, DecodeOutcome::Ambiguous(vec![0, 1]));
        assert_eq!(r.unique(), None);
    }

    #[test]
    fn half_distance_examples() {
        let c = worked_code();
        assert!(c.half_distance_guarantee(0, &e257(&[0, 1])).unwrap());
        assert!(c.half_distance_guarantee(0, &e257(&[0, 2])).unwrap());
        assert_eq!(c.decode(&e257(&[0, 2]), Metric::Atomic).unwrap().unique(), Some(0));
        // U = S2 sent as S1: 2·d_𝔑 = 2·(f(3) - f(2)) ≥ D
        assert!(!c.half_distance_guarantee(0, &e257(&[0, 1, 2])).unwrap());
        assert!(c.half_distance_guarantee(5, &e257(&[0])).is_err());
    }

    #[test]
    fn singleton_examples() {
        // f(2) = 3 and f(1) = f(0) = 1 over F_2, so s = 1 already reaches D = 4
        let r = singleton_bound(2, 4, 2, &big(4)).unwrap();
        assert_eq!((r.s_star, r.delta_eff, r.bound.clone()), (1, 1, big(35)));
        assert_eq!(r.csv_row(), "2,4,2,4,1,1,35");

        for (q, n, k) in [(2u64, 5usize, 2usize), (3, 6, 3), (257, 4, 2)] {
            let r = singleton_bound(q, n, k, &big(1)).unwrap();
            assert_eq!((r.s_star, r.delta_eff), (k - 1, 1));
            assert_eq!(r.bound, gaussian_binomial(n, k, q).unwrap());
        }

        let r = singleton_bound(2, 2, 2, &big(2)).unwrap();
        assert_eq!((r.s_star, r.delta_eff, r.bound.clone()), (1, 1, big(1)));

        // D above 2(f(k) - f(0)) has no feasible s
        assert!(matches!(singleton_bound(2, 4, 2, &big(5)), Err(Error::Infeasible(_))));
        // k = 1 cannot reach any positive D since f(1) = f(0)
        assert!(matches!(singleton_bound(2, 4, 1, &big(1)), Err(Error::Infeasible(_))));
        assert!(singleton_bound(2, 4, 0, &big(1)).is_err());
        assert!(singleton_bound(2, 4, 5, &big(1)).is_err());
        assert!(singleton_bound(2, 4, 2, &big(0)).is_err());
    }

    #[test]
    fn singleton_monotone_in_d() {
        for (q, n, k) in [(2u64, 6usize, 3usize), (3, 5, 2), (2, 8, 4)] {
            let max = n_count(k, q).unwrap().checked_sub(&BigCount::one()).unwrap().double();
            let max = max.to_u64().unwrap().min(3000);
            let mut prev: Option<BigCount> = None;
            for d in 1..=max {
                let b = singleton_bound(q, n, k, &big(d)).unwrap().bound;
                if let Some(p) = &prev {
                    assert!(b <= *p);
                }
                prev = Some(b);
            }
        }
    }

    #[test]
    fn grassmannian_enumeration_counts() {
        for (q, n, k) in [(2u64, 4usize, 2usize), (3, 4, 2), (2, 5, 3), (2, 3, 0), (5, 3, 1)] {
            let all = enumerate_grassmannian(f(q), n, k).unwrap();
            assert_eq!(BigCount::from(all.len() as u64), gaussian_binomial(n, k, q).unwrap());
            let uniq: HashSet<_> = all.iter().collect();
            assert_eq!(uniq.len(), all.len());
            assert!(all.iter().all(|w| w.dim() == k));
        }
    }

    #[test]
    fn random_code_examples() {
        let c = random_constant_dimension_code(f(3), 5, 2, 1, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.constant_dimension(), Some(2));
        let c = random_constant_dimension_code(f(2), 4, 2, 35, 0).unwrap();
        let all: HashSet<_> = enumerate_grassmannian(f(2), 4, 2).unwrap().into_iter().collect();
        assert_eq!(c.codewords().iter().cloned().collect::<HashSet<_>>(), all);
        let c = random_constant_dimension_code(f(2), 3, 1, 7, 0).unwrap();
        assert_eq!(c.len(), 7);
        assert!(random_constant_dimension_code(f(2), 4, 2, 36, 0).is_err());
        assert!(random_constant_dimension_code(f(2), 4, 5, 1, 0).is_err());
        assert_eq!(
            random_constant_dimension_code(f(3), 6, 3, 20, 77).unwrap(),
            random_constant_dimension_code(f(3), 6, 3, 20, 77).unwrap()
        );
    }

    #[test]
    fn random_codes_respect_the_bound() {
        for seed in 0..40u64 {
            let (q, n, k, size) = match seed % 4 {
                0 => (2, 4, 2, 3),
                1 => (2, 6, 3, 8),
                2 => (3, 4, 2, 5),
                _ => (2, 5, 2, 12),
            };
            let c = random_constant_dimension_code(f(q), n, k, size, seed).unwrap();
            let r = singleton_bound_for_code(&c).unwrap();
            assert!(BigCount::from(c.len() as u64) <= r.bound);
            // exhaustive scan over all s agrees with the descending scan
            let fk = n_count(k, q).unwrap();
            let exhaustive = (0..=k)
                .filter(|&s| fk.checked_sub(&n_count(s, q).unwrap()).unwrap().double() >= r.d)
                .max()
                .unwrap();
            assert_eq!(exhaustive, r.s_star);
        }
    }
}
