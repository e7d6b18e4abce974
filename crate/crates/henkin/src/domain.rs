//! Bounded-support predicates over a truncated domain, and the structures
//! whose second-order quantifiers range over them.
//!
//! A predicate is admitted when its extension is invariant under the
//! pointwise stabilizer of some finite support within the budget. Because
//! every stabilizer orbit of tuples is either wholly inside or wholly
//! outside an invariant extension, the admitted extensions for one support
//! are exactly the unions of orbits; [`HenkinStructure::enumerate_predicates`]
//! walks the supports in weight order, takes all orbit unions, and
//! deduplicates extensionally, keeping the first (minimal-weight) support.
//!
//! When the orbit count exceeds [`MAX_ORBITS`] the exact listing is
//! intractable and callers fall back to [`HenkinStructure::sampled_battery`]:
//! a deterministic, seeded selection of orbit unions per support, topped up
//! with curated predicates (named relations, diagonals, products, and the
//! finite partial bijections of the two-part structure). Results that
//! depend on a battery instead of an exact listing are flagged as sampled.

use crate::group::{Domain, GroupError, GroupKind, GroupSpec, Individual, Perm, Support};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Largest orbit count for which all orbit unions are enumerated.
pub const MAX_ORBITS: usize = 24;

/// Largest exact predicate domain handed to a quantifier sweep; bigger
/// domains fall back to the sampled battery.
pub const MAX_PREDICATES: usize = 70_000;

/// Orbit counts up to this bound are exhausted even inside a sampled
/// battery (at most 512 unions per support).
const EXHAUST_ORBITS: usize = 9;

/// Hard cap on the tuple space of one predicate.
const MAX_CODES: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DomainError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(
        "{count} tuple orbits at arity {arity}, support weight {weight} \
         exceed the enumerable bound of {MAX_ORBITS}"
    )]
    OrbitGuard { arity: u8, weight: usize, count: usize },
    #[error(
        "more than {MAX_PREDICATES} distinct predicates at arity {arity}, \
         budget {budget}; exact enumeration abandoned"
    )]
    EnumerationTooLarge { arity: u8, budget: usize },
    #[error("extension moves under the stabilizer of the recorded support")]
    NotInvariant,
    #[error("tuple length {got} does not match arity {want}")]
    TupleArity { got: usize, want: u8 },
    #[error("predicate spans {got} tuple codes, structure domain expects {want}")]
    DomainMismatch { got: u64, want: u64 },
    #[error("support weight {got} exceeds the budget {budget}")]
    BudgetExceeded { got: usize, budget: usize },
    #[error("arity {arity} over {size} individuals overflows the tuple-space cap")]
    SizeOverflow { arity: u8, size: u32 },
    #[error("policy requires s_exist >= s_univ, got s_univ={s_univ}, s_exist={s_exist}")]
    BadPolicy { s_univ: usize, s_exist: usize },
    #[error("truncation too small: {0}")]
    FidelityGuard(String),
}

fn code_count(arity: u8, size: u32) -> Result<u64, DomainError> {
    let mut total: u64 = 1;
    for _ in 0..arity {
        total = total
            .checked_mul(u64::from(size))
            .filter(|&t| t <= MAX_CODES)
            .ok_or(DomainError::SizeOverflow { arity, size })?;
    }
    Ok(total)
}

fn encode_positions(positions: &[u32], size: u32) -> u64 {
    positions
        .iter()
        .fold(0u64, |acc, &p| acc * u64::from(size) + u64::from(p))
}

fn decode_positions(mut code: u64, arity: u8, size: u32) -> Vec<u32> {
    let mut out = vec![0u32; arity as usize];
    for slot in out.iter_mut().rev() {
        *slot = (code % u64::from(size)) as u32;
        code /= u64::from(size);
    }
    out
}

/// Set of tuples over domain positions, stored as a bitset over tuple
/// codes. The first tuple component is the most significant digit, so
/// bitset order coincides with lexicographic order on position tuples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extension {
    arity: u8,
    size: u32,
    codes: u64,
    words: Vec<u64>,
}

impl Extension {
    /// The empty `arity`-ary extension over `size` positions.
    pub fn empty(arity: u8, size: u32) -> Result<Extension, DomainError> {
        let codes = code_count(arity, size)?;
        Ok(Extension { arity, size, codes, words: vec![0; codes.div_ceil(64) as usize] })
    }

    /// The extension holding every `arity`-tuple.
    pub fn full(arity: u8, size: u32) -> Result<Extension, DomainError> {
        let mut e = Extension::empty(arity, size)?;
        for w in &mut e.words {
            *w = u64::MAX;
        }
        let tail = e.codes % 64;
        if tail != 0 {
            if let Some(last) = e.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Ok(e)
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn domain_size(&self) -> u32 {
        self.size
    }

    /// Number of distinct tuple codes (`size^arity`).
    pub fn code_space(&self) -> u64 {
        self.codes
    }

    /// Encodes a position tuple; panics on wrong length or out-of-range
    /// positions, which indicate a caller bug rather than bad data.
    pub fn encode(&self, positions: &[u32]) -> u64 {
        assert_eq!(positions.len(), self.arity as usize, "tuple arity");
        debug_assert!(positions.iter().all(|&p| p < self.size));
        encode_positions(positions, self.size)
    }

    pub fn decode(&self, code: u64) -> Vec<u32> {
        decode_positions(code, self.arity, self.size)
    }

    pub fn contains(&self, code: u64) -> bool {
        let (w, b) = ((code / 64) as usize, code % 64);
        self.words[w] >> b & 1 == 1
    }

    pub fn insert(&mut self, code: u64) {
        assert!(code < self.codes, "tuple code out of range");
        let (w, b) = ((code / 64) as usize, code % 64);
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, code: u64) {
        let (w, b) = ((code / 64) as usize, code % 64);
        self.words[w] &= !(1 << b);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Codes in ascending (lexicographic tuple) order.
    pub fn iter_codes(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.codes).filter(|&c| self.contains(c))
    }

    /// Least code, i.e. the lexicographically least member tuple.
    pub fn min_code(&self) -> Option<u64> {
        self.iter_codes().next()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// An admitted predicate: an extension together with a support whose
/// pointwise stabilizer provably fixes the extension. Constructors verify
/// that invariance certificate; a value of this type always carries one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPredicate {
    arity: u8,
    support: Support,
    extension: Extension,
}

impl SymbolicPredicate {
    /// Builds a predicate and verifies the invariance certificate: every
    /// stabilizer generator of the (normalized) support must fix the
    /// extension setwise.
    pub fn new(
        spec: &GroupSpec,
        support_points: impl IntoIterator<Item = Individual>,
        extension: Extension,
    ) -> Result<SymbolicPredicate, DomainError> {
        let want = code_count(extension.arity, spec.domain().size() as u32)?;
        if extension.codes != want {
            return Err(DomainError::DomainMismatch { got: extension.codes, want });
        }
        let support = spec.normalize_support(support_points)?;
        let gens = spec.stabilizer_generators(&support);
        if !extension_invariant(&extension, &gens) {
            return Err(DomainError::NotInvariant);
        }
        Ok(SymbolicPredicate { arity: extension.arity, support, extension })
    }

    /// Builds a predicate from explicit individual tuples.
    pub fn from_tuples<T, U>(
        spec: &GroupSpec,
        arity: u8,
        support_points: T,
        tuples: U,
    ) -> Result<SymbolicPredicate, DomainError>
    where
        T: IntoIterator<Item = Individual>,
        U: IntoIterator<Item = Vec<Individual>>,
    {
        let domain = spec.domain();
        let mut ext = Extension::empty(arity, domain.size() as u32)?;
        let mut positions = Vec::with_capacity(arity as usize);
        for tuple in tuples {
            if tuple.len() != arity as usize {
                return Err(DomainError::TupleArity { got: tuple.len(), want: arity });
            }
            positions.clear();
            for x in tuple {
                positions.push(domain.position(x)?);
            }
            ext.insert(encode_positions(&positions, domain.size() as u32));
        }
        SymbolicPredicate::new(spec, support_points, ext)
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    /// Support weight under the structure's unit convention (pairs count
    /// once in the pair-automorphism structure).
    pub fn weight(&self, spec: &GroupSpec) -> usize {
        spec.support_weight(&self.support)
    }

    /// Membership of a position tuple; the evaluator's hot path.
    pub fn contains_positions(&self, positions: &[u32]) -> bool {
        self.extension.contains(self.extension.encode(positions))
    }

    /// Membership of an individual tuple.
    pub fn contains_tuple(
        &self,
        domain: &Domain,
        tuple: &[Individual],
    ) -> Result<bool, DomainError> {
        if tuple.len() != self.arity as usize {
            return Err(DomainError::TupleArity { got: tuple.len(), want: self.arity });
        }
        let mut positions = Vec::with_capacity(tuple.len());
        for &x in tuple {
            positions.push(domain.position(x)?);
        }
        Ok(self.contains_positions(&positions))
    }

    /// All member tuples, lexicographically ordered.
    pub fn tuples(&self, domain: &Domain) -> Vec<Vec<Individual>> {
        self.extension
            .iter_codes()
            .map(|c| self.extension.decode(c).into_iter().map(|p| domain.at(p)).collect())
            .collect()
    }

    /// Serializable form (tuples plus support points).
    pub fn to_file(&self, domain: &Domain) -> PredicateFile {
        PredicateFile {
            arity: self.arity,
            support: self.support.points().collect(),
            tuples: self.tuples(domain),
        }
    }

    /// Deserializes and re-verifies the invariance certificate.
    pub fn from_file(spec: &GroupSpec, file: &PredicateFile) -> Result<SymbolicPredicate, DomainError> {
        SymbolicPredicate::from_tuples(
            spec,
            file.arity,
            file.support.iter().copied(),
            file.tuples.iter().cloned(),
        )
    }
}

fn extension_invariant(ext: &Extension, gens: &[Perm]) -> bool {
    gens.iter().all(|g| {
        ext.iter_codes().all(|code| {
            let moved: Vec<u32> =
                ext.decode(code).into_iter().map(|p| g.apply_pos(p)).collect();
            ext.contains(encode_positions(&moved, ext.domain_size()))
        })
    })
}

/// Applies a group element to a predicate: pointwise image of the
/// extension, image of the support, certificate re-verified.
pub fn act_on_predicate(
    spec: &GroupSpec,
    p: &Perm,
    a: &SymbolicPredicate,
) -> Result<SymbolicPredicate, DomainError> {
    let mut ext = Extension::empty(a.arity, a.extension.domain_size())?;
    for code in a.extension.iter_codes() {
        let moved: Vec<u32> = a.extension.decode(code).iter().map(|&q| p.apply_pos(q)).collect();
        ext.insert(encode_positions(&moved, a.extension.domain_size()));
    }
    let support: Result<Vec<Individual>, GroupError> =
        a.support.points().map(|x| spec.apply(p, x)).collect();
    SymbolicPredicate::new(spec, support?, ext)
}

/// On-disk predicate format: explicit tuples plus declared support points.
/// Individuals serialize as `[part, index]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateFile {
    pub arity: u8,
    pub support: Vec<Individual>,
    pub tuples: Vec<Vec<Individual>>,
}

/// How second-order quantifiers are resolved at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExistsStrategy {
    /// Existential predicate quantifiers range over the enumerated (or
    /// sampled) domain at budget `s_exist`.
    Enumerate,
    /// Only proposals of the named witness provider are tried.
    WitnessProvider(String),
    /// Provider proposals first, then the enumerated/sampled range.
    Hybrid(String),
}

/// Budgets and strategy for second-order quantifiers. Universal predicate
/// quantifiers range over supports of weight at most `s_univ`; existential
/// ones may reach `s_exist`. Provider proposals are certificate-checked but
/// not budget-capped: a witness constructed from admitted inputs is always
/// finitely supported, which is all the untruncated structures require.
#[derive(Debug, Clone, Serialize)]
pub struct QuantifierPolicy {
    pub s_univ: usize,
    pub s_exist: usize,
    pub strategy: ExistsStrategy,
    /// Approximate total size of a sampled battery.
    pub sample_size: usize,
    /// Seed for battery sampling (and nothing else).
    pub seed: u64,
}

impl QuantifierPolicy {
    pub const DEFAULT_SEED: u64 = 0x4845_4e4b_494e;

    pub fn new(s_univ: usize, s_exist: usize) -> Result<QuantifierPolicy, DomainError> {
        if s_exist < s_univ {
            return Err(DomainError::BadPolicy { s_univ, s_exist });
        }
        Ok(QuantifierPolicy {
            s_univ,
            s_exist,
            strategy: ExistsStrategy::Enumerate,
            sample_size: 240,
            seed: Self::DEFAULT_SEED,
        })
    }

    pub fn with_strategy(mut self, strategy: ExistsStrategy) -> QuantifierPolicy {
        self.strategy = strategy;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> QuantifierPolicy {
        self.seed = seed;
        self
    }

    pub fn with_sample_size(mut self, sample_size: usize) -> QuantifierPolicy {
        self.sample_size = sample_size;
        self
    }
}

/// A quantifier range: the predicates plus a flag telling whether they are
/// an exact enumeration or a deterministic sample.
#[derive(Debug, Clone)]
pub struct PredicateRange {
    pub predicates: Arc<Vec<SymbolicPredicate>>,
    pub sampled: bool,
}

/// Memoized reason an exact enumeration failed, replayable as the same
/// [`DomainError`] without repeating the walk.
#[derive(Debug, Clone, Copy)]
enum EnumFailure {
    OrbitGuard { arity: u8, weight: usize, count: usize },
    TooLarge { arity: u8, budget: usize },
}

impl EnumFailure {
    fn to_error(self) -> DomainError {
        match self {
            EnumFailure::OrbitGuard { arity, weight, count } => {
                DomainError::OrbitGuard { arity, weight, count }
            }
            EnumFailure::TooLarge { arity, budget } => {
                DomainError::EnumerationTooLarge { arity, budget }
            }
        }
    }
}

/// Cache of predicate domains keyed by `(arity, support budget)`.
type DomainCache = Mutex<BTreeMap<(u8, usize), Arc<Vec<SymbolicPredicate>>>>;

/// A truncated structure: a symmetry group over a finite domain, quantifier
/// budgets, named predicates, and lazily built predicate domains.
#[derive(Debug)]
pub struct HenkinStructure {
    name: String,
    spec: GroupSpec,
    policy: QuantifierPolicy,
    named: BTreeMap<String, SymbolicPredicate>,
    curated: BTreeMap<u8, Vec<SymbolicPredicate>>,
    exact_cache: DomainCache,
    sampled_cache: DomainCache,
    /// Exact enumerations known to trip a guard, so repeated quantifier
    /// sweeps fail over to the battery without redoing the doomed walk.
    failed_cache: Mutex<BTreeMap<(u8, usize), EnumFailure>>,
}

impl HenkinStructure {
    fn raw(name: &str, spec: GroupSpec, policy: QuantifierPolicy) -> HenkinStructure {
        HenkinStructure {
            name: name.to_string(),
            spec,
            policy,
            named: BTreeMap::new(),
            curated: BTreeMap::new(),
            exact_cache: Mutex::new(BTreeMap::new()),
            sampled_cache: Mutex::new(BTreeMap::new()),
            failed_cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn domain(&self) -> &Domain {
        self.spec.domain()
    }

    pub fn policy(&self) -> &QuantifierPolicy {
        &self.policy
    }

    /// Replaces the quantifier policy, dropping cached ranges whose
    /// sampling parameters may have changed.
    pub fn set_policy(&mut self, policy: QuantifierPolicy) -> Result<(), DomainError> {
        if policy.s_exist < policy.s_univ {
            return Err(DomainError::BadPolicy {
                s_univ: policy.s_univ,
                s_exist: policy.s_exist,
            });
        }
        self.policy = policy;
        self.exact_cache.lock().expect("cache lock").clear();
        self.sampled_cache.lock().expect("cache lock").clear();
        self.failed_cache.lock().expect("cache lock").clear();
        Ok(())
    }

    pub fn named(&self, name: &str) -> Option<&SymbolicPredicate> {
        self.named.get(name)
    }

    pub fn named_predicates(&self) -> impl Iterator<Item = (&str, &SymbolicPredicate)> {
        self.named.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// All normalized supports of weight at most `budget`, in weight order
    /// then unit order.
    pub fn candidate_supports(&self, budget: usize) -> Vec<Support> {
        let units: Vec<Vec<Individual>> = match self.spec.kind {
            GroupKind::FullFinitary => {
                self.domain().individuals().iter().map(|&x| vec![x]).collect()
            }
            GroupKind::PairAuto => (0..(self.domain().size() / 2) as u32)
                .map(|v| vec![Individual::new(0, v), Individual::new(1, v)])
                .collect(),
            GroupKind::FixPart1 => self
                .domain()
                .individuals()
                .iter()
                .copied()
                .filter(|x| x.part == 0)
                .map(|x| vec![x])
                .collect(),
        };
        let budget = budget.min(units.len());
        let mut out = Vec::new();
        for k in 0..=budget {
            for combo in units.iter().combinations(k) {
                let points = combo.into_iter().flatten().copied();
                out.push(self.spec.normalize_support(points).expect("units lie in the domain"));
            }
        }
        out
    }

    fn tuple_orbits(&self, gens: &[Perm], arity: u8) -> Result<Vec<Vec<u64>>, DomainError> {
        let size = self.domain().size() as u32;
        let total = code_count(arity, size)?;
        let mut seen = vec![false; total as usize];
        let mut orbits = Vec::new();
        for start in 0..total {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut frontier = vec![start];
            while let Some(code) = frontier.pop() {
                let positions = decode_positions(code, arity, size);
                for g in gens {
                    let moved: Vec<u32> = positions.iter().map(|&p| g.apply_pos(p)).collect();
                    let next = encode_positions(&moved, size);
                    if !seen[next as usize] {
                        seen[next as usize] = true;
                        orbit.push(next);
                        frontier.push(next);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Exact predicate domain at the given arity and support budget: one
    /// representative per distinct extension, every predicate admitting a
    /// support of weight ≤ `budget` present, canonically ordered by
    /// extension. Errors when any support's orbit count exceeds
    /// [`MAX_ORBITS`] or the deduplicated listing outgrows
    /// [`MAX_PREDICATES`].
    pub fn enumerate_predicates(
        &self,
        arity: u8,
        budget: usize,
    ) -> Result<Arc<Vec<SymbolicPredicate>>, DomainError> {
        let key = (arity, budget);
        if let Some(hit) = self.exact_cache.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        if let Some(failure) = self.failed_cache.lock().expect("cache lock").get(&key) {
            return Err(failure.to_error());
        }
        let fail = |f: EnumFailure| {
            self.failed_cache.lock().expect("cache lock").insert(key, f);
            f.to_error()
        };
        let size = self.domain().size() as u32;
        let mut dedup: BTreeMap<Extension, Support> = BTreeMap::new();
        for support in self.candidate_supports(budget) {
            let gens = self.spec.stabilizer_generators(&support);
            let orbits = self.tuple_orbits(&gens, arity)?;
            if orbits.len() > MAX_ORBITS {
                return Err(fail(EnumFailure::OrbitGuard {
                    arity,
                    weight: self.spec.support_weight(&support),
                    count: orbits.len(),
                }));
            }
            for mask in 0u64..(1u64 << orbits.len()) {
                let mut ext = Extension::empty(arity, size)?;
                for (i, orbit) in orbits.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for &code in orbit {
                            ext.insert(code);
                        }
                    }
                }
                dedup.entry(ext).or_insert_with(|| support.clone());
                if dedup.len() > MAX_PREDICATES {
                    return Err(fail(EnumFailure::TooLarge { arity, budget }));
                }
            }
        }
        let mut preds = Vec::with_capacity(dedup.len());
        for (ext, support) in dedup {
            preds.push(SymbolicPredicate::new(&self.spec, support.points(), ext)?);
        }
        let preds = Arc::new(preds);
        self.exact_cache.lock().expect("cache lock").insert(key, Arc::clone(&preds));
        Ok(preds)
    }

    /// Deterministic sampled stand-in for an intractable exact domain:
    /// named and curated predicates within budget, the empty and full
    /// extensions, plus seeded orbit-union samples for every support.
    pub fn sampled_battery(
        &self,
        arity: u8,
        budget: usize,
    ) -> Result<Arc<Vec<SymbolicPredicate>>, DomainError> {
        let key = (arity, budget);
        if let Some(hit) = self.sampled_cache.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let size = self.domain().size() as u32;
        let mut dedup: BTreeMap<Extension, SymbolicPredicate> = BTreeMap::new();
        let admit = |p: SymbolicPredicate, dedup: &mut BTreeMap<_, SymbolicPredicate>| {
            dedup.entry(p.extension.clone()).or_insert(p);
        };
        admit(
            SymbolicPredicate::new(&self.spec, [], Extension::empty(arity, size)?)?,
            &mut dedup,
        );
        admit(
            SymbolicPredicate::new(&self.spec, [], Extension::full(arity, size)?)?,
            &mut dedup,
        );
        let curated = self.curated.get(&arity).map(|v| v.as_slice()).unwrap_or(&[]);
        let named = self.named.values().filter(|p| p.arity == arity);
        for p in curated.iter().chain(named) {
            if p.weight(&self.spec) <= budget {
                admit(p.clone(), &mut dedup);
            }
        }
        let supports = self.candidate_supports(budget);
        let per_support = (self.policy.sample_size / supports.len().max(1)).max(4);
        for (i, support) in supports.iter().enumerate() {
            let gens = self.spec.stabilizer_generators(support);
            let orbits = self.tuple_orbits(&gens, arity)?;
            let mut masks: Vec<Vec<bool>> = Vec::new();
            if orbits.len() <= EXHAUST_ORBITS {
                for mask in 0u64..(1u64 << orbits.len()) {
                    masks.push((0..orbits.len()).map(|b| mask >> b & 1 == 1).collect());
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(
                    self.policy.seed,
                    &[u64::from(arity), budget as u64, i as u64],
                ));
                for _ in 0..per_support {
                    masks.push((0..orbits.len()).map(|_| rng.gen_bool(0.5)).collect());
                }
            }
            for mask in masks {
                let mut ext = Extension::empty(arity, size)?;
                for (orbit, chosen) in orbits.iter().zip(&mask) {
                    if *chosen {
                        for &code in orbit {
                            ext.insert(code);
                        }
                    }
                }
                admit(
                    SymbolicPredicate::new(&self.spec, support.points(), ext)?,
                    &mut dedup,
                );
            }
        }
        let preds = Arc::new(dedup.into_values().collect::<Vec<_>>());
        self.sampled_cache.lock().expect("cache lock").insert(key, Arc::clone(&preds));
        Ok(preds)
    }

    /// The range a quantifier of this arity actually sweeps at the given
    /// budget: the exact enumeration when tractable, the sampled battery
    /// otherwise.
    pub fn quantifier_range(
        &self,
        arity: u8,
        budget: usize,
    ) -> Result<PredicateRange, DomainError> {
        match self.enumerate_predicates(arity, budget) {
            Ok(predicates) => Ok(PredicateRange { predicates, sampled: false }),
            Err(DomainError::OrbitGuard { .. } | DomainError::EnumerationTooLarge { .. }) => {
                Ok(PredicateRange {
                    predicates: self.sampled_battery(arity, budget)?,
                    sampled: true,
                })
            }
            Err(e) => Err(e),
        }
    }
}

pub(crate) fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut z = seed;
    for &p in parts {
        z ^= p.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(z << 6).wrapping_add(z >> 2);
        z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z ^= z >> 27;
    }
    z
}

/// The permutation structure over one sort of indistinguishable points:
/// all finitary permutations act.
pub fn build_sigma0(n: u32, policy: QuantifierPolicy) -> Result<HenkinStructure, DomainError> {
    if (n as usize) < policy.s_univ + 2 {
        return Err(DomainError::FidelityGuard(format!(
            "{n} points cannot leave two free points beyond a weight-{} support; \
             need at least {} (or use build_sigma0_unchecked)",
            policy.s_univ,
            policy.s_univ + 2
        )));
    }
    Ok(build_sigma0_unchecked(n, policy))
}

/// [`build_sigma0`] without the size guard, for boundary experiments.
pub fn build_sigma0_unchecked(n: u32, policy: QuantifierPolicy) -> HenkinStructure {
    HenkinStructure::raw("sigma0", GroupSpec::full_finitary(n), policy)
}

/// The standard structure over `n` points: every predicate is admitted
/// (budgets equal the domain size), quantifiers enumerate.
pub fn build_full(n: u32) -> HenkinStructure {
    let policy = QuantifierPolicy::new(n as usize, n as usize).expect("equal budgets are valid");
    HenkinStructure::raw("full", GroupSpec::full_finitary(n), policy)
}

/// The unordered-pairs structure: `n_pairs` two-element blocks, the group
/// permutes blocks and flips within blocks, and the partner relation is
/// the named predicate `T`.
pub fn build_sigma2(n_pairs: u32, policy: QuantifierPolicy) -> Result<HenkinStructure, DomainError> {
    let n = n_pairs as usize;
    if n < policy.s_univ + 2 || n < policy.s_exist + 1 {
        return Err(DomainError::FidelityGuard(format!(
            "{n_pairs} pairs cannot leave two free pairs beyond every weight-{} support \
             and one beyond every weight-{} support; need at least {} \
             (or use build_sigma2_unchecked)",
            policy.s_univ,
            policy.s_exist,
            (policy.s_univ + 2).max(policy.s_exist + 1)
        )));
    }
    Ok(build_sigma2_unchecked(n_pairs, policy))
}

/// [`build_sigma2`] without the size guard, for boundary experiments.
pub fn build_sigma2_unchecked(n_pairs: u32, policy: QuantifierPolicy) -> HenkinStructure {
    let spec = GroupSpec::pair_auto(n_pairs);
    let mut tuples = Vec::new();
    for v in 0..n_pairs {
        tuples.push(vec![Individual::new(0, v), Individual::new(1, v)]);
        tuples.push(vec![Individual::new(1, v), Individual::new(0, v)]);
    }
    let tau = SymbolicPredicate::from_tuples(&spec, 2, [], tuples)
        .expect("the partner relation is invariant with empty support");
    let mut h = HenkinStructure::raw("sigma2", spec, policy);
    h.named.insert("T".to_string(), tau);
    h
}

/// The two-part structure: part 0 carries indistinguishable points, part 1
/// is pointwise fixed. Named predicates: the part sets `A0`, `A1` and the
/// reflexive order triangle `T` on part 1.
pub fn build_sigma3(
    n0: u32,
    n1: u32,
    policy: QuantifierPolicy,
) -> Result<HenkinStructure, DomainError> {
    if (n0 as usize) < 2 * policy.s_exist + 2 {
        return Err(DomainError::FidelityGuard(format!(
            "part 0 with {n0} points cannot defeat every weight-{} candidate; need at \
             least {} (or use build_sigma3_unchecked)",
            policy.s_exist,
            2 * policy.s_exist + 2
        )));
    }
    if (n1 as usize) < policy.s_exist + 1 {
        return Err(DomainError::FidelityGuard(format!(
            "part 1 with {n1} points is below s_exist + 1 = {} \
             (or use build_sigma3_unchecked)",
            policy.s_exist + 1
        )));
    }
    Ok(build_sigma3_unchecked(n0, n1, policy))
}

/// [`build_sigma3`] without the size guards, for boundary experiments.
pub fn build_sigma3_unchecked(n0: u32, n1: u32, policy: QuantifierPolicy) -> HenkinStructure {
    let spec = GroupSpec::fix_part1(n0, n1);
    let part = |p: u8, n: u32| (0..n).map(move |i| vec![Individual::new(p, i)]);
    let a0 = SymbolicPredicate::from_tuples(&spec, 1, [], part(0, n0))
        .expect("a whole part is invariant with empty support");
    let a1 = SymbolicPredicate::from_tuples(&spec, 1, [], part(1, n1))
        .expect("a whole part is invariant with empty support");
    let tau = SymbolicPredicate::from_tuples(
        &spec,
        2,
        [],
        (0..n1).flat_map(|u1| {
            (0..=u1).map(move |u2| vec![Individual::new(1, u1), Individual::new(1, u2)])
        }),
    )
    .expect("a part-1 relation is invariant with empty support");
    let mut curated2: Vec<SymbolicPredicate> = Vec::new();
    let all: Vec<Individual> = spec.domain().individuals().to_vec();
    let pairs_of = |xs: &[Individual], ys: &[Individual]| -> Vec<Vec<Individual>> {
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| vec![x, y])).collect()
    };
    let part0: Vec<Individual> = all.iter().copied().filter(|x| x.part == 0).collect();
    let part1: Vec<Individual> = all.iter().copied().filter(|x| x.part == 1).collect();
    let products = [
        pairs_of(&part0, &part0),
        pairs_of(&part1, &part1),
        pairs_of(&part0, &part1),
        pairs_of(&part1, &part0),
        all.iter().map(|&x| vec![x, x]).collect(),
    ];
    for tuples in products {
        curated2.push(
            SymbolicPredicate::from_tuples(&spec, 2, [], tuples)
                .expect("part products and the diagonal are invariant with empty support"),
        );
    }
    // Finite partial bijections between the parts: the matching of the
    // first n+1 part-1 points onto the first n+1 part-0 points, pinned by
    // the part-0 points it touches, plus its transpose.
    for n in 0..n0.min(n1) {
        let pins: Vec<Individual> = (0..=n).map(|i| Individual::new(0, i)).collect();
        let down: Vec<Vec<Individual>> =
            (0..=n).map(|i| vec![Individual::new(1, i), Individual::new(0, i)]).collect();
        let up: Vec<Vec<Individual>> =
            (0..=n).map(|i| vec![Individual::new(0, i), Individual::new(1, i)]).collect();
        curated2.push(
            SymbolicPredicate::from_tuples(&spec, 2, pins.iter().copied(), down)
                .expect("a pinned finite matching is invariant"),
        );
        curated2.push(
            SymbolicPredicate::from_tuples(&spec, 2, pins.iter().copied(), up)
                .expect("a pinned finite matching is invariant"),
        );
    }
    let mut h = HenkinStructure::raw("sigma3", spec, policy);
    h.named.insert("A0".to_string(), a0);
    h.named.insert("A1".to_string(), a1);
    h.named.insert("T".to_string(), tau);
    h.curated.insert(2, curated2);
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(s_univ: usize, s_exist: usize) -> QuantifierPolicy {
        QuantifierPolicy::new(s_univ, s_exist).unwrap()
    }

    fn ind(part: u8, index: u32) -> Individual {
        Individual::new(part, index)
    }

    /// Brute-force oracle: every extension over `size` points at `arity`
    /// that is invariant under the stabilizer of some candidate support.
    fn brute_force_admitted(h: &HenkinStructure, arity: u8, budget: usize) -> Vec<Extension> {
        let size = h.domain().size() as u32;
        let total = code_count(arity, size).unwrap();
        assert!(total <= 16, "oracle only meant for tiny tuple spaces");
        let supports = h.candidate_supports(budget);
        let gen_sets: Vec<Vec<Perm>> =
            supports.iter().map(|s| h.group().stabilizer_generators(s)).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << total) {
            let mut ext = Extension::empty(arity, size).unwrap();
            for code in 0..total {
                if mask >> code & 1 == 1 {
                    ext.insert(code);
                }
            }
            if gen_sets.iter().any(|gens| extension_invariant(&ext, gens)) {
                out.push(ext);
            }
        }
        out
    }

    #[test]
    fn extension_codes_follow_lexicographic_tuple_order() {
        let mut e = Extension::empty(2, 3).unwrap();
        assert_eq!(e.code_space(), 9);
        e.insert(e.encode(&[1, 2]));
        e.insert(e.encode(&[0, 1]));
        assert_eq!(e.min_code(), Some(e.encode(&[0, 1])));
        assert_eq!(e.decode(e.encode(&[1, 2])), vec![1, 2]);
        assert_eq!(e.len(), 2);
        let full = Extension::full(2, 3).unwrap();
        assert_eq!(full.len(), 9);
        assert!(e.is_subset(&full));
    }

    #[test]
    fn pair_structure_three_pairs_unary_budget_one_has_twenty_predicates() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let preds = h.enumerate_predicates(1, 1).unwrap();
        assert_eq!(preds.len(), 20);
        let got: Vec<Extension> = preds.iter().map(|p| p.extension().clone()).collect();
        let want = brute_force_admitted(&h, 1, 1);
        assert_eq!(got, want);
    }

    #[test]
    fn pair_structure_budget_zero_unary_is_empty_and_full() {
        let h = build_sigma2(4, policy(0, 0)).unwrap();
        let preds = h.enumerate_predicates(1, 0).unwrap();
        assert_eq!(preds.len(), 2);
        assert!(preds[0].extension().is_empty());
        assert_eq!(preds[1].extension().len(), 8);
    }

    #[test]
    fn pair_structure_four_pairs_binary_budget_zero_has_eight_predicates() {
        let h = build_sigma2(4, policy(0, 0)).unwrap();
        let preds = h.enumerate_predicates(2, 0).unwrap();
        assert_eq!(preds.len(), 8);
        // Independent oracle: partition the 64 pair codes into orbits under
        // the fully enumerated group (384 elements, no generator walk); the
        // admitted extensions are exactly the orbit unions. The orbits are
        // the diagonal, the partner graph, and the cross pairs.
        let size = h.domain().size() as u32;
        let group: Vec<Perm> = h.group().enumerate();
        let mut orbit_of = BTreeMap::new();
        for code in 0..code_count(2, size).unwrap() {
            let positions = decode_positions(code, 2, size);
            let mut orbit: Vec<u64> = group
                .iter()
                .map(|g| {
                    let moved: Vec<u32> =
                        positions.iter().map(|&p| g.apply_pos(p)).collect();
                    encode_positions(&moved, size)
                })
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit_of.insert(orbit.clone(), orbit);
        }
        let orbits: Vec<Vec<u64>> = orbit_of.into_values().collect();
        assert_eq!(orbits.len(), 3);
        let mut want = Vec::new();
        for mask in 0u64..8 {
            let mut ext = Extension::empty(2, size).unwrap();
            for (i, orbit) in orbits.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &code in orbit {
                        ext.insert(code);
                    }
                }
            }
            want.push(ext);
        }
        want.sort();
        let got: Vec<Extension> = preds.iter().map(|p| p.extension().clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn pair_structure_four_pairs_unary_budgets_match_oracle() {
        let h = build_sigma2(4, policy(1, 3)).unwrap();
        let b1 = h.enumerate_predicates(1, 1).unwrap();
        assert_eq!(b1.len(), 26);
        let b3 = h.enumerate_predicates(1, 3).unwrap();
        assert_eq!(b3.len(), 240);
        let got: Vec<Extension> = b3.iter().map(|p| p.extension().clone()).collect();
        let want = brute_force_admitted(&h, 1, 3);
        assert_eq!(got, want);
    }

    #[test]
    fn point_structure_four_points_unary_budget_one_has_ten_predicates() {
        let h = build_sigma0(4, policy(1, 1)).unwrap();
        let preds = h.enumerate_predicates(1, 1).unwrap();
        assert_eq!(preds.len(), 10);
        let got: Vec<Extension> = preds.iter().map(|p| p.extension().clone()).collect();
        let want = brute_force_admitted(&h, 1, 1);
        assert_eq!(got, want);
    }

    #[test]
    fn point_structure_budget_zero_unary_is_empty_and_full() {
        let h = build_sigma0(3, policy(0, 0)).unwrap();
        let preds = h.enumerate_predicates(1, 0).unwrap();
        assert_eq!(preds.len(), 2);
    }

    #[test]
    fn two_part_structure_unary_domain_is_a_product() {
        // Part-0 subsets must be uniform outside a weight-2 support (size
        // <= 2 or >= 4 of 6); part-1 subsets are unconstrained.
        let h = build_sigma3(6, 6, policy(2, 2)).unwrap();
        let preds = h.enumerate_predicates(1, 2).unwrap();
        assert_eq!(preds.len(), 44 * 64);
        let size = h.domain().size() as u32;
        let mut want = Vec::new();
        for mask in 0u64..(1u64 << 12) {
            let mut ext = Extension::empty(1, size).unwrap();
            let mut part0 = 0;
            for code in 0..12 {
                if mask >> code & 1 == 1 {
                    ext.insert(code);
                    if h.domain().at(code as u32).part == 0 {
                        part0 += 1;
                    }
                }
            }
            if part0 <= 2 || part0 >= 4 {
                want.push(ext);
            }
        }
        want.sort();
        let got: Vec<Extension> = preds.iter().map(|p| p.extension().clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn two_part_structure_binary_exact_enumeration_exceeds_orbit_guard() {
        let h = build_sigma3(6, 6, policy(2, 2)).unwrap();
        let err = h.enumerate_predicates(2, 2).unwrap_err();
        assert!(matches!(err, DomainError::OrbitGuard { arity: 2, .. }));
        let range = h.quantifier_range(2, 2).unwrap();
        assert!(range.sampled);
    }

    #[test]
    fn ternary_enumeration_over_size_cap_falls_back_to_battery() {
        // Every support stays under the orbit guard here, but the union of
        // all orbit combinations passes 70 000 distinct extensions.
        let h = build_sigma0(4, policy(1, 1)).unwrap();
        let err = h.enumerate_predicates(3, 1).unwrap_err();
        assert!(matches!(err, DomainError::EnumerationTooLarge { arity: 3, budget: 1 }));
        let range = h.quantifier_range(3, 1).unwrap();
        assert!(range.sampled);
        // The binary domain at maximal budget sits just under the cap and
        // must stay exact.
        let full = build_full(4);
        let range = full.quantifier_range(2, 4).unwrap();
        assert!(!range.sampled);
        assert_eq!(range.predicates.len(), 65_536);
    }

    #[test]
    fn two_part_battery_is_deterministic_and_budget_capped() {
        let h1 = build_sigma3(6, 6, policy(2, 2)).unwrap();
        let h2 = build_sigma3(6, 6, policy(2, 2)).unwrap();
        let b1 = h1.sampled_battery(2, 2).unwrap();
        let b2 = h2.sampled_battery(2, 2).unwrap();
        assert_eq!(b1.as_slice(), b2.as_slice());
        assert!(b1.len() >= 100, "battery too small: {}", b1.len());
        assert!(b1.iter().all(|p| p.weight(h1.group()) <= 2));
        // The named triangle (weight 0) and the two-point matching
        // (weight 2) are present; the three-point matching exceeds the
        // budget and cannot appear in any admitted form.
        let tau = h1.named("T").unwrap();
        assert!(b1.iter().any(|p| p.extension() == tau.extension()));
        let rho1 = SymbolicPredicate::from_tuples(
            h1.group(),
            2,
            [ind(0, 0), ind(0, 1)],
            vec![vec![ind(1, 0), ind(0, 0)], vec![ind(1, 1), ind(0, 1)]],
        )
        .unwrap();
        assert!(b1.iter().any(|p| p.extension() == rho1.extension()));
        let rho2_tuples: Vec<Vec<Individual>> =
            (0..3).map(|i| vec![ind(1, i), ind(0, i)]).collect();
        let rho2 = SymbolicPredicate::from_tuples(
            h1.group(),
            2,
            (0..3).map(|i| ind(0, i)),
            rho2_tuples,
        )
        .unwrap();
        assert!(!b1.iter().any(|p| p.extension() == rho2.extension()));
    }

    #[test]
    fn named_partner_relation_has_empty_support() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let tau = h.named("T").unwrap();
        assert!(tau.support().is_empty());
        assert!(tau.contains_tuple(h.domain(), &[ind(0, 2), ind(1, 2)]).unwrap());
        assert!(tau.contains_tuple(h.domain(), &[ind(1, 2), ind(0, 2)]).unwrap());
        assert!(!tau.contains_tuple(h.domain(), &[ind(0, 2), ind(1, 1)]).unwrap());
        assert_eq!(tau.extension().len(), 6);
    }

    #[test]
    fn two_part_triangle_is_reflexive_downward_order() {
        let h = build_sigma3(4, 4, policy(1, 1)).unwrap();
        let tau = h.named("T").unwrap();
        assert!(tau.contains_tuple(h.domain(), &[ind(1, 3), ind(1, 1)]).unwrap());
        assert!(!tau.contains_tuple(h.domain(), &[ind(1, 1), ind(1, 3)]).unwrap());
        assert!(tau.contains_tuple(h.domain(), &[ind(1, 2), ind(1, 2)]).unwrap());
        assert_eq!(tau.extension().len(), 4 * 5 / 2);
        let a0 = h.named("A0").unwrap();
        assert!(a0.contains_tuple(h.domain(), &[ind(0, 3)]).unwrap());
        assert!(!a0.contains_tuple(h.domain(), &[ind(1, 3)]).unwrap());
    }

    #[test]
    fn group_action_moves_pair_block_predicates() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        // The unary predicate {pair 0}, support pair 0.
        let alpha = SymbolicPredicate::from_tuples(
            h.group(),
            1,
            [ind(0, 0), ind(1, 0)],
            vec![vec![ind(0, 0)], vec![ind(1, 0)]],
        )
        .unwrap();
        // Swap pairs 0 and 1.
        let mut images: Vec<u32> = (0..6).collect();
        images.swap(0, 2);
        images.swap(1, 3);
        let p = Perm::from_images(images).unwrap();
        let beta = act_on_predicate(h.group(), &p, &alpha).unwrap();
        assert!(beta.contains_tuple(h.domain(), &[ind(0, 1)]).unwrap());
        assert!(beta.contains_tuple(h.domain(), &[ind(1, 1)]).unwrap());
        assert_eq!(beta.extension().len(), 2);
        let id = Perm::identity(6);
        assert_eq!(act_on_predicate(h.group(), &id, &alpha).unwrap(), alpha);
        // A stabilizer element of the support fixes the extension.
        for g in h.group().stabilizer_generators(alpha.support()) {
            assert_eq!(act_on_predicate(h.group(), &g, &alpha).unwrap().extension(), alpha.extension());
        }
    }

    #[test]
    fn enumerated_domain_is_closed_under_the_group_action() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let preds = h.enumerate_predicates(1, 1).unwrap();
        let exts: std::collections::BTreeSet<Extension> =
            preds.iter().map(|p| p.extension().clone()).collect();
        for g in h.group().enumerate() {
            let moved: std::collections::BTreeSet<Extension> = preds
                .iter()
                .map(|p| act_on_predicate(h.group(), &g, p).unwrap().extension().clone())
                .collect();
            assert_eq!(moved, exts);
        }
    }

    #[test]
    fn pair_structure_unary_predicates_are_block_dichotomous() {
        // With support K (as pairs), the extension either stays within the
        // K-blocks or swallows every non-K point.
        let h = build_sigma2(4, policy(1, 3)).unwrap();
        for p in h.enumerate_predicates(1, 3).unwrap().iter() {
            let inside: Vec<Individual> = p
                .tuples(h.domain())
                .into_iter()
                .map(|t| t[0])
                .collect();
            let within_support = inside.iter().all(|&x| p.support().contains(x));
            let covers_rest = h
                .domain()
                .individuals()
                .iter()
                .filter(|&&x| !p.support().contains(x))
                .all(|&x| inside.contains(&x));
            assert!(within_support || covers_rest, "dichotomy violated: {p:?}");
        }
    }

    #[test]
    fn pair_structure_rows_are_uniform_on_free_blocks() {
        // For every admitted binary relation and every left argument, the
        // row restricted to blocks outside support-and-own-block is all or
        // nothing.
        let h = build_sigma2(4, policy(1, 1)).unwrap();
        let domain = h.domain();
        for rho in h.enumerate_predicates(2, 1).unwrap().iter() {
            for &xi in domain.individuals() {
                let free: Vec<Individual> = domain
                    .individuals()
                    .iter()
                    .copied()
                    .filter(|&eta| {
                        !rho.support().contains(eta) && eta.index != xi.index
                    })
                    .collect();
                let hits = free
                    .iter()
                    .filter(|&&eta| rho.contains_tuple(domain, &[xi, eta]).unwrap())
                    .count();
                assert!(
                    hits == 0 || hits == free.len(),
                    "free-block row not uniform for {rho:?} at {xi}"
                );
            }
        }
    }

    #[test]
    fn predicate_files_round_trip_and_reject_tampering() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let tau = h.named("T").unwrap();
        let file = tau.to_file(h.domain());
        let json = serde_json::to_string(&file).unwrap();
        let parsed: PredicateFile = serde_json::from_str(&json).unwrap();
        let back = SymbolicPredicate::from_file(h.group(), &parsed).unwrap();
        assert_eq!(&back, tau);
        // Dropping one partner edge breaks invariance under the empty
        // support's stabilizer.
        let mut tampered = file.clone();
        tampered.tuples.pop();
        let err = SymbolicPredicate::from_file(h.group(), &tampered).unwrap_err();
        assert_eq!(err, DomainError::NotInvariant);
    }

    #[test]
    fn size_guards_reject_small_truncations() {
        assert!(matches!(
            build_sigma2(3, policy(1, 3)),
            Err(DomainError::FidelityGuard(_))
        ));
        assert!(matches!(
            build_sigma3(5, 6, policy(2, 2)),
            Err(DomainError::FidelityGuard(_))
        ));
        assert!(matches!(
            build_sigma0(2, policy(1, 1)),
            Err(DomainError::FidelityGuard(_))
        ));
        // The unchecked builders still work for boundary exploration.
        let h = build_sigma2_unchecked(3, policy(1, 3));
        assert_eq!(h.domain().size(), 6);
    }

    #[test]
    fn full_structure_admits_every_extension() {
        let h = build_full(2);
        assert_eq!(h.enumerate_predicates(1, 2).unwrap().len(), 4);
        assert_eq!(h.enumerate_predicates(2, 2).unwrap().len(), 16);
        assert_eq!(h.enumerate_predicates(4, 2).unwrap().len(), 65536);
    }

    #[test]
    fn policy_rejects_inverted_budgets() {
        assert!(matches!(
            QuantifierPolicy::new(2, 1),
            Err(DomainError::BadPolicy { .. })
        ));
    }

    #[test]
    fn comprehension_like_manual_predicates_respect_budget_reporting() {
        let h = build_sigma2(4, policy(1, 3)).unwrap();
        let p = SymbolicPredicate::from_tuples(
            h.group(),
            1,
            [ind(0, 2), ind(1, 2)],
            vec![vec![ind(0, 2)]],
        )
        .unwrap();
        assert_eq!(p.weight(h.group()), 1);
        assert!(p.contains_positions(&[h.domain().position(ind(0, 2)).unwrap()]));
    }

    proptest::proptest! {
        /// Acting on an admitted predicate yields an admitted predicate, and
        /// membership commutes with the action tuple-wise.
        #[test]
        fn group_action_preserves_admission_and_membership(
            pred_idx in 0usize..240,
            perm_seed in 0u64..1_000,
        ) {
            let h = build_sigma2(4, policy(1, 3)).unwrap();
            let preds = h.enumerate_predicates(1, 3).unwrap();
            let p = &preds[pred_idx % preds.len()];
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed);
            let g = h.group().random_element(&mut rng);
            let moved = act_on_predicate(h.group(), &g, p).unwrap();
            for pos in 0..h.domain().size() as u32 {
                proptest::prop_assert_eq!(
                    p.contains_positions(&[pos]),
                    moved.contains_positions(&[g.apply_pos(pos)])
                );
            }
            proptest::prop_assert!(
                moved.weight(h.group()) <= p.weight(h.group()),
                "action must not grow the normalized support"
            );
        }
    }
}
