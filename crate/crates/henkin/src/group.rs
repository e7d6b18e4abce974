//! Individuals, permutations, and the three truncated symmetry groups.
//!
//! Each structure kind fixes a finite individual domain and a permutation
//! group acting on it:
//!
//! * [`GroupKind::FullFinitary`]: all permutations of `{0..N}` (single part).
//! * [`GroupKind::PairAuto`]: individuals come in `N` unordered pairs; a
//!   group element permutes pair indices and may flip within each pair, so
//!   it preserves the partner relation.
//! * [`GroupKind::FixPart1`]: two parts; part 1 is fixed pointwise, part 0
//!   is permuted freely.
//!
//! A *support* is a point set whose pointwise stabilizer is taken as the
//! symmetry budget of a predicate. Supports are kept in a normal form that
//! does not change the stabilizer: pair-closed for `PairAuto` (fixing one
//! element of a pair already pins its partner), part-0-only for `FixPart1`
//! (part-1 points are fixed by the whole group anyway).

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("individual {0} is outside the truncated domain")]
    OutsideDomain(Individual),
    #[error("position map is not a bijection")]
    NotBijective,
    #[error("permutation size {got} does not match domain size {want}")]
    SizeMismatch { got: usize, want: usize },
}

/// One individual of a truncated domain. `PairAuto` domains read it as
/// (within-pair position, pair index); the others as (component, position).
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
#[serde(into = "(u8, u32)", from = "(u8, u32)")]
pub struct Individual {
    pub part: u8,
    pub index: u32,
}

impl Individual {
    pub fn new(part: u8, index: u32) -> Self {
        Individual { part, index }
    }
}

impl From<Individual> for (u8, u32) {
    fn from(x: Individual) -> Self {
        (x.part, x.index)
    }
}

impl From<(u8, u32)> for Individual {
    fn from((part, index): (u8, u32)) -> Self {
        Individual { part, index }
    }
}

impl std::fmt::Display for Individual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.part, self.index)
    }
}

/// The individual carrier in the model's lexicographic order; all group and
/// predicate computations work with positions into this order, so
/// "lexicographically least" is simply "least position".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    individuals: Vec<Individual>,
    positions: BTreeMap<Individual, u32>,
}

impl Domain {
    fn new(individuals: Vec<Individual>) -> Self {
        let positions = individuals
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        Domain { individuals, positions }
    }

    pub fn size(&self) -> usize {
        self.individuals.len()
    }

    pub fn individuals(&self) -> &[Individual] {
        &self.individuals
    }

    pub fn position(&self, x: Individual) -> Result<u32, GroupError> {
        self.positions
            .get(&x)
            .copied()
            .ok_or(GroupError::OutsideDomain(x))
    }

    pub fn contains(&self, x: Individual) -> bool {
        self.positions.contains_key(&x)
    }

    pub fn at(&self, pos: u32) -> Individual {
        self.individuals[pos as usize]
    }

    /// Least element of `set` in the model order; `None` when empty.
    pub fn lexico_min<I>(&self, set: I) -> Option<Individual>
    where
        I: IntoIterator<Item = Individual>,
    {
        set.into_iter()
            .filter_map(|x| self.positions.get(&x).copied())
            .min()
            .map(|p| self.at(p))
    }
}

/// A permutation of domain positions. Composition is right-to-left:
/// `p.compose(&q)` applies `q` first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: Vec<u32>,
}

impl Perm {
    pub fn identity(size: usize) -> Perm {
        Perm { map: (0..size as u32).collect() }
    }

    pub fn from_images(map: Vec<u32>) -> Result<Perm, GroupError> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            let slot = seen
                .get_mut(i as usize)
                .ok_or(GroupError::NotBijective)?;
            if *slot {
                return Err(GroupError::NotBijective);
            }
            *slot = true;
        }
        Ok(Perm { map })
    }

    /// Transposition of two positions.
    pub fn swap(size: usize, a: u32, b: u32) -> Perm {
        let mut p = Perm::identity(size);
        p.map.swap(a as usize, b as usize);
        p
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn apply_pos(&self, p: u32) -> u32 {
        self.map[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.size(), other.size(), "composing unequal sizes");
        Perm { map: other.map.iter().map(|&i| self.map[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { map: inv }
    }

    /// Nontrivial cycles as individual lists, for JSON reports.
    pub fn cycles(&self, d: &Domain) -> Vec<Vec<Individual>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() as u32 {
            if seen[start as usize] || self.map[start as usize] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                cycle.push(d.at(cur));
                cur = self.map[cur as usize];
            }
            out.push(cycle);
        }
        out
    }
}

/// A normalized support: the point set whose pointwise stabilizer certifies
/// a predicate. Construct through [`GroupSpec::normalize_support`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Support(BTreeSet<Individual>);

impl Support {
    pub fn empty() -> Support {
        Support::default()
    }

    pub fn points(&self) -> impl Iterator<Item = Individual> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, x: Individual) -> bool {
        self.0.contains(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Support) -> Support {
        Support(self.0.union(&other.0).copied().collect())
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    FullFinitary,
    PairAuto,
    FixPart1,
}

/// A truncated domain together with its symmetry group.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub kind: GroupKind,
    domain: Domain,
}

impl GroupSpec {
    /// All permutations of `{(0,0)..(0,n-1)}`.
    pub fn full_finitary(n: u32) -> GroupSpec {
        let individuals = (0..n).map(|i| Individual::new(0, i)).collect();
        GroupSpec { kind: GroupKind::FullFinitary, domain: Domain::new(individuals) }
    }

    /// `n_pairs` unordered pairs; order is (pair index, within-pair position),
    /// so the pair partners sit next to each other.
    pub fn pair_auto(n_pairs: u32) -> GroupSpec {
        let individuals = (0..n_pairs)
            .flat_map(|i| [Individual::new(0, i), Individual::new(1, i)])
            .collect();
        GroupSpec { kind: GroupKind::PairAuto, domain: Domain::new(individuals) }
    }

    /// Part 0 of size `n0` (permuted freely) before part 1 of size `n1`
    /// (fixed pointwise).
    pub fn fix_part1(n0: u32, n1: u32) -> GroupSpec {
        let individuals = (0..n0)
            .map(|i| Individual::new(0, i))
            .chain((0..n1).map(|i| Individual::new(1, i)))
            .collect();
        GroupSpec { kind: GroupKind::FixPart1, domain: Domain::new(individuals) }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The pair partner of `x` in a `PairAuto` domain.
    pub fn partner(&self, x: Individual) -> Individual {
        debug_assert_eq!(self.kind, GroupKind::PairAuto);
        Individual::new(1 - x.part, x.index)
    }

    pub fn apply(&self, p: &Perm, x: Individual) -> Result<Individual, GroupError> {
        if p.size() != self.domain.size() {
            return Err(GroupError::SizeMismatch { got: p.size(), want: self.domain.size() });
        }
        Ok(self.domain.at(p.apply_pos(self.domain.position(x)?)))
    }

    pub fn apply_tuple(&self, p: &Perm, xs: &[Individual]) -> Result<Vec<Individual>, GroupError> {
        xs.iter().map(|&x| self.apply(p, x)).collect()
    }

    /// Whether `p` belongs to this group (not merely to the symmetric group
    /// of the carrier).
    pub fn member(&self, p: &Perm) -> bool {
        if p.size() != self.domain.size() {
            return false;
        }
        match self.kind {
            GroupKind::FullFinitary => true,
            GroupKind::PairAuto => self.domain.individuals().iter().all(|&x| {
                let y = self.apply(p, x).expect("domain point");
                let yp = self.apply(p, self.partner(x)).expect("domain point");
                yp == self.partner(y)
            }),
            GroupKind::FixPart1 => self
                .domain
                .individuals()
                .iter()
                .filter(|x| x.part == 1)
                .all(|&x| self.apply(p, x).expect("domain point") == x),
        }
    }

    /// Normal form of a support: pair-closed for `PairAuto`, part-0-only
    /// for `FixPart1`. Neither step changes the pointwise stabilizer.
    pub fn normalize_support<I>(&self, points: I) -> Result<Support, GroupError>
    where
        I: IntoIterator<Item = Individual>,
    {
        let mut set = BTreeSet::new();
        for x in points {
            if !self.domain.contains(x) {
                return Err(GroupError::OutsideDomain(x));
            }
            match self.kind {
                GroupKind::PairAuto => {
                    set.insert(x);
                    set.insert(self.partner(x));
                }
                GroupKind::FixPart1 => {
                    if x.part == 0 {
                        set.insert(x);
                    }
                }
                GroupKind::FullFinitary => {
                    set.insert(x);
                }
            }
        }
        Ok(Support(set))
    }

    /// Budget weight of a support: pairs for `PairAuto`, points otherwise.
    pub fn support_weight(&self, s: &Support) -> usize {
        match self.kind {
            GroupKind::PairAuto => s.0.len() / 2,
            _ => s.0.len(),
        }
    }

    /// Points of the domain not pinned by `s` (for `FixPart1`: free part-0
    /// points; part-1 is pinned by the group itself).
    fn free_points(&self, s: &Support) -> Vec<Individual> {
        self.domain
            .individuals()
            .iter()
            .copied()
            .filter(|&x| !s.contains(x) && !(self.kind == GroupKind::FixPart1 && x.part == 1))
            .collect()
    }

    /// Generators of the pointwise stabilizer of `s`: adjacent swaps of free
    /// points or free pairs, plus within-pair flips of free pairs.
    pub fn stabilizer_generators(&self, s: &Support) -> Vec<Perm> {
        let size = self.domain.size();
        let pos = |x: Individual| self.domain.position(x).expect("support normalized");
        match self.kind {
            GroupKind::FullFinitary | GroupKind::FixPart1 => {
                let free = self.free_points(s);
                free.windows(2)
                    .map(|w| Perm::swap(size, pos(w[0]), pos(w[1])))
                    .collect()
            }
            GroupKind::PairAuto => {
                let free_pairs: Vec<u32> = (0..(size / 2) as u32)
                    .filter(|&i| !s.contains(Individual::new(0, i)))
                    .collect();
                let mut gens: Vec<Perm> = free_pairs
                    .iter()
                    .map(|&i| {
                        Perm::swap(size, pos(Individual::new(0, i)), pos(Individual::new(1, i)))
                    })
                    .collect();
                for w in free_pairs.windows(2) {
                    let mut p = Perm::identity(size);
                    for part in 0..2u8 {
                        p.map.swap(
                            pos(Individual::new(part, w[0])) as usize,
                            pos(Individual::new(part, w[1])) as usize,
                        );
                    }
                    gens.push(p);
                }
                gens
            }
        }
    }

    /// Every element of the group. Intended for oracle-scale truncations;
    /// the count is `N!`, `2^N * N!`, or `N0!` by kind.
    pub fn enumerate(&self) -> Vec<Perm> {
        let size = self.domain.size();
        match self.kind {
            GroupKind::FullFinitary => (0..size as u32)
                .permutations(size)
                .map(|map| Perm { map })
                .collect(),
            GroupKind::FixPart1 => {
                let n0 = self
                    .domain
                    .individuals()
                    .iter()
                    .filter(|x| x.part == 0)
                    .count();
                (0..n0 as u32)
                    .permutations(n0)
                    .map(|part0| {
                        let map = part0
                            .iter()
                            .copied()
                            .chain(n0 as u32..size as u32)
                            .collect();
                        Perm { map }
                    })
                    .collect()
            }
            GroupKind::PairAuto => {
                let n = size / 2;
                let mut out = Vec::new();
                for phi in (0..n as u32).permutations(n) {
                    for flips in 0..(1u32 << n) {
                        let mut map = vec![0u32; size];
                        for (src, &dst) in phi.iter().enumerate() {
                            let flip = (flips >> src) & 1;
                            for part in 0..2u32 {
                                map[2 * src + part as usize] = 2 * dst + (part ^ flip);
                            }
                        }
                        out.push(Perm { map });
                    }
                }
                out
            }
        }
    }

    /// Uniformly random group element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let size = self.domain.size();
        match self.kind {
            GroupKind::FullFinitary => {
                let mut map: Vec<u32> = (0..size as u32).collect();
                map.shuffle(rng);
                Perm { map }
            }
            GroupKind::FixPart1 => {
                let n0 = self
                    .domain
                    .individuals()
                    .iter()
                    .filter(|x| x.part == 0)
                    .count();
                let mut part0: Vec<u32> = (0..n0 as u32).collect();
                part0.shuffle(rng);
                part0.extend(n0 as u32..size as u32);
                Perm { map: part0 }
            }
            GroupKind::PairAuto => {
                let n = size / 2;
                let mut phi: Vec<u32> = (0..n as u32).collect();
                phi.shuffle(rng);
                let mut map = vec![0u32; size];
                for (src, &dst) in phi.iter().enumerate() {
                    let flip: u32 = rng.gen_range(0..2);
                    for part in 0..2u32 {
                        map[2 * src + part as usize] = 2 * dst + (part ^ flip);
                    }
                }
                Perm { map }
            }
        }
    }

    /// Brute-force pointwise stabilizer over the enumerated group; the
    /// oracle the generator construction is tested against.
    pub fn brute_stabilizer(&self, points: &[Individual]) -> BTreeSet<Perm> {
        self.enumerate()
            .into_iter()
            .filter(|p| {
                points
                    .iter()
                    .all(|&x| self.apply(p, x).expect("domain point") == x)
            })
            .collect()
    }
}

/// Closure of `gens` under composition (breadth-first).
pub fn generate_subgroup(gens: &[Perm], size: usize) -> BTreeSet<Perm> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let id = Perm::identity(size);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Least set of tuples containing `tuple` and closed under `gens`.
pub fn orbit(
    spec: &GroupSpec,
    tuple: &[Individual],
    gens: &[Perm],
) -> Result<BTreeSet<Vec<Individual>>, GroupError> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = tuple.to_vec();
    for &x in &start {
        spec.domain().position(x)?;
    }
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for g in gens {
            let u = spec.apply_tuple(g, &t)?;
            if !seen.contains(&u) {
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
    }
    Ok(seen)
}

/// Pointwise stabilizers ignore part-1 points in a `FixPart1` group: for
/// every part-0 set `K` (up to size 2) and every part-1 set `P`, the
/// stabilizer of `K` equals the stabilizer of `K ∪ P`, and both equal the
/// subgroup generated from the normalized support. Exhaustive; oracle is
/// [`GroupSpec::brute_stabilizer`].
pub fn check_fixpart1_support_lemma(n0: u32, n1: u32) -> bool {
    let spec = GroupSpec::fix_part1(n0, n1);
    let part0: Vec<Individual> = (0..n0).map(|i| Individual::new(0, i)).collect();
    let part1: Vec<Individual> = (0..n1).map(|i| Individual::new(1, i)).collect();
    let k_sets: Vec<Vec<Individual>> = (0..=2usize.min(n0 as usize))
        .flat_map(|k| part0.iter().copied().combinations(k))
        .collect();
    let p_sets: Vec<Vec<Individual>> = (0..=n1 as usize)
        .flat_map(|k| part1.iter().copied().combinations(k))
        .collect();
    for ks in &k_sets {
        let stab_k = spec.brute_stabilizer(ks);
        for ps in &p_sets {
            let mut kp = ks.clone();
            kp.extend(ps.iter().copied());
            if spec.brute_stabilizer(&kp) != stab_k {
                return false;
            }
            let support = spec.normalize_support(kp).expect("points in domain");
            let generated =
                generate_subgroup(&spec.stabilizer_generators(&support), spec.domain().size());
            if generated != stab_k {
                return false;
            }
        }
    }
    true
}
