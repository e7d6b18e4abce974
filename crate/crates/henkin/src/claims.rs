//! Claim registry and harness: every checked statement of the workbench as
//! a named, reproducible run with an expected verdict.
//!
//! A runnable claim evaluates formulas over concrete truncated structures
//! and reports a [`Verdict`]. `True` and `False` are outcomes of searches
//! that either exhausted their ranges or are backed by a complete analytic
//! argument at the truncation; `NoCounterexample` reports a clean search
//! that was partly sampled, so absence of a counterexample is evidence, not
//! proof. Composite claims bundle member results; annotation claims record
//! derived context with no machine-checkable content at desk scale and
//! never affect the overall outcome.
//!
//! Implication claims between closed axioms classify each structure
//! independently: a structure where antecedent and consequent both hold is
//! a witness; antecedent true with consequent false refutes the implication
//! only when neither evaluation sampled, since a sampled existential sweep
//! can miss a witness that exists.

use crate::choice::{
    construct_choice, full_unary, pair_block_condition, part0_initial_segment,
    refute_pair_transversal, refute_row_image_choice, row_image_condition, ChoiceError,
};
use crate::domain::{
    build_full, build_sigma0, build_sigma2, build_sigma3, mix_seed, DomainError, Extension,
    ExistsStrategy, HenkinStructure, QuantifierPolicy, SymbolicPredicate,
};
use crate::eval::{describe_predicate, eval, eval_equivariant_check, Assignment, EvalError};
use crate::formula::{
    build_ac, build_ac_star, build_choice as build_choice_schema, build_choice_h,
    build_choice_star, open_family, parse, Formula, ParseError, SchemaError,
};
use crate::group::{check_fixpart1_support_lemma, Individual};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClaimError {
    #[error("unknown claim id `{0}` (see `claims list`)")]
    UnknownClaim(String),
    #[error("unknown parameter `{0}` (known: n, n0, n1, s_univ, s_exist, sample_size, seed)")]
    UnknownParam(String),
    #[error("parameter `{key}` has invalid value `{value}`")]
    BadParam { key: String, value: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Choice(#[from] ChoiceError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Outcome of a runnable or composite claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    NoCounterexample,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::NoCounterexample => "no-counterexample",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    /// Evaluates formulas and constructions over concrete structures.
    Runnable,
    /// Holds iff every member claim matched its expectation.
    Composite,
    /// Context only; carries notes and related ids, never a verdict.
    Annotation,
}

/// A registered claim: stable id, expectation, and context.
#[derive(Debug, Clone, Copy)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub title: &'static str,
    pub kind: ClaimKind,
    pub expected: Option<Verdict>,
    /// For composites, the member ids; for annotations, related claims.
    pub related: &'static [&'static str],
    pub notes: &'static str,
}

/// Overrides taken from the command line; fields left `None` keep each
/// claim's registered defaults. Size and budget overrides apply to claims
/// built around a single structure; battery claims honor `seed` and
/// `sample_size` only.
#[derive(Debug, Clone, Default)]
pub struct ClaimParams {
    pub n: Option<u32>,
    pub n0: Option<u32>,
    pub n1: Option<u32>,
    pub s_univ: Option<usize>,
    pub s_exist: Option<usize>,
    pub sample_size: Option<usize>,
    pub seed: Option<u64>,
}

impl ClaimParams {
    /// Parses one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ClaimError> {
        let bad = || ClaimError::BadParam { key: key.to_string(), value: value.to_string() };
        match key {
            "n" => self.n = Some(value.parse().map_err(|_| bad())?),
            "n0" => self.n0 = Some(value.parse().map_err(|_| bad())?),
            "n1" => self.n1 = Some(value.parse().map_err(|_| bad())?),
            "s_univ" => self.s_univ = Some(value.parse().map_err(|_| bad())?),
            "s_exist" => self.s_exist = Some(value.parse().map_err(|_| bad())?),
            "sample_size" => self.sample_size = Some(value.parse().map_err(|_| bad())?),
            "seed" => self.seed = Some(value.parse().map_err(|_| bad())?),
            _ => return Err(ClaimError::UnknownParam(key.to_string())),
        }
        Ok(())
    }

    fn policy(&self, s_univ: usize, s_exist: usize) -> Result<QuantifierPolicy, ClaimError> {
        let mut p = QuantifierPolicy::new(
            self.s_univ.unwrap_or(s_univ),
            self.s_exist.unwrap_or(s_exist),
        )?;
        if let Some(k) = self.sample_size {
            p = p.with_sample_size(k);
        }
        if let Some(s) = self.seed {
            p = p.with_seed(s);
        }
        Ok(p)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(QuantifierPolicy::DEFAULT_SEED)
    }
}

/// The reproducible result of one claim run.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub title: String,
    pub kind: ClaimKind,
    pub expected: Option<Verdict>,
    pub verdict: Option<Verdict>,
    /// Annotations always match; runnables and composites match when the
    /// verdict equals the expectation.
    pub matched: bool,
    /// Whether any sweep along the way used a sampled battery.
    pub sampled: bool,
    pub millis: u64,
    pub details: Vec<String>,
}

struct Outcome {
    verdict: Verdict,
    sampled: bool,
    details: Vec<String>,
}

/// All registered claims, in presentation order.
pub fn registry() -> &'static [ClaimSpec] {
    REGISTRY
}

/// Looks up one claim by id.
pub fn find(id: &str) -> Option<&'static ClaimSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// True when every executed claim matched its expectation.
pub fn all_matched(results: &[ClaimResult]) -> bool {
    results.iter().all(|r| r.matched)
}

static REGISTRY: &[ClaimSpec] = &[
    ClaimSpec {
        id: "prop-choice-implies-AC",
        title: "Relational choice instances entail the Zermelo selection axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Sweeps every head/relation pair over the everything-admitted \
                structures of sizes 2 and 3 and checks that the point-section \
                choice instance never holds while the selection conclusion fails.",
    },
    ClaimSpec {
        id: "prop-choicestar-implies-ACstar",
        title: "Transversal instances entail the Russell selection axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Row-family transversal instances versus the disjoint-family \
                selection axiom, all pairs at sizes 2 and 3.",
    },
    ClaimSpec {
        id: "prop-choicestar-nm-implies-AC",
        title: "Binary transversal instances entail the Zermelo axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::NoCounterexample),
        related: &[],
        notes: "Indexed-row families make disjointness automatic; exhaustive at \
                size 2, deterministically sampled pairs at size 3.",
    },
    ClaimSpec {
        id: "sigma0-AC11",
        title: "Free symmetric structure satisfies the unary Zermelo axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Least-pinned-point selectors uniformize every admitted relation.",
    },
    ClaimSpec {
        id: "sigma0-choice-star-1",
        title: "Free symmetric structure satisfies the singleton transversal schema",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "The family of all singletons has the full domain as a transversal.",
    },
    ClaimSpec {
        id: "sigma0-choice-h11",
        title: "Free symmetric structure satisfies the linked choice schema on point sections",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Diagonal sections witness the linked form: every point's section \
                exists as an admitted predicate.",
    },
    ClaimSpec {
        id: "sigma2-AC11",
        title: "Pair-block structure satisfies the unary Zermelo axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "The block-respecting selector construction supplies a witness for \
                every admitted head/relation pair.",
    },
    ClaimSpec {
        id: "sigma2-ACstar11",
        title: "Pair-block structure satisfies the unary Russell axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Same selector under the additional pairwise-disjointness premise.",
    },
    ClaimSpec {
        id: "sigma2-not-choicestar1",
        title: "Pair-block structure refutes the block transversal schema",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::False),
        related: &[],
        notes: "No admitted unary predicate meets every partner block exactly \
                once: each candidate hits some free block in zero or two points. \
                The evaluation and the exhaustive candidate sweep agree.",
    },
    ClaimSpec {
        id: "sigma2-choice-construction",
        title: "Pair-block selector construction covers every admitted input pair",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Builds the selector for every weight-1 head/relation pair and \
                re-verifies pick uniqueness and the invariance certificate.",
    },
    ClaimSpec {
        id: "sigma3-AC11",
        title: "Two-part structure satisfies the unary Zermelo axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Part-aware selectors uniformize the relation battery; the \
                relation sweep is sampled, the head sweep exact.",
    },
    ClaimSpec {
        id: "sigma3-not-choiceh11",
        title: "Two-part structure refutes the linked choice schema on row images",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::False),
        related: &[],
        notes: "Rows invariant under a weight-k stabilizer hold at most k points \
                of the first part or almost all of it, never exactly the k+1 the \
                growing image family demands. The per-support invariant-set sweep \
                is complete at the truncation.",
    },
    ClaimSpec {
        id: "sigma3-choice-construction",
        title: "Two-part selector construction covers the sampled input battery",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Selector postconditions over the battery, plus the row-image \
                condition holding exactly at matching segment sizes.",
    },
    ClaimSpec {
        id: "nominal-sigma2-support-lemma",
        title: "Admitted pair-block predicates are uniform outside their support blocks",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Unary predicates contain no or all points outside their support \
                blocks; binary rows are constant across free blocks.",
    },
    ClaimSpec {
        id: "nominal-sigma3-stabilizer-lemma",
        title: "Two-part stabilizer subgroups certify supports exactly",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Exhaustive over all small two-part layouts: the pointwise \
                stabilizer of a first-part point set is exactly the subgroup \
                fixing it, and invariance transfers along it.",
    },
    ClaimSpec {
        id: "nominal-eval-equivariance",
        title: "Evaluation commutes with structure automorphisms",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "One hundred seeded random (formula, assignment, permutation) \
                triples per structure evaluate equally before and after moving \
                the assignment.",
    },
    ClaimSpec {
        id: "enum-oracle-counts",
        title: "Predicate enumeration matches frozen independent counts",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Counts fixed in advance by orbit-counting arguments and \
                independent oracles, compared against fresh enumerations.",
    },
    ClaimSpec {
        id: "fig1-ACnm-implies-AC1m",
        title: "Tuple-head Zermelo axioms entail their unary-head forms",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Instances (2,1) to (1,1) and (2,2) to (1,2) classified per \
                structure.",
    },
    ClaimSpec {
        id: "fig1-AC11-implies-ACstar12",
        title: "Unary Zermelo axiom entails the augmented-pair Russell axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Forward half of the equivalence between the unary Zermelo axiom \
                and its augmented Russell companion.",
    },
    ClaimSpec {
        id: "fig1-ACstar12-implies-AC11",
        title: "Augmented-pair Russell axiom entails the unary Zermelo axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Converse half of the same equivalence.",
    },
    ClaimSpec {
        id: "fig1-ACstar12-implies-ACstar11",
        title: "Augmented-pair Russell axiom entails the unary Russell axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Downward edge in the Russell family.",
    },
    ClaimSpec {
        id: "fig1-ACstarN1-implies-ACstar11",
        title: "Tuple-head Russell axioms entail the unary Russell axiom",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Instance (2,1) to (1,1).",
    },
    ClaimSpec {
        id: "fig1-AC21-iff-ACstar23",
        title: "Pair-head Zermelo axiom is equivalent to its augmented Russell form",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Both directions between the (2,1) Zermelo axiom and the (2,3) \
                Russell axiom; arity-5 sweeps are sampled.",
    },
    ClaimSpec {
        id: "fig1-ACstar23-implies-ACstar13",
        title: "Augmented pair-head Russell axiom entails its unary-head form",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Instance (2,3) to (1,3); arity-5 sweeps are sampled.",
    },
    ClaimSpec {
        id: "fig1-ACstar23-implies-ACstar21",
        title: "Augmented pair-head Russell axiom entails the short pair-head form",
        kind: ClaimKind::Runnable,
        expected: Some(Verdict::True),
        related: &[],
        notes: "Instance (2,3) to (2,1); arity-5 sweeps are sampled.",
    },
    ClaimSpec {
        id: "thm1-choicestar1-independent",
        title: "Block transversals are independent of the unary Zermelo axiom",
        kind: ClaimKind::Composite,
        expected: Some(Verdict::True),
        related: &[
            "sigma0-AC11",
            "sigma0-choice-star-1",
            "sigma2-AC11",
            "sigma2-ACstar11",
            "sigma2-not-choicestar1",
        ],
        notes: "One structure satisfies both the Zermelo axiom and the \
                transversal schema, another satisfies the Zermelo and Russell \
                axioms while refuting the schema.",
    },
    ClaimSpec {
        id: "thm2-choiceh11-independent",
        title: "Linked row-image choice is independent of the unary Zermelo axiom",
        kind: ClaimKind::Composite,
        expected: Some(Verdict::True),
        related: &["sigma0-AC11", "sigma0-choice-h11", "sigma3-AC11", "sigma3-not-choiceh11"],
        notes: "One structure satisfies both the Zermelo axiom and the linked \
                schema, another satisfies the axiom while refuting the schema.",
    },
    ClaimSpec {
        id: "coro-ACstar11-not-choicestar2",
        title: "The unary Russell axiom does not recover wider transversal schemas",
        kind: ClaimKind::Annotation,
        expected: None,
        related: &["prop-choicestar-nm-implies-AC", "prop-choice-implies-AC", "sigma2-ACstar11"],
        notes: "Both the binary transversal schema and the relational choice \
                schema entail the unary Zermelo axiom (related claims), so any \
                structure satisfying the unary Russell axiom while refuting the \
                Zermelo axiom refutes both schemas. Such structures are built by \
                permutation-model methods outside this workbench's truncations.",
    },
    ClaimSpec {
        id: "fig2-blocked-AC11-to-choicestar1",
        title: "The unary Zermelo axiom does not entail the block transversal schema",
        kind: ClaimKind::Annotation,
        expected: None,
        related: &["sigma2-AC11", "sigma2-not-choicestar1", "thm1-choicestar1-independent"],
        notes: "Blocked edge complementing the solid implication diagram: the \
                pair-block structure satisfies the axiom and refutes the schema.",
    },
    ClaimSpec {
        id: "fig2-blocked-AC11-to-choiceh11",
        title: "The unary Zermelo axiom does not entail the linked choice schema",
        kind: ClaimKind::Annotation,
        expected: None,
        related: &["sigma3-AC11", "sigma3-not-choiceh11", "thm2-choiceh11-independent"],
        notes: "Blocked edge: the two-part structure satisfies the axiom and \
                refutes the linked schema on its row-image family.",
    },
    ClaimSpec {
        id: "fig2-choiceh-hierarchy",
        title: "Linked choice schemas at higher arities form an open hierarchy",
        kind: ClaimKind::Annotation,
        expected: None,
        related: &["sigma0-choice-h11", "sigma3-not-choiceh11"],
        notes: "Tuple-head linked schemas entail their unary-head form and feed \
                into the selection-axiom diagram; which of those edges are strict \
                is open beyond the separations checked here. Only unary-head \
                instances are exercised by this workbench.",
    },
    ClaimSpec {
        id: "fig1-blocked-converses",
        title: "Several solid implications have no valid converse",
        kind: ClaimKind::Annotation,
        expected: None,
        related: &[
            "fig1-ACstar12-implies-ACstar11",
            "fig1-ACstarN1-implies-ACstar11",
            "fig1-ACstar23-implies-ACstar21",
        ],
        notes: "The diagram marks converses of several downward edges as blocked. \
                Strictness rests on separating structures beyond the truncations \
                built here; the solid directions are checked by the related \
                claims.",
    },
];

/// Runs one claim by id. Composites run their members.
pub fn run_claim(id: &str, params: &ClaimParams) -> Result<ClaimResult, ClaimError> {
    let mut cache = BTreeMap::new();
    run_cached(id, params, &mut cache)
}

/// Runs every registered claim, sharing member results with composites.
pub fn run_all(params: &ClaimParams) -> Result<Vec<ClaimResult>, ClaimError> {
    let mut cache = BTreeMap::new();
    REGISTRY.iter().map(|spec| run_cached(spec.id, params, &mut cache)).collect()
}

fn run_cached(
    id: &str,
    params: &ClaimParams,
    cache: &mut BTreeMap<String, ClaimResult>,
) -> Result<ClaimResult, ClaimError> {
    if let Some(hit) = cache.get(id) {
        return Ok(hit.clone());
    }
    let spec = find(id).ok_or_else(|| ClaimError::UnknownClaim(id.to_string()))?;
    let start = Instant::now();
    let result = match spec.kind {
        ClaimKind::Annotation => {
            let mut details = vec![spec.notes.to_string()];
            if !spec.related.is_empty() {
                details.push(format!("related: {}", spec.related.join(", ")));
            }
            ClaimResult {
                id: spec.id.to_string(),
                title: spec.title.to_string(),
                kind: spec.kind,
                expected: None,
                verdict: None,
                matched: true,
                sampled: false,
                millis: start.elapsed().as_millis() as u64,
                details,
            }
        }
        ClaimKind::Composite => {
            let mut details = Vec::new();
            let mut sampled = false;
            let mut all_ok = true;
            for member in spec.related {
                let r = run_cached(member, params, cache)?;
                sampled |= r.sampled;
                all_ok &= r.matched;
                details.push(format!(
                    "{}: {} (expected {}){}",
                    r.id,
                    r.verdict.map_or_else(|| "-".to_string(), |v| v.to_string()),
                    r.expected.map_or_else(|| "-".to_string(), |v| v.to_string()),
                    if r.matched { "" } else { " MISMATCH" },
                ));
            }
            let verdict = if all_ok { Verdict::True } else { Verdict::False };
            ClaimResult {
                id: spec.id.to_string(),
                title: spec.title.to_string(),
                kind: spec.kind,
                expected: spec.expected,
                verdict: Some(verdict),
                matched: Some(verdict) == spec.expected,
                sampled,
                millis: start.elapsed().as_millis() as u64,
                details,
            }
        }
        ClaimKind::Runnable => {
            let out = run_runnable(spec.id, params)?;
            ClaimResult {
                id: spec.id.to_string(),
                title: spec.title.to_string(),
                kind: spec.kind,
                expected: spec.expected,
                verdict: Some(out.verdict),
                matched: Some(out.verdict) == spec.expected,
                sampled: out.sampled,
                millis: start.elapsed().as_millis() as u64,
                details: out.details,
            }
        }
    };
    cache.insert(id.to_string(), result.clone());
    Ok(result)
}

fn run_runnable(id: &str, params: &ClaimParams) -> Result<Outcome, ClaimError> {
    match id {
        "prop-choice-implies-AC" => prop_choice_implies_ac(params),
        "prop-choicestar-implies-ACstar" => prop_choicestar_implies_acstar(params),
        "prop-choicestar-nm-implies-AC" => prop_choicestar_nm_implies_ac(params),
        "sigma0-AC11" => sigma0_ac11(params),
        "sigma0-choice-star-1" => sigma0_choice_star_1(params),
        "sigma0-choice-h11" => sigma0_choice_h11(params),
        "sigma2-AC11" => sigma2_axiom(params, false),
        "sigma2-ACstar11" => sigma2_axiom(params, true),
        "sigma2-not-choicestar1" => sigma2_not_choicestar1(params),
        "sigma2-choice-construction" => sigma2_choice_construction(params),
        "sigma3-AC11" => sigma3_ac11(params),
        "sigma3-not-choiceh11" => sigma3_not_choiceh11(params),
        "sigma3-choice-construction" => sigma3_choice_construction(params),
        "nominal-sigma2-support-lemma" => nominal_sigma2_support_lemma(params),
        "nominal-sigma3-stabilizer-lemma" => nominal_sigma3_stabilizer_lemma(params),
        "nominal-eval-equivariance" => nominal_eval_equivariance(params),
        "enum-oracle-counts" => enum_oracle_counts(params),
        "fig1-ACnm-implies-AC1m" => arrow_claim(
            vec![
                ("(2,1) to (1,1)", build_ac(2, 1), build_ac(1, 1), 3),
                ("(2,2) to (1,2)", build_ac(2, 2), build_ac(1, 2), 4),
            ],
            params,
        ),
        "fig1-AC11-implies-ACstar12" => arrow_claim(
            vec![("forward", build_ac(1, 1), build_ac_star(1, 2), 3)],
            params,
        ),
        "fig1-ACstar12-implies-AC11" => arrow_claim(
            vec![("converse", build_ac_star(1, 2), build_ac(1, 1), 3)],
            params,
        ),
        "fig1-ACstar12-implies-ACstar11" => arrow_claim(
            vec![("downward", build_ac_star(1, 2), build_ac_star(1, 1), 3)],
            params,
        ),
        "fig1-ACstarN1-implies-ACstar11" => arrow_claim(
            vec![("(2,1) to (1,1)", build_ac_star(2, 1), build_ac_star(1, 1), 3)],
            params,
        ),
        "fig1-AC21-iff-ACstar23" => arrow_claim(
            vec![
                ("forward", build_ac(2, 1), build_ac_star(2, 3), 5),
                ("converse", build_ac_star(2, 3), build_ac(2, 1), 5),
            ],
            params,
        ),
        "fig1-ACstar23-implies-ACstar13" => arrow_claim(
            vec![("(2,3) to (1,3)", build_ac_star(2, 3), build_ac_star(1, 3), 5)],
            params,
        ),
        "fig1-ACstar23-implies-ACstar21" => arrow_claim(
            vec![("(2,3) to (2,1)", build_ac_star(2, 3), build_ac_star(2, 1), 5)],
            params,
        ),
        other => Err(ClaimError::UnknownClaim(other.to_string())),
    }
}

fn hybrid(p: QuantifierPolicy, provider: &str) -> QuantifierPolicy {
    p.with_strategy(ExistsStrategy::Hybrid(provider.to_string()))
}

fn full_model(n: u32, params: &ClaimParams) -> Result<HenkinStructure, ClaimError> {
    let mut h = build_full(n);
    let mut p = hybrid(h.policy().clone(), "full-lexmin");
    if let Some(k) = params.sample_size {
        p.sample_size = k;
    }
    if let Some(s) = params.seed {
        p.seed = s;
    }
    h.set_policy(p)?;
    Ok(h)
}

/// Sweeps `(head, relation)` pairs over exact or battery ranges and counts
/// pairs where `antecedent` holds but `consequent` fails.
struct PairSweep {
    pairs: usize,
    antecedent_true: usize,
    counterexamples: Vec<String>,
    sampled: bool,
}

fn sweep_pairs(
    h: &HenkinStructure,
    antecedent: &Formula,
    consequent: &Formula,
    head_arity: u8,
    rel_arity: u8,
) -> Result<PairSweep, ClaimError> {
    let heads = h.quantifier_range(head_arity, h.policy().s_univ)?;
    let rels = h.quantifier_range(rel_arity, h.policy().s_univ)?;
    let mut sweep = PairSweep {
        pairs: 0,
        antecedent_true: 0,
        counterexamples: Vec::new(),
        sampled: heads.sampled || rels.sampled,
    };
    for a in heads.predicates.iter() {
        for r in rels.predicates.iter() {
            sweep.pairs += 1;
            let asg =
                Assignment::new().with_pred("A", a.clone()).with_pred("R", r.clone());
            check_pair(h, &asg, antecedent, consequent, a, r, &mut sweep)?;
        }
    }
    Ok(sweep)
}

fn check_pair(
    h: &HenkinStructure,
    asg: &Assignment,
    antecedent: &Formula,
    consequent: &Formula,
    a: &SymbolicPredicate,
    r: &SymbolicPredicate,
    sweep: &mut PairSweep,
) -> Result<(), ClaimError> {
    let ef = eval(h, asg, antecedent, h.policy())?;
    sweep.sampled |= ef.stats.sampled;
    if !ef.truth {
        return Ok(());
    }
    sweep.antecedent_true += 1;
    let eg = eval(h, asg, consequent, h.policy())?;
    sweep.sampled |= eg.stats.sampled;
    if !eg.truth {
        sweep.counterexamples.push(format!(
            "A = {}, R = {}",
            describe_predicate(h, a),
            describe_predicate(h, r)
        ));
    }
    Ok(())
}

fn instance_verdict(counterexamples: usize, sampled: bool) -> Verdict {
    if counterexamples > 0 {
        Verdict::False
    } else if sampled {
        Verdict::NoCounterexample
    } else {
        Verdict::True
    }
}

fn prop_choice_implies_ac(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h_section = parse("A(x) -> ((exists1 y. D(y)) & (exists y. (R(x,y) & D(y))))")?;
    let antecedent = build_choice_schema(1, 1, &h_section)?;
    let consequent = open_family(&build_ac(1, 1));
    let mut details = Vec::new();
    let mut sampled = false;
    let mut counterexamples = 0;
    for n in [2u32, 3] {
        let h = full_model(n, params)?;
        let sweep = sweep_pairs(&h, &antecedent, &consequent, 1, 2)?;
        sampled |= sweep.sampled;
        counterexamples += sweep.counterexamples.len();
        details.push(format!(
            "full({n}): {} pairs, antecedent true on {}, {} counterexample(s)",
            sweep.pairs,
            sweep.antecedent_true,
            sweep.counterexamples.len()
        ));
        details.extend(sweep.counterexamples);
    }
    Ok(Outcome { verdict: instance_verdict(counterexamples, sampled), sampled, details })
}

fn prop_choicestar_implies_acstar(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h_row = parse("A(x) & ((forall y. (C(y) <-> R(x,y))) & (exists y. C(y)))")?;
    let antecedent =
        Formula::forall(&["x".to_string()], build_choice_star(1, &h_row)?);
    let consequent = open_family(&build_ac_star(1, 1));
    let mut details = Vec::new();
    let mut sampled = false;
    let mut counterexamples = 0;
    for n in [2u32, 3] {
        let h = full_model(n, params)?;
        let sweep = sweep_pairs(&h, &antecedent, &consequent, 1, 2)?;
        sampled |= sweep.sampled;
        counterexamples += sweep.counterexamples.len();
        details.push(format!(
            "full({n}): {} pairs, antecedent true on {}, {} counterexample(s)",
            sweep.pairs,
            sweep.antecedent_true,
            sweep.counterexamples.len()
        ));
        details.extend(sweep.counterexamples);
    }
    Ok(Outcome { verdict: instance_verdict(counterexamples, sampled), sampled, details })
}

fn prop_choicestar_nm_implies_ac(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h_indexed = parse(
        "(A(x0) & (forall x. forall y. ((R(x,y) & x = x0) <-> C(x,y)))) \
         & (exists x. exists y. C(x,y))",
    )?;
    let antecedent =
        Formula::forall(&["x0".to_string()], build_choice_star(2, &h_indexed)?);
    let consequent = open_family(&build_ac(1, 1));
    let mut details = Vec::new();
    let mut sampled = false;
    let mut counterexamples = 0;

    let h2 = full_model(2, params)?;
    let sweep = sweep_pairs(&h2, &antecedent, &consequent, 1, 2)?;
    sampled |= sweep.sampled;
    counterexamples += sweep.counterexamples.len();
    details.push(format!(
        "full(2): {} pairs (exhaustive), antecedent true on {}, {} counterexample(s)",
        sweep.pairs,
        sweep.antecedent_true,
        sweep.counterexamples.len()
    ));
    details.extend(sweep.counterexamples);

    // Size 3: the double transversal sweep is too wide for every pair, so a
    // seeded sample plus curated pairs stands in. The sample is marked.
    let h3 = full_model(3, params)?;
    let heads = h3.quantifier_range(1, h3.policy().s_univ)?;
    let rels = h3.quantifier_range(2, h3.policy().s_univ)?;
    let size = h3.domain().size() as u32;
    let mut curated: Vec<(SymbolicPredicate, SymbolicPredicate)> = Vec::new();
    let all = full_unary(&h3);
    let none = std::iter::empty::<Individual>;
    let empty2 = SymbolicPredicate::new(h3.group(), none(), Extension::empty(2, size)?)?;
    let full2 = SymbolicPredicate::new(h3.group(), none(), Extension::full(2, size)?)?;
    let diag = {
        let mut ext = Extension::empty(2, size)?;
        for i in 0..size {
            ext.insert(u64::from(i) * u64::from(size) + u64::from(i));
        }
        SymbolicPredicate::new(h3.group(), none(), ext)?
    };
    curated.push((all.clone(), empty2));
    curated.push((all.clone(), full2));
    curated.push((all, diag));
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(params.seed(), &[3]));
    let space = heads.predicates.len() * rels.predicates.len();
    let sample = params.sample_size.unwrap_or(21).min(space);
    let mut seen = BTreeSet::new();
    let mut pairs = curated;
    while pairs.len() < 3 + sample {
        let i = rng.gen_range(0..heads.predicates.len());
        let j = rng.gen_range(0..rels.predicates.len());
        if seen.insert((i, j)) {
            pairs.push((heads.predicates[i].clone(), rels.predicates[j].clone()));
        }
    }
    let mut sweep = PairSweep {
        pairs: 0,
        antecedent_true: 0,
        counterexamples: Vec::new(),
        sampled: true,
    };
    for (a, r) in &pairs {
        sweep.pairs += 1;
        let asg = Assignment::new().with_pred("A", a.clone()).with_pred("R", r.clone());
        check_pair(&h3, &asg, &antecedent, &consequent, a, r, &mut sweep)?;
    }
    sampled |= sweep.sampled;
    counterexamples += sweep.counterexamples.len();
    details.push(format!(
        "full(3): {} sampled pairs of {} possible, antecedent true on {}, {} counterexample(s)",
        sweep.pairs,
        heads.predicates.len() * rels.predicates.len(),
        sweep.antecedent_true,
        sweep.counterexamples.len()
    ));
    details.extend(sweep.counterexamples);

    Ok(Outcome { verdict: instance_verdict(counterexamples, sampled), sampled, details })
}

fn truth_outcome(
    h: &HenkinStructure,
    f: &Formula,
    label: &str,
) -> Result<Outcome, ClaimError> {
    let out = eval(h, &Assignment::new(), f, h.policy())?;
    let verdict = if out.truth { Verdict::True } else { Verdict::False };
    let mut details = vec![format!(
        "{label}: {} ({} candidate predicates swept, {} provider witnesses{})",
        out.truth,
        out.stats.predicates_swept,
        out.stats.provider_witnesses,
        if out.stats.sampled { ", sampled" } else { "" }
    )];
    if let Some(trace) = out.trace {
        details.push(format!("failing path: {trace}"));
    }
    Ok(Outcome { verdict, sampled: out.stats.sampled, details })
}

fn sigma0_ac11(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma0(
        params.n.unwrap_or(4),
        hybrid(params.policy(1, 3)?, "lexmin-choice"),
    )?;
    truth_outcome(&h, &build_ac(1, 1), &format!("sigma0({})", h.domain().size()))
}

fn sigma0_choice_star_1(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma0(params.n.unwrap_or(4), params.policy(1, 3)?)?;
    let singleton = parse("exists y. forall z. (C(z) <-> z = y)")?;
    let f = build_choice_star(1, &singleton)?;
    let mut out = truth_outcome(&h, &f, &format!("sigma0({})", h.domain().size()))?;
    out.details.push(
        "family: all singletons; the full domain meets each exactly once".to_string(),
    );
    Ok(out)
}

fn sigma0_choice_h11(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma0(params.n.unwrap_or(4), params.policy(1, 3)?)?;
    let diag_section = parse("forall y. (D(y) <-> y = x)")?;
    let f = build_choice_h(1, 1, &diag_section)?;
    let mut out = truth_outcome(&h, &f, &format!("sigma0({})", h.domain().size()))?;
    out.details.push(
        "sections: the diagonal relation links every point to its own singleton".to_string(),
    );
    Ok(out)
}

fn sigma2_axiom(params: &ClaimParams, russell: bool) -> Result<Outcome, ClaimError> {
    let h = build_sigma2(
        params.n.unwrap_or(4),
        hybrid(params.policy(1, 3)?, "sigma2-choice"),
    )?;
    let f = if russell { build_ac_star(1, 1) } else { build_ac(1, 1) };
    truth_outcome(&h, &f, &format!("sigma2({} blocks)", params.n.unwrap_or(4)))
}

fn sigma2_not_choicestar1(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma2(params.n.unwrap_or(4), params.policy(1, 3)?)?;
    let f = build_choice_star(1, &pair_block_condition())?;
    let out = eval(&h, &Assignment::new(), &f, h.policy())?;
    let report = refute_pair_transversal(&h)?;
    let mut details = vec![
        format!(
            "evaluation: {} (antecedent, a nonempty pairwise-disjoint block family, \
             is established exactly when the whole formula fails)",
            out.truth
        ),
        format!(
            "analytic sweep [{}]: {} candidates checked, {} survive",
            report.mechanism,
            report.candidates_checked,
            report.survivors.len()
        ),
    ];
    if let Some(trace) = out.trace {
        details.push(format!("failing path: {trace}"));
    }
    let verdict = if !out.truth && report.all_failed && !out.stats.sampled {
        Verdict::False
    } else if out.truth {
        Verdict::True
    } else {
        Verdict::NoCounterexample
    };
    Ok(Outcome { verdict, sampled: out.stats.sampled, details })
}

fn verify_selector(
    h: &HenkinStructure,
    alpha: &SymbolicPredicate,
    rho: &SymbolicPredicate,
    sigma: &SymbolicPredicate,
) -> Result<(), String> {
    let domain = h.domain();
    let size = domain.size() as u32;
    let mut picked = 0usize;
    let mut rows = 0usize;
    for x in 0..size {
        if !alpha.contains_positions(&[x]) {
            continue;
        }
        let mut in_row = 0usize;
        let mut any = false;
        for y in 0..size {
            if rho.contains_positions(&[x, y]) {
                any = true;
                if sigma.contains_positions(&[x, y]) {
                    in_row += 1;
                }
            } else if sigma.contains_positions(&[x, y]) {
                return Err(format!(
                    "selector leaves the relation at head {}",
                    domain.at(x)
                ));
            }
        }
        if any {
            rows += 1;
            if in_row != 1 {
                return Err(format!(
                    "head {} picks {} elements instead of one",
                    domain.at(x),
                    in_row
                ));
            }
            picked += 1;
        }
    }
    if picked != rows {
        return Err("row/pick count mismatch".to_string());
    }
    Ok(())
}

fn construction_sweep(
    h: &HenkinStructure,
    alphas: &[SymbolicPredicate],
    rhos: &[SymbolicPredicate],
) -> Result<(usize, usize, Vec<String>), ClaimError> {
    let mut pairs = 0usize;
    let mut max_weight = 0usize;
    let mut failures = Vec::new();
    for alpha in alphas {
        for rho in rhos {
            pairs += 1;
            match construct_choice(h, alpha, rho) {
                Ok(sigma) => {
                    max_weight = max_weight.max(sigma.weight(h.group()));
                    if let Err(msg) = verify_selector(h, alpha, rho, &sigma) {
                        failures.push(format!(
                            "A = {}, R = {}: {msg}",
                            describe_predicate(h, alpha),
                            describe_predicate(h, rho)
                        ));
                    }
                }
                Err(e) => failures.push(format!(
                    "A = {}, R = {}: {e}",
                    describe_predicate(h, alpha),
                    describe_predicate(h, rho)
                )),
            }
        }
    }
    Ok((pairs, max_weight, failures))
}

fn sigma2_choice_construction(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma2(params.n.unwrap_or(4), params.policy(1, 1)?)?;
    let alphas = h.enumerate_predicates(1, 1)?;
    let rhos = h.enumerate_predicates(2, 1)?;
    let (pairs, max_weight, failures) = construction_sweep(&h, &alphas, &rhos)?;
    let ok = failures.is_empty();
    let mut details = vec![format!(
        "{} head/relation pairs ({} heads x {} relations, exact), max selector support weight {}",
        pairs,
        alphas.len(),
        rhos.len(),
        max_weight
    )];
    details.extend(failures.into_iter().take(5));
    Ok(Outcome {
        verdict: if ok { Verdict::True } else { Verdict::False },
        sampled: false,
        details,
    })
}

fn sigma3_ac11(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma3(
        params.n0.unwrap_or(6),
        params.n1.unwrap_or(6),
        hybrid(params.policy(2, 2)?, "sigma3-choice"),
    )?;
    truth_outcome(
        &h,
        &build_ac(1, 1),
        &format!("sigma3({},{})", params.n0.unwrap_or(6), params.n1.unwrap_or(6)),
    )
}

fn sigma3_not_choiceh11(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let h = build_sigma3(
        params.n0.unwrap_or(6),
        params.n1.unwrap_or(6),
        hybrid(params.policy(2, 2)?, "sigma3-witness"),
    )?;
    let f = build_choice_h(1, 1, &row_image_condition())?;
    let out = eval(&h, &Assignment::new(), &f, h.policy())?;
    let report = refute_row_image_choice(&h)?;
    let mut details = vec![
        format!(
            "evaluation: {} (antecedent established by witness providers; the \
             conclusion sweep is sampled and cannot settle falsity alone)",
            out.truth
        ),
        format!(
            "analytic sweep [{}]: {} candidates checked, {} survive",
            report.mechanism,
            report.candidates_checked,
            report.survivors.len()
        ),
    ];
    if let Some(trace) = out.trace {
        details.push(format!("failing path: {trace}"));
    }
    let verdict = if !out.truth && report.all_failed {
        Verdict::False
    } else if out.truth {
        Verdict::True
    } else {
        Verdict::NoCounterexample
    };
    Ok(Outcome { verdict, sampled: out.stats.sampled, details })
}

fn sigma3_choice_construction(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let n0 = params.n0.unwrap_or(6);
    let n1 = params.n1.unwrap_or(6);
    let h = build_sigma3(n0, n1, hybrid(params.policy(2, 2)?, "sigma3-witness"))?;
    let alphas = h.enumerate_predicates(1, 2)?;
    let rhos = h.sampled_battery(2, 2)?;
    let (pairs, max_weight, failures) = construction_sweep(&h, &alphas, &rhos)?;
    let mut details = vec![format!(
        "{} head/relation pairs ({} heads exact x {} battery relations), \
         max selector support weight {}",
        pairs,
        alphas.len(),
        rhos.len(),
        max_weight
    )];
    details.extend(failures.iter().take(5).cloned());
    // The growing image family: the condition holds exactly when the
    // candidate set size matches the row image.
    let cond = row_image_condition();
    let mut family_ok = true;
    let top = n1.min(n0.saturating_sub(1)).min(5);
    for k in 0..=top {
        let x = Individual::new(1, k);
        let good = Assignment::new()
            .with_indiv("x", x)
            .with_pred("D", part0_initial_segment(&h, k)?);
        let hit = eval(&h, &good, &cond, h.policy())?.truth;
        let mut miss = false;
        if k > 0 {
            let bad = Assignment::new()
                .with_indiv("x", x)
                .with_pred("D", part0_initial_segment(&h, k - 1)?);
            miss = eval(&h, &bad, &cond, h.policy())?.truth;
        }
        if !hit || miss {
            family_ok = false;
            details.push(format!(
                "image size {}: condition {} at the matching size, {} below it",
                k + 1,
                hit,
                miss
            ));
        }
    }
    details.push(format!(
        "row-image condition verified at image sizes 1..={} (holds at matching \
         size, fails below)",
        top + 1
    ));
    let ok = failures.is_empty() && family_ok;
    Ok(Outcome {
        verdict: if ok { Verdict::True } else { Verdict::False },
        sampled: true,
        details,
    })
}

fn nominal_sigma2_support_lemma(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let n = params.n.unwrap_or(4);
    let h = build_sigma2(n, params.policy(1, 1)?)?;
    let domain = h.domain();
    let size = domain.size() as u32;
    let block_of = |pos: u32| domain.at(pos).index;
    let mut failures = Vec::new();

    let unaries = h.enumerate_predicates(1, 1)?;
    for alpha in unaries.iter() {
        let support_blocks: BTreeSet<u32> =
            alpha.support().points().map(|p| p.index).collect();
        let free: Vec<u32> =
            (0..size).filter(|&p| !support_blocks.contains(&block_of(p))).collect();
        let hit = free.iter().filter(|&&p| alpha.contains_positions(&[p])).count();
        if hit != 0 && hit != free.len() {
            failures.push(format!(
                "unary {} meets {hit} of {} free points",
                describe_predicate(&h, alpha),
                free.len()
            ));
        }
    }

    let binaries = h.enumerate_predicates(2, 1)?;
    for rho in binaries.iter() {
        let support_blocks: BTreeSet<u32> =
            rho.support().points().map(|p| p.index).collect();
        for x in 0..size {
            let free: Vec<u32> = (0..size)
                .filter(|&p| {
                    !support_blocks.contains(&block_of(p)) && block_of(p) != block_of(x)
                })
                .collect();
            let hit = free.iter().filter(|&&y| rho.contains_positions(&[x, y])).count();
            if hit != 0 && hit != free.len() {
                failures.push(format!(
                    "binary {} row at {} meets {hit} of {} free points",
                    describe_predicate(&h, rho),
                    domain.at(x),
                    free.len()
                ));
            }
        }
    }

    let mut details = vec![format!(
        "{} unary and {} binary admitted predicates at weight 1 over {} blocks: \
         outside their support blocks, unary predicates are empty or total and \
         binary rows are constant",
        unaries.len(),
        binaries.len(),
        n
    )];
    details.extend(failures.iter().take(5).cloned());
    Ok(Outcome {
        verdict: if failures.is_empty() { Verdict::True } else { Verdict::False },
        sampled: false,
        details,
    })
}

fn nominal_sigma3_stabilizer_lemma(_params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let sizes = [(2u32, 2u32), (3, 2), (3, 3), (4, 3), (4, 4)];
    let mut failures = Vec::new();
    for (n0, n1) in sizes {
        if !check_fixpart1_support_lemma(n0, n1) {
            failures.push(format!("layout ({n0},{n1}) violates the stabilizer lemma"));
        }
    }
    let mut details = vec![format!(
        "exhaustive over layouts {:?}: pointwise stabilizers of first-part point \
         sets are exactly the subgroups fixing them",
        sizes
    )];
    details.extend(failures.iter().cloned());
    Ok(Outcome {
        verdict: if failures.is_empty() { Verdict::True } else { Verdict::False },
        sampled: false,
        details,
    })
}

fn nominal_eval_equivariance(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let pool: Vec<Formula> = [
        "A(x)",
        "exists y. (R(x,y) & !A(y))",
        "forall y. (R(x,y) -> (A(y) | y = x))",
        "existsP C:1. (C(x) & forall y. (C(y) -> A(y)))",
        "forallP C:1. ((forall y. (C(y) -> A(y))) -> (C(x) -> A(x)))",
    ]
    .iter()
    .map(|s| parse(s))
    .collect::<Result<_, _>>()?;
    let models: Vec<HenkinStructure> = vec![
        build_sigma0(4, params.policy(1, 1)?)?,
        build_sigma2(4, params.policy(1, 1)?)?,
        build_sigma3(6, 6, params.policy(2, 2)?)?,
    ];
    let trials = 100usize;
    let mut failures = Vec::new();
    let mut sampled = false;
    let mut details = Vec::new();
    for (mi, h) in models.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(params.seed(), &[7, mi as u64]));
        let unaries = h.quantifier_range(1, h.policy().s_exist)?;
        let binaries = h.quantifier_range(2, h.policy().s_exist)?;
        for t in 0..trials {
            let f = &pool[rng.gen_range(0..pool.len())];
            let a = unaries.predicates[rng.gen_range(0..unaries.predicates.len())].clone();
            let r = binaries.predicates[rng.gen_range(0..binaries.predicates.len())].clone();
            let x = h.domain().at(rng.gen_range(0..h.domain().size() as u32));
            let p = h.group().random_element(&mut rng);
            let asg = Assignment::new()
                .with_indiv("x", x)
                .with_pred("A", a)
                .with_pred("R", r);
            let (base, moved) = eval_equivariant_check(h, &asg, f, &p, h.policy())?;
            sampled |= base.stats.sampled || moved.stats.sampled;
            if base.truth != moved.truth {
                failures.push(format!(
                    "{} trial {t}: `{f}` evaluates {} before but {} after moving \
                     the assignment",
                    h.name(),
                    base.truth,
                    moved.truth
                ));
            }
        }
        details.push(format!("{}: {trials} random triples agree", h.name()));
    }
    details.extend(failures.iter().take(5).cloned());
    Ok(Outcome {
        verdict: if failures.is_empty() { Verdict::True } else { Verdict::False },
        sampled,
        details,
    })
}

fn enum_oracle_counts(params: &ClaimParams) -> Result<Outcome, ClaimError> {
    let mut checks: Vec<(String, usize, usize)> = Vec::new();

    let h = build_sigma2(3, params.policy(1, 1)?)?;
    checks.push((
        "pair structure, 3 blocks, unary at weight 1".into(),
        h.enumerate_predicates(1, 1)?.len(),
        20,
    ));
    let h = build_sigma2(4, params.policy(0, 0)?)?;
    checks.push((
        "pair structure, 4 blocks, binary with empty support".into(),
        h.enumerate_predicates(2, 0)?.len(),
        8,
    ));
    let h = build_sigma2(4, params.policy(1, 3)?)?;
    checks.push((
        "pair structure, 4 blocks, unary at weight 3".into(),
        h.enumerate_predicates(1, 3)?.len(),
        240,
    ));
    checks.push((
        "pair structure, 4 blocks, unary at weight 1".into(),
        h.enumerate_predicates(1, 1)?.len(),
        26,
    ));
    let h = build_sigma0(4, params.policy(1, 1)?)?;
    checks.push((
        "free structure, 4 points, unary at weight 1".into(),
        h.enumerate_predicates(1, 1)?.len(),
        10,
    ));
    let h = build_sigma3(6, 6, params.policy(2, 2)?)?;
    checks.push((
        "two-part structure, 6+6 points, unary at weight 2".into(),
        h.enumerate_predicates(1, 2)?.len(),
        2816,
    ));
    let h = build_full(2);
    for (arity, want) in [(1u8, 4usize), (2, 16), (4, 65536)] {
        checks.push((
            format!("everything-admitted structure of size 2, arity {arity}"),
            h.enumerate_predicates(arity, 2)?.len(),
            want,
        ));
    }

    let mut details = Vec::new();
    let mut ok = true;
    for (label, got, want) in checks {
        ok &= got == want;
        details.push(format!(
            "{label}: {got} (frozen {want}){}",
            if got == want { "" } else { " MISMATCH" }
        ));
    }
    Ok(Outcome {
        verdict: if ok { Verdict::True } else { Verdict::False },
        sampled: false,
        details,
    })
}

type ArrowInstance = (&'static str, Formula, Formula, u8);

fn arrow_models(
    params: &ClaimParams,
    include_full3: bool,
) -> Result<Vec<(String, HenkinStructure)>, ClaimError> {
    let mut models = vec![("full(2)".to_string(), full_model(2, params)?)];
    if include_full3 {
        models.push(("full(3)".to_string(), full_model(3, params)?));
    }
    models.push((
        "sigma0(4)".to_string(),
        build_sigma0(4, hybrid(params.policy(1, 1)?, "lexmin-choice"))?,
    ));
    models.push((
        "sigma2(4)".to_string(),
        build_sigma2(4, hybrid(params.policy(1, 1)?, "sigma2-choice"))?,
    ));
    Ok(models)
}

/// Classifies a set of implication instances between closed axioms across
/// the battery of structures.
fn arrow_claim(
    instances: Vec<ArrowInstance>,
    params: &ClaimParams,
) -> Result<Outcome, ClaimError> {
    let include_full3 = instances.iter().any(|(_, _, _, arity)| *arity <= 3);
    let models = arrow_models(params, include_full3)?;

    // Evaluate each distinct formula once per structure.
    let mut key_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut flat: Vec<Formula> = Vec::new();
    let mut arrows: Vec<(&'static str, usize, usize, u8)> = Vec::new();
    for (label, f, g, arity) in instances {
        let fi = *key_index.entry(f.to_string()).or_insert_with(|| {
            flat.push(f.clone());
            flat.len() - 1
        });
        let gi = *key_index.entry(g.to_string()).or_insert_with(|| {
            flat.push(g.clone());
            flat.len() - 1
        });
        arrows.push((label, fi, gi, arity));
    }

    let empty = Assignment::new();
    let mut memo: BTreeMap<(usize, usize), (bool, bool)> = BTreeMap::new();
    let evaluate = |mi: usize,
                        fi: usize,
                        h: &HenkinStructure,
                        memo: &mut BTreeMap<(usize, usize), (bool, bool)>|
     -> Result<(bool, bool), ClaimError> {
        if let Some(&hit) = memo.get(&(mi, fi)) {
            return Ok(hit);
        }
        let out = eval(h, &empty, &flat[fi], h.policy())?;
        let entry = (out.truth, out.stats.sampled);
        memo.insert((mi, fi), entry);
        Ok(entry)
    };

    let mut details = Vec::new();
    let mut witnesses = 0usize;
    let mut counterexamples = 0usize;
    let mut sampled_any = false;
    for (label, fi, gi, arity) in &arrows {
        for (mi, (name, h)) in models.iter().enumerate() {
            if *arity > 3 && name.starts_with("full(3)") {
                continue;
            }
            let (ftruth, fsampled) = evaluate(mi, *fi, h, &mut memo)?;
            let (gtruth, gsampled) = evaluate(mi, *gi, h, &mut memo)?;
            let pair_sampled = fsampled || gsampled;
            sampled_any |= pair_sampled;
            let line = if ftruth && gtruth {
                witnesses += 1;
                format!("{label} @ {name}: witness (antecedent and consequent hold)")
            } else if ftruth && !gtruth && !pair_sampled {
                counterexamples += 1;
                format!("{label} @ {name}: counterexample (exact sweeps)")
            } else if ftruth && !gtruth {
                format!(
                    "{label} @ {name}: inconclusive (consequent unmet under a \
                     sampled sweep)"
                )
            } else {
                format!(
                    "{label} @ {name}: vacuous (antecedent not established{})",
                    if pair_sampled { ", sampled" } else { "" }
                )
            };
            details.push(line);
        }
    }
    let verdict = if counterexamples > 0 {
        Verdict::False
    } else if witnesses > 0 {
        Verdict::True
    } else {
        Verdict::NoCounterexample
    };
    Ok(Outcome { verdict, sampled: sampled_any, details })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_related_ids_resolve() {
        let mut seen = BTreeSet::new();
        for spec in registry() {
            assert!(seen.insert(spec.id), "duplicate id {}", spec.id);
        }
        for spec in registry() {
            for rel in spec.related {
                assert!(find(rel).is_some(), "{} refers to unknown {rel}", spec.id);
            }
            match spec.kind {
                ClaimKind::Annotation => assert!(spec.expected.is_none()),
                _ => assert!(spec.expected.is_some(), "{} needs an expectation", spec.id),
            }
        }
    }

    #[test]
    fn annotations_carry_notes_and_never_fail() {
        let r = run_claim("fig2-choiceh-hierarchy", &ClaimParams::default()).unwrap();
        assert_eq!(r.kind, ClaimKind::Annotation);
        assert!(r.matched);
        assert!(r.verdict.is_none());
        assert!(r.details.iter().any(|d| d.contains("related:")));
    }

    #[test]
    fn unknown_claims_and_params_error() {
        assert!(matches!(
            run_claim("nope", &ClaimParams::default()),
            Err(ClaimError::UnknownClaim(_))
        ));
        let mut p = ClaimParams::default();
        assert!(matches!(p.set("bogus", "1"), Err(ClaimError::UnknownParam(_))));
        assert!(matches!(p.set("n", "x"), Err(ClaimError::BadParam { .. })));
        p.set("n", "5").unwrap();
        assert_eq!(p.n, Some(5));
    }

    #[test]
    fn frozen_count_claim_matches() {
        let r = run_claim("enum-oracle-counts", &ClaimParams::default()).unwrap();
        assert!(r.matched, "details: {:?}", r.details);
        assert!(!r.sampled);
    }

    #[test]
    fn singleton_transversal_claim_holds_exactly() {
        let r = run_claim("sigma0-choice-star-1", &ClaimParams::default()).unwrap();
        assert_eq!(r.verdict, Some(Verdict::True));
        assert!(r.matched);
        assert!(!r.sampled);
    }

    #[test]
    fn block_transversal_refutation_is_exact_and_false() {
        let r = run_claim("sigma2-not-choicestar1", &ClaimParams::default()).unwrap();
        assert_eq!(r.verdict, Some(Verdict::False));
        assert!(r.matched);
        assert!(!r.sampled);
        assert!(r.details.iter().any(|d| d.contains("240 candidates")));
    }

    #[test]
    fn size_overrides_flow_into_structures() {
        let mut p = ClaimParams::default();
        p.set("n", "5").unwrap();
        let r = run_claim("sigma0-AC11", &p).unwrap();
        assert_eq!(r.verdict, Some(Verdict::True));
        assert!(r.details.iter().any(|d| d.contains("sigma0(5)")));
    }
}
