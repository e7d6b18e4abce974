//! Formula evaluation over a truncated structure.
//!
//! First-order quantifiers range over the whole finite domain. Second-order
//! quantifiers range over the structure's predicate domains: universal ones
//! at budget `s_univ`, existential ones at `s_exist`, both resolved through
//! [`HenkinStructure::quantifier_range`] (exact when tractable, a sampled
//! battery otherwise — the outcome records when sampling was involved).
//! Existential predicate quantifiers may additionally consult a witness
//! provider; proposals carry their own invariance certificates and are not
//! budget-capped, mirroring the untruncated structures where a witness may
//! have any finite support.
//!
//! There is no per-call memo table: the structure-level range caches are the
//! memoization that matters at this scale, and keeping evaluation a plain
//! recursion makes outcomes easy to audit.

use crate::domain::{DomainError, HenkinStructure, QuantifierPolicy, SymbolicPredicate};
use crate::formula::{free_vars, Formula, IndivVar, PredVar};
use crate::group::Individual;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("unbound individual variable {0}")]
    UnboundIndiv(String),
    #[error("unbound predicate variable {0}")]
    UnboundPred(String),
    #[error("predicate {name} used at arity {got}, bound at arity {want}")]
    PredArity { name: String, want: u8, got: u8 },
    #[error("unknown witness provider {0}")]
    UnknownProvider(String),
    #[error("equation compares tuples of lengths {0} and {1}")]
    EqLength(usize, usize),
}

/// Values for the free variables of a formula.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    indiv: BTreeMap<String, Individual>,
    pred: BTreeMap<String, SymbolicPredicate>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with_indiv(mut self, name: impl Into<String>, x: Individual) -> Assignment {
        self.indiv.insert(name.into(), x);
        self
    }

    pub fn with_pred(mut self, name: impl Into<String>, p: SymbolicPredicate) -> Assignment {
        self.pred.insert(name.into(), p);
        self
    }

    pub fn set_indiv(&mut self, name: impl Into<String>, x: Individual) {
        self.indiv.insert(name.into(), x);
    }

    pub fn set_pred(&mut self, name: impl Into<String>, p: SymbolicPredicate) {
        self.pred.insert(name.into(), p);
    }

    pub fn indiv(&self, name: &str) -> Option<Individual> {
        self.indiv.get(name).copied()
    }

    pub fn pred(&self, name: &str) -> Option<&SymbolicPredicate> {
        self.pred.get(name)
    }

    pub fn indivs(&self) -> impl Iterator<Item = (&str, Individual)> {
        self.indiv.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn preds(&self) -> impl Iterator<Item = (&str, &SymbolicPredicate)> {
        self.pred.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Counters describing how an evaluation went.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EvalStats {
    /// Formula nodes visited.
    pub nodes: u64,
    /// Predicate candidates tried across second-order quantifiers.
    pub predicates_swept: u64,
    /// Witness-provider proposals tried.
    pub provider_witnesses: u64,
    /// Whether any quantifier range was a sampled battery rather than an
    /// exact enumeration.
    pub sampled: bool,
}

/// Result of an evaluation: the truth value, effort counters, and for a
/// false universally-quantified formula a description of the outermost
/// failing bindings.
#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub truth: bool,
    pub stats: EvalStats,
    pub trace: Option<String>,
}

/// Context handed to a witness provider at an existential predicate
/// quantifier: the structure, the bindings in scope, the quantified
/// variable, and the body it must satisfy.
pub struct ProviderContext<'a> {
    pub structure: &'a HenkinStructure,
    pub assignment: &'a Assignment,
    pub target: &'a PredVar,
    pub body: &'a Formula,
}

/// A source of candidate witnesses for existential predicate quantifiers.
/// Proposals must be valid predicates of the structure (the type carries
/// the invariance certificate); they need not respect the search budget.
pub trait WitnessProvider: std::fmt::Debug + Send + Sync {
    fn propose(&self, cx: &ProviderContext) -> Vec<SymbolicPredicate>;
}

struct Evaluator<'a> {
    h: &'a HenkinStructure,
    policy: &'a QuantifierPolicy,
    provider: Option<Arc<dyn WitnessProvider>>,
    indiv: Vec<(String, u32)>,
    pred: Vec<(String, SymbolicPredicate)>,
    stats: EvalStats,
}

impl<'a> Evaluator<'a> {
    fn new(
        h: &'a HenkinStructure,
        asg: &Assignment,
        policy: &'a QuantifierPolicy,
    ) -> Result<Evaluator<'a>, EvalError> {
        use crate::domain::ExistsStrategy;
        let provider = match &policy.strategy {
            ExistsStrategy::Enumerate => None,
            ExistsStrategy::WitnessProvider(name) | ExistsStrategy::Hybrid(name) => {
                Some(
                    crate::choice::builtin_provider(name)
                        .ok_or_else(|| EvalError::UnknownProvider(name.clone()))?,
                )
            }
        };
        let mut indiv = Vec::new();
        for (name, x) in asg.indivs() {
            let pos = h.domain().position(x).map_err(DomainError::from)?;
            indiv.push((name.to_string(), pos));
        }
        let pred = asg.preds().map(|(n, p)| (n.to_string(), p.clone())).collect();
        Ok(Evaluator { h, policy, provider, indiv, pred, stats: EvalStats::default() })
    }

    fn lookup_indiv(&self, name: &str) -> Result<u32, EvalError> {
        self.indiv
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, p)| p)
            .ok_or_else(|| EvalError::UnboundIndiv(name.to_string()))
    }

    /// Bound predicates shadow the structure's named predicates.
    fn lookup_pred(&self, pv: &PredVar) -> Result<&SymbolicPredicate, EvalError> {
        let found = self
            .pred
            .iter()
            .rev()
            .find(|(n, _)| n == &pv.name)
            .map(|(_, p)| p)
            .or_else(|| self.h.named(&pv.name));
        let p = found.ok_or_else(|| EvalError::UnboundPred(pv.name.clone()))?;
        if p.arity() != pv.arity {
            return Err(EvalError::PredArity {
                name: pv.name.clone(),
                want: p.arity(),
                got: pv.arity,
            });
        }
        Ok(p)
    }

    fn eval(&mut self, f: &Formula) -> Result<bool, EvalError> {
        self.stats.nodes += 1;
        match f {
            Formula::Atom(pv, args) => {
                let positions: Vec<u32> = args
                    .iter()
                    .map(|a| self.lookup_indiv(a))
                    .collect::<Result<_, _>>()?;
                Ok(self.lookup_pred(pv)?.contains_positions(&positions))
            }
            Formula::Eq(l, r) => {
                if l.len() != r.len() {
                    return Err(EvalError::EqLength(l.len(), r.len()));
                }
                for (a, b) in l.iter().zip(r) {
                    if self.lookup_indiv(a)? != self.lookup_indiv(b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Not(a) => Ok(!self.eval(a)?),
            Formula::And(a, b) => Ok(self.eval(a)? && self.eval(b)?),
            Formula::Or(a, b) => Ok(self.eval(a)? || self.eval(b)?),
            Formula::Implies(a, b) => Ok(!self.eval(a)? || self.eval(b)?),
            Formula::Iff(a, b) => Ok(self.eval(a)? == self.eval(b)?),
            Formula::Forall(vs, b) => self.sweep_tuples(vs, b, SweepKind::All),
            Formula::Exists(vs, b) => self.sweep_tuples(vs, b, SweepKind::Any),
            Formula::ExistsOne(vs, b) => self.sweep_tuples(vs, b, SweepKind::ExactlyOne),
            Formula::ForallPred(pv, b) => {
                let range = self.h.quantifier_range(pv.arity, self.policy.s_univ)?;
                self.stats.sampled |= range.sampled;
                for p in range.predicates.iter() {
                    self.stats.predicates_swept += 1;
                    self.pred.push((pv.name.clone(), p.clone()));
                    let ok = self.eval(b);
                    self.pred.pop();
                    if !ok? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::ExistsPred(pv, b) => {
                if let Some(provider) = self.provider.clone() {
                    let proposals = {
                        let cx = ProviderContext {
                            structure: self.h,
                            assignment: &self.snapshot(),
                            target: pv,
                            body: b,
                        };
                        provider.propose(&cx)
                    };
                    for p in proposals {
                        debug_assert_eq!(p.arity(), pv.arity);
                        self.stats.provider_witnesses += 1;
                        self.pred.push((pv.name.clone(), p));
                        let ok = self.eval(b);
                        self.pred.pop();
                        if ok? {
                            return Ok(true);
                        }
                    }
                }
                if matches!(
                    self.policy.strategy,
                    crate::domain::ExistsStrategy::WitnessProvider(_)
                ) {
                    return Ok(false);
                }
                let range = self.h.quantifier_range(pv.arity, self.policy.s_exist)?;
                self.stats.sampled |= range.sampled;
                for p in range.predicates.iter() {
                    self.stats.predicates_swept += 1;
                    self.pred.push((pv.name.clone(), p.clone()));
                    let ok = self.eval(b);
                    self.pred.pop();
                    if ok? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn sweep_tuples(
        &mut self,
        vs: &[IndivVar],
        body: &Formula,
        kind: SweepKind,
    ) -> Result<bool, EvalError> {
        let size = self.h.domain().size() as u32;
        let depth = self.indiv.len();
        for v in vs {
            self.indiv.push((v.clone(), 0));
        }
        let result = self.sweep_rec(vs, body, kind, depth, 0, size);
        self.indiv.truncate(depth);
        result.map(|count| match kind {
            SweepKind::All => count == (size as u64).pow(vs.len() as u32),
            SweepKind::Any => count > 0,
            SweepKind::ExactlyOne => count == 1,
        })
    }

    /// Counts satisfying tuples, short-circuiting where the sweep kind
    /// allows: `All` stops at the first failure, `Any` at the first
    /// success, `ExactlyOne` at the second.
    fn sweep_rec(
        &mut self,
        vs: &[IndivVar],
        body: &Formula,
        kind: SweepKind,
        depth: usize,
        var: usize,
        size: u32,
    ) -> Result<u64, EvalError> {
        if var == vs.len() {
            return Ok(u64::from(self.eval(body)?));
        }
        let mut count = 0;
        for pos in 0..size {
            self.indiv[depth + var].1 = pos;
            let sub = self.sweep_rec(vs, body, kind, depth, var + 1, size)?;
            count += sub;
            match kind {
                SweepKind::All => {
                    let swept = (u64::from(size)).pow((vs.len() - var - 1) as u32);
                    if sub < swept {
                        return Ok(count);
                    }
                }
                SweepKind::Any => {
                    if count > 0 {
                        return Ok(count);
                    }
                }
                SweepKind::ExactlyOne => {
                    if count > 1 {
                        return Ok(count);
                    }
                }
            }
        }
        Ok(count)
    }

    fn snapshot(&self) -> Assignment {
        let mut asg = Assignment::new();
        for (name, pos) in &self.indiv {
            asg.set_indiv(name.clone(), self.h.domain().at(*pos));
        }
        for (name, p) in &self.pred {
            asg.set_pred(name.clone(), p.clone());
        }
        asg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepKind {
    All,
    Any,
    ExactlyOne,
}

/// Evaluates `f` in the structure under the given assignment and policy.
pub fn eval(
    h: &HenkinStructure,
    asg: &Assignment,
    f: &Formula,
    policy: &QuantifierPolicy,
) -> Result<EvalOutcome, EvalError> {
    let mut ev = Evaluator::new(h, asg, policy)?;
    let truth = ev.eval(f)?;
    let mut stats = ev.stats.clone();
    let trace = if truth {
        None
    } else {
        failing_path(&mut ev, f)?.inspect(|_| {
            stats.nodes = ev.stats.nodes;
            stats.predicates_swept = ev.stats.predicates_swept;
            stats.provider_witnesses = ev.stats.provider_witnesses;
            stats.sampled = ev.stats.sampled;
        })
    };
    Ok(EvalOutcome { truth, stats, trace })
}

/// For a false formula with universal prefix, finds the outermost failing
/// bindings by re-evaluation and renders them.
fn failing_path(ev: &mut Evaluator, f: &Formula) -> Result<Option<String>, EvalError> {
    let mut out = String::new();
    let mut current = f;
    loop {
        match current {
            Formula::Forall(vs, body) => {
                let size = ev.h.domain().size() as u32;
                let mut found = false;
                'search: for code in 0..(u64::from(size)).pow(vs.len() as u32) {
                    let mut c = code;
                    let depth = ev.indiv.len();
                    for v in vs.iter().rev() {
                        ev.indiv.push((v.clone(), (c % u64::from(size)) as u32));
                        c /= u64::from(size);
                    }
                    ev.indiv[depth..].reverse();
                    if !ev.eval(body)? {
                        for (v, (_, pos)) in vs.iter().zip(&ev.indiv[depth..]) {
                            let x = ev.h.domain().at(*pos);
                            let _ = write!(out, "{v} = {x}; ");
                        }
                        found = true;
                        current = body;
                        break 'search;
                    }
                    ev.indiv.truncate(depth);
                }
                if !found {
                    return Ok(None);
                }
            }
            Formula::ForallPred(pv, body) => {
                let range = ev.h.quantifier_range(pv.arity, ev.policy.s_univ)?;
                let mut found = false;
                for p in range.predicates.iter() {
                    ev.pred.push((pv.name.clone(), p.clone()));
                    if !ev.eval(body)? {
                        let _ = write!(out, "{} = {}; ", pv.name, describe_predicate(ev.h, p));
                        found = true;
                        current = body;
                        break;
                    }
                    ev.pred.pop();
                }
                if !found {
                    return Ok(None);
                }
            }
            _ => break,
        }
    }
    Ok(if out.is_empty() { None } else { Some(out.trim_end_matches("; ").to_string()) })
}

/// Compact rendering of a predicate's tuples and support, for traces and
/// reports.
pub fn describe_predicate(h: &HenkinStructure, p: &SymbolicPredicate) -> String {
    let tuples = p.tuples(h.domain());
    let mut out = String::from("{");
    for (i, t) in tuples.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        if i >= 8 {
            let _ = write!(out, "... {} tuples total", tuples.len());
            break;
        }
        if t.len() == 1 {
            let _ = write!(out, "{}", t[0]);
        } else {
            out.push('(');
            for (j, x) in t.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{x}");
            }
            out.push(')');
        }
    }
    out.push('}');
    let support: Vec<String> = p.support().points().map(|x| x.to_string()).collect();
    if !support.is_empty() {
        let _ = write!(out, " (support {})", support.join(" "));
    }
    out
}

/// Evaluates `f` under `asg` and under the image of `asg` by the group
/// element `p`, returning both outcomes. In an admitted structure the
/// truth values must agree.
pub fn eval_equivariant_check(
    h: &HenkinStructure,
    asg: &Assignment,
    f: &Formula,
    p: &crate::group::Perm,
    policy: &QuantifierPolicy,
) -> Result<(EvalOutcome, EvalOutcome), EvalError> {
    let mut moved = Assignment::new();
    for (name, x) in asg.indivs() {
        let y = h.group().apply(p, x).map_err(DomainError::from)?;
        moved.set_indiv(name.to_string(), y);
    }
    for (name, q) in asg.preds() {
        moved.set_pred(name.to_string(), crate::domain::act_on_predicate(h.group(), p, q)?);
    }
    let base = eval(h, asg, f, policy)?;
    let image = eval(h, &moved, f, policy)?;
    Ok((base, image))
}

/// Builds the predicate `{ (vars) | body }` from an assignment of the other
/// free variables. The support is the union of the parameter supports and
/// the individual parameters; its weight must fit the policy's existential
/// budget. The result carries the usual invariance certificate.
pub fn comprehend(
    h: &HenkinStructure,
    params: &Assignment,
    vars: &[IndivVar],
    body: &Formula,
    policy: &QuantifierPolicy,
) -> Result<SymbolicPredicate, EvalError> {
    let (free_iv, free_pv) = free_vars(body);
    let mut support_points: Vec<Individual> = Vec::new();
    for v in &free_iv {
        if vars.contains(v) {
            continue;
        }
        support_points.push(params.indiv(v).ok_or_else(|| EvalError::UnboundIndiv(v.clone()))?);
    }
    for pv in &free_pv {
        let p = params
            .pred(&pv.name)
            .or_else(|| h.named(&pv.name))
            .ok_or_else(|| EvalError::UnboundPred(pv.name.clone()))?;
        support_points.extend(p.support().points());
    }
    let support = h.group().normalize_support(support_points).map_err(DomainError::from)?;
    let weight = h.group().support_weight(&support);
    if weight > policy.s_exist {
        return Err(EvalError::Domain(DomainError::BudgetExceeded {
            got: weight,
            budget: policy.s_exist,
        }));
    }
    let arity = u8::try_from(vars.len()).expect("comprehension arity fits u8");
    let size = h.domain().size() as u32;
    let mut ext = crate::domain::Extension::empty(arity, size)?;
    let mut ev = Evaluator::new(h, params, policy)?;
    let depth = ev.indiv.len();
    for v in vars {
        ev.indiv.push((v.clone(), 0));
    }
    for code in 0..ext.code_space() {
        let positions = ext.decode(code);
        for (slot, &pos) in ev.indiv[depth..].iter_mut().zip(&positions) {
            slot.1 = pos;
        }
        if ev.eval(body)? {
            ext.insert(code);
        }
    }
    Ok(SymbolicPredicate::new(h.group(), support.points(), ext)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{
        build_full, build_sigma2, build_sigma3, ExistsStrategy, QuantifierPolicy,
    };
    use crate::formula::{build_ac, expand_exists_one, parse};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn policy(s_univ: usize, s_exist: usize) -> QuantifierPolicy {
        QuantifierPolicy::new(s_univ, s_exist).unwrap()
    }

    fn ind(part: u8, index: u32) -> Individual {
        Individual::new(part, index)
    }

    #[test]
    fn atoms_connectives_and_equality_evaluate() {
        let h = build_full(2);
        let p = h
            .enumerate_predicates(1, 2)
            .unwrap()
            .iter()
            .find(|p| p.extension().len() == 1)
            .unwrap()
            .clone();
        let x = p.tuples(h.domain())[0][0];
        let other = h.domain().individuals().iter().copied().find(|&y| y != x).unwrap();
        let asg = Assignment::new()
            .with_indiv("x", x)
            .with_indiv("y", other)
            .with_pred("C", p);
        let pl = h.policy().clone();
        let t = |src: &str| eval(&h, &asg, &parse(src).unwrap(), &pl).unwrap().truth;
        assert!(t("C(x)"));
        assert!(!t("C(y)"));
        assert!(t("C(x) & !C(y)"));
        assert!(t("C(y) -> C(x)"));
        assert!(t("C(x) <-> !C(y)"));
        assert!(t("x = x"));
        assert!(!t("x = y"));
        assert!(t("exists z. C(z)"));
        assert!(!t("forall z. C(z)"));
    }

    #[test]
    fn exists_one_matches_its_first_order_expansion() {
        let h = build_full(3);
        let pl = h.policy().clone();
        let direct = parse("exists1 y. C(y)").unwrap();
        let expanded = expand_exists_one(
            &["y".to_string()],
            &parse("C(y)").unwrap(),
        );
        for c in h.enumerate_predicates(1, 3).unwrap().iter() {
            let asg = Assignment::new().with_pred("C", c.clone());
            let a = eval(&h, &asg, &direct, &pl).unwrap().truth;
            let b = eval(&h, &asg, &expanded, &pl).unwrap().truth;
            assert_eq!(a, b, "divergence at C = {}", describe_predicate(&h, c));
            assert_eq!(a, c.extension().len() == 1);
        }
        // Tuple version: exactly one pair.
        let direct2 = parse("exists1 x y. R(x,y)").unwrap();
        let expanded2 = expand_exists_one(
            &["x".to_string(), "y".to_string()],
            &parse("R(x,y)").unwrap(),
        );
        for r in h.enumerate_predicates(2, 3).unwrap().iter().step_by(7) {
            let asg = Assignment::new().with_pred("R", r.clone());
            let a = eval(&h, &asg, &direct2, &pl).unwrap().truth;
            let b = eval(&h, &asg, &expanded2, &pl).unwrap().truth;
            assert_eq!(a, b);
            assert_eq!(a, r.extension().len() == 1);
        }
    }

    #[test]
    fn full_structure_satisfies_the_relational_choice_schema() {
        let h = build_full(2);
        let f = build_ac(1, 1);
        let out = eval(&h, &Assignment::new(), &f, h.policy()).unwrap();
        assert!(out.truth);
        assert!(!out.stats.sampled);
        let neg = f.clone().not();
        assert!(!eval(&h, &Assignment::new(), &neg, h.policy()).unwrap().truth);
    }

    #[test]
    fn pair_block_membership_formula_detects_blocks() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let pl = h.policy().clone();
        let f = parse(
            "exists x y. ((!(x = y) & T(x,y)) & forall z. (C(z) <-> (z = x | z = y)))",
        )
        .unwrap();
        let block = SymbolicPredicate::from_tuples(
            h.group(),
            1,
            [ind(0, 1), ind(1, 1)],
            vec![vec![ind(0, 1)], vec![ind(1, 1)]],
        )
        .unwrap();
        let asg = Assignment::new().with_pred("C", block);
        assert!(eval(&h, &asg, &f, &pl).unwrap().truth);
        let full = SymbolicPredicate::from_tuples(
            h.group(),
            1,
            [],
            h.domain().individuals().iter().map(|&x| vec![x]).collect::<Vec<_>>(),
        )
        .unwrap();
        let asg = Assignment::new().with_pred("C", full);
        assert!(!eval(&h, &asg, &f, &pl).unwrap().truth);
        let empty = SymbolicPredicate::from_tuples(h.group(), 1, [], Vec::<Vec<Individual>>::new())
            .unwrap();
        let asg = Assignment::new().with_pred("C", empty);
        assert!(!eval(&h, &asg, &f, &pl).unwrap().truth);
    }

    #[test]
    fn named_predicates_resolve_without_explicit_binding() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let f = parse("forall x. exists y. (T(x,y) & !(x = y))").unwrap();
        assert!(eval(&h, &Assignment::new(), &f, h.policy()).unwrap().truth);
    }

    #[test]
    fn evaluation_is_equivariant_on_random_inputs() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let pl = h.policy().clone();
        let formulas = [
            parse("exists x y. ((!(x = y) & T(x,y)) & forall z. (C(z) <-> (z = x | z = y)))")
                .unwrap(),
            parse("forall x. (C(x) -> exists y. (T(x,y) & C(y)))").unwrap(),
            parse("exists1 x. C(x)").unwrap(),
            parse("forall x. exists y. (T(x,y) & (C(x) <-> C(y)))").unwrap(),
        ];
        let preds = h.enumerate_predicates(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let f = formulas.choose(&mut rng).unwrap();
            let c = preds.choose(&mut rng).unwrap().clone();
            let p = h.group().random_element(&mut rng);
            let asg = Assignment::new().with_pred("C", c);
            let (base, image) = eval_equivariant_check(&h, &asg, f, &p, &pl).unwrap();
            assert_eq!(base.truth, image.truth);
        }
    }

    #[test]
    fn failing_universals_report_the_outermost_witnesses() {
        let h = build_sigma2(3, policy(1, 1)).unwrap();
        let f = parse("forall x. T(x,x)").unwrap();
        let out = eval(&h, &Assignment::new(), &f, h.policy()).unwrap();
        assert!(!out.truth);
        let trace = out.trace.unwrap();
        assert!(trace.contains("x = "), "trace was: {trace}");
        let g = parse("forallP C:1. exists1 x. C(x)").unwrap();
        let out = eval(&h, &Assignment::new(), &g, h.policy()).unwrap();
        assert!(!out.truth);
        assert!(out.trace.unwrap().contains("C = "));
    }

    #[test]
    fn sampled_ranges_are_flagged_in_stats() {
        let h = build_sigma3(6, 6, policy(2, 2)).unwrap();
        let f = parse("existsP S:2. forall x. S(x,x)").unwrap();
        let out = eval(&h, &Assignment::new(), &f, h.policy()).unwrap();
        assert!(out.truth, "the diagonal is in the battery");
        assert!(out.stats.sampled);
        assert!(out.stats.predicates_swept > 0);
    }

    #[test]
    fn unknown_provider_names_error() {
        let h = build_full(2);
        let pl = policy(2, 2).with_strategy(ExistsStrategy::Hybrid("nope".into()));
        let f = parse("existsP C:1. C(x)").unwrap();
        let asg = Assignment::new().with_indiv("x", ind(0, 0));
        let err = eval(&h, &asg, &f, &pl).unwrap_err();
        assert_eq!(err, EvalError::UnknownProvider("nope".into()));
    }

    #[test]
    fn comprehension_builds_rows_with_parameter_support() {
        let h = build_sigma2(4, policy(1, 3)).unwrap();
        let pl = h.policy().clone();
        // The partner row of one individual: a singleton whose support is
        // the individual's block.
        let params = Assignment::new().with_indiv("x", ind(0, 2));
        let row = comprehend(&h, &params, &["y".to_string()], &parse("T(x,y)").unwrap(), &pl)
            .unwrap();
        assert_eq!(row.extension().len(), 1);
        assert!(row.contains_tuple(h.domain(), &[ind(1, 2)]).unwrap());
        assert_eq!(row.weight(h.group()), 1);
        // A tautological body yields the full predicate with empty support.
        let full = comprehend(
            &h,
            &Assignment::new(),
            &["y".to_string()],
            &parse("y = y").unwrap(),
            &pl,
        )
        .unwrap();
        assert_eq!(full.extension().len(), 8);
        assert!(full.support().is_empty());
    }

    #[test]
    fn comprehension_rejects_support_beyond_budget() {
        let h = build_sigma2(4, policy(1, 1)).unwrap();
        let pl = h.policy().clone();
        let params = Assignment::new()
            .with_indiv("x", ind(0, 0))
            .with_indiv("w", ind(0, 1));
        let err = comprehend(
            &h,
            &params,
            &["y".to_string()],
            &parse("x = y | w = y").unwrap(),
            &pl,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            EvalError::Domain(DomainError::BudgetExceeded { got: 2, budget: 1 })
        ));
    }
}
