//! Second-order formulas: AST, concrete syntax, substitution, axiom schemas.
//!
//! Individual variables are lowercase (`x`, `y1`), predicate variables are
//! capitalized and carry an arity (`R:2`). `ExistsOne` ("exactly one tuple",
//! written `exists1`) is a primitive node; [`expand_exists_one`] gives its
//! first-order expansion, which the evaluator treats as the defining meaning.

mod parse;
mod print;
mod schema;

pub use parse::{parse, ParseError};
pub use schema::{
    build_ac, build_ac_ha, build_ac_star, build_bij, build_choice, build_choice_h,
    build_choice_star, build_image, open_family, slot_x_vars, slot_y_vars, SchemaError,
    SchemaSlot,
};

use std::collections::{BTreeMap, BTreeSet};

/// An individual (first-order) variable.
pub type IndivVar = String;

/// A predicate variable: a capitalized name together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredVar {
    pub name: String,
    pub arity: u8,
}

impl PredVar {
    pub fn new(name: impl Into<String>, arity: u8) -> Self {
        let name = name.into();
        assert!(arity >= 1, "predicate variable {name} must have arity >= 1");
        PredVar { name, arity }
    }
}

impl std::fmt::Display for PredVar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.name, self.arity)
    }
}

/// A second-order formula.
///
/// `Eq` compares tuples of equal length componentwise; the concrete syntax
/// only writes single equations, so longer tuples render as a conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(PredVar, Vec<IndivVar>),
    Eq(Vec<IndivVar>, Vec<IndivVar>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<IndivVar>, Box<Formula>),
    Exists(Vec<IndivVar>, Box<Formula>),
    /// There is exactly one tuple of values satisfying the body.
    ExistsOne(Vec<IndivVar>, Box<Formula>),
    ForallPred(PredVar, Box<Formula>),
    ExistsPred(PredVar, Box<Formula>),
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        print::render(self, f)
    }
}

/// Shorthand constructors; they keep schema-building code close to the
/// textbook shape of the axioms.
impl Formula {
    pub fn atom(p: &PredVar, args: &[IndivVar]) -> Formula {
        assert_eq!(
            p.arity as usize,
            args.len(),
            "atom {} applied to {} arguments",
            p,
            args.len()
        );
        Formula::Atom(p.clone(), args.to_vec())
    }

    pub fn eq(l: IndivVar, r: IndivVar) -> Formula {
        Formula::Eq(vec![l], vec![r])
    }

    /// Componentwise tuple equality as a conjunction of single equations.
    pub fn eq_tuple(ls: &[IndivVar], rs: &[IndivVar]) -> Formula {
        assert_eq!(ls.len(), rs.len(), "tuple equality with unequal lengths");
        ls.iter()
            .zip(rs)
            .map(|(l, r)| Formula::eq(l.clone(), r.clone()))
            .reduce(|a, b| a.and(b))
            .expect("tuple equality over empty tuples")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }
    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }
    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }
    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }
    pub fn forall(vars: &[IndivVar], body: Formula) -> Formula {
        assert!(!vars.is_empty());
        Formula::Forall(vars.to_vec(), Box::new(body))
    }
    pub fn exists(vars: &[IndivVar], body: Formula) -> Formula {
        assert!(!vars.is_empty());
        Formula::Exists(vars.to_vec(), Box::new(body))
    }
    pub fn exists_one(vars: &[IndivVar], body: Formula) -> Formula {
        assert!(!vars.is_empty());
        Formula::ExistsOne(vars.to_vec(), Box::new(body))
    }
    pub fn forall_pred(p: &PredVar, body: Formula) -> Formula {
        Formula::ForallPred(p.clone(), Box::new(body))
    }
    pub fn exists_pred(p: &PredVar, body: Formula) -> Formula {
        Formula::ExistsPred(p.clone(), Box::new(body))
    }
}

/// Free individual and predicate variables of a formula.
pub fn free_vars(f: &Formula) -> (BTreeSet<IndivVar>, BTreeSet<PredVar>) {
    let mut iv = BTreeSet::new();
    let mut pv = BTreeSet::new();
    collect_free(f, &mut BTreeSet::new(), &mut BTreeSet::new(), &mut iv, &mut pv);
    (iv, pv)
}

fn collect_free(
    f: &Formula,
    bound_iv: &mut BTreeSet<IndivVar>,
    bound_pv: &mut BTreeSet<String>,
    iv: &mut BTreeSet<IndivVar>,
    pv: &mut BTreeSet<PredVar>,
) {
    match f {
        Formula::Atom(p, args) => {
            if !bound_pv.contains(&p.name) {
                pv.insert(p.clone());
            }
            for a in args {
                if !bound_iv.contains(a) {
                    iv.insert(a.clone());
                }
            }
        }
        Formula::Eq(l, r) => {
            for a in l.iter().chain(r) {
                if !bound_iv.contains(a) {
                    iv.insert(a.clone());
                }
            }
        }
        Formula::Not(a) => collect_free(a, bound_iv, bound_pv, iv, pv),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_free(a, bound_iv, bound_pv, iv, pv);
            collect_free(b, bound_iv, bound_pv, iv, pv);
        }
        Formula::Forall(vs, b) | Formula::Exists(vs, b) | Formula::ExistsOne(vs, b) => {
            let added: Vec<_> = vs.iter().filter(|v| bound_iv.insert((*v).clone())).cloned().collect();
            collect_free(b, bound_iv, bound_pv, iv, pv);
            for v in added {
                bound_iv.remove(&v);
            }
        }
        Formula::ForallPred(p, b) | Formula::ExistsPred(p, b) => {
            let added = bound_pv.insert(p.name.clone());
            collect_free(b, bound_iv, bound_pv, iv, pv);
            if added {
                bound_pv.remove(&p.name);
            }
        }
    }
}

/// All variable names (free or bound, individual or predicate) occurring in
/// `f`. Used to pick fresh names.
fn all_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(p, args) => {
            out.insert(p.name.clone());
            out.extend(args.iter().cloned());
        }
        Formula::Eq(l, r) => out.extend(l.iter().chain(r).cloned()),
        Formula::Not(a) => all_names(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            all_names(a, out);
            all_names(b, out);
        }
        Formula::Forall(vs, b) | Formula::Exists(vs, b) | Formula::ExistsOne(vs, b) => {
            out.extend(vs.iter().cloned());
            all_names(b, out);
        }
        Formula::ForallPred(p, b) | Formula::ExistsPred(p, b) => {
            out.insert(p.name.clone());
            all_names(b, out);
        }
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for k in 1u32.. {
        let cand = format!("{base}{k}");
        if !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Capture-avoiding simultaneous renaming of free individual variables.
pub fn subst_indiv(f: &Formula, map: &BTreeMap<IndivVar, IndivVar>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    let rename = |v: &IndivVar| map.get(v).cloned().unwrap_or_else(|| v.clone());
    match f {
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(rename).collect()),
        Formula::Eq(l, r) => Formula::Eq(l.iter().map(rename).collect(), r.iter().map(rename).collect()),
        Formula::Not(a) => subst_indiv(a, map).not(),
        Formula::And(a, b) => subst_indiv(a, map).and(subst_indiv(b, map)),
        Formula::Or(a, b) => subst_indiv(a, map).or(subst_indiv(b, map)),
        Formula::Implies(a, b) => subst_indiv(a, map).implies(subst_indiv(b, map)),
        Formula::Iff(a, b) => subst_indiv(a, map).iff(subst_indiv(b, map)),
        Formula::Forall(vs, b) => {
            let (vs, b) = subst_under_binder(vs, b, map);
            Formula::Forall(vs, Box::new(b))
        }
        Formula::Exists(vs, b) => {
            let (vs, b) = subst_under_binder(vs, b, map);
            Formula::Exists(vs, Box::new(b))
        }
        Formula::ExistsOne(vs, b) => {
            let (vs, b) = subst_under_binder(vs, b, map);
            Formula::ExistsOne(vs, Box::new(b))
        }
        Formula::ForallPred(p, b) => Formula::ForallPred(p.clone(), Box::new(subst_indiv(b, map))),
        Formula::ExistsPred(p, b) => Formula::ExistsPred(p.clone(), Box::new(subst_indiv(b, map))),
    }
}

fn subst_under_binder(
    vs: &[IndivVar],
    body: &Formula,
    map: &BTreeMap<IndivVar, IndivVar>,
) -> (Vec<IndivVar>, Formula) {
    // Drop shadowed entries, then rename any binder that would capture an
    // incoming image.
    let mut inner: BTreeMap<IndivVar, IndivVar> = map
        .iter()
        .filter(|(src, _)| !vs.contains(src))
        .map(|(s, t)| (s.clone(), t.clone()))
        .collect();
    let (body_free, _) = free_vars(body);
    inner.retain(|src, _| body_free.contains(src));
    let images: BTreeSet<_> = inner.values().cloned().collect();
    let mut new_vs = vs.to_vec();
    if new_vs.iter().any(|v| images.contains(v)) {
        let mut avoid: BTreeSet<String> = images.iter().cloned().collect();
        all_names(body, &mut avoid);
        avoid.extend(inner.keys().cloned());
        let mut renames = BTreeMap::new();
        for v in new_vs.iter_mut() {
            if images.contains(v) {
                let fresh = fresh_name(v, &avoid);
                avoid.insert(fresh.clone());
                renames.insert(v.clone(), fresh.clone());
                *v = fresh;
            }
        }
        let body = subst_indiv(body, &renames);
        return (new_vs, subst_indiv(&body, &inner));
    }
    (new_vs, subst_indiv(body, &inner))
}

/// Replaces every atom `target(t1..tk)` in `f` by `body[params := t1..tk]`,
/// the usual schema-instantiation step "substitute the predicate term
/// `λ params. body` for `target`". Renames binders in `f` that would capture
/// a free variable of `body`.
pub fn substitute_pred(
    f: &Formula,
    target: &PredVar,
    params: &[IndivVar],
    body: &Formula,
) -> Result<Formula, SchemaError> {
    if params.len() != target.arity as usize {
        return Err(SchemaError::ParamCount {
            target: target.clone(),
            given: params.len(),
        });
    }
    let (mut body_free_iv, body_free_pv) = free_vars(body);
    for p in params {
        body_free_iv.remove(p);
    }
    if body_free_pv.iter().any(|p| p.name == target.name) {
        return Err(SchemaError::TargetFreeInBody(target.clone()));
    }
    subst_pred_walk(f, target, params, body, &body_free_iv, &body_free_pv)
}

fn subst_pred_walk(
    f: &Formula,
    target: &PredVar,
    params: &[IndivVar],
    body: &Formula,
    body_free_iv: &BTreeSet<IndivVar>,
    body_free_pv: &BTreeSet<PredVar>,
) -> Result<Formula, SchemaError> {
    let recur =
        |g: &Formula| subst_pred_walk(g, target, params, body, body_free_iv, body_free_pv);
    Ok(match f {
        Formula::Atom(p, args) if p.name == target.name => {
            if p.arity != target.arity {
                return Err(SchemaError::ArityMismatch {
                    var: p.clone(),
                    expected: target.arity,
                });
            }
            let map: BTreeMap<_, _> = params
                .iter()
                .cloned()
                .zip(args.iter().cloned())
                .filter(|(p, a)| p != a)
                .collect();
            subst_indiv(body, &map)
        }
        Formula::Atom(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(a) => recur(a)?.not(),
        Formula::And(a, b) => recur(a)?.and(recur(b)?),
        Formula::Or(a, b) => recur(a)?.or(recur(b)?),
        Formula::Implies(a, b) => recur(a)?.implies(recur(b)?),
        Formula::Iff(a, b) => recur(a)?.iff(recur(b)?),
        Formula::Forall(vs, b) | Formula::Exists(vs, b) | Formula::ExistsOne(vs, b) => {
            let (_, sub_pv) = free_vars(f);
            let occurs = sub_pv.iter().any(|p| p.name == target.name);
            let (vs, b) = if occurs && vs.iter().any(|v| body_free_iv.contains(v)) {
                // Binder would capture a free variable of the inserted body.
                let mut avoid: BTreeSet<String> = body_free_iv.iter().cloned().collect();
                all_names(b, &mut avoid);
                let mut renames = BTreeMap::new();
                let mut new_vs = vs.clone();
                for v in new_vs.iter_mut() {
                    if body_free_iv.contains(v) {
                        let fresh = fresh_name(v, &avoid);
                        avoid.insert(fresh.clone());
                        renames.insert(v.clone(), fresh.clone());
                        *v = fresh;
                    }
                }
                (new_vs, subst_indiv(b, &renames))
            } else {
                (vs.clone(), (**b).clone())
            };
            let b = Box::new(subst_pred_walk(&b, target, params, body, body_free_iv, body_free_pv)?);
            match f {
                Formula::Forall(..) => Formula::Forall(vs, b),
                Formula::Exists(..) => Formula::Exists(vs, b),
                _ => Formula::ExistsOne(vs, b),
            }
        }
        Formula::ForallPred(p, b) | Formula::ExistsPred(p, b) => {
            if p.name == target.name {
                return Err(SchemaError::TargetQuantified(target.clone()));
            }
            let (_, sub_pv) = free_vars(b);
            let occurs = sub_pv.iter().any(|q| q.name == target.name);
            let (p, b) = if occurs && body_free_pv.iter().any(|q| q.name == p.name) {
                // Predicate binder would capture a free predicate of the body.
                let mut avoid = BTreeSet::new();
                all_names(b, &mut avoid);
                avoid.extend(body_free_pv.iter().map(|q| q.name.clone()));
                let fresh = fresh_name(&p.name, &avoid);
                let fresh_pv = PredVar::new(fresh, p.arity);
                let renamed = rename_pred(b, &p.name, &fresh_pv.name);
                (fresh_pv, renamed)
            } else {
                (p.clone(), (**b).clone())
            };
            let b = Box::new(subst_pred_walk(&b, target, params, body, body_free_iv, body_free_pv)?);
            match f {
                Formula::ForallPred(..) => Formula::ForallPred(p, b),
                _ => Formula::ExistsPred(p, b),
            }
        }
    })
}

/// Renames free occurrences of predicate variable `from` to `to`.
fn rename_pred(f: &Formula, from: &str, to: &str) -> Formula {
    match f {
        Formula::Atom(p, args) if p.name == from => {
            Formula::Atom(PredVar::new(to, p.arity), args.clone())
        }
        Formula::Atom(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(a) => rename_pred(a, from, to).not(),
        Formula::And(a, b) => rename_pred(a, from, to).and(rename_pred(b, from, to)),
        Formula::Or(a, b) => rename_pred(a, from, to).or(rename_pred(b, from, to)),
        Formula::Implies(a, b) => rename_pred(a, from, to).implies(rename_pred(b, from, to)),
        Formula::Iff(a, b) => rename_pred(a, from, to).iff(rename_pred(b, from, to)),
        Formula::Forall(vs, b) => Formula::Forall(vs.clone(), Box::new(rename_pred(b, from, to))),
        Formula::Exists(vs, b) => Formula::Exists(vs.clone(), Box::new(rename_pred(b, from, to))),
        Formula::ExistsOne(vs, b) => {
            Formula::ExistsOne(vs.clone(), Box::new(rename_pred(b, from, to)))
        }
        Formula::ForallPred(p, b) if p.name == from => {
            Formula::ForallPred(p.clone(), Box::new((**b).clone()))
        }
        Formula::ExistsPred(p, b) if p.name == from => {
            Formula::ExistsPred(p.clone(), Box::new((**b).clone()))
        }
        Formula::ForallPred(p, b) => {
            Formula::ForallPred(p.clone(), Box::new(rename_pred(b, from, to)))
        }
        Formula::ExistsPred(p, b) => {
            Formula::ExistsPred(p.clone(), Box::new(rename_pred(b, from, to)))
        }
    }
}

/// First-order expansion of `exists1 ys. body`:
/// `exists ys. (body & forall zs. (body[ys := zs] -> zs = ys))`.
///
/// The evaluator computes the primitive node by counting tuples; this
/// expansion is the reference meaning the tests compare against.
pub fn expand_exists_one(vars: &[IndivVar], body: &Formula) -> Formula {
    let mut avoid = BTreeSet::new();
    all_names(body, &mut avoid);
    avoid.extend(vars.iter().cloned());
    let mut zs = Vec::with_capacity(vars.len());
    for (i, _) in vars.iter().enumerate() {
        let base = if vars.len() == 1 { "z".to_string() } else { format!("z{}", i + 1) };
        let fresh = fresh_name(&base, &avoid);
        avoid.insert(fresh.clone());
        zs.push(fresh);
    }
    let map: BTreeMap<_, _> = vars.iter().cloned().zip(zs.iter().cloned()).collect();
    let shifted = subst_indiv(body, &map);
    let uniq = Formula::forall(&zs, shifted.implies(Formula::eq_tuple(&zs, vars)));
    Formula::exists(vars, body.clone().and(uniq))
}

#[cfg(test)]
mod tests;
