//! Builders for the choice axiom boxes.
//!
//! Each builder assembles one axiom shape over canonical variable names:
//! the argument tuple is `x` (or `x1..xn`), the witness tuple `y` (or
//! `y1..ym`), the slot predicates `D` and `C`, and the bound predicates `A`,
//! `R`, `S`, `C1`, `C2`. A slot formula addresses the box through exactly
//! those names. Free variables outside the slot signature are never closed
//! implicitly: they stay free in the built instance, so a slot can mention
//! fixed structure predicates (such as a partner relation `T`) or carry
//! individual parameters that an outer quantifier supplied. The boxes bind
//! no individual variables around the slot other than the signature tuple,
//! so a parameter can never be captured; free predicate names that match a
//! predicate the box binds are rejected instead.

use super::{free_vars, substitute_pred, Formula, IndivVar, PredVar};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("predicate {target} substituted with {given} parameters")]
    ParamCount { target: PredVar, given: usize },
    #[error("substitution target {0} occurs quantified")]
    TargetQuantified(PredVar),
    #[error("substitution body mentions the target {0}")]
    TargetFreeInBody(PredVar),
    #[error("predicate {var} used where arity {expected} is required")]
    ArityMismatch { var: PredVar, expected: u8 },
    #[error("slot variable {0} is bound inside the slot formula")]
    SlotVarBound(String),
    #[error("free predicate {0} of the slot formula collides with a bound predicate of the box")]
    SlotCollision(PredVar),
}

/// Declared signature of a schema slot: the names the box captures on the
/// slot formula's behalf, and the box-bound predicate names it must avoid.
/// Free variables outside the signature pass through untouched.
#[derive(Debug, Clone)]
pub struct SchemaSlot {
    /// Individual variables of the slot, bound by the box prefix.
    pub indiv: Vec<IndivVar>,
    /// Predicate parameter of the slot (`D` or `C` in the boxes).
    pub pred: PredVar,
    /// Predicate names the box binds around the slot.
    pub reserved: Vec<&'static str>,
}

impl SchemaSlot {
    /// Checks that `h` fits this slot.
    pub fn check(&self, h: &Formula) -> Result<(), SchemaError> {
        let (_, free_pv) = free_vars(h);
        let mut bound_iv = BTreeSet::new();
        let mut bound_pv = BTreeSet::new();
        bound_names(h, &mut bound_iv, &mut bound_pv);
        for v in &self.indiv {
            if bound_iv.contains(v) {
                return Err(SchemaError::SlotVarBound(v.clone()));
            }
        }
        if bound_pv.contains(&self.pred.name) {
            return Err(SchemaError::TargetQuantified(self.pred.clone()));
        }
        for p in &free_pv {
            if p.name == self.pred.name {
                if p.arity != self.pred.arity {
                    return Err(SchemaError::ArityMismatch {
                        var: p.clone(),
                        expected: self.pred.arity,
                    });
                }
            } else if self.reserved.contains(&p.name.as_str()) {
                return Err(SchemaError::SlotCollision(p.clone()));
            }
        }
        Ok(())
    }
}

fn bound_names(f: &Formula, iv: &mut BTreeSet<String>, pv: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(..) | Formula::Eq(..) => {}
        Formula::Not(a) => bound_names(a, iv, pv),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            bound_names(a, iv, pv);
            bound_names(b, iv, pv);
        }
        Formula::Forall(vs, b) | Formula::Exists(vs, b) | Formula::ExistsOne(vs, b) => {
            iv.extend(vs.iter().cloned());
            bound_names(b, iv, pv);
        }
        Formula::ForallPred(p, b) | Formula::ExistsPred(p, b) => {
            pv.insert(p.name.clone());
            bound_names(b, iv, pv);
        }
    }
}

/// `x` for n = 1, otherwise `x1..xn`; same scheme for `y`.
fn tuple_vars(base: &str, n: u8) -> Vec<IndivVar> {
    assert!(n >= 1, "tuple arity must be at least 1");
    if n == 1 {
        vec![base.to_string()]
    } else {
        (1..=n).map(|i| format!("{base}{i}")).collect()
    }
}

/// `x1`/`x2` for n = 1, otherwise `x1_1..x1_n` / `x2_1..x2_n`.
fn numbered_tuple(base: &str, copy: u8, n: u8) -> Vec<IndivVar> {
    assert!(n >= 1);
    if n == 1 {
        vec![format!("{base}{copy}")]
    } else {
        (1..=n).map(|i| format!("{base}{copy}_{i}")).collect()
    }
}

fn concat(a: &[IndivVar], b: &[IndivVar]) -> Vec<IndivVar> {
    a.iter().chain(b).cloned().collect()
}

/// The Zermelo-style axiom: every relation with domain `A` admits a
/// uniformizing selection.
///
/// `forallP A. forallP R. existsP S. ((forall xs. (A(xs) <-> exists ys.
/// R(xs,ys))) -> forall xs. (A(xs) -> exists1 ys. (R(xs,ys) & S(xs,ys))))`
pub fn build_ac(n: u8, m: u8) -> Formula {
    assert!(n >= 1 && m >= 1);
    let xs = tuple_vars("x", n);
    let ys = tuple_vars("y", m);
    let a = PredVar::new("A", n);
    let r = PredVar::new("R", n + m);
    let s = PredVar::new("S", n + m);
    let xy = concat(&xs, &ys);
    let dom = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).iff(Formula::exists(&ys, Formula::atom(&r, &xy))),
    );
    let pick = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).implies(Formula::exists_one(
            &ys,
            Formula::atom(&r, &xy).and(Formula::atom(&s, &xy)),
        )),
    );
    Formula::forall_pred(
        &a,
        Formula::forall_pred(&r, Formula::exists_pred(&s, dom.implies(pick))),
    )
}

/// The Russell-style axiom: selection out of a pairwise disjoint family,
/// indexed by `A` through the relation `R`.
pub fn build_ac_star(n: u8, m: u8) -> Formula {
    assert!(n >= 1 && m >= 1);
    let xs = tuple_vars("x", n);
    let ys = tuple_vars("y", m);
    let x1s = numbered_tuple("x", 1, n);
    let x2s = numbered_tuple("x", 2, n);
    let a = PredVar::new("A", n);
    let r = PredVar::new("R", n + m);
    let s = PredVar::new("S", n + m);
    let xy = concat(&xs, &ys);
    let dom = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).iff(Formula::exists(&ys, Formula::atom(&r, &xy))),
    );
    let both = Formula::atom(&a, &x1s)
        .and(Formula::atom(&a, &x2s))
        .and(Formula::eq_tuple(&x1s, &x2s).not());
    let overlap = Formula::exists(
        &ys,
        Formula::atom(&r, &concat(&x1s, &ys)).and(Formula::atom(&r, &concat(&x2s, &ys))),
    );
    let disjoint = Formula::forall(&concat(&x1s, &x2s), both.implies(overlap.not()));
    let pick = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).implies(Formula::exists_one(
            &ys,
            Formula::atom(&r, &xy).and(Formula::atom(&s, &xy)),
        )),
    );
    Formula::forall_pred(
        &a,
        Formula::forall_pred(
            &r,
            Formula::exists_pred(&s, dom.and(disjoint).implies(pick)),
        ),
    )
}

/// The Hilbert-Ackermann schema over a slot `H` with free variables among
/// `xs, ys`: a selection for the family of witness sets of `H`.
pub fn build_ac_ha(n: u8, m: u8, h: &Formula) -> Result<Formula, SchemaError> {
    assert!(n >= 1 && m >= 1);
    let xs = tuple_vars("x", n);
    let ys = tuple_vars("y", m);
    // Slot predicate is unused here; H ranges over individuals only. A
    // dummy name no formula can collide with keeps the check uniform.
    let slot = SchemaSlot {
        indiv: concat(&xs, &ys),
        pred: PredVar::new("UnusedSlot", 1),
        reserved: vec!["A", "S"],
    };
    slot.check(h)?;
    let a = PredVar::new("A", n);
    let s = PredVar::new("S", n + m);
    let xy = concat(&xs, &ys);
    let dom = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).iff(Formula::exists(&ys, h.clone())),
    );
    let pick = Formula::forall(
        &xs,
        Formula::atom(&a, &xs).implies(Formula::exists_one(
            &ys,
            h.clone().and(Formula::atom(&s, &xy)),
        )),
    );
    Ok(Formula::forall_pred(
        &a,
        Formula::exists_pred(&s, dom.implies(pick)),
    ))
}

/// The plain choice schema over a slot `H` in the variables `xs` and the
/// predicate `D`: if every `xs` admits a `D`, one predicate `S` supplies
/// all of them as its sections.
///
/// The section substitution replaces each atom `D(ts)` in `H` by `S(xs,ts)`.
pub fn build_choice(n: u8, m: u8, h: &Formula) -> Result<Formula, SchemaError> {
    assert!(n >= 1 && m >= 1);
    let xs = tuple_vars("x", n);
    let ys = tuple_vars("y", m);
    let d = PredVar::new("D", m);
    let slot = SchemaSlot {
        indiv: xs.clone(),
        pred: d.clone(),
        reserved: vec!["S"],
    };
    slot.check(h)?;
    let s = PredVar::new("S", n + m);
    let premise = Formula::forall(&xs, Formula::exists_pred(&d, h.clone()));
    let section = Formula::Atom(s.clone(), concat(&xs, &ys));
    let h_sub = substitute_pred(h, &d, &ys, &section)?;
    let conclusion = Formula::exists_pred(&s, Formula::forall(&xs, h_sub));
    Ok(premise.implies(conclusion))
}

/// The Henkin-friendly variant of [`build_choice`]: the chosen section is
/// required to exist as a predicate `D` of the structure, stated by the
/// link `forall ys. (D(ys) <-> S(xs,ys))`.
pub fn build_choice_h(n: u8, m: u8, h: &Formula) -> Result<Formula, SchemaError> {
    assert!(n >= 1 && m >= 1);
    let xs = tuple_vars("x", n);
    let ys = tuple_vars("y", m);
    let d = PredVar::new("D", m);
    let slot = SchemaSlot {
        indiv: xs.clone(),
        pred: d.clone(),
        reserved: vec!["S"],
    };
    slot.check(h)?;
    let s = PredVar::new("S", n + m);
    let premise = Formula::forall(&xs, Formula::exists_pred(&d, h.clone()));
    let link = Formula::forall(
        &ys,
        Formula::atom(&d, &ys).iff(Formula::Atom(s.clone(), concat(&xs, &ys))),
    );
    let conclusion = Formula::exists_pred(
        &s,
        Formula::forall(&xs, Formula::exists_pred(&d, link.and(h.clone()))),
    );
    Ok(premise.implies(conclusion))
}

/// The transversal schema over a slot `H` with the predicate `C` free: if
/// the family described by `H` consists of nonempty, pairwise disjoint
/// sets, some predicate `D` meets each member exactly once.
///
/// Predicate inequality is extensional: `C1` and `C2` differ when
/// `!(forall ys. (C1(ys) <-> C2(ys)))`.
pub fn build_choice_star(m: u8, h: &Formula) -> Result<Formula, SchemaError> {
    assert!(m >= 1);
    let ys = tuple_vars("y", m);
    let c = PredVar::new("C", m);
    let c1 = PredVar::new("C1", m);
    let c2 = PredVar::new("C2", m);
    let d = PredVar::new("D", m);
    let slot = SchemaSlot {
        indiv: vec![],
        pred: c.clone(),
        reserved: vec!["C1", "C2", "D"],
    };
    slot.check(h)?;
    let h1 = substitute_pred(h, &c, &ys, &Formula::atom(&c1, &ys))?;
    let h2 = substitute_pred(h, &c, &ys, &Formula::atom(&c2, &ys))?;
    let nonempty = Formula::forall_pred(
        &c,
        h.clone()
            .implies(Formula::exists(&ys, Formula::atom(&c, &ys))),
    );
    let differ = Formula::forall(&ys, Formula::atom(&c1, &ys).iff(Formula::atom(&c2, &ys))).not();
    let overlap = Formula::exists(&ys, Formula::atom(&c1, &ys).and(Formula::atom(&c2, &ys)));
    let disjoint = Formula::forall_pred(
        &c1,
        Formula::forall_pred(&c2, h1.and(h2).and(differ).implies(overlap.not())),
    );
    let pick = Formula::exists_pred(
        &d,
        Formula::forall_pred(
            &c,
            h.clone().implies(Formula::exists_one(
                &ys,
                Formula::atom(&c, &ys).and(Formula::atom(&d, &ys)),
            )),
        ),
    );
    Ok(nonempty.and(disjoint).implies(pick))
}

/// `bij(R,A,D)`: `R` is the graph of a bijection from `A` onto `D`.
/// Exactly three conjuncts: typing, left-uniqueness, right-uniqueness.
pub fn build_bij() -> Formula {
    let r = PredVar::new("R", 2);
    let a = PredVar::new("A", 1);
    let d = PredVar::new("D", 1);
    let (x, y) = ("x".to_string(), "y".to_string());
    let typing = Formula::forall(
        &[x.clone(), y.clone()],
        Formula::Atom(r.clone(), vec![x.clone(), y.clone()])
            .implies(Formula::atom(&a, std::slice::from_ref(&x)).and(Formula::atom(&d, std::slice::from_ref(&y)))),
    );
    let from_right = Formula::forall(
        std::slice::from_ref(&y),
        Formula::atom(&d, std::slice::from_ref(&y)).implies(Formula::exists_one(
            std::slice::from_ref(&x),
            Formula::Atom(r.clone(), vec![x.clone(), y.clone()]),
        )),
    );
    let from_left = Formula::forall(
        std::slice::from_ref(&x),
        Formula::atom(&a, std::slice::from_ref(&x)).implies(Formula::exists_one(
            std::slice::from_ref(&y),
            Formula::Atom(r.clone(), vec![x.clone(), y.clone()]),
        )),
    );
    typing.and(from_right).and(from_left)
}

/// `image(x,R,C)`: `C` is the image of `x` under `R`, that is
/// `forall y. (R(x,y) <-> C(y))`.
pub fn build_image() -> Formula {
    let r = PredVar::new("R", 2);
    let c = PredVar::new("C", 1);
    let (x, y) = ("x".to_string(), "y".to_string());
    Formula::forall(
        std::slice::from_ref(&y),
        Formula::Atom(r, vec![x, y.clone()]).iff(Formula::atom(&c, std::slice::from_ref(&y))),
    )
}

/// Peels the quantifier prefix `forallP A. forallP R.` off [`build_ac`] or
/// [`build_ac_star`], leaving `A` and `R` free for direct assignment. The
/// inner `existsP S` stays in place.
pub fn open_family(f: &Formula) -> Formula {
    let mut g = f;
    while let Formula::ForallPred(_, body) = g {
        g = body;
    }
    g.clone()
}

/// Names used by the slot conventions; exposed so callers can build slot
/// formulas without hardcoding the tuple naming.
pub fn slot_x_vars(n: u8) -> Vec<IndivVar> {
    tuple_vars("x", n)
}

/// See [`slot_x_vars`].
pub fn slot_y_vars(m: u8) -> Vec<IndivVar> {
    tuple_vars("y", m)
}
