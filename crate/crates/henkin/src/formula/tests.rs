use super::*;
use proptest::prelude::*;

fn pv(name: &str, arity: u8) -> PredVar {
    PredVar::new(name, arity)
}

#[test]
fn parse_identity_equation() {
    let f = parse("forall x. x = x").unwrap();
    assert_eq!(
        f,
        Formula::forall(&["x".into()], Formula::eq("x".into(), "x".into()))
    );
    assert_eq!(f.to_string(), "forall x. x = x");
}

#[test]
fn quantifier_body_extends_right() {
    let f = parse("exists1 y. C(y) & D(y)").unwrap();
    let want = Formula::exists_one(
        &["y".into()],
        Formula::atom(&pv("C", 1), &["y".into()]).and(Formula::atom(&pv("D", 1), &["y".into()])),
    );
    assert_eq!(f, want);
}

#[test]
fn connective_precedence_and_associativity() {
    let f = parse("P(x) -> Q(x) -> R(x)").unwrap();
    let p = Formula::atom(&pv("P", 1), &["x".into()]);
    let q = Formula::atom(&pv("Q", 1), &["x".into()]);
    let r = Formula::atom(&pv("R", 1), &["x".into()]);
    assert_eq!(f, p.clone().implies(q.clone().implies(r.clone())));

    let f = parse("P(x) & Q(x) | R(x) <-> P(x)").unwrap();
    assert_eq!(f, p.clone().and(q).or(r).iff(p));
}

#[test]
fn parse_reports_position() {
    let err = parse("forall x.\n  P(x) &&").unwrap_err();
    match err {
        ParseError::Unexpected { line, col, .. } => {
            assert_eq!((line, col), (2, 9));
        }
        other => panic!("expected Unexpected, got {other:?}"),
    }
}

#[test]
fn parse_rejects_arity_conflict() {
    let err = parse("R(x,y) & R(x)").unwrap_err();
    assert!(matches!(err, ParseError::ArityConflict { expected: 2, found: 1, .. }));
}

#[test]
fn binder_declares_predicate_arity() {
    let f = parse("existsP S:2. forall x. S(x,x)").unwrap();
    let (_, pvs) = free_vars(&f);
    assert!(pvs.is_empty());
    assert!(parse("existsP S:2. S(x)").is_err());
}

#[test]
fn free_vars_of_atom() {
    let f = Formula::atom(&pv("R", 2), &["x".into(), "y".into()]);
    let (iv, pvs) = free_vars(&f);
    assert_eq!(iv.into_iter().collect::<Vec<_>>(), vec!["x", "y"]);
    assert_eq!(pvs.into_iter().collect::<Vec<_>>(), vec![pv("R", 2)]);
}

#[test]
fn ac_builder_is_closed_and_has_selection_clause() {
    let f = build_ac(1, 1);
    let (iv, pvs) = free_vars(&f);
    assert!(iv.is_empty() && pvs.is_empty());
    let text = f.to_string();
    assert!(
        text.contains("exists1 y. (R(x,y) & S(x,y))"),
        "selection clause missing in {text}"
    );
    assert!(text.starts_with("forallP A:1. forallP R:2. existsP S:2. "));
    assert_eq!(parse(&text).unwrap(), f);
}

#[test]
fn ac_star_builder_requires_disjointness() {
    let f = build_ac_star(1, 2);
    let (iv, pvs) = free_vars(&f);
    assert!(iv.is_empty() && pvs.is_empty());
    let text = f.to_string();
    assert!(text.starts_with("forallP A:1. forallP R:3. existsP S:3. "));
    assert!(text.contains("!x1 = x2"), "tuple inequality missing in {text}");
    assert_eq!(parse(&text).unwrap(), f);
}

#[test]
fn choice_h_builder_links_section_to_a_predicate() {
    // Witness slot: D is nonempty and contained in the R-row of x.
    let h = parse("exists y. D(y) & forall y. (D(y) -> R(x,y))").unwrap();
    let f = build_choice_h(1, 1, &h).unwrap();
    let text = f.to_string();
    assert!(
        text.contains("forall y. (D(y) <-> S(x,y))"),
        "link clause missing in {text}"
    );
    assert_eq!(parse(&text).unwrap(), f);
}

#[test]
fn choice_builder_substitutes_the_section() {
    let h = parse("exists y. D(y) & R(x,y)").unwrap();
    let f = build_choice(1, 1, &h).unwrap();
    let text = f.to_string();
    assert!(text.contains("exists y. (S(x,y) & R(x,y))"), "bad section in {text}");
    // Premise keeps D bound as a predicate quantifier.
    assert!(text.contains("existsP D:1."));
}

#[test]
fn choice_star_builder_renames_family_copies() {
    let h = parse("exists y. C(y)").unwrap();
    let f = build_choice_star(1, &h).unwrap();
    let text = f.to_string();
    assert!(text.contains("forallP C1:1. forallP C2:1."));
    assert!(text.contains("exists1 y. (C(y) & D(y))"));
    assert_eq!(parse(&text).unwrap(), f);
}

#[test]
fn slot_passes_individual_parameters_through() {
    // A transversal slot may carry individual parameters that an outer
    // quantifier will supply; they stay free in the built instance.
    let h = parse("(A(x0) & forall y. (C(y) <-> R(x0,y))) & exists y. C(y)").unwrap();
    let f = build_choice_star(1, &h).unwrap();
    let (iv, pv_set) = free_vars(&f);
    assert_eq!(iv.into_iter().collect::<Vec<_>>(), vec!["x0".to_string()]);
    let names: Vec<_> = pv_set.iter().map(|p| p.name.clone()).collect();
    assert_eq!(names, vec!["A".to_string(), "R".to_string()]);
}

#[test]
fn slot_rejects_reserved_predicate_names() {
    let h = parse("exists y. (D(y) & S(x,y))").unwrap();
    let err = build_choice(1, 1, &h).unwrap_err();
    assert_eq!(err, SchemaError::SlotCollision(pv("S", 2)));
}

#[test]
fn slot_rejects_bound_slot_variable() {
    let h = parse("forall x. exists y. D(y)").unwrap();
    let err = build_choice(1, 1, &h).unwrap_err();
    assert_eq!(err, SchemaError::SlotVarBound("x".into()));
}

#[test]
fn substitute_pred_rewrites_under_shadowing() {
    let f = parse("exists1 y. D(y) & exists y. (R(x,y) & D(y))").unwrap();
    let body = parse("S(x,y)").unwrap();
    let got = substitute_pred(&f, &pv("D", 1), &["y".into()], &body).unwrap();
    let want = parse("exists1 y. S(x,y) & exists y. (R(x,y) & S(x,y))").unwrap();
    assert_eq!(got, want);
}

#[test]
fn substitute_pred_is_renaming_for_atom_bodies() {
    let f = parse("exists y. (D(y) & forall z. (D(z) -> z = y))").unwrap();
    let body = parse("D2(y)").unwrap();
    let got = substitute_pred(&f, &pv("D", 1), &["y".into()], &body).unwrap();
    let want = parse("exists y. (D2(y) & forall z. (D2(z) -> z = y))").unwrap();
    assert_eq!(got, want);
}

#[test]
fn substitute_pred_avoids_capture() {
    // The bound y in f must not capture the free y of the body.
    let f = parse("exists y. (D(x) & Q(y))").unwrap();
    let body = parse("R(x,y)").unwrap();
    let got = substitute_pred(&f, &pv("D", 1), &["x".into()], &body).unwrap();
    let want = parse("exists y1. (R(x,y) & Q(y1))").unwrap();
    assert_eq!(got, want);
}

#[test]
fn substitute_pred_rejects_quantified_target() {
    let f = parse("existsP D:1. D(x)").unwrap();
    let err = substitute_pred(&f, &pv("D", 1), &["y".into()], &parse("S(x,y)").unwrap());
    assert_eq!(err.unwrap_err(), SchemaError::TargetQuantified(pv("D", 1)));
}

#[test]
fn exists_one_expansion_shape() {
    let body = parse("R(x,y)").unwrap();
    let got = expand_exists_one(&["y".into()], &body);
    let want = parse("exists y. (R(x,y) & forall z. (R(x,z) -> z = y))").unwrap();
    assert_eq!(got, want);
}

#[test]
fn bij_has_three_conjuncts() {
    let f = build_bij();
    let mut parts = Vec::new();
    fn flatten<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
        if let Formula::And(a, b) = f {
            flatten(a, out);
            out.push(b);
        } else {
            out.push(f);
        }
    }
    flatten(&f, &mut parts);
    assert_eq!(parts.len(), 3);
    let (iv, pvs) = free_vars(&f);
    assert!(iv.is_empty());
    assert_eq!(
        pvs.into_iter().collect::<Vec<_>>(),
        vec![pv("A", 1), pv("D", 1), pv("R", 2)]
    );
}

#[test]
fn image_is_a_row_description() {
    let f = build_image();
    assert_eq!(f.to_string(), "forall y. (R(x,y) <-> C(y))");
    let (iv, _) = free_vars(&f);
    assert_eq!(iv.into_iter().collect::<Vec<_>>(), vec!["x"]);
}

#[test]
fn open_family_strips_leading_universals() {
    let f = open_family(&build_ac(1, 1));
    let (_, pvs) = free_vars(&f);
    assert_eq!(
        pvs.into_iter().collect::<Vec<_>>(),
        vec![pv("A", 1), pv("R", 2)]
    );
    assert!(f.to_string().starts_with("existsP S:2. "));
}

/// Pool of predicate names with one fixed arity each, so rendered formulas
/// never trip the parser's arity bookkeeping.
fn arb_formula() -> impl Strategy<Value = Formula> {
    let preds = [("P", 1u8), ("Q", 2), ("R", 2), ("C", 1), ("T", 3)];
    let vars = ["x", "y", "z", "w"];
    let leaf = prop_oneof![
        (0..preds.len(), proptest::collection::vec(0..vars.len(), 1..=3)).prop_map(
            move |(pi, vis)| {
                let (name, arity) = preds[pi];
                let args: Vec<IndivVar> = (0..arity)
                    .map(|k| vars[vis[k as usize % vis.len()]].to_string())
                    .collect();
                Formula::Atom(PredVar::new(name, arity), args)
            }
        ),
        (0..vars.len(), 0..vars.len()).prop_map(move |(a, b)| Formula::eq(
            vars[a].to_string(),
            vars[b].to_string()
        )),
    ];
    leaf.prop_recursive(4, 48, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| f.not()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.iff(b)),
            (proptest::sample::subsequence(vec!["x", "y", "z", "w"], 1..=2), inner.clone())
                .prop_map(|(vs, f)| {
                    let vs: Vec<IndivVar> = vs.into_iter().map(str::to_string).collect();
                    Formula::forall(&vs, f)
                }),
            (proptest::sample::subsequence(vec!["x", "y", "z", "w"], 1..=2), inner.clone())
                .prop_map(|(vs, f)| {
                    let vs: Vec<IndivVar> = vs.into_iter().map(str::to_string).collect();
                    Formula::exists(&vs, f)
                }),
            (proptest::sample::subsequence(vec!["x", "y", "z", "w"], 1..=2), inner.clone())
                .prop_map(|(vs, f)| {
                    let vs: Vec<IndivVar> = vs.into_iter().map(str::to_string).collect();
                    Formula::exists_one(&vs, f)
                }),
            inner
                .clone()
                .prop_map(|f| Formula::forall_pred(&PredVar::new("P", 1), f)),
            inner.prop_map(|f| Formula::exists_pred(&PredVar::new("Q", 2), f)),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(f in arb_formula()) {
        let text = f.to_string();
        let back = parse(&text).unwrap_or_else(|e| panic!("reparse of {text:?} failed: {e}"));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn substitution_removes_target(f in arb_formula()) {
        // C:1 is in the generator pool; replace it by a P-guarded pattern.
        let body = parse("P(y) & w = y").unwrap();
        if let Ok(g) = substitute_pred(&f, &PredVar::new("C", 1), &["y".into()], &body) {
            let (_, pvs) = free_vars(&g);
            prop_assert!(pvs.iter().all(|p| p.name != "C"));
        }
    }
}
