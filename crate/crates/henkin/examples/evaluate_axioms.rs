//! Evaluate closed choice axioms over the truncated structures, with and
//! without witness providers, and read the work statistics.
//!
//! Run with `cargo run --example evaluate_axioms`.

use henkin::domain::{build_sigma0, build_sigma2, ExistsStrategy, QuantifierPolicy};
use henkin::eval::{eval, Assignment};
use henkin::formula::{build_ac, parse};

fn main() -> anyhow::Result<()> {
    let axiom = build_ac(1, 1);
    println!("axiom: {axiom}\n");

    // Pure sweep: every existential predicate quantifier ranges over the
    // budgeted enumeration.
    let h = build_sigma0(4, QuantifierPolicy::new(1, 3)?)?;
    let out = eval(&h, &Assignment::new(), &axiom, h.policy())?;
    println!(
        "{} by exhaustive sweeps: {} ({} nodes, {} predicates swept)",
        h.name(),
        out.truth,
        out.stats.nodes,
        out.stats.predicates_swept
    );

    // Same axiom with a witness provider: the explicit selector
    // construction is proposed first, so the sweep never starts.
    let policy = QuantifierPolicy::new(1, 3)?
        .with_strategy(ExistsStrategy::Hybrid("lexmin-choice".into()));
    let h = build_sigma0(4, policy)?;
    let out = eval(&h, &Assignment::new(), &axiom, h.policy())?;
    println!(
        "{} with the selector provider: {} ({} nodes, {} predicates swept, {} provider witnesses)",
        h.name(),
        out.truth,
        out.stats.nodes,
        out.stats.predicates_swept,
        out.stats.provider_witnesses
    );

    // The pair-block structure uses its own block-respecting construction.
    let policy = QuantifierPolicy::new(1, 3)?
        .with_strategy(ExistsStrategy::Hybrid("sigma2-choice".into()));
    let h = build_sigma2(4, policy)?;
    let out = eval(&h, &Assignment::new(), &axiom, h.policy())?;
    println!(
        "{} with its provider: {} ({} provider witnesses)",
        h.name(),
        out.truth,
        out.stats.provider_witnesses
    );

    // Open formulas take explicit predicate bindings. A relation whose
    // rows are the partner blocks has an admitted selector too; a failing
    // evaluation explains itself with a trace.
    let open = parse("existsP S:1. exists x. (A(x) & S(x))")?;
    let empty = henkin::choice::empty_pred(&h, 1);
    let out = eval(&h, &Assignment::new().with_pred("A", empty), &open, h.policy())?;
    println!("\nopen formula under A = empty: {}", out.truth);
    if let Some(trace) = out.trace {
        println!("trace: {trace}");
    }
    Ok(())
}
