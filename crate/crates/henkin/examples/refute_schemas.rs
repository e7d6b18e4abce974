//! Negative results at desk scale: sweep every admitted candidate against a
//! schema's demands and report that all of them fail, then cross-check with
//! the evaluator.
//!
//! Run with `cargo run --example refute_schemas`.

use henkin::choice::{
    pair_block_condition, refute_pair_transversal, refute_row_image_choice,
    row_image_condition,
};
use henkin::domain::{build_sigma2, build_sigma3, ExistsStrategy, QuantifierPolicy};
use henkin::eval::{eval, Assignment};
use henkin::formula::{build_choice_h, build_choice_star};

fn main() -> anyhow::Result<()> {
    // Pair-block structure versus the transversal schema over the family
    // of blocks: no admitted unary predicate meets every block exactly
    // once.
    let h = build_sigma2(4, QuantifierPolicy::new(1, 3)?)?;
    let report = refute_pair_transversal(&h)?;
    println!("{}:", h.name());
    println!("  mechanism: {}", report.mechanism);
    println!(
        "  {} candidates checked, {} survive, refuted = {}",
        report.candidates_checked,
        report.survivors.len(),
        report.all_failed
    );
    let schema = build_choice_star(1, &pair_block_condition())?;
    let out = eval(&h, &Assignment::new(), &schema, h.policy())?;
    println!("  evaluator agrees: schema instance evaluates {}", out.truth);

    // Two-part structure versus linked choice over the growing row-image
    // family: candidate rows are invariant sets, and none has the exact
    // size the family demands.
    let policy = QuantifierPolicy::new(2, 2)?
        .with_strategy(ExistsStrategy::Hybrid("sigma3-witness".into()));
    let h3 = build_sigma3(6, 6, policy)?;
    let report = refute_row_image_choice(&h3)?;
    println!("\n{}:", h3.name());
    println!("  mechanism: {}", report.mechanism);
    println!(
        "  {} candidates checked, {} survive, refuted = {}",
        report.candidates_checked,
        report.survivors.len(),
        report.all_failed
    );
    let schema = build_choice_h(1, 1, &row_image_condition())?;
    let out = eval(&h3, &Assignment::new(), &schema, h3.policy())?;
    println!(
        "  evaluator agrees: schema instance evaluates {} (sampled = {})",
        out.truth,
        out.stats.sampled
    );
    Ok(())
}
