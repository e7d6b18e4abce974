//! Enumerate the admitted predicates of the truncated structures: exact
//! listings under the tractability guards, deterministic sampled batteries
//! beyond them.
//!
//! Run with `cargo run --example enumerate_small_domains`.

use henkin::domain::{build_sigma0, build_sigma2, build_sigma3, QuantifierPolicy};
use henkin::eval::describe_predicate;

fn main() -> anyhow::Result<()> {
    // Pair-block structure on 3 blocks: unary predicates of support
    // weight <= 1 admit an exact, deduplicated enumeration.
    let h = build_sigma2(3, QuantifierPolicy::new(1, 1)?)?;
    let preds = h.enumerate_predicates(1, 1)?;
    println!("{}: {} admitted unary predicates at weight 1", h.name(), preds.len());
    for p in preds.iter().take(8) {
        println!("  {}", describe_predicate(&h, p));
    }
    println!("  ... ({} total)", preds.len());

    // The structures disagree already at the counting level.
    let free = build_sigma0(4, QuantifierPolicy::new(1, 1)?)?;
    println!(
        "\n{}: {} admitted unary predicates at weight 1",
        free.name(),
        free.enumerate_predicates(1, 1)?.len()
    );
    let two_part = build_sigma3(6, 6, QuantifierPolicy::new(2, 2)?)?;
    println!(
        "{}: {} admitted unary predicates at weight 2",
        two_part.name(),
        two_part.enumerate_predicates(1, 2)?.len()
    );

    // Ternary predicates at the free structure outgrow the exact-listing
    // cap; the quantifier range falls back to a seeded battery and says so.
    let wide = build_sigma0(4, QuantifierPolicy::new(1, 1)?)?;
    match wide.enumerate_predicates(3, 1) {
        Ok(_) => unreachable!("the ternary listing must trip the size cap"),
        Err(e) => println!("\nexact ternary enumeration refused: {e}"),
    }
    let range = wide.quantifier_range(3, 1)?;
    println!(
        "quantifier range falls back to a sampled battery: {} predicates (sampled = {})",
        range.predicates.len(),
        range.sampled
    );
    Ok(())
}
