//! Build explicit selectors: given a head predicate and a relation, produce
//! the admitted predicate that picks exactly one value in every nonempty
//! row, and serialize it.
//!
//! Run with `cargo run --example construct_selectors`.

use henkin::choice::{construct_choice, full_unary};
use henkin::domain::{build_sigma2, build_sigma3, QuantifierPolicy, SymbolicPredicate};
use henkin::group::Individual;

fn main() -> anyhow::Result<()> {
    // Pair-block structure: the relation links each point to both points
    // of its own block; the selector must break ties symmetrically.
    let h = build_sigma2(4, QuantifierPolicy::new(1, 3)?)?;
    let ind = Individual::new;
    let pairs: Vec<Vec<Individual>> = (0..4)
        .flat_map(|b| {
            let (u, v) = (ind(0, b), ind(1, b));
            [vec![u, u], vec![u, v], vec![v, u], vec![v, v]]
        })
        .collect();
    let rho = SymbolicPredicate::from_tuples(h.group(), 2, [], pairs)?;
    let alpha = full_unary(&h);
    let sigma = construct_choice(&h, &alpha, &rho)?;
    println!("{}: selector for the block relation", h.name());
    println!("  support weight {}", sigma.weight(h.group()));
    println!("  as JSON: {}", serde_json::to_string(&sigma.to_file(h.domain()))?);

    // Two-part structure: rows living in the first part pick their least
    // pinned point; the admitted selector pins only what it names.
    let h3 = build_sigma3(6, 6, QuantifierPolicy::new(2, 2)?)?;
    let tuples: Vec<Vec<Individual>> = (0..3)
        .flat_map(|i| (0..=i).map(move |j| vec![ind(1, i), ind(0, j)]))
        .collect();
    let support: Vec<Individual> = (0..3).map(|j| ind(0, j)).collect();
    let rho = SymbolicPredicate::from_tuples(h3.group(), 2, support, tuples)?;
    let alpha = full_unary(&h3);
    let sigma = construct_choice(&h3, &alpha, &rho)?;
    println!("\n{}: selector for a triangular relation", h3.name());
    let rows: Vec<String> = sigma
        .tuples(h3.domain())
        .iter()
        .map(|t| format!("{} -> {}", t[0], t[1]))
        .collect();
    println!("  picks: {}", rows.join(", "));
    println!("  support weight {}", sigma.weight(h3.group()));
    Ok(())
}
