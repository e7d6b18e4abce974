//! The symmetry groups behind the structures: individuals, permutations,
//! supports, and the action on predicates with its invariance certificate.
//!
//! Run with `cargo run --example act_on_predicates`.

use henkin::domain::{act_on_predicate, build_sigma2, QuantifierPolicy, SymbolicPredicate};
use henkin::group::Individual;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let h = build_sigma2(3, QuantifierPolicy::new(1, 1)?)?;
    let spec = h.group();
    let domain = spec.domain();

    println!("domain of {}:", h.name());
    for x in domain.individuals() {
        println!("  {x}  (partner {})", spec.partner(*x));
    }

    // A predicate holding at one point of one block: its support is the
    // whole block, and the certificate fixes it under the stabilizer.
    let a = Individual::new(0, 1);
    let p = SymbolicPredicate::from_tuples(spec, 1, [a, spec.partner(a)], [vec![a]])?;
    println!(
        "\npredicate {{{a}}}: support weight {} (blocks count once)",
        p.weight(spec)
    );

    // Group elements act on predicates pointwise; the image is again
    // admitted, with the image support.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = spec.random_element(&mut rng);
    println!("\nrandom group element, as cycles on the domain:");
    println!("  {}", serde_json::to_string(&g.cycles(domain))?);
    let moved = act_on_predicate(spec, &g, &p)?;
    println!(
        "image of the predicate: tuples {:?}, support {:?}",
        moved.tuples(domain),
        moved.support().points().collect::<Vec<_>>()
    );

    // Stabilizer generators of a support only move the free blocks.
    let gens = spec.stabilizer_generators(p.support());
    println!("\nstabilizer generators of that support:");
    for gen in &gens {
        println!("  {}", serde_json::to_string(&gen.cycles(domain))?);
    }

    // The whole-domain predicate needs no support at all: it is invariant
    // under the full group.
    let total = SymbolicPredicate::from_tuples(
        spec,
        1,
        [],
        domain.individuals().iter().map(|x| vec![*x]).collect::<Vec<_>>(),
    )?;
    println!("\nfull unary predicate: support weight {}", total.weight(spec));

    // Asymmetric extensions without a matching support are rejected: the
    // certificate catches a one-point predicate claiming empty support.
    match SymbolicPredicate::from_tuples(spec, 1, [], [vec![a]]) {
        Ok(_) => unreachable!("the certificate must reject this"),
        Err(e) => println!("rejected uncertified predicate: {e}"),
    }
    Ok(())
}
