//! Evaluation commutes with the structure's symmetries: moving an
//! assignment by a group element never changes a formula's truth value.
//!
//! Run with `cargo run --example check_equivariance`.

use henkin::domain::{build_sigma2, QuantifierPolicy};
use henkin::eval::{eval_equivariant_check, Assignment};
use henkin::formula::parse;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let h = build_sigma2(4, QuantifierPolicy::new(1, 2)?)?;
    let f = parse("existsP C:1. (C(x) & forall y. (C(y) -> A(y)))")?;
    println!("structure: {}", h.name());
    println!("formula:   {f}\n");

    let unaries = h.quantifier_range(1, 2)?.predicates;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut agreements = 0;
    for trial in 0..20 {
        let a = unaries[rng.gen_range(0..unaries.len())].clone();
        let x = h.domain().at(rng.gen_range(0..h.domain().size() as u32));
        let g = h.group().random_element(&mut rng);
        let asg = Assignment::new().with_indiv("x", x).with_pred("A", a);
        let (base, moved) = eval_equivariant_check(&h, &asg, &f, &g, h.policy())?;
        if base.truth == moved.truth {
            agreements += 1;
        } else {
            println!("trial {trial}: disagreement ({} vs {})", base.truth, moved.truth);
        }
    }
    println!("{agreements}/20 random (assignment, group element) trials agree");
    Ok(())
}
