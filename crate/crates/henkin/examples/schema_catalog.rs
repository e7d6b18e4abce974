//! Build the choice-axiom schema family: the Zermelo selection axioms, the
//! Russell transversal axioms, and the three parameterized choice boxes
//! with caller-supplied membership conditions.
//!
//! Run with `cargo run --example schema_catalog`.

use henkin::formula::{
    build_ac, build_ac_star, build_choice, build_choice_h, build_choice_star, open_family,
    parse,
};

fn main() -> anyhow::Result<()> {
    // Closed axioms are generated for any head arity n and value arity m.
    println!("selection axiom, unary heads:\n  {}", build_ac(1, 1));
    println!();
    println!("selection axiom, pair heads over pair values:\n  {}", build_ac(2, 2));
    println!();
    println!(
        "transversal (disjoint-family) axiom, unary heads:\n  {}",
        build_ac_star(1, 1)
    );

    // The *choice boxes* take a membership condition H through a slot.
    // Variables of the declared signature are bound by the box; anything
    // else stays a free parameter of the whole instance.
    let point_section = parse("A(x) -> ((exists1 y. D(y)) & (exists y. (R(x,y) & D(y))))")?;
    println!();
    println!("point-section choice instance (free parameters A, R):");
    println!("  {}", build_choice(1, 1, &point_section)?);

    let linked = parse("forall y. (D(y) <-> y = x)")?;
    println!();
    println!("linked choice instance over diagonal sections:");
    println!("  {}", build_choice_h(1, 1, &linked)?);

    let singletons = parse("exists y. forall z. (C(z) <-> z = y)")?;
    println!();
    println!("transversal instance over the family of singletons:");
    println!("  {}", build_choice_star(1, &singletons)?);

    // Stripping the leading universal predicate quantifiers produces the
    // open family, ready to bind A and R to concrete predicates.
    println!();
    println!("open form of the unary selection axiom:\n  {}", open_family(&build_ac(1, 1)));

    // Slot hygiene: membership conditions must not rebind the signature and
    // must avoid the schema's reserved names.
    let rebinding = parse("exists x. D(x)")?;
    match build_choice(1, 1, &rebinding) {
        Ok(_) => unreachable!("signature rebinding must be rejected"),
        Err(e) => println!("\nrejected slot condition `{rebinding}`:\n  {e}"),
    }
    let reserved = parse("D(y) & exists z. S(z,z)")?;
    match build_choice(1, 1, &reserved) {
        Ok(_) => unreachable!("reserved name collision must be rejected"),
        Err(e) => println!("rejected slot condition `{reserved}`:\n  {e}"),
    }
    Ok(())
}
