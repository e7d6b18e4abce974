//! Parse second-order formulas from text, walk the tree, and render it
//! back.
//!
//! Run with `cargo run --example parse_and_render`.

use henkin::formula::{expand_exists_one, free_vars, parse, subst_indiv, Formula};
use std::collections::BTreeMap;

fn main() -> anyhow::Result<()> {
    let text = "forallP R:2. ((forall x. exists y. R(x,y)) -> \
                existsP S:2. forall x. exists1 y. (R(x,y) & S(x,y)))";
    let f = parse(text)?;

    println!("input:     {text}");
    println!("rendered:  {f}");
    println!("roundtrip: {}", parse(&f.to_string())? == f);

    let open = parse("A(x) -> ((exists1 y. D(y)) & (exists y. (R(x,y) & D(y))))")?;
    let (indiv, pred) = free_vars(&open);
    println!();
    println!("open formula:    {open}");
    println!("free individual: {indiv:?}");
    println!("free predicate:  {:?}", pred.iter().map(|p| format!("{}:{}", p.name, p.arity)).collect::<Vec<_>>());

    // `exists1` is sugar; the expansion is a plain two-quantifier formula.
    let sugar = parse("exists1 y. R(x,y)")?;
    if let Formula::ExistsOne(vars, body) = &sugar {
        println!();
        println!("unique-existence sugar: {sugar}");
        println!("expanded:               {}", expand_exists_one(vars, body));
    }

    // Substitution renames free individual variables, avoiding capture.
    let renaming = BTreeMap::from([("x".to_string(), "z".to_string())]);
    println!();
    println!("after x := z: {}", subst_indiv(&open, &renaming));

    let bad = "forall x. (A(x)";
    match parse(bad) {
        Ok(_) => unreachable!("unbalanced parenthesis must not parse"),
        Err(e) => println!("\nparse error for `{bad}`:\n  {e}"),
    }

    // Builders produce the same trees the parser does.
    let built = Formula::forall(
        &["x".to_string()],
        parse("A(x)")?.implies(parse("exists y. R(x,y)")?),
    );
    println!("\nbuilt via combinators: {built}");
    Ok(())
}
