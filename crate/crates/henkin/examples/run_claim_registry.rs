//! Drive the claim registry from code: list what is registered, run a few
//! claims, and inspect the structured results.
//!
//! Run with `cargo run --release --example run_claim_registry`.

use henkin::claims::{find, registry, run_claim, ClaimKind, ClaimParams};

fn main() -> anyhow::Result<()> {
    let (runnable, composite, annotation) =
        registry().iter().fold((0, 0, 0), |(r, c, a), s| match s.kind {
            ClaimKind::Runnable => (r + 1, c, a),
            ClaimKind::Composite => (r, c + 1, a),
            ClaimKind::Annotation => (r, c, a + 1),
        });
    println!(
        "{} claims registered: {runnable} runnable, {composite} composite, {annotation} annotations\n",
        registry().len()
    );

    // A fast runnable claim: frozen enumeration counts.
    let params = ClaimParams::default();
    let r = run_claim("enum-oracle-counts", &params)?;
    println!("{} -> {:?} in {} ms", r.id, r.verdict, r.millis);
    for d in &r.details {
        println!("  {d}");
    }

    // A composite claim runs its members and bundles the outcome.
    let spec = find("thm1-choicestar1-independent").expect("registered");
    println!("\n{}\n  members: {}", spec.title, spec.related.join(", "));
    let r = run_claim(spec.id, &params)?;
    println!("  -> {:?}, matched = {} ({} ms)", r.verdict, r.matched, r.millis);
    for d in &r.details {
        println!("  {d}");
    }

    // Overridable parameters rebuild the structures at other sizes.
    let mut bigger = ClaimParams::default();
    bigger.set("n", "5")?;
    let r = run_claim("sigma0-AC11", &bigger)?;
    println!("\nsigma0-AC11 at n=5 -> {:?} ({} ms)", r.verdict, r.millis);
    for d in &r.details {
        println!("  {d}");
    }
    Ok(())
}
