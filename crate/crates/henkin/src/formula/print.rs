//! Canonical rendering of formulas.
//!
//! The output re-parses to the same tree. Quantifiers swallow everything to
//! their right, so a quantifier is printed bare only when it sits in
//! rightmost position; elsewhere it is parenthesized. A quantifier body is
//! parenthesized exactly when it is a binary connective, purely for
//! readability.

use super::Formula;
use std::fmt;

pub(super) fn render(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    go(f, out, 0, true)
}

fn go(f: &Formula, out: &mut fmt::Formatter<'_>, min_prec: u8, rightmost: bool) -> fmt::Result {
    match f {
        Formula::Atom(p, args) => {
            write!(out, "{}(", p.name)?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(out, ",")?;
                }
                write!(out, "{a}")?;
            }
            write!(out, ")")
        }
        Formula::Eq(l, r) if l.len() == 1 => write!(out, "{} = {}", l[0], r[0]),
        Formula::Eq(l, r) => {
            // Componentwise form; always grouped so context cannot split it.
            write!(out, "(")?;
            for (i, (a, b)) in l.iter().zip(r).enumerate() {
                if i > 0 {
                    write!(out, " & ")?;
                }
                write!(out, "{a} = {b}")?;
            }
            write!(out, ")")
        }
        Formula::Not(a) => {
            write!(out, "!")?;
            go(a, out, 5, false)
        }
        Formula::And(a, b) => bin(out, a, "&", b, 4, true, min_prec, rightmost),
        Formula::Or(a, b) => bin(out, a, "|", b, 3, true, min_prec, rightmost),
        Formula::Implies(a, b) => bin(out, a, "->", b, 2, false, min_prec, rightmost),
        Formula::Iff(a, b) => bin(out, a, "<->", b, 1, true, min_prec, rightmost),
        Formula::Forall(vs, b) => quant(out, "forall", &vs.join(" "), b, rightmost),
        Formula::Exists(vs, b) => quant(out, "exists", &vs.join(" "), b, rightmost),
        Formula::ExistsOne(vs, b) => quant(out, "exists1", &vs.join(" "), b, rightmost),
        Formula::ForallPred(p, b) => quant(out, "forallP", &p.to_string(), b, rightmost),
        Formula::ExistsPred(p, b) => quant(out, "existsP", &p.to_string(), b, rightmost),
    }
}

#[allow(clippy::too_many_arguments)]
fn bin(
    out: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    p: u8,
    left_assoc: bool,
    min_prec: u8,
    rightmost: bool,
) -> fmt::Result {
    let parens = p < min_prec;
    if parens {
        write!(out, "(")?;
    }
    let (lp, rp) = if left_assoc { (p, p + 1) } else { (p + 1, p) };
    go(a, out, lp, false)?;
    write!(out, " {op} ")?;
    go(b, out, rp, parens || rightmost)?;
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

fn quant(
    out: &mut fmt::Formatter<'_>,
    kw: &str,
    binder: &str,
    body: &Formula,
    rightmost: bool,
) -> fmt::Result {
    if !rightmost {
        write!(out, "(")?;
    }
    write!(out, "{kw} {binder}. ")?;
    let grouped = matches!(
        body,
        Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..)
    );
    if grouped {
        write!(out, "(")?;
    }
    go(body, out, 0, true)?;
    if grouped {
        write!(out, ")")?;
    }
    if !rightmost {
        write!(out, ")")?;
    }
    Ok(())
}
