//! Formula syntax over colored graphs.
//!
//! Text grammar (whitespace insignificant):
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "exists" var "." formula | "forall" var "." formula
//!          | "(" formula ")" | atom
//! atom    := "adj(" var "," var ")" | var "=" var | "C" nat "(" var ")"
//! var     := "x" nat
//! ```
//!
//! A quantifier body extends as far right as possible.

mod formula;
mod parse;

pub use formula::{x, Formula, Sentence, Var};
pub use parse::{parse_formula, parse_formula_lines, ParseError};

/// Renders a formula so that [`parse_formula`] rebuilds the identical AST.
///
/// Nested `&`/`|` of the same kind and quantifiers under a connective are
/// parenthesized.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    render_into(f, &mut out);
    out
}

fn render_into(f: &Formula, out: &mut String) {
    use std::fmt::Write;
    match f {
        Formula::Edge(u, v) => write!(out, "adj({u},{v})").unwrap(),
        Formula::Eq(u, v) => write!(out, "{u}={v}").unwrap(),
        Formula::Color(c, v) => write!(out, "C{c}({v})").unwrap(),
        Formula::Not(c) => {
            out.push('!');
            match **c {
                Formula::Edge(..) | Formula::Color(..) | Formula::Not(_) => render_into(c, out),
                _ => wrapped(c, out),
            }
        }
        Formula::And(cs) => join(cs, " & ", out, |c| {
            matches!(c, Formula::And(_) | Formula::Or(_) | Formula::Implies(..)) || c.is_quantifier()
        }),
        Formula::Or(cs) => join(cs, " | ", out, |c| {
            matches!(c, Formula::Or(_) | Formula::Implies(..)) || c.is_quantifier()
        }),
        Formula::Implies(a, b) => {
            if matches!(**a, Formula::Implies(..)) || a.is_quantifier() {
                wrapped(a, out);
            } else {
                render_into(a, out);
            }
            out.push_str(" -> ");
            if b.is_quantifier() {
                wrapped(b, out);
            } else {
                render_into(b, out);
            }
        }
        Formula::Exists(v, b) => {
            write!(out, "exists {v}. ").unwrap();
            render_into(b, out);
        }
        Formula::Forall(v, b) => {
            write!(out, "forall {v}. ").unwrap();
            render_into(b, out);
        }
    }
}

fn wrapped(f: &Formula, out: &mut String) {
    out.push('(');
    render_into(f, out);
    out.push(')');
}

fn join(cs: &[Formula], sep: &str, out: &mut String, needs_parens: impl Fn(&Formula) -> bool) {
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        if needs_parens(c) {
            wrapped(c, out);
        } else {
            render_into(c, out);
        }
    }
}
