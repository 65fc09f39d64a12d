//! S-expression file formats for derivations and theories.
//!
//! Derivation: `(node RULE (seq (gamma F*) (delta F*)) PREMISE*)` where
//! `RULE` is a bare rule word or `(axtheory N)` / `(alll TERM)` /
//! `(allr VAR)` / `(exl VAR)` / `(exr TERM)`.
//!
//! Theory: `(theory NAME FORMULA*)`. Axioms are sentences, so bare
//! identifiers inside them are read as constants; the signature collected
//! while reading a theory can seed a later derivation parse so that
//! constant symbols stay constants there.

use crate::calculus::{Derivation, RuleTag, Sequent, Theory};
use crate::syntax::{FormulaParser, Lexer, Signature, Term, Tok};
use crate::{Error, Result};
use std::fmt::Write as _;

fn print_rule(rule: &RuleTag, out: &mut String) {
    match rule {
        RuleTag::AxTheory(i) => {
            let _ = write!(out, "(axtheory {i})");
        }
        RuleTag::AllL(t) => {
            let _ = write!(out, "(alll {t})");
        }
        RuleTag::AllR(a) => {
            let _ = write!(out, "(allr {a})");
        }
        RuleTag::ExL(a) => {
            let _ = write!(out, "(exl {a})");
        }
        RuleTag::ExR(t) => {
            let _ = write!(out, "(exr {t})");
        }
        other => out.push_str(other.name()),
    }
}

fn print_node(d: &Derivation, out: &mut String) {
    out.push_str("(node ");
    print_rule(&d.rule, out);
    out.push_str(" (seq (gamma");
    for f in &d.conclusion.antecedent {
        let _ = write!(out, " {f}");
    }
    out.push_str(") (delta");
    for f in &d.conclusion.succedent {
        let _ = write!(out, " {f}");
    }
    out.push_str("))");
    for p in &d.premises {
        out.push(' ');
        print_node(p, out);
    }
    out.push(')');
}

/// Canonical single-line text of a derivation.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    print_node(d, &mut out);
    out.push('\n');
    out
}

/// Canonical text of a theory.
pub fn print_theory(t: &Theory) -> String {
    let mut out = String::new();
    let _ = write!(out, "(theory {}", t.name);
    for ax in &t.axioms {
        let _ = write!(out, " {ax}");
    }
    out.push_str(")\n");
    out
}

fn parse_rule(lex: &mut Lexer<'_>, parser: &mut FormulaParser<'_>) -> Result<RuleTag> {
    match lex.next() {
        Some((pos, Tok::Word(w))) => match w {
            "axid" => Ok(RuleTag::AxId),
            "axbot" => Ok(RuleTag::AxBot),
            "weakl" => Ok(RuleTag::WeakL),
            "weakr" => Ok(RuleTag::WeakR),
            "contrl" => Ok(RuleTag::ContrL),
            "contrr" => Ok(RuleTag::ContrR),
            "exchl" => Ok(RuleTag::ExchL),
            "exchr" => Ok(RuleTag::ExchR),
            "cut" => Ok(RuleTag::Cut),
            "andl" => Ok(RuleTag::AndL),
            "andr" => Ok(RuleTag::AndR),
            "orl" => Ok(RuleTag::OrL),
            "orr" => Ok(RuleTag::OrR),
            "impl" => Ok(RuleTag::ImpL),
            "impr" => Ok(RuleTag::ImpR),
            other => Err(Error::parse(pos, format!("unknown rule {other}"))),
        },
        Some((_, Tok::LParen)) => {
            let (pos, head) = lex.expect_word()?;
            let tag = match head {
                "axtheory" => {
                    let (ipos, word) = lex.expect_word()?;
                    let index: usize = word
                        .parse()
                        .map_err(|_| Error::parse(ipos, "expected an axiom index"))?;
                    RuleTag::AxTheory(index)
                }
                "alll" => RuleTag::AllL(parse_rule_term(lex, parser)?),
                "exr" => RuleTag::ExR(parse_rule_term(lex, parser)?),
                "allr" => RuleTag::AllR(parse_eigen(lex)?),
                "exl" => RuleTag::ExL(parse_eigen(lex)?),
                other => return Err(Error::parse(pos, format!("unknown rule {other}"))),
            };
            lex.expect_rparen()?;
            Ok(tag)
        }
        Some((pos, _)) => Err(Error::parse(pos, "expected a rule")),
        None => Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
    }
}

fn parse_rule_term(lex: &mut Lexer<'_>, parser: &mut FormulaParser<'_>) -> Result<Term> {
    let t = parser.parse_term(lex)?;
    if !t.is_closed_under(&[]) {
        return Err(Error::input(format!("rule term {t} contains a bound variable")));
    }
    Ok(t)
}

fn parse_eigen(lex: &mut Lexer<'_>) -> Result<String> {
    let (pos, w) = lex.expect_word()?;
    if !crate::syntax::is_ident(w) || crate::syntax::RESERVED_WORDS.contains(&w) {
        return Err(Error::parse(pos, format!("{w} is not a valid eigenvariable name")));
    }
    Ok(w.to_string())
}

fn parse_formula_list(
    lex: &mut Lexer<'_>,
    parser: &mut FormulaParser<'_>,
    keyword: &str,
) -> Result<Vec<crate::syntax::Formula>> {
    lex.expect_lparen()?;
    let (pos, word) = lex.expect_word()?;
    if word != keyword {
        return Err(Error::parse(pos, format!("expected `{keyword}`")));
    }
    let mut formulas = Vec::new();
    loop {
        match lex.peek() {
            Some((_, Tok::RParen)) => {
                lex.next();
                return Ok(formulas);
            }
            Some(_) => formulas.push(parser.parse_formula(lex)?),
            None => return Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
        }
    }
}

fn parse_node(lex: &mut Lexer<'_>, parser: &mut FormulaParser<'_>) -> Result<Derivation> {
    lex.expect_lparen()?;
    let (pos, word) = lex.expect_word()?;
    if word != "node" {
        return Err(Error::parse(pos, "expected `node`"));
    }
    let rule = parse_rule(lex, parser)?;
    lex.expect_lparen()?;
    let (spos, word) = lex.expect_word()?;
    if word != "seq" {
        return Err(Error::parse(spos, "expected `seq`"));
    }
    let antecedent = parse_formula_list(lex, parser, "gamma")?;
    let succedent = parse_formula_list(lex, parser, "delta")?;
    lex.expect_rparen()?;
    let mut premises = Vec::new();
    loop {
        match lex.peek() {
            Some((_, Tok::RParen)) => {
                lex.next();
                break;
            }
            Some(_) => premises.push(parse_node(lex, parser)?),
            None => return Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
        }
    }
    Ok(Derivation { conclusion: Sequent::new(antecedent, succedent), rule, premises })
}

/// Parses a derivation file. `sig` typically comes from
/// [`parse_theory`] so that theory constants are read back as constants.
pub fn parse_derivation(src: &str, sig: &Signature) -> Result<Derivation> {
    let mut lex = Lexer::new(src)?;
    let mut parser = FormulaParser::new(sig, false);
    let d = parse_node(&mut lex, &mut parser)?;
    if let Some((pos, _)) = lex.peek() {
        return Err(Error::parse(pos, "trailing input after derivation"));
    }
    Ok(d)
}

/// Parses a theory file, returning the theory and the signature accumulated
/// from its axioms (declared symbols of `sig` plus everything inferred).
pub fn parse_theory(src: &str, sig: &Signature) -> Result<(Theory, Signature)> {
    let mut lex = Lexer::new(src)?;
    let mut parser = FormulaParser::new(sig, true);
    lex.expect_lparen()?;
    let (pos, word) = lex.expect_word()?;
    if word != "theory" {
        return Err(Error::parse(pos, "expected `theory`"));
    }
    let (_, name) = lex.expect_word()?;
    let name = name.to_string();
    let mut axioms = Vec::new();
    loop {
        match lex.peek() {
            Some((_, Tok::RParen)) => {
                lex.next();
                break;
            }
            Some(_) => axioms.push(parser.parse_formula(&mut lex)?),
            None => return Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
        }
    }
    if let Some((pos, _)) = lex.peek() {
        return Err(Error::parse(pos, "trailing input after theory"));
    }
    let enriched = parser.into_signature()?;
    // placeholder-bearing axioms are allowed at the file level so that
    // translated theories round-trip; the semantic gates (classification,
    // translation, the pipeline) still reject E where it is illegal
    let theory = Theory::with_placeholder(&name, axioms)?;
    Ok((theory, enriched))
}
