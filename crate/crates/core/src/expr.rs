//! Textual expressions over the connective and implication registries:
//!
//! ```text
//! expr := named:<id>
//!       | r(tnorm:<id>)
//!       | sn(tconorm:<id>, neg:<id>)
//!       | ql(tnorm:<id>, tconorm:<id>, neg:<id>)
//!       | f(gen:<id>)
//!       | g(gen:<id>)
//!       | nabla(<expr>, <expr>)
//! ```
//!
//! Unknown identifiers are rejected at parse time; building instantiates the
//! constructor tree with the default numeric budgets.

use crate::algebra;
use crate::connectives::{Negation, TConorm, TNorm};
use crate::constructors::{
    f_implication, g_implication, r_implication, sn_implication, FGenerator, GGenerator,
};
use crate::error::{FieqError, Result};
use crate::implications::{named, Implication, NAMED_IDS};
use crate::{defaults, real, Real};

/// Parsed constructor tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImplicationExpr {
    Named(String),
    R(String),
    Sn(String, String),
    Ql(String, String, String),
    F(String),
    G(String),
    Nabla(Box<ImplicationExpr>, Box<ImplicationExpr>),
}

impl ImplicationExpr {
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser { input, pos: 0 };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != p.input.len() {
            return Err(FieqError::Parse(format!(
                "trailing input at byte {}: `{}`",
                p.pos,
                &p.input[p.pos..]
            )));
        }
        Ok(expr)
    }

    /// Instantiates the tree. QL expressions yield the raw QL-operation;
    /// whether it is an implication is a question for the axiom check, not
    /// for construction.
    pub fn build<F: Real>(&self) -> Result<Implication<F>> {
        match self {
            ImplicationExpr::Named(id) => named(id),
            ImplicationExpr::R(t) => {
                r_implication(&TNorm::builtin(t)?, real::<F>(defaults::SUP_TOL))
            }
            ImplicationExpr::Sn(s, n) => {
                sn_implication(&TConorm::builtin(s)?, &Negation::builtin(n)?)
            }
            ImplicationExpr::Ql(t, s, n) => {
                let (candidate, _report) = crate::constructors::ql_operation(
                    &TNorm::builtin(t)?,
                    &TConorm::builtin(s)?,
                    &Negation::builtin(n)?,
                )?;
                Ok(candidate)
            }
            ImplicationExpr::F(g) => f_implication(&FGenerator::builtin(g)?),
            ImplicationExpr::G(g) => g_implication(&GGenerator::builtin(g)?),
            ImplicationExpr::Nabla(a, b) => algebra::nabla(&a.build()?, &b.build()?),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: char) -> Result<()> {
        self.skip_ws();
        if self.input[self.pos..].starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(FieqError::Parse(format!("expected `{token}` at byte {}", self.pos)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.input[self.pos..]
            .starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.input[start..self.pos].to_string()
    }

    /// Parses `prefix:id` and checks the id against `known`.
    fn tagged(&mut self, prefix: &str, known: &[&str], kind: &'static str) -> Result<String> {
        let tag = self.word();
        if tag != prefix {
            return Err(FieqError::Parse(format!(
                "expected `{prefix}:<id>`, found `{tag}` at byte {}",
                self.pos
            )));
        }
        self.eat(':')?;
        let id = self.word();
        if known.contains(&id.as_str()) {
            Ok(id)
        } else {
            Err(FieqError::UnknownName { kind, name: id })
        }
    }

    fn expr(&mut self) -> Result<ImplicationExpr> {
        self.skip_ws();
        let head = self.word();
        match head.as_str() {
            "named" => {
                self.eat(':')?;
                let id = self.word();
                if NAMED_IDS.contains(&id.as_str()) {
                    Ok(ImplicationExpr::Named(id))
                } else {
                    Err(FieqError::UnknownName { kind: "implication", name: id })
                }
            }
            "r" => {
                self.eat('(')?;
                let t = self.tagged("tnorm", TNorm::<f64>::builtin_ids(), "tnorm")?;
                self.eat(')')?;
                Ok(ImplicationExpr::R(t))
            }
            "sn" => {
                self.eat('(')?;
                let s = self.tagged("tconorm", TCONORM_IDS, "tconorm")?;
                self.eat(',')?;
                let n = self.tagged("neg", Negation::<f64>::builtin_ids(), "negation")?;
                self.eat(')')?;
                Ok(ImplicationExpr::Sn(s, n))
            }
            "ql" => {
                self.eat('(')?;
                let t = self.tagged("tnorm", TNorm::<f64>::builtin_ids(), "tnorm")?;
                self.eat(',')?;
                let s = self.tagged("tconorm", TCONORM_IDS, "tconorm")?;
                self.eat(',')?;
                let n = self.tagged("neg", Negation::<f64>::builtin_ids(), "negation")?;
                self.eat(')')?;
                Ok(ImplicationExpr::Ql(t, s, n))
            }
            "f" => {
                self.eat('(')?;
                let g = self.tagged("gen", FGenerator::<f64>::builtin_ids(), "f-generator")?;
                self.eat(')')?;
                Ok(ImplicationExpr::F(g))
            }
            "g" => {
                self.eat('(')?;
                let g = self.tagged("gen", GGenerator::<f64>::builtin_ids(), "g-generator")?;
                self.eat(')')?;
                Ok(ImplicationExpr::G(g))
            }
            "nabla" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                Ok(ImplicationExpr::Nabla(Box::new(a), Box::new(b)))
            }
            other => Err(FieqError::Parse(format!("unknown constructor `{other}`"))),
        }
    }
}

// Canonical t-conorm ids plus the aliases accepted by the registry.
const TCONORM_IDS: &[&str] = &["max", "prob_sum", "lukasiewicz", "LK", "drastic", "SD"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(
            ImplicationExpr::parse("r(tnorm:product)").unwrap(),
            ImplicationExpr::R("product".into())
        );
        assert_eq!(
            ImplicationExpr::parse("sn(tconorm:max, neg:standard)").unwrap(),
            ImplicationExpr::Sn("max".into(), "standard".into())
        );
        assert_eq!(
            ImplicationExpr::parse("ql(tnorm:min, tconorm:LK, neg:standard)").unwrap(),
            ImplicationExpr::Ql("min".into(), "LK".into(), "standard".into())
        );
        assert_eq!(ImplicationExpr::parse("f(gen:neglog)").unwrap(), ImplicationExpr::F("neglog".into()));
        assert_eq!(ImplicationExpr::parse("g(gen:pow2)").unwrap(), ImplicationExpr::G("pow2".into()));
        assert_eq!(
            ImplicationExpr::parse("nabla(named:RC, named:RC)").unwrap(),
            ImplicationExpr::Nabla(
                Box::new(ImplicationExpr::Named("RC".into())),
                Box::new(ImplicationExpr::Named("RC".into()))
            )
        );
    }

    #[test]
    fn unknown_identifiers_fail_at_parse_time() {
        assert!(ImplicationExpr::parse("named:NOPE").is_err());
        assert!(ImplicationExpr::parse("r(tnorm:frank)").is_err());
        assert!(ImplicationExpr::parse("f(gen:pow2)").is_err()); // pow2 is a g-generator
        assert!(ImplicationExpr::parse("g(gen:neglog)").is_err());
        assert!(ImplicationExpr::parse("wat(tnorm:min)").is_err());
        assert!(ImplicationExpr::parse("named:LK trailing").is_err());
    }

    #[test]
    fn builds_canonical_names() {
        let i = ImplicationExpr::parse("sn(tconorm:SD,neg:standard)")
            .unwrap()
            .build::<f64>()
            .unwrap();
        assert_eq!(i.name(), "sn(tconorm:drastic,neg:standard)");

        let i = ImplicationExpr::parse("nabla(named:RC, named:RC)")
            .unwrap()
            .build::<f64>()
            .unwrap();
        assert_eq!(i.name(), "nabla(named:RC,named:RC)");
        assert_eq!(i.eval(0.5, 0.5), 0.8125);
    }

    #[test]
    fn ql_candidate_builds_even_when_not_an_implication() {
        let i = ImplicationExpr::parse("ql(tnorm:product, tconorm:prob_sum, neg:standard)")
            .unwrap()
            .build::<f64>()
            .unwrap();
        assert!((i.eval(0.5, 1.0) - 0.75).abs() < 1e-15);
    }
}
