//! Construction expressions such as `((I*pt)x(I^x3))*(pt^*2)`.
//!
//! ```text
//! expr := pow { ("*" | "x") pow }      left-associative, one operator per chain
//! pow  := atom [ "^*" nat | "^x" nat ]
//! atom := "pt" | "I" | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::family::{FamilyNode, Step};
use crate::poset::PolytopePoset;
use crate::products::{power, product, product_len, ProductKind};
use crate::verify::verify_polytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Point,
    Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionExpr {
    Atom(Atom),
    Join(Box<ConstructionExpr>, Box<ConstructionExpr>),
    Cart(Box<ConstructionExpr>, Box<ConstructionExpr>),
    JoinPow(Box<ConstructionExpr>, u32),
    CartPow(Box<ConstructionExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("'*' and 'x' mixed in one chain; add parentheses")]
    MixedOperatorsWithoutParens,
    #[error("exponent must be a positive integer")]
    BadExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Pt,
    I,
    Star,
    X,
    PowJoin,
    PowCart,
    Open,
    Close,
    Nat(u64),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'*' => Token::Star,
            b'x' => Token::X,
            b'I' => Token::I,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'p' if bytes.get(i + 1) == Some(&b't') => {
                i += 1;
                Token::Pt
            }
            b'^' => match bytes.get(i + 1) {
                Some(b'*') => {
                    i += 1;
                    Token::PowJoin
                }
                Some(b'x') => {
                    i += 1;
                    Token::PowCart
                }
                _ => {
                    return Err(ParseError {
                        pos: i + 1,
                        kind: ParseErrorKind::Expected("'*' or 'x' after '^'"),
                    })
                }
            },
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i].parse().map_err(|_| ParseError {
                    pos: start,
                    kind: ParseErrorKind::BadExponent,
                })?;
                Token::Nat(n)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> (Token, usize) {
        self.tokens[self.at]
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.at];
        if t.0 != Token::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ConstructionExpr, ParseError> {
        let mut lhs = self.pow()?;
        let mut chain_op: Option<Token> = None;
        loop {
            let (tok, pos) = self.peek();
            if !matches!(tok, Token::Star | Token::X) {
                return Ok(lhs);
            }
            if chain_op.is_some_and(|op| op != tok) {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::MixedOperatorsWithoutParens,
                });
            }
            chain_op = Some(tok);
            self.bump();
            let rhs = self.pow()?;
            lhs = match tok {
                Token::Star => ConstructionExpr::Join(Box::new(lhs), Box::new(rhs)),
                _ => ConstructionExpr::Cart(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn pow(&mut self) -> Result<ConstructionExpr, ParseError> {
        let base = self.atom()?;
        let (tok, _) = self.peek();
        if !matches!(tok, Token::PowJoin | Token::PowCart) {
            return Ok(base);
        }
        self.bump();
        let (n, pos) = self.bump();
        let k = match n {
            Token::Nat(k) if k >= 1 && k <= u32::MAX as u64 => k as u32,
            Token::Nat(_) => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::BadExponent,
                })
            }
            _ => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Expected("exponent"),
                })
            }
        };
        Ok(match tok {
            Token::PowJoin => ConstructionExpr::JoinPow(Box::new(base), k),
            _ => ConstructionExpr::CartPow(Box::new(base), k),
        })
    }

    fn atom(&mut self) -> Result<ConstructionExpr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Token::Pt => Ok(ConstructionExpr::Atom(Atom::Point)),
            Token::I => Ok(ConstructionExpr::Atom(Atom::Edge)),
            Token::Open => {
                let inner = self.expr()?;
                match self.bump() {
                    (Token::Close, _) => Ok(inner),
                    (_, pos) => Err(ParseError {
                        pos,
                        kind: ParseErrorKind::Expected("')'"),
                    }),
                }
            }
            _ => Err(ParseError {
                pos,
                kind: ParseErrorKind::Expected("'pt', 'I' or '('"),
            }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ConstructionExpr, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        at: 0,
    };
    let e = parser.expr()?;
    match parser.peek() {
        (Token::End, _) => Ok(e),
        (_, pos) => Err(ParseError {
            pos,
            kind: ParseErrorKind::Expected("end of input"),
        }),
    }
}

impl ConstructionExpr {
    pub fn point() -> Self {
        ConstructionExpr::Atom(Atom::Point)
    }

    pub fn edge() -> Self {
        ConstructionExpr::Atom(Atom::Edge)
    }

    fn is_binary(&self) -> bool {
        matches!(self, ConstructionExpr::Join(..) | ConstructionExpr::Cart(..))
    }

    /// Element count of the evaluated lattice, saturating.
    pub fn element_count(&self) -> u128 {
        match self {
            ConstructionExpr::Atom(Atom::Point) => 2,
            ConstructionExpr::Atom(Atom::Edge) => 4,
            ConstructionExpr::Join(a, b) => product_len(ProductKind::Join, a.element_count(), b.element_count()),
            ConstructionExpr::Cart(a, b) => {
                product_len(ProductKind::Cartesian, a.element_count(), b.element_count())
            }
            ConstructionExpr::JoinPow(a, k) | ConstructionExpr::CartPow(a, k) => {
                let kind = if matches!(self, ConstructionExpr::JoinPow(..)) {
                    ProductKind::Join
                } else {
                    ProductKind::Cartesian
                };
                let base = a.element_count();
                (1..*k).fold(base, |acc, _| product_len(kind, acc, base))
            }
        }
    }

    fn build(&self) -> Result<PolytopePoset> {
        Ok(match self {
            ConstructionExpr::Atom(Atom::Point) => PolytopePoset::point(),
            ConstructionExpr::Atom(Atom::Edge) => PolytopePoset::edge(),
            ConstructionExpr::Join(a, b) => product(ProductKind::Join, &a.build()?, &b.build()?),
            ConstructionExpr::Cart(a, b) => product(ProductKind::Cartesian, &a.build()?, &b.build()?),
            ConstructionExpr::JoinPow(a, k) => power(&a.build()?, ProductKind::Join, *k)?,
            ConstructionExpr::CartPow(a, k) => power(&a.build()?, ProductKind::Cartesian, *k)?,
        })
    }

    /// The construction steps after the initial `I`, when the expression is
    /// syntactically a family member: `I` followed by single `*pt` / `xI`
    /// factors, with powers of `pt` / `I` expanding to runs.
    pub fn family_path(&self) -> Option<Vec<Step>> {
        match self {
            ConstructionExpr::Atom(Atom::Edge) => Some(Vec::new()),
            ConstructionExpr::Atom(Atom::Point) => None,
            ConstructionExpr::CartPow(base, k) if **base == Self::edge() => {
                Some(vec![Step::Prism; *k as usize - 1])
            }
            ConstructionExpr::JoinPow(..) | ConstructionExpr::CartPow(..) => None,
            ConstructionExpr::Join(left, right) => {
                let mut path = left.family_path()?;
                path.extend(std::iter::repeat_n(Step::Pyramid, right.run_of(Atom::Point)?));
                Some(path)
            }
            ConstructionExpr::Cart(left, right) => {
                let mut path = left.family_path()?;
                path.extend(std::iter::repeat_n(Step::Prism, right.run_of(Atom::Edge)?));
                Some(path)
            }
        }
    }

    /// Length of the run if `self` is `atom` or a power of it under the
    /// matching product.
    fn run_of(&self, atom: Atom) -> Option<usize> {
        match (self, atom) {
            (ConstructionExpr::Atom(a), _) if *a == atom => Some(1),
            (ConstructionExpr::JoinPow(base, k), Atom::Point) | (ConstructionExpr::CartPow(base, k), Atom::Edge)
                if **base == ConstructionExpr::Atom(atom) =>
            {
                Some(*k as usize)
            }
            _ => None,
        }
    }
}

/// Builds the face lattice without checking the polytope axioms.
pub fn construct(e: &ConstructionExpr, config: &Config) -> Result<PolytopePoset> {
    let elements = e.element_count();
    if elements > config.max_elements as u128 {
        return Err(Error::BudgetExceeded {
            elements,
            cap: config.max_elements,
        });
    }
    e.build()
}

/// Builds and verifies the face lattice.
pub fn eval_expr(e: &ConstructionExpr, config: &Config) -> Result<PolytopePoset> {
    let p = construct(e, config)?;
    let report = verify_polytope(&p, config);
    if !report.is_polytope {
        return Err(Error::NotAPolytope(format!("{:?}", report.failures)));
    }
    Ok(p)
}

/// The family node for a family-shaped expression, lattice included when it
/// fits the element cap.
pub fn expr_to_family(e: &ConstructionExpr, config: &Config) -> Option<FamilyNode> {
    e.family_path().map(|path| FamilyNode::from_path(&path, config))
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionExpr::Atom(Atom::Point) => f.write_str("pt"),
            ConstructionExpr::Atom(Atom::Edge) => f.write_str("I"),
            ConstructionExpr::Join(a, b) | ConstructionExpr::Cart(a, b) => {
                let (op, same): (&str, fn(&ConstructionExpr) -> bool) = match self {
                    ConstructionExpr::Join(..) => ("*", |e| matches!(e, ConstructionExpr::Join(..))),
                    _ => ("x", |e| matches!(e, ConstructionExpr::Cart(..))),
                };
                if a.is_binary() && !same(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str(op)?;
                if b.is_binary() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            ConstructionExpr::JoinPow(base, k) | ConstructionExpr::CartPow(base, k) => {
                let op = if matches!(self, ConstructionExpr::JoinPow(..)) { "^*" } else { "^x" };
                match **base {
                    ConstructionExpr::Atom(_) => write!(f, "{base}{op}{k}"),
                    _ => write!(f, "({base}){op}{k}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ConstructionExpr as E;

    fn join(a: E, b: E) -> E {
        E::Join(Box::new(a), Box::new(b))
    }
    fn cart(a: E, b: E) -> E {
        E::Cart(Box::new(a), Box::new(b))
    }

    #[test]
    fn worked_example_parses() {
        let e = parse_expr("((I*pt)x(I^x3))*(pt^*2)").unwrap();
        let expected = join(
            cart(join(E::edge(), E::point()), E::CartPow(Box::new(E::edge()), 3)),
            E::JoinPow(Box::new(E::point()), 2),
        );
        assert_eq!(e, expected);
        use Step::*;
        assert_eq!(e.family_path().unwrap(), vec![Pyramid, Prism, Prism, Prism, Pyramid, Pyramid]);
        assert_eq!(e.element_count(), 760);
    }

    #[test]
    fn simple_forms() {
        assert_eq!(parse_expr("I^x3").unwrap(), E::CartPow(Box::new(E::edge()), 3));
        assert_eq!(parse_expr(" pt * pt * pt ").unwrap(), join(join(E::point(), E::point()), E::point()));
        assert_eq!(parse_expr("I x I").unwrap(), cart(E::edge(), E::edge()));
    }

    #[test]
    fn parse_errors() {
        let err = parse_expr("I*pt x pt").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MixedOperatorsWithoutParens);
        assert_eq!(err.pos, 5);
        assert_eq!(parse_expr("I^x0").unwrap_err().kind, ParseErrorKind::BadExponent);
        assert!(matches!(parse_expr("(I*pt").unwrap_err().kind, ParseErrorKind::Expected(_)));
        assert!(matches!(parse_expr("I q").unwrap_err().kind, ParseErrorKind::UnexpectedChar('q')));
        assert!(matches!(parse_expr("").unwrap_err().kind, ParseErrorKind::Expected(_)));
        assert!(matches!(parse_expr("I I").unwrap_err().kind, ParseErrorKind::Expected(_)));
        assert!(matches!(parse_expr("I^3").unwrap_err().kind, ParseErrorKind::Expected(_)));
    }

    #[test]
    fn evaluation() {
        let cfg = Config::default();
        assert_eq!(eval_expr(&parse_expr("pt^*4").unwrap(), &cfg).unwrap().len(), 16);
        assert_eq!(eval_expr(&parse_expr("I^x2").unwrap(), &cfg).unwrap().len(), 10);
        assert_eq!(eval_expr(&parse_expr("pt").unwrap(), &cfg).unwrap().len(), 2);
        let big = parse_expr("I^x12").unwrap();
        assert!(matches!(eval_expr(&big, &cfg), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn family_recognition() {
        assert!(parse_expr("pt^*3").unwrap().family_path().is_none());
        assert!(parse_expr("I x (I*pt)").unwrap().family_path().is_none());
        assert!(parse_expr("(I*pt)^x2").unwrap().family_path().is_none());
        assert_eq!(parse_expr("I").unwrap().family_path().unwrap(), vec![]);
        assert_eq!(parse_expr("I*pt*pt").unwrap().family_path().unwrap(), vec![Step::Pyramid; 2]);
        assert_eq!(parse_expr("I^x1").unwrap().family_path().unwrap(), vec![]);
        let node = expr_to_family(&parse_expr("(I x I)*pt").unwrap(), &Config::default()).unwrap();
        assert_eq!(node.path, vec![Step::Prism, Step::Pyramid]);
    }

    #[test]
    fn rendering() {
        let e = parse_expr("((I*pt)x(I^x3))*(pt^*2)").unwrap();
        assert_eq!(e.to_string(), "((I*pt)xI^x3)*pt^*2");
        assert_eq!(parse_expr("I*(pt*pt)").unwrap().to_string(), "I*(pt*pt)");
        assert_eq!(parse_expr("(I^x2)^*2").unwrap().to_string(), "(I^x2)^*2");
    }

    pub(crate) fn expr_strategy() -> impl Strategy<Value = E> {
        let leaf = prop_oneof![Just(E::point()), Just(E::edge())];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| join(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| cart(a, b)),
                (inner.clone(), 1u32..5).prop_map(|(a, k)| E::JoinPow(Box::new(a), k)),
                (inner, 1u32..5).prop_map(|(a, k)| E::CartPow(Box::new(a), k)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn render_then_parse_is_identity(e in expr_strategy()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
        }
    }
}
