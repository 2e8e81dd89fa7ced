//! Abstract syntax, parser, and printer for the dynamic language.
//!
//! Formulas and programs are mutually recursive: programs embed formulas
//! through tests `(phi)?`, formulas embed programs through the modalities
//! `[alpha]` and `<alpha>`.
//!
//! Concrete syntax (ASCII):
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*            left-associative, expands to & of ->
//! imp     := disj ("->" imp)?            right-associative
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | "!" unary | "[" program "]" unary
//!          | "<" program ">" unary | primary
//! primary := ident | "F" | "T" | "(" formula ")"
//! program := seq ("+" seq)*
//! seq     := star (";" star)*
//! star    := pprim "*"*
//! pprim   := ident | "(" program ")" | "(" formula ")" "?"
//! ident   := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! `!phi` (classical negation), `T`, and `<->` are sugar: they expand to
//! `phi -> F`, `F -> F`, and the conjunction of both implications during
//! parsing and never appear as constructors. `~` (strong negation) is a
//! first-class connective. Formula atoms and program atoms share one
//! identifier lexicon; grammatical position decides the sort.

use std::fmt;
use thiserror::Error;

/// A formula of the dynamic language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    StrongNeg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Program, Box<Formula>),
    Diamond(Program, Box<Formula>),
}

/// A program of the dynamic language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Program {
    Atom(String),
    Seq(Box<Program>, Box<Program>),
    Choice(Box<Program>, Box<Program>),
    Star(Box<Program>),
    Test(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn strong_neg(f: Formula) -> Formula {
        Formula::StrongNeg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(p: Program, f: Formula) -> Formula {
        Formula::Box(p, Box::new(f))
    }

    pub fn diamond(p: Program, f: Formula) -> Formula {
        Formula::Diamond(p, Box::new(f))
    }

    /// Classical negation `!f`, defined as `f -> F`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    /// `T`, defined as `!F`.
    pub fn top() -> Formula {
        Formula::neg(Formula::Bottom)
    }

    /// `l <-> r`, defined as `(l -> r) & (r -> l)`.
    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::and(
            Formula::implies(l.clone(), r.clone()),
            Formula::implies(r, l),
        )
    }

    /// Names of atomic formulas occurring in `self`, sorted.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in subexpressions(self) {
            if let Expr::Formula(Formula::Atom(name)) = e {
                if !out.contains(&name) {
                    out.push(name);
                }
            }
        }
        out.sort();
        out
    }

    /// Names of atomic programs occurring in `self`, sorted.
    pub fn atomic_programs(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in subexpressions(self) {
            if let Expr::Program(Program::Atom(name)) = e {
                if !out.contains(&name) {
                    out.push(name);
                }
            }
        }
        out.sort();
        out
    }

    /// Total number of constructor nodes, counting both sorts.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::StrongNeg(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
            Formula::Box(p, f) | Formula::Diamond(p, f) => 1 + p.size() + f.size(),
        }
    }
}

impl Program {
    pub fn atom(name: impl Into<String>) -> Program {
        Program::Atom(name.into())
    }

    pub fn seq(l: Program, r: Program) -> Program {
        Program::Seq(Box::new(l), Box::new(r))
    }

    pub fn choice(l: Program, r: Program) -> Program {
        Program::Choice(Box::new(l), Box::new(r))
    }

    pub fn star(p: Program) -> Program {
        Program::Star(Box::new(p))
    }

    pub fn test(f: Formula) -> Program {
        Program::Test(Box::new(f))
    }

    pub fn size(&self) -> usize {
        match self {
            Program::Atom(_) => 1,
            Program::Seq(l, r) | Program::Choice(l, r) => 1 + l.size() + r.size(),
            Program::Star(p) => 1 + p.size(),
            Program::Test(f) => 1 + f.size(),
        }
    }
}

/// Either sort of subexpression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Formula(Formula),
    Program(Program),
}

impl fmt::Display for Expr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Formula(f) => write!(out, "{f}"),
            Expr::Program(p) => write!(out, "{p}"),
        }
    }
}

/// All subformulas and subprograms of `f`, each exactly once, children
/// before parents, in a deterministic order.
pub fn subexpressions(f: &Formula) -> Vec<Expr> {
    // Breadth-first sweep, then emit in reverse keeping the last (deepest)
    // occurrence of each node. A child is always pushed after its parent's
    // final occurrence, so the reversed order lists children first.
    let mut seq = vec![Expr::Formula(f.clone())];
    let mut i = 0;
    while i < seq.len() {
        match seq[i].clone() {
            Expr::Formula(f) => match f {
                Formula::Atom(_) | Formula::Bottom => {}
                Formula::StrongNeg(x) => seq.push(Expr::Formula(*x)),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    seq.push(Expr::Formula(*l));
                    seq.push(Expr::Formula(*r));
                }
                Formula::Box(p, x) | Formula::Diamond(p, x) => {
                    seq.push(Expr::Program(p));
                    seq.push(Expr::Formula(*x));
                }
            },
            Expr::Program(p) => match p {
                Program::Atom(_) => {}
                Program::Seq(l, r) | Program::Choice(l, r) => {
                    seq.push(Expr::Program(*l));
                    seq.push(Expr::Program(*r));
                }
                Program::Star(x) => seq.push(Expr::Program(*x)),
                Program::Test(x) => seq.push(Expr::Formula(*x)),
            },
        }
        i += 1;
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e in seq.into_iter().rev() {
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    out
}

/// Half-open character range into the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("expected {expected}, found {found} at {span}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    TopLit,
    BotLit,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Tilde,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Semi,
    Plus,
    Star,
    Question,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::TopLit => "`T`".into(),
            Token::BotLit => "`F`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::Lt => "`<`".into(),
            Token::Gt => "`>`".into(),
            Token::Tilde => "`~`".into(),
            Token::Bang => "`!`".into(),
            Token::Amp => "`&`".into(),
            Token::Bar => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::DArrow => "`<->`".into(),
            Token::Semi => "`;`".into(),
            Token::Plus => "`+`".into(),
            Token::Star => "`*`".into(),
            Token::Question => "`?`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, SourceSpan)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Token::LParen,
            ')' => Token::RParen,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            '>' => Token::Gt,
            '~' => Token::Tilde,
            '!' => Token::Bang,
            '&' => Token::Amp,
            '|' => Token::Bar,
            ';' => Token::Semi,
            '+' => Token::Plus,
            '*' => Token::Star,
            '?' => Token::Question,
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    i += 2;
                    Token::DArrow
                } else {
                    Token::Lt
                }
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Token::Arrow
                } else {
                    return Err(ParseError {
                        span: SourceSpan { start, end: i + 1 },
                        expected: "`->`".into(),
                        found: format!("`{c}`"),
                    });
                }
            }
            'a'..='z' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                i = j - 1;
                Token::Ident(name)
            }
            'A'..='Z' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                match word.as_str() {
                    "T" => Token::TopLit,
                    "F" => Token::BotLit,
                    _ => {
                        return Err(ParseError {
                            span: SourceSpan { start, end: j },
                            expected: "`T`, `F`, or a lowercase identifier".into(),
                            found: format!("`{word}`"),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError {
                    span: SourceSpan { start, end: i + 1 },
                    expected: "a token".into(),
                    found: format!("`{c}`"),
                })
            }
        };
        i += 1;
        out.push((tok, SourceSpan { start, end: i }));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, SourceSpan)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        let tokens = lex(text)?;
        Ok(Parser {
            tokens,
            pos: 0,
            end: text.chars().count(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> SourceSpan {
        self.tokens.get(self.pos).map(|(_, s)| *s).unwrap_or(SourceSpan {
            start: self.end,
            end: self.end,
        })
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".into(),
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError {
            span: self.here(),
            expected: expected.into(),
            found: self.found(),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token, expected: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.imp()?;
        while self.eat(&Token::DArrow) {
            let r = self.imp()?;
            f = Formula::iff(f, r);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let l = self.disj()?;
        if self.eat(&Token::Arrow) {
            let r = self.imp()?;
            Ok(Formula::implies(l, r))
        } else {
            Ok(l)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat(&Token::Bar) {
            let r = self.conj()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Token::Amp) {
            let r = self.unary()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Tilde) => {
                self.pos += 1;
                Ok(Formula::strong_neg(self.unary()?))
            }
            Some(Token::Bang) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let p = self.program()?;
                self.expect(Token::RBracket, "`]`")?;
                Ok(Formula::boxed(p, self.unary()?))
            }
            Some(Token::Lt) => {
                self.pos += 1;
                let p = self.program()?;
                self.expect(Token::Gt, "`>`")?;
                Ok(Formula::diamond(p, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::BotLit) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Token::TopLit) => {
                self.pos += 1;
                Ok(Formula::top())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.err("a formula")),
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut p = self.pseq()?;
        while self.eat(&Token::Plus) {
            let r = self.pseq()?;
            p = Program::choice(p, r);
        }
        Ok(p)
    }

    fn pseq(&mut self) -> Result<Program, ParseError> {
        let mut p = self.pstar()?;
        while self.eat(&Token::Semi) {
            let r = self.pstar()?;
            p = Program::seq(p, r);
        }
        Ok(p)
    }

    fn pstar(&mut self) -> Result<Program, ParseError> {
        let mut p = self.pprim()?;
        while self.eat(&Token::Star) {
            p = Program::star(p);
        }
        Ok(p)
    }

    fn pprim(&mut self) -> Result<Program, ParseError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Program::Atom(name))
            }
            Some(Token::LParen) => {
                // `(formula)?` is a test; `(program)` is grouping. Try the
                // test reading first and fall back on failure.
                let snapshot = self.pos;
                self.pos += 1;
                let test = (|p: &mut Parser| -> Result<Program, ParseError> {
                    let f = p.formula()?;
                    p.expect(Token::RParen, "`)`")?;
                    p.expect(Token::Question, "`?`")?;
                    Ok(Program::test(f))
                })(self);
                match test {
                    Ok(p) => Ok(p),
                    Err(_) => {
                        self.pos = snapshot + 1;
                        let p = self.program()?;
                        self.expect(Token::RParen, "`)`")?;
                        Ok(p)
                    }
                }
            }
            _ => Err(self.err("a program")),
        }
    }
}

/// Parse a formula from its concrete syntax.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(f)
}

/// Parse a program from its concrete syntax.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(text)?;
    let prog = p.program()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(prog)
}

// Printing. Levels, loosest first: Implies 1, Or 2, And 3, unary 4, atoms 5.
// A node is parenthesized when its level is below the context minimum.
fn fmt_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::StrongNeg(..) | Formula::Box(..) | Formula::Diamond(..) => 4,
        Formula::Atom(_) | Formula::Bottom => 5,
    };
    if level < min {
        write!(out, "(")?;
    }
    match f {
        Formula::Atom(name) => write!(out, "{name}")?,
        Formula::Bottom => write!(out, "F")?,
        Formula::StrongNeg(x) => {
            write!(out, "~")?;
            fmt_formula(x, 4, out)?;
        }
        Formula::And(l, r) => {
            fmt_formula(l, 3, out)?;
            write!(out, " & ")?;
            fmt_formula(r, 4, out)?;
        }
        Formula::Or(l, r) => {
            fmt_formula(l, 2, out)?;
            write!(out, " | ")?;
            fmt_formula(r, 3, out)?;
        }
        Formula::Implies(l, r) => {
            fmt_formula(l, 2, out)?;
            write!(out, " -> ")?;
            fmt_formula(r, 1, out)?;
        }
        Formula::Box(p, x) => {
            write!(out, "[")?;
            fmt_program(p, 1, out)?;
            write!(out, "]")?;
            fmt_formula(x, 4, out)?;
        }
        Formula::Diamond(p, x) => {
            write!(out, "<")?;
            fmt_program(p, 1, out)?;
            write!(out, ">")?;
            fmt_formula(x, 4, out)?;
        }
    }
    if level < min {
        write!(out, ")")?;
    }
    Ok(())
}

// Program levels: Choice 1, Seq 2, Star 3, atoms/tests 4.
fn fmt_program(p: &Program, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = match p {
        Program::Choice(..) => 1,
        Program::Seq(..) => 2,
        Program::Star(..) => 3,
        Program::Atom(_) | Program::Test(..) => 4,
    };
    if level < min {
        write!(out, "(")?;
    }
    match p {
        Program::Atom(name) => write!(out, "{name}")?,
        Program::Choice(l, r) => {
            fmt_program(l, 1, out)?;
            write!(out, "+")?;
            fmt_program(r, 2, out)?;
        }
        Program::Seq(l, r) => {
            fmt_program(l, 2, out)?;
            write!(out, ";")?;
            fmt_program(r, 3, out)?;
        }
        Program::Star(x) => {
            fmt_program(x, 3, out)?;
            write!(out, "*")?;
        }
        Program::Test(f) => {
            write!(out, "(")?;
            fmt_formula(f, 1, out)?;
            write!(out, ")?")?;
        }
    }
    if level < min {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, 1, out)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_program(self, 1, out)
    }
}

/// Render a formula to its concrete syntax. `parse_formula` of the result
/// yields an identical tree.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Render a program to its concrete syntax.
pub fn print_program(p: &Program) -> String {
    p.to_string()
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Formula, ParseError> {
        parse_formula(text)
    }
}

impl std::str::FromStr for Program {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Program, ParseError> {
        parse_program(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    #[test]
    fn parses_connectives() {
        assert_eq!(
            f("p & ~p"),
            Formula::and(Formula::atom("p"), Formula::strong_neg(Formula::atom("p")))
        );
        assert_eq!(f("!p"), Formula::implies(Formula::atom("p"), Formula::Bottom));
        assert_eq!(
            f("[a*](p -> [a]p)"),
            Formula::boxed(
                Program::star(Program::atom("a")),
                Formula::implies(
                    Formula::atom("p"),
                    Formula::boxed(Program::atom("a"), Formula::atom("p"))
                )
            )
        );
    }

    #[test]
    fn parses_programs() {
        assert_eq!(p("a;b"), Program::seq(Program::atom("a"), Program::atom("b")));
        assert_eq!(
            p("(a+b)*"),
            Program::star(Program::choice(Program::atom("a"), Program::atom("b")))
        );
        assert_eq!(
            p("(p & ~p)?"),
            Program::test(Formula::and(
                Formula::atom("p"),
                Formula::strong_neg(Formula::atom("p"))
            ))
        );
    }

    #[test]
    fn sugar_expands() {
        assert_eq!(f("T"), Formula::implies(Formula::Bottom, Formula::Bottom));
        assert_eq!(
            f("p <-> q"),
            Formula::and(
                Formula::implies(Formula::atom("p"), Formula::atom("q")),
                Formula::implies(Formula::atom("q"), Formula::atom("p"))
            )
        );
        // Chained iff folds left.
        assert_eq!(f("p <-> q <-> r"), Formula::iff(Formula::iff(f("p"), f("q")), f("r")));
    }

    #[test]
    fn precedence() {
        assert_eq!(f("p & q | r"), Formula::or(f("p & q"), f("r")));
        assert_eq!(f("p -> q -> r"), Formula::implies(f("p"), f("q -> r")));
        assert_eq!(f("~p & q"), Formula::and(f("~p"), f("q")));
        assert_eq!(f("[a]p & q"), Formula::and(f("[a]p"), f("q")));
        assert_eq!(p("a;b+c"), Program::choice(p("a;b"), p("c")));
        assert_eq!(p("a;b*"), Program::seq(p("a"), Program::star(p("b"))));
        assert_eq!(p("a**"), Program::star(Program::star(p("a"))));
    }

    #[test]
    fn prints_examples() {
        assert_eq!(
            print_formula(&Formula::and(
                Formula::atom("p"),
                Formula::strong_neg(Formula::atom("p"))
            )),
            "p & ~p"
        );
        assert_eq!(
            print_formula(&Formula::implies(Formula::atom("p"), Formula::Bottom)),
            "p -> F"
        );
        assert_eq!(
            print_formula(&Formula::boxed(
                Program::star(Program::atom("a")),
                Formula::atom("p")
            )),
            "[a*]p"
        );
    }

    #[test]
    fn print_parse_round_trip_spot() {
        for text in [
            "p & (q | r)",
            "(p -> q) -> r",
            "~(p & q)",
            "[(a+b)*;c](p -> <(q)?>r)",
            "<a><b>p | [a;b]q",
            "p & q & r",
            "p | (q | r)",
        ] {
            let parsed = f(text);
            assert_eq!(f(&print_formula(&parsed)), parsed, "round trip of {text}");
        }
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_formula("p &").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 3, end: 3 });
        assert!(e.expected.contains("formula"));

        let e = parse_formula("(p").unwrap_err();
        assert_eq!(e.found, "end of input");

        let e = parse_formula("p $ q").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 2, end: 3 });

        let e = parse_formula("Tr").unwrap_err();
        assert!(e.found.contains("Tr"));

        let e = parse_formula("p q").unwrap_err();
        assert!(e.expected.contains("end of input"));

        assert!(parse_formula("").is_err());
        assert!(e.span.start <= e.span.end);
    }

    #[test]
    fn subexpression_order() {
        assert_eq!(
            subexpressions(&f("p")),
            vec![Expr::Formula(Formula::atom("p"))]
        );
        assert_eq!(
            subexpressions(&f("[a]p")),
            vec![
                Expr::Formula(Formula::atom("p")),
                Expr::Program(Program::atom("a")),
                Expr::Formula(f("[a]p")),
            ]
        );
        assert_eq!(
            subexpressions(&f("<(q)?>p")),
            vec![
                Expr::Formula(Formula::atom("q")),
                Expr::Formula(Formula::atom("p")),
                Expr::Program(p("(q)?")),
                Expr::Formula(f("<(q)?>p")),
            ]
        );
    }

    #[test]
    fn subexpressions_dedupe_children_first() {
        let subject = f("p & [a]p");
        let exprs = subexpressions(&subject);
        assert_eq!(exprs.len(), 4);
        let pos = |e: &Expr| exprs.iter().position(|x| x == e).unwrap();
        // Every child precedes its parent.
        assert!(pos(&Expr::Formula(f("p"))) < pos(&Expr::Formula(f("[a]p"))));
        assert!(pos(&Expr::Formula(f("[a]p"))) < pos(&Expr::Formula(subject.clone())));
    }
}
