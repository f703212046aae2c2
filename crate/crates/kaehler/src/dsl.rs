//! The input language: ring, map and check declarations.
//!
//! ```text
//! ring R = F2[x,y,z]/(y^2 - x*z^2) domain "irreducible"
//! map pi : R -> S { x -> u^2, y -> u*z, z -> z }
//! check diagram(D, pi, incl)
//! check product(D, 0, 1, rho0, rho1)
//! ```
//!
//! Parsing is recovering: a bad statement yields a diagnostic with a source
//! span and the parser resynchronizes at the next statement keyword.
//! Statements store resolved, canonical polynomials, so
//! parse → print → parse is structurally the identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::poly::{Poly, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub message: String,
    pub suggestion: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {}: {}", self.span.line, self.span.col, sev, self.message)?;
        if let Some(s) = &self.suggestion {
            write!(f, " ({s})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Arrow,  // ->
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    Slash,
    Comma,
    Colon,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    macro_rules! here {
        () => {
            Span { line, col }
        };
    }
    while let Some(&c) = chars.peek() {
        let span = here!();
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(Token {
                    tok: Tok::Ident(s),
                    span,
                });
            }
            c if c.is_ascii_digit() => {
                let mut n: i64 = 0;
                let mut overflow = false;
                while let Some(&c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|m| m.checked_add(d as i64))
                            .unwrap_or_else(|| {
                                overflow = true;
                                0
                            });
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if overflow {
                    diags.push(Diagnostic {
                        severity: Severity::Error,
                        span,
                        message: "integer literal overflows".into(),
                        suggestion: None,
                    });
                }
                toks.push(Token {
                    tok: Tok::Int(n),
                    span,
                });
            }
            '"' => {
                chars.next();
                col += 1;
                let mut s = String::new();
                let mut closed = false;
                while let Some(&c) = chars.peek() {
                    chars.next();
                    if c == '\n' {
                        line += 1;
                        col = 1;
                        break;
                    }
                    col += 1;
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    s.push(c);
                }
                if !closed {
                    diags.push(Diagnostic {
                        severity: Severity::Error,
                        span,
                        message: "unterminated string".into(),
                        suggestion: Some("close the quote".into()),
                    });
                }
                toks.push(Token {
                    tok: Tok::Str(s),
                    span,
                });
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    toks.push(Token {
                        tok: Tok::Arrow,
                        span,
                    });
                } else {
                    toks.push(Token {
                        tok: Tok::Minus,
                        span,
                    });
                }
            }
            _ => {
                chars.next();
                col += 1;
                let tok = match c {
                    '+' => Some(Tok::Plus),
                    '*' => Some(Tok::Star),
                    '^' => Some(Tok::Caret),
                    '=' => Some(Tok::Eq),
                    '/' => Some(Tok::Slash),
                    ',' => Some(Tok::Comma),
                    ':' => Some(Tok::Colon),
                    '(' => Some(Tok::LParen),
                    ')' => Some(Tok::RParen),
                    '[' => Some(Tok::LBracket),
                    ']' => Some(Tok::RBracket),
                    '{' => Some(Tok::LBrace),
                    '}' => Some(Tok::RBrace),
                    _ => None,
                };
                match tok {
                    Some(t) => toks.push(Token { tok: t, span }),
                    None => diags.push(Diagnostic {
                        severity: Severity::Error,
                        span,
                        message: format!("unexpected character {c:?}"),
                        suggestion: None,
                    }),
                }
            }
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        span: here!(),
    });
    (toks, diags)
}

/// A check-statement argument: an identifier or an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Ident(String),
    Int(i64),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Ident(s) => write!(f, "{s}"),
            Arg::Int(n) => write!(f, "{n}"),
        }
    }
}

/// One parsed statement, with polynomials resolved in their rings.
#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Ring {
        name: String,
        ring: Arc<Ring>,
        ideal: Vec<Poly>,
        domain: Option<String>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        /// (source variable, image polynomial in the target ring)
        images: Vec<(String, Poly)>,
    },
    Check {
        name: String,
        args: Vec<Arg>,
    },
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring {
                name,
                ring,
                ideal,
                domain,
            } => {
                let field = match ring.field {
                    CoeffField::Prime(p) => format!("F{p}"),
                    CoeffField::Rationals => "Q".to_string(),
                };
                write!(f, "ring {name} = {field}[{}]", ring.vars.join(","))?;
                if !ideal.is_empty() {
                    let gens: Vec<String> = ideal.iter().map(|p| p.to_string()).collect();
                    write!(f, "/({})", gens.join(", "))?;
                }
                if let Some(d) = domain {
                    write!(f, " domain \"{d}\"")?;
                }
                Ok(())
            }
            Stmt::Map {
                name,
                source,
                target,
                images,
            } => {
                let imgs: Vec<String> =
                    images.iter().map(|(v, p)| format!("{v} -> {p}")).collect();
                write!(f, "map {name} : {source} -> {target} {{ {} }}", imgs.join(", "))
            }
            Stmt::Check { name, args } => {
                let a: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                write!(f, "check {name}({})", a.join(", "))
            }
        }
    }
}

/// A parsed source file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SourceFile {
    pub stmts: Vec<Stmt>,
}

impl fmt::Display for SourceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, message: impl Into<String>, suggestion: Option<&str>) {
        self.diags.push(Diagnostic {
            severity: Severity::Error,
            span: self.span(),
            message: message.into(),
            suggestion: suggestion.map(|s| s.to_string()),
        });
    }

    fn expect(&mut self, tok: Tok, what: &str) -> bool {
        if *self.peek() == tok {
            self.next();
            true
        } else {
            self.error(format!("expected {what}"), None);
            false
        }
    }

    fn ident(&mut self, what: &str) -> Option<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Some(s)
            }
            _ => {
                self.error(format!("expected {what}"), None);
                None
            }
        }
    }

    /// Skip ahead to the next statement keyword.
    fn synchronize(&mut self) {
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::Ident(s) if s == "ring" || s == "map" || s == "check" => return,
                _ => {
                    self.next();
                }
            }
        }
    }

    // poly := term (("+"|"-") term)* ; "^" binds tightest; unary minus allowed
    fn poly(&mut self, ring: &Arc<Ring>) -> Option<Poly> {
        let mut acc = self.poly_term(ring)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.poly_term(ring)?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.poly_term(ring)?);
                }
                _ => return Some(acc),
            }
        }
    }

    fn poly_term(&mut self, ring: &Arc<Ring>) -> Option<Poly> {
        let mut acc = self.poly_factor(ring)?;
        while *self.peek() == Tok::Star {
            self.next();
            acc = acc.mul(&self.poly_factor(ring)?);
        }
        Some(acc)
    }

    fn poly_factor(&mut self, ring: &Arc<Ring>) -> Option<Poly> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Some(self.poly_factor(ring)?.neg());
        }
        let base = self.poly_primary(ring)?;
        if *self.peek() == Tok::Caret {
            self.next();
            match self.peek().clone() {
                Tok::Int(e) if e >= 0 => {
                    self.next();
                    if e > u16::MAX as i64 {
                        self.error("exponent too large", None);
                        return None;
                    }
                    return Some(base.pow(e as u32));
                }
                _ => {
                    self.error("expected a non-negative integer exponent", None);
                    return None;
                }
            }
        }
        Some(base)
    }

    fn poly_primary(&mut self, ring: &Arc<Ring>) -> Option<Poly> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.next();
                match ring.var_named(&name) {
                    Some(v) => Some(v),
                    None => {
                        self.diags.push(Diagnostic {
                            severity: Severity::Error,
                            span: self.toks[self.pos - 1].span,
                            message: format!("unknown variable `{name}`"),
                            suggestion: Some(format!(
                                "ring variables are [{}]",
                                ring.vars.join(",")
                            )),
                        });
                        None
                    }
                }
            }
            Tok::Int(n) => {
                self.next();
                Some(ring.constant_int(n))
            }
            Tok::LParen => {
                self.next();
                let p = self.poly(ring)?;
                if !self.expect(Tok::RParen, "closing `)`") {
                    return None;
                }
                Some(p)
            }
            _ => {
                self.error("expected a polynomial", None);
                None
            }
        }
    }

    fn ring_stmt(&mut self) -> Option<Stmt> {
        // "ring" consumed by the caller
        let name = self.ident("a ring name")?;
        if !self.expect(Tok::Eq, "`=`") {
            return None;
        }
        let field = match self.peek().clone() {
            Tok::Ident(s) if s == "Q" => {
                self.next();
                CoeffField::Rationals
            }
            Tok::Ident(s) if s.starts_with('F') && s[1..].chars().all(|c| c.is_ascii_digit()) && s.len() > 1 => {
                let p: u32 = match s[1..].parse() {
                    Ok(p) => p,
                    Err(_) => {
                        self.error("prime too large", None);
                        return None;
                    }
                };
                self.next();
                match CoeffField::prime(p) {
                    Ok(f) => f,
                    Err(e) => {
                        self.error(e.to_string(), None);
                        return None;
                    }
                }
            }
            _ => {
                self.error("expected a field (`Q` or `F<p>`)", None);
                return None;
            }
        };
        if !self.expect(Tok::LBracket, "`[`") {
            return None;
        }
        let mut vars = vec![self.ident("a variable name")?];
        while *self.peek() == Tok::Comma {
            self.next();
            vars.push(self.ident("a variable name")?);
        }
        if *self.peek() != Tok::RBracket {
            self.error("unclosed bracket", Some("add `]`"));
            return None;
        }
        self.next();
        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let ring = Ring::new(field, &var_refs);
        let mut ideal = Vec::new();
        if *self.peek() == Tok::Slash {
            self.next();
            if !self.expect(Tok::LParen, "`(`") {
                return None;
            }
            ideal.push(self.poly(&ring)?);
            while *self.peek() == Tok::Comma {
                self.next();
                ideal.push(self.poly(&ring)?);
            }
            if !self.expect(Tok::RParen, "closing `)`") {
                return None;
            }
        }
        let mut domain = None;
        if let Tok::Ident(s) = self.peek() {
            if s == "domain" {
                self.next();
                match self.peek().clone() {
                    Tok::Str(s) => {
                        self.next();
                        domain = Some(s);
                    }
                    _ => {
                        self.error("expected a string after `domain`", None);
                        return None;
                    }
                }
            }
        }
        Some(Stmt::Ring {
            name,
            ring,
            ideal,
            domain,
        })
    }

    fn map_stmt(&mut self, rings: &[(String, Arc<Ring>)]) -> Option<Stmt> {
        let name = self.ident("a map name")?;
        if !self.expect(Tok::Colon, "`:`") {
            return None;
        }
        let source = self.ident("a source ring name")?;
        if !self.expect(Tok::Arrow, "`->`") {
            return None;
        }
        let target = self.ident("a target ring name")?;
        let target_ring = match rings.iter().rev().find(|(n, _)| *n == target) {
            Some((_, r)) => r.clone(),
            None => {
                self.error(format!("unknown target ring `{target}`"), None);
                return None;
            }
        };
        if rings.iter().all(|(n, _)| *n != source) {
            self.error(format!("unknown source ring `{source}`"), None);
            return None;
        }
        if !self.expect(Tok::LBrace, "`{`") {
            return None;
        }
        let mut images = Vec::new();
        loop {
            let var = self.ident("a source variable")?;
            if !self.expect(Tok::Arrow, "`->`") {
                return None;
            }
            let img = self.poly(&target_ring)?;
            images.push((var, img));
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        if !self.expect(Tok::RBrace, "closing `}`") {
            return None;
        }
        Some(Stmt::Map {
            name,
            source,
            target,
            images,
        })
    }

    fn check_stmt(&mut self) -> Option<Stmt> {
        let name = self.ident("a check name")?;
        if !self.expect(Tok::LParen, "`(`") {
            return None;
        }
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                match self.peek().clone() {
                    Tok::Ident(s) => {
                        self.next();
                        args.push(Arg::Ident(s));
                    }
                    Tok::Int(n) => {
                        self.next();
                        args.push(Arg::Int(n));
                    }
                    _ => {
                        self.error("expected an identifier or integer argument", None);
                        return None;
                    }
                }
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        if !self.expect(Tok::RParen, "closing `)`") {
            return None;
        }
        Some(Stmt::Check { name, args })
    }
}

/// Parse a source file. Returns every statement that parsed plus all
/// diagnostics; an error in one statement does not abort the rest.
pub fn parse_source(text: &str) -> (SourceFile, Vec<Diagnostic>) {
    let (toks, mut diags) = lex(text);
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        diags: Vec::new(),
    };
    let mut stmts = Vec::new();
    let mut rings: Vec<(String, Arc<Ring>)> = Vec::new();
    loop {
        match parser.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "ring" => {
                parser.next();
                match parser.ring_stmt() {
                    Some(stmt) => {
                        if let Stmt::Ring { name, ring, .. } = &stmt {
                            rings.push((name.clone(), ring.clone()));
                        }
                        stmts.push(stmt);
                    }
                    None => parser.synchronize(),
                }
            }
            Tok::Ident(kw) if kw == "map" => {
                parser.next();
                match parser.map_stmt(&rings) {
                    Some(stmt) => stmts.push(stmt),
                    None => parser.synchronize(),
                }
            }
            Tok::Ident(kw) if kw == "check" => {
                parser.next();
                match parser.check_stmt() {
                    Some(stmt) => stmts.push(stmt),
                    None => parser.synchronize(),
                }
            }
            _ => {
                parser.error(
                    "expected a statement (`ring`, `map` or `check`)",
                    None,
                );
                parser.next();
                parser.synchronize();
            }
        }
    }
    diags.extend(parser.diags);
    (SourceFile { stmts }, diags)
}

/// Parse a single polynomial expression in the given ring.
pub fn parse_poly_str(ring: &Arc<Ring>, src: &str) -> Result<Poly> {
    let (toks, lex_diags) = lex(src);
    if let Some(d) = lex_diags.first() {
        return Err(Error::InvalidInput(d.to_string()));
    }
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        diags: Vec::new(),
    };
    let p = parser.poly(ring);
    if *parser.peek() != Tok::Eof {
        parser.error("trailing input after polynomial", None);
    }
    match (p, parser.diags.first()) {
        (Some(p), None) => Ok(p),
        (_, Some(d)) => Err(Error::InvalidInput(d.to_string())),
        (None, None) => Err(Error::InvalidInput("empty polynomial".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitney_ring_parses() {
        let (file, diags) = parse_source(
            "ring R = F2[x,y,z]/(y^2 - x*z^2) domain \"irreducible hypersurface\"",
        );
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(file.stmts.len(), 1);
        match &file.stmts[0] {
            Stmt::Ring {
                name,
                ring,
                ideal,
                domain,
            } => {
                assert_eq!(name, "R");
                assert_eq!(ring.vars, vec!["x", "y", "z"]);
                assert_eq!(ring.field, CoeffField::Prime(2));
                assert_eq!(ideal.len(), 1);
                assert_eq!(ideal[0].to_string(), "x*z^2 + y^2");
                assert_eq!(domain.as_deref(), Some("irreducible hypersurface"));
            }
            other => panic!("unexpected statement {other:?}"),
        }
    }

    #[test]
    fn map_parses_in_target_ring() {
        let src = "ring R = F2[x,y,z]/(y^2 - x*z^2)\n\
                   ring S = F2[u,z]\n\
                   map pi : R -> S { x -> u^2, y -> u*z, z -> z }";
        let (file, diags) = parse_source(src);
        assert!(diags.is_empty(), "{diags:?}");
        match &file.stmts[2] {
            Stmt::Map {
                name,
                source,
                target,
                images,
            } => {
                assert_eq!(name, "pi");
                assert_eq!(source, "R");
                assert_eq!(target, "S");
                assert_eq!(images[0].1.to_string(), "u^2");
                assert_eq!(images[1].1.to_string(), "u*z");
            }
            other => panic!("unexpected statement {other:?}"),
        }
    }

    #[test]
    fn unclosed_bracket_diagnostic() {
        let (file, diags) = parse_source("ring A = F2[x");
        assert!(file.stmts.is_empty());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].span.line, 1);
        assert!(diags[0].span.col >= 12);
        assert!(diags[0].message.contains("bracket"));
    }

    #[test]
    fn error_recovery_keeps_later_statements() {
        let src = "ring A = F7[x\nring B = Q[t]\ncheck nf(B)";
        let (file, diags) = parse_source(src);
        assert_eq!(diags.len(), 1);
        assert_eq!(file.stmts.len(), 2);
    }

    #[test]
    fn round_trip_is_structural_identity() {
        let src = "ring R = F2[x,y,z]/(y^2 - x*z^2) domain \"note\"\n\
                   ring S = F2[u,z]\n\
                   map pi : R -> S { x -> u^2, y -> u*z, z -> z }\n\
                   check diagram(D, pi)\n\
                   check product(D, 0, 0, pi, pi)";
        let (file, diags) = parse_source(src);
        assert!(diags.is_empty(), "{diags:?}");
        let printed = file.to_string();
        let (file2, diags2) = parse_source(&printed);
        assert!(diags2.is_empty(), "{diags2:?}");
        assert_eq!(file, file2);
    }

    #[test]
    fn fuzzedish_inputs_do_not_crash() {
        for src in [
            "",
            "ring",
            "ring = ",
            "map m : A -> B { }",
            "check ()",
            "ring R = F4[x]",
            "ring R = Q[x]/()",
            "((((",
            "ring R = Q[x]/(x^99999999999999999999)",
            "\"unterminated",
            "ring R = Q[x] domain",
            "check c(1,,2)",
            "😀😀",
        ] {
            let (_, diags) = parse_source(src);
            if !src.trim().is_empty() {
                assert!(!diags.is_empty(), "expected diagnostics for {src:?}");
            }
            for d in diags {
                assert!(d.span.line >= 1 && d.span.col >= 1);
            }
        }
    }

    #[test]
    fn poly_precedence() {
        let r = Ring::new(CoeffField::rationals(), &["x", "y"]);
        // ^ binds tightest: -x^2 + 2*x*y means -(x^2) + 2xy
        let p = parse_poly_str(&r, "-x^2 + 2*x*y").unwrap();
        assert_eq!(p.to_string(), "-x^2 + 2*x*y");
        let q = parse_poly_str(&r, "(x + y)^2").unwrap();
        assert_eq!(q.to_string(), "x^2 + 2*x*y + y^2");
        assert!(parse_poly_str(&r, "x + w").is_err());
    }
}
