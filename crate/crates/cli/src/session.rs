//! Session files: one ring declaration followed by ideal bindings and commands.
//!
//! ```text
//! ring R { vars x:1, y:1, z:1; relations x^3 + y^3 + z^3; }
//! ideal I = (x + y, z);
//! ideal J = (y, x + z);
//! chi I J;
//! tor I J --imax 8 --dmax 14;
//! ```
//!
//! Ideal expressions combine names and literals with `+`, `*` and `^`.
//! `#` and `//` start comments.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use chi_core::parse::parse_poly;
use chi_core::ring::{MonomialOrder, PolyRing};
use chi_core::{MultiPoly, Rational};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SessionError {
    pub pos: Pos,
    pub message: String,
}

/// Polynomial source text and where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySrc {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Name(String),
    Literal(Vec<PolySrc>),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Power(Box<IdealExpr>, u32),
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Name(n) => f.write_str(n),
            IdealExpr::Literal(ps) => {
                let texts: Vec<&str> = ps.iter().map(|p| p.text.as_str()).collect();
                write!(f, "({})", texts.join(", "))
            }
            IdealExpr::Sum(a, b) => write!(f, "{a} + {b}"),
            IdealExpr::Product(a, b) => write!(f, "{} * {}", Paren(a), Paren(b)),
            IdealExpr::Power(a, e) => write!(f, "{}^{e}", Paren(a)),
        }
    }
}

struct Paren<'a>(&'a IdealExpr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            IdealExpr::Sum(..) | IdealExpr::Product(..) => write!(f, "[{}]", self.0),
            e => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Hilbert(IdealExpr),
    Chi(IdealExpr, IdealExpr),
    Tor {
        i: IdealExpr,
        j: IdealExpr,
        imax: Option<usize>,
        dmax: Option<usize>,
    },
    Gulliksen(IdealExpr, IdealExpr),
    Cartier {
        f: PolySrc,
        e: i64,
        curve: IdealExpr,
    },
    Check {
        i: IdealExpr,
        j: IdealExpr,
        imax: Option<usize>,
        dmax: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    /// Source text with whitespace collapsed, no trailing `;`.
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Ideal { name: String, expr: IdealExpr, pos: Pos },
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct RingDecl {
    pub name: String,
    pub ambient: Arc<PolyRing>,
    pub relations: Vec<PolySrc>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring: RingDecl,
    pub items: Vec<Item>,
}

impl Session {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|it| match it {
            Item::Command(c) => Some(c),
            Item::Ideal { .. } => None,
        })
    }
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, SessionError>;

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn pos_of(&self, offset: usize) -> Pos {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Pos { line, col }
    }

    fn error<T>(&self, offset: usize, msg: impl Into<String>) -> PResult<T> {
        Err(SessionError {
            pos: self.pos_of(offset),
            message: msg.into(),
        })
    }

    fn skip_trivia(&mut self) {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let rest = &self.src[self.pos..];
            if rest.starts_with('#') || rest.starts_with("//") {
                self.pos += rest.find('\n').unwrap_or(rest.len());
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.bytes.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_trivia();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_here();
            self.error(self.pos, format!("expected '{}', found {found}", c as char))
        }
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(_) => {
                let ch = self.src[self.pos..].chars().next().unwrap();
                format!("'{ch}'")
            }
        }
    }

    fn ident(&mut self) -> PResult<(String, usize)> {
        self.skip_trivia();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => {
                let found = self.describe_here();
                return self.error(start, format!("expected a name, found {found}"));
            }
        }
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_') {
            self.pos += 1;
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn peek_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let out = self.ident().ok().map(|(s, _)| s);
        self.pos = save;
        out
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let (w, at) = self.ident()?;
        if w == kw {
            Ok(())
        } else {
            self.error(at, format!("expected '{kw}', found '{w}'"))
        }
    }

    fn integer(&mut self) -> PResult<(i64, usize)> {
        self.skip_trivia();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            let found = self.describe_here();
            return self.error(start, format!("expected an integer, found {found}"));
        }
        match self.src[start..self.pos].parse() {
            Ok(n) => Ok((n, start)),
            Err(_) => self.error(start, "integer out of range"),
        }
    }

    /// Raw text up to (not including) a top-level `,`, `;`, or unmatched `)`.
    fn poly_text(&mut self) -> PResult<PolySrc> {
        self.skip_trivia();
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' | b';' if depth == 0 => break,
                b'#' | b'{' | b'}' => break,
                b'/' if self.bytes.get(self.pos + 1) == Some(&b'/') => break,
                _ => {}
            }
            self.pos += 1;
        }
        self.poly_src(start)
    }

    /// A polynomial argument: a parenthesised group or a run of non-space characters.
    fn poly_atom(&mut self) -> PResult<PolySrc> {
        self.skip_trivia();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'(') {
            let mut depth = 0usize;
            while self.pos < self.bytes.len() {
                match self.bytes[self.pos] {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            self.pos += 1;
                            break;
                        }
                    }
                    _ => {}
                }
                self.pos += 1;
            }
            if depth != 0 {
                return self.error(start, "unbalanced '('");
            }
        } else {
            while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() && self.bytes[self.pos] != b';' {
                self.pos += 1;
            }
        }
        self.poly_src(start)
    }

    fn poly_src(&self, start: usize) -> PResult<PolySrc> {
        let raw = &self.src[start..self.pos];
        let text = raw.trim_end();
        if text.is_empty() {
            return self.error(start, "expected a polynomial");
        }
        Ok(PolySrc {
            text: text.to_string(),
            pos: self.pos_of(start),
        })
    }
}

/// Validates polynomial text against the ring, reporting errors at session positions.
struct Checker<'a> {
    cur: &'a Cursor<'a>,
    ring: Arc<PolyRing>,
}

impl Checker<'_> {
    fn check(&self, p: &PolySrc, start: usize, homogeneous: bool) -> PResult<()> {
        let poly: MultiPoly<Rational> = match parse_poly(&self.ring, &p.text) {
            Ok(poly) => poly,
            Err(e) => return self.cur.error(start + e.offset, e.message),
        };
        if homogeneous && !poly.is_homogeneous() {
            return self.cur.error(start, format!("generator is not homogeneous: {poly}"));
        }
        Ok(())
    }
}

fn parse_ring(cur: &mut Cursor<'_>) -> PResult<RingDecl> {
    cur.skip_trivia();
    let ring_at = cur.pos;
    match cur.peek_ident().as_deref() {
        Some("ring") => {}
        _ => return cur.error(ring_at, "a session must start with a ring declaration"),
    }
    cur.keyword("ring")?;
    let (name, _) = cur.ident()?;
    cur.expect(b'{')?;
    cur.keyword("vars")?;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut seen = HashSet::new();
    loop {
        let (v, at) = cur.ident()?;
        if !seen.insert(v.clone()) {
            return cur.error(at, format!("duplicate variable '{v}'"));
        }
        let w = if cur.eat(b':') {
            let (w, wat) = cur.integer()?;
            if w <= 0 {
                return cur.error(wat, format!("variable weight must be a positive integer, got {w} for {v}"));
            }
            w
        } else {
            1
        };
        names.push(v);
        weights.push(w);
        if !cur.eat(b',') {
            break;
        }
    }
    cur.expect(b';')?;

    let mut order = MonomialOrder::default();
    let mut relations = Vec::new();
    let mut rel_offsets = Vec::new();
    while cur.peek() != Some(b'}') {
        let (kw, at) = cur.ident()?;
        match kw.as_str() {
            "relations" => loop {
                cur.skip_trivia();
                rel_offsets.push(cur.pos);
                relations.push(cur.poly_text()?);
                if !cur.eat(b',') {
                    cur.expect(b';')?;
                    break;
                }
            },
            "order" => {
                let (o, oat) = cur.ident()?;
                order = match o.as_str() {
                    "revlex" | "grevlex" => MonomialOrder::WeightedRevLex,
                    "lex" => MonomialOrder::WeightedLex,
                    _ => return cur.error(oat, format!("unknown monomial order '{o}'")),
                };
                cur.expect(b';')?;
            }
            _ => return cur.error(at, format!("expected 'relations', 'order' or '}}', found '{kw}'")),
        }
    }
    cur.expect(b'}')?;
    let ambient = PolyRing::new(names, weights, order).map_err(|e| SessionError {
        pos: cur.pos_of(ring_at),
        message: e.to_string(),
    })?;
    let checker = Checker {
        cur,
        ring: ambient.clone(),
    };
    for (p, at) in relations.iter().zip(rel_offsets) {
        checker.check(p, at, true)?;
    }
    Ok(RingDecl {
        name,
        ambient,
        relations,
    })
}

struct IdealParser<'s> {
    declared: &'s HashSet<String>,
    ring: Arc<PolyRing>,
}

impl IdealParser<'_> {
    fn expr(&self, cur: &mut Cursor<'_>) -> PResult<IdealExpr> {
        let mut acc = self.term(cur)?;
        while cur.peek() == Some(b'+') {
            cur.pos += 1;
            acc = IdealExpr::Sum(Box::new(acc), Box::new(self.term(cur)?));
        }
        Ok(acc)
    }

    fn term(&self, cur: &mut Cursor<'_>) -> PResult<IdealExpr> {
        let mut acc = self.factor(cur)?;
        while cur.peek() == Some(b'*') {
            cur.pos += 1;
            acc = IdealExpr::Product(Box::new(acc), Box::new(self.factor(cur)?));
        }
        Ok(acc)
    }

    fn factor(&self, cur: &mut Cursor<'_>) -> PResult<IdealExpr> {
        let base = self.primary(cur)?;
        if cur.peek() == Some(b'^') {
            cur.pos += 1;
            let (e, at) = cur.integer()?;
            if e < 1 || e > u32::MAX as i64 {
                return cur.error(at, "ideal power must be a positive integer");
            }
            return Ok(IdealExpr::Power(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn primary(&self, cur: &mut Cursor<'_>) -> PResult<IdealExpr> {
        if cur.peek() == Some(b'(') {
            cur.pos += 1;
            let mut gens = Vec::new();
            loop {
                cur.skip_trivia();
                let at = cur.pos;
                let p = cur.poly_text()?;
                Checker {
                    cur,
                    ring: self.ring.clone(),
                }
                .check(&p, at, true)?;
                gens.push(p);
                if !cur.eat(b',') {
                    break;
                }
            }
            cur.expect(b')')?;
            return Ok(IdealExpr::Literal(gens));
        }
        let (name, at) = cur.ident()?;
        if !self.declared.contains(&name) {
            return cur.error(at, format!("unknown ideal '{name}'"));
        }
        Ok(IdealExpr::Name(name))
    }
}

fn collapse(text: &str) -> String {
    let no_comments: Vec<&str> = text
        .lines()
        .map(|l| {
            let cut = [l.find('#'), l.find("//")].into_iter().flatten().min();
            cut.map_or(l, |c| &l[..c])
        })
        .collect();
    no_comments.join(" ").split_whitespace().collect::<Vec<_>>().join(" ")
}

fn parse_options(cur: &mut Cursor<'_>) -> PResult<(Option<usize>, Option<usize>)> {
    let (mut imax, mut dmax) = (None, None);
    loop {
        cur.skip_trivia();
        if !cur.src[cur.pos..].starts_with("--") {
            return Ok((imax, dmax));
        }
        let at = cur.pos;
        cur.pos += 2;
        let (flag, _) = cur.ident()?;
        let (n, nat) = cur.integer()?;
        if n < 0 {
            return cur.error(nat, format!("--{flag} must be nonnegative"));
        }
        match flag.as_str() {
            "imax" => imax = Some(n as usize),
            "dmax" => dmax = Some(n as usize),
            _ => return cur.error(at, format!("unknown option '--{flag}'")),
        }
    }
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut cur = Cursor::new(text);
    let ring = parse_ring(&mut cur)?;
    let mut declared = HashSet::new();
    let mut items = Vec::new();
    while !cur.at_end() {
        let start = cur.pos;
        let (word, at) = cur.ident()?;
        let ip = IdealParser {
            declared: &declared,
            ring: ring.ambient.clone(),
        };
        let kind = match word.as_str() {
            "ring" => return cur.error(at, "only one ring declaration is allowed per session"),
            "ideal" => {
                let (name, _) = cur.ident()?;
                cur.expect(b'=')?;
                let expr = ip.expr(&mut cur)?;
                cur.expect(b';')?;
                declared.insert(name.clone());
                items.push(Item::Ideal {
                    name,
                    expr,
                    pos: cur.pos_of(start),
                });
                continue;
            }
            "hilbert" => CommandKind::Hilbert(ip.expr(&mut cur)?),
            "chi" => CommandKind::Chi(ip.expr(&mut cur)?, ip.expr(&mut cur)?),
            "gulliksen" => CommandKind::Gulliksen(ip.expr(&mut cur)?, ip.expr(&mut cur)?),
            "tor" | "check" => {
                let i = ip.expr(&mut cur)?;
                let j = ip.expr(&mut cur)?;
                let (imax, dmax) = parse_options(&mut cur)?;
                if word == "tor" {
                    CommandKind::Tor { i, j, imax, dmax }
                } else {
                    CommandKind::Check { i, j, imax, dmax }
                }
            }
            "cartier" => {
                cur.skip_trivia();
                let fat = cur.pos;
                let f = cur.poly_atom()?;
                Checker {
                    cur: &cur,
                    ring: ring.ambient.clone(),
                }
                .check(&f, fat, true)?;
                let (e, eat) = cur.integer()?;
                if e <= 0 {
                    return cur.error(eat, "Cartier multiple e must be positive");
                }
                let curve = ip.expr(&mut cur)?;
                CommandKind::Cartier { f, e, curve }
            }
            other => return cur.error(at, format!("unknown command '{other}'")),
        };
        cur.expect(b';')?;
        let body = &text[start..cur.pos - 1];
        items.push(Item::Command(Command {
            kind,
            text: collapse(body),
            pos: cur.pos_of(start),
        }));
    }
    Ok(Session { ring, items })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_session() {
        let s = parse_session(
            "ring R { vars x:1, y:1, z:1; relations x^3 + y^3 + z^3; }\n\
             ideal I = (x+y, z); ideal J = (y, x+z); chi I J;",
        )
        .unwrap();
        assert_eq!(s.ring.ambient.nvars(), 3);
        assert_eq!(s.ring.relations.len(), 1);
        assert_eq!(s.items.len(), 3);
        let cmds: Vec<_> = s.commands().collect();
        assert_eq!(cmds.len(), 1);
        assert_eq!(cmds[0].text, "chi I J");
        assert!(matches!(cmds[0].kind, CommandKind::Chi(..)));
    }

    #[test]
    fn weighted_ring() {
        let s = parse_session("ring R { vars x:2, y:3; }").unwrap();
        assert_eq!(s.ring.ambient.weights(), &[2, 3]);
        assert!(s.ring.relations.is_empty());
        assert!(s.items.is_empty());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let e = parse_session("ring R { vars x, y; }\nideal I = (x + 1);").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 12 });
        assert!(e.message.contains("not homogeneous"), "{}", e.message);
    }

    #[test]
    fn rejects_bad_weight() {
        let e = parse_session("ring R { vars x:0, y; }").unwrap_err();
        assert!(e.message.contains("positive"), "{}", e.message);
        assert_eq!(e.pos, Pos { line: 1, col: 17 });
    }

    #[test]
    fn unknown_names() {
        let e = parse_session("ring R { vars x, y; }\nchi I I;").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 5 });
        assert_eq!(e.message, "unknown ideal 'I'");
        let e = parse_session("ring R { vars x, y; }\nideal I = (x, w);").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 15 });
        assert!(e.message.contains("unknown variable 'w'"));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_session("ring R { vars x, y; }\n\n  ideal I = (x, y)\nchi I I;").unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, col: 1 });
        assert!(e.message.starts_with("expected ';'"));
    }

    #[test]
    fn ideal_expressions_and_options() {
        let s = parse_session(
            "# cusp\nring R { vars x, y, z; relations y^2*z - x^3; }\n\
             ideal D = (x, y); // the line\n\
             hilbert D^2; hilbert D*D + (z); tor D (z) --imax 3 --dmax 5; cartier (x + y) 2 D;",
        )
        .unwrap();
        let cmds: Vec<_> = s.commands().collect();
        assert_eq!(cmds[0].text, "hilbert D^2");
        assert_eq!(cmds[1].kind, {
            let d = || Box::new(IdealExpr::Name("D".into()));
            CommandKind::Hilbert(IdealExpr::Sum(
                Box::new(IdealExpr::Product(d(), d())),
                Box::new(IdealExpr::Literal(vec![PolySrc {
                    text: "z".into(),
                    pos: Pos { line: 4, col: 29 },
                }])),
            ))
        });
        match &cmds[2].kind {
            CommandKind::Tor { imax, dmax, .. } => assert_eq!((*imax, *dmax), (Some(3), Some(5))),
            other => panic!("{other:?}"),
        }
        match &cmds[3].kind {
            CommandKind::Cartier { f, e, .. } => assert_eq!((f.text.as_str(), *e), ("(x + y)", 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_ring_only() {
        let e = parse_session("ring R { vars x; }\nring S { vars y; }").unwrap_err();
        assert!(e.message.contains("only one ring"));
    }
}
