//! Recursive-descent parser with name resolution.

use std::collections::HashMap;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::Diagnostic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Group,
    GSet,
    Map,
    Span,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Group => "a group",
            Kind::GSet => "a gset",
            Kind::Map => "a map",
            Kind::Span => "a span",
        }
    }
}

/// What a resolved name refers to, with the names it was declared from.
#[derive(Clone, Debug)]
struct Symbol {
    kind: Kind,
    /// Group of a gset; source and target of a map.
    refs: Vec<String>,
    /// Degree of a group, point count of a gset.
    size: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    symbols: HashMap<String, Symbol>,
}

const STATEMENT_KEYWORDS: &[&str] = &[
    "group",
    "gset",
    "map",
    "span",
    "check",
    "degroup",
    "compose",
    "iso",
    "hecke",
    "main-claim",
    "zamolodchikov",
    "yang-baxter",
    "grothendieck",
    "reference-matrices",
    "random",
];

fn quoted(words: &[&str]) -> Vec<String> {
    words.iter().map(|w| format!("`{w}`")).collect()
}

pub fn parse(text: &str) -> Result<Program, Diagnostic> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, symbols: HashMap::new() };
    let mut program = Program::default();
    loop {
        match p.peek() {
            Tok::Eof => return Ok(program),
            Tok::Newline => {
                p.pos += 1;
            }
            _ => {
                let start = p.span();
                let statement = p.statement()?;
                let end = p.tokens[p.pos.saturating_sub(1)].span;
                p.end_of_statement()?;
                program.statements.push(Located {
                    node: statement,
                    span: SourceSpan { end: end.end, ..start },
                });
            }
        }
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos.min(self.tokens.len() - 1)].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos.min(self.tokens.len() - 1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: Vec<String>) -> Diagnostic {
        Diagnostic::new(self.span(), format!("unexpected {}", self.peek().describe())).expecting(expected)
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(vec![tok.describe()]))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), Diagnostic> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(quoted(&[word]))),
        }
    }

    fn end_of_statement(&mut self) -> Result<(), Diagnostic> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected(vec![Tok::Newline.describe()])),
        }
    }

    fn int(&mut self) -> Result<(u64, SourceSpan), Diagnostic> {
        match *self.peek() {
            Tok::Int(n) => Ok((n, self.bump().span)),
            _ => Err(self.unexpected(vec!["integer".into()])),
        }
    }

    fn small(&mut self) -> Result<u32, Diagnostic> {
        let (n, span) = self.int()?;
        u32::try_from(n).map_err(|_| Diagnostic::new(span, "integer out of range"))
    }

    fn count(&mut self) -> Result<usize, Diagnostic> {
        let (n, span) = self.int()?;
        usize::try_from(n).ok().filter(|&n| n <= 1 << 24).ok_or_else(|| Diagnostic::new(span, "count out of range"))
    }

    fn ident(&mut self) -> Result<Name, Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok(Located { node: s, span: self.bump().span }),
            _ => Err(self.unexpected(vec!["name".into()])),
        }
    }

    /// A fresh name for a declaration.
    fn declare(&mut self, kind: Kind, refs: Vec<String>, size: usize, name: &Name) -> Result<(), Diagnostic> {
        if STATEMENT_KEYWORDS.contains(&name.node.as_str()) {
            return Err(Diagnostic::new(name.span, format!("`{}` is a keyword", name.node)));
        }
        if self.symbols.contains_key(&name.node) {
            return Err(Diagnostic::new(name.span, format!("duplicate name `{}`", name.node)));
        }
        self.symbols.insert(name.node.clone(), Symbol { kind, refs, size });
        Ok(())
    }

    /// A reference to an earlier declaration of the given kind.
    fn reference(&mut self, kind: Kind) -> Result<(Name, Symbol), Diagnostic> {
        let name = self.ident()?;
        match self.symbols.get(&name.node) {
            None => Err(Diagnostic::new(name.span, format!("unresolved name `{}`", name.node))
                .expecting(vec![kind.noun().to_string()])),
            Some(sym) if sym.kind != kind => Err(Diagnostic::new(
                name.span,
                format!("`{}` is {}, expected {}", name.node, sym.kind.noun(), kind.noun()),
            )),
            Some(sym) => {
                let sym = sym.clone();
                Ok((name, sym))
            }
        }
    }

    fn statement(&mut self) -> Result<Statement, Diagnostic> {
        let word = match self.peek() {
            Tok::Ident(s) if STATEMENT_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected(quoted(STATEMENT_KEYWORDS))),
        };
        self.bump();
        match word.as_str() {
            "group" => self.group(),
            "gset" => self.gset(),
            "map" => self.map(),
            "span" => self.span_decl(),
            "check" => {
                self.keyword("cardinality")?;
                let (gset, sym) = self.reference(Kind::GSet)?;
                self.expect(Tok::SlashSlash)?;
                let (group, _) = self.reference(Kind::Group)?;
                if sym.refs[0] != group.node {
                    return Err(Diagnostic::new(
                        group.span,
                        format!("`{}` is a gset over `{}`, not `{}`", gset.node, sym.refs[0], group.node),
                    ));
                }
                Ok(Statement::Command(Command::Cardinality { gset, group }))
            }
            "degroup" => {
                self.keyword("span")?;
                let (span, _) = self.reference(Kind::Span)?;
                Ok(Statement::Command(Command::Degroup { span }))
            }
            "compose" => {
                let mut spans = vec![self.reference(Kind::Span)?.0];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    spans.push(self.reference(Kind::Span)?.0);
                }
                if spans.len() < 2 {
                    return Err(self.unexpected(vec![Tok::Comma.describe()]));
                }
                Ok(Statement::Command(Command::Compose { spans }))
            }
            "iso" => {
                let (left, _) = self.reference(Kind::Span)?;
                self.expect(Tok::Comma)?;
                let (right, _) = self.reference(Kind::Span)?;
                Ok(Statement::Command(Command::Iso { left, right }))
            }
            "hecke" => {
                self.keyword("verify")?;
                Ok(Statement::Command(Command::HeckeVerify(self.flags()?)))
            }
            "main-claim" => {
                let target = if self.at_flags() {
                    Target::Flags(self.flags()?)
                } else {
                    let mut names = vec![self.reference(Kind::GSet)?.0];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        names.push(self.reference(Kind::GSet)?.0);
                    }
                    Target::Names(names)
                };
                Ok(Statement::Command(Command::MainClaim(target)))
            }
            "zamolodchikov" => Ok(Statement::Command(Command::Zamolodchikov(self.flags()?))),
            "yang-baxter" => Ok(Statement::Command(Command::YangBaxter(self.flags()?))),
            "grothendieck" => {
                self.keyword("roundtrip")?;
                if self.at_flags() {
                    let flags = self.flags()?;
                    let count = if matches!(self.peek(), Tok::Ident(s) if s == "count") {
                        self.bump();
                        self.expect(Tok::Eq)?;
                        Some(self.count()?)
                    } else {
                        None
                    };
                    Ok(Statement::Command(Command::Grothendieck { target: Target::Flags(flags), count }))
                } else {
                    let (span, _) = self.reference(Kind::Span)?;
                    Ok(Statement::Command(Command::Grothendieck { target: Target::Names(vec![span]), count: None }))
                }
            }
            "reference-matrices" => {
                self.keyword("q")?;
                self.expect(Tok::Eq)?;
                Ok(Statement::Command(Command::ReferenceMatrices { q: self.int()?.0 }))
            }
            "random" => {
                let check = match self.peek() {
                    Tok::Ident(s) if s == "cardinality" => RandomCheck::Cardinality,
                    Tok::Ident(s) if s == "functoriality" => RandomCheck::Functoriality,
                    Tok::Ident(s) if s == "monoidal" => RandomCheck::Monoidal,
                    _ => return Err(self.unexpected(quoted(&["cardinality", "functoriality", "monoidal"]))),
                };
                self.bump();
                self.keyword("count")?;
                self.expect(Tok::Eq)?;
                Ok(Statement::Command(Command::Random { check, count: self.count()? }))
            }
            _ => unreachable!("keyword list covers every branch"),
        }
    }

    fn group(&mut self) -> Result<Statement, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("perm")?;
        let degree = self.count()?;
        self.keyword("gens")?;
        let mut generators = vec![self.cycles(degree)?];
        while *self.peek() == Tok::Comma {
            self.bump();
            generators.push(self.cycles(degree)?);
        }
        self.declare(Kind::Group, vec![], degree, &name)?;
        Ok(Statement::Group { name, degree, generators })
    }

    fn gset(&mut self) -> Result<Statement, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("points")?;
        let size = self.count()?;
        self.keyword("on")?;
        let (group, gsym) = self.reference(Kind::Group)?;
        let mut action = Vec::new();
        if matches!(self.peek(), Tok::Ident(s) if s == "act") {
            self.bump();
            loop {
                let cycles = self.cycles(gsym.size)?;
                self.expect(Tok::Arrow)?;
                let (images, span) = self.list()?;
                check_images(&images, span, size, size)?;
                action.push((cycles, images));
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
            }
        }
        self.declare(Kind::GSet, vec![group.node.clone()], size, &name)?;
        Ok(Statement::GSet { name, size, group, action })
    }

    fn map(&mut self) -> Result<Statement, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let (source, ssym) = self.reference(Kind::GSet)?;
        self.expect(Tok::Arrow)?;
        let (target, tsym) = self.reference(Kind::GSet)?;
        if ssym.refs[0] != tsym.refs[0] {
            return Err(Diagnostic::new(
                target.span,
                format!("`{}` is over `{}` but `{}` is over `{}`", source.node, ssym.refs[0], target.node, tsym.refs[0]),
            ));
        }
        self.expect(Tok::Eq)?;
        let (images, span) = self.list()?;
        check_images(&images, span, ssym.size, tsym.size)?;
        self.declare(Kind::Map, vec![source.node.clone(), target.node.clone()], 0, &name)?;
        Ok(Statement::Map { name, source, target, images })
    }

    fn span_decl(&mut self) -> Result<Statement, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LParen)?;
        let (left, lsym) = self.reference(Kind::Map)?;
        self.expect(Tok::Comma)?;
        let (right, rsym) = self.reference(Kind::Map)?;
        self.expect(Tok::RParen)?;
        if lsym.refs[0] != rsym.refs[0] {
            return Err(Diagnostic::new(
                right.span,
                format!("legs `{}` and `{}` start at different gsets", left.node, right.node),
            ));
        }
        self.declare(Kind::Span, vec![], 0, &name)?;
        Ok(Statement::Span { name, left, right })
    }

    /// `(a b c)(d e)` or `()`.
    fn cycles(&mut self, degree: usize) -> Result<Cycles, Diagnostic> {
        self.expect(Tok::LParen)?;
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(vec![]);
        }
        let mut cycles: Cycles = Vec::new();
        loop {
            let mut cycle = Vec::new();
            while let Tok::Int(_) = self.peek() {
                let span = self.span();
                let x = self.small()?;
                if x as usize >= degree {
                    return Err(Diagnostic::new(span, format!("point {x} outside 0..{degree}")));
                }
                if cycle.contains(&x) || cycles.iter().any(|c| c.contains(&x)) {
                    return Err(Diagnostic::new(span, format!("point {x} repeated in cycle notation")));
                }
                cycle.push(x);
            }
            if cycle.is_empty() {
                return Err(self.unexpected(vec!["integer".into()]));
            }
            if *self.peek() != Tok::RParen {
                return Err(self.unexpected(vec!["integer".into(), Tok::RParen.describe()]));
            }
            self.bump();
            cycles.push(cycle);
            if *self.peek() != Tok::LParen {
                return Ok(cycles);
            }
            self.bump();
        }
    }

    /// `[a, b, c]`.
    fn list(&mut self) -> Result<(Vec<u32>, SourceSpan), Diagnostic> {
        let open = self.expect(Tok::LBracket)?;
        let mut items = Vec::new();
        if *self.peek() == Tok::RBracket {
            self.bump();
            return Ok((items, open));
        }
        loop {
            items.push(self.small()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBracket => {
                    self.bump();
                    return Ok((items, open));
                }
                _ => return Err(self.unexpected(vec![Tok::Comma.describe(), Tok::RBracket.describe()])),
            }
        }
    }

    fn at_flags(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if parse_type_a(s).is_some())
            && matches!(self.peek_at(1), Tok::Ident(s) if s == "q")
    }

    /// `A<rank> q=<q>`.
    fn flags(&mut self) -> Result<Flags, Diagnostic> {
        let rank = match self.peek() {
            Tok::Ident(s) => parse_type_a(s),
            _ => None,
        };
        let Some(rank) = rank else {
            return Err(self.unexpected(vec!["`A<rank>`".into()]));
        };
        self.bump();
        self.keyword("q")?;
        self.expect(Tok::Eq)?;
        let (q, _) = self.int()?;
        Ok(Flags { rank, q })
    }
}

fn check_images(images: &[u32], span: SourceSpan, len: usize, bound: usize) -> Result<(), Diagnostic> {
    if images.len() != len {
        return Err(Diagnostic::new(span, format!("expected {len} images, found {}", images.len())));
    }
    if let Some(&x) = images.iter().find(|&&x| x as usize >= bound) {
        return Err(Diagnostic::new(span, format!("image {x} outside 0..{bound}")));
    }
    Ok(())
}

fn parse_type_a(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('A')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
        return None;
    }
    digits.parse().ok().filter(|&r| r >= 1)
}
