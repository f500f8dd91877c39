//! Session files: lexer, parser and the checks that turn a parse into an
//! algebra with named ideals and a list of commands.
//!
//! ```text
//! var x, y, Dx, Dy;
//! rel Dx*x = x*Dx + 1;
//! rel Dy*y = y*Dy + 1;
//! order dp;
//! ideal I = x*Dx + 2, y^2 - x;
//! gb I side=left;
//! modgb I threads=2 seed=7 verify=full;
//! ann x^2 - y^3;
//! bsp x^2 - y^3 reduced engine=modular;
//! ```
//!
//! Comments run from `#` or `//` to the end of the line.

use std::collections::BTreeMap;
use std::fmt;

use ncmodgb::arithmetic::{parse_rational, Rational};
use ncmodgb::field::{Field, Rationals};
use ncmodgb::galgebra::{GAlgebra, Relation};
use ncmodgb::orderings::{Block, OrderingSpec};
use ncmodgb::poly::NcPoly;
use ncmodgb::Error as CoreError;

/// A line/column position, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A positioned diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SessionError {
    pub pos: Pos,
    pub message: String,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, SessionError> {
    Err(SessionError {
        pos,
        message: message.into(),
    })
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
    DotDot,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str) -> Result<Vec<Token>, SessionError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut k, mut line, mut col) = (0usize, 1usize, 1usize);
    let bump = |k: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *k += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump(&mut k, &mut line, &mut col, c);
        } else if c == '#' || (c == '/' && chars.get(k + 1) == Some(&'/')) {
            while k < chars.len() && chars[k] != '\n' {
                let ch = chars[k];
                bump(&mut k, &mut line, &mut col, ch);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                s.push(chars[k]);
                let ch = chars[k];
                bump(&mut k, &mut line, &mut col, ch);
            }
            out.push(Token {
                tok: Tok::Ident(s),
                pos,
            });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_digit() {
                s.push(chars[k]);
                let ch = chars[k];
                bump(&mut k, &mut line, &mut col, ch);
            }
            // `3/4` is one number; `/` is not an operator otherwise
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                s.push('/');
                bump(&mut k, &mut line, &mut col, '/');
                while k < chars.len() && chars[k].is_ascii_digit() {
                    s.push(chars[k]);
                    let ch = chars[k];
                    bump(&mut k, &mut line, &mut col, ch);
                }
            }
            out.push(Token {
                tok: Tok::Number(s),
                pos,
            });
        } else if c == '.' && chars.get(k + 1) == Some(&'.') {
            bump(&mut k, &mut line, &mut col, c);
            bump(&mut k, &mut line, &mut col, c);
            out.push(Token {
                tok: Tok::DotDot,
                pos,
            });
        } else if ";,=+-*^():".contains(c) {
            bump(&mut k, &mut line, &mut col, c);
            out.push(Token {
                tok: Tok::Sym(c),
                pos,
            });
        } else {
            return err(pos, format!("unexpected character `{c}`"));
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

// ---------------------------------------------------------------- syntax

/// A polynomial expression as written.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational, Pos),
    Var(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn visit_vars<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match self {
            Expr::Num(..) => {}
            Expr::Var(v, p) => out.push((v, *p)),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.visit_vars(out);
                b.visit_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.visit_vars(out),
        }
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut all = Vec::new();
        self.visit_vars(&mut all);
        let mut seen: Vec<String> = Vec::new();
        for (v, _) in all {
            if !seen.iter().any(|s| s == v) {
                seen.push(v.to_string());
            }
        }
        seen
    }
}

/// Ordering as written; variable lists are resolved against the
/// declarations when the algebra is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSyntax {
    Lp,
    Dp,
    Wp(Vec<u32>),
    Block(Vec<(OrderSyntax, VarList)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarList {
    Names(Vec<(String, Pos)>),
    Range(String, String, Pos),
    Rest,
}

/// Options of a command directive, `key=value`.
pub type Options = BTreeMap<String, (String, Pos)>;

#[derive(Debug, Clone, PartialEq)]
pub enum Directive {
    Gb {
        ideal: String,
        options: Options,
    },
    Modgb {
        ideal: String,
        options: Options,
    },
    Ann {
        polys: Vec<Expr>,
        options: Options,
    },
    Bsp {
        poly: Expr,
        reduced: bool,
        options: Options,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub directive: Directive,
    pub pos: Pos,
    /// The statement's source text, without the `;`.
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationSyntax {
    pub left: (String, Pos),
    pub right: (String, Pos),
    pub rhs: Expr,
    pub pos: Pos,
}

/// A parsed, not yet validated session.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SessionFile {
    pub vars: Vec<(String, Pos)>,
    pub relations: Vec<RelationSyntax>,
    pub order: Option<(OrderSyntax, Pos)>,
    pub ideals: Vec<(String, Vec<Expr>, Pos)>,
    pub commands: Vec<Command>,
}

struct Parser<'a> {
    toks: Vec<Token>,
    k: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.k].pos
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), SessionError> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            err(
                self.pos(),
                format!("expected `{c}`, found {}", describe(self.peek())),
            )
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), SessionError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.pos)),
            other => err(
                t.pos,
                format!("expected a name, found {}", describe(&other)),
            ),
        }
    }

    fn uint(&mut self) -> Result<u32, SessionError> {
        let t = self.next();
        match &t.tok {
            Tok::Number(s) if !s.contains('/') => s
                .parse::<u32>()
                .or_else(|_| err(t.pos, format!("integer `{s}` is too large"))),
            other => err(
                t.pos,
                format!("expected an integer, found {}", describe(other)),
            ),
        }
    }

    fn session(&mut self) -> Result<SessionFile, SessionError> {
        let mut s = SessionFile::default();
        while *self.peek() != Tok::Eof {
            let start = self.pos();
            let start_byte = byte_offset(self.src, start);
            let (kw, kpos) = self.ident()?;
            match kw.as_str() {
                "var" => loop {
                    s.vars.push(self.ident()?);
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                },
                "rel" => {
                    let left = self.ident()?;
                    self.expect_sym('*')?;
                    let right = self.ident()?;
                    self.expect_sym('=')?;
                    let rhs = self.expr()?;
                    s.relations.push(RelationSyntax {
                        left,
                        right,
                        rhs,
                        pos: kpos,
                    });
                }
                "order" => {
                    if s.order.is_some() {
                        return err(kpos, "ordering is already set");
                    }
                    let opos = self.pos();
                    let o = self.order()?;
                    s.order = Some((o, opos));
                }
                "ideal" => {
                    let (name, npos) = self.ident()?;
                    self.expect_sym('=')?;
                    let mut gens = vec![self.expr()?];
                    while self.is_sym(',') {
                        self.next();
                        gens.push(self.expr()?);
                    }
                    if s.ideals.iter().any(|(n, _, _)| *n == name) {
                        return err(npos, format!("ideal `{name}` is already defined"));
                    }
                    s.ideals.push((name, gens, npos));
                }
                "gb" | "modgb" => {
                    let (ideal, _) = self.ident()?;
                    let options = self.options()?;
                    let directive = if kw == "gb" {
                        Directive::Gb { ideal, options }
                    } else {
                        Directive::Modgb { ideal, options }
                    };
                    s.commands.push(self.command(directive, start, start_byte));
                }
                "ann" => {
                    let mut polys = vec![self.expr()?];
                    while self.is_sym(',') {
                        self.next();
                        polys.push(self.expr()?);
                    }
                    let options = self.options()?;
                    s.commands.push(self.command(
                        Directive::Ann { polys, options },
                        start,
                        start_byte,
                    ));
                }
                "bsp" => {
                    let poly = self.expr()?;
                    let mut reduced = false;
                    if *self.peek() == Tok::Ident("reduced".into()) {
                        self.next();
                        reduced = true;
                    }
                    let options = self.options()?;
                    s.commands.push(self.command(
                        Directive::Bsp {
                            poly,
                            reduced,
                            options,
                        },
                        start,
                        start_byte,
                    ));
                }
                _ => return err(kpos, format!("unknown statement `{kw}`")),
            }
            self.expect_sym(';')?;
        }
        Ok(s)
    }

    fn command(&self, directive: Directive, pos: Pos, start_byte: usize) -> Command {
        let end_byte = byte_offset(self.src, self.pos());
        Command {
            directive,
            pos,
            text: self.src[start_byte..end_byte].trim().to_string(),
        }
    }

    fn options(&mut self) -> Result<Options, SessionError> {
        let mut out = Options::new();
        while let Tok::Ident(_) = self.peek() {
            let (key, kpos) = self.ident()?;
            self.expect_sym('=')?;
            let t = self.next();
            let value = match t.tok {
                Tok::Ident(v) | Tok::Number(v) => v,
                other => {
                    return err(
                        t.pos,
                        format!("expected a value, found {}", describe(&other)),
                    )
                }
            };
            if out.insert(key.clone(), (value, t.pos)).is_some() {
                return err(kpos, format!("option `{key}` is repeated"));
            }
        }
        Ok(out)
    }

    fn order(&mut self) -> Result<OrderSyntax, SessionError> {
        let (name, pos) = self.ident()?;
        match name.as_str() {
            "lp" => Ok(OrderSyntax::Lp),
            "dp" => Ok(OrderSyntax::Dp),
            "wp" => {
                self.expect_sym('(')?;
                let mut w = vec![self.uint()?];
                while self.is_sym(',') {
                    self.next();
                    w.push(self.uint()?);
                }
                self.expect_sym(')')?;
                Ok(OrderSyntax::Wp(w))
            }
            "block" => {
                self.expect_sym('(')?;
                let mut blocks = Vec::new();
                loop {
                    let o = self.order()?;
                    if matches!(o, OrderSyntax::Block(_)) {
                        return err(pos, "blocks cannot be nested");
                    }
                    self.expect_sym(':')?;
                    let vars = self.var_list()?;
                    blocks.push((o, vars));
                    if self.is_sym(';') {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect_sym(')')?;
                Ok(OrderSyntax::Block(blocks))
            }
            _ => err(pos, format!("unknown ordering `{name}`")),
        }
    }

    fn var_list(&mut self) -> Result<VarList, SessionError> {
        let (first, pos) = self.ident()?;
        if first == "rest" {
            return Ok(VarList::Rest);
        }
        if *self.peek() == Tok::DotDot {
            self.next();
            let (last, _) = self.ident()?;
            return Ok(VarList::Range(first, last, pos));
        }
        let mut names = vec![(first, pos)];
        while self.is_sym(',') {
            self.next();
            names.push(self.ident()?);
        }
        Ok(VarList::Names(names))
    }

    fn expr(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = if self.is_sym('-') {
            self.next();
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.is_sym('+') {
                self.next();
            }
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.factor()?;
        while self.is_sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SessionError> {
        let t = self.next();
        let base = match t.tok {
            Tok::Number(s) => match parse_rational(&s) {
                Some(q) => return Ok(Expr::Num(q, t.pos)),
                None => return err(t.pos, format!("malformed number `{s}`")),
            },
            Tok::Ident(v) => Expr::Var(v, t.pos),
            Tok::Sym('-') => return Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                e
            }
            other => {
                return err(
                    t.pos,
                    format!("expected a term, found {}", describe(&other)),
                )
            }
        };
        if self.is_sym('^') {
            self.next();
            let e = self.uint()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }
}

fn byte_offset(src: &str, pos: Pos) -> usize {
    let mut line = 1;
    let mut col = 1;
    for (b, c) in src.char_indices() {
        if line == pos.line && col == pos.col {
            return b;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    src.len()
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::DotDot => "`..`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<SessionFile, SessionError> {
    let toks = lex(text)?;
    Parser {
        toks,
        k: 0,
        src: text,
    }
    .session()
}

/// Parses a single polynomial expression.
pub fn parse_expr(text: &str) -> Result<Expr, SessionError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        k: 0,
        src: text,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return err(p.pos(), format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

// ---------------------------------------------------------------- semantics

/// Evaluates `e` in `alg`; products are taken in the written order.
pub fn eval(alg: &GAlgebra<Rationals>, e: &Expr) -> Result<NcPoly<Rationals>, SessionError> {
    Ok(match e {
        Expr::Num(q, _) => alg.constant(q.clone()),
        Expr::Var(v, p) => match alg.var_index(v) {
            Some(i) => alg.var(i),
            None => return err(*p, format!("unknown variable `{v}`")),
        },
        Expr::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Sub(a, b) => alg.sub(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Neg(a) => alg.neg(&eval(alg, a)?),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Pow(a, k) => alg.pow(&eval(alg, a)?, *k),
    })
}

/// A validated session.
#[derive(Debug)]
pub struct Session {
    pub algebra: GAlgebra<Rationals>,
    pub ideals: BTreeMap<String, Vec<NcPoly<Rationals>>>,
    pub commands: Vec<Command>,
    /// Declaration order, used to order the variables of `ann`/`bsp`.
    pub declared: Vec<String>,
}

fn resolve_order(
    o: &OrderSyntax,
    names: &[String],
    pos: Pos,
) -> Result<OrderSpecParts, SessionError> {
    let n = names.len();
    let index = |v: &str, p: Pos| -> Result<usize, SessionError> {
        names
            .iter()
            .position(|x| x == v)
            .map_or_else(|| err(p, format!("unknown variable `{v}`")), Ok)
    };
    Ok(match o {
        OrderSyntax::Lp => OrderSpecParts::Plain(OrderingSpec::Lex),
        OrderSyntax::Dp => OrderSpecParts::Plain(OrderingSpec::DegRevLex),
        OrderSyntax::Wp(w) => OrderSpecParts::Weighted(w.clone()),
        OrderSyntax::Block(blocks) => {
            let mut used = vec![false; n];
            let mut out: Vec<(OrderSyntax, Vec<usize>)> = Vec::new();
            let mut rest_at = None;
            for (k, (sub, vars)) in blocks.iter().enumerate() {
                let idx: Vec<usize> = match vars {
                    VarList::Names(v) => v
                        .iter()
                        .map(|(s, p)| index(s, *p))
                        .collect::<Result<_, _>>()?,
                    VarList::Range(a, b, p) => {
                        let (ia, ib) = (index(a, *p)?, index(b, *p)?);
                        if ia > ib {
                            return err(*p, format!("empty range `{a}..{b}`"));
                        }
                        (ia..=ib).collect()
                    }
                    VarList::Rest => {
                        if rest_at.is_some() {
                            return err(pos, "`rest` appears twice");
                        }
                        rest_at = Some(k);
                        Vec::new()
                    }
                };
                for &i in &idx {
                    if used[i] {
                        return err(pos, format!("variable `{}` is in two blocks", names[i]));
                    }
                    used[i] = true;
                }
                out.push((sub.clone(), idx));
            }
            if let Some(k) = rest_at {
                out[k].1 = (0..n).filter(|&i| !used[i]).collect();
            }
            let mut result = Vec::new();
            for (sub, idx) in out {
                if idx.is_empty() {
                    continue;
                }
                let spec = match sub {
                    OrderSyntax::Lp => OrderingSpec::Lex,
                    OrderSyntax::Dp => OrderingSpec::DegRevLex,
                    OrderSyntax::Wp(w) => {
                        if w.len() != idx.len() {
                            return err(
                                pos,
                                format!(
                                    "block weight vector has {} entries, expected {}",
                                    w.len(),
                                    idx.len()
                                ),
                            );
                        }
                        OrderingSpec::weighted(w, OrderingSpec::DegRevLex)
                    }
                    OrderSyntax::Block(_) => return err(pos, "blocks cannot be nested"),
                };
                result.push(Block::new(idx, spec));
            }
            OrderSpecParts::Plain(OrderingSpec::Block(result))
        }
    })
}

enum OrderSpecParts {
    Plain(OrderingSpec),
    Weighted(Vec<u32>),
}

/// Builds the algebra described by `file` and evaluates its ideals.
pub fn build_session(file: &SessionFile) -> Result<Session, SessionError> {
    let mut names: Vec<String> = Vec::new();
    for (v, p) in &file.vars {
        if names.contains(v) {
            return err(*p, format!("variable `{v}` is declared twice"));
        }
        names.push(v.clone());
    }
    let n = names.len();
    let flat = GAlgebra::commutative(Rationals, names.clone(), OrderingSpec::Lex).map_err(|e| {
        SessionError {
            pos: Pos { line: 1, col: 1 },
            message: e.to_string(),
        }
    })?;
    let mut relations: Vec<Relation<Rationals>> = Vec::new();
    let mut rel_pos: BTreeMap<(usize, usize), Pos> = BTreeMap::new();
    for r in &file.relations {
        let j = var_of(&names, &r.left)?;
        let i = var_of(&names, &r.right)?;
        if i == j {
            return err(
                r.pos,
                "left side must be a product of two distinct variables",
            );
        }
        if j < i {
            return err(
                r.pos,
                format!(
                    "left side must be descending: write `{}*{}`",
                    names[i], names[j]
                ),
            );
        }
        if rel_pos.insert((i, j), r.pos).is_some() {
            return err(r.pos, "relation for this pair is already given");
        }
        let rhs = eval(&flat, &r.rhs)?;
        let mut key: ncmodgb::poly::Exponent = std::iter::repeat_n(0, n).collect();
        key[i] += 1;
        key[j] += 1;
        let c = rhs
            .coefficient(&key)
            .cloned()
            .unwrap_or_else(|| Rationals.zero());
        let d: Vec<_> = rhs
            .terms()
            .iter()
            .filter(|(e, _)| *e != key)
            .cloned()
            .collect();
        relations.push(Relation { i, j, c, d });
    }
    let order_pos = file
        .order
        .as_ref()
        .map_or(Pos { line: 1, col: 1 }, |(_, p)| *p);
    let spec = match &file.order {
        None => OrderingSpec::DegRevLex,
        Some((o, p)) => match resolve_order(o, &names, *p)? {
            OrderSpecParts::Plain(s) => s,
            OrderSpecParts::Weighted(w) => {
                if w.len() != n {
                    return err(
                        *p,
                        format!("weight vector has {} entries, expected {n}", w.len()),
                    );
                }
                if w.contains(&0) {
                    return err(*p, "weights must be positive");
                }
                OrderingSpec::weighted(w, OrderingSpec::DegRevLex)
            }
        },
    };
    if let Err(e) = spec.validate(n) {
        return err(order_pos, e.to_string());
    }
    let algebra = GAlgebra::new(Rationals, names.clone(), relations, spec).map_err(|e| {
        let pos = match &e {
            CoreError::ZeroScalar { i, j } => rel_pos.get(&(*i.min(j), *i.max(j))).copied(),
            CoreError::Degenerate { .. } => rel_pos.values().next().copied(),
            _ => None,
        }
        .unwrap_or(order_pos);
        SessionError {
            pos,
            message: e.to_string(),
        }
    })?;
    let mut ideals = BTreeMap::new();
    for (name, gens, _) in &file.ideals {
        let polys = gens
            .iter()
            .map(|g| eval(&algebra, g))
            .collect::<Result<Vec<_>, _>>()?;
        ideals.insert(name.clone(), polys);
    }
    for c in &file.commands {
        if let Directive::Gb { ideal, .. } | Directive::Modgb { ideal, .. } = &c.directive {
            if !ideals.contains_key(ideal) {
                return err(c.pos, format!("unknown ideal `{ideal}`"));
            }
        }
    }
    Ok(Session {
        algebra,
        ideals,
        commands: file.commands.clone(),
        declared: names,
    })
}

fn var_of(names: &[String], (v, p): &(String, Pos)) -> Result<usize, SessionError> {
    names
        .iter()
        .position(|x| x == v)
        .map_or_else(|| err(*p, format!("unknown variable `{v}`")), Ok)
}

/// Parses and builds in one step.
pub fn load_session(text: &str) -> Result<Session, SessionError> {
    build_session(&parse_session(text)?)
}
