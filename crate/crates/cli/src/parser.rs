//! Parser for the construction language.
//!
//! The grammar is layout-insensitive; `#` starts a line comment. A file is a
//! sequence of statements: parameter declarations, construction steps (named
//! constructors or raw `ECSk` aliases), and exactly one `prove` goal.
//!
//! ```text
//! param r
//! points A B C                      # free points (ECS1)
//! D := on_parallel(B; A, C; r)      # ECS4: D with BD/AC = r, parallel to AC
//! S := intersect(A, B; C, D)        # ECS2: line AB meets line CD
//! F := foot(P; U, V)                # ECS3: foot of P on line UV
//! Y := on_perp(U, V; r)             # ECS5: 4 S[U,V,Y] = r P[U,V,U]
//! prove ratio(S, A; A, B) = ratio(S, C; C, D)
//! ```
//!
//! Goal expressions: `S[..]`, `P[..]` (three or four points), `ratio(a,b;c,d)`,
//! `d2(a,b)`, `dist(a,b)`, `sqrt(e)`, rational literals, declared parameters,
//! and `+ - * / ^`. Predicate goals: `collinear`, `parallel`, `perpendicular`,
//! `identical`, `midpoint`, `eqdist`.

use std::fmt;

use areamethod::algebra::{expand_quaternary, Atom, ExprTree, PointRef, QuantityKind, Scalar};
use areamethod::conjecture::{Clause, Conjecture, ConjectureOrigin, Rel};
use areamethod::construction::{Construction, StepKind};
use areamethod::error::Error as CoreError;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed source file: the construction plus its single goal.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceFile {
    pub construction: Construction,
    pub goal: Conjecture,
}

// --- lexer ---

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Assign, // :=
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq, // = or ==
    Ne, // !=
    Le,
    Lt,
    Ge,
    Gt,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::Int(n) => write!(f, "`{}`", n),
            Tok::Assign => write!(f, "`:=`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Ne => write!(f, "`!=`"),
            Tok::Le => write!(f, "`<=`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Ge => write!(f, "`>=`"),
            Tok::Gt => write!(f, "`>`"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        // skip whitespace and comments
        loop {
            match lx.chars.peek() {
                Some('#') => {
                    while let Some(&c) = lx.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        lx.chars.next();
                    }
                }
                Some(&c) if c.is_whitespace() => {
                    lx.chars.next();
                    if c == '\n' {
                        lx.line += 1;
                        lx.col = 1;
                    } else {
                        lx.col += 1;
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (lx.line, lx.col);
        let Some(&c) = lx.chars.peek() else {
            return Ok(out);
        };
        let bump = |lx: &mut Lexer| {
            lx.chars.next();
            lx.col += 1;
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = lx.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    bump(&mut lx);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while let Some(&c) = lx.chars.peek() {
                if let Some(d) = c.to_digit(10) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d as i64))
                        .ok_or_else(|| ParseError {
                            line,
                            col,
                            message: "integer literal too large".to_string(),
                        })?;
                    bump(&mut lx);
                } else {
                    break;
                }
            }
            Tok::Int(n)
        } else {
            bump(&mut lx);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                ':' => {
                    if lx.chars.peek() == Some(&'=') {
                        bump(&mut lx);
                        Tok::Assign
                    } else {
                        return Err(ParseError {
                            line,
                            col,
                            message: "expected `:=`".to_string(),
                        });
                    }
                }
                '=' => {
                    if lx.chars.peek() == Some(&'=') {
                        bump(&mut lx);
                    }
                    Tok::Eq
                }
                '!' => {
                    if lx.chars.peek() == Some(&'=') {
                        bump(&mut lx);
                        Tok::Ne
                    } else {
                        return Err(ParseError {
                            line,
                            col,
                            message: "expected `!=`".to_string(),
                        });
                    }
                }
                '<' => {
                    if lx.chars.peek() == Some(&'=') {
                        bump(&mut lx);
                        Tok::Le
                    } else {
                        Tok::Lt
                    }
                }
                '>' => {
                    if lx.chars.peek() == Some(&'=') {
                        bump(&mut lx);
                        Tok::Ge
                    } else {
                        Tok::Gt
                    }
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{}`", other),
                    })
                }
            }
        };
        out.push((tok, line, col));
    }
}

// --- parser ---

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    construction: Construction,
    goal: Option<Conjecture>,
}

pub fn parse(text: &str) -> Result<SourceFile, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        construction: Construction::new(),
        goal: None,
    };
    while !p.at_end() {
        p.statement()?;
    }
    let goal = p.goal.take().ok_or_else(|| ParseError {
        line: 0,
        col: 0,
        message: "the file has no `prove` goal".to_string(),
    })?;
    Ok(SourceFile {
        construction: p.construction,
        goal,
    })
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((0, 0))
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn core_err(&self, e: CoreError) -> ParseError {
        self.err(e.to_string())
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let got = self.next()?;
        if got == tok {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(format!("expected {}, found {}", tok, got)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected an identifier, found {}", other)))
            }
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(kw)) if kw == "param" => {
                self.next()?;
                let name = self.ident()?;
                self.construction
                    .declare_param(name)
                    .map_err(|e| self.core_err(e))?;
                Ok(())
            }
            Some(Tok::Ident(kw)) if kw == "points" || kw == "ECS1" => {
                let raw = kw == "ECS1";
                self.next()?;
                if raw {
                    self.expect(Tok::LParen)?;
                    loop {
                        let name = self.ident()?;
                        self.add_point(name, StepKind::Free)?;
                        match self.next()? {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            _ => {
                                self.pos -= 1;
                                return Err(self.err("expected `,` or `)`"));
                            }
                        }
                    }
                    return Ok(());
                }
                let mut any = false;
                while let Some(Tok::Ident(_)) = self.peek() {
                    // stop if this identifier starts the next statement
                    if matches!(self.peek2(), Some(Tok::Assign)) {
                        break;
                    }
                    if let Some(Tok::Ident(w)) = self.peek() {
                        if w == "param" || w == "points" || w == "prove" || w == "ECS1" {
                            break;
                        }
                    }
                    let name = self.ident()?;
                    self.add_point(name, StepKind::Free)?;
                    any = true;
                }
                if !any {
                    return Err(self.err("`points` needs at least one name"));
                }
                Ok(())
            }
            Some(Tok::Ident(kw)) if kw == "prove" => {
                self.next()?;
                if self.goal.is_some() {
                    return Err(self.err("a file may state exactly one goal"));
                }
                let goal = self.goal()?;
                self.goal = Some(goal);
                Ok(())
            }
            Some(Tok::Ident(_)) if matches!(self.peek2(), Some(Tok::Assign)) => {
                let name = self.ident()?;
                self.expect(Tok::Assign)?;
                let kind = self.constructor()?;
                self.add_point(name, kind)
            }
            Some(_) => Err(self.err("expected a statement")),
            None => Ok(()),
        }
    }

    fn add_point(&mut self, name: String, kind: StepKind) -> Result<(), ParseError> {
        self.construction = self
            .construction
            .append_step(name, kind)
            .map_err(|e| self.core_err(e))?;
        Ok(())
    }

    fn known_point(&mut self) -> Result<String, ParseError> {
        let name = self.ident()?;
        if !self.construction.contains_point(&name) {
            self.pos -= 1;
            return Err(self.err(format!("unknown point `{}`", name)));
        }
        Ok(name)
    }

    fn constructor(&mut self) -> Result<StepKind, ParseError> {
        let head = self.ident()?;
        self.expect(Tok::LParen)?;
        let kind = match head.as_str() {
            "intersect" => {
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Semi)?;
                let p = self.known_point()?;
                self.expect(Tok::Comma)?;
                let q = self.known_point()?;
                StepKind::Intersect { u, v, p, q }
            }
            "ECS2" => {
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Comma)?;
                let p = self.known_point()?;
                self.expect(Tok::Comma)?;
                let q = self.known_point()?;
                StepKind::Intersect { u, v, p, q }
            }
            "foot" => {
                let p = self.known_point()?;
                self.expect(Tok::Semi)?;
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                StepKind::Foot { p, u, v }
            }
            "ECS3" => {
                let p = self.known_point()?;
                self.expect(Tok::Comma)?;
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                StepKind::Foot { p, u, v }
            }
            "on_parallel" => {
                let w = self.known_point()?;
                self.expect(Tok::Semi)?;
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Semi)?;
                let r = self.expr()?;
                StepKind::OnParallel { w, u, v, r }
            }
            "ECS4" => {
                let w = self.known_point()?;
                self.expect(Tok::Comma)?;
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Comma)?;
                let r = self.expr()?;
                StepKind::OnParallel { w, u, v, r }
            }
            "on_perp" => {
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Semi)?;
                let r = self.expr()?;
                StepKind::OnPerp { u, v, r }
            }
            "ECS5" => {
                let u = self.known_point()?;
                self.expect(Tok::Comma)?;
                let v = self.known_point()?;
                self.expect(Tok::Comma)?;
                let r = self.expr()?;
                StepKind::OnPerp { u, v, r }
            }
            other => return Err(self.err(format!("unknown constructor `{}`", other))),
        };
        self.expect(Tok::RParen)?;
        Ok(kind)
    }

    fn point_ref(&mut self) -> Result<PointRef, ParseError> {
        let name = self.known_point()?;
        self.construction
            .point_ref(&name)
            .map_err(|e| self.core_err(e))
    }

    // --- goals ---

    fn goal(&mut self) -> Result<Conjecture, ParseError> {
        // predicate goals start with a known predicate name followed by `(`
        if let (Some(Tok::Ident(name)), Some(Tok::LParen)) = (self.peek(), self.peek2()) {
            let predicates = [
                "collinear",
                "parallel",
                "perpendicular",
                "identical",
                "midpoint",
                "eqdist",
            ];
            if predicates.contains(&name.as_str()) {
                let name = name.clone();
                return self.predicate_goal(&name);
            }
        }
        let lhs = self.expr()?;
        let rel = match self.next()? {
            Tok::Eq => Rel::Eq,
            Tok::Ne => Rel::Ne,
            Tok::Le => Rel::Le,
            Tok::Lt => Rel::Lt,
            Tok::Ge => Rel::Ge,
            Tok::Gt => Rel::Gt,
            other => {
                self.pos -= 1;
                return Err(self.err(format!("expected a relation, found {}", other)));
            }
        };
        let rhs = self.expr()?;
        Ok(Conjecture::equation(rel, lhs, rhs))
    }

    fn predicate_goal(&mut self, name: &str) -> Result<Conjecture, ParseError> {
        self.next()?; // predicate name
        self.expect(Tok::LParen)?;
        let mut groups: Vec<Vec<String>> = vec![Vec::new()];
        loop {
            let p = self.known_point()?;
            groups.last_mut().unwrap().push(p);
            match self.next()? {
                Tok::Comma => continue,
                Tok::Semi => groups.push(Vec::new()),
                Tok::RParen => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected `,`, `;` or `)`"));
                }
            }
        }
        let pr = |this: &Self, n: &str| this.construction.point_ref(n).unwrap();
        let sig: Vec<usize> = groups.iter().map(|g| g.len()).collect();
        let bad_arity = |this: &Self| this.err(format!("wrong arguments for `{}`", name));
        let clauses = match name {
            "collinear" => {
                if sig != [3] {
                    return Err(bad_arity(self));
                }
                let (a, b, c) = (
                    pr(self, &groups[0][0]),
                    pr(self, &groups[0][1]),
                    pr(self, &groups[0][2]),
                );
                vec![Clause::eq(
                    ExprTree::atom(Atom::Area(a, b, c)),
                    ExprTree::int(0),
                )]
            }
            "identical" => {
                if sig != [2] {
                    return Err(bad_arity(self));
                }
                let (a, b) = (pr(self, &groups[0][0]), pr(self, &groups[0][1]));
                vec![Clause::eq(
                    ExprTree::atom(Atom::Pyth(a.clone(), b, a)),
                    ExprTree::int(0),
                )]
            }
            "parallel" | "perpendicular" => {
                if sig != [2, 2] {
                    return Err(bad_arity(self));
                }
                let (a, b) = (pr(self, &groups[0][0]), pr(self, &groups[0][1]));
                let (c, d) = (pr(self, &groups[1][0]), pr(self, &groups[1][1]));
                let nondeg = |x: &PointRef, y: &PointRef| {
                    Clause::labeled(
                        Rel::Ne,
                        ExprTree::atom(Atom::Pyth(x.clone(), y.clone(), x.clone())),
                        ExprTree::int(0),
                        format!("segment {}{} is nondegenerate", x, y),
                    )
                };
                let main = if name == "parallel" {
                    Clause::eq(
                        ExprTree::atom(Atom::Area(a.clone(), c.clone(), d.clone())),
                        ExprTree::atom(Atom::Area(b.clone(), c.clone(), d.clone())),
                    )
                } else {
                    Clause::eq(
                        ExprTree::atom(Atom::Pyth(a.clone(), c.clone(), d.clone())),
                        ExprTree::atom(Atom::Pyth(b.clone(), c.clone(), d.clone())),
                    )
                };
                vec![nondeg(&a, &b), nondeg(&c, &d), main]
            }
            "midpoint" => {
                if sig != [1, 2] {
                    return Err(bad_arity(self));
                }
                let m = pr(self, &groups[0][0]);
                let (a, b) = (pr(self, &groups[1][0]), pr(self, &groups[1][1]));
                vec![
                    Clause::labeled(
                        Rel::Eq,
                        ExprTree::atom(Atom::Area(a.clone(), m.clone(), b.clone())),
                        ExprTree::int(0),
                        format!("{} lies on {}{}", m, a, b),
                    ),
                    Clause::eq(
                        ExprTree::atom(Atom::Ratio(a.clone(), m, a.clone(), b)),
                        ExprTree::constant(Scalar::ratio(1, 2)),
                    ),
                ]
            }
            "eqdist" => {
                if sig != [2, 2] {
                    return Err(bad_arity(self));
                }
                let (a, b) = (pr(self, &groups[0][0]), pr(self, &groups[0][1]));
                let (c, d) = (pr(self, &groups[1][0]), pr(self, &groups[1][1]));
                vec![Clause::eq(ExprTree::dist2(a, b), ExprTree::dist2(c, d))]
            }
            _ => unreachable!("predicate list checked by the caller"),
        };
        Ok(Conjecture {
            clauses,
            origin: ConjectureOrigin::Predicate {
                name: name.to_string(),
                groups,
            },
        })
    }

    // --- expressions ---

    fn expr(&mut self) -> Result<ExprTree, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next()?;
                    acc = fold(ExprTree::add(acc, self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next()?;
                    acc = fold(ExprTree::sub(acc, self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExprTree, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next()?;
                    acc = fold(ExprTree::mul(acc, self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.next()?;
                    let rhs = self.factor()?;
                    if matches!(&rhs, ExprTree::Const(c) if c.is_zero()) {
                        return Err(self.err("division by the literal zero"));
                    }
                    acc = fold(ExprTree::div(acc, rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprTree, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next()?;
            return Ok(fold(ExprTree::neg(self.factor()?)));
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next()?;
            let negative = if matches!(self.peek(), Some(Tok::Minus)) {
                self.next()?;
                true
            } else {
                false
            };
            match self.next()? {
                Tok::Int(n) => {
                    let exp = if negative { -(n as i32) } else { n as i32 };
                    return Ok(ExprTree::pow(base, exp));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.err("exponents must be integer literals"));
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExprTree, ParseError> {
        match self.next()? {
            Tok::Int(n) => Ok(ExprTree::int(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "S" | "P" if matches!(self.peek(), Some(Tok::LBracket)) => {
                    let kind = if name == "S" {
                        QuantityKind::Area
                    } else {
                        QuantityKind::Pyth
                    };
                    self.expect(Tok::LBracket)?;
                    let mut pts = vec![self.point_ref()?];
                    while matches!(self.peek(), Some(Tok::Comma)) {
                        self.next()?;
                        pts.push(self.point_ref()?);
                    }
                    self.expect(Tok::RBracket)?;
                    expand_quaternary(kind, &pts).map_err(|e| self.core_err(e))
                }
                "ratio" => {
                    self.expect(Tok::LParen)?;
                    let a = self.point_ref()?;
                    self.expect(Tok::Comma)?;
                    let b = self.point_ref()?;
                    self.expect(Tok::Semi)?;
                    let c = self.point_ref()?;
                    self.expect(Tok::Comma)?;
                    let d = self.point_ref()?;
                    self.expect(Tok::RParen)?;
                    Ok(ExprTree::atom(Atom::Ratio(a, b, c, d)))
                }
                "d2" => {
                    self.expect(Tok::LParen)?;
                    let a = self.point_ref()?;
                    self.expect(Tok::Comma)?;
                    let b = self.point_ref()?;
                    self.expect(Tok::RParen)?;
                    Ok(ExprTree::dist2(a, b))
                }
                "dist" => {
                    self.expect(Tok::LParen)?;
                    let a = self.point_ref()?;
                    self.expect(Tok::Comma)?;
                    let b = self.point_ref()?;
                    self.expect(Tok::RParen)?;
                    Ok(ExprTree::dist(a, b))
                }
                "sqrt" => {
                    self.expect(Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(ExprTree::sqrt(e))
                }
                _ => {
                    if self.construction.has_param(&name) {
                        Ok(ExprTree::param(name))
                    } else if self.construction.contains_point(&name) {
                        self.pos -= 1;
                        Err(self.err(format!(
                            "`{}` is a point; points are not scalar expressions",
                            name
                        )))
                    } else {
                        self.pos -= 1;
                        Err(self.err(format!("unknown name `{}`", name)))
                    }
                }
            },
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected an expression, found {}", other)))
            }
        }
    }
}

/// Fold literal arithmetic so that printing and re-parsing an expression
/// yields a structurally identical tree.
fn fold(e: ExprTree) -> ExprTree {
    match &e {
        ExprTree::Neg(a) => {
            if let ExprTree::Const(c) = a.as_ref() {
                return ExprTree::Const(-c.clone());
            }
        }
        ExprTree::Add(a, b) => {
            if let (ExprTree::Const(x), ExprTree::Const(y)) = (a.as_ref(), b.as_ref()) {
                return ExprTree::Const(x + y);
            }
        }
        ExprTree::Sub(a, b) => {
            if let (ExprTree::Const(x), ExprTree::Const(y)) = (a.as_ref(), b.as_ref()) {
                return ExprTree::Const(x - y);
            }
        }
        ExprTree::Mul(a, b) => {
            if let (ExprTree::Const(x), ExprTree::Const(y)) = (a.as_ref(), b.as_ref()) {
                return ExprTree::Const(x * y);
            }
        }
        ExprTree::Div(a, b) => {
            if let (ExprTree::Const(x), ExprTree::Const(y)) = (a.as_ref(), b.as_ref()) {
                if !y.is_zero() {
                    return ExprTree::Const(x / y);
                }
            }
        }
        _ => {}
    }
    e
}
