//! Abstract syntax of forkable expressions ("behaviors"), their concrete
//! syntax, and the total order used to sort sums during normalization.
//!
//! Concrete syntax:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (('.')? factor)*
//! factor := atom '*'*
//! atom   := '0' | '1' | ident | 'F' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `0` is the empty language, `1` the empty word, `F(..)` forks a thread.
//! Sums and products parse right-nested, which is also the shape the
//! normalizer produces.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Primitive event name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Panics if `name` is not a valid identifier; see [`Symbol::try_new`].
    pub fn new(name: &str) -> Self {
        match Self::try_new(name) {
            Ok(s) => s,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(name: &str) -> Result<Self, SymbolError> {
        if name.is_empty() || !name.chars().all(is_ident_char) {
            return Err(SymbolError::Invalid(name.to_string()));
        }
        if matches!(name, "0" | "1" | "F") {
            return Err(SymbolError::Reserved(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("invalid symbol name {0:?}")]
    Invalid(String),
    #[error("symbol name {0:?} is reserved")]
    Reserved(String),
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Sorted, duplicate-free set of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet(Vec<Symbol>);

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let set: BTreeSet<Symbol> = symbols.into_iter().collect();
        Alphabet(set.into_iter().collect())
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Symbol) -> bool {
        self.0.binary_search(x).is_ok()
    }
}

impl<'a> IntoIterator for &'a Alphabet {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// One layer of a behavior tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Node {
    /// φ, the empty language.
    Empty,
    /// ε, the empty word.
    Eps,
    Sym(Symbol),
    Alt(Behavior, Behavior),
    Seq(Behavior, Behavior),
    Star(Behavior),
    Fork(Behavior),
}

impl Node {
    fn rank(&self) -> u8 {
        match self {
            Node::Empty => 0,
            Node::Eps => 1,
            Node::Sym(_) => 2,
            Node::Fork(_) => 3,
            Node::Star(_) => 4,
            Node::Seq(..) => 5,
            Node::Alt(..) => 6,
        }
    }
}

struct Inner {
    node: Node,
    size: usize,
    hash: u64,
}

/// An immutable, cheaply clonable forkable expression.
///
/// Equality is structural. Size and a structural hash are cached at
/// construction, so comparisons reject mismatches early.
#[derive(Clone)]
pub struct Behavior(Arc<Inner>);

const fn mix(h: u64, v: u64) -> u64 {
    (h ^ v).wrapping_mul(0x100_0000_01b3).rotate_left(29)
}

fn str_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| mix(h, b as u64))
}

impl Behavior {
    fn build(node: Node) -> Self {
        let (size, hash) = match &node {
            Node::Empty => (0, 0x11),
            Node::Eps => (1, 0x23),
            Node::Sym(s) => (1, mix(0x37, str_hash(s.name()))),
            Node::Alt(l, r) => (1 + l.size() + r.size(), mix(mix(0x41, l.0.hash), r.0.hash)),
            Node::Seq(l, r) => (1 + l.size() + r.size(), mix(mix(0x53, l.0.hash), r.0.hash)),
            Node::Star(b) => (1 + b.size(), mix(0x67, b.0.hash)),
            Node::Fork(b) => (1 + b.size(), mix(0x79, b.0.hash)),
        };
        Behavior(Arc::new(Inner { node, size, hash }))
    }

    pub fn empty() -> Self {
        Self::build(Node::Empty)
    }

    pub fn eps() -> Self {
        Self::build(Node::Eps)
    }

    /// Panics on an invalid symbol name.
    pub fn sym(name: &str) -> Self {
        Self::build(Node::Sym(Symbol::new(name)))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::build(Node::Sym(s))
    }

    pub fn alt(l: Behavior, r: Behavior) -> Self {
        Self::build(Node::Alt(l, r))
    }

    pub fn seq(l: Behavior, r: Behavior) -> Self {
        Self::build(Node::Seq(l, r))
    }

    pub fn star(body: Behavior) -> Self {
        Self::build(Node::Star(body))
    }

    pub fn fork(body: Behavior) -> Self {
        Self::build(Node::Fork(body))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Empty ↦ 0, Eps/Sym ↦ 1, every other constructor adds 1 to its children.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_empty_lang(&self) -> bool {
        matches!(self.node(), Node::Empty)
    }

    pub fn is_eps(&self) -> bool {
        matches!(self.node(), Node::Eps)
    }

    pub fn is_fork_free(&self) -> bool {
        match self.node() {
            Node::Empty | Node::Eps | Node::Sym(_) => true,
            Node::Alt(l, r) | Node::Seq(l, r) => l.is_fork_free() && r.is_fork_free(),
            Node::Star(b) => b.is_fork_free(),
            Node::Fork(_) => false,
        }
    }

    /// Symbols occurring in the expression.
    pub fn alphabet(&self) -> Alphabet {
        let mut acc = BTreeSet::new();
        self.collect_symbols(&mut acc);
        Alphabet(acc.into_iter().collect())
    }

    fn collect_symbols(&self, acc: &mut BTreeSet<Symbol>) {
        match self.node() {
            Node::Empty | Node::Eps => {}
            Node::Sym(s) => {
                acc.insert(s.clone());
            }
            Node::Alt(l, r) | Node::Seq(l, r) => {
                l.collect_symbols(acc);
                r.collect_symbols(acc);
            }
            Node::Star(b) | Node::Fork(b) => b.collect_symbols(acc),
        }
    }

    /// Pre-order traversal of all subterms, including `self`.
    pub fn subterms(&self) -> Vec<Behavior> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            match t.node() {
                Node::Alt(l, r) | Node::Seq(l, r) => {
                    stack.push(r.clone());
                    stack.push(l.clone());
                }
                Node::Star(b) | Node::Fork(b) => stack.push(b.clone()),
                _ => {}
            }
            out.push(t);
        }
        out
    }

    /// Minimal-parentheses concrete syntax.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_prec(&mut out, Prec::Alt);
        out
    }

    fn write_prec(&self, out: &mut String, ctx: Prec) {
        let own = match self.node() {
            Node::Alt(..) => Prec::Alt,
            Node::Seq(..) => Prec::Seq,
            Node::Star(_) => Prec::Postfix,
            _ => Prec::Atom,
        };
        let paren = own < ctx;
        if paren {
            out.push('(');
        }
        match self.node() {
            Node::Empty => out.push('0'),
            Node::Eps => out.push('1'),
            Node::Sym(s) => out.push_str(s.name()),
            Node::Alt(l, r) => {
                l.write_prec(out, Prec::Seq);
                out.push_str(" + ");
                r.write_prec(out, Prec::Alt);
            }
            Node::Seq(l, r) => {
                l.write_prec(out, Prec::Postfix);
                out.push('.');
                r.write_prec(out, Prec::Seq);
            }
            Node::Star(b) => {
                b.write_prec(out, Prec::Postfix);
                out.push('*');
            }
            Node::Fork(b) => {
                out.push_str("F(");
                b.write_prec(out, Prec::Alt);
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Alt,
    Seq,
    Postfix,
    Atom,
}

impl PartialEq for Behavior {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.node == other.0.node)
    }
}

impl Eq for Behavior {}

impl Hash for Behavior {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Size first, then constructor rank
/// (Empty < Eps < Sym < Fork < Star < Seq < Alt), then children left to
/// right. Equal exactly when structurally identical.
impl Ord for Behavior {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.node().rank().cmp(&other.node().rank()))
            .then_with(|| match (self.node(), other.node()) {
                (Node::Sym(a), Node::Sym(b)) => a.cmp(b),
                (Node::Alt(a1, a2), Node::Alt(b1, b2)) | (Node::Seq(a1, a2), Node::Seq(b1, b2)) => {
                    a1.cmp(b1).then_with(|| a2.cmp(b2))
                }
                (Node::Star(a), Node::Star(b)) | (Node::Fork(a), Node::Fork(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Behavior {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.render())
    }
}

impl std::str::FromStr for Behavior {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    EmptyInput,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbalanced parentheses: missing ')' at offset {offset}")]
    Unclosed { offset: usize },
}

impl ParseError {
    /// Byte offset of the error, if it has one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::EmptyInput => None,
            ParseError::Syntax { offset, .. } | ParseError::Unclosed { offset } => Some(*offset),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Ident(&'a str),
    Plus,
    Dot,
    Star,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

/// Parse the concrete syntax into a [`Behavior`].
pub fn parse(text: &str) -> Result<Behavior, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    if p.peek()?.1 == Tok::End {
        return Err(ParseError::EmptyInput);
    }
    let e = p.expr()?;
    let (at, tok) = p.peek()?;
    match tok {
        Tok::End => Ok(e),
        Tok::RParen => Err(ParseError::Syntax {
            offset: at,
            message: "unmatched ')'".into(),
        }),
        other => Err(ParseError::Syntax {
            offset: at,
            message: format!("unexpected {}", describe(&other)),
        }),
    }
}

fn describe(t: &Tok<'_>) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Dot => "'.'".into(),
        Tok::Star => "'*'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the offset and the next token without consuming it.
    fn peek(&mut self) -> Result<(usize, Tok<'a>), ParseError> {
        self.skip_ws();
        let at = self.pos;
        let rest = &self.src[at..];
        let Some(c) = rest.chars().next() else {
            return Ok((at, Tok::End));
        };
        let tok = match c {
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if is_ident_char(c) => {
                let len = rest.find(|c: char| !is_ident_char(c)).unwrap_or(rest.len());
                Tok::Ident(&rest[..len])
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: at,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        Ok((at, tok))
    }

    fn bump(&mut self, tok: &Tok<'_>) {
        self.pos += match tok {
            Tok::Ident(s) => s.len(),
            Tok::End => 0,
            _ => 1,
        };
    }

    fn expr(&mut self) -> Result<Behavior, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            let (_, tok) = self.peek()?;
            if tok != Tok::Plus {
                break;
            }
            self.bump(&tok);
            terms.push(self.term()?);
        }
        Ok(fold_right(terms, Behavior::alt))
    }

    fn term(&mut self) -> Result<Behavior, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            let (_, tok) = self.peek()?;
            match tok {
                Tok::Dot => {
                    self.bump(&tok);
                    factors.push(self.factor()?);
                }
                Tok::Ident(_) | Tok::LParen => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(fold_right(factors, Behavior::seq))
    }

    fn factor(&mut self) -> Result<Behavior, ParseError> {
        let mut a = self.atom()?;
        loop {
            let (_, tok) = self.peek()?;
            if tok != Tok::Star {
                break;
            }
            self.bump(&tok);
            a = Behavior::star(a);
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Behavior, ParseError> {
        let (at, tok) = self.peek()?;
        match tok {
            Tok::Ident("0") => {
                self.bump(&tok);
                Ok(Behavior::empty())
            }
            Tok::Ident("1") => {
                self.bump(&tok);
                Ok(Behavior::eps())
            }
            Tok::Ident("F") => {
                self.bump(&tok);
                let (at2, open) = self.peek()?;
                if open != Tok::LParen {
                    return Err(ParseError::Syntax {
                        offset: at2,
                        message: "'F' is reserved for fork and must be followed by '('".into(),
                    });
                }
                self.bump(&open);
                let body = self.expr()?;
                self.close()?;
                Ok(Behavior::fork(body))
            }
            Tok::Ident(name) => {
                self.bump(&tok);
                Ok(Behavior::symbol(Symbol(Arc::from(name))))
            }
            Tok::LParen => {
                self.bump(&tok);
                let e = self.expr()?;
                self.close()?;
                Ok(e)
            }
            other => Err(ParseError::Syntax {
                offset: at,
                message: format!("expected an expression, found {}", describe(&other)),
            }),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        let (at, tok) = self.peek()?;
        match tok {
            Tok::RParen => {
                self.bump(&tok);
                Ok(())
            }
            Tok::End => Err(ParseError::Unclosed { offset: at }),
            other => Err(ParseError::Syntax {
                offset: at,
                message: format!("expected ')', found {}", describe(&other)),
            }),
        }
    }
}

fn fold_right(mut items: Vec<Behavior>, f: fn(Behavior, Behavior) -> Behavior) -> Behavior {
    let mut acc = items.pop().expect("at least one operand");
    while let Some(l) = items.pop() {
        acc = f(l, acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Behavior {
        Behavior::sym("x")
    }
    fn y() -> Behavior {
        Behavior::sym("y")
    }

    #[test]
    fn parse_reserved_tokens() {
        assert_eq!(parse("0").unwrap(), Behavior::empty());
        assert_eq!(parse("1").unwrap(), Behavior::eps());
    }

    #[test]
    fn parse_example_shuffle_closure() {
        let expected = Behavior::star(Behavior::fork(Behavior::alt(
            Behavior::seq(x(), y()),
            Behavior::seq(y(), x()),
        )));
        assert_eq!(parse("F(x.y + y.x)*").unwrap(), expected);
        assert_eq!(parse("F( x y+y  x )*").unwrap(), expected);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse("x.(").unwrap_err(),
            ParseError::Syntax {
                offset: 3,
                message: "expected an expression, found end of input".into()
            }
        );
        assert_eq!(parse("x.(").unwrap_err().offset(), Some(3));
        assert_eq!(parse("(x").unwrap_err(), ParseError::Unclosed { offset: 2 });
        assert!(matches!(parse("x)"), Err(ParseError::Syntax { offset: 1, .. })));
        assert_eq!(parse("   ").unwrap_err(), ParseError::EmptyInput);
        assert!(matches!(parse("F x"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("x + "), Err(ParseError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("x - y"), Err(ParseError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("x + y.x*").unwrap(),
            Behavior::alt(x(), Behavior::seq(y(), Behavior::star(x())))
        );
        assert_eq!(parse("x + y + x").unwrap(), Behavior::alt(x(), Behavior::alt(y(), x())));
        assert_eq!(parse("x y x").unwrap(), Behavior::seq(x(), Behavior::seq(y(), x())));
        assert_eq!(parse("x**").unwrap(), Behavior::star(Behavior::star(x())));
    }

    #[test]
    fn multi_character_symbols() {
        let r = parse("send_a recv1").unwrap();
        assert_eq!(r, Behavior::seq(Behavior::sym("send_a"), Behavior::sym("recv1")));
        assert!(Symbol::try_new("F").is_err());
        assert!(Symbol::try_new("a b").is_err());
        assert!(Symbol::try_new("").is_err());
    }

    #[test]
    fn render_cases() {
        assert_eq!(Behavior::empty().render(), "0");
        assert_eq!(
            Behavior::star(Behavior::fork(Behavior::seq(x(), y()))).render(),
            "F(x.y)*"
        );
        assert_eq!(
            Behavior::alt(x(), Behavior::seq(y(), Behavior::sym("z"))).render(),
            "x + y.z"
        );
        assert_eq!(Behavior::alt(Behavior::alt(x(), y()), x()).render(), "(x + y) + x");
        assert_eq!(Behavior::seq(Behavior::seq(x(), y()), x()).render(), "(x.y).x");
        assert_eq!(Behavior::star(Behavior::seq(x(), y())).render(), "(x.y)*");
        assert_eq!(Behavior::seq(Behavior::alt(x(), y()), x()).render(), "(x + y).x");
    }

    #[test]
    fn size_metric() {
        assert_eq!(Behavior::empty().size(), 0);
        assert_eq!(x().size(), 1);
        assert_eq!(Behavior::seq(x(), Behavior::star(y())).size(), 4);
    }

    #[test]
    fn order() {
        assert_eq!(x().cmp(&x()), Ordering::Equal);
        assert_eq!(Behavior::empty().cmp(&x()), Ordering::Less);
        assert_eq!(Behavior::fork(x()).cmp(&Behavior::fork(y())), Ordering::Less);
        // same size: rank decides
        assert!(Behavior::fork(x()) < Behavior::star(x()));
        assert!(Behavior::seq(x(), y()) < Behavior::alt(x(), y()));
        // size dominates rank
        assert!(Behavior::alt(x(), y()) < Behavior::seq(x(), Behavior::star(y())));
    }

    #[test]
    fn alphabet_collects_sorted_symbols() {
        assert!(Behavior::empty().alphabet().is_empty());
        let a = parse("F(y.x)").unwrap().alphabet();
        assert_eq!(a.symbols(), &[Symbol::new("x"), Symbol::new("y")]);
        assert_eq!(parse("x + x*").unwrap().alphabet().symbols(), &[Symbol::new("x")]);
    }
}
