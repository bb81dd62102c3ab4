//! Abstract syntax of parameterized regular expressions.
//!
//! An expression is an ordinary regular expression whose atoms are letters of
//! a declared [`Alphabet`] or variables (`$name`). The concrete grammar is
//!
//! ```text
//! expr := alt
//! alt  := cat ("|" cat)*
//! cat  := rep+
//! rep  := atom ("*" | "{" DIGITS "}")*
//! atom := LETTER | "$" IDENT | "_" | "@" | "(" expr ")"
//! ```
//!
//! `_` is the empty word and `@` the empty language. Whitespace between tokens
//! is ignored. `{n}` is expanded into an n-fold concatenation while parsing, so
//! the tree only ever contains the seven constructors of [`ParamRegex`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characters with a meaning in the expression grammar.
pub const RESERVED: &[char] = &['(', ')', '|', '*', '$', '_', '@', '{', '}'];

pub fn is_reserved(c: char) -> bool {
    RESERVED.contains(&c) || c.is_whitespace()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(char);

impl Letter {
    pub fn new(c: char) -> Result<Self> {
        if is_reserved(c) {
            return Err(Error::ReservedLetter(c));
        }
        Ok(Letter(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A word over the alphabet. The empty vector is ε.
pub type Word = Vec<Letter>;

/// Renders a word, using `_` for the empty word.
pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        "_".to_string()
    } else {
        w.iter().map(|l| l.0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarName(Arc<str>);

impl VarName {
    pub fn new(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Invalid(format!("invalid variable name {name:?}")));
        }
        Ok(VarName(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite alphabet. Iteration order is the declaration order and drives
/// every enumeration and tie-break in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for c in letters {
            let l = Letter::new(c)?;
            if out.contains(&l) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {c:?}")));
            }
            out.push(l);
        }
        if out.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet { letters: out })
    }

    /// Alphabet whose letters are the characters of `s`, in order.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.letters.contains(&l)
    }

    pub fn index_of(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|&x| x == l)
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.letters.iter().copied().find(|l| l.0 == c)
    }

    pub fn first(&self) -> Letter {
        self.letters[0]
    }

    /// Parses a word; `_` (or the empty string) is ε.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        if s == "_" {
            return Ok(Vec::new());
        }
        s.chars()
            .enumerate()
            .map(|(pos, c)| {
                self.letter(c)
                    .ok_or(Error::LetterNotInAlphabet { letter: c, pos })
            })
            .collect()
    }

    /// Shortlex order: by length, then lexicographically by declaration order.
    pub fn cmp_shortlex(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = self.index_of(*x).cmp(&self.index_of(*y));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Returns a copy extended with one letter not yet present.
    pub fn with_fresh_letter(&self) -> (Alphabet, Letter) {
        let fresh = ('a'..='z')
            .chain('A'..='Z')
            .chain('0'..='9')
            .chain('\u{3b1}'..='\u{3c9}')
            .map(Letter)
            .find(|l| !self.contains(*l))
            .expect("alphabet exhausts the fresh-letter pool");
        let mut letters = self.letters.clone();
        letters.push(fresh);
        (Alphabet { letters }, fresh)
    }

    /// All words of exactly length `n`, in lexicographic order.
    pub fn words_of_len(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.letters.iter().map(move |&l| {
                        let mut w2 = w.clone();
                        w2.push(l);
                        w2
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length at most `n`, in shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.words_of_len(k)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.0)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamRegex {
    EmptySet,
    Epsilon,
    Lit(Letter),
    Var(VarName),
    Concat(Box<ParamRegex>, Box<ParamRegex>),
    Union(Box<ParamRegex>, Box<ParamRegex>),
    Star(Box<ParamRegex>),
}

impl ParamRegex {
    pub fn lit(l: Letter) -> Self {
        ParamRegex::Lit(l)
    }

    pub fn var(name: &str) -> Self {
        ParamRegex::Var(VarName::new(name).expect("valid variable name"))
    }

    pub fn concat(a: ParamRegex, b: ParamRegex) -> Self {
        ParamRegex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: ParamRegex, b: ParamRegex) -> Self {
        ParamRegex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: ParamRegex) -> Self {
        ParamRegex::Star(Box::new(a))
    }

    /// Right-nested concatenation; the empty list is ε.
    pub fn concat_all(parts: impl IntoIterator<Item = ParamRegex>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return ParamRegex::Epsilon;
        };
        while let Some(p) = parts.pop() {
            acc = ParamRegex::concat(p, acc);
        }
        acc
    }

    /// Right-nested union; the empty list is ∅.
    pub fn union_all(parts: impl IntoIterator<Item = ParamRegex>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return ParamRegex::EmptySet;
        };
        while let Some(p) = parts.pop() {
            acc = ParamRegex::union(p, acc);
        }
        acc
    }

    /// The word `w` as a concatenation of letters.
    pub fn word(w: &[Letter]) -> Self {
        Self::concat_all(w.iter().map(|&l| ParamRegex::Lit(l)))
    }

    /// `n`-fold concatenation of `self`; `n = 0` is ε.
    pub fn repeat(&self, n: usize) -> Self {
        Self::concat_all(std::iter::repeat_n(self.clone(), n))
    }

    /// Number of nodes in the parse tree.
    pub fn size(&self) -> usize {
        match self {
            ParamRegex::EmptySet | ParamRegex::Epsilon | ParamRegex::Lit(_) | ParamRegex::Var(_) => 1,
            ParamRegex::Concat(a, b) | ParamRegex::Union(a, b) => 1 + a.size() + b.size(),
            ParamRegex::Star(a) => 1 + a.size(),
        }
    }

    /// Distinct variables in first-occurrence order.
    pub fn variables(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&VarName)) {
        match self {
            ParamRegex::Var(v) => f(v),
            ParamRegex::Concat(a, b) | ParamRegex::Union(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            ParamRegex::Star(a) => a.visit_vars(f),
            _ => {}
        }
    }

    fn var_occurrences(&self) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |_| n += 1);
        n
    }

    /// True iff no variable occurs twice.
    pub fn is_simple(&self) -> bool {
        self.var_occurrences() == self.variables().len()
    }

    pub fn star_height(&self) -> usize {
        match self {
            ParamRegex::Concat(a, b) | ParamRegex::Union(a, b) => a.star_height().max(b.star_height()),
            ParamRegex::Star(a) => 1 + a.star_height(),
            _ => 0,
        }
    }

    pub fn is_variable_free(&self) -> bool {
        self.var_occurrences() == 0
    }

    /// Letters mentioned by the expression, in first-occurrence order.
    pub fn letters(&self) -> Vec<Letter> {
        fn go(e: &ParamRegex, out: &mut Vec<Letter>) {
            match e {
                ParamRegex::Lit(l) => {
                    if !out.contains(l) {
                        out.push(*l)
                    }
                }
                ParamRegex::Concat(a, b) | ParamRegex::Union(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                ParamRegex::Star(a) => go(a, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

/// Parses `text` over `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<ParamRegex> {
    let mut p = Parser { chars: text.char_indices().collect(), idx: 0, alphabet, text_len: text.len() };
    let e = p.alt()?;
    p.skip_ws();
    if let Some(&(pos, c)) = p.chars.get(p.idx) {
        return Err(Error::Syntax { pos, message: format!("unexpected {c:?}") });
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    alphabet: &'a Alphabet,
    text_len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.idx), Some((_, c)) if c.is_whitespace()) {
            self.idx += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.idx).copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.text_len)
    }

    fn alt(&mut self) -> Result<ParamRegex> {
        let mut parts = vec![self.cat()?];
        while let Some((_, '|')) = self.peek() {
            self.idx += 1;
            parts.push(self.cat()?);
        }
        Ok(ParamRegex::union_all(parts))
    }

    fn cat(&mut self) -> Result<ParamRegex> {
        let mut parts = Vec::new();
        while let Some((_, c)) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.rep()?);
        }
        if parts.is_empty() {
            let pos = self.pos();
            return Err(Error::Syntax { pos, message: "expected an expression".into() });
        }
        Ok(ParamRegex::concat_all(parts))
    }

    fn rep(&mut self) -> Result<ParamRegex> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some((_, '*')) => {
                    self.idx += 1;
                    e = ParamRegex::star(e);
                }
                Some((pos, '{')) => {
                    self.idx += 1;
                    let start = self.idx;
                    while matches!(self.chars.get(self.idx), Some((_, c)) if c.is_ascii_digit()) {
                        self.idx += 1;
                    }
                    let digits: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
                    let n: usize = digits.parse().map_err(|_| Error::Syntax {
                        pos,
                        message: "expected a repetition count".into(),
                    })?;
                    match self.chars.get(self.idx) {
                        Some((_, '}')) => self.idx += 1,
                        _ => {
                            let pos = self.pos();
                            return Err(Error::Syntax { pos, message: "expected '}'".into() });
                        }
                    }
                    e = e.repeat(n);
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<ParamRegex> {
        let Some((pos, c)) = self.peek() else {
            return Err(Error::Syntax { pos: self.text_len, message: "unexpected end of input".into() });
        };
        self.idx += 1;
        match c {
            '_' => Ok(ParamRegex::Epsilon),
            '@' => Ok(ParamRegex::EmptySet),
            '(' => {
                let e = self.alt()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.idx += 1;
                        Ok(e)
                    }
                    _ => {
                        let pos = self.pos();
                        Err(Error::Syntax { pos, message: "expected ')'".into() })
                    }
                }
            }
            '$' => {
                let start = self.idx;
                match self.chars.get(self.idx) {
                    Some((_, c)) if c.is_ascii_alphabetic() => self.idx += 1,
                    _ => {
                        return Err(Error::Syntax { pos, message: "expected a variable name after '$'".into() })
                    }
                }
                while matches!(self.chars.get(self.idx), Some((_, c)) if c.is_ascii_alphanumeric() || *c == '_') {
                    self.idx += 1;
                }
                let name: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
                Ok(ParamRegex::Var(VarName::new(&name)?))
            }
            ')' | '|' | '*' | '{' | '}' => Err(Error::Syntax { pos, message: format!("unexpected {c:?}") }),
            c => self
                .alphabet
                .letter(c)
                .map(ParamRegex::Lit)
                .ok_or(Error::LetterNotInAlphabet { letter: c, pos }),
        }
    }
}

/// Printing precedence: union < concatenation < star.
fn prec(e: &ParamRegex) -> u8 {
    match e {
        ParamRegex::Union(..) => 0,
        ParamRegex::Concat(..) => 1,
        ParamRegex::Star(..) => 2,
        _ => 3,
    }
}

enum Tok {
    Sym(char),
    Var(VarName),
}

fn tokens(e: &ParamRegex, out: &mut Vec<Tok>) {
    let wrapped = |inner: &ParamRegex, parens: bool, out: &mut Vec<Tok>| {
        if parens {
            out.push(Tok::Sym('('));
        }
        tokens(inner, out);
        if parens {
            out.push(Tok::Sym(')'));
        }
    };
    match e {
        ParamRegex::EmptySet => out.push(Tok::Sym('@')),
        ParamRegex::Epsilon => out.push(Tok::Sym('_')),
        ParamRegex::Lit(l) => out.push(Tok::Sym(l.0)),
        ParamRegex::Var(v) => out.push(Tok::Var(v.clone())),
        // Both operators re-parse right-nested, so a left operand of the same
        // operator needs parentheses.
        ParamRegex::Union(a, b) => {
            wrapped(a, prec(a) <= 0, out);
            out.push(Tok::Sym('|'));
            wrapped(b, false, out);
        }
        ParamRegex::Concat(a, b) => {
            wrapped(a, prec(a) <= 1, out);
            wrapped(b, prec(b) < 1, out);
        }
        ParamRegex::Star(a) => {
            wrapped(a, prec(a) < 2, out);
            out.push(Tok::Sym('*'));
        }
    }
}

/// Prints `e` with minimal parentheses; `parse(print(e))` is structurally `e`.
pub fn print(e: &ParamRegex) -> String {
    let mut toks = Vec::new();
    tokens(e, &mut toks);
    let mut s = String::new();
    let mut after_var = false;
    for t in toks {
        match t {
            Tok::Sym(c) => {
                // A letter that could extend an identifier must not touch a
                // preceding variable.
                if after_var && (c.is_ascii_alphanumeric() || c == '_') {
                    s.push(' ');
                }
                s.push(c);
                after_var = false;
            }
            Tok::Var(v) => {
                s.push('$');
                s.push_str(v.as_str());
                after_var = true;
            }
        }
    }
    s
}

impl fmt::Display for ParamRegex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}
