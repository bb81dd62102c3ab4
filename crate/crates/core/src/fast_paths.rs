//! Specialized decision procedures for restricted classes of expressions.
//!
//! * fixed-word □-membership for simple expressions,
//! * fixed-word ◇-membership by a lazy search over (state, partial valuation),
//! * ◇-membership for simple expressions of star height 0 (variables as wildcards),
//! * □-nonemptiness for star height 0 by candidate filtering.

use std::collections::{HashMap, HashSet};

use crate::automata::Label;
use crate::error::{Error, Result};
use crate::semantics::{Semantics, Solver};
use crate::syntax::{Alphabet, Letter, ParamRegex, VarName, Word};
use crate::valuations::{enumerate_finite_domain, Valuation};

/// Finite set of words, sorted shortlex without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordSet {
    words: Vec<Word>,
}

impl WordSet {
    pub fn new(words: impl IntoIterator<Item = Word>, alphabet: &Alphabet) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            check_word(w, alphabet)?;
        }
        words.sort_by(|a, b| alphabet.cmp_shortlex(a, b));
        words.dedup();
        Ok(WordSet { words })
    }

    pub fn singleton(w: &[Letter], alphabet: &Alphabet) -> Result<Self> {
        Self::new([w.to_vec()], alphabet)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Node of the ◇ fixed-word search: an automaton state and the letters
/// bound so far (by variable index, `None` = unbound).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub state: usize,
    pub partial: Vec<Option<Letter>>,
}

fn check_word(w: &[Letter], alphabet: &Alphabet) -> Result<()> {
    for (pos, l) in w.iter().enumerate() {
        if !alphabet.contains(*l) {
            return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos });
        }
    }
    Ok(())
}

fn check_expr(e: &ParamRegex, alphabet: &Alphabet) -> Result<()> {
    for l in e.letters() {
        if !alphabet.contains(l) {
            return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos: 0 });
        }
    }
    Ok(())
}

// Bitsets over the factors of the query set.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &b)| (0..64).filter(move |i| b >> i & 1 == 1).map(move |i| k * 64 + i))
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|b| b.count_ones()).sum()
    }

    fn union(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn disjoint(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == 0)
    }
}

/// Factors of the query words, with ε at index 0 and a concatenation table.
struct Factors {
    n: usize,
    index: HashMap<Word, usize>,
    cat: Vec<Vec<Option<usize>>>,
}

impl Factors {
    fn of(ws: &WordSet) -> Self {
        let mut list: Vec<Word> = vec![Vec::new()];
        let mut index: HashMap<Word, usize> = HashMap::from([(Vec::new(), 0)]);
        for w in ws.words() {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    let f = w[i..j].to_vec();
                    if !index.contains_key(&f) {
                        index.insert(f.clone(), list.len());
                        list.push(f);
                    }
                }
            }
        }
        let n = list.len();
        let cat = list
            .iter()
            .map(|u| {
                list.iter()
                    .map(|v| {
                        let mut uv = u.clone();
                        uv.extend_from_slice(v);
                        index.get(&uv).copied()
                    })
                    .collect()
            })
            .collect();
        Factors { n, index, cat }
    }

    fn singleton(&self, w: &[Letter]) -> Bits {
        let mut b = Bits::empty(self.n);
        if let Some(&i) = self.index.get(w) {
            b.set(i);
        }
        b
    }

    fn concat(&self, x: &Bits, y: &Bits) -> Bits {
        let mut out = Bits::empty(self.n);
        for i in x.ones() {
            for j in y.ones() {
                if let Some(k) = self.cat[i][j] {
                    out.set(k);
                }
            }
        }
        out
    }

    fn star(&self, x: &Bits) -> Bits {
        let mut out = Bits::empty(self.n);
        out.set(0);
        let mut stack = vec![0];
        let xs: Vec<usize> = x.ones().collect();
        while let Some(s) = stack.pop() {
            for &t in &xs {
                if let Some(k) = self.cat[s][t] {
                    if !out.get(k) {
                        out.set(k);
                        stack.push(k);
                    }
                }
            }
        }
        out
    }
}

/// Keeps only the inclusion-minimal sets.
fn minimize(mut fam: Vec<Bits>) -> Vec<Bits> {
    fam.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.0.cmp(&b.0)));
    fam.dedup();
    let mut out: Vec<Bits> = Vec::new();
    for t in fam {
        if !out.iter().any(|m| m.subset_of(&t)) {
            out.push(t);
        }
    }
    out
}

/// `(f₁|…|fᵢ*|…)*` → `(f₁|…|fᵢ|…)*`, applied everywhere.
fn drop_inner_stars(e: &ParamRegex) -> ParamRegex {
    fn strip(e: &ParamRegex) -> ParamRegex {
        match e {
            ParamRegex::Star(a) => strip(a),
            ParamRegex::Union(a, b) => ParamRegex::union(strip(a), strip(b)),
            other => other.clone(),
        }
    }
    match e {
        ParamRegex::Star(a) => ParamRegex::star(strip(&drop_inner_stars(a))),
        ParamRegex::Concat(a, b) => ParamRegex::concat(drop_inner_stars(a), drop_inner_stars(b)),
        ParamRegex::Union(a, b) => ParamRegex::union(drop_inner_stars(a), drop_inner_stars(b)),
        other => other.clone(),
    }
}

/// Minimal sets `L(ν(e)) ∩ F` over all valuations ν, where F is the
/// factor-closed set of query factors. Since every variable of a simple
/// expression occurs once, subexpressions choose their valuations
/// independently, and all operators are monotone, so minimal sets suffice.
fn traces(e: &ParamRegex, f: &Factors, alphabet: &Alphabet) -> Vec<Bits> {
    match e {
        ParamRegex::EmptySet => vec![Bits::empty(f.n)],
        ParamRegex::Epsilon => vec![f.singleton(&[])],
        ParamRegex::Lit(a) => vec![f.singleton(&[*a])],
        ParamRegex::Var(_) => minimize(alphabet.letters().iter().map(|c| f.singleton(&[*c])).collect()),
        ParamRegex::Union(a, b) => {
            let (ta, tb) = (traces(a, f, alphabet), traces(b, f, alphabet));
            minimize(ta.iter().flat_map(|x| tb.iter().map(move |y| x.union(y))).collect())
        }
        ParamRegex::Concat(a, b) => {
            let (ta, tb) = (traces(a, f, alphabet), traces(b, f, alphabet));
            minimize(ta.iter().flat_map(|x| tb.iter().map(move |y| f.concat(x, y))).collect())
        }
        ParamRegex::Star(a) => minimize(traces(a, f, alphabet).iter().map(|x| f.star(x)).collect()),
    }
}

/// Whether some valuation ν of the simple expression `e` has
/// `L(ν(e)) ∩ ws = ∅`.
pub fn check_simple_memb_box(e: &ParamRegex, ws: &WordSet, alphabet: &Alphabet) -> Result<bool> {
    if !e.is_simple() {
        return Err(Error::NotSimple);
    }
    check_expr(e, alphabet)?;
    let f = Factors::of(ws);
    let mut query = Bits::empty(f.n);
    for w in ws.words() {
        query.set(f.index[w]);
    }
    let e = drop_inner_stars(e);
    Ok(traces(&e, &f, alphabet).iter().any(|t| t.disjoint(&query)))
}

/// □-membership of a fixed word for simple expressions.
pub fn membership_box_fixed_word(e: &ParamRegex, w: &[Letter], alphabet: &Alphabet) -> Result<bool> {
    let ws = WordSet::singleton(w, alphabet)?;
    Ok(!check_simple_memb_box(e, &ws, alphabet)?)
}

/// ◇-membership of a fixed word. Explores (position, state, partial
/// valuation) triples on the fly; on success the valuation is completed
/// with the first alphabet letter.
pub fn membership_diamond_fixed_word(
    e: &ParamRegex,
    w: &[Letter],
    alphabet: &Alphabet,
) -> Result<(bool, Option<Valuation>)> {
    check_word(w, alphabet)?;
    check_expr(e, alphabet)?;
    let a = crate::automata::Nfa::from_regex(e, alphabet).remove_epsilon();
    let vars = e.variables();
    let var_index: HashMap<&VarName, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let bound = search_bound(a.num_states(), alphabet.len(), w.len().min(vars.len()));

    let start = SearchState { state: a.initial(), partial: vec![None; vars.len()] };
    let mut level = vec![start];
    for (pos, &c) in w.iter().enumerate() {
        let mut seen: HashSet<SearchState> = HashSet::new();
        let mut next = Vec::new();
        for s in &level {
            for (label, to) in a.transitions_from(s.state) {
                let partial = match label {
                    Label::Letter(l) if *l == c => s.partial.clone(),
                    Label::Var(x) => {
                        let i = var_index[x];
                        match s.partial[i] {
                            Some(l) if l != c => continue,
                            Some(_) => s.partial.clone(),
                            None => {
                                let mut p = s.partial.clone();
                                p[i] = Some(c);
                                p
                            }
                        }
                    }
                    _ => continue,
                };
                let n = SearchState { state: *to, partial };
                if seen.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        assert!(seen.len() <= bound, "search space exceeded at position {pos}");
        level = next;
    }
    match level.into_iter().find(|s| a.is_final(s.state)) {
        Some(s) => {
            let first = alphabet.first();
            let entries = vars.into_iter().zip(s.partial).map(|(v, l)| (v, vec![l.unwrap_or(first)])).collect();
            Ok((true, Some(Valuation::new(entries))))
        }
        None => Ok((false, None)),
    }
}

fn search_bound(states: usize, letters: usize, vars: usize) -> usize {
    (letters + 1).checked_pow(vars as u32).and_then(|p| p.checked_mul(states)).unwrap_or(usize::MAX)
}

/// ◇-membership for simple expressions without stars. Each variable
/// occurs once, so a variable transition may read any letter.
pub fn membership_diamond_simple_sh0(e: &ParamRegex, w: &[Letter], alphabet: &Alphabet) -> Result<bool> {
    if !e.is_simple() || e.star_height() > 0 {
        return Err(Error::PreconditionViolated("expression must be simple and star-free".into()));
    }
    check_word(w, alphabet)?;
    check_expr(e, alphabet)?;
    let a = crate::automata::Nfa::from_regex(e, alphabet).remove_epsilon();
    let mut cur = vec![false; a.num_states()];
    cur[a.initial()] = true;
    for &c in w {
        let mut next = vec![false; a.num_states()];
        for (q, _) in cur.iter().enumerate().filter(|(_, on)| **on) {
            for (label, to) in a.transitions_from(q) {
                match label {
                    Label::Letter(l) if *l == c => next[*to] = true,
                    Label::Var(_) => next[*to] = true,
                    _ => {}
                }
            }
        }
        cur = next;
    }
    Ok(cur.iter().enumerate().any(|(q, on)| *on && a.is_final(q)))
}

/// □-nonemptiness for star height 0. Every □-word lies in `L(ν₀(e))` for
/// the first valuation ν₀, a finite language; its words are tried in
/// shortlex order.
pub fn nonemptiness_box_sh0(e: &ParamRegex, solver: &Solver) -> Result<(bool, Option<Word>)> {
    if e.star_height() > 0 {
        return Err(Error::PreconditionViolated("expression must be star-free".into()));
    }
    let alphabet = solver.alphabet();
    check_expr(e, alphabet)?;
    let first = alphabet.first();
    let nu0 = Valuation::new(e.variables().into_iter().map(|v| (v, vec![first])).collect());
    let a = crate::automata::Nfa::from_regex(&nu0.apply_to_regex(e)?, alphabet).normalize().trim();
    let mut candidates = enumerate_finite_domain(&a, solver.limits().max_words)?;
    candidates.sort_by(|x, y| alphabet.cmp_shortlex(x, y));
    for w in candidates {
        if solver.membership(e, &w, Semantics::Certainty)?.answer {
            return Ok((true, Some(w)));
        }
    }
    Ok((false, None))
}
