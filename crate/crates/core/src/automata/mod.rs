//! Nondeterministic automata over letters and variables.
//!
//! An [`Nfa`] may carry four kinds of labels: letters, variables (for the
//! automaton of a parameterized expression), ε, and whole words (the
//! "extended" transitions produced by word-valued substitutions). Most
//! operations require a plain automaton (letters only); callers normalize
//! with [`Nfa::remove_epsilon`] and [`Nfa::expand_extended`] first.

mod dfa;
mod export;

use std::collections::{HashMap, VecDeque};

pub use dfa::Dfa;
pub use export::{JsonAutomaton, JsonLabel};

use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Letter, ParamRegex, VarName, Word};

pub type StateId = usize;

/// Default cap on reachable subsets and product states.
pub const DEFAULT_STATE_CAP: usize = 65_536;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Letter(Letter),
    Var(VarName),
    Eps,
    /// Nonempty word; only in extended automata.
    Word(Vec<Letter>),
}

/// One input symbol of a word over Σ ∪ V.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Letter(Letter),
    Var(VarName),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: StateId,
    finals: Vec<bool>,
    trans: Vec<Vec<(Label, StateId)>>,
}

impl Nfa {
    /// Automaton with `n` states and no transitions.
    pub fn with_states(alphabet: Alphabet, n: usize, initial: StateId) -> Self {
        assert!(initial < n.max(1));
        Nfa { alphabet, initial, finals: vec![false; n.max(1)], trans: vec![Vec::new(); n.max(1)] }
    }

    /// One non-final state: the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::with_states(alphabet, 1, 0)
    }

    /// Accepts every word over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut a = Self::with_states(alphabet, 1, 0);
        a.finals[0] = true;
        for l in a.alphabet.letters().to_vec() {
            a.add_transition(0, Label::Letter(l), 0);
        }
        a
    }

    /// Builds from explicit parts, normalizing several initial states into a
    /// fresh unique one.
    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        initials: &[StateId],
        finals: &[StateId],
        transitions: impl IntoIterator<Item = (StateId, Label, StateId)>,
    ) -> Result<Self> {
        let bad = |s: StateId| Error::Invalid(format!("state {s} out of range (automaton has {states} states)"));
        if states == 0 || initials.is_empty() {
            return Err(Error::Invalid("automaton needs at least one state and one initial state".into()));
        }
        let (initial, total) = if initials.len() == 1 { (initials[0], states) } else { (states, states + 1) };
        if initial >= total {
            return Err(bad(initial));
        }
        let mut a = Self::with_states(alphabet, total, initial);
        for &f in finals {
            if f >= states {
                return Err(bad(f));
            }
            a.finals[f] = true;
        }
        for (p, l, q) in transitions {
            if p >= states {
                return Err(bad(p));
            }
            if q >= states {
                return Err(bad(q));
            }
            if let Label::Word(w) = &l {
                if w.is_empty() {
                    return Err(Error::Invalid("word labels must be nonempty".into()));
                }
            }
            if let Label::Letter(x) = &l {
                if !a.alphabet.contains(*x) {
                    return Err(Error::Invalid(format!("letter {x} is not in the alphabet")));
                }
            }
            a.add_transition(p, l, q);
        }
        if initials.len() > 1 {
            for &i in initials {
                if i >= states {
                    return Err(bad(i));
                }
                a.add_transition(initial, Label::Eps, i);
            }
        }
        Ok(a)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i)
    }

    pub fn transitions_from(&self, s: StateId) -> &[(Label, StateId)] {
        &self.trans[s]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Label, StateId)> + '_ {
        self.trans.iter().enumerate().flat_map(|(p, ts)| ts.iter().map(move |(l, q)| (p, l, *q)))
    }

    pub fn add_state(&mut self) -> StateId {
        self.finals.push(false);
        self.trans.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn set_final(&mut self, s: StateId, f: bool) {
        self.finals[s] = f;
    }

    pub fn add_transition(&mut self, from: StateId, label: Label, to: StateId) {
        if !self.trans[from].iter().any(|(l, q)| *q == to && *l == label) {
            self.trans[from].push((label, to));
        }
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions().any(|(_, l, _)| *l == Label::Eps)
    }

    pub fn has_variables(&self) -> bool {
        self.transitions().any(|(_, l, _)| matches!(l, Label::Var(_)))
    }

    pub fn has_words(&self) -> bool {
        self.transitions().any(|(_, l, _)| matches!(l, Label::Word(_)))
    }

    /// Letters and ε only.
    pub fn is_plain(&self) -> bool {
        self.transitions().all(|(_, l, _)| matches!(l, Label::Letter(_) | Label::Eps))
    }

    /// Rewrites every label with `f`; `Ok(None)` drops the transition.
    /// States are unchanged.
    pub fn relabel(&self, mut f: impl FnMut(&Label) -> Result<Option<Label>>) -> Result<Nfa> {
        let mut out = Nfa::with_states(self.alphabet.clone(), self.num_states(), self.initial);
        out.finals = self.finals.clone();
        for (p, l, q) in self.transitions() {
            if let Some(l2) = f(l)? {
                out.add_transition(p, l2, q);
            }
        }
        Ok(out)
    }

    /// Thompson construction. Variables become transition labels.
    pub fn from_regex(e: &ParamRegex, alphabet: &Alphabet) -> Nfa {
        let mut a = Nfa { alphabet: alphabet.clone(), initial: 0, finals: Vec::new(), trans: Vec::new() };
        let (s, t) = thompson(&mut a, e);
        a.initial = s;
        a.finals[t] = true;
        a
    }

    /// ε-closure of every state, as sorted state lists.
    fn eps_closures(&self) -> Vec<Vec<StateId>> {
        let n = self.num_states();
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(p) = stack.pop() {
                    for (l, q) in &self.trans[p] {
                        if *l == Label::Eps && !seen[*q] {
                            seen[*q] = true;
                            stack.push(*q);
                        }
                    }
                }
                (0..n).filter(|&q| seen[q]).collect()
            })
            .collect()
    }

    /// Language-equivalent automaton without ε labels, restricted to states
    /// reachable from the initial state.
    pub fn remove_epsilon(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.reachable();
        }
        let closures = self.eps_closures();
        let mut out = Nfa::with_states(self.alphabet.clone(), self.num_states(), self.initial);
        for (p, cl) in closures.iter().enumerate() {
            for &q in cl {
                if self.finals[q] {
                    out.finals[p] = true;
                }
                for (l, r) in &self.trans[q] {
                    if *l != Label::Eps {
                        out.add_transition(p, l.clone(), *r);
                    }
                }
            }
        }
        out.reachable()
    }

    /// Replaces every `Word(a₁…aₘ)` transition by a chain of m letter
    /// transitions through m−1 fresh states.
    pub fn expand_extended(&self) -> Nfa {
        let mut out = Nfa::with_states(self.alphabet.clone(), self.num_states(), self.initial);
        out.finals = self.finals.clone();
        for (p, l, q) in self.transitions() {
            match l {
                Label::Word(w) => {
                    let mut cur = p;
                    for (i, &x) in w.iter().enumerate() {
                        let next = if i + 1 == w.len() { q } else { out.add_state() };
                        out.add_transition(cur, Label::Letter(x), next);
                        cur = next;
                    }
                }
                other => out.add_transition(p, other.clone(), q),
            }
        }
        out
    }

    /// Letters, ε, or words only: expands words and removes ε.
    pub fn normalize(&self) -> Nfa {
        let a = if self.has_words() { self.expand_extended() } else { self.clone() };
        a.remove_epsilon()
    }

    /// Keeps states in `keep`, renumbering in increasing order. The initial
    /// state is always kept.
    fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut n = 0;
        for s in 0..self.num_states() {
            if keep[s] || s == self.initial {
                map[s] = n;
                n += 1;
            }
        }
        let mut out = Nfa::with_states(self.alphabet.clone(), n, map[self.initial]);
        for s in 0..self.num_states() {
            if map[s] == usize::MAX {
                continue;
            }
            out.finals[map[s]] = self.finals[s];
            for (l, q) in &self.trans[s] {
                if map[*q] != usize::MAX {
                    out.trans[map[s]].push((l.clone(), map[*q]));
                }
            }
        }
        out
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(p) = stack.pop() {
            for (_, q) in &self.trans[p] {
                if !seen[*q] {
                    seen[*q] = true;
                    stack.push(*q);
                }
            }
        }
        seen
    }

    fn co_reachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<_> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Drops states unreachable from the initial state.
    pub fn reachable(&self) -> Nfa {
        self.restrict(&self.forward_reachable())
    }

    /// Keeps only states that are reachable and co-reachable (plus the
    /// initial state).
    pub fn trim(&self) -> Nfa {
        let f = self.forward_reachable();
        let b = self.co_reachable();
        let keep: Vec<bool> = f.iter().zip(&b).map(|(x, y)| *x && *y).collect();
        self.restrict(&keep)
    }

    /// True iff the transition graph has a cycle among the kept states.
    pub fn has_cycle(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.num_states();
        let mut color = vec![0u8; n];
        for root in 0..n {
            if color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (p, ref mut i)) = stack.last_mut() {
                if let Some((_, q)) = self.trans[p].get(*i) {
                    *i += 1;
                    match color[*q] {
                        0 => {
                            color[*q] = 1;
                            stack.push((*q, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    color[p] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    /// Per-state, per-letter successor lists. Requires an ε-free, plain automaton.
    pub(crate) fn letter_table(&self) -> Vec<Vec<Vec<StateId>>> {
        let k = self.alphabet.len();
        let mut table = vec![vec![Vec::new(); k]; self.num_states()];
        for (p, l, q) in self.transitions() {
            match l {
                Label::Letter(x) => {
                    let i = self.alphabet.index_of(*x).expect("letter in alphabet");
                    if !table[p][i].contains(&q) {
                        table[p][i].push(q);
                    }
                }
                other => panic!("letter_table requires a plain ε-free automaton, found {other:?}"),
            }
        }
        table
    }

    fn check_plain_eps_free(&self, op: &str) -> Result<()> {
        if self.transitions().all(|(_, l, _)| matches!(l, Label::Letter(_))) {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!("{op} requires an ε-free automaton over letters only")))
        }
    }

    /// Synchronous product; `L(result) = L(self) ∩ L(other)`.
    pub fn product(&self, other: &Nfa) -> Result<Nfa> {
        self.product_capped(other, usize::MAX)
    }

    pub fn product_capped(&self, other: &Nfa, cap: usize) -> Result<Nfa> {
        self.check_plain_eps_free("product")?;
        other.check_plain_eps_free("product")?;
        if self.alphabet != other.alphabet {
            return Err(Error::PreconditionViolated("product of automata over different alphabets".into()));
        }
        let ta = self.letter_table();
        let tb = other.letter_table();
        let k = self.alphabet.len();
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut out = Nfa::with_states(self.alphabet.clone(), 1, 0);
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            out.finals[i] = self.finals[p] && other.finals[q];
            for x in 0..k {
                for &p2 in &ta[p][x] {
                    for &q2 in &tb[q][x] {
                        let id = match index.get(&(p2, q2)) {
                            Some(&id) => id,
                            None => {
                                if pairs.len() >= cap {
                                    return Err(Error::StateCapExceeded { cap });
                                }
                                let id = out.add_state();
                                index.insert((p2, q2), id);
                                pairs.push((p2, q2));
                                id
                            }
                        };
                        out.trans[i].push((Label::Letter(self.alphabet.letters()[x]), id));
                    }
                }
            }
            i += 1;
        }
        Ok(out.trim())
    }

    /// Nondeterministic choice between all automata. Empty input gives ∅.
    pub fn union_all(automata: &[Nfa], alphabet: &Alphabet) -> Result<Nfa> {
        let mut out = Nfa::with_states(alphabet.clone(), 1, 0);
        for a in automata {
            if a.has_variables() {
                return Err(Error::PreconditionViolated("union of automata with variable labels".into()));
            }
            if a.alphabet != *alphabet {
                return Err(Error::PreconditionViolated("union of automata over different alphabets".into()));
            }
            let offset = out.num_states();
            for _ in 0..a.num_states() {
                out.add_state();
            }
            for s in 0..a.num_states() {
                out.finals[offset + s] = a.finals[s];
                for (l, q) in &a.trans[s] {
                    out.trans[offset + s].push((l.clone(), offset + q));
                }
            }
            out.add_transition(0, Label::Eps, offset + a.initial);
        }
        Ok(out.normalize())
    }

    /// Subset construction. The result is total and always contains the
    /// empty subset as a sink.
    pub fn determinize(&self, state_cap: usize) -> Result<Dfa> {
        let a = self.normalize();
        if a.has_variables() {
            return Err(Error::PreconditionViolated("determinize requires a variable-free automaton".into()));
        }
        let table = a.letter_table();
        let k = a.alphabet.len();
        let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = vec![vec![a.initial]];
        index.insert(vec![a.initial], 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for x in 0..k {
                let mut next: Vec<StateId> = subsets[i].iter().flat_map(|&p| table[p][x].iter().copied()).collect();
                next.sort_unstable();
                next.dedup();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= state_cap {
                            return Err(Error::StateCapExceeded { cap: state_cap });
                        }
                        index.insert(next.clone(), subsets.len());
                        subsets.push(next);
                        subsets.len() - 1
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        if !index.contains_key(&Vec::new()) {
            if subsets.len() >= state_cap {
                return Err(Error::StateCapExceeded { cap: state_cap });
            }
            subsets.push(Vec::new());
            delta.push(vec![subsets.len() - 1; k]);
        }
        let finals = subsets.iter().map(|s| s.iter().any(|&p| a.finals[p])).collect();
        Ok(Dfa::from_parts(a.alphabet.clone(), 0, finals, delta))
    }

    /// Shortest accepted word (shortlex-least among the shortest), if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let a = self.normalize();
        if a.has_variables() {
            // Variable transitions cannot read a letter.
            let keep: Vec<_> = a.transitions().filter(|(_, l, _)| matches!(l, Label::Letter(_))).map(|(p, l, q)| (p, l.clone(), q)).collect();
            let mut b = Nfa::with_states(a.alphabet.clone(), a.num_states(), a.initial);
            b.finals = a.finals.clone();
            for (p, l, q) in keep {
                b.add_transition(p, l, q);
            }
            return b.shortest_word();
        }
        let table = a.letter_table();
        let n = a.num_states();
        let mut parent: Vec<Option<(StateId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([a.initial]);
        seen[a.initial] = true;
        while let Some(p) = queue.pop_front() {
            if a.finals[p] {
                let mut w = Vec::new();
                let mut cur = p;
                while let Some((prev, x)) = parent[cur] {
                    w.push(a.alphabet.letters()[x]);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            for (x, succ) in table[p].iter().enumerate() {
                for &q in succ {
                    if !seen[q] {
                        seen[q] = true;
                        parent[q] = Some((p, x));
                        queue.push_back(q);
                    }
                }
            }
        }
        None
    }

    /// Emptiness by reachability. Variable transitions are ignored.
    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Membership of a word over Σ ∪ V, treating variables as opaque symbols.
    /// Word labels are matched letter by letter.
    pub fn accepts_symbols(&self, w: &[Symbol]) -> bool {
        let n = self.num_states();
        // Adds `s` and its ε-closure to the current set.
        let close = |set: &mut Vec<StateId>, on: &mut [bool], s: StateId| {
            if on[s] {
                return;
            }
            on[s] = true;
            set.push(s);
            let mut stack = vec![s];
            while let Some(p) = stack.pop() {
                for (l, q) in &self.trans[p] {
                    if *l == Label::Eps && !on[*q] {
                        on[*q] = true;
                        set.push(*q);
                        stack.push(*q);
                    }
                }
            }
        };
        let mut on = vec![false; n];
        let mut cur = Vec::new();
        // Positions inside word labels: (state, transition index, offset).
        let mut pending: Vec<(StateId, usize, usize)> = Vec::new();
        close(&mut cur, &mut on, self.initial);
        for sym in w {
            let mut next_on = vec![false; n];
            let mut next = Vec::new();
            let mut next_pending = Vec::new();
            for &p in &cur {
                for (ti, (l, q)) in self.trans[p].iter().enumerate() {
                    match (l, sym) {
                        (Label::Letter(x), Symbol::Letter(y)) if x == y => close(&mut next, &mut next_on, *q),
                        (Label::Var(x), Symbol::Var(y)) if x == y => close(&mut next, &mut next_on, *q),
                        (Label::Word(ws), Symbol::Letter(y)) if ws[0] == *y => {
                            if ws.len() == 1 {
                                close(&mut next, &mut next_on, *q);
                            } else {
                                next_pending.push((p, ti, 1));
                            }
                        }
                        _ => {}
                    }
                }
            }
            for &(p, ti, off) in &pending {
                let (Label::Word(ws), q) = &self.trans[p][ti] else { unreachable!() };
                if matches!(sym, Symbol::Letter(y) if ws[off] == *y) {
                    if off + 1 == ws.len() {
                        close(&mut next, &mut next_on, *q);
                    } else {
                        next_pending.push((p, ti, off + 1));
                    }
                }
            }
            next_pending.sort_unstable();
            next_pending.dedup();
            cur = next;
            pending = next_pending;
            if cur.is_empty() && pending.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&p| self.finals[p])
    }

    /// Membership of a word over Σ.
    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        for (pos, l) in w.iter().enumerate() {
            if !self.alphabet.contains(*l) {
                return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos });
            }
        }
        let syms: Vec<Symbol> = w.iter().map(|&l| Symbol::Letter(l)).collect();
        Ok(self.accepts_symbols(&syms))
    }

    /// Accepted words of length at most `n`, in shortlex order.
    pub fn language_up_to(&self, n: usize) -> Vec<Word> {
        self.alphabet.words_up_to(n).into_iter().filter(|w| self.accepts_symbols(&to_symbols(w))).collect()
    }
}

pub(crate) fn to_symbols(w: &[Letter]) -> Vec<Symbol> {
    w.iter().map(|&l| Symbol::Letter(l)).collect()
}

fn thompson(a: &mut Nfa, e: &ParamRegex) -> (StateId, StateId) {
    let s = a.add_state();
    match e {
        ParamRegex::EmptySet => {
            let t = a.add_state();
            (s, t)
        }
        ParamRegex::Epsilon => {
            let t = a.add_state();
            a.add_transition(s, Label::Eps, t);
            (s, t)
        }
        ParamRegex::Lit(l) => {
            let t = a.add_state();
            a.add_transition(s, Label::Letter(*l), t);
            (s, t)
        }
        ParamRegex::Var(v) => {
            let t = a.add_state();
            a.add_transition(s, Label::Var(v.clone()), t);
            (s, t)
        }
        ParamRegex::Concat(x, y) => {
            let (s1, t1) = thompson(a, x);
            let (s2, t2) = thompson(a, y);
            a.add_transition(s, Label::Eps, s1);
            a.add_transition(t1, Label::Eps, s2);
            (s, t2)
        }
        ParamRegex::Union(x, y) => {
            let (s1, t1) = thompson(a, x);
            let (s2, t2) = thompson(a, y);
            let t = a.add_state();
            a.add_transition(s, Label::Eps, s1);
            a.add_transition(s, Label::Eps, s2);
            a.add_transition(t1, Label::Eps, t);
            a.add_transition(t2, Label::Eps, t);
            (s, t)
        }
        ParamRegex::Star(x) => {
            let (s1, t1) = thompson(a, x);
            let t = a.add_state();
            a.add_transition(s, Label::Eps, s1);
            a.add_transition(s, Label::Eps, t);
            a.add_transition(t1, Label::Eps, s1);
            a.add_transition(t1, Label::Eps, t);
            (s, t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn ab() -> Alphabet {
        Alphabet::from_chars("01").unwrap()
    }

    fn nfa(s: &str) -> Nfa {
        Nfa::from_regex(&parse(s, &ab()).unwrap(), &ab())
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn lang(a: &Nfa, n: usize) -> Vec<String> {
        a.language_up_to(n).iter().map(|w| crate::syntax::word_to_string(w)).collect()
    }

    #[test]
    fn thompson_basics() {
        assert!(nfa("@").is_empty());
        assert_eq!(lang(&nfa("0|1"), 3), vec!["0", "1"]);
        let a = nfa("(0$x)*1($x$y)*");
        let x = Symbol::Var(VarName::new("x").unwrap());
        let y = Symbol::Var(VarName::new("y").unwrap());
        let l = |c| Symbol::Letter(ab().letter(c).unwrap());
        assert!(a.accepts_symbols(&[l('0'), x.clone(), l('1'), x.clone(), y.clone()]));
        assert!(!a.accepts_symbols(&[l('0'), y.clone(), l('1')]));
        assert!(!a.has_words());
    }

    #[test]
    fn epsilon_removal() {
        let a = nfa("_").remove_epsilon();
        assert!(!a.has_epsilon());
        assert_eq!(lang(&a, 3), vec!["_"]);
        let b = nfa("($x|_)1").remove_epsilon();
        assert!(!b.has_epsilon());
        let x = Symbol::Var(VarName::new("x").unwrap());
        let one = Symbol::Letter(ab().letter('1').unwrap());
        assert!(b.accepts_symbols(&[x.clone(), one.clone()]));
        assert!(b.accepts_symbols(&[one.clone()]));
        assert!(!b.accepts_symbols(&[x]));
        let c = nfa("0*1").remove_epsilon();
        assert_eq!(lang(&c.remove_epsilon(), 3), lang(&c, 3));
    }

    #[test]
    fn expands_word_labels() {
        let a2 = Alphabet::from_chars("ab").unwrap();
        let mut a = Nfa::with_states(a2.clone(), 2, 0);
        a.set_final(1, true);
        a.add_transition(0, Label::Word(a2.parse_word("ab").unwrap()), 1);
        let e = a.expand_extended();
        assert_eq!(e.num_states(), 3);
        assert!(!e.has_words());
        assert_eq!(e.language_up_to(3), vec![a2.parse_word("ab").unwrap()]);
        assert!(a.accepts(&a2.parse_word("ab").unwrap()).unwrap());

        let mut single = Nfa::with_states(a2.clone(), 2, 0);
        single.set_final(1, true);
        single.add_transition(0, Label::Word(a2.parse_word("a").unwrap()), 1);
        let e = single.expand_extended();
        assert_eq!(e.num_states(), 2);
        assert_eq!(e.transitions().next().unwrap().1, &Label::Letter(a2.letter('a').unwrap()));
    }

    #[test]
    fn products() {
        let p = nfa("0*").remove_epsilon().product(&nfa("(0|1)*1").remove_epsilon()).unwrap();
        assert!(p.is_empty());
        let b = nfa("0(1|0)*1").remove_epsilon();
        let p = Nfa::universal(ab()).product(&b).unwrap();
        assert_eq!(lang(&p, 5), lang(&b, 5));
        let p = nfa("0(0|1)*").remove_epsilon().product(&nfa("(0|1)*0").remove_epsilon()).unwrap();
        assert!(p.accepts(&w("00")).unwrap());
        assert!(!p.accepts(&w("01")).unwrap());
        assert!(nfa("0*").product(&nfa("1")).is_err());
    }

    #[test]
    fn unions() {
        let u = Nfa::union_all(&[nfa("0"), nfa("1")], &ab()).unwrap();
        assert_eq!(lang(&u, 3), vec!["0", "1"]);
        let one = Nfa::union_all(&[nfa("0*1")], &ab()).unwrap();
        assert_eq!(lang(&one, 4), lang(&nfa("0*1"), 4));
        let u = Nfa::union_all(&[nfa("0*"), nfa("1*")], &ab()).unwrap();
        assert!(u.accepts(&w("00")).unwrap() && u.accepts(&w("11")).unwrap());
        assert!(!u.accepts(&w("01")).unwrap());
        assert!(Nfa::union_all(&[], &ab()).unwrap().is_empty());
    }

    #[test]
    fn emptiness_witnesses() {
        assert!(nfa("@").shortest_word().is_none());
        assert_eq!(nfa("0*").shortest_word(), Some(vec![]));
        assert_eq!(nfa("(0|1)*10").shortest_word(), Some(w("10")));
        assert_eq!(nfa("11|10|01").shortest_word(), Some(w("01")));
    }

    #[test]
    fn acceptance() {
        let a = nfa("(01)*1(10)*");
        assert!(a.accepts(&w("01110")).unwrap());
        assert!(!a.accepts(&w("00")).unwrap());
        assert!(nfa("0*").accepts(&[]).unwrap());
        let bad = vec![Letter::new('2').unwrap()];
        assert!(matches!(a.accepts(&bad), Err(Error::LetterNotInAlphabet { letter: '2', pos: 0 })));
    }

    #[test]
    fn determinize_small() {
        let d = nfa("0|1").determinize(DEFAULT_STATE_CAP).unwrap();
        assert!(d.num_states() <= 4);
        assert!(d.accepts(&w("1")) && !d.accepts(&w("11")) && !d.accepts(&[]));
        assert!(matches!(nfa("(0|1)*1(0|1){6}").determinize(8), Err(Error::StateCapExceeded { cap: 8 })));
    }

    #[test]
    fn finiteness_structure() {
        assert!(nfa("0*").remove_epsilon().trim().has_cycle());
        assert!(!nfa("00|01").remove_epsilon().trim().has_cycle());
    }

    #[test]
    fn from_parts_normalizes_initials() {
        let a = Nfa::from_parts(
            ab(),
            2,
            &[0, 1],
            &[0, 1],
            [(0, Label::Letter(ab().letter('0').unwrap()), 0)],
        )
        .unwrap();
        assert_eq!(a.num_states(), 3);
        assert!(a.accepts(&[]).unwrap());
        assert!(a.accepts(&w("00")).unwrap());
        assert!(Nfa::from_parts(ab(), 1, &[0], &[3], []).is_err());
        assert!(Nfa::from_parts(ab(), 1, &[0], &[], [(0, Label::Word(vec![]), 0)]).is_err());
    }
}
