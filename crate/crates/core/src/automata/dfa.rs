use std::collections::{HashMap, VecDeque};

use super::{Label, Nfa, StateId};
use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Letter, Word};

/// Total deterministic automaton over the letters of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: StateId,
    finals: Vec<bool>,
    /// `delta[state][letter index]`
    delta: Vec<Vec<StateId>>,
}

impl Dfa {
    pub(crate) fn from_parts(alphabet: Alphabet, initial: StateId, finals: Vec<bool>, delta: Vec<Vec<StateId>>) -> Self {
        debug_assert_eq!(finals.len(), delta.len());
        debug_assert!(delta.iter().all(|row| row.len() == alphabet.len()));
        Dfa { alphabet, initial, finals, delta }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn step(&self, s: StateId, l: Letter) -> Option<StateId> {
        self.alphabet.index_of(l).map(|i| self.delta[s][i])
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut s = self.initial;
        for &l in w {
            match self.step(s, l) {
                Some(t) => s = t,
                None => return false,
            }
        }
        self.finals[s]
    }

    /// Swaps final and non-final states.
    pub fn complement(&self) -> Dfa {
        Dfa { finals: self.finals.iter().map(|f| !f).collect(), ..self.clone() }
    }

    /// Shortest (shortlex-least) word leading to a reachable state satisfying `pred`.
    fn shortest_to(&self, pred: impl Fn(bool) -> bool) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(StateId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(p) = queue.pop_front() {
            if pred(self.finals[p]) {
                let mut w = Vec::new();
                let mut cur = p;
                while let Some((prev, x)) = parent[cur] {
                    w.push(self.alphabet.letters()[x]);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            for (x, &q) in self.delta[p].iter().enumerate() {
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some((p, x));
                    queue.push_back(q);
                }
            }
        }
        None
    }

    /// `None` when universal, otherwise the shortest rejected word.
    pub fn non_universality_witness(&self) -> Option<Word> {
        self.shortest_to(|f| !f)
    }

    pub fn is_universal(&self) -> bool {
        self.non_universality_witness().is_none()
    }

    pub fn shortest_word(&self) -> Option<Word> {
        self.shortest_to(|f| f)
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Product automaton for the intersection, over reachable pairs.
    pub fn product(&self, other: &Dfa, cap: usize) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::PreconditionViolated("product of automata over different alphabets".into()));
        }
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0);
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(self.alphabet.len());
            for x in 0..self.alphabet.len() {
                let t = (self.delta[p][x], other.delta[q][x]);
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                row.push(id);
            }
            if pairs.len() > cap {
                return Err(Error::StateCapExceeded { cap });
            }
            delta.push(row);
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| self.finals[p] && other.finals[q]).collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }

    /// Minimal equivalent automaton by partition refinement. States are
    /// numbered in breadth-first order from the initial state, so two
    /// minimal automata of the same language are equal.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut class: Vec<usize> = self.finals.iter().map(|&f| f as usize).collect();
        let mut count = 0;
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let next: Vec<usize> = (0..self.num_states())
                .map(|s| {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(class[s]);
                    sig.extend(self.delta[s].iter().map(|&t| class[t]));
                    let n = sig_ids.len();
                    *sig_ids.entry(sig).or_insert(n)
                })
                .collect();
            let classes = sig_ids.len();
            class = next;
            if classes == count {
                break;
            }
            count = classes;
        }
        // Renumber reachable classes in BFS order.
        let mut rep: HashMap<usize, StateId> = HashMap::new();
        let mut order = vec![self.initial];
        rep.insert(class[self.initial], 0);
        let mut i = 0;
        while i < order.len() {
            for &t in &self.delta[order[i]] {
                if !rep.contains_key(&class[t]) {
                    rep.insert(class[t], order.len());
                    order.push(t);
                }
            }
            i += 1;
        }
        let delta = order.iter().map(|&s| self.delta[s].iter().map(|&t| rep[&class[t]]).collect()).collect();
        let finals = order.iter().map(|&s| self.finals[s]).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut a = Nfa::with_states(self.alphabet.clone(), self.num_states(), self.initial);
        for (p, row) in self.delta.iter().enumerate() {
            a.set_final(p, self.finals[p]);
            for (x, &q) in row.iter().enumerate() {
                a.add_transition(p, Label::Letter(self.alphabet.letters()[x]), q);
            }
        }
        a
    }
}
