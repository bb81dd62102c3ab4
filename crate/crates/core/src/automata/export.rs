//! Graphviz and JSON renderings of an [`Nfa`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Label, Nfa, StateId};
use crate::error::{Error, Result};
use crate::syntax::{word_to_string, Alphabet, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonLabel {
    Letter(String),
    Var(String),
    Eps(bool),
    Word(String),
}

/// `{"states": N, "initial": i, "finals": [...], "transitions": [[from, label, to], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAutomaton {
    pub states: usize,
    pub initial: StateId,
    pub finals: Vec<StateId>,
    pub transitions: Vec<(StateId, JsonLabel, StateId)>,
}

fn dot_label(l: &Label) -> String {
    match l {
        Label::Letter(x) => x.to_string(),
        Label::Var(v) => format!("${v}"),
        Label::Eps => "eps".to_string(),
        Label::Word(w) => format!("\\\"{}\\\"", word_to_string(w)),
    }
}

fn escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c == '"' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

impl Nfa {
    /// Graphviz digraph. Node `n<i>` is state `i`; final states are drawn
    /// as double circles.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n");
        for i in 0..self.num_states() {
            let shape = if self.is_final(i) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  n{i} [label=\"{i}\", shape={shape}];");
        }
        let _ = writeln!(s, "  start [shape=point];");
        let _ = writeln!(s, "  start -> n{} [style=bold];", self.initial());
        for (p, l, q) in self.transitions() {
            let label = match l {
                Label::Word(_) => dot_label(l),
                _ => escape(&dot_label(l)),
            };
            let _ = writeln!(s, "  n{p} -> n{q} [label=\"{label}\"];");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> JsonAutomaton {
        JsonAutomaton {
            states: self.num_states(),
            initial: self.initial(),
            finals: self.finals().collect(),
            transitions: self
                .transitions()
                .map(|(p, l, q)| {
                    let jl = match l {
                        Label::Letter(x) => JsonLabel::Letter(x.to_string()),
                        Label::Var(v) => JsonLabel::Var(v.to_string()),
                        Label::Eps => JsonLabel::Eps(true),
                        Label::Word(w) => JsonLabel::Word(w.iter().map(|l| l.as_char()).collect()),
                    };
                    (p, jl, q)
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("automaton serializes")
    }

    pub fn from_json(j: &JsonAutomaton, alphabet: &Alphabet) -> Result<Nfa> {
        let transitions = j
            .transitions
            .iter()
            .map(|(p, l, q)| {
                let label = match l {
                    JsonLabel::Letter(s) => {
                        let mut cs = s.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) => Label::Letter(
                                alphabet.letter(c).ok_or(Error::LetterNotInAlphabet { letter: c, pos: 0 })?,
                            ),
                            _ => return Err(Error::Invalid(format!("letter label {s:?} must be one character"))),
                        }
                    }
                    JsonLabel::Var(v) => Label::Var(VarName::new(v)?),
                    JsonLabel::Eps(_) => Label::Eps,
                    JsonLabel::Word(w) => Label::Word(alphabet.parse_word(w)?),
                };
                Ok((*p, label, *q))
            })
            .collect::<Result<Vec<_>>>()?;
        Nfa::from_parts(alphabet.clone(), j.states, &[j.initial], &j.finals, transitions)
    }

    pub fn from_json_str(s: &str, alphabet: &Alphabet) -> Result<Nfa> {
        let j: JsonAutomaton = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json(&j, alphabet)
    }
}
