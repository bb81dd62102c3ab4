//! Valuations and regular variable domains.
//!
//! A [`Valuation`] maps every variable to a word (a single letter in the base
//! setting). A [`DomainSpec`] restricts each variable to a nonempty regular
//! language; variables with finite domains can be enumerated, and a
//! [`FinitaryValuation`] assigns only those.

use std::collections::HashMap;
use std::fmt;

use crate::automata::{Label, Nfa, StateId};
use crate::error::{Error, Result};
use crate::syntax::{parse, word_to_string, Alphabet, Letter, ParamRegex, VarName, Word};

pub const DEFAULT_VALUATION_CAP: usize = 1_000_000;
pub const DEFAULT_WORD_CAP: usize = 10_000;

/// An assignment of words to variables, kept in variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Valuation {
    entries: Vec<(VarName, Word)>,
}

impl Valuation {
    pub fn new(entries: Vec<(VarName, Word)>) -> Self {
        Valuation { entries }
    }

    pub fn get(&self, v: &VarName) -> Option<&Word> {
        self.entries.iter().find(|(x, _)| x == v).map(|(_, w)| w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &Word)> {
        self.entries.iter().map(|(v, w)| (v, w))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, v: VarName, w: Word) {
        match self.entries.iter_mut().find(|(x, _)| *x == v) {
            Some(slot) => slot.1 = w,
            None => self.entries.push((v, w)),
        }
    }

    /// Substitutes into an expression. Word images become concatenations,
    /// the empty word becomes ε.
    pub fn apply_to_regex(&self, e: &ParamRegex) -> Result<ParamRegex> {
        Ok(match e {
            ParamRegex::Var(v) => ParamRegex::word(self.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?),
            ParamRegex::Concat(a, b) => ParamRegex::concat(self.apply_to_regex(a)?, self.apply_to_regex(b)?),
            ParamRegex::Union(a, b) => ParamRegex::union(self.apply_to_regex(a)?, self.apply_to_regex(b)?),
            ParamRegex::Star(a) => ParamRegex::star(self.apply_to_regex(a)?),
            other => other.clone(),
        })
    }

    /// Relabels variable transitions with their images: a letter, ε, or a
    /// word label for longer images.
    pub fn apply_to_nfa(&self, a: &Nfa) -> Result<Nfa> {
        a.relabel(|l| match l {
            Label::Var(v) => {
                let w = self.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                Ok(Some(word_label(w)))
            }
            other => Ok(Some(other.clone())),
        })
    }
}

fn word_label(w: &[Letter]) -> Label {
    match w {
        [] => Label::Eps,
        [l] => Label::Letter(*l),
        _ => Label::Word(w.to_vec()),
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, w)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}↦{}", word_to_string(w))?;
        }
        write!(f, "}}")
    }
}

/// Streaming Cartesian product of per-variable choices. The first variable
/// is the most significant position.
#[derive(Debug, Clone)]
pub struct Valuations {
    vars: Vec<VarName>,
    choices: Vec<Vec<Word>>,
    counters: Vec<usize>,
    done: bool,
    total: usize,
}

impl Valuations {
    pub fn new(vars: Vec<VarName>, choices: Vec<Vec<Word>>, cap: usize) -> Result<Self> {
        assert_eq!(vars.len(), choices.len());
        let mut total: usize = 1;
        for c in &choices {
            total = total.checked_mul(c.len()).filter(|&t| t <= cap).ok_or(Error::CountCapExceeded { what: "valuation", cap })?;
        }
        let done = total == 0;
        Ok(Valuations { counters: vec![0; vars.len()], vars, choices, done, total })
    }

    /// Number of valuations the iterator yields in total.
    pub fn total(&self) -> usize {
        self.total
    }
}

impl Iterator for Valuations {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.done {
            return None;
        }
        let v = Valuation::new(
            self.vars
                .iter()
                .zip(&self.counters)
                .zip(&self.choices)
                .map(|((x, &i), c)| (x.clone(), c[i].clone()))
                .collect(),
        );
        let mut k = self.counters.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.counters[k] += 1;
            if self.counters[k] < self.choices[k].len() {
                break;
            }
            self.counters[k] = 0;
        }
        Some(v)
    }
}

/// All |Σ|^|vars| letter valuations, lexicographic by variable order then
/// alphabet order.
pub fn enumerate_valuations(vars: &[VarName], alphabet: &Alphabet, cap: usize) -> Result<Valuations> {
    let letters: Vec<Word> = alphabet.letters().iter().map(|&l| vec![l]).collect();
    Valuations::new(vars.to_vec(), vec![letters; vars.len()], cap)
}

/// True iff the automaton accepts finitely many words.
pub fn domain_is_finite(d: &Nfa) -> bool {
    !d.normalize().trim().has_cycle()
}

/// Every word of a finite language, in shortlex order.
pub fn enumerate_finite_domain(d: &Nfa, cap: usize) -> Result<Vec<Word>> {
    let a = d.normalize().trim();
    if a.has_cycle() {
        return Err(Error::PreconditionViolated("domain language is infinite".into()));
    }
    if a.has_variables() {
        return Err(Error::PreconditionViolated("domain automaton has variable labels".into()));
    }
    fn words_from(a: &Nfa, s: StateId, memo: &mut HashMap<StateId, Vec<Word>>, cap: usize) -> Result<Vec<Word>> {
        if let Some(ws) = memo.get(&s) {
            return Ok(ws.clone());
        }
        let mut out = Vec::new();
        if a.is_final(s) {
            out.push(Vec::new());
        }
        for (l, q) in a.transitions_from(s) {
            let Label::Letter(x) = l else { unreachable!("normalized automaton") };
            for w in words_from(a, *q, memo, cap)? {
                let mut w2 = Vec::with_capacity(w.len() + 1);
                w2.push(*x);
                w2.extend(w);
                out.push(w2);
            }
        }
        out.sort();
        out.dedup();
        if out.len() > cap {
            return Err(Error::CountCapExceeded { what: "domain word", cap });
        }
        memo.insert(s, out.clone());
        Ok(out)
    }
    let mut words = words_from(&a, a.initial(), &mut HashMap::new(), cap)?;
    words.sort_by(|x, y| a.alphabet().cmp_shortlex(x, y));
    Ok(words)
}

/// One variable's domain, compiled at ingestion.
#[derive(Debug, Clone)]
pub struct Domain {
    nfa: Nfa,
    words: Option<Vec<Word>>,
}

impl Domain {
    pub fn from_nfa(var: &VarName, nfa: &Nfa, word_cap: usize) -> Result<Self> {
        let nfa = nfa.normalize().trim();
        if nfa.has_variables() {
            return Err(Error::Invalid(format!("domain of {var} must be variable-free")));
        }
        if nfa.is_empty() {
            return Err(Error::EmptyDomain(var.clone()));
        }
        let words = if domain_is_finite(&nfa) { Some(enumerate_finite_domain(&nfa, word_cap)?) } else { None };
        Ok(Domain { nfa, words })
    }

    pub fn from_regex(var: &VarName, e: &ParamRegex, alphabet: &Alphabet, word_cap: usize) -> Result<Self> {
        if !e.is_variable_free() {
            return Err(Error::Invalid(format!("domain of {var} must be variable-free")));
        }
        Self::from_nfa(var, &Nfa::from_regex(e, alphabet), word_cap)
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn is_finite(&self) -> bool {
        self.words.is_some()
    }

    /// Shortlex-sorted words when the domain is finite.
    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.nfa.accepts(w).unwrap_or(false)
    }
}

/// Per-variable regular domains, in declaration order.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    alphabet: Alphabet,
    domains: Vec<(VarName, Domain)>,
}

impl DomainSpec {
    pub fn new(alphabet: Alphabet) -> Self {
        DomainSpec { alphabet, domains: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn insert(&mut self, var: VarName, domain: Domain) {
        match self.domains.iter_mut().find(|(v, _)| *v == var) {
            Some(slot) => slot.1 = domain,
            None => self.domains.push((var, domain)),
        }
    }

    pub fn insert_regex(&mut self, var: &str, e: &str, word_cap: usize) -> Result<()> {
        let v = VarName::new(var)?;
        let e = parse(e, &self.alphabet)?;
        let d = Domain::from_regex(&v, &e, &self.alphabet, word_cap)?;
        self.insert(v, d);
        Ok(())
    }

    /// Parses `{"x": "0*", "y": "00|01"}`.
    pub fn from_json(text: &str, alphabet: &Alphabet, word_cap: usize) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| Error::Invalid("domain spec must be a JSON object".into()))?;
        let mut spec = DomainSpec::new(alphabet.clone());
        for (k, v) in obj {
            let e = v.as_str().ok_or_else(|| Error::Invalid(format!("domain of {k} must be a string")))?;
            spec.insert_regex(k, e, word_cap)?;
        }
        Ok(spec)
    }

    pub fn get(&self, v: &VarName) -> Option<&Domain> {
        self.domains.iter().find(|(x, _)| x == v).map(|(_, d)| d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &Domain)> {
        self.domains.iter().map(|(v, d)| (v, d))
    }

    pub fn vars(&self) -> Vec<VarName> {
        self.domains.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.domains.iter().all(|(_, d)| d.is_finite())
    }

    /// Copy where every listed variable without a domain gets Σ (all letters).
    pub fn completed_for(&self, vars: &[VarName]) -> DomainSpec {
        let mut out = self.clone();
        for v in vars {
            if out.get(v).is_none() {
                let sigma = ParamRegex::union_all(self.alphabet.letters().iter().map(|&l| ParamRegex::Lit(l)));
                let d = Domain::from_regex(v, &sigma, &self.alphabet, usize::MAX).expect("Σ is a nonempty finite domain");
                out.domains.push((v.clone(), d));
            }
        }
        out
    }

    /// Word valuations over all variables; requires every domain finite.
    pub fn enumerate_word_valuations(&self, cap: usize) -> Result<Valuations> {
        let mut choices = Vec::new();
        for (v, d) in &self.domains {
            choices.push(d.words().ok_or_else(|| Error::DomainNotFinite(v.clone()))?.to_vec());
        }
        Valuations::new(self.vars(), choices, cap)
    }

    /// Finitary valuations: the Cartesian product over finite-domain
    /// variables only.
    pub fn enumerate_finitary_valuations(&self, cap: usize) -> Result<impl Iterator<Item = FinitaryValuation>> {
        let finite: Vec<_> = self.domains.iter().filter(|(_, d)| d.is_finite()).collect();
        let vars = finite.iter().map(|(v, _)| v.clone()).collect();
        let choices = finite.iter().map(|(_, d)| d.words().unwrap().to_vec()).collect();
        Ok(Valuations::new(vars, choices, cap)?.map(FinitaryValuation))
    }
}

/// A partial valuation defined exactly on the finite-domain variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitaryValuation(Valuation);

impl FinitaryValuation {
    pub fn new(v: Valuation) -> Self {
        FinitaryValuation(v)
    }

    pub fn get(&self, v: &VarName) -> Option<&Word> {
        self.0.get(v)
    }

    pub fn as_valuation(&self) -> &Valuation {
        &self.0
    }

    /// Keeps letter transitions, substitutes defined variables, and drops
    /// transitions on undefined (infinite-domain) variables.
    pub fn apply(&self, a: &Nfa) -> Nfa {
        a.relabel(|l| {
            Ok(match l {
                Label::Var(v) => self.get(v).map(|w| word_label(w)),
                other => Some(other.clone()),
            })
        })
        .expect("relabeling cannot fail")
    }
}

impl fmt::Display for FinitaryValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
