//! Certainty (□) and possibility (◇) semantics and their decision problems.
//!
//! Every procedure here works by enumerating valuations: the certainty
//! language is the intersection of the languages of all instantiated
//! automata, the possibility language their union. The same code serves the
//! base setting (variables range over letters), finite word domains, and
//! certainty over infinite domains, where only finite-domain variables are
//! enumerated and transitions on the others are dropped.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde_json::json;

use crate::automata::{Dfa, Nfa, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use crate::syntax::{word_to_string, Alphabet, Letter, ParamRegex, Word};
use crate::valuations::{
    enumerate_valuations, DomainSpec, Valuation, DEFAULT_VALUATION_CAP, DEFAULT_WORD_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// □: words in `L(ν(e))` for every valuation ν.
    Certainty,
    /// ◇: words in `L(ν(e))` for some valuation ν.
    Possibility,
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" | "certainty" | "certain" => Ok(Semantics::Certainty),
            "diamond" | "possibility" | "possible" => Ok(Semantics::Possibility),
            other => Err(Error::Invalid(format!("unknown semantics {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_valuations: usize,
    pub max_states: usize,
    pub max_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_valuations: DEFAULT_VALUATION_CAP, max_states: DEFAULT_STATE_CAP, max_words: DEFAULT_WORD_CAP }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Valuations examined.
    pub valuations: usize,
    /// Size of the largest automaton (or search space) built.
    pub states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub answer: bool,
    pub witness: Option<Word>,
    pub valuation: Option<Valuation>,
    pub stats: Stats,
}

impl DecisionReport {
    fn new(answer: bool, witness: Option<Word>, valuation: Option<Valuation>, stats: Stats) -> Self {
        DecisionReport { answer, witness, valuation, stats }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let valuation = self.valuation.as_ref().map(|v| {
            let map: serde_json::Map<String, serde_json::Value> =
                v.iter().map(|(x, w)| (x.to_string(), json!(word_to_string(w)))).collect();
            serde_json::Value::Object(map)
        });
        json!({
            "answer": self.answer,
            "witness": self.witness.as_deref().map(word_to_string),
            "valuation": valuation,
            "stats": { "valuations": self.stats.valuations, "states": self.stats.states },
        })
    }
}

/// The decision problems, with their extra arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Membership(Word),
    Nonemptiness,
    Universality,
    /// Is `L(e) ⊆ L(rhs)`?
    Containment(ParamRegex),
    /// Is `L(e) ∩ L(regular) ≠ ∅`?
    NonemptyIntReg(ParamRegex),
}

/// Where the valuations come from.
#[derive(Clone, Copy)]
enum Source<'a> {
    Letters,
    /// Every variable has a finite domain; enumerate word valuations.
    Words(&'a DomainSpec),
    /// Certainty with some infinite domain; enumerate finitary valuations.
    Finitary(&'a DomainSpec),
}

type Component = (Valuation, Nfa);

#[derive(Debug, Clone)]
pub struct Solver {
    alphabet: Alphabet,
    limits: Limits,
    parallel: bool,
}

impl Solver {
    pub fn new(alphabet: Alphabet) -> Self {
        Solver { alphabet, limits: Limits::default(), parallel: false }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Runs the per-valuation loops on the rayon pool. Answers and witnesses
    /// are identical to the sequential run.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check_letters(&self, e: &ParamRegex) -> Result<()> {
        for l in e.letters() {
            if !self.alphabet.contains(l) {
                return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos: 0 });
            }
        }
        Ok(())
    }

    /// ε-free automaton of `e` over Σ ∪ W.
    pub fn expression_nfa(&self, e: &ParamRegex) -> Result<Nfa> {
        self.check_letters(e)?;
        Ok(Nfa::from_regex(e, &self.alphabet).remove_epsilon())
    }

    /// Restricts `spec` to the variables of `e`, giving Σ to the unlisted ones.
    fn effective_spec(&self, e: &ParamRegex, spec: &DomainSpec) -> Result<DomainSpec> {
        if spec.alphabet() != &self.alphabet {
            return Err(Error::PreconditionViolated("domain spec uses a different alphabet".into()));
        }
        let completed = spec.completed_for(&e.variables());
        let mut out = DomainSpec::new(self.alphabet.clone());
        for v in e.variables() {
            out.insert(v.clone(), completed.get(&v).expect("completed").clone());
        }
        Ok(out)
    }

    fn source<'a>(&self, spec: &'a DomainSpec, sem: Semantics) -> Result<Source<'a>> {
        if spec.all_finite() {
            return Ok(Source::Words(spec));
        }
        match sem {
            Semantics::Certainty => Ok(Source::Finitary(spec)),
            Semantics::Possibility => {
                let (v, _) = spec.iter().find(|(_, d)| !d.is_finite()).expect("some infinite domain");
                Err(Error::DomainNotFinite(v.clone()))
            }
        }
    }

    /// Instantiated automata, one per valuation, in enumeration order.
    fn components<'a>(
        &'a self,
        e: &ParamRegex,
        src: Source<'a>,
    ) -> Result<(usize, Box<dyn Iterator<Item = Component> + Send + 'a>)> {
        let base = self.expression_nfa(e)?;
        let cap = self.limits.max_valuations;
        Ok(match src {
            Source::Letters => {
                let vals = enumerate_valuations(&e.variables(), &self.alphabet, cap)?;
                let total = vals.total();
                (total, Box::new(vals.map(move |v| {
                    let a = v.apply_to_nfa(&base).expect("valuation covers the expression");
                    (v, a)
                })))
            }
            Source::Words(spec) => {
                let vals = spec.enumerate_word_valuations(cap)?;
                let total = vals.total();
                (total, Box::new(vals.map(move |v| {
                    let a = v.apply_to_nfa(&base).expect("valuation covers the expression").normalize();
                    (v, a)
                })))
            }
            Source::Finitary(spec) => {
                let vals: Vec<_> = spec.enumerate_finitary_valuations(cap)?.collect();
                let total = vals.len();
                (total, Box::new(vals.into_iter().map(move |f| {
                    let a = f.apply(&base).normalize();
                    (f.as_valuation().clone(), a)
                })))
            }
        })
    }

    fn collect_components(&self, e: &ParamRegex, src: Source<'_>) -> Result<Vec<Component>> {
        let (_, it) = self.components(e, src)?;
        Ok(it.collect())
    }

    /// Automaton over Σ for `L_sem(e)`: the union (◇) or the iterated
    /// product (□) of the instantiated automata.
    pub fn construct_nfa(&self, e: &ParamRegex, sem: Semantics) -> Result<Nfa> {
        Ok(self.build(e, None, sem)?.0)
    }

    /// Automaton over Σ for `L_sem(e; domains)`.
    ///
    /// With every domain finite, word valuations are enumerated and combined
    /// as in the base setting. Under certainty with some infinite domain,
    /// the finitary valuations are enumerated instead and transitions on
    /// infinite-domain variables are dropped. Possibility with an infinite
    /// domain is not regular in general and is rejected.
    pub fn construct_nfa_domains(&self, e: &ParamRegex, spec: &DomainSpec, sem: Semantics) -> Result<Nfa> {
        Ok(self.build(e, Some(spec), sem)?.0)
    }

    /// Certainty automaton through finitary valuations, even when every
    /// domain is finite.
    pub fn construct_nfa_finitary(&self, e: &ParamRegex, spec: &DomainSpec) -> Result<Nfa> {
        let eff = self.effective_spec(e, spec)?;
        let (total, it) = self.components(e, Source::Finitary(&eff))?;
        Ok(self.combine(it, total, Semantics::Certainty)?.0)
    }

    /// Automaton through enumeration of total word valuations; requires
    /// every domain finite.
    pub fn construct_nfa_enumerative(&self, e: &ParamRegex, spec: &DomainSpec, sem: Semantics) -> Result<Nfa> {
        let eff = self.effective_spec(e, spec)?;
        if let Some((v, _)) = eff.iter().find(|(_, d)| !d.is_finite()) {
            return Err(Error::DomainNotFinite(v.clone()));
        }
        let (total, it) = self.components(e, Source::Words(&eff))?;
        Ok(self.combine(it, total, sem)?.0)
    }

    fn build(&self, e: &ParamRegex, spec: Option<&DomainSpec>, sem: Semantics) -> Result<(Nfa, Stats)> {
        match spec {
            None => {
                let (total, it) = self.components(e, Source::Letters)?;
                self.combine(it, total, sem)
            }
            Some(s) => {
                let eff = self.effective_spec(e, s)?;
                let src = self.source(&eff, sem)?;
                let (total, it) = self.components(e, src)?;
                self.combine(it, total, sem)
            }
        }
    }

    fn combine(&self, it: Box<dyn Iterator<Item = Component> + Send + '_>, total: usize, sem: Semantics) -> Result<(Nfa, Stats)> {
        let cap = self.limits.max_states;
        match sem {
            Semantics::Possibility => {
                let parts: Vec<Nfa> = if self.parallel {
                    it.collect::<Vec<_>>().into_par_iter().map(|(_, a)| a.trim()).collect()
                } else {
                    it.map(|(_, a)| a.trim()).collect()
                };
                let u = Nfa::union_all(&parts, &self.alphabet)?.trim();
                if u.num_states() > cap {
                    return Err(Error::StateCapExceeded { cap });
                }
                let states = u.num_states();
                Ok((u, Stats { valuations: total, states }))
            }
            Semantics::Certainty => {
                // Components and intermediate products are kept minimal;
                // minimal automata are canonical, so repeated languages
                // are skipped exactly.
                let minimal = move |a: Nfa| a.determinize(cap).map(|d| d.minimize());
                let dfas: Box<dyn Iterator<Item = Result<Dfa>> + Send> = if self.parallel {
                    let v: Vec<Result<Dfa>> = it.collect::<Vec<_>>().into_par_iter().map(|(_, a)| minimal(a)).collect();
                    Box::new(v.into_iter())
                } else {
                    Box::new(it.map(move |(_, a)| minimal(a)))
                };
                let mut acc: Option<Dfa> = None;
                let mut seen = 0;
                let mut max_states = 0;
                let mut seen_parts: Vec<Dfa> = Vec::new();
                for d in dfas {
                    let d = d?;
                    seen += 1;
                    max_states = max_states.max(d.num_states());
                    if seen_parts.contains(&d) {
                        continue;
                    }
                    seen_parts.push(d.clone());
                    let next = match acc {
                        None => d,
                        Some(prev) => prev.product(&d, cap)?.minimize(),
                    };
                    max_states = max_states.max(next.num_states());
                    let empty = next.is_empty();
                    acc = Some(next);
                    if empty {
                        break;
                    }
                }
                let out = match acc {
                    None => Nfa::universal(self.alphabet.clone()),
                    Some(d) if d.is_empty() => Nfa::empty(self.alphabet.clone()),
                    Some(d) => d.to_nfa().trim(),
                };
                Ok((out, Stats { valuations: seen, states: max_states }))
            }
        }
    }

    /// Shortest word in the intersection of all automata, by breadth-first
    /// search over tuples of state sets. Language-equal to the iterated
    /// product, without materializing it.
    fn intersection_witness(&self, automata: &[Nfa]) -> Result<(Option<Word>, usize)> {
        let mut parts: Vec<Nfa> = Vec::new();
        for a in automata {
            let a = a.normalize().trim();
            if a.is_empty() {
                return Ok((None, 0));
            }
            if !parts.contains(&a) {
                parts.push(a);
            }
        }
        if parts.is_empty() {
            return Ok((Some(Vec::new()), 1));
        }
        let k = self.alphabet.len();
        let tables: Vec<_> = parts.iter().map(|a| a.letter_table()).collect();
        let widths: Vec<usize> = parts.iter().map(|a| a.num_states().div_ceil(64)).collect();
        let offsets: Vec<usize> = widths.iter().scan(0, |acc, w| { let o = *acc; *acc += w; Some(o) }).collect();
        let total_width: usize = widths.iter().sum();
        let is_accepting = |key: &[u64]| {
            parts.iter().enumerate().all(|(i, a)| {
                a.finals().any(|f| key[offsets[i] + f / 64] >> (f % 64) & 1 == 1)
            })
        };
        let mut start = vec![0u64; total_width];
        for (i, a) in parts.iter().enumerate() {
            let s = a.initial();
            start[offsets[i] + s / 64] |= 1 << (s % 64);
        }
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut keys = vec![start.clone()];
        index.insert(start, 0);
        let mut queue = VecDeque::from([0usize]);
        let cap = self.limits.max_states;
        while let Some(id) = queue.pop_front() {
            let key = keys[id].clone();
            if is_accepting(&key) {
                let mut w = Vec::new();
                let mut cur = id;
                while let Some((prev, x)) = parent[cur] {
                    w.push(self.alphabet.letters()[x]);
                    cur = prev;
                }
                w.reverse();
                return Ok((Some(w), keys.len()));
            }
            'letters: for x in 0..k {
                let mut next = vec![0u64; total_width];
                for (i, table) in tables.iter().enumerate() {
                    let base = offsets[i];
                    let mut any = false;
                    for word in 0..widths[i] {
                        let mut bits = key[base + word];
                        while bits != 0 {
                            let p = word * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &q in &table[p][x] {
                                next[base + q / 64] |= 1 << (q % 64);
                                any = true;
                            }
                        }
                    }
                    if !any {
                        continue 'letters;
                    }
                }
                if !index.contains_key(&next) {
                    if keys.len() >= cap {
                        return Err(Error::StateCapExceeded { cap });
                    }
                    index.insert(next.clone(), keys.len());
                    parent.push(Some((id, x)));
                    keys.push(next);
                    queue.push_back(keys.len() - 1);
                }
            }
        }
        Ok((None, keys.len()))
    }

    /// First component in enumeration order satisfying `pred`.
    fn find_first<F>(&self, e: &ParamRegex, src: Source<'_>, pred: F) -> Result<(Option<(Valuation, Nfa)>, usize)>
    where
        F: Fn(&Nfa) -> Result<bool> + Sync,
    {
        if self.parallel {
            let comps = self.collect_components(e, src)?;
            let results: Vec<Result<bool>> = comps.par_iter().map(|(_, a)| pred(a)).collect();
            for (i, r) in results.into_iter().enumerate() {
                if r? {
                    return Ok((Some(comps[i].clone()), i + 1));
                }
            }
            Ok((None, comps.len()))
        } else {
            let (_, it) = self.components(e, src)?;
            let mut n = 0;
            for (v, a) in it {
                n += 1;
                if pred(&a)? {
                    return Ok((Some((v, a)), n));
                }
            }
            Ok((None, n))
        }
    }

    fn check_word(&self, w: &[Letter]) -> Result<()> {
        for (pos, l) in w.iter().enumerate() {
            if !self.alphabet.contains(*l) {
                return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos });
            }
        }
        Ok(())
    }

    /// Membership by per-valuation simulation; no combined automaton is
    /// built. Under ◇ the report carries an accepting valuation, under □ a
    /// rejecting one when the answer is false.
    pub fn membership(&self, e: &ParamRegex, w: &[Letter], sem: Semantics) -> Result<DecisionReport> {
        self.decide_in(Problem::Membership(w.to_vec()), e, Source::Letters, sem)
    }

    pub fn nonemptiness(&self, e: &ParamRegex, sem: Semantics) -> Result<DecisionReport> {
        self.decide_in(Problem::Nonemptiness, e, Source::Letters, sem)
    }

    pub fn universality(&self, e: &ParamRegex, sem: Semantics) -> Result<DecisionReport> {
        self.decide_in(Problem::Universality, e, Source::Letters, sem)
    }

    /// Is `L_sem(lhs) ⊆ L_sem(rhs)`? The witness, when false, is in the
    /// left language and not in the right one.
    pub fn containment(&self, lhs: &ParamRegex, rhs: &ParamRegex, sem: Semantics) -> Result<DecisionReport> {
        self.decide_in(Problem::Containment(rhs.clone()), lhs, Source::Letters, sem)
    }

    /// Is `L(regular) ∩ L_sem(e)` nonempty? `regular` must be variable-free.
    pub fn nonempty_int_reg(&self, e: &ParamRegex, regular: &ParamRegex, sem: Semantics) -> Result<DecisionReport> {
        self.decide_in(Problem::NonemptyIntReg(regular.clone()), e, Source::Letters, sem)
    }

    /// Runs `problem` with variables ranging over `spec`'s domains
    /// (variables without a domain range over Σ).
    pub fn decide_domains(&self, problem: Problem, e: &ParamRegex, spec: &DomainSpec, sem: Semantics) -> Result<DecisionReport> {
        let mut eff = self.effective_spec(e, spec)?;
        if let Problem::Containment(rhs) = &problem {
            let rhs_spec = self.effective_spec(rhs, spec)?;
            for (v, d) in rhs_spec.iter() {
                if eff.get(v).is_none() {
                    eff.insert(v.clone(), d.clone());
                }
            }
        }
        let src = self.source(&eff, sem)?;
        self.decide_in(problem, e, src, sem)
    }

    fn decide_in(&self, problem: Problem, e: &ParamRegex, src: Source<'_>, sem: Semantics) -> Result<DecisionReport> {
        self.check_letters(e)?;
        match problem {
            Problem::Membership(w) => {
                self.check_word(&w)?;
                let want = sem == Semantics::Possibility;
                // ◇: find an accepting valuation; □: find a rejecting one.
                let (found, n) = self.find_first(e, src, |a| Ok(a.accepts(&w)? == want))?;
                let answer = if want { found.is_some() } else { found.is_none() };
                let stats = Stats { valuations: n, states: self.expression_nfa(e)?.num_states() };
                Ok(DecisionReport::new(answer, None, found.map(|(v, _)| v), stats))
            }
            Problem::Nonemptiness => match sem {
                Semantics::Possibility => {
                    // Nonemptiness does not depend on the valuation chosen.
                    let (_, mut it) = self.components(e, src)?;
                    let (v, a) = it.next().expect("at least one valuation");
                    let witness = a.shortest_word();
                    let stats = Stats { valuations: 1, states: a.num_states() };
                    Ok(DecisionReport::new(witness.is_some(), witness, Some(v), stats))
                }
                Semantics::Certainty => {
                    let comps = self.collect_components(e, src)?;
                    let automata: Vec<Nfa> = comps.into_iter().map(|(_, a)| a).collect();
                    let (witness, states) = self.intersection_witness(&automata)?;
                    let stats = Stats { valuations: automata.len(), states };
                    Ok(DecisionReport::new(witness.is_some(), witness, None, stats))
                }
            },
            Problem::Universality => match sem {
                Semantics::Certainty => {
                    // L□(e) = Σ* iff every instantiation is universal.
                    let cap = self.limits.max_states;
                    let (found, n) = self.find_first(e, src, |a| Ok(!a.determinize(cap)?.is_universal()))?;
                    match found {
                        None => Ok(DecisionReport::new(true, None, None, Stats { valuations: n, states: 0 })),
                        Some((v, a)) => {
                            let d = a.determinize(cap)?;
                            let witness = d.non_universality_witness();
                            Ok(DecisionReport::new(false, witness, Some(v), Stats { valuations: n, states: d.num_states() }))
                        }
                    }
                }
                Semantics::Possibility => {
                    let (total, it) = self.components(e, src)?;
                    let (u, stats) = self.combine(it, total, sem)?;
                    let d = u.determinize(self.limits.max_states)?;
                    let witness = d.non_universality_witness();
                    let stats = Stats { states: stats.states.max(d.num_states()), ..stats };
                    Ok(DecisionReport::new(witness.is_none(), witness, None, stats))
                }
            },
            Problem::Containment(rhs) => {
                self.check_letters(&rhs)?;
                let (total, it) = self.components(e, src)?;
                let (left, s1) = self.combine(it, total, sem)?;
                let (total, it) = self.components(&rhs, src)?;
                let (right, s2) = self.combine(it, total, sem)?;
                let comp = right.determinize(self.limits.max_states)?.complement();
                let diff = left.product_capped(&comp.to_nfa(), self.limits.max_states)?;
                let witness = diff.shortest_word();
                let stats = Stats {
                    valuations: s1.valuations + s2.valuations,
                    states: s1.states.max(s2.states).max(comp.num_states()).max(diff.num_states()),
                };
                Ok(DecisionReport::new(witness.is_none(), witness, None, stats))
            }
            Problem::NonemptyIntReg(regular) => {
                if !regular.is_variable_free() {
                    return Err(Error::PreconditionViolated("the regular expression must be variable-free".into()));
                }
                let r = self.expression_nfa(&regular)?;
                match sem {
                    Semantics::Certainty => {
                        let mut automata: Vec<Nfa> = self.collect_components(e, src)?.into_iter().map(|(_, a)| a).collect();
                        let n = automata.len();
                        automata.push(r);
                        let (witness, states) = self.intersection_witness(&automata)?;
                        Ok(DecisionReport::new(witness.is_some(), witness, None, Stats { valuations: n, states }))
                    }
                    Semantics::Possibility => {
                        let (total, it) = self.components(e, src)?;
                        let (u, stats) = self.combine(it, total, sem)?;
                        let p = u.product_capped(&r, self.limits.max_states)?;
                        let witness = p.shortest_word();
                        let stats = Stats { states: stats.states.max(p.num_states()), ..stats };
                        Ok(DecisionReport::new(witness.is_some(), witness, None, stats))
                    }
                }
            }
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

    fn solver() -> Solver {
        Solver::new(ab())
    }

    fn e(s: &str) -> ParamRegex {
        parse(s, &ab()).unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    const BOX: Semantics = Semantics::Certainty;
    const DIA: Semantics = Semantics::Possibility;

    fn lang(a: &Nfa, n: usize) -> Vec<String> {
        a.language_up_to(n).iter().map(|w| word_to_string(w)).collect()
    }

    #[test]
    fn constructs_both_semantics() {
        let s = solver();
        assert_eq!(lang(&s.construct_nfa(&e("$x"), DIA).unwrap(), 3), vec!["0", "1"]);
        assert!(s.construct_nfa(&e("$x"), BOX).unwrap().is_empty());
        let sub = s.construct_nfa(&e("(0|1)*$x$y(0|1)*"), BOX).unwrap();
        assert!(sub.accepts(&w("10011")).unwrap());
        let intro = e("(0$x)*1($x$y)*");
        assert!(s.construct_nfa(&intro, DIA).unwrap().accepts(&w("01110")).unwrap());
        assert!(s.construct_nfa(&intro, BOX).unwrap().accepts(&w("1")).unwrap());
    }

    #[test]
    fn membership_examples() {
        let s = solver();
        let intro = e("(0$x)*1($x$y)*");
        let r = s.membership(&intro, &w("01110"), DIA).unwrap();
        assert!(r.answer);
        assert_eq!(r.valuation.unwrap().to_string(), "{x↦1, y↦0}");
        let sub = e("(0|1)*$x$y(0|1)*");
        for word in ab().words_up_to(4) {
            assert!(!s.membership(&sub, &word, BOX).unwrap().answer);
        }
        let r = s.membership(&intro, &w("0"), BOX).unwrap();
        assert!(!r.answer);
        assert!(r.valuation.is_some());
        assert!(matches!(
            s.membership(&intro, &[crate::syntax::Letter::new('2').unwrap()], BOX),
            Err(Error::LetterNotInAlphabet { .. })
        ));
    }

    #[test]
    fn nonemptiness_examples() {
        let s = solver();
        for text in ["$x", "0", "_", "$x$y*", "(0$x)*1($x$y)*"] {
            assert!(s.nonemptiness(&e(text), DIA).unwrap().answer, "{text}");
        }
        assert!(!s.nonemptiness(&e("@"), DIA).unwrap().answer);
        assert!(!s.nonemptiness(&e("$x"), BOX).unwrap().answer);
        let r = s.nonemptiness(&e("(0|1)*$x1$x2(0|1)*"), BOX).unwrap();
        assert!(r.answer);
        assert_eq!(word_to_string(r.witness.as_ref().unwrap()), "00110");
    }

    #[test]
    fn universality_examples() {
        let s = solver();
        assert!(s.universality(&e("(0|1)*"), BOX).unwrap().answer);
        let r = s.universality(&e("$x(0|1)*"), BOX).unwrap();
        assert!(!r.answer);
        assert_eq!(r.witness, Some(vec![]));
        assert!(s.universality(&e("($x(0|1)*)|_"), DIA).unwrap().answer);
        let r = s.universality(&e("$x(0|1)*"), DIA).unwrap();
        assert!(!r.answer);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn containment_examples() {
        let s = solver();
        assert!(s.containment(&e("$x$x"), &e("@"), BOX).unwrap().answer);
        assert!(s.containment(&e("00|11"), &e("$x$x"), DIA).unwrap().answer);
        let r = s.containment(&e("$x$y"), &e("$x$x"), DIA).unwrap();
        assert!(!r.answer);
        assert_eq!(word_to_string(r.witness.as_ref().unwrap()), "01");
    }

    #[test]
    fn intersection_with_regular() {
        let s = solver();
        let fam = e("(0|1)*$x1$x2(0|1)*");
        assert!(!s.nonempty_int_reg(&fam, &e("1*"), BOX).unwrap().answer);
        assert!(s.nonempty_int_reg(&fam, &e("(0|1)*"), BOX).unwrap().answer);
        let r = s.nonempty_int_reg(&e("$x"), &e("1"), DIA).unwrap();
        assert!(r.answer);
        assert_eq!(r.witness, Some(w("1")));
        assert!(matches!(s.nonempty_int_reg(&fam, &e("$y"), DIA), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn domain_constructions() {
        let s = solver();
        let spec = DomainSpec::from_json(r#"{"x": "00|01"}"#, &ab(), DEFAULT_WORD_CAP).unwrap();
        assert!(s.construct_nfa_domains(&e("$x"), &spec, BOX).unwrap().is_empty());
        assert_eq!(lang(&s.construct_nfa_domains(&e("$x"), &spec, DIA).unwrap(), 4), vec!["00", "01"]);

        let inf = DomainSpec::from_json(r#"{"x": "0*"}"#, &ab(), DEFAULT_WORD_CAP).unwrap();
        let a = s.construct_nfa_domains(&e("($x|_)1*"), &inf, BOX).unwrap();
        assert_eq!(lang(&a, 5), lang(&Nfa::from_regex(&e("1*"), &ab()), 5));
        assert!(matches!(s.construct_nfa_domains(&e("$x"), &inf, DIA), Err(Error::DomainNotFinite(_))));

        let sigma = DomainSpec::from_json(r#"{"x": "0|1", "y": "1|0"}"#, &ab(), DEFAULT_WORD_CAP).unwrap();
        for text in ["(0$x)*1($x$y)*", "(0|1)*$x$y(0|1)*"] {
            for sem in [BOX, DIA] {
                let with = s.construct_nfa_domains(&e(text), &sigma, sem).unwrap();
                let without = s.construct_nfa(&e(text), sem).unwrap();
                assert_eq!(lang(&with, 6), lang(&without, 6));
            }
        }
    }

    #[test]
    fn decide_domain_examples() {
        let s = solver();
        let inf = DomainSpec::from_json(r#"{"x": "0*"}"#, &ab(), DEFAULT_WORD_CAP).unwrap();
        let r = s.decide_domains(Problem::Membership(w("01")), &e("$x 1"), &inf, BOX).unwrap();
        assert!(!r.answer);
        let r = s.decide_domains(Problem::Nonemptiness, &e("($x|_)1*"), &inf, BOX).unwrap();
        assert!(r.answer);
        assert_eq!(r.witness, Some(vec![]));
        let fin = DomainSpec::from_json(r#"{"x": "00|01"}"#, &ab(), DEFAULT_WORD_CAP).unwrap();
        assert!(s.decide_domains(Problem::Membership(w("01")), &e("$x"), &fin, DIA).unwrap().answer);
        assert!(matches!(
            s.decide_domains(Problem::Universality, &e("$x"), &inf, DIA),
            Err(Error::DomainNotFinite(_))
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = solver();
        let par = solver().with_parallel(true);
        let intro = e("(0$x)*1($x$y)*");
        for word in ab().words_up_to(5) {
            for sem in [BOX, DIA] {
                assert_eq!(seq.membership(&intro, &word, sem).unwrap(), par.membership(&intro, &word, sem).unwrap());
            }
        }
        assert_eq!(seq.universality(&e("$x(0|1)*"), BOX).unwrap(), par.universality(&e("$x(0|1)*"), BOX).unwrap());
        let a = seq.construct_nfa(&e("(0|1)*$x$y(0|1)*"), BOX).unwrap();
        let b = par.construct_nfa(&e("(0|1)*$x$y(0|1)*"), BOX).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn caps_fail_loudly() {
        let tight = solver().with_limits(Limits { max_valuations: 3, ..Limits::default() });
        assert!(matches!(tight.nonemptiness(&e("$x$y"), BOX), Err(Error::CountCapExceeded { .. })));
        let tiny = solver().with_limits(Limits { max_states: 4, ..Limits::default() });
        assert!(matches!(
            tiny.nonemptiness(&e("(0|1)*$x$y$z(0|1)*"), BOX),
            Err(Error::StateCapExceeded { cap: 4 })
        ));
    }

    #[test]
    fn report_json_shape() {
        let s = solver();
        let r = s.membership(&e("(0$x)*1($x$y)*"), &w("01110"), DIA).unwrap();
        let j = r.to_json();
        assert_eq!(j["answer"], true);
        assert_eq!(j["valuation"]["x"], "1");
        assert_eq!(j["valuation"]["y"], "0");
        assert!(j["witness"].is_null());
        assert!(j["stats"]["valuations"].as_u64().unwrap() >= 1);
    }
}
