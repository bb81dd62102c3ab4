//! Constructions: the emptiness-preserving combinator for □, expression
//! families with large witnesses or large automata, and a fooling-set
//! verifier for NFA state lower bounds.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::syntax::{word_to_string, Alphabet, Letter, ParamRegex, VarName, Word};
use crate::valuations::Valuation;

/// Pairs (u, v) for a fooling-set lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoolingSet {
    pairs: Vec<(Word, Word)>,
}

impl FoolingSet {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &pairs {
            if !seen.insert(p) {
                return Err(Error::Invalid(format!(
                    "duplicate pair ({}, {})",
                    word_to_string(&p.0),
                    word_to_string(&p.1)
                )));
            }
        }
        Ok(FoolingSet { pairs })
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// One `u<TAB>v` line per pair, `_` for ε.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.pairs {
            let _ = writeln!(out, "{}\t{}", word_to_string(u), word_to_string(v));
        }
        out
    }

    /// Parses the format of [`FoolingSet::to_text`]; blank lines are skipped.
    pub fn from_text(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let (u, v) = line
                .split_once('\t')
                .ok_or_else(|| Error::Invalid(format!("line {}: expected u<TAB>v", n + 1)))?;
            pairs.push((alphabet.parse_word(u.trim())?, alphabet.parse_word(v.trim())?));
        }
        Self::new(pairs)
    }
}

/// Outcome of [`verify_fooling_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoolingVerdict {
    pub verified: bool,
    /// Certified lower bound on NFA states (the number of pairs) when verified, else 0.
    pub bound: usize,
    pub violation: Option<String>,
}

/// Checks `uᵢvᵢ ∈ L` for every i and `uⱼvᵢ ∉ L` for every i ≠ j.
pub fn verify_fooling_set<F>(p: &FoolingSet, mut member: F) -> Result<FoolingVerdict>
where
    F: FnMut(&[Letter]) -> Result<bool>,
{
    let cat = |u: &Word, v: &Word| -> Word { u.iter().chain(v).copied().collect() };
    let fail = |msg: String| FoolingVerdict { verified: false, bound: 0, violation: Some(msg) };
    for (i, (u, v)) in p.pairs().iter().enumerate() {
        if !member(&cat(u, v))? {
            return Ok(fail(format!("pair {i}: {}·{} is not in the language", word_to_string(u), word_to_string(v))));
        }
    }
    for (i, (_, vi)) in p.pairs().iter().enumerate() {
        for (j, (uj, _)) in p.pairs().iter().enumerate() {
            if i != j && member(&cat(uj, vi))? {
                return Ok(fail(format!(
                    "pairs {j},{i}: {}·{} is in the language",
                    word_to_string(uj),
                    word_to_string(vi)
                )));
            }
        }
    }
    Ok(FoolingVerdict { verified: true, bound: p.len(), violation: None })
}

fn fresh_names(k: usize, es: &[ParamRegex]) -> Vec<VarName> {
    let taken: HashSet<VarName> = es.iter().flat_map(|e| e.variables()).collect();
    let mut prefix = String::from("L3_");
    loop {
        let names: Vec<VarName> = (1..k).map(|i| VarName::new(&format!("{prefix}{i}")).unwrap()).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        prefix.push('_');
    }
}

/// Combines `e₁ … e_k` into one expression whose □-language is empty
/// exactly when `L□(e₁) ∩ … ∩ L□(e_k)` is. Returns the expression and the
/// alphabet it lives over: for a one-letter alphabet the variables are
/// first replaced by that letter and a fresh letter is added.
pub fn lemma3_combine(es: &[ParamRegex], alphabet: &Alphabet) -> Result<(ParamRegex, Alphabet)> {
    if es.is_empty() {
        return Err(Error::PreconditionViolated("at least one expression is required".into()));
    }
    for l in es.iter().flat_map(|e| e.letters()) {
        if !alphabet.contains(l) {
            return Err(Error::LetterNotInAlphabet { letter: l.as_char(), pos: 0 });
        }
    }
    if es.len() == 1 {
        return Ok((es[0].clone(), alphabet.clone()));
    }
    if alphabet.len() == 1 {
        let c = alphabet.first();
        let fixed: Vec<ParamRegex> = es
            .iter()
            .map(|e| Valuation::new(e.variables().into_iter().map(|v| (v, vec![c])).collect()).apply_to_regex(e))
            .collect::<Result<_>>()?;
        let (wide, _) = alphabet.with_fresh_letter();
        return lemma3_combine(&fixed, &wide);
    }

    let k = es.len();
    let (a, b) = (alphabet.letters()[0], alphabet.letters()[1]);
    let lit = ParamRegex::lit;
    let not_a = || ParamRegex::union_all(alphabet.letters().iter().filter(|&&c| c != a).map(|&c| lit(c)));
    let gap = || ParamRegex::star(not_a());
    let block = ParamRegex::concat_all([gap(), lit(a), gap()]);
    let marker = ParamRegex::concat_all([lit(b), ParamRegex::word(&vec![a; k]), lit(b)]);

    let mut prefix = vec![gap()];
    for x in fresh_names(k, es) {
        prefix.push(ParamRegex::Var(x));
        prefix.push(gap());
    }
    let branches = es.iter().enumerate().map(|(i, e)| {
        let mut parts = Vec::new();
        if i > 0 {
            parts.push(lit(b));
            parts.push(block.repeat(i));
        }
        parts.push(marker.clone());
        parts.push(e.clone());
        ParamRegex::concat_all(parts)
    });
    prefix.push(ParamRegex::union_all(branches));
    Ok((ParamRegex::concat_all(prefix), alphabet.clone()))
}

/// The alphabet {0, 1} of the families below.
pub fn binary_alphabet() -> Alphabet {
    Alphabet::from_chars("01").unwrap()
}

fn bit(c: char) -> ParamRegex {
    ParamRegex::lit(Letter::new(c).unwrap())
}

fn any_bit() -> ParamRegex {
    ParamRegex::union(bit('0'), bit('1'))
}

fn vars(n: usize) -> impl Iterator<Item = ParamRegex> {
    (1..=n).map(|i| ParamRegex::var(&format!("x{i}")))
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    Ok(())
}

/// `(0|1)* $x1 … $xn (0|1)*`: every □-word contains all n-bit words.
pub fn family_box_subword(n: usize) -> Result<ParamRegex> {
    positive(n)?;
    let mut parts = vec![ParamRegex::star(any_bit())];
    parts.extend(vars(n));
    parts.push(ParamRegex::star(any_bit()));
    Ok(ParamRegex::concat_all(parts))
}

/// `((0|1){n+1})* $x1 … $x(n+1) ((0|1){n+1})*`, whose □-language needs
/// NFAs with doubly exponentially many states.
pub fn family_box_doubleexp(n: usize) -> Result<ParamRegex> {
    positive(n)?;
    let blocks = || ParamRegex::star(any_bit().repeat(n + 1));
    let mut parts = vec![blocks()];
    parts.extend(vars(n + 1));
    parts.push(blocks());
    Ok(ParamRegex::concat_all(parts))
}

/// `($x1 … $xn)*`, whose ◇-language needs NFAs with 2ⁿ states.
pub fn family_diamond_power(n: usize) -> Result<ParamRegex> {
    positive(n)?;
    Ok(ParamRegex::star(ParamRegex::concat_all(vars(n))))
}

fn binary_words(len: usize) -> Vec<Word> {
    binary_alphabet().words_of_len(len)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Pairs `(w_S, w_S̄)` for every S ⊂ {0,1}ⁿ⁺¹ with |S| = 2ⁿ, where `w_S`
/// concatenates the members of S in lexicographic order. Subsets are
/// listed in lexicographic order of their index sets.
pub fn fooling_pairs_box(n: usize, cap: usize) -> Result<FoolingSet> {
    positive(n)?;
    if n >= 6 {
        return Err(Error::CountCapExceeded { what: "fooling pairs", cap });
    }
    let blocks = binary_words(n + 1);
    let m = blocks.len();
    let half = m / 2;
    if binomial(m as u128, half as u128) > cap as u128 {
        return Err(Error::CountCapExceeded { what: "fooling pairs", cap });
    }
    let mut pairs = Vec::new();
    let mut chosen: Vec<usize> = (0..half).collect();
    loop {
        let inside: HashSet<usize> = chosen.iter().copied().collect();
        let w_in: Word = chosen.iter().flat_map(|&i| blocks[i].clone()).collect();
        let w_out: Word = (0..m).filter(|i| !inside.contains(i)).flat_map(|i| blocks[i].clone()).collect();
        pairs.push((w_in, w_out));
        // Next combination in lexicographic order.
        let Some(pos) = (0..half).rev().find(|&p| chosen[p] < m - half + p) else { break };
        chosen[pos] += 1;
        for q in pos + 1..half {
            chosen[q] = chosen[q - 1] + 1;
        }
    }
    FoolingSet::new(pairs)
}

/// Pairs `(w, w)` for every w ∈ {0,1}ⁿ.
pub fn fooling_pairs_diamond(n: usize, cap: usize) -> Result<FoolingSet> {
    positive(n)?;
    if n >= usize::BITS as usize - 1 || 1usize << n > cap {
        return Err(Error::CountCapExceeded { what: "fooling pairs", cap });
    }
    FoolingSet::new(binary_words(n).into_iter().map(|w| (w.clone(), w)).collect())
}

/// Words of size doubly exponential in the expression are also forced by a
/// polynomial family built from a Turing-machine encoding combined with
/// [`lemma3_combine`]. That family is not generated here; the same
/// doubly-exponential effect is shown on automaton size by
/// [`family_box_doubleexp`] together with [`fooling_pairs_box`].
pub fn corollary1_note() -> &'static str {
    "The polynomial-size family whose shortest certain words have length at least 2^(2^n) \
     comes from a Turing-machine encoding and is not generated. The doubly-exponential \
     phenomenon is exhibited instead by family_box_doubleexp and fooling_pairs_box."
}
