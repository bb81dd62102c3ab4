//! Test support: seeded random expressions, a backtracking matcher that
//! shares no code with the automata, and brute-force semantics on top of it.
#![allow(dead_code)]

use std::collections::BTreeSet;

use paramregex::{Alphabet, Letter, ParamRegex, VarName, Word};
use proptest::prelude::*;
use rand::Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::from_chars(&"012"[..n]).unwrap()
}

/// Random expression with at most `size` nodes over the letters of `al`
/// and the variables `vars`.
pub fn random_expr<R: Rng>(rng: &mut R, al: &Alphabet, vars: &[&str], size: usize) -> ParamRegex {
    if size <= 1 {
        let roll = rng.gen_range(0..100);
        return if roll < 8 {
            ParamRegex::Epsilon
        } else if roll < 13 {
            ParamRegex::EmptySet
        } else if roll < 53 || vars.is_empty() {
            ParamRegex::lit(al.letters()[rng.gen_range(0..al.len())])
        } else {
            ParamRegex::var(vars[rng.gen_range(0..vars.len())])
        };
    }
    if size == 2 || rng.gen_range(0..100) < 20 {
        return ParamRegex::star(random_expr(rng, al, vars, size - 1));
    }
    let left = rng.gen_range(1..size - 1);
    let (a, b) = (random_expr(rng, al, vars, left), random_expr(rng, al, vars, size - 1 - left));
    if rng.gen_bool(0.55) {
        ParamRegex::concat(a, b)
    } else {
        ParamRegex::union(a, b)
    }
}

/// Proptest strategy for expressions of at most `max` nodes over `n` letters
/// and up to three variables.
pub fn expr_strategy(n: usize, max: usize) -> impl Strategy<Value = ParamRegex> {
    expr_strategy_with(n, max, VARS.to_vec())
}

pub fn expr_strategy_with(n: usize, max: usize, vars: Vec<&'static str>) -> impl Strategy<Value = ParamRegex> {
    let al = alphabet(n);
    let letters: Vec<Letter> = al.letters().to_vec();
    let lit = proptest::sample::select(letters).prop_map(ParamRegex::lit);
    let leaf: BoxedStrategy<ParamRegex> = if vars.is_empty() {
        prop_oneof![6 => lit, 1 => Just(ParamRegex::Epsilon), 1 => Just(ParamRegex::EmptySet)].boxed()
    } else {
        prop_oneof![
            4 => lit,
            3 => proptest::sample::select(vars).prop_map(ParamRegex::var),
            1 => Just(ParamRegex::Epsilon),
            1 => Just(ParamRegex::EmptySet),
        ]
        .boxed()
    };
    leaf.prop_recursive(5, max as u32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamRegex::concat(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamRegex::union(a, b)),
            inner.prop_map(ParamRegex::star),
        ]
    })
    .prop_filter("size bound", move |e| e.size() <= max)
}

/// Substitution used by the matcher; `None` means the variable matches nothing.
pub type Subst<'a> = &'a dyn Fn(&VarName) -> Option<Word>;

fn ends(e: &ParamRegex, nu: Subst<'_>, w: &[Letter], i: usize) -> BTreeSet<usize> {
    match e {
        ParamRegex::EmptySet => BTreeSet::new(),
        ParamRegex::Epsilon => BTreeSet::from([i]),
        ParamRegex::Lit(a) => (w.get(i) == Some(a)).then_some(i + 1).into_iter().collect(),
        ParamRegex::Var(x) => match nu(x) {
            Some(img) if w[i..].starts_with(&img) => BTreeSet::from([i + img.len()]),
            _ => BTreeSet::new(),
        },
        ParamRegex::Concat(a, b) => ends(a, nu, w, i).into_iter().flat_map(|j| ends(b, nu, w, j)).collect(),
        ParamRegex::Union(a, b) => ends(a, nu, w, i).union(&ends(b, nu, w, i)).copied().collect(),
        ParamRegex::Star(a) => {
            let mut reach = BTreeSet::from([i]);
            let mut todo = vec![i];
            while let Some(p) = todo.pop() {
                for q in ends(a, nu, w, p) {
                    if reach.insert(q) {
                        todo.push(q);
                    }
                }
            }
            reach
        }
    }
}

pub fn matches(e: &ParamRegex, nu: Subst<'_>, w: &[Letter]) -> bool {
    ends(e, nu, w, 0).contains(&w.len())
}

pub fn matches_plain(e: &ParamRegex, w: &[Letter]) -> bool {
    matches(e, &|_| None, w)
}

/// Every letter valuation of `vars`, first variable most significant.
pub fn letter_valuations(vars: &[VarName], al: &Alphabet) -> Vec<Vec<(VarName, Word)>> {
    let mut out = vec![Vec::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<(VarName, Word)>| {
                al.letters().iter().map(move |&c| {
                    let mut p = prefix.clone();
                    p.push((v.clone(), vec![c]));
                    p
                })
            })
            .collect();
    }
    out
}

pub fn lookup(nu: &[(VarName, Word)]) -> impl Fn(&VarName) -> Option<Word> + '_ {
    move |x| nu.iter().find(|(v, _)| v == x).map(|(_, w)| w.clone())
}

pub fn brute_box(e: &ParamRegex, al: &Alphabet, w: &[Letter]) -> bool {
    letter_valuations(&e.variables(), al).iter().all(|nu| matches(e, &lookup(nu), w))
}

pub fn brute_diamond(e: &ParamRegex, al: &Alphabet, w: &[Letter]) -> bool {
    letter_valuations(&e.variables(), al).iter().any(|nu| matches(e, &lookup(nu), w))
}

pub fn all_words(al: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| al.letters().iter().map(move |&c| [w.as_slice(), &[c]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
