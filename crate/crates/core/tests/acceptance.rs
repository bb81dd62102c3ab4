//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use paramregex::constructions::*;
use paramregex::fast_paths::*;
use paramregex::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOX: Semantics = Semantics::Certainty;
const DIA: Semantics = Semantics::Possibility;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn bin() -> Alphabet {
    alphabet(2)
}

fn w(s: &str) -> Word {
    bin().parse_word(s).unwrap()
}

fn e(s: &str) -> ParamRegex {
    parse(s, &bin()).unwrap()
}

fn worked_examples() -> Outcome {
    let s = Solver::new(bin());
    let intro = e("(0$x)*1($x$y)*");
    let sub = e("(0|1)*$x$y(0|1)*");
    ensure!(s.membership(&intro, &w("01110"), DIA).unwrap().answer, "01110 not in possibility language");
    ensure!(s.membership(&intro, &w("1"), BOX).unwrap().answer, "1 not in certainty language");
    ensure!(s.membership(&sub, &w("10011"), BOX).unwrap().answer, "10011 not in certainty language");
    let short = all_words(&bin(), 4);
    ensure!(short.len() == 31, "expected 31 words of length <= 4 including the empty word");
    for x in &short {
        ensure!(!s.membership(&sub, x, BOX).unwrap().answer, "{} wrongly certain", word_to_string(x));
    }
    Ok(format!("{} short words rejected", short.len()))
}

struct Corpus {
    items: Vec<(Alphabet, ParamRegex)>,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let items = (0..500)
        .map(|i| {
            let al = alphabet(2 + i % 2);
            let nvars = rng.gen_range(0..=3);
            let size = rng.gen_range(1..=12);
            (al.clone(), random_expr(&mut rng, &al, &VARS[..nvars], size))
        })
        .collect();
    Corpus { items }
}

fn oracle_equivalence(c: &Corpus) -> Outcome {
    let mut checks = 0usize;
    let mut fast = 0usize;
    for (al, ex) in &c.items {
        let s = Solver::new(al.clone());
        let a_box = s.construct_nfa(ex, BOX).map_err(|err| format!("{ex}: {err}"))?;
        let a_dia = s.construct_nfa(ex, DIA).map_err(|err| format!("{ex}: {err}"))?;
        let simple = ex.is_simple();
        let sh0 = ex.star_height() == 0;
        for x in all_words(al, 6) {
            let (b, d) = (brute_box(ex, al, &x), brute_diamond(ex, al, &x));
            let got = [
                a_box.accepts(&x).unwrap() == b,
                a_dia.accepts(&x).unwrap() == d,
                s.membership(ex, &x, BOX).unwrap().answer == b,
                s.membership(ex, &x, DIA).unwrap().answer == d,
                membership_diamond_fixed_word(ex, &x, al).unwrap().0 == d,
            ];
            ensure!(got.iter().all(|g| *g), "{ex} on {}: {got:?}", word_to_string(&x));
            checks += 5;
            if simple {
                ensure!(membership_box_fixed_word(ex, &x, al).unwrap() == b, "box fixed word: {ex} on {}", word_to_string(&x));
                fast += 1;
                if sh0 {
                    ensure!(
                        membership_diamond_simple_sh0(ex, &x, al).unwrap() == d,
                        "simple star-free: {ex} on {}",
                        word_to_string(&x)
                    );
                    fast += 1;
                }
            }
        }
        if sh0 {
            let (ans, wit) = nonemptiness_box_sh0(ex, &s).unwrap();
            ensure!(ans == !a_box.is_empty(), "star-free nonemptiness: {ex}");
            ensure!(wit == a_box.shortest_word(), "star-free witness: {ex}");
            fast += 1;
        }
    }
    Ok(format!("{} expressions, {checks} general and {fast} fast-path checks", c.items.len()))
}

fn ngrams_present(x: &[Letter], n: usize) -> bool {
    bin().words_of_len(n).iter().all(|g| x.windows(n).any(|win| win == g.as_slice()))
}

fn subword_family() -> Outcome {
    let s = Solver::new(bin());
    let mut lens = Vec::new();
    for (n, expect) in [(2usize, 5usize), (3, 10)] {
        let r = s.nonemptiness(&family_box_subword(n).unwrap(), BOX).unwrap();
        let x = r.witness.ok_or(format!("n={n}: no witness"))?;
        ensure!(x.len() == expect, "n={n}: witness {} has length {}", word_to_string(&x), x.len());
        ensure!(x.len() > 1 << n, "n={n}: below 2^n+1");
        ensure!(ngrams_present(&x, n), "n={n}: witness misses an n-gram");
        lens.push(format!("n={n}: {}", word_to_string(&x)));
    }
    Ok(lens.join(", "))
}

fn fooling_sets() -> Outcome {
    let s = Solver::new(bin());
    let mut out = Vec::new();
    for n in 1..=4 {
        let fam = family_diamond_power(n).unwrap();
        let v = verify_fooling_set(&fooling_pairs_diamond(n, 1 << 20).unwrap(), |x| {
            Ok(s.membership(&fam, x, DIA)?.answer)
        })
        .unwrap();
        ensure!(v.verified && v.bound == 1 << n, "diamond n={n}: {v:?}");
        let states = s.construct_nfa(&fam, DIA).unwrap().num_states();
        ensure!(states >= v.bound, "diamond n={n}: automaton has {states} < {} states", v.bound);
        out.push(format!("n={n}: bound {} (ours {states})", v.bound));
    }
    let fam = family_box_doubleexp(1).unwrap();
    let v = verify_fooling_set(&fooling_pairs_box(1, 1 << 20).unwrap(), |x| Ok(s.membership(&fam, x, BOX)?.answer))
        .unwrap();
    ensure!(v.verified && v.bound == 6 && v.bound >= 4, "box n=1: {v:?}");
    out.push("box n=1: bound 6".into());
    Ok(out.join(", "))
}

fn box_intersection_empty(es: &[ParamRegex], al: &Alphabet) -> bool {
    let s = Solver::new(al.clone());
    let mut acc = Nfa::universal(al.clone());
    for x in es {
        acc = acc.product(&s.construct_nfa(x, BOX).unwrap()).unwrap();
    }
    acc.is_empty()
}

fn lemma3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut empties = 0;
    let mut cases: Vec<(Alphabet, Vec<ParamRegex>)> = Vec::new();
    for _ in 0..200 {
        let al = bin();
        let k = rng.gen_range(1..=3);
        let es = (0..k).map(|_| {
            let nvars = rng.gen_range(0..=2);
            let size = rng.gen_range(1..=6);
            random_expr(&mut rng, &al, &VARS[..nvars], size)
        });
        cases.push((al.clone(), es.collect()));
    }
    let unary = Alphabet::from_chars("0").unwrap();
    for _ in 0..20 {
        let k = rng.gen_range(2..=3);
        let es = (0..k).map(|_| {
            let size = rng.gen_range(1..=6);
            random_expr(&mut rng, &unary, &VARS[..2], size)
        });
        cases.push((unary.clone(), es.collect()));
    }
    for (al, es) in &cases {
        let (combined, wide) = lemma3_combine(es, al).unwrap();
        let s = Solver::new(wide);
        let nonempty = s.nonemptiness(&combined, BOX).map_err(|err| format!("{combined}: {err}"))?.answer;
        let expect_empty = box_intersection_empty(es, al);
        ensure!(nonempty != expect_empty, "disagreement on {:?}", es.iter().map(print).collect::<Vec<_>>());
        empties += expect_empty as usize;
    }
    Ok(format!("{} tuples ({} with empty intersection)", cases.len(), empties))
}

const INFINITE: [&str; 5] = ["0*", "1*0", "(01)*", "0(0|1)*", "(0|1)*"];

fn domain_text(words: &[Word]) -> String {
    words.iter().map(|x| word_to_string(x)).collect::<Vec<_>>().join("|")
}

/// Images that decide certainty on words up to length 6: every domain word
/// of length at most 6, and for infinite domains one longer word, which can
/// never occur inside such a short word.
fn brute_images(text: &str, al: &Alphabet) -> Vec<Word> {
    let d = parse(text, al).unwrap();
    let mut out: Vec<Word> = all_words(al, 6).into_iter().filter(|x| matches_plain(&d, x)).collect();
    if let Some(long) = all_words(al, 12).into_iter().find(|x| x.len() > 6 && matches_plain(&d, x)) {
        out.push(long);
    }
    out
}

fn finitary_route() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let al = bin();
    let words = all_words(&al, 6);
    let (mut pairs, mut finite_specs) = (0, 0);
    while pairs < 120 {
        let nvars = rng.gen_range(1..=3);
        let size = rng.gen_range(2..=10);
        let ex = random_expr(&mut rng, &al, &VARS[..nvars], size);
        let vars = ex.variables();
        if vars.is_empty() {
            continue;
        }
        let mut spec = DomainSpec::new(al.clone());
        let mut texts = Vec::new();
        for v in &vars {
            let text = if rng.gen_bool(0.5) {
                INFINITE[rng.gen_range(0..INFINITE.len())].to_string()
            } else {
                let pool = all_words(&al, 3);
                let mut pick: Vec<Word> = (0..rng.gen_range(1..=4)).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
                pick.sort();
                pick.dedup();
                domain_text(&pick)
            };
            spec.insert_regex(v.as_str(), &text, 10_000).unwrap();
            texts.push(text);
        }
        let s = Solver::new(al.clone());
        let fin = s.construct_nfa_finitary(&ex, &spec).map_err(|err| format!("{ex}: {err}"))?;

        // Brute force: intersect over every combination of images.
        let images: Vec<Vec<Word>> = texts.iter().map(|t| brute_images(t, &al)).collect();
        let mut alive = vec![true; words.len()];
        let mut idx = vec![0usize; vars.len()];
        'outer: loop {
            let nu: Vec<(VarName, Word)> = vars.iter().cloned().zip(idx.iter().enumerate().map(|(i, &j)| images[i][j].clone())).collect();
            let look = lookup(&nu);
            for (k, x) in words.iter().enumerate() {
                if alive[k] && !matches(&ex, &look, x) {
                    alive[k] = false;
                }
            }
            if !alive.iter().any(|a| *a) {
                break;
            }
            for i in (0..idx.len()).rev() {
                idx[i] += 1;
                if idx[i] < images[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
        for (k, x) in words.iter().enumerate() {
            ensure!(
                fin.accepts(x).unwrap() == alive[k],
                "{ex} with {texts:?} on {}: automaton {} brute force {}",
                word_to_string(x),
                !alive[k],
                alive[k]
            );
        }
        if spec.all_finite() {
            let enumerative = s.construct_nfa_enumerative(&ex, &spec, BOX).unwrap();
            for x in &words {
                ensure!(fin.accepts(x).unwrap() == enumerative.accepts(x).unwrap(), "{ex} routes differ on {}", word_to_string(x));
            }
            finite_specs += 1;
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, {finite_specs} all-finite"))
}

fn universality() -> Outcome {
    let s = Solver::new(bin());
    let r = s.universality(&e("(0|1)*"), BOX).unwrap();
    ensure!(r.answer, "(0|1)* not universal under certainty");
    let r = s.universality(&e("$x(0|1)*"), BOX).unwrap();
    ensure!(!r.answer && r.witness == Some(vec![]), "certainty $x(0|1)*: {r:?}");
    let r = s.universality(&e("($x(0|1)*)|_"), DIA).unwrap();
    ensure!(r.answer, "possibility ($x(0|1)*)|_ not universal");
    let r = s.universality(&e("$x(0|1)*"), DIA).unwrap();
    ensure!(!r.answer && r.witness == Some(vec![]), "possibility $x(0|1)*: {r:?}");
    Ok("4 exact answers".into())
}

fn sandwich_and_witnesses(c: &Corpus) -> Outcome {
    let mut checked = 0usize;
    for (i, (al, ex)) in c.items.iter().enumerate() {
        let s = Solver::new(al.clone());
        let a_box = s.construct_nfa(ex, BOX).unwrap();
        let a_dia = s.construct_nfa(ex, DIA).unwrap();
        let a_e = s.expression_nfa(ex).unwrap();
        let words = all_words(al, 6);
        for nu in paramregex::valuations::enumerate_valuations(&ex.variables(), al, 1 << 20).unwrap() {
            let inst = nu.apply_to_nfa(&a_e).unwrap();
            for x in &words {
                let (b, m, d) = (a_box.accepts(x).unwrap(), inst.accepts(x).unwrap(), a_dia.accepts(x).unwrap());
                ensure!((!b || m) && (!m || d), "sandwich broken: {ex} {nu} on {}", word_to_string(x));
                checked += 1;
            }
        }
        let (_, other) = &c.items[(i + 2) % c.items.len()];
        let regular = ParamRegex::star(ParamRegex::union_all(al.letters()[1..].iter().map(|&l| ParamRegex::lit(l))));
        for sem in [BOX, DIA] {
            let oracle = |x: &[Letter], f: &ParamRegex| if sem == BOX { brute_box(f, al, x) } else { brute_diamond(f, al, x) };
            let r = s.nonemptiness(ex, sem).unwrap();
            ensure!(r.answer == r.witness.is_some(), "nonemptiness report inconsistent: {ex}");
            if let Some(x) = &r.witness {
                ensure!(oracle(x, ex), "nonemptiness witness rejected: {ex}");
            }
            let r = s.universality(ex, sem).unwrap();
            if let Some(x) = &r.witness {
                ensure!(!r.answer && !oracle(x, ex), "universality counterexample accepted: {ex}");
            }
            let r = s.containment(ex, other, sem).unwrap();
            if let Some(x) = &r.witness {
                ensure!(!r.answer && oracle(x, ex) && !oracle(x, other), "containment counterexample wrong: {ex} vs {other}");
            }
            let r = s.nonempty_int_reg(ex, &regular, sem).unwrap();
            if let Some(x) = &r.witness {
                ensure!(r.answer && oracle(x, ex) && matches_plain(&regular, x), "intersection witness wrong: {ex}");
            }
        }
    }
    Ok(format!("{checked} sandwich checks, witnesses re-verified"))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{tag} criterion {id}: {name} [{took:.2?}] {detail}");
    };
    let secs = |s| Some(Duration::from_secs(s));

    report(1, "worked examples", secs(1), &mut worked_examples);
    let c = corpus();
    report(2, "oracle equivalence", secs(120), &mut || oracle_equivalence(&c));
    report(3, "subword family witness length", secs(30), &mut subword_family);
    report(4, "fooling-set lower bounds", secs(60), &mut fooling_sets);
    report(5, "combinator emptiness equivalence", secs(120), &mut lemma3);
    report(6, "finitary-valuation route", secs(120), &mut finitary_route);
    report(7, "universality examples", None, &mut universality);
    report(8, "sandwich and witness re-verification", None, &mut || sandwich_and_witnesses(&c));

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
