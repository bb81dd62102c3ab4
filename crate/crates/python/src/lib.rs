//! Python bindings. Expressions and words are passed as text; `_` is the
//! empty word. Import the built library as `paramregex`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use paramregex::constructions::{self, FoolingSet};
use paramregex::fast_paths;
use paramregex::{Alphabet, DecisionReport, DomainSpec, Error, Limits, ParamRegex, Semantics, Word};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CountCapExceeded { .. } | Error::StateCapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn semantics(s: &str) -> PyResult<Semantics> {
    s.parse().map_err(py_err)
}

fn alphabet(s: &str) -> PyResult<Alphabet> {
    Alphabet::from_chars(s).map_err(py_err)
}

fn word_str(w: &[paramregex::Letter]) -> String {
    paramregex::word_to_string(w)
}

/// Parsed expression.
#[pyclass(name = "Expr", frozen)]
struct PyExpr {
    inner: ParamRegex,
}

#[pymethods]
impl PyExpr {
    #[new]
    #[pyo3(signature = (text, alphabet="01"))]
    fn new(text: &str, alphabet: &str) -> PyResult<Self> {
        let al = self::alphabet(alphabet)?;
        Ok(PyExpr { inner: paramregex::parse(text, &al).map_err(py_err)? })
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().iter().map(|v| v.to_string()).collect()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn star_height(&self) -> usize {
        self.inner.star_height()
    }

    fn __str__(&self) -> String {
        paramregex::print(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", paramregex::print(&self.inner))
    }

    fn __eq__(&self, other: PyRef<'_, PyExpr>) -> bool {
        self.inner == other.inner
    }
}

/// Answer of a decision problem.
#[pyclass(name = "Report", frozen)]
struct PyReport {
    #[pyo3(get)]
    answer: bool,
    #[pyo3(get)]
    witness: Option<String>,
    #[pyo3(get)]
    valuation: Option<BTreeMap<String, String>>,
    #[pyo3(get)]
    valuations: usize,
    #[pyo3(get)]
    states: usize,
    json: String,
}

impl From<DecisionReport> for PyReport {
    fn from(r: DecisionReport) -> Self {
        PyReport {
            answer: r.answer,
            witness: r.witness.as_deref().map(word_str),
            valuation: r.valuation.as_ref().map(|v| v.iter().map(|(x, w)| (x.to_string(), word_str(w))).collect()),
            valuations: r.stats.valuations,
            states: r.stats.states,
            json: r.to_json().to_string(),
        }
    }
}

#[pymethods]
impl PyReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __bool__(&self) -> bool {
        self.answer
    }

    fn __repr__(&self) -> String {
        format!("Report({})", self.json)
    }
}

/// Decision procedures over a fixed alphabet.
#[pyclass(name = "Solver", frozen)]
struct PySolver {
    inner: paramregex::Solver,
}

impl PySolver {
    fn expr(&self, text: &str) -> PyResult<ParamRegex> {
        paramregex::parse(text, self.inner.alphabet()).map_err(py_err)
    }

    fn word(&self, text: &str) -> PyResult<Word> {
        self.inner.alphabet().parse_word(text).map_err(py_err)
    }

    fn spec(&self, domains: &BTreeMap<String, String>) -> PyResult<DomainSpec> {
        let mut spec = DomainSpec::new(self.inner.alphabet().clone());
        for (v, d) in domains {
            spec.insert_regex(v, d, self.inner.limits().max_words).map_err(py_err)?;
        }
        Ok(spec)
    }

    fn run(
        &self,
        problem: paramregex::Problem,
        e: &ParamRegex,
        sem: &str,
        domains: Option<BTreeMap<String, String>>,
    ) -> PyResult<PyReport> {
        let sem = semantics(sem)?;
        let s = &self.inner;
        let r = match domains {
            Some(d) => s.decide_domains(problem, e, &self.spec(&d)?, sem),
            None => match problem {
                paramregex::Problem::Membership(w) => s.membership(e, &w, sem),
                paramregex::Problem::Nonemptiness => s.nonemptiness(e, sem),
                paramregex::Problem::Universality => s.universality(e, sem),
                paramregex::Problem::Containment(r) => s.containment(e, &r, sem),
                paramregex::Problem::NonemptyIntReg(r) => s.nonempty_int_reg(e, &r, sem),
            },
        };
        Ok(r.map_err(py_err)?.into())
    }
}

#[pymethods]
impl PySolver {
    #[new]
    #[pyo3(signature = (alphabet="01", max_valuations=None, max_states=None, max_words=None, parallel=false))]
    fn new(
        alphabet: &str,
        max_valuations: Option<usize>,
        max_states: Option<usize>,
        max_words: Option<usize>,
        parallel: bool,
    ) -> PyResult<Self> {
        let d = Limits::default();
        let limits = Limits {
            max_valuations: max_valuations.unwrap_or(d.max_valuations),
            max_states: max_states.unwrap_or(d.max_states),
            max_words: max_words.unwrap_or(d.max_words),
        };
        let inner = paramregex::Solver::new(self::alphabet(alphabet)?).with_limits(limits).with_parallel(parallel);
        Ok(PySolver { inner })
    }

    #[pyo3(signature = (expr, word, semantics="box", domains=None))]
    fn membership(&self, expr: &str, word: &str, semantics: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<PyReport> {
        let w = self.word(word)?;
        self.run(paramregex::Problem::Membership(w), &self.expr(expr)?, semantics, domains)
    }

    #[pyo3(signature = (expr, semantics="box", domains=None))]
    fn nonemptiness(&self, expr: &str, semantics: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<PyReport> {
        self.run(paramregex::Problem::Nonemptiness, &self.expr(expr)?, semantics, domains)
    }

    #[pyo3(signature = (expr, semantics="box", domains=None))]
    fn universality(&self, expr: &str, semantics: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<PyReport> {
        self.run(paramregex::Problem::Universality, &self.expr(expr)?, semantics, domains)
    }

    #[pyo3(signature = (lhs, rhs, semantics="box", domains=None))]
    fn containment(&self, lhs: &str, rhs: &str, semantics: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<PyReport> {
        let r = self.expr(rhs)?;
        self.run(paramregex::Problem::Containment(r), &self.expr(lhs)?, semantics, domains)
    }

    #[pyo3(signature = (expr, regular, semantics="box", domains=None))]
    fn nonempty_int_reg(&self, expr: &str, regular: &str, semantics: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<PyReport> {
        let r = self.expr(regular)?;
        self.run(paramregex::Problem::NonemptyIntReg(r), &self.expr(expr)?, semantics, domains)
    }

    /// Automaton of the language as DOT or JSON text.
    #[pyo3(signature = (expr, semantics="box", format="dot", domains=None))]
    fn build_nfa(&self, expr: &str, semantics: &str, format: &str, domains: Option<BTreeMap<String, String>>) -> PyResult<String> {
        let e = self.expr(expr)?;
        let sem = self::semantics(semantics)?;
        let a = match domains {
            Some(d) => self.inner.construct_nfa_domains(&e, &self.spec(&d)?, sem),
            None => self.inner.construct_nfa(&e, sem),
        }
        .map_err(py_err)?;
        match format {
            "dot" => Ok(a.to_dot()),
            "json" => Ok(a.to_json_string()),
            other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        }
    }

    /// Fixed-word □-membership for simple expressions.
    fn membership_box_fixed_word(&self, expr: &str, word: &str) -> PyResult<bool> {
        fast_paths::membership_box_fixed_word(&self.expr(expr)?, &self.word(word)?, self.inner.alphabet()).map_err(py_err)
    }

    /// Fixed-word ◇-membership with an accepting valuation.
    fn membership_diamond_fixed_word(&self, expr: &str, word: &str) -> PyResult<(bool, Option<BTreeMap<String, String>>)> {
        let (ok, nu) = fast_paths::membership_diamond_fixed_word(&self.expr(expr)?, &self.word(word)?, self.inner.alphabet())
            .map_err(py_err)?;
        Ok((ok, nu.map(|v| v.iter().map(|(x, w)| (x.to_string(), word_str(w))).collect())))
    }

    /// □-nonemptiness for star-free expressions.
    fn nonemptiness_box_sh0(&self, expr: &str) -> PyResult<(bool, Option<String>)> {
        let (ok, w) = fast_paths::nonemptiness_box_sh0(&self.expr(expr)?, &self.inner).map_err(py_err)?;
        Ok((ok, w.as_deref().map(word_str)))
    }

    /// Checks a fooling set against the language of `expr`; returns
    /// `(verified, bound, violation)`.
    #[pyo3(signature = (pairs, expr, semantics="box"))]
    fn verify_fooling_set(&self, pairs: Vec<(String, String)>, expr: &str, semantics: &str) -> PyResult<(bool, usize, Option<String>)> {
        let e = self.expr(expr)?;
        let sem = self::semantics(semantics)?;
        let pairs = pairs.iter().map(|(u, v)| Ok((self.word(u)?, self.word(v)?))).collect::<PyResult<Vec<_>>>()?;
        let p = FoolingSet::new(pairs).map_err(py_err)?;
        let v = constructions::verify_fooling_set(&p, |w| Ok(self.inner.membership(&e, w, sem)?.answer)).map_err(py_err)?;
        Ok((v.verified, v.bound, v.violation))
    }
}

/// Expression family by kind: `box-subword`, `box-doubleexp` or `diamond-power`.
#[pyfunction]
fn family(kind: &str, n: usize) -> PyResult<String> {
    let e = match kind {
        "box-subword" => constructions::family_box_subword(n),
        "box-doubleexp" => constructions::family_box_doubleexp(n),
        "diamond-power" => constructions::family_diamond_power(n),
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(paramregex::print(&e.map_err(py_err)?))
}

/// Fooling pairs of kind `box` or `diamond`.
#[pyfunction]
#[pyo3(signature = (kind, n, cap=1_000_000))]
fn fooling_pairs(kind: &str, n: usize, cap: usize) -> PyResult<Vec<(String, String)>> {
    let p = match kind {
        "box" => constructions::fooling_pairs_box(n, cap),
        "diamond" => constructions::fooling_pairs_diamond(n, cap),
        other => return Err(PyValueError::new_err(format!("unknown fooling kind {other:?}"))),
    }
    .map_err(py_err)?;
    Ok(p.pairs().iter().map(|(u, v)| (word_str(u), word_str(v))).collect())
}

/// Combines expressions into one whose □-language is empty exactly when
/// the intersection of theirs is. Returns `(expression, alphabet)`.
#[pyfunction]
#[pyo3(signature = (exprs, alphabet="01"))]
fn combine(exprs: Vec<String>, alphabet: &str) -> PyResult<(String, String)> {
    let al = self::alphabet(alphabet)?;
    let es = exprs.iter().map(|t| paramregex::parse(t, &al).map_err(py_err)).collect::<PyResult<Vec<_>>>()?;
    let (e, wide) = constructions::lemma3_combine(&es, &al).map_err(py_err)?;
    Ok((paramregex::print(&e), wide.letters().iter().map(|l| l.as_char()).collect()))
}

#[pymodule]
#[pyo3(name = "paramregex")]
fn paramregex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySolver>()?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(fooling_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(combine, m)?)?;
    Ok(())
}
