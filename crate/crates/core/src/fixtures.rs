//! Published action tables and constants, with an evaluator for the class
//! names they use.
//!
//! Names: `u2 ... u33` (for `k = 2`) and `g3 ... g21` (for `k = 3`) are the
//! degree-named generators, `sq[a,b,...]` is the composite
//! `Sq^a Sq^b ... ι`, and a few primed or `x` names abbreviate sums.
//! Expressions are sums (`+`) of products (juxtaposition or `*`) of names
//! raised to powers (`^`).

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::km::{KPoly, Km};

/// `(x, Q0 x, Q1 x)` on the generators of `H*(K(Z/2,2))` below degree 34.
pub const K2_E1_ACTIONS: &[(&str, &str, &str)] = &[
    ("u2", "u3", "u5"),
    ("u3", "0", "u3^2"),
    ("u5", "u3^2", "0"),
    ("u9", "u5^2", "u3^4"),
    ("u17", "u9^2", "u5^4"),
    ("u33", "u17^2", "u9^4"),
];

/// `(x, defining word, Sq1 x, Sq2 x, Q1 x)` on the generators of
/// `H*(K(Z/2,3))` below degree 24.
pub const K3_GENERATOR_ACTIONS: &[(&str, &str, &str, &str, &str)] = &[
    ("g3", "sq[]", "g4", "g5", "g6 + g3^2"),
    ("g4", "sq[1]", "0", "g6", "g7"),
    ("g5", "sq[2]", "g3^2", "g7", "g4^2"),
    ("g6", "sq[2,1]", "g7", "0", "0"),
    ("g7", "sq[3,1]", "0", "0", "0"),
    ("g9", "sq[4,2]", "g5^2", "0", "g3^4"),
    ("g10", "sq[4,2,1]", "g11", "g6^2", "g13"),
    ("g11", "sq[5,2,1]", "0", "g13", "g7^2"),
    ("g13", "sq[6,3,1]", "g7^2", "0", "0"),
    ("g17", "sq[8,4,2]", "g9^2", "0", "g5^4"),
    ("g18", "sq[8,4,2,1]", "g19", "g10^2", "g21"),
    ("g19", "sq[9,4,2,1]", "0", "g21", "g11^2"),
    ("g21", "sq[10,5,2,1]", "g11^2", "0", "0"),
];

/// An `A(1)`-submodule of `H*(K(Z/2,3))` given by generators, with the
/// single class carrying its `Q0`- and `Q1`-homology (`"0"` when none).
#[derive(Clone, Copy, Debug)]
pub struct K3Submodule {
    pub bottom: u32,
    pub generators: &'static [&'static str],
    pub q0: &'static str,
    pub q1: &'static str,
}

pub const K3_SUBMODULES: &[K3Submodule] = &[
    K3Submodule { bottom: 3, generators: &["g3", "g3 g4"], q0: "g6^2", q1: "g3^2" },
    K3Submodule { bottom: 9, generators: &["g9", "g3^2 g5", "g3 g4^3", "x19"], q0: "0", q1: "g5^2" },
    K3Submodule { bottom: 10, generators: &["g10'"], q0: "g13'", q1: "g11'" },
    K3Submodule { bottom: 12, generators: &["g3 g9", "g5^3", "g3^5 g4"], q0: "0", q1: "g3^2 g5^2" },
    K3Submodule { bottom: 13, generators: &["g3 g10'", "g3^2 g10'", "g3 g4 g13'"], q0: "0", q1: "g3^2 g11'" },
    K3Submodule { bottom: 17, generators: &["g17", "g5^2 g9"], q0: "0", q1: "g9^2" },
    K3Submodule { bottom: 18, generators: &["g18"], q0: "g10^2", q1: "g10^2" },
    K3Submodule {
        bottom: 21,
        generators: &["g21 + g10 g11", "sq[12,6,3,1] + g6^3 g7"],
        q0: "g21 + g10 g11",
        q1: "0",
    },
];

/// Abbreviations used by the tables, per `k`.
pub const ALIASES: &[(u32, &str, &str)] = &[
    (2, "x5", "u5 + u2 u3"),
    (3, "g10'", "g10 + g4 g6"),
    (3, "g11'", "g11 + g4 g7"),
    (3, "g13'", "g13 + g6 g7"),
    (3, "x19", "g4^2 g5 g6 + g3 g4 g6^2 + g3 g4^4"),
];

/// Largest `c` with a nonzero dual Stiefel-Whitney class `w̄_c` on some
/// `n`-dimensional Spin manifold, as `(n_min, n_max, c)`.
pub const SPIN_DUAL_SW: &[(u64, u64, u64)] = &[(8, 12, 6), (13, 15, 7), (16, 17, 14), (18, 23, 15), (32, 33, 30)];

/// Dimensions where the minimal `k` has to be raised by one.
pub const SPIN_DUAL_SW_EXCEPTIONS: &[u64] = &[9, 10, 11, 12, 17, 33];

/// Value of a class expression in `H*(K(Z/2,k))`.
pub fn eval(km: &Km, expr: &str) -> Result<KPoly> {
    let err = |reason: String| Error::Parse(ParseError::new(expr, reason));
    let mut sum = KPoly::zero();
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err("empty term".into()));
        }
        let mut product = KPoly::one();
        for factor in term.split(|c: char| c.is_whitespace() || c == '*').filter(|f| !f.is_empty()) {
            let (atom, power) = match factor.rsplit_once('^') {
                Some((a, p)) if !a.ends_with('[') => {
                    let p: u32 = p.parse().map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                    (a, p)
                }
                _ => (factor, 1),
            };
            product = product.mul(&atom_value(km, atom).map_err(|e| match e {
                Error::Parse(_) => err(format!("unknown class {atom:?}")),
                other => other,
            })?.pow(power));
        }
        sum.add_assign(&product);
    }
    Ok(sum)
}

fn atom_value(km: &Km, atom: &str) -> Result<KPoly> {
    let unknown = || Error::Parse(ParseError::new(atom, "unknown class"));
    match atom {
        "0" => return Ok(KPoly::zero()),
        "1" => return Ok(KPoly::one()),
        _ => {}
    }
    if let Some(inner) = atom.strip_prefix("sq[").and_then(|s| s.strip_suffix(']')) {
        let word: Vec<u32> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| unknown()))
            .collect::<Result<_>>()?;
        return if word.is_empty() { Ok(km.iota()) } else { km.admissible_class(&word) };
    }
    if let Some(&(_, _, body)) = ALIASES.iter().find(|(k, name, _)| *k == km.k() && *name == atom) {
        return eval(km, body);
    }
    km.names().and_then(|t| t.class(km, atom)).ok_or_else(unknown)
}

/// One compared cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub class: String,
    pub operation: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

fn compare(km: &Km, class: &str, operation: &str, expected: &str, computed: &KPoly) -> Result<CellCheck> {
    let want = eval(km, expected)?;
    Ok(CellCheck {
        class: class.into(),
        operation: operation.into(),
        expected: expected.into(),
        computed: km.display(computed),
        ok: &want == computed,
    })
}

/// Recomputes every cell of [`K2_E1_ACTIONS`].
pub fn check_k2_e1() -> Result<Vec<CellCheck>> {
    let km = Km::new(2)?;
    let mut out = Vec::new();
    for &(x, q0, q1) in K2_E1_ACTIONS {
        let v = eval(&km, x)?;
        out.push(compare(&km, x, "Q0", q0, &km.q_action(0, &v))?);
        out.push(compare(&km, x, "Q1", q1, &km.q_action(1, &v))?);
    }
    Ok(out)
}

/// Recomputes every cell of [`K3_GENERATOR_ACTIONS`], including that each
/// defining word gives an indecomposable class of the named degree.
pub fn check_k3_generators() -> Result<Vec<CellCheck>> {
    let km = Km::new(3)?;
    let mut out = Vec::new();
    for &(x, word, sq1, sq2, q1) in K3_GENERATOR_ACTIONS {
        let v = eval(&km, x)?;
        let w = eval(&km, word)?;
        let degree = x[1..].parse::<usize>().map_err(|_| Error::Parse(ParseError::new(x, "bad name")))?;
        let indecomposable = km
            .generator_ids(degree)
            .into_iter()
            .filter(|&g| km.gen_degree(g) == degree)
            .any(|g| w.contains(&km.gen_monomial(g)));
        let mut word_check = compare(&km, x, "word", x, &w)?;
        word_check.expected = word.into();
        word_check.ok &= indecomposable;
        out.push(word_check);
        out.push(compare(&km, x, "Sq1", sq1, &km.sq_action(1, &v))?);
        out.push(compare(&km, x, "Sq2", sq2, &km.sq_action(2, &v))?);
        out.push(compare(&km, x, "Q1", q1, &km.q_action(1, &v))?);
    }
    Ok(out)
}
