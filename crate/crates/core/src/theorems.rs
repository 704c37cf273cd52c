//! Closed forms for the smallest `k` with `chi(Sq^{n-k}) ι_k` outside the
//! image of `Sq^1` (resp. `Sq^1, Sq^2`), their brute-force verification, and
//! two small combinatorial companions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::km::Km;
use crate::milnor::Ideal;

/// Binary digit sum.
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

/// Which branch of the closed form applies to `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "UPPERCASE")]
pub enum CaseTag {
    /// `n = 4m + b`, `1 <= b <= 3`.
    A { m: u64, b: u64 },
    /// `n = 0 mod 4`.
    B,
    /// `n = 8m + b`, `1 <= b <= 7`.
    C { m: u64, b: u64 },
    /// `n = 2^e mod 2^{e+2}`, `e >= 3`.
    D { e: u32 },
    /// `n = 3 * 2^e mod 2^{e+2}`, `e >= 3`.
    E { e: u32 },
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::A { m, b } => write!(f, "A (m={m}, b={b})"),
            CaseTag::B => write!(f, "B"),
            CaseTag::C { m, b } => write!(f, "C (m={m}, b={b})"),
            CaseTag::D { e } => write!(f, "D (e={e})"),
            CaseTag::E { e } => write!(f, "E (e={e})"),
        }
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

pub fn case_tag(n: u64, ideal: Ideal) -> Result<CaseTag> {
    require_positive(n)?;
    Ok(match ideal {
        Ideal::Sq1 => match n % 4 {
            0 => CaseTag::B,
            b => CaseTag::A { m: n / 4, b },
        },
        Ideal::Sq12 => match n % 8 {
            0 => {
                let e = n.trailing_zeros();
                // n / 2^e is odd; its residue mod 4 separates the cases.
                if (n >> e) % 4 == 1 {
                    CaseTag::D { e }
                } else {
                    CaseTag::E { e }
                }
            }
            b => CaseTag::C { m: n / 8, b },
        },
    })
}

/// The closed-form smallest `k`. `None` for `Sq12` with `n < 8`, where
/// every proper class lies in the image.
pub fn min_k_formula(n: u64, ideal: Ideal) -> Result<Option<u32>> {
    if ideal == Ideal::Sq1 && n < 2 || ideal == Ideal::Sq12 && n == 0 {
        return Err(Error::Domain(format!("n={n} is out of range for {ideal}")));
    }
    if ideal == Ideal::Sq12 && n < 8 {
        return Ok(None);
    }
    Ok(Some(match case_tag(n, ideal)? {
        CaseTag::A { m, b } | CaseTag::C { m, b } => alpha(m) + b as u32,
        CaseTag::B | CaseTag::D { .. } => alpha(n) + 1,
        CaseTag::E { .. } => alpha(n) + 2,
    }))
}

/// `0` when `n = 1 mod 4`, else `1`.
pub fn eps(n: u64) -> Result<u32> {
    require_positive(n)?;
    Ok(if n % 4 == 1 { 0 } else { 1 })
}

pub fn eps_prime(n: u64) -> Result<u32> {
    require_positive(n)?;
    Ok(match n % 8 {
        1 => 0,
        2 | 3 => 1,
        4 | 5 => 3,
        6 | 7 => 4,
        _ => match case_tag(n, Ideal::Sq12)? {
            CaseTag::D { .. } => 1,
            CaseTag::E { .. } => 2,
            t => unreachable!("n = 0 mod 8 gave {t:?}"),
        },
    })
}

/// Outcome of searching `k = 1, 2, ...` for a class outside the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// Smallest `k < n` with the class outside the image.
    Found { k: u32 },
    /// Every `k < n` lands in the image; only `k = n` (where the class is
    /// `ι_n` itself) escapes it.
    TopClassOnly { n: u32 },
    /// Nothing found up to `k_max`, and `k_max < n`.
    NotFound,
}

impl SearchOutcome {
    /// The smallest `k` including `k = n`.
    pub fn k(&self) -> Option<u32> {
        match *self {
            SearchOutcome::Found { k } => Some(k),
            SearchOutcome::TopClassOnly { n } => Some(n),
            SearchOutcome::NotFound => None,
        }
    }

    /// The smallest `k < n`.
    pub fn proper_k(&self) -> Option<u32> {
        match *self {
            SearchOutcome::Found { k } => Some(k),
            _ => None,
        }
    }
}

/// Whether `chi(Sq^{n-k}) ι_k` lies in the image of the ideal's operations.
pub fn chi_in_image(n: usize, k: u32, ideal: Ideal, column_cap: usize) -> Result<bool> {
    let km = Km::with_column_cap(k, column_cap)?;
    let class = km.chi_class(n)?;
    Ok(km.in_image(&class, n, ideal.operations())?.in_image)
}

/// Tests `k = 1, ..., min(k_max, n)` in turn by direct membership computation.
pub fn min_k_search(n: u32, ideal: Ideal, k_max: u32, column_cap: usize) -> Result<SearchOutcome> {
    if n < 2 || k_max < 1 {
        return Err(Error::Domain(format!("need n >= 2 and k_max >= 1 (n={n}, k_max={k_max})")));
    }
    for k in 1..=k_max.min(n) {
        if !chi_in_image(n as usize, k, ideal, column_cap)? {
            return Ok(if k == n {
                SearchOutcome::TopClassOnly { n }
            } else {
                SearchOutcome::Found { k }
            });
        }
    }
    Ok(SearchOutcome::NotFound)
}

/// `A`: `n = 0 mod 4`, one split of a power of two. `B`: `n = 0 mod 8`, two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitPart {
    A,
    B,
}

impl std::str::FromStr for SplitPart {
    type Err = crate::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(SplitPart::A),
            "b" => Ok(SplitPart::B),
            _ => Err(crate::ParseError::new(s, "expected A or B")),
        }
    }
}

impl SplitPart {
    fn modulus(self) -> u64 {
        match self {
            SplitPart::A => 4,
            SplitPart::B => 8,
        }
    }

    fn steps(self) -> u32 {
        match self {
            SplitPart::A => 1,
            SplitPart::B => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub n: u64,
    pub target: u64,
    pub min_sum: u32,
    /// Trimmed sequences `(r_1, r_2, ...)`, sorted.
    pub minimizers: Vec<Vec<u32>>,
}

fn check_part(n: u64, part: SplitPart) -> Result<()> {
    if n == 0 || !n.is_multiple_of(part.modulus()) {
        return Err(Error::Domain(format!(
            "part {part:?} needs n a positive multiple of {} (n={n})",
            part.modulus()
        )));
    }
    Ok(())
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// All `r >= 0` with `sum r_i (2^i - 1) = n - alpha(n) - (1 or 2)`,
/// keeping those of least `sum r_i`.
pub fn split_minimizers(n: u64, part: SplitPart) -> Result<SplitResult> {
    check_part(n, part)?;
    let target = n - alpha(n) as u64 - part.steps() as u64;
    let mut len = 1;
    while (1u64 << (len + 1)) - 1 <= target {
        len += 1;
    }
    let weights: Vec<u64> = (1..=len).map(|i| (1u64 << i) - 1).collect();

    fn walk(i: usize, rest: u64, w: &[u64], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == 0 {
            // Weight 1 absorbs the remainder.
            cur[0] = rest as u32;
            out.push(cur.clone());
            return;
        }
        for c in 0..=rest / w[i] {
            cur[i] = c as u32;
            walk(i - 1, rest - c * w[i], w, cur, out);
        }
        cur[i] = 0;
    }

    let mut all = Vec::new();
    walk(len - 1, target, &weights, &mut vec![0; len], &mut all);
    let min_sum = all
        .iter()
        .map(|r| r.iter().sum::<u32>())
        .min()
        .expect("the all-ones-weight solution exists");
    let minimizers: BTreeSet<Vec<u32>> = all
        .into_iter()
        .filter(|r| r.iter().sum::<u32>() == min_sum)
        .map(trim)
        .collect();
    Ok(SplitResult {
        n,
        target,
        min_sum,
        minimizers: minimizers.into_iter().collect(),
    })
}

/// Sequences reached from the binary digits `(eps_1, eps_2, ...)` of `n` by
/// one (part A) or two (part B) moves that add 2 at position `i - 1` and
/// remove 1 at position `i`.
pub fn split_moves(n: u64, part: SplitPart) -> Result<Vec<Vec<u32>>> {
    check_part(n, part)?;
    let bits = 64 - n.leading_zeros() as usize;
    let start: Vec<u32> = (1..bits).map(|i| ((n >> i) & 1) as u32).collect();
    let mut frontier: BTreeSet<Vec<u32>> = BTreeSet::from([start]);
    for _ in 0..part.steps() {
        let mut next = BTreeSet::new();
        for v in &frontier {
            // v[j] holds position j + 1; positions start at 1.
            for j in 1..v.len() {
                if v[j] >= 1 {
                    let mut w = v.clone();
                    w[j] -= 1;
                    w[j - 1] += 2;
                    next.insert(w);
                }
            }
        }
        frontier = next;
    }
    Ok(frontier.into_iter().map(trim).collect())
}

/// Coefficient of `x^j` in `sum_i β_i (v_1 x^2 + 2x)^i`, as `i -> c` with the
/// power `v_1^{j-i}` left implicit.
pub fn two_series_image(j: u32) -> Result<BTreeMap<u32, BigUint>> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let mut out = BTreeMap::new();
    for i in j.div_ceil(2)..=j {
        let c = binomial(i, j - i) << (2 * i - j);
        out.insert(i, c);
    }
    Ok(out)
}

fn binomial(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(0), 0);
        assert_eq!(alpha(7), 3);
        assert_eq!(alpha(12), 2);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(min_k_formula(8, Ideal::Sq12).unwrap(), Some(2));
        assert_eq!(min_k_formula(12, Ideal::Sq12).unwrap(), Some(5));
        assert_eq!(min_k_formula(24, Ideal::Sq12).unwrap(), Some(4));
        assert_eq!(min_k_formula(9, Ideal::Sq1).unwrap(), Some(2));
        assert_eq!(min_k_formula(7, Ideal::Sq12).unwrap(), None);
        assert!(min_k_formula(1, Ideal::Sq1).is_err());
        for n in 9..=15 {
            assert_eq!(min_k_formula(n, Ideal::Sq12).unwrap(), Some(n as u32 - 7));
        }
    }

    #[test]
    fn case_tags() {
        assert_eq!(case_tag(8, Ideal::Sq12).unwrap(), CaseTag::D { e: 3 });
        assert_eq!(case_tag(16, Ideal::Sq12).unwrap(), CaseTag::D { e: 4 });
        assert_eq!(case_tag(24, Ideal::Sq12).unwrap(), CaseTag::E { e: 3 });
        assert_eq!(case_tag(40, Ideal::Sq12).unwrap(), CaseTag::D { e: 3 });
        assert_eq!(case_tag(13, Ideal::Sq12).unwrap(), CaseTag::C { m: 1, b: 5 });
        assert_eq!(case_tag(6, Ideal::Sq1).unwrap(), CaseTag::A { m: 1, b: 2 });
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps(5).unwrap(), 0);
        assert_eq!(eps(6).unwrap(), 1);
        assert_eq!(eps_prime(14).unwrap(), 4);
        assert_eq!(eps_prime(16).unwrap(), 1);
        assert_eq!(eps_prime(24).unwrap(), 2);
        assert_eq!(eps_prime(9).unwrap(), 0);
    }

    #[test]
    fn search_examples() {
        let cap = crate::km::DEFAULT_COLUMN_CAP;
        assert_eq!(min_k_search(9, Ideal::Sq12, 6, cap).unwrap(), SearchOutcome::Found { k: 2 });
        assert_eq!(min_k_search(8, Ideal::Sq1, 6, cap).unwrap(), SearchOutcome::Found { k: 2 });
        let seven = min_k_search(7, Ideal::Sq12, 7, cap).unwrap();
        assert_eq!(seven, SearchOutcome::TopClassOnly { n: 7 });
        assert_eq!(seven.proper_k(), None);
        assert_eq!(min_k_search(3, Ideal::Sq1, 3, cap).unwrap().k(), Some(3));
        assert_eq!(min_k_search(9, Ideal::Sq12, 1, cap).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn split_examples() {
        let r = split_minimizers(8, SplitPart::A).unwrap();
        assert_eq!(r.min_sum, 2);
        assert_eq!(r.minimizers, vec![vec![0, 2]]);
        let r = split_minimizers(16, SplitPart::B).unwrap();
        assert_eq!(r.min_sum, alpha(16) + 2);
        assert_eq!(r.minimizers, split_moves(16, SplitPart::B).unwrap());
        assert!(split_minimizers(6, SplitPart::A).is_err());
        assert!(split_minimizers(12, SplitPart::B).is_err());
    }

    #[test]
    fn two_series_examples() {
        let as_u64 = |m: BTreeMap<u32, BigUint>| -> Vec<(u32, u64)> {
            m.into_iter().map(|(i, c)| (i, u64::try_from(c).unwrap())).collect()
        };
        assert_eq!(
            as_u64(two_series_image(8).unwrap()),
            vec![(4, 1), (5, 40), (6, 240), (7, 448), (8, 256)]
        );
        assert_eq!(as_u64(two_series_image(1).unwrap()), vec![(1, 2)]);
        assert_eq!(as_u64(two_series_image(2).unwrap()), vec![(1, 1), (2, 4)]);
    }

    /// Coefficients of `(v x^2 + 2x)^i` by repeated multiplication.
    fn expand(max_i: u32) -> Vec<BTreeMap<u32, BigUint>> {
        let mut rows: Vec<BTreeMap<u32, BigUint>> = vec![BTreeMap::from([(0, BigUint::from(1u32))])];
        for _ in 0..max_i {
            let prev = rows.last().unwrap();
            let mut next: BTreeMap<u32, BigUint> = BTreeMap::new();
            for (&j, c) in prev {
                *next.entry(j + 2).or_default() += c;
                *next.entry(j + 1).or_default() += c * 2u32;
            }
            rows.push(next);
        }
        rows
    }

    #[test]
    fn two_series_matches_expansion() {
        let rows = expand(40);
        for j in 1..=40 {
            let image = two_series_image(j).unwrap();
            for (i, row) in rows.iter().enumerate() {
                let expected = row.get(&j).cloned().unwrap_or_default();
                let got = image.get(&(i as u32)).cloned().unwrap_or_default();
                assert_eq!(got, expected, "i={i} j={j}");
            }
        }
    }

    proptest! {
        #[test]
        fn each_n_has_one_case_per_part(n in 1u64..1 << 40) {
            let a = case_tag(n, Ideal::Sq1).unwrap();
            let is_a = matches!(a, CaseTag::A { b: 1..=3, .. });
            prop_assert_eq!(is_a, n % 4 != 0);
            let c = case_tag(n, Ideal::Sq12).unwrap();
            match c {
                CaseTag::C { m, b } => prop_assert_eq!(8 * m + b, n),
                CaseTag::D { e } => prop_assert_eq!(n % (1 << (e + 2)), 1 << e),
                CaseTag::E { e } => prop_assert_eq!(n % (1 << (e + 2)), 3 << e),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }

        #[test]
        fn formulas_match_eps_versions(n in 8u64..1 << 40) {
            prop_assert_eq!(min_k_formula(n, Ideal::Sq1).unwrap(), Some(alpha(n) + eps(n).unwrap()));
            prop_assert_eq!(min_k_formula(n, Ideal::Sq12).unwrap(), Some(alpha(n) + eps_prime(n).unwrap()));
        }

        #[test]
        fn two_series_recurrence(j in 3u32..60) {
            let cur = two_series_image(j).unwrap();
            let back2 = two_series_image(j - 2).unwrap();
            let back1 = two_series_image(j - 1).unwrap();
            for (&i, c) in &cur {
                let a = back2.get(&(i - 1)).cloned().unwrap_or_default();
                let b = back1.get(&(i - 1)).cloned().unwrap_or_default();
                prop_assert_eq!(c.clone(), a + b * 2u32);
            }
        }
    }
}
