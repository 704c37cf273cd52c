//! The mod-2 Steenrod algebra in the Milnor basis.
//!
//! A basis element `Sq(r1, r2, ...)` is stored as a [`MilnorSeq`] with
//! trailing zeros trimmed. Its degree is `sum (2^j - 1) r_j` and its excess
//! is `sum r_j`. Products use Milnor's matrix formula with multinomial
//! coefficients reduced mod 2 by Lucas' theorem.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Weight `2^j - 1` of the `j`-th entry (1-based).
#[inline]
pub fn xi_degree(j: usize) -> usize {
    (1usize << j) - 1
}

/// A Milnor basis element `Sq(R)`, trailing zeros trimmed.
///
/// The empty sequence is the unit `Sq(0) = 1`.
///
/// Ordering is by degree first, then lexicographically *descending* on the
/// zero-padded entries, so that `basis(6)` lists `Sq(6), Sq(3,1), Sq(0,2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MilnorSeq(Vec<u32>);

impl MilnorSeq {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        let mut v = entries.into();
        while v.last() == Some(&0) {
            v.pop();
        }
        MilnorSeq(v)
    }

    pub fn unit() -> Self {
        MilnorSeq(Vec::new())
    }

    /// `Sq^n = Sq(n)`.
    pub fn sq(n: u32) -> Self {
        MilnorSeq::new(vec![n])
    }

    /// The Milnor primitive `Q_j = Sq(0, ..., 0, 1)` with the 1 in position `j + 1`.
    pub fn q(j: usize) -> Self {
        let mut v = vec![0; j + 1];
        v[j] = 1;
        MilnorSeq(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `r_j` with 1-based `j`; zero past the end.
    pub fn get(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        degree(self)
    }

    pub fn excess(&self) -> usize {
        excess(self)
    }
}

impl From<Vec<u32>> for MilnorSeq {
    fn from(v: Vec<u32>) -> Self {
        MilnorSeq::new(v)
    }
}

impl From<&[u32]> for MilnorSeq {
    fn from(v: &[u32]) -> Self {
        MilnorSeq::new(v.to_vec())
    }
}

fn cmp_padded_desc(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        match y.cmp(&x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Ord for MilnorSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_padded_desc(&self.0, &other.0))
    }
}

impl PartialOrd for MilnorSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MilnorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Sq(0)");
        }
        f.write_str("Sq(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MilnorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `Sq(2,1)`, `(2,1)` and `2,1`; `Sq()` and `Sq(0)` are the unit.
impl FromStr for MilnorSeq {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix("Sq")
            .or_else(|| t.strip_prefix("sq"))
            .unwrap_or(t)
            .trim();
        let inner = match (inner.strip_prefix('('), inner.strip_suffix(')')) {
            (Some(_), Some(_)) => &inner[1..inner.len() - 1],
            (None, None) => inner,
            _ => return Err(ParseError::new(s, "unbalanced parentheses")),
        };
        if inner.trim().is_empty() {
            return Ok(MilnorSeq::unit());
        }
        let entries = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| ParseError::new(s, "entries must be nonnegative integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MilnorSeq::new(entries))
    }
}

pub fn degree(r: &MilnorSeq) -> usize {
    r.0.iter()
        .enumerate()
        .map(|(i, &x)| xi_degree(i + 1) * x as usize)
        .sum()
}

pub fn excess(r: &MilnorSeq) -> usize {
    r.0.iter().map(|&x| x as usize).sum()
}

/// All Milnor basis elements of degree `d`, in descending lexicographic order.
pub fn basis(d: usize) -> Vec<MilnorSeq> {
    basis_with_max_excess(d, usize::MAX)
}

/// The Milnor basis elements of degree `d` whose excess is at most `max_excess`.
pub fn basis_with_max_excess(d: usize, max_excess: usize) -> Vec<MilnorSeq> {
    let mut top = 0;
    while xi_degree(top + 1) <= d {
        top += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; top];
    fill_basis(d, max_excess, 0, &mut cur, &mut out);
    out
}

// Fills entries left to right, largest r_1 first.
fn fill_basis(
    remaining: usize,
    excess_left: usize,
    pos: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<MilnorSeq>,
) {
    if pos == cur.len() {
        if remaining == 0 {
            out.push(MilnorSeq::new(cur.clone()));
        }
        return;
    }
    let w = xi_degree(pos + 1);
    // Entries beyond `pos` can only absorb multiples of their weights; the
    // cheapest check is that the last slot must finish the job exactly.
    let max_r = (remaining / w).min(excess_left);
    for r in (0..=max_r).rev() {
        let rest = remaining - r * w;
        if pos + 1 == cur.len() && rest != 0 {
            continue;
        }
        cur[pos] = r as u32;
        fill_basis(rest, excess_left - r, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// A formal GF(2) sum of Milnor basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SteenrodSum {
    terms: BTreeSet<MilnorSeq>,
}

impl SteenrodSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(MilnorSeq::unit())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term mod 2: adding a present term removes it.
    pub fn toggle(&mut self, r: MilnorSeq) {
        if !self.terms.remove(&r) {
            self.terms.insert(r);
        }
    }

    pub fn contains(&self, r: &MilnorSeq) -> bool {
        self.terms.contains(r)
    }

    /// Terms in enumeration order.
    pub fn terms(&self) -> impl Iterator<Item = &MilnorSeq> {
        self.terms.iter()
    }

    /// The common degree of all terms, if the sum is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_assign_sum(&mut self, other: &SteenrodSum) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    /// Bilinear extension of [`product`].
    pub fn mul(&self, other: &SteenrodSum) -> SteenrodSum {
        let mut out = SteenrodSum::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.add_assign_sum(&product(a, b));
            }
        }
        out
    }
}

impl From<MilnorSeq> for SteenrodSum {
    fn from(r: MilnorSeq) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(r);
        SteenrodSum { terms }
    }
}

impl FromIterator<MilnorSeq> for SteenrodSum {
    fn from_iter<I: IntoIterator<Item = MilnorSeq>>(iter: I) -> Self {
        let mut s = SteenrodSum::zero();
        for r in iter {
            s.toggle(r);
        }
        s
    }
}

impl fmt::Display for SteenrodSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SteenrodSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SteenrodSum {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "0" {
            return Ok(SteenrodSum::zero());
        }
        t.split('+').map(|p| p.parse::<MilnorSeq>()).collect()
    }
}

/// Multinomial coefficient of `parts` mod 2: odd iff the binary digits of the
/// parts are pairwise disjoint.
#[inline]
fn multinomial_odd(parts: &[usize]) -> bool {
    let mut seen = 0usize;
    for &p in parts {
        if seen & p != 0 {
            return false;
        }
        seen |= p;
    }
    true
}

/// `Sq(R) * Sq(S)` by Milnor's matrix formula.
///
/// Sums over matrices `X` with `sum_j 2^j x_ij = r_i` (rows `i >= 1`) and
/// `sum_i x_ij = s_j` (columns `j >= 1`); each contributes `Sq(T)` with
/// `t_n = sum_{i+j=n} x_ij` and coefficient the product of the multinomials
/// along the diagonals.
pub fn product(r: &MilnorSeq, s: &MilnorSeq) -> SteenrodSum {
    if r.is_unit() {
        return SteenrodSum::from(s.clone());
    }
    if s.is_unit() {
        return SteenrodSum::from(r.clone());
    }
    let rv: Vec<usize> = r.0.iter().map(|&x| x as usize).collect();
    let sv: Vec<usize> = s.0.iter().map(|&x| x as usize).collect();
    let rows = rv.len() + 1;
    let cols = sv.len() + 1;
    let diags = rv.len() + sv.len();

    let mut m = vec![vec![0usize; cols]; rows];
    m[0][1..cols].copy_from_slice(&sv);
    for i in 1..rows {
        m[i][0] = rv[i - 1];
    }

    let mut result = SteenrodSum::zero();
    let mut diagonal = vec![0usize; diags];
    let mut nth = Vec::with_capacity(rows);
    loop {
        let mut odd = true;
        for n in 1..=diags {
            nth.clear();
            let lo = n.saturating_sub(cols - 1);
            let hi = n.min(rows - 1);
            for i in lo..=hi {
                nth.push(m[i][n - i]);
            }
            if !multinomial_odd(&nth) {
                odd = false;
                break;
            }
            diagonal[n - 1] = nth.iter().sum();
        }
        if odd {
            result.toggle(MilnorSeq::new(
                diagonal.iter().map(|&x| x as u32).collect::<Vec<_>>(),
            ));
        }

        // Advance to the next admissible matrix.
        let mut found = false;
        let mut i = 1;
        while !found && i < rows {
            let mut sum = m[i][0];
            let mut j = 1;
            while !found && j < cols {
                let p2 = 1usize << j;
                if sum >= p2 {
                    let above: usize = (0..i).map(|k| m[k][j]).sum();
                    if above != 0 {
                        found = true;
                        let (top, below) = m.split_at_mut(1);
                        let top = &mut top[0];
                        for row in 1..i {
                            let r = &mut below[row - 1];
                            r[0] = rv[row - 1];
                            for (t, x) in top[1..cols].iter_mut().zip(&mut r[1..cols]) {
                                *t += std::mem::take(x);
                            }
                        }
                        for (t, x) in top[1..j].iter_mut().zip(&mut below[i - 1][1..j]) {
                            *t += std::mem::take(x);
                        }
                        m[0][j] -= 1;
                        m[i][j] += 1;
                        m[i][0] = sum - p2;
                    } else {
                        sum += m[i][j] * p2;
                    }
                } else {
                    sum += m[i][j] * p2;
                }
                j += 1;
            }
            i += 1;
        }
        if !found {
            break;
        }
    }
    result
}

/// `chi(Sq^d)`: the sum of every Milnor basis element of degree `d`.
pub fn chi(d: usize) -> SteenrodSum {
    basis(d).into_iter().collect()
}

/// `chi(Sq^d)` from the antipode recursion
/// `chi(Sq^d) = sum_{i=1}^{d} Sq^i chi(Sq^{d-i})`.
pub fn chi_recursive(d: usize) -> SteenrodSum {
    let mut table: Vec<SteenrodSum> = Vec::with_capacity(d + 1);
    table.push(SteenrodSum::one());
    for e in 1..=d {
        let mut acc = SteenrodSum::zero();
        for i in 1..=e {
            acc.add_assign_sum(&SteenrodSum::from(MilnorSeq::sq(i as u32)).mul(&table[e - i]));
        }
        table.push(acc);
    }
    table.swap_remove(d)
}

/// The left ideals whose images are tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    /// `im(Sq^1)`
    Sq1,
    /// `im(Sq^1, Sq^2)`
    Sq12,
}

impl Ideal {
    /// Operation degrees generating the image.
    pub fn operations(self) -> &'static [u32] {
        match self {
            Ideal::Sq1 => &[1],
            Ideal::Sq12 => &[1, 2],
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ideal::Sq1 => "sq1",
            Ideal::Sq12 => "sq12",
        })
    }
}

impl FromStr for Ideal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sq1" => Ok(Ideal::Sq1),
            "sq12" => Ok(Ideal::Sq12),
            _ => Err(ParseError::new(s, "expected sq1 or sq12")),
        }
    }
}

/// Whether `Sq(R)` lies outside the left image `Sq^1 A` (`r_1` even) or
/// `Sq^1 A + Sq^2 A` (`r_1 = 0 mod 4` and `r_2` even).
pub fn ideal_criterion(r: &MilnorSeq, ideal: Ideal) -> bool {
    match ideal {
        Ideal::Sq1 => r.get(1).is_multiple_of(2),
        Ideal::Sq12 => r.get(1).is_multiple_of(4) && r.get(2).is_multiple_of(2),
    }
}
