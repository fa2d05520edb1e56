//! Free groups, the truncated Magnus expansion and the bi-ordering it
//! induces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::braid::{dehornoy_sign, BraidWord, DEFAULT_BUDGET};
use crate::error::{OrderError, Result};
use crate::group::{word_ball, zigzag, Ball, Group, Sign};
use crate::oracle::{GroupAutomorphism, SignOracle};

pub const DEFAULT_DEGREE: usize = 8;
pub const DEGREE_CAP: usize = 32;

const LETTERS: &[u8] = b"xyzwuv";

/// A freely reduced word; letter `i` is the `i`-th generator, `−i` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(rank: usize, letters: Vec<i32>) -> Result<Self> {
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize > rank)
        {
            return Err(OrderError::RejectedInput(format!(
                "generator {} out of range for rank {}",
                bad, rank
            )));
        }
        Ok(FreeWord::reduced(rank, &letters))
    }

    fn reduced(rank: usize, letters: &[i32]) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { rank, letters: out }
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: vec![],
        }
    }

    pub fn generator(rank: usize, i: i32) -> Self {
        FreeWord::new(rank, vec![i]).expect("generator in range")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::reduced(self.rank, &letters)
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Parses `"xyX"` (uppercase is inverse) or `"1 2 -1"`; `"e"` or an
    /// empty string is the identity.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(FreeWord::identity(rank));
        }
        let numeric = t
            .chars()
            .all(|c| c.is_ascii_digit() || c == '-' || c == ',' || c.is_whitespace());
        let letters = if numeric {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<i32>()
                        .map_err(|_| OrderError::Parse(format!("invalid letter {:?}", x)))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            t.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    let lower = c.to_ascii_lowercase() as u8;
                    let i = LETTERS
                        .iter()
                        .position(|&x| x == lower)
                        .ok_or_else(|| OrderError::Parse(format!("invalid letter {:?}", c)))?
                        as i32
                        + 1;
                    Ok(if c.is_ascii_uppercase() { -i } else { i })
                })
                .collect::<Result<Vec<_>>>()?
        };
        FreeWord::new(rank, letters)
    }

    /// `xyX` style rendering.
    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        self.letters
            .iter()
            .map(|&l| {
                let c = LETTERS[l.unsigned_abs() as usize - 1] as char;
                if l < 0 {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            let a = self.letters.iter().map(|&l| zigzag(l as i64));
            let b = other.letters.iter().map(|&l| zigzag(l as i64));
            a.cmp(b)
        })
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let xs: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", xs.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn word(&self, letters: &[i32]) -> Result<FreeWord> {
        FreeWord::new(self.rank, letters.to_vec())
    }
}

impl Group for FreeGroup {
    type Element = FreeWord;
    type Key = FreeWord;

    fn name(&self) -> String {
        format!("F{}", self.rank)
    }
    fn identity(&self) -> FreeWord {
        FreeWord::identity(self.rank)
    }
    fn multiply(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.concat(b)
    }
    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }
    fn generators(&self) -> Vec<FreeWord> {
        (1..=self.rank as i32)
            .map(|i| FreeWord::generator(self.rank, i))
            .collect()
    }
    fn key(&self, g: &FreeWord) -> FreeWord {
        g.clone()
    }
    fn equal(&self, a: &FreeWord, b: &FreeWord) -> Result<bool> {
        Ok(a == b)
    }
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        word_ball(self, radius)
    }
}

/// A monomial `X_{i₁} X_{i₂} ⋯` as its index sequence (1-based).
pub type Monomial = Vec<u8>;

/// A power series in noncommuting variables, truncated above degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncSeries {
    pub fn one(degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![], BigInt::one());
        TruncSeries { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, m: &[u8]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree.min(other.degree);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > degree {
                    continue;
                }
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                TruncSeries::add_term(&mut terms, m, c1 * c2);
            }
        }
        TruncSeries { degree, terms }
    }

    /// `self · (1 + X_i)^{±1}`, truncated.
    fn mul_letter(&self, letter: i32) -> Self {
        let i = letter.unsigned_abs() as u8;
        let mut terms = self.terms.clone();
        if letter > 0 {
            for (m, c) in &self.terms {
                if m.len() < self.degree {
                    let mut mm = m.clone();
                    mm.push(i);
                    TruncSeries::add_term(&mut terms, mm, c.clone());
                }
            }
        } else {
            for (m, c) in &self.terms {
                let mut mm = m.clone();
                let mut sign = BigInt::one();
                while mm.len() < self.degree {
                    mm.push(i);
                    sign = -sign;
                    TruncSeries::add_term(&mut terms, mm.clone(), &sign * c);
                }
            }
        }
        TruncSeries {
            degree: self.degree,
            terms,
        }
    }

    /// Least nonconstant monomial with nonzero coefficient, in graded then
    /// lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms
            .iter()
            .filter(|(m, c)| !m.is_empty() && !c.is_zero())
            .min_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)))
    }
}

/// `XYX` for the index sequence `[1, 2, 1]`.
pub fn monomial_name(m: &[u8]) -> String {
    m.iter().map(|&i| LETTERS[i as usize - 1].to_ascii_uppercase() as char).collect()
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        items.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (k, (m, c)) in items.iter().enumerate() {
            let name = monomial_name(m);
            let mag = c.abs();
            let body = match (name.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => name,
                (false, false) => format!("{}{}", mag, name),
            };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{}", out)
    }
}

/// `xᵢ ↦ 1 + Xᵢ`, `xᵢ⁻¹ ↦ 1 − Xᵢ + Xᵢ² − ⋯`, truncated above degree `D`.
pub fn magnus_expand(w: &FreeWord, degree: usize) -> TruncSeries {
    w.letters
        .iter()
        .fold(TruncSeries::one(degree), |s, &l| s.mul_letter(l))
}

/// Sign of the leading coefficient of `expand(w) − 1`, raising the degree
/// by doubling up to the cap when the truncation vanishes.
pub fn magnus_sign(w: &FreeWord, degree: usize) -> Result<Sign> {
    if w.is_empty() {
        return Err(OrderError::IdentityInput);
    }
    let mut d = degree.max(1);
    loop {
        if let Some((_, c)) = magnus_expand(w, d).leading_term() {
            return Ok(Sign::from_positive(c.is_positive()));
        }
        if d >= DEGREE_CAP {
            return Err(OrderError::InconclusiveTruncation { degree: d });
        }
        d = (2 * d).min(DEGREE_CAP);
    }
}

pub struct MagnusOracle {
    rank: usize,
    degree: usize,
}

impl MagnusOracle {
    pub fn new(rank: usize, degree: usize) -> Self {
        MagnusOracle { rank, degree }
    }
}

impl SignOracle<FreeWord> for MagnusOracle {
    fn sign(&self, g: &FreeWord) -> Result<Sign> {
        magnus_sign(g, self.degree)
    }
    fn descriptor(&self) -> String {
        format!("magnus(rank={},degree={})", self.rank, self.degree)
    }
}

/// The left-ordering of `F₂` pulled back from `<_D` on `B₃` along the
/// embedding `x ↦ σ₁², y ↦ σ₂²`. Not conjugation invariant.
pub struct BraidPullbackOracle {
    budget: u64,
}

impl BraidPullbackOracle {
    pub fn new() -> Self {
        BraidPullbackOracle {
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn embed(w: &FreeWord) -> BraidWord {
        let letters = w
            .letters
            .iter()
            .flat_map(|&l| [l, l])
            .collect::<Vec<_>>();
        BraidWord::new(3, letters).expect("rank-two word")
    }
}

impl Default for BraidPullbackOracle {
    fn default() -> Self {
        BraidPullbackOracle::new()
    }
}

impl SignOracle<FreeWord> for BraidPullbackOracle {
    fn sign(&self, g: &FreeWord) -> Result<Sign> {
        if g.rank != 2 {
            return Err(OrderError::RejectedInput("braid pullback needs rank 2".into()));
        }
        dehornoy_sign(&BraidPullbackOracle::embed(g), self.budget)?.ok_or(OrderError::IdentityInput)
    }
    fn descriptor(&self) -> String {
        "dehornoy-pullback(x=s1^2,y=s2^2)".into()
    }
}

/// An endomorphism of a free group given by generator images, with the
/// images of its inverse.
#[derive(Clone, Debug)]
pub struct FreeAutomorphism {
    label: String,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

fn substitute(images: &[FreeWord], w: &FreeWord) -> FreeWord {
    let rank = images.first().map(|x| x.rank).unwrap_or(w.rank);
    w.letters.iter().fold(FreeWord::identity(rank), |acc, &l| {
        let img = &images[l.unsigned_abs() as usize - 1];
        acc.concat(&if l > 0 { img.clone() } else { img.inverse() })
    })
}

impl FreeAutomorphism {
    /// Checks on generators that the two substitutions are mutually inverse.
    pub fn new(label: impl Into<String>, images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Result<Self> {
        let rank = images.len();
        let phi = FreeAutomorphism {
            label: label.into(),
            images,
            inverse_images,
        };
        for i in 1..=rank as i32 {
            let g = FreeWord::generator(rank, i);
            if phi.backward(&phi.forward(&g)) != g || phi.forward(&phi.backward(&g)) != g {
                return Err(OrderError::RejectedInput(format!(
                    "{}: supplied inverse does not invert generator {}",
                    phi.label, i
                )));
            }
        }
        Ok(phi)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn forward(&self, w: &FreeWord) -> FreeWord {
        substitute(&self.images, w)
    }

    pub fn backward(&self, w: &FreeWord) -> FreeWord {
        substitute(&self.inverse_images, w)
    }

    pub fn as_automorphism(&self) -> GroupAutomorphism<FreeWord> {
        let f = self.images.clone();
        let b = self.inverse_images.clone();
        let images: Vec<String> = self.images.iter().map(|w| w.pretty()).collect();
        GroupAutomorphism::new(
            format!("{}[{}]", self.label, images.join(",")),
            move |w: &FreeWord| substitute(&f, w),
            move |w: &FreeWord| substitute(&b, w),
        )
    }
}

fn words(rank: usize, xs: &[&str]) -> Vec<FreeWord> {
    xs.iter()
        .map(|s| FreeWord::parse(rank, s).expect("literal word"))
        .collect()
}

/// Probe automorphisms of `F₂`: `x↔y`, `x↦xy`, `x↦x⁻¹`, and conjugation
/// by `x`.
pub fn free_probe_automorphisms() -> Vec<FreeAutomorphism> {
    let mk = |label: &str, f: &[&str], b: &[&str]| {
        FreeAutomorphism::new(label, words(2, f), words(2, b)).expect("probe automorphism")
    };
    vec![
        mk("swap", &["y", "x"], &["y", "x"]),
        mk("transvection", &["xy", "y"], &["xY", "y"]),
        mk("invert-x", &["X", "y"], &["X", "y"]),
        mk("inner-x", &["x", "xyX"], &["x", "Xyx"]),
    ]
}

/// The Magnus oracle, its pushforwards under the probes, and the braid
/// pullback left-ordering.
pub fn free_catalog(degree: usize) -> Vec<Arc<dyn SignOracle<FreeWord>>> {
    let magnus: Arc<dyn SignOracle<FreeWord>> = Arc::new(MagnusOracle::new(2, degree));
    let mut out = vec![magnus.clone()];
    for phi in free_probe_automorphisms() {
        out.push(crate::oracle::act_automorphism(&phi.as_automorphism(), magnus.clone()));
    }
    out.push(Arc::new(BraidPullbackOracle::new()));
    out
}
