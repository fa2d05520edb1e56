//! Braid groups `B_n` in the Artin generators, handle reduction, and the
//! orderings `<_D`, `<'_D` and the composites `<_i`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{OrderError, Result};
use crate::group::{word_ball, zigzag, Ball, Group, Sign};
use crate::oracle::{GroupAutomorphism, SignOracle};

/// Default number of elementary steps (handle reductions and free
/// cancellations) allowed per reduction.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A word in `σ₁^{±1}, …, σ_{n−1}^{±1}`: letter `i` is `σᵢ`, `−i` is `σᵢ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(OrderError::RejectedInput("braid groups need at least 2 strands".into()));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= n)
        {
            return Err(OrderError::RejectedInput(format!(
                "generator index {} out of range for {} strands",
                bad, n
            )));
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: vec![] }
    }

    pub fn generator(n: usize, i: i32) -> Self {
        BraidWord::new(n, vec![i]).expect("generator in range")
    }

    pub fn strands(&self) -> usize {
        self.n
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

    /// Concatenation, freely reduced.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        free_reduce(&BraidWord { n: self.n, letters })
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = BraidWord::identity(self.n);
        for _ in 0..k {
            out = out.concat(self);
        }
        out
    }

    /// Smallest generator index occurring in the word.
    pub fn min_index(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.unsigned_abs()).min()
    }

    /// Parses `"1 2 -1"` or `"1,2,-1"`; `"e"` or an empty string is the
    /// identity.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return BraidWord::new(n, vec![]);
        }
        let letters = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<i32>()
                    .map_err(|_| OrderError::Parse(format!("invalid braid letter {:?}", x)))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n, letters).map_err(|e| OrderError::Parse(e.to_string()))
    }

    /// `σ₁σ₂⁻¹` style rendering.
    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        let mut out = String::new();
        for &l in &self.letters {
            out.push('σ');
            for d in l.unsigned_abs().to_string().chars() {
                out.push(SUB[d.to_digit(10).unwrap() as usize]);
            }
            if l < 0 {
                out.push_str("⁻¹");
            }
        }
        out
    }
}

impl Ord for BraidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            let a = self.letters.iter().map(|&l| zigzag(l as i64));
            let b = other.letters.iter().map(|&l| zigzag(l as i64));
            a.cmp(b)
        })
    }
}

impl PartialOrd for BraidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let xs: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", xs.join(" "))
    }
}

fn free_reduce_letters(letters: &[i32], steps: &mut u64) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
            *steps += 1;
        } else {
            out.push(l);
        }
    }
    out
}

pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut steps = 0;
    BraidWord {
        n: w.n,
        letters: free_reduce_letters(&w.letters, &mut steps),
    }
}

/// The handle whose right end is leftmost, as `(left, right)` positions.
/// Such a handle contains no other handle, so it is always permitted.
fn leftmost_handle(letters: &[i32], n: usize) -> Option<(usize, usize)> {
    let mut last: Vec<Option<usize>> = vec![None; n];
    for (j, &l) in letters.iter().enumerate() {
        let k = l.unsigned_abs() as usize;
        if let Some(i) = last[k] {
            if letters[i] == -l {
                return Some((i, j));
            }
        }
        last[k] = Some(j);
        for slot in last.iter_mut().skip(k + 1) {
            *slot = None;
        }
    }
    None
}

/// Reduces every handle, always the one ending leftmost, until none is left.
/// The result is empty or `σ_i`-positive or `σ_i`-negative for its minimal
/// index `i`.
pub fn handle_reduce(w: &BraidWord, budget: u64) -> Result<BraidWord> {
    let mut steps = 0u64;
    let mut letters = free_reduce_letters(&w.letters, &mut steps);
    while let Some((i, j)) = leftmost_handle(&letters, w.n) {
        steps += 1;
        if steps > budget {
            return Err(OrderError::BudgetExceeded { budget });
        }
        let k = letters[i].abs();
        let e = letters[i].signum();
        let mut next = Vec::with_capacity(letters.len() + 2 * (j - i));
        next.extend_from_slice(&letters[..i]);
        for &x in &letters[i + 1..j] {
            if x.abs() == k + 1 {
                next.extend_from_slice(&[-(k + 1) * e, k * x.signum(), (k + 1) * e]);
            } else {
                next.push(x);
            }
        }
        next.extend_from_slice(&letters[j + 1..]);
        letters = free_reduce_letters(&next, &mut steps);
        if steps > budget {
            return Err(OrderError::BudgetExceeded { budget });
        }
    }
    Ok(BraidWord { n: w.n, letters })
}

fn reduced_sign(reduced: &BraidWord) -> Option<Sign> {
    let m = reduced.min_index()? as i32;
    let positive = reduced.letters.iter().any(|&l| l == m);
    Some(Sign::from_positive(positive))
}

/// Sign in `<_D`; `None` for the identity.
pub fn dehornoy_sign(b: &BraidWord, budget: u64) -> Result<Option<Sign>> {
    Ok(reduced_sign(&handle_reduce(b, budget)?))
}

/// `σᵢ ↦ σ_{n−i}`.
pub fn flip(b: &BraidWord) -> BraidWord {
    let n = b.n as i32;
    BraidWord {
        n: b.n,
        letters: b.letters.iter().map(|&l| l.signum() * (n - l.abs())).collect(),
    }
}

/// Sign in `<'_D`.
pub fn reverse_dehornoy_sign(b: &BraidWord, budget: u64) -> Result<Option<Sign>> {
    dehornoy_sign(&flip(b), budget)
}

/// Least `j` with `b ∈ B_j = ⟨σ₁, …, σ_{j−1}⟩`.
pub fn parabolic_index(b: &BraidWord, budget: u64) -> Result<usize> {
    let reduced = handle_reduce(&flip(b), budget)?;
    Ok(match reduced.min_index() {
        None => 1,
        Some(i) => b.n - i as usize + 1,
    })
}

/// Sign in `<_i`: `<'_D` outside `B_{i+1}`, `<_D` inside it.
pub fn ordering_i_sign(b: &BraidWord, i: usize, budget: u64) -> Result<Option<Sign>> {
    if i == 0 || i >= b.n {
        return Err(OrderError::RejectedInput(format!(
            "ordering index {} out of range for {} strands",
            i, b.n
        )));
    }
    let reduced_flip = handle_reduce(&flip(b), budget)?;
    let Some(m) = reduced_flip.min_index() else {
        return Ok(None);
    };
    let index = b.n - m as usize + 1;
    if index > i + 1 {
        Ok(reduced_sign(&reduced_flip))
    } else {
        dehornoy_sign(b, budget)
    }
}

/// `σᵢ^e ↦ σᵢ^{−e}`.
pub fn invert_generators(b: &BraidWord) -> BraidWord {
    BraidWord {
        n: b.n,
        letters: b.letters.iter().map(|l| -l).collect(),
    }
}

pub fn invert_generators_automorphism() -> GroupAutomorphism<BraidWord> {
    GroupAutomorphism::new("invert-generators", invert_generators, invert_generators)
}

/// `g ↦ w g w⁻¹`.
pub fn inner_braid_automorphism(w: &BraidWord) -> GroupAutomorphism<BraidWord> {
    let fw = w.clone();
    let bw = w.clone();
    GroupAutomorphism::new(
        format!("inner[{}]", w),
        move |g: &BraidWord| fw.concat(g).concat(&fw.inverse()),
        move |g: &BraidWord| bw.inverse().concat(g).concat(&bw),
    )
}

const BURAU_P: u64 = (1 << 61) - 1;
const BURAU_T: u64 = 0x0123_4567_89ab_cdef % BURAU_P;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % BURAU_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

/// Unreduced Burau matrix at a fixed `t` modulo `2⁶¹ − 1`, row-major. A
/// homomorphism, so equal braids have equal images.
pub fn burau_fingerprint(b: &BraidWord) -> Vec<u64> {
    let n = b.n;
    let t = BURAU_T;
    let one_minus_t = (1 + BURAU_P - t) % BURAU_P;
    let t_inv = powmod(t, BURAU_P - 2);
    let one_minus_tinv = (1 + BURAU_P - t_inv) % BURAU_P;
    let mut m = vec![0u64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    for &l in &b.letters {
        let a = l.unsigned_abs() as usize - 1;
        let c = a + 1;
        for r in 0..n {
            let (x, y) = (m[r * n + a], m[r * n + c]);
            let (nx, ny) = if l > 0 {
                ((mulmod(x, one_minus_t) + y) % BURAU_P, mulmod(x, t))
            } else {
                (mulmod(y, t_inv), (x + mulmod(y, one_minus_tinv)) % BURAU_P)
            };
            m[r * n + a] = nx;
            m[r * n + c] = ny;
        }
    }
    m
}

/// `B_n` with equality decided by handle reduction.
#[derive(Clone, Debug)]
pub struct BraidGroup {
    n: usize,
    budget: u64,
}

impl BraidGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "braid groups need at least 2 strands");
        BraidGroup {
            n,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn sigma(&self, i: i32) -> BraidWord {
        BraidWord::generator(self.n, i)
    }

    pub fn word(&self, letters: &[i32]) -> Result<BraidWord> {
        BraidWord::new(self.n, letters.to_vec())
    }
}

impl Group for BraidGroup {
    type Element = BraidWord;
    type Key = Vec<u64>;

    fn name(&self) -> String {
        format!("B{}", self.n)
    }
    fn identity(&self) -> BraidWord {
        BraidWord::identity(self.n)
    }
    fn multiply(&self, a: &BraidWord, b: &BraidWord) -> BraidWord {
        a.concat(b)
    }
    fn invert(&self, a: &BraidWord) -> BraidWord {
        a.inverse()
    }
    fn generators(&self) -> Vec<BraidWord> {
        (1..self.n as i32).map(|i| self.sigma(i)).collect()
    }
    fn key(&self, g: &BraidWord) -> Vec<u64> {
        burau_fingerprint(g)
    }
    fn equal(&self, a: &BraidWord, b: &BraidWord) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        Ok(dehornoy_sign(&a.concat(&b.inverse()), self.budget)?.is_none())
    }
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        word_ball(self, radius)
    }
}

/// Which member of the braid ordering family an oracle realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidOrdering {
    /// `<_D`: positive iff `σ_i`-positive for some `i`.
    Dehornoy,
    /// `<'_D`: positive iff `σ_i`-reverse-positive for some `i`.
    Reverse,
    /// `<_i` with least positive element `σ_i`.
    Composite(usize),
}

impl fmt::Display for BraidOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidOrdering::Dehornoy => write!(f, "dehornoy"),
            BraidOrdering::Reverse => write!(f, "reverse"),
            BraidOrdering::Composite(i) => write!(f, "order-{}", i),
        }
    }
}

impl std::str::FromStr for BraidOrdering {
    type Err = OrderError;

    /// `dehornoy`, `reverse` or `order-i`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dehornoy" => Ok(BraidOrdering::Dehornoy),
            "reverse" => Ok(BraidOrdering::Reverse),
            t => t
                .strip_prefix("order-")
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(BraidOrdering::Composite)
                .ok_or_else(|| OrderError::Parse(format!("unknown braid ordering {:?}", s))),
        }
    }
}

pub struct BraidOracle {
    kind: BraidOrdering,
    budget: u64,
}

impl BraidOracle {
    pub fn new(kind: BraidOrdering) -> Self {
        BraidOracle {
            kind,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn kind(&self) -> BraidOrdering {
        self.kind
    }

    pub fn sign_or_identity(&self, b: &BraidWord) -> Result<Option<Sign>> {
        match self.kind {
            BraidOrdering::Dehornoy => dehornoy_sign(b, self.budget),
            BraidOrdering::Reverse => reverse_dehornoy_sign(b, self.budget),
            BraidOrdering::Composite(i) => ordering_i_sign(b, i, self.budget),
        }
    }
}

impl SignOracle<BraidWord> for BraidOracle {
    fn sign(&self, g: &BraidWord) -> Result<Sign> {
        self.sign_or_identity(g)?.ok_or(OrderError::IdentityInput)
    }
    fn descriptor(&self) -> String {
        self.kind.to_string()
    }
}

/// `{<_D, <_1, …, <_{n−1}}`.
pub fn braid_catalog(n: usize) -> Vec<std::sync::Arc<dyn SignOracle<BraidWord>>> {
    let mut out: Vec<std::sync::Arc<dyn SignOracle<BraidWord>>> =
        vec![std::sync::Arc::new(BraidOracle::new(BraidOrdering::Dehornoy))];
    for i in 1..n {
        out.push(std::sync::Arc::new(BraidOracle::new(BraidOrdering::Composite(i))));
    }
    out
}
