//! Orderings of `Z^n` and `Q^n` by flags of linear forms over a real
//! quadratic field, matrix automorphisms and commensurations acting on them.
//!
//! Automorphisms act on row vectors, `v ↦ vM`. A flag `(u₁, …, u_k)` orders
//! `v` by the sign of the first nonzero pairing `⟨v, uᵢ⟩`, so `M` preserves
//! the ordering of a single irrational form `u` exactly when `Mu = λu` with
//! `λ > 0`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{OrderError, Result};
use crate::group::{zigzag, Ball, Group, Sign};
use crate::matrix::{rational_nullspace, RationalMatrix};
use crate::oracle::{GroupAutomorphism, SignOracle};
use crate::quadratic::{
    format_rational, int, parse_rational, rational_sqrt, squarefree_part, QuadRat, Rational,
};

/// A vector of exact rationals (integral for `Z^n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<Rational>);

impl LatticeVector {
    pub fn from_ints(xs: &[i128]) -> Self {
        LatticeVector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn times(&self, m: &RationalMatrix) -> Self {
        LatticeVector(m.apply_row(&self.0))
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> i128 {
        self.0.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }

    /// Integer numerators over the common denominator.
    pub fn numerators(&self) -> Vec<i128> {
        let q = self.denominator();
        self.0.iter().map(|x| (x * int(q)).to_integer()).collect()
    }

    /// Ball height: `ℓ¹` norm of the numerators plus `denominator − 1`.
    /// For integer vectors this is the `ℓ¹` norm, the word length in the
    /// standard generators.
    pub fn height(&self) -> usize {
        let l1: i128 = self.numerators().iter().map(|x| x.abs()).sum();
        (l1 + self.denominator() - 1) as usize
    }

    /// `Some(c)` with `self = c·other` (for nonzero `other`).
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let j = other.0.iter().position(|x| !x.is_zero())?;
        let c = self.0[j] / other.0[j];
        (*self == other.scale(&c)).then_some(c)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| OrderError::Parse(format!("invalid vector {:?}", s)))?;
        Ok(LatticeVector(
            inner.split(',').map(parse_rational).collect::<Result<_>>()?,
        ))
    }

    /// Shortlex rank sequence of the normal-form word `x₁^{c₁} x₂^{c₂} …`.
    fn letter_ranks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, c) in self.numerators().iter().enumerate() {
            let letter = zigzag(if *c > 0 { i as i64 + 1 } else { -(i as i64 + 1) });
            out.extend(std::iter::repeat(letter).take(c.unsigned_abs() as usize));
        }
        out
    }
}

impl Ord for LatticeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.denominator()
            .cmp(&other.denominator())
            .then_with(|| self.letter_ranks().cmp(&other.letter_ranks()))
    }
}

impl PartialOrd for LatticeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", xs.join(","))
    }
}

/// `Z^n` (integer ball) or `Q^n` (ball by height, including fractions).
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rational: bool,
}

impl Lattice {
    pub fn integer(dim: usize) -> Self {
        Lattice {
            dim,
            rational: false,
        }
    }

    pub fn rational(dim: usize) -> Self {
        Lattice {
            dim,
            rational: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    fn integer_vectors(dim: usize, l1: i128) -> Vec<Vec<i128>> {
        if dim == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for x in -l1..=l1 {
            for mut rest in Lattice::integer_vectors(dim - 1, l1 - x.abs()) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }

    /// Every vector of height at most `radius`, paired with its height.
    pub fn height_ball_items(dim: usize, rational: bool, radius: usize) -> Vec<(usize, LatticeVector)> {
        let r = radius as i128;
        let mut items = Vec::new();
        let max_q = if rational { r + 1 } else { 1 };
        for q in 1..=max_q {
            for nums in Lattice::integer_vectors(dim, r - (q - 1)) {
                if crate::quadratic::gcd_all(nums.iter().copied().chain([q])) != 1 {
                    continue;
                }
                let v = LatticeVector(nums.iter().map(|&p| Rational::new(p, q)).collect());
                items.push((v.height(), v));
            }
        }
        items
    }
}

impl Group for Lattice {
    type Element = LatticeVector;
    type Key = LatticeVector;

    fn name(&self) -> String {
        format!("{}^{}", if self.rational { "Q" } else { "Z" }, self.dim)
    }
    fn identity(&self) -> LatticeVector {
        LatticeVector::zero(self.dim)
    }
    fn multiply(&self, a: &LatticeVector, b: &LatticeVector) -> LatticeVector {
        a.add(b)
    }
    fn invert(&self, a: &LatticeVector) -> LatticeVector {
        a.neg()
    }
    fn generators(&self) -> Vec<LatticeVector> {
        (0..self.dim)
            .map(|i| {
                let mut v = LatticeVector::zero(self.dim);
                v.0[i] = Rational::one();
                v
            })
            .collect()
    }
    fn key(&self, g: &LatticeVector) -> LatticeVector {
        g.clone()
    }
    fn equal(&self, a: &LatticeVector, b: &LatticeVector) -> Result<bool> {
        Ok(a == b)
    }
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        let items = Lattice::height_ball_items(self.dim, self.rational, radius);
        Ok(Ball::from_distinct(self, radius, items))
    }
    fn isolator_exact(&self, h: &LatticeVector, g: &LatticeVector) -> Option<bool> {
        Some(h.is_zero() || h.ratio_to(g).is_some())
    }
}

fn pairing(v: &LatticeVector, u: &[QuadRat]) -> QuadRat {
    v.0.iter()
        .zip(u)
        .fold(QuadRat::from_int(0), |acc, (x, y)| acc + y.scale(x))
}

/// Restriction of the form `u` to the subspace spanned by `basis`.
fn restrict(basis: &[LatticeVector], u: &[QuadRat]) -> Vec<QuadRat> {
    basis.iter().map(|b| pairing(b, u)).collect()
}

/// Rational kernel, inside the span of `basis`, of a restricted form.
fn rational_kernel(basis: &[LatticeVector], c: &[QuadRat]) -> Vec<LatticeVector> {
    let k = basis.len();
    let rows = vec![
        c.iter().map(|x| *x.a()).collect::<Vec<_>>(),
        c.iter().map(|x| *x.b()).collect::<Vec<_>>(),
    ];
    rational_nullspace(&rows, k)
        .into_iter()
        .map(|t| {
            t.iter()
                .zip(basis)
                .fold(LatticeVector::zero(basis[0].dim()), |acc, (ti, b)| {
                    acc.add(&b.scale(ti))
                })
        })
        .collect()
}

/// `Some(λ)` with `c₂ = λ c₁`.
fn proportionality(c1: &[QuadRat], c2: &[QuadRat]) -> Option<QuadRat> {
    let j = c1.iter().position(|x| !x.is_zero())?;
    let lambda = c2[j].clone() * c1[j].inverse().ok()?;
    c1.iter()
        .zip(c2)
        .all(|(x, y)| x.clone() * lambda.clone() == *y)
        .then_some(lambda)
}

/// An ordering of `Q^n`: `v > 0` iff the first nonzero `⟨v, uᵢ⟩` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormFlag {
    dim: usize,
    vectors: Vec<Vec<QuadRat>>,
}

impl FormFlag {
    /// Builds a flag, verifying exactly that no nonzero rational vector is
    /// orthogonal to every form.
    pub fn new(vectors: Vec<Vec<QuadRat>>) -> Result<Self> {
        let dim = vectors
            .first()
            .map(|v| v.len())
            .ok_or_else(|| OrderError::NotTotal("empty flag".into()))?;
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(OrderError::Parse("flag vectors differ in dimension".into()));
        }
        let fields: Vec<u64> = vectors.iter().flatten().filter_map(|x| x.field()).collect();
        if fields.windows(2).any(|w| w[0] != w[1]) {
            return Err(OrderError::FieldMismatch {
                left: fields[0],
                right: *fields.iter().find(|&&d| d != fields[0]).unwrap(),
            });
        }
        let flag = FormFlag { dim, vectors };
        let mut basis = Lattice::rational(dim).generators();
        for u in &flag.vectors {
            if basis.is_empty() {
                break;
            }
            let c = restrict(&basis, u);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            basis = rational_kernel(&basis, &c);
        }
        if let Some(v) = basis.first() {
            return Err(OrderError::NotTotal(format!(
                "{} is orthogonal to every form of {}",
                v, flag
            )));
        }
        Ok(flag)
    }

    pub fn single(u: Vec<QuadRat>) -> Result<Self> {
        FormFlag::new(vec![u])
    }

    /// Lexicographic flag of integer vectors.
    pub fn from_int_vectors(vs: &[&[i128]]) -> Result<Self> {
        FormFlag::new(
            vs.iter()
                .map(|v| v.iter().map(|&x| QuadRat::from_int(x)).collect())
                .collect(),
        )
    }

    /// The single form `(a√d + b, c√d + e)`-style vector given by pairs
    /// `(rational part, √d part)` per coordinate.
    pub fn single_quadratic(coords: &[(Rational, Rational)], d: u64) -> Result<Self> {
        FormFlag::single(coords.iter().map(|(a, b)| QuadRat::new(*a, *b, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<QuadRat>] {
        &self.vectors
    }

    pub fn opposite(&self) -> Self {
        FormFlag {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|x| -x.clone()).collect())
                .collect(),
        }
    }

    /// Each vector rescaled by a positive number so that its last nonzero
    /// coordinate is `±1`; the ordering is unchanged.
    pub fn canonical(&self) -> Self {
        let vectors = self
            .vectors
            .iter()
            .map(|v| match v.iter().rev().find(|x| !x.is_zero()) {
                Some(last) => {
                    let s = last.abs().inverse().expect("nonzero");
                    v.iter().map(|x| x.clone() * s.clone()).collect()
                }
                None => v.clone(),
            })
            .collect();
        FormFlag {
            dim: self.dim,
            vectors,
        }
    }

    /// Parses vectors separated by `;`, each `(x1,…,xn)` with coordinates
    /// written as a rational, a pair `(a,b)` meaning `a+b√d`, or a literal
    /// such as `√2`, `-√2`, `1+√2`.
    pub fn parse(s: &str, d: u64) -> Result<Self> {
        let vectors = s
            .split(';')
            .map(|v| parse_quad_vector(v, d))
            .collect::<Result<Vec<_>>>()?;
        FormFlag::new(vectors)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_quad_vector(s: &str, d: u64) -> Result<Vec<QuadRat>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| OrderError::Parse(format!("invalid vector {:?}", s)))?;
    split_top_level(inner)
        .into_iter()
        .map(|tok| parse_quad_literal(tok, d))
        .collect()
}

/// `p/q`, `(a,b)`, `√d`, `-√d`, `a+b√d`, `a-b√d`, `b√d`.
pub fn parse_quad_literal(tok: &str, d: u64) -> Result<QuadRat> {
    let tok = tok.trim();
    if let Some(pair) = tok.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        return QuadRat::parse_pair(pair, d);
    }
    let Some(root) = tok.find('√') else {
        return Ok(QuadRat::rational(parse_rational(tok)?));
    };
    let radicand: u64 = tok[root + '√'.len_utf8()..]
        .parse()
        .map_err(|_| OrderError::Parse(format!("invalid radical in {:?}", tok)))?;
    if radicand != d {
        return Err(OrderError::FieldMismatch {
            left: d,
            right: radicand,
        });
    }
    let head = &tok[..root];
    let split = head
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (a, coeff) = match split {
        Some(i) => (parse_rational(&head[..i])?, &head[i..]),
        None => (Rational::zero(), head),
    };
    let b = match coeff {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        c => parse_rational(c.trim_start_matches('+'))?,
    };
    Ok(QuadRat::new(a, b, d))
}

impl fmt::Display for FormFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vectors
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "{}", vs.join(";"))
    }
}

/// Sign of the first nonzero pairing of `v` with the flag.
pub fn form_sign(flag: &FormFlag, v: &LatticeVector) -> Result<Sign> {
    if v.is_zero() {
        return Err(OrderError::IdentityInput);
    }
    for u in &flag.vectors {
        match pairing(v, u).signum() {
            Ordering::Greater => return Ok(Sign::Positive),
            Ordering::Less => return Ok(Sign::Negative),
            Ordering::Equal => {}
        }
    }
    Err(OrderError::NotTotal(format!("{} vanishes on {}", flag, v)))
}

/// Exact test that two flags induce the same ordering of `Q^n`.
pub fn flags_equivalent(f1: &FormFlag, f2: &FormFlag) -> bool {
    if f1.dim != f2.dim {
        return false;
    }
    let mut basis = Lattice::rational(f1.dim).generators();
    let (mut i, mut j) = (0, 0);
    while !basis.is_empty() {
        let next = |flag: &FormFlag, k: &mut usize| -> Option<Vec<QuadRat>> {
            while *k < flag.vectors.len() {
                let c = restrict(&basis, &flag.vectors[*k]);
                *k += 1;
                if c.iter().any(|x| !x.is_zero()) {
                    return Some(c);
                }
            }
            None
        };
        let (Some(c1), Some(c2)) = (next(f1, &mut i), next(f2, &mut j)) else {
            return false;
        };
        match proportionality(&c1, &c2) {
            Some(lambda) if lambda.is_positive() => basis = rational_kernel(&basis, &c1),
            _ => return false,
        }
    }
    true
}

/// The ordering of `Q^n` given by a flag, as a sign oracle.
pub struct FlagOracle {
    flag: FormFlag,
}

impl FlagOracle {
    pub fn new(flag: FormFlag) -> Self {
        FlagOracle { flag }
    }

    pub fn shared(flag: FormFlag) -> Arc<dyn SignOracle<LatticeVector>> {
        Arc::new(FlagOracle::new(flag))
    }

    pub fn flag(&self) -> &FormFlag {
        &self.flag
    }
}

impl SignOracle<LatticeVector> for FlagOracle {
    fn sign(&self, g: &LatticeVector) -> Result<Sign> {
        form_sign(&self.flag, g)
    }
    fn descriptor(&self) -> String {
        format!("flag{}", self.flag)
    }
}

/// `v ↦ vM` as an automorphism of `Q^n`.
pub fn matrix_automorphism(m: &RationalMatrix) -> Result<GroupAutomorphism<LatticeVector>> {
    let inv = m.inverse()?;
    let fwd = m.clone();
    Ok(GroupAutomorphism::new(
        format!("matrix{}", m),
        move |v: &LatticeVector| v.times(&fwd),
        move |v: &LatticeVector| v.times(&inv),
    ))
}

/// Flag of the pushforward ordering under `v ↦ vM`: the vectors `M⁻¹uᵢ`, so
/// that `form_sign(new, v) = form_sign(flag, vM⁻¹)`.
pub fn matrix_pushforward(m: &RationalMatrix, flag: &FormFlag) -> Result<FormFlag> {
    let inv = m.inverse()?;
    FormFlag::new(flag.vectors.iter().map(|u| inv.apply_column(u)).collect())
}

pub fn preserves(m: &RationalMatrix, flag: &FormFlag) -> Result<bool> {
    Ok(flags_equivalent(&matrix_pushforward(m, flag)?, flag))
}

/// Orderings of `Q²` preserved by a 2×2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenOrderings {
    /// A positive scalar matrix preserves every ordering.
    All,
    /// Canonical representatives, each followed by its opposite.
    Flags(Vec<FormFlag>),
}

/// The eigenvalue of `m` belonging to the single-form flag `u`, if `u` is
/// an eigenvector.
pub fn eigenvalue_of(m: &RationalMatrix, u: &[QuadRat]) -> Option<QuadRat> {
    let mu = m.apply_column(u);
    proportionality(u, &mu)
}

/// All orderings of `Q²` preserved by `v ↦ vM`, when its eigenvalues lie in
/// `Q(√d)`.
pub fn eigen_orderings(m: &RationalMatrix, d: u64) -> Result<EigenOrderings> {
    if m.dim() != 2 {
        return Err(OrderError::RejectedInput("eigen_orderings needs a 2x2 matrix".into()));
    }
    if m.determinant().is_zero() {
        return Err(OrderError::SingularMatrix);
    }
    if let Some(c) = m.as_scalar() {
        return Ok(if c.is_positive() {
            EigenOrderings::All
        } else {
            EigenOrderings::Flags(vec![])
        });
    }
    let (p, q, r, s) = (m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1));
    let tr = p + s;
    let disc = tr * tr - int(4) * m.determinant();
    if disc.is_negative() {
        return Ok(EigenOrderings::Flags(vec![]));
    }
    let half = Rational::new(1, 2);
    // Eigenvalues (tr ± √disc)/2.
    let roots: Vec<QuadRat> = if let Some(root) = rational_sqrt(&disc) {
        vec![
            QuadRat::rational((tr + root) * half),
            QuadRat::rational((tr - root) * half),
        ]
    } else {
        let (num, den) = (*disc.numer(), *disc.denom());
        // √(n/m) = √(n m)/m; n m = k² d′ with d′ square-free.
        let nm = num * den;
        let field = squarefree_part(nm as u64);
        if field != d {
            return Err(OrderError::UnsupportedField { d });
        }
        let k = rational_sqrt(&int(nm / field as i128)).expect("square cofactor");
        let coeff = k / int(den) * half;
        vec![
            QuadRat::new(tr * half, coeff, d),
            QuadRat::new(tr * half, -coeff, d),
        ]
    };
    let eigenvector = |lambda: &QuadRat| -> Vec<QuadRat> {
        // (p − λ) u₁ + q u₂ = 0, r u₁ + (s − λ) u₂ = 0
        if !q.is_zero() {
            vec![QuadRat::rational(q), lambda.clone() - QuadRat::rational(p)]
        } else if !r.is_zero() {
            vec![lambda.clone() - QuadRat::rational(s), QuadRat::rational(r)]
        } else if QuadRat::rational(p) == *lambda {
            vec![QuadRat::from_int(1), QuadRat::from_int(0)]
        } else {
            vec![QuadRat::from_int(0), QuadRat::from_int(1)]
        }
    };
    let mut flags = Vec::new();
    if roots[0].is_rational() {
        // Rational eigenvectors: a lone form is not total, so preserved
        // orderings are lexicographic. The leading form is an eigenvector
        // u; on its kernel the map acts by the other eigenvalue, which must
        // also be positive.
        let distinct = roots[0] != roots[1];
        if !(roots[0].is_positive() && roots[1].is_positive()) {
            return Ok(EigenOrderings::Flags(vec![]));
        }
        let leads: Vec<&QuadRat> = if distinct { vec![&roots[0], &roots[1]] } else { vec![&roots[0]] };
        for lambda in leads {
            let u = eigenvector(lambda);
            let kernel = rational_kernel(&Lattice::rational(2).generators(), &u);
            let w: Vec<QuadRat> = kernel[0].0.iter().map(|x| QuadRat::rational(*x)).collect();
            for (su, sw) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let lead: Vec<QuadRat> = u.iter().map(|x| x.scale(&int(su))).collect();
                let second: Vec<QuadRat> = w.iter().map(|x| x.scale(&int(sw))).collect();
                flags.push(FormFlag::new(vec![lead, second])?.canonical());
            }
        }
    } else {
        for lambda in &roots {
            if lambda.is_positive() {
                let f = FormFlag::single(eigenvector(lambda))?.canonical();
                let f = if f.vectors[0].last().map(|x| x.is_positive()).unwrap_or(true) {
                    f
                } else {
                    f.opposite()
                };
                flags.push(f.clone());
                flags.push(f.opposite());
            }
        }
    }
    Ok(EigenOrderings::Flags(flags))
}

/// Outcome of the property-(*) decision for a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarStar {
    /// `M = (p/q)·I` with `p/q > 0`.
    Scalar(Rational),
    /// First basis or basis-sum vector `v` whose image `vM` is not a
    /// positive multiple of `v`.
    NotScalar { witness: LatticeVector },
}

/// Probe vectors `e₁, …, e_n`, then `eᵢ + eⱼ` for `i < j`.
fn basis_probes(n: usize) -> Vec<LatticeVector> {
    let e = Lattice::integer(n).generators();
    let mut out = e.clone();
    for i in 0..n {
        for j in i + 1..n {
            out.push(e[i].add(&e[j]));
        }
    }
    out
}

pub fn is_scalar_star(m: &RationalMatrix) -> Result<ScalarStar> {
    if m.determinant().is_zero() {
        return Err(OrderError::SingularMatrix);
    }
    for v in basis_probes(m.dim()) {
        match v.times(m).ratio_to(&v) {
            Some(c) if c.is_positive() => continue,
            _ => return Ok(ScalarStar::NotScalar { witness: v }),
        }
    }
    // Every basis vector and pairwise sum is a positive eigenvector, so all
    // eigenvalues coincide.
    Ok(ScalarStar::Scalar(m.entry(0, 0)))
}

/// Fixed probe set of orderings of `Q²`: the eight coordinate lex orders,
/// then `±(√2,1)` and `±(−√2,1)`.
pub fn probe_flags() -> Vec<FormFlag> {
    let mut out = Vec::new();
    for (a, b) in [(0usize, 1usize), (1, 0)] {
        for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let mut u = [0i128; 2];
            let mut w = [0i128; 2];
            u[a] = sa;
            w[b] = sb;
            out.push(FormFlag::from_int_vectors(&[&u, &w]).expect("total"));
        }
    }
    let r2 = QuadRat::sqrt(2);
    for first in [r2.clone(), -r2] {
        let f = FormFlag::single(vec![first, QuadRat::from_int(1)]).expect("total");
        out.push(f.clone());
        out.push(f.opposite());
    }
    out
}

/// A finite-index sublattice of `Z²`, given by integer basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    basis: RationalMatrix,
}

impl Sublattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if basis.dim() != 2 || !basis.is_integral() {
            return Err(OrderError::RejectedInput("sublattice basis must be integral 2x2".into()));
        }
        if basis.determinant().is_zero() {
            return Err(OrderError::RejectedInput("index-zero sublattice".into()));
        }
        Ok(Sublattice { basis }.hermite())
    }

    pub fn full() -> Self {
        Sublattice {
            basis: RationalMatrix::identity(2),
        }
    }

    pub fn scaled(k: i128) -> Self {
        Sublattice {
            basis: RationalMatrix::scalar(2, int(k)),
        }
    }

    pub fn index(&self) -> i128 {
        self.basis.determinant().abs().to_integer()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        let inv = self.basis.inverse().expect("finite index");
        v.is_integral() && v.times(&inv).is_integral()
    }

    /// The sublattice of `Z²` cut out by a membership predicate, known to
    /// contain `bound·Z²`. Returned in Hermite normal form.
    fn from_predicate(bound: i128, member: impl Fn(&LatticeVector) -> bool) -> Self {
        let d = (1..=bound)
            .find(|&d| member(&LatticeVector::from_ints(&[0, d])))
            .expect("bound multiple is a member");
        let (a, b) = (1..=bound)
            .find_map(|a| {
                (0..d)
                    .find(|&b| member(&LatticeVector::from_ints(&[a, b])))
                    .map(|b| (a, b))
            })
            .expect("bound multiple is a member");
        Sublattice {
            basis: RationalMatrix::from_ints(&[&[a, b], &[0, d]]),
        }
    }

    fn hermite(&self) -> Self {
        let me = self.clone();
        Sublattice::from_predicate(self.index(), move |v| me.contains(v))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Sublattice::from_predicate(self.index() * other.index(), move |v| {
            a.contains(v) && b.contains(v)
        })
    }

    /// Image `L·M` of the sublattice under `v ↦ vM`, when integral.
    pub fn image(&self, m: &RationalMatrix) -> Result<Self> {
        Sublattice::new(self.basis.mul(m))
    }

    /// All sublattices of `Z²` with index at most `max_index`, in Hermite
    /// normal form `[[a,b],[0,d]]`, `0 ≤ b < d`.
    pub fn enumerate(max_index: i128) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=max_index {
            for a in 1..=n {
                if n % a != 0 {
                    continue;
                }
                let d = n / a;
                for b in 0..d {
                    out.push(Sublattice {
                        basis: RationalMatrix::from_ints(&[&[a, b], &[0, d]]),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

/// A point `[P]` of the virtual ordering space: an ordering of a
/// finite-index sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VloClass {
    pub sublattice: Sublattice,
    pub flag: FormFlag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VloComparison {
    pub equal: bool,
    /// First vector of `H₁ ∩ H₂` in the checked ball where the orderings
    /// disagree.
    pub witness: Option<LatticeVector>,
}

/// Radius of the ball searched for a disagreement witness.
pub const VLO_CHECK_RADIUS: usize = 12;

/// Whether two classes agree on `H₁ ∩ H₂`. Orderings by forms agree on a
/// finite-index sublattice exactly when they agree on `Q²`, so the decision
/// is `flags_equivalent`; the ball search only supplies a witness.
pub fn vlo_equal(c1: &VloClass, c2: &VloClass) -> Result<VloComparison> {
    let equal = flags_equivalent(&c1.flag, &c2.flag);
    if equal {
        return Ok(VloComparison {
            equal,
            witness: None,
        });
    }
    let common = c1.sublattice.intersect(&c2.sublattice);
    let z2 = Lattice::integer(2);
    let ball = z2.ball(VLO_CHECK_RADIUS * common.index() as usize)?;
    for (_, v) in ball.nonidentity() {
        if common.contains(v) && form_sign(&c1.flag, v)? != form_sign(&c2.flag, v)? {
            return Ok(VloComparison {
                equal,
                witness: Some(v.clone()),
            });
        }
    }
    Ok(VloComparison {
        equal,
        witness: None,
    })
}

/// A commensuration of `Z²` represented by a rational matrix: the
/// isomorphism `H₁ → H₂`, `v ↦ vM`, with `H₁ = {v ∈ Z² : vM ∈ Z²}`.
#[derive(Clone, Debug)]
pub struct Commensuration {
    matrix: RationalMatrix,
    domain: Sublattice,
}

impl Commensuration {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if matrix.dim() != 2 {
            return Err(OrderError::RejectedInput("commensurations of Z² only".into()));
        }
        if matrix.determinant().is_zero() {
            return Err(OrderError::SingularMatrix);
        }
        let bound = matrix
            .rows()
            .iter()
            .flatten()
            .fold(1i128, |acc, x| acc.lcm(x.denom()));
        let m = matrix.clone();
        let domain = Sublattice::from_predicate(bound, move |v| v.times(&m).is_integral());
        Ok(Commensuration { matrix, domain })
    }

    pub fn domain(&self) -> &Sublattice {
        &self.domain
    }

    pub fn codomain(&self) -> Sublattice {
        self.domain.image(&self.matrix).expect("image of domain is integral")
    }

    /// `φ([P]) = [φ(P ∩ H₁)]`.
    pub fn push(&self, class: &VloClass) -> Result<VloClass> {
        let restricted = class.sublattice.intersect(&self.domain);
        Ok(VloClass {
            sublattice: restricted.image(&self.matrix)?,
            flag: matrix_pushforward(&self.matrix, &class.flag)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAction {
    pub trivial: bool,
    /// First probe flag moved by the commensuration, with a separating
    /// vector.
    pub witness: Option<(FormFlag, LatticeVector)>,
}

/// Whether the commensuration class of `M` acts trivially on the virtual
/// orderings of `Z²`: exactly when `M` is a positive scalar matrix.
pub fn comm_acts_trivially(m: &RationalMatrix) -> Result<CommAction> {
    let comm = Commensuration::new(m.clone())?;
    let trivial = matches!(is_scalar_star(m)?, ScalarStar::Scalar(_));
    if trivial {
        return Ok(CommAction {
            trivial,
            witness: None,
        });
    }
    for flag in probe_flags() {
        let class = VloClass {
            sublattice: Sublattice::full(),
            flag: flag.clone(),
        };
        let pushed = comm.push(&class)?;
        let cmp = vlo_equal(&class, &pushed)?;
        if !cmp.equal {
            let v = cmp.witness.ok_or_else(|| {
                OrderError::PreconditionFailed("no separating vector within the ball".into())
            })?;
            return Ok(CommAction {
                trivial,
                witness: Some((flag, v)),
            });
        }
    }
    Err(OrderError::PreconditionFailed(format!(
        "non-scalar {} fixes every probe flag",
        m
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{act_automorphism, verify_cone_axioms, least_positive_in_ball};
    use crate::quadratic::rat;

    fn sqrt2_flag(sign: i128) -> FormFlag {
        FormFlag::single(vec![QuadRat::sqrt(2).scale(&int(sign)), QuadRat::from_int(1)]).unwrap()
    }

    fn a_matrix() -> RationalMatrix {
        RationalMatrix::from_ints(&[&[1, 2], &[1, 1]])
    }

    fn v(xs: &[i128]) -> LatticeVector {
        LatticeVector::from_ints(xs)
    }

    #[test]
    fn form_sign_examples() {
        assert_eq!(form_sign(&sqrt2_flag(1), &v(&[1, 0])).unwrap(), Sign::Positive);
        assert_eq!(form_sign(&sqrt2_flag(1), &v(&[1, -2])).unwrap(), Sign::Negative);
        assert_eq!(form_sign(&sqrt2_flag(-1), &v(&[1, -1])).unwrap(), Sign::Negative);
        assert_eq!(form_sign(&sqrt2_flag(1), &v(&[0, 0])), Err(OrderError::IdentityInput));
    }

    #[test]
    fn totality_is_exact() {
        assert!(FormFlag::from_int_vectors(&[&[1, 1]]).is_err());
        assert!(FormFlag::from_int_vectors(&[&[1, 1], &[2, 2]]).is_err());
        assert!(FormFlag::from_int_vectors(&[&[1, 1], &[0, 1]]).is_ok());
        assert!(FormFlag::from_int_vectors(&[&[1, 0], &[0, 1], &[5, 5]]).is_ok());
        assert!(sqrt2_flag(1).vectors().len() == 1);
    }

    #[test]
    fn parses_flags() {
        assert_eq!(FormFlag::parse("(√2,1)", 2).unwrap(), sqrt2_flag(1));
        assert_eq!(FormFlag::parse("((0,1),(1,0))", 2).unwrap(), sqrt2_flag(1));
        assert_eq!(FormFlag::parse("(-√2,1)", 2).unwrap(), sqrt2_flag(-1));
        assert_eq!(
            FormFlag::parse("(1,0);(0,1)", 2).unwrap(),
            FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap()
        );
        assert_eq!(
            parse_quad_literal("3/2-1/2√2", 2).unwrap(),
            QuadRat::new(rat(3, 2), rat(-1, 2), 2)
        );
        assert!(parse_quad_literal("√3", 2).is_err());
    }

    #[test]
    fn flag_equivalence() {
        let scaled = FormFlag::single(vec![QuadRat::from_int(2), QuadRat::sqrt(2)]).unwrap();
        assert!(flags_equivalent(&sqrt2_flag(1), &scaled));
        assert!(!flags_equivalent(&sqrt2_flag(1), &sqrt2_flag(-1)));
        assert!(!flags_equivalent(&sqrt2_flag(1), &sqrt2_flag(1).opposite()));
        let lex = FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap();
        let lex_redundant = FormFlag::from_int_vectors(&[&[2, 0], &[1, 0], &[3, 5]]).unwrap();
        assert!(flags_equivalent(&lex, &lex_redundant));
        let lex_down = FormFlag::from_int_vectors(&[&[1, 0], &[0, -1]]).unwrap();
        assert!(!flags_equivalent(&lex, &lex_down));
    }

    #[test]
    fn pushforward_examples() {
        let lex = FormFlag::from_int_vectors(&[&[1, 0]]);
        assert!(lex.is_err(), "rational single form is not total on Q²");
        let id = RationalMatrix::identity(2);
        assert_eq!(matrix_pushforward(&id, &sqrt2_flag(1)).unwrap(), sqrt2_flag(1));
        // M⁻¹(√2,1) = (√2−1)(√2,1) = (2−√2, √2−1)
        let pushed = matrix_pushforward(&a_matrix(), &sqrt2_flag(1)).unwrap();
        let expected = FormFlag::single(vec![
            QuadRat::new(int(2), int(-1), 2),
            QuadRat::new(int(-1), int(1), 2),
        ])
        .unwrap();
        assert_eq!(pushed, expected);
        assert_eq!(pushed.canonical(), sqrt2_flag(1));
        let swap = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let e1 = FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap();
        let e2 = FormFlag::from_int_vectors(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(matrix_pushforward(&swap, &e1).unwrap(), e2);
        assert!(matrix_pushforward(&RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]), &e1).is_err());
    }

    #[test]
    fn pushforward_matches_action_on_signs() {
        let ball = Lattice::integer(2).ball(8).unwrap();
        for m in [a_matrix(), RationalMatrix::from_ints(&[&[2, 1], &[1, 1]])] {
            for flag in probe_flags() {
                let pushed = matrix_pushforward(&m, &flag).unwrap();
                let inv = m.inverse().unwrap();
                for (_, w) in ball.nonidentity() {
                    assert_eq!(
                        form_sign(&pushed, w).unwrap(),
                        form_sign(&flag, &w.times(&inv)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn preserves_examples() {
        let a = a_matrix();
        assert!(preserves(&a, &sqrt2_flag(1)).unwrap());
        assert!(!preserves(&a, &sqrt2_flag(-1)).unwrap());
        assert!(preserves(&a.neg(), &sqrt2_flag(-1)).unwrap());
        assert!(!preserves(&a.neg(), &sqrt2_flag(1)).unwrap());
    }

    #[test]
    fn preserves_agrees_with_ball_signs() {
        let ball = Lattice::integer(2).ball(10).unwrap();
        let matrices = [
            a_matrix(),
            a_matrix().neg(),
            RationalMatrix::from_ints(&[&[3, 0], &[0, 2]]),
            RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]),
            RationalMatrix::scalar(2, rat(3, 2)),
        ];
        for m in &matrices {
            for flag in probe_flags() {
                let pushed = matrix_pushforward(m, &flag).unwrap();
                let same = ball
                    .nonidentity()
                    .all(|(_, w)| form_sign(&pushed, w).unwrap() == form_sign(&flag, w).unwrap());
                assert_eq!(preserves(m, &flag).unwrap(), same, "{} {}", m, flag);
            }
        }
    }

    #[test]
    fn eigen_orderings_of_a_and_minus_a() {
        let a = a_matrix();
        let EigenOrderings::Flags(fa) = eigen_orderings(&a, 2).unwrap() else {
            panic!("expected flags")
        };
        assert_eq!(fa, vec![sqrt2_flag(1), sqrt2_flag(1).opposite()]);
        let EigenOrderings::Flags(fna) = eigen_orderings(&a.neg(), 2).unwrap() else {
            panic!("expected flags")
        };
        assert_eq!(fna, vec![sqrt2_flag(-1), sqrt2_flag(-1).opposite()]);
        assert_eq!(eigenvalue_of(&a, &sqrt2_flag(1).vectors()[0]), Some(QuadRat::new(int(1), int(1), 2)));
        assert_eq!(eigen_orderings(&RationalMatrix::identity(2), 2).unwrap(), EigenOrderings::All);
        assert_eq!(
            eigen_orderings(&RationalMatrix::scalar(2, int(-1)), 2).unwrap(),
            EigenOrderings::Flags(vec![])
        );
        // Rotation by 90°: no real eigenvector.
        let rot = RationalMatrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(eigen_orderings(&rot, 2).unwrap(), EigenOrderings::Flags(vec![]));
        // [[1,3],[1,1]] has eigenvalues 1 ± √3.
        let r3 = RationalMatrix::from_ints(&[&[1, 3], &[1, 1]]);
        assert_eq!(eigen_orderings(&r3, 2), Err(OrderError::UnsupportedField { d: 2 }));
    }

    #[test]
    fn eigen_orderings_are_exactly_the_preserved_probes() {
        let diag = RationalMatrix::from_ints(&[&[3, 0], &[0, 2]]);
        let EigenOrderings::Flags(flags) = eigen_orderings(&diag, 2).unwrap() else {
            panic!()
        };
        assert_eq!(flags.len(), 8);
        for f in &flags {
            assert!(preserves(&diag, f).unwrap());
        }
        let mixed = RationalMatrix::from_ints(&[&[3, 0], &[0, -2]]);
        assert_eq!(eigen_orderings(&mixed, 2).unwrap(), EigenOrderings::Flags(vec![]));
        for m in [a_matrix(), a_matrix().neg()] {
            let EigenOrderings::Flags(flags) = eigen_orderings(&m, 2).unwrap() else {
                panic!()
            };
            for f in probe_flags() {
                let listed = flags.iter().any(|g| flags_equivalent(&f, g));
                assert_eq!(listed, preserves(&m, &f).unwrap());
            }
        }
    }

    #[test]
    fn scalar_star_examples() {
        assert_eq!(
            is_scalar_star(&RationalMatrix::scalar(2, int(2))).unwrap(),
            ScalarStar::Scalar(int(2))
        );
        assert_eq!(
            is_scalar_star(&RationalMatrix::from_ints(&[&[1, 1], &[0, 1]])).unwrap(),
            ScalarStar::NotScalar { witness: v(&[1, 0]) }
        );
        assert_eq!(
            is_scalar_star(&RationalMatrix::from_ints(&[&[3, 0], &[0, 2]])).unwrap(),
            ScalarStar::NotScalar { witness: v(&[1, 1]) }
        );
        assert_eq!(
            is_scalar_star(&RationalMatrix::scalar(2, int(-1))).unwrap(),
            ScalarStar::NotScalar { witness: v(&[1, 0]) }
        );
    }

    #[test]
    fn scalar_action_fixes_flag_signs() {
        let z2 = Lattice::integer(2);
        let phi = matrix_automorphism(&RationalMatrix::scalar(2, int(2))).unwrap();
        let base = FlagOracle::shared(sqrt2_flag(1));
        let moved = act_automorphism(&phi, base.clone());
        for (_, w) in z2.ball(6).unwrap().nonidentity() {
            assert_eq!(moved.sign(w).unwrap(), base.sign(w).unwrap());
        }
    }

    #[test]
    fn flag_orderings_are_cones() {
        let z2 = Lattice::integer(2);
        assert!(verify_cone_axioms(&FlagOracle::new(sqrt2_flag(1)), &z2, 8).unwrap().passed);
        let lex = FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(verify_cone_axioms(&FlagOracle::new(lex), &z2, 8).unwrap().passed);
    }

    /// Brute-force minimisation of `√2·a + b` over the positive part of the
    /// ball, using floating point only to rank candidates that exact
    /// comparison then confirms.
    fn least_positive_oracle(radius: i128) -> LatticeVector {
        let mut best: Option<(LatticeVector, QuadRat)> = None;
        for a in -radius..=radius {
            for b in -(radius - a.abs())..=(radius - a.abs()) {
                let val = QuadRat::new(int(b), int(a), 2);
                if !val.is_positive() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((_, cur)) => (cur.clone() - val.clone()).is_positive(),
                };
                if better {
                    best = Some((v(&[a, b]), val));
                }
            }
        }
        best.unwrap().0
    }

    #[test]
    fn least_positive_examples() {
        let z2 = Lattice::integer(2);
        let o = FlagOracle::new(sqrt2_flag(1));
        assert_eq!(least_positive_oracle(3), v(&[1, -1]));
        assert_eq!(least_positive_oracle(5), v(&[-2, 3]));
        assert_eq!(least_positive_in_ball(&o, &z2, 3).unwrap(), v(&[1, -1]));
        assert_eq!(least_positive_in_ball(&o, &z2, 5).unwrap(), v(&[-2, 3]));
        let lex = FlagOracle::new(FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap());
        assert_eq!(least_positive_in_ball(&lex, &z2, 3).unwrap(), v(&[0, 1]));
    }

    #[test]
    fn ball_order_and_sizes() {
        let z2 = Lattice::integer(2);
        let ball = z2.ball(1).unwrap();
        let shown: Vec<String> = ball.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, vec!["(0,0)", "(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]);
        assert_eq!(z2.ball(3).unwrap().len(), 25);
        let q2 = Lattice::rational(2).ball(2).unwrap();
        assert!(q2.elements().contains(&LatticeVector(vec![rat(1, 2), int(0)])));
        assert!(q2.inverse_table(&Lattice::rational(2)).is_ok());
    }

    #[test]
    fn vlo_examples() {
        let full = |f: FormFlag| VloClass {
            sublattice: Sublattice::full(),
            flag: f,
        };
        let doubled = VloClass {
            sublattice: Sublattice::scaled(2),
            flag: sqrt2_flag(1),
        };
        assert!(vlo_equal(&full(sqrt2_flag(1)), &doubled).unwrap().equal);
        let scaled = FormFlag::single(vec![QuadRat::from_int(2), QuadRat::sqrt(2)]).unwrap();
        assert!(vlo_equal(&full(sqrt2_flag(1)), &full(scaled)).unwrap().equal);
        let cmp = vlo_equal(&full(sqrt2_flag(1)), &full(sqrt2_flag(-1))).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.witness, Some(v(&[1, 0])));
        assert!(Sublattice::new(RationalMatrix::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn sublattice_enumeration_counts() {
        // Number of index-n sublattices of Z² is σ(n): 1, 3, 4, 7.
        let counts: Vec<usize> = (1..=4)
            .map(|n| Sublattice::enumerate(n).iter().filter(|s| s.index() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 3, 4, 7]);
    }

    #[test]
    fn commensuration_domains() {
        let tau = Commensuration::new(RationalMatrix::scalar(2, rat(3, 2))).unwrap();
        assert_eq!(tau.domain(), &Sublattice::scaled(2));
        assert_eq!(tau.codomain(), Sublattice::scaled(3));
        let a = Commensuration::new(a_matrix()).unwrap();
        assert_eq!(a.domain(), &Sublattice::full());
    }

    #[test]
    fn comm_action_examples() {
        assert!(comm_acts_trivially(&RationalMatrix::scalar(2, rat(3, 2))).unwrap().trivial);
        let a = comm_acts_trivially(&a_matrix()).unwrap();
        assert!(!a.trivial);
        let lex = FormFlag::from_int_vectors(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(a.witness.as_ref().map(|w| &w.0), Some(&lex));
        let neg = comm_acts_trivially(&RationalMatrix::scalar(2, int(-1))).unwrap();
        assert!(!neg.trivial);
        assert_eq!(neg.witness.map(|w| w.1), Some(v(&[1, 0])));
    }

    #[test]
    fn isolators_are_exact_on_lattices() {
        let z2 = Lattice::integer(2);
        assert_eq!(z2.isolator_exact(&v(&[2, 4]), &v(&[1, 2])), Some(true));
        assert_eq!(z2.isolator_exact(&v(&[1, 1]), &v(&[1, 2])), Some(false));
    }
}
