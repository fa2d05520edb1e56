//! Positive cones as sign oracles, the automorphism action on them, and the
//! ball checks that certify cone axioms, bi-invariance, discreteness and
//! convexity.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{OrderError, Result};
use crate::group::{power, Group, Sign};

/// Membership test for a positive cone `P`. Never called at the identity.
pub trait SignOracle<E>: Send + Sync {
    fn sign(&self, g: &E) -> Result<Sign>;
    /// Single-line description of the ordering family and parameters.
    fn descriptor(&self) -> String;
}

pub type Oracle<E> = Arc<dyn SignOracle<E>>;

/// Oracle backed by a closure.
pub struct FnOracle<E> {
    descriptor: String,
    sign: Box<dyn Fn(&E) -> Result<Sign> + Send + Sync>,
}

impl<E> FnOracle<E> {
    pub fn new(
        descriptor: impl Into<String>,
        sign: impl Fn(&E) -> Result<Sign> + Send + Sync + 'static,
    ) -> Self {
        FnOracle {
            descriptor: descriptor.into(),
            sign: Box::new(sign),
        }
    }
}

impl<E> SignOracle<E> for FnOracle<E> {
    fn sign(&self, g: &E) -> Result<Sign> {
        (self.sign)(g)
    }
    fn descriptor(&self) -> String {
        self.descriptor.clone()
    }
}

/// The opposite ordering `P⁻¹`.
pub struct Opposite<E>(pub Oracle<E>);

impl<E> SignOracle<E> for Opposite<E> {
    fn sign(&self, g: &E) -> Result<Sign> {
        Ok(self.0.sign(g)?.flip())
    }
    fn descriptor(&self) -> String {
        format!("opposite({})", self.0.descriptor())
    }
}

type Map<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// An automorphism given by a forward map and its inverse.
pub struct GroupAutomorphism<E> {
    forward: Map<E>,
    backward: Map<E>,
    descriptor: String,
}

impl<E> Clone for GroupAutomorphism<E> {
    fn clone(&self) -> Self {
        GroupAutomorphism {
            forward: self.forward.clone(),
            backward: self.backward.clone(),
            descriptor: self.descriptor.clone(),
        }
    }
}

impl<E> fmt::Debug for GroupAutomorphism<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAutomorphism({})", self.descriptor)
    }
}

impl<E: 'static> GroupAutomorphism<E> {
    pub fn new(
        descriptor: impl Into<String>,
        forward: impl Fn(&E) -> E + Send + Sync + 'static,
        backward: impl Fn(&E) -> E + Send + Sync + 'static,
    ) -> Self {
        GroupAutomorphism {
            forward: Arc::new(forward),
            backward: Arc::new(backward),
            descriptor: descriptor.into(),
        }
    }

    pub fn identity() -> Self
    where
        E: Clone,
    {
        GroupAutomorphism::new("id", |g: &E| g.clone(), |g: &E| g.clone())
    }

    pub fn forward(&self, g: &E) -> E {
        (self.forward)(g)
    }

    pub fn backward(&self, g: &E) -> E {
        (self.backward)(g)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn inverse(&self) -> Self {
        GroupAutomorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            descriptor: format!("inv({})", self.descriptor),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (f1, f2) = (self.forward.clone(), other.forward.clone());
        let (b1, b2) = (self.backward.clone(), other.backward.clone());
        GroupAutomorphism {
            forward: Arc::new(move |g| f1(&f2(g))),
            backward: Arc::new(move |g| b2(&b1(g))),
            descriptor: format!("{}*{}", self.descriptor, other.descriptor),
        }
    }

    /// `self^n`, with negative `n` meaning powers of the inverse.
    pub fn pow(&self, n: i64) -> Self
    where
        E: Clone,
    {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupAutomorphism::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc.descriptor = format!("({})^{}", self.descriptor, n);
        acc
    }
}

/// Conjugation `h ↦ g h g⁻¹`.
pub fn inner_automorphism<G: Group + 'static>(
    group: Arc<G>,
    g: &G::Element,
) -> GroupAutomorphism<G::Element> {
    let gi = group.invert(g);
    let (g1, gi1, grp1) = (g.clone(), gi.clone(), group.clone());
    let (g2, gi2, grp2) = (g.clone(), gi, group);
    GroupAutomorphism::new(
        format!("inner({})", g),
        move |h| grp1.multiply(&grp1.multiply(&g1, h), &gi1),
        move |h| grp2.multiply(&grp2.multiply(&gi2, h), &g2),
    )
}

/// `g < h` iff `g⁻¹h ∈ P`.
pub fn compare<G: Group + ?Sized>(
    group: &G,
    oracle: &dyn SignOracle<G::Element>,
    g: &G::Element,
    h: &G::Element,
) -> Result<Ordering> {
    let q = group.multiply(&group.invert(g), h);
    if group.is_identity(&q)? {
        return Ok(Ordering::Equal);
    }
    Ok(match oracle.sign(&q)? {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Partition,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<E> {
    pub kind: ViolationKind,
    pub witnesses: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<E> {
    pub passed: bool,
    pub violations: Vec<Violation<E>>,
}

impl<E> AxiomReport<E> {
    fn from_violations(violations: Vec<Violation<E>>) -> Self {
        AxiomReport {
            passed: violations.is_empty(),
            violations,
        }
    }
}

/// Signs of every nonidentity ball element (index 0, the identity, holds a
/// placeholder that is never read).
pub(crate) fn ball_signs<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    ball: &crate::group::Ball<G>,
) -> Result<Vec<Sign>> {
    let mut signs = vec![Sign::Positive; ball.len()];
    for (i, g) in ball.nonidentity() {
        signs[i] = oracle.sign(g)?;
    }
    Ok(signs)
}

/// Checks both cone axioms on `ball(radius)`: `sign(g⁻¹) = −sign(g)`, and
/// `sign(gh) = +` whenever `g, h` are positive and `gh` lies in the ball.
pub fn verify_cone_axioms<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<AxiomReport<G::Element>> {
    let ball = group.ball(radius)?;
    let signs = ball_signs(oracle, &ball)?;
    let inverse = ball.inverse_table(group)?;
    let mut violations = Vec::new();
    for (i, g) in ball.nonidentity() {
        let j = inverse[i];
        if i < j && signs[i] == signs[j] {
            violations.push(Violation {
                kind: ViolationKind::Partition,
                witnesses: vec![g.clone()],
            });
        }
    }
    let positives: Vec<usize> = (1..ball.len()).filter(|&i| signs[i].is_positive()).collect();
    for &i in &positives {
        for &j in &positives {
            let gh = group.multiply(ball.element(i), ball.element(j));
            match ball.position(group, &gh)? {
                Some(k) if k != 0 && !signs[k].is_positive() => violations.push(Violation {
                    kind: ViolationKind::Closure,
                    witnesses: vec![ball.element(i).clone(), ball.element(j).clone()],
                }),
                _ => {}
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}

/// Pushforward `φ(P)`: `sign′(g) = sign(φ⁻¹(g))`.
pub struct Pushforward<E> {
    phi: GroupAutomorphism<E>,
    inner: Oracle<E>,
}

impl<E: Send + Sync + 'static> SignOracle<E> for Pushforward<E> {
    fn sign(&self, g: &E) -> Result<Sign> {
        self.inner.sign(&self.phi.backward(g))
    }
    fn descriptor(&self) -> String {
        format!("{}.({})", self.phi.descriptor(), self.inner.descriptor())
    }
}

pub fn act_automorphism<E: Send + Sync + 'static>(
    phi: &GroupAutomorphism<E>,
    oracle: Oracle<E>,
) -> Oracle<E> {
    Arc::new(Pushforward {
        phi: phi.clone(),
        inner: oracle,
    })
}

/// `gPg⁻¹`: `sign′(h) = sign(g⁻¹hg)`.
pub fn conjugate_ordering<G: Group + 'static>(
    group: Arc<G>,
    g: &G::Element,
    oracle: Oracle<G::Element>,
) -> Oracle<G::Element> {
    act_automorphism(&inner_automorphism(group, g), oracle)
}

/// First `(g, p)` in canonical order with `p ∈ P` and `gpg⁻¹ ∉ P`.
pub fn check_bi_invariance<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<Option<(G::Element, G::Element)>> {
    let ball = group.ball(radius)?;
    let signs = ball_signs(oracle, &ball)?;
    for (_, g) in ball.nonidentity() {
        let gi = group.invert(g);
        for (j, p) in ball.nonidentity() {
            if !signs[j].is_positive() {
                continue;
            }
            let c = group.multiply(&group.multiply(g, p), &gi);
            if !oracle.sign(&c)?.is_positive() {
                return Ok(Some((g.clone(), p.clone())));
            }
        }
    }
    Ok(None)
}

/// The `compare`-minimum of the positive elements of `ball(radius)`.
pub fn least_positive_in_ball<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<G::Element> {
    let ball = group.ball(radius)?;
    let mut least: Option<&G::Element> = None;
    for (_, g) in ball.nonidentity() {
        if !oracle.sign(g)?.is_positive() {
            continue;
        }
        least = match least {
            None => Some(g),
            Some(m) if compare(group, oracle, g, m)? == Ordering::Less => Some(g),
            keep => keep,
        };
    }
    least
        .cloned()
        .ok_or(OrderError::EmptyPositives { radius })
}

/// Checks `m ≤ g` for every positive `g` of the ball; returns the first
/// positive element strictly below `m`, if any. A nonpositive `m` is its own
/// counterexample.
pub fn certify_least_positive<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
    m: &G::Element,
) -> Result<Option<G::Element>> {
    if group.is_identity(m)? || !oracle.sign(m)?.is_positive() {
        return Ok(Some(m.clone()));
    }
    let ball = group.ball(radius)?;
    for (_, g) in ball.nonidentity() {
        if oracle.sign(g)?.is_positive() && compare(group, oracle, g, m)? == Ordering::Less {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Convexity witness `g < f < h` with `g, h` in the subgroup and `f` outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityWitness<E> {
    pub low: E,
    pub outside: E,
    pub high: E,
}

/// Searches `ball(radius)` for a convexity violation of the subgroup
/// described by `member`. The witness uses the least and greatest subgroup
/// elements of the ball as its brackets, with the first outside element in
/// canonical order that falls between them.
pub fn check_convex_in_ball<G, F>(
    member: F,
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<Option<ConvexityWitness<G::Element>>>
where
    G: Group + ?Sized,
    F: Fn(&G::Element) -> Result<bool>,
{
    let ball = group.ball(radius)?;
    let mut inside = Vec::with_capacity(ball.len());
    for g in ball.elements() {
        inside.push(member(g)?);
    }
    if !inside[0] {
        return Err(OrderError::RejectedInput(
            "subgroup predicate excludes the identity".into(),
        ));
    }
    let members: Vec<usize> = (0..ball.len()).filter(|&i| inside[i]).collect();
    for &i in &members {
        let g = ball.element(i);
        if !member(&group.invert(g))? {
            return Err(OrderError::RejectedInput(format!(
                "subgroup predicate not closed under inverse at {}",
                g
            )));
        }
        for &j in &members {
            let gh = group.multiply(g, ball.element(j));
            if let Some(k) = ball.position(group, &gh)? {
                if !inside[k] {
                    return Err(OrderError::RejectedInput(format!(
                        "subgroup predicate not closed under product at ({}, {})",
                        g,
                        ball.element(j)
                    )));
                }
            }
        }
    }
    let mut low = ball.element(0);
    let mut high = ball.element(0);
    for &i in &members[1..] {
        let g = ball.element(i);
        if compare(group, oracle, g, low)? == Ordering::Less {
            low = g;
        }
        if compare(group, oracle, g, high)? == Ordering::Greater {
            high = g;
        }
    }
    for (i, f) in ball.nonidentity() {
        if inside[i] {
            continue;
        }
        if compare(group, oracle, low, f)? == Ordering::Less
            && compare(group, oracle, f, high)? == Ordering::Less
        {
            return Ok(Some(ConvexityWitness {
                low: low.clone(),
                outside: f.clone(),
                high: high.clone(),
            }));
        }
    }
    Ok(None)
}

/// A certificate that `φ(P) ≠ P`: `g ∈ P` and `φ(g) ∉ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishingWitness<E> {
    pub oracle_index: usize,
    pub element: E,
    pub image: E,
    /// `(n, m)` with `φ(g)^n = g^(−m)` when such a relation was found within
    /// the power bound; then every cone containing `g` is moved by `φ`.
    pub power_relation: Option<(u32, u32)>,
}

/// Default exponent bound for power-relation searches.
pub const DEFAULT_POWER_BOUND: u32 = 8;

/// Smallest `(n, m)` in `1..=bound` with `a^n = b^m`.
pub fn find_power_relation<G: Group + ?Sized>(
    group: &G,
    a: &G::Element,
    b: &G::Element,
    bound: u32,
) -> Result<Option<(u32, u32)>> {
    let a_powers: Vec<G::Element> = (1..=bound as i64).map(|n| power(group, a, n)).collect();
    let b_powers: Vec<G::Element> = (1..=bound as i64).map(|m| power(group, b, m)).collect();
    for (n, an) in a_powers.iter().enumerate() {
        for (m, bm) in b_powers.iter().enumerate() {
            if group.key(an) == group.key(bm) && group.equal(an, bm)? {
                return Ok(Some((n as u32 + 1, m as u32 + 1)));
            }
        }
    }
    Ok(None)
}

/// First `(P, g)` in catalog order, then ball order, with `g ∈ P` and
/// `φ(g) ∉ P`.
pub fn distinguishing_witness<G: Group + ?Sized>(
    phi: &GroupAutomorphism<G::Element>,
    catalog: &[Oracle<G::Element>],
    group: &G,
    radius: usize,
    power_bound: u32,
) -> Result<Option<DistinguishingWitness<G::Element>>>
where
    G::Element: 'static,
{
    let ball = group.ball(radius)?;
    for (index, oracle) in catalog.iter().enumerate() {
        for (_, g) in ball.nonidentity() {
            if !oracle.sign(g)?.is_positive() {
                continue;
            }
            let image = phi.forward(g);
            if group.is_identity(&image)? || oracle.sign(&image)?.is_positive() {
                continue;
            }
            let power_relation =
                find_power_relation(group, &image, &group.invert(g), power_bound)?;
            return Ok(Some(DistinguishingWitness {
                oracle_index: index,
                element: g.clone(),
                image,
                power_relation,
            }));
        }
    }
    Ok(None)
}

/// Shortcut form of the witness search: the first ball element `g` with
/// `φ(g)^n = g^(−m)` for some `n, m ≤ bound`. Any cone containing `g` is then
/// moved, so the first catalog cone serves, with `g⁻¹` reported in place of
/// `g` when `g` is negative there.
pub fn power_inversion_witness<G: Group + ?Sized>(
    phi: &GroupAutomorphism<G::Element>,
    catalog: &[Oracle<G::Element>],
    group: &G,
    radius: usize,
    bound: u32,
) -> Result<Option<DistinguishingWitness<G::Element>>>
where
    G::Element: 'static,
{
    if catalog.is_empty() {
        return Ok(None);
    }
    let ball = group.ball(radius)?;
    for (_, g) in ball.nonidentity() {
        let image = phi.forward(g);
        let Some(rel) = find_power_relation(group, &image, &group.invert(g), bound)? else {
            continue;
        };
        let element = match catalog[0].sign(g)? {
            Sign::Positive => g.clone(),
            Sign::Negative => group.invert(g),
        };
        let image = phi.forward(&element);
        return Ok(Some(DistinguishingWitness {
            oracle_index: 0,
            element,
            image,
            power_relation: Some(rel),
        }));
    }
    Ok(None)
}
