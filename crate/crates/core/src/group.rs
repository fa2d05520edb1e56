//! Groups with computable multiplication and enumerable balls.
//!
//! Every concrete group in the crate implements [`Group`]. Elements carry a
//! total order (`Ord`) used only to make ball enumeration and witness search
//! canonical: balls are sorted by `(length, element)`.

use std::collections::HashMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use crate::error::Result;

/// Membership of a nonidentity element in a positive cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_positive(positive: bool) -> Sign {
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

pub trait Group: Send + Sync {
    type Element: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync + 'static;
    /// A homomorphism invariant used to bucket elements. Equal elements must
    /// have equal keys; unequal elements may collide, `equal` decides.
    type Key: Clone + Eq + Hash + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
    /// Generators in canonical letter order (each is followed implicitly by
    /// its inverse when words are enumerated).
    fn generators(&self) -> Vec<Self::Element>;
    fn key(&self, g: &Self::Element) -> Self::Key;
    fn equal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;
    fn ball(&self, radius: usize) -> Result<Ball<Self>>;

    fn is_identity(&self, g: &Self::Element) -> Result<bool> {
        self.equal(g, &self.identity())
    }

    /// Exact isolator membership `h ∈ I(g)` when the group admits a decision
    /// procedure; `None` means only bounded search is available.
    fn isolator_exact(&self, _h: &Self::Element, _g: &Self::Element) -> Option<bool> {
        None
    }
}

/// All elements of length at most `radius`, distinct, in canonical order.
/// The identity is always the first element.
pub struct Ball<G: Group + ?Sized> {
    radius: usize,
    elements: Vec<G::Element>,
    lengths: Vec<usize>,
    index: HashMap<G::Key, Vec<usize>>,
}

impl<G: Group + ?Sized> Clone for Ball<G> {
    fn clone(&self) -> Self {
        Ball {
            radius: self.radius,
            elements: self.elements.clone(),
            lengths: self.lengths.clone(),
            index: self.index.clone(),
        }
    }
}

impl<G: Group + ?Sized> Debug for Ball<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ball")
            .field("radius", &self.radius)
            .field("size", &self.elements.len())
            .finish()
    }
}

impl<G: Group + ?Sized> Ball<G> {
    /// Builds a ball from `(length, element)` pairs whose elements are
    /// already known to be pairwise distinct.
    pub fn from_distinct(group: &G, radius: usize, mut items: Vec<(usize, G::Element)>) -> Self {
        items.sort();
        let mut index: HashMap<G::Key, Vec<usize>> = HashMap::new();
        let mut elements = Vec::with_capacity(items.len());
        let mut lengths = Vec::with_capacity(items.len());
        for (i, (len, e)) in items.into_iter().enumerate() {
            index.entry(group.key(&e)).or_default().push(i);
            lengths.push(len);
            elements.push(e);
        }
        Ball {
            radius,
            elements,
            lengths,
            index,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[G::Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &G::Element {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// Elements other than the identity, with their ball indices.
    pub fn nonidentity(&self) -> impl Iterator<Item = (usize, &G::Element)> {
        self.elements.iter().enumerate().skip(1)
    }

    pub fn position(&self, group: &G, g: &G::Element) -> Result<Option<usize>> {
        let Some(candidates) = self.index.get(&group.key(g)) else {
            return Ok(None);
        };
        for &i in candidates {
            if group.equal(&self.elements[i], g)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, group: &G, g: &G::Element) -> Result<bool> {
        Ok(self.position(group, g)?.is_some())
    }

    /// Index of the inverse of each element.
    pub fn inverse_table(&self, group: &G) -> Result<Vec<usize>> {
        let mut table = Vec::with_capacity(self.len());
        for e in &self.elements {
            let inv = group.invert(e);
            let pos = self.position(group, &inv)?.ok_or_else(|| {
                crate::error::OrderError::RejectedInput(format!(
                    "ball of {} is not closed under inversion at {}",
                    group.name(),
                    e
                ))
            })?;
            table.push(pos);
        }
        Ok(table)
    }
}

/// Breadth-first ball in the word metric of `group.generators()`.
///
/// Words are extended on the right by letters in the order
/// `g1, g1⁻¹, g2, g2⁻¹, …`, and the frontier is processed in canonical order,
/// so when `Ord` is shortlex the stored representative of each element is its
/// shortlex-least geodesic.
pub fn word_ball<G: Group + ?Sized>(group: &G, radius: usize) -> Result<Ball<G>> {
    let mut letters = Vec::new();
    for g in group.generators() {
        let inv = group.invert(&g);
        letters.push(g);
        letters.push(inv);
    }
    let identity = group.identity();
    let mut ball = Ball::from_distinct(group, radius, vec![(0, identity.clone())]);
    let mut frontier = vec![identity];
    for len in 1..=radius {
        let mut next: Vec<G::Element> = Vec::new();
        for w in &frontier {
            for l in &letters {
                let c = group.multiply(w, l);
                if ball.position(group, &c)?.is_some() {
                    continue;
                }
                let i = ball.elements.len();
                ball.index.entry(group.key(&c)).or_default().push(i);
                ball.elements.push(c.clone());
                ball.lengths.push(len);
                next.push(c);
            }
        }
        next.sort();
        frontier = next;
    }
    // Re-sort into canonical (length, element) order.
    let items = ball.lengths.into_iter().zip(ball.elements).collect();
    Ok(Ball::from_distinct(group, radius, items))
}

/// `g^k` by repeated squaring.
pub fn power<G: Group + ?Sized>(group: &G, g: &G::Element, k: i64) -> G::Element {
    let mut base = if k < 0 { group.invert(g) } else { g.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = group.identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = group.multiply(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = group.multiply(&base, &base);
        }
    }
    acc
}

pub fn commutator<G: Group + ?Sized>(group: &G, a: &G::Element, b: &G::Element) -> G::Element {
    let ab = group.multiply(a, b);
    let ai = group.invert(a);
    let bi = group.invert(b);
    group.multiply(&group.multiply(&ab, &ai), &bi)
}

/// Canonical rank of a signed letter or integer coordinate:
/// `0, 1, -1, 2, -2, …` map to `0, 1, 2, 3, 4, …`.
pub fn zigzag(n: i64) -> u64 {
    if n > 0 {
        2 * n as u64 - 1
    } else {
        2 * n.unsigned_abs()
    }
}

/// The subgroup generated by a list of elements of a parent group, with the
/// word metric of those generators.
pub struct Subgroup<G: Group> {
    parent: Arc<G>,
    generators: Vec<G::Element>,
    label: String,
}

impl<G: Group> Subgroup<G> {
    pub fn new(parent: Arc<G>, generators: Vec<G::Element>, label: impl Into<String>) -> Self {
        Subgroup {
            parent,
            generators,
            label: label.into(),
        }
    }

    pub fn parent(&self) -> &Arc<G> {
        &self.parent
    }
}

impl<G: Group> Group for Subgroup<G> {
    type Element = G::Element;
    type Key = G::Key;

    fn name(&self) -> String {
        format!("{} < {}", self.label, self.parent.name())
    }
    fn identity(&self) -> G::Element {
        self.parent.identity()
    }
    fn multiply(&self, a: &G::Element, b: &G::Element) -> G::Element {
        self.parent.multiply(a, b)
    }
    fn invert(&self, a: &G::Element) -> G::Element {
        self.parent.invert(a)
    }
    fn generators(&self) -> Vec<G::Element> {
        self.generators.clone()
    }
    fn key(&self, g: &G::Element) -> G::Key {
        self.parent.key(g)
    }
    fn equal(&self, a: &G::Element, b: &G::Element) -> Result<bool> {
        self.parent.equal(a, b)
    }
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        word_ball(self, radius)
    }
}
