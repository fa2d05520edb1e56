//! Semidirect products `K ⋊ Z`, the groups `K = Q² ⋊_A Z` and
//! `G = K ⋊_ψ Z`, and the lexicographic orderings of extensions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{OrderError, Result};
use crate::group::{zigzag, Ball, Group, Sign};
use crate::lattice::{
    eigen_orderings, flags_equivalent, form_sign, matrix_automorphism, EigenOrderings, FlagOracle,
    FormFlag, Lattice, LatticeVector,
};
use crate::matrix::RationalMatrix;
use crate::oracle::{check_bi_invariance, GroupAutomorphism, Oracle, SignOracle};
use crate::quadratic::QuadRat;

/// `(k, n)`, standing for `k tⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiElement<E> {
    pub kernel: E,
    pub shift: i64,
}

impl<E> SemiElement<E> {
    pub fn new(kernel: E, shift: i64) -> Self {
        SemiElement { kernel, shift }
    }
}

impl<E: Ord> Ord for SemiElement<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kernel
            .cmp(&other.kernel)
            .then_with(|| zigzag(self.shift).cmp(&zigzag(other.shift)))
    }
}

impl<E: Ord> PartialOrd for SemiElement<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: fmt::Display> fmt::Display for SemiElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.kernel, self.shift)
    }
}

/// `K ⋊ Z` with `t k t⁻¹ = ψ(k)`, multiplying as
/// `(k₁, n₁)(k₂, n₂) = (k₁ ψ^{n₁}(k₂), n₁ + n₂)`.
pub struct SemidirectZ<K: Group> {
    kernel: Arc<K>,
    psi: GroupAutomorphism<K::Element>,
    label: String,
}

impl<K: Group> Clone for SemidirectZ<K> {
    fn clone(&self) -> Self {
        SemidirectZ {
            kernel: self.kernel.clone(),
            psi: self.psi.clone(),
            label: self.label.clone(),
        }
    }
}

impl<K: Group> SemidirectZ<K> {
    pub fn new(kernel: Arc<K>, psi: GroupAutomorphism<K::Element>, label: impl Into<String>) -> Self {
        SemidirectZ {
            kernel,
            psi,
            label: label.into(),
        }
    }

    pub fn kernel(&self) -> &Arc<K> {
        &self.kernel
    }

    pub fn psi(&self) -> &GroupAutomorphism<K::Element> {
        &self.psi
    }

    pub fn psi_pow(&self, k: &K::Element, n: i64) -> K::Element {
        let mut out = k.clone();
        for _ in 0..n.unsigned_abs() {
            out = if n > 0 {
                self.psi.forward(&out)
            } else {
                self.psi.backward(&out)
            };
        }
        out
    }

    /// The generator `t = (1, 1)`.
    pub fn t(&self) -> SemiElement<K::Element> {
        SemiElement::new(self.kernel.identity(), 1)
    }

    pub fn embed(&self, k: K::Element) -> SemiElement<K::Element> {
        SemiElement::new(k, 0)
    }
}

impl<K: Group> Group for SemidirectZ<K> {
    type Element = SemiElement<K::Element>;
    type Key = (K::Key, i64);

    fn name(&self) -> String {
        self.label.clone()
    }
    fn identity(&self) -> Self::Element {
        SemiElement::new(self.kernel.identity(), 0)
    }
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let moved = self.psi_pow(&b.kernel, a.shift);
        SemiElement::new(self.kernel.multiply(&a.kernel, &moved), a.shift + b.shift)
    }
    fn invert(&self, a: &Self::Element) -> Self::Element {
        let k = self.psi_pow(&self.kernel.invert(&a.kernel), -a.shift);
        SemiElement::new(k, -a.shift)
    }
    fn generators(&self) -> Vec<Self::Element> {
        let mut gens: Vec<_> = self.kernel.generators().into_iter().map(|k| self.embed(k)).collect();
        gens.push(self.t());
        gens
    }
    fn key(&self, g: &Self::Element) -> Self::Key {
        (self.kernel.key(&g.kernel), g.shift)
    }
    fn equal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        Ok(a.shift == b.shift && self.kernel.equal(&a.kernel, &b.kernel)?)
    }
    /// `{(k, n) : |k| + |n| ≤ r}` in the kernel's ball metric, closed up
    /// under inversion; an added inverse inherits the length of the element
    /// it inverts.
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        let r = radius as i64;
        let mut lengths: HashMap<Self::Element, usize> = HashMap::new();
        let mut order: Vec<Self::Element> = Vec::new();
        for n in -r..=r {
            let kb = self.kernel.ball((r - n.abs()) as usize)?;
            for (i, k) in kb.elements().iter().enumerate() {
                let g = SemiElement::new(k.clone(), n);
                let len = kb.length(i) + n.unsigned_abs() as usize;
                let inv = self.invert(&g);
                for e in [g, inv] {
                    match lengths.get_mut(&e) {
                        Some(l) => *l = (*l).min(len),
                        None => {
                            lengths.insert(e.clone(), len);
                            order.push(e);
                        }
                    }
                }
            }
        }
        let items = order
            .into_iter()
            .map(|e| {
                let l = lengths[&e];
                (l, e)
            })
            .collect();
        Ok(Ball::from_distinct(self, radius, items))
    }
}

/// Positive iff the `Z`-coordinate is positive, or it vanishes and the
/// kernel part is positive. A left-ordering for any kernel ordering.
pub struct QuotientLexOracle<E> {
    kernel: Oracle<E>,
}

impl<E> QuotientLexOracle<E> {
    pub fn new(kernel: Oracle<E>) -> Self {
        QuotientLexOracle { kernel }
    }
}

impl<E: Send + Sync> SignOracle<SemiElement<E>> for QuotientLexOracle<E> {
    fn sign(&self, g: &SemiElement<E>) -> Result<Sign> {
        match g.shift.cmp(&0) {
            Ordering::Greater => Ok(Sign::Positive),
            Ordering::Less => Ok(Sign::Negative),
            Ordering::Equal => self.kernel.sign(&g.kernel),
        }
    }
    fn descriptor(&self) -> String {
        format!("quotient-lex({})", self.kernel.descriptor())
    }
}

/// First nonidentity `k` of the kernel ball whose sign changes under
/// `t_action`.
pub fn conjugation_preserves<K: Group + ?Sized>(
    pk: &dyn SignOracle<K::Element>,
    t_action: &GroupAutomorphism<K::Element>,
    kernel: &K,
    radius: usize,
) -> Result<Option<K::Element>> {
    let ball = kernel.ball(radius)?;
    for (_, k) in ball.nonidentity() {
        if pk.sign(&t_action.forward(k))? != pk.sign(k)? {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// Radius at which the invariance precondition is checked when a
/// lexicographic extension is built.
pub const EXTENSION_CHECK_RADIUS: usize = 6;

/// `k tⁿ` is positive iff `k ∈ P_K`, or `k = 1` and `n > 0`.
pub struct LexExtensionOracle<K: Group> {
    kernel: Arc<K>,
    pk: Oracle<K::Element>,
}

impl<K: Group> LexExtensionOracle<K> {
    /// Refuses construction unless conjugation by `t` preserves `pk` on the
    /// kernel ball of the given radius.
    pub fn new(ext: &SemidirectZ<K>, pk: Oracle<K::Element>, radius: usize) -> Result<Self> {
        if let Some(k) = conjugation_preserves(pk.as_ref(), ext.psi(), ext.kernel().as_ref(), radius)? {
            return Err(OrderError::PreconditionFailed(format!(
                "conjugation by t changes the sign of {}",
                k
            )));
        }
        Ok(LexExtensionOracle {
            kernel: ext.kernel().clone(),
            pk,
        })
    }
}

impl<K: Group> SignOracle<SemiElement<K::Element>> for LexExtensionOracle<K> {
    fn sign(&self, g: &SemiElement<K::Element>) -> Result<Sign> {
        if self.kernel.is_identity(&g.kernel)? {
            return match g.shift.cmp(&0) {
                Ordering::Greater => Ok(Sign::Positive),
                Ordering::Less => Ok(Sign::Negative),
                Ordering::Equal => Err(OrderError::IdentityInput),
            };
        }
        self.pk.sign(&g.kernel)
    }
    fn descriptor(&self) -> String {
        format!("kernel-lex({})", self.pk.descriptor())
    }
}

pub type KGroup = SemidirectZ<Lattice>;
pub type KElement = SemiElement<LatticeVector>;
pub type GGroup = SemidirectZ<KGroup>;
pub type GElement = SemiElement<KElement>;

/// `A = [[1,2],[1,1]]`.
pub fn matrix_a() -> RationalMatrix {
    RationalMatrix::from_ints(&[&[1, 2], &[1, 1]])
}

/// `K = Q² ⋊ Z` with `(v, c)(v′, c′) = (v + v′Aᶜ, c + c′)`.
pub fn k_group() -> KGroup {
    let a = matrix_automorphism(&matrix_a()).expect("A is invertible");
    SemidirectZ::new(Arc::new(Lattice::rational(2)), a, "K=Q^2xZ")
}

/// `ψ(v, c) = (v(−A), c)`, an automorphism of `K` because `−A` commutes
/// with `A`.
pub fn psi_on_k() -> GroupAutomorphism<KElement> {
    let m = matrix_a().neg();
    let minv = m.inverse().expect("−A is invertible");
    GroupAutomorphism::new(
        "psi(v,c)=(v(-A),c)",
        move |k: &KElement| SemiElement::new(k.kernel.times(&m), k.shift),
        move |k: &KElement| SemiElement::new(k.kernel.times(&minv), k.shift),
    )
}

/// `G = K ⋊_ψ Z`.
pub fn g_group() -> GGroup {
    SemidirectZ::new(Arc::new(k_group()), psi_on_k(), "G=KxZ")
}

/// The single form `(−√2, 1)`.
pub fn minus_sqrt2_flag() -> FormFlag {
    FormFlag::single(vec![-QuadRat::sqrt(2), QuadRat::from_int(1)]).expect("irrational form")
}

/// `+` iff `c > 0`, or `c = 0` and `form_sign(u, v) = +`.
pub fn k_ordering_sign(u: &FormFlag, g: &KElement) -> Result<Sign> {
    match g.shift.cmp(&0) {
        Ordering::Greater => Ok(Sign::Positive),
        Ordering::Less => Ok(Sign::Negative),
        Ordering::Equal => form_sign(u, &g.kernel),
    }
}

pub fn k_ordering(u: FormFlag) -> Oracle<KElement> {
    Arc::new(QuotientLexOracle::new(FlagOracle::shared(u)))
}

/// The ordering of `G` built from `u = (−√2, 1)` on `K`, with least positive
/// element `t`.
pub fn g_ordering() -> Result<LexExtensionOracle<KGroup>> {
    LexExtensionOracle::new(&g_group(), k_ordering(minus_sqrt2_flag()), EXTENSION_CHECK_RADIUS)
}

pub fn lex_extension_sign<K: Group>(oracle: &LexExtensionOracle<K>, g: &SemiElement<K::Element>) -> Result<Sign> {
    oracle.sign(g)
}

/// Evidence that the orderings preserved by `A` and by `−A` are disjoint,
/// and that the constructed ordering of `G` is not bi-invariant.
#[derive(Clone, Debug)]
pub struct NonBiorderableEvidence {
    pub preserved_by_a: Vec<FormFlag>,
    pub preserved_by_minus_a: Vec<FormFlag>,
    pub common: Vec<FormFlag>,
    pub bi_invariance_witness: Option<(GElement, GElement)>,
}

pub const EVIDENCE_RADIUS: usize = 3;

pub fn g_not_biorderable_evidence() -> Result<NonBiorderableEvidence> {
    let flags = |m: &RationalMatrix| -> Result<Vec<FormFlag>> {
        match eigen_orderings(m, 2)? {
            EigenOrderings::Flags(f) => Ok(f),
            EigenOrderings::All => Err(OrderError::PreconditionFailed("scalar matrix".into())),
        }
    };
    let a = flags(&matrix_a())?;
    let ma = flags(&matrix_a().neg())?;
    let common = a
        .iter()
        .filter(|f| ma.iter().any(|g| flags_equivalent(f, g)))
        .cloned()
        .collect();
    let oracle = g_ordering()?;
    let witness = check_bi_invariance(&oracle, &g_group(), EVIDENCE_RADIUS)?;
    Ok(NonBiorderableEvidence {
        preserved_by_a: a,
        preserved_by_minus_a: ma,
        common,
        bi_invariance_witness: witness,
    })
}

/// Parses `((p/q,p/q),c)`.
pub fn parse_k_element(s: &str) -> Result<KElement> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || OrderError::Parse(format!("invalid K element {:?}", s));
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let cut = inner.rfind(',').ok_or_else(bad)?;
    let v = LatticeVector::parse(&inner[..cut])?;
    if v.dim() != 2 {
        return Err(bad());
    }
    let c = inner[cut + 1..].parse().map_err(|_| bad())?;
    Ok(SemiElement::new(v, c))
}

/// Parses `(((p/q,p/q),c),m)`.
pub fn parse_g_element(s: &str) -> Result<GElement> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || OrderError::Parse(format!("invalid G element {:?}", s));
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let cut = inner.rfind(',').ok_or_else(bad)?;
    let k = parse_k_element(&inner[..cut])?;
    let m = inner[cut + 1..].parse().map_err(|_| bad())?;
    Ok(SemiElement::new(k, m))
}
