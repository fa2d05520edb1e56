//! The Klein bottle group `⟨x, y | xyx⁻¹ = y⁻¹⟩`, its four left-orderings
//! and the automorphism family `x ↦ x^ε y^m, y ↦ y^δ`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{OrderError, Result};
use crate::group::{power, zigzag, Ball, Group, Sign};
use crate::oracle::{act_automorphism, GroupAutomorphism, Oracle, SignOracle};

/// `y^a x^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KleinElement {
    pub a: i64,
    pub b: i64,
}

fn parity_sign(b: i64) -> i64 {
    if b.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinElement {
    pub const IDENTITY: KleinElement = KleinElement { a: 0, b: 0 };
    pub const X: KleinElement = KleinElement { a: 0, b: 1 };
    pub const Y: KleinElement = KleinElement { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        KleinElement { a, b }
    }

    pub fn mul(self, o: Self) -> Self {
        KleinElement {
            a: self.a + parity_sign(self.b) * o.a,
            b: self.b + o.b,
        }
    }

    pub fn inv(self) -> Self {
        KleinElement {
            a: -parity_sign(self.b) * self.a,
            b: -self.b,
        }
    }

    pub fn length(self) -> usize {
        (self.a.unsigned_abs() + self.b.unsigned_abs()) as usize
    }

    /// Letter ranks of the normal-form word, with `x` before `y` in the
    /// alphabet.
    fn ranks(self) -> Vec<u64> {
        let mut out = vec![zigzag(2 * self.a.signum()); self.a.unsigned_abs() as usize];
        out.extend(std::iter::repeat(zigzag(self.b.signum())).take(self.b.unsigned_abs() as usize));
        out
    }

    /// Parses `"(a,b)"` or a word in `x, y, X, Y` (uppercase is inverse) such
    /// as `"Xyyy"`, or the normal form `"y^-3 x^-1"`; `"e"` is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(KleinElement::IDENTITY);
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(OrderError::Parse(format!("invalid Klein element {:?}", s)));
            }
            let p = |x: &str| {
                x.parse::<i64>()
                    .map_err(|_| OrderError::Parse(format!("invalid exponent {:?}", x)))
            };
            return Ok(KleinElement::new(p(parts[0])?, p(parts[1])?));
        }
        let mut acc = KleinElement::IDENTITY;
        let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let base = match chars[i] {
                'x' => KleinElement::X,
                'X' => KleinElement::X.inv(),
                'y' => KleinElement::Y,
                'Y' => KleinElement::Y.inv(),
                c => return Err(OrderError::Parse(format!("invalid Klein letter {:?}", c))),
            };
            i += 1;
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && (chars[end].is_ascii_digit() || (end == start && chars[end] == '-')) {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                exp = digits
                    .parse()
                    .map_err(|_| OrderError::Parse(format!("invalid exponent in {:?}", s)))?;
                i = end;
            }
            acc = acc.mul(KleinGroup.pow(base, exp));
        }
        Ok(acc)
    }
}

impl Ord for KleinElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.ranks().cmp(&other.ranks()))
    }
}

impl PartialOrd for KleinElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: char, e: i64| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{}^{}", name, e)),
        };
        let parts: Vec<String> = [part('y', self.a), part('x', self.b)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KleinGroup;

impl KleinGroup {
    pub fn pow(&self, g: KleinElement, k: i64) -> KleinElement {
        power(self, &g, k)
    }
}

impl Group for KleinGroup {
    type Element = KleinElement;
    type Key = KleinElement;

    fn name(&self) -> String {
        "Klein".into()
    }
    fn identity(&self) -> KleinElement {
        KleinElement::IDENTITY
    }
    fn multiply(&self, a: &KleinElement, b: &KleinElement) -> KleinElement {
        a.mul(*b)
    }
    fn invert(&self, a: &KleinElement) -> KleinElement {
        a.inv()
    }
    fn generators(&self) -> Vec<KleinElement> {
        vec![KleinElement::X, KleinElement::Y]
    }
    fn key(&self, g: &KleinElement) -> KleinElement {
        *g
    }
    fn equal(&self, a: &KleinElement, b: &KleinElement) -> Result<bool> {
        Ok(a == b)
    }
    /// Normal forms with `|a| + |b| ≤ radius`.
    fn ball(&self, radius: usize) -> Result<Ball<Self>> {
        let r = radius as i64;
        let mut items = Vec::new();
        for b in -r..=r {
            let rest = r - b.abs();
            for a in -rest..=rest {
                let g = KleinElement::new(a, b);
                items.push((g.length(), g));
            }
        }
        Ok(Ball::from_distinct(self, radius, items))
    }
}

/// Parameters of `P(s,t)`: `s` orders the `x`-exponent, `t` the
/// `y`-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KleinOrderingParams {
    pub s: Sign,
    pub t: Sign,
}

impl KleinOrderingParams {
    pub fn new(s: Sign, t: Sign) -> Self {
        KleinOrderingParams { s, t }
    }

    /// `P(+,+)`, `P(+,−)`, `P(−,+)`, `P(−,−)`.
    pub fn all() -> [KleinOrderingParams; 4] {
        use Sign::*;
        [
            KleinOrderingParams::new(Positive, Positive),
            KleinOrderingParams::new(Positive, Negative),
            KleinOrderingParams::new(Negative, Positive),
            KleinOrderingParams::new(Negative, Negative),
        ]
    }
}

impl fmt::Display for KleinOrderingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.s, self.t)
    }
}

impl std::str::FromStr for KleinOrderingParams {
    type Err = OrderError;

    /// `P(+,-)` or the bare pair `+,-`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix("P").unwrap_or(&t);
        let inner = inner.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(inner);
        let sign = |c: &str| match c {
            "+" => Some(Sign::Positive),
            "-" => Some(Sign::Negative),
            _ => None,
        };
        match inner.split_once(',') {
            Some((a, b)) => match (sign(a), sign(b)) {
                (Some(s), Some(t)) => Ok(KleinOrderingParams::new(s, t)),
                _ => Err(OrderError::Parse(format!("invalid Klein ordering {:?}", s))),
            },
            None => Err(OrderError::Parse(format!("invalid Klein ordering {:?}", s))),
        }
    }
}

fn signed(s: Sign, v: i64) -> Sign {
    match s {
        Sign::Positive => Sign::from_positive(v > 0),
        Sign::Negative => Sign::from_positive(v < 0),
    }
}

pub fn klein_sign(params: KleinOrderingParams, g: &KleinElement) -> Result<Sign> {
    if g.b != 0 {
        Ok(signed(params.s, g.b))
    } else if g.a != 0 {
        Ok(signed(params.t, g.a))
    } else {
        Err(OrderError::IdentityInput)
    }
}

pub struct KleinOracle(pub KleinOrderingParams);

impl SignOracle<KleinElement> for KleinOracle {
    fn sign(&self, g: &KleinElement) -> Result<Sign> {
        klein_sign(self.0, g)
    }
    fn descriptor(&self) -> String {
        format!("klein{}", self.0)
    }
}

pub fn klein_catalog() -> Vec<Oracle<KleinElement>> {
    KleinOrderingParams::all()
        .into_iter()
        .map(|p| Arc::new(KleinOracle(p)) as Oracle<KleinElement>)
        .collect()
}

/// `x ↦ x^ε y^m`, `y ↦ y^δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleinAut {
    pub epsilon: i64,
    pub delta: i64,
    pub m: i64,
}

impl KleinAut {
    pub fn new(epsilon: i64, delta: i64, m: i64) -> Result<Self> {
        if epsilon.abs() != 1 || delta.abs() != 1 {
            return Err(OrderError::RejectedInput("ε and δ must be ±1".into()));
        }
        Ok(KleinAut { epsilon, delta, m })
    }

    pub fn image_x(&self) -> KleinElement {
        KleinGroup.pow(KleinElement::X, self.epsilon).mul(KleinGroup.pow(KleinElement::Y, self.m))
    }

    pub fn image_y(&self) -> KleinElement {
        KleinGroup.pow(KleinElement::Y, self.delta)
    }

    /// Checks that the generator images satisfy the defining relation.
    pub fn relation_holds(&self) -> bool {
        let (x, y) = (self.image_x(), self.image_y());
        x.mul(y).mul(x.inv()).mul(y) == KleinElement::IDENTITY
    }

    /// Same `ε, δ` with `m′ = −δm`.
    pub fn inverse(&self) -> Self {
        KleinAut {
            epsilon: self.epsilon,
            delta: self.delta,
            m: -self.delta * self.m,
        }
    }

    pub fn apply(&self, g: &KleinElement) -> KleinElement {
        KleinGroup
            .pow(self.image_y(), g.a)
            .mul(KleinGroup.pow(self.image_x(), g.b))
    }

    pub fn as_automorphism(&self) -> GroupAutomorphism<KleinElement> {
        let (f, b) = (*self, self.inverse());
        GroupAutomorphism::new(
            self.to_string(),
            move |g: &KleinElement| f.apply(g),
            move |g: &KleinElement| b.apply(g),
        )
    }
}

impl fmt::Display for KleinAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.epsilon, self.delta, self.m)
    }
}

pub fn klein_aut_apply(phi: &KleinAut, g: &KleinElement) -> KleinElement {
    phi.apply(g)
}

/// Radius on which kernel membership is tested.
pub const KERNEL_RADIUS: usize = 8;

/// An automorphism moved by the action, with the first catalog ordering it
/// moves and the first ball element whose sign changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelExclusion {
    pub automorphism: KleinAut,
    pub ordering: KleinOrderingParams,
    pub element: KleinElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinKernel {
    pub members: Vec<KleinAut>,
    pub excluded: Vec<KernelExclusion>,
}

/// Members of the family with `|m| ≤ m_bound` that fix all four orderings
/// on `ball(8)`, and a witness for every other member.
pub fn klein_action_kernel(m_bound: i64) -> Result<KleinKernel> {
    let group = KleinGroup;
    let ball = group.ball(KERNEL_RADIUS)?;
    let mut members = Vec::new();
    let mut excluded = Vec::new();
    for epsilon in [1, -1] {
        for delta in [1, -1] {
            for m in -m_bound..=m_bound {
                let phi = KleinAut::new(epsilon, delta, m)?;
                let aut = phi.as_automorphism();
                let mut moved = None;
                'search: for params in KleinOrderingParams::all() {
                    let base: Oracle<KleinElement> = Arc::new(KleinOracle(params));
                    let pushed = act_automorphism(&aut, base.clone());
                    for (_, g) in ball.nonidentity() {
                        if pushed.sign(g)? != base.sign(g)? {
                            moved = Some((params, *g));
                            break 'search;
                        }
                    }
                }
                match moved {
                    None => members.push(phi),
                    Some((ordering, element)) => excluded.push(KernelExclusion {
                        automorphism: phi,
                        ordering,
                        element,
                    }),
                }
            }
        }
    }
    members.sort_by_key(|p| p.m);
    Ok(KleinKernel { members, excluded })
}
