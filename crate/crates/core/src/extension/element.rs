use std::fmt;

use itertools::Itertools;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pinj::PartialInjection;
use crate::semigroup::FiniteSemigroup;

/// One mapped pair `x → y` carrying the label `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple<L = usize> {
    pub x: usize,
    pub s: L,
    pub y: usize,
}

/// An element of `I_λ^n(S)`: the zero, or a nonempty labeled partial
/// bijection with triples sorted by domain point. The zero is never stored
/// as an empty list, so derived equality and hashing are semigroup
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElement<L = usize> {
    Zero,
    Map(Vec<Triple<L>>),
}

impl<L: Clone> ExtElement<L> {
    /// Canonicalizes `(x, s, y)` triples. An empty list is the zero.
    pub fn from_triples(triples: Vec<(usize, L, usize)>) -> Result<Self> {
        let mut t: Vec<Triple<L>> = triples.into_iter().map(|(x, s, y)| Triple { x, s, y }).collect();
        t.sort_by_key(|t| t.x);
        if t.windows(2).any(|w| w[0].x == w[1].x) {
            return Err(Error::InvalidInjection("domain point repeated".into()));
        }
        if !t.iter().map(|t| t.y).all_unique() {
            return Err(Error::InvalidInjection("range point repeated".into()));
        }
        Ok(Self::from_canonical(t))
    }

    pub(crate) fn from_canonical(triples: Vec<Triple<L>>) -> Self {
        if triples.is_empty() {
            ExtElement::Zero
        } else {
            ExtElement::Map(triples)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtElement::Zero)
    }

    pub fn triples(&self) -> &[Triple<L>] {
        match self {
            ExtElement::Zero => &[],
            ExtElement::Map(t) => t,
        }
    }

    pub fn rank(&self) -> usize {
        self.triples().len()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.triples().iter().map(|t| t.x).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        self.triples().iter().map(|t| t.y).collect()
    }

    pub fn labels(&self) -> Vec<L> {
        self.triples().iter().map(|t| t.s.clone()).collect()
    }

    /// Label of the pair `(x, y)`, if mapped.
    pub fn label_at(&self, x: usize, y: usize) -> Option<&L> {
        self.triples().iter().find(|t| t.x == x && t.y == y).map(|t| &t.s)
    }

    /// Extension product with labels multiplied by `mul`.
    pub fn mul_with(&self, other: &Self, mul: impl Fn(&L, &L) -> L) -> Self {
        let (a, b) = match (self, other) {
            (ExtElement::Map(a), ExtElement::Map(b)) => (a, b),
            _ => return ExtElement::Zero,
        };
        let out = a
            .iter()
            .filter_map(|p| {
                b.iter()
                    .find(|q| q.x == p.y)
                    .map(|q| Triple { x: p.x, s: mul(&p.s, &q.s), y: q.y })
            })
            .collect();
        Self::from_canonical(out)
    }

    /// Underlying partial injection with labels erased.
    pub fn restriction(&self, lambda: usize) -> PartialInjection {
        PartialInjection::from_sorted_unchecked(lambda, self.triples().iter().map(|t| (t.x, t.y)).collect())
    }

    pub fn map_labels<M: Clone>(&self, f: impl Fn(&L) -> M) -> ExtElement<M> {
        match self {
            ExtElement::Zero => ExtElement::Zero,
            ExtElement::Map(t) => ExtElement::Map(t.iter().map(|t| Triple { x: t.x, s: f(&t.s), y: t.y }).collect()),
        }
    }
}

impl ExtElement<usize> {
    /// Three-row display with base element names.
    pub fn render(&self, base: &FiniteSemigroup) -> String {
        self.map_labels(|&s| base.name(s)).to_string()
    }
}

/// `(x1 .. xk / s1 .. sk / y1 .. yk)`, or `0`.
impl<L: fmt::Display + Clone> fmt::Display for ExtElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtElement::Zero => f.write_str("0"),
            ExtElement::Map(t) => write!(
                f,
                "({} / {} / {})",
                t.iter().map(|t| t.x).join(" "),
                t.iter().map(|t| &t.s).join(" "),
                t.iter().map(|t| t.y).join(" ")
            ),
        }
    }
}

/// JSON form: `{"zero":true}` or `{"triples":[[x,s,y],...]}`.
impl<L: Serialize> Serialize for ExtElement<L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            ExtElement::Zero => map.serialize_entry("zero", &true)?,
            ExtElement::Map(t) => {
                let rows: Vec<(usize, &L, usize)> = t.iter().map(|t| (t.x, &t.s, t.y)).collect();
                map.serialize_entry("triples", &rows)?
            }
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de>"))]
struct ElementJson<L> {
    #[serde(default)]
    zero: Option<bool>,
    #[serde(default)]
    triples: Option<Vec<(usize, L, usize)>>,
}

impl<'de, L: Deserialize<'de> + Clone> Deserialize<'de> for ExtElement<L> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::<L>::deserialize(deserializer)?;
        match (raw.zero, raw.triples) {
            (Some(true), None) => Ok(ExtElement::Zero),
            (None, Some(t)) if !t.is_empty() => ExtElement::from_triples(t).map_err(de::Error::custom),
            _ => Err(de::Error::custom("expected {\"zero\":true} or a nonempty \"triples\" list")),
        }
    }
}
