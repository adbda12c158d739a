use super::perm::Perm;
use crate::algebra::MatrixFq;
use std::fmt;

/// Element of any group expressible by [`super::GroupHandle`].
///
/// Elements carry only their payload; membership is checked by the handle at
/// every checked operation, so mixing groups fails with `GroupMismatch`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Perm),
    Mat(MatrixFq),
    Pair(Box<Element>, Box<Element>),
    /// `((x, y), b)` in a wreath product with Z_2; `b = true` means swapped.
    Wreath(Box<Element>, Box<Element>, bool),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn wreath(x: Element, y: Element, b: bool) -> Element {
        Element::Wreath(Box::new(x), Box::new(y), b)
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_mat(&self) -> Option<&MatrixFq> {
        match self {
            Element::Mat(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_wreath(&self) -> Option<(&Element, &Element, bool)> {
        match self {
            Element::Wreath(x, y, b) => Some((x, y, *b)),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Mat(m) => write!(f, "{:?}", m.to_rows()),
            Element::Pair(a, b) => write!(f, "({a}, {b})"),
            Element::Wreath(x, y, b) => write!(f, "(({x}, {y}), {})", u8::from(*b)),
        }
    }
}
