use super::element::Element;
use super::handle::GroupHandle;
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// Default cap on the order of groups that are enumerated and indexed.
pub const DEFAULT_INDEX_CAP: u128 = 1_000_000;

/// A group enumerated into a list; elements are referred to by position.
#[derive(Clone, Debug)]
pub struct IndexedGroup {
    handle: GroupHandle,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    inverse: Vec<usize>,
    identity: usize,
}

/// Conjugacy classes ordered by their smallest member.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }
    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0]
    }
}

impl IndexedGroup {
    pub fn new(handle: GroupHandle, cap: u128) -> Result<IndexedGroup> {
        let elements = handle.elements(cap)?;
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let inverse = elements.iter().map(|e| index[&handle.inv_unchecked(e)]).collect();
        let identity = index[&handle.identity()];
        Ok(IndexedGroup { handle, elements, index, inverse, identity })
    }

    pub fn handle(&self) -> &GroupHandle {
        &self.handle
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Position of an element, or `GroupMismatch`.
    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::GroupMismatch(format!("{} does not contain {e}", self.handle.name())))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.handle.mul_unchecked(&self.elements[a], &self.elements[b])]
    }

    /// g^{-1} h g.
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse[g], h), g)
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut members = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut orbit: Vec<usize> = Vec::new();
            for g in 0..n {
                let y = self.conj(x, g);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        ConjugacyClasses { class_of, members }
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = HashSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut members: Vec<usize> = seen.into_iter().collect();
        members.sort_unstable();
        Subgroup { members }
    }

    /// Subgroup from an explicit element list; fails if the list is not closed.
    /// An empty list denotes the trivial subgroup.
    pub fn subgroup_from_elements(&self, elems: &[Element]) -> Result<Subgroup> {
        let mut idx: Vec<usize> = elems.iter().map(|e| self.index_of(e)).collect::<Result<_>>()?;
        if idx.is_empty() {
            idx.push(self.identity);
        }
        idx.sort_unstable();
        idx.dedup();
        let set: HashSet<usize> = idx.iter().copied().collect();
        for &a in &idx {
            for &b in &idx {
                let c = self.mul(a, b);
                if !set.contains(&c) {
                    return Err(Error::NotClosed(format!(
                        "{} * {} = {} is outside the set",
                        self.elements[a], self.elements[b], self.elements[c]
                    )));
                }
            }
        }
        Ok(Subgroup { members: idx })
    }

    /// A small generating set found greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: HashSet<usize> = HashSet::from([self.identity]);
        for x in 0..self.order() {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens).members.into_iter().collect();
                if span.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }
}

/// Subgroup of an [`IndexedGroup`], stored as sorted element positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(g: &IndexedGroup) -> Subgroup {
        Subgroup { members: vec![g.identity()] }
    }

    pub fn whole(g: &IndexedGroup) -> Subgroup {
        Subgroup { members: (0..g.order()).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// H^g = g^{-1} H g.
    pub fn conjugate(&self, g: usize, group: &IndexedGroup) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| group.conj(h, g)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn non_identity<'a>(&'a self, group: &'a IndexedGroup) -> impl Iterator<Item = usize> + 'a {
        self.members.iter().copied().filter(move |&h| h != group.identity())
    }
}
