use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::classes::ConjugacyClassSet;
use super::table::{Elem, ElementTable, Span};
use crate::error::{Error, Result};

/// A normal subgroup, stored as the sorted indices of its elements in the
/// parent's [`ElementTable`] together with a small generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    members: FixedBitSet,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl NormalSubgroup {
    pub(crate) fn from_span(span: Span) -> Self {
        let Span {
            members,
            mut elements,
            generators,
        } = span;
        elements.sort_unstable();
        NormalSubgroup {
            members,
            elements,
            generators,
        }
    }

    /// Builds the subgroup with exactly the given members, choosing a greedy
    /// generating set (elements of large order first).
    pub(crate) fn from_members(table: &ElementTable, members: &FixedBitSet) -> Self {
        let mut candidates: Vec<Elem> = members.ones().map(|x| x as Elem).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(table.order_of(x)), x));
        let mut span = table.span(std::iter::empty());
        for c in candidates {
            if span.elements.len() == members.count_ones(..) {
                break;
            }
            span.extend(table, c);
        }
        NormalSubgroup::from_span(span)
    }

    pub fn trivial(table: &ElementTable) -> Self {
        NormalSubgroup::from_span(table.span(std::iter::empty()))
    }

    pub fn whole(table: &ElementTable) -> Self {
        NormalSubgroup::from_span(table.span(table.generators().iter().copied()))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Canonical encoding: sorted element indices in the parent group.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(g as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &NormalSubgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &NormalSubgroup, table: &ElementTable) -> NormalSubgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        NormalSubgroup::from_members(table, &m)
    }

    /// The product `self · other`, generated by both generating sets.
    pub fn join(&self, other: &NormalSubgroup, table: &ElementTable) -> NormalSubgroup {
        let mut span = Span {
            members: self.members.clone(),
            elements: self.elements.clone(),
            generators: self.generators.clone(),
        };
        for &g in &other.generators {
            span.extend(table, g);
        }
        NormalSubgroup::from_span(span)
    }

    /// Closed under multiplication and under conjugation by the parent's
    /// generators.
    pub fn is_normal_in(&self, table: &ElementTable) -> bool {
        let closed = self.generators.iter().all(|&a| {
            self.elements
                .iter()
                .all(|&b| self.contains(table.mul(b, a)))
        });
        closed
            && self.generators.iter().all(|&a| {
                table
                    .generators()
                    .iter()
                    .all(|&x| self.contains(table.conj(a, x)))
            })
    }
}

/// Smallest normal subgroup containing `seeds`.
pub fn normal_closure(table: &ElementTable, seeds: &[Elem]) -> NormalSubgroup {
    let mut span = table.span(seeds.iter().copied());
    loop {
        let mut grew = false;
        let gens = span.generators.clone();
        for &w in &gens {
            for &x in table.generators() {
                grew |= span.extend(table, table.conj(w, x));
            }
        }
        if !grew {
            break;
        }
    }
    NormalSubgroup::from_span(span)
}

/// Every normal subgroup, as the join-closure of the normal closures of the
/// conjugacy classes. Sorted by order, then by element encoding.
pub(crate) fn all_normal_subgroups(
    table: &ElementTable,
    classes: &ConjugacyClassSet,
    limit: usize,
) -> Result<Vec<NormalSubgroup>> {
    let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut found: Vec<NormalSubgroup> = Vec::new();
    let mut push = |n: NormalSubgroup, found: &mut Vec<NormalSubgroup>| {
        if !seen.contains_key(n.elements()) {
            seen.insert(n.elements().to_vec(), found.len());
            found.push(n);
        }
    };
    push(NormalSubgroup::trivial(table), &mut found);

    // conjugacy classes are conjugation-invariant, so the subgroup they
    // generate is already normal
    let mut closures: Vec<NormalSubgroup> = Vec::new();
    for c in 1..classes.len() {
        let n = NormalSubgroup::from_span(table.span(classes.members(c).iter().copied()));
        if !closures.iter().any(|m| m.elements() == n.elements()) {
            closures.push(n);
        }
    }
    for n in &closures {
        push(n.clone(), &mut found);
    }

    let mut i = 0;
    while i < found.len() {
        for base in &closures {
            if base.is_subgroup_of(&found[i]) || found[i].is_subgroup_of(base) {
                continue;
            }
            let joined = found[i].join(base, table);
            push(joined, &mut found);
        }
        if found.len() > limit {
            return Err(Error::LimitExceeded(format!(
                "more than {limit} normal subgroups"
            )));
        }
        i += 1;
    }

    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(found)
}
