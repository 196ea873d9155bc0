//! Finite groups given by permutation generators.
//!
//! All structural data (stabilizer chain, element table, conjugacy classes,
//! normal subgroups, character table) is computed lazily and cached; each
//! cache is filled at most once, so a shared group can be read from several
//! threads.

mod chain;
mod classes;
mod iso;
mod normal;
mod table;

use std::sync::Arc;

use once_cell::sync::OnceCell;

pub use chain::StabChain;
pub use classes::ConjugacyClassSet;
pub use iso::{find_isomorphism, Fingerprint};
pub use normal::{normal_closure, NormalSubgroup};
pub use table::{Elem, ElementTable, Span};

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on group orders for element enumeration.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Bound on the number of normal subgroups enumerated for one group.
pub const MAX_NORMAL_SUBGROUPS: usize = 20_000;

/// Derived subgroup with the abelianization data that depends on it.
#[derive(Clone, Debug)]
pub struct DerivedData {
    pub derived: NormalSubgroup,
    pub abelianization_order: usize,
    pub has_index_two_normal: bool,
}

pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
    known_order: Option<u128>,
    chain: OnceCell<Arc<StabChain>>,
    table: OnceCell<Arc<ElementTable>>,
    classes: OnceCell<Arc<ConjugacyClassSet>>,
    normals: OnceCell<Arc<Vec<NormalSubgroup>>>,
    derived: OnceCell<Arc<DerivedData>>,
    center: OnceCell<Arc<NormalSubgroup>>,
    character_table: OnceCell<Arc<CharacterTable>>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            cap: self.cap,
            known_order: self.known_order,
            chain: self.chain.clone(),
            table: self.table.clone(),
            classes: self.classes.clone(),
            normals: self.normals.clone(),
            derived: self.derived.clone(),
            center: self.center.clone(),
            character_table: self.character_table.clone(),
        }
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermutationGroup {
    /// Group generated by `generators` acting on `degree` points. Identity
    /// generators are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter(
                "permutation groups need degree at least 1".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        Ok(PermutationGroup {
            degree,
            generators,
            cap: DEFAULT_ORDER_CAP,
            known_order: None,
            chain: OnceCell::new(),
            table: OnceCell::new(),
            classes: OnceCell::new(),
            normals: OnceCell::new(),
            derived: OnceCell::new(),
            center: OnceCell::new(),
            character_table: OnceCell::new(),
        })
    }

    pub fn trivial() -> Self {
        PermutationGroup::new(1, Vec::new()).unwrap()
    }

    /// Records an order known from the construction, which skips the
    /// stabilizer chain. Enumeration still verifies it.
    pub(crate) fn with_known_order(mut self, order: u128) -> Self {
        self.known_order = Some(order);
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Stabilizer chain; fails with `CapExceeded` once the order provably
    /// exceeds the cap.
    pub fn stabilizer_chain(&self) -> Result<&StabChain> {
        self.chain
            .get_or_try_init(|| {
                StabChain::build(self.degree, &self.generators, self.cap).map(Arc::new)
            })
            .map(|c| c.as_ref())
    }

    /// Group order. Errors with `CapExceeded` above the configured cap.
    pub fn order(&self) -> Result<usize> {
        let order = match self.known_order {
            Some(o) => o,
            None => self.stabilizer_chain()?.order(),
        };
        if order > self.cap as u128 {
            return Err(Error::CapExceeded {
                order,
                cap: self.cap,
            });
        }
        Ok(order as usize)
    }

    pub fn elements(&self) -> Result<&ElementTable> {
        self.table
            .get_or_try_init(|| {
                let order = self.order()?;
                ElementTable::build(self.degree, &self.generators, order).map(Arc::new)
            })
            .map(|t| t.as_ref())
    }

    pub fn conjugacy_classes(&self) -> Result<&ConjugacyClassSet> {
        let table = self.elements()?;
        Ok(self
            .classes
            .get_or_init(|| Arc::new(ConjugacyClassSet::compute(table)))
            .as_ref())
    }

    pub fn class_count(&self) -> Result<usize> {
        Ok(self.conjugacy_classes()?.len())
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self.elements()?.exponent())
    }

    /// All normal subgroups, sorted by order (trivial first, whole group
    /// last).
    pub fn normal_subgroups(&self) -> Result<&[NormalSubgroup]> {
        let table = self.elements()?;
        let classes = self.conjugacy_classes()?;
        Ok(self
            .normals
            .get_or_try_init(|| {
                normal::all_normal_subgroups(table, classes, MAX_NORMAL_SUBGROUPS).map(Arc::new)
            })?
            .as_slice())
    }

    pub fn trivial_subgroup(&self) -> Result<NormalSubgroup> {
        Ok(NormalSubgroup::trivial(self.elements()?))
    }

    pub fn derived_data(&self) -> Result<&DerivedData> {
        let table = self.elements()?;
        Ok(self
            .derived
            .get_or_init(|| {
                let gens = table.generators();
                let mut seeds = Vec::new();
                for (i, &a) in gens.iter().enumerate() {
                    for &b in &gens[i + 1..] {
                        seeds.push(table.commutator(a, b));
                    }
                }
                let derived = normal_closure(table, &seeds);
                let abelianization_order = table.len() / derived.order();
                Arc::new(DerivedData {
                    derived,
                    abelianization_order,
                    has_index_two_normal: abelianization_order.is_multiple_of(2),
                })
            })
            .as_ref())
    }

    pub fn center(&self) -> Result<&NormalSubgroup> {
        let table = self.elements()?;
        Ok(self
            .center
            .get_or_init(|| {
                let members = (0..table.len() as Elem).filter(|&z| {
                    table
                        .generators()
                        .iter()
                        .all(|&g| table.mul(z, g) == table.mul(g, z))
                });
                Arc::new(NormalSubgroup::from_span(table.span(members)))
            })
            .as_ref())
    }

    pub fn is_abelian(&self) -> Result<bool> {
        Ok(self.center()?.order() == self.order()?)
    }

    /// Number of elements of order exactly 2.
    pub fn involution_count(&self) -> Result<usize> {
        Ok(self
            .elements()?
            .element_orders()
            .iter()
            .filter(|&&o| o == 2)
            .count())
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        let n = self.order()?;
        Ok(self
            .elements()?
            .element_orders()
            .iter()
            .any(|&o| o as usize == n))
    }

    /// `G/N` as the action of `G` on the cosets of `N` (the trivial
    /// subgroup gives `G` back in its own model).
    pub fn quotient(&self, n: &NormalSubgroup) -> Result<PermutationGroup> {
        let table = self.elements()?;
        if n.elements()
            .last()
            .is_some_and(|&x| x as usize >= table.len())
            || !n.is_normal_in(table)
        {
            return Err(Error::NotNormal);
        }
        if n.is_trivial() {
            return Ok(self.clone());
        }
        let size = table.len();
        let mut coset_of = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for g in 0..size as Elem {
            if coset_of[g as usize] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in n.elements() {
                coset_of[table.mul(g, h) as usize] = c;
            }
        }
        let m = reps.len();
        let mut gens = Vec::new();
        for &x in table.generators() {
            let images: Vec<u32> = reps
                .iter()
                .map(|&r| coset_of[table.mul(r, x) as usize] as u32)
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
        Ok(PermutationGroup::new(m.max(1), gens)?
            .with_known_order(m as u128)
            .with_cap(self.cap))
    }

    pub fn fingerprint(&self) -> Result<Fingerprint> {
        Fingerprint::of(self)
    }

    /// Decides whether the two groups are isomorphic.
    pub fn is_isomorphic(&self, other: &PermutationGroup) -> Result<bool> {
        Ok(find_isomorphism(self, other)?.is_some())
    }

    pub(crate) fn cached_character_table(&self) -> Option<&Arc<CharacterTable>> {
        self.character_table.get()
    }

    pub(crate) fn character_table_cell(&self) -> &OnceCell<Arc<CharacterTable>> {
        &self.character_table
    }
}

#[cfg(test)]
mod tests;
