//! Isomorphism testing: an invariant fingerprint as a pre-filter, then a
//! backtracking search over images of a generating set.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::table::{Elem, ElementTable};
use super::PermutationGroup;
use crate::error::Result;

/// Isomorphism invariants of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, class size) -> number of classes`.
    pub class_statistics: BTreeMap<(u32, usize), usize>,
    pub abelianization_order: usize,
    pub center_order: usize,
}

impl Fingerprint {
    pub fn of(g: &PermutationGroup) -> Result<Self> {
        let classes = g.conjugacy_classes()?;
        let mut class_statistics = BTreeMap::new();
        for c in 0..classes.len() {
            *class_statistics
                .entry((classes.element_order(c), classes.size(c)))
                .or_insert(0) += 1;
        }
        Ok(Fingerprint {
            order: g.order()?,
            class_statistics,
            abelianization_order: g.derived_data()?.abelianization_order,
            center_order: g.center()?.order(),
        })
    }
}

/// Returns an isomorphism `G → H` as the image index of every element of
/// `G`, or `None` if the groups are not isomorphic.
pub fn find_isomorphism(g: &PermutationGroup, h: &PermutationGroup) -> Result<Option<Vec<Elem>>> {
    if g.order()? != h.order()? {
        return Ok(None);
    }
    if Fingerprint::of(g)? != Fingerprint::of(h)? {
        return Ok(None);
    }
    let tg = g.elements()?;
    let th = h.elements()?;
    let cg = g.conjugacy_classes()?;
    let ch = h.conjugacy_classes()?;
    let label_g = |x: Elem| (tg.order_of(x), cg.size(cg.class_of(x)));
    let label_h = |x: Elem| (th.order_of(x), ch.size(ch.class_of(x)));

    // generating set of G, large element orders first
    let mut by_order: Vec<Elem> = (1..tg.len() as Elem).collect();
    by_order.sort_by_key(|&x| (Reverse(tg.order_of(x)), x));
    let mut span = tg.span(std::iter::empty());
    for x in by_order {
        if span.elements.len() == tg.len() {
            break;
        }
        span.extend(tg, x);
    }
    let gens = span.generators;
    if gens.is_empty() {
        return Ok(Some(vec![0]));
    }

    // candidate images; the first generator may be taken up to conjugacy in H
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let want = label_g(x);
            if i == 0 {
                ch.representatives()
                    .iter()
                    .copied()
                    .filter(|&y| label_h(y) == want)
                    .collect()
            } else {
                (0..th.len() as Elem)
                    .filter(|&y| label_h(y) == want)
                    .collect()
            }
        })
        .collect();

    let mut images = Vec::with_capacity(gens.len());
    Ok(search(tg, th, &gens, &candidates, &mut images))
}

fn search(
    tg: &ElementTable,
    th: &ElementTable,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
) -> Option<Vec<Elem>> {
    let depth = images.len();
    for &y in &candidates[depth] {
        images.push(y);
        if let Some(phi) = extend_partial(tg, th, &gens[..=depth], images) {
            // the generators span G, so a full assignment reaches every element
            if depth + 1 == gens.len() {
                return Some(phi);
            } else if let Some(found) = search(tg, th, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` to the subgroup the generators span.
/// Returns `None` unless the extension is a well-defined injective
/// homomorphism; unreached elements are left as `Elem::MAX`.
fn extend_partial(
    tg: &ElementTable,
    th: &ElementTable,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut phi = vec![Elem::MAX; tg.len()];
    let mut used = FixedBitSet::with_capacity(th.len());
    phi[0] = 0;
    used.insert(0);
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = phi[x as usize];
        for (&a, &b) in gens.iter().zip(images) {
            let y = tg.mul(x, a);
            let fy = th.mul(fx, b);
            match phi[y as usize] {
                Elem::MAX => {
                    if used.contains(fy as usize) {
                        return None;
                    }
                    used.insert(fy as usize);
                    phi[y as usize] = fy;
                    queue.push(y);
                }
                existing if existing != fy => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}
