//! Binary polyhedral quotients, their common core, and disjoint families of
//! quotients onto the seven groups.

use serde::{Deserialize, Serialize};

use crate::catalog::{recognize_binary_polyhedral, BinaryPolyhedralId};
use crate::error::{Error, Result};
use crate::permgroup::{NormalSubgroup, PermutationGroup};
use crate::repclass::h_multiplicity;

#[derive(Clone, Debug)]
pub struct BpQuotient {
    pub kernel: NormalSubgroup,
    pub id: BinaryPolyhedralId,
    pub in_star: bool,
}

/// Would `G/N` have exactly one involution? Counted on `G`: the cosets `xN`
/// with `x ∉ N` and `x² ∈ N`.
fn quotient_has_unique_involution(g: &PermutationGroup, n: &NormalSubgroup) -> Result<bool> {
    let t = g.elements()?;
    let count = (0..t.len() as u32)
        .filter(|&x| !n.contains(x) && n.contains(t.mul(x, x)))
        .count();
    Ok(count == n.order())
}

/// Every normal `N` with `G/N` binary polyhedral, in normal-subgroup order.
pub fn binary_polyhedral_quotients(g: &PermutationGroup) -> Result<Vec<BpQuotient>> {
    if g.is_abelian()? {
        return Ok(Vec::new());
    }
    let order = g.order()?;
    let mut out = Vec::new();
    for n in g.normal_subgroups()? {
        let q = order / n.order();
        if q < 8 || q % 4 != 0 || !quotient_has_unique_involution(g, n)? {
            continue;
        }
        if let Some(id) = recognize_binary_polyhedral(&g.quotient(n)?)? {
            out.push(BpQuotient {
                kernel: n.clone(),
                id,
                in_star: id.is_star(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BpCore {
    pub core: NormalSubgroup,
    pub quotient: PermutationGroup,
    pub m_h: usize,
}

/// Intersection of all binary polyhedral kernels and the quotient by it.
/// The quotient carries every quaternionic character of `G`, so its `m_H`
/// must equal that of `G`; a mismatch is reported as an internal error.
pub fn bp_core(g: &PermutationGroup, quotients: &[BpQuotient]) -> Result<BpCore> {
    let first = quotients.first().ok_or(Error::NoBpQuotients)?;
    let table = g.elements()?;
    let core = quotients[1..].iter().fold(first.kernel.clone(), |acc, q| {
        acc.intersection(&q.kernel, table)
    });
    let quotient = g.quotient(&core)?;
    let m_h = h_multiplicity(&quotient)?;
    let m_g = h_multiplicity(g)?;
    if m_h != m_g {
        return Err(Error::internal(format!(
            "m_H of the core quotient is {m_h} but m_H(G) = {m_g}"
        )));
    }
    Ok(BpCore {
        core,
        quotient,
        m_h,
    })
}

/// A largest family of quotients onto the seven groups with pairwise
/// incomparable kernels and trivial total intersection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QnWitness {
    pub n: usize,
    /// Indices into the quotient list.
    pub members: Vec<usize>,
}

/// Depth-first search over antichains of star kernels; a branch is dropped
/// once it cannot beat the best family found.
pub fn qn_max(g: &PermutationGroup, quotients: &[BpQuotient]) -> Result<QnWitness> {
    let table = g.elements()?;
    let star: Vec<usize> = (0..quotients.len())
        .filter(|&i| quotients[i].in_star)
        .collect();
    let mut best = QnWitness::default();
    let mut chosen = Vec::new();
    let whole = NormalSubgroup::whole(table);
    search(g, quotients, &star, 0, &whole, &mut chosen, &mut best)?;
    Ok(best)
}

fn search(
    g: &PermutationGroup,
    quotients: &[BpQuotient],
    star: &[usize],
    from: usize,
    running: &NormalSubgroup,
    chosen: &mut Vec<usize>,
    best: &mut QnWitness,
) -> Result<()> {
    if running.is_trivial() && chosen.len() > best.n {
        *best = QnWitness {
            n: chosen.len(),
            members: chosen.clone(),
        };
    }
    if chosen.len() + (star.len() - from) <= best.n {
        return Ok(());
    }
    let table = g.elements()?;
    for pos in from..star.len() {
        let i = star[pos];
        let k = &quotients[i].kernel;
        let incomparable = chosen.iter().all(|&j| {
            let other = &quotients[j].kernel;
            !k.is_subgroup_of(other) && !other.is_subgroup_of(k)
        });
        if !incomparable {
            continue;
        }
        chosen.push(i);
        let next = running.intersection(k, table);
        search(g, quotients, star, pos + 1, &next, chosen, best)?;
        chosen.pop();
    }
    Ok(())
}
