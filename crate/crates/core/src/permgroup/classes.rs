use super::table::{Elem, ElementTable};
use crate::perm::{gcd, Permutation};

/// Conjugacy classes of a group, indexed so that class 0 is the identity.
///
/// Classes are ordered by their smallest element index; the representative
/// of each class is that smallest element.
#[derive(Clone, Debug)]
pub struct ConjugacyClassSet {
    representatives: Vec<Elem>,
    members: Vec<Vec<Elem>>,
    class_of: Vec<usize>,
    element_orders: Vec<u32>,
    inverse_class: Vec<usize>,
    exponent: u64,
    square_class: Vec<usize>,
}

impl ConjugacyClassSet {
    pub(crate) fn compute(table: &ElementTable) -> Self {
        let n = table.len();
        let mut class_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        for g in 0..n as Elem {
            if class_of[g as usize] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(g);
            class_of[g as usize] = c;
            let mut orbit = vec![g];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &s in table.generators() {
                    let y = table.conj(x, s);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = c;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let element_orders: Vec<u32> = representatives.iter().map(|&r| table.order_of(r)).collect();
        let inverse_class: Vec<usize> = representatives
            .iter()
            .map(|&r| class_of[table.inv(r) as usize])
            .collect();
        let exponent = table.exponent();
        let square_class = representatives
            .iter()
            .map(|&r| class_of[table.mul(r, r) as usize])
            .collect();
        ConjugacyClassSet {
            representatives,
            members,
            class_of,
            element_orders,
            inverse_class,
            exponent,
            square_class,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn representative(&self, c: usize) -> Elem {
        self.representatives[c]
    }

    pub fn representative_perm<'a>(&self, table: &'a ElementTable, c: usize) -> &'a Permutation {
        table.element(self.representatives[c])
    }

    pub fn members(&self, c: usize) -> &[Elem] {
        &self.members[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, g: Elem) -> usize {
        self.class_of[g as usize]
    }

    /// Order of the elements in class `c`.
    pub fn element_order(&self, c: usize) -> u32 {
        self.element_orders[c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power(&self, table: &ElementTable, c: usize, k: u64) -> usize {
        let o = self.element_orders[c] as u64;
        self.class_of[table.pow(self.representatives[c], k % o) as usize]
    }

    pub fn square_class(&self, c: usize) -> usize {
        self.square_class[c]
    }

    /// Rational classes: orbits of the classes under `g ↦ g^k` for all `k`
    /// coprime to the exponent. Each orbit is sorted and the orbits are
    /// ordered by their first class.
    pub fn rational_classes(&self, table: &ElementTable) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for c in 0..k {
            if seen[c] {
                continue;
            }
            // g^s with gcd(s, o) = 1 covers every coprime power of g
            let o = self.element_orders[c] as u64;
            let mut orbit: Vec<usize> = self
                .power_classes(table, c)
                .into_iter()
                .enumerate()
                .filter(|&(s, _)| gcd(s as u64, o) == 1)
                .map(|(_, cls)| cls)
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Classes of `rep(c)^s` for `s = 0, …, order-1`.
    pub fn power_classes(&self, table: &ElementTable, c: usize) -> Vec<usize> {
        let g = self.representatives[c];
        let o = self.element_orders[c] as usize;
        let mut out = Vec::with_capacity(o);
        let mut x: Elem = 0;
        for _ in 0..o {
            out.push(self.class_of[x as usize]);
            x = table.mul(x, g);
        }
        out
    }
}
