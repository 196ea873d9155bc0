use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{lcm, Permutation};

/// Index of an element in an [`ElementTable`].
pub type Elem = u32;

/// Full enumeration of a group with its multiplication table.
///
/// Elements are sorted lexicographically by image array, so the identity is
/// element 0 and the indexing is canonical for a fixed permutation model.
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    generators: Vec<Elem>,
    exponent: u64,
}

impl ElementTable {
    pub(crate) fn build(
        degree: usize,
        generators: &[Permutation],
        expected_order: usize,
    ) -> Result<Self> {
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::with_capacity(expected_order);
        seen.insert(identity.clone());
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= expected_order {
                        return Err(Error::internal(format!(
                            "enumeration exceeded the stabilizer-chain order {expected_order}"
                        )));
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        drop(seen);
        if queue.len() != expected_order {
            return Err(Error::internal(format!(
                "enumerated {} elements but the stabilizer chain gives {expected_order}",
                queue.len()
            )));
        }
        let mut elements = queue;
        elements.sort_unstable();
        let n = elements.len();
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();

        let gen_idx: Vec<Elem> = generators.iter().map(|g| index[g]).collect();
        // right multiplication by generators
        let right: Vec<Vec<Elem>> = elements
            .iter()
            .map(|x| generators.iter().map(|g| index[&x.compose(g)]).collect())
            .collect();

        // BFS spanning tree: element j = parent[j] * generators[via[j]]
        let mut parent = vec![Elem::MAX; n];
        let mut via = vec![0usize; n];
        let mut bfs = Vec::with_capacity(n);
        let mut visited = FixedBitSet::with_capacity(n);
        visited.insert(0);
        bfs.push(0 as Elem);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (k, &y) in right[x as usize].iter().enumerate() {
                if !visited.contains(y as usize) {
                    visited.insert(y as usize);
                    parent[y as usize] = x;
                    via[y as usize] = k;
                    bfs.push(y);
                }
            }
        }

        let mut mul = vec![0 as Elem; n * n];
        for i in 0..n {
            let row = i * n;
            mul[row] = i as Elem;
            for &j in &bfs[1..] {
                let j = j as usize;
                let prev = mul[row + parent[j] as usize];
                mul[row + j] = right[prev as usize][via[j]];
            }
        }

        let mut inv = vec![0 as Elem; n];
        for i in 0..n {
            let row = &mul[i * n..(i + 1) * n];
            let j = row.iter().position(|&x| x == 0).unwrap();
            inv[i] = j as Elem;
        }

        let mut orders = vec![0u32; n];
        let mut exponent = 1u64;
        for i in 0..n {
            let mut k = 1u32;
            let mut x = i as Elem;
            while x != 0 {
                x = mul[x as usize * n + i];
                k += 1;
            }
            orders[i] = if i == 0 { 1 } else { k };
            exponent = lcm(exponent, orders[i] as u64);
        }

        Ok(ElementTable {
            elements,
            index,
            mul,
            inv,
            orders,
            generators: gen_idx,
            exponent,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `x⁻¹ g x`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.orders[a as usize] as u64;
        let mut x: Elem = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    #[inline]
    pub fn order_of(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn element(&self, a: Elem) -> &Permutation {
        &self.elements[a as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    /// Indices of the group's generators.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Subgroup generated by `gens`, as a membership set and element list.
    pub fn generate(&self, gens: &[Elem]) -> (FixedBitSet, Vec<Elem>) {
        let n = self.len();
        let mut members = FixedBitSet::with_capacity(n);
        members.insert(0);
        let mut list = vec![0 as Elem];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y as usize) {
                    members.insert(y as usize);
                    list.push(y);
                }
            }
        }
        (members, list)
    }

    /// Greedy generating set for the subgroup generated by `candidates`:
    /// each candidate is added only if it is not already in the span.
    pub fn span(&self, candidates: impl IntoIterator<Item = Elem>) -> Span {
        let mut span = Span {
            members: {
                let mut m = FixedBitSet::with_capacity(self.len());
                m.insert(0);
                m
            },
            elements: vec![0],
            generators: Vec::new(),
        };
        for c in candidates {
            span.extend(self, c);
        }
        span
    }
}

/// A subgroup under construction: membership, elements and the generators
/// added so far.
#[derive(Clone)]
pub struct Span {
    pub members: FixedBitSet,
    pub elements: Vec<Elem>,
    pub generators: Vec<Elem>,
}

impl Span {
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    /// Adds `x` to the span; returns whether the subgroup grew.
    pub fn extend(&mut self, table: &ElementTable, x: Elem) -> bool {
        if self.contains(x) {
            return false;
        }
        self.generators.push(x);
        // the old subgroup is closed under the old generators, so it is
        // enough to close the current element list under all generators
        let mut head = 0;
        while head < self.elements.len() {
            let a = self.elements[head];
            head += 1;
            for &g in &self.generators {
                let y = table.mul(a, g);
                if !self.members.contains(y as usize) {
                    self.members.insert(y as usize);
                    self.elements.push(y);
                }
            }
        }
        true
    }
}
