//! Real representation type of a group: Frobenius–Schur indicators, the
//! simple components of `R[G]`, the quaternionic multiplicity `m_H`, the
//! Eichler condition and the Whitehead rank `r_R − r_Q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chartab::{self, CharacterTable, MAX_TABLE_CLASSES};
use crate::error::{Error, Result};
use crate::permgroup::PermutationGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algebra {
    R,
    C,
    H,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::R => "R",
            Algebra::C => "C",
            Algebra::H => "H",
        })
    }
}

/// A simple component `M_size(algebra)` of the real group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub algebra: Algebra,
    pub size: u64,
}

impl Component {
    /// Dimension over the reals.
    pub fn real_dimension(&self) -> u64 {
        let d = match self.algebra {
            Algebra::R => 1,
            Algebra::C => 2,
            Algebra::H => 4,
        };
        d * self.size * self.size
    }
}

/// Wedderburn decomposition of `R[G]`, components sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSignature {
    pub components: Vec<Component>,
}

impl RealSignature {
    /// Number of components `M_size(algebra)`.
    pub fn count(&self, algebra: Algebra, size: u64) -> usize {
        self.components
            .iter()
            .filter(|c| c.algebra == algebra && c.size == size)
            .count()
    }

    pub fn total(&self, algebra: Algebra) -> usize {
        self.components
            .iter()
            .filter(|c| c.algebra == algebra)
            .count()
    }

    pub fn m_r(&self) -> usize {
        self.count(Algebra::R, 1)
    }

    pub fn m_c(&self) -> usize {
        self.count(Algebra::C, 1)
    }

    /// Number of copies of `H` itself.
    pub fn m_h(&self) -> usize {
        self.count(Algebra::H, 1)
    }

    pub fn real_dimension(&self) -> u64 {
        self.components.iter().map(Component::real_dimension).sum()
    }
}

impl fmt::Display for RealSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let run = self.components[i..].iter().take_while(|&&d| d == c).count();
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{run}·")?;
            }
            if c.size == 1 {
                write!(f, "{}", c.algebra)?;
            } else {
                write!(f, "M{}({})", c.size, c.algebra)?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalityCounts {
    pub r_real: usize,
    pub r_rational: usize,
    pub whitehead_rank: usize,
}

/// Frobenius–Schur indicators recomputed exactly in the cyclotomic field,
/// `ν(χ) = (1/|G|) Σ_j |C_j| χ(g_j²)`, and checked against the modular
/// indicators stored in the table.
pub fn frobenius_schur(t: &CharacterTable) -> Result<Vec<i8>> {
    let field = t.field();
    let n = t.group_order as i64;
    let mut out = Vec::with_capacity(t.class_count());
    for (r, row) in t.values.iter().enumerate() {
        let mut acc = vec![0i64; t.exponent as usize];
        for (c, &h) in t.class_sizes.iter().enumerate() {
            row[t.square_classes[c]].accumulate(h as i64, &mut acc);
        }
        let nu = match field.as_integer(&acc) {
            Some(s) if s % n == 0 && (-1..=1).contains(&(s / n)) => (s / n) as i8,
            _ => {
                return Err(Error::internal(format!(
                    "Frobenius-Schur sum of character {r} is not in {{-|G|, 0, |G|}}"
                )))
            }
        };
        if nu != t.indicators[r] {
            return Err(Error::internal(format!(
                "exact and modular Frobenius-Schur indicators disagree for character {r}"
            )));
        }
        if (nu == 0) == t.is_real_row(r) {
            return Err(Error::internal(format!(
                "indicator of character {r} contradicts its reality"
            )));
        }
        out.push(nu);
    }
    Ok(out)
}

/// Signature from a character table.
pub fn real_signature_of_table(t: &CharacterTable) -> Result<RealSignature> {
    let nu = frobenius_schur(t)?;
    let mut components = Vec::new();
    let mut complex = 0usize;
    for (r, &v) in nu.iter().enumerate() {
        let d = t.degrees[r];
        match v {
            1 => components.push(Component {
                algebra: Algebra::R,
                size: d,
            }),
            -1 => {
                if d % 2 == 1 {
                    return Err(Error::internal(format!(
                        "quaternionic character {r} has odd degree {d}"
                    )));
                }
                components.push(Component {
                    algebra: Algebra::H,
                    size: d / 2,
                })
            }
            _ => {
                // one component per conjugate pair, counted at the first row
                complex += 1;
                let partner = t
                    .conjugate_row(r)
                    .ok_or_else(|| Error::internal("complex character without a conjugate row"))?;
                if partner > r {
                    components.push(Component {
                        algebra: Algebra::C,
                        size: d,
                    });
                }
            }
        }
    }
    if complex % 2 == 1 {
        return Err(Error::internal("odd number of complex characters"));
    }
    components.sort();
    Ok(RealSignature { components })
}

/// Abelian groups with too many classes for a table: the real characters
/// are the homomorphisms to `{±1}`, as many as there are elements with
/// `g² = 1`, and all the others pair up.
fn abelian_signature(g: &PermutationGroup) -> Result<RealSignature> {
    let n = g.order()?;
    let real = g.involution_count()? + 1;
    let mut components = vec![
        Component {
            algebra: Algebra::R,
            size: 1
        };
        real
    ];
    components.extend(vec![
        Component {
            algebra: Algebra::C,
            size: 1
        };
        (n - real) / 2
    ]);
    Ok(RealSignature { components })
}

fn table_if_feasible(g: &PermutationGroup) -> Result<Option<std::sync::Arc<CharacterTable>>> {
    if g.class_count()? > MAX_TABLE_CLASSES && g.is_abelian()? {
        return Ok(None);
    }
    chartab::character_table(g).map(Some)
}

pub fn real_signature(g: &PermutationGroup) -> Result<RealSignature> {
    match table_if_feasible(g)? {
        Some(t) => real_signature_of_table(&t),
        None => abelian_signature(g),
    }
}

/// `m_H(G)`: the number of degree-2 characters with indicator −1.
pub fn h_multiplicity(g: &PermutationGroup) -> Result<usize> {
    Ok(real_signature(g)?.m_h())
}

/// True iff `R[G]` has no component `H`.
pub fn eichler_condition(g: &PermutationGroup) -> Result<bool> {
    Ok(h_multiplicity(g)? == 0)
}

pub fn rationality_counts(g: &PermutationGroup) -> Result<RationalityCounts> {
    let r_real = real_signature(g)?.components.len();
    let r_rational = g.conjugacy_classes()?.rational_classes(g.elements()?).len();
    if r_rational > r_real {
        return Err(Error::internal(format!(
            "{r_rational} rational representations but only {r_real} real ones"
        )));
    }
    Ok(RationalityCounts {
        r_real,
        r_rational,
        whitehead_rank: r_real - r_rational,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermutationGroup {
        let gens = gens
            .iter()
            .map(|g| {
                let cycles: Vec<Vec<usize>> = g
                    .iter()
                    .map(|c| c.iter().map(|x| x - 1).collect())
                    .collect();
                Permutation::from_cycles(n, &cycles).unwrap()
            })
            .collect();
        PermutationGroup::new(n, gens).unwrap()
    }

    fn cyclic(n: usize) -> PermutationGroup {
        let c: Vec<usize> = (1..=n).collect();
        group(n, &[&[&c]])
    }

    fn q8() -> PermutationGroup {
        group(
            8,
            &[
                &[&[1, 2, 3, 4], &[5, 6, 7, 8]],
                &[&[1, 5, 3, 7], &[2, 8, 4, 6]],
            ],
        )
    }

    fn sig(items: &[(Algebra, u64, usize)]) -> RealSignature {
        let mut components = Vec::new();
        for &(algebra, size, count) in items {
            components.extend(vec![Component { algebra, size }; count]);
        }
        components.sort();
        RealSignature { components }
    }

    #[test]
    fn signatures() {
        use Algebra::*;
        assert_eq!(
            real_signature(&cyclic(4)).unwrap(),
            sig(&[(R, 1, 2), (C, 1, 1)])
        );
        assert_eq!(real_signature(&q8()).unwrap(), sig(&[(R, 1, 4), (H, 1, 1)]));
        let s3 = group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        assert_eq!(real_signature(&s3).unwrap(), sig(&[(R, 1, 2), (R, 2, 1)]));
        for g in [cyclic(4), q8(), s3, cyclic(7)] {
            let s = real_signature(&g).unwrap();
            assert_eq!(s.real_dimension(), g.order().unwrap() as u64);
        }
    }

    #[test]
    fn indicators_and_eichler() {
        let fs = frobenius_schur(&chartab::character_table(&cyclic(3)).unwrap()).unwrap();
        assert_eq!(fs, vec![1, 0, 0]);
        assert!(!eichler_condition(&q8()).unwrap());
        assert!(eichler_condition(&cyclic(6)).unwrap());
        assert_eq!(h_multiplicity(&cyclic(6)).unwrap(), 0);
    }

    #[test]
    fn rationality() {
        let q = rationality_counts(&q8()).unwrap();
        assert_eq!((q.r_real, q.r_rational, q.whitehead_rank), (5, 5, 0));
        let c = rationality_counts(&cyclic(5)).unwrap();
        assert_eq!((c.r_real, c.r_rational, c.whitehead_rank), (3, 2, 1));
    }

    #[test]
    fn large_abelian_without_table() {
        let g = cyclic(MAX_TABLE_CLASSES + 10);
        let s = real_signature(&g).unwrap();
        assert_eq!(s.real_dimension(), g.order().unwrap() as u64);
        assert_eq!(s.m_h(), 0);
        // 210 = 2·3·5·7 has 16 divisors, one rational class each
        assert_eq!(rationality_counts(&g).unwrap().r_rational, 16);
    }

    #[test]
    fn display() {
        let s = real_signature(&q8()).unwrap();
        assert_eq!(s.to_string(), "4·R + H");
    }
}
