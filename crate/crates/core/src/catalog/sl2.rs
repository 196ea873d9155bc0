//! `SL(2, q)` for `q ∈ {3, 5, 9}` acting on the nonzero row vectors of
//! `F_q²`, and the binary octahedral group inside `SL(2, 9)`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermutationGroup;

/// A small finite field given by addition and multiplication tables.
/// For `q = 9` the element `a + b·i` (with `i² = -1`) is encoded as `a + 3b`.
#[derive(Clone, Debug)]
struct Field {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl Field {
    fn new(q: usize) -> Result<Self> {
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = match q {
            3 | 5 => (
                (0..q)
                    .map(|a| (0..q).map(|b| ((a + b) % q) as u8).collect())
                    .collect(),
                (0..q)
                    .map(|a| (0..q).map(|b| (a * b % q) as u8).collect())
                    .collect(),
            ),
            9 => {
                let split = |x: usize| (x % 3, x / 3);
                let join = |a: usize, b: usize| (a % 3 + 3 * (b % 3)) as u8;
                (
                    (0..9)
                        .map(|x| {
                            (0..9)
                                .map(|y| {
                                    let ((a, b), (c, d)) = (split(x), split(y));
                                    join(a + c, b + d)
                                })
                                .collect()
                        })
                        .collect(),
                    (0..9)
                        .map(|x| {
                            (0..9)
                                .map(|y| {
                                    // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
                                    let ((a, b), (c, d)) = (split(x), split(y));
                                    join(a * c + 2 * b * d, a * d + b * c)
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "SL(2,{q}) is only available for q in {{3, 5, 9}}"
                )))
            }
        };
        Ok(Field { q, add, mul })
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    /// Elements of the prime subfield.
    fn is_prime_subfield(&self, a: u8) -> bool {
        self.q != 9 || a < 3
    }
}

/// 2×2 matrix `[[a, b], [c, d]]`, row-major.
type Matrix = [u8; 4];

fn mat_mul(f: &Field, x: &Matrix, y: &Matrix) -> Matrix {
    [
        f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
        f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
        f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
        f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
    ]
}

/// Inverse of a determinant-one matrix: `[[d, -b], [-c, a]]`.
fn mat_inv(f: &Field, x: &Matrix) -> Matrix {
    let neg = |a: u8| (0..f.q as u8).find(|&b| f.add(a, b) == 0).unwrap();
    [x[3], neg(x[1]), neg(x[2]), x[0]]
}

/// Elementary generators of `SL(2, q)`.
fn generators(q: usize) -> Vec<Matrix> {
    let mut gens = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    if q == 9 {
        // i is encoded as 3
        gens.push([1, 3, 0, 1]);
        gens.push([1, 0, 3, 1]);
    }
    gens
}

/// Nonzero row vectors in a fixed order and the right action `v ↦ vM` of a
/// matrix on them.
struct VectorAction {
    field: Field,
    vectors: Vec<(u8, u8)>,
    index: HashMap<(u8, u8), u32>,
}

impl VectorAction {
    fn new(field: Field) -> Self {
        let q = field.q as u8;
        let vectors: Vec<(u8, u8)> = (0..q)
            .flat_map(|x| (0..q).map(move |y| (x, y)))
            .filter(|&v| v != (0, 0))
            .collect();
        let index = vectors
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        VectorAction {
            field,
            vectors,
            index,
        }
    }

    fn permutation(&self, m: &Matrix) -> Permutation {
        let f = &self.field;
        let images = self
            .vectors
            .iter()
            .map(|&(x, y)| {
                let v = (
                    f.add(f.mul(x, m[0]), f.mul(y, m[2])),
                    f.add(f.mul(x, m[1]), f.mul(y, m[3])),
                );
                self.index[&v]
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrices permute vectors")
    }
}

fn sl2_order(q: u128) -> u128 {
    q * (q * q - 1)
}

/// `SL(2, q)` on the `q² − 1` nonzero vectors of `F_q²`.
pub fn sl2(q: usize) -> Result<PermutationGroup> {
    let action = VectorAction::new(Field::new(q)?);
    let gens = generators(q)
        .iter()
        .map(|m| action.permutation(m))
        .collect();
    let g = PermutationGroup::new(action.vectors.len(), gens)?;
    let expected = sl2_order(q as u128);
    let found = g.stabilizer_chain()?.order();
    if found != expected {
        return Err(Error::internal(format!(
            "SL(2,{q}) model has order {found}, expected {expected}"
        )));
    }
    Ok(g.with_known_order(expected))
}

/// All matrices of the group generated by `gens`.
fn closure(f: &Field, gens: &[Matrix]) -> Vec<Matrix> {
    let id: Matrix = [1, 0, 0, 1];
    let mut seen: HashSet<Matrix> = HashSet::from([id]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for g in gens {
            let y = mat_mul(f, &x, g);
            if seen.insert(y) {
                out.push(y);
            }
        }
    }
    out
}

/// The binary octahedral group as the normalizer in `SL(2, 9)` of the
/// subfield subgroup `SL(2, 3)`, acting on the 80 nonzero vectors of `F_9²`.
pub fn binary_octahedral() -> Result<PermutationGroup> {
    let field = Field::new(9)?;
    let all = closure(&field, &generators(9));
    if all.len() != 720 {
        return Err(Error::internal(format!(
            "SL(2,9) enumerated {} matrices",
            all.len()
        )));
    }
    // SL(2,3) is exactly the determinant-one matrices over F_3, so M
    // normalizes it iff both generators conjugate to F_3 matrices
    let small = generators(3);
    let normalizer: Vec<Matrix> = all
        .iter()
        .copied()
        .filter(|m| {
            let mi = mat_inv(&field, m);
            small.iter().all(|s| {
                let c = mat_mul(&field, &mat_mul(&field, &mi, s), m);
                c.iter().all(|&x| field.is_prime_subfield(x))
            })
        })
        .collect();
    if normalizer.len() != 48 {
        return Err(Error::internal(format!(
            "normalizer of SL(2,3) in SL(2,9) has order {}, expected 48",
            normalizer.len()
        )));
    }
    // greedy generating set
    let mut gens: Vec<Matrix> = Vec::new();
    let mut span: HashSet<Matrix> = HashSet::from([[1, 0, 0, 1]]);
    for m in &normalizer {
        if !span.contains(m) {
            gens.push(*m);
            span = closure(&field, &gens).into_iter().collect();
        }
    }
    let action = VectorAction::new(field);
    let perms = gens.iter().map(|m| action.permutation(m)).collect();
    let g = PermutationGroup::new(action.vectors.len(), perms)?;
    if g.stabilizer_chain()?.order() != 48 {
        return Err(Error::internal("binary octahedral model is not faithful"));
    }
    Ok(g.with_known_order(48))
}
