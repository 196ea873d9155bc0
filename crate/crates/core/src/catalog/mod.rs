//! Constructors for the standard group families and a recognizer for
//! binary polyhedral groups.

mod sl2;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermutationGroup;

pub use sl2::{binary_octahedral, sl2};

/// Isomorphism type of a binary polyhedral group, i.e. a non-cyclic finite
/// subgroup of the unit quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BinaryPolyhedralId {
    /// The dicyclic (generalised quaternion) group of order `4n`, `n ≥ 2`.
    Dicyclic {
        n: u64,
    },
    Ttilde,
    Otilde,
    Itilde,
}

/// The seven binary polyhedral groups `Q8, Q12, Q16, Q20, T̃, Õ, Ĩ`.
pub const STAR_GROUPS: [BinaryPolyhedralId; 7] = [
    BinaryPolyhedralId::Dicyclic { n: 2 },
    BinaryPolyhedralId::Dicyclic { n: 3 },
    BinaryPolyhedralId::Dicyclic { n: 4 },
    BinaryPolyhedralId::Dicyclic { n: 5 },
    BinaryPolyhedralId::Ttilde,
    BinaryPolyhedralId::Otilde,
    BinaryPolyhedralId::Itilde,
];

impl BinaryPolyhedralId {
    pub fn order(&self) -> u64 {
        match self {
            BinaryPolyhedralId::Dicyclic { n } => 4 * n,
            BinaryPolyhedralId::Ttilde => 24,
            BinaryPolyhedralId::Otilde => 48,
            BinaryPolyhedralId::Itilde => 120,
        }
    }

    pub fn is_star(&self) -> bool {
        STAR_GROUPS.contains(self)
    }

    pub fn build(&self) -> Result<PermutationGroup> {
        match *self {
            BinaryPolyhedralId::Dicyclic { n } => dicyclic(n),
            BinaryPolyhedralId::Ttilde => sl2(3),
            BinaryPolyhedralId::Otilde => binary_octahedral(),
            BinaryPolyhedralId::Itilde => sl2(5),
        }
    }
}

impl fmt::Display for BinaryPolyhedralId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryPolyhedralId::Dicyclic { n } => write!(f, "Q{}", 4 * n),
            BinaryPolyhedralId::Ttilde => f.write_str("Ttilde"),
            BinaryPolyhedralId::Otilde => f.write_str("Otilde"),
            BinaryPolyhedralId::Itilde => f.write_str("Itilde"),
        }
    }
}

fn group_of(degree: usize, gens: Vec<Permutation>, order: u128) -> Result<PermutationGroup> {
    Ok(PermutationGroup::new(degree, gens)?.with_known_order(order))
}

fn cycle_on(degree: usize, points: impl Iterator<Item = usize>) -> Result<Permutation> {
    Permutation::from_cycles(degree, &[points.collect()])
}

/// Cyclic group of order `n` on `n` points.
pub fn cyclic(n: u64) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cyclic group order must be at least 1".into(),
        ));
    }
    if n == 1 {
        return Ok(PermutationGroup::trivial());
    }
    let n = n as usize;
    group_of(n, vec![cycle_on(n, 0..n)?], n as u128)
}

/// Dihedral group of order `order = 2m`, acting on the `m` vertices of a
/// regular polygon. `D2` is modelled as `C2` and `D4` as the Klein four
/// group on four points, where the polygon action is not faithful.
pub fn dihedral(order: u64) -> Result<PermutationGroup> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "dihedral group order must be even and at least 2, got {order}"
        )));
    }
    match order {
        2 => cyclic(2),
        4 => elementary_abelian(2, 2),
        _ => {
            let m = (order / 2) as usize;
            let rotation = cycle_on(m, 0..m)?;
            let reflection =
                Permutation::from_images((0..m).map(|i| ((m - i) % m) as u32).collect())?;
            group_of(m, vec![rotation, reflection], order as u128)
        }
    }
}

/// `(C_p)^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, k: u32) -> Result<PermutationGroup> {
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if k == 0 {
        return Ok(PermutationGroup::trivial());
    }
    let p = p as usize;
    let degree = p * k as usize;
    let gens = (0..k as usize)
        .map(|i| cycle_on(degree, i * p..(i + 1) * p))
        .collect::<Result<Vec<_>>>()?;
    group_of(degree, gens, (p as u128).pow(k))
}

/// Dicyclic group `Q_{4n}` of order `4n`, `n ≥ 2`: `a^{2n} = 1`, `b² = aⁿ`,
/// `bab⁻¹ = a⁻¹`. Elements `a^i b^ε` are multiplied symbolically and the
/// group acts on itself by right multiplication.
pub fn dicyclic(n: u64) -> Result<PermutationGroup> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dicyclic groups need n >= 2 (order at least 8), got n = {n}"
        )));
    }
    let n = n as usize;
    let m = 2 * n;
    let mul = |(i, e): (usize, usize), (j, f): (usize, usize)| -> (usize, usize) {
        match (e, f) {
            (0, _) => ((i + j) % m, f),
            // b a^j = a^{-j} b
            (_, 0) => ((i + m - j) % m, 1),
            // a^i b a^j b = a^{i-j} b² = a^{i-j+n}
            _ => ((i + m - j + n) % m, 0),
        }
    };
    let index = |(i, e): (usize, usize)| i + m * e;
    let right = |g: (usize, usize)| {
        let images = (0..2)
            .flat_map(|e| (0..m).map(move |i| (i, e)))
            .map(|x| index(mul(x, g)) as u32)
            .collect();
        Permutation::from_images(images)
    };
    group_of(2 * m, vec![right((1, 0))?, right((0, 1))?], 4 * n as u128)
}

/// Binary tetrahedral group `SL(2,3)` on 8 points.
pub fn binary_tetrahedral() -> Result<PermutationGroup> {
    sl2(3)
}

/// Binary icosahedral group `SL(2,5)` on 24 points.
pub fn binary_icosahedral() -> Result<PermutationGroup> {
    sl2(5)
}

/// Direct product acting on the disjoint union of the factor domains.
pub fn direct_product(factors: &[PermutationGroup]) -> Result<PermutationGroup> {
    if factors.is_empty() {
        return Ok(PermutationGroup::trivial());
    }
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let mut gens = Vec::new();
    let mut order: u128 = 1;
    let mut offset = 0;
    for f in factors {
        order = order.saturating_mul(f.order()? as u128);
        for g in f.generators() {
            let images: Vec<u32> = (0..degree)
                .map(|x| {
                    if x >= offset && x < offset + f.degree() {
                        (g.image(x - offset) + offset) as u32
                    } else {
                        x as u32
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
        offset += f.degree();
    }
    group_of(degree, gens, order)
}

/// Matrix power modulo `m`.
fn mat_pow_mod(a: &[Vec<i64>], e: u64, m: i64) -> Vec<Vec<i64>> {
    let k = a.len();
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).map(|l| x[i][l] * y[l][j]).sum::<i64>().rem_euclid(m))
                    .collect()
            })
            .collect()
    };
    let mut result: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..e {
        result = mul(&result, a);
    }
    result
}

/// Determinant by cofactor expansion (matrices here are tiny).
fn det(a: &[Vec<i64>]) -> i64 {
    let k = a.len();
    if k == 0 {
        return 1;
    }
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * det(&minor)
        })
        .sum()
}

/// Order of `(C_m)^k ⋊ C_r` without building it.
pub fn semidirect_order(modulus: u64, rank: u32, acting: u64) -> u128 {
    (modulus as u128)
        .saturating_pow(rank)
        .saturating_mul(acting as u128)
}

/// `(C_m)^k ⋊ C_r`, where the generator of `C_r` acts on `(Z/m)^k` by the
/// integer matrix `action` (applied to column vectors). Elements are pairs
/// `(v, s)` with `(v, s)(w, t) = (v + Mˢw, s + t)`; the group acts on this
/// set by right multiplication.
pub fn semidirect(
    modulus: u64,
    rank: u32,
    acting: u64,
    action: &[Vec<i64>],
) -> Result<PermutationGroup> {
    let k = rank as usize;
    if modulus < 1 || acting < 1 || k == 0 {
        return Err(Error::InvalidParameter(
            "semidirect product needs modulus, rank and acting order at least 1".into(),
        ));
    }
    if action.len() != k || action.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidAction(format!(
            "action matrix must be {k}x{k}"
        )));
    }
    let m = modulus as i64;
    let a: Vec<Vec<i64>> = action
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(m)).collect())
        .collect();
    if crate::perm::gcd(det(&a).rem_euclid(m) as u64, modulus) != 1 {
        return Err(Error::InvalidAction(format!(
            "action matrix is not invertible modulo {modulus}"
        )));
    }
    let identity = mat_pow_mod(&a, 0, m);
    if mat_pow_mod(&a, acting, m) != identity {
        return Err(Error::InvalidAction(format!(
            "action matrix order does not divide {acting}"
        )));
    }
    let base = (modulus as usize).pow(rank);
    let r = acting as usize;
    let powers: Vec<Vec<Vec<i64>>> = (0..acting).map(|s| mat_pow_mod(&a, s, m)).collect();
    let decode = |x: usize| -> (Vec<i64>, usize) {
        let (mut v, s) = (x % base, x / base);
        let digits = (0..k)
            .map(|_| {
                let d = (v % modulus as usize) as i64;
                v /= modulus as usize;
                d
            })
            .collect();
        (digits, s)
    };
    let encode = |v: &[i64], s: usize| -> usize {
        v.iter()
            .rev()
            .fold(0usize, |acc, &d| acc * modulus as usize + d as usize)
            + base * s
    };
    let right = |w: &[i64], t: usize| -> Result<Permutation> {
        let images = (0..base * r)
            .map(|x| {
                let (v, s) = decode(x);
                let mw: Vec<i64> = (0..k)
                    .map(|i| (0..k).map(|j| powers[s][i][j] * w[j]).sum::<i64>())
                    .collect();
                let sum: Vec<i64> = v
                    .iter()
                    .zip(&mw)
                    .map(|(a, b)| (a + b).rem_euclid(m))
                    .collect();
                encode(&sum, (s + t) % r) as u32
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut gens = Vec::new();
    for i in 0..k {
        let mut unit = vec![0i64; k];
        unit[i] = 1;
        gens.push(right(&unit, 0)?);
    }
    gens.push(right(&vec![0; k], 1 % r)?);
    group_of(base * r, gens, semidirect_order(modulus, rank, acting))
}

type CandidateCache = Mutex<HashMap<BinaryPolyhedralId, Arc<PermutationGroup>>>;

static CANDIDATES: Lazy<CandidateCache> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared model of a binary polyhedral group, built once per process.
pub fn candidate(id: BinaryPolyhedralId) -> Result<Arc<PermutationGroup>> {
    if let Some(g) = CANDIDATES.lock().unwrap().get(&id) {
        return Ok(g.clone());
    }
    let g = Arc::new(id.build()?);
    Ok(CANDIDATES.lock().unwrap().entry(id).or_insert(g).clone())
}

/// Identifies `g` as a binary polyhedral group: order filter, exactly one
/// involution, non-cyclic, then an isomorphism test against the candidate of
/// that order.
pub fn recognize_binary_polyhedral(g: &PermutationGroup) -> Result<Option<BinaryPolyhedralId>> {
    let n = g.order()? as u64;
    if n < 8 || !n.is_multiple_of(4) {
        return Ok(None);
    }
    if g.involution_count()? != 1 || g.is_cyclic()? {
        return Ok(None);
    }
    let mut ids = vec![BinaryPolyhedralId::Dicyclic { n: n / 4 }];
    ids.extend(match n {
        24 => Some(BinaryPolyhedralId::Ttilde),
        48 => Some(BinaryPolyhedralId::Otilde),
        120 => Some(BinaryPolyhedralId::Itilde),
        _ => None,
    });
    for id in ids {
        if g.is_isomorphic(candidate(id)?.as_ref())? {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

/// True iff `g` is one of the seven groups in [`STAR_GROUPS`].
pub fn is_star(g: &PermutationGroup) -> Result<bool> {
    Ok(recognize_binary_polyhedral(g)?.is_some_and(|id| id.is_star()))
}
