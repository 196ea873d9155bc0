//! Exact complex character tables by Dixon's modular method.
//!
//! The class-multiplication matrices are diagonalized simultaneously over a
//! prime field `F_p` with `p ≡ 1 (mod exponent)` and `p > 2|G|`. Their common
//! eigenvectors are the central characters; degrees and values are then
//! lifted from `F_p` to sums of roots of unity through the eigenvalue
//! multiplicities of each group element.

mod abelian;
mod cyclotomic;
mod dixon;
pub mod modp;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use cyclotomic::{cyclotomic_polynomial, CharValue, CyclotomicField};
use modp::{is_prime, Fp};

use crate::error::{Error, Result};
use crate::permgroup::{ConjugacyClassSet, ElementTable, PermutationGroup};

/// Class multiplication coefficients: `K_i K_j = Σ_l a[i][j][l] K_l` for the
/// class sums `K_i`.
#[derive(Clone, Debug)]
pub struct ClassConstants {
    k: usize,
    coefficients: Vec<u64>,
}

impl ClassConstants {
    pub fn class_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.coefficients[(i * self.k + j) * self.k + l]
    }
}

/// Counts, for a fixed `z` in each class `C_l`, the pairs `(x, x⁻¹z)` with
/// `x ∈ C_i` and `x⁻¹z ∈ C_j`.
pub fn class_constants(table: &ElementTable, classes: &ConjugacyClassSet) -> ClassConstants {
    let k = classes.len();
    let mut coefficients = vec![0u64; k * k * k];
    for l in 0..k {
        let z = classes.representative(l);
        for x in 0..table.len() as u32 {
            let i = classes.class_of(x);
            let j = classes.class_of(table.mul(table.inv(x), z));
            coefficients[(i * k + j) * k + l] += 1;
        }
    }
    ClassConstants { k, coefficients }
}

/// The matrix `(A_j)_{i,l} = a[i][j][l]` of multiplication by the class
/// sum `K_j`, computed directly from `C_j`: for `y ∈ C_j` the element
/// `x = z_l y⁻¹` is the unique partner of `y` in the count.
pub fn class_matrix(table: &ElementTable, classes: &ConjugacyClassSet, j: usize) -> Vec<Vec<u64>> {
    let k = classes.len();
    let mut m = vec![vec![0u64; k]; k];
    for l in 0..k {
        let z = classes.representative(l);
        for &y in classes.members(j) {
            m[classes.class_of(table.mul(z, table.inv(y)))][l] += 1;
        }
    }
    m
}

/// Complex character table with exact values.
///
/// Rows are sorted by degree, then lexicographically by their values (the
/// trivial character comes first). Columns follow the group's conjugacy
/// class order, identity class first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: u64,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub class_element_orders: Vec<u32>,
    pub inverse_classes: Vec<usize>,
    pub square_classes: Vec<usize>,
    pub degrees: Vec<u64>,
    /// `values[χ][class]`.
    pub values: Vec<Vec<CharValue>>,
    /// Frobenius–Schur indicators, computed modulo `prime`.
    pub indicators: Vec<i8>,
    pub prime: u64,
    /// Primitive `exponent`-th root of unity mod `prime` identified with
    /// `exp(2πi/exponent)`.
    pub root: u64,
    pub values_mod_p: Vec<Vec<u64>>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.exponent)
    }

    /// A row is real-valued iff its value on each class equals its value on
    /// the inverse class.
    pub fn is_real_row(&self, row: usize) -> bool {
        let vals = &self.values[row];
        (0..self.class_count()).all(|c| vals[c] == vals[self.inverse_classes[c]])
    }

    /// Kernel test `{g : χ(g) = χ(1)} = {1}`.
    pub fn is_faithful_row(&self, row: usize) -> bool {
        let d = self.degrees[row];
        (1..self.class_count()).all(|c| !self.values[row][c].is_trivial_of_degree(d))
    }

    /// Row of the complex conjugate character.
    pub fn conjugate_row(&self, row: usize) -> Option<usize> {
        let target: Vec<&CharValue> = (0..self.class_count())
            .map(|c| &self.values[row][self.inverse_classes[c]])
            .collect();
        (0..self.values.len()).find(|&r| self.values[r].iter().zip(&target).all(|(a, b)| a == *b))
    }
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·order`.
pub fn select_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while p <= 2 * order || !is_prime(p) {
        p += exponent;
    }
    p
}

/// The character table of `g`, computed once and cached on the group.
pub fn character_table(g: &PermutationGroup) -> Result<Arc<CharacterTable>> {
    g.character_table_cell()
        .get_or_try_init(|| compute(g).map(Arc::new))
        .cloned()
}

/// Installs a previously computed table (for instance from an on-disk
/// cache) after checking it against the group.
pub fn install_character_table(
    g: &PermutationGroup,
    t: CharacterTable,
) -> Result<Arc<CharacterTable>> {
    let classes = g.conjugacy_classes()?;
    let sizes: Vec<u64> = classes.sizes().iter().map(|&s| s as u64).collect();
    if t.class_sizes != sizes || t.group_order != g.order()? as u64 {
        return Err(Error::internal(
            "cached character table does not match the group",
        ));
    }
    let report = verify_table(&t, g)?;
    if !report.ok {
        return Err(Error::internal(format!(
            "cached character table failed verification: {}",
            report.failures.join("; ")
        )));
    }
    let t = Arc::new(t);
    let _ = g.character_table_cell().set(t.clone());
    Ok(g.cached_character_table().cloned().unwrap_or(t))
}

/// Largest number of conjugacy classes for which a character table is
/// computed.
pub const MAX_TABLE_CLASSES: usize = 200;

/// One irreducible character while the table is being assembled.
struct Row {
    degree: u64,
    values: Vec<CharValue>,
    mod_values: Vec<u64>,
}

/// Shared data for one table computation.
struct Context<'a> {
    table: &'a ElementTable,
    classes: &'a ConjugacyClassSet,
    n: u64,
    k: usize,
    e: u64,
    f: Fp,
    /// Primitive `e`-th root of unity in `F_p`.
    z: u64,
    sizes: Vec<u64>,
}

fn compute(g: &PermutationGroup) -> Result<CharacterTable> {
    let table = g.elements()?;
    let classes = g.conjugacy_classes()?;
    if classes.len() > MAX_TABLE_CLASSES {
        return Err(Error::LimitExceeded(format!(
            "character table with {} classes (limit {MAX_TABLE_CLASSES})",
            classes.len()
        )));
    }
    let n = table.len() as u64;
    let e = classes.exponent();
    let p = select_prime(e, n);
    let f = Fp::new(p);
    let ctx = Context {
        table,
        classes,
        n,
        k: classes.len(),
        e,
        f,
        z: f.pow(f.primitive_root(), (p - 1) / e),
        sizes: classes.sizes().iter().map(|&s| s as u64).collect(),
    };
    let rows = if g.is_abelian()? {
        abelian::rows(&ctx)?
    } else {
        dixon::rows(&ctx)?
    };
    assemble(&ctx, rows)
}

fn assemble(ctx: &Context, mut rows: Vec<Row>) -> Result<CharacterTable> {
    let Context { n, k, f, .. } = *ctx;
    let p = f.p;
    let classes = ctx.classes;
    if rows.len() != k {
        return Err(Error::internal(format!(
            "{} characters for {k} classes",
            rows.len()
        )));
    }
    rows.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| a.values.cmp(&b.values))
    });

    let inv_n = f.inv(n % p);
    let square_classes: Vec<usize> = (0..k).map(|c| classes.square_class(c)).collect();
    let inverse_classes: Vec<usize> = (0..k).map(|c| classes.inverse_class(c)).collect();
    let sizes = &ctx.sizes;
    let mut indicators = Vec::with_capacity(k);
    for row in &rows {
        let mv = &row.mod_values;
        let sum = (0..k).fold(0u64, |acc, l| {
            f.add(acc, f.mul(sizes[l] % p, mv[square_classes[l]]))
        });
        indicators.push(match f.mul(sum, inv_n) {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            x => {
                return Err(Error::internal(format!(
                    "Frobenius-Schur indicator {x} mod {p} is not in {{-1, 0, 1}}"
                )))
            }
        });
    }

    // row orthogonality modulo p as an internal consistency check
    for (r, a) in rows.iter().enumerate() {
        for (s, b) in rows.iter().enumerate().skip(r) {
            let sum = (0..k).fold(0u64, |acc, l| {
                let term = f.mul(a.mod_values[l], b.mod_values[inverse_classes[l]]);
                f.add(acc, f.mul(sizes[l] % p, term))
            });
            let expected = if r == s { n % p } else { 0 };
            if sum != expected {
                return Err(Error::internal(format!(
                    "modular row orthogonality fails for rows {r} and {s}"
                )));
            }
        }
    }

    let mut degrees = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    let mut values_mod_p = Vec::with_capacity(k);
    for row in rows {
        degrees.push(row.degree);
        values.push(row.values);
        values_mod_p.push(row.mod_values);
    }
    Ok(CharacterTable {
        group_order: n,
        exponent: ctx.e,
        class_sizes: sizes.clone(),
        class_element_orders: (0..k).map(|c| classes.element_order(c)).collect(),
        inverse_classes,
        square_classes,
        degrees,
        values,
        indicators,
        prime: p,
        root: ctx.z,
        values_mod_p,
    })
}

/// Outcome of [`verify_table`]; `failures` names each violated relation.
#[derive(Clone, Debug, Default)]
pub struct TableVerification {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Checks a character table exactly against its group: both orthogonality
/// relations, the degree identities, `|χ(g)| ≤ χ(1)`, the number of linear
/// characters, the number of real rows and the Frobenius–Schur involution
/// count.
pub fn verify_table(t: &CharacterTable, g: &PermutationGroup) -> Result<TableVerification> {
    let classes = g.conjugacy_classes()?;
    let table = g.elements()?;
    let n = g.order()? as u64;
    let k = t.class_count();
    let e = t.exponent;
    let field = t.field();
    let mut failures = Vec::new();

    if k != classes.len() || t.values.len() != k || t.degrees.len() != k {
        failures.push(format!(
            "shape: {} rows and {} columns for {} classes",
            t.values.len(),
            k,
            classes.len()
        ));
        return Ok(TableVerification {
            ok: false,
            failures,
        });
    }
    if t.degrees.iter().map(|d| d * d).sum::<u64>() != n {
        failures.push("degree-square sum differs from the group order".into());
    }
    if let Some(d) = t.degrees.iter().find(|&&d| !n.is_multiple_of(d)) {
        failures.push(format!("degree {d} does not divide the group order"));
    }
    for (r, row) in t.values.iter().enumerate() {
        if !row[0].is_trivial_of_degree(t.degrees[r]) {
            failures.push(format!(
                "first column: row {r} does not start with its degree"
            ));
        }
        for (c, v) in row.iter().enumerate() {
            let (re, im) = v.to_complex(e);
            if v.multiplicity_sum() != t.degrees[r]
                || (re * re + im * im).sqrt() > t.degrees[r] as f64 + 1e-9
            {
                failures.push(format!("bound |χ(g)| ≤ χ(1) fails at row {r}, class {c}"));
            }
        }
    }

    let conj: Vec<Vec<CharValue>> = t
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.conj(e)).collect())
        .collect();
    'rows: for r in 0..k {
        for s in r..k {
            let mut acc = vec![0i64; e as usize];
            for c in 0..k {
                t.values[r][c].accumulate_product(
                    &conj[s][c],
                    t.class_sizes[c] as i64,
                    e,
                    &mut acc,
                );
            }
            let expected = if r == s { n as i64 } else { 0 };
            if field.as_integer(&acc) != Some(expected) {
                failures.push(format!("row orthogonality fails for rows {r} and {s}"));
                break 'rows;
            }
        }
    }
    'cols: for i in 0..k {
        for j in i..k {
            let mut acc = vec![0i64; e as usize];
            for r in 0..k {
                t.values[r][i].accumulate_product(&conj[r][j], 1, e, &mut acc);
            }
            let expected = if i == j {
                (n / t.class_sizes[i]) as i64
            } else {
                0
            };
            if field.as_integer(&acc) != Some(expected) {
                failures.push(format!(
                    "column orthogonality fails for classes {i} and {j}"
                ));
                break 'cols;
            }
        }
    }

    let linear = t.degrees.iter().filter(|&&d| d == 1).count();
    let ab = g.derived_data()?.abelianization_order;
    if linear != ab {
        failures.push(format!(
            "{linear} linear characters but the abelianization has order {ab}"
        ));
    }
    let real_rows = (0..k).filter(|&r| t.is_real_row(r)).count();
    let real_classes = (0..k).filter(|&c| classes.inverse_class(c) == c).count();
    if real_rows != real_classes {
        failures.push(format!(
            "{real_rows} real characters but {real_classes} self-inverse classes"
        ));
    }
    let fs_sum: i64 = (0..k)
        .map(|r| t.indicators[r] as i64 * t.degrees[r] as i64)
        .sum();
    let square_roots_of_one = (0..table.len() as u32)
        .filter(|&x| table.mul(x, x) == 0)
        .count() as i64;
    if fs_sum != square_roots_of_one {
        failures.push(format!(
            "Frobenius-Schur involution count: Σν(χ)χ(1) = {fs_sum} but {square_roots_of_one} elements square to 1"
        ));
    }
    Ok(TableVerification {
        ok: failures.is_empty(),
        failures,
    })
}
