//! Eigenspace splitting of the class matrices and lifting of the modular
//! characters to cyclotomic values.

use std::collections::HashMap;

use super::modp::{charpoly, nullspace, roots, rref};
use super::{class_matrix, CharValue, Context, Row};
use crate::error::{Error, Result};

pub(super) fn rows(ctx: &Context) -> Result<Vec<Row>> {
    let spaces = split(ctx)?;
    let mut rows = Vec::with_capacity(ctx.k);
    for space in spaces {
        rows.push(modular_row(ctx, &space[0])?);
    }
    lift(ctx, &mut rows)?;
    Ok(rows)
}

/// Splits `F_p^k` into the common one-dimensional eigenspaces of the class
/// matrices, taken in ascending class-size order. Spaces are kept as RREF
/// row bases; a matrix acts on a space through its coordinates at the pivot
/// columns.
fn split(ctx: &Context) -> Result<Vec<Vec<Vec<u64>>>> {
    let Context { k, f, .. } = *ctx;
    let p = f.p;
    let mut order: Vec<usize> = (1..k).collect();
    order.sort_by_key(|&j| (ctx.sizes[j], j));
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut r = vec![0u64; k];
            r[i] = 1;
            r
        })
        .collect();
    let mut spaces = vec![identity];
    for &j in &order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = class_matrix(ctx.table, ctx.classes, j);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let d = space.len();
            let pivots: Vec<usize> = space
                .iter()
                .map(|row| row.iter().position(|&x| x != 0).unwrap())
                .collect();
            // C[r][s] = (A b_r)[pivot_s]
            let restricted: Vec<Vec<u64>> = space
                .iter()
                .map(|b| {
                    pivots
                        .iter()
                        .map(|&i| {
                            a[i].iter().zip(b).fold(0u64, |acc, (&x, &y)| {
                                if x == 0 || y == 0 {
                                    acc
                                } else {
                                    f.add(acc, f.mul(x % p, y))
                                }
                            })
                        })
                        .collect()
                })
                .collect();
            let eigenvalues = roots(f, &charpoly(f, &restricted));
            if eigenvalues.len() == 1 {
                next.push(space);
                continue;
            }
            let mut total = 0;
            for lambda in eigenvalues {
                // coordinate vectors x with x·C = λx
                let m: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|s| {
                                let v = restricted[s][r];
                                if r == s {
                                    f.sub(v, lambda)
                                } else {
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut vectors: Vec<Vec<u64>> = nullspace(f, &m)
                    .iter()
                    .map(|x| {
                        (0..k)
                            .map(|col| {
                                x.iter()
                                    .zip(&space)
                                    .fold(0, |acc, (&c, b)| f.add(acc, f.mul(c, b[col])))
                            })
                            .collect()
                    })
                    .collect();
                rref(f, &mut vectors);
                total += vectors.len();
                next.push(vectors);
            }
            if total != d {
                return Err(Error::internal(format!(
                    "class matrix {j} is not diagonalizable over F_{p}"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::internal(format!(
            "eigenspace splitting left {} spaces for {k} classes",
            spaces.len()
        )));
    }
    Ok(spaces)
}

/// Degree and modular values of the character with central character `w`
/// (normalized so that `w_0 = 1`).
fn modular_row(ctx: &Context, w: &[u64]) -> Result<Row> {
    let Context { n, k, f, .. } = *ctx;
    let p = f.p;
    if w[0] != 1 {
        return Err(Error::internal(
            "central character vanishes on the identity",
        ));
    }
    let inv_sizes: Vec<u64> = ctx.sizes.iter().map(|&h| f.inv(h % p)).collect();
    // Σ_l ω_l ω_{l*} / h_l = |G| / χ(1)²
    let s = (0..k).fold(0u64, |acc, l| {
        let term = f.mul(w[l], w[ctx.classes.inverse_class(l)]);
        f.add(acc, f.mul(term, inv_sizes[l]))
    });
    if s == 0 {
        return Err(Error::internal("degree equation has no solution"));
    }
    let target = f.mul(n % p, f.inv(s));
    let degree = (1..=n)
        .take_while(|d| d * d <= n)
        .find(|&d| d * d % p == target)
        .ok_or_else(|| Error::internal("no integral degree lifts the modular degree"))?;
    let mod_values = (0..k)
        .map(|l| f.mul(f.mul(w[l], degree % p), inv_sizes[l]))
        .collect();
    Ok(Row {
        degree,
        values: Vec::new(),
        mod_values,
    })
}

/// Recovers `χ(g) = Σ_t m_t ζ_e^t` from the modular values on the powers of
/// `g`: `m_t = (1/o) Σ_s χ(g^s) z^{-ts·e/o}` with `o` the order of `g`.
fn lift(ctx: &Context, rows: &mut [Row]) -> Result<()> {
    let Context { k, e, f, z, .. } = *ctx;
    let zpow: Vec<u64> = (0..e).map(|t| f.pow(z, t)).collect();
    let dlog: HashMap<u64, u32> = zpow
        .iter()
        .enumerate()
        .map(|(t, &v)| (v, t as u32))
        .collect();
    let any_nonlinear = rows.iter().any(|r| r.degree > 1);
    for row in rows.iter_mut() {
        row.values = Vec::with_capacity(k);
    }
    for l in 0..k {
        let power_classes = if any_nonlinear {
            ctx.classes.power_classes(ctx.table, l)
        } else {
            Vec::new()
        };
        let o = ctx.classes.element_order(l) as u64;
        let step = e / o;
        let inv_o = f.inv(o);
        for row in rows.iter_mut() {
            let value = if row.degree == 1 {
                let t = *dlog.get(&row.mod_values[l]).ok_or_else(|| {
                    Error::internal("linear character value is not a root of unity")
                })?;
                CharValue {
                    terms: vec![(t, 1)],
                }
            } else {
                let mut terms = Vec::new();
                for t in 0..o {
                    let mut acc = 0u64;
                    for (s, &cls) in power_classes.iter().enumerate() {
                        let expo = (e - step * ((t * s as u64) % o)) % e;
                        acc = f.add(acc, f.mul(row.mod_values[cls], zpow[expo as usize]));
                    }
                    let m = f.mul(acc, inv_o);
                    if m > row.degree {
                        return Err(Error::internal(format!(
                            "eigenvalue multiplicity {m} exceeds degree {}",
                            row.degree
                        )));
                    }
                    if m > 0 {
                        terms.push(((step * t) as u32, m as u32));
                    }
                }
                CharValue { terms }
            };
            if value.multiplicity_sum() != row.degree {
                return Err(Error::internal(
                    "eigenvalue multiplicities do not sum to the degree",
                ));
            }
            row.values.push(value);
        }
    }
    Ok(())
}
