//! Characters of abelian groups, built by extending along a generating set.

use super::{CharValue, Context, Row};
use crate::error::{Error, Result};
use crate::permgroup::Elem;

/// Every class is a single element here, and class `c` is element `c`.
pub(super) fn rows(ctx: &Context) -> Result<Vec<Row>> {
    let table = ctx.table;
    let n = table.len();
    let e = ctx.e;
    // characters as exponents of ζ_e on the elements reached so far
    let mut members: Vec<Elem> = vec![0];
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut chars: Vec<Vec<u32>> = vec![vec![0; n]];
    for &s in table.generators() {
        if inside[s as usize] {
            continue;
        }
        // smallest m with s^m inside, and the new cosets h·s^a
        let mut m = 1u64;
        let mut sa = s;
        let mut layers: Vec<Vec<Elem>> = vec![members.clone()];
        while !inside[sa as usize] {
            layers.push(members.iter().map(|&h| table.mul(h, sa)).collect());
            sa = table.mul(sa, s);
            m += 1;
        }
        let sm = sa;
        let mut extended = Vec::with_capacity(chars.len() * m as usize);
        for chi in &chars {
            let v = chi[sm as usize] as u64;
            let t0 = (0..e)
                .find(|&t| (m * t) % e == v)
                .ok_or_else(|| Error::internal("character does not extend"))?;
            for j in 0..m {
                let t = (t0 + j * (e / m)) % e;
                let mut next = chi.clone();
                for (a, layer) in layers.iter().enumerate().skip(1) {
                    for (&h, &x) in members.iter().zip(layer) {
                        next[x as usize] = ((chi[h as usize] as u64 + a as u64 * t) % e) as u32;
                    }
                }
                extended.push(next);
            }
        }
        chars = extended;
        for layer in layers.into_iter().skip(1) {
            for x in layer {
                inside[x as usize] = true;
                members.push(x);
            }
        }
    }
    if members.len() != n {
        return Err(Error::internal("generators do not reach every element"));
    }
    let f = ctx.f;
    let zpow: Vec<u64> = (0..e).map(|t| f.pow(ctx.z, t)).collect();
    Ok(chars
        .into_iter()
        .map(|chi| {
            let reps: Vec<u32> = (0..ctx.k)
                .map(|c| chi[ctx.classes.representative(c) as usize])
                .collect();
            Row {
                degree: 1,
                values: reps
                    .iter()
                    .map(|&t| CharValue {
                        terms: vec![(t, 1)],
                    })
                    .collect(),
                mod_values: reps.iter().map(|&t| zpow[t as usize]).collect(),
            }
        })
        .collect())
}
