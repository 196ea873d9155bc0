//! Character tables checked in floating point against brute-force counts
//! taken directly from the multiplication table.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use sfcgroup::chartab::{character_table, verify_table};
use sfcgroup::groupspec::build;
use sfcgroup::DEFAULT_ORDER_CAP;

const SPECS: &[&str] = &[
    "C1",
    "C7",
    "C12",
    "D8",
    "D10",
    "D18",
    "Q8",
    "Q12",
    "Q20",
    "Q36",
    "Ttilde",
    "Otilde",
    "Itilde",
    "C2 x C2 x C2",
    "Q8 x C2",
    "Q8 x C3",
    "D6 x C4",
    "sd(C4, C4, [[-1]])",
    "sd(C5, C4, [[2]])",
    "sd(C7, C3, [[2]])",
    "sd(C3^2, C4, [[0,-1],[1,0]])",
    "SL(2,9)",
];

fn check(spec: &str) {
    let g = build(spec, DEFAULT_ORDER_CAP).unwrap();
    let t = character_table(&g).unwrap();
    let v = verify_table(&t, &g).unwrap();
    assert!(v.ok, "{spec}: {:?}", v.failures);

    let n = g.order().unwrap() as f64;
    let k = t.class_count();
    let vals: Vec<Vec<(f64, f64)>> = t
        .values
        .iter()
        .map(|row| row.iter().map(|x| x.to_complex(t.exponent)).collect())
        .collect();
    // row orthogonality, weighted by class sizes
    for r in 0..k {
        for s in 0..k {
            let (mut re, mut im) = (0.0, 0.0);
            for c in 0..k {
                let (a, b) = vals[r][c];
                let (x, y) = vals[s][c];
                let h = t.class_sizes[c] as f64;
                re += h * (a * x + b * y);
                im += h * (b * x - a * y);
            }
            let want = if r == s { n } else { 0.0 };
            assert!(
                (re - want).abs() < 1e-6 && im.abs() < 1e-6,
                "{spec}: rows {r},{s}"
            );
        }
    }
    // Frobenius-Schur count against x*x = 1 counted in the table
    let table = g.elements().unwrap();
    let roots = (0..table.len() as u32)
        .filter(|&x| table.mul(x, x) == 0)
        .count() as i64;
    let fs: i64 = (0..k)
        .map(|r| t.indicators[r] as i64 * t.degrees[r] as i64)
        .sum();
    assert_eq!(fs, roots, "{spec}");
    // the number of classes equals the number of irreducibles
    assert_eq!(t.values.len(), g.class_count().unwrap());
}

#[test]
fn listed_groups() {
    for spec in SPECS {
        check(spec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_products(a in 0usize..6, b in 0usize..6) {
        let small = ["C2", "C3", "C4", "D6", "Q8", "Q12"];
        check(&format!("{} x {}", small[a], small[b]));
    }

    #[test]
    fn random_dicyclic_and_dihedral(n in 2u64..40) {
        check(&format!("Q{}", 4 * n));
        check(&format!("D{}", 2 * n));
    }
}
