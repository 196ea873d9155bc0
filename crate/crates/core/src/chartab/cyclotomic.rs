//! Exact arithmetic in `Z[ζ_e]`.
//!
//! Values are kept as coefficient vectors over the powers `1, ζ, …, ζ^{e-1}`
//! (arithmetic modulo `x^e - 1`) and only reduced modulo the cyclotomic
//! polynomial `Φ_e` when two values are compared.

use serde::{Deserialize, Serialize};

/// Integer polynomial, constant term first.
pub type Poly = Vec<i64>;

/// `Φ_n`, by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Poly {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<Poly> = Vec::with_capacity(divisors.len());
    for (i, &m) in divisors.iter().enumerate() {
        let mut num: Poly = vec![0; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for (j, &d) in divisors[..i].iter().enumerate() {
            if m % d == 0 {
                num = div_exact(&num, &known[j]);
            }
        }
        known.push(num);
    }
    known.pop().unwrap()
}

fn div_exact(num: &[i64], den: &[i64]) -> Poly {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Arithmetic data for `Q(ζ_e)`: the cyclotomic polynomial, kept sparse
/// for reduction.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    e: u64,
    phi: Poly,
    /// Nonzero `(i, c)` with `i < deg Φ_e`.
    phi_low: Vec<(usize, i64)>,
}

impl CyclotomicField {
    pub fn new(e: u64) -> Self {
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        let phi_low = (0..deg)
            .filter(|&i| phi[i] != 0)
            .map(|i| (i, phi[i]))
            .collect();
        CyclotomicField { e, phi, phi_low }
    }

    pub fn order(&self) -> u64 {
        self.e
    }

    /// Degree of the field, `φ(e)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Canonical representative of a dense power-basis vector: exponents
    /// are folded modulo `e`, then the top terms are cancelled against the
    /// monic `Φ_e` from the highest power down.
    pub fn reduce(&self, dense: &[i64]) -> Poly {
        let e = self.e as usize;
        let deg = self.degree();
        let mut v = vec![0i64; e.max(deg)];
        for (t, &c) in dense.iter().enumerate() {
            v[t % e] += c;
        }
        for i in (deg..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c != 0 {
                let shift = i - deg;
                for &(j, p) in &self.phi_low {
                    v[shift + j] -= c * p;
                }
            }
        }
        v.truncate(deg);
        v
    }

    /// The rational integer represented by `dense`, if it is one.
    pub fn as_integer(&self, dense: &[i64]) -> Option<i64> {
        let r = self.reduce(dense);
        if r[1..].iter().all(|&x| x == 0) {
            Some(r[0])
        } else {
            None
        }
    }

    pub fn equal(&self, a: &[i64], b: &[i64]) -> bool {
        self.reduce(a) == self.reduce(b)
    }
}

/// A character value as a sum of e-th roots of unity: `Σ m ζ_e^t` over the
/// stored `(t, m)` terms with `m > 0`. For a character value these are the
/// eigenvalue multiplicities of the representing matrix, which makes the
/// encoding canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharValue {
    pub terms: Vec<(u32, u32)>,
}

impl CharValue {
    pub fn integer(n: u32) -> Self {
        CharValue {
            terms: if n == 0 { vec![] } else { vec![(0, n)] },
        }
    }

    /// Number of roots of unity summed, i.e. the degree of the character.
    pub fn multiplicity_sum(&self) -> u64 {
        self.terms.iter().map(|&(_, m)| m as u64).sum()
    }

    pub fn conj(&self, e: u64) -> CharValue {
        let mut terms: Vec<(u32, u32)> = self
            .terms
            .iter()
            .map(|&(t, m)| (((e - t as u64) % e) as u32, m))
            .collect();
        terms.sort_unstable();
        CharValue { terms }
    }

    pub fn to_dense(&self, e: u64) -> Vec<i64> {
        let mut v = vec![0i64; e as usize];
        for &(t, m) in &self.terms {
            v[t as usize] += m as i64;
        }
        v
    }

    /// True iff the value is `n` with every eigenvalue equal to 1.
    pub fn is_trivial_of_degree(&self, n: u64) -> bool {
        self.terms == [(0, n as u32)]
    }

    pub fn to_complex(&self, e: u64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), &(t, m)| {
            let a = 2.0 * std::f64::consts::PI * t as f64 / e as f64;
            (re + m as f64 * a.cos(), im + m as f64 * a.sin())
        })
    }

    /// Adds `scale · self · other` into a dense accumulator.
    pub fn accumulate_product(&self, other: &CharValue, scale: i64, e: u64, acc: &mut [i64]) {
        for &(t1, m1) in &self.terms {
            for &(t2, m2) in &other.terms {
                let t = (t1 as u64 + t2 as u64) % e;
                acc[t as usize] += scale * m1 as i64 * m2 as i64;
            }
        }
    }

    /// Adds `scale · self` into a dense accumulator.
    pub fn accumulate(&self, scale: i64, acc: &mut [i64]) {
        for &(t, m) in &self.terms {
            acc[t as usize] += scale * m as i64;
        }
    }

    /// Human-readable form in `E(n)` notation (`E(n) = exp(2πi/n)`), with
    /// rational integers printed plainly.
    pub fn render(&self, field: &CyclotomicField) -> String {
        let e = field.order();
        if let Some(n) = field.as_integer(&self.to_dense(e)) {
            return n.to_string();
        }
        let mut out = String::new();
        for (i, &(t, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let g = crate::perm::gcd(t as u64, e);
            let (k, n) = (t as u64 / g, e / g);
            let root = if t == 0 {
                "1".to_string()
            } else if k == 1 {
                format!("E({n})")
            } else {
                format!("E({n})^{k}")
            };
            if m == 1 {
                out.push_str(&root);
            } else {
                out.push_str(&format!("{m}*{root}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for e in [2u64, 3, 4, 6, 8, 12, 20, 60] {
            let f = CyclotomicField::new(e);
            assert_eq!(f.as_integer(&vec![1; e as usize]), Some(0));
            let mut one = vec![0; e as usize];
            one[0] = 1;
            assert_eq!(f.as_integer(&one), Some(1));
        }
    }

    #[test]
    fn roots_of_unity_are_not_integers() {
        let f = CyclotomicField::new(12);
        let mut z = vec![0; 12];
        z[1] = 1;
        assert_eq!(f.as_integer(&z), None);
        // ζ^6 = -1
        let mut w = vec![0; 12];
        w[6] = 1;
        assert_eq!(f.as_integer(&w), Some(-1));
        // ζ_3 + ζ_3^2 = -1, i.e. ζ^4 + ζ^8
        let mut s = vec![0; 12];
        s[4] = 1;
        s[8] = 1;
        assert_eq!(f.as_integer(&s), Some(-1));
    }

    #[test]
    fn render_values() {
        let f = CyclotomicField::new(6);
        let v = CharValue {
            terms: vec![(2, 1)],
        };
        assert_eq!(v.render(&f), "E(3)");
        let v = CharValue {
            terms: vec![(2, 1), (4, 1)],
        };
        assert_eq!(v.render(&f), "-1");
        assert_eq!(CharValue::integer(2).render(&f), "2");
    }
}
