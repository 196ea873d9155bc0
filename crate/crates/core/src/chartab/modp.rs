//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2^31`.

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(self, a: u64, mut k: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("prime fields have primitive roots")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduces the rows to reduced row echelon form in place, dropping zero
/// rows; returns the pivot columns.
pub fn rref(f: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..ncols {
                    let v = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a square or rectangular matrix `M`.
pub fn nullspace(f: Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rows = m.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)`, coefficients from the constant
/// term up; computed through a Hessenberg form.
pub fn charpoly(f: Fp, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    // similarity reduction to upper Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = f.inv(h[col + 1][col]);
        for i in col + 2..n {
            if h[i][col] == 0 {
                continue;
            }
            let t = f.mul(h[i][col], inv);
            // row_i -= t * row_{col+1}
            for j in 0..n {
                let v = f.mul(t, h[col + 1][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            // col_{col+1} += t * col_i
            for row in h.iter_mut() {
                let v = f.mul(t, row[i]);
                row[col + 1] = f.add(row[col + 1], v);
            }
        }
    }
    // p_0 = 1; p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 0..n {
        let prev = &polys[mm];
        let mut next = vec![0u64; mm + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[mm][mm], c));
        }
        let mut prod = 1u64;
        for i in (0..mm).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coeff = f.mul(h[i][mm], prod);
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coeff, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Distinct roots in `F_p`, ascending, by exhaustive evaluation.
pub fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.p)
        .filter(|&x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| f.add(f.mul(acc, x), c))
                == 0
        })
        .collect()
}
