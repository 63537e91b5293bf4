//! Integer arithmetic modulo N: extended gcd, Howell normal form and Smith
//! normal form with tracked column transforms.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
/// When `a` divides `b` the coefficients are `(1, 0)`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        return if a > 0 { (a, 1, 0) } else { (-a, -1, 0) };
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub fn negmod(a: u64, n: u64) -> u64 {
    let a = a % n;
    if a == 0 {
        0
    } else {
        n - a
    }
}

/// Reduces a signed integer into `[0, n)`.
pub fn signed_mod(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(signed_mod(s, m))
}

/// A unit `u` modulo `n` with `u*v ≡ gcd(v, n) (mod n)`.
pub fn unit_normalizer(v: u64, n: u64) -> u64 {
    let v = v % n;
    if v == 0 {
        return 1;
    }
    let g = gcd(v, n);
    let m = n / g;
    let u0 = inv_mod(v / g, m).unwrap_or(0) % m.max(1);
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += m;
    }
    u % n
}

/// `a*x + b*y` coordinatewise modulo `n`.
fn combine(x: &[u64], a: u64, y: &[u64], b: u64, n: u64) -> Vec<u64> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| ((a as u128 * xi as u128 + b as u128 * yi as u128) % n as u128) as u64)
        .collect()
}

fn scale(x: &[u64], a: u64, n: u64) -> Vec<u64> {
    x.iter().map(|&xi| mulmod(a, xi, n)).collect()
}

/// Howell normal form of a submodule of `(Z_n)^cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Howell {
    pub n: u64,
    pub cols: usize,
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Howell {
    pub fn new(input: &[Vec<u64>], cols: usize, n: u64) -> Howell {
        let mut a: Vec<Vec<u64>> = input
            .iter()
            .map(|r| r.iter().map(|&x| x % n.max(1)).collect::<Vec<u64>>())
            .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
            .collect();
        if n <= 1 {
            return Howell { n, cols, rows: vec![], pivots: vec![] };
        }
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..a.len() {
                let y = a[i][col];
                if y == 0 {
                    continue;
                }
                let x = a[r][col];
                let (g, s, t) = xgcd(x as i128, y as i128);
                let xg = (x as i128 / g) as u64;
                let yg = (y as i128 / g) as u64;
                let new_r = combine(&a[r], signed_mod(s, n), &a[i], signed_mod(t, n), n);
                let new_i = combine(&a[r], negmod(yg, n), &a[i], xg % n, n);
                a[r] = new_r;
                a[i] = new_i;
            }
            let v = a[r][col];
            let u = unit_normalizer(v, n);
            if u != 1 {
                a[r] = scale(&a[r], u, n);
            }
            let g = a[r][col];
            debug_assert_eq!(g, gcd(v, n));
            for i in 0..r {
                let q = a[i][col] / g;
                if q != 0 {
                    a[i] = combine(&a[i], 1, &a[r], negmod(q, n), n);
                }
            }
            let ann = scale(&a[r], n / g, n);
            if ann.iter().any(|&x| x != 0) {
                a.push(ann);
            }
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        Howell { n, cols, rows: a, pivots }
    }

    /// Additive order contributed by each row: `n / pivot`.
    pub fn radices(&self) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| self.n / row[c])
            .collect()
    }

    /// Reduces `v` in place against the rows whose pivot lies before `limit`,
    /// returning the coefficient used for every row (zero past `limit`).
    pub fn reduce_upto(&self, v: &mut [u64], limit: usize) -> Vec<u64> {
        let n = self.n;
        let mut coeffs = vec![0u64; self.rows.len()];
        for (k, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if c >= limit {
                break;
            }
            let g = row[c];
            let q = v[c] / g;
            if q != 0 {
                coeffs[k] = q;
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi = addmod(*vi, mulmod(negmod(q, n), ri, n), n);
                }
            }
        }
        coeffs
    }

    pub fn reduce(&self, v: &mut [u64]) -> Vec<u64> {
        self.reduce_upto(v, self.cols)
    }
}

/// Smith form `P·A·V = diag(d)` over `Z_n` with the column transform `V`
/// and its inverse. Diagonal entries divide `n` and form a divisibility
/// chain; a zero diagonal entry is recorded as `n`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<u64>,
    pub v: Vec<Vec<u64>>,
    pub vinv: Vec<Vec<u64>>,
}

pub fn smith(input: &[Vec<u64>], cols: usize, n: u64) -> Smith {
    let mut m: Vec<Vec<u64>> = input.iter().map(|r| r.iter().map(|&x| x % n).collect()).collect();
    let rows = m.len();
    let ident = |k: usize| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j) % n).collect())
            .collect()
    };
    let mut v = ident(cols);
    let mut vinv = ident(cols);
    let mut diag = vec![n; cols];
    if n <= 1 {
        return Smith { diag: vec![1; cols], v, vinv };
    }

    let col_swap = |m: &mut Vec<Vec<u64>>, v: &mut Vec<Vec<u64>>, vinv: &mut Vec<Vec<u64>>, a: usize, b: usize| {
        if a == b {
            return;
        }
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
        vinv.swap(a, b);
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        let found = (t..rows).find_map(|i| (t..cols).find(|&j| m[i][j] != 0).map(|j| (i, j)));
        let Some((pi, pj)) = found else { break };
        m.swap(t, pi);
        col_swap(&mut m, &mut v, &mut vinv, t, pj);
        loop {
            for i in t + 1..rows {
                let y = m[i][t];
                if y == 0 {
                    continue;
                }
                let x = m[t][t];
                let (g, s, tt) = xgcd(x as i128, y as i128);
                let xg = (x as i128 / g) as u64;
                let yg = (y as i128 / g) as u64;
                let nt = combine(&m[t], signed_mod(s, n), &m[i], signed_mod(tt, n), n);
                let ni = combine(&m[t], negmod(yg, n), &m[i], xg % n, n);
                m[t] = nt;
                m[i] = ni;
            }
            let mut changed = false;
            for j in t + 1..cols {
                let b = m[t][j];
                if b == 0 {
                    continue;
                }
                changed = true;
                let a = m[t][t];
                let (g, s, tt) = xgcd(a as i128, b as i128);
                let ag = (a as i128 / g) as u64;
                let bg = (b as i128 / g) as u64;
                let (s, tt) = (signed_mod(s, n), signed_mod(tt, n));
                // columns: t' = s*t + tt*j ; j' = -bg*t + ag*j
                for row in m.iter_mut().chain(v.iter_mut()) {
                    let (ct, cj) = (row[t], row[j]);
                    row[t] = addmod(mulmod(s, ct, n), mulmod(tt, cj, n), n);
                    row[j] = addmod(mulmod(negmod(bg, n), ct, n), mulmod(ag, cj, n), n);
                }
                // inverse rows: t' = ag*t + bg*j ; j' = -tt*t + s*j
                let rt = vinv[t].clone();
                let rj = vinv[j].clone();
                vinv[t] = combine(&rt, ag % n, &rj, bg % n, n);
                vinv[j] = combine(&rt, negmod(tt, n), &rj, s, n);
            }
            let below_clear = (t + 1..rows).all(|i| m[i][t] == 0);
            if !changed && below_clear {
                break;
            }
        }
        let p = m[t][t];
        let u = unit_normalizer(p, n);
        if u != 1 {
            let uinv = inv_mod(u, n).expect("unit");
            for row in m.iter_mut().chain(v.iter_mut()) {
                row[t] = mulmod(row[t], u, n);
            }
            vinv[t] = scale(&vinv[t], uinv, n);
        }
        let g = m[t][t];
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(g)));
        if let Some(i) = bad {
            let ri = m[i].clone();
            m[t] = combine(&m[t], 1, &ri, 1, n);
            continue;
        }
        diag[t] = g;
        t += 1;
    }
    Smith { diag, v, vinv }
}
