//! Dense linear algebra over `F_p` for `p < 2³¹`.

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p { s - p } else { s }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { a + p - b }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
    pow(a, p - 2, p)
}

/// Reduced row echelon form in place; returns pivot columns and truncates
/// zero rows.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, iv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y, p), p);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}` for a square matrix given by rows.
pub fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = sub(0, row[f], p);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, coefficients from the constant
/// term up, by reduction to Hessenberg form.
pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let iv = inv(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul(h[i][m - 1], iv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul(u, h[m][j], p);
                h[i][j] = sub(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(u, row[i], p);
                row[m] = add(row[m], t, p);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) · p_{m-1}
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = add(next[k + 1], c, p);
            next[k] = sub(next[k], mul(c, h[m - 1][m - 1], p), p);
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul(t, h[m - i][m - i - 1], p);
            let f = mul(t, h[m - i - 1][m - 1], p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = sub(next[k], mul(f, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

pub fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

/// Distinct roots in `F_p` by exhaustive evaluation.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(poly, x, p) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let p = 101;
        // [[2,1],[1,2]] has eigenvalues 1 and 3: x² - 4x + 3
        let a = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(charpoly(&a, p), vec![3, p - 4, 1]);
        assert_eq!(roots(&charpoly(&a, p), p), vec![1, 3]);
        let b = vec![vec![0, 0, 5], vec![1, 0, 7], vec![0, 1, 3]];
        // companion matrix of x³ - 3x² - 7x - 5
        assert_eq!(charpoly(&b, p), vec![p - 5, p - 7, p - 3, 1]);
    }

    #[test]
    fn nullspace_small() {
        let p = 7;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&a, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % p, 0);
        }
    }
}
