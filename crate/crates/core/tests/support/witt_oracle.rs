//! Brute-force Witt decomposition over a prime field: split off hyperbolic planes found by
//! exhaustive isotropy search, then compare anisotropic kernels by exhaustive isometry search.

pub type Gram = Vec<Vec<i64>>;

fn md(a: i64, p: i64) -> i64 {
    a.rem_euclid(p)
}

fn inv(a: i64, p: i64) -> i64 {
    (1..p).find(|x| md(a * x, p) == 1).expect("invertible")
}

pub fn diag(entries: &[i64], p: i64) -> Gram {
    let n = entries.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { md(entries[i], p) } else { 0 }).collect()).collect()
}

fn bilinear(g: &Gram, u: &[i64], v: &[i64], p: i64) -> i64 {
    let n = g.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s = md(s + u[i] * g[i][j] % p * v[j], p);
        }
    }
    s
}

/// All vectors of `F_p^n` in a fixed order.
fn vectors(n: usize, p: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = (k % p as u64) as i64;
                k /= p as u64;
                d
            })
            .collect()
    })
}

/// Basis of `{u : B(u, w) = 0 for all w in ws}`, by Gaussian elimination mod p.
fn orthogonal_complement(g: &Gram, ws: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut rows: Vec<Vec<i64>> =
        ws.iter().map(|w| (0..n).map(|j| (0..n).fold(0, |s, i| md(s + w[i] * g[i][j], p))).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = md(*x * iv, p);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..n {
                    rows[k][j] = md(rows[k][j] - f * rows[r][j], p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = md(-rows[row][f], p);
            }
            v
        })
        .collect()
}

fn restrict(g: &Gram, basis: &[Vec<i64>], p: i64) -> Gram {
    basis.iter().map(|u| basis.iter().map(|v| bilinear(g, u, v, p)).collect()).collect()
}

/// Anisotropic kernel and number of hyperbolic planes of a nondegenerate form.
pub fn decompose(g: &Gram, p: i64) -> (Gram, usize) {
    let n = g.len();
    let Some(v) = vectors(n, p).find(|v| v.iter().any(|&x| x != 0) && bilinear(g, v, v, p) == 0) else {
        return (g.clone(), 0);
    };
    let e = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .find(|e| bilinear(g, &v, e, p) != 0)
        .expect("nondegenerate");
    let s = inv(bilinear(g, &v, &e, p), p);
    let w: Vec<i64> = e.iter().map(|x| md(x * s, p)).collect();
    // make w isotropic: w − (Q(w)/2)·v
    let half = md(bilinear(g, &w, &w, p) * inv(2, p), p);
    let w: Vec<i64> = w.iter().zip(&v).map(|(a, b)| md(a - half * b, p)).collect();
    let rest = restrict(g, &orthogonal_complement(g, &[v, w], p), p);
    let (kernel, h) = decompose(&rest, p);
    (kernel, h + 1)
}

/// Whether some invertible `T` has `Tᵀ A T = B`.
pub fn isometric(a: &Gram, b: &Gram, p: i64) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let columns: Vec<Vec<i64>> = vectors(n, p).collect();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    fn extend(a: &Gram, b: &Gram, p: i64, cols: &[Vec<i64>], chosen: &mut Vec<Vec<i64>>) -> bool {
        let k = chosen.len();
        if k == a.len() {
            return true;
        }
        for c in cols {
            if bilinear(a, c, c, p) != b[k][k] {
                continue;
            }
            if (0..k).any(|i| bilinear(a, &chosen[i], c, p) != b[i][k]) {
                continue;
            }
            chosen.push(c.clone());
            if extend(a, b, p, cols, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    // the Gram matrix of the chosen columns equals B, which is nondegenerate, so T is invertible
    extend(a, b, p, &columns, &mut chosen)
}
