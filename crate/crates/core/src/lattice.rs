//! Exact integer lattice algorithms: integral LLL, Hermite normal form,
//! integer kernels and saturation.

use rug::ops::DivRounding;
use rug::{Integer, Rational};

pub type Vector = Vec<Integer>;

pub fn to_vector(v: &[i64]) -> Vector {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter()
        .zip(b)
        .fold(Integer::new(), |acc, (x, y)| acc + Integer::from(x * y))
}

fn axpy(target: &mut [Integer], k: &Integer, src: &[Integer]) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= Integer::from(k * s);
    }
}

/// Nearest integer to `a / b` for `b > 0`, ties rounded up.
fn round_div(a: &Integer, b: &Integer) -> Integer {
    let two_a = Integer::from(a * 2u32) + b;
    two_a.div_floor(Integer::from(b * 2u32))
}

/// Result of an integral LLL reduction.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vector>,
    /// Gram determinants `d_0 = 1, d_1, …, d_k`; `|b*_j|² = d_j / d_{j-1}`.
    pub gram: Vec<Integer>,
}

impl Reduced {
    /// Squared Gram–Schmidt norm of the j-th reduced vector (0-based).
    pub fn gs_norm_sqr(&self, j: usize) -> Rational {
        Rational::from((self.gram[j + 1].clone(), self.gram[j].clone()))
    }
}

/// LLL reduction with δ = 99/100 on linearly independent integer rows,
/// entirely in integer arithmetic.
pub fn lll(rows: Vec<Vector>) -> Reduced {
    let n = rows.len();
    let mut b: Vec<Vector> = Vec::with_capacity(n + 1);
    b.push(Vec::new());
    b.extend(rows);
    let mut d = vec![Integer::new(); n + 1];
    d[0] = Integer::from(1);
    let mut lam = vec![vec![Integer::new(); n + 1]; n + 1];
    if n == 0 {
        return Reduced { basis: Vec::new(), gram: d };
    }
    d[1] = dot(&b[1], &b[1]);
    assert!(d[1] != 0, "lll: zero vector in input");
    let (num, den) = (99u32, 100u32);
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (Integer::from(&d[i] * &u) - Integer::from(&lam[k][i] * &lam[j][i])) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(u != 0, "lll: input rows are dependent");
                    d[k] = u;
                }
            }
        }
        loop {
            redi(&mut b, &mut lam, &d, k, k - 1);
            let lhs = Integer::from(&d[k - 1] * &d[k - 1]) * num;
            let rhs = (Integer::from(&d[k] * &d[k - 2]) + Integer::from(lam[k][k - 1].square_ref())) * den;
            if lhs > rhs {
                swapi(&mut b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    redi(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    b.remove(0);
    Reduced { basis: b, gram: d }
}

#[allow(clippy::needless_range_loop)]
fn redi(b: &mut [Vector], lam: &mut [Vec<Integer>], d: &[Integer], k: usize, l: usize) {
    let twice = Integer::from(lam[k][l].abs_ref()) * 2u32;
    if twice <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    let bl = b[l].clone();
    axpy(&mut b[k], &q, &bl);
    lam[k][l] -= Integer::from(&q * &d[l]);
    for i in 1..l {
        let t = Integer::from(&q * &lam[l][i]);
        lam[k][i] -= t;
    }
}

#[allow(clippy::needless_range_loop)]
fn swapi(b: &mut [Vector], lam: &mut [Vec<Integer>], d: &mut [Integer], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 1..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let bb = (Integer::from(&d[k - 2] * &d[k]) + Integer::from(l.square_ref())) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (Integer::from(&d[k] * &lam[i][k - 1]) - Integer::from(&l * &t)) / &d[k - 1];
        lam[i][k - 1] = (Integer::from(&bb * &t) + Integer::from(&l * &lam[i][k])) / &d[k];
    }
    d[k - 1] = bb;
}

/// Row echelon form by unimodular row operations, pivoting only in the
/// first `pivot_cols` columns. Pivots are positive and entries above a pivot
/// are reduced into `[0, pivot)`. Returns the rows (zero-prefix rows last)
/// and the number of pivot rows.
fn echelon(mut rows: Vec<Vector>, pivot_cols: usize) -> (Vec<Vector>, usize) {
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by(|&i, &j| rows[i][c].cmp_abs(&rows[j][c]));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::from(&rows[i][c] / &rows[r][c]);
                    let pr = rows[r].clone();
                    axpy(&mut rows[i], &q, &pr);
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && rows[r][c] != 0 {
            if rows[r][c] < 0 {
                for x in rows[r].iter_mut() {
                    *x = Integer::from(-&*x);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    for (pr, &c) in pivots.iter().enumerate() {
        for i in 0..pr {
            let q = Integer::from((&rows[i][c]).div_floor(&rows[pr][c]));
            if q != 0 {
                let p = rows[pr].clone();
                axpy(&mut rows[i], &q, &p);
            }
        }
    }
    (rows, r)
}

/// Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hnf(rows: &[Vector]) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    let (mut out, r) = echelon(rows.to_vec(), n);
    out.truncate(r);
    out
}

/// Basis (in Hermite normal form) of `{v ∈ Z^n : A v = 0}` for `A` given by
/// its rows.
pub fn kernel(a: &[Vector], n: usize) -> Vec<Vector> {
    let m = a.len();
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = a.iter().map(|r| r[i].clone()).collect();
            row.extend((0..n).map(|j| Integer::from((i == j) as i32)));
            row
        })
        .collect();
    let (rows, r) = echelon(rows, m);
    let ker: Vec<Vector> = rows[r..].iter().map(|row| row[m..].to_vec()).collect();
    hnf(&ker)
}

/// Saturation `(Q·L) ∩ Z^n` of the lattice spanned by `rows`, together with
/// a complement matrix `M` such that `v` lies in the saturation iff `M v = 0`.
pub fn saturate(rows: &[Vector], n: usize) -> (Vec<Vector>, Vec<Vector>) {
    let basis = hnf(rows);
    let complement = kernel(&basis, n);
    let sat = kernel(&complement, n);
    (sat, complement)
}

pub fn rank(rows: &[Vector]) -> usize {
    hnf(rows).len()
}

/// `M v`.
pub fn apply(m: &[Vector], v: &[Integer]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Rational coordinates of `v` in an echelon basis, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[Integer]) -> Option<Vec<Rational>> {
    let mut rest: Vec<Rational> = v.iter().map(Rational::from).collect();
    let mut c = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|x| *x != 0)?;
        let coef = &rest[p] / Rational::from(&row[p]);
        for (r, x) in rest.iter_mut().zip(row) {
            *r -= Rational::from(&coef * x);
        }
        c.push(coef);
    }
    if rest.iter().all(|x| *x == 0) {
        Some(c)
    } else {
        None
    }
}

pub fn to_i64s(v: &[Integer]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("lattice entry exceeds 64 bits"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter().map(|r| to_vector(r)).collect()
    }

    #[test]
    fn lll_finds_short_vector() {
        let r = lll(m(&[&[1, 0, 0, 1345], &[0, 1, 0, 35], &[0, 0, 1, 154]]));
        let n0 = dot(&r.basis[0], &r.basis[0]);
        assert!(n0 < 150, "{:?}", r.basis);
        // determinant of the Gram matrix is preserved
        let orig = m(&[&[1, 0, 0, 1345], &[0, 1, 0, 35], &[0, 0, 1, 154]]);
        let gram = |b: &[Vector]| -> Integer {
            let g: Vec<Vec<Integer>> = b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect();
            det3(&g)
        };
        assert_eq!(gram(&orig), gram(&r.basis));
        assert_eq!(r.gram[3], gram(&orig));
    }

    fn det3(g: &[Vec<Integer>]) -> Integer {
        let t = |a: &Integer, b: &Integer, c: &Integer| Integer::from(a * b) * c;
        t(&g[0][0], &g[1][1], &g[2][2]) + t(&g[0][1], &g[1][2], &g[2][0]) + t(&g[0][2], &g[1][0], &g[2][1])
            - t(&g[0][2], &g[1][1], &g[2][0])
            - t(&g[0][0], &g[1][2], &g[2][1])
            - t(&g[0][1], &g[1][0], &g[2][2])
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&m(&[&[2, 4, 6], &[1, 1, 1]]));
        let b = hnf(&m(&[&[1, 1, 1], &[3, 5, 7]]));
        assert_eq!(a, b);
        assert_eq!(a, m(&[&[1, 1, 1], &[0, 2, 4]]));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = kernel(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &to_vector(&[1, 1, 1])), 0);
        }
        let (sat, comp) = saturate(&m(&[&[2, 2, 2]]), 3);
        assert_eq!(sat, m(&[&[1, 1, 1]]));
        assert_eq!(comp.len(), 2);
        assert!(apply(&comp, &to_vector(&[5, 5, 5])).iter().all(|x| *x == 0));
        assert!(apply(&comp, &to_vector(&[1, 0, 0])).iter().any(|x| *x != 0));
        let (sat, comp) = saturate(&[], 2);
        assert!(sat.is_empty());
        assert_eq!(comp.len(), 2);
        let (sat, comp) = saturate(&m(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(sat, m(&[&[1, 0], &[0, 1]]));
        assert!(comp.is_empty());
    }

    #[test]
    fn rational_coordinates() {
        let b = hnf(&m(&[&[2, 2, 0], &[0, 0, 4]]));
        let c = coordinates(&b, &to_vector(&[1, 1, 1])).unwrap();
        assert_eq!(c, vec![Rational::from((1, 2)), Rational::from((1, 4))]);
        assert!(coordinates(&b, &to_vector(&[1, 0, 0])).is_none());
    }
}
