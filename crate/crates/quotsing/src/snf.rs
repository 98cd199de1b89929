//! Integer Smith normal form with row-transform tracking.
//!
//! Only the row transform `U` is needed by the group code: for `U A V = D`
//! the map `w -> U w` carries lattice coordinates into the diagonalized
//! basis, and the column transform never has to be materialized.

pub type Mat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = egcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Smith normal form of `a` (destructive). Returns the diagonal
/// `d_0 | d_1 | ...` (nonnegative, length min(rows, cols)) and the
/// unimodular row transform `u` such that `u * a_original * v = diag(d)`
/// for some unimodular `v` that is not returned.
pub fn smith_normal_form(mut a: Mat) -> (Vec<i128>, Mat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut u = identity(rows);
    let rank_bound = rows.min(cols);

    let mut k = 0;
    while k < rank_bound {
        // Pivot: smallest nonzero magnitude in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        u.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }

        let mut clean = true;
        let p = a[k][k];
        for i in k + 1..rows {
            if a[i][k] != 0 {
                let q = a[i][k] / p;
                let (ak, uk) = (a[k].clone(), u[k].clone());
                for (e, &s) in a[i].iter_mut().zip(&ak) {
                    *e -= q * s;
                }
                for (e, &s) in u[i].iter_mut().zip(&uk) {
                    *e -= q * s;
                }
                if a[i][k] != 0 {
                    clean = false;
                }
            }
        }
        for j in k + 1..cols {
            if a[k][j] != 0 {
                let q = a[k][j] / p;
                for row in a.iter_mut() {
                    row[j] -= q * row[k];
                }
                if a[k][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            k += 1;
        }
    }

    // Nonnegative diagonal.
    for i in 0..rank_bound {
        if a[i][i] < 0 {
            for e in a[i].iter_mut() {
                *e = -*e;
            }
            for e in u[i].iter_mut() {
                *e = -*e;
            }
        }
    }

    // Divisibility chain, zeros last. Each 2x2 fix replaces diag(x, y) by
    // diag(gcd, lcm) through unimodular row/column operations.
    loop {
        let mut changed = false;
        for i in 0..rank_bound.saturating_sub(1) {
            let (x, y) = (a[i][i], a[i + 1][i + 1]);
            if x == 0 && y != 0 {
                a.swap(i, i + 1);
                u.swap(i, i + 1);
                for row in a.iter_mut() {
                    row.swap(i, i + 1);
                }
                changed = true;
            } else if x != 0 && y % x != 0 {
                let (g, s, t) = egcd(x, y);
                let l = x / g * y;
                // Row transform [[s, t], [-y/g, x/g]] applied to rows i, i+1.
                #[allow(clippy::needless_range_loop)]
                for j in 0..rows {
                    let (ri, rj) = (u[i][j], u[i + 1][j]);
                    u[i][j] = s * ri + t * rj;
                    u[i + 1][j] = (x / g) * rj - (y / g) * ri;
                }
                a[i][i] = g;
                a[i + 1][i + 1] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let diag = (0..rank_bound).map(|i| a[i][i]).collect();
    (diag, u)
}
