use crate::exactmath::modp;

/// Lower-triangular p-adic echelon form modulo p^{v+1} of the module spanned
/// by `gens` plus p^v e_k for every k. Columns are processed from last to
/// first; entry c of the result is (e_c, row) with row[c] = p^{e_c}, zeros
/// beyond c, and entries left of the diagonal reduced modulo their column's
/// diagonal. Exact whenever the module contains p^v Z^dim.
pub(crate) fn echelon(gens: &[Vec<i128>], dim: usize, p: i128, v: u32) -> Vec<(u32, Vec<i128>)> {
    let m = modp::pow(p, v + 1);
    let pv = modp::pow(p, v);
    let mut pool: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| modp::rem(x, m)).collect::<Vec<_>>())
        .filter(|g: &Vec<i128>| g.iter().any(|&x| x != 0))
        .collect();
    for k in 0..dim {
        let mut e = vec![0i128; dim];
        e[k] = pv;
        pool.push(e);
    }
    let mut pivots: Vec<(u32, Vec<i128>)> = vec![(0, Vec::new()); dim];
    for c in (0..dim).rev() {
        let (idx, val) = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r[c] != 0)
            .map(|(i, r)| (i, modp::val_capped(r[c], p, v + 1)))
            .min_by_key(|&(i, val)| (val, i))
            .expect("p^v e_c keeps every column nonzero");
        let mut row = pool.swap_remove(idx);
        let unit = row[c] / modp::pow(p, val);
        let u_inv = modp::inv(unit, m).expect("unit part is invertible");
        for x in row.iter_mut() {
            *x = *x * u_inv % m;
        }
        let d = row[c];
        for r in pool.iter_mut() {
            if r[c] != 0 {
                let q = r[c] / d;
                for j in 0..=c {
                    r[j] = modp::rem(r[j] - q * row[j], m);
                }
            }
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        pivots[c] = (val, row);
    }
    for r in 0..dim {
        for c in (0..r).rev() {
            let d = pivots[c].1[c];
            let q = pivots[r].1[c].div_euclid(d);
            if q != 0 {
                let rc = pivots[c].1.clone();
                let row = &mut pivots[r].1;
                for j in 0..=c {
                    row[j] = modp::rem(row[j] - q * rc[j], m);
                }
            }
        }
    }
    pivots
}

/// p-exponents of the Smith normal form of a rows x cols matrix, computed
/// modulo p^cap. Returns min(rows, cols) values sorted non-increasing; an
/// exponent >= cap is reported as cap.
pub fn snf_exponents(mat: &[Vec<i128>], p: i128, cap: u32) -> Vec<u32> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let k = rows.min(cols);
    if cap == 0 {
        return vec![0; k];
    }
    let m = modp::pow(p, cap);
    let mut a: Vec<Vec<i128>> = mat.iter().map(|r| r.iter().map(|&x| modp::rem(x, m)).collect()).collect();
    let mut out = Vec::with_capacity(k);
    for t in 0..k {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = modp::val_capped(x, p, cap);
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, bi, bj)) = best else {
            out.extend(std::iter::repeat(cap).take(k - t));
            break;
        };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let unit = a[t][t] / modp::pow(p, v);
        let u_inv = modp::inv(unit, m).expect("unit part is invertible");
        for x in a[t].iter_mut() {
            *x = *x * u_inv % m;
        }
        let d = a[t][t];
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let q = a[i][t] / d;
                for j in t..cols {
                    a[i][j] = modp::rem(a[i][j] - q * a[t][j], m);
                }
            }
        }
        for j in t + 1..cols {
            if a[t][j] != 0 {
                let q = a[t][j] / d;
                for row in a.iter_mut().skip(t) {
                    row[j] = modp::rem(row[j] - q * row[t], m);
                }
            }
        }
        out.push(v);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        assert_eq!(snf_exponents(&[vec![4, 0], vec![0, 1]], 2, 5), vec![2, 0]);
        assert_eq!(snf_exponents(&[vec![2, 4], vec![6, 8]], 2, 6), vec![2, 1]);
        assert_eq!(snf_exponents(&[vec![0, 0]], 3, 4), vec![4]);
        assert_eq!(snf_exponents(&[vec![9, 3, 0]], 3, 4), vec![1]);
    }

    #[test]
    fn echelon_example() {
        let piv = echelon(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2, 2, 3);
        assert_eq!(piv[0], (1, vec![2, 0]));
        assert_eq!(piv[1], (0, vec![1, 1]));
    }
}
