//! Integer linear algebra: Smith normal form, Diophantine systems, and
//! lattice points in boxes.

use crate::error::{Error, Result};

type Mat = Vec<Vec<i128>>;

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Vec<i128>,
    pub u: Mat,
    pub v: Mat,
    pub rank: usize,
}

fn row_combine(m: &mut Mat, dst: usize, src: usize, k: i128) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for j in 0..m[dst].len() {
        m[dst][j] = ck(m[dst][j].checked_sub(ck(k.checked_mul(m[src][j]))?))?;
    }
    Ok(())
}

fn col_combine(m: &mut Mat, dst: usize, src: usize, k: i128) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        row[dst] = ck(row[dst].checked_sub(ck(k.checked_mul(row[src]))?))?;
    }
    Ok(())
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(m: &mut Mat, r: usize) {
    m[r].iter_mut().for_each(|x| *x = -*x);
}

/// Smith normal form of a `rows × cols` integer matrix.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::LengthMismatch {
            expected: cols,
            found: a.iter().map(Vec::len).find(|&l| l != cols).unwrap(),
        });
    }
    let mut m: Mat = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].unsigned_abs())
        else {
            break;
        };
        m.swap(t, pr);
        u.swap(t, pr);
        swap_cols(&mut m, t, pc);
        swap_cols(&mut v, t, pc);
        let mut dirty = false;
        for i in t + 1..rows {
            let k = m[i][t] / m[t][t];
            row_combine(&mut m, i, t, k)?;
            row_combine(&mut u, i, t, k)?;
            dirty |= m[i][t] != 0;
        }
        for j in t + 1..cols {
            let k = m[t][j] / m[t][t];
            col_combine(&mut m, j, t, k)?;
            col_combine(&mut v, j, t, k)?;
            dirty |= m[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // Divisibility: fold an offending row into row t and redo the pivot.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0)) {
            row_combine(&mut m, t, i, -1)?;
            row_combine(&mut u, t, i, -1)?;
            continue;
        }
        if m[t][t] < 0 {
            negate_row(&mut m, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let d = (0..rows.min(cols)).map(|i| m[i][i]).collect::<Vec<_>>();
    let rank = d.iter().take_while(|&&x| x != 0).count();
    Ok(SmithForm { d, u, v, rank })
}

/// All integer solutions of `B·m = target`: `particular + Σ z_i kernel_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// Solves `B·m = target` over the integers, or returns `None` if infeasible.
///
/// `b` is `k × ℓ`; an empty `b` must come with an empty target and `ell`
/// gives the number of unknowns.
pub fn solve_integer_system(b: &[Vec<i64>], target: &[i64], ell: usize) -> Result<Option<IntegerSolution>> {
    if b.len() != target.len() {
        return Err(Error::LengthMismatch { expected: b.len(), found: target.len() });
    }
    if let Some(bad) = b.iter().find(|r| r.len() != ell) {
        return Err(Error::LengthMismatch { expected: ell, found: bad.len() });
    }
    if b.is_empty() {
        let kernel = (0..ell).map(|i| (0..ell).map(|j| i64::from(i == j)).collect()).collect();
        return Ok(Some(IntegerSolution { particular: vec![0; ell], kernel }));
    }
    let snf = smith_normal_form(b)?;
    // D y = U t, m = V y.
    let mut ut = vec![0i128; b.len()];
    for (i, row) in snf.u.iter().enumerate() {
        for (j, &uij) in row.iter().enumerate() {
            ut[i] = ck(ut[i].checked_add(ck(uij.checked_mul(i128::from(target[j])))?))?;
        }
    }
    let mut y = vec![0i128; ell];
    for i in 0..b.len() {
        if i < snf.rank {
            if ut[i] % snf.d[i] != 0 {
                return Ok(None);
            }
            y[i] = ut[i] / snf.d[i];
        } else if ut[i] != 0 {
            return Ok(None);
        }
    }
    let mut particular = vec![0i64; ell];
    for (r, p) in particular.iter_mut().enumerate() {
        let mut acc = 0i128;
        for (c, &yc) in y.iter().enumerate() {
            acc = ck(acc.checked_add(ck(snf.v[r][c].checked_mul(yc))?))?;
        }
        *p = to_i64(acc)?;
    }
    let kernel = (snf.rank..ell)
        .map(|c| (0..ell).map(|r| to_i64(snf.v[r][c])).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(IntegerSolution { particular, kernel }))
}

/// An echelon basis of the lattice spanned by `generators`: each vector's first
/// nonzero entry (its pivot) is positive and sits strictly right of the
/// previous vector's pivot.
pub fn echelon_basis(generators: &[Vec<i64>]) -> Result<Vec<Vec<i128>>> {
    let dim = generators.first().map_or(0, Vec::len);
    let mut rows: Mat = generators.iter().map(|g| g.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut basis = Vec::new();
    for col in 0..dim {
        // Euclid on column `col` among the remaining rows.
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].unsigned_abs());
            let p = nz[0];
            for &i in &nz[1..] {
                let k = rows[i][col] / rows[p][col];
                row_combine(&mut rows, i, p, k)?;
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.swap_remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(r);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    Ok(basis)
}

fn pivot(v: &[i128]) -> usize {
    v.iter().position(|&x| x != 0).expect("nonzero basis vector")
}

/// The lexicographically smallest point of `offset + L` inside the box
/// `lo ≤ x ≤ hi`, where `L` has the given echelon basis.
pub fn lex_first_in_box(offset: &[i64], basis: &[Vec<i128>], lo: &[i64], hi: &[i64]) -> Result<Option<Vec<i64>>> {
    let cur: Vec<i128> = offset.iter().map(|&x| i128::from(x)).collect();
    let found = lex_dfs(0, 0, cur, basis, lo, hi)?;
    found.map(|v| v.into_iter().map(to_i64).collect()).transpose()
}

fn lex_dfs(
    coord: usize,
    next: usize,
    cur: Vec<i128>,
    basis: &[Vec<i128>],
    lo: &[i64],
    hi: &[i64],
) -> Result<Option<Vec<i128>>> {
    if coord == cur.len() {
        return Ok(Some(cur));
    }
    let (l, h) = (i128::from(lo[coord]), i128::from(hi[coord]));
    if next < basis.len() && pivot(&basis[next]) == coord {
        let step = basis[next][coord];
        let zmin = (l - cur[coord]).div_euclid(step) + i128::from((l - cur[coord]).rem_euclid(step) != 0);
        let zmax = (h - cur[coord]).div_euclid(step);
        for z in zmin..=zmax {
            let mut cand = cur.clone();
            for (c, b) in cand.iter_mut().zip(&basis[next]) {
                *c = ck(c.checked_add(ck(b.checked_mul(z))?))?;
            }
            if let Some(found) = lex_dfs(coord + 1, next + 1, cand, basis, lo, hi)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    } else if (l..=h).contains(&cur[coord]) {
        lex_dfs(coord + 1, next, cur, basis, lo, hi)
    } else {
        Ok(None)
    }
}

/// Every `m ∈ [−radius, radius]^ℓ` with `lo ≤ offset + B·m ≤ hi`, in
/// lexicographic order of `m`. `b` is `k × ℓ`.
pub fn box_solutions(b: &[Vec<i64>], offset: &[i64], lo: &[i64], hi: &[i64], radius: i64) -> Vec<Vec<i64>> {
    let ell = b.first().map_or(0, Vec::len);
    // tail[j][i] = Σ_{j' ≥ j} |B_{i j'}|: how far the undecided unknowns can move row i.
    let mut tail = vec![vec![0i128; b.len()]; ell + 1];
    for j in (0..ell).rev() {
        for i in 0..b.len() {
            tail[j][i] = tail[j + 1][i] + i128::from(b[i][j].abs());
        }
    }
    let mut out = Vec::new();
    let mut m = vec![0i64; ell];
    let acc: Vec<i128> = offset.iter().map(|&x| i128::from(x)).collect();
    box_dfs(0, &mut m, acc, b, lo, hi, radius, &tail, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn box_dfs(
    j: usize,
    m: &mut Vec<i64>,
    acc: Vec<i128>,
    b: &[Vec<i64>],
    lo: &[i64],
    hi: &[i64],
    radius: i64,
    tail: &[Vec<i128>],
    out: &mut Vec<Vec<i64>>,
) {
    let r = i128::from(radius);
    let reachable = acc.iter().enumerate().all(|(i, &a)| {
        let slack = tail[j][i] * r;
        a + slack >= i128::from(lo[i]) && a - slack <= i128::from(hi[i])
    });
    if !reachable {
        return;
    }
    if j == m.len() {
        out.push(m.clone());
        return;
    }
    for x in -radius..=radius {
        m[j] = x;
        let next: Vec<i128> = acc.iter().enumerate().map(|(i, &a)| a + i128::from(b[i][j]) * i128::from(x)).collect();
        box_dfs(j + 1, m, next, b, lo, hi, radius, tail, out);
    }
    m[j] = 0;
}

pub fn mat_vec(b: &[Vec<i64>], m: &[i64]) -> Vec<i64> {
    b.iter().map(|row| row.iter().zip(m).map(|(x, y)| x * y).sum()).collect()
}
