use crate::linalg::sparse::SparseVec;
use crate::scalar::Field;

/// Sparse reduced row echelon form of the given rows over `ncols` columns.
/// Returns `(pivot, row)` sorted by pivot; each row is 1 at its pivot and 0
/// at every other pivot.
pub(crate) fn rref_rows<F: Field>(
    ncols: usize,
    rows: impl IntoIterator<Item = SparseVec<F>>,
) -> Vec<(usize, SparseVec<F>)> {
    let mut pivot_rows: Vec<Option<SparseVec<F>>> = vec![None; ncols];
    for mut r in rows {
        while let Some(lead) = r.first_index() {
            match &pivot_rows[lead] {
                Some(p) => {
                    let c = -r.get(lead);
                    r = r.add_scaled(p, &c);
                }
                None => {
                    let inv = r.get(lead).recip();
                    pivot_rows[lead] = Some(r.scale(&inv));
                    break;
                }
            }
        }
    }
    // back substitution, highest pivot first
    for p in (0..ncols).rev() {
        let Some(row) = pivot_rows[p].take() else { continue };
        let mut out = row.clone();
        for (q, v) in row.iter() {
            if *q == p {
                continue;
            }
            if let Some(other) = &pivot_rows[*q] {
                out = out.add_scaled(other, &-v.clone());
            }
        }
        pivot_rows[p] = Some(out);
    }
    pivot_rows.into_iter().enumerate().filter_map(|(p, r)| r.map(|r| (p, r))).collect()
}

/// Kernel basis from a reduced echelon form: one vector per free column,
/// 1 there and 0 at the other free columns.
pub(crate) fn kernel_from_rref<F: Field>(ncols: usize, rref: &[(usize, SparseVec<F>)]) -> Vec<(usize, SparseVec<F>)> {
    let mut is_pivot = vec![false; ncols];
    for (p, _) in rref {
        is_pivot[*p] = true;
    }
    let mut per_free: Vec<Vec<(usize, F)>> = vec![Vec::new(); ncols];
    for (p, row) in rref {
        for (j, v) in row.iter() {
            if *j != *p {
                per_free[*j].push((*p, -v.clone()));
            }
        }
    }
    (0..ncols)
        .filter(|f| !is_pivot[*f])
        .map(|f| {
            let mut pairs = std::mem::take(&mut per_free[f]);
            pairs.push((f, F::one()));
            (f, SparseVec::from_pairs(pairs))
        })
        .collect()
}
