//! Partitions, standard tableaux and the Young symmetrizer machinery.
//!
//! Cells are `(row, column)`, both 1-based, with row 1 the longest row.
//! Entries increase along rows and from row `i` to row `i + 1` within a
//! column ("up the columns" when row 1 is drawn at the bottom).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{factorial, ratio, BigRational, MultiPoly};
use crate::symgroup::{bracket, GroupAlgebraElem, Perm};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&r| r >= c).count()).collect())
    }

    /// `Σ (column − row)` over the cells.
    pub fn content(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(r, &len)| (1..=len).map(|c| c as i64 - (r as i64 + 1)).sum::<i64>())
            .sum()
    }

    /// Number of standard tableaux by the hook-length formula.
    pub fn hook_length_count(&self) -> u64 {
        let conj = self.conjugate();
        let n = self.size() as u64;
        let mut hooks = num_bigint::BigInt::from(1);
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = conj.0[c] - r - 1;
                hooks *= arm + leg + 1;
            }
        }
        u64::try_from(factorial(n) / hooks).expect("f_lambda fits in u64")
    }

    /// `f_λ` by enumeration, cross-checked against the hook-length formula.
    pub fn f_lambda(&self) -> Result<u64> {
        let counted = standard_tableaux(self).len() as u64;
        let hooks = self.hook_length_count();
        if counted != hooks {
            return Err(Error::Internal(format!(
                "f_lambda mismatch for {:?}: enumeration {counted}, hook formula {hooks}",
                self.0
            )));
        }
        Ok(counted)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A filling of a Young diagram, stored row by row (row 1 first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr")]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Builds and validates a standard tableau.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let t = Tableau { shape, rows };
        t.check_standard()?;
        Ok(t)
    }

    fn check_standard(&self) -> Result<()> {
        let n = self.size();
        let mut seen = vec![false; n];
        for &v in self.rows.iter().flatten() {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidTableau(format!(
                    "entries of {:?} are not a bijection onto 1..={n}",
                    self.rows
                )));
            }
            seen[v - 1] = true;
        }
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTableau(format!("row {row:?} is not increasing")));
            }
        }
        for pair in self.rows.windows(2) {
            if pair[1].iter().zip(&pair[0]).any(|(up, down)| up <= down) {
                return Err(Error::InvalidTableau(format!(
                    "columns of {:?} are not increasing",
                    self.rows
                )));
            }
        }
        Ok(())
    }

    /// The hook tableau of shape `[n−1, 1]` whose second row holds `j`.
    pub fn hook(n: usize, j: usize) -> Result<Self> {
        if n < 2 || j < 2 || j > n {
            return Err(Error::InvalidTableau(format!(
                "hook tableau needs n ≥ 2 and 2 ≤ j ≤ n, got n={n}, j={j}"
            )));
        }
        let first: Vec<usize> = (1..=n).filter(|&v| v != j).collect();
        Tableau::new(vec![first, vec![j]])
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entry at 1-based `(row, column)`.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row.checked_sub(1)?)?.get(col.checked_sub(1)?).copied()
    }

    /// Column `c` (1-based), listed from row 1 upward.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows
            .iter()
            .filter_map(|r| r.get(c.wrapping_sub(1)).copied())
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (1..=width).map(|c| self.column(c)).collect()
    }

    /// Reading word: rows from the top row down to row 1, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Cocharge of the reading word: `1` gets index 0 and the index steps up
    /// by one whenever `k+1` sits to the left of `k`.
    pub fn cocharge(&self) -> u64 {
        let word = self.reading_word();
        let n = word.len();
        let mut pos = vec![0; n + 1];
        for (p, &v) in word.iter().enumerate() {
            pos[v] = p;
        }
        let mut index = 0u64;
        let mut total = 0u64;
        for k in 1..n {
            if pos[k + 1] < pos[k] {
                index += 1;
            }
            total += index;
        }
        total
    }

    /// `P(T) = ∏ [R_i]`.
    pub fn row_symmetrizer(&self) -> Result<GroupAlgebraElem> {
        let n = self.size();
        self.rows.iter().try_fold(GroupAlgebraElem::identity(n), |acc, row| {
            acc.mul(&bracket(n, row, false)?)
        })
    }

    /// `N(T) = ∏ [C_i]′`.
    pub fn col_antisymmetrizer(&self) -> Result<GroupAlgebraElem> {
        let n = self.size();
        self.columns().iter().try_fold(GroupAlgebraElem::identity(n), |acc, col| {
            acc.mul(&bracket(n, col, true)?)
        })
    }

    /// `γ_T = f_λ N(T) P(T) / n!`.
    pub fn gamma(&self) -> Result<GroupAlgebraElem> {
        let n = self.size();
        let f = self.shape.f_lambda()?;
        let scale = BigRational::new(f.into(), factorial(n as u64));
        Ok(self
            .col_antisymmetrizer()?
            .mul(&self.row_symmetrizer()?)?
            .scale(&scale))
    }

    /// `V_T`: the product over same-column pairs of `(x_upper − x_lower)`,
    /// where `upper` lies in the row further from row 1.
    pub fn v_t(&self) -> Result<MultiPoly> {
        let n = self.size();
        let mut p = MultiPoly::one(n);
        for col in self.columns() {
            for a in 0..col.len() {
                for b in (a + 1)..col.len() {
                    p = &p * &MultiPoly::binomial(n, col[b], col[a])?;
                }
            }
        }
        Ok(p)
    }

    /// Same-column transpositions `C(T)` as `(a, b)` with `a < b`.
    pub fn column_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for col in self.columns() {
            for a in 0..col.len() {
                for b in (a + 1)..col.len() {
                    out.push((col[a].min(col[b]), col[a].max(col[b])));
                }
            }
        }
        out
    }

    fn check_alpha_args(&self, i: usize, cell: (usize, usize)) -> Result<usize> {
        let (k, j) = cell;
        let width = self.rows.first().map_or(0, Vec::len);
        if i == 0 || i > width {
            return Err(Error::InvalidCell(format!("column {i} not in tableau")));
        }
        if j <= i {
            return Err(Error::InvalidCell(format!(
                "cell column {j} must lie strictly right of column {i}"
            )));
        }
        self.entry(k, j)
            .ok_or_else(|| Error::InvalidCell(format!("cell ({k},{j}) not in tableau")))
    }

    /// `α_{i,k_j} = Σ_{t ∈ C_i} (t, T(k,j))`.
    pub fn alpha(&self, i: usize, cell: (usize, usize)) -> Result<GroupAlgebraElem> {
        let target = self.check_alpha_args(i, cell)?;
        let n = self.size();
        let mut e = GroupAlgebraElem::zero(n);
        for t in self.column(i) {
            e.add_term(Perm::transposition(n, t, target)?, BigRational::from_integer(1.into()));
        }
        Ok(e)
    }

    /// `[C_i ∪ {T(k,j)}]′`.
    pub fn col_union_antisym(&self, i: usize, cell: (usize, usize)) -> Result<GroupAlgebraElem> {
        let target = self.check_alpha_args(i, cell)?;
        let mut set = self.column(i);
        set.push(target);
        bracket(self.size(), &set, true)
    }

    /// Every valid `(column i, cell (k, j))` argument pair for [`Tableau::alpha`].
    pub fn alpha_arguments(&self) -> Vec<(usize, (usize, usize))> {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for i in 1..=width {
            for (r, row) in self.rows.iter().enumerate() {
                for j in (i + 1)..=row.len() {
                    out.push((i, (r + 1, j)));
                }
            }
        }
        out
    }
}

#[derive(Deserialize)]
struct TableauRepr {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = Error;
    fn try_from(r: TableauRepr) -> Result<Self> {
        let t = Tableau::new(r.rows)?;
        if t.shape.parts() != r.shape.as_slice() {
            return Err(Error::InvalidTableau(format!(
                "declared shape {:?} does not match rows",
                r.shape
            )));
        }
        Ok(t)
    }
}

/// All standard tableaux of the given shape, sorted by row-reading order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let n = shape.size();
    let parts = shape.parts().to_vec();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    fn rec(v: usize, n: usize, parts: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..parts.len() {
            let len = rows[r].len();
            let fits = len < parts[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(v);
                rec(v + 1, n, parts, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(1, n, &parts, &mut rows, &mut raw);
    raw.sort();
    for r in raw {
        out.push(Tableau {
            shape: shape.clone(),
            rows: r,
        });
    }
    out
}

/// All standard tableaux with `n` boxes, grouped by shape in [`partitions`] order.
pub fn all_standard_tableaux(n: usize) -> Vec<Tableau> {
    partitions(n).iter().flat_map(standard_tableaux).collect()
}

/// `f_λ / n!` as a rational, exposed for diagnostics.
pub fn gamma_scalar(shape: &Partition) -> Result<BigRational> {
    let f = shape.f_lambda()?;
    Ok(ratio(f as i64, 1) / BigRational::from_integer(factorial(shape.size() as u64)))
}
