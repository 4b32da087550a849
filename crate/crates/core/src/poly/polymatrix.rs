use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::Poly;
use crate::exactalg::Matrix;
use crate::Error;

/// Matrix with polynomial entries, all in the same variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Vec<String>,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "PolyMatrix entry count");
        let vars = entries.first().map(|p| p.vars().to_vec()).unwrap_or_default();
        assert!(entries.iter().all(|p| p.vars() == vars.as_slice()), "PolyMatrix variable lists differ");
        PolyMatrix { rows, cols, vars, entries }
    }

    fn rational_entry(m: &Matrix, i: usize, j: usize) -> Result<BigRational, Error> {
        let s = &m[(i, j)];
        if !s.is_real() {
            return Err(Error::Precondition("symbolic matrices need rational entries".into()));
        }
        Ok(s.re.clone())
    }

    /// A rational matrix as a constant polynomial matrix.
    pub fn constant(vars: &[String], m: &Matrix) -> Result<Self, Error> {
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                entries.push(Poly::constant(vars, Self::rational_entry(m, i, j)?));
            }
        }
        Ok(PolyMatrix { rows: m.rows(), cols: m.cols(), vars: vars.to_vec(), entries })
    }

    /// `sum_i vars[i] * mats[i]`.
    pub fn linear_combination(vars: &[String], mats: &[Matrix]) -> Result<Self, Error> {
        let first = mats.first().ok_or(Error::EmptyInput)?;
        if mats.len() > vars.len() {
            return Err(Error::DimensionMismatch(format!("{} matrices for {} variables", mats.len(), vars.len())));
        }
        let (r, c) = (first.rows(), first.cols());
        let mut out = PolyMatrix { rows: r, cols: c, vars: vars.to_vec(), entries: vec![Poly::zero(vars); r * c] };
        for (k, m) in mats.iter().enumerate() {
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::DimensionMismatch("generator shapes differ".into()));
            }
            let x = Poly::var(vars, k);
            for i in 0..r {
                for j in 0..c {
                    let a = Self::rational_entry(m, i, j)?;
                    if !a.is_zero() {
                        let e = &out.entries[i * c + j] + &x.scale(&a);
                        out.entries[i * c + j] = e;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows);
        let mut entries = vec![Poly::zero(&self.vars); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        entries[i * o.cols + j] = &entries[i * o.cols + j] + &(a * b);
                    }
                }
            }
        }
        PolyMatrix { rows: self.rows, cols: o.cols, vars: self.vars.clone(), entries }
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = PolyMatrix::constant(&self.vars, &Matrix::identity(self.rows)).expect("rational identity");
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).eval(point).into();
            }
        }
        m
    }

    pub fn substitute(&self, var: usize, value: &BigRational) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|p| p.substitute(var, value)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// All `k x k` minors, ordered by (row subset, column subset) lexicographically.
    pub fn minors(&self, k: usize) -> Result<Vec<Poly>, Error> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorSizeOutOfRange { k, rows: self.rows, cols: self.cols });
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            let mut memo = HashMap::new();
            for cs in &col_sets {
                let mask = cs.iter().fold(0u64, |m, &c| m | (1 << c));
                out.push(self.det_rows(rs, 0, mask, &mut memo));
            }
        }
        Ok(out)
    }

    /// Laplace expansion along `rows[depth]`, memoized on the remaining columns.
    fn det_rows(&self, rows: &[usize], depth: usize, cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if depth == rows.len() {
            return Poly::one(&self.vars);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let r = rows[depth];
        let mut acc = Poly::zero(&self.vars);
        let mut sign_pos = true;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let a = self.get(r, c);
            if !a.is_zero() {
                let sub = self.det_rows(rows, depth + 1, cols & !(1 << c), memo);
                let t = a * &sub;
                acc = if sign_pos { &acc + &t } else { &acc - &t };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Rank over the field of rational functions: largest size with a nonzero minor.
    pub fn generic_rank(&self) -> usize {
        (1..=self.rows.min(self.cols))
            .rev()
            .find(|&k| self.minors(k).expect("k in range").iter().any(|p| !p.is_zero()))
            .unwrap_or(0)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn determinant_matches_numeric() {
        let vars = vec!["a".to_string()];
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let pm = PolyMatrix::constant(&vars, &m).unwrap();
        let d = pm.minors(3).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].eval(&[int(0)]), m.determinant().re);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn generic_rank_of_linear_pencil() {
        let vars = vec!["a".to_string(), "b".to_string()];
        let m = PolyMatrix::linear_combination(&vars, &[Matrix::identity(2), Matrix::from_i64(&[&[0, 1], &[0, 0]])]).unwrap();
        assert_eq!(m.generic_rank(), 2);
        assert_eq!(m.eval(&[int(0), int(5)]).rank(), 1);
    }
}
