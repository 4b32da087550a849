//! Homomorphisms `N^r -> N^s` given by nonnegative integer matrices.
//!
//! Column `i` of the matrix is the image of `e_i` in the basis `f_1..f_s`.

use serde::Serialize;

use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonoidHom {
    rows: Vec<Vec<u64>>,
    r: usize,
}

impl MonoidHom {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, Error> {
        let r = rows.first().ok_or(Error::EmptyInput)?.len();
        if r == 0 {
            return Err(Error::EmptyInput);
        }
        let mut out = Vec::with_capacity(rows.len());
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != r {
                return Err(Error::DimensionMismatch(format!("row {j} has {} entries, expected {r}", row.len())));
            }
            let row: Result<Vec<u64>, _> = row
                .iter()
                .enumerate()
                .map(|(i, &x)| u64::try_from(x).map_err(|_| Error::Precondition(format!("entry ({j},{i}) = {x} is negative"))))
                .collect();
            out.push(row?);
        }
        Ok(MonoidHom { rows: out, r })
    }

    pub fn from_u64(rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        let r = rows.first().ok_or(Error::EmptyInput)?.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch("ragged or empty matrix".into()));
        }
        Ok(MonoidHom { rows, r })
    }

    /// Source rank.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Target rank.
    pub fn s(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn apply(&self, p: &[u64]) -> Vec<u64> {
        self.rows.iter().map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
    }

    fn zero_rows(&self) -> Vec<usize> {
        (0..self.s()).filter(|&j| self.rows[j].iter().all(|&x| x == 0)).collect()
    }
}

/// No `f_j` divides the images of two different basis vectors.
pub fn is_integral(h: &MonoidHom) -> bool {
    h.rows.iter().all(|row| row.iter().filter(|&&x| x > 0).count() <= 1)
}

/// A failure of the defining condition: `h(p1) + q1 = h(p2) + q2` with no
/// `p3, p4` in the box satisfying `p1 + p3 = p2 + p4` and `h(p3) <= q1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IntegralityWitness {
    pub p1: Vec<u64>,
    pub p2: Vec<u64>,
    pub q1: Vec<u64>,
    pub q2: Vec<u64>,
}

/// Searches the integrality condition exhaustively over the box `[0, bound]`.
///
/// Pairs `p1, p2` sharing a common part reduce to the pair with it removed,
/// and a larger `q1` only enlarges the set of admissible `p3`, so it is
/// enough to try disjointly supported pairs with the least admissible `q1`.
pub fn brute_force_integral(h: &MonoidHom, bound: u64) -> Result<Option<IntegralityWitness>, Error> {
    if bound == 0 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    for (p1, p2) in disjoint_pairs(h.r(), bound) {
        let (h1, h2) = (h.apply(&p1), h.apply(&p2));
        let q1: Vec<u64> = h1.iter().zip(&h2).map(|(a, b)| b.saturating_sub(*a)).collect();
        let q2: Vec<u64> = h1.iter().zip(&h2).zip(&q1).map(|((a, b), q)| a + q - b).collect();
        if q1.iter().chain(&q2).any(|&x| x > bound) {
            continue;
        }
        if !has_completion(h, &p1, &p2, &q1, bound) {
            return Ok(Some(IntegralityWitness { p1, p2, q1, q2 }));
        }
    }
    Ok(None)
}

/// Direct witness for a non-integral `h`. If row `j` is positive at columns
/// `i < k`, take `p1 = e_i`, `p2 = e_k` and the least `q1, q2`: any admissible
/// `p3` has `p3_k >= 1`, so `h(p3)_j >= h_jk > q1_j`.
pub fn integrality_witness(h: &MonoidHom) -> Option<IntegralityWitness> {
    let row = h.rows.iter().find(|row| row.iter().filter(|&&x| x > 0).count() > 1)?;
    let mut cols = row.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i);
    let (i, k) = (cols.next()?, cols.next()?);
    let unit = |c: usize| (0..h.r()).map(|t| u64::from(t == c)).collect::<Vec<u64>>();
    let (p1, p2) = (unit(i), unit(k));
    let (h1, h2) = (h.apply(&p1), h.apply(&p2));
    let q1: Vec<u64> = h1.iter().zip(&h2).map(|(a, b)| b.saturating_sub(*a)).collect();
    let q2: Vec<u64> = h1.iter().zip(&h2).zip(&q1).map(|((a, b), q)| a + q - b).collect();
    Some(IntegralityWitness { p1, p2, q1, q2 })
}

/// Rechecks a witness: the equation holds and no `p3` in `[0, bound]^r` completes it.
pub fn witness_holds(h: &MonoidHom, w: &IntegralityWitness, bound: u64) -> bool {
    let dims_ok = w.p1.len() == h.r() && w.p2.len() == h.r() && w.q1.len() == h.s() && w.q2.len() == h.s();
    if !dims_ok {
        return false;
    }
    let lhs: Vec<u64> = h.apply(&w.p1).iter().zip(&w.q1).map(|(a, b)| a + b).collect();
    let rhs: Vec<u64> = h.apply(&w.p2).iter().zip(&w.q2).map(|(a, b)| a + b).collect();
    lhs == rhs && !has_completion(h, &w.p1, &w.p2, &w.q1, bound)
}

/// Pairs in `[0, bound]^r` whose supports are disjoint.
fn disjoint_pairs(r: usize, bound: u64) -> impl Iterator<Item = (Vec<u64>, Vec<u64>)> {
    // Per coordinate: 0 means (0,0), v in 1..=bound means (v,0), bound+v means (0,v).
    boxed(r, 2 * bound).map(move |code| {
        let split = |c: u64| if c <= bound { (c, 0) } else { (0, c - bound) };
        code.iter().map(|&c| split(c)).unzip()
    })
}

fn has_completion(h: &MonoidHom, p1: &[u64], p2: &[u64], q1: &[u64], bound: u64) -> bool {
    let fits = |p3: &[u64]| {
        let p4_ok = p1.iter().zip(p2).zip(p3).all(|((a, b), c)| a + c >= *b && a + c - b <= bound);
        p4_ok && h.apply(p3).iter().zip(q1).all(|(x, q)| x <= q)
    };
    fits(p2) || boxed(h.r(), bound).any(|p3| fits(&p3))
}

/// All vectors in `[0, bound]^r`, last coordinate fastest.
fn boxed(r: usize, bound: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut cur = Some(vec![0u64; r]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = r;
        cur = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < bound {
                next[i] += 1;
                break Some(next);
            }
            next[i] = 0;
        };
        Some(out)
    })
}

/// One factor `N -> N^{s(i)}`: `e_i` and the rows where it is positive.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Block {
    pub column: usize,
    pub rows: Vec<usize>,
    pub values: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Factorization {
    pub blocks: Vec<Block>,
    pub zero_rows: Vec<usize>,
    pub r: usize,
}

impl Factorization {
    /// Order of the original rows in [`reassemble`]'s output.
    pub fn row_order(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.rows.iter().copied()).chain(self.zero_rows.iter().copied()).collect()
    }
}

pub fn factorize(h: &MonoidHom) -> Result<Factorization, Error> {
    if !is_integral(h) {
        return Err(Error::NotIntegral);
    }
    let mut blocks: Vec<Block> = (0..h.r()).map(|column| Block { column, rows: Vec::new(), values: Vec::new() }).collect();
    for (j, row) in h.rows.iter().enumerate() {
        if let Some((i, &v)) = row.iter().enumerate().find(|(_, &x)| x > 0) {
            blocks[i].rows.push(j);
            blocks[i].values.push(v);
        }
    }
    Ok(Factorization { blocks, zero_rows: h.zero_rows(), r: h.r() })
}

/// The block-diagonal matrix of the factorization, rows in [`Factorization::row_order`].
pub fn reassemble(f: &Factorization) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for b in &f.blocks {
        for &v in &b.values {
            let mut row = vec![0; f.r];
            row[b.column] = v;
            out.push(row);
        }
    }
    out.extend(f.zero_rows.iter().map(|_| vec![0; f.r]));
    out
}

/// A product of diagonal maps `1 -> (1, ..., 1)`.
///
/// Zero rows are rejected; zero columns (empty diagonal factors) are allowed.
pub fn is_semistable_local(h: &MonoidHom) -> bool {
    is_integral(h) && h.rows.iter().all(|row| row.iter().all(|&x| x <= 1) && row.contains(&1))
}

/// The quotient of `N^s` by the image of `h` is a group. Only decided for
/// integral `h`.
pub fn is_vertical(h: &MonoidHom) -> Result<bool, Error> {
    if !is_integral(h) {
        return Err(Error::NotIntegral);
    }
    Ok(h.zero_rows().is_empty())
}

/// For each `f_j`, a pair `(p, p')` in the box with `h(p') - h(p) - f_j >= 0`,
/// which makes `f_j` invertible in the quotient.
pub fn brute_force_vertical(h: &MonoidHom, bound: u64) -> Vec<Option<(Vec<u64>, Vec<u64>)>> {
    (0..h.s())
        .map(|j| {
            boxed(h.r(), bound).find_map(|p| {
                let hp = h.apply(&p);
                boxed(h.r(), bound).find_map(|p2| {
                    let hp2 = h.apply(&p2);
                    let ok = (0..h.s()).all(|k| hp2[k] >= hp[k] + u64::from(k == j));
                    ok.then(|| (p.clone(), p2))
                })
            })
        })
        .collect()
}
