//! Built-in data used by tests, the CLI and the demo page.

use std::collections::BTreeMap;

use crate::exactalg::{Matrix, Scalar, Subspace};
use crate::filtration::DecFiltration;
use crate::hodge::{BilinearForm, HodgeDatum};
use crate::orbit::PrePLHDatum;

fn units(n: usize, idx: &[usize]) -> Subspace {
    Subspace::span(n, idx.iter().map(|&i| Subspace::unit_vector(n, i)).collect())
}

/// Rank 6, weight 0, two commuting nilpotents whose cone has a jump locus
/// along `a^2 = 2 b^2`.
pub mod kato {
    use super::*;

    /// `e3 -> e1, e4 -> e2, e5 -> e3, e6 -> e4`.
    pub fn n1() -> Matrix {
        let mut m = Matrix::zeros(6, 6);
        for (src, dst) in [(2, 0), (3, 1), (4, 2), (5, 3)] {
            m[(dst, src)] = Scalar::from_int(1);
        }
        m
    }

    /// `e3 -> e1+e2, e4 -> e1-e2, e5 -> e3+e4, e6 -> e3-e4`.
    pub fn n2() -> Matrix {
        let mut m = Matrix::zeros(6, 6);
        for (src, dst, v) in [(2, 0, 1), (2, 1, 1), (3, 0, 1), (3, 1, -1), (4, 2, 1), (4, 3, 1), (5, 2, 1), (5, 3, -1)] {
            m[(dst, src)] = Scalar::from_int(v);
        }
        m
    }

    /// `a N1 + b N2`.
    pub fn n_at(a: i64, b: i64) -> Matrix {
        n1().scale(&Scalar::from_int(a)).add(&n2().scale(&Scalar::from_int(b)))
    }

    pub fn form_matrix() -> Matrix {
        let mut m = Matrix::zeros(6, 6);
        for (i, j, v) in [(0, 4, 1), (4, 0, 1), (1, 5, 1), (5, 1, 1), (2, 2, -1), (3, 3, -1)] {
            m[(i, j)] = Scalar::from_int(v);
        }
        m
    }

    pub fn form() -> BilinearForm {
        BilinearForm::new(form_matrix(), 0).expect("symmetric nondegenerate")
    }

    /// `F^1 = <e5,e6>`, `F^0 = <e3..e6>`, `F^-1` everything.
    pub fn hodge_filtration() -> DecFiltration {
        let steps = BTreeMap::from([(-1, Subspace::full(6)), (0, units(6, &[2, 3, 4, 5])), (1, units(6, &[4, 5]))]);
        DecFiltration::from_steps(6, steps).expect("nested")
    }

    pub fn hodge_numbers() -> BTreeMap<(i64, i64), usize> {
        BTreeMap::from([((-1, 1), 2), ((0, 0), 2), ((1, -1), 2)])
    }

    fn with(nilpotents: Vec<Matrix>) -> PrePLHDatum {
        let names = ["a", "b"].iter().take(nilpotents.len()).map(|s| s.to_string()).collect();
        PrePLHDatum {
            rank: 6,
            weight: 0,
            hodge_numbers: hodge_numbers(),
            form: form_matrix(),
            filtration: hodge_filtration(),
            nilpotents,
            names,
        }
    }

    pub fn datum() -> PrePLHDatum {
        with(vec![n1(), n2()])
    }

    /// The cone spanned by `N1` and `3 N1 + N2`.
    pub fn subcone_datum() -> PrePLHDatum {
        with(vec![n1(), n_at(3, 1)])
    }

    pub fn ray_datum() -> PrePLHDatum {
        with(vec![n1()])
    }
}

/// Weight 1, rank 2, `S = [[0,1],[-1,0]]`, `F^1 = <e1 + τ e2>`.
pub mod elliptic {
    use super::*;

    pub fn form() -> BilinearForm {
        BilinearForm::new(Matrix::from_i64(&[&[0, 1], &[-1, 0]]), 1).expect("symplectic")
    }

    pub fn filtration(tau: Scalar) -> DecFiltration {
        let line = Subspace::span(2, vec![vec![Scalar::from_int(1), tau]]);
        DecFiltration::from_steps(2, BTreeMap::from([(0, Subspace::full(2)), (1, line)])).expect("nested")
    }

    pub fn datum(tau: Scalar) -> HodgeDatum {
        HodgeDatum { weight: 1, form: form(), filtration: filtration(tau) }
    }

    /// Constant family: a single zero nilpotent.
    pub fn pre_datum(tau: Scalar) -> PrePLHDatum {
        PrePLHDatum {
            rank: 2,
            weight: 1,
            hodge_numbers: BTreeMap::from([((1, 0), 1), ((0, 1), 1)]),
            form: form().matrix().clone(),
            filtration: filtration(tau),
            nilpotents: vec![Matrix::zeros(2, 2)],
            names: vec!["a".into()],
        }
    }
}

/// Single Jordan blocks with a polarized limit.
pub mod jordan {
    use super::*;

    /// Weight 1, `N e2 = -e1`, `F^1 = <e2>`.
    pub fn block2() -> PrePLHDatum {
        let steps = BTreeMap::from([(0, Subspace::full(2)), (1, units(2, &[1]))]);
        PrePLHDatum {
            rank: 2,
            weight: 1,
            hodge_numbers: BTreeMap::from([((1, 0), 1), ((0, 1), 1)]),
            form: Matrix::from_i64(&[&[0, 1], &[-1, 0]]),
            filtration: DecFiltration::from_steps(2, steps).expect("nested"),
            nilpotents: vec![Matrix::from_i64(&[&[0, -1], &[0, 0]])],
            names: vec!["a".into()],
        }
    }

    /// Weight 2, `e3 -> e2 -> e1`, `F^2 = <e3>`, `F^1 = <e2,e3>`.
    pub fn block3() -> PrePLHDatum {
        let steps = BTreeMap::from([(0, Subspace::full(3)), (1, units(3, &[1, 2])), (2, units(3, &[2]))]);
        PrePLHDatum {
            rank: 3,
            weight: 2,
            hodge_numbers: BTreeMap::from([((2, 0), 1), ((1, 1), 1), ((0, 2), 1)]),
            form: Matrix::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
            filtration: DecFiltration::from_steps(3, steps).expect("nested"),
            nilpotents: vec![Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])],
            names: vec!["a".into()],
        }
    }
}
