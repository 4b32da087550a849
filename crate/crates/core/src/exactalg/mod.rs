//! Exact linear algebra over Q and Q(i).

mod matrix;
pub mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{int, parse_rational, rat, Scalar};
pub use subspace::{combine, Quotient, Subspace};

pub type Vector = Vec<Scalar>;

/// Unique reduced row-echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

/// Exact kernel and column space.
pub fn kernel_image(m: &Matrix) -> (Subspace, Subspace) {
    m.kernel_image()
}

/// Sum, intersection, containment (`a ⊆ b`) and equality of two subspaces.
#[derive(Clone, Debug)]
pub struct SubspaceRelations {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub a_in_b: bool,
    pub b_in_a: bool,
    pub equal: bool,
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceRelations, crate::Error> {
    let sum = a.try_sum(b)?;
    let intersection = a.intersection(b);
    Ok(SubspaceRelations {
        a_in_b: b.contains_subspace(a),
        b_in_a: a.contains_subspace(b),
        equal: a == b,
        sum,
        intersection,
    })
}

pub fn vector_from_i64(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}
