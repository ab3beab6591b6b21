//! Homogeneous primitive elements.
//!
//! `Δ⁺` preserves length, so its kernel splits by grade. At grade `n` the
//! kernel is computed from the matrix whose column for a packed word `w`
//! holds the coordinates of `Δ⁺(w)` in the basis of tensor pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::delta_plus;
use crate::enumeration::generate_packed;
use crate::linalg::{kernel_basis, RationalMatrix};
use crate::linear::{Element, Tensor2};
use crate::par::Exec;
use crate::words::PackedWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimitiveError {
    #[error("primitive spaces are computed for grades n >= 1")]
    GradeZero,
    #[error("kernel vector {0} failed the primitivity check")]
    NotPrimitive(String),
}

/// The packed words of length `n`, in canonical order.
#[derive(Debug, Clone)]
pub struct GradeBasis {
    n: usize,
    words: Vec<PackedWord>,
    index: HashMap<PackedWord, usize>,
}

impl GradeBasis {
    pub fn grade(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[PackedWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &PackedWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Interprets a coordinate vector as an element.
    pub fn element(&self, coords: &[BigRational]) -> Element {
        self.words
            .iter()
            .zip(coords)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// Coordinates of a homogeneous element of this grade.
    pub fn coordinates(&self, e: &Element) -> Option<Vec<BigRational>> {
        let mut x = vec![BigRational::default(); self.len()];
        for (w, c) in e.iter() {
            x[self.index_of(w)?] = c.clone();
        }
        Some(x)
    }
}

pub fn grade_basis(n: usize) -> GradeBasis {
    let words: Vec<PackedWord> = generate_packed(n).collect();
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    GradeBasis { n, words, index }
}

/// `Δ⁺` restricted to one grade.
#[derive(Debug, Clone)]
pub struct DeltaPlusMatrix {
    pub basis: GradeBasis,
    /// Tensor pairs with a nonzero coefficient in some column, sorted.
    pub row_labels: Vec<(PackedWord, PackedWord)>,
    pub matrix: RationalMatrix,
}

impl DeltaPlusMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.n_cols()
    }
}

pub fn delta_plus_matrix(n: usize) -> DeltaPlusMatrix {
    delta_plus_matrix_with(n, Exec::default())
}

pub fn delta_plus_matrix_with(n: usize, exec: Exec) -> DeltaPlusMatrix {
    let basis = grade_basis(n);
    let columns: Vec<Tensor2> = exec.map(basis.words(), |w| delta_plus(&Element::basis(w.clone())));
    let labels: BTreeSet<&(PackedWord, PackedWord)> =
        columns.iter().flat_map(|t| t.keys()).collect();
    let row_labels: Vec<(PackedWord, PackedWord)> = labels.into_iter().cloned().collect();
    let row_of: BTreeMap<&(PackedWord, PackedWord), usize> =
        row_labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); row_labels.len()];
    for (col, t) in columns.iter().enumerate() {
        for (label, c) in t.iter() {
            rows[row_of[label]].push((col, c.clone()));
        }
    }
    let mut matrix = RationalMatrix::new(basis.len());
    for r in rows {
        matrix.push_row(r);
    }
    DeltaPlusMatrix {
        basis,
        row_labels,
        matrix,
    }
}

/// A basis of the primitive elements of one grade.
#[derive(Debug, Clone)]
pub struct PrimitiveBasis {
    pub n: usize,
    pub vectors: Vec<Element>,
    /// Shape and rank of the `Δ⁺` system the basis was solved from.
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl PrimitiveBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn primitive_basis(n: usize) -> Result<PrimitiveBasis, PrimitiveError> {
    primitive_basis_with(n, Exec::default())
}

/// Solves `Δ⁺ x = 0` at grade `n` and checks every solution directly
/// against `Δ⁺` before returning it.
pub fn primitive_basis_with(n: usize, exec: Exec) -> Result<PrimitiveBasis, PrimitiveError> {
    if n == 0 {
        return Err(PrimitiveError::GradeZero);
    }
    let system = delta_plus_matrix_with(n, exec);
    let kernel = kernel_basis(&system.matrix);
    let vectors: Vec<Element> = kernel.iter().map(|x| system.basis.element(x)).collect();
    let checks = exec.map(&vectors, verify_primitive);
    if let Some(i) = checks.iter().position(|ok| !ok) {
        return Err(PrimitiveError::NotPrimitive(vectors[i].to_string()));
    }
    Ok(PrimitiveBasis {
        n,
        rows: system.rows(),
        cols: system.cols(),
        rank: system.cols() - vectors.len(),
        vectors,
    })
}

/// True iff `Δ⁺(v) = 0`.
pub fn verify_primitive(v: &Element) -> bool {
    delta_plus(v).is_zero()
}
