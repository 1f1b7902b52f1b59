//! Exact simplicial homology and homological rainbow-simplex criteria for
//! vertex-colored simplicial complexes.
//!
//! Linear algebra is generic over [`Field`]; the concrete fields are GF(p)
//! ([`PrimeField`]) and ℚ ([`Rationals`]), named at runtime by [`FieldSpec`].
//! No floating point is used anywhere in the homology path.

pub mod chromatic;
pub mod complex;
pub mod field;
pub mod generators;
pub mod homology;
pub mod sparse;
pub mod subdivision;

pub use chromatic::{
    alexander_duality_audit, check_meshulam, check_theorem, chromatic_subcomplex, rainbow_simplices,
    validate_coloring, CheckReport, ChromaticError, Coloring, ColoringViolation, DualityAudit, DualityEntry,
    Evidence, HypothesisVerdict, Status, TheoremId,
};
pub use complex::{ComplexError, PseudomanifoldReport, Simplex, SimplicialComplex, VertexId};
pub use field::{Field, FieldError, FieldSpec, NumField, PrimeField, Rationals};
pub use generators::{generate, random_coloring, sperner_instance, ComplexName, NamedComplex, SpernerInstance};
pub use homology::{
    boundary_matrices_with, is_acyclic, reduced_betti, reduced_betti_degree, relative_betti, BettiVector,
    ChainComplexMatrices, HomologyError,
};
pub use sparse::{MatrixError, Reduction, SparseMatrix};
pub use subdivision::{
    barycentric_subdivision, derived_neighborhood, iterated_subdivision, supplement_complex, SubdivisionError,
    SubdivisionMap,
};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Sparse matrix over ℚ.
pub type RationalMatrix = SparseMatrix<Rational>;
/// Sparse matrix over GF(p), entries reduced into `0..p`.
pub type ModularMatrix = SparseMatrix<u32>;
/// Boundary operators over ℚ.
pub type RationalChainComplex = ChainComplexMatrices<Rationals>;
/// Boundary operators over GF(p).
pub type ModularChainComplex = ChainComplexMatrices<PrimeField>;
