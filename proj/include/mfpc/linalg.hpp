#ifndef MFPC_LINALG_HPP
#define MFPC_LINALG_HPP

#include <vector>

#include "mfpc/types.hpp"

namespace mfpc {

/// Symmetric PSD matrix produced by scatter accumulation.
struct ScatterMatrix {
    Matrix S;

    int dim() const { return static_cast<int>(S.rows()); }
    // symmetric within 1e-12 relative, eigenvalues >= -1e-10 * trace
    bool well_formed() const;
};

// sum over members of (x_j - center)(x_j - center)^T
ScatterMatrix scatter_matrix(const Matrix& X, const std::vector<int>& members, const Vector& center);

// Flips v so its first component larger than 1e-12 in magnitude is positive.
void apply_sign_convention(Vector& v);

// Largest |w_a . w_b| / (|w_a||w_b|) over distinct column pairs.
double column_orthogonality_defect(const Matrix& W);

// Unit vector minimizing v^T S v, sign fixed so the first component larger
// than 1e-12 in magnitude is positive. Dense decomposition up to dim 512,
// shifted inverse power iteration above.
Vector smallest_eigenvector(const ScatterMatrix& S);

// As above but restricted to the orthogonal complement of `excluded`
// (vectors assumed orthonormal). Used for deflated subproblems.
Vector smallest_eigenvector_excluding(const ScatterMatrix& S, const std::vector<Vector>& excluded);

// Removes from every column its component along w. Throws ZeroDirection on
// a zero w.
Matrix deflate(const Matrix& X, const Vector& w);

// Entry (a, b) = K(basis_a, query_b).
Matrix kernel_map(const Matrix& queries, const Matrix& basis, const KernelSpec& spec);

// Squared Euclidean distances between all column pairs, m x m.
Matrix pairwise_sq_dists(const Matrix& X);

// Straight-line single-threaded reference implementations, kept for testing
// the parallel kernels and for the benchmark target.
namespace serial {
ScatterMatrix scatter_matrix(const Matrix& X, const std::vector<int>& members, const Vector& center);
Matrix deflate(const Matrix& X, const Vector& w);
Matrix kernel_map(const Matrix& queries, const Matrix& basis, const KernelSpec& spec);
Matrix pairwise_sq_dists(const Matrix& X);
}  // namespace serial

}  // namespace mfpc

#endif  // MFPC_LINALG_HPP
