#include "mfpc/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "mfpc/parallel.hpp"

namespace mfpc {

namespace {

constexpr int kDenseEigLimit = 512;

Vector smallest_eigenvector_dense(const Matrix& S) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceFailure("smallest_eigenvector: dense decomposition failed");
    }
    Vector v = eig.eigenvectors().col(0);
    v.normalize();
    apply_sign_convention(v);
    return v;
}

// Inverse power iteration on S + delta*I with shift at zero.
Vector smallest_eigenvector_power(const Matrix& S) {
    const int d = static_cast<int>(S.rows());
    const double delta = std::max(1e-12 * S.trace(), 1e-300);
    Matrix R = S + delta * Matrix::Identity(d, d);
    Eigen::LLT<Matrix> llt(R);
    if (llt.info() != Eigen::Success) {
        throw ConvergenceFailure("smallest_eigenvector: shifted factorization failed");
    }
    Vector v = Vector::Ones(d).normalized();
    double rayleigh = v.dot(S * v);
    constexpr int kMaxIters = 5000;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        Vector next = llt.solve(v);
        next.normalize();
        const double r = next.dot(S * next);
        const bool settled = std::abs(r - rayleigh) <= 1e-14 * std::max(1.0, std::abs(r)) &&
                             std::min((next - v).norm(), (next + v).norm()) <= 1e-12;
        v = next;
        rayleigh = r;
        if (settled) {
            apply_sign_convention(v);
            return v;
        }
    }
    throw ConvergenceFailure("smallest_eigenvector: power iteration exceeded cap");
}

}  // namespace

void apply_sign_convention(Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] != 0.0) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

double column_orthogonality_defect(const Matrix& W) {
    double worst = 0.0;
    for (int a = 0; a < W.cols(); ++a) {
        const double na = W.col(a).norm();
        if (na < 1e-300) continue;
        for (int b = a + 1; b < W.cols(); ++b) {
            const double nb = W.col(b).norm();
            if (nb < 1e-300) continue;
            worst = std::max(worst, std::abs(W.col(a).dot(W.col(b))) / (na * nb));
        }
    }
    return worst;
}

bool ScatterMatrix::well_formed() const {
    if (S.rows() != S.cols()) return false;
    const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -1e-10 * std::max(S.trace(), 1.0);
}

ScatterMatrix scatter_matrix(const Matrix& X, const std::vector<int>& members, const Vector& center) {
    if (members.empty()) throw EmptyMemberSet("scatter_matrix: empty member set");
    const auto d = X.rows();
    const std::size_t chunks = chunk_count(members.size());
    std::vector<Matrix> partial(chunks, Matrix::Zero(d, d));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        Matrix& acc = partial[static_cast<std::size_t>(c)];
        const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t hi = std::min(members.size(), lo + kReductionChunk);
        Vector diff(d);
        for (std::size_t i = lo; i < hi; ++i) {
            diff = X.col(members[i]) - center;
            acc.selfadjointView<Eigen::Lower>().rankUpdate(diff);
        }
    }
    Matrix S = std::move(partial[0]);
    for (std::size_t c = 1; c < chunks; ++c) S += partial[c];
    S.triangularView<Eigen::StrictlyUpper>() = S.transpose();
    return ScatterMatrix{std::move(S)};
}

Vector smallest_eigenvector(const ScatterMatrix& S) {
    if (S.dim() <= kDenseEigLimit) return smallest_eigenvector_dense(S.S);
    return smallest_eigenvector_power(S.S);
}

Vector smallest_eigenvector_excluding(const ScatterMatrix& S, const std::vector<Vector>& excluded) {
    if (excluded.empty()) return smallest_eigenvector(S);
    const int d = S.dim();
    const int l = static_cast<int>(excluded.size());
    if (l >= d) throw ZeroDirection("smallest_eigenvector_excluding: no directions left");

    // Orthonormal basis of the complement via Householder QR of [excluded | I].
    Matrix E(d, l);
    for (int i = 0; i < l; ++i) E.col(i) = excluded[static_cast<std::size_t>(i)];
    Eigen::HouseholderQR<Matrix> qr(E);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
    Matrix B = Q.rightCols(d - l);

    Matrix Sr = B.transpose() * S.S * B;
    Sr = ((Sr + Sr.transpose()) * 0.5).eval();
    Vector vr = smallest_eigenvector(ScatterMatrix{std::move(Sr)});
    Vector v = B * vr;
    v.normalize();
    apply_sign_convention(v);
    return v;
}

Matrix deflate(const Matrix& X, const Vector& w) {
    const double nw = w.norm();
    if (nw < 1e-300) throw ZeroDirection("deflate: zero direction");
    const Vector wn = w / nw;
    Matrix out(X.rows(), X.cols());
    parallel_for(static_cast<std::size_t>(X.cols()), [&](std::size_t j) {
        const auto col = X.col(static_cast<Eigen::Index>(j));
        out.col(static_cast<Eigen::Index>(j)) = col - wn * wn.dot(col);
    });
    return out;
}

Matrix kernel_map(const Matrix& queries, const Matrix& basis, const KernelSpec& spec) {
    spec.validate();
    if (queries.rows() != basis.rows()) {
        throw Error("kernel_map: feature dimensions do not match");
    }
    if (spec.kind == KernelSpec::Kind::linear) {
        return basis.transpose() * queries;
    }
    const double mu = spec.mu;
    Matrix out(basis.cols(), queries.cols());
    parallel_for(static_cast<std::size_t>(queries.cols()), [&](std::size_t b) {
        const auto q = queries.col(static_cast<Eigen::Index>(b));
        for (Eigen::Index a = 0; a < basis.cols(); ++a) {
            out(a, static_cast<Eigen::Index>(b)) = std::exp(-mu * (basis.col(a) - q).squaredNorm());
        }
    });
    return out;
}

Matrix pairwise_sq_dists(const Matrix& X) {
    const auto m = X.cols();
    Matrix D(m, m);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
        const auto xj = X.col(static_cast<Eigen::Index>(j));
        D(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 0.0;
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(j); ++i) {
            const double d2 = (X.col(i) - xj).squaredNorm();
            D(i, static_cast<Eigen::Index>(j)) = d2;
            D(static_cast<Eigen::Index>(j), i) = d2;
        }
    });
    return D;
}

namespace serial {

ScatterMatrix scatter_matrix(const Matrix& X, const std::vector<int>& members, const Vector& center) {
    if (members.empty()) throw EmptyMemberSet("scatter_matrix: empty member set");
    Matrix S = Matrix::Zero(X.rows(), X.rows());
    for (int j : members) {
        const Vector diff = X.col(j) - center;
        S += diff * diff.transpose();
    }
    S = ((S + S.transpose()) * 0.5).eval();
    return ScatterMatrix{std::move(S)};
}

Matrix deflate(const Matrix& X, const Vector& w) {
    const double nw = w.norm();
    if (nw < 1e-300) throw ZeroDirection("deflate: zero direction");
    const Vector wn = w / nw;
    Matrix out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        out.col(j) = X.col(j) - wn * wn.dot(X.col(j));
    }
    return out;
}

Matrix kernel_map(const Matrix& queries, const Matrix& basis, const KernelSpec& spec) {
    spec.validate();
    if (spec.kind == KernelSpec::Kind::linear) {
        return basis.transpose() * queries;
    }
    Matrix out(basis.cols(), queries.cols());
    for (Eigen::Index b = 0; b < queries.cols(); ++b) {
        for (Eigen::Index a = 0; a < basis.cols(); ++a) {
            out(a, b) = std::exp(-spec.mu * (basis.col(a) - queries.col(b)).squaredNorm());
        }
    }
    return out;
}

Matrix pairwise_sq_dists(const Matrix& X) {
    const auto m = X.cols();
    Matrix D(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        D(j, j) = 0.0;
        for (Eigen::Index i = 0; i < j; ++i) {
            const double d2 = (X.col(i) - X.col(j)).squaredNorm();
            D(i, j) = d2;
            D(j, i) = d2;
        }
    }
    return D;
}

}  // namespace serial

}  // namespace mfpc
