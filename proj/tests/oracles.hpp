#ifndef MFPC_TESTS_ORACLES_HPP
#define MFPC_TESTS_ORACLES_HPP

// Independent reference implementations used to freeze expected values.
// Everything here is written as literally as possible from the defining
// formulas and never calls the code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "mfpc/cccp.hpp"
#include "mfpc/rng.hpp"
#include "mfpc/types.hpp"

namespace oracle {

using mfpc::Matrix;
using mfpc::Vector;

// Scatter by the double loop over entries.
inline Matrix scatter_brute(const Matrix& X, const std::vector<int>& members, const Vector& center) {
    const auto d = X.rows();
    Matrix S = Matrix::Zero(d, d);
    for (int j : members) {
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                S(r, c) += (X(r, j) - center[r]) * (X(c, j) - center[c]);
            }
        }
    }
    return S;
}

// Term-by-term transcription of the penalty objective.
inline double penalty_brute(const Vector& w, const Matrix& A, const Matrix& S, const Matrix& G,
                            double c1, double c2, double sigma) {
    double val = 0.5 * w.dot(w);
    val += 0.5 * c1 * w.dot(S * w);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double margin = 1.0 - std::abs(w.dot(A.col(j)));
        if (margin > 0.0) val += c2 * margin;
    }
    val += 0.5 * sigma * std::abs(w.dot(G * w) - 1.0);
    return val;
}

// Concave part of the DC split, for finite-difference checks.
inline double f_cav(const Vector& w, const Matrix& A, const Matrix& G, double c2, double sigma) {
    double val = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) val -= c2 * std::abs(w.dot(A.col(j)));
    val -= 0.5 * sigma * w.dot(G * w);
    return val;
}

// Convex part plus linearization, evaluated literally.
inline double majorant_brute(const Vector& w, const Vector& g, const Matrix& A, const Matrix& S,
                             const Matrix& G, double c1, double c2, double sigma) {
    double val = 0.5 * w.dot(w) + 0.5 * c1 * w.dot(S * w);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double over = std::abs(w.dot(A.col(j))) - 1.0;
        if (over > 0.0) val += c2 * over;
    }
    const double ball = w.dot(G * w) - 1.0;
    if (ball > 0.0) val += sigma * ball;
    return val + g.dot(w);
}

// Diminishing-step subgradient descent on the convex inner objective; keeps
// the best point seen. Step scale follows the classical R/(G sqrt(s)) rule.
inline double subgradient_descent_best(const Vector& g, const Vector& start, const Matrix& A,
                                       const Matrix& S, const Matrix& G, double c1, double c2,
                                       double sigma, int steps) {
    Vector w = start;
    double best = majorant_brute(w, g, A, S, G, c1, c2, sigma);
    double radius = std::max(1.0, start.norm());
    for (int s = 1; s <= steps; ++s) {
        Vector sub = w + c1 * (S * w) + g;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            const double t = w.dot(A.col(j));
            if (std::abs(t) > 1.0) sub += c2 * (t > 0.0 ? 1.0 : -1.0) * A.col(j);
        }
        if (w.dot(G * w) - 1.0 > 0.0) sub += sigma * 2.0 * (G * w);
        const double norm = sub.norm();
        if (norm < 1e-16) break;
        w -= (radius / (norm * std::sqrt(static_cast<double>(s)))) * sub;
        best = std::min(best, majorant_brute(w, g, A, S, G, c1, c2, sigma));
    }
    return best;
}

// Pair-counting Rand statistics: agreements minus expected over max minus
// expected, straight from the definition over all sample pairs.
inline double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t m = a.size();
    std::int64_t same_same = 0, same_a = 0, same_b = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            same_a += sa;
            same_b += sb;
            same_same += sa && sb;
        }
    }
    const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    const double expected = static_cast<double>(same_a) * static_cast<double>(same_b) / pairs;
    const double maximum = 0.5 * static_cast<double>(same_a + same_b);
    if (maximum == expected) return 1.0;
    return (static_cast<double>(same_same) - expected) / (maximum - expected);
}

// Entropy-formula NMI with arithmetic-mean normalization.
inline double nmi_entropy(const std::vector<int>& a, const std::vector<int>& b) {
    const double m = static_cast<double>(a.size());
    std::map<int, int> ca, cb;
    std::map<std::pair<int, int>, int> cab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++ca[a[i]];
        ++cb[b[i]];
        ++cab[{a[i], b[i]}];
    }
    double hu = 0.0, hv = 0.0, mi = 0.0;
    for (const auto& [k, v] : ca) hu -= (v / m) * std::log(v / m);
    for (const auto& [k, v] : cb) hv -= (v / m) * std::log(v / m);
    for (const auto& [key, v] : cab) {
        mi += (v / m) * std::log(m * v / (static_cast<double>(ca[key.first]) * cb[key.second]));
    }
    if (hu == 0.0 && hv == 0.0) return 1.0;
    if (hu == 0.0 || hv == 0.0) return 0.0;
    return mi / (0.5 * (hu + hv));
}

// Per-sample per-cluster distance loop for the label rule.
inline std::vector<int> assign_brute(const Matrix& X, const std::vector<Matrix>& W,
                                     const std::vector<Vector>& centers_proj) {
    std::vector<int> labels(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        int best = 0;
        double bestval = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < W.size(); ++i) {
            const double v = (W[i].transpose() * X.col(j) - centers_proj[i]).norm();
            if (v < bestval) {
                bestval = v;
                best = static_cast<int>(i);
            }
        }
        labels[static_cast<std::size_t>(j)] = best;
    }
    return labels;
}

// Random dense instance helpers.
inline Matrix random_matrix(mfpc::Rng& rng, int rows, int cols, double scale = 1.0) {
    Matrix M(rows, cols);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) M(r, c) = scale * rng.gaussian();
    }
    return M;
}

inline Matrix random_psd(mfpc::Rng& rng, int d, double scale = 1.0) {
    Matrix B = random_matrix(rng, d, d, scale);
    Matrix S = B * B.transpose();
    return ((S + S.transpose()) * 0.5).eval();
}

inline Vector random_unit(mfpc::Rng& rng, int d) {
    Vector v(d);
    double norm = 0.0;
    do {
        for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

}  // namespace oracle

#endif  // MFPC_TESTS_ORACLES_HPP
