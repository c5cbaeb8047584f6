#include "mfpc/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mfpc/linalg.hpp"
#include "mfpc/parallel.hpp"
#include "mfpc/rng.hpp"

namespace mfpc {

namespace {

constexpr int kMaxOuter = 100;
constexpr int kMaxLloyd = 300;

Vector member_mean(const Matrix& X, const std::vector<int>& members) {
    if (members.empty()) throw EmptyMemberSet("member_mean: empty member set");
    Vector mean = Vector::Zero(X.rows());
    for (int j : members) mean += X.col(j);
    return mean / static_cast<double>(members.size());
}

Matrix augmented_gram(const Matrix& X, const std::vector<int>& members) {
    const auto n = X.rows();
    Matrix M = Matrix::Zero(n + 1, n + 1);
    Vector xhat(n + 1);
    for (int j : members) {
        xhat.head(n) = X.col(j);
        xhat[n] = 1.0;
        M.selfadjointView<Eigen::Lower>().rankUpdate(xhat);
    }
    M.triangularView<Eigen::StrictlyUpper>() = M.transpose();
    return M;
}

// Split the smallest eigenvector of M into (w, b), preferring eigenvectors
// with a usable w part, and rescale so |w| = 1. The plane is orientation-
// free, so w gets the same sign convention as the eigenvector helpers with
// b flipped along.
std::pair<Vector, double> plane_from_augmented(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceFailure("plane_from_augmented: eigendecomposition failed");
    }
    const auto n = M.rows() - 1;
    for (Eigen::Index q = 0; q < M.rows(); ++q) {
        const Vector z = eig.eigenvectors().col(q);
        const double wnorm = z.head(n).norm();
        if (wnorm < 1e-12) continue;
        Vector w = z.head(n) / wnorm;
        double b = z[n] / wnorm;
        double flip = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(w[i]) > 1e-12) {
                flip = w[i] < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        return {w * flip, b * flip};
    }
    throw ConvergenceFailure("plane_from_augmented: all eigenvectors have zero w part");
}

template <typename Assign>
ClusterState argmin_assign(const Matrix& X, int k, Assign&& decision) {
    std::vector<int> labels(static_cast<std::size_t>(X.cols()));
    parallel_for(static_cast<std::size_t>(X.cols()), [&](std::size_t j) {
        int best = 0;
        double bestval = decision(0, static_cast<int>(j));
        for (int i = 1; i < k; ++i) {
            const double v = decision(i, static_cast<int>(j));
            if (v < bestval) {
                bestval = v;
                best = i;
            }
        }
        labels[j] = best;
    });
    return ClusterState(std::move(labels), k);
}

// Moves the most ambivalent sample into each empty cluster so every update
// step sees k non-empty clusters.
template <typename Decision>
void patch_empty(std::vector<int>& labels, int k, Decision&& decision) {
    const int m = static_cast<int>(labels.size());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int y : labels) ++counts[static_cast<std::size_t>(y)];
    for (int e = 0; e < k; ++e) {
        if (counts[static_cast<std::size_t>(e)] > 0) continue;
        int pick = -1;
        double best_gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
            const int cur = labels[static_cast<std::size_t>(j)];
            if (counts[static_cast<std::size_t>(cur)] < 2) continue;
            const double gap = decision(e, j) - decision(cur, j);
            if (gap < best_gap) {
                best_gap = gap;
                pick = j;
            }
        }
        if (pick < 0) throw EmptyClusterUnrecoverable("baseline fit: cannot repopulate cluster");
        --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(pick)])];
        labels[static_cast<std::size_t>(pick)] = e;
        ++counts[static_cast<std::size_t>(e)];
    }
}

std::vector<int> complement(const std::vector<std::vector<int>>& members, int i, int m) {
    std::vector<char> mark(static_cast<std::size_t>(m), 0);
    for (int j : members[static_cast<std::size_t>(i)]) mark[static_cast<std::size_t>(j)] = 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m) - members[static_cast<std::size_t>(i)].size());
    for (int j = 0; j < m; ++j) {
        if (!mark[static_cast<std::size_t>(j)]) out.push_back(j);
    }
    return out;
}

}  // namespace

void PlaneModel::validate() const {
    for (const Vector& wi : w) {
        if (std::abs(wi.norm() - 1.0) > 1e-10) throw Error("PlaneModel: |w| != 1");
    }
    if (w.size() != b.size()) throw Error("PlaneModel: w/b size mismatch");
}

void GeneralFlatModel::validate() const {
    for (const Matrix& Wi : W) {
        const Matrix gram = Wi.transpose() * Wi;
        if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-8) {
            throw Error("GeneralFlatModel: W'W != I");
        }
    }
    if (W.size() != gamma.size()) throw Error("GeneralFlatModel: W/gamma size mismatch");
}

std::pair<Vector, double> kpc_update(const Matrix& X, const std::vector<int>& members) {
    const Vector mean = member_mean(X, members);
    const ScatterMatrix S = scatter_matrix(X, members, mean);
    Vector w = smallest_eigenvector(S);
    return {w, -w.dot(mean)};
}

std::pair<Vector, double> kppc_update(const Matrix& X, const std::vector<int>& members,
                                      const std::vector<int>& others, double c) {
    if (members.empty() || others.empty()) throw EmptyMemberSet("kppc_update: empty index set");
    if (c == 0.0) return kpc_update(X, members);
    const Matrix M = augmented_gram(X, members) - c * augmented_gram(X, others);
    return plane_from_augmented(M);
}

LkppcUpdate lkppc_update(const Matrix& X, const std::vector<int>& members,
                         const std::vector<int>& others, double c1, double c2) {
    (void)c2;  // the center term does not involve (w, b)
    if (members.empty() || others.empty()) throw EmptyMemberSet("lkppc_update: empty index set");
    LkppcUpdate u;
    u.nu = member_mean(X, members);
    if (c1 == 0.0) {
        auto [w, b] = kpc_update(X, members);
        u.w = std::move(w);
        u.b = b;
        return u;
    }
    const Matrix M = augmented_gram(X, members) - c1 * augmented_gram(X, others);
    auto [w, b] = plane_from_augmented(M);
    u.w = std::move(w);
    u.b = b;
    return u;
}

std::pair<Matrix, Vector> kfc_update(const Matrix& X, const std::vector<int>& members, int p_flat) {
    if (p_flat < 1 || p_flat >= X.rows()) throw Error("kfc_update: need 1 <= p_flat < n");
    const Vector mean = member_mean(X, members);
    const ScatterMatrix S = scatter_matrix(X, members, mean);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S.S);
    if (eig.info() != Eigen::Success) throw ConvergenceFailure("kfc_update: eigensolver failed");
    Matrix W(X.rows(), p_flat);
    for (int q = 0; q < p_flat; ++q) {
        Vector v = eig.eigenvectors().col(q);
        apply_sign_convention(v);
        W.col(q) = v;
    }
    return {W, W.transpose() * mean};
}

std::pair<Matrix, Vector> lkfc_update(const Matrix& X, const std::vector<int>& members, double c,
                                      int p_flat) {
    (void)c;  // W-independent given the center
    auto [W, gamma_proj] = kfc_update(X, members, p_flat);
    return {std::move(W), member_mean(X, members)};
}

ClusterState kpc_assign(const Matrix& X, const PlaneModel& model) {
    return argmin_assign(X, model.k(), [&](int i, int j) {
        return std::abs(model.w[static_cast<std::size_t>(i)].dot(X.col(j)) +
                        model.b[static_cast<std::size_t>(i)]);
    });
}

ClusterState lkppc_assign(const Matrix& X, const PlaneModel& model, double c2) {
    const auto& centers = *model.centers;
    return argmin_assign(X, model.k(), [&](int i, int j) {
        const double planar = model.w[static_cast<std::size_t>(i)].dot(X.col(j)) +
                              model.b[static_cast<std::size_t>(i)];
        return planar * planar + c2 * (X.col(j) - centers[static_cast<std::size_t>(i)]).squaredNorm();
    });
}

ClusterState kfc_assign(const Matrix& X, const GeneralFlatModel& model) {
    return argmin_assign(X, model.k(), [&](int i, int j) {
        return (model.W[static_cast<std::size_t>(i)].transpose() * X.col(j) -
                model.gamma[static_cast<std::size_t>(i)])
            .norm();
    });
}

ClusterState lkfc_assign(const Matrix& X, const GeneralFlatModel& model, double c) {
    const auto& centers = *model.centers;
    return argmin_assign(X, model.k(), [&](int i, int j) {
        const Vector diff = X.col(j) - centers[static_cast<std::size_t>(i)];
        return (model.W[static_cast<std::size_t>(i)].transpose() * diff).squaredNorm() +
               c * diff.squaredNorm();
    });
}

namespace {

// Shared alternating loop. UpdateFn fills the model from the member sets;
// DecisionFn scores sample j against cluster i.
template <typename Model, typename UpdateFn, typename DecisionFn>
std::pair<Model, BaselineResult> alternate(const Matrix& X, int k, const ClusterState& init,
                                           UpdateFn&& update, DecisionFn&& decision) {
    const int m = static_cast<int>(X.cols());
    if (init.k != k || init.m() != m) throw Error("baseline fit: init mismatch");
    ClusterState state = init;
    Model model;
    BaselineResult meta;
    for (int outer = 0; outer < kMaxOuter; ++outer) {
        meta.outer_iterations = outer + 1;
        const auto members = state.member_sets();
        model = update(members);
        std::vector<int> labels =
            argmin_assign(X, k, [&](int i, int j) { return decision(model, i, j); }).labels;
        patch_empty(labels, k, [&](int i, int j) { return decision(model, i, j); });
        ClusterState next(std::move(labels), k);
        const bool repeated = next.labels == state.labels;
        state = std::move(next);
        if (repeated) break;
    }
    meta.state = std::move(state);
    return {std::move(model), std::move(meta)};
}

}  // namespace

PlaneFitResult kpc_fit(const Matrix& X, int k, const ClusterState& init) {
    auto [model, meta] = alternate<PlaneModel>(
        X, k, init,
        [&](const std::vector<std::vector<int>>& members) {
            PlaneModel pm;
            for (int i = 0; i < k; ++i) {
                auto [w, b] = kpc_update(X, members[static_cast<std::size_t>(i)]);
                pm.w.push_back(std::move(w));
                pm.b.push_back(b);
            }
            return pm;
        },
        [&](const PlaneModel& pm, int i, int j) {
            return std::abs(pm.w[static_cast<std::size_t>(i)].dot(X.col(j)) +
                            pm.b[static_cast<std::size_t>(i)]);
        });
    PlaneFitResult out;
    out.model = std::move(model);
    out.state = std::move(meta.state);
    out.outer_iterations = meta.outer_iterations;
    return out;
}

PlaneFitResult kppc_fit(const Matrix& X, int k, double c, const ClusterState& init) {
    const int m = static_cast<int>(X.cols());
    auto [model, meta] = alternate<PlaneModel>(
        X, k, init,
        [&](const std::vector<std::vector<int>>& members) {
            PlaneModel pm;
            for (int i = 0; i < k; ++i) {
                auto [w, b] =
                    kppc_update(X, members[static_cast<std::size_t>(i)], complement(members, i, m), c);
                pm.w.push_back(std::move(w));
                pm.b.push_back(b);
            }
            return pm;
        },
        [&](const PlaneModel& pm, int i, int j) {
            return std::abs(pm.w[static_cast<std::size_t>(i)].dot(X.col(j)) +
                            pm.b[static_cast<std::size_t>(i)]);
        });
    PlaneFitResult out;
    out.model = std::move(model);
    out.state = std::move(meta.state);
    out.outer_iterations = meta.outer_iterations;
    return out;
}

PlaneFitResult lkppc_fit(const Matrix& X, int k, double c1, double c2, const ClusterState& init) {
    const int m = static_cast<int>(X.cols());
    auto [model, meta] = alternate<PlaneModel>(
        X, k, init,
        [&](const std::vector<std::vector<int>>& members) {
            PlaneModel pm;
            pm.centers.emplace();
            for (int i = 0; i < k; ++i) {
                LkppcUpdate u = lkppc_update(X, members[static_cast<std::size_t>(i)],
                                             complement(members, i, m), c1, c2);
                pm.w.push_back(std::move(u.w));
                pm.b.push_back(u.b);
                pm.centers->push_back(std::move(u.nu));
            }
            return pm;
        },
        [&](const PlaneModel& pm, int i, int j) {
            const double planar = pm.w[static_cast<std::size_t>(i)].dot(X.col(j)) +
                                  pm.b[static_cast<std::size_t>(i)];
            return planar * planar +
                   c2 * (X.col(j) - (*pm.centers)[static_cast<std::size_t>(i)]).squaredNorm();
        });
    PlaneFitResult out;
    out.model = std::move(model);
    out.state = std::move(meta.state);
    out.outer_iterations = meta.outer_iterations;
    return out;
}

FlatFitResult kfc_fit(const Matrix& X, int k, int p_flat, const ClusterState& init) {
    auto [model, meta] = alternate<GeneralFlatModel>(
        X, k, init,
        [&](const std::vector<std::vector<int>>& members) {
            GeneralFlatModel fm;
            for (int i = 0; i < k; ++i) {
                auto [W, gamma] = kfc_update(X, members[static_cast<std::size_t>(i)], p_flat);
                fm.W.push_back(std::move(W));
                fm.gamma.push_back(std::move(gamma));
            }
            return fm;
        },
        [&](const GeneralFlatModel& fm, int i, int j) {
            return (fm.W[static_cast<std::size_t>(i)].transpose() * X.col(j) -
                    fm.gamma[static_cast<std::size_t>(i)])
                .norm();
        });
    FlatFitResult out;
    out.model = std::move(model);
    out.state = std::move(meta.state);
    out.outer_iterations = meta.outer_iterations;
    return out;
}

FlatFitResult lkfc_fit(const Matrix& X, int k, double c, int p_flat, const ClusterState& init) {
    auto [model, meta] = alternate<GeneralFlatModel>(
        X, k, init,
        [&](const std::vector<std::vector<int>>& members) {
            GeneralFlatModel fm;
            fm.centers.emplace();
            for (int i = 0; i < k; ++i) {
                auto [W, center] = lkfc_update(X, members[static_cast<std::size_t>(i)], c, p_flat);
                fm.gamma.push_back(W.transpose() * center);
                fm.W.push_back(std::move(W));
                fm.centers->push_back(std::move(center));
            }
            return fm;
        },
        [&](const GeneralFlatModel& fm, int i, int j) {
            const Vector diff = X.col(j) - (*fm.centers)[static_cast<std::size_t>(i)];
            return (fm.W[static_cast<std::size_t>(i)].transpose() * diff).squaredNorm() +
                   c * diff.squaredNorm();
        });
    FlatFitResult out;
    out.model = std::move(model);
    out.state = std::move(meta.state);
    out.outer_iterations = meta.outer_iterations;
    return out;
}

ClusterState kmeans_fit(const Matrix& X, int k, std::uint64_t seed) {
    const int m = static_cast<int>(X.cols());
    if (k > m) throw Error("kmeans_fit: k must be <= m");
    Rng rng(seed);

    // k-means++ seeding
    std::vector<int> chosen;
    chosen.push_back(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(m))));
    Vector d2 = Vector::Constant(m, std::numeric_limits<double>::infinity());
    while (static_cast<int>(chosen.size()) < k) {
        const auto last = X.col(chosen.back());
        for (int j = 0; j < m; ++j) {
            d2[j] = std::min(d2[j], (X.col(j) - last).squaredNorm());
        }
        const double total = d2.sum();
        int next = -1;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            for (int j = 0; j < m; ++j) {
                acc += d2[j];
                if (acc >= target) {
                    next = j;
                    break;
                }
            }
            if (next < 0) next = m - 1;
        }
        if (next < 0 || d2[next] == 0.0) {
            // duplicates exhausted the distance mass; take the first unused index
            std::vector<char> used(static_cast<std::size_t>(m), 0);
            for (int c : chosen) used[static_cast<std::size_t>(c)] = 1;
            next = -1;
            for (int j = 0; j < m; ++j) {
                if (!used[static_cast<std::size_t>(j)]) {
                    next = j;
                    break;
                }
            }
            if (next < 0) next = 0;
        }
        chosen.push_back(next);
    }
    Matrix centers(X.rows(), k);
    for (int i = 0; i < k; ++i) centers.col(i) = X.col(chosen[static_cast<std::size_t>(i)]);

    std::vector<int> labels(static_cast<std::size_t>(m), 0);
    for (int iter = 0; iter < kMaxLloyd; ++iter) {
        std::vector<int> next(static_cast<std::size_t>(m));
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
            int best = 0;
            double bestval = (X.col(static_cast<Eigen::Index>(j)) - centers.col(0)).squaredNorm();
            for (int i = 1; i < k; ++i) {
                const double v = (X.col(static_cast<Eigen::Index>(j)) - centers.col(i)).squaredNorm();
                if (v < bestval) {
                    bestval = v;
                    best = i;
                }
            }
            next[j] = best;
        });
        // empty clusters grab the sample farthest from its center
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int y : next) ++counts[static_cast<std::size_t>(y)];
        for (int i = 0; i < k; ++i) {
            if (counts[static_cast<std::size_t>(i)] > 0) continue;
            int far = -1;
            double fard = -1.0;
            for (int j = 0; j < m; ++j) {
                const int cur = next[static_cast<std::size_t>(j)];
                if (counts[static_cast<std::size_t>(cur)] < 2) continue;
                const double v = (X.col(j) - centers.col(cur)).squaredNorm();
                if (v > fard) {
                    fard = v;
                    far = j;
                }
            }
            if (far < 0) throw EmptyClusterUnrecoverable("kmeans_fit: cannot repopulate cluster");
            --counts[static_cast<std::size_t>(next[static_cast<std::size_t>(far)])];
            next[static_cast<std::size_t>(far)] = i;
            ++counts[static_cast<std::size_t>(i)];
        }
        const bool repeated = iter > 0 && next == labels;
        labels = std::move(next);
        if (repeated) break;
        centers.setZero();
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (int j = 0; j < m; ++j) {
            centers.col(labels[static_cast<std::size_t>(j)]) += X.col(j);
            ++sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])];
        }
        for (int i = 0; i < k; ++i) {
            centers.col(i) /= static_cast<double>(sizes[static_cast<std::size_t>(i)]);
        }
    }
    return ClusterState(std::move(labels), k);
}

double kmeans_inertia(const Matrix& X, const ClusterState& state) {
    Matrix centers = Matrix::Zero(X.rows(), state.k);
    std::vector<int> sizes(static_cast<std::size_t>(state.k), 0);
    for (int j = 0; j < state.m(); ++j) {
        centers.col(state.labels[static_cast<std::size_t>(j)]) += X.col(j);
        ++sizes[static_cast<std::size_t>(state.labels[static_cast<std::size_t>(j)])];
    }
    for (int i = 0; i < state.k; ++i) {
        if (sizes[static_cast<std::size_t>(i)] > 0) {
            centers.col(i) /= static_cast<double>(sizes[static_cast<std::size_t>(i)]);
        }
    }
    double total = 0.0;
    for (int j = 0; j < state.m(); ++j) {
        total += (X.col(j) - centers.col(state.labels[static_cast<std::size_t>(j)])).squaredNorm();
    }
    return total;
}

ClusterState nng_init(const Matrix& X, int k, int neighbors) {
    const int m = static_cast<int>(X.cols());
    if (k > m) throw Error("nng_init: k must be <= m");
    const Matrix D = pairwise_sq_dists(X);

    // k nearest neighbors per sample, ties by index
    const int nn = std::min(neighbors, m - 1);
    std::vector<std::vector<int>> knn(static_cast<std::size_t>(m));
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
        std::vector<int> order(static_cast<std::size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        order.erase(order.begin() + static_cast<long>(j));
        std::partial_sort(order.begin(), order.begin() + nn, order.end(), [&](int a, int b) {
            const double da = D(a, static_cast<Eigen::Index>(j));
            const double db = D(b, static_cast<Eigen::Index>(j));
            return da < db || (da == db && a < b);
        });
        knn[j].assign(order.begin(), order.begin() + nn);
    });

    // mutual edges -> connected components
    std::vector<std::vector<char>> is_nn(static_cast<std::size_t>(m),
                                         std::vector<char>(static_cast<std::size_t>(m), 0));
    for (int j = 0; j < m; ++j) {
        for (int i : knn[static_cast<std::size_t>(j)]) is_nn[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
    }
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    int comp_count = 0;
    for (int start = 0; start < m; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = comp_count;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : knn[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(v)] < 0 &&
                    is_nn[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) {
                    comp[static_cast<std::size_t>(v)] = comp_count;
                    stack.push_back(v);
                }
            }
        }
        ++comp_count;
    }

    std::vector<std::vector<int>> groups(static_cast<std::size_t>(comp_count));
    for (int j = 0; j < m; ++j) groups[static_cast<std::size_t>(comp[static_cast<std::size_t>(j)])].push_back(j);

    const auto centroid = [&](const std::vector<int>& g) {
        Vector c = Vector::Zero(X.rows());
        for (int j : g) c += X.col(j);
        return Vector(c / static_cast<double>(g.size()));
    };

    // merge closest centroids down to k
    while (static_cast<int>(groups.size()) > k) {
        std::vector<Vector> cents;
        cents.reserve(groups.size());
        for (const auto& g : groups) cents.push_back(centroid(g));
        std::size_t best_a = 0, best_b = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < groups.size(); ++a) {
            for (std::size_t b = a + 1; b < groups.size(); ++b) {
                const double v = (cents[a] - cents[b]).squaredNorm();
                if (v < best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        auto& ga = groups[best_a];
        ga.insert(ga.end(), groups[best_b].begin(), groups[best_b].end());
        std::sort(ga.begin(), ga.end());
        groups.erase(groups.begin() + static_cast<long>(best_b));
    }

    // split the largest component at the median of its principal direction
    while (static_cast<int>(groups.size()) < k) {
        std::size_t largest = 0;
        for (std::size_t g = 1; g < groups.size(); ++g) {
            if (groups[g].size() > groups[largest].size()) largest = g;
        }
        auto& g = groups[largest];
        if (g.size() < 2) throw Error("nng_init: cannot split singleton component");
        const Vector c = centroid(g);
        ScatterMatrix S = scatter_matrix(X, g, c);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(S.S);
        Vector dir = eig.eigenvectors().col(S.dim() - 1);
        apply_sign_convention(dir);
        std::vector<int> order = g;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double pa = dir.dot(X.col(a));
            const double pb = dir.dot(X.col(b));
            return pa < pb || (pa == pb && a < b);
        });
        const std::size_t half = (order.size() + 1) / 2;
        std::vector<int> low(order.begin(), order.begin() + static_cast<long>(half));
        std::vector<int> high(order.begin() + static_cast<long>(half), order.end());
        std::sort(low.begin(), low.end());
        std::sort(high.begin(), high.end());
        g = std::move(low);
        groups.push_back(std::move(high));
    }

    // stable numbering by smallest member index
    std::sort(groups.begin(), groups.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    std::vector<int> labels(static_cast<std::size_t>(m), 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (int j : groups[g]) labels[static_cast<std::size_t>(j)] = static_cast<int>(g);
    }
    return ClusterState(std::move(labels), k);
}

}  // namespace mfpc
