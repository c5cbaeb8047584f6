#include "mfpc/mfpc.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mfpc/parallel.hpp"
#include "mfpc/rng.hpp"

namespace mfpc {

namespace {

constexpr double kZeroColumnNorm = 1e-12;
constexpr double kObjectiveSlack = 1e-8;

// Smallest-eigenvector warm start restricted to the orthocomplement of the
// already-found directions, skipping candidates with no overlap with the
// deflated samples (those would freeze the CCCP at zero).
Vector column_init(const Matrix& X, const ScatterMatrix& S, const std::vector<Vector>& prior_dirs) {
    const int d = S.dim();
    const int l = static_cast<int>(prior_dirs.size());
    if (l >= d) throw ZeroColumn("column_init: no free directions left");

    const double col_scale = std::sqrt(X.squaredNorm() / static_cast<double>(X.cols()));
    const double overlap_floor = 1e-10 * std::max(col_scale, 1e-30);
    const auto overlap = [&](const Vector& v) { return (X.transpose() * v).cwiseAbs().maxCoeff(); };

    if (d > 512) {
        Vector v = smallest_eigenvector_excluding(S, prior_dirs);
        if (overlap(v) > overlap_floor) return v;
        // fall through to a data-spanned direction
        Eigen::Index best = 0;
        X.colwise().squaredNorm().maxCoeff(&best);
        Vector u = X.col(best);
        for (const Vector& dir : prior_dirs) u -= dir * dir.dot(u);
        if (u.norm() < kZeroColumnNorm) throw ZeroColumn("column_init: deflated data degenerate");
        return u.normalized();
    }

    Matrix B;
    if (l == 0) {
        B = Matrix::Identity(d, d);
    } else {
        Matrix E(d, l);
        for (int i = 0; i < l; ++i) E.col(i) = prior_dirs[static_cast<std::size_t>(i)];
        Eigen::HouseholderQR<Matrix> qr(E);
        Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
        B = Q.rightCols(d - l);
    }
    Matrix Sr = B.transpose() * S.S * B;
    Sr = ((Sr + Sr.transpose()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Sr);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceFailure("column_init: eigendecomposition failed");
    }
    for (Eigen::Index q = 0; q < Sr.rows(); ++q) {
        Vector v = B * eig.eigenvectors().col(q);
        v.normalize();
        apply_sign_convention(v);
        if (overlap(v) > overlap_floor) return v;
    }
    throw ZeroColumn("column_init: deflated data degenerate");
}

Vector effective_center(const Matrix& X_effective, const std::vector<int>& members) {
    Vector c = Vector::Zero(X_effective.rows());
    for (int j : members) c += X_effective.col(j);
    return c / static_cast<double>(members.size());
}

// Input-space means mapped through the kernel when one is active.
std::vector<Vector> cluster_centers(const Dataset& data, const EffectiveData& eff,
                                    const std::vector<std::vector<int>>& members,
                                    const KernelSpec& spec) {
    std::vector<Vector> centers;
    centers.reserve(members.size());
    for (const auto& set : members) {
        if (set.empty()) throw EmptyMemberSet("cluster_centers: empty cluster");
        if (!spec.is_gaussian()) {
            centers.push_back(effective_center(eff.features, set));
        } else {
            Vector mean = Vector::Zero(data.n());
            for (int j : set) mean += data.features().col(j);
            mean /= static_cast<double>(set.size());
            centers.push_back(kernel_map(mean, *eff.basis, spec).col(0));
        }
    }
    return centers;
}

struct AssignOutcome {
    ClusterState state;
    std::vector<int> patched_clusters;
};

Matrix decision_values(const Matrix& X_effective, const FlatModel& model) {
    const int k = model.k();
    const auto m = X_effective.cols();
    Matrix dist(k, m);
    for (int i = 0; i < k; ++i) {
        const Matrix proj = model.projections[static_cast<std::size_t>(i)].transpose() * X_effective;
        const Vector& cp = model.center_projections[static_cast<std::size_t>(i)];
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
            dist(i, static_cast<Eigen::Index>(j)) = (proj.col(static_cast<Eigen::Index>(j)) - cp).norm();
        });
    }
    return dist;
}

std::vector<int> argmin_labels(const Matrix& dist) {
    std::vector<int> labels(static_cast<std::size_t>(dist.cols()));
    parallel_for(static_cast<std::size_t>(dist.cols()), [&](std::size_t j) {
        int best = 0;
        double bestval = dist(0, static_cast<Eigen::Index>(j));
        for (int i = 1; i < dist.rows(); ++i) {
            const double v = dist(i, static_cast<Eigen::Index>(j));
            if (v < bestval) {
                bestval = v;
                best = i;
            }
        }
        labels[j] = best;
    });
    return labels;
}

// Hands each empty cluster the sample most ambivalent between its current
// cluster and the empty one, never draining a cluster below one member.
AssignOutcome assign_with_patch(const Matrix& X_effective, const FlatModel& model) {
    const Matrix dist = decision_values(X_effective, model);
    AssignOutcome out;
    std::vector<int> labels = argmin_labels(dist);
    const int k = model.k();
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
            const double gap = dist(e, j) - dist(cur, j);
            if (gap < best_gap) {
                best_gap = gap;
                pick = j;
            }
        }
        if (pick < 0) throw EmptyClusterUnrecoverable("assign_labels: cannot repopulate empty cluster");
        --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(pick)])];
        labels[static_cast<std::size_t>(pick)] = e;
        ++counts[static_cast<std::size_t>(e)];
        out.patched_clusters.push_back(e);
    }
    out.state = ClusterState(std::move(labels), k);
    return out;
}

}  // namespace

EffectiveData build_kernel_instance(const Dataset& data, const KernelSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (!spec.is_gaussian()) {
        throw Error("build_kernel_instance: linear kernel uses the raw features");
    }
    const int m = data.m();
    const int r = std::min(m, spec.reduced_size.value_or(std::min(m, 200)));
    Matrix basis;
    if (r >= m) {
        basis = data.features();
    } else {
        Rng rng(seed);
        const std::vector<int> idx = rng.sample_indices(m, r);
        basis.resize(data.n(), r);
        for (int i = 0; i < r; ++i) basis.col(i) = data.features().col(idx[static_cast<std::size_t>(i)]);
    }
    EffectiveData eff;
    eff.features = kernel_map(data.features(), basis, spec);
    eff.basis = std::move(basis);
    return eff;
}

FlatColumns solve_flat(const Matrix& X_effective, const std::vector<int>& members,
                       const SolverConfig& config) {
    if (members.empty()) throw EmptyMemberSet("solve_flat: empty member set");
    return solve_flat(X_effective, members, effective_center(X_effective, members), config);
}

FlatColumns solve_flat(const Matrix& X_effective, const std::vector<int>& members,
                       const Vector& center, const SolverConfig& config) {
    config.validate();
    if (members.empty()) throw EmptyMemberSet("solve_flat: empty member set");
    const int d = static_cast<int>(X_effective.rows());
    const int p = config.p;
    if (!config.kernel.is_gaussian() && p >= d) {
        throw Error("solve_flat: linear mode requires p < n");
    }

    FlatColumns out;
    out.W = Matrix::Zero(d, p);
    Matrix X = X_effective;
    Vector ctr = center;
    std::vector<Vector> dirs;

    for (int l = 0; l < p; ++l) {
        ScatterMatrix S = scatter_matrix(X, members, ctr);
        Vector init = column_init(X, S, dirs);
        SubproblemInstance inst = make_subproblem(X, members, ctr, config, std::move(init));
        auto [w, trace] = solve_column(inst);
        out.traces.push_back(std::move(trace));
        if (w.norm() < kZeroColumnNorm) {
            throw ZeroColumn("solve_flat: solved column has vanishing norm");
        }
        out.unit_ball_defect.push_back(std::abs(w.dot(inst.G() * w) - 1.0));
        out.W.col(l) = w;
        if (l + 1 < p) {
            const Vector wn = w.normalized();
            X = deflate(X, wn);
            ctr -= wn * wn.dot(ctr);
            dirs.push_back(wn);
        }
    }
    return out;
}

ClusterState assign_labels_effective(const Matrix& X_effective, const FlatModel& model) {
    const Matrix dist = decision_values(X_effective, model);
    return ClusterState(argmin_labels(dist), model.k());
}

ClusterState assign_labels(const Dataset& data, const FlatModel& model) {
    if (!model.kernel.is_gaussian()) {
        return assign_labels_effective(data.features(), model);
    }
    if (!model.reduced_basis) throw Error("assign_labels: kernel model lacks a basis");
    return assign_labels_effective(kernel_map(data.features(), *model.reduced_basis, model.kernel),
                                   model);
}

double overall_objective_effective(const Matrix& X_effective, const ClusterState& state,
                                   const FlatModel& model, const SolverConfig& config) {
    if (state.m() != static_cast<int>(X_effective.cols()) || state.k != model.k()) {
        throw Error("overall_objective: state/model mismatch");
    }
    double total = 0.0;
    for (int i = 0; i < model.k(); ++i) {
        const Matrix& W = model.projections[static_cast<std::size_t>(i)];
        const Vector& cp = model.center_projections[static_cast<std::size_t>(i)];
        const Matrix proj = W.transpose() * X_effective;
        const double within_and_hinge =
            chunked_sum(static_cast<std::size_t>(state.m()), 0.0, [&](std::size_t j) {
                const double dist = (proj.col(static_cast<Eigen::Index>(j)) - cp).norm();
                if (state.labels[j] == i) {
                    return 0.5 * config.c1 * dist * dist;
                }
                return config.c2 * std::max(0.0, 1.0 - dist);
            });
        total += 0.5 * W.squaredNorm() + within_and_hinge;
    }
    return total;
}

double overall_objective(const Dataset& data, const ClusterState& state, const FlatModel& model,
                         const SolverConfig& config) {
    if (!model.kernel.is_gaussian()) {
        return overall_objective_effective(data.features(), state, model, config);
    }
    if (!model.reduced_basis) throw Error("overall_objective: kernel model lacks a basis");
    return overall_objective_effective(kernel_map(data.features(), *model.reduced_basis, model.kernel),
                                       state, model, config);
}

FitResult fit(const Dataset& data, int k, const SolverConfig& config, const ClusterState& init) {
    config.validate();
    if (k < 2) throw Error("fit: k must be >= 2");
    if (init.k != k || init.m() != data.m()) throw Error("fit: init does not match data/k");
    for (int count : init.counts()) {
        if (count == 0) throw EmptyMemberSet("fit: init has an empty cluster");
    }

    EffectiveData eff;
    if (config.kernel.is_gaussian()) {
        eff = build_kernel_instance(data, config.kernel, config.seed);
    } else {
        eff.features = data.features();
    }

    FitResult best;
    bool have_best = false;
    double best_obj = std::numeric_limits<double>::infinity();

    ClusterState state = init;
    std::vector<char> was_patched(static_cast<std::size_t>(k), 0);
    int patches_total = 0;

    for (int outer = 0; outer < config.max_outer_iters; ++outer) {
        const auto members = state.member_sets();
        const auto centers = cluster_centers(data, eff, members, config.kernel);

        FlatModel model;
        model.kernel = config.kernel;
        model.reduced_basis = eff.basis;
        model.projections.resize(static_cast<std::size_t>(k));
        model.center_projections.resize(static_cast<std::size_t>(k));
        std::vector<std::vector<CccpTrace>> traces(static_cast<std::size_t>(k));
        std::vector<std::vector<double>> defects(static_cast<std::size_t>(k));

        for (int i = 0; i < k; ++i) {
            FlatColumns cols = [&]() {
                try {
                    return solve_flat(eff.features, members[static_cast<std::size_t>(i)],
                                      centers[static_cast<std::size_t>(i)], config);
                } catch (const ZeroColumn&) {
                    // Degenerate deflated data: keep the columns found so far
                    // and zero-pad so every cluster shares one shape.
                    FlatColumns partial;
                    partial.W = Matrix::Zero(eff.features.rows(), config.p);
                    SolverConfig reduced = config;
                    for (reduced.p = config.p - 1; reduced.p >= 1; --reduced.p) {
                        try {
                            FlatColumns sub = solve_flat(eff.features, members[static_cast<std::size_t>(i)],
                                                         centers[static_cast<std::size_t>(i)], reduced);
                            partial.W.leftCols(reduced.p) = sub.W;
                            partial.traces = std::move(sub.traces);
                            partial.unit_ball_defect = std::move(sub.unit_ball_defect);
                            return partial;
                        } catch (const ZeroColumn&) {
                        }
                    }
                    return partial;
                }
            }();
            model.projections[static_cast<std::size_t>(i)] = cols.W;
            model.center_projections[static_cast<std::size_t>(i)] =
                cols.W.transpose() * centers[static_cast<std::size_t>(i)];
            traces[static_cast<std::size_t>(i)] = std::move(cols.traces);
            defects[static_cast<std::size_t>(i)] = std::move(cols.unit_ball_defect);
        }

        AssignOutcome assigned = assign_with_patch(eff.features, model);
        for (int e : assigned.patched_clusters) {
            if (was_patched[static_cast<std::size_t>(e)]) {
                throw EmptyClusterUnrecoverable("fit: cluster emptied twice consecutively");
            }
        }
        std::fill(was_patched.begin(), was_patched.end(), 0);
        for (int e : assigned.patched_clusters) was_patched[static_cast<std::size_t>(e)] = 1;
        patches_total += static_cast<int>(assigned.patched_clusters.size());

        const double obj = overall_objective_effective(eff.features, assigned.state, model, config);
        const bool repeated = assigned.state.labels == state.labels;
        const bool clean = assigned.patched_clusters.empty();

        if (have_best && obj > best_obj + kObjectiveSlack) {
            break;  // objective went up; keep the previously accepted state
        }
        if (clean) {
            best.model = std::move(model);
            best.state = assigned.state;
            best.column_traces = std::move(traces);
            best.objective_history.push_back(obj);
            best.outer_iterations = outer + 1;
            best.diagnostics.orthogonality_defect.clear();
            for (const Matrix& W : best.model.projections) {
                best.diagnostics.orthogonality_defect.push_back(column_orthogonality_defect(W));
            }
            best.diagnostics.unit_ball_defect = std::move(defects);
            best_obj = obj;
            have_best = true;
            if (repeated) break;
        }
        state = std::move(assigned.state);
    }

    if (!have_best) {
        throw EmptyClusterUnrecoverable("fit: no stable assignment without empty clusters");
    }
    best.diagnostics.empty_cluster_patches = patches_total;
    return best;
}

}  // namespace mfpc
