#ifndef MFPC_MFPC_HPP
#define MFPC_MFPC_HPP

#include <optional>
#include <vector>

#include "mfpc/cccp.hpp"
#include "mfpc/types.hpp"

namespace mfpc {

/// Feature matrix the solver actually runs on: the raw samples for the
/// linear kernel, K(X, basis) columns otherwise.
struct EffectiveData {
    Matrix features;               // d x m
    std::optional<Matrix> basis;   // n x r input-space basis points
};

// Draws the reduced basis with the given seed and maps every sample
// through the kernel. Gaussian kernels only.
EffectiveData build_kernel_instance(const Dataset& data, const KernelSpec& spec, std::uint64_t seed);

struct FitDiagnostics {
    std::vector<double> orthogonality_defect;            // per cluster
    std::vector<std::vector<double>> unit_ball_defect;   // per cluster, per column
    int empty_cluster_patches = 0;
};

struct FitResult {
    FlatModel model;
    ClusterState state;
    int outer_iterations = 0;
    std::vector<double> objective_history;
    std::vector<std::vector<CccpTrace>> column_traces;   // per cluster, per column
    FitDiagnostics diagnostics;
};

struct FlatColumns {
    Matrix W;                            // d x p
    std::vector<CccpTrace> traces;       // one per column
    std::vector<double> unit_ball_defect;
};

// Recursive column construction: solve a column, normalize it, project all
// samples onto its orthocomplement, repeat on the deflated data. Throws
// ZeroColumn when a solved column collapses.
FlatColumns solve_flat(const Matrix& X_effective, const std::vector<int>& members,
                       const Vector& center, const SolverConfig& config);

// Centers on the member mean of the effective features (the linear case).
FlatColumns solve_flat(const Matrix& X_effective, const std::vector<int>& members,
                       const SolverConfig& config);

// Distance-to-projected-center label rule over effective features.
ClusterState assign_labels_effective(const Matrix& X_effective, const FlatModel& model);

// Public form; maps samples through the model's kernel first.
ClusterState assign_labels(const Dataset& data, const FlatModel& model);

// Sum over clusters of the per-cluster objective at optimal slack values,
// with the index sets taken from `state` and centers from `model`.
double overall_objective_effective(const Matrix& X_effective, const ClusterState& state,
                                   const FlatModel& model, const SolverConfig& config);
double overall_objective(const Dataset& data, const ClusterState& state, const FlatModel& model,
                         const SolverConfig& config);

// Alternate solve_flat over clusters with label reassignment until the
// assignment repeats without an objective decrease.
FitResult fit(const Dataset& data, int k, const SolverConfig& config, const ClusterState& init);

}  // namespace mfpc

#endif  // MFPC_MFPC_HPP
