#ifndef MFPC_BASELINES_HPP
#define MFPC_BASELINES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mfpc/types.hpp"

namespace mfpc {

/// Plane prototypes w_i'x + b_i = 0 with unit w_i; `centers` carries the
/// extra per-cluster point used by the localized variant.
struct PlaneModel {
    std::vector<Vector> w;
    std::vector<double> b;
    std::optional<std::vector<Vector>> centers;

    int k() const { return static_cast<int>(w.size()); }
    void validate() const;
};

/// Flat prototypes W_i'x - gamma_i = 0 with orthonormal W_i. The localized
/// variant stores the input-space center; gamma is then W'center.
struct GeneralFlatModel {
    std::vector<Matrix> W;
    std::vector<Vector> gamma;
    std::optional<std::vector<Vector>> centers;

    int k() const { return static_cast<int>(W.size()); }
    void validate() const;
};

// --- single-cluster eigenvalue updates ---

// min sum (w'x_j + b)^2 over unit w; b eliminated at the member mean.
std::pair<Vector, double> kpc_update(const Matrix& X, const std::vector<int>& members);

// Member closeness minus c * other-cluster closeness, solved over augmented
// (w, b) with the relaxed unit constraint, then rescaled to |w| = 1.
std::pair<Vector, double> kppc_update(const Matrix& X, const std::vector<int>& members,
                                      const std::vector<int>& others, double c);

struct LkppcUpdate {
    Vector w;
    double b;
    Vector nu;
};
LkppcUpdate lkppc_update(const Matrix& X, const std::vector<int>& members,
                         const std::vector<int>& others, double c1, double c2);

// p smallest scatter eigenvectors; gamma = W' member-mean.
std::pair<Matrix, Vector> kfc_update(const Matrix& X, const std::vector<int>& members, int p_flat);

// As kfc but returns the input-space center (the c-term optimum).
std::pair<Matrix, Vector> lkfc_update(const Matrix& X, const std::vector<int>& members, double c,
                                      int p_flat);

// --- label rules ---
ClusterState kpc_assign(const Matrix& X, const PlaneModel& model);
ClusterState lkppc_assign(const Matrix& X, const PlaneModel& model, double c2);
ClusterState kfc_assign(const Matrix& X, const GeneralFlatModel& model);
ClusterState lkfc_assign(const Matrix& X, const GeneralFlatModel& model, double c);

// --- alternating fits (update all clusters, reassign, stop on repeated
//     labels or 100 outer iterations) ---
struct BaselineResult {
    ClusterState state;
    int outer_iterations = 0;
};

struct PlaneFitResult : BaselineResult {
    PlaneModel model;
};
struct FlatFitResult : BaselineResult {
    GeneralFlatModel model;
};

PlaneFitResult kpc_fit(const Matrix& X, int k, const ClusterState& init);
PlaneFitResult kppc_fit(const Matrix& X, int k, double c, const ClusterState& init);
PlaneFitResult lkppc_fit(const Matrix& X, int k, double c1, double c2, const ClusterState& init);
FlatFitResult kfc_fit(const Matrix& X, int k, int p_flat, const ClusterState& init);
FlatFitResult lkfc_fit(const Matrix& X, int k, double c, int p_flat, const ClusterState& init);

// Lloyd iteration with k-means++ seeding; runs to a label fixed point or
// 300 iterations.
ClusterState kmeans_fit(const Matrix& X, int k, std::uint64_t seed);
double kmeans_inertia(const Matrix& X, const ClusterState& state);

// Deterministic initial labels from the mutual nearest-neighbor graph:
// connected components, then closest-centroid merges down to k or largest-
// component median splits up to k.
ClusterState nng_init(const Matrix& X, int k, int neighbors = 5);

}  // namespace mfpc

#endif  // MFPC_BASELINES_HPP
