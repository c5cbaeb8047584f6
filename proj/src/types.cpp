#include "mfpc/types.hpp"

#include <algorithm>
#include <cmath>

#include "mfpc/linalg.hpp"

namespace mfpc {

void KernelSpec::validate() const {
    if (kind == Kind::gaussian && !(mu > 0.0)) {
        throw Error("KernelSpec: gaussian mu must be positive");
    }
    if (reduced_size && *reduced_size < 1) {
        throw Error("KernelSpec: reduced_size must be positive");
    }
}

Dataset::Dataset(Matrix features, std::optional<std::vector<int>> labels,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
    if (features_.rows() < 1 || features_.cols() < 1) {
        throw EmptyMatrix("Dataset: feature matrix must be at least 1x1");
    }
    if (!features_.allFinite()) {
        throw NonFiniteEntry("Dataset: feature matrix contains NaN or Inf");
    }
    if (labels_) {
        if (static_cast<int>(labels_->size()) != m()) {
            throw LabelOutOfRange("Dataset: label vector length does not match sample count");
        }
        const int k = *std::max_element(labels_->begin(), labels_->end()) + 1;
        if (k < 1) throw LabelOutOfRange("Dataset: labels must cover 1..k");
        std::vector<int> seen(static_cast<std::size_t>(k), 0);
        for (int y : *labels_) {
            if (y < 0 || y >= k) throw LabelOutOfRange("Dataset: label outside 1..k");
            seen[static_cast<std::size_t>(y)] = 1;
        }
        for (int s : seen) {
            if (!s) throw LabelOutOfRange("Dataset: labels must cover every value in 1..k");
        }
        num_classes_ = k;
    }
    if (!feature_names_.empty() && static_cast<int>(feature_names_.size()) != n()) {
        throw Error("Dataset: feature_names length does not match feature count");
    }
}

Dataset validate_dataset(Matrix features, std::optional<std::vector<int>> labels,
                         std::vector<std::string> feature_names) {
    return Dataset(std::move(features), std::move(labels), std::move(feature_names));
}

ClusterState::ClusterState(std::vector<int> y, int k_) : labels(std::move(y)), k(k_) {
    if (k < 1) throw Error("ClusterState: k must be >= 1");
    for (int v : labels) {
        if (v < 0 || v >= k) throw LabelOutOfRange("ClusterState: label outside 0..k-1");
    }
}

std::vector<std::vector<int>> ClusterState::member_sets() const {
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(k));
    for (int j = 0; j < m(); ++j) {
        sets[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])].push_back(j);
    }
    return sets;
}

std::vector<int> ClusterState::counts() const {
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    for (int v : labels) ++c[static_cast<std::size_t>(v)];
    return c;
}

void SolverConfig::validate() const {
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(sigma > 0.0)) {
        throw Error("SolverConfig: c1, c2, sigma must be positive");
    }
    if (p < 1) throw Error("SolverConfig: p must be >= 1");
    if (!(tol_cccp > 0.0) || !(tol_qp > 0.0) || !(tol_orth > 0.0)) {
        throw Error("SolverConfig: tolerances must be positive");
    }
    if (max_cccp_iters < 1 || max_outer_iters < 1) {
        throw Error("SolverConfig: iteration caps must be >= 1");
    }
    kernel.validate();
}

double FlatModel::orthogonality_defect() const {
    double worst = 0.0;
    for (const Matrix& W : projections) {
        worst = std::max(worst, column_orthogonality_defect(W));
    }
    return worst;
}

void FlatModel::validate(double tol_orth) const {
    if (projections.empty()) throw Error("FlatModel: no clusters");
    if (projections.size() != center_projections.size()) {
        throw Error("FlatModel: projections/centers size mismatch");
    }
    const int d0 = d();
    const int p0 = p();
    if (p0 < 1) throw Error("FlatModel: p must be >= 1");
    if (kernel.kind == KernelSpec::Kind::linear && p0 >= d0) {
        throw Error("FlatModel: linear kernel requires p < n");
    }
    for (std::size_t i = 0; i < projections.size(); ++i) {
        if (projections[i].rows() != d0 || projections[i].cols() != p0) {
            throw Error("FlatModel: all W_i must share d and p");
        }
        if (center_projections[i].size() != p0) {
            throw Error("FlatModel: center projection length must equal p");
        }
    }
    if (kernel.is_gaussian() && !reduced_basis) {
        throw Error("FlatModel: gaussian kernel requires a reduced basis");
    }
    if (orthogonality_defect() > tol_orth) {
        throw Error("FlatModel: column orthogonality defect exceeds tolerance");
    }
}

}  // namespace mfpc
