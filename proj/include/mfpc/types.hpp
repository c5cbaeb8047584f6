#ifndef MFPC_TYPES_HPP
#define MFPC_TYPES_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfpc/errors.hpp"

namespace mfpc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Kernel selection: plain inner products or Gaussian exp(-mu*||x-z||^2),
/// optionally evaluated against a reduced basis drawn from the data.
struct KernelSpec {
    enum class Kind { linear, gaussian };

    Kind kind = Kind::linear;
    double mu = 1.0;
    std::optional<int> reduced_size;

    static KernelSpec linear() { return {}; }
    static KernelSpec gaussian(double mu, std::optional<int> reduced = std::nullopt) {
        KernelSpec s;
        s.kind = Kind::gaussian;
        s.mu = mu;
        s.reduced_size = reduced;
        return s;
    }

    bool is_gaussian() const { return kind == Kind::gaussian; }
    void validate() const;
};

/// Column-major sample matrix: features are rows, samples are columns.
/// Labels, when present, are stored 0-based; files use 1-based labels and
/// the conversion happens in I/O code only.
class Dataset {
public:
    Dataset(Matrix features, std::optional<std::vector<int>> labels = std::nullopt,
            std::vector<std::string> feature_names = {});

    const Matrix& features() const { return features_; }
    int n() const { return static_cast<int>(features_.rows()); }
    int m() const { return static_cast<int>(features_.cols()); }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<int>& labels() const { return *labels_; }
    int num_classes() const { return num_classes_; }

    const std::vector<std::string>& feature_names() const { return feature_names_; }

private:
    Matrix features_;
    std::optional<std::vector<int>> labels_;
    std::vector<std::string> feature_names_;
    int num_classes_ = 0;
};

Dataset validate_dataset(Matrix features, std::optional<std::vector<int>> labels = std::nullopt,
                         std::vector<std::string> feature_names = {});

/// A full assignment of m samples to clusters 0..k-1.
struct ClusterState {
    std::vector<int> labels;
    int k = 0;

    ClusterState() = default;
    ClusterState(std::vector<int> y, int k_);

    int m() const { return static_cast<int>(labels.size()); }
    std::vector<std::vector<int>> member_sets() const;
    std::vector<int> counts() const;

    bool operator==(const ClusterState& o) const { return k == o.k && labels == o.labels; }
};

struct SolverConfig {
    double c1 = 1.0;
    double c2 = 1.0;
    double sigma = 100.0;
    int p = 1;
    double tol_cccp = 1e-3;
    double tol_qp = 1e-6;
    double tol_orth = 1e-6;
    int max_cccp_iters = 200;
    int max_outer_iters = 50;
    std::uint64_t seed = 0;
    KernelSpec kernel;

    void validate() const;
};

/// Per-cluster projection matrices plus projected centers. `d` is the
/// feature dimension the projections act on: n for the linear kernel, the
/// reduced-basis size otherwise.
struct FlatModel {
    std::vector<Matrix> projections;           // W_i, each d x p
    std::vector<Vector> center_projections;    // W_i^T applied to the cluster center
    KernelSpec kernel;
    std::optional<Matrix> reduced_basis;       // input-space basis points, n x r

    int k() const { return static_cast<int>(projections.size()); }
    int d() const { return projections.empty() ? 0 : static_cast<int>(projections.front().rows()); }
    int p() const { return projections.empty() ? 0 : static_cast<int>(projections.front().cols()); }

    // Largest |w_a . w_b| / (|w_a||w_b|) over distinct column pairs of any W_i.
    double orthogonality_defect() const;
    void validate(double tol_orth) const;
};

}  // namespace mfpc

#endif  // MFPC_TYPES_HPP
