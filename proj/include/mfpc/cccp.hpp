#ifndef MFPC_CCCP_HPP
#define MFPC_CCCP_HPP

#include <Eigen/Cholesky>
#include <optional>
#include <vector>

#include "mfpc/linalg.hpp"
#include "mfpc/types.hpp"

namespace mfpc {

// One per-column problem: minimize over w
//   1/2 |w|^2 + c1/2 w'Sw + c2 sum_j (1 - |w'a_j|)_+ + sigma/2 |w'Gw - 1|
// where the a_j are the other-cluster difference vectors (columns of A),
// S the within-cluster scatter and G the sum of x x' over all samples.
class SubproblemInstance {
public:
    SubproblemInstance(Matrix A, Matrix S, Matrix G, SolverConfig config,
                       std::optional<Vector> init = std::nullopt);

    const Matrix& A() const { return A_; }
    const Matrix& S() const { return S_; }
    const Matrix& G() const { return G_; }
    const SolverConfig& config() const { return config_; }
    const std::optional<Vector>& init() const { return init_; }

    int dim() const { return static_cast<int>(A_.rows()); }
    int others() const { return static_cast<int>(A_.cols()); }

    // P = I + c1*S, factored once; P^{-1}A and the a_j'P^{-1}a_j diagonal are
    // reused across inner solves.
    const Eigen::LLT<Matrix>& llt() const { return llt_; }
    const Matrix& A_bar() const { return A_bar_; }
    const Vector& beta() const { return beta_; }

private:
    Matrix A_, S_, G_;
    SolverConfig config_;
    std::optional<Vector> init_;
    Eigen::LLT<Matrix> llt_;
    Matrix A_bar_;
    Vector beta_;
};

// Builds the instance for one cluster on (possibly deflated) data.
SubproblemInstance make_subproblem(const Matrix& X, const std::vector<int>& members,
                                   const Vector& center, const SolverConfig& config,
                                   std::optional<Vector> init = std::nullopt);

struct CccpTrace {
    std::vector<Vector> iterates;
    std::vector<double> objectives;        // penalty objective per iterate
    std::vector<double> ball_violations;   // |w'Gw - 1| per iterate
    bool converged = false;
    int iterations = 0;

    bool objective_non_increasing(double slack = 1e-10) const;
    // One CSV line per iterate: iteration,objective,constraint_violation
    std::string to_csv() const;
};

// Full penalty objective, constant terms included.
double penalty_objective(const Vector& w, const SubproblemInstance& inst);

// Subgradient of the concave part: -c2 sum_j sign(w'a_j) a_j - sigma G w,
// with sign(0) taken as 0.
Vector concave_subgradient(const Vector& w, const SubproblemInstance& inst);

// Convex part of the DC split plus the linearization term g'w; the quantity
// each CCCP step minimizes.
double convex_majorant_value(const Vector& w, const Vector& g, const SubproblemInstance& inst);

// Minimizes convex_majorant_value over w. Hinge terms enter through box-
// constrained dual coordinates; the (w'Gw-1)_+ term through cutting planes
// refined around the dual solve. The result is never worse than `warm`.
Vector solve_convex_subproblem(const Vector& g, const Vector& warm, const SubproblemInstance& inst);

// Algorithm: start from the smallest eigenvector of S (or the supplied
// init), then alternate subgradient evaluation and convex solves until the
// iterate movement drops below tol_cccp.
std::pair<Vector, CccpTrace> solve_column(const SubproblemInstance& inst);

}  // namespace mfpc

#endif  // MFPC_CCCP_HPP
