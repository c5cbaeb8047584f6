#include "mfpc/cccp.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "mfpc/parallel.hpp"

namespace mfpc {

namespace {

double hinge_pos(double t) { return t > 0.0 ? t : 0.0; }

double sign0(double t) {
    if (t > 0.0) return 1.0;
    if (t < 0.0) return -1.0;
    return 0.0;
}

// True inner objective: convex part + g'w (no cutting-plane model).
double inner_objective(const Vector& w, const Vector& g, const SubproblemInstance& inst) {
    const SolverConfig& cfg = inst.config();
    const Vector t = inst.A().transpose() * w;
    const double hinge = chunked_sum(static_cast<std::size_t>(t.size()), 0.0, [&](std::size_t j) {
        return hinge_pos(std::abs(t[static_cast<Eigen::Index>(j)]) - 1.0);
    });
    const double quad = 0.5 * w.squaredNorm() + 0.5 * cfg.c1 * w.dot(inst.S() * w);
    const double ball = hinge_pos(w.dot(inst.G() * w) - 1.0);
    return quad + cfg.c2 * hinge + cfg.sigma * ball + g.dot(w);
}

constexpr int kMaxSweeps = 5000;
constexpr int kMaxCuts = 64;

}  // namespace

SubproblemInstance::SubproblemInstance(Matrix A, Matrix S, Matrix G, SolverConfig config,
                                       std::optional<Vector> init)
    : A_(std::move(A)), S_(std::move(S)), G_(std::move(G)), config_(std::move(config)),
      init_(std::move(init)) {
    config_.validate();
    if (A_.cols() < 1) throw Error("SubproblemInstance: A must have at least one column");
    if (S_.rows() != A_.rows() || G_.rows() != A_.rows()) {
        throw Error("SubproblemInstance: dimension mismatch");
    }
    const auto d = A_.rows();
    Matrix P = Matrix::Identity(d, d) + config_.c1 * S_;
    llt_.compute(P);
    if (llt_.info() != Eigen::Success) {
        throw Error("SubproblemInstance: I + c1*S is not positive definite");
    }
    A_bar_ = llt_.solve(A_);
    beta_ = (A_.array() * A_bar_.array()).colwise().sum().transpose();
}

SubproblemInstance make_subproblem(const Matrix& X, const std::vector<int>& members,
                                   const Vector& center, const SolverConfig& config,
                                   std::optional<Vector> init) {
    if (members.empty()) throw EmptyMemberSet("make_subproblem: empty member set");
    const auto d = X.rows();
    const auto m = X.cols();
    std::vector<char> is_member(static_cast<std::size_t>(m), 0);
    for (int j : members) is_member[static_cast<std::size_t>(j)] = 1;

    Matrix A(d, m - static_cast<Eigen::Index>(members.size()));
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
        if (!is_member[static_cast<std::size_t>(j)]) A.col(col++) = X.col(j) - center;
    }

    ScatterMatrix S = scatter_matrix(X, members, center);

    Matrix G = X * X.transpose();
    G = ((G + G.transpose()) * 0.5).eval();

    return SubproblemInstance(std::move(A), std::move(S.S), std::move(G), config, std::move(init));
}

bool CccpTrace::objective_non_increasing(double slack) const {
    for (std::size_t i = 1; i < objectives.size(); ++i) {
        if (objectives[i] > objectives[i - 1] + slack) return false;
    }
    return true;
}

std::string CccpTrace::to_csv() const {
    std::string out = "iteration,objective,constraint_violation\n";
    char line[96];
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", i, objectives[i], ball_violations[i]);
        out += line;
    }
    return out;
}

double penalty_objective(const Vector& w, const SubproblemInstance& inst) {
    const SolverConfig& cfg = inst.config();
    const Vector t = inst.A().transpose() * w;
    const double hinge = chunked_sum(static_cast<std::size_t>(t.size()), 0.0, [&](std::size_t j) {
        return hinge_pos(1.0 - std::abs(t[static_cast<Eigen::Index>(j)]));
    });
    return 0.5 * w.squaredNorm() + 0.5 * cfg.c1 * w.dot(inst.S() * w) + cfg.c2 * hinge +
           0.5 * cfg.sigma * std::abs(w.dot(inst.G() * w) - 1.0);
}

Vector concave_subgradient(const Vector& w, const SubproblemInstance& inst) {
    const SolverConfig& cfg = inst.config();
    const Vector t = inst.A().transpose() * w;
    Vector signs(t.size());
    for (Eigen::Index j = 0; j < t.size(); ++j) signs[j] = sign0(t[j]);
    return -cfg.c2 * (inst.A() * signs) - cfg.sigma * (inst.G() * w);
}

double convex_majorant_value(const Vector& w, const Vector& g, const SubproblemInstance& inst) {
    return inner_objective(w, g, inst);
}

Vector solve_convex_subproblem(const Vector& g, const Vector& warm, const SubproblemInstance& inst) {
    const SolverConfig& cfg = inst.config();
    const int d = inst.dim();
    const int J = inst.others();
    const double c2 = cfg.c2;
    const double sigma = cfg.sigma;

    // Dual state. v = g + A*alpha + sum_t mu_t c_t, z = P^{-1} v, w = -z.
    Vector alpha = Vector::Zero(J);
    Vector v = g;
    Vector z = inst.llt().solve(g);

    // Cutting planes for sigma*(w'Gw-1)_+ ; slack_mass is the weight parked
    // on the implicit zero cut.
    std::vector<Vector> cut_c, cut_cbar;
    std::vector<double> cut_d, mu;
    Matrix cut_gram(kMaxCuts, kMaxCuts);
    double slack_mass = sigma;

    const auto model_term = [&](const Vector& w) {
        double best = 0.0;
        for (std::size_t t = 0; t < cut_c.size(); ++t) {
            best = std::max(best, cut_c[t].dot(w) + cut_d[t]);
        }
        return sigma * best;
    };

    const auto primal_model = [&](const Vector& w) {
        const Vector t = inst.A().transpose() * w;
        double hinge = 0.0;
        for (Eigen::Index j = 0; j < t.size(); ++j) hinge += hinge_pos(std::abs(t[j]) - 1.0);
        return 0.5 * w.squaredNorm() + 0.5 * cfg.c1 * w.dot(inst.S() * w) + c2 * hinge +
               model_term(w) + g.dot(w);
    };

    const auto dual_value = [&]() {
        double val = -0.5 * v.dot(z);
        val -= alpha.cwiseAbs().sum();
        for (std::size_t t = 0; t < cut_c.size(); ++t) val += mu[t] * cut_d[t];
        return val;
    };

    const auto sweep_alpha = [&]() {
        if (c2 <= 0.0) return;
        for (int j = 0; j < J; ++j) {
            const double beta = inst.beta()[j];
            if (beta <= 1e-300) continue;
            const auto a = inst.A().col(j);
            const double gamma = a.dot(z) - alpha[j] * beta;
            double next = 0.0;
            if (gamma < -1.0) {
                next = std::min(c2, (-1.0 - gamma) / beta);
            } else if (gamma > 1.0) {
                next = std::max(-c2, (1.0 - gamma) / beta);
            }
            const double delta = next - alpha[j];
            if (delta != 0.0) {
                alpha[j] = next;
                v += delta * a;
                z += delta * inst.A_bar().col(j);
            }
        }
    };

    const auto sweep_cuts = [&]() {
        const std::size_t T = cut_c.size();
        // explicit cut vs slack
        for (std::size_t t = 0; t < T; ++t) {
            const double curve = cut_gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
            if (curve <= 1e-300) continue;
            double delta = (cut_d[t] - cut_c[t].dot(z)) / curve;
            delta = std::min(std::max(delta, -mu[t]), slack_mass);
            if (delta != 0.0) {
                mu[t] += delta;
                slack_mass -= delta;
                v += delta * cut_c[t];
                z += delta * cut_cbar[t];
            }
        }
        // explicit cut pairs
        for (std::size_t t = 0; t + 1 < T; ++t) {
            for (std::size_t s = t + 1; s < T; ++s) {
                const double curve = cut_gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) -
                                     2.0 * cut_gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) +
                                     cut_gram(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
                if (curve <= 1e-300) continue;
                double delta = (cut_d[t] - cut_d[s] - (cut_c[t] - cut_c[s]).dot(z)) / curve;
                delta = std::min(std::max(delta, -mu[t]), mu[s]);
                if (delta != 0.0) {
                    mu[t] += delta;
                    mu[s] -= delta;
                    v += delta * (cut_c[t] - cut_c[s]);
                    z += delta * (cut_cbar[t] - cut_cbar[s]);
                }
            }
        }
    };

    bool clean = false;
    int sweeps_used = 0;
    for (int round = 0; round < kMaxCuts && !clean; ++round) {
        // inner dual coordinate ascent on the current cut model
        bool gap_ok = false;
        for (; sweeps_used < kMaxSweeps; ++sweeps_used) {
            sweep_alpha();
            sweep_cuts();
            const Vector w = -z;
            const double primal = primal_model(w);
            const double gap = primal - dual_value();
            if (gap <= cfg.tol_qp * std::max(1.0, std::abs(primal))) {
                gap_ok = true;
                break;
            }
        }
        const Vector w = -z;
        const double exact = sigma * hinge_pos(w.dot(inst.G() * w) - 1.0);
        const double modeled = model_term(w);
        if (gap_ok && exact - modeled <= cfg.tol_qp * std::max(1.0, std::abs(primal_model(w)))) {
            clean = true;
            break;
        }
        if (!gap_ok) break;
        if (static_cast<int>(cut_c.size()) >= kMaxCuts) break;
        // new cut: linearization of w'Gw - 1 at the current point
        Vector c = 2.0 * (inst.G() * w);
        const double dline = -w.dot(inst.G() * w) - 1.0;
        Vector cbar = inst.llt().solve(c);
        const std::size_t t = cut_c.size();
        for (std::size_t s = 0; s < t; ++s) {
            const double val = c.dot(cut_cbar[s]);
            cut_gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = val;
            cut_gram(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = val;
        }
        cut_gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) = c.dot(cbar);
        cut_c.push_back(std::move(c));
        cut_cbar.push_back(std::move(cbar));
        cut_d.push_back(dline);
        mu.push_back(0.0);
    }

    const Vector w = -z;
    const double at_w = inner_objective(w, g, inst);
    const double at_warm = inner_objective(warm, g, inst);
    if (clean) {
        return at_w <= at_warm ? w : warm;
    }
    if (at_w < at_warm - cfg.tol_qp * std::max(1.0, std::abs(at_warm))) {
        return w;
    }
    throw InnerSolverStall("solve_convex_subproblem: no decrease within iteration cap");
}

std::pair<Vector, CccpTrace> solve_column(const SubproblemInstance& inst) {
    const SolverConfig& cfg = inst.config();
    Vector w = inst.init() ? *inst.init() : smallest_eigenvector(ScatterMatrix{inst.S()});

    CccpTrace trace;
    const auto record = [&](const Vector& x) {
        trace.iterates.push_back(x);
        trace.objectives.push_back(penalty_objective(x, inst));
        trace.ball_violations.push_back(std::abs(x.dot(inst.G() * x) - 1.0));
    };
    record(w);

    for (int t = 0; t < cfg.max_cccp_iters; ++t) {
        const Vector g = concave_subgradient(w, inst);
        Vector next = solve_convex_subproblem(g, w, inst);
        record(next);
        const double step = (next - w).norm();
        w = std::move(next);
        trace.iterations = t + 1;
        if (step <= cfg.tol_cccp) {
            trace.converged = true;
            break;
        }
    }
    return {w, std::move(trace)};
}

}  // namespace mfpc
