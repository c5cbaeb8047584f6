#include <limits>

#include "doctest.h"
#include "mfpc/rng.hpp"
#include "mfpc/types.hpp"

using namespace mfpc;

TEST_CASE("validate_dataset accepts table-shaped data") {
    Matrix X = Matrix::Random(3, 323);
    std::vector<int> y(323);
    for (int j = 0; j < 323; ++j) y[static_cast<std::size_t>(j)] = j % 3;
    const Dataset d = validate_dataset(X, y);
    CHECK(d.n() == 3);
    CHECK(d.m() == 323);
    CHECK(d.num_classes() == 3);
}

TEST_CASE("validate_dataset accepts a 1x1 matrix") {
    Matrix X(1, 1);
    X(0, 0) = 0.0;
    const Dataset d = validate_dataset(X);
    CHECK(d.n() == 1);
    CHECK(d.m() == 1);
    CHECK_FALSE(d.has_labels());
}

TEST_CASE("validate_dataset rejects non-finite entries") {
    Matrix X = Matrix::Zero(2, 4);
    X(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_dataset(X), NonFiniteEntry);
    X(1, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_dataset(X), NonFiniteEntry);
}

TEST_CASE("validate_dataset rejects empty and bad labels") {
    CHECK_THROWS_AS(validate_dataset(Matrix(0, 0)), EmptyMatrix);
    Matrix X = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(validate_dataset(X, std::vector<int>{0, 1, 3}), LabelOutOfRange);
    CHECK_THROWS_AS(validate_dataset(X, std::vector<int>{0, 0, 2}), LabelOutOfRange);  // class 1 missing
    CHECK_THROWS_AS(validate_dataset(X, std::vector<int>{0, 1}), LabelOutOfRange);
}

TEST_CASE("construction is total: fuzzed inputs are rejected or valid") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_index(4));
        const int m = 1 + static_cast<int>(rng.uniform_index(12));
        Matrix X(n, m);
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < n; ++i) X(i, j) = rng.gaussian();
        }
        if (rng.uniform01() < 0.3) {
            X(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n))),
              static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(m)))) =
                std::numeric_limits<double>::quiet_NaN();
        }
        std::optional<std::vector<int>> labels;
        if (rng.uniform01() < 0.5) {
            labels.emplace(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                (*labels)[static_cast<std::size_t>(j)] = static_cast<int>(rng.uniform_index(3)) - 1;
            }
        }
        try {
            const Dataset d = validate_dataset(X, labels);
            CHECK(d.features().allFinite());
            if (d.has_labels()) {
                for (int y : d.labels()) {
                    CHECK(y >= 0);
                    CHECK(y < d.num_classes());
                }
            }
        } catch (const Error&) {
            // rejected is fine
        }
    }
}

TEST_CASE("cluster state derives member sets that partition the samples") {
    ClusterState s({0, 1, 2, 1, 0}, 3);
    const auto sets = s.member_sets();
    REQUIRE(sets.size() == 3);
    CHECK(sets[0] == std::vector<int>{0, 4});
    CHECK(sets[1] == std::vector<int>{1, 3});
    CHECK(sets[2] == std::vector<int>{2});
    CHECK(s.counts() == std::vector<int>{2, 2, 1});
    CHECK_THROWS_AS(ClusterState({0, 3}, 3), LabelOutOfRange);
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.c1 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = SolverConfig{};
    cfg.tol_qp = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = SolverConfig{};
    cfg.kernel = KernelSpec::gaussian(-2.0);
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("flat model invariants") {
    FlatModel model;
    model.projections = {Matrix::Identity(4, 2), Matrix::Identity(4, 2)};
    model.center_projections = {Vector::Zero(2), Vector::Zero(2)};
    CHECK_NOTHROW(model.validate(1e-6));
    CHECK(model.d() == 4);
    CHECK(model.p() == 2);

    Matrix skew(4, 2);
    skew << 1, 1, 0, 1, 0, 0, 0, 0;
    model.projections[1] = skew;
    CHECK(model.orthogonality_defect() > 0.5);
    CHECK_THROWS_AS(model.validate(1e-6), Error);

    model.projections[1] = Matrix::Identity(4, 3);
    CHECK_THROWS_AS(model.validate(1e-6), Error);
}
