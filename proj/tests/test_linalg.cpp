#include <cmath>

#include "doctest.h"
#include "mfpc/linalg.hpp"
#include "mfpc/rng.hpp"
#include "oracles.hpp"

using namespace mfpc;

TEST_CASE("scatter of a single member at the center is zero") {
    Matrix X(2, 1);
    X.col(0) << 3.0, -1.0;
    Vector c(2);
    c << 3.0, -1.0;
    const ScatterMatrix S = scatter_matrix(X, {0}, c);
    CHECK(S.S.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scatter matches the hand-expanded two-point case") {
    Matrix X(2, 2);
    X.col(0) << 1.0, 0.0;
    X.col(1) << -1.0, 0.0;
    const ScatterMatrix S = scatter_matrix(X, {0, 1}, Vector::Zero(2));
    Matrix expected(2, 2);
    expected << 2.0, 0.0, 0.0, 0.0;
    CHECK((S.S - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scatter matches the brute-force double loop on a random instance") {
    Rng rng(11);
    const Matrix X = oracle::random_matrix(rng, 5, 20);
    std::vector<int> members;
    for (int j = 0; j < 20; j += 2) members.push_back(j);
    const Vector center = oracle::random_unit(rng, 5);
    const ScatterMatrix S = scatter_matrix(X, members, center);
    const Matrix brute = oracle::scatter_brute(X, members, center);
    const double scale = std::max(1.0, brute.cwiseAbs().maxCoeff());
    CHECK((S.S - brute).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    CHECK(S.well_formed());
}

TEST_CASE("scatter rejects an empty member set") {
    CHECK_THROWS_AS(scatter_matrix(Matrix::Zero(2, 2), {}, Vector::Zero(2)), EmptyMemberSet);
}

TEST_CASE("parallel scatter agrees with the serial reference") {
    Rng rng(12);
    const Matrix X = oracle::random_matrix(rng, 6, 3000);
    std::vector<int> members;
    for (int j = 0; j < 3000; j += 3) members.push_back(j);
    const Vector center = oracle::random_unit(rng, 6);
    const Matrix a = scatter_matrix(X, members, center).S;
    const Matrix b = serial::scatter_matrix(X, members, center).S;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
}

TEST_CASE("smallest eigenvector on diagonal matrices") {
    Matrix D = Vector{{3.0, 1.0, 2.0}}.asDiagonal();
    const Vector v = smallest_eigenvector(ScatterMatrix{D});
    CHECK(std::abs(v[0]) < 1e-12);
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v[2]) < 1e-12);

    Matrix D2(2, 2);
    D2 << 2.0, 0.0, 0.0, 0.0;
    const Vector v2 = smallest_eigenvector(ScatterMatrix{D2});
    CHECK(std::abs(v2[0]) < 1e-12);
    CHECK(v2[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("smallest eigenvector beats random probes on a random PSD matrix") {
    Rng rng(13);
    const Matrix S = oracle::random_psd(rng, 6);
    const Vector v = smallest_eigenvector(ScatterMatrix{S});
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double achieved = v.dot(S * v);
    for (int probe = 0; probe < 1000; ++probe) {
        const Vector u = oracle::random_unit(rng, 6);
        CHECK(achieved <= u.dot(S * u) + 1e-10);
    }
}

TEST_CASE("smallest eigenvector sign convention is deterministic") {
    Rng rng(14);
    const Matrix S = oracle::random_psd(rng, 5);
    const Vector a = smallest_eigenvector(ScatterMatrix{S});
    const Vector b = smallest_eigenvector(ScatterMatrix{S});
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > 1e-12) {
            CHECK(a[i] > 0.0);
            break;
        }
    }
}

TEST_CASE("large-dimension path uses power iteration and still works") {
    const int d = 600;
    Vector diag(d);
    for (int i = 0; i < d; ++i) diag[i] = 2.0 + i;
    diag[37] = 0.5;  // unique minimum
    Matrix S = diag.asDiagonal();
    const Vector v = smallest_eigenvector(ScatterMatrix{std::move(S)});
    CHECK(std::abs(v[37]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("deflate removes the component along w") {
    Matrix X = Matrix::Identity(2, 2);
    Vector w(2);
    w << 1.0, 0.0;
    const Matrix out = deflate(X, w);
    CHECK(out.col(0).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(out(0, 1) == 0.0);
    CHECK(out(1, 1) == 1.0);
}

TEST_CASE("deflate output is orthogonal to w and matches the per-column loop") {
    Rng rng(15);
    const Matrix X = oracle::random_matrix(rng, 4, 15);
    const Vector w = 2.5 * oracle::random_unit(rng, 4);
    const Matrix out = deflate(X, w);
    const Vector wn = w.normalized();
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        CHECK(std::abs(w.dot(out.col(j))) <= 1e-10 * X.col(j).norm() * w.norm());
        const Vector expected = X.col(j) - wn * (wn.dot(X.col(j)));
        CHECK((out.col(j) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // idempotence
    const Matrix twice = deflate(out, w);
    CHECK((twice - out).cwiseAbs().maxCoeff() <= 1e-12);
    // serial reference agreement
    const Matrix ref = serial::deflate(X, w);
    CHECK((out - ref).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("deflate rejects a zero direction") {
    CHECK_THROWS_AS(deflate(Matrix::Identity(2, 2), Vector::Zero(2)), ZeroDirection);
}

TEST_CASE("gaussian kernel map basics") {
    Matrix basis(1, 2);
    basis << 0.0, 1.0;
    const KernelSpec spec = KernelSpec::gaussian(1.0);
    const Matrix K = kernel_map(basis, basis, spec);
    CHECK(K(0, 0) == 1.0);
    CHECK(K(1, 1) == 1.0);
    CHECK(K(1, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(K(1, 0) == doctest::Approx(0.367879).epsilon(1e-5));
}

TEST_CASE("linear kernel map is the inner-product matrix") {
    Rng rng(16);
    const Matrix basis = oracle::random_matrix(rng, 3, 4);
    const Matrix queries = oracle::random_matrix(rng, 3, 6);
    const Matrix K = kernel_map(queries, basis, KernelSpec::linear());
    CHECK((K - basis.transpose() * queries).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("gaussian gram is symmetric with unit diagonal and entries in (0,1]") {
    Rng rng(17);
    const Matrix X = oracle::random_matrix(rng, 3, 40);
    const Matrix K = kernel_map(X, X, KernelSpec::gaussian(0.7));
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
        CHECK(K(i, i) == 1.0);
        for (Eigen::Index j = 0; j < K.cols(); ++j) {
            CHECK(K(i, j) > 0.0);
            CHECK(K(i, j) <= 1.0);
        }
    }
    const Matrix ref = serial::kernel_map(X, X, KernelSpec::gaussian(0.7));
    CHECK((K - ref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pairwise distances agree with the serial reference") {
    Rng rng(18);
    const Matrix X = oracle::random_matrix(rng, 4, 100);
    const Matrix a = pairwise_sq_dists(X);
    const Matrix b = serial::pairwise_sq_dists(X);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("restricted smallest eigenvector stays orthogonal to excluded directions") {
    Rng rng(19);
    const Matrix S = oracle::random_psd(rng, 6);
    std::vector<Vector> excluded{oracle::random_unit(rng, 6)};
    const Vector v = smallest_eigenvector_excluding(ScatterMatrix{S}, excluded);
    CHECK(std::abs(v.dot(excluded[0])) <= 1e-10);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // optimal within the complement: beat random probes deflated into it
    const double achieved = v.dot(S * v);
    for (int probe = 0; probe < 500; ++probe) {
        Vector u = oracle::random_unit(rng, 6);
        u -= excluded[0] * excluded[0].dot(u);
        if (u.norm() < 1e-6) continue;
        u.normalize();
        CHECK(achieved <= u.dot(S * u) + 1e-10);
    }
}
