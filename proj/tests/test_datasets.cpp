#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mfpc/datasets.hpp"
#include "mfpc/rng.hpp"

using namespace mfpc;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

double line_residual(const Matrix& X, const std::vector<int>& idx) {
    // distance of each point from the z axis (x = y = 0)
    double worst = 0.0;
    for (int j : idx) worst = std::max(worst, std::hypot(X(0, j), X(1, j)));
    return worst;
}

std::vector<int> class_indices(const Dataset& d, int cls) {
    std::vector<int> idx;
    for (int j = 0; j < d.m(); ++j) {
        if (d.labels()[static_cast<std::size_t>(j)] == cls) idx.push_back(j);
    }
    return idx;
}

}  // namespace

TEST_CASE("haws has the published shape and exact geometry") {
    const Dataset d = gen_haws(0);
    CHECK(d.n() == 3);
    CHECK(d.m() == 323);
    CHECK(d.num_classes() == 3);
    const auto line = class_indices(d, 0);
    const auto lower = class_indices(d, 1);
    const auto upper = class_indices(d, 2);
    CHECK(line.size() == 123);
    CHECK(lower.size() == 100);
    CHECK(upper.size() == 100);
    CHECK(line_residual(d.features(), line) <= 1e-9);
    for (int j : lower) {
        const Vector c{{0.0, 0.0, -1.0}};
        CHECK(std::abs((d.features().col(j) - c).norm() - 1.0) <= 1e-9);
    }
    for (int j : upper) {
        const Vector c{{0.0, 0.0, 1.0}};
        CHECK(std::abs((d.features().col(j) - c).norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("lpe has the published shape and on-manifold samples") {
    const Dataset d = gen_lpe(0);
    CHECK(d.n() == 3);
    CHECK(d.m() == 300);
    CHECK(d.num_classes() == 3);
    const auto line = class_indices(d, 0);
    const auto plane = class_indices(d, 1);
    const auto ell = class_indices(d, 2);
    CHECK(line.size() == 100);
    CHECK(plane.size() == 100);
    CHECK(ell.size() == 100);
    CHECK(line_residual(d.features(), line) <= 1e-9);
    for (int j : plane) CHECK(std::abs(d.features()(2, j) - 1.0) <= 1e-9);
    for (int j : ell) {
        const double x = d.features()(0, j) / 1.0;
        const double y = d.features()(1, j) / 0.8;
        const double z = (d.features()(2, j) + 1.0) / 0.6;
        CHECK(std::abs(x * x + y * y + z * z - 1.0) <= 1e-9);
    }
}

TEST_CASE("sine2 lies exactly on the two sine curves") {
    const Dataset d = gen_sine2(0);
    CHECK(d.n() == 2);
    CHECK(d.m() == 122);
    CHECK(d.num_classes() == 2);
    const auto pos = class_indices(d, 0);
    const auto neg = class_indices(d, 1);
    CHECK(pos.size() == 61);
    CHECK(neg.size() == 61);
    for (int j : pos) CHECK(std::abs(d.features()(1, j) - std::sin(d.features()(0, j))) <= 1e-9);
    for (int j : neg) CHECK(std::abs(d.features()(1, j) + std::sin(d.features()(0, j))) <= 1e-9);
}

TEST_CASE("spiral helices and axis never intersect") {
    const Dataset d = gen_spiral(0);
    CHECK(d.n() == 3);
    CHECK(d.m() == 122);
    CHECK(d.num_classes() == 3);
    CHECK(class_indices(d, 0).size() == 41);
    CHECK(class_indices(d, 1).size() == 41);
    CHECK(class_indices(d, 2).size() == 40);
    // on-manifold: helices have unit cylinder radius, x = cos(pi z)
    for (int j : class_indices(d, 0)) {
        const auto col = d.features().col(j);
        CHECK(std::abs(col.head(2).norm() - 1.0) <= 1e-9);
        CHECK(std::abs(col[0] - std::cos(std::numbers::pi * col[2])) <= 1e-9);
    }
    double min_dist = std::numeric_limits<double>::infinity();
    for (int a = 0; a < d.m(); ++a) {
        for (int b = a + 1; b < d.m(); ++b) {
            if (d.labels()[static_cast<std::size_t>(a)] == d.labels()[static_cast<std::size_t>(b)]) continue;
            min_dist = std::min(min_dist, (d.features().col(a) - d.features().col(b)).norm());
        }
    }
    CHECK(min_dist > 0.0);
}

TEST_CASE("generators are deterministic in the seed") {
    const Dataset a = gen_haws(42);
    const Dataset b = gen_haws(42);
    const Dataset c = gen_haws(43);
    CHECK((a.features() - b.features()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.features() - c.features()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("generate_dataset dispatches and rejects unknown names") {
    CHECK(generate_dataset("sine2", 1).m() == 122);
    CHECK_THROWS_AS(generate_dataset("foo", 1), UnknownDataset);
}

TEST_CASE("csv round trip is bit exact") {
    Rng rng(31);
    Matrix X(3, 17);
    for (int j = 0; j < 17; ++j) {
        for (int i = 0; i < 3; ++i) X(i, j) = rng.gaussian() * std::pow(10.0, static_cast<double>(rng.uniform_index(7)) - 3.0);
    }
    std::vector<int> y(17);
    for (int j = 0; j < 17; ++j) y[static_cast<std::size_t>(j)] = j % 4;
    const Dataset d(X, y);
    const auto path = temp_file("mfpc_roundtrip.csv");
    save_csv(d, path.string());
    const Dataset back = load_csv(path.string());
    REQUIRE(back.n() == d.n());
    REQUIRE(back.m() == d.m());
    CHECK((back.features() - d.features()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.has_labels());
    CHECK(back.labels() == d.labels());
    std::filesystem::remove(path);
}

TEST_CASE("one-line csv with label column") {
    const auto path = temp_file("mfpc_oneline.csv");
    std::ofstream(path) << "1,2,3,1\n";
    const Dataset d = load_csv(path.string());
    CHECK(d.m() == 1);
    CHECK(d.n() == 3);
    REQUIRE(d.has_labels());
    CHECK(d.labels()[0] == 0);
    std::filesystem::remove(path);
}

TEST_CASE("label auto-detection requires a contiguous 1..k cover") {
    const auto path = temp_file("mfpc_nolabel.csv");
    std::ofstream(path) << "1.5,2\n2.5,4\n";  // last column {2,4} is not 1..k
    const Dataset d = load_csv(path.string());
    CHECK_FALSE(d.has_labels());
    CHECK(d.n() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("malformed csv rows raise ParseError naming the line") {
    const auto path = temp_file("mfpc_bad.csv");
    std::ofstream(path) << "1,2,3\n1,2\n";
    try {
        load_csv(path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::filesystem::remove(path);

    const auto path2 = temp_file("mfpc_bad2.csv");
    std::ofstream(path2) << "1,x,3\n";
    CHECK_THROWS_AS(load_csv(path2.string()), ParseError);
    std::filesystem::remove(path2);
}

TEST_CASE("missing files raise MissingFile") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv"), MissingFile);
}

TEST_CASE("iris benchmark loads normalized") {
    const Dataset d = load_benchmark("iris");
    CHECK(d.m() == 150);
    CHECK(d.n() == 4);
    CHECK(d.num_classes() == 3);
    CHECK(d.features().minCoeff() >= 0.0);
    CHECK(d.features().maxCoeff() <= 1.0);
    for (int i = 0; i < d.n(); ++i) {
        CHECK(d.features().row(i).maxCoeff() == 1.0);
        CHECK(d.features().row(i).minCoeff() == 0.0);
    }
}

TEST_CASE("force modes override label detection") {
    const auto path = temp_file("mfpc_force.csv");
    std::ofstream(path) << "1,2,1\n3,4,2\n";
    const Dataset with = load_csv(path.string(), LabelMode::force_labels);
    CHECK(with.has_labels());
    CHECK(with.n() == 2);
    const Dataset without = load_csv(path.string(), LabelMode::force_none);
    CHECK_FALSE(without.has_labels());
    CHECK(without.n() == 3);
    std::filesystem::remove(path);
}
