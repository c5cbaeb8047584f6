#include "mfpc/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mfpc/rng.hpp"

namespace mfpc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector unit_sphere_point(Rng& rng) {
    Vector v(3);
    double norm = 0.0;
    do {
        v[0] = rng.gaussian();
        v[1] = rng.gaussian();
        v[2] = rng.gaussian();
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

Dataset assemble(const std::vector<std::pair<Matrix, int>>& parts, std::vector<std::string> names) {
    int m = 0;
    for (const auto& [block, label] : parts) m += static_cast<int>(block.cols());
    Matrix X(parts.front().first.rows(), m);
    std::vector<int> y(static_cast<std::size_t>(m));
    int col = 0;
    for (const auto& [block, label] : parts) {
        for (int j = 0; j < block.cols(); ++j, ++col) {
            X.col(col) = block.col(j);
            y[static_cast<std::size_t>(col)] = label;
        }
    }
    return Dataset(std::move(X), std::move(y), std::move(names));
}

}  // namespace

Dataset gen_haws(std::uint64_t seed) {
    Rng rng(seed);
    Matrix line(3, 123);
    for (int j = 0; j < 123; ++j) {
        line.col(j) << 0.0, 0.0, rng.uniform(-2.0, 2.0);
    }
    Matrix lower(3, 100), upper(3, 100);
    for (int j = 0; j < 100; ++j) {
        lower.col(j) = unit_sphere_point(rng) + Vector{{0.0, 0.0, -1.0}};
    }
    for (int j = 0; j < 100; ++j) {
        upper.col(j) = unit_sphere_point(rng) + Vector{{0.0, 0.0, 1.0}};
    }
    return assemble({{line, 0}, {lower, 1}, {upper, 2}}, {"x", "y", "z"});
}

Dataset gen_lpe(std::uint64_t seed) {
    Rng rng(seed);
    Matrix line(3, 100);
    for (int j = 0; j < 100; ++j) {
        line.col(j) << 0.0, 0.0, rng.uniform(-3.0, 3.0);
    }
    Matrix plane(3, 100);
    for (int j = 0; j < 100; ++j) {
        plane.col(j) << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 1.0;
    }
    const Vector axes{{1.0, 0.8, 0.6}};
    const Vector center{{0.0, 0.0, -1.0}};
    Matrix ellipsoid(3, 100);
    for (int j = 0; j < 100; ++j) {
        ellipsoid.col(j) = unit_sphere_point(rng).cwiseProduct(axes) + center;
    }
    return assemble({{line, 0}, {plane, 1}, {ellipsoid, 2}}, {"x", "y", "z"});
}

Dataset gen_sine2(std::uint64_t seed) {
    Rng rng(seed);
    Matrix pos(2, 61), neg(2, 61);
    for (int j = 0; j < 61; ++j) {
        const double x = rng.uniform(0.0, kTwoPi);
        pos.col(j) << x, std::sin(x);
    }
    for (int j = 0; j < 61; ++j) {
        const double x = rng.uniform(0.0, kTwoPi);
        neg.col(j) << x, -std::sin(x);
    }
    return assemble({{pos, 0}, {neg, 1}}, {"x", "y"});
}

Dataset gen_spiral(std::uint64_t seed) {
    Rng rng(seed);
    Matrix helix_a(3, 41), helix_b(3, 41), line(3, 40);
    for (int j = 0; j < 41; ++j) {
        const double t = rng.uniform(0.0, 2.0 * kTwoPi);
        helix_a.col(j) << std::cos(t), std::sin(t), t / std::numbers::pi;
    }
    for (int j = 0; j < 41; ++j) {
        const double t = rng.uniform(0.0, 2.0 * kTwoPi);
        helix_b.col(j) << std::cos(t + std::numbers::pi), std::sin(t + std::numbers::pi),
            t / std::numbers::pi;
    }
    for (int j = 0; j < 40; ++j) {
        line.col(j) << 0.0, 0.0, rng.uniform(0.0, 4.0);
    }
    return assemble({{helix_a, 0}, {helix_b, 1}, {line, 2}}, {"x", "y", "z"});
}

Dataset generate_dataset(const std::string& name, std::uint64_t seed) {
    if (name == "haws") return gen_haws(seed);
    if (name == "lpe") return gen_lpe(seed);
    if (name == "sine2") return gen_sine2(seed);
    if (name == "spiral") return gen_spiral(seed);
    throw UnknownDataset("unknown dataset '" + name + "' (valid: haws, lpe, sine2, spiral)");
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_csv: cannot open " + path);
    out << "#";
    for (int i = 0; i < data.n(); ++i) {
        if (data.feature_names().empty()) {
            out << (i ? "," : " ") << "f" << (i + 1);
        } else {
            out << (i ? "," : " ") << data.feature_names()[static_cast<std::size_t>(i)];
        }
    }
    if (data.has_labels()) out << ",label";
    out << "\n";
    char buf[32];
    for (int j = 0; j < data.m(); ++j) {
        for (int i = 0; i < data.n(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", data.features()(i, j));
            out << (i ? "," : "") << buf;
        }
        if (data.has_labels()) out << "," << (data.labels()[static_cast<std::size_t>(j)] + 1);
        out << "\n";
    }
    if (!out) throw IoError("save_csv: write failed for " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, int line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
        throw ParseError("load_csv: bad number '" + s + "' on line " + std::to_string(line_no));
    }
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path, LabelMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("load_csv: cannot open " + path);

    std::vector<std::string> names;
    bool header_says_labels = false;
    bool saw_header = false;
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (saw_header || !rows.empty()) {
                throw ParseError("load_csv: stray header on line " + std::to_string(line_no));
            }
            saw_header = true;
            std::string rest = line.substr(1);
            if (!rest.empty() && rest[0] == ' ') rest = rest.substr(1);
            names = split_fields(rest);
            if (!names.empty() && names.back() == "label") {
                header_says_labels = true;
                names.pop_back();
            }
            continue;
        }
        const auto fields = split_fields(line);
        if (width == 0) {
            width = fields.size();
        } else if (fields.size() != width) {
            throw ParseError("load_csv: row width mismatch on line " + std::to_string(line_no));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_number(f, line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw EmptyMatrix("load_csv: no data rows in " + path);

    bool labels_present = false;
    switch (mode) {
        case LabelMode::force_labels:
            labels_present = true;
            break;
        case LabelMode::force_none:
            labels_present = false;
            break;
        case LabelMode::auto_detect: {
            if (saw_header) {
                labels_present = header_says_labels;
            } else if (width >= 2) {
                // last column integral and covering 1..k
                int maxv = 0;
                bool integral = true;
                for (const auto& row : rows) {
                    const double v = row.back();
                    if (v != std::floor(v) || v < 1.0 || v > 1e6) {
                        integral = false;
                        break;
                    }
                    maxv = std::max(maxv, static_cast<int>(v));
                }
                if (integral && maxv >= 1) {
                    std::vector<char> seen(static_cast<std::size_t>(maxv), 0);
                    for (const auto& row : rows) seen[static_cast<std::size_t>(row.back()) - 1] = 1;
                    labels_present = true;
                    for (char s : seen) {
                        if (!s) labels_present = false;
                    }
                }
            }
            break;
        }
    }
    if (labels_present && width < 2) {
        throw ParseError("load_csv: label column requested but only one column present");
    }

    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(width) - (labels_present ? 1 : 0);
    Matrix X(n, m);
    std::optional<std::vector<int>> labels;
    if (labels_present) labels.emplace(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            X(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        if (labels_present) {
            const double v = rows[static_cast<std::size_t>(j)].back();
            if (v != std::floor(v)) {
                throw ParseError("load_csv: non-integer label in row " + std::to_string(j + 1));
            }
            (*labels)[static_cast<std::size_t>(j)] = static_cast<int>(v) - 1;
        }
    }
    if (!names.empty() && static_cast<int>(names.size()) != n) names.clear();
    return Dataset(std::move(X), std::move(labels), std::move(names));
}

Dataset normalize_unit_range(const Dataset& data) {
    Matrix X = data.features();
    for (int i = 0; i < X.rows(); ++i) {
        const double lo = X.row(i).minCoeff();
        const double hi = X.row(i).maxCoeff();
        if (hi > lo) {
            X.row(i) = (X.row(i).array() - lo) / (hi - lo);
        } else {
            X.row(i).setZero();
        }
    }
    std::optional<std::vector<int>> labels;
    if (data.has_labels()) labels = data.labels();
    return Dataset(std::move(X), std::move(labels), data.feature_names());
}

Dataset load_benchmark(const std::string& name) {
    std::string file;
    if (name == "iris") {
        file = "iris.csv";
    } else if (name == "soybean") {
        file = "soybean_small.csv";
    } else {
        file = name + ".csv";
    }
    std::vector<std::filesystem::path> roots;
    if (const char* env = std::getenv("MFPC_DATA_DIR")) roots.emplace_back(env);
    roots.emplace_back("data");
    roots.emplace_back("../data");
    for (const auto& root : roots) {
        const auto candidate = root / file;
        if (std::filesystem::exists(candidate)) {
            return normalize_unit_range(load_csv(candidate.string(), LabelMode::auto_detect));
        }
    }
    throw MissingFile("load_benchmark: no '" + file + "' under $MFPC_DATA_DIR, ./data or ../data");
}

}  // namespace mfpc
