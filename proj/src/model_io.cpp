#include "mfpc/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mfpc {

namespace {

constexpr const char* kMagic = "mfpc-model v1";

void write_matrix(std::ostream& out, const std::string& name, const Matrix& M) {
    out << name << " " << M.rows() << " " << M.cols() << "\n";
    char buf[32];
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", M(r, c));
            out << (c ? " " : "") << buf;
        }
        out << "\n";
    }
}

void write_vector(std::ostream& out, const std::string& name, const Vector& v) {
    write_matrix(out, name, Matrix(v.transpose()));
}

struct Reader {
    std::ifstream in;
    std::string path;
    int line_no = 0;

    explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
        if (!in) throw MissingFile("model file not found: " + p);
    }

    std::string next_line() {
        std::string line;
        if (!std::getline(in, line)) {
            throw ParseError("model file truncated: " + path);
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    void expect(const std::string& want) {
        const std::string got = next_line();
        if (got != want) {
            throw ParseError("model file " + path + ": expected '" + want + "' on line " +
                             std::to_string(line_no));
        }
    }

    std::pair<std::string, std::string> key_value() {
        const std::string line = next_line();
        const auto sep = line.find(' ');
        if (sep == std::string::npos) {
            throw ParseError("model file " + path + ": bad key-value on line " +
                             std::to_string(line_no));
        }
        return {line.substr(0, sep), line.substr(sep + 1)};
    }

    Matrix matrix(const std::string& expected_name) {
        std::istringstream head(next_line());
        std::string name;
        Eigen::Index rows = 0, cols = 0;
        head >> name >> rows >> cols;
        if (name != expected_name || rows < 0 || cols < 0) {
            throw ParseError("model file " + path + ": bad matrix header on line " +
                             std::to_string(line_no));
        }
        Matrix M(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            std::istringstream row(next_line());
            for (Eigen::Index c = 0; c < cols; ++c) {
                if (!(row >> M(r, c))) {
                    throw ParseError("model file " + path + ": short matrix row on line " +
                                     std::to_string(line_no));
                }
            }
        }
        return M;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open model file for writing: " + path);
    return out;
}

void write_kernel(std::ostream& out, const KernelSpec& spec) {
    if (spec.is_gaussian()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", spec.mu);
        out << "kernel gaussian " << buf << "\n";
    } else {
        out << "kernel linear\n";
    }
}

KernelSpec parse_kernel(const std::string& value) {
    std::istringstream ss(value);
    std::string kind;
    ss >> kind;
    if (kind == "linear") return KernelSpec::linear();
    if (kind == "gaussian") {
        double mu = 0.0;
        if (!(ss >> mu)) throw ParseError("model file: gaussian kernel missing mu");
        return KernelSpec::gaussian(mu);
    }
    throw ParseError("model file: unknown kernel '" + kind + "'");
}

}  // namespace

void save_model(const std::string& path, const FlatModel& model, const SolverConfig& config) {
    auto out = open_out(path);
    out << kMagic << "\n";
    out << "method mfpc\n";
    write_kernel(out, model.kernel);
    out << "k " << model.k() << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "params c1=%.17g c2=%.17g sigma=%.17g p=%d seed=%llu", config.c1,
                  config.c2, config.sigma, config.p, static_cast<unsigned long long>(config.seed));
    out << buf << "\n";
    if (model.reduced_basis) {
        write_matrix(out, "reduced_basis", *model.reduced_basis);
    } else {
        out << "reduced_basis 0 0\n";
    }
    for (int i = 0; i < model.k(); ++i) {
        out << "cluster " << (i + 1) << "\n";
        write_matrix(out, "W", model.projections[static_cast<std::size_t>(i)]);
        write_vector(out, "center_projection", model.center_projections[static_cast<std::size_t>(i)]);
    }
    if (!out) throw IoError("write failed: " + path);
}

void save_model(const std::string& path, const std::string& method, const PlaneModel& model) {
    auto out = open_out(path);
    out << kMagic << "\n";
    out << "method " << method << "\n";
    out << "kernel linear\n";
    out << "k " << model.k() << "\n";
    for (int i = 0; i < model.k(); ++i) {
        out << "cluster " << (i + 1) << "\n";
        write_vector(out, "w", model.w[static_cast<std::size_t>(i)]);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", model.b[static_cast<std::size_t>(i)]);
        out << "b " << buf << "\n";
        if (model.centers) {
            write_vector(out, "center", (*model.centers)[static_cast<std::size_t>(i)]);
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void save_model(const std::string& path, const std::string& method, const GeneralFlatModel& model) {
    auto out = open_out(path);
    out << kMagic << "\n";
    out << "method " << method << "\n";
    out << "kernel linear\n";
    out << "k " << model.k() << "\n";
    for (int i = 0; i < model.k(); ++i) {
        out << "cluster " << (i + 1) << "\n";
        write_matrix(out, "W", model.W[static_cast<std::size_t>(i)]);
        write_vector(out, "gamma", model.gamma[static_cast<std::size_t>(i)]);
        if (model.centers) {
            write_vector(out, "center", (*model.centers)[static_cast<std::size_t>(i)]);
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

std::string peek_model_method(const std::string& path) {
    Reader r(path);
    r.expect(kMagic);
    auto [key, value] = r.key_value();
    if (key != "method") throw ParseError("model file " + path + ": missing method line");
    return value;
}

FlatModel load_mfpc_model(const std::string& path) {
    Reader r(path);
    r.expect(kMagic);
    auto [mkey, method] = r.key_value();
    if (mkey != "method" || method != "mfpc") {
        throw ParseError("model file " + path + ": not an mfpc model");
    }
    auto [kkey, kval] = r.key_value();
    if (kkey != "kernel") throw ParseError("model file " + path + ": missing kernel line");
    FlatModel model;
    model.kernel = parse_kernel(kval);
    auto [nkey, nval] = r.key_value();
    if (nkey != "k") throw ParseError("model file " + path + ": missing k line");
    const int k = std::stoi(nval);
    r.next_line();  // params echo, informational
    Matrix basis = r.matrix("reduced_basis");
    if (basis.size() > 0) model.reduced_basis = std::move(basis);
    for (int i = 0; i < k; ++i) {
        r.expect("cluster " + std::to_string(i + 1));
        model.projections.push_back(r.matrix("W"));
        model.center_projections.push_back(Vector(r.matrix("center_projection").row(0).transpose()));
    }
    return model;
}

PlaneModel load_plane_model(const std::string& path) {
    Reader r(path);
    r.expect(kMagic);
    auto [mkey, method] = r.key_value();
    if (mkey != "method") throw ParseError("model file " + path + ": missing method line");
    r.key_value();  // kernel line
    auto [nkey, nval] = r.key_value();
    if (nkey != "k") throw ParseError("model file " + path + ": missing k line");
    const int k = std::stoi(nval);
    PlaneModel model;
    const bool with_centers = method == "lkppc";
    if (with_centers) model.centers.emplace();
    for (int i = 0; i < k; ++i) {
        r.expect("cluster " + std::to_string(i + 1));
        model.w.push_back(Vector(r.matrix("w").row(0).transpose()));
        auto [bkey, bval] = r.key_value();
        if (bkey != "b") throw ParseError("model file " + path + ": missing b line");
        model.b.push_back(std::stod(bval));
        if (with_centers) model.centers->push_back(Vector(r.matrix("center").row(0).transpose()));
    }
    return model;
}

GeneralFlatModel load_general_flat_model(const std::string& path) {
    Reader r(path);
    r.expect(kMagic);
    auto [mkey, method] = r.key_value();
    if (mkey != "method") throw ParseError("model file " + path + ": missing method line");
    r.key_value();  // kernel line
    auto [nkey, nval] = r.key_value();
    if (nkey != "k") throw ParseError("model file " + path + ": missing k line");
    const int k = std::stoi(nval);
    GeneralFlatModel model;
    const bool with_centers = method == "lkfc";
    if (with_centers) model.centers.emplace();
    for (int i = 0; i < k; ++i) {
        r.expect("cluster " + std::to_string(i + 1));
        model.W.push_back(r.matrix("W"));
        model.gamma.push_back(Vector(r.matrix("gamma").row(0).transpose()));
        if (with_centers) model.centers->push_back(Vector(r.matrix("center").row(0).transpose()));
    }
    return model;
}

}  // namespace mfpc
