#ifndef MFPC_METRICS_HPP
#define MFPC_METRICS_HPP

#include <string>
#include <vector>

#include "mfpc/errors.hpp"

namespace mfpc {

// Adjusted Rand index, Hubert-Arabie form. 1.0 when both partitions are
// trivially identical (degenerate zero denominator).
double ari(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// Mutual information normalized by the arithmetic mean of the entropies,
// natural logarithms. Two single-cluster partitions score 1, a single
// cluster against anything else scores 0.
double nmi(const std::vector<int>& y_true, const std::vector<int>& y_pred);

struct MetricReport {
    double ari = 0.0;
    double nmi = 0.0;
    double runtime_seconds = 0.0;
    std::string method;
    std::string params;

    void validate() const {
        if (ari < -1.0 || ari > 1.0) throw Error("MetricReport: ari outside [-1,1]");
        if (nmi < 0.0 || nmi > 1.0) throw Error("MetricReport: nmi outside [0,1]");
    }
};

}  // namespace mfpc

#endif  // MFPC_METRICS_HPP
