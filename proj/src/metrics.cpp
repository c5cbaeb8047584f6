#include "mfpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

namespace mfpc {

namespace {

// Contingency counts with labels compacted to 0..k-1 in order of value.
struct Contingency {
    std::vector<std::int64_t> row_sums, col_sums;
    std::vector<std::vector<std::int64_t>> cells;
    std::int64_t total = 0;
};

Contingency build_contingency(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw LengthMismatch("metrics: label vectors differ in length");
    if (a.size() < 2) throw LengthMismatch("metrics: need at least two samples");
    std::map<int, int> amap, bmap;
    for (int v : a) amap.emplace(v, 0);
    for (int v : b) bmap.emplace(v, 0);
    int idx = 0;
    for (auto& kv : amap) kv.second = idx++;
    idx = 0;
    for (auto& kv : bmap) kv.second = idx++;

    Contingency c;
    c.row_sums.assign(amap.size(), 0);
    c.col_sums.assign(bmap.size(), 0);
    c.cells.assign(amap.size(), std::vector<std::int64_t>(bmap.size(), 0));
    for (std::size_t j = 0; j < a.size(); ++j) {
        const int r = amap[a[j]];
        const int s = bmap[b[j]];
        ++c.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
        ++c.row_sums[static_cast<std::size_t>(r)];
        ++c.col_sums[static_cast<std::size_t>(s)];
        ++c.total;
    }
    return c;
}

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// Entropy of integer counts, summed over a sorted copy so the value does
// not depend on label naming.
double entropy_nats(std::vector<std::int64_t> counts, std::int64_t total) {
    std::sort(counts.begin(), counts.end());
    double h = 0.0;
    const double t = static_cast<double>(total);
    for (std::int64_t c : counts) {
        if (c <= 0) continue;
        const double p = static_cast<double>(c) / t;
        h -= p * std::log(p);
    }
    return h;
}

}  // namespace

double ari(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    const Contingency c = build_contingency(y_true, y_pred);
    std::int64_t cells2 = 0;
    for (const auto& row : c.cells) {
        for (std::int64_t v : row) cells2 += choose2(v);
    }
    std::int64_t rows2 = 0, cols2 = 0;
    for (std::int64_t v : c.row_sums) rows2 += choose2(v);
    for (std::int64_t v : c.col_sums) cols2 += choose2(v);

    const double pairs = static_cast<double>(choose2(c.total));
    const double expected = static_cast<double>(rows2) * static_cast<double>(cols2) / pairs;
    const double maximum = 0.5 * (static_cast<double>(rows2) + static_cast<double>(cols2));
    if (maximum == expected) return 1.0;
    return (static_cast<double>(cells2) - expected) / (maximum - expected);
}

double nmi(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    const Contingency c = build_contingency(y_true, y_pred);
    const double hu = entropy_nats(c.row_sums, c.total);
    const double hv = entropy_nats(c.col_sums, c.total);
    if (hu == 0.0 && hv == 0.0) return 1.0;
    if (hu == 0.0 || hv == 0.0) return 0.0;

    // Identical partitions up to renaming: exactly one occupied cell per row
    // and per column.
    bool one_to_one = c.cells.size() == c.col_sums.size();
    for (std::size_t r = 0; one_to_one && r < c.cells.size(); ++r) {
        int occupied = 0;
        for (std::size_t s = 0; s < c.cells[r].size(); ++s) {
            if (c.cells[r][s] > 0) {
                ++occupied;
                if (c.cells[r][s] != c.col_sums[s]) one_to_one = false;
            }
        }
        if (occupied != 1) one_to_one = false;
    }
    if (one_to_one) return 1.0;

    // Mutual information over sorted (cell, row, col) triples; sorting keeps
    // the summation order independent of label naming.
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> terms;
    for (std::size_t r = 0; r < c.cells.size(); ++r) {
        for (std::size_t s = 0; s < c.cells[r].size(); ++s) {
            if (c.cells[r][s] > 0) terms.emplace_back(c.cells[r][s], c.row_sums[r], c.col_sums[s]);
        }
    }
    std::sort(terms.begin(), terms.end());
    const double t = static_cast<double>(c.total);
    double mi = 0.0;
    for (const auto& [nij, a, b] : terms) {
        const double pij = static_cast<double>(nij) / t;
        mi += pij * std::log(t * static_cast<double>(nij) /
                             (static_cast<double>(a) * static_cast<double>(b)));
    }
    mi = std::max(0.0, mi);
    const double denom = 0.5 * (hu + hv);
    return std::min(1.0, mi / denom);
}

}  // namespace mfpc
