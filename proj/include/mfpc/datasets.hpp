#ifndef MFPC_DATASETS_HPP
#define MFPC_DATASETS_HPP

#include <cstdint>
#include <string>

#include "mfpc/types.hpp"

namespace mfpc {

// Synthetic cross-manifold suites. Sizes and class counts are fixed; the
// seed only moves the sample positions along their manifolds.

// 323 x 3: a line segment through two unit spheres it skewers. Classes:
// line (123), lower sphere (100), upper sphere (100).
Dataset gen_haws(std::uint64_t seed);

// 300 x 3: a line, a square patch crossing it, and an ellipsoid around it.
// 100 samples per class.
Dataset gen_lpe(std::uint64_t seed);

// 122 x 2: y = sin(x) against y = -sin(x) on [0, 2pi], 61 each.
Dataset gen_sine2(std::uint64_t seed);

// 122 x 3: two opposite-phase helices (41 + 41) around their axis line (40).
Dataset gen_spiral(std::uint64_t seed);

// Dispatch by name: haws, lpe, sine2, spiral. Throws UnknownDataset.
Dataset generate_dataset(const std::string& name, std::uint64_t seed);

enum class LabelMode { auto_detect, force_labels, force_none };

// CSV: one sample per row, comma separated, optional "#"-prefixed header,
// optional final integer label column (1-based on disk).
Dataset load_csv(const std::string& path, LabelMode mode = LabelMode::auto_detect);
void save_csv(const Dataset& data, const std::string& path);

// Named benchmark, min-max normalized per feature column. Searches
// $MFPC_DATA_DIR, ./data and ../data.
Dataset load_benchmark(const std::string& name);

// Helper shared with the CLI: min-max normalize features to [0,1].
Dataset normalize_unit_range(const Dataset& data);

}  // namespace mfpc

#endif  // MFPC_DATASETS_HPP
