#ifndef MFPC_MODEL_IO_HPP
#define MFPC_MODEL_IO_HPP

#include <string>

#include "mfpc/baselines.hpp"
#include "mfpc/types.hpp"

namespace mfpc {

// Text model files: a "mfpc-model v1" magic line, "key value" header lines,
// then one matrix block per cluster written row-major with 17 significant
// digits. The method tag on the second line selects the payload layout.

void save_model(const std::string& path, const FlatModel& model, const SolverConfig& config);
void save_model(const std::string& path, const std::string& method, const PlaneModel& model);
void save_model(const std::string& path, const std::string& method, const GeneralFlatModel& model);

std::string peek_model_method(const std::string& path);

FlatModel load_mfpc_model(const std::string& path);
PlaneModel load_plane_model(const std::string& path);
GeneralFlatModel load_general_flat_model(const std::string& path);

}  // namespace mfpc

#endif  // MFPC_MODEL_IO_HPP
