#ifndef STATICLAB_MODEL_IO_HPP
#define STATICLAB_MODEL_IO_HPP

#include <string>

#include "staticlab/statics.hpp"

namespace staticlab {

// Declarative model configs (schema "staticlab-model/1", documented in
// docs/model_schema.md). A config either references a registry model by
// name or spells out a warped/chart construction; saved models serialize
// curves as sampled Hermite tables and round-trip to ~1e-12.
StaticModel load_model_file(const std::string& path);
StaticModel load_model_json(const std::string& json_text);

void save_model_file(const StaticModel& model, const std::string& path);
std::string save_model_json(const StaticModel& model);

} // namespace staticlab

#endif
