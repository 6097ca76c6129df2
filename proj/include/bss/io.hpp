#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bss/cfs_probe.hpp"
#include "bss/conditional_law.hpp"
#include "bss/grid.hpp"
#include "bss/kernel.hpp"
#include "bss/model.hpp"
#include "bss/simulate.hpp"

namespace bss::io {

using json = nlohmann::ordered_json;

// CSV columns t,B,sigma,Y,Z with 17 significant digits.
void write_wide_csv(const std::string& path, const SimulationResult& result);

// CSV columns t,value.
void write_path_csv(const std::string& path, const SamplePath& sample);

void write_values_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& values);

// Two-column numeric CSV; a single non-numeric header line is skipped.
std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path);

json to_json(const RegularityCertificate& cert);
json to_json(const ConditionReport& report);
json to_json(const GaussianLaw& law);
json to_json(const TubeProbeReport& report);
json to_json(const CounterexampleResult& result);

void write_json(const std::string& path, const json& j);

// FNV-1a 64-bit hash, used to fingerprint configs in run manifests.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace bss::io
