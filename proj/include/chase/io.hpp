#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chase/chasing.hpp"
#include "chase/constraints.hpp"
#include "chase/set_function.hpp"

namespace chase {

// Ordered labels -> dense indices; the instance order is authoritative.
struct LabelMap {
  std::vector<std::string> labels;
  int index_of(const std::string& label) const;  // throws input_error
};

nlohmann::json function_to_json(const SetFunction& f, const LabelMap& lm);
SetFunction function_from_json(const nlohmann::json& j, const LabelMap& lm);

nlohmann::json constraint_to_json(const PartitionConstraint& c, const LabelMap& lm);
// Also produces the label map: element order is the order of appearance in
// the parts arrays.
std::pair<PartitionConstraint, LabelMap> constraint_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const ChaseInstance& inst);
ChaseInstance instance_from_json(const nlohmann::json& j);
ChaseInstance load_instance(const std::string& path);

// Optional fractional points attached to an instance file (round-only mode).
std::vector<FractionalPoint> points_from_json(const nlohmann::json& j, int n);

std::string set_to_labels(ElemMask s, const std::vector<std::string>& labels);

// CSV emitters (header row + format_double rendering, byte-stable).
std::string trajectory_csv(const Trajectory& traj);
std::string engine_log_csv(const std::vector<StepLogEntry>& log);
struct RoundedStep {
  int t = 0;
  ElemMask set = 0;
  int recourse = 0;
  double value = 0.0;
};
std::string rounded_csv(const std::vector<RoundedStep>& steps,
                        const std::vector<std::string>& labels);

void write_file(const std::string& path, const std::string& content);

}  // namespace chase
