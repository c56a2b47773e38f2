#include "chase/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace chase {

using nlohmann::json;

int LabelMap::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  throw input_error("unknown element label: " + label);
}

nlohmann::json function_to_json(const SetFunction& f, const LabelMap& lm) {
  json j;
  j["kind"] = fn_kind_name(f.kind());
  switch (f.kind()) {
    case FnKind::kCoverage:
    case FnKind::kWeightedCoverage: {
      json items = json::object();
      for (int i = 0; i < f.ground_size(); ++i) {
        json lst = json::array();
        for (int u : f.item_lists()[i]) {
          const std::string name = f.item_names().empty()
                                       ? "u" + std::to_string(u)
                                       : f.item_names()[u];
          lst.push_back(json::array({name, f.item_weights()[u]}));
        }
        items[lm.labels[i]] = lst;
      }
      j["items"] = items;
      break;
    }
    case FnKind::kCappedCardinality:
      j["cap"] = f.cap();
      break;
    case FnKind::kAdditive:
      j["weights"] = f.weights();
      break;
    case FnKind::kExplicitTable:
      j["values"] = f.table();
      break;
  }
  return j;
}

SetFunction function_from_json(const nlohmann::json& j, const LabelMap& lm) {
  const int n = static_cast<int>(lm.labels.size());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coverage" || kind == "weighted-coverage") {
    std::vector<std::vector<int>> items(n);
    std::vector<double> weights;
    std::vector<std::string> names;
    std::map<std::string, int> by_name;
    for (const auto& [label, lst] : j.at("items").items()) {
      const int e = lm.index_of(label);
      for (const auto& entry : lst) {
        std::string name;
        double w = 1.0;
        if (entry.is_array()) {
          name = entry.at(0).get<std::string>();
          if (entry.size() > 1) w = entry.at(1).get<double>();
        } else {
          name = entry.get<std::string>();
        }
        auto it = by_name.find(name);
        int u;
        if (it == by_name.end()) {
          u = static_cast<int>(names.size());
          by_name.emplace(name, u);
          names.push_back(name);
          weights.push_back(w);
        } else {
          u = it->second;
          if (std::abs(weights[u] - w) > 1e-12) {
            throw input_error("coverage item '" + name + "' listed with conflicting weights");
          }
        }
        items[e].push_back(u);
      }
    }
    if (kind == "coverage") {
      return SetFunction::coverage(n, std::move(items), std::move(weights), std::move(names));
    }
    return SetFunction::weighted_coverage(n, std::move(items), std::move(weights),
                                          std::move(names));
  }
  if (kind == "capped-cardinality") {
    return SetFunction::capped_cardinality(n, j.at("cap").get<double>());
  }
  if (kind == "additive") {
    auto w = j.at("weights").get<std::vector<double>>();
    if (static_cast<int>(w.size()) != n) throw input_error("additive: weight count mismatch");
    return SetFunction::additive(std::move(w));
  }
  if (kind == "explicit-table") {
    auto v = j.at("values").get<std::vector<double>>();
    if (v.size() != (std::size_t{1} << n)) {
      throw input_error("explicit-table: expected 2^n values");
    }
    return SetFunction::explicit_table(std::move(v));
  }
  throw input_error("unknown function kind: " + kind);
}

nlohmann::json constraint_to_json(const PartitionConstraint& c, const LabelMap& lm) {
  json parts = json::array();
  for (ElemMask p : c.parts()) {
    json part = json::array();
    for_each_element(p, [&](int i) { part.push_back(lm.labels[i]); });
    parts.push_back(part);
  }
  return json{{"parts", parts}, {"caps", c.caps()}};
}

std::pair<PartitionConstraint, LabelMap> constraint_from_json(const nlohmann::json& j) {
  LabelMap lm;
  std::vector<ElemMask> parts;
  for (const auto& part : j.at("parts")) {
    ElemMask m = 0;
    for (const auto& label : part) {
      lm.labels.push_back(label.get<std::string>());
      if (lm.labels.size() > kMaxGround) throw capacity_error("more than 64 elements");
      m |= singleton(static_cast<int>(lm.labels.size()) - 1);
    }
    parts.push_back(m);
  }
  auto caps = j.at("caps").get<std::vector<int>>();
  return {PartitionConstraint(static_cast<int>(lm.labels.size()), std::move(parts),
                              std::move(caps)),
          std::move(lm)};
}

nlohmann::json instance_to_json(const ChaseInstance& inst) {
  LabelMap lm{inst.labels};
  json steps = json::array();
  for (const auto& st : inst.steps) {
    json avail = json::array();
    for_each_element(st.available, [&](int i) { avail.push_back(inst.labels[i]); });
    steps.push_back(json{{"available", avail},
                         {"function", function_to_json(st.fn, lm)},
                         {"target", st.target}});
  }
  return json{{"constraint", constraint_to_json(inst.constraint, lm)}, {"steps", steps}};
}

ChaseInstance instance_from_json(const nlohmann::json& j) {
  auto [constraint, lm] = constraint_from_json(j.at("constraint"));
  ChaseInstance inst{constraint.ground_size(), lm.labels, std::move(constraint), {}};
  for (const auto& st : j.at("steps")) {
    ElemMask avail = 0;
    for (const auto& label : st.at("available")) {
      avail |= singleton(lm.index_of(label.get<std::string>()));
    }
    inst.steps.push_back(ChaseStep{avail, function_from_json(st.at("function"), lm),
                                   st.at("target").get<double>()});
  }
  return inst;
}

ChaseInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open instance file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset for the error message.
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)),
                     std::istreambuf_iterator<char>());
    std::size_t line = 1, col = 1;
    for (std::size_t b = 0; b + 1 < e.byte && b < text.size(); ++b) {
      if (text[b] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw input_error("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return instance_from_json(j);
}

std::vector<FractionalPoint> points_from_json(const nlohmann::json& j, int n) {
  std::vector<FractionalPoint> pts;
  for (const auto& row : j.at("points")) {
    auto x = row.get<FractionalPoint>();
    if (static_cast<int>(x.size()) != n) throw input_error("points: dimension mismatch");
    pts.push_back(std::move(x));
  }
  return pts;
}

std::string set_to_labels(ElemMask s, const std::vector<std::string>& labels) {
  std::string out;
  for_each_element(s, [&](int i) {
    if (!out.empty()) out += ';';
    out += labels[i];
  });
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,movement,certificate,sep_count\n";
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& st = traj.steps[t];
    os << (t + 1) << ',' << format_double(st.movement) << ','
       << format_double(st.certificate) << ',' << (st.covering_seps + st.packing_seps)
       << '\n';
  }
  return os.str();
}

std::string engine_log_csv(const std::vector<StepLogEntry>& log) {
  std::ostringstream os;
  os << "time,kind,movement,ledger\n";
  for (const auto& e : log) {
    os << e.time << ',' << step_kind_name(e.kind) << ',' << format_double(e.movement)
       << ',' << format_double(e.ledger) << '\n';
  }
  return os.str();
}

std::string rounded_csv(const std::vector<RoundedStep>& steps,
                        const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "t,set,recourse,value\n";
  for (const auto& st : steps) {
    os << st.t << ',' << set_to_labels(st.set, labels) << ',' << st.recourse << ','
       << format_double(st.value) << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write: " + path);
  out << content;
}

}  // namespace chase
