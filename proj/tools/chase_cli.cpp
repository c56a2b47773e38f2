// Command-line front end: loads JSON scenarios, runs the chasing /
// maximization / rounding pipelines and emits CSV ledgers plus a summary
// JSON. All randomness flows from --seed through named substreams, so any
// mode rerun with the same flags is byte-identical.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chase/aos.hpp"
#include "chase/chasing.hpp"
#include "chase/dynamics.hpp"
#include "chase/io.hpp"
#include "chase/oracle_bench.hpp"
#include "chase/rounding.hpp"

namespace {

using nlohmann::json;

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("CHASE_LOG_LEVEL");
    if (v == nullptr) return 1;
    const std::string s(v);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

struct Options {
  std::string mode;
  std::string instance_path;
  std::string out_dir = ".";
  double eps = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 1;
  int trials = 1;
  double talg_mult = 8.0;
  double witness_const = 4.0;
  int k = 1;
  int window = 0;
  std::string direction = "insert";
  std::string bench_kind = "deletion-order";
  std::vector<int> bench_sizes = {8, 16, 32, 64};
  int bench_seeds = 5;
};

std::string out_path(const Options& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

void write_summary(const Options& opt, json summary) {
  summary["mode"] = opt.mode;
  summary["seed"] = opt.seed;
  summary["eps"] = opt.eps;
  summary["delta"] = opt.delta;
  chase::write_file(out_path(opt, "summary.json"), summary.dump(2) + "\n");
}

// Rounds a trajectory online and reports the integral ledger plus the mean
// realized value ratio over the requested replicas. Replica 0 is written out.
struct RoundedRun {
  std::vector<chase::RoundedStep> steps;
  long total_recourse = 0;
  double mean_value_ratio = 0.0;
};

RoundedRun round_trajectory(const chase::ChaseInstance& inst,
                            const chase::Trajectory& traj, const Options& opt) {
  const chase::Rng master(opt.seed);
  RoundedRun out;
  double ratio_sum = 0.0;
  long ratio_count = 0;
  for (int rep = 0; rep < std::max(1, opt.trials); ++rep) {
    chase::Rng rng = master.substream(0xF00D + rep);
    chase::PartitionRounder rounder(inst.constraint, chase::UnitScheme::kInterval, rng);
    chase::ElemMask prev = 0;
    long recourse = 0;
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const chase::ElemMask s = rounder.step(traj.steps[t].x, rng);
      const double value = inst.steps[t].fn.value(s);
      recourse += chase::set_size(s ^ prev);
      if (inst.steps[t].target > 0.0) {
        ratio_sum += value / inst.steps[t].target;
        ++ratio_count;
      }
      if (rep == 0) {
        out.steps.push_back(chase::RoundedStep{static_cast<int>(t + 1), s,
                                               chase::set_size(s ^ prev), value});
      }
      prev = s;
    }
    if (rep == 0) out.total_recourse = recourse;
  }
  out.mean_value_ratio = ratio_count > 0 ? ratio_sum / ratio_count : 0.0;
  return out;
}

int run_chase_mode(const Options& opt) {
  chase::ChaseInstance inst = chase::load_instance(opt.instance_path);
  if (inst.n <= 16) inst.validate();
  chase::ChaseOptions copt;
  copt.talg_mult = opt.talg_mult;
  copt.witness_const = opt.witness_const;

  chase::Trajectory traj;
  if (opt.mode == "chase-slow") {
    traj = chase_slow(inst, opt.eps, copt);
  } else {
    chase::Rng master(opt.seed);
    chase::Rng rng = master.substream(0xC4A5E);
    traj = chase_fast(inst, opt.eps, opt.delta, rng, copt);
  }

  chase::write_file(out_path(opt, "trajectory.csv"), chase::trajectory_csv(traj));
  chase::write_file(out_path(opt, "engine_log.csv"), chase::engine_log_csv(traj.engine_log));
  const RoundedRun rounded = round_trajectory(inst, traj, opt);
  chase::write_file(out_path(opt, "rounded.csv"), chase::rounded_csv(rounded.steps, inst.labels));

  json summary;
  summary["steps"] = inst.steps.size();
  summary["total_recourse"] = traj.ledger;
  summary["integral_recourse"] = rounded.total_recourse;
  summary["mean_value_ratio"] = rounded.mean_value_ratio;
  double cert_sum = 0.0;
  long cert_count = 0;
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    if (inst.steps[t].target > 0.0) {
      cert_sum += traj.steps[t].certificate / inst.steps[t].target;
      ++cert_count;
    }
  }
  summary["mean_certificate_ratio"] = cert_count > 0 ? cert_sum / cert_count : 0.0;
  try {
    const double offline = chase::offline_min_recourse(inst);
    summary["offline_recourse"] = offline;
    if (offline > 0.0) summary["competitive_ratio"] = traj.ledger / offline;
  } catch (const chase::capacity_error&) {
    log_info("offline recourse skipped: instance too large");
  }
  write_summary(opt, std::move(summary));
  return 0;
}

int run_static_mode(const Options& opt) {
  chase::ChaseInstance inst = chase::load_instance(opt.instance_path);
  if (inst.steps.empty()) throw chase::input_error("static mode needs at least one step");
  const chase::ChaseStep& st = inst.steps.front();
  chase::Rng master(opt.seed);
  chase::Rng rng = master.substream(0x57A7);

  json summary;
  if (opt.mode == "static") {
    chase::AosParams base;
    base.witness_const = opt.witness_const;
    const chase::StaticResult res =
        chase::maximize_static(st.fn, inst.constraint, opt.eps, opt.delta, rng, base);
    const chase::ElemMask s = chase::pivotal_sample(res.x, inst.constraint, rng);
    summary["value_lb"] = res.value_lb;
    summary["set"] = chase::set_to_labels(s, inst.labels);
    summary["value"] = st.fn.value(s);
  } else {  // curvature
    const chase::CurvatureResult res =
        chase::maximize_with_curvature(st.fn, inst.constraint, opt.eps, opt.delta, rng);
    summary["curvature"] = res.c;
    summary["expected_value_cert"] = res.expected_value_cert;
    summary["set"] = chase::set_to_labels(res.set, inst.labels);
    summary["value"] = st.fn.value(res.set);
  }
  if (inst.n <= 16) {
    const chase::OptResult opt_res =
        chase::brute_opt(st.fn, inst.constraint, st.available);
    summary["brute_opt"] = opt_res.value;
    if (opt_res.value > 0.0) {
      summary["value_ratio"] = summary["value"].get<double>() / opt_res.value;
    }
  }
  write_summary(opt, std::move(summary));
  return 0;
}

int run_round_only(const Options& opt) {
  std::ifstream in(opt.instance_path);
  if (!in) throw chase::input_error("cannot open instance file: " + opt.instance_path);
  const json j = json::parse(in);
  chase::ChaseInstance inst = chase::instance_from_json(j);
  const auto points = chase::points_from_json(j, inst.n);
  if (points.size() != inst.steps.size()) {
    throw chase::input_error("round-only: need one point per step");
  }

  chase::Rng master(opt.seed);
  chase::Rng rng = master.substream(0xF00D);
  chase::PartitionRounder rounder(inst.constraint, chase::UnitScheme::kInterval, rng);
  std::vector<chase::RoundedStep> steps;
  chase::ElemMask prev = 0;
  long total = 0;
  double ledger = 0.0;
  chase::FractionalPoint xprev(inst.n, 0.0);
  for (std::size_t t = 0; t < points.size(); ++t) {
    const chase::ElemMask s = rounder.step(points[t], rng);
    steps.push_back(chase::RoundedStep{static_cast<int>(t + 1), s, chase::set_size(s ^ prev),
                                       inst.steps[t].fn.value(s)});
    total += chase::set_size(s ^ prev);
    ledger += chase::l1_distance(points[t], xprev);
    xprev = points[t];
    prev = s;
  }
  chase::write_file(out_path(opt, "rounded.csv"), chase::rounded_csv(steps, inst.labels));
  json summary;
  summary["integral_recourse"] = total;
  summary["fractional_ledger"] = ledger;
  write_summary(opt, std::move(summary));
  return 0;
}

struct StreamInput {
  chase::SetFunction fn;
  std::vector<std::string> labels;
  std::vector<int> order;
};

StreamInput load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chase::input_error("cannot open stream file: " + path);
  const json j = json::parse(in);
  chase::LabelMap lm{j.at("labels").get<std::vector<std::string>>()};
  if (lm.labels.size() > chase::kMaxGround) throw chase::capacity_error("more than 64 elements");
  StreamInput s{chase::function_from_json(j.at("function"), lm), lm.labels, {}};
  for (const auto& label : j.at("order")) {
    s.order.push_back(lm.index_of(label.get<std::string>()));
  }
  return s;
}

std::string dyn_trace_csv(const chase::DynResult& res,
                          const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "t,value,opt,recourse,anchors,set\n";
  for (std::size_t t = 0; t < res.steps.size(); ++t) {
    const auto& st = res.steps[t];
    os << (t + 1) << ',' << chase::format_double(st.value) << ','
       << chase::format_double(st.opt) << ',' << st.recourse << ',' << st.anchors << ','
       << chase::set_to_labels(st.solution, labels) << '\n';
  }
  return os.str();
}

int run_dynamics(const Options& opt) {
  const StreamInput stream = load_stream(opt.instance_path);
  chase::DynResult res;
  if (opt.mode == "incremental") {
    res = opt.direction == "delete"
              ? chase::decremental_chase(stream.order, stream.fn, opt.k, opt.eps)
              : chase::incremental_chase(stream.order, stream.fn, opt.k, opt.eps);
  } else {
    if (opt.window < 1) throw chase::input_error("window mode needs --window >= 1");
    res = chase::sliding_window_chase(stream.order, opt.window, stream.fn, opt.k, opt.eps);
  }
  chase::write_file(out_path(opt, "trace.csv"), dyn_trace_csv(res, stream.labels));
  json summary;
  summary["events"] = res.steps.size();
  summary["total_recourse"] = res.total_recourse;
  summary["recomputes"] = res.recomputes;
  summary["max_anchors"] = res.max_anchors;
  double worst_ratio = 1.0;
  for (const auto& st : res.steps) {
    if (st.opt > 0.0) worst_ratio = std::min(worst_ratio, st.value / st.opt);
  }
  summary["worst_value_ratio"] = worst_ratio;
  write_summary(opt, std::move(summary));
  return 0;
}

int run_bench(const Options& opt) {
  if (opt.bench_kind != "deletion-order") {
    throw chase::input_error("bench: unknown kind " + opt.bench_kind);
  }
  const chase::Rng master(opt.seed);
  std::vector<double> sizes, ledgers, offline;
  std::ostringstream csv;
  csv << "n,seed,ledger,offline\n";
  for (int n : opt.bench_sizes) {
    double ledger_sum = 0.0;
    double off = 0.0;
    for (int s = 0; s < opt.bench_seeds; ++s) {
      chase::Rng scen_rng = master.substream(0xB00 + 31 * n + s);
      const chase::ChaseInstance inst = chase::deletion_order_scenario(n, scen_rng);
      chase::Rng run_rng = master.substream(0xC00 + 31 * n + s);
      chase::ChaseOptions copt;
      copt.talg_mult = opt.talg_mult;
      copt.witness_const = opt.witness_const;
      const chase::Trajectory traj = chase_fast(inst, opt.eps, opt.delta, run_rng, copt);
      off = chase::offline_min_recourse(inst);
      ledger_sum += traj.ledger;
      csv << n << ',' << s << ',' << chase::format_double(traj.ledger) << ','
          << chase::format_double(off) << '\n';
    }
    sizes.push_back(n);
    ledgers.push_back(ledger_sum / opt.bench_seeds);
    offline.push_back(off);
    log_info("bench n=" + std::to_string(n) +
             " mean ledger=" + chase::format_double(ledgers.back()));
  }
  chase::write_file(out_path(opt, "bench.csv"), csv.str());
  const chase::LogFit fit = chase::fit_log(sizes, ledgers);
  json summary;
  summary["kind"] = opt.bench_kind;
  summary["sizes"] = opt.bench_sizes;
  summary["mean_ledgers"] = ledgers;
  summary["offline_recourse"] = offline;
  summary["fit"] = json{{"a", fit.a}, {"b", fit.b}, {"r2", fit.r2}};
  write_summary(opt, std::move(summary));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"submodular objective chasing toolkit"};
  Options opt;
  app.add_option("--mode", opt.mode, "chase-slow|chase-fast|static|curvature|window|incremental|round-only|bench")
      ->required();
  app.add_option("instance", opt.instance_path, "instance / stream JSON path");
  app.add_option("--eps", opt.eps, "relaxation parameter in (0,1)");
  app.add_option("--delta", opt.delta, "failure probability in (0,1)");
  app.add_option("--seed", opt.seed, "master seed (mandatory for randomized modes)");
  app.add_option("--trials", opt.trials, "replica count for summary statistics");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--talg-mult", opt.talg_mult, "round-budget multiplier");
  app.add_option("--witness-const", opt.witness_const, "witness trial-count constant");
  app.add_option("--k", opt.k, "cardinality bound for dynamics modes");
  app.add_option("--window", opt.window, "window length for window mode");
  app.add_option("--direction", opt.direction, "insert|delete for incremental mode");
  app.add_option("--bench-kind", opt.bench_kind, "bench scenario kind");
  app.add_option("--bench-sizes", opt.bench_sizes, "bench ground-set sizes")->delimiter(',');
  app.add_option("--bench-seeds", opt.bench_seeds, "seeds per bench size");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!(opt.eps > 0.0 && opt.eps < 1.0) || !(opt.delta > 0.0 && opt.delta < 1.0)) {
      throw chase::input_error("eps and delta must lie in (0,1)");
    }
    if (opt.mode == "chase-slow" || opt.mode == "chase-fast") return run_chase_mode(opt);
    if (opt.mode == "static" || opt.mode == "curvature") return run_static_mode(opt);
    if (opt.mode == "round-only") return run_round_only(opt);
    if (opt.mode == "incremental" || opt.mode == "window") return run_dynamics(opt);
    if (opt.mode == "bench") return run_bench(opt);
    throw chase::input_error("unknown mode: " + opt.mode);
  } catch (const chase::internal_error& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
