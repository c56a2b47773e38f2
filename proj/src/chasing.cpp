#include "chase/chasing.hpp"

#include <algorithm>
#include <cmath>

#include "chase/extensions.hpp"
#include "chase/oracle_bench.hpp"

namespace chase {

int ChaseInstance::max_available() const {
  int m = 0;
  for (const auto& s : steps) m = std::max(m, set_size(s.available));
  return m;
}

void ChaseInstance::validate(double tol) const {
  if (n > 20) throw capacity_error("validate: instance too large for brute force");
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& st = steps[t];
    if ((st.available & ~full_mask(n)) != 0) {
      throw input_error("validate: available set outside the ground set");
    }
    if (st.fn.ground_size() != n) throw input_error("validate: function dimension mismatch");
    if (st.target < 0.0) throw infeasible_error("validate: negative target");
    const OptResult opt = brute_opt(st.fn, constraint, st.available);
    if (st.target > opt.value + tol) {
      throw infeasible_error("validate: step " + std::to_string(t + 1) +
                             " target exceeds the optimum (" +
                             format_double(st.target) + " > " + format_double(opt.value) + ")");
    }
  }
}

namespace {

Trajectory run_chase(const ChaseInstance& inst, double eps, bool exact,
                     double /*delta*/, Rng* rng, const ChaseOptions& opt) {
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("chase: eps must be in (0,1)");
  const int n = inst.n;
  const int d = std::max(1, inst.max_available());
  const long t_alg = std::max<long>(
      16, static_cast<long>(std::ceil(opt.talg_mult / eps * inst.constraint.rank() *
                                      static_cast<double>(inst.steps.size()) *
                                      std::log(std::max(2, d)))));
  const int trials =
      witness_trials(opt.witness_const, eps, static_cast<double>(t_alg) / eps);

  Chaser chaser(n, eps, d);
  Trajectory traj;
  FractionalPoint prev(n, 0.0);

  for (std::size_t t = 0; t < inst.steps.size(); ++t) {
    const ChaseStep& st = inst.steps[t];
    chaser.set_time(static_cast<int>(t + 1));
    chaser.zero_departed(support(chaser.point()) & ~st.available);

    SeparationOptions sep;
    sep.eps = eps;
    sep.v = st.target;
    sep.exact = exact;
    sep.trials = trials;
    sep.max_rounds = 10 * t_alg;
    sep.available = st.available;
    sep.exec = opt.exec;
    const SeparationStats stats = run_separation_loop(chaser, st.fn, inst.constraint, sep, rng);
    if (stats.value_unreachable) {
      throw infeasible_error("chase: step " + std::to_string(t + 1) +
                             " target is unreachable over the available set");
    }
    if (!stats.converged) {
      throw internal_error("chase: separation loop did not settle within its round cap");
    }

    TrajectoryStep out;
    out.x = scale_into_polytope(chaser.point(), eps);
    out.movement = l1_distance(out.x, prev);
    out.covering_seps = stats.covering;
    out.packing_seps = stats.packing;

    const FractionalPoint y = one_minus_exp_neg(out.x);
    if (set_size(support(out.x)) <= 20) {
      out.certificate = multilinear_exact(st.fn, y);
    } else {
      const std::uint64_t cert_seed =
          0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(t) + 1);
      const McEstimate est = multilinear_mc(st.fn, y, opt.cert_mc_samples, cert_seed, opt.exec);
      out.certificate = est.estimate;
      out.cert_stderr = est.stderr_;
    }

    traj.ledger += out.movement;
    prev = out.x;
    traj.steps.push_back(std::move(out));
  }
  traj.engine_log = chaser.step_log();
  return traj;
}

}  // namespace

Trajectory chase_slow(const ChaseInstance& inst, double eps, const ChaseOptions& opt) {
  if (inst.n > 14) throw capacity_error("chase_slow: exact separation capped at 14 elements");
  return run_chase(inst, eps, /*exact=*/true, 0.0, nullptr, opt);
}

Trajectory chase_fast(const ChaseInstance& inst, double eps, double delta, Rng& rng,
                      const ChaseOptions& opt) {
  if (!(delta > 0.0 && delta < 1.0)) throw input_error("chase_fast: delta must be in (0,1)");
  return run_chase(inst, eps, /*exact=*/false, delta, &rng, opt);
}

}  // namespace chase
