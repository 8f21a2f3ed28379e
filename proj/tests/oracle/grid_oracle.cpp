#include "grid_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

using namespace mecwave;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

// One MD's per-task choice with everything the pair loop needs.
struct Option {
  TaskDecision d;
  double energy;   // local + path
  double local;    // local time
  double trans;    // uplink (+ backhaul) time
  double a_sbs;    // cycles put on the SBS
  double a_mbs;    // cycles put on the MBS
  double cost_violation;
};

}  // namespace

ScenarioParams tiny_params() {
  ScenarioParams p;
  p.num_md = 2;
  p.num_sbs = 1;
  p.num_tasks_per_md = 1;
  p.num_clusters = 1;
  p.max_subchannels = 2;
  const auto all = p.crypto;
  p.crypto = {all[4], all[5]};
  return p;
}

GridResult grid_search(const Scenario& sc, double alpha, double beta, int points) {
  if (sc.num_md() != 2 || sc.num_sbs() != 1 || sc.num_tasks() != 1)
    throw std::invalid_argument("grid_search needs I=2, one SBS, K=1");
  const auto& P = sc.params;
  const double eps = P.epsilon;
  const int Q = sc.num_crypto();
  const double FS = P.sbs_cpu_hz;
  const double FM = P.mbs_cpu_hz;

  const auto mus = linspace(eps, P.one_minus, points);
  std::vector<double> pw[2];
  for (int i = 0; i < 2; ++i) pw[i] = linspace(eps, sc.device(i).max_power_w, points);
  const auto z1s = linspace(P.z_first.min, P.z_first.max, points);
  const auto z2s = linspace(P.z_second.min, P.z_second.max, points);
  const auto fracs = linspace(0.0, 1.0, points);

  auto options = [&](int i, bool on_sbs, double p, double rate) {
    const TaskParams& t = sc.task(i, 0);
    const double f = sc.device(i).cpu_hz;
    std::vector<Option> out;
    for (int q = 0; q < Q; ++q) {
      const double psi = breach_probability(t.risk, t.expected_level, P.crypto[q].security_level) * t.loss;
      const double cv = std::max(0.0, psi - sc.device(i).breach_budget);
      for (double z1 : z1s)
        for (double d1 : linspace(eps, t.size_bits, points)) {
          const std::size_t n2 = on_sbs ? z2s.size() : 1;
          for (std::size_t a = 0; a < n2; ++a)
            for (std::size_t b = 0; b < (on_sbs ? fracs.size() : 1); ++b) {
              TaskDecision d{q, z1, on_sbs ? z2s[a] : P.z_second.min, d1, eps};
              if (on_sbs) d.d_second = eps + (d1 - eps) * fracs[b];
              const TimeEnergy loc = local_cost(P, t, d, f, p, rate);
              Option o{d, loc.energy, loc.time, d.d_first / (d.z_first * rate), 0.0, 0.0, cv};
              if (on_sbs) {
                o.energy += sbs_path_cost(P, t, d, rate, 1.0, 1.0).energy;
                o.trans += d.d_second / (d.z_second * P.backhaul_rate_bps);
                o.a_sbs = sbs_workload_cycles(P, t, d);
                o.a_mbs = mbs_workload_cycles(P, Origin::from_sbs, t, d);
              } else {
                o.energy += mbs_path_cost(P, t, d, rate, 1.0).energy;
                o.a_mbs = mbs_workload_cycles(P, Origin::from_md, t, d);
              }
              out.push_back(o);
            }
        }
    }
    return out;
  };

  GridResult best;
  best.fitness = -std::numeric_limits<double>::infinity();
  const double tmax[2] = {sc.device(0).deadline_s, sc.device(1).deadline_s};

  struct Layout {
    int n_sub;
    int ch[2];
  };
  for (double mu : mus) {
    for (int assoc0 = 0; assoc0 <= 1; ++assoc0)
      for (int assoc1 = 0; assoc1 <= 1; ++assoc1) {
        const int assoc[2] = {assoc0, assoc1};
        const bool both_sbs = assoc0 == 1 && assoc1 == 1;
        const bool any_sbs = assoc0 == 1 || assoc1 == 1;
        std::vector<Layout> layouts;
        if (both_sbs) {
          layouts = {{1, {0, 0}}, {2, {0, 0}}, {2, {0, 1}}};
        } else if (any_sbs) {
          layouts = {{1, {0, 0}}, {2, {0, 0}}};
        } else {
          layouts = {{1, {0, 0}}};
        }
        const int n_mbs = (assoc0 == 0) + (assoc1 == 0);
        for (const Layout& lay : layouts) {
          const double omega = subchannel_bandwidth(mu, lay.n_sub, P.num_clusters, P.system_bandwidth_hz);
          for (double p0 : pw[0])
            for (double p1 : pw[1]) {
              const double p[2] = {p0, p1};
              double rate[2];
              for (int i = 0; i < 2; ++i) {
                const int j = assoc[i];
                const double g = sc.gain(i, j);
                if (j == 0) {
                  rate[i] = mu * P.system_bandwidth_hz / n_mbs * std::log2(1.0 + p[i] * g / P.noise_power_w);
                } else {
                  const int u = 1 - i;
                  double interf = 0.0;
                  if (assoc[u] == 1 && lay.ch[u] == lay.ch[i] && sc.gain(u, 1) <= g) interf = p[u] * sc.gain(u, 1);
                  rate[i] = omega * std::log2(1.0 + p[i] * g / (interf + P.noise_power_w));
                }
              }
              const auto o0 = options(0, assoc0 == 1, p0, rate[0]);
              const auto o1 = options(1, assoc1 == 1, p1, rate[1]);
              best.combinations += o0.size() * o1.size();
              for (const Option& a : o0)
                for (const Option& b : o1) {
                  const double sbs_load = (assoc0 ? a.a_sbs : 0.0) + (assoc1 ? b.a_sbs : 0.0);
                  const double mbs_load = a.a_mbs + b.a_mbs;
                  const double path0 = a.trans + (assoc0 ? sbs_load / FS : 0.0) + mbs_load / FM;
                  const double path1 = b.trans + (assoc1 ? sbs_load / FS : 0.0) + mbs_load / FM;
                  const double dv0 = std::max(0.0, std::max(path0, a.local) - tmax[0]);
                  const double dv1 = std::max(0.0, std::max(path1, b.local) - tmax[1]);
                  const double fit = -(a.energy + b.energy) - alpha * dv0 - alpha * dv1 - beta * a.cost_violation -
                                     beta * b.cost_violation;
                  if (fit > best.fitness) {
                    best.fitness = fit;
                    Solution s;
                    s.mu = mu;
                    s.num_subchannels = lay.n_sub;
                    s.power = {p0, p1};
                    s.assoc = {assoc0, assoc1};
                    s.channel = {lay.ch[0], lay.ch[1]};
                    s.tasks = {a.d, b.d};
                    best.best = s;
                  }
                }
            }
        }
      }
  }
  return best;
}

}  // namespace oracle
