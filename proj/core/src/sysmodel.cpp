#include "mecwave/sysmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mecwave/errors.hpp"

namespace mecwave {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

void contract(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

const CryptoAlgorithm& algorithm(const ScenarioParams& p, const TaskDecision& d) {
  return p.crypto[static_cast<std::size_t>(d.crypto)];
}

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

}  // namespace

void check_structure(const Scenario& sc, const Solution& sol) {
  const auto& p = sc.params;
  const auto I = idx(sc.num_md());
  const int K = sc.num_tasks();
  contract(sol.power.size() == I && sol.assoc.size() == I && sol.channel.size() == I,
           "solution: per-MD vectors have the wrong length");
  contract(sol.tasks.size() == I * idx(K), "solution: task vector has the wrong length");
  contract(sol.mu >= p.epsilon && sol.mu <= p.one_minus, "solution: mu out of range");
  contract(sol.num_subchannels >= 1 && sol.num_subchannels <= p.max_subchannels,
           "solution: subchannel count out of range");
  for (int i = 0; i < sc.num_md(); ++i) {
    const auto u = idx(i);
    contract(sol.power[u] >= p.epsilon && sol.power[u] <= sc.device(i).max_power_w,
             "solution: power out of range for MD " + std::to_string(i));
    contract(sol.assoc[u] >= 0 && sol.assoc[u] <= sc.num_sbs(), "solution: association out of range");
    contract(sol.channel[u] >= 0 && sol.channel[u] < sol.num_subchannels, "solution: channel out of range");
    for (int k = 0; k < K; ++k) {
      const auto& d = sol.task(i, k, K);
      const auto& t = sc.task(i, k);
      contract(d.crypto >= 0 && d.crypto < sc.num_crypto(), "solution: crypto index out of range");
      contract(d.z_first >= p.z_first.min && d.z_first <= p.z_first.max, "solution: z_first out of range");
      contract(d.z_second >= p.z_second.min && d.z_second <= p.z_second.max,
               "solution: z_second out of range");
      contract(d.d_second >= p.epsilon && d.d_second <= d.d_first && d.d_first <= t.size_bits,
               "solution: offload sizes violate eps <= d_second <= d_first <= d");
    }
  }
}

double subchannel_bandwidth(double mu, int num_subchannels, int num_clusters, double system_bw_hz) {
  return (1.0 - mu) * system_bw_hz / (static_cast<double>(num_clusters) * num_subchannels);
}

double noma_uplink_rate(const Scenario& sc, const Solution& sol, int md) {
  const int j = sol.assoc[idx(md)];
  contract(j != 0, "noma_uplink_rate: MD is associated with the MBS");
  const int cluster = sc.cluster_of(j);
  const int n = sol.channel[idx(md)];
  const double own = sc.gain(md, j);
  double interference = 0.0;
  for (int u = 0; u < sc.num_md(); ++u) {
    if (u == md) continue;
    const int s = sol.assoc[idx(u)];
    if (s == 0 || sc.cluster_of(s) != cluster || sol.channel[idx(u)] != n) continue;
    const double g = sc.gain(u, j);
    if (g <= own) interference += sol.power[idx(u)] * g;
  }
  const double w = subchannel_bandwidth(sol.mu, sol.num_subchannels, sc.num_clusters(), sc.params.system_bandwidth_hz);
  return w * log2_1p(sol.power[idx(md)] * own / (interference + sc.params.noise_power_w));
}

double mbs_uplink_rate(const Scenario& sc, const Solution& sol, int md) {
  contract(sol.assoc[idx(md)] == 0, "mbs_uplink_rate: MD is not associated with the MBS");
  const auto users = std::count(sol.assoc.begin(), sol.assoc.end(), 0);
  return sol.mu * sc.params.system_bandwidth_hz / static_cast<double>(users) *
         log2_1p(sol.power[idx(md)] * sc.gain(md, 0) / sc.params.noise_power_w);
}

double uplink_rate(const Scenario& sc, const Solution& sol, int md) {
  return sol.assoc[idx(md)] == 0 ? mbs_uplink_rate(sc, sol, md) : noma_uplink_rate(sc, sol, md);
}

double codec_cycles(double size_bits, double ratio, const CodecCoefficients& c, double xi) {
  if (!(ratio > 0.0)) throw std::domain_error("codec_cycles: ratio must be positive");
  return xi * size_bits * (c.scale * std::pow(ratio, c.exponent) + c.offset);
}

double breach_probability(double risk, double expected_level, double algorithm_level) {
  if (algorithm_level >= expected_level) return 0.0;
  return -std::expm1(-risk * (expected_level - algorithm_level));
}

std::vector<double> breach_cost(const Scenario& sc, const Solution& sol) {
  const int K = sc.num_tasks();
  std::vector<double> psi(idx(sc.num_md()), 0.0);
  for (int i = 0; i < sc.num_md(); ++i) {
    for (int k = 0; k < K; ++k) {
      const auto& t = sc.task(i, k);
      const auto& alg = algorithm(sc.params, sol.task(i, k, K));
      psi[idx(i)] += t.loss * breach_probability(t.risk, t.expected_level, alg.security_level);
    }
  }
  return psi;
}

double sbs_workload_cycles(const ScenarioParams& p, const TaskParams& t, const TaskDecision& d) {
  const auto& alg = algorithm(p, d);
  return (d.d_first - d.d_second) * t.cycles_per_bit +
         codec_cycles(d.d_first, d.z_first, p.bs_decompress, p.codec_xi) +
         codec_cycles(d.d_second, d.z_second, p.bs_compress, p.codec_xi) +
         alg.decrypt_cycles_per_bit * d.d_first / d.z_first +
         alg.encrypt_cycles_per_bit * d.d_second / d.z_second;
}

double mbs_workload_cycles(const ScenarioParams& p, Origin origin, const TaskParams& t, const TaskDecision& d) {
  const auto& alg = algorithm(p, d);
  const double size = origin == Origin::from_md ? d.d_first : d.d_second;
  const double ratio = origin == Origin::from_md ? d.z_first : d.z_second;
  return size * t.cycles_per_bit + alg.decrypt_cycles_per_bit * size / ratio +
         codec_cycles(size, ratio, p.bs_decompress, p.codec_xi);
}

double proportional_cc_share(std::span<const double> workloads, double total_cc, std::size_t target) {
  contract(!workloads.empty(), "proportional_cc_share: no served tasks");
  contract(target < workloads.size(), "proportional_cc_share: target out of range");
  const double sum = std::accumulate(workloads.begin(), workloads.end(), 0.0);
  return workloads[target] * total_cc / sum;
}

TimeEnergy local_cost(const ScenarioParams& p, const TaskParams& t, const TaskDecision& d, double f,
                      double power, double rate) {
  const auto& alg = algorithm(p, d);
  const double kept = (t.size_bits - d.d_first) * t.cycles_per_bit;
  const double compress = codec_cycles(d.d_first, d.z_first, p.md_compress, p.codec_xi);
  const double sent = d.d_first / d.z_first;
  TimeEnergy out;
  out.time = kept / f + compress / f + alg.encrypt_cycles_per_bit * d.d_first / (d.z_first * f);
  out.energy = p.switched_capacitance * kept * f * f + p.switched_capacitance * compress * f * f +
               power * d.d_first / (d.z_first * rate) + alg.energy_per_bit_j * sent;
  return out;
}

TimeEnergy sbs_path_cost(const ScenarioParams& p, const TaskParams& t, const TaskDecision& d, double rate,
                         double f_sbs, double f_mbs) {
  const auto& alg = algorithm(p, d);
  const double sbs_decompress = codec_cycles(d.d_first, d.z_first, p.bs_decompress, p.codec_xi);
  const double sbs_compress = codec_cycles(d.d_second, d.z_second, p.bs_compress, p.codec_xi);
  const double mbs_decompress = codec_cycles(d.d_second, d.z_second, p.bs_decompress, p.codec_xi);
  const double hop1 = d.d_first / d.z_first;
  const double hop2 = d.d_second / d.z_second;
  const double xi_sbs = p.bs_energy_per_cycle_j;
  const double xi_mbs = p.bs_energy_per_cycle_j;

  TimeEnergy out;
  out.time = d.d_first / (d.z_first * rate) + d.d_second / (d.z_second * p.backhaul_rate_bps) +
             sbs_decompress / f_sbs + sbs_compress / f_sbs + mbs_decompress / f_mbs +
             alg.decrypt_cycles_per_bit * d.d_first / (d.z_first * f_sbs) +
             alg.encrypt_cycles_per_bit * d.d_second / (d.z_second * f_sbs) +
             alg.decrypt_cycles_per_bit * d.d_second / (d.z_second * f_mbs) +
             (d.d_first - d.d_second) * t.cycles_per_bit / f_sbs + d.d_second * t.cycles_per_bit / f_mbs;
  // the SBS-encrypt and MBS-decrypt crypto energies are the same expression, both charged
  out.energy = p.wired_power_w * d.d_second / (d.z_second * p.backhaul_rate_bps) + xi_sbs * sbs_decompress +
               xi_sbs * sbs_compress + xi_mbs * mbs_decompress + alg.energy_per_bit_j * hop1 +
               alg.energy_per_bit_j * hop2 + alg.energy_per_bit_j * hop2 +
               xi_sbs * (d.d_first - d.d_second) * t.cycles_per_bit + xi_mbs * d.d_second * t.cycles_per_bit;
  return out;
}

TimeEnergy mbs_path_cost(const ScenarioParams& p, const TaskParams& t, const TaskDecision& d, double rate,
                         double f_mbs) {
  const auto& alg = algorithm(p, d);
  const double decompress = codec_cycles(d.d_first, d.z_first, p.bs_decompress, p.codec_xi);
  TimeEnergy out;
  out.time = d.d_first / (d.z_first * rate) + decompress / f_mbs + d.d_first * t.cycles_per_bit / f_mbs +
             alg.decrypt_cycles_per_bit * d.d_first / (d.z_first * f_mbs);
  out.energy = p.bs_energy_per_cycle_j * decompress + p.bs_energy_per_cycle_j * d.d_first * t.cycles_per_bit +
               alg.energy_per_bit_j * d.d_first / d.z_first;
  return out;
}

TimeEnergy local_cost(const Scenario& sc, const Solution& sol, int md, int k) {
  return local_cost(sc.params, sc.task(md, k), sol.task(md, k, sc.num_tasks()), sc.device(md).cpu_hz,
                    sol.power[idx(md)], uplink_rate(sc, sol, md));
}

TimeEnergy sbs_path_cost(const Scenario& sc, const Solution& sol, int md, int k, double f_sbs, double f_mbs) {
  contract(sol.assoc[idx(md)] != 0, "sbs_path_cost: MD is associated with the MBS");
  return sbs_path_cost(sc.params, sc.task(md, k), sol.task(md, k, sc.num_tasks()),
                       noma_uplink_rate(sc, sol, md), f_sbs, f_mbs);
}

TimeEnergy mbs_path_cost(const Scenario& sc, const Solution& sol, int md, int k, double f_mbs) {
  contract(sol.assoc[idx(md)] == 0, "mbs_path_cost: MD is not associated with the MBS");
  return mbs_path_cost(sc.params, sc.task(md, k), sol.task(md, k, sc.num_tasks()),
                       mbs_uplink_rate(sc, sol, md), f_mbs);
}

std::vector<double> bs_workloads(const Scenario& sc, const Solution& sol) {
  const int K = sc.num_tasks();
  std::vector<double> w(idx(sc.num_bs()), 0.0);
  for (int i = 0; i < sc.num_md(); ++i) {
    const int j = sol.assoc[idx(i)];
    for (int k = 0; k < K; ++k) {
      const auto& t = sc.task(i, k);
      const auto& d = sol.task(i, k, K);
      if (j == 0) {
        w[0] += mbs_workload_cycles(sc.params, Origin::from_md, t, d);
      } else {
        w[idx(j)] += sbs_workload_cycles(sc.params, t, d);
        w[0] += mbs_workload_cycles(sc.params, Origin::from_sbs, t, d);
      }
    }
  }
  return w;
}

namespace {

// Shares and costs of one MD given its rate and the BS denominators.
TimeEnergy md_totals_with(const Scenario& sc, const Solution& sol, int i, double rate,
                          const std::vector<double>& workloads, double* local_energy) {
  const auto& p = sc.params;
  const int K = sc.num_tasks();
  const int j = sol.assoc[idx(i)];
  const double f_md = sc.device(i).cpu_hz;
  TimeEnergy total;
  for (int k = 0; k < K; ++k) {
    const auto& t = sc.task(i, k);
    const auto& d = sol.task(i, k, K);
    const TimeEnergy loc = local_cost(p, t, d, f_md, sol.power[idx(i)], rate);
    TimeEnergy path;
    if (j == 0) {
      const double f_mbs = mbs_workload_cycles(p, Origin::from_md, t, d) * sc.bs_cpu_hz(0) / workloads[0];
      path = mbs_path_cost(p, t, d, rate, f_mbs);
    } else {
      const double f_sbs = sbs_workload_cycles(p, t, d) * sc.bs_cpu_hz(j) / workloads[idx(j)];
      const double f_mbs = mbs_workload_cycles(p, Origin::from_sbs, t, d) * sc.bs_cpu_hz(0) / workloads[0];
      path = sbs_path_cost(p, t, d, rate, f_sbs, f_mbs);
    }
    total.time += std::max(path.time, loc.time);
    total.energy += loc.energy + path.energy;
    if (local_energy != nullptr) *local_energy += loc.energy;
  }
  return total;
}

// Rates of all MDs. SBS users are grouped by (cluster, channel); for each
// receiver SBS in a group the members are sorted by their gain at that SBS so
// an interference sum is a difference of prefix sums.
std::vector<double> all_rates(const Scenario& sc, const Solution& sol) {
  const auto& p = sc.params;
  const int I = sc.num_md();
  const int N = sol.num_subchannels;
  std::vector<double> rate(idx(I), 0.0);

  const auto mbs_users = std::count(sol.assoc.begin(), sol.assoc.end(), 0);
  const double omega = subchannel_bandwidth(sol.mu, N, sc.num_clusters(), p.system_bandwidth_hz);

  std::vector<std::vector<int>> groups(idx(sc.num_clusters() * N));
  for (int i = 0; i < I; ++i) {
    const int j = sol.assoc[idx(i)];
    if (j == 0) {
      rate[idx(i)] = sol.mu * p.system_bandwidth_hz / static_cast<double>(mbs_users) *
                     log2_1p(sol.power[idx(i)] * sc.gain(i, 0) / p.noise_power_w);
    } else {
      groups[idx((sc.cluster_of(j) - 1) * N + sol.channel[idx(i)])].push_back(i);
    }
  }

  std::vector<int> order;
  std::vector<double> sorted_gain;
  std::vector<double> prefix;
  std::vector<int> receivers;
  for (const auto& members : groups) {
    if (members.empty()) continue;
    receivers.clear();
    for (int i : members) receivers.push_back(sol.assoc[idx(i)]);
    std::sort(receivers.begin(), receivers.end());
    receivers.erase(std::unique(receivers.begin(), receivers.end()), receivers.end());

    for (int j : receivers) {
      order.assign(members.begin(), members.end());
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sc.gain(a, j) < sc.gain(b, j); });
      const std::size_t m = order.size();
      sorted_gain.resize(m);
      prefix.assign(m + 1, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        sorted_gain[r] = sc.gain(order[r], j);
        prefix[r + 1] = prefix[r] + sol.power[idx(order[r])] * sorted_gain[r];
      }
      for (std::size_t pos = 0; pos < m; ++pos) {
        const int i = order[pos];
        if (sol.assoc[idx(i)] != j) continue;
        const double own = sorted_gain[pos];
        const auto upto = static_cast<std::size_t>(
            std::upper_bound(sorted_gain.begin(), sorted_gain.end(), own) - sorted_gain.begin());
        const double interference = prefix[pos] + (prefix[upto] - prefix[pos + 1]);
        rate[idx(i)] = omega * log2_1p(sol.power[idx(i)] * own / (interference + p.noise_power_w));
      }
    }
  }
  return rate;
}

void finish_report(const Scenario& sc, EvaluationReport& r) {
  const auto I = idx(sc.num_md());
  r.delay_violation.assign(I, 0.0);
  r.cost_violation.assign(I, 0.0);
  r.network_energy = 0.0;
  r.feasible = true;
  for (std::size_t i = 0; i < I; ++i) {
    const auto& dev = sc.devices[i];
    r.delay_violation[i] = std::max(0.0, r.delay[i] - dev.deadline_s);
    r.cost_violation[i] = std::max(0.0, r.breach_cost[i] - dev.breach_budget);
    r.network_energy += r.energy[i];
    if (r.delay_violation[i] > 0.0 || r.cost_violation[i] > 0.0) r.feasible = false;
  }
}

}  // namespace

TimeEnergy md_totals(const Scenario& sc, const Solution& sol, int md) {
  check_structure(sc, sol);
  return md_totals_with(sc, sol, md, uplink_rate(sc, sol, md), bs_workloads(sc, sol), nullptr);
}

EvaluationReport evaluate_solution(const Scenario& sc, const Solution& sol) {
  check_structure(sc, sol);
  const auto I = idx(sc.num_md());
  const std::vector<double> rate = all_rates(sc, sol);
  const std::vector<double> workloads = bs_workloads(sc, sol);

  EvaluationReport r;
  r.delay.resize(I);
  r.energy.resize(I);
  r.breach_cost = breach_cost(sc, sol);
  double local = 0.0;
  for (std::size_t i = 0; i < I; ++i) {
    const TimeEnergy te = md_totals_with(sc, sol, static_cast<int>(i), rate[i], workloads, &local);
    r.delay[i] = te.time;
    r.energy[i] = te.energy;
  }
  r.total_local_energy = local;
  finish_report(sc, r);
  return r;
}

EvaluationReport evaluate_local_only(const Scenario& sc) {
  const auto I = idx(sc.num_md());
  const int K = sc.num_tasks();
  const double cap = sc.params.switched_capacitance;
  EvaluationReport r;
  r.delay.assign(I, 0.0);
  r.energy.assign(I, 0.0);
  r.breach_cost.assign(I, 0.0);
  for (int i = 0; i < sc.num_md(); ++i) {
    const double f = sc.device(i).cpu_hz;
    for (int k = 0; k < K; ++k) {
      const double cycles = sc.task(i, k).size_bits * sc.task(i, k).cycles_per_bit;
      r.delay[idx(i)] += cycles / f;
      r.energy[idx(i)] += cap * cycles * f * f;
    }
  }
  finish_report(sc, r);
  r.total_local_energy = r.network_energy;
  return r;
}

double fitness(const EvaluationReport& r, std::span<const double> alpha, std::span<const double> beta) {
  contract(alpha.size() == r.delay_violation.size() && beta.size() == r.cost_violation.size(),
           "fitness: penalty vectors have the wrong length");
  double f = -r.network_energy;
  for (std::size_t i = 0; i < alpha.size(); ++i) f -= alpha[i] * r.delay_violation[i];
  for (std::size_t i = 0; i < beta.size(); ++i) f -= beta[i] * r.cost_violation[i];
  return f;
}

double fitness(const EvaluationReport& r, double alpha, double beta) {
  double f = -r.network_energy;
  for (double v : r.delay_violation) f -= alpha * v;
  for (double v : r.cost_violation) f -= beta * v;
  return f;
}

double normalized_violation(const Scenario& sc, const EvaluationReport& r) {
  double v = 0.0;
  for (std::size_t i = 0; i < r.delay_violation.size(); ++i) {
    v += r.delay_violation[i] / sc.devices[i].deadline_s;
    v += r.cost_violation[i] / std::max(sc.devices[i].breach_budget, 1.0);
  }
  return v;
}

}  // namespace mecwave
