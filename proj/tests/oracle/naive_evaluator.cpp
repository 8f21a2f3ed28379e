#include "naive_evaluator.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

using mecwave::Scenario;
using mecwave::Solution;

namespace {

using Mat = std::vector<std::vector<double>>;

double lambda_form(double xi, double size, double ratio, const mecwave::CodecCoefficients& c) {
  return xi * size * (c.scale * std::pow(ratio, c.exponent) + c.offset);
}

}  // namespace

NaiveReport naive_evaluate(const Scenario& sc, const Solution& sol) {
  const auto& P = sc.params;
  const int I = sc.num_md();
  const int J = sc.num_bs();  // 0 = MBS
  const int K = sc.num_tasks();
  const int Q = sc.num_crypto();
  const int N = sol.num_subchannels;
  const int L = sc.num_clusters();

  // indicators
  Mat x(I, std::vector<double>(J, 0.0));
  Mat b(I, std::vector<double>(N, 0.0));
  std::vector<Mat> y(I, Mat(K, std::vector<double>(Q, 0.0)));
  for (int i = 0; i < I; ++i) {
    x[i][sol.assoc[i]] = 1.0;
    b[i][sol.channel[i]] = 1.0;
    for (int k = 0; k < K; ++k) y[i][k][sol.tasks[i * K + k].crypto] = 1.0;
  }
  auto dbar = [&](int i, int k) { return sol.tasks[i * K + k].d_first; };
  auto dhat = [&](int i, int k) { return sol.tasks[i * K + k].d_second; };
  auto zbar = [&](int i, int k) { return sol.tasks[i * K + k].z_first; };
  auto zhat = [&](int i, int k) { return sol.tasks[i * K + k].z_second; };
  auto h = [&](int i, int j) { return sc.gains[i * J + j]; };
  auto cluster = [&](int j) { return j == 0 ? -1 : sc.cluster_of_sbs[j - 1]; };
  auto d = [&](int i, int k) { return sc.tasks[i * K + k].size_bits; };
  auto c = [&](int i, int k) { return sc.tasks[i * K + k].cycles_per_bit; };
  auto gbar = [&](int q) { return P.crypto[q].encrypt_cycles_per_bit; };
  auto ghat = [&](int q) { return P.crypto[q].decrypt_cycles_per_bit; };
  auto gtil = [&](int q) { return P.crypto[q].energy_per_bit_j; };
  const double xi = P.codec_xi;
  const double varpi = P.system_bandwidth_hz;
  const double mu = sol.mu;
  const double omega = (1.0 - mu) * varpi / (L * N);
  const double sigma2 = P.noise_power_w;

  // rates R[i][j][n]
  std::vector<Mat> R(I, Mat(J, std::vector<double>(N, 0.0)));
  double n_mbs = 0.0;
  for (int u = 0; u < I; ++u) n_mbs += x[u][0];
  for (int i = 0; i < I; ++i) {
    for (int j = 0; j < J; ++j) {
      if (x[i][j] == 0.0) continue;
      for (int n = 0; n < N; ++n) {
        if (b[i][n] == 0.0) continue;
        if (j == 0) {
          R[i][j][n] = mu * varpi / n_mbs * std::log2(1.0 + sol.power[i] * h(i, 0) / sigma2);
        } else {
          double interf = 0.0;
          for (int u = 0; u < I; ++u) {
            if (u == i) continue;
            for (int s = 1; s < J; ++s) {
              if (x[u][s] == 0.0 || cluster(s) != cluster(j) || b[u][n] == 0.0) continue;
              if (h(u, j) <= h(i, j)) interf += sol.power[u] * h(u, j);
            }
          }
          R[i][j][n] = omega * std::log2(1.0 + sol.power[i] * h(i, j) / (interf + sigma2));
        }
      }
    }
  }

  // cycle counts
  auto C_loc = [&](int i, int k) { return lambda_form(xi, dbar(i, k), zbar(i, k), P.md_compress); };
  auto C_mbs_from_md = [&](int i, int k) { return lambda_form(xi, dbar(i, k), zbar(i, k), P.bs_decompress); };
  auto C_mbs_from_sbs = [&](int i, int k) { return lambda_form(xi, dhat(i, k), zhat(i, k), P.bs_decompress); };
  auto Chat_sbs = [&](int i, int k) { return lambda_form(xi, dbar(i, k), zbar(i, k), P.bs_decompress); };
  auto Cbar_sbs = [&](int i, int k) { return lambda_form(xi, dhat(i, k), zhat(i, k), P.bs_compress); };
  auto ysum = [&](int i, int k, auto g) {
    double s = 0.0;
    for (int q = 0; q < Q; ++q) s += y[i][k][q] * g(q);
    return s;
  };

  auto A_sbs = [&](int i, int k) {
    const double B = (dbar(i, k) - dhat(i, k)) * c(i, k);
    const double dec = ysum(i, k, ghat) * dbar(i, k) / zbar(i, k);
    const double enc = ysum(i, k, gbar) * dhat(i, k) / zhat(i, k);
    return B + Chat_sbs(i, k) + Cbar_sbs(i, k) + dec + enc;
  };
  auto A_mbs = [&](int i, int j, int k) {
    if (j == 0) return dbar(i, k) * c(i, k) + ysum(i, k, ghat) * dbar(i, k) / zbar(i, k) + C_mbs_from_md(i, k);
    return dhat(i, k) * c(i, k) + ysum(i, k, ghat) * dhat(i, k) / zhat(i, k) + C_mbs_from_sbs(i, k);
  };

  std::vector<double> denom_sbs(J, 0.0);
  for (int j = 1; j < J; ++j)
    for (int u = 0; u < I; ++u)
      for (int n = 0; n < K; ++n) denom_sbs[j] += x[u][j] * A_sbs(u, n);
  double denom_mbs = 0.0;
  for (int u = 0; u < I; ++u)
    for (int n = 0; n < K; ++n) {
      denom_mbs += x[u][0] * A_mbs(u, 0, n);
      for (int s = 1; s < J; ++s) denom_mbs += x[u][s] * A_mbs(u, s, n);
    }
  const double f_sbs_total = P.sbs_cpu_hz;
  const double f_mbs_total = P.mbs_cpu_hz;
  const double xi_hat = P.bs_energy_per_cycle_j;

  NaiveReport out;
  out.tau.assign(I, 0.0);
  out.eps.assign(I, 0.0);
  out.psi.assign(I, 0.0);
  for (int i = 0; i < I; ++i) {
    const double f = sc.devices[i].cpu_hz;
    const double p = sol.power[i];
    for (int k = 0; k < K; ++k) {
      double tau_loc = 0.0, eps_loc = 0.0, tau_sbs = 0.0, eps_sbs = 0.0, tau_mbs = 0.0, eps_mbs = 0.0;
      for (int j = 0; j < J; ++j) {
        if (x[i][j] == 0.0) continue;
        // local execution
        double t = (d(i, k) - dbar(i, k)) * c(i, k) / f + C_loc(i, k) / f;
        for (int q = 0; q < Q; ++q) t += y[i][k][q] * gbar(q) * dbar(i, k) / (zbar(i, k) * f);
        double e = P.switched_capacitance * (d(i, k) - dbar(i, k)) * c(i, k) * f * f +
                   P.switched_capacitance * C_loc(i, k) * f * f;
        for (int n = 0; n < N; ++n)
          if (b[i][n] != 0.0) e += b[i][n] * p * dbar(i, k) / (zbar(i, k) * R[i][j][n]);
        for (int q = 0; q < Q; ++q) e += y[i][k][q] * gtil(q) * dbar(i, k) / zbar(i, k);
        tau_loc += x[i][j] * t;
        eps_loc += x[i][j] * e;

        if (j == 0) {
          // one-step, straight to the MBS
          const double fhat = A_mbs(i, 0, k) * f_mbs_total / denom_mbs;
          double tm = 0.0;
          for (int n = 0; n < N; ++n)
            if (b[i][n] != 0.0) tm += dbar(i, k) / (zbar(i, k) * R[i][0][n]);
          tm += C_mbs_from_md(i, k) / fhat + dbar(i, k) * c(i, k) / fhat;
          for (int q = 0; q < Q; ++q) tm += y[i][k][q] * ghat(q) * dbar(i, k) / (zbar(i, k) * fhat);
          double em = xi_hat * C_mbs_from_md(i, k) + xi_hat * dbar(i, k) * c(i, k);
          for (int q = 0; q < Q; ++q) em += y[i][k][q] * gtil(q) * dbar(i, k) / zbar(i, k);
          tau_mbs += x[i][0] * tm;
          eps_mbs += x[i][0] * em;
        } else {
          // two-step via SBS j
          const double fbar = A_sbs(i, k) * f_sbs_total / denom_sbs[j];
          const double fhat = A_mbs(i, j, k) * f_mbs_total / denom_mbs;
          double ts = 0.0;
          for (int n = 0; n < N; ++n)
            if (b[i][n] != 0.0) ts += dbar(i, k) / (zbar(i, k) * R[i][j][n]);
          ts += dhat(i, k) / (zhat(i, k) * P.backhaul_rate_bps);
          ts += Chat_sbs(i, k) / fbar + Cbar_sbs(i, k) / fbar + C_mbs_from_sbs(i, k) / fhat;
          for (int q = 0; q < Q; ++q) ts += y[i][k][q] * ghat(q) * dbar(i, k) / (zbar(i, k) * fbar);
          for (int q = 0; q < Q; ++q) ts += y[i][k][q] * gbar(q) * dhat(i, k) / (zhat(i, k) * fbar);
          for (int q = 0; q < Q; ++q) ts += y[i][k][q] * ghat(q) * dhat(i, k) / (zhat(i, k) * fhat);
          ts += (dbar(i, k) - dhat(i, k)) * c(i, k) / fbar + dhat(i, k) * c(i, k) / fhat;
          double es = P.wired_power_w * dhat(i, k) / (zhat(i, k) * P.backhaul_rate_bps) + xi_hat * Chat_sbs(i, k) +
                      xi_hat * Cbar_sbs(i, k) + xi_hat * C_mbs_from_sbs(i, k);
          for (int q = 0; q < Q; ++q) es += y[i][k][q] * gtil(q) * dbar(i, k) / zbar(i, k);
          for (int q = 0; q < Q; ++q) es += y[i][k][q] * gtil(q) * dhat(i, k) / zhat(i, k);
          for (int q = 0; q < Q; ++q) es += y[i][k][q] * gtil(q) * dhat(i, k) / zhat(i, k);
          es += xi_hat * (dbar(i, k) - dhat(i, k)) * c(i, k) + xi_hat * dhat(i, k) * c(i, k);
          tau_sbs += x[i][j] * ts;
          eps_sbs += x[i][j] * es;
        }
      }
      // per-MD totals
      out.tau[i] += std::max(tau_sbs + tau_mbs, tau_loc);
      out.eps[i] += eps_loc + eps_mbs + eps_sbs;

      // breach cost
      const auto& task = sc.tasks[i * K + k];
      for (int j = 0; j < J; ++j)
        for (int q = 0; q < Q; ++q) {
          const double v_q = P.crypto[q].security_level;
          const double prob = v_q < task.expected_level ? 1.0 - std::exp(-task.risk * (task.expected_level - v_q)) : 0.0;
          out.psi[i] += task.loss * x[i][j] * y[i][k][q] * prob;
        }
    }
    out.E += out.eps[i];
  }
  return out;
}

}  // namespace oracle
