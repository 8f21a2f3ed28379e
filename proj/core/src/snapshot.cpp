#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mecwave/errors.hpp"
#include "mecwave/scenario.hpp"

namespace mecwave {

using nlohmann::json;

void to_json(json& j, const Range& r) { j = json::array({r.min, r.max}); }
void from_json(const json& j, Range& r) {
  r.min = j.at(0).get<double>();
  r.max = j.at(1).get<double>();
}

void to_json(json& j, const CodecCoefficients& c) { j = json::array({c.scale, c.exponent, c.offset}); }
void from_json(const json& j, CodecCoefficients& c) {
  c.scale = j.at(0).get<double>();
  c.exponent = j.at(1).get<double>();
  c.offset = j.at(2).get<double>();
}

void to_json(json& j, const CryptoAlgorithm& a) {
  j = json{{"encrypt_cycles_per_bit", a.encrypt_cycles_per_bit},
           {"decrypt_cycles_per_bit", a.decrypt_cycles_per_bit},
           {"energy_per_bit_j", a.energy_per_bit_j},
           {"security_level", a.security_level}};
}
void from_json(const json& j, CryptoAlgorithm& a) {
  j.at("encrypt_cycles_per_bit").get_to(a.encrypt_cycles_per_bit);
  j.at("decrypt_cycles_per_bit").get_to(a.decrypt_cycles_per_bit);
  j.at("energy_per_bit_j").get_to(a.energy_per_bit_j);
  j.at("security_level").get_to(a.security_level);
}

void to_json(json& j, const Point& p) { j = json::array({p.x, p.y}); }
void from_json(const json& j, Point& p) {
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

void to_json(json& j, const TaskParams& t) {
  j = json{{"size_bits", t.size_bits}, {"cycles_per_bit", t.cycles_per_bit}, {"expected_level", t.expected_level},
           {"risk", t.risk}, {"loss", t.loss}};
}
void from_json(const json& j, TaskParams& t) {
  j.at("size_bits").get_to(t.size_bits);
  j.at("cycles_per_bit").get_to(t.cycles_per_bit);
  j.at("expected_level").get_to(t.expected_level);
  j.at("risk").get_to(t.risk);
  j.at("loss").get_to(t.loss);
}

void to_json(json& j, const DeviceParams& d) {
  j = json{{"deadline_s", d.deadline_s}, {"breach_budget", d.breach_budget}, {"cpu_hz", d.cpu_hz},
           {"max_power_w", d.max_power_w}};
}
void from_json(const json& j, DeviceParams& d) {
  j.at("deadline_s").get_to(d.deadline_s);
  j.at("breach_budget").get_to(d.breach_budget);
  j.at("cpu_hz").get_to(d.cpu_hz);
  j.at("max_power_w").get_to(d.max_power_w);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ScenarioParams, macrocell_radius_km, min_distance_km, num_sbs, num_md,
                                   num_tasks_per_md, num_clusters, max_subchannels, system_bandwidth_hz,
                                   noise_power_w, backhaul_rate_bps, wired_power_w, md_max_power_w, md_cpu_hz,
                                   sbs_cpu_hz, mbs_cpu_hz, bs_energy_per_cycle_j, switched_capacitance, codec_xi,
                                   md_compress, bs_compress, bs_decompress, z_first, z_second, task_size_bits,
                                   cycles_per_bit, deadline_s, breach_loss, breach_budget, risk_coefficient,
                                   expected_levels, crypto, shadowing_std_db, epsilon, one_minus)

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["format"] = "mecwave-scenario";
  j["version"] = 1;
  j["params"] = sc.params;
  j["md_positions"] = sc.md_positions;
  j["bs_positions"] = sc.bs_positions;
  j["gains"] = sc.gains;
  j["cluster_of_sbs"] = sc.cluster_of_sbs;
  j["tasks"] = sc.tasks;
  j["devices"] = sc.devices;
  return j.dump(1);
}

Scenario scenario_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "mecwave-scenario") throw ConfigError("not a scenario snapshot");
    if (j.at("version").get<int>() != 1) throw ConfigError("unsupported scenario snapshot version");
    Scenario sc;
    j.at("params").get_to(sc.params);
    j.at("md_positions").get_to(sc.md_positions);
    j.at("bs_positions").get_to(sc.bs_positions);
    j.at("gains").get_to(sc.gains);
    j.at("cluster_of_sbs").get_to(sc.cluster_of_sbs);
    j.at("tasks").get_to(sc.tasks);
    j.at("devices").get_to(sc.devices);

    validate(sc.params);
    const auto I = sc.md_positions.size();
    const auto B = sc.bs_positions.size();
    const auto K = static_cast<std::size_t>(sc.params.num_tasks_per_md);
    if (B != static_cast<std::size_t>(sc.params.num_sbs) + 1 || sc.gains.size() != I * B ||
        sc.cluster_of_sbs.size() + 1 != B || sc.tasks.size() != I * K || sc.devices.size() != I) {
      throw ConfigError("scenario snapshot has inconsistent sizes");
    }
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario snapshot: ") + e.what());
  }
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << scenario_to_json(sc) << '\n';
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace mecwave
