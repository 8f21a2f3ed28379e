#include "mecwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "mecwave/errors.hpp"
#include "mecwave/units.hpp"

namespace mecwave {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

bool is_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

class LineParser {
 public:
  LineParser(std::string_view text, int line) : s_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  ConfigValue value() {
    skip_ws();
    if (pos_ >= s_.size()) fail(line_, "missing value");
    ConfigValue v;
    v.line = line_;
    const char c = s_[pos_];
    if (c == '"') {
      v.kind = ConfigValue::Kind::string;
      v.text = string();
    } else if (c == '[') {
      v.kind = ConfigValue::Kind::array;
      ++pos_;
      for (;;) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        }
        v.items.push_back(value());
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
        } else if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        } else {
          fail(line_, "expected ',' or ']' in array (arrays must fit on one line)");
        }
      }
    } else if (s_.substr(pos_, 4) == "true") {
      v.kind = ConfigValue::Kind::boolean;
      v.boolean = true;
      pos_ += 4;
    } else if (s_.substr(pos_, 5) == "false") {
      v.kind = ConfigValue::Kind::boolean;
      pos_ += 5;
    } else {
      number(v);
    }
    return v;
  }

 private:
  std::string string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(line_, std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail(line_, "unterminated string");
    ++pos_;
    return out;
  }

  void number(ConfigValue& v) {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ' ' && s_[pos_] != '\t' &&
           s_[pos_] != '#')
      ++pos_;
    std::string token(s_.substr(start, pos_ - start));
    if (!token.empty() && token[0] == '+') token.erase(0, 1);
    if (token.empty()) fail(line_, "missing value");
    v.kind = ConfigValue::Kind::number;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [p, ec] = std::from_chars(first, last, v.number);
    if (ec != std::errc() || p != last || !std::isfinite(v.number)) fail(line_, "not a number: '" + token + "'");
    std::int64_t i = 0;
    auto [pi, eci] = std::from_chars(first, last, i);
    if (eci == std::errc() && pi == last) {
      v.integral = true;
      v.integer = i;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// --- typed accessors ------------------------------------------------------

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double as_number(const ConfigValue& v, const std::string& ctx) {
  if (v.kind != ConfigValue::Kind::number) fail(v.line, ctx + " must be a number");
  return v.number;
}

std::int64_t as_integer(const ConfigValue& v, const std::string& ctx) {
  if (v.kind != ConfigValue::Kind::number || !v.integral) fail(v.line, ctx + " must be an integer");
  return v.integer;
}

int as_int(const ConfigValue& v, const std::string& ctx) {
  const auto i = as_integer(v, ctx);
  if (i < -2147483647 || i > 2147483647) fail(v.line, ctx + " is out of range");
  return static_cast<int>(i);
}

bool as_bool(const ConfigValue& v, const std::string& ctx) {
  if (v.kind != ConfigValue::Kind::boolean) fail(v.line, ctx + " must be true or false");
  return v.boolean;
}

std::string as_string(const ConfigValue& v, const std::string& ctx) {
  if (v.kind != ConfigValue::Kind::string) fail(v.line, ctx + " must be a string");
  return v.text;
}

std::vector<double> as_numbers(const ConfigValue& v, const std::string& ctx, std::size_t n = 0) {
  if (v.kind != ConfigValue::Kind::array) fail(v.line, ctx + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& item : v.items) out.push_back(as_number(item, ctx));
  if (n != 0 && out.size() != n) fail(v.line, ctx + " must have " + std::to_string(n) + " entries");
  return out;
}

std::vector<std::string> as_strings(const ConfigValue& v, const std::string& ctx) {
  if (v.kind != ConfigValue::Kind::array) fail(v.line, ctx + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v.items) out.push_back(as_string(item, ctx));
  return out;
}

Range as_range(const ConfigValue& v, const std::string& ctx, double scale = 1.0) {
  const auto x = as_numbers(v, ctx, 2);
  return {x[0] * scale, x[1] * scale};
}

CodecCoefficients as_codec(const ConfigValue& v, const std::string& ctx) {
  const auto x = as_numbers(v, ctx, 3);
  return {x[0], x[1], x[2]};
}

using Handler = std::function<void(ExperimentSpec&, const ConfigValue&, const std::string&)>;

struct CryptoColumns {
  std::vector<double> encrypt, decrypt, energy, level;
};

std::map<std::string, Handler> scenario_handlers(CryptoColumns& crypto) {
  std::map<std::string, Handler> h;
  auto num = [](double ScenarioParams::*field, double scale = 1.0) {
    return [field, scale](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
      s.scenario.*field = as_number(v, c) * scale;
    };
  };
  auto count = [](int ScenarioParams::*field) {
    return [field](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.scenario.*field = as_int(v, c); };
  };
  auto range = [](Range ScenarioParams::*field, double scale = 1.0) {
    return [field, scale](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
      s.scenario.*field = as_range(v, c, scale);
    };
  };
  auto codec = [](CodecCoefficients ScenarioParams::*field) {
    return [field](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.scenario.*field = as_codec(v, c); };
  };
  h["macrocell_radius_km"] = num(&ScenarioParams::macrocell_radius_km);
  h["min_distance_km"] = num(&ScenarioParams::min_distance_km);
  h["num_sbs"] = count(&ScenarioParams::num_sbs);
  h["num_md"] = count(&ScenarioParams::num_md);
  h["num_tasks_per_md"] = count(&ScenarioParams::num_tasks_per_md);
  h["num_clusters"] = count(&ScenarioParams::num_clusters);
  h["max_subchannels"] = count(&ScenarioParams::max_subchannels);
  h["system_bandwidth_mhz"] = num(&ScenarioParams::system_bandwidth_hz, 1e6);
  h["noise_power_mw"] = num(&ScenarioParams::noise_power_w, 1e-3);
  h["backhaul_rate_gbps"] = num(&ScenarioParams::backhaul_rate_bps, 1e9);
  h["wired_power_mw"] = num(&ScenarioParams::wired_power_w, 1e-3);
  h["md_max_power_dbm"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.scenario.md_max_power_w = units::dbm_to_watts(as_number(v, c));
  };
  h["md_cpu_ghz"] = num(&ScenarioParams::md_cpu_hz, 1e9);
  h["sbs_cpu_ghz"] = num(&ScenarioParams::sbs_cpu_hz, 1e9);
  h["mbs_cpu_ghz"] = num(&ScenarioParams::mbs_cpu_hz, 1e9);
  h["bs_energy_w_per_ghz"] = num(&ScenarioParams::bs_energy_per_cycle_j, 1e-9);
  h["switched_capacitance"] = num(&ScenarioParams::switched_capacitance);
  h["codec_xi"] = num(&ScenarioParams::codec_xi);
  h["md_compress"] = codec(&ScenarioParams::md_compress);
  h["bs_compress"] = codec(&ScenarioParams::bs_compress);
  h["bs_decompress"] = codec(&ScenarioParams::bs_decompress);
  h["z_first"] = range(&ScenarioParams::z_first);
  h["z_second"] = range(&ScenarioParams::z_second);
  h["task_size_kb"] = range(&ScenarioParams::task_size_bits, units::kBitsPerKilobyte);
  h["cycles_per_bit"] = range(&ScenarioParams::cycles_per_bit);
  h["deadline_s"] = range(&ScenarioParams::deadline_s);
  h["breach_loss"] = range(&ScenarioParams::breach_loss);
  h["breach_budget"] = range(&ScenarioParams::breach_budget);
  h["risk_coefficient"] = range(&ScenarioParams::risk_coefficient);
  h["expected_levels"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.scenario.expected_levels = as_numbers(v, c);
  };
  h["crypto_encrypt_cycles_per_bit"] = [&crypto](ExperimentSpec&, const ConfigValue& v, const std::string& c) {
    crypto.encrypt = as_numbers(v, c);
  };
  h["crypto_decrypt_cycles_per_bit"] = [&crypto](ExperimentSpec&, const ConfigValue& v, const std::string& c) {
    crypto.decrypt = as_numbers(v, c);
  };
  h["crypto_energy_j_per_bit"] = [&crypto](ExperimentSpec&, const ConfigValue& v, const std::string& c) {
    crypto.energy = as_numbers(v, c);
  };
  h["crypto_security_levels"] = [&crypto](ExperimentSpec&, const ConfigValue& v, const std::string& c) {
    crypto.level = as_numbers(v, c);
  };
  h["shadowing_std_db"] = num(&ScenarioParams::shadowing_std_db);
  h["epsilon"] = num(&ScenarioParams::epsilon);
  h["one_minus"] = num(&ScenarioParams::one_minus);
  return h;
}

std::map<std::string, Handler> optimizer_handlers() {
  std::map<std::string, Handler> h;
  auto num = [](double OptimizerConfig::*field) {
    return [field](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.optimizer.*field = as_number(v, c); };
  };
  auto count = [](int OptimizerConfig::*field) {
    return [field](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.optimizer.*field = as_int(v, c); };
  };
  h["population"] = count(&OptimizerConfig::population);
  h["iterations"] = count(&OptimizerConfig::iterations);
  h["solitary_waves"] = count(&OptimizerConfig::solitary_waves);
  h["max_height"] = count(&OptimizerConfig::max_height);
  h["workers"] = count(&OptimizerConfig::workers);
  h["a1"] = num(&OptimizerConfig::a1);
  h["a2"] = num(&OptimizerConfig::a2);
  h["a3"] = num(&OptimizerConfig::a3);
  h["a4"] = num(&OptimizerConfig::a4);
  h["a5"] = num(&OptimizerConfig::a5);
  h["a6"] = num(&OptimizerConfig::a6);
  h["a7"] = num(&OptimizerConfig::a7);
  h["d1"] = num(&OptimizerConfig::d1);
  h["d2"] = num(&OptimizerConfig::d2);
  h["u_min"] = num(&OptimizerConfig::u_min);
  h["u_max"] = num(&OptimizerConfig::u_max);
  h["alpha"] = num(&OptimizerConfig::alpha);
  h["beta"] = num(&OptimizerConfig::beta);
  h["wwo_lambda_init"] = num(&OptimizerConfig::wwo_lambda_init);
  h["wwo_reduction"] = num(&OptimizerConfig::wwo_reduction);
  h["wwo_epsilon"] = num(&OptimizerConfig::wwo_epsilon);
  h["fitness_mode"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    const std::string mode = as_string(v, c);
    if (mode == "penalty") {
      s.optimizer.mode = FitnessMode::penalty;
    } else if (mode == "lexicographic") {
      s.optimizer.mode = FitnessMode::lexicographic;
    } else {
      fail(v.line, c + " must be \"penalty\" or \"lexicographic\"");
    }
  };
  return h;
}

std::map<std::string, Handler> experiment_handlers() {
  std::map<std::string, Handler> h;
  h["sweep"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.sweep = parse_sweep_var(as_string(v, c));
  };
  h["values"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.values = as_numbers(v, c); };
  h["algorithms"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.algorithms.clear();
    for (const auto& name : as_strings(v, c)) s.algorithms.push_back(parse_algorithm(name));
  };
  h["seeds"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.seeds = as_int(v, c); };
  h["master_seed"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    const auto seed = as_integer(v, c);
    if (seed < 0) fail(v.line, c + " must be non-negative");
    s.master_seed = static_cast<std::uint64_t>(seed);
  };
  h["record_wall_time"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.record_wall_time = as_bool(v, c);
  };
  h["emit_traces"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) {
    s.emit_traces = as_bool(v, c);
  };
  h["parallel"] = [](ExperimentSpec& s, const ConfigValue& v, const std::string& c) { s.parallel = as_int(v, c); };
  return h;
}

}  // namespace

ConfigTable parse_config_table(const std::string& text) {
  ConfigTable table;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      const auto close = s.find(']');
      if (close == std::string_view::npos) fail(line, "unterminated section header");
      const std::string_view rest = trim(s.substr(close + 1));
      if (!rest.empty() && rest.front() != '#') fail(line, "unexpected text after section header");
      section = std::string(trim(s.substr(1, close - 1)));
      if (section.empty()) fail(line, "empty section name");
      if (table.count(section) != 0) fail(line, "duplicate section [" + section + "]");
      table[section];
      continue;
    }
    std::size_t k = 0;
    while (k < s.size() && is_key_char(s[k])) ++k;
    if (k == 0) fail(line, "expected key = value");
    const std::string key(s.substr(0, k));
    std::string_view rest = trim(s.substr(k));
    if (rest.empty() || rest.front() != '=') fail(line, "expected '=' after " + key);
    LineParser parser(rest.substr(1), line);
    ConfigValue v = parser.value();
    if (!parser.done()) fail(line, "unexpected text after value of " + key);
    auto& entries = table[section];
    if (entries.count(key) != 0) fail(line, "duplicate key " + key);
    entries.emplace(key, std::move(v));
  }
  return table;
}

ExperimentSpec parse_config(const std::string& text) {
  const ConfigTable table = parse_config_table(text);
  ExperimentSpec spec;
  CryptoColumns crypto;
  for (const auto& alg : spec.scenario.crypto) {
    crypto.encrypt.push_back(alg.encrypt_cycles_per_bit);
    crypto.decrypt.push_back(alg.decrypt_cycles_per_bit);
    crypto.energy.push_back(alg.energy_per_bit_j);
    crypto.level.push_back(alg.security_level);
  }
  const std::map<std::string, std::map<std::string, Handler>> handlers{
      {"scenario", scenario_handlers(crypto)},
      {"optimizer", optimizer_handlers()},
      {"experiment", experiment_handlers()},
  };
  for (const auto& [section, entries] : table) {
    const auto hs = handlers.find(section);
    if (hs == handlers.end()) {
      const int line = entries.empty() ? 0 : entries.begin()->second.line;
      throw ConfigError("config: unknown section [" + section + "]" +
                        (line > 0 ? " (line " + std::to_string(line) + ")" : ""));
    }
    for (const auto& [key, value] : entries) {
      const auto h = hs->second.find(key);
      if (h == hs->second.end()) fail(value.line, "unknown key " + where(section, key));
      h->second(spec, value, where(section, key));
    }
  }

  const std::size_t q = crypto.encrypt.size();
  if (crypto.decrypt.size() != q || crypto.energy.size() != q || crypto.level.size() != q) {
    throw ConfigError("config: the crypto_* arrays must all have the same length");
  }
  spec.scenario.crypto.clear();
  for (std::size_t i = 0; i < q; ++i)
    spec.scenario.crypto.push_back({crypto.encrypt[i], crypto.decrypt[i], crypto.energy[i], crypto.level[i]});

  validate(spec);
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

std::string list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_number(xs[i]);
  return out + "]";
}

}  // namespace

std::string dump_config(const ExperimentSpec& spec) {
  const auto& p = spec.scenario;
  const auto& o = spec.optimizer;
  std::ostringstream out;
  auto kv = [&out](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto n = [](double v) { return format_number(v); };
  auto r = [](const Range& x, double scale = 1.0) { return list({x.min / scale, x.max / scale}); };
  auto c = [](const CodecCoefficients& x) { return list({x.scale, x.exponent, x.offset}); };

  out << "[scenario]\n";
  kv("macrocell_radius_km", n(p.macrocell_radius_km));
  kv("min_distance_km", n(p.min_distance_km));
  kv("num_sbs", n(p.num_sbs));
  kv("num_md", n(p.num_md));
  kv("num_tasks_per_md", n(p.num_tasks_per_md));
  kv("num_clusters", n(p.num_clusters));
  kv("max_subchannels", n(p.max_subchannels));
  kv("system_bandwidth_mhz", n(p.system_bandwidth_hz / 1e6));
  kv("noise_power_mw", n(p.noise_power_w / 1e-3));
  kv("backhaul_rate_gbps", n(p.backhaul_rate_bps / 1e9));
  kv("wired_power_mw", n(p.wired_power_w / 1e-3));
  kv("md_max_power_dbm", n(units::watts_to_dbm(p.md_max_power_w)));
  kv("md_cpu_ghz", n(p.md_cpu_hz / 1e9));
  kv("sbs_cpu_ghz", n(p.sbs_cpu_hz / 1e9));
  kv("mbs_cpu_ghz", n(p.mbs_cpu_hz / 1e9));
  kv("bs_energy_w_per_ghz", n(p.bs_energy_per_cycle_j / 1e-9));
  kv("switched_capacitance", n(p.switched_capacitance));
  kv("codec_xi", n(p.codec_xi));
  kv("md_compress", c(p.md_compress));
  kv("bs_compress", c(p.bs_compress));
  kv("bs_decompress", c(p.bs_decompress));
  kv("z_first", r(p.z_first));
  kv("z_second", r(p.z_second));
  kv("task_size_kb", r(p.task_size_bits, units::kBitsPerKilobyte));
  kv("cycles_per_bit", r(p.cycles_per_bit));
  kv("deadline_s", r(p.deadline_s));
  kv("breach_loss", r(p.breach_loss));
  kv("breach_budget", r(p.breach_budget));
  kv("risk_coefficient", r(p.risk_coefficient));
  kv("expected_levels", list(p.expected_levels));
  std::vector<double> enc, dec, en, lv;
  for (const auto& a : p.crypto) {
    enc.push_back(a.encrypt_cycles_per_bit);
    dec.push_back(a.decrypt_cycles_per_bit);
    en.push_back(a.energy_per_bit_j);
    lv.push_back(a.security_level);
  }
  kv("crypto_encrypt_cycles_per_bit", list(enc));
  kv("crypto_decrypt_cycles_per_bit", list(dec));
  kv("crypto_energy_j_per_bit", list(en));
  kv("crypto_security_levels", list(lv));
  kv("shadowing_std_db", n(p.shadowing_std_db));
  kv("epsilon", n(p.epsilon));
  kv("one_minus", n(p.one_minus));

  out << "\n[optimizer]\n";
  kv("population", n(o.population));
  kv("iterations", n(o.iterations));
  kv("solitary_waves", n(o.solitary_waves));
  kv("max_height", n(o.max_height));
  kv("a1", n(o.a1));
  kv("a2", n(o.a2));
  kv("a3", n(o.a3));
  kv("a4", n(o.a4));
  kv("a5", n(o.a5));
  kv("a6", n(o.a6));
  kv("a7", n(o.a7));
  kv("d1", n(o.d1));
  kv("d2", n(o.d2));
  kv("u_min", n(o.u_min));
  kv("u_max", n(o.u_max));
  kv("alpha", n(o.alpha));
  kv("beta", n(o.beta));
  kv("fitness_mode", o.mode == FitnessMode::penalty ? "\"penalty\"" : "\"lexicographic\"");
  kv("wwo_lambda_init", n(o.wwo_lambda_init));
  kv("wwo_reduction", n(o.wwo_reduction));
  kv("wwo_epsilon", n(o.wwo_epsilon));
  kv("workers", n(o.workers));

  out << "\n[experiment]\n";
  kv("sweep", "\"" + std::string(to_string(spec.sweep)) + "\"");
  kv("values", list(spec.values));
  std::string algs = "[";
  for (std::size_t i = 0; i < spec.algorithms.size(); ++i)
    algs += (i ? ", \"" : "\"") + std::string(to_string(spec.algorithms[i])) + "\"";
  kv("algorithms", algs + "]");
  kv("seeds", n(spec.seeds));
  kv("master_seed", std::to_string(spec.master_seed));
  kv("record_wall_time", spec.record_wall_time ? "true" : "false");
  kv("emit_traces", spec.emit_traces ? "true" : "false");
  kv("parallel", n(spec.parallel));
  return out.str();
}

}  // namespace mecwave
