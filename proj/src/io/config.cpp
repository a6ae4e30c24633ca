#include "phnet/io/config.hpp"

#include "phnet/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace phnet::io {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

[[noreturn]] void value_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ValueError, path + ": " + what);
}

// A JSON object section with a fixed key set.
class Section {
 public:
  Section(const json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) schema_error(path_ + "." + key, "unknown key '" + key + "'");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string child(const char* key) const { return path_ + "." + key; }

  const json& at(const char* key) const {
    if (!j_.contains(key)) schema_error(child(key), "missing required key '" + std::string(key) + "'");
    return j_.at(key);
  }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) schema_error(child(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) value_error(child(key), "must be finite");
    return x;
  }

  std::optional<double> optional_number(const char* key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  Index integer(const char* key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) schema_error(child(key), "expected an integer");
    return v.get<Index>();
  }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) schema_error(child(key), "expected a string");
    return v.get<std::string>();
  }

  const std::string& path() const noexcept { return path_; }

 private:
  const json& j_;
  std::string path_;
};

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema_error(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
    if (!std::isfinite(out.back())) value_error(path + "[" + std::to_string(i) + "]", "must be finite");
  }
  return out;
}

ComplexVector complex_array(const json& j, const std::string& path) {
  Section s(j, path, {"re", "im"});
  const auto re = number_array(s.at("re"), s.child("re"));
  std::vector<double> im(re.size(), 0.0);
  if (s.has("im")) im = number_array(s.at("im"), s.child("im"));
  if (im.size() != re.size()) schema_error(path, "'re' and 'im' differ in length");
  ComplexVector out(static_cast<Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) out[static_cast<Index>(i)] = Complex(re[i], im[i]);
  return out;
}

ComplexMatrix complex_matrix(const json& j, const std::string& path) {
  Section s(j, path, {"re", "im"});
  auto rows = [&](const char* key) {
    const json& m = s.at(key);
    if (!m.is_array() || m.empty()) schema_error(s.child(key), "expected a non-empty array of rows");
    std::vector<std::vector<double>> out;
    for (std::size_t r = 0; r < m.size(); ++r) out.push_back(number_array(m[r], s.child(key) + "[" + std::to_string(r) + "]"));
    return out;
  };
  const auto re = rows("re");
  const std::size_t n = re.size();
  for (const auto& r : re) {
    if (r.size() != n) schema_error(s.child("re"), "cluster matrix must be square");
  }
  ComplexMatrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = re[r][c];
  }
  if (s.has("im")) {
    const auto im = rows("im");
    if (im.size() != n) schema_error(s.child("im"), "shape differs from 're'");
    for (std::size_t r = 0; r < n; ++r) {
      if (im[r].size() != n) schema_error(s.child("im"), "shape differs from 're'");
      for (std::size_t c = 0; c < n; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) += Complex(0.0, im[r][c]);
    }
  }
  return m;
}

Complex complex_scalar(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  schema_error(path, "expected a number or [re, im]");
}

// Physics failures from the model layer surface as ValueError carrying the
// original diagnostic.
template <class F>
auto physics(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError || e.kind() == ErrorKind::ValueError) throw;
    value_error(path, e.what());
  }
}

ModelConfig parse_model(const json& j) {
  const std::string path = "model";
  if (!j.is_object()) schema_error(path, "expected an object");
  if (!j.contains("type") || !j["type"].is_string()) schema_error(path + ".type", "expected \"ladder\" or \"network\"");
  const auto type = j["type"].get<std::string>();
  if (type == "ladder") {
    Section s(j, path, {"type", "N", "J", "gamma", "kappa"});
    LadderSpec spec{s.integer("N"), s.number("J"), s.number("gamma"), s.number("kappa")};
    physics(path, [&] { validate_ladder(spec); return 0; });
    return spec;
  }
  if (type == "network") {
    Section s(j, path, {"type", "cluster", "lambda", "couplings"});
    NetworkSpec spec;
    spec.cluster.hopping = complex_matrix(s.at("cluster"), s.child("cluster"));
    spec.scale = number_array(s.at("lambda"), s.child("lambda"));
    if (s.has("couplings")) {
      const json& list = s.at("couplings");
      if (!list.is_array()) schema_error(s.child("couplings"), "expected an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        Section c(list[i], s.child("couplings") + "[" + std::to_string(i) + "]", {"alpha", "beta", "kappa"});
        spec.couplings.push_back(
            {c.integer("alpha") - 1, c.integer("beta") - 1, complex_scalar(c.at("kappa"), c.child("kappa"))});
      }
    }
    physics(path, [&] { validate_network(spec); return 0; });
    return spec;
  }
  schema_error(path + ".type", "unknown model type '" + type + "'");
}

NetworkSpec model_network(const ModelConfig& model) {
  if (const auto* ladder = std::get_if<LadderSpec>(&model)) return build_ladder(*ladder);
  return std::get<NetworkSpec>(model);
}

StateConfig parse_state(const json& j, const ModelConfig& model) {
  const std::string path = "state";
  if (!j.is_object()) schema_error(path, "expected an object");
  if (!j.contains("type") || !j["type"].is_string()) {
    schema_error(path + ".type", "expected \"gaussian\", \"single-mode\" or \"amplitudes\"");
  }
  const auto type = j["type"].get<std::string>();
  const NetworkSpec net = model_network(model);

  if (type == "gaussian") {
    Section s(j, path, {"type", "N_A", "N_B", "phi_A", "phi_B", "rho"});
    const auto* ladder = std::get_if<LadderSpec>(&model);
    if (!ladder) schema_error(path + ".type", "gaussian states need a ladder model");
    GaussianSpec g{s.integer("N_A"), s.integer("N_B"), s.number("phi_A"), s.number("phi_B"), s.number("rho")};
    physics(path, [&] { validate_gaussian(g, ladder->rungs); return 0; });
    return GaussianState{g};
  }
  if (type == "single-mode") {
    Section s(j, path, {"type", "mode", "coefficients"});
    SingleModeState st;
    st.mode = s.integer("mode") - 1;
    if (st.mode < 0 || st.mode >= net.cluster_dim()) {
      value_error(s.child("mode"), "mode must lie in 1.." + std::to_string(net.cluster_dim()));
    }
    if (s.has("coefficients")) {
      st.coefficients = complex_array(s.at("coefficients"), s.child("coefficients"));
      if (st.coefficients->size() != net.cluster_count()) {
        value_error(s.child("coefficients"), "expected " + std::to_string(net.cluster_count()) + " coefficients");
      }
      if (std::abs(st.coefficients->squaredNorm() - 1.0) > 1e-10) {
        value_error(s.child("coefficients"), "sum |c|^2 must equal 1");
      }
    }
    return st;
  }
  if (type == "amplitudes") {
    Section s(j, path, {"type", "re", "im"});
    const auto re = number_array(s.at("re"), s.child("re"));
    std::vector<double> im(re.size(), 0.0);
    if (s.has("im")) im = number_array(s.at("im"), s.child("im"));
    if (im.size() != re.size()) schema_error(path, "'re' and 'im' differ in length");
    AmplitudeState st{ComplexVector(static_cast<Index>(re.size()))};
    for (std::size_t i = 0; i < re.size(); ++i) st.amplitudes[static_cast<Index>(i)] = Complex(re[i], im[i]);
    if (st.amplitudes.size() != net.dim()) {
      value_error(path, "expected " + std::to_string(net.dim()) + " amplitudes");
    }
    return st;
  }
  schema_error(path + ".type", "unknown state type '" + type + "'");
}

EvolutionConfig parse_evolution(const json& j, const ModelConfig& model) {
  Section s(j, "evolution", {"t_max", "t_max_periods", "dt", "samples", "method"});
  EvolutionConfig ev;
  if (s.has("t_max") == s.has("t_max_periods")) schema_error("evolution", "give exactly one of t_max, t_max_periods");
  if (s.has("t_max")) {
    ev.t_max = s.number("t_max");
  } else {
    const auto* ladder = std::get_if<LadderSpec>(&model);
    if (!ladder) schema_error(s.child("t_max_periods"), "t_max_periods needs a ladder model");
    ev.t_max = s.number("t_max_periods") * ladder->period();
  }
  if (!(ev.t_max > 0.0)) value_error("evolution", "evolution time must be > 0");
  ev.dt = s.optional_number("dt");
  if (ev.dt && !(*ev.dt > 0.0)) value_error(s.child("dt"), "dt must be > 0");
  if (s.has("samples")) ev.samples = s.integer("samples");
  if (ev.samples < 1) value_error(s.child("samples"), "samples must be >= 1");
  if (s.has("method")) {
    try {
      ev.method = parse_method(s.string("method"));
    } catch (const Error& e) {
      value_error(s.child("method"), e.what());
    }
  }
  return ev;
}

OutputConfig parse_output(const json& j) {
  Section s(j, "output", {"dir", "svg", "profiles"});
  OutputConfig out;
  if (s.has("dir")) out.dir = s.string("dir");
  if (s.has("svg")) out.svg = s.string("svg");
  if (s.has("profiles")) {
    if (!s.at("profiles").is_boolean()) schema_error(s.child("profiles"), "expected a boolean");
    out.profiles = s.at("profiles").get<bool>();
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

const json& top_level(const json& root, const char* key) {
  if (!root.contains(key)) schema_error(key, "missing required section '" + std::string(key) + "'");
  return root.at(key);
}

}  // namespace

NetworkSpec ExperimentConfig::network() const { return model_network(model); }

EvolutionMethod parse_method(std::string_view name) {
  if (name == "rk4") return EvolutionMethod::Rk4;
  if (name == "expm") return EvolutionMethod::Expm;
  if (name == "spectral") return EvolutionMethod::Spectral;
  throw Error(ErrorKind::InvalidValue, "unknown method '" + std::string(name) + "' (rk4, expm, spectral)");
}

std::string_view method_name(EvolutionMethod method) {
  switch (method) {
    case EvolutionMethod::Rk4: return "rk4";
    case EvolutionMethod::Expm: return "expm";
    case EvolutionMethod::Spectral: return "spectral";
  }
  return "unknown";
}

ModelConfig load_model(std::string_view text) {
  const json root = parse_json(text);
  Section(root, "$", {"model", "state", "evolution", "output"});
  return parse_model(top_level(root, "model"));
}

ExperimentConfig load_config(std::string_view text) {
  const json root = parse_json(text);
  Section(root, "$", {"model", "state", "evolution", "output"});
  ExperimentConfig cfg{parse_model(top_level(root, "model")), {}, {}, {}};
  cfg.state = parse_state(top_level(root, "state"), cfg.model);
  cfg.evolution = parse_evolution(top_level(root, "evolution"), cfg.model);
  if (root.contains("output")) cfg.output = parse_output(root.at("output"));
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidValue, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

}  // namespace phnet::io
