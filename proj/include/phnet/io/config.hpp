#pragma once

// Strict JSON experiment configuration. Every object rejects keys it does not
// know; see docs/config-schema.json for the full layout.

#include "phnet/dynamics.hpp"
#include "phnet/lattice.hpp"
#include "phnet/wavepacket.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace phnet::io {

using ModelConfig = std::variant<LadderSpec, NetworkSpec>;

struct GaussianState {
  GaussianSpec spec;
};

/// sum_alpha c_alpha f_sigma on cluster alpha. `mode` counts from 0 in
/// ascending energy order; uniform c_alpha = 1/sqrt(N) when none are given.
struct SingleModeState {
  Index mode = 0;
  std::optional<ComplexVector> coefficients;
};

struct AmplitudeState {
  ComplexVector amplitudes;
};

using StateConfig = std::variant<GaussianState, SingleModeState, AmplitudeState>;

struct EvolutionConfig {
  double t_max = 0.0;  // resolved at load time (t_max_periods multiplied out)
  std::optional<double> dt;
  Index samples = kDefaultSamples;
  EvolutionMethod method = EvolutionMethod::Rk4;
};

struct OutputConfig {
  std::string dir = ".";
  std::optional<std::string> svg;
  bool profiles = true;
};

struct ExperimentConfig {
  ModelConfig model;
  StateConfig state;
  EvolutionConfig evolution;
  OutputConfig output;

  bool is_ladder() const noexcept { return std::holds_alternative<LadderSpec>(model); }
  const LadderSpec& ladder() const { return std::get<LadderSpec>(model); }
  NetworkSpec network() const;
};

/// Errors: ParseError (with line and column), SchemaError naming the key,
/// ValueError for physically invalid input such as gamma >= J.
ExperimentConfig load_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

/// Only the model section is required (spectrum / gram subcommands).
ModelConfig load_model(std::string_view text);

EvolutionMethod parse_method(std::string_view name);
std::string_view method_name(EvolutionMethod method);

}  // namespace phnet::io
