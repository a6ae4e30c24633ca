#pragma once

// Orchestration behind the CLI: build the initial state from a config, run
// the evolution, and turn the result into tables and plots.

#include "phnet/dynamics.hpp"
#include "phnet/io/config.hpp"
#include "phnet/io/csv.hpp"
#include "phnet/io/svg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phnet::io {

struct RunOverrides {
  std::optional<EvolutionMethod> method;
  std::optional<double> dt;
  std::optional<std::string> out_dir;
};

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides);

/// Modes used for lifting and the spectral path: the closed-form dimer
/// modes for ladders, numeric modes otherwise.
BiorthoModes experiment_modes(const ExperimentConfig& config);

StateVector initial_state(const ExperimentConfig& config);

struct ExperimentOutput {
  EvolutionResult result;
  ResultTable norms;     // ladder: t,P1s,P2s,PT,PT_predicted; network: t,PT,PT_predicted
  ResultTable profiles;  // ladder: t,j,P1,P2; network: t,alpha,l,P
};

ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Extra predicted-vs-measured columns for the figure presets:
/// PT_gaussian, P1s_breathing, P2s_breathing, PT_breathing, and for
/// counter-propagating packets center_A, center_B, center_A_predicted,
/// center_B_predicted.
void add_demo_overlays(const ExperimentConfig& config, ExperimentOutput& output);

/// Writes norms.csv, profiles.csv (unless disabled) and the optional SVG.
/// Returns the paths written.
std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentOutput& output);

/// Mode-block spectrum. Ladder: sigma,rank,numeric,analytic,abs_error, plus the
/// dispersion table n,k,eps_minus,eps_plus. Network: sigma,rank,numeric.
struct SpectrumOutput {
  ResultTable spectrum;
  std::optional<ResultTable> dispersion;
  double max_error = 0.0;  // ladder only
};

SpectrumOutput run_spectrum(const ModelConfig& model);

/// Cluster modes and Dirac Gram matrices. modes: mode,energy,metric_factor;
/// gram: matrix(1 = D_f, 2 = D_g),row,col,re,im (1-based indices).
struct GramOutput {
  BiorthoModes modes;
  GramMatrices gram;
  ResultTable mode_table;
  ResultTable gram_table;
};

GramOutput run_gram(const ModelConfig& model);

LinePanel norm_panel(const ExperimentConfig& config, const ExperimentOutput& output, std::string title);
PlotSpec experiment_plot(const ExperimentConfig& config, const ExperimentOutput& output);

/// One norm panel per run, stacked; used for the side-by-side case comparison.
PlotSpec comparison_plot(const std::vector<std::pair<const ExperimentConfig*, const ExperimentOutput*>>& runs,
                         const std::vector<std::string>& titles);

/// Built-in presets (the same files as presets/*.json).
std::vector<std::string_view> preset_names();
std::string_view preset_text(std::string_view name);

}  // namespace phnet::io
