#include "phnet/io/experiment.hpp"

#include "phnet/error.hpp"
#include "phnet/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

namespace phnet::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const GaussianSpec* gaussian_of(const ExperimentConfig& config) {
  const auto* g = std::get_if<GaussianState>(&config.state);
  return g ? &g->spec : nullptr;
}

bool counter_propagating(const GaussianSpec& g) {
  return std::abs(wrap_angle(g.phi_a - std::numbers::pi / 2)) < 1e-9 &&
         std::abs(wrap_angle(g.phi_b + std::numbers::pi / 2)) < 1e-9;
}

bool breathing(const GaussianSpec& g) {
  return g.center_a == g.center_b && std::abs(wrap_angle(g.phi_a - g.phi_b)) < 1e-12;
}

}  // namespace

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides) {
  if (overrides.method) config.evolution.method = *overrides.method;
  if (overrides.dt) {
    if (!(*overrides.dt > 0.0)) throw Error(ErrorKind::ValueError, "--dt must be > 0");
    config.evolution.dt = overrides.dt;
  }
  if (overrides.out_dir) config.output.dir = *overrides.out_dir;
}

BiorthoModes experiment_modes(const ExperimentConfig& config) {
  if (config.is_ladder()) return dimer_modes_analytic(config.ladder().rung_hopping, config.ladder().gamma);
  return cluster_modes_numeric(std::get<NetworkSpec>(config.model).cluster);
}

StateVector initial_state(const ExperimentConfig& config) {
  const NetworkSpec net = config.network();
  if (const auto* g = gaussian_of(config)) {
    const BiorthoModes modes = experiment_modes(config);
    return to_site_state(gaussian_kspace(*g, config.ladder()), modes);
  }
  if (const auto* s = std::get_if<SingleModeState>(&config.state)) {
    const BiorthoModes modes = experiment_modes(config);
    const ComplexVector c = s->coefficients.value_or(
        ComplexVector::Constant(net.cluster_count(), 1.0 / std::sqrt(static_cast<double>(net.cluster_count()))));
    return lift_mode_state(net, modes, s->mode, c);
  }
  return StateVector(std::get<AmplitudeState>(config.state).amplitudes, net.cluster_dim());
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const NetworkSpec net = config.network();
  const BiorthoModes modes = experiment_modes(config);
  const StateVector psi0 = initial_state(config);
  const auto grid = uniform_grid(config.evolution.t_max, config.evolution.samples);

  EvolveOptions options;
  options.dt = config.evolution.dt;
  options.modes = modes;

  ExperimentOutput out;
  out.result = evolve(net, psi0, grid, config.evolution.method, options);
  const auto& res = out.result;

  if (config.is_ladder()) {
    const LadderSpec& ladder = config.ladder();
    const KSpaceCoeffs k0 = to_kspace(psi0, modes);
    const NormSeries ns = norm_series(res);
    out.norms = ResultTable({"t", "P1s", "P2s", "PT", "PT_predicted"});
    for (std::size_t i = 0; i < res.times.size(); ++i) {
      out.norms.add_row({res.times[i], ns.leg1[i], ns.leg2[i], ns.total[i],
                         predict_norm_exact(k0, ladder.theta(), ladder.gap(), res.times[i])});
    }
    if (config.output.profiles) {
      out.profiles = ResultTable({"t", "j", "P1", "P2"});
      for (std::size_t i = 0; i < res.times.size(); ++i) {
        const auto& p = res.profiles[i];
        for (Index j = 0; j < p.rows(); ++j) {
          out.profiles.add_row({res.times[i], static_cast<double>(j + 1), p(j, 0), p(j, 1)});
        }
      }
    }
  } else {
    double predicted = kNaN;
    if (const auto* s = std::get_if<SingleModeState>(&config.state)) predicted = metric_factor(modes, s->mode);
    out.norms = ResultTable({"t", "PT", "PT_predicted"});
    for (std::size_t i = 0; i < res.times.size(); ++i) out.norms.add_row({res.times[i], res.dirac_norm[i], predicted});
    if (config.output.profiles) {
      out.profiles = ResultTable({"t", "alpha", "l", "P"});
      for (std::size_t i = 0; i < res.times.size(); ++i) {
        const auto& p = res.profiles[i];
        for (Index a = 0; a < p.rows(); ++a) {
          for (Index l = 0; l < p.cols(); ++l) {
            out.profiles.add_row({res.times[i], static_cast<double>(a + 1), static_cast<double>(l + 1), p(a, l)});
          }
        }
      }
    }
  }
  return out;
}

void add_demo_overlays(const ExperimentConfig& config, ExperimentOutput& output) {
  const GaussianSpec* g = gaussian_of(config);
  if (!g || !config.is_ladder()) return;
  const LadderSpec& ladder = config.ladder();
  const NetworkSpec net = config.network();
  const BiorthoModes modes = experiment_modes(config);
  const bool moving = counter_propagating(*g);
  const bool breathes = breathing(*g);

  auto columns = output.norms.columns();
  columns.emplace_back("PT_gaussian");
  if (breathes) {
    for (const char* c : {"P1s_breathing", "P2s_breathing", "PT_breathing"}) columns.emplace_back(c);
  }
  if (moving) {
    for (const char* c : {"center_A", "center_B", "center_A_predicted", "center_B_predicted"}) columns.emplace_back(c);
  }

  ResultTable table(columns);
  for (std::size_t i = 0; i < output.norms.size(); ++i) {
    auto row = output.norms.rows()[i];
    const double t = row[0];
    row.push_back(predict_norm_gaussian(*g, ladder.theta(), ladder.gap(), t));
    if (breathes) {
      const auto b = predict_breathing(ladder.theta(), ladder.period(), t);
      row.insert(row.end(), {b.leg1, b.leg2, b.total});
    }
    if (moving) {
      const ModeCoefficients c = project_biortho(net, modes, output.result.states[i]);
      const auto a = measure_packet(c.col(dimer_mode(+1)).cwiseAbs2());
      const auto b = measure_packet(c.col(dimer_mode(-1)).cwiseAbs2());
      const auto p = predict_translation(*g, ladder, t);
      row.insert(row.end(), {a.center, b.center, p.a, p.b});
    }
    table.add_row(std::move(row));
  }
  output.norms = std::move(table);
}

std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentOutput& output) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::InvalidValue, "cannot create output directory '" + dir.string() + "'");

  std::vector<std::string> written;
  const auto norms = (dir / "norms.csv").string();
  write_csv_file(output.norms, norms);
  written.push_back(norms);
  if (config.output.profiles && !output.profiles.columns().empty()) {
    const auto profiles = (dir / "profiles.csv").string();
    write_csv_file(output.profiles, profiles);
    written.push_back(profiles);
  }
  if (config.output.svg) {
    const auto svg = (dir / *config.output.svg).string();
    std::ofstream out(svg, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidValue, "cannot open '" + svg + "' for writing");
    out << render_svg(experiment_plot(config, output));
    written.push_back(svg);
  }
  return written;
}

SpectrumOutput run_spectrum(const ModelConfig& model) {
  SpectrumOutput out;
  if (const auto* ladder = std::get_if<LadderSpec>(&model)) {
    const NetworkSpec net = build_ladder(*ladder);
    const BiorthoModes modes = dimer_modes_analytic(ladder->rung_hopping, ladder->gamma);
    const ModeBlocks blocks = mode_block_hamiltonians(net, modes);
    const Index n = ladder->rungs;
    out.spectrum = ResultTable({"sigma", "rank", "numeric", "analytic", "abs_error"});
    out.dispersion = ResultTable({"n", "k", "eps_minus", "eps_plus"});
    for (Index m = 1; m <= n; ++m) {
      const double k = momentum(m, n);
      out.dispersion->add_row({static_cast<double>(m), k, dispersion(k, ladder->leg_hopping, ladder->gap(), -1),
                               dispersion(k, ladder->leg_hopping, ladder->gap(), +1)});
    }
    for (int sigma : {-1, +1}) {
      const RealVector numeric = eig_hermitian(blocks.blocks[static_cast<std::size_t>(dimer_mode(sigma))]).values;
      std::vector<double> analytic;
      for (Index m = 1; m <= n; ++m) analytic.push_back(dispersion(momentum(m, n), ladder->leg_hopping, ladder->gap(), sigma));
      std::sort(analytic.begin(), analytic.end());
      for (Index r = 0; r < n; ++r) {
        const double err = std::abs(numeric[r] - analytic[static_cast<std::size_t>(r)]);
        out.max_error = std::max(out.max_error, err);
        out.spectrum.add_row({static_cast<double>(sigma), static_cast<double>(r + 1), numeric[r],
                              analytic[static_cast<std::size_t>(r)], err});
      }
    }
    return out;
  }
  const auto& net = std::get<NetworkSpec>(model);
  const BiorthoModes modes = cluster_modes_numeric(net.cluster);
  const ModeBlocks blocks = mode_block_hamiltonians(net, modes);
  out.spectrum = ResultTable({"sigma", "rank", "numeric"});
  for (Index s = 0; s < modes.dim(); ++s) {
    const RealVector numeric = eig_hermitian(blocks.blocks[static_cast<std::size_t>(s)]).values;
    for (Index r = 0; r < numeric.size(); ++r) {
      out.spectrum.add_row({static_cast<double>(s + 1), static_cast<double>(r + 1), numeric[r]});
    }
  }
  return out;
}

GramOutput run_gram(const ModelConfig& model) {
  GramOutput out;
  if (const auto* ladder = std::get_if<LadderSpec>(&model)) {
    out.modes = dimer_modes_analytic(ladder->rung_hopping, ladder->gamma);
  } else {
    out.modes = cluster_modes_numeric(std::get<NetworkSpec>(model).cluster);
  }
  out.gram = dirac_gram(out.modes);
  out.mode_table = ResultTable({"mode", "energy", "metric_factor"});
  for (Index s = 0; s < out.modes.dim(); ++s) {
    out.mode_table.add_row({static_cast<double>(s + 1), out.modes.energies[s], metric_factor(out.modes, s)});
  }
  out.gram_table = ResultTable({"matrix", "row", "col", "re", "im"});
  int which = 1;
  for (const ComplexMatrix* m : {&out.gram.right, &out.gram.left}) {
    for (Index r = 0; r < m->rows(); ++r) {
      for (Index c = 0; c < m->cols(); ++c) {
        out.gram_table.add_row({static_cast<double>(which), static_cast<double>(r + 1), static_cast<double>(c + 1),
                                (*m)(r, c).real(), (*m)(r, c).imag()});
      }
    }
    ++which;
  }
  return out;
}

LinePanel norm_panel(const ExperimentConfig& config, const ExperimentOutput& output, std::string title) {
  if (output.norms.empty()) throw Error(ErrorKind::EmptyData, "no samples to plot");
  const auto t = output.norms.column("t");
  LinePanel norms;
  norms.title = std::move(title);
  norms.x_label = "t";
  norms.y_label = "norm";
  if (config.is_ladder()) {
    norms.series.push_back({"P1s", t, output.norms.column("P1s"), "#1f4fbf", false, false});
    norms.series.push_back({"P2s", t, output.norms.column("P2s"), "#c0392b", false, false});
    norms.reference = 1.0 / std::cos(config.ladder().theta());
    norms.reference_label = "sec theta = " + format_number(std::round(*norms.reference * 1e4) / 1e4);
  }
  norms.series.push_back({"PT", t, output.norms.column("PT"), "#000000", false, false});
  norms.series.push_back({"PT predicted", t, output.norms.column("PT_predicted"), "#7f7f7f", true, false});
  return norms;
}

PlotSpec comparison_plot(const std::vector<std::pair<const ExperimentConfig*, const ExperimentOutput*>>& runs,
                         const std::vector<std::string>& titles) {
  PlotSpec plot;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    plot.lines.push_back(norm_panel(*runs[i].first, *runs[i].second, i < titles.size() ? titles[i] : std::string()));
  }
  return plot;
}

PlotSpec experiment_plot(const ExperimentConfig& config, const ExperimentOutput& output) {
  PlotSpec plot;
  plot.lines.push_back(norm_panel(config, output, "Dirac norms"));

  const auto& res = output.result;
  if (!res.profiles.empty()) {
    const Index rows = static_cast<Index>(res.profiles.size());
    const Index sites = res.profiles.front().rows();
    const Index legs = res.profiles.front().cols();
    if (config.is_ladder()) {
      for (Index leg = 0; leg < legs; ++leg) {
        HeatmapPanel h;
        h.title = "P" + std::to_string(leg + 1) + "(j, t)";
        h.x_label = "j";
        h.y_label = "t";
        h.values.resize(rows, sites);
        for (Index r = 0; r < rows; ++r) h.values.row(r) = res.profiles[static_cast<std::size_t>(r)].col(leg).transpose();
        h.x_min = 1;
        h.x_max = static_cast<double>(sites);
        h.y_min = res.times.front();
        h.y_max = res.times.back();
        plot.heatmaps.push_back(std::move(h));
      }
    } else {
      HeatmapPanel h;
      h.title = "cluster probability";
      h.x_label = "alpha";
      h.y_label = "t";
      h.values.resize(rows, sites);
      for (Index r = 0; r < rows; ++r) {
        h.values.row(r) = res.profiles[static_cast<std::size_t>(r)].rowwise().sum().transpose();
      }
      h.x_min = 1;
      h.x_max = static_cast<double>(sites);
      h.y_min = res.times.front();
      h.y_max = res.times.back();
      plot.heatmaps.push_back(std::move(h));
    }
  }
  return plot;
}

}  // namespace phnet::io
