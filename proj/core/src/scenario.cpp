#include "oising/scenario.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "oising/liouvillian.hpp"
#include "oising/markovian.hpp"
#include "oising/mcwf.hpp"
#include "oising/nonmarkovian.hpp"
#include "oising/observables.hpp"
#include "oising/parallel.hpp"

namespace oising {

namespace {

EvolutionGrid grid_of(const RunConfig& c) {
  return {c.step(), c.model.t_max, c.sample_stride};
}

DensityMatrix initial_rho(const RunConfig& c) {
  return DensityMatrix::pure(preset_state(c.initial_state, c.model));
}

TclOptions tcl_options(const RunConfig& c) {
  TclOptions o;
  o.refine = c.refine;
  o.allow_strong_noise = c.allow_strong_noise;
  return o;
}

std::vector<double> tau_grid(const RunConfig& c) {
  const auto n = static_cast<std::size_t>(std::llround(c.tau_max / c.dtau));
  std::vector<double> tau(n + 1);
  for (std::size_t i = 0; i <= n; ++i) tau[i] = static_cast<double>(i) * c.dtau;
  return tau;
}

CsvTable series_table(const EvolutionSeries& s, bool with_gamma) {
  std::vector<std::string> header{"t", "m", "trace_err", "min_eig"};
  if (with_gamma) header.emplace_back("gamma_eff");
  header.insert(header.end(), {"w", "entropy"});
  CsvTable table(header);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    std::vector<double> row{s.t[i], s.m[i], s.trace_err[i], s.min_eig[i]};
    if (with_gamma) row.push_back(s.gamma_eff[i]);
    row.push_back(s.w[i]);
    row.push_back(s.entropy[i]);
    table.add_numbers(row);
  }
  return table;
}

void write_spectrum(OutputSet& out, const std::string& name, const RunConfig& c,
                    const std::vector<double>& lambdas) {
  std::vector<LiouvillianSpectrum> spectra(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    ModelParams p = c.model;
    p.lambda = lambdas[i];
    spectra[i] = liouvillian_spectrum(build_liouvillian(p));
  }
  CsvTable table({"lambda", "mu", "gamma", "beta"});
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (Eigen::Index mu = 0; mu < spectra[i].gammas.size(); ++mu) {
      table.add_row({format_double(lambdas[i]), std::to_string(mu), format_double(spectra[i].gammas(mu)),
                     format_double(spectra[i].betas(mu))});
    }
  }
  out.write(name, table);
}

void write_mcwf(OutputSet& out, const RunConfig& c, const std::string& prefix) {
  const auto records = run_ensemble(preset_state(c.initial_state, c.model), c.model, grid_of(c), c.seed,
                                    c.trajectories);
  CsvTable summary({"seed", "n_jumps_up", "n_jumps_down", "m_ms"});
  CsvTable jumps({"traj_seed", "time", "qubit", "direction"});
  for (const auto& r : records) {
    summary.add_row({std::to_string(r.seed), std::to_string(r.count(JumpDirection::raising)),
                     std::to_string(r.count(JumpDirection::lowering)), format_double(r.m_ms)});
    for (const auto& j : r.jumps) {
      jumps.add_row({std::to_string(r.seed), format_double(j.time), std::to_string(j.qubit),
                     j.direction == JumpDirection::raising ? "raising" : "lowering"});
    }
  }
  const auto avg = ensemble_average(records);
  CsvTable m({"t", "m", "stderr"});
  for (std::size_t i = 0; i < avg.times.size(); ++i) m.add_numbers({avg.times[i], avg.mean[i], avg.std_error[i]});
  CsvTable hist({"bin_lo", "bin_hi", "count"});
  const auto& h = avg.m_ms_histogram;
  const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    hist.add_row({format_double(h.lo + b * width), format_double(h.lo + (b + 1) * width),
                  std::to_string(h.counts[b])});
  }
  out.write(prefix + "_trajectories.csv", summary);
  out.write(prefix + "_jumps.csv", jumps);
  out.write(prefix + "_m.csv", m);
  out.write(prefix + "_mms_hist.csv", hist);
}

void write_correlations(OutputSet& out, const RunConfig& c, const std::string& prefix) {
  const auto tau = tau_grid(c);
  const auto corr = two_time_correlation(initial_rho(c), c.model, c.reference_time(), tau);
  CsvTable ct({"tau", "c_a", "c_c"});
  for (std::size_t i = 0; i < tau.size(); ++i) ct.add_numbers({tau[i], corr.c_a[i], corr.c_c[i]});
  out.write(prefix + "_correlation.csv", ct);
  const auto psd = spin_psd(tau, corr.c_a);
  CsvTable pt({"omega", "s_sigma"});
  for (std::size_t i = 0; i < psd.omega.size(); ++i) pt.add_numbers({psd.omega[i], psd.s[i]});
  out.write(prefix + "_psd.csv", pt);
}

void write_noise(OutputSet& out, const RunConfig& c, const std::vector<double>& alphas) {
  CsvTable summary({"alpha", "slope", "nyquist_psd", "enhancement_t_max"});
  const std::size_t max_lag = std::max<std::size_t>(1, c.samples / 16);
  for (const double alpha : alphas) {
    const auto a = analyze_noise(c, alpha, max_lag);
    const std::string label = noise_label(alpha);
    CsvTable samples({"t", "value"});
    for (std::size_t i = 0; i < a.first_realization.samples.size(); ++i) {
      samples.add_numbers({static_cast<double>(i) * a.first_realization.dt, a.first_realization.samples[i]});
    }
    CsvTable psd({"f", "psd"});
    for (std::size_t i = 0; i < a.psd.freqs.size(); ++i) psd.add_numbers({a.psd.freqs[i], a.psd.values[i]});
    CsvTable kernel({"tau", "kappa", "std_error", "kappa_cross", "std_error_cross"});
    for (std::size_t j = 0; j < a.auto_kernel.size(); ++j) {
      kernel.add_numbers({static_cast<double>(j) * a.auto_kernel.dt, a.auto_kernel.kappa[j],
                          a.auto_kernel.std_error[j], a.cross_kernel.kappa[j], a.cross_kernel.std_error[j]});
    }
    out.write("noise_" + label + "_samples.csv", samples);
    out.write("noise_" + label + "_psd.csv", psd);
    out.write("noise_" + label + "_kernel.csv", kernel);
    const auto k = tcl_kernel(alpha, c.model);
    summary.add_numbers({alpha, a.slope, a.nyquist_psd, enhancement_factor(k, c.model.t_max).back()});
  }
  out.write("noise_summary.csv", summary);
}

void write_custom(OutputSet& out, const RunConfig& c) {
  switch (c.solver) {
    case SolverKind::markovian:
      out.write("markovian.csv", series_table(evolve_markovian(initial_rho(c), c.model, grid_of(c)), false));
      break;
    case SolverKind::tcl:
      out.write("tcl_" + noise_label(c.alpha) + ".csv",
                series_table(evolve_nonmarkovian(initial_rho(c), c.model, c.alpha, grid_of(c), tcl_options(c)),
                             true));
      break;
    case SolverKind::mcwf:
      write_mcwf(out, c, "mcwf");
      break;
    case SolverKind::spectral: {
      const auto lambdas = c.lambda_grid.empty() ? std::vector<double>{c.model.lambda} : c.lambda_grid;
      write_spectrum(out, "spectrum.csv", c, lambdas);
      const auto spec = liouvillian_spectrum(build_liouvillian(c.model));
      const auto rho0 = initial_rho(c).matrix();
      CsvTable m({"t", "m"});
      const auto grid = grid_of(c);
      for (std::size_t n = 0; n <= grid.steps(); n += static_cast<std::size_t>(grid.sample_stride)) {
        m.add_numbers({grid.time(n), magnetization(propagate_spectral(rho0, spec, grid.time(n)))});
      }
      out.write("spectral_m.csv", m);
      break;
    }
  }
}

void write_fig3(OutputSet& out, const RunConfig& c) {
  const std::vector<double> alphas{0.0, 1.0, -1.0};
  const std::vector<double> ratios{1.0, 10.0};
  std::vector<EvolutionSeries> runs(alphas.size() * ratios.size());
  parallel_for(runs.size(), [&](std::size_t i) {
    RunConfig p = c;
    p.model.lambda = ratios[i % ratios.size()] * c.model.epsilon;
    runs[i] = evolve_nonmarkovian(initial_rho(p), p.model, alphas[i / ratios.size()], grid_of(p), tcl_options(p));
  });
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto ratio = static_cast<int>(ratios[i % ratios.size()]);
    out.write("fig3_" + noise_label(alphas[i / ratios.size()]) + "_ratio" + std::to_string(ratio) + ".csv",
              series_table(runs[i], true));
  }
}

void write_fig5(OutputSet& out, const RunConfig& c) {
  const std::vector<double> alphas{1.0, 0.0, -1.0};
  RunConfig g = c;
  g.initial_state = "ground";
  std::vector<EvolutionSeries> runs(alphas.size());
  parallel_for(runs.size(), [&](std::size_t i) {
    runs[i] = evolve_nonmarkovian(initial_rho(g), g.model, alphas[i], grid_of(g), tcl_options(g));
  });
  CsvTable summary({"alpha", "tau_g", "censored"});
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.write("fig5_" + noise_label(alphas[i]) + ".csv", series_table(runs[i], true));
    const auto life = ground_state_lifetime(runs[i].series(runs[i].w, "w"));
    summary.add_row({format_double(alphas[i]), format_double(life.tau), life.censored ? "true" : "false"});
  }
  out.write("fig5_summary.csv", summary);
}

void write_fig6(OutputSet& out, const RunConfig& c) {
  const double e = c.model.epsilon;
  const auto lambdas = c.lambda_grid.empty() ? std::vector<double>{0.0, 0.5 * e, e, 2 * e, 5 * e, 10 * e}
                                             : c.lambda_grid;
  write_spectrum(out, "fig6_spectrum.csv", c, lambdas);
  std::vector<double> amps, phases;
  for (int i = 0; i <= 10; ++i) amps.push_back(0.1 * i);
  for (int i = 0; i < 12; ++i) phases.push_back(2.0 * std::numbers::pi * i / 12.0);
  ModelParams p = c.model;
  const auto scan = metastability_scan(p, {lambdas.back()}, 1, amps, phases);
  CsvTable map({"lambda", "amplitude", "phase", "m_ms"});
  for (const auto& v : scan.initial_state_map) {
    map.add_numbers({lambdas.back(), v.amplitude, v.phase, v.m_ms});
  }
  out.write("fig6_initial_state.csv", map);
}

template <typename Body>
ScenarioResult run_with_output(const RunConfig& c, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  OutputSet out(c.output_dir);
  try {
    body(out);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {out.dir(), out.finish(serialize_config(c), wall)};
  } catch (...) {
    out.discard();
    throw;
  }
}

}  // namespace

std::string noise_label(double alpha) {
  if (alpha == 0.0) return "white";
  if (alpha == 1.0) return "pink";
  if (alpha == -1.0) return "blue";
  return "alpha" + format_double(alpha);
}

NoiseAnalysis analyze_noise(const RunConfig& c, double alpha, std::size_t max_lag) {
  const std::size_t r_count = c.realizations;
  noise::NoiseEnsemble ensemble(r_count);
  std::vector<noise::PsdEstimate> psds(r_count);
  parallel_for(r_count, [&](std::size_t r) {
    const std::uint64_t base = derive_seed(c.seed, r);
    for (std::uint64_t q = 0; q < 2; ++q) {
      const auto white = noise::generate_white(c.samples, derive_seed(base, q), c.model.f0);
      ensemble[r].push_back(noise::shape_spectrum(white, alpha));
    }
    psds[r] = noise::estimate_psd(ensemble[r][0]);
  });
  NoiseAnalysis a;
  a.alpha = alpha;
  a.psd = noise::average_psd(psds);
  a.slope = noise::fit_log_slope(a.psd, c.model.f0 / 100.0, c.model.f0 / 2.0);
  a.nyquist_psd = a.psd.values.back();
  a.auto_kernel = noise::estimate_correlation(ensemble, 0, 0, max_lag);
  a.cross_kernel = noise::estimate_correlation(ensemble, 0, 1, max_lag);
  a.first_realization = ensemble.front().front();
  return a;
}

ScenarioResult run_noise(const RunConfig& config, const std::vector<double>& alphas) {
  config.validate();
  return run_with_output(config, [&](OutputSet& out) { write_noise(out, config, alphas); });
}

ScenarioResult run_scenario(const RunConfig& config) {
  config.validate();
  return run_with_output(config, [&](OutputSet& out) {
    switch (config.scenario) {
      case Scenario::noise:
        write_noise(out, config, {0.0, 1.0, -1.0});
        break;
      case Scenario::fig3:
        write_fig3(out, config);
        break;
      case Scenario::fig4:
        write_mcwf(out, config, "fig4");
        write_correlations(out, config, "fig4");
        break;
      case Scenario::fig5:
        write_fig5(out, config);
        break;
      case Scenario::fig6:
        write_fig6(out, config);
        break;
      case Scenario::custom:
        write_custom(out, config);
        break;
    }
  });
}

PointSummary summarize_point(const RunConfig& c) {
  c.validate();
  PointSummary s;
  auto from_series = [&s, &c](const EvolutionSeries& run) {
    s.m_ms = metastable_value(run.series(run.m, "m"), c.model.t_max);
    const auto life = ground_state_lifetime(run.series(run.w, "w"));
    s.tau_g = life.tau;
    s.tau_censored = life.censored;
  };
  switch (c.solver) {
    case SolverKind::markovian:
      from_series(evolve_markovian(initial_rho(c), c.model, grid_of(c)));
      break;
    case SolverKind::tcl:
      from_series(evolve_nonmarkovian(initial_rho(c), c.model, c.alpha, grid_of(c), tcl_options(c)));
      break;
    case SolverKind::mcwf: {
      const auto records = run_ensemble(preset_state(c.initial_state, c.model), c.model, grid_of(c), c.seed,
                                        c.trajectories);
      s.m_ms = ensemble_average(records).m_ms_mean;
      break;
    }
    case SolverKind::spectral: {
      const auto spec = liouvillian_spectrum(build_liouvillian(c.model));
      s.gamma_1 = spec.gammas.size() > 1 ? spec.gammas(1) : 0.0;
      s.m_ms = magnetization(propagate_spectral(initial_rho(c).matrix(), spec, c.model.t_max));
      break;
    }
  }
  return s;
}

std::vector<PointSummary> sweep(const RunConfig& config, std::string_view key,
                                const std::vector<double>& values) {
  if (!is_sweepable(key)) throw ConfigError("sweep: '" + std::string(key) + "' is not a numeric key");
  std::vector<RunConfig> points(values.size(), config);
  for (std::size_t i = 0; i < values.size(); ++i) {
    set_config_value(points[i], key, format_double(values[i]));
    if (key != "seed") points[i].seed = derive_seed(config.seed, i);
    points[i].validate();
  }
  std::vector<PointSummary> out(values.size());
  parallel_for(values.size(), [&](std::size_t i) { out[i] = summarize_point(points[i]); });
  return out;
}

ScenarioResult run_sweep(const RunConfig& config, std::string_view key, const std::vector<double>& values) {
  return run_with_output(config, [&](OutputSet& out) {
    const auto rows = sweep(config, key, values);
    CsvTable table({std::string(key), "m_ms", "tau_g", "tau_censored", "gamma_1"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      table.add_row({format_double(values[i]), format_double(rows[i].m_ms), format_double(rows[i].tau_g),
                     rows[i].tau_censored ? "true" : "false", format_double(rows[i].gamma_1)});
    }
    out.write("sweep.csv", table);
  });
}

}  // namespace oising
