#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fwm/config.hpp"
#include "fwm/constants.hpp"
#include "fwm/io.hpp"
#include "fwm/medium.hpp"
#include "fwm/presets.hpp"
#include "fwm/pulse.hpp"
#include "fwm/scan.hpp"
#include "fwm/twin_beam.hpp"

namespace {

namespace fs = std::filesystem;

struct Context {
  fwm::RunConfig config;
  fs::path base_dir;  // directory of the config file; input paths resolve here
  fs::path out_dir;
};

Context make_context(const std::string& config_path, const std::string& out_flag) {
  Context ctx;
  ctx.config = fwm::load_run_config(config_path);
  ctx.base_dir = fs::absolute(fs::path(config_path)).parent_path();
  const std::string out =
      !out_flag.empty() ? out_flag : ctx.config.output_dir.value_or(".");
  ctx.out_dir = out;
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) {
    throw fwm::config_error("cannot create output directory '" + out +
                            "': " + ec.message());
  }
  return ctx;
}

fs::path resolve_input(const Context& ctx, const std::string& file) {
  fs::path p(file);
  return p.is_relative() ? ctx.base_dir / p : p;
}

std::string out_file(const Context& ctx, const char* name) {
  return (ctx.out_dir / name).string();
}

template <typename T>
const T& need(const std::optional<T>& value, const char* command, const char* section) {
  if (!value) {
    throw fwm::config_error(std::string(command) + ": config is missing the '" +
                            section + "' section");
  }
  return *value;
}

fwm::MediumModel medium_for(const Context& ctx) {
  if (ctx.config.medium_file) {
    return fwm::load_medium(resolve_input(ctx, *ctx.config.medium_file).string());
  }
  return fwm::demo_medium();
}

// Detuning grids are config data; a grid that reaches nonpositive optical
// frequency is a config error, not a numerical one.
void check_grid_above_zero(double reference_hz, const fwm::FrequencyGrid& grid) {
  if (reference_hz + grid.start_hz <= 0.0 || reference_hz + grid.stop_hz <= 0.0) {
    throw fwm::config_error(
        "grid.start_hz: detuning grid crosses zero optical frequency at "
        "scan.reference_hz = " +
        fwm::format_double(reference_hz));
  }
}

void run_spectrum(const Context& ctx) {
  const fwm::AmplifierSpec& amp = need(ctx.config.amp, "spectrum", "amp");
  const fwm::FrequencyGrid& grid = need(ctx.config.grid, "spectrum", "grid");

  fwm::ChannelLosses losses;
  if (ctx.config.loss) {
    losses.eta_probe = ctx.config.loss->eta_probe;
    losses.eta_conjugate = ctx.config.loss->eta_conjugate;
  }

  double delay = 0.0;
  if (ctx.config.delay_override_s) {
    delay = *ctx.config.delay_override_s;
  } else {
    const fwm::SourceSpec& spec = need(ctx.config.source, "spectrum", "source");
    fwm::SourceConfig source;
    source.pump = fwm::two_pi * spec.pump_hz;
    source.one_photon_detuning = fwm::two_pi * spec.one_photon_detuning_hz;
    source.two_photon_detuning = fwm::two_pi * spec.two_photon_detuning_hz;
    source.probe = fwm::two_pi * spec.probe_hz;
    const fwm::MediumModel medium = medium_for(ctx);
    delay = fwm::delay_from_media(medium, source.probe,
                                  fwm::conjugate_frequency(source));
  }

  const fwm::TwinBeamState state =
      fwm::apply_losses(fwm::amplify({amp.gain, amp.seed_flux}), losses);
  const std::vector<double> freqs = fwm::make_grid(grid);
  const fwm::NoiseSpectrum spectrum = fwm::squeezing_spectrum(state, freqs, delay);

  fwm::write_noise_spectrum_csv(out_file(ctx, "noise_spectrum.csv"), spectrum);
  fwm::NoiseSpectrum shot;
  shot.frequencies_hz = freqs;
  shot.noise_db.assign(freqs.size(), 0.0);
  fwm::write_noise_spectrum_csv(out_file(ctx, "shot_reference.csv"), shot);

  std::size_t min_index = 0;
  for (std::size_t i = 1; i < spectrum.noise_db.size(); ++i) {
    if (spectrum.noise_db[i] < spectrum.noise_db[min_index]) {
      min_index = i;
    }
  }
  fwm::write_report(
      out_file(ctx, "spectrum_report.txt"),
      {
          {"gain", fwm::format_double(amp.gain)},
          {"seed_flux", fwm::format_double(amp.seed_flux)},
          {"eta_probe", fwm::format_double(losses.eta_probe)},
          {"eta_conjugate", fwm::format_double(losses.eta_conjugate)},
          {"delay_s", fwm::format_double(delay)},
          {"zero_frequency_noise_db",
           fwm::format_double(fwm::difference_noise_db(state))},
          {"min_noise_db", fwm::format_double(spectrum.noise_db[min_index])},
          {"min_noise_frequency_hz",
           fwm::format_double(spectrum.frequencies_hz[min_index])},
      });
}

void run_groupindex(const Context& ctx) {
  const fwm::MediumModel medium = medium_for(ctx);
  const fwm::ScanSpec& scan = need(ctx.config.scan, "groupindex", "scan");
  const fwm::FrequencyGrid& grid = need(ctx.config.grid, "groupindex", "grid");
  check_grid_above_zero(scan.reference_hz, grid);

  fwm::GroupIndexProfile profile;
  profile.detunings_hz = fwm::make_grid(grid);
  profile.group_index.reserve(profile.detunings_hz.size());
  for (double detuning : profile.detunings_hz) {
    const double omega = fwm::two_pi * (scan.reference_hz + detuning);
    profile.group_index.push_back(fwm::group_index(medium, omega));
  }

  fwm::write_profile_csv(out_file(ctx, "group_index.csv"), profile);

  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 1; i < profile.group_index.size(); ++i) {
    if (profile.group_index[i] < profile.group_index[lo]) {
      lo = i;
    }
    if (profile.group_index[i] > profile.group_index[hi]) {
      hi = i;
    }
  }
  fwm::write_report(
      out_file(ctx, "groupindex_report.txt"),
      {
          {"reference_hz", fwm::format_double(scan.reference_hz)},
          {"n0", fwm::format_double(medium.n0)},
          {"max_group_index", fwm::format_double(profile.group_index[hi])},
          {"max_group_index_detuning_hz",
           fwm::format_double(profile.detunings_hz[hi])},
          {"min_group_index", fwm::format_double(profile.group_index[lo])},
          {"min_group_index_detuning_hz",
           fwm::format_double(profile.detunings_hz[lo])},
      });
}

void run_propagate(const Context& ctx) {
  const fwm::MediumModel medium = medium_for(ctx);
  const fwm::PulseSpec& spec = need(ctx.config.pulse, "propagate", "pulse");
  const double carrier = fwm::two_pi * spec.carrier_hz;

  fwm::Pulse input;
  if (spec.file) {
    input = fwm::load_pulse_csv(resolve_input(ctx, *spec.file).string(), carrier);
  } else {
    input = fwm::make_gaussian_pulse(carrier, spec.fwhm_s, spec.dt_s,
                                     static_cast<std::size_t>(spec.samples),
                                     spec.center_s);
  }

  const fwm::Pulse output = fwm::propagate(medium, input);
  const fwm::PropagationReport report = fwm::measure(input, output);
  const double group_delay =
      medium.length / fwm::speed_of_light *
      (fwm::group_index(medium, carrier) - medium.n0);

  fwm::write_pulse_csv(out_file(ctx, "pulse_in.csv"), input);
  fwm::write_pulse_csv(out_file(ctx, "pulse_out.csv"), output);
  fwm::write_report(
      out_file(ctx, "propagate_report.txt"),
      {
          {"centroid_delay_s", fwm::format_double(report.centroid_delay_s)},
          {"peak_delay_s", fwm::format_double(report.peak_delay_s)},
          {"energy_gain", fwm::format_double(report.energy_gain)},
          {"fractional_delay", fwm::format_double(report.fractional_delay)},
          {"carrier_group_delay_s", fwm::format_double(group_delay)},
      });
}

void run_analyze(const Context& ctx) {
  const std::string& scan_file =
      need(ctx.config.analyze_scan_file, "analyze", "analyze");
  const fwm::FitSpec& spec = need(ctx.config.fit, "analyze", "fit");

  const fwm::ScanData scan =
      fwm::load_scan(resolve_input(ctx, scan_file).string());
  const fwm::FitResult fit = fwm::fit_lines(scan, spec.n_lines, spec.seed_centers_hz,
                                            spec.length_m, spec.reference_hz);

  // Group-index profile from the fitted lines (closed form).
  fwm::MediumModel fitted;
  fitted.n0 = 1.0;
  fitted.length = spec.length_m;
  fitted.lines = fit.lines;
  fwm::GroupIndexProfile fit_profile;
  fit_profile.detunings_hz = scan.detunings_hz;
  fit_profile.group_index.reserve(scan.detunings_hz.size());
  for (double detuning : scan.detunings_hz) {
    fit_profile.group_index.push_back(
        fwm::group_index(fitted, fwm::two_pi * (spec.reference_hz + detuning)));
  }
  fwm::write_profile_csv(out_file(ctx, "fit_profile.csv"), fit_profile);

  // Model-free path: Im n from the transmission, Re n by Kramers-Kronig,
  // group index by numerical differentiation. Skipped (recorded, not fatal)
  // when the absorption has not decayed at the scan edges.
  std::string kk_status = "written";
  std::string kk_message;
  try {
    std::vector<double> im_n(scan.detunings_hz.size());
    for (std::size_t i = 0; i < im_n.size(); ++i) {
      const double omega = fwm::two_pi * (spec.reference_hz + scan.detunings_hz[i]);
      im_n[i] = -std::log(scan.transmission[i]) * fwm::speed_of_light /
                (2.0 * omega * spec.length_m);
    }
    const std::vector<double> re_n = fwm::kramers_kronig(im_n);
    const fwm::GroupIndexProfile kk_profile = fwm::group_index_profile(
        scan.detunings_hz, re_n, spec.reference_hz, 1.0);
    fwm::write_profile_csv(out_file(ctx, "kk_profile.csv"), kk_profile);
  } catch (const std::runtime_error& err) {
    kk_status = "skipped_edge_decay";
    kk_message = err.what();
  }

  std::vector<std::pair<std::string, std::string>> entries = {
      {"n_lines", std::to_string(fit.lines.size())},
      {"iterations", std::to_string(fit.iterations)},
      {"residual_rms", fwm::format_double(fit.residual_rms)},
  };
  for (std::size_t i = 0; i < fit.lines.size(); ++i) {
    const fwm::SpectralLine& line = fit.lines[i];
    const std::string prefix = "line" + std::to_string(i) + "_";
    entries.emplace_back(prefix + "alpha0_per_m", fwm::format_double(line.alpha0));
    entries.emplace_back(
        prefix + "center_hz",
        fwm::format_double(line.omega0 / fwm::two_pi - spec.reference_hz));
    entries.emplace_back(prefix + "hwhm_hz",
                         fwm::format_double(line.gamma / fwm::two_pi));
  }
  entries.emplace_back("kk_profile", kk_status);
  if (!kk_message.empty()) {
    entries.emplace_back("kk_skip_reason", kk_message);
  }
  fwm::write_report(out_file(ctx, "fit_report.txt"), entries);
}

void run_emit_scan(const Context& ctx, std::uint64_t seed) {
  const fwm::MediumModel medium = medium_for(ctx);
  const fwm::ScanSpec& scan_spec = need(ctx.config.scan, "emit-scan", "scan");
  const fwm::FrequencyGrid& grid = need(ctx.config.grid, "emit-scan", "grid");
  check_grid_above_zero(scan_spec.reference_hz, grid);

  const fwm::ScanData scan = fwm::emit_scan(medium, scan_spec.reference_hz, grid,
                                            scan_spec.noise_fraction, seed);
  fwm::write_scan_csv(out_file(ctx, "scan.csv"), scan);
  fwm::write_report(
      out_file(ctx, "emit_report.txt"),
      {
          {"reference_hz", fwm::format_double(scan_spec.reference_hz)},
          {"noise_fraction", fwm::format_double(scan_spec.noise_fraction)},
          {"seed", std::to_string(seed)},
          {"points", std::to_string(scan.detunings_hz.size())},
      });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Twin-beam squeezing and dispersion toolkit: intensity-difference noise "
      "spectra, group-index profiles, pulse propagation and transmission-scan "
      "analysis for narrow-line gain/absorption media"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 12345;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration file")
        ->required();
    cmd->add_option("--out", out_dir,
                    "output directory (default: output.dir from the config, "
                    "else the working directory)");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "intensity-difference squeezing spectrum of the twin beams");
  CLI::App* groupindex = app.add_subcommand(
      "groupindex", "closed-form group-index profile of the medium");
  CLI::App* propagate = app.add_subcommand(
      "propagate", "propagate a pulse envelope through the medium");
  CLI::App* analyze = app.add_subcommand(
      "analyze", "fit a transmission scan and reconstruct group-index profiles");
  CLI::App* emit_scan = app.add_subcommand(
      "emit-scan", "synthesize a noisy transmission scan of the medium");
  for (CLI::App* cmd : {spectrum, groupindex, propagate, analyze, emit_scan}) {
    add_common(cmd);
  }
  emit_scan->add_option("--seed", seed, "RNG seed for the synthetic noise");

  try {
    app.parse(argc, argv);
    const Context ctx = make_context(config_path, out_dir);
    if (spectrum->parsed()) {
      run_spectrum(ctx);
    } else if (groupindex->parsed()) {
      run_groupindex(ctx);
    } else if (propagate->parsed()) {
      run_propagate(ctx);
    } else if (analyze->parsed()) {
      run_analyze(ctx);
    } else if (emit_scan->parsed()) {
      run_emit_scan(ctx, seed);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    app.exit(e);
    return 2;
  } catch (const fwm::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fwm::parse_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fwm::fit_error& e) {
    std::cerr << "numerical error: " << e.what() << " (best residual rms "
              << fwm::format_double(e.best().residual_rms) << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
