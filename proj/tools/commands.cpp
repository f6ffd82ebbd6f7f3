#include "commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "scprod/coherent.hpp"
#include "scprod/dynamics.hpp"
#include "scprod/husimi.hpp"
#include "scprod/io.hpp"
#include "scprod/metrics.hpp"
#include "scprod/semiclassical.hpp"

namespace scprod::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Argument parsing helpers

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw UsageError(what + ": '" + text + "' is not a finite number");
  return value;
}

/// Numbers from a comma-separated list, keeping the original tokens for file names.
std::vector<std::pair<std::string, double>> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::pair<std::string, double>> out;
  if (text.empty()) throw UsageError(what + ": empty list");
  for (const auto& token : split(text, ',')) out.emplace_back(token, parse_number(token, what));
  return out;
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError(what + ": expected two comma-separated numbers, got '" + text + "'");
  return {parse_number(parts[0], what), parse_number(parts[1], what)};
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  if (text.empty()) throw UsageError("--levels: empty level list");
  for (const auto& token : split(text, ',')) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || n < 0)
      throw UsageError("--levels: '" + token + "' is not a non-negative integer");
    levels.push_back(n);
  }
  return levels;
}

void require_positive(double value, const std::string& what) {
  if (!(value > 0.0) || !std::isfinite(value)) throw UsageError(what + " must be a finite number > 0");
}

void require_time_grid(double tmax, double dt) {
  require_positive(dt, "--dt");
  require_positive(tmax, "--tmax");
  if (tmax < 2.0 * dt) throw UsageError("--tmax must span at least two steps of --dt");
}

// ---------------------------------------------------------------------------
// Run bookkeeping

class Run {
 public:
  Run(std::string command, const std::vector<std::string>& argv, const std::string& out_dir, std::ostream& log)
      : dir_(out_dir), log_(log) {
    manifest_.command = std::move(command);
    manifest_.argv = argv;
    manifest_.version = SCPROD_VERSION;
  }

  void param(const std::string& key, const std::string& value) { manifest_.parameters[key] = value; }
  void param(const std::string& key, double value) { manifest_.parameters[key] = format_number(value); }
  void result(const std::string& key, double value) {
    manifest_.results[key] = value;
    log_ << "  " << key << " = " << format_number(value) << '\n';
  }

  fs::path output(const std::string& name) {
    const fs::path path = dir_ / name;
    manifest_.outputs.push_back(path.generic_string());
    return path;
  }

  void finish() {
    const fs::path path = dir_ / (manifest_.command + "_manifest.json");
    manifest_.timestamp = utc_timestamp();
    write_manifest(path, manifest_);
    for (const auto& o : manifest_.outputs) log_ << "wrote " << o << '\n';
    log_ << "wrote " << path.generic_string() << '\n';
  }

 private:
  fs::path dir_;
  std::ostream& log_;
  RunManifest manifest_;
};

const OscillatorScale kUnitScale{1.0, 1.0, 1.0};

// ---------------------------------------------------------------------------
// overlap

struct OverlapOptions {
  std::string omega = "1.88,3.88";
  double gamma = 1.0;
  std::string ic = "0,0";
  std::string ic2 = "0.002,0";
  double tmax = 200.0;
  double dt = 0.01;
  double dm = 1.0;
  std::string out = "scprod_out";
};

void cmd_overlap(const OverlapOptions& o, const std::vector<std::string>& argv, std::ostream& log) {
  const auto omegas = parse_list(o.omega, "--omega");
  const auto [q1, p1] = parse_pair(o.ic, "--ic");
  const auto [q2, p2] = parse_pair(o.ic2, "--ic2");
  require_time_grid(o.tmax, o.dt);
  require_positive(o.dm, "--dm");
  if (!std::isfinite(o.gamma)) throw UsageError("--gamma must be finite");

  Run run("overlap", argv, o.out, log);
  run.param("omega", o.omega);
  run.param("gamma", o.gamma);
  run.param("ic", o.ic);
  run.param("ic2", o.ic2);
  run.param("tmax", o.tmax);
  run.param("dt", o.dt);
  run.param("dm", o.dm);
  run.param("system", "driven-quartic");

  for (const auto& [token, w] : omegas) {
    const ClassicalSystem sys = DrivenQuartic{o.gamma, w};
    const Trajectory a = integrate_trajectory(sys, {0.0, q1, p1}, o.tmax, o.dt);
    const Trajectory b = integrate_trajectory(sys, {0.0, q2, p2}, o.tmax, o.dt);
    const OverlapSeries ov = sc_overlap(a, b, kUnitScale);
    write_csv(run.output("overlap_omega_" + token + ".csv"), {"t", "overlap"}, {ov.times, ov.values});

    const TauResult half = tau_sc(ov, std::sqrt(std::log(2.0)));
    const TauResult tau = tau_sc(ov, o.dm);
    log << "omega = " << token << '\n';
    run.result("t_half_omega_" + token, half.time);
    run.result("t_half_reached_omega_" + token, half.reached ? 1.0 : 0.0);
    run.result("tau_sc_omega_" + token, tau.time);
    run.result("tau_sc_reached_omega_" + token, tau.reached ? 1.0 : 0.0);
  }
  run.finish();
}

// ---------------------------------------------------------------------------
// husimi

struct HusimiOptions {
  std::string system = "harmonic";
  int n = 0;
  std::string mode = "both";
  std::string norm = "unit-integral";
  std::optional<double> qmin, qmax, pmin, pmax;
  int nq = 0;
  int np = 0;
  int samples = 2048;
  std::string convention = "coherent";
  std::string out = "scprod_out";
};

OrbitEnergy parse_convention(const std::string& text) {
  if (text == "coherent") return OrbitEnergy::coherent_matched;
  if (text == "eigenvalue") return OrbitEnergy::eigenvalue;
  throw UsageError("--convention must be coherent or eigenvalue");
}

void cmd_husimi(const HusimiOptions& o, const std::vector<std::string>& argv, std::ostream& log) {
  if (o.n < 0) throw UsageError("--n must be >= 0");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  const NormMode mode = norm_mode_from_string(o.norm);
  const OrbitEnergy convention = parse_convention(o.convention);
  const bool morse = o.system == "morse";
  const bool want_exact = o.mode != "semiclassical";
  const bool want_sc = o.mode != "exact";

  const MorseSystem h2 = MorseSystem::hydrogen();
  AxisMap map;
  double qlo, qhi, plo, phi;
  Eigen::Index nq, np;
  if (morse) {
    try {
      morse_eigenvalue(o.n, h2);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    const FigureGrid fig = morse_figure_grid(std::min(o.n, 1), h2);
    map = fig.map;
    qlo = fig.x.lo(), qhi = fig.x.hi(), plo = fig.y.lo(), phi = fig.y.hi();
    nq = np = fig.x.size();
  } else {
    const double half_width = std::sqrt(2.0 * o.n + 1.0) + 8.0;
    qlo = plo = -half_width;
    qhi = phi = half_width;
    nq = np = 81;
  }
  qlo = o.qmin.value_or(qlo);
  qhi = o.qmax.value_or(qhi);
  plo = o.pmin.value_or(plo);
  phi = o.pmax.value_or(phi);
  if (o.nq != 0) nq = o.nq;
  if (o.np != 0) np = o.np;
  if (!(qlo < qhi) || !(plo < phi) || nq < 2 || np < 2)
    throw UsageError("grid flags need qmin < qmax, pmin < pmax and at least 2 points per axis");
  const Grid1D qgrid(qlo, qhi, nq);
  const Grid1D pgrid(plo, phi, np);

  Run run("husimi", argv, o.out, log);
  run.param("system", o.system);
  run.param("n", static_cast<double>(o.n));
  run.param("mode", o.mode);
  run.param("norm", to_string(mode));
  run.param("qmin", qlo);
  run.param("qmax", qhi);
  run.param("nq", static_cast<double>(nq));
  run.param("pmin", plo);
  run.param("pmax", phi);
  run.param("np", static_cast<double>(np));
  run.param("samples", static_cast<double>(o.samples));
  run.param("convention", o.convention);

  const std::string stem = "husimi_" + o.system + "_n" + std::to_string(o.n);
  std::optional<HusimiField> exact, semi;
  std::optional<MorseEigenstate> state;
  if (morse && want_exact) state.emplace(o.n, h2);

  auto emit = [&](const HusimiField& field, const std::string& method) {
    write_husimi_csv(run.output(stem + "_" + method + ".csv"), field);
    write_husimi_sidecar(run.output(stem + "_" + method + ".json"), field);
    const auto [i, j] = field.argmax();
    run.result(method + "_argmax_Q", qgrid[i]);
    run.result(method + "_argmax_P", pgrid[j]);
  };
  if (want_exact) {
    exact = morse ? morse_husimi_field(*state, qgrid, pgrid, map, mode) : husimi_ho_field(o.n, qgrid, pgrid, mode);
    emit(*exact, "exact");
  }
  if (want_sc) {
    semi = morse ? sc_husimi_morse(o.n, h2, qgrid, pgrid, map, mode, o.samples)
                 : sc_husimi_harmonic(o.n, qgrid, pgrid, mode, o.samples, convention);
    emit(*semi, "semiclassical");
  }
  if (exact && semi) {
    auto unit = [&](const HusimiField& f, bool is_exact) {
      if (f.norm_mode() == NormMode::unit_integral) return f;
      if (morse) return f.normalized();
      return is_exact ? husimi_ho_field(o.n, qgrid, pgrid, NormMode::unit_integral)
                      : sc_husimi_harmonic(o.n, qgrid, pgrid, NormMode::unit_integral, o.samples, convention);
    };
    const DeviationProfile profile = delta_q(unit(*exact, true), unit(*semi, false), o.n);
    write_profile_csv(run.output("deltaQ_" + o.system + "_n" + std::to_string(o.n) + ".csv"), profile);
    run.result("deltaQ_sup", profile.delta.cwiseAbs().maxCoeff());
    run.result("SQ", sq(profile));
  }
  run.finish();
}

// ---------------------------------------------------------------------------
// fidelity

struct FidelityOptions {
  std::string system = "driven";
  std::optional<std::string> omega;
  double gamma = 1.0;
  std::string ic = "0,0";
  double epsilon = 0.01;
  double tmax = 60.0;
  double dt = 0.01;
  std::optional<std::string> fit_window;
  std::string out = "scprod_out";
};

void cmd_fidelity(const FidelityOptions& o, const std::vector<std::string>& argv, std::ostream& log,
                  std::ostream& err) {
  const bool harmonic = o.system == "harmonic";
  const std::string omega_text = o.omega.value_or(harmonic ? "1" : "1.88,3.88");
  const auto omegas = parse_list(omega_text, "--omega");
  const auto [q0, p0] = parse_pair(o.ic, "--ic");
  require_time_grid(o.tmax, o.dt);
  // F(0) = 1 exactly, so the default window starts at the first step.
  const std::string window_text = o.fit_window.value_or(format_number(o.dt) + "," + format_number(std::min(0.5, o.tmax)));
  const auto [wlo, whi] = parse_pair(window_text, "--fit-window");
  if (!(o.epsilon >= 0.0) || !std::isfinite(o.epsilon)) throw UsageError("--epsilon must be finite and >= 0");
  if (!(wlo < whi) || wlo < 0.0 || whi > o.tmax) throw UsageError("--fit-window must satisfy 0 <= lo < hi <= tmax");
  const PerturbationSpec eps(o.epsilon);
  if (!eps.is_perturbative()) err << "warning: epsilon = " << o.epsilon << " is large; the short-time law may not hold\n";

  Run run("fidelity", argv, o.out, log);
  run.param("system", o.system);
  run.param("omega", omega_text);
  run.param("gamma", o.gamma);
  run.param("ic", o.ic);
  run.param("epsilon", o.epsilon);
  run.param("tmax", o.tmax);
  run.param("dt", o.dt);
  run.param("fit_window", window_text);

  for (const auto& [token, w] : omegas) {
    if (harmonic) require_positive(w, "--omega");
    const ClassicalSystem sys = harmonic ? ClassicalSystem{HarmonicSystem{w}} : ClassicalSystem{DrivenQuartic{o.gamma, w}};
    const OscillatorScale scale = harmonic ? OscillatorScale(1.0, w, 1.0) : kUnitScale;
    const OverlapSeries f = sc_fidelity_numeric(sys, {0.0, q0, p0}, eps, o.tmax, o.dt, scale);
    Eigen::VectorXd root(f.values.size());
    for (Eigen::Index i = 0; i < root.size(); ++i) root[i] = std::sqrt(std::max(0.0, -std::log(f.values[i])));
    write_csv(run.output("fidelity_" + o.system + "_omega_" + token + ".csv"), {"t", "F", "sqrt_neg_lnF"},
              {f.times, f.values, root});

    log << "omega = " << token << '\n';
    try {
      const GaussianFit fit = gaussian_decay_fit(f, {wlo, whi});
      run.result("fit_slope_omega_" + token, fit.slope);
      run.result("fit_r2_omega_" + token, fit.r2);
    } catch (const DomainError& e) {
      err << "note: no Gaussian fit for omega = " << token << ": " << e.what() << '\n';
    }
    const TauResult half = tau_sc(f, std::sqrt(std::log(2.0)));
    run.result("t_half_omega_" + token, half.time);
    run.result("t_half_reached_omega_" + token, half.reached ? 1.0 : 0.0);
  }
  run.finish();
}

// ---------------------------------------------------------------------------
// lyapunov

struct LyapunovOptions {
  std::string system = "driven";
  std::optional<double> omega;
  double gamma = 1.0;
  std::string ic = "0,0";
  double delta = 0.002;
  std::optional<std::string> window;
  double tmax = 65.0;
  double dt = 1e-3;
  std::string out = "scprod_out";
};

void cmd_lyapunov(const LyapunovOptions& o, const std::vector<std::string>& argv, std::ostream& log) {
  const bool harmonic = o.system == "harmonic";
  const double w = o.omega.value_or(harmonic ? 1.0 : 1.88);
  const auto [q0, p0] = parse_pair(o.ic, "--ic");
  require_time_grid(o.tmax, o.dt);
  if (!std::isfinite(o.delta) || o.delta == 0.0)
    throw UsageError("--delta must be a non-zero finite offset (D(0) = 0 makes the exponent undefined)");
  if (harmonic) require_positive(w, "--omega");

  const ClassicalSystem sys = harmonic ? ClassicalSystem{HarmonicSystem{w}} : ClassicalSystem{DrivenQuartic{o.gamma, w}};
  const Trajectory a = integrate_trajectory(sys, {0.0, q0, p0}, o.tmax, o.dt);
  const Trajectory b = integrate_trajectory(sys, {0.0, q0 + o.delta, p0}, o.tmax, o.dt);
  const SeparationSeries sep = twin_separation(a, b);
  FitWindow window = default_fit_window(sep.times);
  if (o.window) {
    const auto [lo, hi] = parse_pair(*o.window, "--window");
    if (!(lo < hi) || lo < 0.0 || hi > o.tmax) throw UsageError("--window must satisfy 0 <= lo < hi <= tmax");
    window = {lo, hi};
  }

  Run run("lyapunov", argv, o.out, log);
  run.param("system", o.system);
  run.param("omega", w);
  run.param("gamma", o.gamma);
  run.param("ic", o.ic);
  run.param("delta", o.delta);
  run.param("window", format_number(window.t_lo) + "," + format_number(window.t_hi));
  run.param("tmax", o.tmax);
  run.param("dt", o.dt);

  const Eigen::VectorXd log_d = sep.distance.array().log().matrix();
  write_csv(run.output("lyapunov_" + o.system + ".csv"), {"t", "D", "lnD"}, {sep.times, sep.distance, log_d});
  run.result("lambda_trajectory", lyapunov_short_time(sep, window));
  const OscillatorScale scale = harmonic ? OscillatorScale(1.0, w, 1.0) : kUnitScale;
  run.result("lambda_overlap", lyapunov_from_overlap_series(sc_overlap(a, b, scale), window));
  run.result("window_lo", window.t_lo);
  run.result("window_hi", window.t_hi);
  run.finish();
}

// ---------------------------------------------------------------------------
// metrics

struct MetricsOptions {
  std::string levels = "0,1,5,20,100";
  double qmin = -30.0, qmax = 30.0, pmin = -0.05, pmax = 0.05;
  int nq = 1201;
  int np = 3;
  int samples = 2048;
  std::string convention = "coherent";
  std::string out = "scprod_out";
};

void cmd_metrics(const MetricsOptions& o, const std::vector<std::string>& argv, std::ostream& log) {
  const std::vector<int> levels = parse_levels(o.levels);
  const OrbitEnergy convention = parse_convention(o.convention);
  if (!(o.qmin < o.qmax) || !(o.pmin < o.pmax) || o.nq < 2 || o.np < 2)
    throw UsageError("grid flags need qmin < qmax, pmin < pmax and at least 2 points per axis");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  const Grid1D qgrid(o.qmin, o.qmax, o.nq);
  const Grid1D pgrid(o.pmin, o.pmax, o.np);

  Run run("metrics", argv, o.out, log);
  run.param("levels", o.levels);
  run.param("qmin", o.qmin);
  run.param("qmax", o.qmax);
  run.param("nq", static_cast<double>(o.nq));
  run.param("pmin", o.pmin);
  run.param("pmax", o.pmax);
  run.param("np", static_cast<double>(o.np));
  run.param("samples", static_cast<double>(o.samples));
  run.param("convention", o.convention);

  Eigen::VectorXd ns(static_cast<Eigen::Index>(levels.size()));
  Eigen::VectorXd sqs(ns.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const int n = levels[k];
    const DeviationProfile profile = harmonic_deviation(n, qgrid, pgrid, o.samples, convention);
    write_profile_csv(run.output("deltaQ_harmonic_n" + std::to_string(n) + ".csv"), profile);
    ns[static_cast<Eigen::Index>(k)] = n;
    sqs[static_cast<Eigen::Index>(k)] = sq(profile);
    run.result("SQ_n" + std::to_string(n), sqs[static_cast<Eigen::Index>(k)]);
  }
  write_csv(run.output("sq_harmonic.csv"), {"n", "SQ"}, {ns, sqs});
  run.finish();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeroth-order semiclassical scalar products: overlaps, Husimi functions, fidelity and metrics",
               "scprod"};
  app.set_version_flag("--version", std::string(SCPROD_VERSION));
  app.require_subcommand(1);

  OverlapOptions ov;
  auto* c_ov = app.add_subcommand("overlap", "Overlap decay of two neighbouring states in the driven quartic oscillator");
  c_ov->add_option("--omega", ov.omega, "Driving frequencies, comma separated")->capture_default_str();
  c_ov->add_option("--gamma", ov.gamma, "Driving amplitude")->capture_default_str();
  c_ov->add_option("--ic", ov.ic, "First initial condition q,p")->capture_default_str();
  c_ov->add_option("--ic2", ov.ic2, "Second initial condition q,p")->capture_default_str();
  c_ov->add_option("--tmax", ov.tmax, "Final time")->capture_default_str();
  c_ov->add_option("--dt", ov.dt, "RK4 step")->capture_default_str();
  c_ov->add_option("--dm", ov.dm, "Label distance defining the semiclassical time")->capture_default_str();
  c_ov->add_option("--out", ov.out, "Output directory")->capture_default_str();

  HusimiOptions hu;
  auto* c_hu = app.add_subcommand("husimi", "Exact and semiclassical Husimi functions on a grid");
  c_hu->add_option("--system", hu.system, "harmonic or morse (H2 constants)")
      ->check(CLI::IsMember({"harmonic", "morse"}))
      ->capture_default_str();
  c_hu->add_option("--n", hu.n, "Level index")->capture_default_str();
  c_hu->add_option("--mode", hu.mode, "exact, semiclassical or both")
      ->check(CLI::IsMember({"exact", "semiclassical", "both"}))
      ->capture_default_str();
  c_hu->add_option("--norm", hu.norm, "paper or unit-integral")
      ->check(CLI::IsMember({"paper", "unit-integral"}))
      ->capture_default_str();
  c_hu->add_option("--qmin", hu.qmin, "Lower Q axis bound");
  c_hu->add_option("--qmax", hu.qmax, "Upper Q axis bound");
  c_hu->add_option("--pmin", hu.pmin, "Lower P axis bound");
  c_hu->add_option("--pmax", hu.pmax, "Upper P axis bound");
  c_hu->add_option("--nq", hu.nq, "Q grid points");
  c_hu->add_option("--np", hu.np, "P grid points");
  c_hu->add_option("--samples", hu.samples, "Samples per orbit period")->capture_default_str();
  c_hu->add_option("--convention", hu.convention, "Harmonic orbit energy: coherent (n) or eigenvalue (n + 1/2)")
      ->check(CLI::IsMember({"coherent", "eigenvalue"}))
      ->capture_default_str();
  c_hu->add_option("--out", hu.out, "Output directory")->capture_default_str();

  FidelityOptions fi;
  auto* c_fi = app.add_subcommand("fidelity", "Semiclassical fidelity under a linear perturbation");
  c_fi->add_option("--system", fi.system, "driven or harmonic")
      ->check(CLI::IsMember({"driven", "harmonic"}))
      ->capture_default_str();
  c_fi->add_option("--omega", fi.omega, "Frequencies, comma separated (driven: 1.88,3.88; harmonic: 1)");
  c_fi->add_option("--gamma", fi.gamma, "Driving amplitude")->capture_default_str();
  c_fi->add_option("--ic", fi.ic, "Initial condition q,p")->capture_default_str();
  c_fi->add_option("--epsilon", fi.epsilon, "Perturbation strength")->capture_default_str();
  c_fi->add_option("--tmax", fi.tmax, "Final time")->capture_default_str();
  c_fi->add_option("--dt", fi.dt, "RK4 step")->capture_default_str();
  c_fi->add_option("--fit-window", fi.fit_window, "Gaussian fit window lo,hi (default: dt,0.5)");
  c_fi->add_option("--out", fi.out, "Output directory")->capture_default_str();

  LyapunovOptions ly;
  auto* c_ly = app.add_subcommand("lyapunov", "Short-time Lyapunov exponent from twin trajectories");
  c_ly->add_option("--system", ly.system, "driven or harmonic")
      ->check(CLI::IsMember({"driven", "harmonic"}))
      ->capture_default_str();
  c_ly->add_option("--omega", ly.omega, "Frequency (driven: 1.88; harmonic: 1)");
  c_ly->add_option("--gamma", ly.gamma, "Driving amplitude")->capture_default_str();
  c_ly->add_option("--ic", ly.ic, "Initial condition q,p")->capture_default_str();
  c_ly->add_option("--delta", ly.delta, "Offset of the twin in q")->capture_default_str();
  c_ly->add_option("--window", ly.window, "Fit window lo,hi (default: first 20% after 10 samples)");
  c_ly->add_option("--tmax", ly.tmax, "Final time")->capture_default_str();
  c_ly->add_option("--dt", ly.dt, "RK4 step")->capture_default_str();
  c_ly->add_option("--out", ly.out, "Output directory")->capture_default_str();

  MetricsOptions me;
  auto* c_me = app.add_subcommand("metrics", "SQ deviation of the harmonic oscillator against the level");
  c_me->add_option("--levels", me.levels, "Levels, comma separated")->capture_default_str();
  c_me->add_option("--qmin", me.qmin, "Lower Q bound")->capture_default_str();
  c_me->add_option("--qmax", me.qmax, "Upper Q bound")->capture_default_str();
  c_me->add_option("--nq", me.nq, "Q grid points")->capture_default_str();
  c_me->add_option("--pmin", me.pmin, "Lower P bound")->capture_default_str();
  c_me->add_option("--pmax", me.pmax, "Upper P bound")->capture_default_str();
  c_me->add_option("--np", me.np, "P grid points")->capture_default_str();
  c_me->add_option("--samples", me.samples, "Samples per orbit period")->capture_default_str();
  c_me->add_option("--convention", me.convention, "Orbit energy: coherent (n) or eigenvalue (n + 1/2)")
      ->check(CLI::IsMember({"coherent", "eigenvalue"}))
      ->capture_default_str();
  c_me->add_option("--out", me.out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_ov->parsed()) cmd_overlap(ov, args, out);
    else if (c_hu->parsed()) cmd_husimi(hu, args, out);
    else if (c_fi->parsed()) cmd_fidelity(fi, args, out, err);
    else if (c_ly->parsed()) cmd_lyapunov(ly, args, out);
    else if (c_me->parsed()) cmd_metrics(me, args, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const GridMismatchError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BlowupError& e) {
    err << "numerical failure: " << e.what() << " (last finite state at t = " << e.last_valid_time() << ")\n";
    return kNumerical;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (estimate " << e.estimate() << ", error bound "
        << e.error_bound() << ")\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace scprod::cli
