// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 iff all
// criteria pass. The quantitative criteria share one ensemble cache and also
// write the full report under --out.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "burgers/checkpoint.hpp"
#include "burgers/errors.hpp"
#include "burgers/harness/experiments.hpp"
#include "burgers/inviscid.hpp"
#include "burgers/stats.hpp"

using namespace burgers;
using namespace burgers::harness;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ForcingSpec default_forcing(std::uint64_t seed, std::uint32_t member = 0) {
  ForcingSpec f = ForcingSpec::inverse_s_bandlimited(4, 1.0);
  f.seed = seed;
  f.member_id = member;
  return f;
}

double sup_distance(const GridField& a, const GridField& b) {
  double e = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
  return e;
}

// 1. Deterministic solver against the Cole-Hopf solution.
Outcome cole_hopf() {
  const double nu = 0.05, t = 0.3;
  const std::size_t n = 1024;
  RunSetup s;
  s.nu = nu;
  s.grid_points = n;
  s.schedule = {1e-4, 0.5, t, 0, 0.0};
  SpectralRun run(s, {sine_initial(1, 1.0)});
  run.run();
  const double err = sup_distance(to_grid(run.state(), n), cole_hopf_reference(1.0, nu, t, n));
  return {err < 1e-5, fmt("Linf error %.3e (limit 1e-05), %llu steps", err,
                          static_cast<unsigned long long>(run.step_index()))};
}

// 2. Linearised model against the stationary OU variances.
Outcome ornstein_uhlenbeck() {
  const double nu = 0.1;
  const std::size_t members = 64;
  const ForcingSpec base = default_forcing(424242);
  std::vector<SpectralField> finals(members);
  parallel_for(members, [&](std::size_t i) {
    RunSetup s;
    s.model = Scheme::linearized;
    s.nu = nu;
    s.grid_points = 64;
    s.forcing = base.for_member(static_cast<std::uint32_t>(i));
    s.schedule = {1e-3, 0.5, 3.0, 0, 0.0};
    SpectralRun run(s, {SpectralField(1)});
    run.run();
    finals[i] = run.state();
  });
  bool pass = true;
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    for (int s : {k, -k}) {
      Moments m;
      for (const auto& u : finals) {
        const Complex c = u.at(k);
        const double coeff = s > 0 ? std::sqrt(2.0) * c.real() : -std::sqrt(2.0) * c.imag();
        m.add(coeff * coeff);
      }
      const double ref = ou_reference_variance(s, nu, base.coefficient(s));
      const double z = std::abs(m.mean() - ref) / m.std_error();
      worst = std::max(worst, z);
      pass = pass && z <= 3.0;
    }
  }
  return {pass, fmt("8 modes, worst deviation %.2f stderr (limit 3), %zu members", worst, members)};
}

double exact_godunov_flux(double ul, double ur) {
  const auto f = [](double u) { return 0.5 * u * u; };
  if (ul > ur) {  // shock
    const double s = 0.5 * (ul + ur);
    return s >= 0.0 ? f(ul) : f(ur);
  }
  if (ul >= 0.0) return f(ul);  // rarefaction moving right
  if (ur <= 0.0) return f(ur);  // rarefaction moving left
  return 0.0;                   // transonic rarefaction
}

// 3. Godunov flux on a lattice of Riemann problems.
Outcome riemann() {
  std::size_t mismatches = 0, shocks = 0, rarefactions = 0, transonic = 0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double ul = -2.0 + 4.0 * i / 99.0, ur = -2.0 + 4.0 * j / 99.0;
      if (riemann_flux(ul, ur) != exact_godunov_flux(ul, ur)) ++mismatches;
      (ul > ur ? shocks : (ul < 0.0 && ur > 0.0) ? transonic : rarefactions)++;
    }
  }
  return {mismatches == 0, fmt("%zu mismatches on 100x100 (%zu shock, %zu rarefaction, %zu transonic)",
                               mismatches, shocks, rarefactions, transonic)};
}

// 4. Physical-space S_2 against its Fourier form on stored snapshots.
Outcome parseval_structure() {
  const std::size_t n = 1024;
  RunSetup s;
  s.nu = 0.01;
  s.grid_points = n;
  s.forcing = default_forcing(77);
  s.schedule = {1e-3, 0.5, 3.0, 0, 1.0};
  s.probes.grid = true;
  s.probes.structure_p = {2.0};
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k <= n; k *= 2) {
    ks.push_back(k);
    s.probes.structure_l.push_back(1.0 / static_cast<double>(k));
  }
  const TrajectoryStream st = simulate(SpectralField(1), s);
  double worst = 0.0;
  std::size_t checked = 0;
  for (const Sample& x : st.samples) {
    if (x.t == 0.0) continue;
    const SpectralField u = to_spectral(GridField(x.grid));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      double fourier = 0.0;
      const auto modes = u.positive_modes();
      for (std::size_t m = 0; m < modes.size(); ++m) {
        const double sn = std::sin(M_PI * double(m + 1) / double(ks[i]));
        fourier += 2.0 * 4.0 * sn * sn * std::norm(modes[m]);  // n and -n
      }
      const double grid_value = structure_function(std::vector{GridField(x.grid)}, 2.0, 1.0 / ks[i]);
      const double scale = std::max(fourier, 1e-300);
      worst = std::max({worst, std::abs(x.structure[i] - fourier) / scale,
                        std::abs(grid_value - fourier) / scale});
      ++checked;
    }
  }
  return {checked > 0 && worst < 1e-8,
          fmt("%zu (snapshot, l) pairs, worst relative gap %.2e (limit 1e-08)", checked, worst)};
}

// 6. Exact or round-off invariants.
Outcome invariants() {
  const std::size_t n = 1024;
  RunSetup s;
  s.nu = 0.01;
  s.grid_points = n;
  s.forcing = default_forcing(91);
  s.schedule = {1e-3, 0.5, 2.0, 0, 0.1};
  s.probes.norms = true;
  s.probes.low_modes = 4;
  std::vector<std::string> bad;

  SpectralRun a(s, {random_initial(91, 0, 4, 0.3)});
  a.run();
  const GridField g = to_grid(a.state(), n);
  double mean = 0.0, peak = 0.0;
  for (double v : g.values()) {
    mean += v / double(n);
    peak = std::max(peak, std::abs(v));
  }
  if (std::abs(mean) > 1e-14 * peak) bad.push_back(fmt("mean %.2e", mean));

  // Negative modes from a direct transform of the real field are conjugates.
  double herm = 0.0;
  for (long k = 1; k <= 8; ++k) {
    Complex plus = 0.0, minus = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = kTwoPi * double(k) * double(j) / double(n);
      plus += g[j] * std::exp(Complex(0.0, -ph));
      minus += g[j] * std::exp(Complex(0.0, ph));
    }
    herm = std::max(herm, std::abs(minus - std::conj(plus)) / double(n));
    herm = std::max(herm, std::abs(plus / double(n) - a.state().at(k)));
  }
  if (herm > 1e-12 * peak) bad.push_back(fmt("hermitian gap %.2e", herm));

  SpectralRun b(s, {random_initial(91, 0, 4, 0.3)});
  b.run();
  if (!(b.state() == a.state())) bad.push_back("rerun differs");
  for (std::size_t i = 0; i < a.streams()[0].samples.size(); ++i)
    if (a.streams()[0].samples[i].l2_sq != b.streams()[0].samples[i].l2_sq) {
      bad.push_back("rerun samples differ");
      break;
    }

  const auto path = std::filesystem::temp_directory_path() / "burgers_acceptance_resume.bin";
  SpectralRun first(s, {random_initial(91, 0, 4, 0.3)});
  first.advance_to(1.0);
  save_checkpoint(path, first.checkpoint());
  SpectralRun second = SpectralRun::resume(s, load_checkpoint(path));
  second.run();
  std::filesystem::remove(path);
  if (!(second.state() == a.state())) bad.push_back("resumed state differs");
  const auto& tail = second.streams()[0].samples;
  const auto& full = a.streams()[0].samples;
  for (std::size_t i = 0; i < tail.size(); ++i)
    if (tail[i].l2_sq != full[full.size() - tail.size() + i].l2_sq) {
      bad.push_back("resumed samples differ");
      break;
    }

  // Window averages merged in different orders.
  std::vector<double> values;
  for (const Sample& x : full) values.push_back(x.l2_sq);
  Moments forward, backward, left, right;
  for (double v : values) forward.add(v);
  for (auto it = values.rbegin(); it != values.rend(); ++it) backward.add(*it);
  for (std::size_t i = 0; i < values.size(); ++i) (i % 2 ? left : right).add(values[i]);
  right.merge(left);
  for (const Moments* m : {&backward, &right}) {
    if (std::abs(m->mean() - forward.mean()) > 1e-13 * std::abs(forward.mean()) ||
        std::abs(m->variance() - forward.variance()) > 1e-11 * forward.variance())
      bad.push_back("merge order changes moments");
  }

  std::string detail = "mean, hermitian, determinism, resume, merge order";
  if (!bad.empty()) {
    detail = "violations:";
    for (const auto& x : bad) detail += " " + x + ";";
  }
  return {bad.empty(), detail};
}

// 7. Strong self-convergence on one Brownian path.
Outcome strong_order() {
  const double nu = 0.05, t_end = 0.5, fine = 0.5 / 8192.0;
  const std::size_t n = 256;
  const ForcingSpec f = default_forcing(2024);
  const SpectralField u0 = sine_initial(1, 0.5);
  auto solve = [&](std::uint64_t count) {
    SpectralStepper st(nu, n);
    SpectralField u = u0.resized(st.truncation());
    const double dt = fine * double(count);
    const std::uint64_t steps = static_cast<std::uint64_t>(std::llround(t_end / dt));
    for (std::uint64_t i = 0; i < steps; ++i) {
      st.load(u);
      u = st.advance(dt, path_increment(f, fine, i * count, count), double(i) * dt);
    }
    return u;
  };
  const SpectralField ref = solve(1);
  std::vector<double> log_dt, log_err;
  std::string detail = "errors";
  for (std::uint64_t count : {256, 128, 64, 32, 16}) {
    SpectralField diff = solve(count);
    diff += -1.0 * ref;
    const double err = std::sqrt(sobolev_norm_sq(diff, 0));
    log_dt.push_back(std::log(fine * double(count)));
    log_err.push_back(std::log(err));
    detail += fmt(" %.2e", err);
  }
  const double mx = std::accumulate(log_dt.begin(), log_dt.end(), 0.0) / log_dt.size();
  const double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / log_err.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < log_dt.size(); ++i) {
    sxy += (log_dt[i] - mx) * (log_err[i] - my);
    sxx += (log_dt[i] - mx) * (log_dt[i] - mx);
  }
  const double order = sxy / sxx;
  return {order >= 0.9, fmt("order %.3f (limit >= 0.9), ", order) + detail};
}

std::string law_summary(const LawRecord& r) {
  std::string s = fmt("%s=%.4g", r.id.c_str(), r.measured);
  if (r.check == Check::within)
    s += fmt(" (target %.4g +- %g)", r.target, r.tolerance);
  else
    s += fmt(" (at most %.4g)", r.target);
  return s + (r.passed ? "" : " FAIL");
}

Outcome laws(const AcceptanceReport& report, const std::vector<std::string>& ids) {
  Outcome o{true, ""};
  for (const auto& id : ids) {
    const LawRecord* r = report.find(id);
    if (!r) {
      o.pass = false;
      o.detail += id + " missing; ";
      continue;
    }
    o.pass = o.pass && r->passed;
    o.detail += law_summary(*r) + "; ";
  }
  if (!o.detail.empty()) o.detail.resize(o.detail.size() - 2);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria of the stochastic Burgers simulator"};
  std::string out = "acceptance_out";
  std::vector<int> only;
  app.add_option("--out", out, "Report directory");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int c) { return selected.empty() || selected.count(c); };

  int failures = 0;
  auto report_line = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    if (!wanted(id)) return;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-4s %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report_line(1, "cole_hopf", cole_hopf);
  report_line(2, "ou_variance", ornstein_uhlenbeck);
  report_line(3, "riemann_flux", riemann);
  report_line(4, "parseval_structure", parseval_structure);
  const bool quantitative = std::any_of(selected.begin(), selected.end(),
                                        [](int c) { return c == 5 || c >= 8; }) ||
                            selected.empty();
  if (!quantitative) {
    report_line(6, "invariants", invariants);
    report_line(7, "strong_order", strong_order);
  } else {
    ExperimentConfig cfg;
    cfg.out = out;
    AcceptanceReport report;
    report.config = cfg.to_json();
    EnsembleCache cache(cfg);
    std::string error;
    try {
      cache.viscous(cfg.nu_list);
      if (wanted(8)) report.sections.push_back(run_scaling_experiment(cache));
      if (wanted(9) || wanted(10)) report.sections.push_back(run_spectrum_experiment(cache));
      if (wanted(11)) report.sections.push_back(run_structure_experiment(cache));
      if (wanted(5) || wanted(12)) report.sections.push_back(run_mixing_experiment(cache));
      if (wanted(13)) report.sections.push_back(run_inviscid_experiment(cache));
      emit_report(report, out);
    } catch (const std::exception& e) {
      error = e.what();
    }
    auto section_line = [&](int id, const char* name, std::vector<std::string> ids) {
      report_line(id, name, [&]() -> Outcome {
        if (!error.empty()) return {false, "error: " + error};
        return laws(report, ids);
      });
    };
    std::vector<std::string> contraction, mixing;
    for (double nu : cfg.mixing_nu) {
      contraction.push_back("contraction:" + nu_label(nu));
      mixing.push_back("mixing:coupled:" + nu_label(nu));
      mixing.push_back("mixing:ensemble:" + nu_label(nu));
    }
    section_line(5, "l1_contraction", contraction);
    report_line(6, "invariants", invariants);
    report_line(7, "strong_order", strong_order);
    section_line(8, "sobolev_scaling", {"up_down:m=1", "up_down:m=2"});
    section_line(9, "spectral_power_law", {"power"});
    section_line(10, "dissipation_scale", {"dissipation_scale"});
    section_line(11, "structure_exponents",
                 {"inertial_scale:p=0.5", "inertial_scale:p=1", "inertial_scale:p=2",
                  "inertial_scale:p=3", "diss_scale:p=0.5", "diss_scale:p=2"});
    section_line(12, "mixing", mixing);
    section_line(13, "inviscid_laws", {"inviscid:power", "inviscid:structure:p=1", "inviscid:gap"});
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
