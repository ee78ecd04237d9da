#include "burgers/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burgers/errors.hpp"

namespace burgers {

void Moments::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

Moments& Moments::merge(const Moments& o) noexcept {
  if (o.n_ == 0) return *this;
  if (n_ == 0) return *this = o;
  const double n = static_cast<double>(n_ + o.n_);
  const double delta = o.mean_ - mean_;
  mean_ = (static_cast<double>(n_) * mean_ + static_cast<double>(o.n_) * o.mean_) / n;
  m2_ += o.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
  n_ += o.n_;
  return *this;
}

double Moments::variance() const noexcept {
  return n_ < 2 ? 0.0 : std::max(0.0, m2_ / static_cast<double>(n_ - 1));
}

double Moments::std_error() const noexcept {
  return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

void BracketSpec::validate() const {
  if (!(T >= 1.0)) throw ConfigurationError("bracket start T must be >= 1");
  if (!(sigma >= sigma_min) || !(sigma > 0.0))
    throw ConfigurationError("bracket window sigma must be >= sigma_min");
  if (ensemble_size < 1) throw ConfigurationError("ensemble size must be >= 1");
}

namespace {

void check_coverage(const TrajectoryStream& s, double a, double b) {
  const double tol = 1e-9 * std::max(1.0, std::abs(b));
  if (s.samples.empty() || s.samples.front().t > a + tol || s.samples.back().t < b - tol)
    throw CoverageError("trajectory (member " + std::to_string(s.member_id) +
                        ") does not cover the window [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
}

// Visits the clipped segments [c, d] of the sample polyline inside [a, b]
// with interpolation weights for their end points.
template <class Visit>
void for_each_segment(const TrajectoryStream& s, double a, double b, Visit&& visit) {
  const auto& smp = s.samples;
  for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
    const double t0 = smp[i].t;
    const double t1 = smp[i + 1].t;
    if (t1 <= a || t0 >= b || t1 <= t0) continue;
    const double c = std::max(a, t0);
    const double d = std::min(b, t1);
    const double wc = (c - t0) / (t1 - t0);  // weight of sample i+1 at c
    const double wd = (d - t0) / (t1 - t0);
    visit(i, c, d, wc, wd);
  }
}

}  // namespace

double time_average(const TrajectoryStream& stream, const Observable& f, double T, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("averaging window must be positive");
  const double b = T + sigma;
  check_coverage(stream, T, b);
  double integral = 0.0;
  for_each_segment(stream, T, b, [&](std::size_t i, double c, double d, double wc, double wd) {
    const double f0 = f(stream.samples[i]);
    const double f1 = f(stream.samples[i + 1]);
    const double fc = f0 + wc * (f1 - f0);
    const double fd = f0 + wd * (f1 - f0);
    integral += 0.5 * (d - c) * (fc + fd);
  });
  return integral / sigma;
}

std::vector<double> time_average(const TrajectoryStream& stream, const VectorObservable& f,
                                 double T, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("averaging window must be positive");
  const double b = T + sigma;
  check_coverage(stream, T, b);
  std::vector<double> integral;
  for_each_segment(stream, T, b, [&](std::size_t i, double c, double d, double wc, double wd) {
    const auto f0 = f(stream.samples[i]);
    const auto f1 = f(stream.samples[i + 1]);
    if (f0.size() != f1.size()) throw DomainError("observable changes length along a stream");
    if (integral.empty()) integral.assign(f0.size(), 0.0);
    if (integral.size() != f0.size()) throw DomainError("observable changes length");
    const double h = 0.5 * (d - c);
    for (std::size_t j = 0; j < f0.size(); ++j) {
      const double fc = f0[j] + wc * (f1[j] - f0[j]);
      const double fd = f0[j] + wd * (f1[j] - f0[j]);
      integral[j] += h * (fc + fd);
    }
  });
  for (double& v : integral) v /= sigma;
  return integral;
}

Estimate bracket_average(std::span<const TrajectoryStream> streams, const Observable& f,
                         const BracketSpec& spec) {
  if (streams.empty()) throw DomainError("bracket average of an empty ensemble");
  Moments m;
  for (const auto& s : streams) m.add(time_average(s, f, spec.T, spec.sigma));
  return m.estimate();
}

std::vector<Estimate> bracket_average(std::span<const TrajectoryStream> streams,
                                      const VectorObservable& f, const BracketSpec& spec) {
  if (streams.empty()) throw DomainError("bracket average of an empty ensemble");
  std::vector<Moments> acc;
  for (const auto& s : streams) {
    const auto avg = time_average(s, f, spec.T, spec.sigma);
    if (acc.empty()) acc.resize(avg.size());
    if (acc.size() != avg.size()) throw DomainError("trajectories disagree on observable length");
    for (std::size_t j = 0; j < avg.size(); ++j) acc[j].add(avg[j]);
  }
  std::vector<Estimate> out;
  out.reserve(acc.size());
  for (const auto& m : acc) out.push_back(m.estimate());
  return out;
}

double structure_function(std::span<const GridField> snapshots, double p, double l) {
  if (!(p > 0.0)) throw DomainError("structure function needs p > 0");
  if (snapshots.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : snapshots) sum += increment_moment(g.values(), p, grid_shift(l, g.size()));
  return sum / static_cast<double>(snapshots.size());
}

std::pair<std::size_t, std::size_t> layer_bounds(std::size_t k, double M) {
  if (k < 1) throw DomainError("layer index k must be >= 1");
  if (!(M > 1.0)) throw DomainError("layer parameter M must exceed 1");
  const double kd = static_cast<double>(k);
  const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(kd / M - 1e-12)));
  const auto hi = static_cast<std::size_t>(std::floor(kd * M + 1e-12));
  return {lo, hi};
}

double energy_layer(std::span<const double> modal, std::size_t k, double M) {
  const auto [lo, hi] = layer_bounds(k, M);
  if (hi > modal.size())
    throw RangeError("layer J_" + std::to_string(k) + " reaches |n|=" + std::to_string(hi) +
                     " beyond the truncation K=" + std::to_string(modal.size()));
  double sum = 0.0;
  for (std::size_t n = lo; n <= hi; ++n) sum += modal[n - 1];
  return sum / static_cast<double>(hi - lo + 1);
}

double energy_layer(const SpectralField& s, std::size_t k, double M) {
  const auto modes = s.positive_modes();
  std::vector<double> modal(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) modal[i] = 0.5 * std::norm(modes[i]);
  return energy_layer(modal, k, M);
}

PowerLawFit fit_power_law(std::span<const DataPoint> points, std::pair<double, double> window,
                          std::size_t min_points) {
  const auto [lo, hi] = window;
  std::vector<DataPoint> in;
  for (const auto& p : points)
    if (p.x >= lo * (1.0 - 1e-12) && p.x <= hi * (1.0 + 1e-12)) in.push_back(p);
  if (in.size() < std::max<std::size_t>(min_points, 2))
    throw RangeError("power-law fit needs at least " + std::to_string(min_points) +
                     " points in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                     std::to_string(in.size()));
  bool weighted = true;
  for (const auto& p : in) {
    if (!(p.x > 0.0) || !(p.y > 0.0)) throw DomainError("power-law fit needs positive data");
    weighted = weighted && p.std_error > 0.0;
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> X, Y, W;
  for (const auto& p : in) {
    const double x = std::log(p.x);
    const double y = std::log(p.y);
    const double rel = weighted ? p.std_error / p.y : 1.0;
    const double w = 1.0 / (rel * rel);
    X.push_back(x);
    Y.push_back(y);
    W.push_back(w);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw DomainError("power-law fit needs distinct x values");
  PowerLawFit fit;
  fit.exponent = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - fit.exponent * sx) / sw;
  fit.prefactor = std::exp(intercept);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double r = Y[i] - intercept - fit.exponent * X[i];
    chi2 += W[i] * r * r;
  }
  const double dof = static_cast<double>(X.size()) - 2.0;
  fit.exponent_std_error = dof > 0.0 ? std::sqrt(chi2 / dof * sw / det) : 0.0;
  fit.residual = std::sqrt(chi2 / sw);
  fit.points = X.size();
  fit.x_lo = lo;
  fit.x_hi = hi;
  return fit;
}

std::vector<DataPoint> SpectrumReport::points() const {
  std::vector<DataPoint> out;
  for (std::size_t i = 0; i < k.size(); ++i)
    out.push_back({static_cast<double>(k[i]), energy[i].mean, energy[i].std_error});
  return out;
}

SpectrumReport spectrum_report(std::span<const TrajectoryStream> streams, const BracketSpec& spec,
                               double M, std::size_t k_max) {
  if (streams.empty()) throw DomainError("spectrum of an empty ensemble");
  SpectrumReport report;
  report.M = M;
  std::vector<Moments> acc(k_max);
  for (const auto& s : streams) {
    const auto modal = time_average(
        s, [](const Sample& x) { return std::span<const double>(x.spectrum); }, spec.T,
        spec.sigma);
    if (modal.empty()) throw DomainError("trajectory carries no spectrum probe");
    for (std::size_t k = 1; k <= k_max; ++k) acc[k - 1].add(energy_layer(modal, k, M));
  }
  for (std::size_t k = 1; k <= k_max; ++k) {
    report.k.push_back(k);
    report.energy.push_back(acc[k - 1].estimate());
  }
  return report;
}

std::vector<DataPoint> StructureReport::points(std::size_t pi) const {
  std::vector<DataPoint> out;
  for (std::size_t i = 0; i < l.size(); ++i) out.push_back({l[i], S[pi][i].mean, S[pi][i].std_error});
  return out;
}

StructureReport structure_report(std::span<const TrajectoryStream> streams,
                                 const BracketSpec& spec) {
  if (streams.empty()) throw DomainError("structure report of an empty ensemble");
  StructureReport r;
  r.p = streams.front().probes.structure_p;
  r.l = streams.front().probes.structure_l;
  const auto flat = bracket_average(
      streams, [](const Sample& x) { return std::span<const double>(x.structure); }, spec);
  if (flat.size() != r.p.size() * r.l.size())
    throw DomainError("trajectories carry no structure probe");
  r.S.assign(r.p.size(), {});
  for (std::size_t i = 0; i < r.p.size(); ++i)
    r.S[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * r.l.size()),
                  flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * r.l.size()));
  return r;
}

double dissipation_scale(const SpectrumReport& report, double slope_threshold, double band) {
  const std::size_t n = report.k.size();
  const double half_width = std::pow(2.0, 0.25);
  std::vector<std::optional<double>> slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(report.k[i]);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double kj = static_cast<double>(report.k[j]);
      if (kj < k / half_width || kj > k * half_width) continue;
      const double x = std::log(kj);
      const double y = std::log(std::max(report.energy[j].mean, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    if (count < 2) continue;
    const double c = static_cast<double>(count);
    slope[i] = (c * sxy - sx * sy) / (c * sxx - sx * sx);
  }
  const double k_last = n ? static_cast<double>(report.k.back()) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(report.k[i]);
    if (k * band > k_last) break;
    bool sustained = true;
    for (std::size_t j = i; j < n && static_cast<double>(report.k[j]) <= band * k; ++j)
      sustained = sustained && slope[j].has_value() && *slope[j] < slope_threshold;
    if (sustained) return k;
  }
  throw UnderResolutionError("no dissipation breakpoint inside the resolved range (k <= " +
                             std::to_string(report.k.empty() ? 0 : report.k.back()) + ")");
}

std::vector<Functional> default_functionals() {
  auto mode_power = [](std::size_t n) {
    return [n](const Sample& s) {
      if (s.low_modes.size() < n) throw DomainError("sample lacks low-mode probe");
      return std::norm(s.low_modes[n - 1]);
    };
  };
  return {
      {"l1", [](const Sample& s) { return s.l1; }},
      {"l2_sq", [](const Sample& s) { return s.l2_sq; }},
      {"mode1_sq", mode_power(1)},
      {"mode2_sq", mode_power(2)},
  };
}

const Sample& sample_at(const TrajectoryStream& stream, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (const auto& s : stream.samples)
    if (std::abs(s.t - t) <= tol) return s;
  throw AlignmentError("trajectory (member " + std::to_string(stream.member_id) +
                       ") has no sample at t=" + std::to_string(t));
}

std::vector<MixingRow> mixing_distance(std::span<const TrajectoryStream> ens_a,
                                       std::span<const TrajectoryStream> ens_b,
                                       const std::vector<Functional>& functionals,
                                       std::span<const double> t_grid, bool coupled) {
  if (ens_a.empty() || ens_b.empty()) throw DomainError("mixing distance of an empty ensemble");
  if (coupled && ens_a.size() != ens_b.size())
    throw DomainError("coupled ensembles must pair members one to one");
  std::vector<MixingRow> rows;
  for (double t : t_grid) {
    MixingRow row;
    row.t = t;
    for (const auto& fn : functionals) {
      Moments a, b;
      for (const auto& s : ens_a) a.add(fn.f(sample_at(s, t)));
      for (const auto& s : ens_b) b.add(fn.f(sample_at(s, t)));
      row.distance.push_back({std::abs(a.mean() - b.mean()),
                              std::hypot(a.std_error(), b.std_error())});
    }
    if (coupled) {
      Moments d;
      for (std::size_t i = 0; i < ens_a.size(); ++i) {
        const Sample& sa = sample_at(ens_a[i], t);
        const Sample& sb = sample_at(ens_b[i], t);
        if (!sa.grid.empty() && !sb.grid.empty()) {
          d.add(l1_distance(sa.grid, sb.grid));
        } else if (std::isfinite(sb.pair_l1)) {
          d.add(sb.pair_l1);
        } else {
          throw DomainError("coupled mixing distance needs grid snapshots or pair distances");
        }
      }
      row.coupled_l1 = d.estimate();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double integrated_autocorrelation(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) return 1.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += (x[i] - mean) * (x[i + lag] - mean);
    const double rho = c / c0;
    if (rho <= 0.0) break;
    tau += 2.0 * rho;
  }
  return tau;
}

}  // namespace burgers
