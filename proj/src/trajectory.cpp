#include "burgers/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/errors.hpp"

namespace burgers {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::viscous: return "viscous";
    case Scheme::linearized: return "linearized";
    case Scheme::inviscid: return "inviscid";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "viscous") return Scheme::viscous;
  if (name == "linearized") return Scheme::linearized;
  if (name == "inviscid") return Scheme::inviscid;
  throw ConfigurationError("unknown model '" + name + "'");
}

namespace {

void record_grid_probes(const GridField& g, const SpectralField& s, const ProbeSet& probes,
                        Sample& out) {
  const auto v = g.values();
  const std::size_t n = v.size();
  if (probes.oleinik) {
    const GridField ux = to_grid(derivative(s), n);
    OleinikObservables o;
    double l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      o.sup_norm = std::max(o.sup_norm, std::abs(v[j]));
      l1 += std::abs(ux[j]);
      o.grad_plus_sup = std::max(o.grad_plus_sup, ux[j]);
    }
    o.grad_l1 = l1 / static_cast<double>(n);
    out.oleinik = o;
  }
  if (!probes.structure_p.empty()) {
    std::vector<std::size_t> shifts;
    for (double l : probes.structure_l) shifts.push_back(grid_shift(l, n));
    out.structure.reserve(probes.structure_p.size() * shifts.size());
    for (double p : probes.structure_p)
      for (std::size_t sh : shifts) out.structure.push_back(increment_moment(v, p, sh));
  }
  if (probes.norms) {
    double l1 = 0.0;
    double l2 = 0.0;
    for (double x : v) {
      l1 += std::abs(x);
      l2 += x * x;
    }
    out.l1 = l1 / static_cast<double>(n);
    out.l2_sq = l2 / static_cast<double>(n);
  }
  if (probes.grid) out.grid.assign(v.begin(), v.end());
}

void record_spectral_probes(const SpectralField& s, const ProbeSet& probes, Sample& out) {
  for (int m : probes.sobolev_orders)
    out.sobolev.push_back(sobolev_norm_sq(s, m, NegativeOrders::allow_diagnostic));
  const auto modes = s.positive_modes();
  if (probes.spectrum) {
    out.spectrum.resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) out.spectrum[i] = 0.5 * std::norm(modes[i]);
  }
  if (probes.low_modes > 0) {
    const std::size_t n = std::min(probes.low_modes, modes.size());
    out.low_modes.assign(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(n));
    out.low_modes.resize(probes.low_modes, Complex{});
  }
}

bool needs_grid(const ProbeSet& p) {
  return p.oleinik || !p.structure_p.empty() || p.norms || p.grid;
}

}  // namespace

Sample observe(const SpectralField& u, std::size_t grid_points, const ProbeSet& probes,
               double t, std::uint64_t step) {
  Sample out;
  out.t = t;
  out.step = step;
  record_spectral_probes(u, probes, out);
  if (needs_grid(probes)) record_grid_probes(to_grid(u, grid_points), u, probes, out);
  return out;
}

Sample observe(const GridField& g, const ProbeSet& probes, double t, std::uint64_t step) {
  Sample out;
  out.t = t;
  out.step = step;
  const bool spectral = !probes.sobolev_orders.empty() || probes.spectrum ||
                        probes.low_modes > 0 || probes.oleinik;
  const SpectralField s = spectral ? to_spectral(g) : SpectralField(1);
  record_spectral_probes(s, probes, out);
  record_grid_probes(g, s, probes, out);
  return out;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("L1 distance of fields on different grids");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
  return a.empty() ? 0.0 : sum / static_cast<double>(a.size());
}

}  // namespace burgers
