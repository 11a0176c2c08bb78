#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockmesh/fock.hpp"
#include "fockmesh/lift.hpp"
#include "fockmesh/mesh.hpp"
#include "fockmesh/states.hpp"
#include "fockmesh/symop.hpp"

namespace fockmesh {

struct TargetSpec {
  TargetKind kind = TargetKind::PsiPlus;
  int noon_n = 1;  // photon count for NOON targets; ignored otherwise
};

struct GridSpec {
  double lo = 0.0;
  double hi = 2.0 * M_PI;
  int count = 1001;
};

struct SweepConfig {
  int modes = 3;
  int photons = 2;
  std::pair<int, int> keep{1, 2};
  std::vector<TargetSpec> targets;
  GridSpec grid;
  Backend backend = Backend::Permanent;
  // Template network; every splitter angle is replaced by the sweep variable.
  // Empty splitter list with modes 0 means "use the default chain".
  NetworkSpec network_template{0, {}};

  bool uses_default_chain() const { return network_template.modes == 0; }

  NetworkSpec network_at(double theta) const {
    if (uses_default_chain()) return NetworkSpec::chain(modes, theta);
    NetworkSpec net = network_template;
    for (auto& bs : net.splitters) bs.theta = theta;
    return net;
  }
};

inline std::string csv_column_name(const TargetSpec& t) {
  switch (t.kind) {
    case TargetKind::PsiPlus: return "p_psi_plus";
    case TargetKind::PsiMinus: return "p_psi_minus";
    case TargetKind::PhiPlus: return "p_phi_plus";
    case TargetKind::PhiMinus: return "p_phi_minus";
    case TargetKind::NoonPlus: return "p_noon_plus";
    case TargetKind::NoonMinus: return "p_noon_minus";
  }
  return "p_unknown";
}

/// Evaluate every configured target probability at a single angle.
inline std::vector<double> evaluate_targets(const SweepConfig& config, double theta) {
  DensityOperator rho_out;
  if (config.backend == Backend::Symbolic) {
    if (!config.uses_default_chain()) {
      throw std::invalid_argument("evaluate_targets: symbolic backend supports the default chain only");
    }
    rho_out = general_output_density(config.modes, config.photons, theta);
  } else {
    rho_out = evolve_network(mixed_input(config.modes, config.photons), config.network_at(theta),
                             config.backend);
  }
  const ReducedDensityOperator red = partial_trace(rho_out, config.keep);
  std::vector<double> values;
  values.reserve(config.targets.size());
  for (const auto& t : config.targets) {
    const int tn = is_noon(t.kind) ? t.noon_n : config.photons;
    values.push_back(probability(red, target_state(t.kind, tn)));
  }
  return values;
}

struct SweepResult {
  SweepConfig config;
  std::vector<double> grid;
  std::vector<std::vector<double>> columns;  // one per target, same length as grid
};

inline SweepResult sweep_theta(const SweepConfig& config) {
  if (config.grid.count < 2) throw std::invalid_argument("sweep_theta: grid needs >= 2 points");
  if (!(config.grid.lo < config.grid.hi)) {
    throw std::invalid_argument("sweep_theta: grid interval must be increasing");
  }
  if (config.targets.empty()) throw std::invalid_argument("sweep_theta: no targets requested");
  SweepResult result;
  result.config = config;
  result.grid.resize(static_cast<std::size_t>(config.grid.count));
  result.columns.assign(config.targets.size(),
                        std::vector<double>(static_cast<std::size_t>(config.grid.count)));
  const double step = (config.grid.hi - config.grid.lo) / static_cast<double>(config.grid.count - 1);
  for (int i = 0; i < config.grid.count; ++i) {
    const double theta = config.grid.lo + step * static_cast<double>(i);
    result.grid[static_cast<std::size_t>(i)] = theta;
    const std::vector<double> values = evaluate_targets(config, theta);
    for (std::size_t c = 0; c < values.size(); ++c) {
      result.columns[c][static_cast<std::size_t>(i)] = values[c];
    }
  }
  return result;
}

struct Extremum {
  double theta_star = 0.0;
  double value = 0.0;
  enum class Kind { Max, Min } kind = Kind::Max;
  double width = 0.0;  // final bracket width of the refinement
};

/// Golden-section refinement of a bracketed extremum; shrinks [a, b] until
/// its width drops below `tol`.
inline Extremum golden_section(const std::function<double(double)>& f, double a, double b,
                               Extremum::Kind kind, double tol = 1e-6) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double sign = (kind == Extremum::Kind::Max) ? -1.0 : 1.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = sign * f(d);
    }
  }
  Extremum e;
  e.theta_star = (a + b) / 2.0;
  e.value = f(e.theta_star);
  e.kind = kind;
  e.width = b - a;
  return e;
}

/// Locate every interior strict local extremum of one probability column and
/// refine it against the model itself. Constant columns yield an empty list.
inline std::vector<Extremum> find_extrema(const SweepResult& result, std::size_t column,
                                          double refine_tol = 1e-6, double dedupe_window = 1e-5) {
  if (column >= result.columns.size()) throw std::out_of_range("find_extrema: no such column");
  const std::vector<double>& y = result.columns[column];
  const std::vector<double>& x = result.grid;
  SweepConfig point_config = result.config;
  point_config.targets = {result.config.targets[column]};
  auto f = [&point_config](double theta) { return evaluate_targets(point_config, theta)[0]; };

  std::vector<Extremum> found;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    Extremum::Kind kind;
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) {
      kind = Extremum::Kind::Max;
    } else if (y[i] < y[i - 1] && y[i] < y[i + 1]) {
      kind = Extremum::Kind::Min;
    } else {
      continue;
    }
    Extremum e = golden_section(f, x[i - 1], x[i + 1], kind, refine_tol);
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Extremum& other) {
      return other.kind == e.kind && std::abs(other.theta_star - e.theta_star) < dedupe_window;
    });
    if (!duplicate) found.push_back(e);
  }
  return found;
}

/// CSV serialization: header `theta,<column names>`, one row per grid point,
/// >= 12 significant digits, LF line endings. Byte-stable across runs.
inline void write_csv(const SweepResult& result, std::ostream& os) {
  os << "theta";
  for (const auto& t : result.config.targets) os << "," << csv_column_name(t);
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.15g", result.grid[i]);
    os << buf;
    for (const auto& col : result.columns) {
      std::snprintf(buf, sizeof(buf), "%.15g", col[i]);
      os << "," << buf;
    }
    os << "\n";
  }
}

}  // namespace fockmesh
