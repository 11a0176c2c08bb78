// Command-line front end: basis inspection, single-angle evolution, theta
// sweeps with extrema refinement, and cross-backend verification.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockmesh/fockmesh.hpp"

namespace {

using namespace fockmesh;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;

struct CliOptions {
  int modes = 3;
  int photons = 2;
  double theta = 0.0;
  bool theta_given = false;
  std::string grid = "0:6.283185307179586:1001";
  bool grid_given = false;
  std::string keep = "1,2";
  std::string targets = "psi+";
  int noon_n = 0;  // 0 means "use the run's photon number"
  std::string backend = "permanent";
  std::string network_file;
  std::string out_path;
  std::string format = "csv";
  unsigned seed = 0;
  bool degrees = false;
};

TargetKind parse_target_kind(const std::string& name) {
  if (name == "psi+") return TargetKind::PsiPlus;
  if (name == "psi-") return TargetKind::PsiMinus;
  if (name == "phi+") return TargetKind::PhiPlus;
  if (name == "phi-") return TargetKind::PhiMinus;
  if (name == "noon+") return TargetKind::NoonPlus;
  if (name == "noon-") return TargetKind::NoonMinus;
  throw std::invalid_argument("unknown target '" + name + "'");
}

std::vector<TargetSpec> parse_targets(const CliOptions& opt) {
  std::vector<TargetSpec> targets;
  std::stringstream ss(opt.targets);
  std::string item;
  const int noon_n = opt.noon_n > 0 ? opt.noon_n : opt.photons;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    targets.push_back({parse_target_kind(item), noon_n});
  }
  if (targets.empty()) throw std::invalid_argument("no targets given");
  return targets;
}

std::pair<int, int> parse_keep(const std::string& s) {
  int a = 0, b = 0;
  char comma = 0;
  std::stringstream ss(s);
  if (!(ss >> a >> comma >> b) || comma != ',') {
    throw std::invalid_argument("--keep expects 'a,b'");
  }
  return {a, b};
}

GridSpec parse_grid(const std::string& s, bool degrees) {
  GridSpec grid;
  char c1 = 0, c2 = 0;
  std::stringstream ss(s);
  if (!(ss >> grid.lo >> c1 >> grid.hi >> c2 >> grid.count) || c1 != ':' || c2 != ':') {
    throw std::invalid_argument("--grid expects 'lo:hi:count'");
  }
  if (degrees) {
    grid.lo *= M_PI / 180.0;
    grid.hi *= M_PI / 180.0;
  }
  return grid;
}

Backend parse_backend(const std::string& s) {
  if (s == "permanent") return Backend::Permanent;
  if (s == "sequential") return Backend::Sequential;
  if (s == "symbolic") return Backend::Symbolic;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

SweepConfig build_config(const CliOptions& opt) {
  if (opt.photons < 0 || opt.photons > opt.modes) {
    throw std::invalid_argument("need 0 <= photons <= modes");
  }
  SweepConfig cfg;
  cfg.modes = opt.modes;
  cfg.photons = opt.photons;
  cfg.keep = parse_keep(opt.keep);
  cfg.targets = parse_targets(opt);
  cfg.backend = parse_backend(opt.backend);
  if (!opt.network_file.empty()) {
    std::ifstream in(opt.network_file);
    if (!in) throw std::invalid_argument("cannot open network file '" + opt.network_file + "'");
    nlohmann::json doc;
    in >> doc;
    cfg.network_template = network_from_json(doc);
    if (cfg.network_template.modes != opt.modes) {
      throw std::invalid_argument("network file mode count differs from --modes");
    }
  }
  return cfg;
}

int cmd_basis(const CliOptions& opt) {
  const FockBasis basis = enumerate_basis(opt.modes, opt.photons);
  std::vector<OccupationVector> hardcore;
  if (opt.photons <= opt.modes) hardcore = hardcore_vectors(opt.modes, opt.photons);
  std::printf("basis(m=%d, n=%d): %zu states, %zu hard-core\n", opt.modes, opt.photons,
              basis.size(), hardcore.size());
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const bool hc = std::find(hardcore.begin(), hardcore.end(), basis.states[p]) != hardcore.end();
    std::printf("%4zu  %s%s\n", p, to_string(basis.states[p]).c_str(), hc ? "  [hard-core]" : "");
  }
  return kExitOk;
}

int cmd_evolve(const CliOptions& opt) {
  if (!opt.theta_given) throw std::invalid_argument("evolve needs --theta (a single angle, not a grid)");
  if (opt.grid_given) throw std::invalid_argument("evolve takes --theta, not --grid");
  const double theta = opt.degrees ? opt.theta * M_PI / 180.0 : opt.theta;
  SweepConfig cfg = build_config(opt);

  DensityOperator rho_out;
  if (cfg.backend == Backend::Symbolic) {
    if (!cfg.uses_default_chain()) {
      throw std::invalid_argument("symbolic backend supports the default chain only");
    }
    rho_out = general_output_density(cfg.modes, cfg.photons, theta);
  } else {
    rho_out = evolve_network(mixed_input(cfg.modes, cfg.photons), cfg.network_at(theta),
                             cfg.backend);
  }
  const ReducedDensityOperator red = partial_trace(rho_out, cfg.keep);

  std::printf("reduced density operator, keep (%d,%d), theta = %.12g rad:\n", cfg.keep.first,
              cfg.keep.second, theta);
  for (std::size_t i = 0; i < red.basis.size(); ++i) {
    for (std::size_t j = 0; j < red.basis.size(); ++j) {
      const Complex v = red.matrix(i, j);
      if (std::abs(v) > 1e-12) {
        std::printf("  <%s|rho|%s> = %.12g%+.12gi\n", to_string(red.basis.states[i]).c_str(),
                    to_string(red.basis.states[j]).c_str(), v.real(), v.imag());
      }
    }
  }
  for (const auto& t : cfg.targets) {
    const int tn = is_noon(t.kind) ? t.noon_n : cfg.photons;
    std::printf("P(%s) = %.12g\n", target_name(t.kind), probability(red, target_state(t.kind, tn)));
  }
  return kExitOk;
}

int cmd_sweep(const CliOptions& opt) {
  if (opt.theta_given) throw std::invalid_argument("sweep takes --grid, not --theta");
  SweepConfig cfg = build_config(opt);
  cfg.grid = parse_grid(opt.grid, opt.degrees);
  const SweepResult result = sweep_theta(cfg);

  std::vector<std::vector<Extremum>> extrema;
  extrema.reserve(cfg.targets.size());
  for (std::size_t c = 0; c < cfg.targets.size(); ++c) extrema.push_back(find_extrema(result, c));

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot write to '" + opt.out_path + "'");
    os = &file;
  }
  if (opt.format == "csv") {
    write_csv(result, *os);
  } else if (opt.format == "json-like") {
    *os << sweep_result_to_json(result, extrema).dump(2) << "\n";
  } else {
    throw std::invalid_argument("unknown format '" + opt.format + "'");
  }

  for (std::size_t c = 0; c < extrema.size(); ++c) {
    std::fprintf(stderr, "extrema of %s:\n", csv_column_name(cfg.targets[c]).c_str());
    for (const auto& e : extrema[c]) {
      std::fprintf(stderr, "  %s at theta = %.9f, value = %.12g\n",
                   e.kind == Extremum::Kind::Max ? "max" : "min", e.theta_star, e.value);
    }
  }
  return kExitOk;
}

int cmd_verify(const CliOptions& opt) {
  if (opt.photons < 0 || opt.photons > opt.modes) {
    throw std::invalid_argument("need 0 <= photons <= modes");
  }
  const int m = opt.modes;
  const int n = opt.photons;
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  bool ok = true;
  constexpr double kTol = 1e-10;

  double eq12_dev = 0.0;
  double state_dev = 0.0;
  double density_dev = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = angle(rng);
    const NetworkSpec net = NetworkSpec::chain(m, theta);
    const TransferMatrix chain = compose_chain(net);
    for (int k = 1; k <= m; ++k) {
      eq12_dev = std::max(eq12_dev, (closed_form_column(m, k, theta).transpose() -
                                     chain.T.row(k - 1)).cwiseAbs().maxCoeff());
    }

    const FockBasis basis = enumerate_basis(m, n);
    for (const auto& occ : hardcore_vectors(m, n)) {
      std::vector<int> channels;
      for (int j = 0; j < m; ++j) {
        if (occ[static_cast<std::size_t>(j)] == 0) channels.push_back(j + 1);
      }
      const StateVector via_perm = evolve_network(basis_state(basis, occ), net, Backend::Permanent);
      const StateVector via_seq = evolve_network(basis_state(basis, occ), net, Backend::Sequential);
      const StateVector via_sym = general_output_state(m, n, channels, theta);
      state_dev = std::max(state_dev,
                           (via_perm.amplitudes - via_seq.amplitudes).cwiseAbs().maxCoeff());
      state_dev = std::max(state_dev,
                           (via_perm.amplitudes - via_sym.amplitudes).cwiseAbs().maxCoeff());
    }

    const DensityOperator via_perm = evolve_network(mixed_input(m, n), net, Backend::Permanent);
    const DensityOperator via_seq = evolve_network(mixed_input(m, n), net, Backend::Sequential);
    const DensityOperator via_sym = general_output_density(m, n, theta);
    density_dev = std::max(density_dev, (via_perm.matrix - via_seq.matrix).cwiseAbs().maxCoeff());
    density_dev = std::max(density_dev, (via_perm.matrix - via_sym.matrix).cwiseAbs().maxCoeff());
  }

  auto report = [&](const char* name, double dev) {
    const bool pass = dev <= kTol;
    std::printf("%-34s max deviation %.3e  %s\n", name, dev, pass ? "pass" : "FAIL");
    ok = ok && pass;
  };
  report("closed-form columns vs chain", eq12_dev);
  report("state backends (perm/seq/sym)", state_dev);
  report("density backends (perm/seq/sym)", density_dev);
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-state evolution through sequential beam-splitter networks"};
  app.require_subcommand(1);

  CliOptions opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-m,--modes", opt.modes, "mode count");
    cmd->add_option("-n,--photons", opt.photons, "total photon number");
  };

  CLI::App* basis = app.add_subcommand("basis", "list the Fock basis and its hard-core subset");
  add_common(basis);

  CLI::App* evolve = app.add_subcommand("evolve", "evolve the mixed input at one angle");
  add_common(evolve);
  evolve->add_option("--theta", opt.theta, "beam-splitter angle")->each([&](const std::string&) {
    opt.theta_given = true;
  });
  evolve->add_option("--keep", opt.keep, "kept output-port pair, e.g. 1,2");
  evolve->add_option("--targets,--target", opt.targets, "comma-separated target list");
  evolve->add_option("--noon-n", opt.noon_n, "NOON photon count (default: run's n)");
  evolve->add_option("--backend", opt.backend, "permanent|sequential|symbolic");
  evolve->add_option("--network", opt.network_file, "network spec file (JSON)");
  evolve->add_flag("--degrees", opt.degrees, "interpret angles in degrees");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep theta and tabulate probabilities");
  add_common(sweep);
  sweep->add_option("--grid", opt.grid, "theta grid lo:hi:count")->each([&](const std::string&) {
    opt.grid_given = true;
  });
  sweep->add_option("--theta", opt.theta, "(rejected; sweep uses --grid)")->each(
      [&](const std::string&) { opt.theta_given = true; });
  sweep->add_option("--keep", opt.keep, "kept output-port pair, e.g. 1,2");
  sweep->add_option("--targets,--target", opt.targets, "comma-separated target list");
  sweep->add_option("--noon-n", opt.noon_n, "NOON photon count (default: run's n)");
  sweep->add_option("--backend", opt.backend, "permanent|sequential|symbolic");
  sweep->add_option("--network", opt.network_file, "network spec file (JSON)");
  sweep->add_option("--out", opt.out_path, "output file (default: stdout)");
  sweep->add_option("--format", opt.format, "csv|json-like");
  sweep->add_flag("--degrees", opt.degrees, "interpret grid bounds in degrees");

  CLI::App* verify = app.add_subcommand("verify", "cross-backend equivalence checks");
  add_common(verify);
  verify->add_option("--seed", opt.seed, "random-angle seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (basis->parsed()) return cmd_basis(opt);
    if (evolve->parsed()) return cmd_evolve(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
