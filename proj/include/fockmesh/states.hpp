#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fockmesh/fock.hpp"
#include "fockmesh/mesh.hpp"

namespace fockmesh {

/// Mixed state over a fixed-total-photon Fock basis.
struct DensityOperator {
  FockBasis basis;
  Eigen::MatrixXcd matrix;

  double trace_real() const { return matrix.trace().real(); }

  double hermiticity_defect() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        (matrix + matrix.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
};

/// Basis for a two-mode reduced state. The kept-mode total varies after the
/// partial trace, so this spans all totals 0..n: size (n+1)(n+2)/2, ordered
/// by total then lexicographic descending.
struct ReducedBasis {
  int photons_max = 0;
  std::vector<OccupationVector> states;
  std::map<OccupationVector, std::size_t> index;

  std::size_t size() const { return states.size(); }
};

inline ReducedBasis reduced_basis(int n) {
  if (n < 0) throw std::invalid_argument("reduced_basis: photon cap must be >= 0");
  ReducedBasis basis;
  basis.photons_max = n;
  for (int total = 0; total <= n; ++total) {
    for (int a = total; a >= 0; --a) basis.states.push_back({a, total - a});
  }
  for (std::size_t p = 0; p < basis.states.size(); ++p) basis.index[basis.states[p]] = p;
  return basis;
}

struct ReducedDensityOperator {
  ReducedBasis basis;
  Eigen::MatrixXcd matrix;

  double trace_real() const { return matrix.trace().real(); }

  double hermiticity_defect() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        (matrix + matrix.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
};

/// Uniform mixture over all hard-core photon placements: n photons into m
/// modes, one per mode, each with weight 1/C(m,n).
inline DensityOperator mixed_input(int m, int n) {
  DensityOperator rho;
  rho.basis = enumerate_basis(m, n);
  rho.matrix = Eigen::MatrixXcd::Zero(rho.basis.size(), rho.basis.size());
  const auto placements = hardcore_vectors(m, n);
  const double weight = 1.0 / static_cast<double>(placements.size());
  for (const auto& occ : placements) {
    const std::size_t p = index_of(rho.basis, occ);
    rho.matrix(p, p) = weight;
  }
  return rho;
}

/// Trace out every mode except the ordered pair `keep` (1-based). The kept
/// modes land in the reduced state in the order given.
inline ReducedDensityOperator partial_trace(const DensityOperator& rho,
                                            std::pair<int, int> keep) {
  const int m = rho.basis.modes;
  if (keep.first < 1 || keep.first > m || keep.second < 1 || keep.second > m ||
      keep.first == keep.second) {
    throw std::invalid_argument("partial_trace: kept modes must be distinct and within 1..m");
  }
  ReducedDensityOperator red;
  red.basis = reduced_basis(rho.basis.photons);
  red.matrix = Eigen::MatrixXcd::Zero(red.basis.size(), red.basis.size());
  const int ka = keep.first - 1;
  const int kb = keep.second - 1;

  auto env_part = [&](const OccupationVector& occ) {
    OccupationVector env;
    env.reserve(static_cast<std::size_t>(m - 2));
    for (int j = 0; j < m; ++j) {
      if (j != ka && j != kb) env.push_back(occ[static_cast<std::size_t>(j)]);
    }
    return env;
  };

  for (std::size_t i = 0; i < rho.basis.size(); ++i) {
    const auto& vi = rho.basis.states[i];
    const OccupationVector env_i = env_part(vi);
    for (std::size_t j = 0; j < rho.basis.size(); ++j) {
      const auto& vj = rho.basis.states[j];
      if (env_part(vj) != env_i) continue;
      const std::size_t r = red.basis.index.at({vi[static_cast<std::size_t>(ka)],
                                                vi[static_cast<std::size_t>(kb)]});
      const std::size_t c = red.basis.index.at({vj[static_cast<std::size_t>(ka)],
                                                vj[static_cast<std::size_t>(kb)]});
      red.matrix(r, c) += rho.matrix(i, j);
    }
  }
  return red;
}

enum class TargetKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus, NoonPlus, NoonMinus };

inline bool is_noon(TargetKind kind) {
  return kind == TargetKind::NoonPlus || kind == TargetKind::NoonMinus;
}

inline const char* target_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::PsiPlus: return "psi+";
    case TargetKind::PsiMinus: return "psi-";
    case TargetKind::PhiPlus: return "phi+";
    case TargetKind::PhiMinus: return "phi-";
    case TargetKind::NoonPlus: return "noon+";
    case TargetKind::NoonMinus: return "noon-";
  }
  return "?";
}

/// Two-mode pure target: a Bell state psi+-, phi+-, or an n-photon NOON
/// state (|n0> +- |0n>)/sqrt(2).
struct TargetState {
  TargetKind kind = TargetKind::PsiPlus;
  int noon_n = 1;
  ReducedBasis basis;
  Eigen::VectorXcd amplitudes;
};

inline TargetState target_state(TargetKind kind, int n) {
  TargetState t;
  t.kind = kind;
  const double r = 1.0 / std::sqrt(2.0);
  const double sign = (kind == TargetKind::PsiMinus || kind == TargetKind::PhiMinus ||
                       kind == TargetKind::NoonMinus)
                          ? -1.0
                          : 1.0;
  switch (kind) {
    case TargetKind::PsiPlus:
    case TargetKind::PsiMinus:
      if (n < 1) throw std::invalid_argument("target_state: psi needs photon cap >= 1");
      t.basis = reduced_basis(n);
      t.amplitudes = Eigen::VectorXcd::Zero(t.basis.size());
      t.amplitudes(t.basis.index.at({1, 0})) = r;
      t.amplitudes(t.basis.index.at({0, 1})) = sign * r;
      break;
    case TargetKind::PhiPlus:
    case TargetKind::PhiMinus:
      if (n < 2) throw std::invalid_argument("target_state: phi needs photon cap >= 2");
      t.basis = reduced_basis(n);
      t.amplitudes = Eigen::VectorXcd::Zero(t.basis.size());
      t.amplitudes(t.basis.index.at({0, 0})) = r;
      t.amplitudes(t.basis.index.at({1, 1})) = sign * r;
      break;
    case TargetKind::NoonPlus:
    case TargetKind::NoonMinus: {
      if (n < 1) throw std::invalid_argument("target_state: NOON needs n >= 1");
      t.noon_n = n;
      t.basis = reduced_basis(n);
      t.amplitudes = Eigen::VectorXcd::Zero(t.basis.size());
      t.amplitudes(t.basis.index.at({n, 0})) = r;
      t.amplitudes(t.basis.index.at({0, n})) = sign * r;
      break;
    }
  }
  return t;
}

/// Fidelity <t|rho|t> of the reduced state with the pure target, clamped to
/// [0,1] after checking the imaginary part is below tolerance.
inline double probability(const ReducedDensityOperator& rho_red, const TargetState& target) {
  if (rho_red.basis.photons_max < target.basis.photons_max) {
    throw std::invalid_argument("probability: target needs more photons than the reduced basis holds");
  }
  // Embed the target into the (possibly larger) reduced basis.
  Eigen::VectorXcd t = Eigen::VectorXcd::Zero(rho_red.basis.size());
  for (std::size_t p = 0; p < target.basis.size(); ++p) {
    if (target.amplitudes(p) != Complex(0.0, 0.0)) {
      t(rho_red.basis.index.at(target.basis.states[p])) = target.amplitudes(p);
    }
  }
  const Complex value = t.adjoint() * rho_red.matrix * t;
  if (std::abs(value.imag()) > 1e-12) {
    throw std::runtime_error("probability: expectation has a non-negligible imaginary part");
  }
  return std::clamp(value.real(), 0.0, 1.0);
}

}  // namespace fockmesh
