#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fockmesh/fock.hpp"
#include "fockmesh/mesh.hpp"
#include "fockmesh/states.hpp"

namespace fockmesh {

/// Pure state over a fixed-total-photon Fock basis.
struct StateVector {
  FockBasis basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

inline StateVector basis_state(const FockBasis& basis, const OccupationVector& occ) {
  StateVector psi;
  psi.basis = basis;
  psi.amplitudes = Eigen::VectorXcd::Zero(basis.size());
  psi.amplitudes(index_of(basis, occ)) = 1.0;
  return psi;
}

/// Fock-space operator over a fixed-total-photon basis.
struct FockOperator {
  FockBasis basis;
  Eigen::MatrixXcd matrix;

  double unitarity_defect() const {
    Eigen::MatrixXcd d = matrix * matrix.adjoint() -
                         Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
    return d.cwiseAbs().maxCoeff();
  }
};

/// Matrix permanent by Ryser's formula with Gray-code subset updates,
/// O(2^k * k). The empty matrix has permanent 1.
inline Complex permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix must be square");
  const int k = static_cast<int>(a.rows());
  if (k == 0) return Complex(1.0, 0.0);
  if (k > 62) throw std::invalid_argument("permanent: dimension too large");

  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(k);
  Complex total(0.0, 0.0);
  std::uint64_t gray_prev = 0;
  const std::uint64_t count = std::uint64_t{1} << k;
  for (std::uint64_t s = 1; s < count; ++s) {
    const std::uint64_t gray = s ^ (s >> 1);
    const std::uint64_t changed = gray ^ gray_prev;
    const int col = std::countr_zero(changed);
    if (gray & changed) {
      row_sums += a.col(col);
    } else {
      row_sums -= a.col(col);
    }
    gray_prev = gray;
    const int bits = std::popcount(gray);
    const double sign = ((k - bits) % 2 == 0) ? 1.0 : -1.0;
    total += sign * row_sums.prod();
  }
  return total;
}

namespace detail {

/// Row/column indices of the transition sub-matrix: mode j repeated occ[j]
/// times.
inline std::vector<int> repeat_modes(const OccupationVector& occ) {
  std::vector<int> idx;
  for (std::size_t j = 0; j < occ.size(); ++j) {
    for (int r = 0; r < occ[j]; ++r) idx.push_back(static_cast<int>(j));
  }
  return idx;
}

inline double occ_factorial_product(const OccupationVector& occ) {
  double p = 1.0;
  for (int v : occ) p *= static_cast<double>(factorial(v));
  return p;
}

}  // namespace detail

/// Lift an m x m transfer matrix to the unitary it induces on the n-photon
/// Fock space: <out|U|in> = perm(T_sub) / sqrt(prod in! * prod out!), with
/// T_sub built from the rows of T for the input occupations and the columns
/// for the output occupations.
inline FockOperator lift_unitary(const TransferMatrix& tm, const FockBasis& basis) {
  if (tm.modes() != basis.modes) {
    throw std::invalid_argument("lift_unitary: transfer matrix and basis mode counts differ");
  }
  FockOperator op;
  op.basis = basis;
  const std::size_t dim = basis.size();
  op.matrix = Eigen::MatrixXcd::Zero(dim, dim);

  std::vector<std::vector<int>> mode_index(dim);
  std::vector<double> fact(dim);
  for (std::size_t p = 0; p < dim; ++p) {
    mode_index[p] = detail::repeat_modes(basis.states[p]);
    fact[p] = detail::occ_factorial_product(basis.states[p]);
  }

  const int n = basis.photons;
  Eigen::MatrixXcd sub(n, n);
  for (std::size_t in = 0; in < dim; ++in) {
    for (std::size_t out = 0; out < dim; ++out) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          sub(r, c) = tm.T(mode_index[in][static_cast<std::size_t>(r)],
                           mode_index[out][static_cast<std::size_t>(c)]);
        }
      }
      op.matrix(out, in) = permanent(sub) / std::sqrt(fact[in] * fact[out]);
    }
  }
  return op;
}

/// Apply one beam splitter by direct substitution of the two affected modes,
/// re-expanding with binomial coefficients and factorial normalizations.
inline StateVector apply_bs_sequential(const StateVector& state, const BeamSplitterSpec& spec) {
  const int m = state.basis.modes;
  if (spec.mode_a < 1 || spec.mode_b <= spec.mode_a || spec.mode_b > m) {
    throw std::out_of_range("apply_bs_sequential: splitter indices out of range");
  }
  const std::size_t a = static_cast<std::size_t>(spec.mode_a - 1);
  const std::size_t b = static_cast<std::size_t>(spec.mode_b - 1);
  const double c = std::cos(spec.theta);
  const Complex is(0.0, std::sin(spec.theta));

  StateVector out;
  out.basis = state.basis;
  out.amplitudes = Eigen::VectorXcd::Zero(state.basis.size());

  for (std::size_t idx = 0; idx < state.basis.size(); ++idx) {
    const Complex amp = state.amplitudes(idx);
    if (amp == Complex(0.0, 0.0)) continue;
    const OccupationVector& occ = state.basis.states[idx];
    const int j = occ[a];
    const int k = occ[b];
    // (c a + is b)^j (is a + c b)^k, expanded term by term.
    for (int p = 0; p <= j; ++p) {
      for (int q = 0; q <= k; ++q) {
        const int na = p + q;
        const int nb = (j - p) + (k - q);
        const Complex coeff = static_cast<double>(binomial(j, p) * binomial(k, q)) *
                              cpow(Complex(c, 0.0), p) * cpow(is, j - p) * cpow(is, q) *
                              cpow(Complex(c, 0.0), k - q);
        const double norm = std::sqrt(static_cast<double>(factorial(na) * factorial(nb)) /
                                      static_cast<double>(factorial(j) * factorial(k)));
        OccupationVector target = occ;
        target[a] = na;
        target[b] = nb;
        out.amplitudes(index_of(out.basis, target)) += amp * coeff * norm;
      }
    }
  }
  return out;
}

enum class Backend { Permanent, Sequential, Symbolic };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Permanent: return "permanent";
    case Backend::Sequential: return "sequential";
    case Backend::Symbolic: return "symbolic";
  }
  return "?";
}

inline StateVector evolve_network(const StateVector& state, const NetworkSpec& network,
                                  Backend backend = Backend::Permanent) {
  network.validate();
  if (state.basis.modes != network.modes) {
    throw std::invalid_argument("evolve_network: state and network mode counts differ");
  }
  switch (backend) {
    case Backend::Sequential: {
      StateVector psi = state;
      for (const auto& bs : network.splitters) psi = apply_bs_sequential(psi, bs);
      return psi;
    }
    case Backend::Symbolic:
      throw std::invalid_argument(
          "evolve_network: the symbolic backend lives in symop; use general_output_state");
    case Backend::Permanent:
    default: {
      const FockOperator op = lift_unitary(compose_chain(network), state.basis);
      StateVector psi;
      psi.basis = state.basis;
      psi.amplitudes = op.matrix * state.amplitudes;
      return psi;
    }
  }
}

/// The full Fock-space unitary of the network under the chosen backend.
inline FockOperator network_unitary(const NetworkSpec& network, const FockBasis& basis,
                                    Backend backend = Backend::Permanent) {
  if (backend == Backend::Symbolic) {
    throw std::invalid_argument(
        "network_unitary: the symbolic backend lives in symop; use general_output_density");
  }
  if (backend == Backend::Sequential) {
    FockOperator op;
    op.basis = basis;
    op.matrix = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (std::size_t p = 0; p < basis.size(); ++p) {
      StateVector psi = evolve_network(basis_state(basis, basis.states[p]), network,
                                       Backend::Sequential);
      op.matrix.col(p) = psi.amplitudes;
    }
    return op;
  }
  return lift_unitary(compose_chain(network), basis);
}

inline DensityOperator evolve_network(const DensityOperator& rho, const NetworkSpec& network,
                                      Backend backend = Backend::Permanent) {
  network.validate();
  if (rho.basis.modes != network.modes) {
    throw std::invalid_argument("evolve_network: density operator and network mode counts differ");
  }
  const FockOperator op = network_unitary(network, rho.basis, backend);
  DensityOperator out;
  out.basis = rho.basis;
  out.matrix = op.matrix * rho.matrix * op.matrix.adjoint();
  return out;
}

}  // namespace fockmesh
