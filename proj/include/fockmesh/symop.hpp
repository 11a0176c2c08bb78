#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fockmesh/fock.hpp"
#include "fockmesh/lift.hpp"
#include "fockmesh/mesh.hpp"
#include "fockmesh/states.hpp"

namespace fockmesh {

/// Normal-ordered polynomial in bosonic mode operators: each term is
/// coeff * prod_p (a_p^dag)^{cre[p]} * prod_p (a_p)^{ann[p]}.
struct OperatorPolynomial {
  using Exponents = std::pair<OccupationVector, OccupationVector>;  // (cre, ann)

  int modes = 0;
  std::map<Exponents, Complex> terms;

  static constexpr double kPruneThreshold = 1e-15;

  static OperatorPolynomial identity(int m) {
    OperatorPolynomial p;
    p.modes = m;
    p.terms[{OccupationVector(static_cast<std::size_t>(m), 0),
             OccupationVector(static_cast<std::size_t>(m), 0)}] = Complex(1.0, 0.0);
    return p;
  }

  void add_term(const OccupationVector& cre, const OccupationVector& ann, Complex coeff) {
    auto key = Exponents{cre, ann};
    auto it = terms.find(key);
    if (it == terms.end()) {
      if (std::abs(coeff) > kPruneThreshold) terms[key] = coeff;
    } else {
      it->second += coeff;
      if (std::abs(it->second) <= kPruneThreshold) terms.erase(it);
    }
  }
};

namespace detail {

/// Per-mode contraction count recursion for the reordering identity
/// a^b a'^dag^g = sum_j j! C(b,j) C(g,j) a^dag^(g-j) a^(b-j).
inline void contract_modes(int mode, int m, const OccupationVector& cre1,
                           const OccupationVector& ann1, const OccupationVector& cre2,
                           const OccupationVector& ann2, Complex coeff, OccupationVector& cre_out,
                           OccupationVector& ann_out, OperatorPolynomial& result) {
  if (mode == m) {
    result.add_term(cre_out, ann_out, coeff);
    return;
  }
  const std::size_t p = static_cast<std::size_t>(mode);
  const int b = ann1[p];
  const int g = cre2[p];
  for (int j = 0; j <= std::min(b, g); ++j) {
    const double weight = static_cast<double>(factorial(j)) *
                          static_cast<double>(binomial(b, j)) *
                          static_cast<double>(binomial(g, j));
    cre_out[p] = cre1[p] + (g - j);
    ann_out[p] = (b - j) + ann2[p];
    contract_modes(mode + 1, m, cre1, ann1, cre2, ann2, coeff * weight, cre_out, ann_out, result);
  }
  cre_out[p] = 0;
  ann_out[p] = 0;
}

}  // namespace detail

/// Operator product lhs * rhs, normal-ordered via [a_p, a_q^dag] = delta_pq.
inline OperatorPolynomial multiply(const OperatorPolynomial& lhs, const OperatorPolynomial& rhs) {
  if (lhs.modes != rhs.modes) throw std::invalid_argument("multiply: mode counts differ");
  OperatorPolynomial result;
  result.modes = lhs.modes;
  OccupationVector cre_out(static_cast<std::size_t>(lhs.modes), 0);
  OccupationVector ann_out(static_cast<std::size_t>(lhs.modes), 0);
  for (const auto& [e1, c1] : lhs.terms) {
    for (const auto& [e2, c2] : rhs.terms) {
      detail::contract_modes(0, lhs.modes, e1.first, e1.second, e2.first, e2.second, c1 * c2,
                             cre_out, ann_out, result);
    }
  }
  return result;
}

/// The normal-ordered product of the factors in the given operator order
/// (first factor leftmost).
inline OperatorPolynomial expand_product(const std::vector<OperatorPolynomial>& factors) {
  if (factors.empty()) throw std::invalid_argument("expand_product: empty factor list");
  OperatorPolynomial result = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) result = multiply(result, factors[i]);
  return result;
}

/// a_k^dag after the default chain: sum_p T(k,p) a_p^dag with the closed-form
/// coefficients.
inline OperatorPolynomial transformed_creation(int m, int k, double theta) {
  const Eigen::VectorXcd coeff = closed_form_column(m, k, theta);
  OperatorPolynomial poly;
  poly.modes = m;
  for (int p = 0; p < m; ++p) {
    if (coeff(p) == Complex(0.0, 0.0)) continue;
    OccupationVector cre(static_cast<std::size_t>(m), 0);
    cre[static_cast<std::size_t>(p)] = 1;
    poly.add_term(cre, OccupationVector(static_cast<std::size_t>(m), 0), coeff(p));
  }
  return poly;
}

/// a_k after the default chain: the creation coefficients with every
/// reflection phase conjugated (i sin -> -i sin).
inline OperatorPolynomial transformed_annihilation(int m, int k, double theta) {
  const Eigen::VectorXcd coeff = closed_form_column(m, k, theta);
  OperatorPolynomial poly;
  poly.modes = m;
  for (int p = 0; p < m; ++p) {
    if (coeff(p) == Complex(0.0, 0.0)) continue;
    OccupationVector ann(static_cast<std::size_t>(m), 0);
    ann[static_cast<std::size_t>(p)] = 1;
    poly.add_term(OccupationVector(static_cast<std::size_t>(m), 0), ann, std::conj(coeff(p)));
  }
  return poly;
}

/// Apply a normal-ordered polynomial to the vacuum and read off amplitudes
/// on the fixed-total-photon basis. Terms with surviving annihilators vanish;
/// a^dag^v|0> = sqrt(v!)|v>.
inline StateVector apply_to_vacuum(const OperatorPolynomial& poly, const FockBasis& basis) {
  if (poly.modes != basis.modes) throw std::invalid_argument("apply_to_vacuum: mode counts differ");
  StateVector psi;
  psi.basis = basis;
  psi.amplitudes = Eigen::VectorXcd::Zero(basis.size());
  for (const auto& [exps, coeff] : poly.terms) {
    const auto& [cre, ann] = exps;
    if (total_photons(ann) != 0) continue;
    if (total_photons(cre) != basis.photons) continue;
    double norm = 1.0;
    for (int v : cre) norm *= static_cast<double>(factorial(v));
    psi.amplitudes(index_of(basis, cre)) += coeff * std::sqrt(norm);
  }
  return psi;
}

/// Output state for the hard-core input whose zero-photon channels are
/// `channels` (1-based, strictly increasing), evolved through the default
/// chain: the transformed annihilators for the empty channels followed by
/// the transformed creators for every mode, applied to the vacuum.
inline StateVector general_output_state(int m, int n, const std::vector<int>& channels,
                                        double theta) {
  if (n < 0 || n > m) throw std::invalid_argument("general_output_state: need 0 <= n <= m");
  if (static_cast<int>(channels.size()) != m - n) {
    throw std::invalid_argument("general_output_state: need exactly m - n zero channels");
  }
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i] < 1 || channels[i] > m || (i > 0 && channels[i] <= channels[i - 1])) {
      throw std::invalid_argument("general_output_state: channels must be strictly increasing in 1..m");
    }
  }
  std::vector<OperatorPolynomial> factors;
  factors.reserve(channels.size() + static_cast<std::size_t>(m));
  for (int k : channels) factors.push_back(transformed_annihilation(m, k, theta));
  for (int k = 1; k <= m; ++k) factors.push_back(transformed_creation(m, k, theta));
  return apply_to_vacuum(expand_product(factors), enumerate_basis(m, n));
}

namespace detail {

inline void for_each_channel_choice(int m, int count, int start, std::vector<int>& prefix,
                                    const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(prefix.size()) == count) {
    fn(prefix);
    return;
  }
  for (int k = start; k <= m; ++k) {
    prefix.push_back(k);
    for_each_channel_choice(m, count, k + 1, prefix, fn);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Uniform average of |phi'><phi'| over all C(m,n) choices of the zero
/// channels: the mixed input evolved through the default chain.
inline DensityOperator general_output_density(int m, int n, double theta) {
  if (n < 0 || n > m) throw std::invalid_argument("general_output_density: need 0 <= n <= m");
  DensityOperator rho;
  rho.basis = enumerate_basis(m, n);
  rho.matrix = Eigen::MatrixXcd::Zero(rho.basis.size(), rho.basis.size());
  const double weight = 1.0 / static_cast<double>(binomial(m, n));
  std::vector<int> prefix;
  detail::for_each_channel_choice(m, m - n, 1, prefix, [&](const std::vector<int>& channels) {
    const StateVector phi = general_output_state(m, n, channels, theta);
    rho.matrix += weight * (phi.amplitudes * phi.amplitudes.adjoint());
  });
  return rho;
}

}  // namespace fockmesh
