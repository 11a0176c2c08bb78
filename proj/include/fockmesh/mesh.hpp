#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fockmesh/fock.hpp"

namespace fockmesh {

using Complex = std::complex<double>;

/// Integer power by repeated multiplication; exact at e = 0 even for a zero
/// base, unlike std::pow on complex operands.
inline Complex cpow(Complex base, int e) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// One beam splitter: transmission cos(theta), reflection i*sin(theta),
/// acting on the ordered mode pair (mode_a, mode_b). Indices are 1-based.
struct BeamSplitterSpec {
  int mode_a = 1;
  int mode_b = 2;
  double theta = 0.0;
};

/// An ordered sequence of beam splitters on m modes, applied left to right.
struct NetworkSpec {
  int modes = 0;
  std::vector<BeamSplitterSpec> splitters;

  /// The sequential nearest-neighbor chain (1,2),(2,3),...,(m-1,m) with one
  /// shared angle.
  static NetworkSpec chain(int m, double theta) {
    if (m < 1) throw std::invalid_argument("NetworkSpec::chain: mode count must be >= 1");
    NetworkSpec net;
    net.modes = m;
    net.splitters.reserve(static_cast<std::size_t>(m > 0 ? m - 1 : 0));
    for (int k = 1; k < m; ++k) net.splitters.push_back({k, k + 1, theta});
    return net;
  }

  void validate() const {
    if (modes < 1) throw std::invalid_argument("NetworkSpec: mode count must be >= 1");
    for (const auto& bs : splitters) {
      if (bs.mode_a < 1 || bs.mode_b <= bs.mode_a || bs.mode_b > modes) {
        throw std::invalid_argument("NetworkSpec: splitter indices must satisfy 1 <= a < b <= m");
      }
      if (!std::isfinite(bs.theta)) throw std::invalid_argument("NetworkSpec: theta must be finite");
    }
  }
};

/// m x m unitary on creation-operator coefficients, row convention
/// a_k^dag -> sum_p T(k,p) a_p^dag (0-based indices internally).
struct TransferMatrix {
  Eigen::MatrixXcd T;

  int modes() const { return static_cast<int>(T.rows()); }

  double unitarity_defect() const {
    Eigen::MatrixXcd d = T * T.adjoint() - Eigen::MatrixXcd::Identity(T.rows(), T.cols());
    return d.cwiseAbs().maxCoeff();
  }
};

inline TransferMatrix bs_transfer(int m, const BeamSplitterSpec& spec) {
  if (spec.mode_a < 1 || spec.mode_b <= spec.mode_a || spec.mode_b > m) {
    throw std::invalid_argument("bs_transfer: splitter indices out of range");
  }
  TransferMatrix tm;
  tm.T = Eigen::MatrixXcd::Identity(m, m);
  const int a = spec.mode_a - 1;
  const int b = spec.mode_b - 1;
  const double c = std::cos(spec.theta);
  const Complex is(0.0, std::sin(spec.theta));
  tm.T(a, a) = c;
  tm.T(a, b) = is;
  tm.T(b, a) = is;
  tm.T(b, b) = c;
  return tm;
}

/// Sequential substitution: applying splitter A then splitter B gives
/// T = T_A * T_B under the row convention.
inline TransferMatrix compose_chain(const NetworkSpec& network) {
  network.validate();
  TransferMatrix tm;
  tm.T = Eigen::MatrixXcd::Identity(network.modes, network.modes);
  for (const auto& bs : network.splitters) {
    tm.T = tm.T * bs_transfer(network.modes, bs).T;
  }
  return tm;
}

/// Coefficients of the transformed creation operator a_k^dag' through the
/// default chain, in closed form: the a_{k-1} reflection term, the interior
/// run with cos^(2-delta_{1,k}), and the boundary a_m term with
/// cos^(1-delta_{1,k}). Terms referencing mode 0 or empty sums vanish.
inline Eigen::VectorXcd closed_form_column(int m, int k, double theta) {
  if (k < 1 || k > m) throw std::invalid_argument("closed_form_column: need 1 <= k <= m");
  Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(m);
  const double c = std::cos(theta);
  const Complex is(0.0, std::sin(theta));
  const int cos_run = (k == 1) ? 1 : 2;
  const int cos_end = (k == 1) ? 0 : 1;
  if (k >= 2) coeff(k - 2) += is;
  for (int p = k; p <= m - 1; ++p) {
    coeff(p - 1) += cpow(is, p - k) * std::pow(c, cos_run);
  }
  if (m >= k) coeff(m - 1) += cpow(is, m - k) * std::pow(c, cos_end);
  return coeff;
}

/// One labelled term of the coefficient-sum function F: `value` arrived from
/// the transformed operator a_label^dag'.
struct LabelledTerm {
  int label = 0;
  Complex value;
};

struct CoefficientSum {
  std::vector<LabelledTerm> terms;
  Complex sum;
};

/// F(a_k^dag): the sum of the coefficients of a_k^dag across all transformed
/// creation operators of the default chain, with each contribution labelled
/// by its source operator. Equals the k-th column sum of compose_chain.
inline CoefficientSum closed_form_F(int m, int k, double theta) {
  if (k < 1 || k > m) throw std::invalid_argument("closed_form_F: need 1 <= k <= m");
  CoefficientSum f;
  f.sum = Complex(0.0, 0.0);
  // a_j^dag' reaches a_k^dag only for j <= k+1.
  for (int j = 1; j <= std::min(k + 1, m); ++j) {
    Complex v = closed_form_column(m, j, theta)(k - 1);
    if (v != Complex(0.0, 0.0)) {
      f.terms.push_back({j, v});
      f.sum += v;
    }
  }
  return f;
}

}  // namespace fockmesh
