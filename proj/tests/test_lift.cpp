#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fockmesh/lift.hpp"

using namespace fockmesh;

namespace {
const Complex kI(0.0, 1.0);

Complex amp(const StateVector& psi, const OccupationVector& occ) {
  return psi.amplitudes(index_of(psi.basis, occ));
}
}  // namespace

TEST_CASE("permanent: small cases") {
  Eigen::MatrixXcd a(2, 2);
  a << Complex(1, 1), Complex(2, 0), Complex(0, 3), Complex(-1, 0);
  CHECK(std::abs(permanent(a) - (a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0))) < 1e-14);

  CHECK(std::abs(permanent(Eigen::MatrixXcd(0, 0)) - 1.0) < 1e-15);

  const double theta = 0.77;
  Eigen::MatrixXcd bs(2, 2);
  bs << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta);
  CHECK(std::abs(permanent(bs) - std::cos(2 * theta)) < 1e-14);

  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
}

TEST_CASE("permanent agrees with naive expansion on random matrices") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 6; ++k) {
    Eigen::MatrixXcd a(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) a(i, j) = Complex(u(rng), u(rng));
    }
    // Independent oracle: sum over permutations.
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    Complex naive(0.0, 0.0);
    do {
      Complex prod(1.0, 0.0);
      for (int i = 0; i < k; ++i) prod *= a(i, perm[static_cast<std::size_t>(i)]);
      naive += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(std::abs(permanent(a) - naive) < 1e-12);
  }
}

TEST_CASE("lift_unitary reproduces the two-mode transformation rules") {
  const double theta = 0.53;
  const FockBasis b22 = enumerate_basis(2, 2);
  const FockOperator op = lift_unitary(bs_transfer(2, {1, 2, theta}), b22);
  CHECK(op.unitarity_defect() <= 1e-10);

  // |11> -> (|20> + |02>) i sin(2 theta)/sqrt(2) + cos(2 theta)|11>
  const std::size_t in11 = index_of(b22, {1, 1});
  CHECK(std::abs(op.matrix(index_of(b22, {2, 0}), in11) -
                 kI * std::sin(2 * theta) / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(op.matrix(index_of(b22, {0, 2}), in11) -
                 kI * std::sin(2 * theta) / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(op.matrix(in11, in11) - std::cos(2 * theta)) < 1e-14);

  // |20> -> cos^2|20> - sin^2|02> + i sin(2 theta)/sqrt(2)|11>
  const std::size_t in20 = index_of(b22, {2, 0});
  CHECK(std::abs(op.matrix(index_of(b22, {0, 2}), in20) + std::sin(theta) * std::sin(theta)) <
        1e-14);
  CHECK(std::abs(op.matrix(index_of(b22, {2, 0}), in20) - std::cos(theta) * std::cos(theta)) <
        1e-14);
  CHECK(std::abs(op.matrix(in11, in20) - kI * std::sin(2 * theta) / std::sqrt(2.0)) < 1e-14);

  TransferMatrix identity;
  identity.T = Eigen::MatrixXcd::Identity(2, 2);
  const FockOperator lifted_id = lift_unitary(identity, b22);
  CHECK((lifted_id.matrix - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(lift_unitary(identity, enumerate_basis(3, 2)), std::invalid_argument);
}

TEST_CASE("apply_bs_sequential: single photon and Hong-Ou-Mandel") {
  const double theta = 1.1;
  const FockBasis b21 = enumerate_basis(2, 1);
  const StateVector one = apply_bs_sequential(basis_state(b21, {1, 0}), {1, 2, theta});
  CHECK(std::abs(amp(one, {1, 0}) - std::cos(theta)) < 1e-14);
  CHECK(std::abs(amp(one, {0, 1}) - kI * std::sin(theta)) < 1e-14);

  const FockBasis b22 = enumerate_basis(2, 2);
  const StateVector hom = apply_bs_sequential(basis_state(b22, {1, 1}), {1, 2, M_PI / 4});
  CHECK(std::abs(amp(hom, {1, 1})) < 1e-14);
  CHECK(std::abs(amp(hom, {2, 0}) - kI / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(amp(hom, {0, 2}) - kI / std::sqrt(2.0)) < 1e-14);

  CHECK_THROWS_AS(apply_bs_sequential(basis_state(b22, {1, 1}), {1, 3, 0.1}), std::out_of_range);
}

TEST_CASE("|101> through the (3,2) chain at theta = pi/4") {
  const FockBasis b32 = enumerate_basis(3, 2);
  StateVector psi = basis_state(b32, {1, 0, 1});
  psi = apply_bs_sequential(psi, {1, 2, M_PI / 4});
  psi = apply_bs_sequential(psi, {2, 3, M_PI / 4});
  CHECK(std::abs(amp(psi, {1, 1, 0}) - kI / 2.0) < 1e-14);
  CHECK(std::abs(amp(psi, {1, 0, 1}) - 0.5) < 1e-14);
  CHECK(std::abs(amp(psi, {0, 1, 1})) < 1e-14);
  CHECK(std::abs(amp(psi, {0, 2, 0}) + 0.5) < 1e-14);
  CHECK(std::abs(amp(psi, {0, 0, 2}) + 0.5) < 1e-14);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
}

TEST_CASE("worked-example oracle: U23 U12 |101> coefficients at random angles") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const FockBasis b32 = enumerate_basis(3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = angle(rng);
    const NetworkSpec net = NetworkSpec::chain(3, t);
    const double c = std::cos(t);
    const double s = std::sin(t);
    for (Backend backend : {Backend::Permanent, Backend::Sequential}) {
      const StateVector psi = evolve_network(basis_state(b32, {1, 0, 1}), net, backend);
      CHECK(std::abs(amp(psi, {1, 1, 0}) - kI * c * s) <= 1e-12);
      CHECK(std::abs(amp(psi, {1, 0, 1}) - c * c) <= 1e-12);
      CHECK(std::abs(amp(psi, {0, 1, 1}) - kI * s * std::cos(2 * t)) <= 1e-12);
      CHECK(std::abs(amp(psi, {0, 2, 0}) + s * std::sin(2 * t) / std::sqrt(2.0)) <= 1e-12);
      CHECK(std::abs(amp(psi, {0, 0, 2}) + s * std::sin(2 * t) / std::sqrt(2.0)) <= 1e-12);
    }
  }
}

TEST_CASE("|110> coefficient of |200> and |011> through the (3,2) chain") {
  const double theta = 0.91;
  const FockBasis b32 = enumerate_basis(3, 2);
  const NetworkSpec net = NetworkSpec::chain(3, theta);
  for (Backend backend : {Backend::Permanent, Backend::Sequential}) {
    const StateVector psi = evolve_network(basis_state(b32, {1, 1, 0}), net, backend);
    CHECK(std::abs(amp(psi, {2, 0, 0}) - kI * std::sin(2 * theta) / std::sqrt(2.0)) <= 1e-12);
    // The |011> coefficient is -sin^2(2 theta)/2 from both backends; chaining
    // the two-mode rules by hand gives the same sign.
    const double s2 = std::sin(2 * theta);
    CHECK(std::abs(amp(psi, {0, 1, 1}) + s2 * s2 / 2.0) <= 1e-12);
  }
  const StateVector quarter =
      evolve_network(basis_state(b32, {1, 1, 0}), NetworkSpec::chain(3, M_PI / 4),
                     Backend::Sequential);
  CHECK(std::abs(amp(quarter, {0, 1, 1}) + 0.5) <= 1e-12);
}

TEST_CASE("backend equivalence on random angles") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= m; ++n) {
      const FockBasis basis = enumerate_basis(m, n);
      const double theta = angle(rng);
      const NetworkSpec net = NetworkSpec::chain(m, theta);
      for (const auto& occ : basis.states) {
        const StateVector p = evolve_network(basis_state(basis, occ), net, Backend::Permanent);
        const StateVector q = evolve_network(basis_state(basis, occ), net, Backend::Sequential);
        CHECK((p.amplitudes - q.amplitudes).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("evolved density operators stay physical") {
  const DensityOperator rho = mixed_input(3, 2);
  const DensityOperator still = evolve_network(rho, NetworkSpec::chain(3, 0.0));
  CHECK((still.matrix - rho.matrix).cwiseAbs().maxCoeff() <= 1e-12);

  for (double theta : {0.2, 1.3, 2.9}) {
    const DensityOperator out = evolve_network(rho, NetworkSpec::chain(3, theta));
    CHECK(std::abs(out.trace_real() - 1.0) <= 1e-10);
    CHECK(out.hermiticity_defect() <= 1e-12);
    CHECK(out.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("mode-count mismatches are rejected") {
  const FockBasis b32 = enumerate_basis(3, 2);
  CHECK_THROWS_AS(evolve_network(basis_state(b32, {1, 0, 1}), NetworkSpec::chain(4, 0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve_network(basis_state(b32, {1, 0, 1}), NetworkSpec::chain(3, 0.5),
                                 Backend::Symbolic),
                  std::invalid_argument);
}
