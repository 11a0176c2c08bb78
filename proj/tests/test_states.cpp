#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fockmesh/lift.hpp"
#include "fockmesh/states.hpp"

using namespace fockmesh;

TEST_CASE("mixed_input is the uniform hard-core mixture") {
  const DensityOperator rho = mixed_input(3, 2);
  CHECK(std::abs(rho.trace_real() - 1.0) <= 1e-14);
  for (const auto& occ : hardcore_vectors(3, 2)) {
    CHECK(std::abs(rho.matrix(index_of(rho.basis, occ), index_of(rho.basis, occ)) -
                   Complex(1.0 / 3.0, 0.0)) < 1e-14);
  }
  CHECK(std::abs(rho.matrix(index_of(rho.basis, {2, 0, 0}), index_of(rho.basis, {2, 0, 0}))) <
        1e-15);

  const DensityOperator pure = mixed_input(4, 4);
  CHECK(std::abs(pure.matrix(index_of(pure.basis, {1, 1, 1, 1}),
                             index_of(pure.basis, {1, 1, 1, 1})) -
                 1.0) < 1e-14);

  const DensityOperator six = mixed_input(4, 2);
  for (const auto& occ : hardcore_vectors(4, 2)) {
    CHECK(std::abs(six.matrix(index_of(six.basis, occ), index_of(six.basis, occ)) -
                   Complex(1.0 / 6.0, 0.0)) < 1e-14);
  }

  CHECK_THROWS_AS(mixed_input(3, 4), std::invalid_argument);
}

TEST_CASE("reduced basis spans all kept-mode totals") {
  const ReducedBasis rb = reduced_basis(2);
  REQUIRE(rb.size() == 6);
  REQUIRE(rb.states[0] == OccupationVector{0, 0});
  REQUIRE(rb.index.at({1, 1}) == 4);
  for (int n = 0; n <= 5; ++n) {
    CHECK(reduced_basis(n).size() == static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  }
}

TEST_CASE("partial_trace: identity network and pure products") {
  const ReducedDensityOperator red = partial_trace(mixed_input(3, 2), {1, 2});
  CHECK(std::abs(red.trace_real() - 1.0) <= 1e-12);
  CHECK(std::abs(red.matrix(red.basis.index.at({1, 0}), red.basis.index.at({1, 0})) -
                 Complex(1.0 / 3.0, 0.0)) < 1e-14);
  CHECK(std::abs(red.matrix(red.basis.index.at({0, 1}), red.basis.index.at({0, 1})) -
                 Complex(1.0 / 3.0, 0.0)) < 1e-14);
  CHECK(std::abs(red.matrix(red.basis.index.at({1, 1}), red.basis.index.at({1, 1})) -
                 Complex(1.0 / 3.0, 0.0)) < 1e-14);

  DensityOperator pure;
  pure.basis = enumerate_basis(3, 2);
  pure.matrix = Eigen::MatrixXcd::Zero(6, 6);
  pure.matrix(index_of(pure.basis, {1, 0, 1}), index_of(pure.basis, {1, 0, 1})) = 1.0;
  const ReducedDensityOperator keep13 = partial_trace(pure, {1, 3});
  CHECK(std::abs(keep13.matrix(keep13.basis.index.at({1, 1}), keep13.basis.index.at({1, 1})) -
                 1.0) < 1e-14);

  CHECK_THROWS_AS(partial_trace(pure, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(pure, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(pure, {1, 4}), std::invalid_argument);
}

TEST_CASE("target states") {
  const TargetState psi_plus = target_state(TargetKind::PsiPlus, 2);
  CHECK(std::abs(psi_plus.amplitudes(psi_plus.basis.index.at({1, 0})) - 1.0 / std::sqrt(2.0)) <
        1e-15);
  CHECK(std::abs(psi_plus.amplitudes(psi_plus.basis.index.at({0, 1})) - 1.0 / std::sqrt(2.0)) <
        1e-15);
  CHECK(std::abs(psi_plus.amplitudes.norm() - 1.0) < 1e-14);

  const TargetState phi_minus = target_state(TargetKind::PhiMinus, 2);
  CHECK(std::abs(phi_minus.amplitudes(phi_minus.basis.index.at({0, 0})) - 1.0 / std::sqrt(2.0)) <
        1e-15);
  CHECK(std::abs(phi_minus.amplitudes(phi_minus.basis.index.at({1, 1})) + 1.0 / std::sqrt(2.0)) <
        1e-15);

  const TargetState noon1 = target_state(TargetKind::NoonPlus, 1);
  const TargetState psi1 = target_state(TargetKind::PsiPlus, 1);
  CHECK((noon1.amplitudes - psi1.amplitudes).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(target_state(TargetKind::NoonPlus, 0), std::invalid_argument);
}

TEST_CASE("probability: diagonal mixture and evolved oracle values") {
  const ReducedDensityOperator red0 = partial_trace(mixed_input(3, 2), {1, 2});
  CHECK(std::abs(probability(red0, target_state(TargetKind::PsiPlus, 2)) - 1.0 / 3.0) <= 1e-12);

  const DensityOperator out =
      evolve_network(mixed_input(3, 2), NetworkSpec::chain(3, M_PI / 4));
  const ReducedDensityOperator red = partial_trace(out, {1, 2});
  CHECK(std::abs(probability(red, target_state(TargetKind::PsiPlus, 2)) - 0.125) <= 1e-9);
  CHECK(std::abs(probability(red, target_state(TargetKind::NoonPlus, 2)) - 13.0 / 48.0) <= 1e-9);
}

TEST_CASE("partial trace invariants across angles") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 8; ++trial) {
    const double theta = angle(rng);
    const DensityOperator out = evolve_network(mixed_input(4, 2), NetworkSpec::chain(4, theta));
    for (auto keep : {std::pair<int, int>{1, 2}, {1, 3}, {2, 4}, {3, 4}}) {
      const ReducedDensityOperator red = partial_trace(out, keep);
      CHECK(std::abs(red.trace_real() - out.trace_real()) <= 1e-12);
      CHECK(red.hermiticity_defect() <= 1e-12);
      CHECK(red.min_eigenvalue() >= -1e-10);
      // Photon-number conservation makes the reduced state block-diagonal
      // across kept-mode totals.
      for (std::size_t i = 0; i < red.basis.size(); ++i) {
        for (std::size_t j = 0; j < red.basis.size(); ++j) {
          if (total_photons(red.basis.states[i]) != total_photons(red.basis.states[j])) {
            CHECK(std::abs(red.matrix(i, j)) <= 1e-12);
          }
        }
      }
      CHECK(std::abs(probability(red, target_state(TargetKind::PhiPlus, 2)) -
                     probability(red, target_state(TargetKind::PhiMinus, 2))) <= 1e-12);
    }
  }
}

TEST_CASE("swapping the kept pair conjugates by the two-mode swap") {
  const DensityOperator out = evolve_network(mixed_input(3, 2), NetworkSpec::chain(3, 0.9));
  const ReducedDensityOperator ab = partial_trace(out, {1, 2});
  const ReducedDensityOperator ba = partial_trace(out, {2, 1});
  for (std::size_t i = 0; i < ab.basis.size(); ++i) {
    for (std::size_t j = 0; j < ab.basis.size(); ++j) {
      const auto& vi = ab.basis.states[i];
      const auto& vj = ab.basis.states[j];
      const std::size_t si = ba.basis.index.at({vi[1], vi[0]});
      const std::size_t sj = ba.basis.index.at({vj[1], vj[0]});
      CHECK(std::abs(ab.matrix(i, j) - ba.matrix(si, sj)) <= 1e-13);
    }
  }
}
