#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockmesh {

/// Photon count per mode. Entry k is the occupation of mode k+1.
using OccupationVector = std::vector<int>;

inline int total_photons(const OccupationVector& occ) {
  int total = 0;
  for (int v : occ) total += v;
  return total;
}

inline std::string to_string(const OccupationVector& occ) {
  std::string s = "|";
  for (int v : occ) s += std::to_string(v);
  s += ">";
  return s;
}

// Exact integer combinatorics. Supported up to m + n <= 40, where every
// binomial and factorial used below fits in 64 bits.
inline std::uint64_t factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  if (n > 20) throw std::invalid_argument("factorial: argument too large for exact arithmetic");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

/// All occupation vectors for m modes with fixed total photon number n,
/// in lexicographic-descending order, with an index for reverse lookup.
struct FockBasis {
  int modes = 0;
  int photons = 0;
  std::vector<OccupationVector> states;
  std::map<OccupationVector, std::size_t> index;

  std::size_t size() const { return states.size(); }
};

namespace detail {

inline void enumerate_rec(int modes_left, int photons_left, OccupationVector& prefix,
                          std::vector<OccupationVector>& out) {
  if (modes_left == 1) {
    prefix.push_back(photons_left);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = photons_left; k >= 0; --k) {
    prefix.push_back(k);
    enumerate_rec(modes_left - 1, photons_left - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

inline FockBasis enumerate_basis(int m, int n) {
  if (m < 1) throw std::invalid_argument("enumerate_basis: mode count must be >= 1");
  if (n < 0) throw std::invalid_argument("enumerate_basis: photon number must be >= 0");
  if (m + n > 40) throw std::invalid_argument("enumerate_basis: m + n exceeds supported size");
  FockBasis basis;
  basis.modes = m;
  basis.photons = n;
  OccupationVector prefix;
  prefix.reserve(static_cast<std::size_t>(m));
  detail::enumerate_rec(m, n, prefix, basis.states);
  for (std::size_t p = 0; p < basis.states.size(); ++p) basis.index[basis.states[p]] = p;
  return basis;
}

/// The C(m,n) vectors with entries in {0,1} summing to n, in the same
/// lexicographic-descending order as enumerate_basis.
inline std::vector<OccupationVector> hardcore_vectors(int m, int n) {
  if (m < 1) throw std::invalid_argument("hardcore_vectors: mode count must be >= 1");
  if (n < 0 || n > m) throw std::invalid_argument("hardcore_vectors: need 0 <= n <= m");
  std::vector<OccupationVector> out;
  out.reserve(static_cast<std::size_t>(binomial(m, n)));
  for (const auto& occ : enumerate_basis(m, n).states) {
    if (std::all_of(occ.begin(), occ.end(), [](int v) { return v <= 1; })) out.push_back(occ);
  }
  return out;
}

inline std::size_t index_of(const FockBasis& basis, const OccupationVector& occ) {
  auto it = basis.index.find(occ);
  if (it == basis.index.end()) {
    throw std::out_of_range("index_of: occupation vector " + to_string(occ) + " not in basis");
  }
  return it->second;
}

}  // namespace fockmesh
