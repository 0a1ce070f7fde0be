#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace tuplesieve {

struct Basis {
  int d = 0;
  std::vector<std::vector<std::int64_t>> rows;  // basis vectors b_1..b_d
};

// A lattice point carries its exact integer coefficient vector alongside the
// ambient integer coordinates: membership stays exact over millions of
// additions, floating arithmetic is used only for norms and angles.
struct LatticeVector {
  std::vector<std::int64_t> coords;
  std::vector<std::int64_t> coeffs;
  double norm_sq = 0.0;

  void recompute_norm();
  bool is_zero() const;
};

LatticeVector make_lattice_vector(const Basis& b, std::vector<std::int64_t> coeffs);
LatticeVector add_signed(const LatticeVector& x, const LatticeVector& y, int sign);
Vec normalized_coords(const LatticeVector& x);

/// Parse the bracketed SVP-challenge-style format:
/// '[' ( '[' int (ws int)* ']' )+ ']' with optional whitespace anywhere
/// between tokens. Throws ParseError for malformed text and
/// std::domain_error for non-square or dependent rows.
Basis parse_basis(const std::string& text);
std::string format_basis(const Basis& b);
Basis read_basis_file(const std::string& path);

struct Gso {
  std::vector<std::vector<long double>> bstar;  // orthogonalized vectors
  std::vector<std::vector<long double>> mu;     // mu[i][j], j < i
  std::vector<long double> bstar_sq;            // squared norms
};

Gso gram_schmidt(const Basis& b);

/// In-place LLL reduction with Lovasz parameter delta in (0.25, 1).
void lll_reduce(Basis& b, double delta = 0.99);

/// |det B|^{1/d} * sqrt(d / (2 pi e)): the Gaussian heuristic length estimate.
double gaussian_heuristic(const Basis& b);

/// Klein-style randomized-rounding sampler of lattice points around 0.
/// Requires sigma >= max_i ||b*_i|| (sampler quality is not guaranteed below).
LatticeVector klein_sample(const Basis& b, const Gso& gso, double sigma, Rng& rng);

}  // namespace tuplesieve
