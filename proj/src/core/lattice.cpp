#include "core/lattice.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tuplesieve {

void LatticeVector::recompute_norm() {
  __int128 s = 0;
  for (std::int64_t c : coords) s += static_cast<__int128>(c) * c;
  norm_sq = static_cast<double>(s);
}

bool LatticeVector::is_zero() const {
  for (std::int64_t c : coords)
    if (c != 0) return false;
  return true;
}

LatticeVector make_lattice_vector(const Basis& b, std::vector<std::int64_t> coeffs) {
  LatticeVector v;
  v.coeffs = std::move(coeffs);
  v.coords.assign(b.d, 0);
  for (int i = 0; i < b.d; ++i)
    for (int j = 0; j < b.d; ++j) v.coords[j] += v.coeffs[i] * b.rows[i][j];
  v.recompute_norm();
  return v;
}

LatticeVector add_signed(const LatticeVector& x, const LatticeVector& y, int sign) {
  LatticeVector out;
  const size_t d = x.coords.size();
  out.coords.resize(d);
  out.coeffs.resize(d);
  for (size_t i = 0; i < d; ++i) {
    out.coords[i] = x.coords[i] + sign * y.coords[i];
    out.coeffs[i] = x.coeffs[i] + sign * y.coeffs[i];
  }
  out.recompute_norm();
  return out;
}

Vec normalized_coords(const LatticeVector& x) {
  Vec v(x.coords.begin(), x.coords.end());
  return normalize(v);
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

std::int64_t parse_int(const std::string& s, size_t& pos) {
  skip_ws(s, pos);
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  size_t digits = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits) throw ParseError("parse_basis: expected integer at offset " +
                                      std::to_string(start));
  return std::stoll(s.substr(start, pos - start));
}

}  // namespace

Basis parse_basis(const std::string& text) {
  size_t pos = 0;
  skip_ws(text, pos);
  if (pos >= text.size() || text[pos] != '[') throw ParseError("parse_basis: expected '['");
  ++pos;
  Basis b;
  while (true) {
    skip_ws(text, pos);
    if (pos >= text.size()) throw ParseError("parse_basis: unexpected end of input");
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    if (text[pos] != '[') throw ParseError("parse_basis: expected row '['");
    ++pos;
    std::vector<std::int64_t> row;
    while (true) {
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      row.push_back(parse_int(text, pos));
    }
    if (row.empty()) throw ParseError("parse_basis: empty row");
    b.rows.push_back(std::move(row));
  }
  skip_ws(text, pos);
  if (pos != text.size()) throw ParseError("parse_basis: trailing characters");
  if (b.rows.empty()) throw ParseError("parse_basis: no rows");
  b.d = static_cast<int>(b.rows.size());
  for (const auto& row : b.rows)
    if (static_cast<int>(row.size()) != b.d)
      throw std::domain_error("parse_basis: basis must be square");
  const Gso g = gram_schmidt(b);
  for (int i = 0; i < b.d; ++i)
    if (!(g.bstar_sq[i] > 1e-9))
      throw std::domain_error("parse_basis: rows are linearly dependent");
  return b;
}

std::string format_basis(const Basis& b) {
  std::ostringstream out;
  out << "[";
  for (const auto& row : b.rows) {
    out << "[";
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << " ";
      out << row[j];
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

Basis read_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open basis file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_basis(ss.str());
}

Gso gram_schmidt(const Basis& b) {
  const int d = b.d;
  Gso g;
  g.bstar.assign(d, std::vector<long double>(d, 0.0L));
  g.mu.assign(d, std::vector<long double>(d, 0.0L));
  g.bstar_sq.assign(d, 0.0L);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g.bstar[i][j] = static_cast<long double>(b.rows[i][j]);
    for (int j = 0; j < i; ++j) {
      long double num = 0.0L;
      for (int t = 0; t < d; ++t) num += static_cast<long double>(b.rows[i][t]) * g.bstar[j][t];
      const long double m = g.bstar_sq[j] > 0.0L ? num / g.bstar_sq[j] : 0.0L;
      g.mu[i][j] = m;
      for (int t = 0; t < d; ++t) g.bstar[i][t] -= m * g.bstar[j][t];
    }
    long double s = 0.0L;
    for (int t = 0; t < d; ++t) s += g.bstar[i][t] * g.bstar[i][t];
    g.bstar_sq[i] = s;
  }
  return g;
}

void lll_reduce(Basis& b, double delta) {
  if (!(delta > 0.25) || !(delta < 1.0))
    throw std::domain_error("lll_reduce: delta must be in (0.25, 1)");
  const int d = b.d;
  Gso g = gram_schmidt(b);
  auto size_reduce = [&](int i, int j) {
    const long double m = g.mu[i][j];
    if (std::fabs(static_cast<double>(m)) > 0.5) {
      const std::int64_t q = static_cast<std::int64_t>(std::llroundl(m));
      for (int t = 0; t < d; ++t) b.rows[i][t] -= q * b.rows[j][t];
      for (int t = 0; t < j; ++t) g.mu[i][t] -= static_cast<long double>(q) * g.mu[j][t];
      g.mu[i][j] -= static_cast<long double>(q);
    }
  };
  int k = 1;
  while (k < d) {
    for (int j = k - 1; j >= 0; --j) size_reduce(k, j);
    const long double lhs = g.bstar_sq[k];
    const long double rhs =
        (static_cast<long double>(delta) - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bstar_sq[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b.rows[k], b.rows[k - 1]);
      g = gram_schmidt(b);  // full recompute; fine at the dimensions we target
      k = std::max(k - 1, 1);
    }
  }
}

double gaussian_heuristic(const Basis& b) {
  const Gso g = gram_schmidt(b);
  long double log_det = 0.0L;
  for (int i = 0; i < b.d; ++i) log_det += 0.5L * std::log(g.bstar_sq[i]);
  const double root_det = static_cast<double>(std::exp(log_det / b.d));
  return root_det * std::sqrt(b.d / (2.0 * M_PI * M_E));
}

LatticeVector klein_sample(const Basis& b, const Gso& gso, double sigma, Rng& rng) {
  const int d = b.d;
  long double max_bstar = 0.0L;
  for (int i = 0; i < d; ++i) max_bstar = std::max(max_bstar, std::sqrt(gso.bstar_sq[i]));
  if (!(sigma >= static_cast<double>(max_bstar)))
    throw std::domain_error("klein_sample: sigma too small for sampler quality");

  std::vector<std::int64_t> coeffs(d, 0);
  // randomized rounding from the last coordinate down, Klein/GPV style
  std::vector<long double> target(d, 0.0L);  // remaining target in ambient coords
  for (int i = d - 1; i >= 0; --i) {
    long double dotv = 0.0L;
    for (int t = 0; t < d; ++t) dotv += target[t] * gso.bstar[i][t];
    const long double center = dotv / gso.bstar_sq[i];
    const double s_i = sigma / static_cast<double>(std::sqrt(gso.bstar_sq[i]));
    std::normal_distribution<double> gauss(static_cast<double>(center), s_i);
    const std::int64_t z = static_cast<std::int64_t>(std::llround(gauss(rng)));
    coeffs[i] = z;
    for (int t = 0; t < d; ++t) target[t] -= static_cast<long double>(z) * b.rows[i][t];
  }
  return make_lattice_vector(b, coeffs);
}

}  // namespace tuplesieve
