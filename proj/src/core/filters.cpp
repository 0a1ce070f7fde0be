#include "core/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tuplesieve {

namespace {

constexpr std::int64_t kMaxFilters = std::int64_t(1) << 31;

// Resample the product code of `plan` so that it covers at least f_req
// filters: B = ceil(f_req^{1/m}) codewords per block, f = B^m.
void build_code(FilterPlan& plan, std::int64_t f_req, Rng& rng) {
  auto& code = plan.code;
  code.block_size = std::max<int>(
      1, static_cast<int>(std::ceil(std::pow(static_cast<double>(f_req), 1.0 / code.blocks))));
  plan.f = 1;
  for (int b = 0; b < code.blocks; ++b) plan.f *= code.block_size;

  code.block_offsets.resize(code.blocks + 1);
  for (int b = 0; b <= code.blocks; ++b)
    code.block_offsets[b] = static_cast<int>(static_cast<std::int64_t>(b) * plan.d / code.blocks);

  // Per-block codewords: independent spherical sub-vectors scaled to 1/sqrt(m)
  // so that any concatenation is a unit vector.
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double block_scale = 1.0 / std::sqrt(static_cast<double>(code.blocks));
  code.codewords.assign(code.blocks, {});
  for (int b = 0; b < code.blocks; ++b) {
    const int len = code.block_offsets[b + 1] - code.block_offsets[b];
    code.codewords[b].resize(code.block_size);
    for (int j = 0; j < code.block_size; ++j) {
      Vec& w = code.codewords[b][j];
      w.resize(len);
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (auto& x : w) {
          x = gauss(rng);
          n2 += x * x;
        }
      } while (n2 == 0.0);
      const double s = block_scale / std::sqrt(n2);
      for (auto& x : w) x *= s;
    }
  }
}

// Fraction of planted pairs at the plan's acute angle that share a bucket
// with a consistent side, measured on the plan's actual code (decode only,
// nothing is stored).
double measured_recall(const FilterPlan& plan, double acute, int trials, Rng& rng) {
  const FilterIndex probe(plan);
  const double ct = std::cos(acute), st = std::sin(acute);
  auto key = [](const std::pair<std::uint32_t, int>& h) {
    return (static_cast<std::uint64_t>(h.first) << 1) | (h.second > 0 ? 1u : 0u);
  };
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Vec p = sample_uniform(plan.d, rng);
    Vec w = sample_uniform(plan.d, rng);
    const double c = dot(w, p);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * p[i];
    normalize(w);
    Vec q(plan.d);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = ct * p[i] + st * w[i];

    std::vector<std::uint64_t> a, b;
    for (const auto& h : probe.relevant_filters_signed(p, plan.alpha_u)) a.push_back(key(h));
    for (const auto& h : probe.relevant_filters_signed(q, plan.alpha_q)) b.push_back(key(h));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::uint64_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (!both.empty()) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

}  // namespace

FilterPlan make_plan(int d, std::int64_t n, double theta, double beta, double recall_target,
                     Rng& rng) {
  if (d < 2) throw std::domain_error("make_plan: d must be >= 2");
  if (n < 1) throw std::domain_error("make_plan: n must be >= 1");
  if (!(theta > 0.0) || !(theta < M_PI))
    throw std::domain_error("make_plan: theta must be in (0, pi)");
  if (!(recall_target > 0.0) || !(recall_target < 1.0))
    throw std::domain_error("make_plan: recall target must be in (0, 1)");

  FilterPlan plan;
  plan.d = d;
  plan.n = n;
  plan.theta = theta;
  plan.beta = beta;
  plan.recall_target = recall_target;

  const double c = std::log2(static_cast<double>(n)) / d;
  plan.alpha_u = std::sqrt(std::max(0.0, 1.0 - std::exp2(-2.0 * c)));

  const double acute = theta > M_PI / 2 ? M_PI - theta : theta;
  const double beta_min = std::cos(acute);
  const double beta_max = plan.alpha_u > 0.0 ? 1.0 / plan.alpha_u : 1.0 / beta_min;
  if (beta < beta_min - 1e-12 || !(beta * plan.alpha_u < 1.0)) {
    throw std::domain_error("make_plan: beta outside admissible interval [" +
                            std::to_string(beta_min) + ", " + std::to_string(beta_max) + ")");
  }
  plan.alpha_q = std::min(beta * plan.alpha_u, 1.0 - 1e-12);

  std::int64_t f_req = 1;
  if (plan.alpha_u > 0.0 || plan.alpha_q > 0.0) {
    const WedgeParams wedge{plan.alpha_q, plan.alpha_u, acute};
    const double w_exp = wedge_exponent(wedge);  // also validates nonemptiness
    // Collision probability of a planted pair against one random filter,
    // counting both signs of the filter. The exact finite-d volume matters:
    // the asymptotic 2^{d w} drops a poly(d) prefactor and would undersize the
    // code by that factor.
    const double p_col =
        2.0 * (d >= 4 ? exact_wedge_fraction(d, wedge) : std::exp2(d * w_exp));
    const double filters_needed =
        p_col > 0.0 ? std::log(1.0 / (1.0 - recall_target)) / p_col : 2.0 * kMaxFilters;
    if (!(filters_needed <= static_cast<double>(kMaxFilters)))
      throw InfeasibleError("make_plan: required filter count exceeds limit");
    f_req = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(filters_needed)));
  }

  if (c > 0.0) {
    try {
      const RhoPair r = rho_exponents(c, acute, std::fabs(beta));
      plan.rho_u_pred = r.rho_u;
      plan.rho_q_pred = r.rho_q;
    } catch (const std::domain_error&) {
      // prediction is reporting-only; leave zeros outside the model's valid range
    }
  }

  // Blocks long enough (>= 16 coordinates) keep the structured code close to
  // independent filters; the log2(d) choice only kicks in at large d.
  auto& code = plan.code;
  code.blocks = std::max(
      2, std::min(static_cast<int>(std::lround(std::log2(static_cast<double>(d)))), d / 16));
  code.blocks = std::min(code.blocks, d);
  build_code(plan, f_req, rng);

  // The independent-filter estimate is an upper bound on the structured
  // code's collision probability; enlarge the code until the measured recall
  // reaches the target. The expected collision count lambda scales linearly
  // in f, so the shortfall in -ln(1 - recall) gives the multiplier directly
  // (clamped, with a small markup so rounds converge despite sampling noise).
  if (plan.alpha_u > 0.0 && plan.f > 1) {
    const double accept = std::min(0.98, recall_target + 0.02);
    const double lambda_goal = std::log(1.0 / (1.0 - accept));
    for (;;) {
      const double r = measured_recall(plan, acute, 384, rng);
      if (r >= accept) break;
      const double lambda_meas = std::log(1.0 / (1.0 - std::min(r, 0.995)));
      const double mult =
          std::clamp(1.05 * lambda_goal / std::max(lambda_meas, 1e-3), 1.15, 2.2);
      const auto f_next = static_cast<std::int64_t>(
          std::ceil(static_cast<double>(plan.f) * mult));
      if (f_next > kMaxFilters)
        throw InfeasibleError("make_plan: required filter count exceeds limit");
      build_code(plan, f_next, rng);
    }
  }
  return plan;
}

void FilterIndex::decode_side(
    const std::vector<std::vector<std::pair<double, int>>>& sorted_scores, double alpha, int side,
    std::vector<std::pair<std::uint32_t, int>>& out) const {
  const int m = plan_.code.blocks;
  const int B = plan_.code.block_size;
  // suffix_max[b] = max achievable score over blocks b..m-1
  std::vector<double> suffix_max(m + 1, 0.0);
  for (int b = m - 1; b >= 0; --b) {
    const double top = side > 0 ? sorted_scores[b].front().first : -sorted_scores[b].back().first;
    suffix_max[b] = suffix_max[b + 1] + top;
  }
  std::vector<int> choice(m, 0);
  auto dfs = [&](auto&& self, int b, double acc) -> void {
    if (b == m) {
      std::uint32_t id = 0;
      for (int bb = 0; bb < m; ++bb) id = id * B + choice[bb];
      out.emplace_back(id, side);
      return;
    }
    for (int pos = 0; pos < B; ++pos) {
      // iterate block scores from best to worst for this side
      const auto& sc = side > 0 ? sorted_scores[b][pos] : sorted_scores[b][B - 1 - pos];
      const double s = side > 0 ? sc.first : -sc.first;
      if (acc + s + suffix_max[b + 1] < alpha) break;  // sorted: rest are worse
      choice[b] = sc.second;
      self(self, b + 1, acc + s);
    }
  };
  dfs(dfs, 0, 0.0);
}

std::vector<std::pair<std::uint32_t, int>> FilterIndex::relevant_filters_signed(
    const Vec& v, double alpha) const {
  if (static_cast<int>(v.size()) != plan_.d)
    throw std::domain_error("FilterIndex: dimension mismatch");
  const int m = plan_.code.blocks;
  const int B = plan_.code.block_size;
  std::vector<std::vector<std::pair<double, int>>> scores(m);
  for (int b = 0; b < m; ++b) {
    const int off = plan_.code.block_offsets[b];
    scores[b].resize(B);
    for (int j = 0; j < B; ++j) {
      const Vec& w = plan_.code.codewords[b][j];
      double s = 0.0;
      for (size_t t = 0; t < w.size(); ++t) s += w[t] * v[off + t];
      scores[b][j] = {s, j};
    }
    std::sort(scores[b].begin(), scores[b].end(),
              [](const auto& a, const auto& c) { return a.first > c.first; });
  }
  std::vector<std::pair<std::uint32_t, int>> out;
  decode_side(scores, alpha, +1, out);
  decode_side(scores, alpha, -1, out);
  // both sides can fire for the same filter only when alpha <= 0
  if (alpha <= 0.0) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
  }
  return out;
}

std::vector<std::uint32_t> FilterIndex::relevant_filters(const Vec& v, double alpha) const {
  std::vector<std::uint32_t> ids;
  for (const auto& [id, side] : relevant_filters_signed(v, alpha)) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Vec FilterIndex::filter_vector(std::uint32_t filter_id) const {
  const int m = plan_.code.blocks;
  const int B = plan_.code.block_size;
  std::vector<int> idx(m);
  std::uint32_t rest = filter_id;
  for (int b = m - 1; b >= 0; --b) {
    idx[b] = rest % B;
    rest /= B;
  }
  Vec u(plan_.d, 0.0);
  for (int b = 0; b < m; ++b) {
    const int off = plan_.code.block_offsets[b];
    const Vec& w = plan_.code.codewords[b][idx[b]];
    for (size_t t = 0; t < w.size(); ++t) u[off + t] = w[t];
  }
  return u;
}

void FilterIndex::insert(std::int64_t id, const Vec& p) {
  if (entries_.count(id)) throw std::invalid_argument("FilterIndex::insert: duplicate id");
  const auto rel = relevant_filters_signed(p, plan_.alpha_u);
  for (const auto& [fid, side] : rel)
    buckets_.insert(fid, (id << 1) | (side > 0 ? 1 : 0));
  entries_.emplace(id, p);
  total_entries_ += rel.size();
  peak_entries_ = std::max(peak_entries_, total_entries_);
}

void FilterIndex::remove(std::int64_t id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw std::invalid_argument("FilterIndex::remove: unknown id");
  const auto rel = relevant_filters_signed(it->second, plan_.alpha_u);
  for (const auto& [fid, side] : rel) {
    const std::int64_t token = (id << 1) | (side > 0 ? 1 : 0);
    if (buckets_.remove(fid, token)) --total_entries_;
  }
  entries_.erase(it);
}

std::vector<QueryHit> FilterIndex::query(const Vec& q) const {
  const auto rel = relevant_filters_signed(q, plan_.alpha_q);
  std::vector<QueryHit> hits;
  std::unordered_map<std::int64_t, int> seen;
  for (const auto& [fid, qside] : rel) {
    buckets_.for_each_in(fid, [&](std::int64_t token) {
      const std::int64_t id = token >> 1;
      const int pside = (token & 1) ? 1 : -1;
      if (seen.emplace(id, 0).second) hits.push_back({id, pside * qside});
    });
  }
  return hits;
}

}  // namespace tuplesieve
