#include "core/sieve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <unordered_map>

namespace tuplesieve {

double default_epsilon(int d) {
  if (d < 2) throw std::domain_error("default_epsilon: d must be >= 2");
  return std::sqrt(std::log(static_cast<double>(d)) / d);
}

bool is_dominant_configuration(const std::vector<Vec>& xs, int k, double epsilon) {
  if (k < 2) throw std::domain_error("is_dominant_configuration: k must be >= 2");
  if (!(epsilon >= 0.0)) throw std::domain_error("is_dominant_configuration: epsilon < 0");
  const double target = -1.0 / k;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (std::fabs(dot(xs[i], xs[j]) - target) > epsilon) return false;
  return true;
}

namespace {

// Reflection taking the unit vector x onto e_d (involution).
struct Householder {
  Vec v;
  double inv_half = 0.0;  // 2 / <v, v>
  bool identity = false;

  explicit Householder(const Vec& x) {
    v = x;
    v.back() -= 1.0;
    const double n2 = dot(v, v);
    if (n2 < 1e-24) {
      identity = true;
    } else {
      inv_half = 2.0 / n2;
    }
  }

  Vec apply(const Vec& y) const {
    if (identity) return y;
    const double c = dot(v, y) * inv_half;
    Vec out = y;
    for (size_t t = 0; t < out.size(); ++t) out[t] -= c * v[t];
    return out;
  }
};

double transform_scale(int k) {
  return k / std::sqrt(static_cast<double>(k) * k - 1.0);
}

Vec transform_one(int k, const Householder& h, const Vec& y) {
  Vec z = h.apply(y);
  z.pop_back();
  const double s = transform_scale(k);
  for (auto& t : z) t *= s;
  return z;
}

Vec inverse_transform_one(int k, const Householder& h, const Vec& z) {
  Vec w(z.size() + 1);
  const double s = transform_scale(k);
  for (size_t t = 0; t < z.size(); ++t) w[t] = z[t] / s;
  w.back() = -1.0 / k;
  return h.apply(w);
}

Vec unit_copy(const Vec& x) {
  Vec u = x;
  return normalize(u);
}

}  // namespace

std::vector<Vec> transform(int k, const std::vector<Vec>& list, const Vec& x_k) {
  if (k < 2) throw std::domain_error("transform: k must be >= 2");
  if (x_k.size() < 2) throw std::domain_error("transform: d must be >= 2");
  const Householder h(unit_copy(x_k));
  std::vector<Vec> out;
  out.reserve(list.size());
  for (const Vec& y : list) {
    if (y.size() != x_k.size()) throw std::domain_error("transform: dimension mismatch");
    out.push_back(transform_one(k, h, y));
  }
  return out;
}

std::vector<Vec> inverse_transform(int k, const std::vector<Vec>& list, const Vec& x_k) {
  if (k < 2) throw std::domain_error("inverse_transform: k must be >= 2");
  if (x_k.size() < 2) throw std::domain_error("inverse_transform: d must be >= 2");
  const Householder h(unit_copy(x_k));
  std::vector<Vec> out;
  out.reserve(list.size());
  for (const Vec& z : list) {
    if (z.size() + 1 != x_k.size())
      throw std::domain_error("inverse_transform: dimension mismatch");
    out.push_back(inverse_transform_one(k, h, z));
  }
  return out;
}

namespace {

struct SearchNode {
  std::int64_t id;
  int sign;
  Vec cur;  // image in the current transformed space, unit length
};

using Partial = std::vector<std::pair<std::int64_t, int>>;

// Candidate proposal threshold below which linear scanning beats building a
// filter index for one recursion level.
constexpr size_t kFilterCutover = 1024;

class TupleSearch {
 public:
  TupleSearch(int k, const std::vector<Vec>& units, const SieveConfig& cfg, double eps, Rng& rng)
      : k_(k), units_(units), cfg_(cfg), eps_(eps), rng_(rng) {}

  // Original-space band check between signed list members.
  bool band_ok(std::int64_t a, int sa, std::int64_t b, int sb) const {
    const double c = sa * sb * dot(units_[a], units_[b]);
    return std::fabs(c + 1.0 / k_) <= eps_;
  }

  bool use_filter(size_t n) const {
    if (cfg_.strategy == CandidateStrategy::kLinear) return false;
    if (cfg_.strategy == CandidateStrategy::kFilter) return true;
    return n >= kFilterCutover;
  }

  // Positions (into items) proposed as partners of items[t]. With a filter
  // index this is a proposal set only: acceptance is always the exact
  // original-space band check done by the caller.
  std::vector<size_t> propose(const std::vector<SearchNode>& items,
                              const std::optional<FilterIndex>& index, size_t t) const {
    std::vector<size_t> out;
    if (index) {
      for (const QueryHit& h : index->query(items[t].cur)) {
        const auto pos = static_cast<size_t>(h.id);
        if (pos != t) out.push_back(pos);
      }
    } else {
      out.reserve(items.size() - 1);
      for (size_t p = 0; p < items.size(); ++p)
        if (p != t) out.push_back(p);
    }
    return out;
  }

  std::optional<FilterIndex> maybe_index(int j, const std::vector<SearchNode>& items) const {
    if (!use_filter(items.size())) return std::nullopt;
    const int dj = static_cast<int>(items.front().cur.size());
    const double theta = std::acos(-1.0 / j);
    try {
      FilterPlan plan = make_plan(dj, static_cast<std::int64_t>(items.size()), theta, 1.0,
                                  cfg_.recall_target, rng_);
      FilterIndex index(std::move(plan));
      for (size_t p = 0; p < items.size(); ++p)
        index.insert(static_cast<std::int64_t>(p), items[p].cur);
      return index;
    } catch (const InfeasibleError&) {
      if (cfg_.strategy == CandidateStrategy::kFilter) throw;
      return std::nullopt;  // auto mode falls back to a linear scan
    }
  }

  // Partial tuples over items at level j; `top` enables the sign freedom of
  // the outermost level. All pairwise bands are enforced here in the original
  // space; the caller adds the norm condition.
  std::vector<Partial> search(int j, std::vector<SearchNode> items, bool top) const {
    std::vector<Partial> out;
    if (static_cast<int>(items.size()) < j) return out;
    const auto index = maybe_index(j, items);

    if (j == 2) {
      for (size_t a = 0; a < items.size(); ++a) {
        for (size_t b : propose(items, index, a)) {
          if (b <= a && !index) continue;  // linear scan: unordered pairs once
          if (index && b < a) continue;
          const SearchNode& x = items[a];
          const SearchNode& y = items[b];
          if (x.id == y.id) continue;
          for (int s : {+1, -1}) {
            if (s < 0 && !top) break;
            if (band_ok(x.id, x.sign, y.id, y.sign * s)) {
              out.push_back({{x.id, x.sign}, {y.id, y.sign * s}});
            }
          }
        }
      }
      return out;
    }

    for (size_t t = 0; t < items.size(); ++t) {
      const SearchNode& x = items[t];
      const Householder h(x.cur);
      std::vector<SearchNode> children;
      for (size_t p : propose(items, index, t)) {
        const SearchNode& y = items[p];
        if (y.id == x.id) continue;
        for (int s : {+1, -1}) {
          if (s < 0 && !top) break;
          if (!band_ok(x.id, x.sign, y.id, y.sign * s)) continue;
          Vec cur = y.cur;
          if (s < 0)
            for (auto& c : cur) c = -c;
          Vec img = transform_one(j, h, cur);
          normalize(img);
          children.push_back({y.id, y.sign * s, std::move(img)});
        }
      }
      if (static_cast<int>(children.size()) < j - 1) continue;
      for (Partial& part : search(j - 1, std::move(children), false)) {
        part.emplace_back(x.id, x.sign);
        out.push_back(std::move(part));
      }
    }
    return out;
  }

 private:
  int k_;
  const std::vector<Vec>& units_;
  const SieveConfig& cfg_;
  double eps_;
  Rng& rng_;
};

}  // namespace

std::vector<TupleSolution> tuple_sieve(int k, const std::vector<Vec>& list,
                                       const SieveConfig& config) {
  if (k < 2 || k > 4) throw std::domain_error("tuple_sieve: k must be in [2, 4]");
  if (list.empty()) return {};
  const int d = static_cast<int>(list.front().size());
  if (d < 2) throw std::domain_error("tuple_sieve: d must be >= 2");
  const double eps = config.epsilon < 0.0 ? default_epsilon(d) : config.epsilon;
  if (!(eps >= 0.0) || !(eps < 1.0))
    throw std::domain_error("tuple_sieve: epsilon must be in [0, 1)");

  std::vector<Vec> units;
  units.reserve(list.size());
  for (const Vec& x : list) {
    if (static_cast<int>(x.size()) != d) throw std::domain_error("tuple_sieve: ragged list");
    units.push_back(unit_copy(x));
  }
  if (config.angle_trace) {
    for (int j = k; j >= 2; --j) config.angle_trace->push_back(std::acos(-1.0 / j));
  }

  Rng rng(config.seed);
  TupleSearch searcher(k, units, config, eps, rng);
  std::vector<SearchNode> top;
  top.reserve(units.size());
  for (size_t i = 0; i < units.size(); ++i)
    top.push_back({static_cast<std::int64_t>(i), +1, units[i]});

  std::set<std::pair<std::vector<std::int64_t>, std::vector<int>>> seen;
  std::vector<TupleSolution> out;
  for (Partial& part : searcher.search(k, std::move(top), /*top=*/true)) {
    // canonicalize: sort by id, fix the leading sign positive
    std::sort(part.begin(), part.end());
    bool distinct = true;
    for (size_t i = 1; i < part.size(); ++i)
      if (part[i].first == part[i - 1].first) distinct = false;
    if (!distinct) continue;
    if (part.front().second < 0)
      for (auto& [id, s] : part) s = -s;
    std::vector<std::int64_t> ids;
    std::vector<int> signs;
    for (const auto& [id, s] : part) {
      ids.push_back(id);
      signs.push_back(s);
    }
    if (!seen.emplace(ids, signs).second) continue;
    Vec sum(d, 0.0);
    for (size_t i = 0; i < ids.size(); ++i)
      for (int t = 0; t < d; ++t) sum[t] += signs[i] * units[ids[i]][t];
    const double nrm = norm(sum);
    if (nrm < config.norm_bound) out.push_back({std::move(ids), std::move(signs), nrm});
  }
  std::sort(out.begin(), out.end(),
            [](const TupleSolution& a, const TupleSolution& b) { return a.ids < b.ids; });
  return out;
}

std::pair<std::vector<int>, double> reduce_tuple(const std::vector<const LatticeVector*>& xs) {
  const int k = static_cast<int>(xs.size());
  if (k < 2 || k > 8) throw std::domain_error("reduce_tuple: tuple size must be in [2, 8]");
  const size_t d = xs[0]->coords.size();
  std::vector<int> best_signs(k, +1);
  double best = -1.0;
  for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
    __int128 n2 = 0;
    std::vector<int> signs(k, +1);
    for (int i = 1; i < k; ++i) signs[i] = (mask >> (i - 1)) & 1 ? -1 : +1;
    for (size_t t = 0; t < d; ++t) {
      std::int64_t c = 0;
      for (int i = 0; i < k; ++i) c += signs[i] * xs[i]->coords[t];
      n2 += static_cast<__int128>(c) * c;
    }
    const double nd = static_cast<double>(n2);
    if (best < 0.0 || nd < best) {
      best = nd;
      best_signs = signs;
    }
  }
  return {best_signs, std::sqrt(best)};
}

namespace {

double dot_exact(const LatticeVector& x, const LatticeVector& y) {
  __int128 s = 0;
  for (size_t t = 0; t < x.coords.size(); ++t)
    s += static_cast<__int128>(x.coords[t]) * y.coords[t];
  return static_cast<double>(s);
}

struct ListEntry {
  std::int64_t id;
  LatticeVector v;
  Vec unit;
};

}  // namespace

GaussSieveResult gauss_sieve(const Basis& basis, const GaussSieveConfig& cfg) {
  if (cfg.k < 2 || cfg.k > 4) throw std::domain_error("gauss_sieve: k must be in [2, 4]");
  const auto t0 = std::chrono::steady_clock::now();

  Basis b = basis;
  lll_reduce(b, cfg.lll_delta);
  const Gso gso = gram_schmidt(b);
  const int d = b.d;
  double sigma = 0.0;
  for (int i = 0; i < d; ++i)
    sigma = std::max(sigma, static_cast<double>(std::sqrt(gso.bstar_sq[i])));
  sigma *= 2.0;

  const double eps = cfg.epsilon < 0.0 ? default_epsilon(d) : cfg.epsilon;
  Rng rng(cfg.seed);

  double outer_beta = 1.0;
  if (cfg.space_budget_exp >= 0.0) {
    const TradeoffProfile prof = optimize_time(cfg.k, cfg.space_budget_exp);
    outer_beta = std::fabs(prof.levels.back().beta);
  }
  outer_beta = std::clamp(outer_beta, 1.0 / cfg.k + 1e-9, 1.0);

  GaussSieveResult res;
  GaussSieveStats& st = res.stats;

  std::vector<ListEntry> list;
  std::unordered_map<std::int64_t, size_t> id2pos;
  std::int64_t next_id = 0;

  std::optional<FilterIndex> index;
  size_t built_n = 0;
  // Below this list size a brute scan beats the index: each rebuild re-runs
  // the filter-plan calibration, which costs far more than scanning a few
  // thousand vectors per candidate query.
  const size_t kIndexCutover = 20000;
  auto want_index = [&]() {
    if (cfg.strategy == CandidateStrategy::kLinear) return false;
    if (cfg.strategy == CandidateStrategy::kFilter) return true;
    return list.size() >= kIndexCutover;
  };
  auto note_index_peak = [&]() {
    if (index) st.peak_bucket_entries = std::max(st.peak_bucket_entries,
                                                 index->peak_bucket_entries());
  };
  auto rebuild_index = [&]() {
    note_index_peak();
    index.reset();
    built_n = list.size();
    if (!want_index() || list.empty()) return;
    const double theta = std::acos(-1.0 / cfg.k);
    try {
      FilterPlan plan = make_plan(d, static_cast<std::int64_t>(list.size()), theta, outer_beta,
                                  cfg.recall_target, rng);
      index.emplace(std::move(plan));
      for (const ListEntry& e : list) index->insert(e.id, e.unit);
      note_index_peak();
    } catch (const InfeasibleError&) {
      if (cfg.strategy == CandidateStrategy::kFilter) throw;
    } catch (const std::domain_error&) {
      if (cfg.strategy == CandidateStrategy::kFilter) throw;
    }
  };

  auto list_insert = [&](LatticeVector v) {
    ListEntry e{next_id++, std::move(v), {}};
    e.unit = normalized_coords(e.v);
    id2pos[e.id] = list.size();
    if (index) index->insert(e.id, e.unit);
    list.push_back(std::move(e));
    st.max_list_size = std::max(st.max_list_size, list.size());
  };
  auto list_remove = [&](size_t pos) {
    if (index) index->remove(list[pos].id);
    id2pos.erase(list[pos].id);
    if (pos + 1 != list.size()) {
      list[pos] = std::move(list.back());
      id2pos[list[pos].id] = pos;
    }
    list.pop_back();
  };
  // Candidate positions for a unit direction: index-backed when available,
  // otherwise the whole list. Acceptance below is always exact.
  auto candidates = [&](const Vec& u) {
    std::vector<size_t> out;
    if (index) {
      for (const QueryHit& h : index->query(u)) {
        auto it = id2pos.find(h.id);
        if (it != id2pos.end()) out.push_back(it->second);
      }
    } else {
      out.resize(list.size());
      for (size_t p = 0; p < list.size(); ++p) out[p] = p;
    }
    return out;
  };

  std::vector<LatticeVector> stack;
  LatticeVector best;
  for (int i = 0; i < d; ++i) {
    std::vector<std::int64_t> coeffs(d, 0);
    coeffs[i] = 1;
    LatticeVector v = make_lattice_vector(b, coeffs);
    if (best.coords.empty() || v.norm_sq < best.norm_sq) best = v;
    stack.push_back(std::move(v));
  }

  const double target_sq = cfg.target_norm > 0.0 ? cfg.target_norm * cfg.target_norm : -1.0;

  while (st.iterations < cfg.max_iterations) {
    if (target_sq > 0.0 && best.norm_sq <= target_sq) break;
    // A collision (a sample reduced all the way to zero) means the sampled
    // region is saturated; a budget of them is the no-target stopping rule.
    const std::int64_t collision_budget =
        cfg.max_collisions >= 0
            ? cfg.max_collisions
            : std::max<std::int64_t>(1000, static_cast<std::int64_t>(list.size()) / 10);
    if (st.collisions >= collision_budget) break;
    ++st.iterations;

    if (want_index() &&
        (!index ? list.size() >= std::max(kIndexCutover, built_n + built_n / 2)
                : list.size() >= built_n + built_n / 2 || 2 * list.size() < built_n)) {
      rebuild_index();
    }
    if (cfg.strategy == CandidateStrategy::kFilter && !index && !list.empty()) rebuild_index();

    LatticeVector cur;
    if (!stack.empty()) {
      cur = std::move(stack.back());
      stack.pop_back();
    } else {
      cur = klein_sample(b, gso, sigma, rng);
    }
    // shrink cur against the list until stable
    bool changed = true;
    while (changed && !cur.is_zero()) {
      changed = false;
      const Vec u = normalized_coords(cur);
      for (size_t pos : candidates(u)) {
        const double p = dot_exact(cur, list[pos].v);
        if (list[pos].v.norm_sq < 2.0 * std::fabs(p)) {
          cur = add_signed(cur, list[pos].v, p > 0 ? -1 : +1);
          ++st.pair_reductions;
          changed = true;
          break;
        }
      }
    }
    if (cur.is_zero()) {
      ++st.collisions;
      continue;
    }

    // shrink list members against cur
    {
      const Vec u = normalized_coords(cur);
      std::vector<size_t> hit;
      for (size_t pos : candidates(u)) {
        const double p = dot_exact(cur, list[pos].v);
        if (cur.norm_sq < 2.0 * std::fabs(p)) hit.push_back(pos);
      }
      std::sort(hit.rbegin(), hit.rend());
      for (size_t pos : hit) {
        LatticeVector moved = std::move(list[pos].v);
        const double p = dot_exact(cur, moved);
        list_remove(pos);
        LatticeVector red = add_signed(moved, cur, p > 0 ? -1 : +1);
        ++st.pair_reductions;
        if (red.is_zero())
          ++st.collisions;
        else
          stack.push_back(std::move(red));
      }
    }

    // k-tuple stage: combine cur with k-1 band members of the list
    if (cfg.k >= 3) {
      const double band_c = 1.0 / cfg.k;
      for (int round = 0; round < 4 && !cur.is_zero(); ++round) {
        const Vec u = normalized_coords(cur);
        struct BandHit {
          size_t pos;
          int sign;  // sign making <cur, sign*x> land near -1/k
          double off;
        };
        std::vector<BandHit> band;
        for (size_t pos = 0; pos < list.size(); ++pos) {
          const double c = dot(u, list[pos].unit);
          const double off = std::fabs(std::fabs(c) - band_c);
          if (off <= eps) band.push_back({pos, c > 0 ? -1 : +1, off});
        }
        const size_t cap = cfg.k == 3 ? 512 : 96;
        if (band.size() > cap) {
          std::nth_element(band.begin(), band.begin() + cap, band.end(),
                           [](const BandHit& a, const BandHit& b) { return a.off < b.off; });
          band.resize(cap);
        }
        auto pair_band = [&](const BandHit& a, const BandHit& bh) {
          const double c = a.sign * bh.sign * dot(list[a.pos].unit, list[bh.pos].unit);
          return std::fabs(c + band_c) <= eps;
        };
        bool modified = false;
        auto try_combo = [&](const std::vector<const BandHit*>& picks) {
          LatticeVector s = cur;
          for (const BandHit* p : picks) s = add_signed(s, list[p->pos].v, p->sign);
          double longest = cur.norm_sq;
          int longest_which = -1;  // -1: cur
          for (size_t i = 0; i < picks.size(); ++i)
            if (list[picks[i]->pos].v.norm_sq > longest) {
              longest = list[picks[i]->pos].v.norm_sq;
              longest_which = static_cast<int>(i);
            }
          if (!(s.norm_sq < longest) || s.is_zero()) return false;
          ++st.tuple_reductions;
          if (longest_which < 0) {
            cur = std::move(s);
          } else {
            list_remove(picks[longest_which]->pos);
            stack.push_back(std::move(s));
          }
          return true;
        };
        for (size_t i = 0; i < band.size() && !modified; ++i) {
          for (size_t j = i + 1; j < band.size() && !modified; ++j) {
            if (!pair_band(band[i], band[j])) continue;
            if (cfg.k == 3) {
              modified = try_combo({&band[i], &band[j]});
            } else {
              for (size_t l = j + 1; l < band.size() && !modified; ++l) {
                if (!pair_band(band[i], band[l]) || !pair_band(band[j], band[l])) continue;
                modified = try_combo({&band[i], &band[j], &band[l]});
              }
            }
          }
        }
        if (!modified) break;
      }
      if (cur.is_zero()) {
        ++st.collisions;
        continue;
      }
    }

    if (cur.norm_sq < best.norm_sq) best = cur;
    list_insert(std::move(cur));
    if (st.iterations % 64 == 0) st.list_trace.emplace_back(st.iterations, list.size());
  }
  st.list_trace.emplace_back(st.iterations, list.size());

  note_index_peak();
  st.final_list_size = list.size();
  res.best = std::move(best);
  if (cfg.keep_list) {
    res.final_list.reserve(list.size());
    for (ListEntry& e : list) res.final_list.push_back(std::move(e.v));
  }
  st.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace tuplesieve
