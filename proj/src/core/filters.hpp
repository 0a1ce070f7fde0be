#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/geometry.hpp"

namespace tuplesieve {

// Spherical locality-sensitive filter index with separate update and query
// thresholds alpha_u and alpha_q = beta * alpha_u. The index treats p and -p
// as equivalent: thresholds apply to |<u, v>| and matches carry the sign under
// which they matched, so obtuse targets reduce to acute ones.

struct ProductCodeParams {
  int blocks = 0;                  // m
  int block_size = 0;              // B codewords per block
  std::vector<int> block_offsets;  // m+1 coordinate offsets partitioning d
  // codewords[b][j]: sub-vector of block b, scaled so concatenations are unit.
  std::vector<std::vector<Vec>> codewords;
};

struct FilterPlan {
  int d = 0;
  std::int64_t n = 0;     // expected list size
  double theta = 0.0;     // target angle (acute canonical form is used internally)
  double beta = 1.0;
  double alpha_u = 0.0;
  double alpha_q = 0.0;
  std::int64_t f = 0;     // filter count (B^m)
  double recall_target = 0.9;
  double rho_u_pred = 0.0;  // predicted update/query exponents, reporting only
  double rho_q_pred = 0.0;
  ProductCodeParams code;
};

/// Build a plan: alpha_u = sqrt(1 - n^{-2/d}), alpha_q = beta*alpha_u. The
/// filter count starts at ln(1/(1-recall)) divided by the exact finite-d
/// two-sided wedge volume at (alpha_q, alpha_u, theta') -- the asymptotic
/// 2^{d w} would undercount by a polynomial factor -- and is then doubled
/// until the measured planted-pair recall of the sampled product code reaches
/// the target (structured codes collide somewhat less often than independent
/// filters). Requires d >= 2, n >= 1, theta in (0, pi),
/// beta in [cos theta', 1/alpha_u).
FilterPlan make_plan(int d, std::int64_t n, double theta, double beta, double recall_target,
                     Rng& rng);

struct QueryHit {
  std::int64_t id;
  int sign;  // stored vector matched as sign * p relative to the query side
};

/// Bucket table: filter id -> chain of entry tokens, open addressing over a
/// pooled node arena. Buckets are overwhelmingly singletons at realistic
/// filter counts (hundreds of millions of filters, ~10^8 stored entries), so
/// per-bucket containers would waste an order of magnitude of memory. Layout:
/// 8 bytes per head slot, 8 bytes per chain node (32-bit token + 32-bit next).
class BucketStore {
 public:
  static constexpr std::uint32_t kNil = 0xffffffffu;
  // tokens are (id << 1) | side and must fit 32 bits
  static constexpr std::int64_t kMaxToken = (std::int64_t(1) << 32) - 1;

  void insert(std::uint32_t fid, std::int64_t token) {
    if (token < 0 || token > kMaxToken)
      throw std::invalid_argument("BucketStore: entry id out of range");
    if ((used_slots_ + 1) * 10 >= slots_.size() * 8) grow();
    Slot& s = slots_[probe(fid)];
    if (s.fid_plus1 == 0) {
      s.fid_plus1 = fid + 1;
      s.head = kNil;
      ++used_slots_;
    }
    std::uint32_t node;
    if (free_head_ != kNil) {
      node = free_head_;
      free_head_ = next_[node];
    } else {
      node = static_cast<std::uint32_t>(token_.size());
      token_.push_back(0);
      next_.push_back(kNil);
    }
    token_[node] = static_cast<std::uint32_t>(token);
    next_[node] = s.head;
    s.head = node;
    ++size_;
  }

  /// Removes one occurrence of token from the bucket; false when absent.
  bool remove(std::uint32_t fid, std::int64_t token) {
    if (slots_.empty() || token < 0 || token > kMaxToken) return false;
    Slot& s = slots_[probe(fid)];
    if (s.fid_plus1 == 0) return false;
    std::uint32_t* link = &s.head;
    while (*link != kNil) {
      const std::uint32_t node = *link;
      if (token_[node] == static_cast<std::uint32_t>(token)) {
        *link = next_[node];
        next_[node] = free_head_;
        free_head_ = node;
        --size_;
        return true;
      }
      link = &next_[node];
    }
    return false;
  }

  template <class F>
  void for_each_in(std::uint32_t fid, F&& fn) const {
    if (slots_.empty()) return;
    const Slot& s = slots_[probe(fid)];
    if (s.fid_plus1 == 0) return;
    for (std::uint32_t n = s.head; n != kNil; n = next_[n])
      fn(static_cast<std::int64_t>(token_[n]));
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Materialized nonempty-bucket view (test support; O(table) cost).
  std::unordered_map<std::uint32_t, std::vector<std::int64_t>> snapshot() const {
    std::unordered_map<std::uint32_t, std::vector<std::int64_t>> out;
    for (const Slot& s : slots_) {
      if (s.fid_plus1 == 0 || s.head == kNil) continue;
      auto& vec = out[s.fid_plus1 - 1];
      for (std::uint32_t n = s.head; n != kNil; n = next_[n])
        vec.push_back(static_cast<std::int64_t>(token_[n]));
    }
    return out;
  }

 private:
  struct Slot {
    std::uint32_t fid_plus1 = 0;  // 0 marks an empty slot
    std::uint32_t head = kNil;
  };

  // Maps a 32-bit hash onto [0, capacity) without requiring power-of-2 sizes,
  // so the table can grow in smaller steps near the memory budget.
  std::size_t probe(std::uint32_t fid) const {
    const std::size_t cap = slots_.size();
    const std::uint64_t h =
        ((static_cast<std::uint64_t>(fid) + 1) * 0x9E3779B97F4A7C15ull) >> 32;
    std::size_t i = static_cast<std::size_t>((h * cap) >> 32);
    while (slots_[i].fid_plus1 != 0 && slots_[i].fid_plus1 != fid + 1) {
      if (++i == cap) i = 0;
    }
    return i;
  }

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.empty() ? 1024 : old.size() + old.size() / 2, Slot{});
    for (const Slot& s : old) {
      if (s.fid_plus1 == 0) continue;
      slots_[probe(s.fid_plus1 - 1)] = s;
    }
  }

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> token_;
  std::vector<std::uint32_t> next_;
  std::uint32_t free_head_ = kNil;
  std::size_t used_slots_ = 0;
  std::size_t size_ = 0;
};

class FilterIndex {
 public:
  explicit FilterIndex(FilterPlan plan) : plan_(std::move(plan)) {}

  const FilterPlan& plan() const { return plan_; }

  /// All filter ids u with |<u, v>| >= alpha, by pruned per-block enumeration
  /// (cost proportional to the output, not to f).
  std::vector<std::uint32_t> relevant_filters(const Vec& v, double alpha) const;

  /// Signed decode: filters with <u,v> >= alpha on the +1 side and
  /// -<u,v> >= alpha on the -1 side.
  std::vector<std::pair<std::uint32_t, int>> relevant_filters_signed(const Vec& v,
                                                                     double alpha) const;

  /// Reconstruct the full filter vector for a filter id (test support).
  Vec filter_vector(std::uint32_t filter_id) const;

  void insert(std::int64_t id, const Vec& p);
  void remove(std::int64_t id);
  /// All entries sharing a query-relevant bucket with q, deduplicated.
  std::vector<QueryHit> query(const Vec& q) const;

  bool contains(std::int64_t id) const { return entries_.count(id) != 0; }
  const Vec& stored(std::int64_t id) const { return entries_.at(id); }
  std::size_t size() const { return entries_.size(); }
  std::size_t total_bucket_entries() const { return total_entries_; }
  std::size_t peak_bucket_entries() const { return peak_entries_; }
  std::unordered_map<std::uint32_t, std::vector<std::int64_t>> buckets() const {
    return buckets_.snapshot();
  }

 private:
  void decode_side(const std::vector<std::vector<std::pair<double, int>>>& sorted_scores,
                   double alpha, int side, std::vector<std::pair<std::uint32_t, int>>& out) const;

  FilterPlan plan_;
  // bucket entries encode id and the side bit: (id << 1) | (side > 0)
  BucketStore buckets_;
  std::unordered_map<std::int64_t, Vec> entries_;
  std::size_t total_entries_ = 0;
  std::size_t peak_entries_ = 0;
};

}  // namespace tuplesieve
