#include "netext/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "netext/io.hpp"
#include "netext/kernels.hpp"
#include "netext/mazur.hpp"

namespace netext {
namespace {

// ---------------------------------------------------------------------------
// packed lattice keys: coordinate u+32 in 6-bit fields, coordinate 0 lowest.
// Valid for |u| <= 29, which leaves headroom for +-2 offset arithmetic without
// touching neighbouring fields.
// ---------------------------------------------------------------------------

constexpr int kCoordBits = 6;
constexpr int kCoordBias = 32;
constexpr int kMaxAbsCoord = 29;
constexpr std::size_t kMaxDim = 10;

std::uint64_t pack_full(const std::int8_t* u, std::size_t n) {
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < n; ++j)
    k |= static_cast<std::uint64_t>(u[j] + kCoordBias) << (kCoordBits * j);
  return k;
}

// open addressing u64 -> u64, insert/update only
class FlatMap64 {
 public:
  explicit FlatMap64(std::size_t cap0 = 64) { reset(cap0); }

  void reset(std::size_t cap0) {
    std::size_t cap = 64;
    while (cap < cap0 * 2) cap <<= 1;
    slots_.assign(cap, Slot{kEmpty, 0});
    mask_ = cap - 1;
    count_ = 0;
  }

  std::uint64_t* find_or_insert(std::uint64_t key, std::uint64_t init) {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      Slot& s = slots_[h];
      if (s.key == key) return &s.val;
      if (s.key == kEmpty) {
        s.key = key;
        s.val = init;
        if (++count_ > (mask_ + 1) / 10 * 7) {
          grow();
          return find_or_insert(key, init);  // re-locate after rehash
        }
        return &s.val;
      }
      h = (h + 1) & mask_;
    }
  }

  const std::uint64_t* find(std::uint64_t key) const {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      const Slot& s = slots_[h];
      if (s.key == key) return &s.val;
      if (s.key == kEmpty) return nullptr;
      h = (h + 1) & mask_;
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Slot& s : slots_)
      if (s.key != kEmpty) fn(s.key, s.val);
  }

  std::size_t size() const { return count_; }

 private:
  struct Slot {
    std::uint64_t key;
    std::uint64_t val;
  };
  static constexpr std::uint64_t kEmpty = ~0ull;

  void grow() {
    std::vector<Slot> old;
    old.swap(slots_);
    slots_.assign((mask_ + 1) * 2, Slot{kEmpty, 0});
    mask_ = slots_.size() - 1;
    for (const Slot& s : old) {
      if (s.key == kEmpty) continue;
      std::uint64_t h = splitmix64(s.key) & mask_;
      while (slots_[h].key != kEmpty) h = (h + 1) & mask_;
      slots_[h] = s;
    }
  }

  std::vector<Slot> slots_;
  std::uint64_t mask_ = 0;
  std::size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// blocked-region maps for the greedy builder: prefix key -> bitmap over the
// last coordinate. Packed variant stores key and bitmap in one u64 slot,
// split variant uses 16-byte slots when they do not fit together.
// ---------------------------------------------------------------------------

class BlockedPacked {
 public:
  BlockedPacked(int keybits, std::size_t cap0) : keybits_(keybits), keymask_((1ull << keybits) - 1) {
    std::size_t cap = 64;
    while (cap < cap0) cap <<= 1;
    slots_.assign(cap, keymask_);
    mask_ = cap - 1;
  }

  void mark(std::uint64_t key, std::uint64_t bits) {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      const std::uint64_t s = slots_[h];
      const std::uint64_t k = s & keymask_;
      if (k == key) {
        slots_[h] = s | (bits << keybits_);
        return;
      }
      if (k == keymask_) {
        slots_[h] = key | (bits << keybits_);
        if (++count_ > (mask_ + 1) / 10 * 7) grow();
        return;
      }
      h = (h + 1) & mask_;
    }
  }

  std::uint64_t probe(std::uint64_t key) const {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      const std::uint64_t s = slots_[h];
      const std::uint64_t k = s & keymask_;
      if (k == key) return s >> keybits_;
      if (k == keymask_) return 0;
      h = (h + 1) & mask_;
    }
  }

  void prefetch(std::uint64_t key) const {
    __builtin_prefetch(&slots_[splitmix64(key) & mask_], 1, 1);
  }

 private:
  void grow() {
    std::vector<std::uint64_t> old;
    old.swap(slots_);
    slots_.assign((mask_ + 1) * 2, keymask_);
    mask_ = slots_.size() - 1;
    for (const std::uint64_t s : old) {
      if ((s & keymask_) == keymask_) continue;
      std::uint64_t h = splitmix64(s & keymask_) & mask_;
      while ((slots_[h] & keymask_) != keymask_) h = (h + 1) & mask_;
      slots_[h] = s;
    }
  }

  std::vector<std::uint64_t> slots_;
  std::uint64_t mask_ = 0;
  std::size_t count_ = 0;
  int keybits_;
  std::uint64_t keymask_;
};

class BlockedSplit {
 public:
  explicit BlockedSplit(std::size_t cap0) {
    std::size_t cap = 64;
    while (cap < cap0) cap <<= 1;
    slots_.assign(cap, Slot{kEmpty, 0});
    mask_ = cap - 1;
  }

  void mark(std::uint64_t key, std::uint64_t bits) {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      Slot& s = slots_[h];
      if (s.key == key) {
        s.bits |= bits;
        return;
      }
      if (s.key == kEmpty) {
        s = Slot{key, bits};
        if (++count_ > (mask_ + 1) / 10 * 7) grow();
        return;
      }
      h = (h + 1) & mask_;
    }
  }

  std::uint64_t probe(std::uint64_t key) const {
    std::uint64_t h = splitmix64(key) & mask_;
    while (true) {
      const Slot& s = slots_[h];
      if (s.key == key) return s.bits;
      if (s.key == kEmpty) return 0;
      h = (h + 1) & mask_;
    }
  }

  void prefetch(std::uint64_t key) const {
    __builtin_prefetch(&slots_[splitmix64(key) & mask_], 1, 1);
  }

 private:
  struct Slot {
    std::uint64_t key;
    std::uint64_t bits;
  };
  static constexpr std::uint64_t kEmpty = ~0ull;

  void grow() {
    std::vector<Slot> old;
    old.swap(slots_);
    slots_.assign((mask_ + 1) * 2, Slot{kEmpty, 0});
    mask_ = slots_.size() - 1;
    for (const Slot& s : old) {
      if (s.key == kEmpty) continue;
      std::uint64_t h = splitmix64(s.key) & mask_;
      while (slots_[h].key != kEmpty) h = (h + 1) & mask_;
      slots_[h] = s;
    }
  }

  std::vector<Slot> slots_;
  std::uint64_t mask_ = 0;
  std::size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// the greedy builder
// ---------------------------------------------------------------------------

struct PrefixOffset {
  std::int64_t keydelta;
  int idx[3];
  int sgn[3];
  int cnt;
  int normsq;
};

template <typename Blocked>
class GreedyBuilder {
 public:
  GreedyBuilder(std::size_t n, double radius, Blocked blocked)
      : n_(n),
        radius_(radius),
        m_max_(static_cast<int>(std::floor(4.0 * radius * radius + 1e-9))),
        root_m_(static_cast<int>(std::floor(std::sqrt(static_cast<double>(m_max_)) + 1e-9))),
        blocked_(std::move(blocked)),
        pref_(n, 0) {
    build_tables();
    build_offsets();
  }

  void run() {
    for (int m = 0; m <= m_max_; ++m) {
      if (n_ == 1)
        leaf(0, m, 0);
      else
        recurse(0, m, 0, 0);
    }
  }

  std::vector<std::int8_t> take_points() { return std::move(points_); }
  std::size_t accepted() const { return accepted_; }

 private:
  void build_tables() {
    sq1_.assign(m_max_ + 1, 0);
    sq2_.assign(m_max_ + 1, 0);
    sq3_.assign(m_max_ + 1, 0);
    isq_.assign(m_max_ + 1, 0);
    for (int a = 0; a * a <= m_max_; ++a) sq1_[a * a] = 1;
    for (int s = 0; s <= m_max_; ++s)
      if (sq1_[s])
        for (int a = 0; s + a * a <= m_max_; ++a) sq2_[s + a * a] = 1;
    for (int s = 0; s <= m_max_; ++s)
      if (sq2_[s])
        for (int a = 0; s + a * a <= m_max_; ++a) sq3_[s + a * a] = 1;
    int a = 0;
    for (int s = 0; s <= m_max_; ++s) {
      while ((a + 1) * (a + 1) <= s) ++a;
      isq_[s] = a;
    }
  }

  // prefix offsets d' in Z^(n-1) with |d'|^2 <= 3 (at most three +-1 entries)
  void build_offsets() {
    if (n_ == 1) return;
    std::size_t total = 1;
    for (std::size_t i = 0; i + 1 < n_; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      PrefixOffset o{};
      int ss = 0;
      for (std::size_t i = 0; i + 1 < n_; ++i) {
        const int v = static_cast<int>(c % 3) - 1;
        c /= 3;
        if (v != 0) {
          if (o.cnt < 3) {
            o.idx[o.cnt] = static_cast<int>(i);
            o.sgn[o.cnt] = v;
          }
          ++o.cnt;
          ++ss;
        }
        o.keydelta += static_cast<std::int64_t>(v) << (kCoordBits * i);
      }
      if (ss > 3) continue;
      o.normsq = ss;
      offsets_.push_back(o);
    }
  }

  void recurse(std::size_t depth, int rem, std::uint64_t key, int prefsq) {
    if (depth == n_ - 1) {
      leaf(key, rem, prefsq);
      return;
    }
    const std::size_t free_after = n_ - 1 - depth;
    const std::uint8_t* feasible =
        (free_after == 1) ? sq1_.data() : (free_after == 2) ? sq2_.data() : (free_after == 3) ? sq3_.data() : nullptr;
    const int r = isq_[rem];
    for (int v = -r; v <= r; ++v) {
      const int rem2 = rem - v * v;
      if (feasible != nullptr && feasible[rem2] == 0) continue;
      pref_[depth] = v;
      recurse(depth + 1, rem2, key + (static_cast<std::uint64_t>(v + kCoordBias) << (kCoordBits * depth)),
              prefsq + v * v);
    }
  }

  void leaf(std::uint64_t key, int rem, int prefsq) {
    if (sq1_[rem] == 0) return;
    const int r = isq_[rem];
    std::uint64_t bm = blocked_.probe(key);
    for (int side = (r == 0 ? 1 : 0); side < 2; ++side) {
      const int ul = (side == 0) ? -r : r;
      const int bit = ul + root_m_;
      if ((bm >> bit) & 1) continue;
      ++accepted_;
      for (std::size_t i = 0; i + 1 < n_; ++i) points_.push_back(static_cast<std::int8_t>(pref_[i]));
      points_.push_back(static_cast<std::int8_t>(ul));
      mark_neighborhood(key, bit, prefsq, ul);
      bm = blocked_.probe(key);
    }
  }

  // block every future candidate within distance < 1 of the accepted point:
  // all lattice offsets with integer squared distance <= 3, restricted to
  // squared norms in [current shell, m_max]
  void mark_neighborhood(std::uint64_t key, int bit, int prefsq, int lastval) {
    mark_keys_.clear();
    mark_bits_.clear();
    const int m = prefsq + lastval * lastval;
    const int lv = std::abs(lastval);
    const int minlast = (lv >= 1) ? (lv - 1) * (lv - 1) : 0;
    const int maxlast = (lv + 1) * (lv + 1);
    if (n_ == 1) {
      std::uint64_t bits = 0;
      for (int dl = -1; dl <= 1; ++dl) {
        const int nb = bit + dl;
        if (nb < 0) continue;
        const int nsq = (lastval + dl) * (lastval + dl);
        if (nsq >= m && nsq <= m_max_) bits |= 1ull << nb;
      }
      if (bits != 0) blocked_.mark(0, bits);
      return;
    }
    for (const PrefixOffset& o : offsets_) {
      int dot = 0;
      for (int j = 0; j < o.cnt; ++j) dot += o.sgn[j] * pref_[o.idx[j]];
      const int nprefsq = prefsq + 2 * dot + o.normsq;
      if (nprefsq + minlast > m_max_) continue;
      if (nprefsq + maxlast < m) continue;
      std::uint64_t bits = 0;
      if (o.normsq == 3) {
        const int nsq = nprefsq + lastval * lastval;
        if (nsq >= m && nsq <= m_max_) bits = 1ull << bit;
      } else {
        for (int dl = -1; dl <= 1; ++dl) {
          const int nb = bit + dl;
          if (nb < 0) continue;
          const int nlast = lastval + dl;
          const int nsq = nprefsq + nlast * nlast;
          if (nsq >= m && nsq <= m_max_) bits |= 1ull << nb;
        }
      }
      if (bits == 0) continue;
      mark_keys_.push_back(key + static_cast<std::uint64_t>(o.keydelta));
      mark_bits_.push_back(bits);
    }
    constexpr std::size_t kPrefetchAhead = 12;
    const std::size_t cnt = mark_keys_.size();
    for (std::size_t i = 0; i < cnt; ++i) {
      if (i + kPrefetchAhead < cnt) blocked_.prefetch(mark_keys_[i + kPrefetchAhead]);
      blocked_.mark(mark_keys_[i], mark_bits_[i]);
    }
  }

  std::size_t n_;
  double radius_;
  int m_max_;
  int root_m_;
  Blocked blocked_;
  std::vector<int> pref_;
  std::vector<std::uint8_t> sq1_, sq2_, sq3_;
  std::vector<int> isq_;
  std::vector<PrefixOffset> offsets_;
  std::vector<std::int8_t> points_;
  std::size_t accepted_ = 0;
  std::vector<std::uint64_t> mark_keys_;
  std::vector<std::uint64_t> mark_bits_;
};

// ---------------------------------------------------------------------------
// exact separation audit: pairs at integer squared distance msq correspond to
// intersections of the sorted key array with itself shifted by an offset key.
// Offsets are enumerated once per class with a positive leading coordinate so
// each unordered pair is visited exactly once.
// ---------------------------------------------------------------------------

std::vector<std::pair<std::int64_t, int>> signed_offsets(std::size_t n, int msq_lo, int msq_hi) {
  std::vector<std::pair<std::int64_t, int>> out;
  const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(msq_hi)) + 1e-9));
  std::vector<int> d(n, 0);
  auto rec = [&](auto&& self, std::size_t depth, int ss) -> void {
    if (ss > msq_hi) return;
    if (depth == n) {
      if (ss < msq_lo) return;
      int first = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (d[i] != 0) {
          first = d[i];
          break;
        }
      if (first <= 0) return;
      std::int64_t kd = 0;
      for (std::size_t i = 0; i < n; ++i) kd += static_cast<std::int64_t>(d[i]) << (kCoordBits * i);
      out.push_back({kd, ss});
      return;
    }
    for (int v = -r; v <= r; ++v) {
      d[depth] = v;
      self(self, depth + 1, ss + v * v);
    }
    d[depth] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

// number of key pairs (a, b) with b = a + kd; early_exit stops at first hit
std::uint64_t count_shifted_matches(const std::vector<std::int64_t>& keys, std::int64_t kd,
                                    bool early_exit) {
  const std::size_t n = keys.size();
  std::uint64_t hits = 0;
  std::size_t i = 0, j = 0;
  while (i < n && j < n) {
    const std::int64_t a = keys[i];
    const std::int64_t b = keys[j] + kd;
    if (a == b) {
      ++hits;
      if (early_exit) return hits;
      ++i;
      ++j;
    } else {
      i += static_cast<std::size_t>(a < b);
      j += static_cast<std::size_t>(b < a);
    }
  }
  return hits;
}

struct SeparationAudit {
  double separation = std::numeric_limits<double>::infinity();
  std::uint64_t pairs_below_one = 0;
};

SeparationAudit audit_lattice_separation(const std::vector<std::int8_t>& lattice, std::size_t n,
                                         std::size_t count) {
  SeparationAudit audit;
  if (count < 2) return audit;

  std::vector<std::int64_t> keys(count);
  for (std::size_t i = 0; i < count; ++i)
    keys[i] = static_cast<std::int64_t>(pack_full(lattice.data() + i * n, n));
  std::sort(keys.begin(), keys.end());

  auto run_class_range = [&](int lo, int hi, bool early_exit) {
    const auto offs = signed_offsets(n, lo, hi);
    std::uint64_t total = 0;
    int best_msq = -1;
    const unsigned workers = std::min(2u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<int> bests(workers, -1);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t oi = w; oi < offs.size(); oi += workers) {
          const std::uint64_t h = count_shifted_matches(keys, offs[oi].first, early_exit);
          if (h > 0) {
            counts[w] += h;
            if (bests[w] < 0 || offs[oi].second < bests[w]) bests[w] = offs[oi].second;
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    for (unsigned w = 0; w < workers; ++w) {
      total += counts[w];
      if (bests[w] >= 0 && (best_msq < 0 || bests[w] < best_msq)) best_msq = bests[w];
    }
    return std::pair<std::uint64_t, int>{total, best_msq};
  };

  const auto [below, min_bad] = run_class_range(1, 3, false);
  audit.pairs_below_one = below;
  if (min_bad > 0) {
    audit.separation = std::sqrt(static_cast<double>(min_bad)) / 2.0;
    return audit;
  }
  for (int hi = 8; hi <= 64; hi *= 2) {
    const int lo = (hi == 8) ? 4 : hi / 2 + 1;
    const auto [cnt, min_msq] = run_class_range(lo, hi, true);
    (void)cnt;
    if (min_msq > 0) {
      audit.separation = std::sqrt(static_cast<double>(min_msq)) / 2.0;
      return audit;
    }
  }
  // widely scattered tiny nets: exact integer brute force
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      long ss = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const long d = lattice[i * n + k] - lattice[j * n + k];
        ss += d * d;
      }
      best = std::min(best, std::sqrt(static_cast<double>(ss)) / 2.0);
    }
  audit.separation = best;
  return audit;
}

}  // namespace

// ---------------------------------------------------------------------------
// grid-bucket index for nearest queries on large nets (cells of side 1)
// ---------------------------------------------------------------------------

class GridIndex {
 public:
  GridIndex(const std::vector<std::int8_t>& lattice, std::size_t n, std::size_t count) : n_(n) {
    cell_min_.assign(n, std::numeric_limits<int>::max());
    cell_max_.assign(n, std::numeric_limits<int>::min());
    std::vector<int> cell(n);
    FlatMap64 counts(count / 4 + 64);
    for (std::size_t i = 0; i < count; ++i) {
      const std::int8_t* row = lattice.data() + i * n;
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < n; ++j) {
        // floor(u/2) with rounding toward -inf
        const int c = (row[j] >= 0) ? row[j] / 2 : (row[j] - 1) / 2;
        cell_min_[j] = std::min(cell_min_[j], c);
        cell_max_[j] = std::max(cell_max_[j], c);
        key |= static_cast<std::uint64_t>(c + kCoordBias) << (kCoordBits * j);
      }
      *counts.find_or_insert(key, 0) += 1;
    }
    // counts -> CSR offsets
    cells_.reset(counts.size() + 1);
    std::uint64_t offset = 0;
    counts.for_each([&](std::uint64_t key, std::uint64_t cnt) {
      *cells_.find_or_insert(key, 0) = (offset << 24) | cnt;
      offset += cnt;
    });
    indices_.assign(count, 0);
    FlatMap64 position(counts.size() + 1);
    for (std::size_t i = 0; i < count; ++i) {
      const std::int8_t* row = lattice.data() + i * n;
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const int c = (row[j] >= 0) ? row[j] / 2 : (row[j] - 1) / 2;
        key |= static_cast<std::uint64_t>(c + kCoordBias) << (kCoordBits * j);
      }
      std::uint64_t* pos = position.find_or_insert(key, 0);
      const std::uint64_t packed = *cells_.find(key);
      indices_[(packed >> 24) + *pos] = static_cast<std::uint32_t>(i);
      ++*pos;
    }
  }

  NearestResult query(const std::vector<std::int8_t>& lattice, std::size_t count,
                      const RealVector& q) const {
    (void)count;
    std::vector<double> q2(n_);
    for (std::size_t j = 0; j < n_; ++j) q2[j] = 2.0 * q[j];
    NearestResult best;
    best.index = std::numeric_limits<std::size_t>::max();
    double best_d2 = std::numeric_limits<double>::infinity();
    const auto& ops = kernels::active();

    auto visit_cell = [&](std::uint64_t key) {
      const std::uint64_t* packed = cells_.find(key);
      if (packed == nullptr) return;
      const std::uint64_t start = *packed >> 24;
      const std::uint64_t len = *packed & 0xffffffull;
      for (std::uint64_t t = 0; t < len; ++t) {
        const std::uint32_t idx = indices_[start + t];
        const double d2 = ops.sq_dist_i8(q2.data(), lattice.data() + static_cast<std::size_t>(idx) * n_,
                                         n_);
        if (d2 < best_d2 || (d2 == best_d2 && idx < best.index)) {
          best_d2 = d2;
          best.index = idx;
        }
      }
    };

    // depth-first over cell coordinates, pruned by the partial squared
    // distance from q to the cell slab; <= keeps tie candidates reachable so
    // the lowest-index rule is honored across cells
    auto rec = [&](auto&& self, std::size_t depth, double partial, std::uint64_t key) -> void {
      if (partial > best_d2) return;
      if (depth == n_) {
        visit_cell(key);
        return;
      }
      const double qj = q[depth];
      const int c0 = static_cast<int>(std::floor(qj));
      auto contribution = [&](int c) {
        if (c == c0) return 0.0;
        const double d = (c < c0) ? (qj - (c + 1)) : (c - qj);
        return d * d;
      };
      auto descend = [&](int c) {
        self(self, depth + 1, partial + contribution(c),
             key | (static_cast<std::uint64_t>(c + kCoordBias) << (kCoordBits * depth)));
      };
      if (c0 >= cell_min_[depth] && c0 <= cell_max_[depth]) descend(c0);
      for (int c = c0 - 1; c >= cell_min_[depth]; --c) {
        if (partial + contribution(c) > best_d2) break;
        if (c <= cell_max_[depth]) descend(c);
      }
      for (int c = c0 + 1; c <= cell_max_[depth]; ++c) {
        if (partial + contribution(c) > best_d2) break;
        if (c >= cell_min_[depth]) descend(c);
      }
    };
    rec(rec, 0, 0.0, 0);
    best.distance = std::sqrt(best_d2);
    return best;
  }

 private:
  std::size_t n_;
  std::vector<int> cell_min_, cell_max_;
  FlatMap64 cells_{64};  // cell key -> (offset << 24) | count
  std::vector<std::uint32_t> indices_;
};

// ---------------------------------------------------------------------------
// NetHandle
// ---------------------------------------------------------------------------

RealVector NetHandle::point(std::size_t i) const {
  if (i >= count_) throw InvalidInput("net point index out of range");
  std::vector<double> x(dim_);
  const std::int8_t* row = lattice_row(i);
  for (std::size_t j = 0; j < dim_; ++j) x[j] = 0.5 * static_cast<double>(row[j]);
  return RealVector(std::move(x));
}

NearestResult NetHandle::nearest(const RealVector& query) const {
  if (query.dim() != dim_) throw InvalidInput("nearest: query dimension mismatch");
  if (!query.all_finite()) throw InvalidInput("nearest: non-finite query");
  if (grid_ != nullptr) return grid_->query(lattice_, count_, query);
  std::vector<double> q2(dim_);
  for (std::size_t j = 0; j < dim_; ++j) q2[j] = 2.0 * query[j];
  const auto& ops = kernels::active();
  NearestResult best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count_; ++i) {
    const double d2 = ops.sq_dist_i8(q2.data(), lattice_row(i), dim_);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.index = i;
    }
  }
  best.distance = std::sqrt(best_d2);
  return best;
}

double NetHandle::point_distance(std::size_t i, std::size_t j) const {
  if (i >= count_ || j >= count_) throw InvalidInput("point_distance: index out of range");
  const std::int8_t* a = lattice_row(i);
  const std::int8_t* b = lattice_row(j);
  long ss = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const long d = a[k] - b[k];
    ss += d * d;
  }
  return std::sqrt(static_cast<double>(ss)) / 2.0;
}

CoveringCheck NetHandle::verify_covering(std::uint64_t num_queries, std::uint64_t seed) const {
  RngStream stream = derive_stream(seed, "net-covering", dim_);
  CoveringCheck check;
  check.queries = num_queries;
  for (std::uint64_t i = 0; i < num_queries; ++i) {
    RealVector q(stream.in_ball(dim_, radius_));
    const NearestResult r = nearest(q);
    if (r.distance > check.max_distance) {
      check.max_distance = r.distance;
      check.argmax_query = q;
    }
  }
  return check;
}

double NetHandle::covering_slack() const { return std::sqrt(static_cast<double>(dim_)) / 4.0; }

double NetHandle::recompute_separation() const {
  return audit_lattice_separation(lattice_, dim_, count_).separation;
}

std::uint64_t NetHandle::count_pairs_below_one() const {
  return audit_lattice_separation(lattice_, dim_, count_).pairs_below_one;
}

void NetHandle::finalize() {
  const SeparationAudit audit = audit_lattice_separation(lattice_, dim_, count_);
  if (audit.pairs_below_one != 0)
    throw std::logic_error("greedy net construction produced points at distance < 1");
  separation_ = audit.separation;
  if (count_ >= kNearestBruteThreshold) grid_ = std::make_shared<GridIndex>(lattice_, dim_, count_);
}

NetHandle build_greedy_net(std::size_t dim, double radius, std::uint64_t seed) {
  if (dim < 1 || dim > kMaxDim) throw InvalidInput("build_greedy_net: dim must be in [1, 10]");
  if (!(radius >= 0.0)) throw InvalidInput("build_greedy_net: radius must be >= 0");
  const int m_max = static_cast<int>(std::floor(4.0 * radius * radius + 1e-9));
  const int root_m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(m_max)) + 1e-9));
  if (root_m > kMaxAbsCoord) throw InvalidInput("build_greedy_net: radius too large (must be < 15)");

  const int keybits = std::max(kCoordBits * (static_cast<int>(dim) - 1), 1);
  const int width = 2 * root_m + 1;

  NetHandle net;
  net.dim_ = dim;
  net.radius_ = radius;
  net.seed_ = seed;
  if (keybits + width + 1 <= 64) {
    GreedyBuilder<BlockedPacked> builder(dim, radius, BlockedPacked(keybits, 1 << 16));
    builder.run();
    net.lattice_ = builder.take_points();
    net.count_ = builder.accepted();
  } else {
    GreedyBuilder<BlockedSplit> builder(dim, radius, BlockedSplit(1 << 16));
    builder.run();
    net.lattice_ = builder.take_points();
    net.count_ = builder.accepted();
  }
  net.finalize();
  return net;
}

NearestResult nearest_net_point(const NetHandle& net, const RealVector& query) {
  return net.nearest(query);
}

double verify_net_covering(const NetHandle& net, std::uint64_t num_queries, std::uint64_t seed) {
  return net.verify_covering(num_queries, seed).max_distance;
}

void save_net(const NetHandle& net, const std::string& points_csv, const std::string& sidecar_json) {
  std::ofstream f(points_csv, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + points_csv);
  std::string line;
  for (std::size_t i = 0; i < net.size(); ++i) {
    line.clear();
    const std::int8_t* row = net.lattice_row(i);
    for (std::size_t j = 0; j < net.dim(); ++j) {
      if (j) line += ',';
      line += io::format_double(0.5 * static_cast<double>(row[j]));
    }
    line += "\r\n";
    f.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  if (!f) throw std::runtime_error("write failed: " + points_csv);
  f.close();

  io::json sidecar;
  sidecar["dim"] = net.dim();
  sidecar["radius"] = net.radius();
  sidecar["separation"] = net.separation();
  sidecar["seed"] = net.seed();
  sidecar["stream_version"] = net.stream_version();
  io::write_json_file(sidecar_json, sidecar);
}

NetHandle load_net(const std::string& points_csv, const std::string& sidecar_json) {
  const io::json sidecar = io::read_json_file(sidecar_json);
  NetHandle net;
  net.dim_ = sidecar.at("dim").get<std::size_t>();
  net.radius_ = sidecar.at("radius").get<double>();
  net.seed_ = sidecar.at("seed").get<std::uint64_t>();
  net.stream_version_ = sidecar.at("stream_version").get<std::string>();
  if (net.dim_ < 1 || net.dim_ > kMaxDim) throw InvalidInput("load_net: bad dimension");

  const std::string text = io::read_text_file(points_csv);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::size_t end = eol;
    if (end > pos && text[end - 1] == '\r') --end;
    if (end > pos) {
      const std::string row = text.substr(pos, end - pos);
      std::stringstream ss(row);
      std::string field;
      std::size_t j = 0;
      while (std::getline(ss, field, ',')) {
        if (j >= net.dim_) throw InvalidInput("load_net: too many coordinates in row");
        const double x = std::strtod(field.c_str(), nullptr);
        const double u = 2.0 * x;
        const double ru = std::round(u);
        if (std::fabs(u - ru) > 1e-9 || std::fabs(ru) > kMaxAbsCoord)
          throw InvalidInput("load_net: point is not on the half-integer lattice");
        net.lattice_.push_back(static_cast<std::int8_t>(ru));
        ++j;
      }
      if (j != net.dim_) throw InvalidInput("load_net: wrong number of coordinates in row");
      ++net.count_;
    }
    pos = eol + 1;
  }
  if (net.count_ == 0) throw InvalidInput("load_net: empty net");
  for (std::size_t j = 0; j < net.dim_; ++j)
    if (net.lattice_[j] != 0) throw InvalidInput("load_net: first point must be the zero vector");
  net.finalize();
  return net;
}

// ---------------------------------------------------------------------------
// ProductNet
// ---------------------------------------------------------------------------

ProductNet::ProductNet(std::shared_ptr<const NetHandle> component_net, int p0, int p_max)
    : net_(std::move(component_net)), p0_(p0), p_max_(p_max) {
  if (net_ == nullptr) throw InvalidInput("product net: null component net");
  ProductShape{p0_, p_max_, net_->dim()}.validate();
}

void ProductNet::check(const Indices& idx) const {
  if (idx.size() != static_cast<std::size_t>(p_max_ - p0_ + 1))
    throw InvalidInput("product net: wrong number of component indices");
  for (const std::uint32_t i : idx)
    if (i >= net_->size()) throw InvalidInput("product net: component index out of range");
}

ProductPoint ProductNet::materialize(const Indices& idx) const {
  check(idx);
  std::vector<RealVector> comps;
  comps.reserve(idx.size());
  for (const std::uint32_t i : idx) comps.push_back(net_->point(i));
  return ProductPoint(shape(), std::move(comps));
}

ProductPoint ProductNet::net_f(const Indices& idx) const {
  check(idx);
  std::vector<RealVector> comps;
  comps.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    comps.push_back(mazur(net_->point(idx[k]), p0_ + static_cast<int>(k)));
  return ProductPoint(shape(), std::move(comps));
}

double ProductNet::sup_distance(const Indices& a, const Indices& b) const {
  check(a);
  check(b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, net_->point_distance(a[k], b[k]));
  return worst;
}

ProductNet::Indices ProductNet::sample(RngStream& stream) const {
  Indices idx(static_cast<std::size_t>(p_max_ - p0_ + 1));
  for (auto& i : idx) i = static_cast<std::uint32_t>(stream.below(net_->size()));
  return idx;
}

}  // namespace netext
