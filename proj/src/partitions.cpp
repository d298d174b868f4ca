#include "ffp/partitions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ffp/errors.hpp"

namespace ffp {

namespace {

void require_ground(int n) {
  if (n < 1) throw InvalidInput("ground set size must be positive, got " + std::to_string(n));
}

void require_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw CapExceeded(std::string(what) + " limited to size " + std::to_string(cap) + ", requested " +
                      std::to_string(n) + " (raise the cap explicitly to proceed)");
  }
}

/// Relabels arbitrary block labels into restricted growth form.
std::vector<int> canonical_labels(std::span<const int> labels, int* blocks) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  if (blocks) *blocks = static_cast<int>(remap.size());
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::uint32_t full_mask(int n) {
  return n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1U);
}

std::vector<std::uint32_t> masks_with_popcount(int n, int m) {
  std::vector<std::uint32_t> out;
  if (m < 0 || m > n) return out;
  for (std::uint32_t mask = 0; mask <= full_mask(n); ++mask) {
    if (std::popcount(mask) == m) out.push_back(mask);
    if (mask == full_mask(n)) break;
  }
  return out;
}

/// True when the hyperedges connect every vertex of the ground mask.
bool connects(std::span<const std::uint32_t> edges, std::uint32_t ground) {
  if (edges.empty()) return ground == 0;
  std::uint32_t reach = edges[0];
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t e : edges) {
      if ((e & reach) != 0 && (e | reach) != reach) {
        reach |= e;
        grew = true;
      }
    }
  }
  return reach == ground;
}

/// Visits every tuple (W_1..W_k) of subsets of [n] with |W_i| = sizes[i].
template <class Visit>
void for_each_tuple(int n, std::span<const int> sizes, Visit&& visit) {
  std::vector<std::vector<std::uint32_t>> choices;
  choices.reserve(sizes.size());
  for (int m : sizes) {
    choices.push_back(masks_with_popcount(n, m));
    if (choices.back().empty()) return;
  }
  std::vector<std::uint32_t> tuple(sizes.size());
  std::vector<std::size_t> idx(sizes.size(), 0);
  const std::size_t k = sizes.size();
  while (true) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = choices[i][idx[i]];
    visit(std::span<const std::uint32_t>(tuple));
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < choices[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

void require_sizes(std::span<const int> sizes) {
  if (sizes.empty()) throw InvalidInput("at least one size m_i is required");
  for (int m : sizes) {
    if (m < 1) throw InvalidInput("sizes m_i must be positive");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SetPartition

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  require_ground(n);
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int b = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw InvalidInput("partition blocks must be nonempty");
    for (int e : block) {
      if (e < 1 || e > n) {
        throw InvalidInput("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
      }
      if (label[static_cast<std::size_t>(e - 1)] != -1) {
        throw InvalidInput("element " + std::to_string(e) + " appears in two blocks");
      }
      label[static_cast<std::size_t>(e - 1)] = b;
    }
    ++b;
  }
  for (int e = 1; e <= n; ++e) {
    if (label[static_cast<std::size_t>(e - 1)] == -1) {
      throw InvalidInput("element " + std::to_string(e) + " is not covered by any block");
    }
  }
  int count = 0;
  auto rgs = canonical_labels(label, &count);
  return SetPartition(std::move(rgs), count);
}

SetPartition SetPartition::from_rgs(std::vector<int> rgs) {
  if (rgs.empty()) throw InvalidInput("restricted growth string must be nonempty");
  int max_label = -1;
  for (int v : rgs) {
    if (v < 0 || v > max_label + 1) throw InvalidInput("not a restricted growth string");
    max_label = std::max(max_label, v);
  }
  return SetPartition(std::move(rgs), max_label + 1);
}

SetPartition SetPartition::finest(int n) {
  require_ground(n);
  std::vector<int> rgs(static_cast<std::size_t>(n));
  std::iota(rgs.begin(), rgs.end(), 0);
  return SetPartition(std::move(rgs), n);
}

SetPartition SetPartition::coarsest(int n) {
  require_ground(n);
  return SetPartition(std::vector<int>(static_cast<std::size_t>(n), 0), 1);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    out[static_cast<std::size_t>(rgs_[i])].push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(blocks_), 0);
  for (int label : rgs_) ++sizes[static_cast<std::size_t>(label)];
  return sizes;
}

std::string to_string(const SetPartition& p) {
  std::ostringstream os;
  os << '{';
  bool first_block = true;
  for (const auto& block : p.blocks()) {
    if (!first_block) os << ',';
    first_block = false;
    os << '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) os << ',';
      os << block[i];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

Subset Subset::make(int n, std::vector<int> members) {
  if (n < 0) throw InvalidInput("ground set size must be nonnegative");
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw InvalidInput("subset members must be distinct");
  }
  for (int e : members) {
    if (e < 1 || e > n) throw InvalidInput("subset member outside 1..n");
  }
  return Subset{n, std::move(members)};
}

std::uint32_t Subset::mask() const {
  if (n > 32) throw InvalidInput("subset mask limited to n <= 32");
  std::uint32_t m = 0;
  for (int e : members) m |= std::uint32_t{1} << (e - 1);
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration

PartitionEnumerator::PartitionEnumerator(int n, int cap) {
  require_ground(n);
  require_cap(n, cap, "set-partition enumeration");
  rgs_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), 0);
}

void PartitionEnumerator::advance() {
  if (done_) return;
  const int n = static_cast<int>(rgs_.size());
  // Rightmost position that may still grow: rgs[i] <= max(rgs[0..i-1]).
  for (int i = n - 1; i >= 1; --i) {
    const int bound = prefix_max_[static_cast<std::size_t>(i - 1)] + 1;
    if (rgs_[static_cast<std::size_t>(i)] < bound) {
      ++rgs_[static_cast<std::size_t>(i)];
      prefix_max_[static_cast<std::size_t>(i)] =
          std::max(prefix_max_[static_cast<std::size_t>(i - 1)], rgs_[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n; ++j) {
        rgs_[static_cast<std::size_t>(j)] = 0;
        prefix_max_[static_cast<std::size_t>(j)] = prefix_max_[static_cast<std::size_t>(i)];
      }
      return;
    }
  }
  done_ = true;
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f, int cap) {
  for (PartitionEnumerator it(n, cap); !it.done(); it.advance()) f(it.rgs(), it.block_count());
}

std::vector<SetPartition> enumerate_partitions(int n, int cap) {
  std::vector<SetPartition> out;
  for (PartitionEnumerator it(n, cap); !it.done(); it.advance()) out.push_back(it.current());
  return out;
}

bool is_noncrossing(const SetPartition& p) {
  // Arcs join consecutive elements of a block; the partition is non-crossing
  // exactly when no two arcs (a,b), (c,d) interleave as a < c < b < d.
  const auto& rgs = p.rgs();
  const int n = p.ground_size();
  std::vector<int> last(static_cast<std::size_t>(p.block_count()), -1);
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i) {
    int& prev = last[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])];
    if (prev >= 0) arcs.emplace_back(prev, i);
    prev = i;
  }
  for (std::size_t x = 0; x < arcs.size(); ++x) {
    for (std::size_t y = 0; y < arcs.size(); ++y) {
      const auto [a, b] = arcs[x];
      const auto [c, d] = arcs[y];
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

std::vector<SetPartition> enumerate_noncrossing(int n, int cap) {
  std::vector<SetPartition> out;
  for (PartitionEnumerator it(n, cap); !it.done(); it.advance()) {
    SetPartition p = it.current();
    if (is_noncrossing(p)) out.push_back(std::move(p));
  }
  return out;
}

namespace {

void integer_partitions(int remaining, int max_part, std::vector<int>& counts,
                        std::vector<BlockType>& out, int n) {
  if (remaining == 0) {
    BlockType t;
    t.n = n;
    t.counts = counts;
    t.blocks = std::accumulate(counts.begin(), counts.end(), 0);
    Integer denom = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const Integer fi = factorial(static_cast<unsigned>(i + 1));
      denom *= factorial(static_cast<unsigned>(counts[i]));
      for (int c = 0; c < counts[i]; ++c) denom *= fi;
    }
    t.multiplicity = factorial(static_cast<unsigned>(n)) / denom;
    out.push_back(std::move(t));
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[static_cast<std::size_t>(part - 1)];
    integer_partitions(remaining - part, part, counts, out, n);
    --counts[static_cast<std::size_t>(part - 1)];
  }
}

}  // namespace

std::shared_ptr<const std::vector<BlockType>> enumerate_by_type(int n) {
  require_ground(n);
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<BlockType>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<BlockType> types;
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  integer_partitions(n, n, counts, types, n);
  auto table = std::make_shared<const std::vector<BlockType>>(std::move(types));
  cache.emplace(n, table);
  return table;
}

// ---------------------------------------------------------------------------
// Lattice operations

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size()) throw InvalidInput("join of partitions of different sets");
  const int n = a.ground_size();
  DisjointSets sets(n);
  std::vector<int> first_a(static_cast<std::size_t>(a.block_count()), -1);
  std::vector<int> first_b(static_cast<std::size_t>(b.block_count()), -1);
  for (int i = 0; i < n; ++i) {
    int& fa = first_a[static_cast<std::size_t>(a.rgs()[static_cast<std::size_t>(i)])];
    if (fa < 0) fa = i; else sets.unite(fa, i);
    int& fb = first_b[static_cast<std::size_t>(b.rgs()[static_cast<std::size_t>(i)])];
    if (fb < 0) fb = i; else sets.unite(fb, i);
  }
  std::vector<int> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = sets.find(i);
  return SetPartition::from_rgs(canonical_labels(roots, nullptr));
}

bool is_refinement(const SetPartition& finer, const SetPartition& coarser) {
  if (finer.ground_size() != coarser.ground_size()) {
    throw InvalidInput("refinement test between partitions of different sets");
  }
  std::vector<int> host(static_cast<std::size_t>(finer.block_count()), -1);
  for (int i = 0; i < finer.ground_size(); ++i) {
    int& h = host[static_cast<std::size_t>(finer.rgs()[static_cast<std::size_t>(i)])];
    const int c = coarser.rgs()[static_cast<std::size_t>(i)];
    if (h < 0) h = c; else if (h != c) return false;
  }
  return true;
}

Integer mobius_to_top(int blocks) {
  if (blocks < 1) throw InvalidInput("a partition has at least one block");
  Integer v = factorial(static_cast<unsigned>(blocks - 1));
  return (blocks - 1) % 2 == 0 ? v : Integer(-v);
}

Integer mobius_from_bottom(std::span<const int> block_sizes) {
  Integer v = 1;
  for (int s : block_sizes) v *= mobius_to_top(s);
  return v;
}

Integer mobius(const SetPartition& pi, const SetPartition& sigma) {
  if (!is_refinement(pi, sigma)) {
    throw InvalidInput("mobius(pi, sigma) requires pi <= sigma: " + to_string(pi) + " vs " +
                       to_string(sigma));
  }
  // Count the blocks of pi inside each block of sigma.
  std::vector<int> inside(static_cast<std::size_t>(sigma.block_count()), 0);
  std::vector<bool> seen(static_cast<std::size_t>(pi.block_count()), false);
  for (int i = 0; i < pi.ground_size(); ++i) {
    const int b = pi.rgs()[static_cast<std::size_t>(i)];
    if (!seen[static_cast<std::size_t>(b)]) {
      seen[static_cast<std::size_t>(b)] = true;
      ++inside[static_cast<std::size_t>(sigma.rgs()[static_cast<std::size_t>(i)])];
    }
  }
  return mobius_from_bottom(inside);
}

Integer mobius_subset(const Subset& w, const Subset& v) {
  if (w.n != v.n) throw InvalidInput("subsets of different ground sets");
  if (!std::includes(v.members.begin(), v.members.end(), w.members.begin(), w.members.end())) {
    throw InvalidInput("mobius_subset(W, V) requires W to be a subset of V");
  }
  return (v.size() - w.size()) % 2 == 0 ? Integer(1) : Integer(-1);
}

SetPartition tau_embed(const Subset& w) {
  if (w.members.empty()) throw InvalidInput("tau is defined on nonempty subsets only");
  require_ground(w.n);
  std::vector<int> labels(static_cast<std::size_t>(w.n));
  for (int i = 0; i < w.n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
  for (int e : w.members) labels[static_cast<std::size_t>(e - 1)] = 0;
  return SetPartition::from_rgs(canonical_labels(labels, nullptr));
}

SetPartition hat_embed(const SetPartition& sigma, std::span<const int> sizes) {
  if (static_cast<int>(sizes.size()) != sigma.ground_size()) {
    throw InvalidInput("hat_embed needs one interval length per point");
  }
  std::vector<int> labels;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw InvalidInput("interval lengths must be positive");
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[i]), sigma.rgs()[i]);
  }
  return SetPartition::from_rgs(canonical_labels(labels, nullptr));
}

// ---------------------------------------------------------------------------
// Tuple families

Integer count_R(int n, std::span<const int> sizes, int cap) {
  require_ground(n);
  require_sizes(sizes);
  require_cap(n, std::min(cap, kMaxTupleGround), "tuple enumeration");
  const std::uint32_t ground = full_mask(n);
  std::uint64_t count = 0;
  for_each_tuple(n, sizes, [&](std::span<const std::uint32_t> t) {
    std::uint32_t u = 0;
    for (auto w : t) u |= w;
    if (u == ground) ++count;
  });
  return Integer(count);
}

Integer count_S(int n, std::span<const int> sizes, int cap) {
  require_ground(n);
  require_sizes(sizes);
  require_cap(n, std::min(cap, kMaxTupleGround), "tuple enumeration");
  const std::uint32_t ground = full_mask(n);
  std::uint64_t count = 0;
  for_each_tuple(n, sizes, [&](std::span<const std::uint32_t> t) {
    if (connects(t, ground)) ++count;
  });
  return Integer(count);
}

namespace {

void require_lengths(std::span<const int> sizes, std::span<const int> lengths) {
  require_sizes(sizes);
  const int m_total = std::accumulate(sizes.begin(), sizes.end(), 0);
  const int expected = m_total - (static_cast<int>(sizes.size()) - 1);
  if (static_cast<int>(lengths.size()) != expected) {
    throw InvalidInput("T family needs M-(k-1) = " + std::to_string(expected) + " lengths, got " +
                       std::to_string(lengths.size()));
  }
  for (int l : lengths) {
    if (l < 1) throw InvalidInput("lengths l_j must be positive");
  }
}

}  // namespace

Integer count_T(std::span<const int> sizes, std::span<const int> lengths, int cap) {
  require_lengths(sizes, lengths);
  const int L = std::accumulate(lengths.begin(), lengths.end(), 0);
  require_cap(L, std::min(cap, kMaxTupleGround), "tuple enumeration");
  const std::uint32_t ground = full_mask(L);
  std::vector<std::uint32_t> edges;
  int offset = 0;
  for (int l : lengths) {
    edges.push_back(full_mask(l) << offset);
    offset += l;
  }
  const std::size_t base = edges.size();
  edges.resize(base + sizes.size());
  std::uint64_t count = 0;
  for_each_tuple(L, sizes, [&](std::span<const std::uint32_t> t) {
    std::copy(t.begin(), t.end(), edges.begin() + static_cast<std::ptrdiff_t>(base));
    if (connects(edges, ground)) ++count;
  });
  return Integer(count);
}

Integer count_T_closed(std::span<const int> sizes, std::span<const int> lengths) {
  require_lengths(sizes, lengths);
  const long long k = static_cast<long long>(sizes.size());
  const long long m_total = std::accumulate(sizes.begin(), sizes.end(), 0LL);
  Integer prod = 1;
  long long sum = 0;
  for (int l : lengths) {
    prod *= l;
    sum += l;
  }
  std::vector<long long> parts;
  for (int m : sizes) parts.push_back(m - 1);
  return prod * multinomial(m_total - k, parts) * ipow(Integer(sum), static_cast<unsigned long long>(k - 1));
}

Integer count_join_full(std::span<const int> sizes, int blocks, int cap) {
  require_sizes(sizes);
  const int k = static_cast<int>(sizes.size());
  const int m_total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (blocks < 0) blocks = m_total - (k - 1);
  require_cap(m_total, cap, "set-partition enumeration");
  std::vector<int> interval;
  for (int i = 0; i < k; ++i) interval.insert(interval.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]), i);
  std::uint64_t count = 0;
  for_each_partition(
      m_total,
      [&](const std::vector<int>& rgs, int nblocks) {
        if (nblocks != blocks) return;
        DisjointSets sets(nblocks + k);
        int components = nblocks + k;
        for (int e = 0; e < m_total; ++e) {
          if (sets.unite(rgs[static_cast<std::size_t>(e)], nblocks + interval[static_cast<std::size_t>(e)])) {
            --components;
          }
        }
        if (components == 1) ++count;
      },
      cap);
  return Integer(count);
}

Rational count_join_full_closed(std::span<const int> sizes) {
  require_sizes(sizes);
  const long long k = static_cast<long long>(sizes.size());
  const long long m_total = std::accumulate(sizes.begin(), sizes.end(), 0LL);
  Rational prod = 1;
  for (int m : sizes) prod *= m;
  return prod * ipow_signed(Rational(m_total - (k - 1)), k - 2);
}

}  // namespace ffp
