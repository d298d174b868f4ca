#pragma once

// The set-partition lattice P(n) and the subset lattice B(n).
//
// Ground sets are {1, ..., n}. A SetPartition is stored as its restricted
// growth string (RGS): label[i] is the index of the block containing i+1, with
// blocks numbered in order of their minimum element. That labelling is the
// canonical form, so equality is label equality.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffp/numeric.hpp"

namespace ffp {

inline constexpr int kDefaultPartitionCap = 12;
inline constexpr int kDefaultTupleCap = 8;
inline constexpr int kDefaultNoncrossingCap = 10;
/// Tuple families use 32-bit masks; this bounds any user-configured tuple cap.
inline constexpr int kMaxTupleGround = 24;

class SetPartition {
 public:
  /// Builds from arbitrary blocks; validates and canonicalizes. Elements are 1..n.
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
  /// Builds from a restricted growth string (0-based block labels).
  static SetPartition from_rgs(std::vector<int> rgs);
  /// 0_n: all singletons.
  static SetPartition finest(int n);
  /// 1_n: a single block.
  static SetPartition coarsest(int n);

  int ground_size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return blocks_; }
  const std::vector<int>& rgs() const { return rgs_; }
  /// Block index (0-based, in canonical order) of element e in 1..n.
  int block_of(int e) const { return rgs_[static_cast<std::size_t>(e - 1)]; }
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;

  bool operator==(const SetPartition&) const = default;

 private:
  SetPartition(std::vector<int> rgs, int blocks) : rgs_(std::move(rgs)), blocks_(blocks) {}

  std::vector<int> rgs_;
  int blocks_ = 0;
};

std::string to_string(const SetPartition& p);

struct Subset {
  int n = 0;
  std::vector<int> members;  // sorted, distinct, in 1..n

  static Subset make(int n, std::vector<int> members);
  std::uint32_t mask() const;
  std::size_t size() const { return members.size(); }
};

/// Position in the RGS-lexicographic enumeration of P(n). Each enumerator
/// owns its cursor, so independent streams never interfere.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n, int cap = kDefaultPartitionCap);

  bool done() const { return done_; }
  void advance();
  const std::vector<int>& rgs() const { return rgs_; }
  int block_count() const { return prefix_max_.empty() ? 0 : prefix_max_.back() + 1; }
  SetPartition current() const { return SetPartition::from_rgs(rgs_); }

 private:
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  bool done_ = false;
};

/// Calls f(rgs, block_count) for every partition of [n] in RGS order.
void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f,
                        int cap = kDefaultPartitionCap);

std::vector<SetPartition> enumerate_partitions(int n, int cap = kDefaultPartitionCap);

bool is_noncrossing(const SetPartition& p);
std::vector<SetPartition> enumerate_noncrossing(int n, int cap = kDefaultPartitionCap);

/// Block-size type of a set partition: counts[i-1] = number of blocks of size i.
struct BlockType {
  int n = 0;
  std::vector<int> counts;
  int blocks = 0;
  Integer multiplicity;  // n! / prod(p_i! (i!)^{p_i})
};

/// Every block-size type of P(n) with its multiplicity. The table for each n
/// is computed once and shared read-only.
std::shared_ptr<const std::vector<BlockType>> enumerate_by_type(int n);

SetPartition join(const SetPartition& a, const SetPartition& b);
bool is_refinement(const SetPartition& finer, const SetPartition& coarser);

/// Moebius function of the interval [pi, sigma] in P(n).
Integer mobius(const SetPartition& pi, const SetPartition& sigma);
/// mu(pi, 1_n) = (-1)^{|pi|-1} (|pi|-1)!
Integer mobius_to_top(int blocks);
/// mu(0_n, sigma) for a partition with the given block sizes.
Integer mobius_from_bottom(std::span<const int> block_sizes);

Integer mobius_subset(const Subset& w, const Subset& v);

/// tau(W) = {W} together with the singletons of the complement.
SetPartition tau_embed(const Subset& w);
/// sigma over [k] expanded so that point i becomes an interval of length sizes[i-1].
SetPartition hat_embed(const SetPartition& sigma, std::span<const int> sizes);

/// Number of (W_1..W_k), |W_i| = m_i, covering [n]. Brute force.
Integer count_R(int n, std::span<const int> sizes, int cap = kDefaultTupleCap);
/// Number of essential tuples: covering tuples whose tau-embeddings join to 1_n.
Integer count_S(int n, std::span<const int> sizes, int cap = kDefaultTupleCap);
/// Tuples of subsets of [L], |W_i| = m_i, with join of tau(W_i) and the interval
/// partition of the given lengths equal to 1_L. Brute force.
Integer count_T(std::span<const int> sizes, std::span<const int> lengths,
                int cap = kDefaultTupleCap);
/// (prod l_j) * multinomial(M-k; m_1-1, ..., m_k-1) * (sum l_j)^(k-1)
Integer count_T_closed(std::span<const int> sizes, std::span<const int> lengths);

/// #{sigma in P(M) : sigma v 0hat_k = 1_M, |sigma| = blocks}, brute force over P(M).
/// blocks defaults (when < 0) to M - (k-1).
Integer count_join_full(std::span<const int> sizes, int blocks = -1,
                        int cap = kDefaultPartitionCap);
/// (M-(k-1))^(k-2) * prod m_i, for |sigma| = M-(k-1).
Rational count_join_full_closed(std::span<const int> sizes);

}  // namespace ffp
