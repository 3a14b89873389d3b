#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ekr/bitset.hpp"

namespace ekr {

using Rank = std::uint64_t;

/// The parameters (k, r, n) of the family of generalised permutations:
/// r-sets of pairs from [k] x [n] with distinct first and distinct second
/// coordinates. Construction rejects r outside [1, min(k, n)] and any
/// instance whose family size does not fit in 64 bits.
class Instance {
 public:
  Instance(std::uint32_t k, std::uint32_t r, std::uint32_t n);

  std::uint32_t k() const { return k_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t n() const { return n_; }

  /// The instance (n, r, k) reached through transpose.
  Instance transposed() const { return Instance(n_, r_, k_); }

  std::string to_string() const;

  friend auto operator<=>(const Instance&, const Instance&) = default;

 private:
  std::uint32_t k_;
  std::uint32_t r_;
  std::uint32_t n_;
};

struct OrderedPair {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
};

/// A member of P_{k,r,n}, stored with pairs sorted by ascending x.
class GenPerm {
 public:
  GenPerm() = default;
  /// Accepts pairs in any order; throws InvalidArgument on repeated x or y
  /// coordinates or on zero coordinates.
  explicit GenPerm(std::vector<OrderedPair> pairs);

  std::span<const OrderedPair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool contains(OrderedPair p) const;

  /// True iff the member belongs to P_{k,r,n} of `inst`.
  bool fits(const Instance& inst) const;

  std::string to_string() const;

  friend auto operator<=>(const GenPerm&, const GenPerm&) = default;

 private:
  std::vector<OrderedPair> pairs_;
};

std::uint64_t family_size(const Instance& inst);

/// Size of every star: C(k-1,r-1)(n-1)!/(n-r)!. Both closed forms are
/// evaluated and compared.
std::uint64_t star_bound(const Instance& inst);

Rank rank(const GenPerm& g, const Instance& inst);
GenPerm unrank(Rank i, const Instance& inst);

/// Members of P_{k,r,n} in rank order.
class MemberRange {
 public:
  class iterator {
   public:
    using value_type = GenPerm;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const Instance* inst, Rank i) : inst_(inst), index_(i) {}

    GenPerm operator*() const { return unrank(index_, *inst_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++index_;
      return tmp;
    }
    Rank rank() const { return index_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const Instance* inst_ = nullptr;
    Rank index_ = 0;
  };

  explicit MemberRange(Instance inst) : inst_(inst), size_(family_size(inst_)) {}
  iterator begin() const { return {&inst_, 0}; }
  iterator end() const { return {&inst_, size_}; }
  std::uint64_t size() const { return size_; }

 private:
  Instance inst_;
  std::uint64_t size_;
};

inline MemberRange enumerate(const Instance& inst) { return MemberRange(inst); }

/// True iff the two members share an ordered pair.
bool intersects(const GenPerm& a, const GenPerm& b);

/// A subfamily of P_{k,r,n} as a bit vector indexed by rank.
class Family {
 public:
  explicit Family(Instance inst);
  Family(Instance inst, Bitset members);

  const Instance& instance() const { return inst_; }
  const Bitset& bits() const { return bits_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  void insert(const GenPerm& g);
  void insert_rank(Rank i);
  void erase_rank(Rank i);
  bool contains(const GenPerm& g) const;
  bool contains_rank(Rank i) const { return bits_.test(i); }

  std::vector<Rank> ranks() const;
  std::vector<GenPerm> members() const;

  static Family full(const Instance& inst);

  friend bool operator==(const Family& a, const Family& b) {
    return a.inst_ == b.inst_ && a.bits_ == b.bits_;
  }

 private:
  Instance inst_;
  Bitset bits_;
};

void check_pair(const Instance& inst, OrderedPair p);

Family star(const Instance& inst, OrderedPair centre);

/// The centre c such that f == star(inst, c), or nullopt. Throws
/// InvalidArgument on an empty family.
std::optional<OrderedPair> classify_star(const Family& f);

bool is_intersecting_family(const Family& f);

/// First member pair (by rank) that fails to intersect, if any.
std::optional<std::pair<Rank, Rank>> find_disjoint_pair(const Family& f);

/// Swap both coordinates of every pair: P_{k,r,n} -> P_{n,r,k}.
GenPerm transpose(const GenPerm& g);
Family transpose(const Family& f);

}  // namespace ekr
