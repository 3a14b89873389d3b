#include "ekr/genperm.hpp"

#include <algorithm>
#include <sstream>

#include "ekr/arith.hpp"
#include "ekr/error.hpp"

namespace ekr {

Instance::Instance(std::uint32_t k, std::uint32_t r, std::uint32_t n) : k_(k), r_(r), n_(n) {
  if (k == 0 || n == 0 || r == 0 || r > std::min(k, n))
    throw InvalidArgument("instance " + to_string() + " needs 1 <= r <= min(k, n)");
  auto size = [&]() -> std::optional<std::uint64_t> {
    auto c = binomial(k, r);
    auto f = falling_factorial(n, r);
    if (!c || !f) return std::nullopt;
    return checked_mul(*c, *f);
  }();
  if (!size) throw InstanceTooLarge("family size of " + to_string() + " overflows 64 bits");
}

std::string Instance::to_string() const {
  return "(" + std::to_string(k_) + "," + std::to_string(r_) + "," + std::to_string(n_) + ")";
}

GenPerm::GenPerm(std::vector<OrderedPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<std::uint32_t> ys;
  ys.reserve(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].x == 0 || pairs_[i].y == 0)
      throw InvalidArgument("coordinates are 1-indexed");
    if (i > 0 && pairs_[i].x == pairs_[i - 1].x)
      throw InvalidArgument("repeated x coordinate " + std::to_string(pairs_[i].x));
    ys.push_back(pairs_[i].y);
  }
  std::sort(ys.begin(), ys.end());
  if (auto it = std::adjacent_find(ys.begin(), ys.end()); it != ys.end())
    throw InvalidArgument("repeated y coordinate " + std::to_string(*it));
}

bool GenPerm::contains(OrderedPair p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

bool GenPerm::fits(const Instance& inst) const {
  if (pairs_.size() != inst.r()) return false;
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [&](OrderedPair p) { return p.x <= inst.k() && p.y <= inst.n(); });
}

std::string GenPerm::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    os << (i ? "," : "") << '(' << pairs_[i].x << ',' << pairs_[i].y << ')';
  os << '}';
  return os.str();
}

std::uint64_t family_size(const Instance& inst) {
  return mul_or_throw(binomial_or_throw(inst.k(), inst.r()),
                      falling_factorial_or_throw(inst.n(), inst.r()));
}

std::uint64_t star_bound(const Instance& inst) {
  const auto k = inst.k(), r = inst.r(), n = inst.n();
  const auto lhs = mul_or_throw(binomial_or_throw(k - 1, r - 1),
                                falling_factorial_or_throw(n - 1, r - 1));
  const auto rhs = mul_or_throw(binomial_or_throw(n - 1, r - 1),
                                falling_factorial_or_throw(k - 1, r - 1));
  if (lhs != rhs)
    throw Error("star bound closed forms disagree at " + inst.to_string());
  return lhs;
}

Rank rank(const GenPerm& g, const Instance& inst) {
  if (!g.fits(inst))
    throw InvalidArgument("member " + g.to_string() + " is not in P" + inst.to_string());
  const auto k = inst.k(), r = inst.r(), n = inst.n();
  const auto pairs = g.pairs();

  // Lexicographic rank of the x-support among r-subsets of [k].
  Rank support = 0;
  std::uint32_t prev = 0;
  for (std::uint32_t i = 1; i <= r; ++i) {
    const auto c = pairs[i - 1].x;
    for (std::uint32_t v = prev + 1; v < c; ++v) support += *binomial(k - v, r - i);
    prev = c;
  }

  // Lehmer digits of the y-sequence in canonical x order.
  Rank injection = 0;
  std::vector<bool> used(n + 1, false);
  for (std::uint32_t i = 1; i <= r; ++i) {
    const auto y = pairs[i - 1].y;
    std::uint64_t digit = 0;
    for (std::uint32_t v = 1; v < y; ++v)
      if (!used[v]) ++digit;
    used[y] = true;
    injection += digit * *falling_factorial(n - i, r - i);
  }
  return support * *falling_factorial(n, r) + injection;
}

GenPerm unrank(Rank index, const Instance& inst) {
  const auto total = family_size(inst);
  if (index >= total)
    throw InvalidArgument("rank " + std::to_string(index) + " out of range for P" +
                          inst.to_string());
  const auto k = inst.k(), r = inst.r(), n = inst.n();
  const auto block = *falling_factorial(n, r);
  Rank support = index / block;
  Rank injection = index % block;

  std::vector<OrderedPair> pairs(r);
  std::uint32_t v = 1;
  for (std::uint32_t i = 1; i <= r; ++i) {
    while (true) {
      const auto c = *binomial(k - v, r - i);
      if (support < c) break;
      support -= c;
      ++v;
    }
    pairs[i - 1].x = v++;
  }

  std::vector<std::uint32_t> unused(n);
  for (std::uint32_t y = 1; y <= n; ++y) unused[y - 1] = y;
  for (std::uint32_t i = 1; i <= r; ++i) {
    const auto place = *falling_factorial(n - i, r - i);
    const auto digit = injection / place;
    injection %= place;
    pairs[i - 1].y = unused[digit];
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return GenPerm(std::move(pairs));
}

bool intersects(const GenPerm& a, const GenPerm& b) {
  // Both sides are sorted by x with distinct x, so a merge finds shared pairs.
  auto pa = a.pairs();
  auto pb = b.pairs();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    if (pa[i].x < pb[j].x) {
      ++i;
    } else if (pb[j].x < pa[i].x) {
      ++j;
    } else {
      if (pa[i].y == pb[j].y) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

Family::Family(Instance inst) : inst_(inst), bits_(family_size(inst)) {}

Family::Family(Instance inst, Bitset members) : inst_(inst), bits_(std::move(members)) {
  if (bits_.size() != family_size(inst_))
    throw InvalidArgument("member bit vector length does not match family size");
}

void Family::insert(const GenPerm& g) { bits_.set(rank(g, inst_)); }

void Family::insert_rank(Rank i) {
  if (i >= bits_.size()) throw InvalidArgument("rank " + std::to_string(i) + " out of range");
  bits_.set(i);
}

void Family::erase_rank(Rank i) {
  if (i >= bits_.size()) throw InvalidArgument("rank " + std::to_string(i) + " out of range");
  bits_.reset(i);
}

bool Family::contains(const GenPerm& g) const {
  return g.fits(inst_) && bits_.test(rank(g, inst_));
}

std::vector<Rank> Family::ranks() const {
  std::vector<Rank> out;
  for (auto i : bits_.indices()) out.push_back(i);
  return out;
}

std::vector<GenPerm> Family::members() const {
  std::vector<GenPerm> out;
  for (auto i : bits_.indices()) out.push_back(unrank(i, inst_));
  return out;
}

Family Family::full(const Instance& inst) {
  Family f(inst);
  f.bits_.set_all();
  return f;
}

void check_pair(const Instance& inst, OrderedPair p) {
  if (p.x < 1 || p.x > inst.k() || p.y < 1 || p.y > inst.n())
    throw InvalidArgument("pair (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                          ") outside [k]x[n] for " + inst.to_string());
}

Family star(const Instance& inst, OrderedPair centre) {
  check_pair(inst, centre);
  Family f(inst);
  for (auto it = enumerate(inst).begin(), end = enumerate(inst).end(); it != end; ++it)
    if ((*it).contains(centre)) f.insert_rank(it.rank());
  return f;
}

std::optional<OrderedPair> classify_star(const Family& f) {
  if (f.empty()) throw InvalidArgument("cannot classify an empty family");
  const auto& inst = f.instance();
  auto members = f.members();
  // Candidate centres are the pairs common to every member.
  std::vector<OrderedPair> common(members.front().pairs().begin(), members.front().pairs().end());
  for (const auto& m : members) {
    std::erase_if(common, [&](OrderedPair p) { return !m.contains(p); });
    if (common.empty()) return std::nullopt;
  }
  if (f.size() != star_bound(inst)) return std::nullopt;
  for (auto c : common)
    if (star(inst, c) == f) return c;
  return std::nullopt;
}

std::optional<std::pair<Rank, Rank>> find_disjoint_pair(const Family& f) {
  const auto ranks = f.ranks();
  const auto members = f.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!intersects(members[i], members[j])) return std::pair{ranks[i], ranks[j]};
  return std::nullopt;
}

bool is_intersecting_family(const Family& f) { return !find_disjoint_pair(f).has_value(); }

GenPerm transpose(const GenPerm& g) {
  std::vector<OrderedPair> swapped;
  swapped.reserve(g.size());
  for (auto p : g.pairs()) swapped.push_back({p.y, p.x});
  return GenPerm(std::move(swapped));
}

Family transpose(const Family& f) {
  const auto dual = f.instance().transposed();
  Family out(dual);
  for (const auto& m : f.members()) out.insert(transpose(m));
  return out;
}

}  // namespace ekr
