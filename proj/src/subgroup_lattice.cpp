#include "conglab/subgroup_lattice.hpp"

#include <algorithm>
#include <unordered_set>

#include "conglab/errors.hpp"

namespace conglab {

namespace {

constexpr std::size_t kDenseLimit = 4096;

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t w : b) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Dense {
  std::size_t n = 0;
  std::vector<std::uint16_t> mul;  // n*n
  std::vector<std::uint16_t> inv;
  std::uint16_t id = 0;

  std::uint16_t m(std::size_t a, std::size_t b) const { return mul[a * n + b]; }
};

struct Sub {
  Bits bits;
  std::vector<std::uint16_t> elems;
  std::vector<std::uint16_t> gens;
};

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

Sub close(const Dense& d, const Sub& base, std::uint16_t extra) {
  Sub s = base;
  s.gens.push_back(extra);
  for (std::size_t i = 0; i < s.elems.size(); ++i) {
    for (std::uint16_t g : s.gens) {
      std::uint16_t y = d.m(s.elems[i], g);
      if (!test(s.bits, y)) {
        set(s.bits, y);
        s.elems.push_back(y);
      }
    }
  }
  return s;
}

Bits conjugate_bits(const Dense& d, const Sub& s, std::size_t g) {
  Bits out(s.bits.size(), 0);
  for (std::uint16_t x : s.elems) set(out, d.m(d.m(d.inv[g], x), g));
  return out;
}

}  // namespace

std::vector<SubgroupClass> subgroup_classes(const FinMatGroup& g, bool with_minus_identity) {
  const std::size_t n = g.order();
  if (n > kDenseLimit) {
    throw CapExceeded("subgroup enumeration needs |G| <= " + std::to_string(kDenseLimit));
  }
  SL2 ops(g.ring());
  const auto& el = g.elements();
  Dense d;
  d.n = n;
  d.mul.resize(n * n);
  d.inv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d.mul[i * n + j] = static_cast<std::uint16_t>(g.index_of(ops.mul(el[i], el[j])));
    }
    d.inv[i] = static_cast<std::uint16_t>(g.index_of(ops.inv(el[i])));
  }
  d.id = static_cast<std::uint16_t>(g.index_of(ops.identity()));
  const std::size_t words = (n + 63) / 64;

  // cyclic subgroups of prime-power order, by generator
  std::vector<std::uint16_t> cyclic_gens;
  {
    std::unordered_set<Bits, BitsHash> seen;
    for (std::size_t x = 0; x < n; ++x) {
      if (x == d.id) continue;
      Bits b(words, 0);
      std::size_t ord = 0;
      std::size_t y = d.id;
      do {
        set(b, y);
        y = d.m(y, x);
        ++ord;
      } while (y != d.id);
      std::size_t p = 2;
      while (ord % p != 0) ++p;
      std::size_t r = ord;
      while (r % p == 0) r /= p;
      if (r != 1) continue;
      if (seen.insert(b).second) cyclic_gens.push_back(static_cast<std::uint16_t>(x));
    }
  }

  Sub start;
  start.bits.assign(words, 0);
  set(start.bits, d.id);
  start.elems.push_back(d.id);
  if (with_minus_identity) {
    std::size_t mi = g.index_of(ops.minus_identity());
    if (mi == static_cast<std::size_t>(-1)) throw PreconditionError("-I is not in G");
    if (mi != d.id) start = close(d, start, static_cast<std::uint16_t>(mi));
  }

  std::vector<Sub> reps;
  std::vector<std::size_t> class_size;
  std::unordered_set<Bits, BitsHash> known;
  auto register_class = [&](Sub s) {
    std::unordered_set<Bits, BitsHash> conj;
    for (std::size_t x = 0; x < n; ++x) conj.insert(conjugate_bits(d, s, x));
    class_size.push_back(conj.size());
    for (auto& b : conj) known.insert(b);
    reps.push_back(std::move(s));
  };
  register_class(start);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::uint16_t c : cyclic_gens) {
      if (test(reps[i].bits, c)) continue;
      Sub k = close(d, reps[i], c);
      if (known.count(k.bits)) continue;
      register_class(std::move(k));
    }
  }

  std::vector<SubgroupClass> out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::vector<MatCode> gens, elems;
    for (auto x : reps[i].gens) gens.push_back(el[x]);
    for (auto x : reps[i].elems) elems.push_back(el[x]);
    std::sort(elems.begin(), elems.end());
    out.push_back({FinMatGroup::trusted(g.ring(), gens, elems), class_size[i]});
  }
  std::sort(out.begin(), out.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.rep.order() != b.rep.order()) return a.rep.order() < b.rep.order();
    return a.rep.elements() < b.rep.elements();
  });
  return out;
}

}  // namespace conglab
