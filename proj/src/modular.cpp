#include "conglab/modular.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <unordered_map>

#include "conglab/errors.hpp"

namespace conglab {

namespace {

using Perm = std::vector<std::uint32_t>;

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (std::uint32_t x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

/// Relabels p so that points are numbered in order of first appearance
/// when base's orbit is scanned breadth first through S then T.
PermRep relabel_from(const PermRep& p, std::uint32_t base) {
  std::size_t n = p.degree();
  std::vector<std::uint32_t> label(n, UINT32_MAX), order{base};
  label[base] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const Perm* g : {&p.S, &p.T}) {
      std::uint32_t y = (*g)[order[k]];
      if (label[y] == UINT32_MAX) {
        label[y] = static_cast<std::uint32_t>(order.size());
        order.push_back(y);
      }
    }
  }
  PermRep out{Perm(n), Perm(n)};
  for (std::size_t x = 0; x < n; ++x) {
    out.S[label[x]] = label[p.S[x]];
    out.T[label[x]] = label[p.T[x]];
  }
  return out;
}

/// 2x2 matrices over Z/n with entries in [0, n).
struct ModMat {
  std::array<std::uint64_t, 4> e;
};

class ModArith {
 public:
  explicit ModArith(std::uint64_t n) : n_(n) {}
  ModMat mul(const ModMat& x, const ModMat& y) const {
    auto f = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
      return (a * b + c * d) % n_;
    };
    return {{f(x.e[0], y.e[0], x.e[1], y.e[2]), f(x.e[0], y.e[1], x.e[1], y.e[3]),
             f(x.e[2], y.e[0], x.e[3], y.e[2]), f(x.e[2], y.e[1], x.e[3], y.e[3])}};
  }
  std::uint64_t code(const ModMat& x) const {
    return ((x.e[0] * n_ + x.e[1]) * n_ + x.e[2]) * n_ + x.e[3];
  }
  /// The smaller code of x and -x.
  std::uint64_t projective_code(const ModMat& x) const {
    ModMat m;
    for (int i = 0; i < 4; ++i) m.e[i] = (n_ - x.e[i]) % n_;
    return std::min(code(x), code(m));
  }
  ModMat identity() const { return {{1 % n_, 0, 0, 1 % n_}}; }
  ModMat S() const { return {{0, (n_ - 1) % n_, 1 % n_, 0}}; }
  ModMat T() const { return {{1 % n_, 1 % n_, 0, 1 % n_}}; }

 private:
  std::uint64_t n_;
};

std::size_t sl2_formula(std::size_t n) {
  BigInt order = BigInt(n) * n * n;
  for (const auto& [p, e] : factor_integer(BigInt(n), BigInt(n))) {
    order = order / (p * p) * (p * p - 1);
  }
  return to_size(order);
}

/// Breadth-first walk of <S, T> in SL2(Z/n), or PSL2(Z/n) when projective;
/// visit(x, g, y, fresh) is called on every edge x -> x*g with g in {0: S, 1: T}.
template <class Visit>
std::size_t walk(std::size_t n, bool projective, const Caps& caps, Visit&& visit) {
  std::size_t expect = sl2_formula(n);
  if (projective && n > 2) expect /= 2;
  if (expect > caps.group) {
    throw CapExceeded("|SL2(Z/" + std::to_string(n) + ")| exceeds the group cap " +
                      std::to_string(caps.group));
  }
  ModArith z(n);
  auto key = [&](const ModMat& m) { return projective ? z.projective_code(m) : z.code(m); };
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<ModMat> elems{z.identity()};
  index.emplace(key(elems[0]), 0);
  const std::array<ModMat, 2> gens{z.S(), z.T()};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (std::uint32_t g = 0; g < 2; ++g) {
      ModMat y = z.mul(elems[k], gens[g]);
      auto [it, fresh] = index.emplace(key(y), static_cast<std::uint32_t>(elems.size()));
      if (fresh) elems.push_back(y);
      if (!visit(static_cast<std::uint32_t>(k), g, it->second, fresh)) return elems.size();
    }
  }
  if (elems.size() != expect) throw InternalError("SL2(Z/n) walk has the wrong size");
  return elems.size();
}

struct Tables {
  std::size_t max;
  std::size_t count = 1;
  std::vector<int> s, u, ui;
};

bool u_cycles_ok(const Tables& t) {
  for (std::size_t x = 0; x < t.count; ++x) {
    int p1 = t.u[x];
    if (p1 < 0 || p1 == static_cast<int>(x)) continue;
    int p2 = t.u[p1];
    if (p2 < 0) continue;
    if (p2 == static_cast<int>(x)) return false;
    int p3 = t.u[p2];
    if (p3 >= 0 && p3 != static_cast<int>(x)) return false;
  }
  return true;
}

void extend(Tables& t, std::vector<PermRep>& out) {
  std::size_t slot = 0;
  while (slot < 2 * t.count && (slot % 2 == 0 ? t.s[slot / 2] : t.u[slot / 2]) >= 0) ++slot;
  if (slot == 2 * t.count) {
    PermRep p{Perm(t.count), Perm(t.count)};
    for (std::size_t x = 0; x < t.count; ++x) {
      p.S[x] = static_cast<std::uint32_t>(t.s[x]);
      p.T[p.S[x]] = static_cast<std::uint32_t>(t.u[x]);
    }
    out.push_back(std::move(p));
    return;
  }
  int i = static_cast<int>(slot / 2);
  bool is_s = slot % 2 == 0;
  std::size_t limit = std::min(t.count + 1, t.max);
  for (std::size_t jj = 0; jj < limit; ++jj) {
    int j = static_cast<int>(jj);
    bool fresh = jj == t.count;
    if (fresh) {
      ++t.count;
    } else if ((is_s ? t.s[j] : t.ui[j]) >= 0) {
      continue;
    }
    if (is_s) {
      t.s[i] = j;
      t.s[j] = i;
      extend(t, out);
      t.s[i] = t.s[j] = -1;
    } else {
      t.u[i] = j;
      t.ui[j] = i;
      if (u_cycles_ok(t)) extend(t, out);
      t.u[i] = t.ui[j] = -1;
    }
    if (fresh) --t.count;
  }
}

}  // namespace

void PermRep::validate() const {
  std::size_t n = degree();
  if (n == 0 || T.size() != n) throw ParseError("S and T must be nonempty and of equal length");
  if (!is_perm(S) || !is_perm(T)) throw ParseError("S and T must be permutations of 0..n-1");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (S[S[i]] != i) throw ParseError("relation S^2 = 1 fails at point " + std::to_string(i));
    if (st(st(st(i))) != i) {
      throw ParseError("relation (ST)^3 = 1 fails at point " + std::to_string(i));
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t y : {S[x], T[x]}) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n) throw ParseError("action is not transitive");
}

PermRep parse_permrep(const nlohmann::json& j) {
  PermRep p;
  try {
    std::size_t n = j.at("n").get<std::size_t>();
    p.S = j.at("S").get<Perm>();
    p.T = j.at("T").get<Perm>();
    if (p.S.size() != n || p.T.size() != n) throw ParseError("S and T must have length n");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("permrep json: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::ordered_json to_json(const PermRep& p) {
  nlohmann::ordered_json j;
  j["n"] = p.degree();
  j["S"] = p.S;
  j["T"] = p.T;
  return j;
}

CuspSplit cusp_split(const PermRep& p) {
  CuspSplit c;
  std::vector<char> seen(p.degree(), 0);
  for (std::uint32_t x = 0; x < p.degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::uint32_t y = x; !seen[y]; y = p.T[y]) {
      seen[y] = 1;
      ++len;
    }
    c.widths.push_back(len);
    c.level = std::lcm(c.level, len);
  }
  std::sort(c.widths.begin(), c.widths.end());
  return c;
}

LarcherResult larcher_check(const CuspSplit& c) {
  std::size_t g = 0;
  for (std::size_t w : c.widths) g = std::gcd(g, w);
  LarcherResult r;
  r.min_ok = std::find(c.widths.begin(), c.widths.end(), g) != c.widths.end();
  r.max_ok = std::find(c.widths.begin(), c.widths.end(), c.level) != c.widths.end();
  return r;
}

std::size_t psl2_order(std::size_t n, const Caps& caps) {
  std::size_t sl = walk(n, false, caps, [](auto, auto, auto, auto) { return true; });
  return n > 2 ? sl / 2 : sl;
}

IndexLevelResult index_level_checks(const PermRep& p, const CuspSplit& c, const Caps& caps) {
  IndexLevelResult r;
  r.star = p.degree() >= c.level;
  try {
    r.psl_order = psl2_order(c.level, caps);
  } catch (const CapExceeded&) {
    r.psl_order = sl2_formula(c.level) / (c.level > 2 ? 2 : 1);
  }
  r.star_star = r.psl_order % p.degree() == 0;
  return r;
}

ExactResult exact_congruence_test(const PermRep& p, std::size_t multiple, const Caps& caps) {
  if (multiple == 0) throw PreconditionError("multiple must be positive");
  ExactResult r;
  r.level = cusp_split(p).level * multiple;
  r.congruence = true;
  // pos[x] is the base point moved by the spanning-tree word of x; a
  // Schreier generator fixes the base point iff its edge is consistent.
  std::vector<std::uint32_t> pos{0};
  walk(r.level, true, caps, [&](std::uint32_t x, std::uint32_t g, std::uint32_t y, bool fresh) {
    std::uint32_t moved = (g == 0 ? p.S : p.T)[pos[x]];
    if (fresh) {
      pos.push_back(moved);
      return true;
    }
    ++r.edges;
    if (pos[y] != moved) {
      r.congruence = false;
      r.failing_edge = static_cast<long long>(2 * x + g);
      return false;
    }
    return true;
  });
  return r;
}

PermScreen screen_perm(const PermRep& p, bool all, const Caps& caps) {
  PermScreen s;
  s.split = cusp_split(p);
  std::string widths;
  for (std::size_t w : s.split.widths) widths += (widths.empty() ? "" : ",") + std::to_string(w);
  std::string level = std::to_string(s.split.level);
  std::string index = std::to_string(p.degree());
  s.steps.push_back({"cusp_split", "pass", "(" + widths + "), level " + level});
  auto record = [&](const std::string& name, bool ok, const std::string& detail,
                    const std::string& reason) {
    bool failed_before = !s.conclusion.empty();
    if (failed_before && !all) {
      s.steps.push_back({name, "skipped", ""});
      return;
    }
    s.steps.push_back({name, ok ? "pass" : "fail", detail});
    if (!ok && !failed_before) s.conclusion = "non-congruence (" + reason + ")";
  };
  LarcherResult l = larcher_check(s.split);
  record("larcher", l.pass(),
         std::string("gcd ") + (l.min_ok ? "is" : "is not") + " a width, lcm " +
             (l.max_ok ? "is" : "is not") + " a width",
         l.min_ok ? "Larcher max" : "Larcher min");
  IndexLevelResult il;
  if (all || s.conclusion.empty()) il = index_level_checks(p, s.split, caps);
  record("star", il.star, "index " + index + (il.star ? " >= " : " < ") + level, "*");
  record("star_star", il.star_star,
         "index " + index + (il.star_star ? " divides " : " does not divide ") +
             std::to_string(il.psl_order),
         "**");
  ExactResult ex;
  if (all || s.conclusion.empty()) ex = exact_congruence_test(p, 1, caps);
  record("exact", ex.congruence,
         ex.congruence ? "contains the principal congruence subgroup of level " + level
                       : "a Schreier generator of level " + level + " moves the base point",
         "exact test");
  if (s.conclusion.empty()) s.conclusion = "congruence, level " + level;
  return s;
}

PermRep canonical_conjugacy_form(const PermRep& p) {
  PermRep best = relabel_from(p, 0);
  for (std::uint32_t b = 1; b < p.degree(); ++b) {
    PermRep c = relabel_from(p, b);
    if (std::tie(c.S, c.T) < std::tie(best.S, best.T)) best = std::move(c);
  }
  return best;
}

std::vector<PermRep> low_index_enumerate(std::size_t max_index, const Caps& caps) {
  if (max_index > caps.index) {
    throw CapExceeded("index " + std::to_string(max_index) + " exceeds the index cap " +
                      std::to_string(caps.index));
  }
  std::vector<PermRep> raw;
  if (max_index == 0) return raw;
  Tables t{max_index, 1, std::vector<int>(max_index, -1), std::vector<int>(max_index, -1),
           std::vector<int>(max_index, -1)};
  extend(t, raw);
  std::set<std::tuple<std::size_t, Perm, Perm>> seen;
  for (const PermRep& p : raw) {
    PermRep c = canonical_conjugacy_form(p);
    seen.emplace(c.degree(), c.S, c.T);
  }
  std::vector<PermRep> out;
  for (const auto& [n, s, tt] : seen) out.push_back({s, tt});
  return out;
}

PermRep permrep_from_frame(const Frame& f) {
  const FrameContext& c = *f.ctx;
  if (c.domain.kind() != DomainKind::integers) throw PreconditionError("frame must be over Z");
  SL2 ops(c.ring);
  const QuotientRing& r = *c.ring;
  if (!f.image.contains(ops.minus_identity())) throw PreconditionError("frame must contain -I");
  MatCode s = ops.make(r.zero(), r.neg(r.one()), r.one(), r.zero());
  MatCode t = ops.T(r.one());
  CosetSpace cs = coset_space(c.full, f.image, {s, t});
  auto it = std::find(cs.labels.begin(), cs.labels.end(), f.image.elements().front());
  if (it == cs.labels.end()) throw InternalError("identity coset not found");
  PermRep p{cs.action[0], cs.action[1]};
  p = relabel_from(p, static_cast<std::uint32_t>(it - cs.labels.begin()));
  p.validate();
  return p;
}

}  // namespace conglab
