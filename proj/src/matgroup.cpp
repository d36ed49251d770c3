#include "conglab/matgroup.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "conglab/errors.hpp"

namespace conglab {

namespace {

struct CodeHash {
  std::size_t operator()(MatCode x) const {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};
using CodeSet = std::unordered_set<MatCode, CodeHash>;

}  // namespace

MatCode SL2::make(Residue a, Residue b, Residue c, Residue d) const {
  MatCode x = pack({a, b, c, d});
  if (det(x) != ring_->one()) throw PreconditionError("matrix " + format(x) + " has det != 1");
  return x;
}

MatCode SL2::T(Residue alpha, Residue r) const {
  if (!ring_->is_unit(alpha)) throw PreconditionError(ring_->format(alpha) + " is not a unit");
  return make(alpha, r, 0, ring_->inv(alpha));
}

MatCode SL2::R(Residue r) const {
  const QuotientRing& q = *ring_;
  return make(q.add(q.one(), r), r, q.neg(r), q.sub(q.one(), r));
}

MatCode SL2::U(Residue a, Residue b, Residue x) const {
  const QuotientRing& q = *ring_;
  const Domain& d = q.domain();
  Ideal span = d.sum(d.ideal({q.lift(a), q.lift(b)}), q.modulus());
  if (!d.is_unit_ideal(span)) throw PreconditionError("(a, b) is not unimodular");
  Residue xab = q.mul(x, q.mul(a, b));
  return make(q.add(q.one(), xab), q.neg(q.mul(x, q.mul(a, a))), q.mul(x, q.mul(b, b)),
              q.sub(q.one(), xab));
}

std::string SL2::format(MatCode x) const {
  Mat2 m = unpack(x);
  const QuotientRing& q = *ring_;
  return "[[" + q.format(m.a) + "," + q.format(m.b) + "],[" + q.format(m.c) + "," +
         q.format(m.d) + "]]";
}

FinMatGroup FinMatGroup::closure(const RingPtr& ring, std::vector<MatCode> gens,
                                 std::size_t cap) {
  SL2 ops(ring);
  for (MatCode g : gens) {
    if (ops.det(g) != ring->one()) throw PreconditionError("generator " + ops.format(g) + " has det != 1");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  gens.erase(std::remove(gens.begin(), gens.end(), ops.identity()), gens.end());
  CodeSet seen;
  std::vector<MatCode> queue{ops.identity()};
  seen.insert(ops.identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (MatCode g : gens) {
      MatCode y = ops.mul(queue[i], g);
      if (seen.insert(y).second) {
        queue.push_back(y);
        if (queue.size() > cap) {
          throw CapExceeded("group closure exceeds the group cap " + std::to_string(cap),
                            queue.size());
        }
      }
    }
  }
  FinMatGroup out;
  out.ring_ = ring;
  out.gens_ = std::move(gens);
  std::sort(queue.begin(), queue.end());
  out.elems_ = std::move(queue);
  return out;
}

FinMatGroup FinMatGroup::trusted(const RingPtr& ring, std::vector<MatCode> gens,
                                 std::vector<MatCode> sorted_elements) {
  FinMatGroup out;
  out.ring_ = ring;
  out.gens_ = std::move(gens);
  out.elems_ = std::move(sorted_elements);
  return out;
}

FinMatGroup FinMatGroup::from_elements(const RingPtr& ring, std::vector<MatCode> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FinMatGroup cur = closure(ring, {});
  std::vector<MatCode> gens;
  for (MatCode e : elements) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = closure(ring, gens);
    if (cur.order() > elements.size()) break;
  }
  if (cur.elems_ != elements) throw InternalError("element set is not a group");
  return cur;
}

bool FinMatGroup::contains(MatCode x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::size_t FinMatGroup::index_of(MatCode x) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.end() || *it != x) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - elems_.begin());
}

bool FinMatGroup::subgroup_of(const FinMatGroup& g) const {
  return std::includes(g.elems_.begin(), g.elems_.end(), elems_.begin(), elems_.end());
}

bool FinMatGroup::is_normal_in(const FinMatGroup& ambient) const {
  SL2 ops(ring_);
  for (MatCode g : ambient.generators()) {
    for (MatCode h : gens_) {
      if (!contains(ops.conj(h, g))) return false;
    }
  }
  return true;
}

BigInt sl2_order(const QuotientRing& ring) {
  const Domain& d = ring.domain();
  BigInt order = 1;
  for (const auto& pp : ring.factorization()) {
    BigInt f = d.residue_norm(pp.prime);
    for (unsigned i = 1; i < pp.exponent; ++i) order *= f * f * f;
    order *= f * (f * f - 1);
  }
  return order;
}

FinMatGroup full_sl2(const RingPtr& ring, const Caps& caps) {
  BigInt expected = sl2_order(*ring);
  if (expected > caps.group) {
    throw CapExceeded("|SL2(R)| = " + to_string(expected) + " exceeds the group cap " +
                      std::to_string(caps.group));
  }
  SL2 ops(ring);
  std::vector<MatCode> gens;
  for (Residue g : ring->additive_generators()) {
    gens.push_back(ops.T(g));
    gens.push_back(ops.S(g));
  }
  FinMatGroup g = FinMatGroup::closure(ring, gens, caps.group);
  if (BigInt(g.order()) != expected) {
    throw InternalError("elementary matrices generate " + std::to_string(g.order()) +
                        " elements, expected " + to_string(expected));
  }
  return g;
}

FinMatGroup normal_closure(const std::vector<MatCode>& gens, const FinMatGroup& ambient,
                           const Caps& caps) {
  const RingPtr& ring = ambient.ring();
  SL2 ops(ring);
  std::vector<MatCode> cur_gens = gens;
  FinMatGroup cur = FinMatGroup::closure(ring, cur_gens, caps.group);
  while (true) {
    std::vector<MatCode> extra;
    for (MatCode g : ambient.generators()) {
      for (MatCode h : cur.generators()) {
        MatCode c = ops.conj(h, g);
        if (!cur.contains(c)) extra.push_back(c);
      }
    }
    if (extra.empty()) return cur;
    cur_gens = cur.generators();
    cur_gens.insert(cur_gens.end(), extra.begin(), extra.end());
    cur = FinMatGroup::closure(ring, cur_gens, caps.group);
  }
}

FinMatGroup principal_congruence_image(const RingPtr& ring, const Ideal& a, const Caps& caps) {
  const QuotientRing& r = *ring;
  const Domain& d = r.domain();
  if (!d.contains(a, r.modulus())) {
    throw PreconditionError("ideal " + d.format_ideal(a) + " does not contain the modulus");
  }
  AdditiveSubgroup img = ideal_image(ring, a);
  const auto& el = img.elements;
  std::vector<MatCode> out;
  for (Residue x : el) {
    Residue dx = r.add(r.one(), x);
    for (Residue y : el) {
      for (Residue z : el) {
        Residue rhs = r.add(r.one(), r.mul(y, z));
        if (r.is_unit(dx)) {
          Residue dw = r.mul(rhs, r.inv(dx));
          if (!img.contains(r.sub(dw, r.one()))) throw InternalError("congruence solve left the ideal");
          out.push_back(pack({dx, y, z, dw}));
        } else {
          for (Residue w : el) {
            Residue dw = r.add(r.one(), w);
            if (r.mul(dx, dw) == rhs) out.push_back(pack({dx, y, z, dw}));
          }
        }
        if (out.size() > caps.group) throw CapExceeded("congruence image exceeds the group cap", out.size());
      }
    }
  }
  return FinMatGroup::from_elements(ring, std::move(out));
}

FinMatGroup conjugate(const FinMatGroup& h, MatCode g) {
  SL2 ops(h.ring());
  std::vector<MatCode> gens, elems;
  for (MatCode x : h.generators()) gens.push_back(ops.conj(x, g));
  elems.reserve(h.order());
  for (MatCode x : h.elements()) elems.push_back(ops.conj(x, g));
  std::sort(elems.begin(), elems.end());
  FinMatGroup out = FinMatGroup::closure(h.ring(), gens);
  if (out.elements() != elems) throw InternalError("conjugate closure mismatch");
  return out;
}

FinMatGroup intersect(const FinMatGroup& x, const FinMatGroup& y) {
  std::vector<MatCode> both;
  std::set_intersection(x.elements().begin(), x.elements().end(), y.elements().begin(),
                        y.elements().end(), std::back_inserter(both));
  return FinMatGroup::from_elements(x.ring(), std::move(both));
}

std::vector<MatCode> right_coset_reps(const FinMatGroup& g, const FinMatGroup& h) {
  SL2 ops(g.ring());
  std::vector<char> seen(g.order(), 0);
  std::vector<MatCode> reps;
  std::vector<MatCode> stack;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    reps.push_back(g.elements()[i]);
    seen[i] = 1;
    stack.assign(1, g.elements()[i]);
    while (!stack.empty()) {
      MatCode x = stack.back();
      stack.pop_back();
      for (MatCode s : h.generators()) {
        MatCode y = ops.mul(s, x);
        std::size_t k = g.index_of(y);
        if (k == static_cast<std::size_t>(-1)) throw PreconditionError("H is not inside G");
        if (!seen[k]) {
          seen[k] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return reps;
}

CosetSpace coset_space(const FinMatGroup& g, const FinMatGroup& h,
                       const std::vector<MatCode>& action_gens) {
  SL2 ops(g.ring());
  CosetSpace cs;
  std::vector<std::uint32_t> label_of(g.order(), 0);
  std::vector<char> seen(g.order(), 0);
  std::vector<MatCode> stack;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    auto id = static_cast<std::uint32_t>(cs.labels.size());
    cs.labels.push_back(g.elements()[i]);
    seen[i] = 1;
    label_of[i] = id;
    stack.assign(1, g.elements()[i]);
    while (!stack.empty()) {
      MatCode x = stack.back();
      stack.pop_back();
      for (MatCode s : h.generators()) {
        MatCode y = ops.mul(s, x);
        std::size_t k = g.index_of(y);
        if (!seen[k]) {
          seen[k] = 1;
          label_of[k] = id;
          stack.push_back(y);
        }
      }
    }
  }
  for (MatCode s : action_gens) {
    std::vector<std::uint32_t> act(cs.labels.size());
    for (std::size_t i = 0; i < cs.labels.size(); ++i) {
      act[i] = label_of[g.index_of(ops.mul(cs.labels[i], s))];
    }
    cs.action.push_back(std::move(act));
  }
  return cs;
}

FinMatGroup core_of(const FinMatGroup& h, const FinMatGroup& g) {
  SL2 ops(g.ring());
  std::vector<MatCode> reps = right_coset_reps(g, h);
  std::vector<MatCode> keep;
  for (MatCode x : h.elements()) {
    bool fixes = true;
    for (MatCode r : reps) {
      if (!h.contains(ops.mul(r, ops.mul(x, ops.inv(r))))) {
        fixes = false;
        break;
      }
    }
    if (fixes) keep.push_back(x);
  }
  FinMatGroup core = FinMatGroup::from_elements(g.ring(), std::move(keep));
  if (!core.is_normal_in(g)) throw InternalError("core is not normal");
  return core;
}

std::pair<FinMatGroup, FinMatGroup> borel_and_unipotent(const RingPtr& ring) {
  SL2 ops(ring);
  std::vector<MatCode> b, u;
  for (Residue g : ring->additive_generators()) u.push_back(ops.T(g));
  b = u;
  for (Residue a : ring->unit_image()) b.push_back(ops.T(a, 0));
  FinMatGroup bg = FinMatGroup::closure(ring, b);
  FinMatGroup ug = FinMatGroup::closure(ring, u);
  if (bg.order() != ring->unit_image().size() * ring->size() || ug.order() != ring->size()) {
    throw InternalError("Borel image has the wrong order");
  }
  return {bg, ug};
}

std::vector<DoubleCoset> double_cosets(const FinMatGroup& g, const FinMatGroup& h,
                                       const FinMatGroup& b) {
  SL2 ops(g.ring());
  std::vector<char> seen(g.order(), 0);
  std::vector<DoubleCoset> out;
  std::vector<MatCode> stack;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    DoubleCoset dc{g.elements()[i], 1};
    seen[i] = 1;
    stack.assign(1, dc.rep);
    auto visit = [&](MatCode y) {
      std::size_t k = g.index_of(y);
      if (k == static_cast<std::size_t>(-1)) throw PreconditionError("subgroup is not inside G");
      if (!seen[k]) {
        seen[k] = 1;
        ++dc.size;
        stack.push_back(y);
      }
    };
    while (!stack.empty()) {
      MatCode x = stack.back();
      stack.pop_back();
      for (MatCode s : h.generators()) visit(ops.mul(s, x));
      for (MatCode s : b.generators()) visit(ops.mul(x, s));
    }
    out.push_back(dc);
  }
  return out;
}

FinMatGroup center(const FinMatGroup& g) {
  SL2 ops(g.ring());
  std::vector<MatCode> z;
  for (MatCode x : g.elements()) {
    bool central = true;
    for (MatCode s : g.generators()) {
      if (ops.mul(x, s) != ops.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) z.push_back(x);
  }
  return FinMatGroup::from_elements(g.ring(), std::move(z));
}

Lemma11Result lemma_1_1_verify(const Domain& d, const Ideal& q, const Ideal& q2,
                               const Caps& caps) {
  if (!d.contains(q, q2) || !d.contains(q2, d.product(q, q))) {
    throw PreconditionError("need q containing q' containing q^2");
  }
  RingPtr ring = QuotientRing::build(d, q2, caps);
  SL2 ops(ring);
  FinMatGroup image = principal_congruence_image(ring, q, caps);
  BigInt ratio = d.residue_norm(q2) / d.residue_norm(q);
  Lemma11Result res;
  res.quotient_order = image.order();
  res.expected_order = to_size(ratio * ratio * ratio);
  std::vector<MatCode> gens;
  for (Residue r : ideal_image(ring, q).generators) {
    gens.push_back(ops.S(r));
    gens.push_back(ops.T(r));
    gens.push_back(ops.R(r));
  }
  FinMatGroup generated = FinMatGroup::closure(ring, gens, caps.group);
  res.holds = res.quotient_order == res.expected_order && generated == image;
  return res;
}

bool psl2_center_check(const RingPtr& ring, const Caps& caps) {
  if (!ring->is_local()) throw PreconditionError("center check needs a local ring");
  if (!ring->is_unit(ring->from_int(2))) throw PreconditionError("center check needs 2 invertible");
  FinMatGroup g = full_sl2(ring, caps);
  FinMatGroup z = center(g);
  SL2 ops(ring);
  std::vector<MatCode> pm{ops.identity(), ops.minus_identity()};
  std::sort(pm.begin(), pm.end());
  return z.elements() == pm;
}

}  // namespace conglab
