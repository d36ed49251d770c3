#include "conglab/analyzer.hpp"

#include <algorithm>

#include "conglab/errors.hpp"

namespace conglab {

namespace {

Verdict pass(std::string detail = {}) { return {"pass", std::move(detail)}; }
Verdict violation(std::string detail) { return {"violation", std::move(detail)}; }
Verdict not_applicable(std::string detail) { return {"not_applicable", std::move(detail)}; }

AdditiveSubgroup scaled(const AdditiveSubgroup& a, Residue s) {
  std::vector<Residue> v;
  v.reserve(a.elements.size());
  for (Residue x : a.elements) v.push_back(a.ring->mul(s, x));
  return additive_closure(a.ring, v);
}

}  // namespace

ContextPtr make_context(const Domain& d, const Ideal& q0, const Caps& caps) {
  auto ctx = std::make_shared<FrameContext>(FrameContext{d, q0, nullptr, {}, {}, {}, caps});
  ctx->ring = QuotientRing::build(d, q0, caps);
  ctx->full = full_sl2(ctx->ring, caps);
  auto [b, u] = borel_and_unipotent(ctx->ring);
  ctx->borel = std::move(b);
  ctx->unipotent = std::move(u);
  return ctx;
}

Frame frame_subgroup(const ContextPtr& ctx, const FinMatGroup& image) {
  if (!image.subgroup_of(ctx->full)) throw PreconditionError("image is not inside SL2(R)");
  Frame f;
  f.ctx = ctx;
  f.image = image;
  f.normal = image.is_normal_in(ctx->full);
  f.core = f.normal ? image : core_of(image, ctx->full);
  return f;
}

Frame frame_subgroup(const Domain& d, const Ideal& q0, const std::vector<MatCode>& gens,
                     const Caps& caps) {
  ContextPtr ctx = make_context(d, q0, caps);
  return frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, gens, caps.group));
}

AdditiveSubgroup translation_set(const FinMatGroup& x, MatCode g) {
  SL2 ops(x.ring());
  MatCode gi = ops.inv(g);
  std::vector<Residue> in;
  for (Residue r = 0; r < x.ring()->size(); ++r) {
    if (x.contains(ops.mul(g, ops.mul(ops.T(r), gi)))) in.push_back(r);
  }
  AdditiveSubgroup a = additive_closure(x.ring(), in);
  if (a.elements.size() != in.size()) throw InternalError("translation set is not additive");
  return a;
}

Ideal amplitude_at(const Frame& f, MatCode g) {
  return largest_ideal_inside(translation_set(f.image, g));
}

std::vector<CuspData> cusps(const Frame& f) {
  const FrameContext& c = *f.ctx;
  SL2 ops(c.ring);
  std::vector<CuspData> out;
  for (const DoubleCoset& dc : double_cosets(c.full, f.image, c.borel)) {
    CuspData cd;
    cd.rep = dc.rep;
    cd.quasi_amplitude = translation_set(f.image, dc.rep);
    cd.amplitude = largest_ideal_inside(cd.quasi_amplitude);
    MatCode gi = ops.inv(dc.rep);
    std::size_t k = 0;
    for (MatCode b : c.borel.elements()) {
      if (f.image.contains(ops.mul(dc.rep, ops.mul(b, gi)))) ++k;
    }
    cd.width = c.borel.order() / k;
    std::size_t num = c.borel.order() * cd.quasi_amplitude.elements.size();
    std::size_t den = c.ring->size() * k;
    if (num % den != 0 || c.borel.order() % k != 0) throw InternalError("non-integral cusp factor");
    cd.m = num / den;
    if (cd.width * f.image.order() != dc.size) throw InternalError("cusp width mismatch");
    for (Residue s : c.ring->square_unit_image()) {
      AdditiveSubgroup r = scaled(cd.quasi_amplitude, s);
      if (std::find(cd.rescaled.begin(), cd.rescaled.end(), r) == cd.rescaled.end()) {
        cd.rescaled.push_back(std::move(r));
      }
    }
    auto it = std::find(cd.rescaled.begin(), cd.rescaled.end(), cd.quasi_amplitude);
    if (it != cd.rescaled.begin()) std::iter_swap(cd.rescaled.begin(), it);
    out.push_back(std::move(cd));
  }
  return out;
}

AdditiveSubgroup quasi_level(const Frame& f) {
  return translation_set(f.core, SL2(f.ctx->ring).identity());
}

Ideal level(const Frame& f) { return largest_ideal_inside(quasi_level(f)); }

Ideal order_ideal(const Frame& f) {
  const QuotientRing& r = *f.ctx->ring;
  std::vector<char> seen(r.size(), 0);
  for (MatCode x : f.image.elements()) {
    Mat2 m = unpack(x);
    seen[m.b] = seen[m.c] = seen[r.sub(m.a, m.d)] = 1;
  }
  std::vector<Element> gens = r.domain().basis(r.modulus());
  for (Residue x = 0; x < r.size(); ++x) {
    if (seen[x] && x != 0) gens.push_back(r.lift(x));
  }
  return r.domain().ideal(gens);
}

std::vector<AdditiveSubgroup> quasi_amplitude_collection(const Frame& f) {
  std::vector<AdditiveSubgroup> out;
  for (MatCode g : right_coset_reps(f.ctx->full, f.image)) {
    AdditiveSubgroup b = translation_set(f.image, g);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const AdditiveSubgroup& a, const AdditiveSubgroup& b) {
    return a.elements < b.elements;
  });
  return out;
}

bool divides_factorial(const BigInt& m, std::size_t n) {
  if (m <= 1) return true;
  for (const auto& [p, e] : factor_integer(m, m)) {
    BigInt v = 0;
    BigInt pk = p;
    while (pk <= n) {
      v += BigInt(n) / pk;
      pk *= p;
    }
    if (v < e) return false;
  }
  return true;
}

Verdict theorem_A_check(const Frame& f, const std::vector<CuspData>& cs) {
  const Domain& d = f.ctx->domain;
  std::vector<Ideal> a;
  for (const auto& c : cs) a.push_back(c.amplitude);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  Ideal lo = a[0], hi = a[0];
  for (const auto& x : a) {
    lo = d.intersect(lo, x);
    hi = d.sum(hi, x);
  }
  bool has_lo = std::find(a.begin(), a.end(), lo) != a.end();
  bool has_hi = std::find(a.begin(), a.end(), hi) != a.end();
  std::string detail = "c_min " + d.format_ideal(lo) + (has_lo ? " in" : " not in") +
                       " A(H), c_max " + d.format_ideal(hi) + (has_hi ? " in" : " not in") +
                       " A(H)";
  return has_lo && has_hi ? pass(detail) : violation(detail);
}

Verdict theorem_B_check(const Frame& f, const Ideal& lvl, const AdditiveSubgroup& ql) {
  const Domain& d = f.ctx->domain;
  ConditionLReport cl = d.condition_L(lvl, f.ctx->caps.factor);
  bool equal = ideal_image(f.ctx->ring, lvl) == ql;
  if (!cl.holds) {
    return not_applicable(std::string("Condition L fails (clause ") + cl.failed_clause + "); ql " +
                          (equal ? "=" : "!=") + " l");
  }
  return equal ? pass("ql = l = " + d.format_ideal(lvl))
               : violation("Condition L holds but ql != l = " + d.format_ideal(lvl));
}

Verdict theorem_C_check(const Frame& f, const Ideal& lvl) {
  const Domain& d = f.ctx->domain;
  BigInt norm = d.residue_norm(lvl);
  std::size_t n = f.index();
  bool div_index = BigInt(n) % norm == 0;
  bool div_fact = divides_factorial(norm, n);
  std::string facts = "|D/l| = " + to_string(norm) + ", index " + std::to_string(n) + ": |D/l| " +
                      (div_index ? "divides" : "does not divide") + " index, " +
                      (div_fact ? "divides" : "does not divide") + " index!";
  ConditionLReport cl = d.condition_L(lvl, f.ctx->caps.factor);
  if (!cl.holds) return not_applicable("Condition L fails; " + facts);
  if (!div_fact || (f.normal && !div_index)) return violation(facts);
  return pass(facts);
}

Verdict cusp_split_check(const Frame& f, const std::vector<CuspData>& cs) {
  std::size_t total = 0;
  std::string terms;
  for (const auto& c : cs) {
    std::size_t b_index = c.quasi_amplitude.index_in_ring();
    if (c.m * b_index != c.width) return violation("m * |D:b| differs from the cusp width");
    total += c.width;
    if (!terms.empty()) terms += " + ";
    terms += std::to_string(c.m) + "*" + std::to_string(b_index);
  }
  std::string detail = std::to_string(f.index()) + " = " + terms;
  return total == f.index() ? pass(detail) : violation(detail);
}

Verdict unit_square_closure_check(const Frame& f, const Ideal& lvl, const AdditiveSubgroup& ql) {
  const FrameContext& c = *f.ctx;
  const QuotientRing& r = *c.ring;
  const Domain& d = c.domain;
  RingPtr rl = QuotientRing::build(d, lvl, c.caps);
  std::vector<Residue> alphas;
  for (Residue a = 0; a < r.size(); ++a) {
    if (rl->is_unit(rl->reduce(r.lift(a)))) alphas.push_back(a);
  }
  for (Residue a : alphas) {
    Residue a2 = r.mul(a, a);
    for (Residue x : ql.elements) {
      if (!ql.contains(r.mul(a2, x))) {
        return violation("alpha = " + r.format(a) + " maps " + r.format(x) + " out of ql");
      }
    }
  }
  std::vector<AdditiveSubgroup> coll = quasi_amplitude_collection(f);
  std::vector<char> covered(r.size(), 0);
  for (const auto& b : coll) {
    for (Residue x : b.elements) covered[x] = 1;
  }
  for (const auto& b : coll) {
    for (Residue x : b.elements) {
      for (Residue a : alphas) {
        if (!covered[r.mul(r.mul(a, a), x)]) {
          return violation("no quasi-amplitude contains alpha^2 x for alpha = " + r.format(a) +
                           ", x = " + r.format(x));
        }
      }
    }
  }
  return pass(std::to_string(alphas.size()) + " residues invertible mod l, " +
              std::to_string(coll.size()) + " quasi-amplitudes");
}

Verdict level_index_check(const Frame& f, const Ideal& lvl) {
  const Domain& d = f.ctx->domain;
  unsigned deg = 0;
  if (d.kind() == DomainKind::integers) deg = 1;
  if (d.kind() == DomainKind::quadratic) deg = 2;
  if (deg == 0) return not_applicable("only for number fields");
  BigInt norm = d.residue_norm(lvl);
  BigInt bound = 1;
  for (unsigned i = 0; i < deg; ++i) bound *= f.index();
  std::string detail = "|D/l| = " + to_string(norm) + " <= " + to_string(bound) +
                       (norm == bound ? " (tight)" : "");
  if (norm > bound) return violation("|D/l| = " + to_string(norm) + " > " + to_string(bound));
  return pass(detail);
}

MatCode theorem_2_7_search(const Frame& f, const std::vector<CuspData>& cs, MatCode g1,
                           MatCode g2, const Ideal& q1, const Ideal& q2) {
  const Domain& d = f.ctx->domain;
  if (!d.contains(amplitude_at(f, g1), q1) || !d.contains(amplitude_at(f, g2), q2)) {
    throw PreconditionError("q_i must lie in c(H, g_i)");
  }
  Ideal s = d.sum(q1, q2);
  for (const auto& c : cs) {
    if (d.contains(c.amplitude, s)) return c.rep;
  }
  throw InternalError("no cusp amplitude contains " + d.format_ideal(s));
}

bool AnalysisReport::has_violation() const {
  for (const Verdict* v : {&theorem_A, &theorem_B, &theorem_C, &cusp_split, &unit_square,
                           &level_index, &level_amplitudes}) {
    if (v->violation()) return true;
  }
  return false;
}

AnalysisReport analyze(const Frame& f) {
  const FrameContext& c = *f.ctx;
  const Domain& d = c.domain;
  AnalysisReport rep;
  rep.domain = d.describe();
  rep.modulus = d.format_ideal(c.modulus);
  rep.index = f.index();
  rep.normal = f.normal;
  rep.cusps = cusps(f);
  for (const auto& cd : rep.cusps) rep.amplitudes.push_back(cd.amplitude);
  std::sort(rep.amplitudes.begin(), rep.amplitudes.end());
  rep.amplitudes.erase(std::unique(rep.amplitudes.begin(), rep.amplitudes.end()),
                       rep.amplitudes.end());
  rep.c_min = rep.c_max = rep.amplitudes[0];
  for (const auto& a : rep.amplitudes) {
    rep.c_min = d.intersect(rep.c_min, a);
    rep.c_max = d.sum(rep.c_max, a);
  }
  rep.quasi_level = quasi_level(f);
  rep.level = largest_ideal_inside(rep.quasi_level);
  rep.order_ideal = order_ideal(f);
  if (!ideal_image(c.ring, rep.level).subset_of(rep.quasi_level) ||
      !rep.quasi_level.subset_of(ideal_image(c.ring, rep.order_ideal))) {
    throw InternalError("level, quasi-level and order ideal are not nested");
  }
  rep.condition_L = d.condition_L(rep.level, c.caps.factor);
  rep.theorem_A = theorem_A_check(f, rep.cusps);
  rep.theorem_B = theorem_B_check(f, rep.level, rep.quasi_level);
  rep.theorem_C = theorem_C_check(f, rep.level);
  rep.cusp_split = cusp_split_check(f, rep.cusps);
  rep.unit_square = unit_square_closure_check(f, rep.level, rep.quasi_level);
  rep.level_index = level_index_check(f, rep.level);
  rep.level_amplitudes = rep.c_min == rep.level
                             ? pass("l = intersection of cusp amplitudes")
                             : violation("l = " + d.format_ideal(rep.level) +
                                         " but the amplitudes intersect to " +
                                         d.format_ideal(rep.c_min));
  return rep;
}

}  // namespace conglab
