#include "conglab/examples.hpp"

#include <algorithm>

#include "conglab/errors.hpp"

namespace conglab {

namespace {

using json = nlohmann::ordered_json;

void reject_overrides(const std::string& name, const std::optional<std::string>& domain,
                      const std::optional<std::string>& modulus) {
  if (domain || modulus) throw PreconditionError(name + " has a fixed domain and modulus");
}

std::string codes(const SL2& ops, const std::vector<MatCode>& xs) {
  std::string s;
  for (MatCode x : xs) s += (s.empty() ? "" : ", ") + ops.format(x);
  return s;
}

/// [G, G] as the normal closure of commutators of the generators.
FinMatGroup derived_subgroup(const FinMatGroup& g, const Caps& caps) {
  SL2 ops(g.ring());
  std::vector<MatCode> comms;
  for (MatCode x : g.generators()) {
    for (MatCode y : g.generators()) {
      comms.push_back(ops.mul(ops.mul(ops.inv(x), ops.inv(y)), ops.mul(x, y)));
    }
  }
  return normal_closure(comms, g, caps);
}

Example ex2_13(const Caps& caps, const std::optional<std::string>& domain,
               const std::optional<std::string>& modulus) {
  Domain d = Domain::parse(domain.value_or("Fq[t] q=3"));
  if (d.kind() != DomainKind::polynomials) throw PreconditionError("ex2_13 needs k[t]");
  Ideal p = d.parse_ideal(modulus.value_or("(t)"));
  PrimeFactorization pf = d.factor(p, caps.factor);
  if (pf.size() != 1 || pf[0].exponent != 1) throw PreconditionError("ex2_13 needs a prime ideal");
  ContextPtr ctx = make_context(d, p, caps);
  SL2 ops(ctx->ring);
  const QuotientRing& r = *ctx->ring;
  std::vector<MatCode> gens;
  for (std::uint32_t a = 1; a < d.field().order(); ++a) {
    Residue alpha = r.reduce(d.constant(a));
    gens.push_back(ops.T(alpha, 0));
    gens.push_back(ops.T(alpha));
  }
  Example e{"ex2_13", frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, gens, caps.group)), {}};
  e.facts["residue_field_order"] = r.size();
  return e;
}

Example ex3_2(const Caps& caps) {
  Domain d = Domain::parse("Fq[t] q=9");
  ContextPtr ctx = make_context(d, d.parse_ideal("(t)"), caps);
  SL2 ops(ctx->ring);
  const QuotientRing& r = *ctx->ring;
  Example e{"ex3_2", frame_subgroup(ctx, a5_preimage(ctx->full, caps)), {}};
  e.facts["a5_generators"] = codes(ops, e.frame.image.generators());
  Residue zeta = 0;
  for (Residue u : r.units()) {
    if (element_order(ops, ops.T(u, 0)) == 8) {
      zeta = u;
      break;
    }
  }
  AdditiveSubgroup b = translation_set(e.frame.image, ops.identity());
  AdditiveSubgroup bz = translation_set(e.frame.image, ops.T(zeta, 0));
  Residue beta = 0;
  for (Residue x : b.elements) {
    if (x != 0) {
      beta = x;
      break;
    }
  }
  e.facts["zeta"] = r.format(zeta);
  e.facts["beta"] = r.format(beta);
  e.facts["b_identity_index"] = b.index_in_ring();
  e.facts["b_zeta_differs"] = !(b == bz);
  return e;
}

Example ex3_5(const Caps& caps) {
  Domain d = Domain::quadratic(-13);
  ContextPtr ctx = make_context(d, d.parse_ideal("(3)"), caps);
  SL2 ops(ctx->ring);
  Example e{"ex3_5", frame_subgroup(ctx, a5_preimage(ctx->full, caps)), {}};
  e.facts["a5_generators"] = codes(ops, e.frame.image.generators());
  std::vector<AdditiveSubgroup> coll = quasi_amplitude_collection(e.frame);
  auto extreme = [&](bool minimum) {
    for (const auto& x : coll) {
      bool all = std::all_of(coll.begin(), coll.end(), [&](const AdditiveSubgroup& y) {
        return minimum ? x.subset_of(y) : y.subset_of(x);
      });
      if (all) return true;
    }
    return false;
  };
  e.facts["quasi_amplitudes"] = coll.size();
  e.facts["has_minimum"] = extreme(true);
  e.facts["has_maximum"] = extreme(false);
  return e;
}

Example ex4_9(const Caps& caps) {
  Domain d = Domain::quadratic(-2);
  Ideal p = d.parse_ideal("(w)");
  ContextPtr ctx = make_context(d, d.power(p, 4), caps);
  const QuotientRing& r = *ctx->ring;
  std::vector<char> lambda(r.size(), 0);
  for (Residue t : ideal_image(ctx->ring, p).elements) lambda[r.mul(t, t)] = 1;
  std::vector<MatCode> k;
  FinMatGroup g2 = principal_congruence_image(ctx->ring, d.power(p, 2), caps);
  for (MatCode x : g2.elements()) {
    Mat2 m = unpack(x);
    if (lambda[m.b] && lambda[m.c]) k.push_back(x);
  }
  Example e{"ex4_9", frame_subgroup(ctx, FinMatGroup::from_elements(ctx->ring, k)), {}};
  json lam = json::array();
  for (Residue x = 0; x < r.size(); ++x) {
    if (lambda[x]) lam.push_back(r.format(x));
  }
  e.facts["lambda"] = lam;
  e.facts["order"] = k.size();
  return e;
}

Example ex4_10(const Caps& caps) {
  Domain d = Domain::parse("Fq[t] q=3");
  ContextPtr ctx = make_context(d, d.parse_ideal("(t^2+t)"), caps);
  SL2 ops(ctx->ring);
  FinMatGroup n = derived_subgroup(ctx->full, caps);
  std::vector<MatCode> gens = n.generators();
  gens.push_back(ops.T(ctx->ring->one()));
  FinMatGroup m = FinMatGroup::closure(ctx->ring, gens, caps.group);
  Example e{"ex4_10", frame_subgroup(ctx, m), {}};
  e.facts["G_over_N"] = ctx->full.order() / n.order();
  e.facts["N_over_Gq"] = n.order();
  e.facts["N_normal"] = n.is_normal_in(ctx->full);
  return e;
}

Example ex5_4(const Caps& caps) {
  Domain d = Domain::quadratic(-7);
  ContextPtr ctx = make_context(d, d.parse_ideal("(2)"), caps);
  SL2 ops(ctx->ring);
  FinMatGroup n = derived_subgroup(ctx->full, caps);
  std::vector<MatCode> gens = n.generators();
  gens.push_back(ops.T(ctx->ring->one()));
  Example e{"ex5_4", frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, gens, caps.group)), {}};
  e.facts["commutator_order"] = n.order();
  return e;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"ex2_13", "ex3_2", "ex3_5", "ex4_9", "ex4_10", "ex5_4"};
}

std::size_t element_order(const SL2& ops, MatCode x) {
  std::size_t k = 1;
  for (MatCode y = x; y != ops.identity(); y = ops.mul(y, x)) ++k;
  return k;
}

FinMatGroup a5_preimage(const FinMatGroup& g, const Caps& caps) {
  if (g.ring()->size() != 9 || !g.ring()->is_local()) {
    throw PreconditionError("A5 search needs a residue field of order 9");
  }
  SL2 ops(g.ring());
  std::vector<MatCode> fours, threes;
  for (MatCode x : g.elements()) {
    std::size_t k = element_order(ops, x);
    if (k == 4) fours.push_back(x);
    if (k == 3) threes.push_back(x);
  }
  for (MatCode x : fours) {
    for (MatCode y : threes) {
      std::size_t k = element_order(ops, ops.mul(x, y));
      if (k != 5 && k != 10) continue;
      FinMatGroup h = FinMatGroup::closure(g.ring(), {x, y, ops.minus_identity()}, caps.group);
      if (h.order() == 120) return h;
    }
  }
  throw InternalError("no A5 found in PSL2 of the residue field");
}

Example build_example(const std::string& name, const Caps& caps,
                      const std::optional<std::string>& domain,
                      const std::optional<std::string>& modulus) {
  if (name == "ex2_13") return ex2_13(caps, domain, modulus);
  reject_overrides(name, domain, modulus);
  if (name == "ex3_2") return ex3_2(caps);
  if (name == "ex3_5") return ex3_5(caps);
  if (name == "ex4_9") return ex4_9(caps);
  if (name == "ex4_10") return ex4_10(caps);
  if (name == "ex5_4") return ex5_4(caps);
  throw PreconditionError("unknown example '" + name + "'");
}

}  // namespace conglab
