#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conglab/caps.hpp"
#include "conglab/domain.hpp"

namespace conglab {

/// A k-subspace of k[t]/(f), stored as a reduced row echelon basis of
/// coefficient vectors of length deg f.
class TranslationSubspace {
 public:
  /// Span of the residues of gens modulo f; f must have degree >= 1.
  static TranslationSubspace span(const Domain& d, const Poly& f, const std::vector<Poly>& gens);
  /// An explicitly listed set of residues; throws PreconditionError unless it
  /// is closed under addition and k-scaling.
  static TranslationSubspace from_elements(const Domain& d, const Poly& f,
                                           const std::vector<Poly>& elements);

  const Domain& domain() const { return domain_; }
  const Poly& modulus() const { return f_; }
  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient_dimension() const { return static_cast<std::size_t>(f_.degree()); }
  bool contains(const Poly& x) const;
  /// Basis as polynomials of degree < deg f.
  std::vector<Poly> basis() const;

 private:
  using Vec = std::vector<std::uint32_t>;
  TranslationSubspace(const Domain& d, const Poly& f) : domain_(d), f_(f) {}
  Vec to_vec(const Poly& x) const;
  Poly to_poly(const Vec& v) const;
  /// Eliminates v against the basis in place; returns true when v becomes 0.
  bool eliminate(Vec& v) const;
  void insert(Vec v);

  Domain domain_;
  Poly f_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceScreen {
  Ideal level;
  std::size_t ql_codim = 0;
  bool congruence_possible = true;
  /// Unit alpha and basis vector v with alpha^2 v outside the subspace.
  std::optional<Poly> alpha, witness, image;
};

SubspaceScreen screen_translation_subspace(const TranslationSubspace& q,
                                           const Caps& caps = Caps{});

/// (f) + kt + ... + kt^(d-1), the subspace of the non-congruence construction;
/// needs f(0) != 0, and f'(0) != 0 when deg f = 2.
TranslationSubspace theorem_4_12_subspace(const Domain& d, const Poly& f);

/// {"k": q or "F<q>", "mod": optional modulus text for q = p^e, "f": text,
///  "basis": [texts]} or "elements": [texts] in place of "basis".
TranslationSubspace parse_subspace(const nlohmann::json& j);

}  // namespace conglab
