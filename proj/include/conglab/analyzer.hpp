#pragma once

#include <memory>
#include <string>
#include <vector>

#include "conglab/caps.hpp"
#include "conglab/matgroup.hpp"
#include "conglab/quotient.hpp"

namespace conglab {

/// Everything about SL2(D/q0) that does not depend on the framed subgroup.
struct FrameContext {
  Domain domain;
  Ideal modulus;
  RingPtr ring;
  FinMatGroup full;     // SL2(R)
  FinMatGroup borel;    // {T(u, r) : u in image of D*}
  FinMatGroup unipotent;
  Caps caps;
};
using ContextPtr = std::shared_ptr<const FrameContext>;

ContextPtr make_context(const Domain& d, const Ideal& q0, const Caps& caps = Caps{});

/// The congruence subgroup H = preimage of an image group in SL2(D/q0).
struct Frame {
  ContextPtr ctx;
  FinMatGroup image;
  FinMatGroup core;
  bool normal = false;

  std::size_t index() const { return ctx->full.order() / image.order(); }
};

Frame frame_subgroup(const ContextPtr& ctx, const FinMatGroup& image);
Frame frame_subgroup(const Domain& d, const Ideal& q0, const std::vector<MatCode>& gens,
                     const Caps& caps = Caps{});

/// {x in R : g T(x) g^-1 in X}.
AdditiveSubgroup translation_set(const FinMatGroup& x, MatCode g);

struct CuspData {
  MatCode rep;
  AdditiveSubgroup quasi_amplitude;
  Ideal amplitude;
  std::size_t m = 0;
  std::size_t width = 0;
  /// Distinct rescalings u^2 * b over squared units, the first being b itself.
  std::vector<AdditiveSubgroup> rescaled;
};

std::vector<CuspData> cusps(const Frame& f);

AdditiveSubgroup quasi_level(const Frame& f);
Ideal level(const Frame& f);
Ideal order_ideal(const Frame& f);

/// Every distinct quasi-amplitude b(H, g) as g runs over SL2(R).
std::vector<AdditiveSubgroup> quasi_amplitude_collection(const Frame& f);

struct Verdict {
  std::string status;  // pass, fail, not_applicable, violation
  std::string detail;
  bool violation() const { return status == "violation"; }
};

struct AnalysisReport {
  std::string domain;
  std::string modulus;
  std::size_t index = 0;
  bool normal = false;
  std::vector<CuspData> cusps;
  std::vector<Ideal> amplitudes;
  Ideal c_min, c_max, level, order_ideal;
  AdditiveSubgroup quasi_level;
  ConditionLReport condition_L;
  Verdict theorem_A, theorem_B, theorem_C, cusp_split, unit_square, level_index,
      level_amplitudes;
  bool has_violation() const;
};

AnalysisReport analyze(const Frame& f);

Verdict theorem_A_check(const Frame& f, const std::vector<CuspData>& cs);
Verdict theorem_B_check(const Frame& f, const Ideal& lvl, const AdditiveSubgroup& ql);
Verdict theorem_C_check(const Frame& f, const Ideal& lvl);
Verdict cusp_split_check(const Frame& f, const std::vector<CuspData>& cs);
Verdict unit_square_closure_check(const Frame& f, const Ideal& lvl, const AdditiveSubgroup& ql);
Verdict level_index_check(const Frame& f, const Ideal& lvl);

/// Some cusp representative g0 with q1 + q2 inside c(H, g0), given
/// q_i inside c(H, g_i). Throws InternalError if none exists.
MatCode theorem_2_7_search(const Frame& f, const std::vector<CuspData>& cs, MatCode g1,
                           MatCode g2, const Ideal& q1, const Ideal& q2);

/// c(H, g) directly.
Ideal amplitude_at(const Frame& f, MatCode g);

/// v_p(n!) >= v_p(m) for every prime p: m divides n!.
bool divides_factorial(const BigInt& m, std::size_t n);

}  // namespace conglab
