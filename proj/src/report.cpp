#include "conglab/report.hpp"

#include <sstream>

namespace conglab {

Json to_json(const AdditiveSubgroup& a) {
  Json gens = Json::array();
  for (Residue g : a.generators) gens.push_back(a.ring->format(g));
  return Json{{"generators", gens}, {"index_in_ring", a.index_in_ring()}};
}

Json to_json(const Verdict& v) { return Json{{"status", v.status}, {"detail", v.detail}}; }

Json to_json(const Frame& f, const AnalysisReport& r) {
  const Domain& d = f.ctx->domain;
  SL2 ops(f.ctx->ring);
  auto ideals = [&](const std::vector<Ideal>& xs) {
    Json a = Json::array();
    for (const Ideal& x : xs) a.push_back(d.format_ideal(x));
    return a;
  };
  Json j;
  j["domain"] = r.domain;
  j["modulus"] = r.modulus;
  j["index"] = r.index;
  j["normal"] = r.normal;
  Json cusps = Json::array();
  for (const CuspData& c : r.cusps) {
    Json rescaled = Json::array();
    for (const AdditiveSubgroup& b : c.rescaled) rescaled.push_back(to_json(b)["generators"]);
    cusps.push_back(Json{{"rep", ops.format(c.rep)},
                         {"amplitude", d.format_ideal(c.amplitude)},
                         {"quasi_amplitude", to_json(c.quasi_amplitude)},
                         {"m", c.m},
                         {"width", c.width},
                         {"rescaled", rescaled}});
  }
  j["cusps"] = cusps;
  j["amplitudes"] = ideals(r.amplitudes);
  j["c_min"] = d.format_ideal(r.c_min);
  j["c_max"] = d.format_ideal(r.c_max);
  j["level"] = d.format_ideal(r.level);
  j["quasi_level"] = to_json(r.quasi_level);
  j["order_ideal"] = d.format_ideal(r.order_ideal);
  j["condition_L"] = Json{{"holds", r.condition_L.holds},
                          {"failed_clause", r.condition_L.failed_clause},
                          {"witnesses", ideals(r.condition_L.witnesses)}};
  j["theorems"] = Json{{"A", to_json(r.theorem_A)},
                       {"B", to_json(r.theorem_B)},
                       {"C", to_json(r.theorem_C)},
                       {"cusp_split", to_json(r.cusp_split)},
                       {"unit_square", to_json(r.unit_square)},
                       {"level_index", to_json(r.level_index)},
                       {"level_amplitudes", to_json(r.level_amplitudes)}};
  return j;
}

Json to_json(const PermScreen& s) {
  Json steps = Json::array();
  std::string first_failure;
  for (const ScreenStep& st : s.steps) {
    steps.push_back(Json{{"screen", st.name}, {"status", st.status}, {"detail", st.detail}});
    if (st.status == "fail" && first_failure.empty()) first_failure = st.name;
  }
  Json j;
  j["cusp_split"] = s.split.widths;
  j["level"] = s.split.level;
  j["screens"] = steps;
  j["first_failure"] = first_failure.empty() ? Json(nullptr) : Json(first_failure);
  j["conclusion"] = s.conclusion;
  return j;
}

Json to_json(const TranslationSubspace& q, const SubspaceScreen& s) {
  const Domain& d = q.domain();
  Json basis = Json::array();
  for (const Poly& b : q.basis()) basis.push_back(d.format(b));
  Json j;
  j["field"] = d.describe();
  j["f"] = d.format(q.modulus());
  j["basis"] = basis;
  j["level"] = d.format_ideal(s.level);
  j["ql_codim"] = s.ql_codim;
  j["congruence_possible"] = s.congruence_possible;
  if (s.alpha) {
    j["certificate"] = Json{{"alpha", d.format(*s.alpha)},
                            {"v", d.format(*s.witness)},
                            {"alpha2_v", d.format(*s.image)}};
    j["conclusion"] = "non-congruence (unit-square closure fails)";
  } else {
    j["certificate"] = nullptr;
    j["conclusion"] = "inconclusive";
  }
  return j;
}

namespace {

bool scalar_array(const Json& j) {
  for (const auto& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostringstream& out, const Json& j, int depth) {
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    std::string key = j.is_object() ? it.key() : "-";
    if (!v.is_structured()) {
      out << pad << key << (j.is_object() ? ": " : " ") << scalar(v) << "\n";
    } else if (v.is_array() && scalar_array(v)) {
      out << pad << key << (j.is_object() ? ": " : " ") << "[";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "]\n";
    } else {
      out << pad << key << (j.is_object() ? ":" : "") << "\n";
      render(out, v, depth + 1);
    }
  }
}

}  // namespace

std::string to_text(const Json& j) {
  std::ostringstream out;
  if (j.is_structured()) {
    render(out, j, 0);
  } else {
    out << scalar(j) << "\n";
  }
  return out.str();
}

}  // namespace conglab
