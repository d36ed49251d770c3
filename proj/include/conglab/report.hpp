#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conglab/analyzer.hpp"
#include "conglab/modular.hpp"
#include "conglab/subspace.hpp"

namespace conglab {

using Json = nlohmann::ordered_json;

Json to_json(const AdditiveSubgroup& a);
Json to_json(const Verdict& v);
Json to_json(const Frame& f, const AnalysisReport& r);
Json to_json(const PermScreen& s);
Json to_json(const TranslationSubspace& q, const SubspaceScreen& s);

/// Indented "key: value" rendering; scalar arrays stay on one line.
std::string to_text(const Json& j);

}  // namespace conglab
