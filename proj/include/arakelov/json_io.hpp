#pragma once

#include <json.hpp>

#include "arakelov/bounds.hpp"
#include "arakelov/mvt.hpp"
#include "arakelov/search.hpp"
#include "arakelov/sections.hpp"
#include "arakelov/zeta.hpp"

namespace arakelov {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits; null when not finite.
Json number(double x);

Json to_json(const NumberField& field);
Json to_json(const SectionReport& report);
Json to_json(const SubbundleRecord& record);
Json to_json(const ZetaPartial& zeta);
Json to_json(const MonteCarloEstimate& estimate);
Json to_json(const MvtComparison& comparison, double z_max);
Json to_json(const BoundReport& report);
Json to_json(const SearchOutcome& outcome);
Json to_json(const SemistabilityVerdict& verdict);

}  // namespace arakelov
