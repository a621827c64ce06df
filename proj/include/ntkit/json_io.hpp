#pragma once

#include "ntkit/descent.hpp"
#include "ntkit/diophantine.hpp"
#include "ntkit/family.hpp"
#include "ntkit/pell.hpp"

#include <json.hpp>

namespace ntkit::io {

using json = nlohmann::ordered_json;

// Integers and rationals serialize as decimal strings: the values routinely
// exceed anything a JSON number can carry exactly.

json to_json(const pell::PellSolution& s);
json to_json(const pell::DivisibilityReport& r);
json to_json(const dioph::MembershipResult& r);
json to_json(const descent::SelmerReport& r);
json to_json(const descent::RankWindow& w);
json to_json(const family::MemberReport& r);

}  // namespace ntkit::io
