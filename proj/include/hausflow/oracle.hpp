#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace hausflow {

// Reference values minted by brute force, independent of the library
// implementations: definition-level enumeration, fine-grid optimization, and
// high-resolution sums. The emitted files are committed under data/oracle and
// the test suite reads them instead of recomputing.
std::vector<std::string> oracle_case_ids();
nlohmann::ordered_json oracle_case(const std::string& id);

}  // namespace hausflow
