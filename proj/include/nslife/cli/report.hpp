#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>
#include "nslife/constants.hpp"
#include "nslife/lifespan.hpp"

namespace nslife::cli {

struct ConstantRow {
  std::string name;
  double value = 0.0;
  std::string formula;
};

/// Every ConstantSet entry with the closed form it comes from.
std::vector<ConstantRow> constant_rows(const ConstantSet& c);

nlohmann::ordered_json constants_json(const ConstantSet& c);
void print_constant_table(const ConstantSet& c, std::ostream& os);

nlohmann::ordered_json certificate_json(const LifespanCertificate& cert);
LifespanCertificate certificate_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json checks_json(const std::vector<ReplayCheck>& checks);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string fingerprint(const std::string& bytes);

/// Canonical serialization used for output files and fingerprints.
std::string canonical_dump(const nlohmann::ordered_json& j);

/// Short text digest of a report for the terminal.
std::string summary_text(const nlohmann::ordered_json& report);

}  // namespace nslife::cli
