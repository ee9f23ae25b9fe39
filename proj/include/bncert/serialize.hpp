#pragma once

#include "bncert/audit.hpp"

#include <json.hpp>

#include <ostream>
#include <vector>

namespace bncert {

using Json = nlohmann::ordered_json;

Json to_json(const ParamTuple &t);
Json to_json(const CheckReport &report);
Json to_json(const CertNode &node);
Json to_json(const AuditReport &report);
Json to_json(const AuditRun &run);
Json catalog_json(const InequalityCatalog &catalog);

/// One RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(const std::string &s);
void write_enum_csv(std::ostream &out, const std::vector<EnumRow> &rows);

}  // namespace bncert
