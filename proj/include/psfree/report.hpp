#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "psfree/constants.hpp"
#include "psfree/counting.hpp"
#include "psfree/expsum.hpp"

namespace psfree {

using Json = nlohmann::ordered_json;

/// Decimal text with 15 significant digits, the precision every report uses.
std::string format_decimal(long double v);
/// The double that format_decimal(v) parses back to.
double round_decimal(long double v);

Json to_json(const CountReport& r);
Json to_json(const DecompositionReport& r);
Json to_json(const RigorousValue& v);
Json to_json(const ErrorSample& s);
Json to_json(const VdcCheck& v);

/// X,c,count,mainTerm,error,normalizedError,elapsedSeconds
std::string csv_header();
std::string to_csv_row(const ErrorSample& s);

/// Inverse of to_csv_row; the kind is not stored in the row.
ErrorSample error_sample_from_csv(std::string_view line, SumKind kind);
ErrorSample error_sample_from_json(const Json& j);

/// RFC-4180 field splitting (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_field(std::string_view field);

}  // namespace psfree
