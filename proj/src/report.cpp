#include "psfree/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace psfree {

std::string format_decimal(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", v);
  return buf;
}

double round_decimal(long double v) { return std::stod(format_decimal(v)); }

Json to_json(const CountReport& r) {
  Json j;
  j["sumKind"] = to_string(r.sum_kind);
  j["X"] = r.X;
  j["c"] = r.c ? Json(r.c->to_string()) : Json(nullptr);
  j["count"] = r.count;
  j["elapsed"] = round_decimal(r.elapsed);
  if (r.c && !r.c->theorem_range()) j["outsideTheoremRange"] = true;
  return j;
}

Json to_json(const DecompositionReport& r) {
  Json j;
  j["X"] = r.X;
  j["c"] = r.c.to_string();
  if (std::isinf(r.z))
    j["z"] = "inf";
  else
    j["z"] = round_decimal(r.z);
  j["s1"] = r.s1;
  j["s2"] = r.s2;
  j["boundary"] = r.boundary;
  j["direct"] = r.direct;
  j["identityHolds"] = r.identity_holds;
  j["displayed"] = {{"s1", r.displayed.s1},
                    {"s2", r.displayed.s2},
                    {"boundary", r.displayed.boundary},
                    {"identityHolds", r.displayed.identity_holds}};
  return j;
}

Json to_json(const RigorousValue& v) {
  Json j;
  j["value"] = v.value;
  j["errorBound"] = v.error_bound;
  j["derivation"] = v.derivation;
  return j;
}

Json to_json(const ErrorSample& s) {
  Json j;
  j["X"] = s.X;
  j["c"] = s.c ? Json(s.c->to_string()) : Json(nullptr);
  j["count"] = s.count;
  j["mainTerm"] = round_decimal(s.main_term);
  j["error"] = round_decimal(s.error);
  j["normalizedError"] = round_decimal(s.normalized_error);
  j["elapsedSeconds"] = round_decimal(s.elapsed);
  j["sumKind"] = to_string(s.sum_kind);
  j["mainTermUncertainty"] = round_decimal(s.main_term_uncertainty);
  return j;
}

Json to_json(const VdcCheck& v) {
  Json j;
  j["absH"] = round_decimal(v.abs_h);
  j["terms"] = v.terms;
  j["lambdaMin"] = round_decimal(v.lambda.lambda_min);
  j["lambdaMax"] = round_decimal(v.lambda.lambda_max);
  j["vdcBound"] = round_decimal(v.bound);
  j["ratio"] = round_decimal(v.ratio);
  j["hestBound"] = round_decimal(v.hest_bound);
  j["hestRatio"] = round_decimal(v.hest_ratio);
  return j;
}

std::string csv_header() { return "X,c,count,mainTerm,error,normalizedError,elapsedSeconds"; }

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string to_csv_row(const ErrorSample& s) {
  std::string row = std::to_string(s.X);
  row += ',' + csv_field(s.c ? s.c->to_string() : "");
  row += ',' + std::to_string(s.count);
  row += ',' + format_decimal(s.main_term);
  row += ',' + format_decimal(s.error);
  row += ',' + format_decimal(s.normalized_error);
  row += ',' + format_decimal(s.elapsed);
  return row;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  return fields;
}

ErrorSample error_sample_from_csv(std::string_view line, SumKind kind) {
  const auto f = split_csv_line(line);
  if (f.size() != 7) throw std::invalid_argument("CSV row must have 7 fields: '" + std::string(line) + "'");
  ErrorSample s;
  s.sum_kind = kind;
  s.X = std::stoull(f[0]);
  if (!f[1].empty()) s.c = Exponent::parse(f[1]);
  s.count = std::stoull(f[2]);
  s.main_term = std::stod(f[3]);
  s.error = std::stod(f[4]);
  s.normalized_error = std::stod(f[5]);
  s.elapsed = std::stod(f[6]);
  return s;
}

ErrorSample error_sample_from_json(const Json& j) {
  ErrorSample s;
  s.sum_kind = parse_sum_kind(j.at("sumKind").get<std::string>());
  s.X = j.at("X").get<std::uint64_t>();
  if (!j.at("c").is_null()) s.c = Exponent::parse(j.at("c").get<std::string>());
  s.count = j.at("count").get<std::uint64_t>();
  s.main_term = j.at("mainTerm").get<double>();
  s.error = j.at("error").get<double>();
  s.normalized_error = j.at("normalizedError").get<double>();
  s.elapsed = j.at("elapsedSeconds").get<double>();
  if (j.contains("mainTermUncertainty")) s.main_term_uncertainty = j.at("mainTermUncertainty").get<double>();
  return s;
}

}  // namespace psfree
