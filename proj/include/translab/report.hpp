#pragma once

#include "translab/deciders.hpp"
#include "translab/family_spec.hpp"
#include "translab/json_io.hpp"

#include <string>
#include <vector>

namespace translab {

struct ReportRow {
  std::string id;
  std::string anchor;  // short description of the claim
  std::string computed;
  std::string expected;
  bool pass = false;
  std::string soundness;
};

struct Report {
  std::vector<ReportRow> rows;

  bool all_pass() const;
  json to_json() const;
  std::string table() const;
};

inline constexpr const char* kReportSchema = "translab-report/1";

/// Family instances exercised by the report, in row order.
const std::vector<std::string>& report_manifest();

/// Rows for one family instance: one per expected property.
std::vector<ReportRow> family_rows(const FamilySpec& spec, const DeciderConfig& cfg);

/// Every in-scope claim, in manifest order.
Report report_paper(const DeciderConfig& cfg);

}  // namespace translab
