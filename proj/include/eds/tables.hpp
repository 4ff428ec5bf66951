// Embedded dataset of the reference tables and worked examples, plus the
// verification harness replaying every row through the other modules.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eds/curve.hpp"

namespace eds {

struct TableRow {
  std::string table;     // "T1", "T2", "T3", "EX"
  int index = 0;         // position within its table
  std::vector<int> ms;   // multiplication-map multipliers tied to the row
  WeierstrassCurve curve;
  Rational x;
  std::optional<Rational> y;
  std::optional<int> torsion;
  std::optional<int> magnification;
  nlohmann::json facts;  // structured assertions

  CurvePoint point() const;  // throws when the row is x-only
};

// Dataset file location: defaults to <data dir>/verification_tables.json.
std::string default_tables_path();

// table_id: "1", "2", "3", "ex" or "all".  Validates the schema, the row
// checksum, and that every embedded point satisfies its curve exactly.
std::vector<TableRow> load_rows(const std::string& table_id,
                                const std::string& path = default_tables_path());

struct VerifyConfig {
  int depth = 2;
  long trial_bound = 1000000;
  int mr_rounds = 64;
  double tolerance = 1e-6;
  int parallelism = 1;
};

struct VerificationOutcome {
  std::string table;
  int row_index = 0;
  std::string row_label;
  std::string assertion;
  enum class Status { Pass, Fail, Undetermined } status = Status::Undetermined;
  std::string detail;
};

std::vector<VerificationOutcome> verify_row(const TableRow& row, const VerifyConfig& config);

// All rows, canonical order; rows are independent and may run in parallel.
std::vector<VerificationOutcome> verify_rows(const std::vector<TableRow>& rows,
                                             const VerifyConfig& config);

// FNV-1a 64 over the canonical serialization; used for the dataset checksum.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace eds
