#pragma once

#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace burgers::harness {

/// How a law compares its measurement with the target.
enum class Check {
  within,   // |measured - target| <= tolerance
  at_most,  // measured <= target
};

struct LawRecord {
  std::string id;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double std_error = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Check check = Check::within;
  bool asserted = true;  // reported-only laws never fail a report
  bool passed = false;
  double window_lo = std::numeric_limits<double>::quiet_NaN();
  double window_hi = std::numeric_limits<double>::quiet_NaN();
  double runtime_s = 0.0;
  std::string note;

  /// Sets `passed` from the measurement; NaN never passes.
  LawRecord& evaluate();
};

/// A CSV file under the output directory.
struct Table {
  std::string path;  // relative, e.g. "spectrum/nu=0.001/spectrum.csv"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Section {
  std::string name;
  std::vector<LawRecord> laws;
  std::vector<Table> tables;
  double runtime_s = 0.0;
};

struct AcceptanceReport {
  nlohmann::json config = nlohmann::json::object();
  std::vector<Section> sections;

  /// Asserted laws that failed, in section order.
  std::vector<const LawRecord*> failures() const;
  bool passed() const { return failures().empty(); }
  const LawRecord* find(const std::string& id) const;
};

/// Writes <out>/report.json, <out>/laws.csv, <out>/report.txt and every
/// section table. Returns the exit status: 0 if all asserted laws pass,
/// 1 otherwise. Throws IoError naming the offending path.
int emit_report(const AcceptanceReport& report, const std::string& out_dir);

/// Human-readable law table.
std::string format_table(const AcceptanceReport& report);

nlohmann::json to_json(const AcceptanceReport& report);

/// Fixed-format number used in every CSV so identical runs give identical
/// bytes.
std::string format_number(double x);

/// Directory component for a viscosity, e.g. "nu=0.001".
std::string nu_label(double nu);

}  // namespace burgers::harness
