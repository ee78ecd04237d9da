#include "burgers/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers::harness {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

nlohmann::json number(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

const char* check_name(Check c) { return c == Check::within ? "within" : "at_most"; }

}  // namespace

LawRecord& LawRecord::evaluate() {
  if (!std::isfinite(measured)) {
    passed = false;
  } else if (check == Check::within) {
    passed = std::abs(measured - target) <= tolerance;
  } else {
    passed = measured <= target;
  }
  return *this;
}

std::vector<const LawRecord*> AcceptanceReport::failures() const {
  std::vector<const LawRecord*> out;
  for (const auto& s : sections)
    for (const auto& l : s.laws)
      if (l.asserted && !l.passed) out.push_back(&l);
  return out;
}

const LawRecord* AcceptanceReport::find(const std::string& id) const {
  for (const auto& s : sections)
    for (const auto& l : s.laws)
      if (l.id == id) return &l;
  return nullptr;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string nu_label(double nu) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "nu=%g", nu);
  return buf;
}

nlohmann::json to_json(const AcceptanceReport& report) {
  nlohmann::json j;
  j["config"] = report.config;
  j["passed"] = report.passed();
  j["sections"] = nlohmann::json::array();
  for (const auto& s : report.sections) {
    nlohmann::json js;
    js["name"] = s.name;
    js["runtime_s"] = s.runtime_s;
    js["laws"] = nlohmann::json::array();
    for (const auto& l : s.laws) {
      js["laws"].push_back({{"id", l.id},
                            {"measured", number(l.measured)},
                            {"std_error", number(l.std_error)},
                            {"target", l.target},
                            {"tolerance", l.tolerance},
                            {"check", check_name(l.check)},
                            {"asserted", l.asserted},
                            {"passed", l.passed},
                            {"window", {number(l.window_lo), number(l.window_hi)}},
                            {"runtime_s", l.runtime_s},
                            {"note", l.note}});
    }
    js["tables"] = nlohmann::json::array();
    for (const auto& t : s.tables) js["tables"].push_back(t.path);
    j["sections"].push_back(std::move(js));
  }
  return j;
}

std::string format_table(const AcceptanceReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %12s %10s %9s %9s  %-7s %s\n", "law", "measured", "stderr",
                "target", "tol", "status", "window");
  out << line;
  for (const auto& s : report.sections) {
    for (const auto& l : s.laws) {
      const char* status = !l.asserted ? (l.passed ? "(ok)" : "(off)") : (l.passed ? "PASS" : "FAIL");
      char tol[32] = "max";
      if (l.check == Check::within) std::snprintf(tol, sizeof tol, "%g", l.tolerance);
      std::snprintf(line, sizeof line, "%-34s %12.5g %10.3g %9.4g %9s  %-7s [%g, %g]\n",
                    l.id.c_str(), l.measured, l.std_error, l.target, tol, status,
                    l.window_lo, l.window_hi);
      out << line;
      if (!l.note.empty()) out << "    " << l.note << '\n';
    }
  }
  const auto failed = report.failures();
  out << (failed.empty() ? "all asserted laws pass\n" : "failed laws:");
  for (const auto* l : failed) out << ' ' << l->id;
  if (!failed.empty()) out << '\n';
  return out.str();
}

int emit_report(const AcceptanceReport& report, const std::string& out_dir) {
  const fs::path root(out_dir);
  for (const auto& s : report.sections) {
    for (const auto& t : s.tables) {
      const fs::path p = root / t.path;
      auto out = open_output(p);
      for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
      }
      finish(out, p);
    }
  }
  {
    const fs::path p = root / "report.json";
    auto out = open_output(p);
    out << to_json(report).dump(2) << '\n';
    finish(out, p);
  }
  {
    const fs::path p = root / "laws.csv";
    auto out = open_output(p);
    out << "law,measured,std_error,target,tolerance,check,asserted,passed,window_lo,window_hi\n";
    for (const auto& s : report.sections)
      for (const auto& l : s.laws)
        out << l.id << ',' << format_number(l.measured) << ',' << format_number(l.std_error) << ','
            << format_number(l.target) << ',' << format_number(l.tolerance) << ','
            << check_name(l.check) << ',' << l.asserted << ',' << l.passed << ','
            << format_number(l.window_lo) << ',' << format_number(l.window_hi) << '\n';
    finish(out, p);
  }
  {
    const fs::path p = root / "report.txt";
    auto out = open_output(p);
    out << format_table(report);
    finish(out, p);
  }
  return report.passed() ? 0 : 1;
}

}  // namespace burgers::harness
