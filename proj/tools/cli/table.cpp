#include "table.hpp"

#include <cmath>
#include <cstdio>

namespace cli {

namespace {

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(double v) const {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      return buf;
    }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string out = "\"";
      for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return out + "\"";
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::uint64_t u) const { return std::to_string(u); }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace

void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t) {
  os << meta_line(cfg) << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& s : t.summary) os << "# summary: " << s.dump() << '\n';
}

void write_json(std::ostream& os, const RunConfig& cfg, const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = to_json(cfg);
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    j["rows"].push_back(std::move(r));
  }
  if (!t.summary.empty()) j["summary"] = t.summary;
  os << j.dump(2) << '\n';
}

}  // namespace cli
