#include "lfmm/bench/report.hpp"

#include "lfmm/core/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace lfmm::bench {

using json = nlohmann::ordered_json;

void TrialRecord::set(const std::string& key, Value v) {
  for (auto& [k, val] : fields)
    if (k == key) {
      val = std::move(v);
      return;
    }
  fields.emplace_back(key, std::move(v));
}

const Value* TrialRecord::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

double TrialRecord::number(const std::string& key) const {
  const Value* v = get(key);
  if (!v) return std::numeric_limits<double>::quiet_NaN();
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(v)) return *b ? 1.0 : 0.0;
  return std::numeric_limits<double>::quiet_NaN();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double round_sig6(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

Report make_report(const std::string& kind, const std::vector<std::string>& columns,
                   const std::vector<TrialRecord>& records, const std::vector<std::pair<std::string, double>>& extra) {
  Report r;
  r.kind = kind;
  r.columns.push_back("trial");
  r.columns.insert(r.columns.end(), columns.begin(), columns.end());
  r.columns.push_back("error");
  for (const TrialRecord& rec : records) {
    std::vector<Value> row;
    row.emplace_back(rec.trial);
    for (const std::string& c : columns) {
      const Value* v = rec.get(c);
      Value cell = v ? *v : Value{};
      if (auto* d = std::get_if<double>(&cell)) *d = round_sig6(*d);
      row.push_back(std::move(cell));
    }
    row.emplace_back(rec.error.empty() ? Value{} : Value{rec.error});
    r.rows.push_back(std::move(row));
    r.wall_times.push_back(rec.wall_time);
  }
  for (std::size_t c = 1; c + 1 < r.columns.size(); ++c) {
    double sum = 0.0;
    int n = 0;
    bool numeric = false;
    for (const auto& row : r.rows) {
      const Value& v = row[c];
      double x = std::numeric_limits<double>::quiet_NaN();
      if (const auto* d = std::get_if<double>(&v)) x = *d, numeric = true;
      else if (const auto* i = std::get_if<std::int64_t>(&v)) x = static_cast<double>(*i), numeric = true;
      else if (const auto* b = std::get_if<bool>(&v)) x = *b ? 1.0 : 0.0, numeric = true;
      if (std::isfinite(x)) {
        sum += x;
        ++n;
      }
    }
    if (numeric && n > 0) r.summary.emplace_back("mean_" + r.columns[c], round_sig6(sum / n));
  }
  for (const auto& [k, v] : extra) r.summary.emplace_back(k, round_sig6(v));
  return r;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_number(x);
        else return csv_escape(x);
      },
      v);
}

json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return format_number(x);
          return round_sig6(x);
        } else return x;
      },
      v);
}

Value from_json(const json& j) {
  if (j.is_null()) return {};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return s;
  }
  fail(ErrorCode::Parse, "unsupported JSON value in report");
}

}  // namespace

void write_csv(std::ostream& out, const Report& r) {
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << csv_escape(r.columns[c]);
  out << "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << "\r\n";
  }
}

void write_summary_csv(std::ostream& out, const Report& r) {
  out << "metric,value\r\n";
  for (const auto& [k, v] : r.summary) out << csv_escape(k) << ',' << format_number(v) << "\r\n";
}

void write_json(std::ostream& out, const Report& r) {
  json j;
  j["kind"] = r.kind;
  j["columns"] = r.columns;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) o[r.columns[c]] = to_json(row[c]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  json summary = json::object();
  for (const auto& [k, v] : r.summary) summary[k] = to_json(v);
  j["summary"] = std::move(summary);
  out << j.dump(2) << '\n';
}

Report read_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("report JSON: ") + e.what());
  }
  Report r;
  try {
    r.kind = j.at("kind").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& o : j.at("rows")) {
      std::vector<Value> row;
      for (const auto& c : r.columns) row.push_back(o.contains(c) ? from_json(o.at(c)) : Value{});
      r.rows.push_back(std::move(row));
    }
    for (const auto& [k, v] : j.at("summary").items()) {
      const Value x = from_json(v);
      double d = std::numeric_limits<double>::quiet_NaN();
      if (const auto* p = std::get_if<double>(&x)) d = *p;
      else if (const auto* i = std::get_if<std::int64_t>(&x)) d = static_cast<double>(*i);
      r.summary.emplace_back(k, d);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("report JSON: ") + e.what());
  }
  return r;
}

std::filesystem::path emit_report(const Report& r, ReportFormat format, const std::filesystem::path& dir) {
  if (r.rows.empty()) fail(ErrorCode::InvalidArgument, "report has no records");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorCode::Io, "cannot write " + p.string());
    return f;
  };
  std::filesystem::path main;
  if (format == ReportFormat::Csv) {
    main = dir / (r.kind + ".csv");
    auto f = open(main);
    write_csv(f, r);
    auto s = open(dir / (r.kind + "_summary.csv"));
    write_summary_csv(s, r);
    if (!f || !s) fail(ErrorCode::Io, "failed writing report in " + dir.string());
  } else {
    main = dir / (r.kind + ".json");
    auto f = open(main);
    write_json(f, r);
    if (!f) fail(ErrorCode::Io, "failed writing " + main.string());
  }
  auto t = open(dir / (r.kind + "_timing.csv"));
  t << "trial,wall_time_s\r\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    t << cell_text(r.rows[i][0]) << ',' << format_number(r.wall_times.size() > i ? r.wall_times[i] : 0.0) << "\r\n";
  return main;
}

}  // namespace lfmm::bench
