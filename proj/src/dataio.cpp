#include "longmem/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "httplib.h"

namespace longmem {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return t;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

// RFC-4180 style fields: quotes guard commas, doubled quotes escape.
std::vector<std::string> split_csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

bool parse_double_strict(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

bool parse_u64_strict(const std::string& s, std::uint64_t& out) {
  const std::string t = trim(s);
  if (t.empty() || t[0] == '-') return false;
  char* end = nullptr;
  out = std::strtoull(t.c_str(), &end, 10);
  return end == t.c_str() + t.size();
}

bool is_missing(const std::string& field) {
  const std::string t = trim(field);
  return t.empty() || t == "." || t == "NA" || t == "na" || t == "NaN";
}

// resolves a column spec to an index: integer specs are 0-based positions,
// anything else matches a header name case-insensitively; -1 when absent
int resolve_column(const std::string& spec, const std::vector<std::string>& headers) {
  if (spec.empty()) return -1;
  std::uint64_t pos;
  if (parse_u64_strict(spec, pos)) {
    if (pos >= headers.size()) throw ingestion_error("column index out of range: " + spec);
    return static_cast<int>(pos);
  }
  const std::string want = lower(trim(spec));
  for (std::size_t i = 0; i < headers.size(); ++i)
    if (lower(trim(headers[i])) == want) return static_cast<int>(i);
  throw ingestion_error("column not found: " + spec);
}

int find_header(const std::vector<std::string>& headers, const std::string& name) {
  for (std::size_t i = 0; i < headers.size(); ++i)
    if (lower(trim(headers[i])) == name) return static_cast<int>(i);
  return -1;
}

double require_double(const std::string& field, const char* what) {
  double v;
  if (!parse_double_strict(field, v))
    throw ingestion_error(std::string("bad ") + what + ": " + field);
  return v;
}

std::uint64_t require_u64(const std::string& field, const char* what) {
  std::uint64_t v;
  if (!parse_u64_strict(field, v))
    throw ingestion_error(std::string("bad ") + what + ": " + field);
  return v;
}

}  // namespace

SeriesFrame read_csv_series_text(const std::string& text, const ColumnSpec& cols,
                                 const std::string& name) {
  const std::vector<std::string> lines = split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw ingestion_error("empty input");

  const std::vector<std::string> headers = split_csv_fields(lines[header_line]);

  int date_idx = resolve_column(cols.date_col, headers);
  int value_idx = resolve_column(cols.value_col, headers);
  if (value_idx < 0) {
    value_idx = find_header(headers, "value");
    if (date_idx < 0) date_idx = find_header(headers, "date");
    if (value_idx < 0) {
      if (headers.size() >= 2) {
        // conventional layout: first column dates, second values
        if (date_idx < 0) date_idx = 0;
        value_idx = date_idx == 1 ? 0 : 1;
      } else {
        value_idx = 0;
      }
    }
  } else if (date_idx < 0 && cols.date_col.empty()) {
    date_idx = find_header(headers, "date");
    if (date_idx < 0 && headers.size() >= 2 && value_idx != 0) date_idx = 0;
  }
  if (date_idx == value_idx) date_idx = -1;

  SeriesFrame frame;
  frame.name = name;
  if (frame.name.empty()) {
    const std::string h = trim(headers[static_cast<std::size_t>(value_idx)]);
    if (!h.empty() && lower(h) != "value") frame.name = h;
  }

  std::vector<std::size_t> bad_lines;
  std::vector<std::size_t> order_lines;
  std::size_t data_rows = 0;

  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    ++data_rows;
    const std::size_t line_no = li + 1;  // 1-based, counting the header
    const std::vector<std::string> fields = split_csv_fields(lines[li]);
    const std::size_t need =
        static_cast<std::size_t>(std::max(date_idx, value_idx)) + 1;
    if (fields.size() < need) {
      bad_lines.push_back(line_no);
      continue;
    }
    const std::string& vfield = fields[static_cast<std::size_t>(value_idx)];
    if (is_missing(vfield)) {
      ++frame.dropped;
      continue;
    }
    double v;
    if (!parse_double_strict(vfield, v) || !std::isfinite(v)) {
      bad_lines.push_back(line_no);
      continue;
    }
    if (date_idx >= 0) {
      std::string ts = trim(fields[static_cast<std::size_t>(date_idx)]);
      if (!frame.timestamps.empty() && !(frame.timestamps.back() < ts))
        order_lines.push_back(line_no);
      frame.timestamps.push_back(std::move(ts));
    }
    frame.values.push_back(v);
  }

  if (!order_lines.empty()) {
    std::string msg = "timestamps not strictly increasing at line";
    if (order_lines.size() > 1) msg += 's';
    for (std::size_t i = 0; i < order_lines.size() && i < 10; ++i)
      msg += ' ' + std::to_string(order_lines[i]);
    throw ingestion_error(msg);
  }
  if (!bad_lines.empty() &&
      static_cast<double>(bad_lines.size()) > 0.01 * static_cast<double>(data_rows)) {
    std::string msg = std::to_string(bad_lines.size()) + " unparseable rows at line";
    if (bad_lines.size() > 1) msg += 's';
    for (std::size_t i = 0; i < bad_lines.size() && i < 10; ++i)
      msg += ' ' + std::to_string(bad_lines[i]);
    throw ingestion_error(msg);
  }
  frame.dropped += bad_lines.size();

  if (frame.values.empty()) throw ingestion_error("no usable rows");
  return frame;
}

SeriesFrame read_csv_series(const std::string& path, const ColumnSpec& cols) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ingestion_error("cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  SeriesFrame frame = read_csv_series_text(buf.str(), cols);
  if (frame.name.empty()) frame.name = std::filesystem::path(path).stem().string();
  return frame;
}

void write_series_csv(std::ostream& os, const SeriesFrame& frame) {
  const std::string vname = frame.name.empty() ? "VALUE" : frame.name;
  const bool dated = frame.timestamps.size() == frame.values.size() &&
                     !frame.timestamps.empty();
  if (dated) {
    os << "DATE," << csv_escape(vname) << "\n";
    for (std::size_t i = 0; i < frame.values.size(); ++i)
      os << csv_escape(frame.timestamps[i]) << ',' << format_double(frame.values[i])
         << "\n";
  } else {
    os << csv_escape(vname) << "\n";
    for (double v : frame.values) os << format_double(v) << "\n";
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TransformKind transform_from_string(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "yoy") return TransformKind::yoy;
  if (t == "mom" || t == "mom_annualized" || t == "mom_ann")
    return TransformKind::mom_annualized;
  if (t == "mom_compound" || t == "mom_comp" || t == "compound")
    return TransformKind::mom_compound;
  if (t == "log_vol" || t == "logvol" || t == "log-vol") return TransformKind::log_vol;
  throw std::invalid_argument("unknown transform: " + s);
}

SeriesFrame transform(const SeriesFrame& frame, TransformKind kind) {
  const Series& p = frame.values;
  const std::size_t T = p.size();
  SeriesFrame out;
  out.name = frame.name;
  out.frequency = frame.frequency;
  out.dropped = frame.dropped;

  const auto keep_dates = [&](std::size_t skip) {
    if (frame.timestamps.size() == T)
      out.timestamps.assign(frame.timestamps.begin() + static_cast<std::ptrdiff_t>(skip),
                            frame.timestamps.end());
  };

  switch (kind) {
    case TransformKind::yoy: {
      if (T < 13) throw insufficient_data("yoy needs at least 13 observations");
      for (std::size_t t = 12; t < T; ++t) {
        if (p[t - 12] == 0.0)
          throw transform_error("zero base value at row " + std::to_string(t - 12 + 1));
        out.values.push_back(100.0 * (p[t] / p[t - 12] - 1.0));
      }
      keep_dates(12);
      break;
    }
    case TransformKind::mom_annualized: {
      if (T < 2) throw insufficient_data("mom needs at least 2 observations");
      for (std::size_t t = 0; t < T; ++t)
        if (p[t] <= 0.0)
          throw transform_error("nonpositive value at row " + std::to_string(t + 1));
      for (std::size_t t = 1; t < T; ++t)
        out.values.push_back(1200.0 * (std::log(p[t]) - std::log(p[t - 1])));
      keep_dates(1);
      break;
    }
    case TransformKind::mom_compound: {
      if (T < 2) throw insufficient_data("mom needs at least 2 observations");
      for (std::size_t t = 1; t < T; ++t) {
        if (p[t - 1] == 0.0)
          throw transform_error("zero base value at row " + std::to_string(t));
        out.values.push_back(100.0 * (std::pow(p[t] / p[t - 1], 12.0) - 1.0));
      }
      keep_dates(1);
      break;
    }
    case TransformKind::log_vol: {
      if (T == 0) throw insufficient_data("empty series");
      for (std::size_t t = 0; t < T; ++t) {
        if (p[t] <= 0.0)
          throw transform_error("nonpositive value at row " + std::to_string(t + 1));
        out.values.push_back(0.5 * std::log(p[t]));
      }
      keep_dates(0);
      break;
    }
  }
  return out;
}

namespace {

std::string sanitize_id(const std::string& id) {
  std::string out;
  for (char c : id)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  return out.empty() ? std::string("series") : out;
}

std::string utc_day() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

std::pair<int, std::string> default_transport(const std::string& url) {
  // split scheme://host[:port] from the path
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return {-1, "malformed url: " + url};
  const std::size_t host_end = url.find('/', scheme_end + 3);
  const std::string base =
      host_end == std::string::npos ? url : url.substr(0, host_end);
  const std::string path =
      host_end == std::string::npos ? std::string("/") : url.substr(host_end);
  try {
    httplib::Client cli(base);
    cli.set_follow_location(true);
    auto res = cli.Get(path);
    if (!res) return {-1, "transport failure"};
    return {res->status, res->body};
  } catch (const std::exception& e) {
    return {-1, e.what()};
  }
}

}  // namespace

SeriesFrame fetch_series(const std::string& series_id, const FetchOptions& opts) {
  if (series_id.empty()) throw std::invalid_argument("fetch_series: empty id");

  std::string tmpl = opts.endpoint_template;
  if (tmpl.empty())
    if (const char* e = std::getenv("LONGMEM_ENDPOINT")) tmpl = e;
  if (tmpl.empty()) tmpl = "https://fred.stlouisfed.org/graph/fredgraph.csv?id={id}";

  std::string cache_dir = opts.cache_dir;
  if (cache_dir.empty())
    if (const char* e = std::getenv("LONGMEM_CACHE_DIR")) cache_dir = e;
  if (cache_dir.empty()) cache_dir = ".longmem_cache";

  const std::filesystem::path cache_path =
      std::filesystem::path(cache_dir) / (sanitize_id(series_id) + "_" + utc_day() + ".csv");

  std::string body;
  if (std::filesystem::exists(cache_path)) {
    std::ifstream is(cache_path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    body = buf.str();
  } else {
    std::string url = tmpl;
    const std::string token = "{id}";
    for (std::size_t at = url.find(token); at != std::string::npos;
         at = url.find(token, at))
      url.replace(at, token.size(), series_id), at += series_id.size();
    const auto transport = opts.transport ? opts.transport : default_transport;
    const auto [status, payload] = transport(url);
    if (status <= 0)
      throw fetch_error("fetch failed for " + series_id + ": " + payload);
    if (status != 200)
      throw fetch_error("fetch failed for " + series_id + ": HTTP " +
                        std::to_string(status));
    body = payload;
    std::error_code ec;
    std::filesystem::create_directories(cache_path.parent_path(), ec);
    std::ofstream os(cache_path, std::ios::binary);
    if (os) os << body;
  }

  SeriesFrame frame = read_csv_series_text(body, {}, series_id);
  frame.name = series_id;
  return frame;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

Config parse_config_text(const std::string& text) {
  Config cfg;
  std::string section;
  const std::vector<std::string> lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string line = lines[li];
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw error("config: malformed section at line " + std::to_string(li + 1));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw error("config: missing '=' at line " + std::to_string(li + 1));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw error("config: empty key at line " + std::to_string(li + 1));
    cfg.kv[section.empty() ? key : section + "." + key] = value;
  }
  if (cfg.has("format") && cfg.get("format") != "1")
    throw error("config: unsupported format " + cfg.get("format"));
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open config " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      const std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string t = trim(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split_list(s)) {
    double v;
    if (!parse_double_strict(tok, v))
      throw std::invalid_argument("bad number in list: " + tok);
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& tok : split_list(s)) {
    std::uint64_t v;
    if (!parse_u64_strict(tok, v))
      throw std::invalid_argument("bad count in list: " + tok);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void write_study_csv(std::ostream& os, const StudyReport& report) {
  os << "study,seed_base,replications\n";
  os << csv_escape(report.study) << ',' << report.seed_base << ','
     << report.replications << "\n";
  os << "block,d,innov,T,h,mse,rel_mse,has_rel,reps_used,failures\n";
  for (const StudyCell& c : report.cells) {
    os << csv_escape(c.block) << ',' << format_double(c.d) << ','
       << to_string(c.innov) << ',' << c.T << ',' << c.h << ','
       << format_double(c.mse) << ',' << format_double(c.rel_mse) << ','
       << (c.has_rel ? 1 : 0) << ',' << c.reps_used << ',' << c.failures << "\n";
  }
}

StudyReport read_study_csv(std::istream& is) {
  std::ostringstream buf;
  buf << is.rdbuf();
  const std::vector<std::string> lines = split_lines(buf.str());
  if (lines.size() < 3 || trim(lines[0]) != "study,seed_base,replications")
    throw ingestion_error("not a study csv");
  const auto meta = split_csv_fields(lines[1]);
  if (meta.size() != 3) throw ingestion_error("bad study metadata row");
  StudyReport report;
  report.study = meta[0];
  report.seed_base = require_u64(meta[1], "seed_base");
  report.replications = static_cast<std::size_t>(require_u64(meta[2], "replications"));
  if (trim(lines[2]) != "block,d,innov,T,h,mse,rel_mse,has_rel,reps_used,failures")
    throw ingestion_error("bad study header row");
  for (std::size_t li = 3; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto f = split_csv_fields(lines[li]);
    if (f.size() != 10)
      throw ingestion_error("bad study row at line " + std::to_string(li + 1));
    StudyCell c;
    c.block = f[0];
    c.d = require_double(f[1], "d");
    c.innov = innovation_from_string(f[2]);
    c.T = static_cast<std::size_t>(require_u64(f[3], "T"));
    c.h = static_cast<std::size_t>(require_u64(f[4], "h"));
    c.mse = require_double(f[5], "mse");
    c.rel_mse = require_double(f[6], "rel_mse");
    c.has_rel = require_u64(f[7], "has_rel") != 0;
    c.reps_used = static_cast<std::size_t>(require_u64(f[8], "reps_used"));
    c.failures = static_cast<std::size_t>(require_u64(f[9], "failures"));
    report.cells.push_back(std::move(c));
  }
  return report;
}

void write_eval_csv(std::ostream& os, const EvalTable& table) {
  os << "title,baseline_row\n";
  os << csv_escape(table.title) << ',' << table.baseline_row << "\n";
  os << "row,col,mse,ratio,has_ratio,count,failures,degenerate\n";
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
      const EvalCell& cell = table.at(r, c);
      os << csv_escape(table.row_labels[r]) << ',' << csv_escape(table.col_labels[c])
         << ',' << format_double(cell.mse) << ',' << format_double(cell.ratio) << ','
         << (cell.has_ratio ? 1 : 0) << ',' << cell.count << ',' << cell.failures
         << ',' << (cell.degenerate ? 1 : 0) << "\n";
    }
  }
}

EvalTable read_eval_csv(std::istream& is) {
  std::ostringstream buf;
  buf << is.rdbuf();
  const std::vector<std::string> lines = split_lines(buf.str());
  if (lines.size() < 3 || trim(lines[0]) != "title,baseline_row")
    throw ingestion_error("not an eval csv");
  const auto meta = split_csv_fields(lines[1]);
  if (meta.size() != 2) throw ingestion_error("bad eval metadata row");
  EvalTable table;
  table.title = meta[0];
  {
    double b;
    if (!parse_double_strict(meta[1], b)) throw ingestion_error("bad baseline_row");
    table.baseline_row = static_cast<int>(b);
  }
  if (trim(lines[2]) != "row,col,mse,ratio,has_ratio,count,failures,degenerate")
    throw ingestion_error("bad eval header row");

  std::vector<std::string> rows, cols;
  std::vector<EvalCell> cells;
  std::vector<std::pair<std::string, std::string>> keys;
  for (std::size_t li = 3; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto f = split_csv_fields(lines[li]);
    if (f.size() != 8)
      throw ingestion_error("bad eval row at line " + std::to_string(li + 1));
    EvalCell cell;
    cell.mse = require_double(f[2], "mse");
    cell.ratio = require_double(f[3], "ratio");
    cell.has_ratio = require_u64(f[4], "has_ratio") != 0;
    cell.count = static_cast<std::size_t>(require_u64(f[5], "count"));
    cell.failures = static_cast<std::size_t>(require_u64(f[6], "failures"));
    cell.degenerate = require_u64(f[7], "degenerate") != 0;
    if (std::find(rows.begin(), rows.end(), f[0]) == rows.end()) rows.push_back(f[0]);
    if (std::find(cols.begin(), cols.end(), f[1]) == cols.end()) cols.push_back(f[1]);
    keys.emplace_back(f[0], f[1]);
    cells.push_back(cell);
  }
  table.row_labels = rows;
  table.col_labels = cols;
  table.cells.assign(rows.size() * cols.size(), EvalCell{});
  if (cells.size() != table.cells.size()) throw ingestion_error("ragged eval csv");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t r = static_cast<std::size_t>(
        std::find(rows.begin(), rows.end(), keys[i].first) - rows.begin());
    const std::size_t c = static_cast<std::size_t>(
        std::find(cols.begin(), cols.end(), keys[i].second) - cols.begin());
    table.at(r, c) = cells[i];
  }
  return table;
}

namespace {

std::string md_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_study_markdown(std::ostream& os, const StudyReport& report) {
  os << "# " << report.study << " study (" << report.replications
     << " replications, seed " << report.seed_base << ")\n\n";
  os << "| block | d | innov | T | h | mse | rel_mse | used | failed |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (const StudyCell& c : report.cells) {
    os << "| " << c.block << " | " << md_num(c.d) << " | " << to_string(c.innov)
       << " | " << c.T << " | " << c.h << " | " << md_num(c.mse) << " | "
       << (c.has_rel ? md_num(c.rel_mse) : std::string("-")) << " | " << c.reps_used
       << " | " << c.failures << " |\n";
  }
}

void write_eval_markdown(std::ostream& os, const EvalTable& table) {
  os << "# " << table.title << "\n\n";
  os << "| method |";
  for (const std::string& c : table.col_labels) os << ' ' << c << " |";
  os << "\n|---|";
  for (std::size_t c = 0; c < table.col_labels.size(); ++c) os << "---|";
  os << "\n";
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    os << "| " << table.row_labels[r] << " |";
    for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
      const EvalCell& cell = table.at(r, c);
      os << ' ' << md_num(cell.mse);
      if (cell.has_ratio) os << " (" << md_num(cell.ratio) << ')';
      if (cell.degenerate) os << " *";
      os << " |";
    }
    os << "\n";
  }
}

void write_eval_plot_data(std::ostream& os, const EvalTable& table) {
  os << "row,col,mse\n";
  for (std::size_t r = 0; r < table.row_labels.size(); ++r)
    for (std::size_t c = 0; c < table.col_labels.size(); ++c)
      os << csv_escape(table.row_labels[r]) << ',' << csv_escape(table.col_labels[c])
         << ',' << format_double(table.at(r, c).mse) << "\n";
}

}  // namespace longmem
