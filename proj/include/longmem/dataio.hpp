#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

#include "longmem/harness.hpp"
#include "longmem/mc.hpp"
#include "longmem/series.hpp"

namespace longmem {

// A value series with optional timestamps (ISO-8601 strings sort correctly).
struct SeriesFrame {
  std::vector<std::string> timestamps;  // empty or one per value
  Series values;
  std::string name;
  std::string frequency;   // "", "monthly", "daily", ...
  std::size_t dropped = 0; // rows skipped as missing on ingestion
};

// Column selection for CSV ingestion. Names are matched case-insensitively
// against the header; a spec that parses as an integer is a 0-based position.
// Empty fields auto-detect: DATE/VALUE headers, else first two columns, else
// a single value column.
struct ColumnSpec {
  std::string date_col;
  std::string value_col;
};

// Reads one series from a headered CSV. Missing markers ("", ".", "NA")
// are dropped and counted. More than 1% unparseable rows or non-monotone
// timestamps raise ingestion_error naming the offending lines.
SeriesFrame read_csv_series(const std::string& path, const ColumnSpec& cols = {});
SeriesFrame read_csv_series_text(const std::string& text, const ColumnSpec& cols = {},
                                 const std::string& name = "");

void write_series_csv(std::ostream& os, const SeriesFrame& frame);

// 17-significant-digit decimal string; reparses to exactly the same double.
std::string format_double(double v);

enum class TransformKind {
  yoy,             // 100 * (P_t / P_{t-12} - 1), drops the first 12
  mom_annualized,  // 1200 * (log P_t - log P_{t-1}), drops the first 1
  mom_compound,    // 100 * ((P_t / P_{t-1})^12 - 1), drops the first 1
  log_vol          // 0.5 * log(RV_t), log of the realized volatility
};

TransformKind transform_from_string(const std::string& s);

// Log-based transforms raise transform_error on nonpositive inputs, naming
// the first offending row.
SeriesFrame transform(const SeriesFrame& frame, TransformKind kind);

// HTTP fetch with an on-disk cache keyed by (series id, UTC day). The
// transport is injectable for tests; the default performs a real GET.
// Environment overrides: LONGMEM_ENDPOINT, LONGMEM_CACHE_DIR.
struct FetchOptions {
  std::string endpoint_template;  // "{id}" is replaced by the series id
  std::string cache_dir;
  // returns (status code, body); status <= 0 means transport failure
  std::function<std::pair<int, std::string>(const std::string& url)> transport;
};

SeriesFrame fetch_series(const std::string& series_id, const FetchOptions& opts = {});

// Flat key=value configuration with [section] headers and '#' comments.
// Keys are stored as "section.key" ("" section for the preamble). The
// optional "format" key must be 1 when present.
struct Config {
  std::map<std::string, std::string> kv;
  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// Comma-separated helpers used by the CLI and the config-driven runner.
std::vector<double> parse_double_list(const std::string& s);
std::vector<std::size_t> parse_size_list(const std::string& s);
std::vector<std::string> split_list(const std::string& s);

// CSV serialization. write/read round-trip exactly (doubles are emitted with
// 17 significant digits, which preserves every bit).
void write_study_csv(std::ostream& os, const StudyReport& report);
StudyReport read_study_csv(std::istream& is);
void write_eval_csv(std::ostream& os, const EvalTable& table);
EvalTable read_eval_csv(std::istream& is);

// Markdown rendering for display (not meant to round-trip).
void write_study_markdown(std::ostream& os, const StudyReport& report);
void write_eval_markdown(std::ostream& os, const EvalTable& table);

// (method/row, horizon/col, mse) triples for external plotting tools.
void write_eval_plot_data(std::ostream& os, const EvalTable& table);

}  // namespace longmem
