#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "longmem/dataio.hpp"
#include "longmem/fipipe.hpp"
#include "longmem/fracdiff.hpp"
#include "longmem/harness.hpp"
#include "longmem/mc.hpp"
#include "longmem/meanest.hpp"
#include "longmem/memest.hpp"
#include "longmem/series.hpp"

namespace {

using namespace longmem;

SeriesFrame load_input(const std::string& path, const ColumnSpec& cols) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return read_csv_series_text(buf.str(), cols, "stdin");
  }
  return read_csv_series(path, cols);
}

std::vector<ForecastMethodSpec> parse_methods(const std::string& csv) {
  std::vector<ForecastMethodSpec> out;
  for (const std::string& tok : split_list(csv)) out.push_back(ForecastMethodSpec::parse(tok));
  if (out.empty()) throw std::invalid_argument("empty method list");
  return out;
}

DInterval interval_from_config(const Config& cfg, const std::string& key, DInterval fallback) {
  if (!cfg.has(key)) return fallback;
  const std::vector<double> v = parse_double_list(cfg.get(key));
  if (v.size() != 2 || !(v[0] < v[1]))
    throw error("config: " + key + " must be two increasing numbers");
  return DInterval{v[0], v[1]};
}

// "lw@0.65" | "w@0" | "waic" | "gsw" with study-wide search intervals
DEstimatorSpec parse_estimator_spec(const std::string& tok, DInterval lw_iv, DInterval par_iv) {
  DEstimatorSpec spec;
  std::string head = tok, arg;
  const std::size_t at = tok.find('@');
  if (at != std::string::npos) {
    head = tok.substr(0, at);
    arg = tok.substr(at + 1);
  }
  std::string h;
  for (char c : head) h += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  char buf[64];
  if (h == "lw") {
    spec.method = DMethod::lw;
    spec.alpha = arg.empty() ? 0.65 : std::stod(arg);
    spec.interval = lw_iv;
    std::snprintf(buf, sizeof buf, "LW(T^%g)", spec.alpha);
    spec.label = buf;
  } else if (h == "w" || h == "whittle") {
    spec.method = DMethod::whittle_fixed;
    spec.p = arg.empty() ? 0 : std::stoi(arg);
    spec.interval = par_iv;
    std::snprintf(buf, sizeof buf, "W(%d)", spec.p);
    spec.label = buf;
  } else if (h == "waic" || h == "w_aic" || h == "whittle_aic") {
    spec.method = DMethod::whittle_aic;
    spec.interval = par_iv;
    spec.label = "W(AIC)";
  } else if (h == "gsw") {
    spec.method = DMethod::gsw;
    spec.interval = par_iv;
    spec.label = "GSW";
  } else {
    throw std::invalid_argument("unknown estimator spec: " + tok);
  }
  return spec;
}

std::vector<Innovation> parse_innov_list(const std::string& csv) {
  std::vector<Innovation> out;
  for (const std::string& tok : split_list(csv)) out.push_back(innovation_from_string(tok));
  if (out.empty()) throw std::invalid_argument("empty innovation list");
  return out;
}

// writes through a file when a path is given, else stdout
void emit(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
  } else {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open output file " + path);
    fn(os);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional-integration forecasting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_fmt = "csv";
  std::string config_path;
  auto* seed_opt = app.add_option("--seed", seed, "base seed for anything simulated");
  app.add_option("--threads", threads, "worker threads (0 keeps the runtime default)");
  app.add_option("--out", out_fmt, "table format")->check(CLI::IsMember({"csv", "md"}));
  app.add_option("--config", config_path, "experiment grid file (key=value with [section]s)");
  app.parse_complete_callback([&] {
    if (threads > 0) set_threads(threads);
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw one fractionally integrated path");
  double sim_d = 0.0;
  std::string sim_innov = "iid";
  std::size_t sim_T = 0;
  sim->add_option("--d", sim_d, "memory parameter")->required();
  sim->add_option("--innov", sim_innov, "iid | ar1 | ma9");
  sim->add_option("--T", sim_T, "sample size")->required();
  sim->callback([&] {
    const Series y = simulate_fi({sim_d, innovation_from_string(sim_innov), sim_T, seed});
    SeriesFrame frame;
    frame.values = y;
    write_series_csv(std::cout, frame);
  });

  // estimate-d
  auto* ed = app.add_subcommand("estimate-d", "memory parameter estimators");
  std::string ed_method = "lw", ed_input, ed_datecol, ed_valuecol;
  double ed_alpha = 0.65, ed_lo = -0.5, ed_hi = 1.5;
  int ed_p = 0, ed_pmax = -1;
  ed->add_option("--method", ed_method, "lw | w | waic | gsw");
  ed->add_option("--alpha", ed_alpha, "lw bandwidth exponent");
  ed->add_option("--p", ed_p, "AR order for method w");
  ed->add_option("--pmax", ed_pmax, "AIC order ceiling (-1 = floor(ln T))");
  ed->add_option("--lo", ed_lo, "search interval lower end");
  ed->add_option("--hi", ed_hi, "search interval upper end");
  ed->add_option("--input", ed_input, "CSV path or -")->required();
  ed->add_option("--date-col", ed_datecol);
  ed->add_option("--value-col", ed_valuecol);
  ed->callback([&] {
    const SeriesFrame frame = load_input(ed_input, {ed_datecol, ed_valuecol});
    const Series& y = frame.values;
    const DInterval iv{ed_lo, ed_hi};
    MemoryEstimate est;
    if (ed_method == "lw")
      est = local_whittle(y, lw_bandwidth(y.size(), ed_alpha), iv);
    else if (ed_method == "w" || ed_method == "whittle")
      est = whittle_arfi(y, ed_p, iv);
    else if (ed_method == "waic" || ed_method == "whittle_aic")
      est = whittle_aic(y, ed_pmax, iv);
    else if (ed_method == "gsw")
      est = gsw(y, iv);
    else
      throw std::invalid_argument("unknown method: " + ed_method);
    std::cout << "method,d_hat,m,p,variance\n"
              << to_string(est.method) << ',' << format_double(est.d_hat) << ','
              << est.bandwidth_m << ',' << est.ar_order_p << ','
              << format_double(est.approx_variance) << "\n";
  });

  // estimate-mu
  auto* em = app.add_subcommand("estimate-mu", "location estimators");
  std::string em_method = "robinson", em_input, em_datecol, em_valuecol;
  double em_d = 0.0, em_alpha = 0.65;
  em->add_option("--method", em_method, "mean | robinson | shimotsu");
  auto* em_d_opt = em->add_option("--d", em_d, "memory parameter (omit to estimate by lw)");
  em->add_option("--alpha", em_alpha, "lw bandwidth exponent when estimating d");
  em->add_option("--input", em_input, "CSV path or -")->required();
  em->add_option("--date-col", em_datecol);
  em->add_option("--value-col", em_valuecol);
  em->callback([&] {
    const SeriesFrame frame = load_input(em_input, {em_datecol, em_valuecol});
    const Series& y = frame.values;
    MeanEstimate est;
    if (em_method == "mean") {
      est = arithmetic_mean(y);
    } else {
      const double d = em_d_opt->count() > 0
                           ? em_d
                           : local_whittle(y, lw_bandwidth(y.size(), em_alpha)).d_hat;
      if (em_method == "robinson")
        est = robinson_mean(y, d);
      else if (em_method == "shimotsu")
        est = shimotsu_mean(y, d);
      else
        throw std::invalid_argument("unknown method: " + em_method);
    }
    std::cout << "method,mu_hat,d_used\n"
              << em_method << ',' << format_double(est.mu_hat) << ','
              << format_double(est.d_used) << "\n";
  });

  // forecast
  auto* fc = app.add_subcommand("forecast", "h-step forecasts from one method");
  std::string fc_method = "fi(0.5)", fc_input, fc_datecol, fc_valuecol;
  std::size_t fc_h = 12;
  bool fc_common = false;
  fc->add_option("--method", fc_method, "FI(d) | FI(T^a) | LAR | AR1 | ES | HAR | MEAN | NAIVE");
  fc->add_option("--horizon", fc_h, "horizon");
  fc->add_flag("--lag-common", fc_common, "use the floor(12 (T/100)^0.25) lag ceiling");
  fc->add_option("--input", fc_input, "CSV path or -")->required();
  fc->add_option("--date-col", fc_datecol);
  fc->add_option("--value-col", fc_valuecol);
  fc->callback([&] {
    const SeriesFrame frame = load_input(fc_input, {fc_datecol, fc_valuecol});
    const ForecastMethodSpec spec = ForecastMethodSpec::parse(fc_method);
    const ForecastResult res = forecast_dispatch(spec, frame.values, fc_h, {fc_common});
    std::cout << "h,forecast\n";
    for (std::size_t i = 0; i < res.forecasts.size(); ++i)
      std::cout << (i + 1) << ',' << format_double(res.forecasts[i]) << "\n";
  });

  // poos
  auto* po = app.add_subcommand("poos", "pseudo-out-of-sample method comparison");
  std::string po_input, po_datecol, po_valuecol, po_window = "rolling";
  std::string po_horizons = "1,6,12", po_methods, po_baseline = "FI(0.5)", po_output;
  std::size_t po_size = 180;
  bool po_unpaired = false, po_common = false;
  po->add_option("--input", po_input, "CSV path or -")->required();
  po->add_option("--date-col", po_datecol);
  po->add_option("--value-col", po_valuecol);
  po->add_option("--window", po_window)->check(CLI::IsMember({"rolling", "expanding"}));
  po->add_option("--size", po_size, "window length / expanding start");
  po->add_option("--horizons", po_horizons, "comma list");
  po->add_option("--methods", po_methods, "comma list of method labels")->required();
  po->add_option("--baseline", po_baseline, "ratio denominator label ('' disables)");
  po->add_flag("--unpaired", po_unpaired, "keep unpaired origins");
  po->add_flag("--lag-common", po_common);
  po->add_option("--output", po_output, "file path (default stdout)");
  po->callback([&] {
    const SeriesFrame frame = load_input(po_input, {po_datecol, po_valuecol});
    PoosConfig cfg;
    cfg.window = po_window == "rolling" ? WindowKind::rolling : WindowKind::expanding;
    cfg.window_size = po_size;
    cfg.horizons = parse_size_list(po_horizons);
    cfg.methods = parse_methods(po_methods);
    cfg.baseline = po_baseline;
    cfg.paired = !po_unpaired;
    cfg.lag_rule = {po_common};
    const EvalTable table = poos_run(frame.values, cfg);
    emit(po_output, [&](std::ostream& os) {
      out_fmt == "md" ? write_eval_markdown(os, table) : write_eval_csv(os, table);
    });
  });

  // window-study
  auto* ws = app.add_subcommand("window-study", "POOS sensitivity to the window length");
  std::string ws_input, ws_datecol, ws_valuecol, ws_sizes, ws_methods, ws_output;
  std::size_t ws_expanding = 0, ws_h = 1;
  bool ws_common = false;
  ws->add_option("--input", ws_input, "CSV path or -")->required();
  ws->add_option("--date-col", ws_datecol);
  ws->add_option("--value-col", ws_valuecol);
  ws->add_option("--sizes", ws_sizes, "comma list of rolling window lengths")->required();
  ws->add_option("--expanding-initial", ws_expanding, "adds an expanding row (0 disables)");
  ws->add_option("--horizon", ws_h, "horizon");
  ws->add_option("--methods", ws_methods, "comma list of method labels")->required();
  ws->add_flag("--lag-common", ws_common);
  ws->add_option("--output", ws_output, "file path (default stdout)");
  ws->callback([&] {
    const SeriesFrame frame = load_input(ws_input, {ws_datecol, ws_valuecol});
    const EvalTable table =
        window_size_study(frame.values, parse_size_list(ws_sizes), ws_expanding, ws_h,
                          parse_methods(ws_methods), {ws_common});
    emit(ws_output, [&](std::ostream& os) {
      out_fmt == "md" ? write_eval_markdown(os, table) : write_eval_csv(os, table);
    });
  });

  // mc-study
  auto* mc = app.add_subcommand("mc-study", "config-driven Monte Carlo study");
  std::size_t mc_reps = 0;
  std::string mc_output;
  mc->add_option("--reps", mc_reps, "override the replication count");
  mc->add_option("--output", mc_output, "file path (default stdout)");
  mc->callback([&] {
    if (config_path.empty()) throw error("mc-study requires --config");
    const Config cfg = load_config(config_path);
    const std::string kind = cfg.get("study.kind");
    std::size_t reps = mc_reps;
    if (reps == 0 && cfg.has("study.reps"))
      reps = parse_size_list(cfg.get("study.reps")).at(0);
    if (reps == 0) throw error("config: study.reps missing (or pass --reps)");
    std::uint64_t base = seed;
    if (seed_opt->count() == 0 && cfg.has("study.seed"))
      base = parse_size_list(cfg.get("study.seed")).at(0);

    const std::vector<double> ds = parse_double_list(cfg.get("grid.d"));
    const std::vector<Innovation> innovs = parse_innov_list(cfg.get("grid.innov"));
    const std::vector<std::size_t> Ts = parse_size_list(cfg.get("grid.T"));

    StudyReport report;
    if (kind == "d") {
      const DInterval lw_iv = interval_from_config(cfg, "estimators.lw_interval", {});
      const DInterval par_iv = interval_from_config(cfg, "estimators.interval", {});
      std::vector<DEstimatorSpec> ests;
      for (const std::string& tok : split_list(cfg.get("estimators.specs")))
        ests.push_back(parse_estimator_spec(tok, lw_iv, par_iv));
      report = mc_d_study(ds, innovs, Ts, ests, reps, base);
    } else if (kind == "mean") {
      const double alpha = cfg.has("mean.lw_alpha") ? std::stod(cfg.get("mean.lw_alpha")) : 0.65;
      report = mc_mean_study(ds, innovs, Ts, alpha, reps, base);
    } else if (kind == "forecast") {
      const std::vector<std::size_t> hs = parse_size_list(cfg.get("grid.h"));
      const std::vector<ForecastMethodSpec> methods = parse_methods(cfg.get("forecast.methods"));
      const LagRule rule{cfg.get("forecast.lag_common") == "1"};
      report = mc_forecast_study(ds, innovs, Ts, hs, methods, reps, base, rule);
    } else {
      throw error("config: study.kind must be d, mean or forecast");
    }
    emit(mc_output, [&](std::ostream& os) {
      out_fmt == "md" ? write_study_markdown(os, report) : write_study_csv(os, report);
    });
  });

  // fetch
  auto* ft = app.add_subcommand("fetch", "download (or reuse a cached) public CSV series");
  std::string ft_id, ft_endpoint, ft_cache;
  ft->add_option("--id", ft_id, "series identifier")->required();
  ft->add_option("--endpoint", ft_endpoint, "URL template with {id}");
  ft->add_option("--cache-dir", ft_cache);
  ft->callback([&] {
    FetchOptions opts;
    opts.endpoint_template = ft_endpoint;
    opts.cache_dir = ft_cache;
    write_series_csv(std::cout, fetch_series(ft_id, opts));
  });

  // transform
  auto* tr = app.add_subcommand("transform", "derived series (yoy, mom, log_vol)");
  std::string tr_kind, tr_input, tr_datecol, tr_valuecol;
  tr->add_option("--kind", tr_kind, "yoy | mom | mom_compound | log_vol")->required();
  tr->add_option("--input", tr_input, "CSV path or -")->required();
  tr->add_option("--date-col", tr_datecol);
  tr->add_option("--value-col", tr_valuecol);
  tr->callback([&] {
    const SeriesFrame frame = load_input(tr_input, {tr_datecol, tr_valuecol});
    write_series_csv(std::cout, transform(frame, transform_from_string(tr_kind)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const longmem::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
