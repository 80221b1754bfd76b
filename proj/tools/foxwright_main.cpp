// Command-line front end: evaluation, convergence data, condition checks,
// envelope sweeps, Mathieu series, representation verifiers, zero counting.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foxwright/bounds.hpp"
#include "foxwright/conditions.hpp"
#include "foxwright/errors.hpp"
#include "foxwright/hfunction.hpp"
#include "foxwright/mathieu.hpp"
#include "foxwright/series.hpp"
#include "foxwright/special.hpp"

namespace fw = foxwright;
using nlohmann::json;

namespace {

// Reals are emitted at 12 significant digits everywhere so identical runs
// produce byte-identical output.
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double num12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

struct Sweep {
  std::string var;
  std::string scale;  // lin | log
  double start = 0.0, stop = 0.0;
  int points = 0;
};

Sweep parse_sweep(const std::string& text) {
  Sweep s;
  std::istringstream in(text);
  std::string a, b, c, d, e;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
      !std::getline(in, c, ':') || !std::getline(in, d, ':') ||
      !std::getline(in, e)) {
    throw fw::InputError("sweep: expected var:scale:start:stop:points");
  }
  s.var = a;
  s.scale = b;
  if (s.scale != "lin" && s.scale != "log") {
    throw fw::InputError("sweep: scale must be lin or log");
  }
  try {
    s.start = std::stod(c);
    s.stop = std::stod(d);
    s.points = std::stoi(e);
  } catch (const std::exception&) {
    throw fw::InputError("sweep: malformed numeric field");
  }
  if (s.points < 2) throw fw::InputError("sweep: points must be >= 2");
  if (s.scale == "log" && !(s.start > 0.0 && s.stop > 0.0)) {
    throw fw::InputError("sweep: log scale requires positive endpoints");
  }
  return s;
}

std::vector<double> sweep_grid(const Sweep& s) {
  std::vector<double> g(s.points);
  for (int i = 0; i < s.points; ++i) {
    const double f = static_cast<double>(i) / (s.points - 1);
    if (s.scale == "lin") {
      g[i] = s.start + f * (s.stop - s.start);
    } else {
      g[i] = std::exp(std::log(s.start) + f * (std::log(s.stop) - std::log(s.start)));
    }
  }
  return g;
}

int thread_budget(std::size_t jobs) {
  int n = 0;
  if (const char* env = std::getenv("FOXWRIGHT_THREADS")) {
    n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

// Evaluate fn over items in parallel; results land in input order.
template <typename Fn>
std::vector<json> parallel_map(const std::vector<double>& items, Fn fn) {
  std::vector<json> out(items.size());
  const int threads = thread_budget(items.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        try {
          out[i] = fn(items[i]);
        } catch (...) {
          std::scoped_lock lock(err_mutex);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

fw::FoxWrightParams load_params(const std::string& source) {
  if (source.empty()) throw fw::InputError("missing --params");
  std::string text = source;
  if (source[0] != '{') {
    std::string path = source[0] == '@' ? source.substr(1) : source;
    std::ifstream in(path);
    if (!in) throw fw::InputError("cannot open params file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return fw::params_from_json_text(text);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw fw::InputError("malformed numeric list: " + text);
    }
  }
  return out;
}

fw::ContourSpec parse_contour(const std::string& text,
                              const fw::FoxWrightParams& params) {
  if (text.empty()) return fw::ContourSpec::defaults(params);
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
      !std::getline(in, c)) {
    throw fw::InputError("contour: expected offset:half_length:step");
  }
  try {
    return {std::stod(a), std::stod(b), std::stod(c)};
  } catch (const std::exception&) {
    throw fw::InputError("contour: malformed numeric field");
  }
}

json round_json(const json& j) {
  if (j.is_number_float()) return num12(j.get<double>());
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_json(it.value());
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& item : j) out.push_back(round_json(item));
    return out;
  }
  return j;
}

void emit_json(const json& j) { std::cout << round_json(j).dump() << "\n"; }

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

json report_to_json(const fw::ResidualReport& r) {
  return json{{"series", r.series},
              {"integral", r.integral},
              {"abs_residual", r.abs_residual},
              {"rel_residual", r.rel_residual},
              {"warnings", r.warnings}};
}

json condition_to_json(const fw::ConditionReport& r) {
  json details = json::array();
  for (const auto& p : r.details) {
    details.push_back({{"name", p.name}, {"margin", p.margin}, {"ok", p.ok}});
  }
  json j{{"satisfied", r.satisfied}, {"details", details}};
  if (r.first_failure) {
    j["first_failure"] = *r.first_failure;
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

json envelope_to_json(const fw::Envelope& e, double z) {
  json j{{"z", z},
         {"lower", e.lower},
         {"upper", e.upper},
         {"contained", fw::envelope_contained(e)}};
  if (e.value) {
    j["value"] = *e.value;
  } else {
    j["value"] = nullptr;
  }
  if (e.unchecked) j["unchecked"] = true;
  return j;
}

void print_report_table(const fw::ResidualReport& r) {
  std::cout << "series       " << fmt12(r.series) << "\n"
            << "integral     " << fmt12(r.integral) << "\n"
            << "abs_residual " << fmt12(r.abs_residual) << "\n"
            << "rel_residual " << fmt12(r.rel_residual) << "\n";
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

struct Options {
  std::string params_text;
  std::string format = "table";
  std::string sweep_text;
  std::string contour_text;
  double tolerance = 1e-10;
};

int run_eval(const Options& opt, double z, bool z_set) {
  const fw::FoxWrightParams params = load_params(opt.params_text);
  const double tol = std::min(opt.tolerance, 1e-3);
  if (!opt.sweep_text.empty()) {
    const Sweep sweep = parse_sweep(opt.sweep_text);
    if (sweep.var != "z") throw fw::InputError("eval: sweep variable must be z");
    const auto grid = sweep_grid(sweep);
    auto rows = parallel_map(grid, [&](double zz) {
      return json{{"z", zz}, {"value", fw::eval_series(params, zz, tol)}};
    });
    if (opt.format == "json") {
      emit_json(rows);
    } else {
      std::vector<std::vector<std::string>> csv;
      for (const auto& row : rows) {
        csv.push_back({fmt12(row["z"].get<double>()),
                       fmt12(row["value"].get<double>())});
      }
      emit_csv({"z", "value"}, csv);
    }
    return 0;
  }
  if (!z_set) throw fw::InputError("eval: --z is required without --sweep");
  const double value = fw::eval_series(params, z, tol);
  if (opt.format == "json") {
    emit_json(json{{"z", z}, {"value", value}});
  } else {
    std::cout << fmt12(value) << "\n";
  }
  return 0;
}

int run_convergence(const Options& opt) {
  const fw::FoxWrightParams params = load_params(opt.params_text);
  const fw::ConvergenceData cd = fw::convergence_data(params);
  const json j{{"delta", cd.delta},
               {"nabla", cd.nabla},
               {"rho", cd.rho},
               {"mu", cd.mu},
               {"gamma_pole", cd.gamma_pole},
               {"balanced", cd.balanced}};
  if (opt.format == "json") {
    emit_json(j);
  } else {
    std::cout << "delta      " << fmt12(cd.delta) << "\n"
              << "nabla      " << fmt12(cd.nabla) << "\n"
              << "rho        " << fmt12(cd.rho) << "\n"
              << "mu         " << fmt12(cd.mu) << "\n"
              << "gamma_pole " << fmt12(cd.gamma_pole) << "\n"
              << "balanced   " << (cd.balanced ? "true" : "false") << "\n";
  }
  return 0;
}

int emit_condition(const Options& opt, const fw::ConditionReport& report) {
  if (opt.format == "json") {
    emit_json(condition_to_json(report));
  } else {
    std::cout << (report.satisfied ? "satisfied" : "not satisfied") << "\n";
    if (report.first_failure) {
      std::cout << "first failure: " << *report.first_failure << "\n";
    }
    for (const auto& p : report.details) {
      std::cout << (p.ok ? "  ok   " : "  FAIL ") << p.name
                << "  margin=" << fmt12(p.margin) << "\n";
    }
  }
  return report.satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fox-Wright function evaluation, bounds, and verifiers"};
  app.require_subcommand(1);

  Options opt;
  double z = 0.0, sigma = 1.0, lambda = 1.0, omega = 1.0, t_point = 0.5;
  double A_weight = 1.0;
  double m_alpha = 1.0, m_beta = 1.0, m_mu = 2.0, m_nu = 1.0, m_r = 1.0;
  int nmax = 16, order = 6, grid_n = 24, samples = 512;
  std::string interval_text = "0.5:4", rect_text, upper_text, lower_text;
  std::string check_kind, bounds_kind, mathieu_kind, verify_kind;
  bool no_value = false, unchecked = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format)
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--tol", opt.tolerance)->check(CLI::Range(1e-15, 1e-2));
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate the series");
  eval->add_option("--params", opt.params_text);
  auto* z_opt = eval->add_option("--z", z);
  eval->add_option("--sweep", opt.sweep_text);
  add_common(eval);

  CLI::App* conv = app.add_subcommand("convergence", "convergence data");
  conv->add_option("--params", opt.params_text)->required();
  add_common(conv);

  CLI::App* check = app.add_subcommand("check", "condition checks");
  check->add_option("kind", check_kind)
      ->required()
      ->check(CLI::IsMember({"h1", "h2", "cm", "turan-a", "turan-sigma"}));
  check->add_option("--params", opt.params_text);
  check->add_option("--upper", upper_text);
  check->add_option("--lower", lower_text);
  check->add_option("--nmax", nmax)->check(CLI::Range(0, 64));
  check->add_option("--interval", interval_text);
  check->add_option("--order", order)->check(CLI::Range(0, 8));
  check->add_option("--grid", grid_n)->check(CLI::Range(1, 10000));
  check->add_option("--A", A_weight);
  check->add_option("--sigma", sigma);
  check->add_option("--z", z);
  add_common(check);

  CLI::App* bounds = app.add_subcommand("bounds", "two-sided envelopes");
  bounds->add_option("kind", bounds_kind)
      ->required()
      ->check(CLI::IsMember({"luke", "lambda", "pfq"}));
  bounds->add_option("--params", opt.params_text);
  bounds->add_option("--upper", upper_text);
  bounds->add_option("--lower", lower_text);
  bounds->add_option("--z", z);
  bounds->add_option("--lambda", lambda);
  bounds->add_option("--sigma", sigma);
  bounds->add_option("--sweep", opt.sweep_text);
  bounds->add_flag("--no-value", no_value);
  bounds->add_flag("--unchecked", unchecked);
  add_common(bounds);

  CLI::App* mathieu = app.add_subcommand("mathieu", "generalized Mathieu series");
  mathieu->add_option("kind", mathieu_kind)
      ->required()
      ->check(CLI::IsMember({"sum", "bounds", "digamma", "all"}));
  mathieu->add_option("--alpha", m_alpha);
  mathieu->add_option("--beta", m_beta);
  mathieu->add_option("--mu", m_mu);
  mathieu->add_option("--nu", m_nu);
  mathieu->add_option("--r", m_r);
  mathieu->add_option("--sweep", opt.sweep_text);
  add_common(mathieu);

  CLI::App* verify = app.add_subcommand("verify", "integral representation checks");
  verify->add_option("kind", verify_kind)
      ->required()
      ->check(CLI::IsMember(
          {"laplace", "stieltjes", "reciprocal", "lambda", "meijer", "mathieu"}));
  verify->add_option("--params", opt.params_text);
  verify->add_option("--z", z);
  verify->add_option("--sigma", sigma);
  verify->add_option("--lambda", lambda);
  verify->add_option("--omega", omega);
  verify->add_option("--t", t_point);
  verify->add_option("--contour", opt.contour_text);
  verify->add_option("--alpha", m_alpha);
  verify->add_option("--beta", m_beta);
  verify->add_option("--mu", m_mu);
  verify->add_option("--nu", m_nu);
  verify->add_option("--r", m_r);
  add_common(verify);

  CLI::App* zeros = app.add_subcommand("zeros", "winding-number zero count");
  zeros->add_option("--params", opt.params_text)->required();
  zeros->add_option("--rect", rect_text)->required();
  zeros->add_option("--samples", samples)->check(CLI::Range(16, 1 << 20));
  add_common(zeros);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) return run_eval(opt, z, z_opt->count() > 0);
    if (conv->parsed()) return run_convergence(opt);

    if (check->parsed()) {
      if (check_kind == "h1") {
        return emit_condition(opt, fw::check_h1(load_params(opt.params_text), nmax));
      }
      if (check_kind == "h2") {
        return emit_condition(
            opt, fw::check_h2(parse_list(upper_text), parse_list(lower_text)));
      }
      if (check_kind == "cm") {
        const fw::FoxWrightParams params = load_params(opt.params_text);
        const auto ab = parse_list([&] {
          std::string s = interval_text;
          for (char& c : s) {
            if (c == ':') c = ',';
          }
          return s;
        }());
        if (ab.size() != 2) throw fw::InputError("cm: --interval must be a:b");
        auto f = [&](double x) { return fw::eval_series(params, -x); };
        return emit_condition(opt,
                              fw::numeric_cm_check(f, ab[0], ab[1], order, grid_n));
      }
      if (check_kind == "turan-a") {
        const double margin =
            fw::turan_in_A(load_params(opt.params_text), A_weight, z);
        if (opt.format == "json") {
          emit_json(json{{"A", A_weight}, {"z", z}, {"margin", margin}});
        } else {
          std::cout << fmt12(margin) << "\n";
        }
        return margin >= -1e-10 ? 0 : 1;
      }
      const double margin =
          fw::turan_in_sigma(load_params(opt.params_text), sigma, z);
      if (opt.format == "json") {
        emit_json(json{{"sigma", sigma}, {"z", z}, {"margin", margin}});
      } else {
        std::cout << fmt12(margin) << "\n";
      }
      return margin >= -1e-10 ? 0 : 1;
    }

    if (bounds->parsed()) {
      auto envelope_at = [&](double zz) -> fw::Envelope {
        if (bounds_kind == "luke") {
          return fw::luke_bounds(load_params(opt.params_text), zz, !no_value,
                                 unchecked);
        }
        if (bounds_kind == "lambda") {
          return fw::luke_bounds_lambda(load_params(opt.params_text), lambda,
                                        zz, !no_value, unchecked);
        }
        return fw::pfq_luke(parse_list(upper_text), parse_list(lower_text),
                            sigma, zz, !no_value, unchecked);
      };
      std::vector<double> grid{z};
      if (!opt.sweep_text.empty()) {
        const Sweep sweep = parse_sweep(opt.sweep_text);
        if (sweep.var != "z") throw fw::InputError("bounds: sweep variable must be z");
        grid = sweep_grid(sweep);
      }
      auto rows = parallel_map(grid, [&](double zz) {
        return envelope_to_json(envelope_at(zz), zz);
      });
      bool all_contained = true;
      for (const auto& row : rows) {
        all_contained = all_contained && row["contained"].get<bool>();
      }
      if (opt.format == "json") {
        rows.size() == 1 ? emit_json(rows[0]) : emit_json(rows);
      } else {
        std::vector<std::vector<std::string>> csv;
        for (const auto& row : rows) {
          csv.push_back({fmt12(row["z"].get<double>()),
                         fmt12(row["lower"].get<double>()),
                         row["value"].is_null() ? "" : fmt12(row["value"].get<double>()),
                         fmt12(row["upper"].get<double>())});
        }
        emit_csv({"z", "lower", "value", "upper"}, csv);
      }
      return all_contained ? 0 : 1;
    }

    if (mathieu->parsed()) {
      auto row_at = [&](double r) {
        fw::MathieuSpec spec{m_alpha, m_beta, m_mu, m_nu, r};
        json row{{"r", r}};
        const double s = fw::mathieu_exponent(spec);
        if (mathieu_kind == "sum" || mathieu_kind == "all") {
          row["sum"] = fw::mathieu_sum(spec, opt.tolerance);
        }
        if (mathieu_kind == "bounds" || mathieu_kind == "all") {
          const fw::MathieuBounds b = fw::mathieu_bounds(spec);
          row["L"] = b.lower;
          row["R"] = b.upper;
          row["s"] = b.exponent;
          row["w"] = b.weight;
        }
        if (mathieu_kind == "digamma" || (mathieu_kind == "all" && s > 2.0)) {
          const fw::MathieuBounds b = fw::mathieu_bounds_digamma(spec);
          row["L1"] = b.lower;
          row["R1"] = b.upper;
        }
        return row;
      };
      std::vector<double> grid{m_r};
      if (!opt.sweep_text.empty()) {
        const Sweep sweep = parse_sweep(opt.sweep_text);
        if (sweep.var != "r") throw fw::InputError("mathieu: sweep variable must be r");
        grid = sweep_grid(sweep);
      }
      auto rows = parallel_map(grid, row_at);
      if (opt.format == "json") {
        rows.size() == 1 ? emit_json(rows[0]) : emit_json(rows);
      } else {
        std::vector<std::string> header{"r"};
        if (rows[0].contains("L")) header.push_back("L");
        if (rows[0].contains("L1")) header.push_back("L1");
        if (rows[0].contains("sum")) header.push_back("sum");
        if (rows[0].contains("R1")) header.push_back("R1");
        if (rows[0].contains("R")) header.push_back("R");
        std::vector<std::vector<std::string>> csv;
        for (const auto& row : rows) {
          std::vector<std::string> line;
          for (const auto& key : header) {
            line.push_back(row.contains(key) ? fmt12(row[key].get<double>())
                                             : "");
          }
          csv.push_back(std::move(line));
        }
        emit_csv(header, csv);
      }
      return 0;
    }

    if (verify->parsed()) {
      fw::ResidualReport report;
      if (verify_kind == "mathieu") {
        report = fw::verify_mathieu_integral_rep(
            {m_alpha, m_beta, m_mu, m_nu, m_r}, std::max(opt.tolerance, 1e-8));
      } else {
        const fw::FoxWrightParams params = load_params(opt.params_text);
        const fw::ContourSpec contour = parse_contour(opt.contour_text, params);
        if (verify_kind == "laplace") {
          report = fw::verify_laplace_rep({params, contour}, z);
        } else if (verify_kind == "stieltjes") {
          report = fw::verify_stieltjes_rep({params, contour}, sigma, z);
        } else if (verify_kind == "reciprocal") {
          report = fw::verify_reciprocal_laplace(params, z);
        } else if (verify_kind == "lambda") {
          report = fw::verify_lambda_transform(params, lambda, omega, z);
        } else {
          report = fw::meijer_g_reduction_check({params, contour}, t_point);
        }
      }
      if (opt.format == "json") {
        emit_json(report_to_json(report));
      } else {
        print_report_table(report);
      }
      return 0;
    }

    if (zeros->parsed()) {
      const fw::FoxWrightParams params = load_params(opt.params_text);
      auto rect = parse_list([&] {
        std::string s = rect_text;
        for (char& c : s) {
          if (c == ':') c = ',';
        }
        return s;
      }());
      if (rect.size() != 4) throw fw::InputError("zeros: --rect must be x0:x1:y0:y1");
      const int count = fw::zero_count_right_half(params, rect[0], rect[1],
                                                  rect[2], rect[3], samples);
      if (opt.format == "json") {
        emit_json(json{{"count", count}});
      } else {
        std::cout << count << "\n";
      }
      return 0;
    }
  } catch (const fw::InputError& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const fw::HypothesisError& e) {
    std::cerr << json{{"error", "hypothesis"}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const fw::NumericError& e) {
    std::cerr << json{{"error", "numeric"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump()
              << "\n";
    return 3;
  }
  return 0;
}
