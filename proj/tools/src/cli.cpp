#include "fkdet_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fkdet/catalog.hpp"
#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"
#include "fkdet/rep_file.hpp"
#include "fkdet/series.hpp"

namespace fkdet::cli {

namespace {

std::string format_csv_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Rational parse_rational(const std::string& text) {
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(text);
      q.canonicalize();
      return q;
    }
    // Decimal input is converted exactly: digits over a power of ten.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ValidationError("cannot parse lambda '" + text + "'");
  }
}

struct LambdaChoice {
  LambdaPolicy policy = LambdaPolicy::Safe;
  Rational value = 0;
};

// paper_inverse is the published 1/lambda for the operator, when one exists.
LambdaChoice choose_lambda(const std::string& spec, const std::optional<Rational>& paper_inverse,
                           const std::string& op) {
  if (spec == "safe") return {};
  if (spec == "paper") {
    if (!paper_inverse) throw ValidationError("no published lambda for operator " + op);
    return {LambdaPolicy::PaperVerbatim, 1 / *paper_inverse};
  }
  const Rational q = parse_rational(spec);
  if (sgn(q) <= 0) throw ValidationError("lambda must be positive");
  return {LambdaPolicy::Explicit, q};
}

RepFile load_rep(const std::optional<std::filesystem::path>& rep, const char* default_name) {
  return read_rep_file(rep ? *rep : default_data_dir() / default_name);
}

std::vector<SweepRow> rows_from(const DetEstimate& est, std::optional<double> t, double factor) {
  std::vector<SweepRow> rows;
  for (std::size_t n = 1; n < est.bounds.size(); ++n) {
    rows.push_back({t, static_cast<int>(n), est.lambda.get_d(), est.bounds[n] * factor,
                    est.certified});
  }
  return rows;
}

ApproxParams params_for(const LambdaChoice& choice, int N, std::size_t budget) {
  ApproxParams p;
  p.policy = choice.policy;
  p.lambda = choice.value;
  p.N = N;
  p.power.budget = budget;
  return p;
}

// Runs f(i) for i in [0, count) on up to `threads` workers; results keep
// index order and the first failing index's exception is rethrown.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

std::vector<SweepRow> fig8_rows(bool twist, double t, const RepFile& rep,
                                const std::string& lambda, int N, std::size_t budget,
                                double drop_tolerance) {
  const Rational tq(t);
  FloatElement element = twist ? fig8_twist<Complex>(t, rep).element
                               : fig8_wirtinger<Complex>(t, rep).element;
  if (twist) element = scale(Complex(t), element);
  if (drop_tolerance > 0.0) {
    FloatElement loose(element.spec(), drop_tolerance);
    for (const auto& [key, term] : element.terms()) loose.add_keyed(key, term.coeff);
    element = std::move(loose);
  }
  const Rational paper_inverse = twist ? Rational(2 + 2 * tq) : Rational(1 + 3 * tq + tq * tq);
  const auto choice = choose_lambda(lambda, paper_inverse, twist ? "fig8-twist" : "fig8-wirtinger");
  const DetEstimate est = det_upper_bound(element, params_for(choice, N, budget));
  return rows_from(est, t, twist ? std::max(1.0, t) : 1.0);
}

}  // namespace

TGrid TGrid::parse(const std::string& text) {
  TGrid g;
  std::istringstream is(text);
  char c1 = 0;
  char c2 = 0;
  if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.count) || c1 != ':' || c2 != ':' ||
      is.peek() != std::char_traits<char>::eof()) {
    throw ValidationError("t-grid must look like start:stop:count, got '" + text + "'");
  }
  if (!(g.start > 0)) throw ValidationError("t-grid start must be positive");
  if (g.start > g.stop) throw ValidationError("t-grid start must not exceed stop");
  if (g.count < 1) throw ValidationError("t-grid count must be >= 1");
  if (g.count == 1 && g.start != g.stop) {
    throw ValidationError("a one-point t-grid needs start == stop");
  }
  return g;
}

std::vector<double> TGrid::points() const {
  std::vector<double> pts;
  if (count == 1) return {start};
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) pts.push_back(start + i * step);
  pts.back() = stop;
  return pts;
}

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FKDET_THREADS"); env && *env) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", x);
  return buf;
}

std::string cmd_exact(const std::string& family, int d) {
  if (family == "free") return format_value(free_closed_form(d));
  if (family == "symmetric") return format_value(symmetric_free_closed_form(d));
  throw ValidationError("unknown family '" + family + "' (expected free or symmetric)");
}

SeriesResult cmd_series(const std::string& family, int d, int K, bool verify,
                        std::size_t budget) {
  if (K < 0) throw ValidationError("k must be >= 0");
  SeriesCoeffs u;
  if (family == "free") {
    u = free_series(d, K);
  } else if (family == "symmetric") {
    u = symmetric_free_series(d, K);
  } else {
    throw ValidationError("unknown family '" + family + "' (expected free or symmetric)");
  }
  SeriesResult out;
  std::ostringstream os;
  os << "k,coefficient\n";
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) os << k << ',' << u.coeffs[k].get_str() << '\n';
  if (verify) {
    if (family != "free") throw ValidationError("--verify is available for the free family");
    PowerOptions opts;
    opts.budget = budget;
    const auto report = verify_bruteforce(d, K, opts);
    out.verified = report.agrees;
    os << "# brute-force " << (report.agrees ? "agrees" : "DISAGREES") << '\n';
  }
  out.csv = os.str();
  return out;
}

std::vector<SweepRow> cmd_approx(const SweepConfig& config) {
  if (config.N < 1) throw ValidationError("n must be >= 1");
  const std::string& op = config.op;
  if (op == "free" || op == "symmetric") {
    const SeriesCoeffs u =
        op == "free" ? free_series(config.d, config.N) : symmetric_free_series(config.d, config.N);
    const int terms = op == "free" ? config.d : 2 * config.d;
    auto choice = choose_lambda(config.lambda, std::nullopt, op);
    if (choice.policy == LambdaPolicy::Safe) choice.value = Rational(1, terms * terms);
    DetEstimate est = upper_bounds(u, params_for(choice, config.N, config.budget));
    est.certified = choice.policy == LambdaPolicy::Safe ||
                    (choice.policy == LambdaPolicy::Explicit &&
                     choice.value <= Rational(1, terms * terms));
    return rows_from(est, std::nullopt, 1.0);
  }

  const auto ts = config.grid.points();
  std::vector<std::vector<SweepRow>> per_t;
  if (op == "cyclic") {
    const auto choice = choose_lambda(config.lambda, std::nullopt, op);
    per_t = parallel_map(ts.size(), config.threads, [&](std::size_t i) {
      const auto named = cyclic_operator(Rational(ts[i]));
      return rows_from(det_upper_bound(named.element, params_for(choice, config.N, config.budget)),
                       ts[i], 1.0);
    });
  } else if (op == "fig8-wirtinger" || op == "fig8-twist") {
    const bool twist = op == "fig8-twist";
    const RepFile rep = load_rep(config.rep, twist ? "fig8_twist.rep" : "fig8_wirtinger.rep");
    per_t = parallel_map(ts.size(), config.threads, [&](std::size_t i) {
      return fig8_rows(twist, ts[i], rep, config.lambda, config.N, config.budget, 0.0);
    });
  } else {
    throw ValidationError("unknown operator '" + op +
                          "' (expected free, symmetric, cyclic, fig8-wirtinger, fig8-twist)");
  }
  std::vector<SweepRow> rows;
  for (auto& block : per_t) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "t,n,lambda,bound,certified\n";
  for (const auto& r : rows) {
    os << (r.t ? format_csv_float(*r.t) : std::string()) << ',' << r.n << ','
       << format_csv_float(r.lambda) << ',' << format_csv_float(r.bound) << ','
       << (r.certified ? "true" : "false") << '\n';
  }
  return os.str();
}

double cmd_mahler(const std::string& poly, std::optional<int> grid) {
  const LaurentPoly p = parse_laurent(poly);
  if (!grid) {
    if (p.dims == 1) return mahler_1d(p);
    grid = 2048;
  }
  if (*grid < 8) throw ValidationError("grid must be >= 8");
  return mahler_nd(p, *grid);
}

FigureData compute_figure(int which, const TGrid& grid, const std::string& lambda,
                          const std::optional<std::filesystem::path>& rep, std::size_t budget,
                          unsigned threads) {
  if (which != 1 && which != 2) throw ValidationError("--which must be 1 or 2");
  FigureData fig;
  fig.which = which;
  fig.N = which == 1 ? 6 : 7;
  const bool twist = which == 2;
  const RepFile file = load_rep(rep, twist ? "fig8_twist.rep" : "fig8_wirtinger.rep");
  const auto ts = grid.points();
  auto per_t = parallel_map(ts.size(), threads, [&](std::size_t i) {
    return fig8_rows(twist, ts[i], file, lambda, fig.N, budget, 0.0);
  });
  for (auto& block : per_t) fig.rows.insert(fig.rows.end(), block.begin(), block.end());
  return fig;
}

std::string render_svg(const FigureData& fig) {
  const double width = 720;
  const double height = 480;
  const double margin = 50;
  const double x_max = 4.0;
  const double y_max = 18.0;
  auto sx = [&](double t) { return margin + t / x_max * (width - 2 * margin); };
  auto sy = [&](double y) {
    const double clipped = std::clamp(y, 0.0, y_max);
    return height - margin - clipped / y_max * (height - 2 * margin);
  };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x_max) << "\" y2=\""
     << sy(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\""
     << sy(y_max) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    os << "<text x=\"" << sx(t) << "\" y=\"" << sy(0) + 18 << "\" font-size=\"12\" "
       << "text-anchor=\"middle\">" << t << "</text>\n";
  }
  for (int y = 0; y <= 18; y += 3) {
    os << "<text x=\"" << sx(0) - 8 << "\" y=\"" << sy(y) + 4 << "\" font-size=\"12\" "
       << "text-anchor=\"end\">" << y << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
     << "Figure " << fig.which << ": upper bounds n = 1.." << fig.N << "</text>\n";

  for (int n = 1; n <= fig.N; ++n) {
    os << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1\" points=\"";
    for (const auto& r : fig.rows) {
      if (r.n == n && r.t) os << sx(*r.t) << ',' << sy(r.bound) << ' ';
    }
    os << "\"/>\n";
  }
  // Known exact pieces: 1 on (0, 0.38), t^2 on (2.618, 4), and 1.113 at t = 1.
  os << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"" << sx(0) << ','
     << sy(1) << ' ' << sx(0.38) << ',' << sy(1) << "\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
  for (int i = 0; i <= 64; ++i) {
    const double t = 2.618 + (4.0 - 2.618) * i / 64;
    os << sx(t) << ',' << sy(t * t) << ' ';
  }
  os << "\"/>\n";
  os << "<circle cx=\"" << sx(1) << "\" cy=\"" << sy(1.113) << "\" r=\"3\" fill=\"red\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string cmd_report(int digits) {
  return lehmer_report(lehmer_rows(manifold_table()), digits);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuglede-Kadison determinants: closed forms, series, certified upper bounds"};
  app.require_subcommand(1);

  std::string family = "free";
  int d = 3;
  int k = 6;
  bool verify = false;
  std::string op = "free";
  std::string t_grid;
  int n = 6;
  std::string lambda = "safe";
  std::optional<int> grid;
  std::string poly;
  std::string rep;
  std::string out_path;
  std::string format = "both";
  std::size_t budget = 50'000'000;
  int which = 1;
  double drop_tolerance = 0.0;
  int digits = 6;

  auto* exact = app.add_subcommand("exact", "closed-form determinant of a free family");
  exact->add_option("--family", family, "free or symmetric")->capture_default_str();
  exact->add_option("--d", d, "family parameter")->capture_default_str();

  auto* series = app.add_subcommand("series", "exact path-counting coefficients as CSV");
  series->add_option("--family", family, "free or symmetric")->capture_default_str();
  series->add_option("--d", d, "family parameter")->capture_default_str();
  series->add_option("--k", k, "highest order")->capture_default_str();
  series->add_flag("--verify", verify, "cross-check against brute-force group-ring traces");
  series->add_option("--budget", budget, "term budget for --verify")->capture_default_str();

  auto* approx = app.add_subcommand("approx", "monotone upper-bound sweep as CSV");
  approx->add_option("--operator", op,
                     "free, symmetric, cyclic, fig8-wirtinger or fig8-twist")
      ->capture_default_str();
  approx->add_option("--d", d, "family parameter for free/symmetric")->capture_default_str();
  approx->add_option("--t-grid", t_grid, "start:stop:count (default 1:1:1)");
  approx->add_option("--n", n, "number of terms N")->capture_default_str();
  approx->add_option("--lambda", lambda, "safe, paper or a rational such as 1/9")
      ->capture_default_str();
  approx->add_option("--rep", rep, "representation file for fig8 operators");
  approx->add_option("--out", out_path, "CSV output path (default stdout)");
  approx->add_option("--budget", budget, "largest allowed term count")->capture_default_str();
  approx->add_option("--drop-tolerance", drop_tolerance,
                     "drop float terms below this modulus (voids certification)");

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of a Laurent polynomial");
  mahler->add_option("--poly", poly, "e.g. \"1+x+y\", \"x-2\" or lehmer")->required();
  mahler->add_option("--grid", grid, "torus grid points per dimension");

  auto* figures = app.add_subcommand("figures", "figure-eight upper-bound curves (CSV and SVG)");
  figures->add_option("--which", which, "1 (Wirtinger operator) or 2 (twist operator)")
      ->capture_default_str();
  figures->add_option("--t-grid", t_grid, "start:stop:count (default 0.001:4:200)");
  figures->add_option("--lambda", lambda, "safe, paper or a rational (default paper)");
  figures->add_option("--rep", rep, "representation file");
  figures->add_option("--out", out_path, "output path prefix (default figure<which>)");
  figures->add_option("--format", format, "csv, svg or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();
  figures->add_option("--budget", budget, "largest allowed term count")->capture_default_str();

  auto* report = app.add_subcommand("report", "Lehmer-constant bounds from hyperbolic volumes");
  report->add_option("--digits", digits, "significant digits (truncated)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*exact) {
      out << cmd_exact(family, d) << '\n';
    } else if (*series) {
      const auto res = cmd_series(family, d, k, verify, budget);
      out << res.csv;
      return res.verified ? kOk : kFailure;
    } else if (*approx) {
      SweepConfig cfg;
      cfg.op = op;
      cfg.d = d;
      if (!t_grid.empty()) cfg.grid = TGrid::parse(t_grid);
      cfg.N = n;
      cfg.lambda = lambda;
      if (!rep.empty()) cfg.rep = rep;
      cfg.budget = budget;
      cfg.threads = worker_threads();
      std::vector<SweepRow> rows;
      if (drop_tolerance > 0.0) {
        err << "warning: drop tolerance " << drop_tolerance
            << " > 0 discards terms; bounds are not certified\n";
        if (op != "fig8-wirtinger" && op != "fig8-twist") {
          throw ValidationError("--drop-tolerance applies to the fig8 operators only");
        }
        const bool twist = op == "fig8-twist";
        const RepFile file = load_rep(cfg.rep, twist ? "fig8_twist.rep" : "fig8_wirtinger.rep");
        const auto ts = cfg.grid.points();
        auto per_t = parallel_map(ts.size(), cfg.threads, [&](std::size_t i) {
          auto r = fig8_rows(twist, ts[i], file, lambda, n, budget, drop_tolerance);
          for (auto& row : r) row.certified = false;
          return r;
        });
        for (auto& block : per_t) rows.insert(rows.end(), block.begin(), block.end());
      } else {
        rows = cmd_approx(cfg);
      }
      const std::string csv = to_csv(rows);
      if (out_path.empty()) {
        out << csv;
      } else {
        write_file(out_path, csv);
      }
    } else if (*mahler) {
      out << format_value(cmd_mahler(poly, grid)) << '\n';
    } else if (*figures) {
      const TGrid g = t_grid.empty() ? TGrid{} : TGrid::parse(t_grid);
      const std::string lam = figures->count("--lambda") ? lambda : "paper";
      const auto fig = compute_figure(which, g, lam, rep.empty() ? std::nullopt
                                                                 : std::optional<std::filesystem::path>(rep),
                                      budget, worker_threads());
      const std::string prefix = out_path.empty() ? "figure" + std::to_string(which) : out_path;
      if (format == "csv" || format == "both") write_file(prefix + ".csv", to_csv(fig.rows));
      if (format == "svg" || format == "both") write_file(prefix + ".svg", render_svg(fig));
      out << "wrote " << prefix << (format == "both" ? ".{csv,svg}" : "." + format) << " ("
          << fig.rows.size() << " rows)\n";
    } else if (*report) {
      out << cmd_report(digits);
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace fkdet::cli
