#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "erlang_spectral/asymptotic.hpp"
#include "erlang_spectral/characteristic.hpp"
#include "erlang_spectral/discrete.hpp"
#include "erlang_spectral/transient.hpp"
#include "output.hpp"
#include "parallel.hpp"
#include "tables.hpp"
#include "validate.hpp"

namespace es = erlang_spectral;
using es::cli::Record;
using es::cli::Writer;

namespace {

enum Exit { kOk = 0, kValidation = 1, kUsage = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double beta = 0, eta = 1, x = 0, x0 = -0.5;
  std::optional<double> t, theta, rho, beta_opt, gamma_opt;
  int m = 0, n = 0, steps = 5, id = 0;
  double beta_min = -2, beta_max = 3, eta_min = 0.5, eta_max = 3;
  std::string precision = "auto", format, out, suite = "quick", in;
  bool continuation = false;
};

es::Precision parse_precision(const std::string& s) {
  if (s == "double") return es::Precision::Double;
  if (s == "extended") return es::Precision::Extended;
  return es::Precision::Auto;
}

const char* precision_name(es::Precision p) {
  switch (p) {
    case es::Precision::Double: return "double";
    case es::Precision::Extended: return "extended";
    default: return "auto";
  }
}

es::cli::Format resolve_format(const std::string& flag, bool to_file, es::cli::Format fallback_tty) {
  if (flag == "csv") return es::cli::Format::Csv;
  if (flag == "json") return es::cli::Format::Json;
  if (flag == "text") return es::cli::Format::Text;
  return (!to_file && isatty(STDOUT_FILENO)) ? fallback_tty : es::cli::Format::Csv;
}

int cmd_gap(const Options& o, Writer& w) {
  const es::Params p{o.beta, o.eta};
  p.validate();
  const es::GapResult g = es::spectral_gap(p, parse_precision(o.precision));
  Record rec{{"beta", o.beta}, {"eta", o.eta}, {"r", g.r}, {"r_minus_eta", g.r_minus_eta}, {"tau", 1 / g.r}};
  try {
    const es::RegimeEstimate est = es::regime_select(p);
    rec.push_back({"regime", std::string(es::regime_name(est.regime))});
    rec.push_back({"estimate", est.value});
    rec.push_back({"abs_deviation", std::abs(est.value - g.r)});
  } catch (const std::exception&) {
    rec.push_back({"regime", std::string("none")});
    rec.push_back({"estimate", NAN});
    rec.push_back({"abs_deviation", NAN});
  }
  rec.push_back({"precision", std::string(precision_name(g.precision_used))});
  w.write(rec);
  return kOk;
}

int cmd_eigs(const Options& o, Writer& w) {
  const es::Params p{o.beta, o.eta};
  p.validate();
  const int count = o.n > 0 ? o.n : 5;
  const es::EigenSet s = es::eigenvalues(p, count);
  for (std::size_t i = 0; i < s.lambdas.size(); ++i)
    w.write({{"n", static_cast<long long>(i + 1)}, {"lambda", s.lambdas[i]}, {"dv_dtheta", s.v_theta_derivs[i]}});
  if (s.partial) {
    std::cerr << "warning: " << s.diagnostic << '\n';
  }
  return kOk;
}

int cmd_regimes(const Options& o, Writer& w) {
  const es::Params p{o.beta, o.eta};
  p.validate();
  const double r = es::spectral_gap(p, parse_precision(o.precision)).r;
  const es::Regime selected = es::regime_of(p);
  using Fn = es::RegimeEstimate (*)(const es::Params&);
  const std::pair<es::Regime, Fn> all[] = {{es::Regime::NegBeta, es::gap_neg_beta},
                                           {es::Regime::SmallBeta, es::gap_small_beta},
                                           {es::Regime::MidBeta, es::gap_mid_beta},
                                           {es::Regime::NearBetaStar, es::gap_near_beta_star},
                                           {es::Regime::LargeBeta, es::gap_large_beta}};
  for (const auto& [regime, fn] : all) {
    Record rec{{"regime", std::string(es::regime_name(regime))}, {"exact", r}};
    try {
      const es::RegimeEstimate e = fn(p);
      rec.push_back({"estimate", e.value});
      rec.push_back({"abs_deviation", std::abs(e.value - r)});
      rec.push_back({"note", e.validity_note});
    } catch (const std::exception& e) {
      rec.push_back({"estimate", NAN});
      rec.push_back({"abs_deviation", NAN});
      rec.push_back({"note", std::string(e.what())});
    }
    rec.push_back({"selected", regime == selected});
    w.write(rec);
  }
  return kOk;
}

int cmd_table(const Options& o, Writer& w) {
  const auto& ids = es::tables::table_ids();
  if (std::find(ids.begin(), ids.end(), o.id) == ids.end())
    throw es::DomainError("table id must be one of 2, 3, 4, 5, 6");
  w.note(es::tables::published_table(o.id).title);
  int failures = 0;
  for (const auto& c : es::tables::reproduce_table(o.id, parse_precision(o.precision))) {
    failures += !c.pass;
    w.write({{"table", static_cast<long long>(c.table)},
             {"eta", c.eta},
             {"column", c.column},
             {"computed", c.computed},
             {"published", c.published},
             {"abs_diff", c.abs_diff},
             {"tol", c.tol},
             {"pass", c.pass}});
  }
  w.note(std::to_string(failures) + " cell(s) outside tolerance");
  return kOk;
}

struct SurfacePoint {
  double beta{}, eta{}, r{};
};

int cmd_surface(const Options& o, Writer& w) {
  if (!(o.eta_min > 0) || o.eta_max < o.eta_min || o.beta_max < o.beta_min)
    throw es::DomainError("surface: need 0 < eta-min <= eta-max and beta-min <= beta-max");
  const int n = std::max(o.steps, 2);
  std::vector<SurfacePoint> grid(static_cast<std::size_t>(n) * n);
  auto lin = [n](double a, double b, int i) { return a + (b - a) * i / (n - 1); };
  es::cli::parallel_for(grid.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;  // i: eta row, j: beta
    SurfacePoint& sp = grid[k];
    sp.eta = lin(o.eta_min, o.eta_max, i);
    sp.beta = lin(o.beta_min, o.beta_max, j);
    sp.r = es::spectral_gap(es::Params{sp.beta, sp.eta}).r;
  });
  for (int i = 0; i < n; ++i) {
    const double eta = grid[static_cast<std::size_t>(i) * n].eta;
    const int want = eta > 1 ? -1 : (eta < 1 ? 1 : 0);
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      const SurfacePoint& cur = grid[static_cast<std::size_t>(i) * n + j];
      if (want == 0) ok = ok && std::abs(cur.r - 1) <= 1e-9;
      if (j == 0 || want == 0) continue;
      const double d = cur.r - grid[static_cast<std::size_t>(i) * n + j - 1].r;
      ok = ok && (d * want > 0);
    }
    for (int j = 0; j < n; ++j) {
      const SurfacePoint& sp = grid[static_cast<std::size_t>(i) * n + j];
      w.write({{"beta", sp.beta}, {"eta", sp.eta}, {"r", sp.r}, {"row_monotone", ok}});
    }
  }
  return kOk;
}

int cmd_density(const Options& o, Writer& w) {
  const es::Params p{o.beta, o.eta};
  p.validate();
  if (o.t && o.theta) throw es::DomainError("density: give --t or --theta, not both");
  if (o.t) {
    if (!(*o.t > 0)) throw es::DomainError("density: t must be > 0");
    const es::SpectralValue v = es::spectral_density(o.x, o.x0, *o.t, p, o.n > 0 ? o.n : 40);
    w.write({{"x", o.x},
             {"x0", o.x0},
             {"t", *o.t},
             {"density", v.value},
             {"transient", v.transient},
             {"tail_bound", v.tail_bound},
             {"terms_used", static_cast<long long>(v.terms_used)}});
    if (!v.warning.empty()) std::cerr << "warning: " << v.warning << '\n';
  } else if (o.theta) {
    const double v = es::laplace_density(o.x, o.x0, *o.theta, p, o.continuation);
    w.write({{"x", o.x}, {"x0", o.x0}, {"theta", *o.theta}, {"transform", v}});
  } else {
    const es::SteadyDensity sd(p);
    w.write({{"x", o.x}, {"steady_density", sd(o.x)}, {"relaxation_time", sd.relaxation_time()}});
  }
  return kOk;
}

int cmd_discrete(const Options& o, Writer& w) {
  if (o.m < 1) throw es::DomainError("discrete: --m >= 1 is required");
  es::DiscreteParams dp{o.m, 0, o.eta};
  std::optional<double> beta = o.beta_opt;
  if (o.rho) {
    dp.rho = *o.rho;
  } else if (beta) {
    dp.rho = o.m - *beta * std::sqrt(static_cast<double>(o.m));
  } else {
    throw es::DomainError("discrete: give --rho or --beta");
  }
  dp.validate();
  if (!beta) beta = (o.m - dp.rho) / std::sqrt(static_cast<double>(o.m));
  const es::DiscreteGap g = es::discrete_gap(dp);
  const es::GeneratorGap q = es::generator_gap(dp, o.n);
  const double diffusion = es::spectral_gap(es::Params{*beta, o.eta}).r;
  w.write({{"m", static_cast<long long>(dp.m)},
           {"rho", dp.rho},
           {"eta", dp.eta},
           {"beta", *beta},
           {"discrete_gap", g.gap},
           {"generator_gap", q.gap},
           {"oracle_difference", g.gap - q.gap},
           {"truncation", static_cast<long long>(q.truncation)},
           {"diffusion_gap", diffusion}});
  return kOk;
}

// Re-reads a surface CSV and checks that it parses losslessly and that the
// sanity flags hold.
std::vector<es::cli::CheckResult> check_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) header.push_back(f);
  }
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError(path + ": missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cb = col("beta"), ce = col("eta"), cr = col("r"), cm = col("row_monotone");
  long long rows = 0, lossy = 0, flagged = 0;
  double eta1_dev = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string s; std::getline(ss, s, ',');) f.push_back(s);
    if (f.size() != header.size()) throw IoError(path + ": ragged row");
    ++rows;
    for (std::size_t c : {cb, ce, cr}) {
      const double v = std::strtod(f[c].c_str(), nullptr);
      if (es::cli::format_double(v, 12) != f[c]) ++lossy;
    }
    if (f[cm] != "true") ++flagged;
    if (std::strtod(f[ce].c_str(), nullptr) == 1.0)
      eta1_dev = std::max(eta1_dev, std::abs(std::strtod(f[cr].c_str(), nullptr) - 1));
  }
  if (!in.eof()) throw IoError("read error on " + path);
  return {{"surface.rows", static_cast<double>(rows), static_cast<double>(rows), 0, rows > 0},
          {"surface.lossless_roundtrip", static_cast<double>(lossy), 0, 0, lossy == 0},
          {"surface.monotone_rows", static_cast<double>(flagged), 0, 0, flagged == 0},
          {"surface.eta1_constant", eta1_dev, 0, 1e-9, eta1_dev <= 1e-9}};
}

int cmd_validate(const Options& o, Writer& w) {
  if (o.suite != "quick" && o.suite != "full") throw es::DomainError("suite must be quick or full");
  auto checks = es::cli::run_suite(o.suite == "full" ? es::cli::Suite::Full : es::cli::Suite::Quick);
  if (!o.in.empty()) {
    auto more = check_surface_file(o.in);
    checks.insert(checks.end(), more.begin(), more.end());
  }
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    w.write({{"check", c.check}, {"value", c.value}, {"expected", c.expected}, {"tol", c.tol}, {"pass", c.pass}});
  }
  return all ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gap and transient analysis of the Halfin-Whitt diffusion with abandonment"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--precision", o.precision, "double|extended (default: automatic escalation)")
        ->check(CLI::IsMember({"double", "extended", "auto"}));
    c->add_option("--format", o.format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    c->add_option("--out", o.out, "write output to PATH");
  };
  auto model = [&](CLI::App* c) {
    c->add_option("--beta", o.beta_opt, "staffing parameter beta");
    c->add_option("--gamma", o.gamma_opt, "beta = gamma sqrt(eta)");
    c->add_option("--eta", o.eta, "abandonment ratio eta > 0")->required();
  };

  auto* gap = app.add_subcommand("gap", "spectral gap, relaxation time and regime estimate");
  model(gap);
  common(gap);
  auto* eigs = app.add_subcommand("eigs", "first n eigenvalues");
  model(eigs);
  eigs->add_option("--n", o.n, "number of eigenvalues (default 5)");
  common(eigs);
  auto* regimes = app.add_subcommand("regimes", "all asymptotic estimates against the exact gap");
  model(regimes);
  common(regimes);
  auto* table = app.add_subcommand("table", "reproduce a published table (2..6)");
  table->add_option("--id,id", o.id, "table id")->required();
  common(table);
  auto* surface = app.add_subcommand("surface", "grid of r(beta, eta) with monotonicity flags");
  surface->add_option("--beta-min", o.beta_min);
  surface->add_option("--beta-max", o.beta_max);
  surface->add_option("--eta-min", o.eta_min);
  surface->add_option("--eta-max", o.eta_max);
  surface->add_option("--steps", o.steps, "points per axis (default 5)");
  common(surface);
  auto* density = app.add_subcommand("density", "steady, transient (--t) or transformed (--theta) density");
  model(density);
  density->add_option("--x", o.x);
  density->add_option("--x0", o.x0);
  density->add_option("--t", o.t);
  density->add_option("--theta", o.theta);
  density->add_option("--n", o.n, "spectral terms (default 40)");
  density->add_flag("--continuation", o.continuation, "allow theta <= 0");
  common(density);
  auto* discrete = app.add_subcommand("discrete", "discrete-model gap against the generator oracle");
  discrete->add_option("--m", o.m)->required();
  discrete->add_option("--rho", o.rho);
  discrete->add_option("--beta", o.beta_opt, "derive rho = m - beta sqrt(m)");
  discrete->add_option("--eta", o.eta)->required();
  discrete->add_option("--n", o.n, "generator truncation (default automatic)");
  common(discrete);
  auto* validate = app.add_subcommand("validate", "self-check suite");
  validate->add_option("--suite", o.suite, "quick|full")->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--in", o.in, "surface CSV to re-read");
  common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == gap || sub == eigs || sub == regimes || sub == density) {
    if (o.beta_opt.has_value() == o.gamma_opt.has_value()) {
      std::cerr << "usage error: give exactly one of --beta or --gamma\n";
      return kUsage;
    }
    o.beta = o.beta_opt ? *o.beta_opt : *o.gamma_opt * std::sqrt(o.eta);
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      std::cerr << "error: cannot open " << o.out << " for writing\n";
      return kIo;
    }
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  const auto tty_default = sub == validate ? es::cli::Format::Json : es::cli::Format::Text;
  const auto fmt = sub == validate && o.format.empty() ? es::cli::Format::Json
                                                       : resolve_format(o.format, !o.out.empty(), tty_default);
  Writer w(os, fmt);

  int rc = kOk;
  try {
    if (sub == gap) rc = cmd_gap(o, w);
    else if (sub == eigs) rc = cmd_eigs(o, w);
    else if (sub == regimes) rc = cmd_regimes(o, w);
    else if (sub == table) rc = cmd_table(o, w);
    else if (sub == surface) rc = cmd_surface(o, w);
    else if (sub == density) rc = cmd_density(o, w);
    else if (sub == discrete) rc = cmd_discrete(o, w);
    else if (sub == validate) rc = cmd_validate(o, w);
  } catch (const es::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  os.flush();
  if (!os) {
    std::cerr << "i/o error: write failed\n";
    return kIo;
  }
  return rc;
}
