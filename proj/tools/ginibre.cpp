// ginibre: counting statistics of Ginibre eigenvalues in centred discs
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "ginibre/finite_n.hpp"
#include "ginibre/origin.hpp"
#include "ginibre/planar_fcs.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/specfun.hpp"
#include "ginibre/stats.hpp"
#include "ginibre/verify.hpp"

using namespace ginibre;

namespace {

constexpr int kExitUsage = 2, kExitTolerance = 3, kExitSamples = 4, kExitVerify = 5;

struct Row {
  std::string quantity, ensemble, scale;
  double x = 0;
  std::optional<double> analytic, mc_value, mc_se;
  std::vector<std::pair<std::string, std::string>> meta;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) v = 0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// start:stop:steps, inclusive, `steps` points
std::vector<double> parse_grid(const std::string& g) {
  std::vector<double> p;
  std::stringstream ss(g);
  std::string tok;
  while (std::getline(ss, tok, ':')) p.push_back(std::stod(tok));
  if (p.size() != 3 || p[2] < 1 || p[2] != std::floor(p[2]))
    throw UsageError("--grid expects start:stop:steps with an integer number of points");
  const int n = int(p[2]);
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? p[0] : p[0] + (p[1] - p[0]) * i / (n - 1));
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf") v.push_back(INFINITY);
    else v.push_back(std::stod(tok));
  }
  return v;
}

std::vector<EnsembleKind> parse_ensembles(const std::string& s) {
  if (s == "all") return {EnsembleKind::GinOE, EnsembleKind::GinUE, EnsembleKind::GinSE};
  return {parse_ensemble(s)};
}

struct PotentialArgs {
  std::string spec;
  std::string g, gp, gpp;
  double cutoff = INFINITY;
};

planar::RadialPotential parse_potential(const PotentialArgs& a) {
  if (a.spec == "custom") {
    if (a.g.empty() || a.gp.empty() || a.gpp.empty()) throw UsageError("custom potential needs --g, --gp and --gpp");
    return planar::custom_potential(a.g, a.gp, a.gpp, a.cutoff);
  }
  static const std::regex re(R"(^\s*([a-z_]+)\s*(?:\(([^)]*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(a.spec, m, re)) throw UsageError("cannot parse potential '" + a.spec + "'");
  std::vector<double> params;
  if (m[2].matched && !m[2].str().empty()) params = parse_list(m[2].str());
  return planar::builtin_potential(m[1].str(), params);
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void emit(const std::vector<Row>& rows, const Output& out) {
  std::vector<std::string> meta_keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.meta)
      if (std::find(meta_keys.begin(), meta_keys.end(), k) == meta_keys.end()) meta_keys.push_back(k);
  auto meta_of = [](const Row& r, const std::string& k) -> std::optional<std::string> {
    for (const auto& [kk, v] : r.meta)
      if (kk == k) return v;
    return std::nullopt;
  };

  std::ostringstream os;
  if (out.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["quantity"] = r.quantity;
      o["ensemble"] = r.ensemble;
      o["scale"] = r.scale;
      auto put = [&](const char* k, std::optional<double> v) {
        if (v && std::isfinite(*v)) o[k] = *v;
        else if (v) o[k] = num(*v);
        else o[k] = nullptr;
      };
      put("x", r.x);
      put("analytic", r.analytic);
      put("mc_value", r.mc_value);
      put("mc_se", r.mc_se);
      for (const auto& k : meta_keys) {
        const auto v = meta_of(r, k);
        if (v) o[k] = *v;
        else o[k] = nullptr;
      }
      arr.push_back(o);
    }
    os << std::setprecision(17) << arr.dump(2) << "\n";
  } else {
    os << "quantity,ensemble,scale,x,analytic,mc_value,mc_se";
    for (const auto& k : meta_keys) os << "," << k;
    os << "\n";
    auto opt = [](std::optional<double> v) { return v ? num(*v) : std::string(); };
    for (const auto& r : rows) {
      os << r.quantity << "," << r.ensemble << "," << r.scale << "," << num(r.x) << "," << opt(r.analytic) << ","
         << opt(r.mc_value) << "," << opt(r.mc_se);
      for (const auto& k : meta_keys) os << "," << meta_of(r, k).value_or("");
      os << "\n";
    }
  }
  if (out.path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + out.path);
    f << os.str();
  }
}

// ---- mean ------------------------------------------------------------------

struct MeanArgs {
  std::string ensemble = "all", scale = "origin", grid, preset, ns;
  int n = 0;
};

std::vector<Row> cmd_mean(MeanArgs a) {
  std::vector<Row> rows;
  if (a.preset == "fig2b" && a.ns.empty()) a.ns = "10,20,50,100,200,400";
  if (a.preset == "fig3" && a.grid.empty()) a.grid = "0:4:81";
  if (!a.preset.empty() && a.preset != "fig2b" && a.preset != "fig3")
    throw UsageError("mean: preset must be fig2b or fig3");
  if (!a.ns.empty()) {
    // deficit outside the droplet, N - E_N(1)
    for (auto k : parse_ensembles(a.ensemble))
      for (double N : parse_list(a.ns)) {
        Row r{"deficit", name_of(k), "finite_N", N};
        r.analytic = finite_n::deficit_outside(int(N), k);
        r.meta = {{"asymptote", num(finite_n::deficit_asymptote(int(N), k))}};
        rows.push_back(r);
      }
    return rows;
  }
  if (a.grid.empty()) throw UsageError("mean: --grid is required");
  const auto xs = parse_grid(a.grid);
  for (auto k : parse_ensembles(a.ensemble))
    for (double x : xs) {
      Row r{"mean", name_of(k), a.scale, x};
      finite_n::FiniteMeanResult m;
      if (a.scale == "origin") {
        m = origin::mean_origin(k, x);
      } else if (a.scale == "finite_N") {
        if (a.n < 1) throw UsageError("mean: --n is required at finite_N scale");
        m = finite_n::mean_disc(k, a.n, x);
        r.meta.push_back({"N", std::to_string(a.n)});
      } else {
        throw UsageError("mean: --scale must be origin or finite_N");
      }
      r.analytic = m.value;
      if (m.breakdown) {
        r.meta.push_back({"real", num(m.breakdown->real_part)});
        r.meta.push_back({"complex", num(m.breakdown->complex_part)});
      }
      rows.push_back(r);
    }
  return rows;
}

// ---- variance --------------------------------------------------------------

struct VarArgs {
  std::string ensemble = "all", scale = "origin", grid, preset;
  int n = 0;
};

std::vector<Row> cmd_variance(VarArgs a) {
  if (a.preset == "fig4" && a.grid.empty()) a.grid = "0:5:101";
  if (!a.preset.empty() && a.preset != "fig4") throw UsageError("variance: preset must be fig4");
  if (a.grid.empty()) throw UsageError("variance: --grid is required");
  std::vector<Row> rows;
  for (auto k : parse_ensembles(a.ensemble))
    for (double x : parse_grid(a.grid)) {
      Row r{"variance", name_of(k), a.scale, x};
      if (a.scale == "origin") {
        if (k == EnsembleKind::GinOE) {
          const auto v = origin::var_origin_ginoe(x);
          r.analytic = v.total;
          r.meta = {{"real", num(v.var_real)}, {"complex", num(v.var_complex)}, {"cov", num(v.covariance)}};
        } else {
          r.analytic = origin::var_origin(k, x);
        }
      } else if (a.scale == "finite_N") {
        if (a.n < 1) throw UsageError("variance: --n is required at finite_N scale");
        if (k == EnsembleKind::GinOE)
          throw UsageError("variance: no finite-N closed form for ginoe; use simulate");
        const int beta = beta_of(k);
        const auto pot = beta == 4 ? planar::ginse_gaussian() : planar::ginue_gaussian();
        r.analytic = planar::cumulant_finite(planar::moment_table(pot, a.n, beta, x), 2).value;
        r.meta = {{"N", std::to_string(a.n)}};
      } else {
        throw UsageError("variance: --scale must be origin or finite_N");
      }
      rows.push_back(r);
    }
  return rows;
}

// ---- cumulants -------------------------------------------------------------

struct CumArgs {
  std::string ensemble = "ginse", scale = "finite_N", grid, preset, ps = "3";
  PotentialArgs pot;
  int n = 50, beta = 0;
  double tol = 1e-12;
};

std::vector<Row> cmd_cumulants(CumArgs a) {
  std::vector<std::string> pots;
  if (a.preset == "fig7") {
    if (a.grid.empty()) a.grid = "0:1.2:25";
    a.n = 50;
    a.ps = "3,4";
    pots = {"ginse_gaussian", "truncated_unitary(0.2)"};
  } else if (!a.preset.empty()) {
    throw UsageError("cumulants: preset must be fig7");
  }
  if (a.grid.empty()) throw UsageError("cumulants: --grid is required");
  const auto kind = parse_ensemble(a.ensemble);
  if (pots.empty()) pots = {a.pot.spec.empty() ? (kind == EnsembleKind::GinUE ? "ginue_gaussian" : "ginse_gaussian")
                                               : a.pot.spec};
  int beta = a.beta ? a.beta : (kind == EnsembleKind::GinUE ? 2 : 4);
  if (beta != 2 && beta != 4) throw UsageError("cumulants: --beta must be 2 or 4");
  if (a.n < 1) throw UsageError("cumulants: --n must be >= 1");
  const quad::QuadSpec spec{a.tol, a.tol};
  std::vector<Row> rows;
  for (const auto& ps : pots) {
    PotentialArgs pa = a.pot;
    pa.spec = ps;
    const auto pot = parse_potential(pa);
    for (double pd : parse_list(a.ps)) {
      const int p = int(pd);
      if (p < 1) throw UsageError("cumulants: --p must be >= 1");
      std::map<int, double> bulk;
      for (double x : parse_grid(a.grid)) {
        Row r{"kappa" + std::to_string(p), beta == 4 ? "ginse" : "ginue", a.scale, x};
        r.meta = {{"potential", pot.label}, {"N", std::to_string(a.n)}, {"beta", std::to_string(beta)}};
        if (a.scale == "finite_N") {
          const auto t = planar::moment_table(pot, a.n, beta, x);
          r.analytic = planar::cumulant_finite(t, p).value;
          if (beta == 4 && p >= 2 && x > 0) {
            if (!bulk.count(p)) bulk[p] = planar::cumulant_bulk_limit(p, spec);
            const double dw = pot.quarter_laplacian(x, a.n), dw1 = pot.quarter_laplacian(1.0, a.n);
            r.meta.push_back({"bulk_limit", num(std::sqrt(a.n * dw / 2) * x * bulk[p])});
            const double S = (1 - x) * std::sqrt(2 * dw1 * a.n);
            r.meta.push_back({"edge_limit", num(std::sqrt(a.n * dw1 / 2) * planar::cumulant_edge_limit(p, S, spec))});
          }
        } else if (a.scale == "origin") {
          if (beta != 4) throw UsageError("cumulants: origin scale is available for ginse only");
          r.analytic = planar::cumulant_origin_ginse(x, p);
          r.meta = {{"potential", "ginse_gaussian"}};
        } else if (a.scale == "bulk") {
          const auto c = planar::scaled_cumulant(pot, a.n, x, p);
          r.analytic = c.value;
          if (c.limit) r.meta.push_back({"limit", num(*c.limit)});
        } else if (a.scale == "edge") {
          const auto c = planar::scaled_cumulant_edge(pot, a.n, x, p);
          r.analytic = c.value;
          if (c.limit) r.meta.push_back({"limit", num(*c.limit)});
        } else {
          throw UsageError("cumulants: --scale must be finite_N, origin, bulk or edge");
        }
        rows.push_back(r);
      }
    }
  }
  return rows;
}

// ---- simulate --------------------------------------------------------------

struct SimArgs {
  std::string ensemble = "ginue", scale = "finite_N", radii, checkpoint, preset;
  PotentialArgs pot;
  int n = 0;
  std::uint64_t samples = 1000, seed = 1, batch = 0;
  bool fast = false;
};

std::vector<Row> cmd_simulate(SimArgs a, unsigned threads) {
  if (a.preset == "fig5") {
    a.ensemble = "ginoe";
    if (a.n == 0) a.n = 150;
    if (a.radii.empty()) a.radii = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1,1.1,1.2,1.3,1.4,1.5";
  } else if (a.preset == "fig7") {
    a.ensemble = "ginse";
    a.fast = true;
    a.n = 50;
    if (a.radii.empty()) {
      std::string s;
      for (double x : parse_grid("0:1.2:25")) s += (s.empty() ? "" : ",") + num(x);
      a.radii = s;
    }
  } else if (!a.preset.empty()) {
    throw UsageError("simulate: preset must be fig5 or fig7");
  }
  if (a.n < 1) throw UsageError("simulate: --n is required");
  if (a.radii.empty()) throw UsageError("simulate: --radii is required");
  sampler::SimConfig cfg;
  cfg.kind = parse_ensemble(a.ensemble);
  cfg.N = a.n;
  cfg.radii = parse_list(a.radii);
  if (!std::is_sorted(cfg.radii.begin(), cfg.radii.end())) throw UsageError("simulate: --radii must be sorted");
  if (a.scale == "origin") cfg.scale = sampler::Scale::Origin;
  else if (a.scale != "finite_N") throw UsageError("simulate: --scale must be finite_N or origin");
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  cfg.fast_bernoulli = a.fast;
  cfg.batch_size = a.batch;
  cfg.threads = threads;
  if (!a.pot.spec.empty()) {
    if (!a.fast) throw UsageError("simulate: --potential needs --fast");
    cfg.potential = parse_potential(a.pot);
  }
  if (cfg.fast_bernoulli && cfg.kind == EnsembleKind::GinOE) throw UsageError("simulate: --fast needs ginue or ginse");
  const auto res = sampler::run_campaign(cfg);
  if (!a.checkpoint.empty()) {
    std::ofstream f(a.checkpoint, std::ios::binary);
    if (!f) throw UsageError("cannot write checkpoint " + a.checkpoint);
    f << res.acc.serialize();
  }
  const auto rep = stats::report(res.acc);

  const int beta = beta_of(cfg.kind);
  const double to_a = cfg.scale == sampler::Scale::Origin ? 1 / std::sqrt(double(cfg.N)) : 1.0;
  std::optional<planar::RadialPotential> pot;
  if (beta != 1) pot = cfg.potential ? *cfg.potential : (beta == 4 ? planar::ginse_gaussian() : planar::ginue_gaussian());
  const bool gaussian = !cfg.potential;

  std::vector<Row> rows;
  for (const auto& rr : rep.rows) {
    const double a_fin = rr.radius * to_a;
    auto row = [&](const std::string& q, double v, double se, std::optional<double> an) {
      Row r{q, name_of(cfg.kind), a.scale, rr.radius};
      r.mc_value = v;
      r.mc_se = se;
      r.analytic = an;
      r.meta = {{"N", std::to_string(cfg.N)},
                {"samples", std::to_string(rep.n)},
                {"seed", std::to_string(cfg.seed)},
                {"path", cfg.fast_bernoulli ? "bernoulli" : "matrix"}};
      rows.push_back(r);
    };
    std::optional<double> mean_an, k2, k3, k4;
    std::optional<finite_n::MeanBreakdown> br;
    if (pot) {
      const auto t = planar::moment_table(*pot, cfg.N, beta, a_fin);
      mean_an = t.L.sum();
      k2 = planar::cumulant_finite(t, 2).value;
      k3 = planar::cumulant_finite(t, 3).value;
      k4 = planar::cumulant_finite(t, 4).value;
    } else if (gaussian) {
      const auto m = cfg.N >= 2 ? finite_n::mean_disc(cfg.kind, cfg.N, a_fin)
                                : finite_n::FiniteMeanResult{finite_n::mean_interval_ginoe_real(1, a_fin), {}};
      mean_an = m.value;
      br = m.breakdown;
    }
    row("mean", rr.total.mean, rr.total.se_mean, mean_an);
    row("variance", rr.total.var, rr.total.se_var, k2);
    row("k3", rr.total.k3, rr.total.se_k3, k3);
    row("k4", rr.total.k4, rr.total.se_k4, k4);
    if (cfg.kind == EnsembleKind::GinOE) {
      std::optional<origin::VarianceBreakdown> vb;
      if (cfg.scale == sampler::Scale::Origin) vb = origin::var_origin_ginoe(rr.radius);
      row("mean_real", rr.real.mean, rr.real.se_mean, br ? std::optional(br->real_part) : std::nullopt);
      row("mean_complex", rr.complex.mean, rr.complex.se_mean, br ? std::optional(br->complex_part) : std::nullopt);
      row("var_real", rr.real.var, rr.real.se_var, vb ? std::optional(vb->var_real) : std::nullopt);
      row("var_complex", rr.complex.var, rr.complex.se_var, vb ? std::optional(vb->var_complex) : std::nullopt);
      row("cov_rc", rr.cov_rc, rr.se_cov, vb ? std::optional(vb->covariance) : std::nullopt);
      if (vb) rows[rows.size() - 6].analytic = vb->total;  // variance row: origin-limit total
    }
  }
  if (res.redraws) std::cerr << "note: " << res.redraws << " redrawn matrices\n";
  if (res.failed) std::cerr << "note: " << res.failed << " failed samples\n";
  return rows;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(double perturb) {
  const auto checks = verify::identity_suite({perturb});
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%-44s residual %-24s tol %-8.0e %s\n", c.name.c_str(), num(c.residual).c_str(), c.tolerance,
                c.pass ? "PASS" : "FAIL");
    failed += !c.pass;
  }
  std::printf("%zu identities, %d failed\n", checks.size(), failed);
  return failed ? kExitVerify : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting statistics of Ginibre eigenvalues in centred discs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; flags given on the command line win");
  app.allow_config_extras(false);
  Output out;
  unsigned threads = 0;
  app.add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "write the table here instead of stdout");
  app.add_option("--threads", threads, "worker threads (0: all cores)")->envname("GINIBRE_THREADS");

  MeanArgs ma;
  auto* mean = app.add_subcommand("mean", "expected number of eigenvalues in a disc");
  mean->add_option("--ensemble", ma.ensemble, "ginoe, ginue, ginse or all");
  mean->add_option("--scale", ma.scale, "origin or finite_N");
  mean->add_option("--n", ma.n, "matrix size (finite_N)");
  mean->add_option("--grid", ma.grid, "start:stop:points");
  mean->add_option("--deficit", ma.ns, "comma list of N: report N - E_N(1)");
  mean->add_option("--preset", ma.preset, "fig2b or fig3");

  VarArgs va;
  auto* var = app.add_subcommand("variance", "number variance");
  var->add_option("--ensemble", va.ensemble, "ginoe, ginue, ginse or all");
  var->add_option("--scale", va.scale, "origin or finite_N");
  var->add_option("--n", va.n, "matrix size (finite_N)");
  var->add_option("--grid", va.grid, "start:stop:points");
  var->add_option("--preset", va.preset, "fig4");

  CumArgs ca;
  auto* cum = app.add_subcommand("cumulants", "cumulants for rotationally invariant beta = 2, 4 ensembles");
  cum->add_option("--ensemble", ca.ensemble, "ginse (beta 4) or ginue (beta 2)");
  cum->add_option("--potential", ca.pot.spec, "ginse_gaussian, ginue_gaussian, mittag_leffler(a,b,c), truncated_unitary(c), custom");
  cum->add_option("--g", ca.pot.g, "custom potential g(r)");
  cum->add_option("--gp", ca.pot.gp, "custom potential g'(r)");
  cum->add_option("--gpp", ca.pot.gpp, "custom potential g''(r)");
  cum->add_option("--cutoff", ca.pot.cutoff, "hard wall radius of a custom potential");
  cum->add_option("--beta", ca.beta, "2 or 4");
  cum->add_option("--n", ca.n, "N");
  cum->add_option("--p", ca.ps, "cumulant order(s), comma separated");
  cum->add_option("--scale", ca.scale, "finite_N, origin, bulk or edge");
  cum->add_option("--grid", ca.grid, "start:stop:points (a, R or S)");
  cum->add_option("--tol", ca.tol, "quadrature tolerance for the limits");
  cum->add_option("--preset", ca.preset, "fig7");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo campaign");
  sim->add_option("--ensemble", sa.ensemble, "ginoe, ginue or ginse");
  sim->add_option("--n", sa.n, "matrix size");
  sim->add_option("--samples", sa.samples, "number of samples")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sa.seed, "master seed");
  sim->add_option("--radii", sa.radii, "comma list, sorted");
  sim->add_option("--scale", sa.scale, "finite_N or origin");
  sim->add_flag("--fast", sa.fast, "Bernoulli-product sampler (ginue, ginse)");
  sim->add_option("--potential", sa.pot.spec, "potential for --fast");
  sim->add_option("--g", sa.pot.g, "custom potential g(r)");
  sim->add_option("--gp", sa.pot.gp, "custom potential g'(r)");
  sim->add_option("--gpp", sa.pot.gpp, "custom potential g''(r)");
  sim->add_option("--cutoff", sa.pot.cutoff, "hard wall radius of a custom potential");
  sim->add_option("--batch", sa.batch, "batch size for standard errors (0: ceil(sqrt(samples)))");
  sim->add_option("--checkpoint", sa.checkpoint, "write the accumulator state here");
  sim->add_option("--preset", sa.preset, "fig5 or fig7");

  double perturb = 0;
  auto* ver = app.add_subcommand("verify", "run the identity suite");
  ver->add_option("--perturb-i1", perturb, "")->group("");  // fault injection

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    std::vector<Row> rows;
    if (*ver) return cmd_verify(perturb);
    if (*mean) rows = cmd_mean(ma);
    if (*var) rows = cmd_variance(va);
    if (*cum) rows = cmd_cumulants(ca);
    if (*sim) rows = cmd_simulate(sa, threads);
    emit(rows, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number (" << e.what() << ")\n";
    return kExitUsage;
  } catch (const ToleranceNotMet& e) {
    std::cerr << "error: " << e.what() << " (best value " << num(e.value) << ", error estimate " << num(e.err_est)
              << ")\n";
    return kExitTolerance;
  } catch (const SampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSamples;
  }
  return 0;
}
