// dochar: command-line front end. Exit codes: 0 ok, 1 bad arguments,
// 2 budget exhausted, 3 unreliable shell in a sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dochar/errors.hpp"
#include "dochar/model_config.hpp"
#include "dochar/perturbation.hpp"
#include "dochar/regions.hpp"
#include "dochar/solvability.hpp"
#include "dochar/spectral.hpp"

using nlohmann::json;
using namespace dochar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgs = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUnreliable = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + s + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto pos = s.find("..");
  try {
    if (pos == std::string::npos) {
      const int q = std::stoi(s);
      return {q, q};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "' (expected a..b)");
  }
}

// Options shared by every command. Flags given explicitly override the
// config file.
struct Common {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output = "-";
  std::string format = "json";
  std::optional<int> k;
  std::optional<double> a0;
  bool flat = false;
  std::optional<double> flat_scale;
  std::string poly;
  std::optional<double> delta0;

  ModelConfig resolve(bool need_k) const {
    ModelConfig c =
        config_path.empty() ? ModelConfig{} : load_model_config(config_path);
    if (k) c.k = *k;
    else if (need_k && config_path.empty()) throw UsageError("--k is required");
    if (a0) c.a0 = *a0;
    if (flat_scale) c.flat_scale = *flat_scale;
    if (delta0) c.delta0 = *delta0;
    if (flat && !poly.empty()) throw UsageError("--flat and --poly exclude each other");
    if (flat) c.coeff_kind = "flat";
    if (!poly.empty()) {
      c.coeff_kind = "polynomial";
      c.coeffs = parse_list(poly);
    }
    if (c.k < 1) throw UsageError("--k must be >= 1");
    return parse_model_config(model_config_to_json(c));
  }
};

void add_common(CLI::App* app, Common& c, bool model_flags = true) {
  app->add_option("--config", c.config_path, "Model config JSON file");
  app->add_option("--seed", c.seed, "Seed for quasi-random sampling");
  app->add_option("--output", c.output, "Output file ('-' for stdout)");
  app->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  if (!model_flags) return;
  app->add_option("--k", c.k, "Degree k >= 1");
  app->add_option("--a0", c.a0, "a(0)");
  app->add_flag("--flat", c.flat, "a - a(0) = exp(-1/(s x)^2)");
  app->add_option("--flat-scale", c.flat_scale, "s in the flat perturbation");
  app->add_option("--poly", c.poly,
                  "Taylor coefficients of a - a(0), e.g. 0,0,1 for x^2");
  app->add_option("--delta0", c.delta0, "Cutoff plateau half-width");
}

json echo(const std::string& command, const Common& c, const ModelConfig& m) {
  json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["model"] = json::parse(model_config_to_json(m));
  return j;
}

void emit(const Common& c, const std::string& text) {
  if (c.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + c.output);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json spectrum_json(const Spectrum& s) {
  json j;
  j["eigenvalues"] = s.eigenvalues;
  j["converged"] = s.converged;
  j["est_error"] = s.est_error;
  j["grid"] = {{"R", s.disc.R}, {"N", s.disc.N}, {"center", s.disc.center}};
  j["levels"] = s.levels.size();
  return j;
}

// ---- spectrum ----
struct SpectrumArgs {
  std::string family;
  std::optional<double> eta, tau, z, eps, w;
  int sign_tau = 1;
  std::string window;
  std::string chart = "auto";
  double tol = 1e-6;
  int N = 2000;
};

int cmd_spectrum(const Common& c, const SpectrumArgs& a) {
  const ModelConfig m = c.resolve(true);
  if (a.window.empty()) throw UsageError("--window lo,hi is required");
  const auto win = parse_list(a.window);
  if (win.size() != 2 || !(win[0] < win[1])) {
    throw UsageError("--window needs lo,hi with lo < hi");
  }
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw UsageError(std::string(name) + " is required for this family");
    return *v;
  };
  const CoefficientSpec coeff = m.coefficient();
  std::optional<OperatorInstance> op;
  json params;
  if (a.family == "A") {
    op = OperatorInstance::family_a(need(a.eta, "--eta"), need(a.tau, "--tau"),
                                    m.k, coeff, m.cutoff());
    params = {{"eta", *a.eta}, {"tau", *a.tau}};
  } else if (a.family == "B") {
    const double eps = need(a.eps, "--eps");
    BChart chart = eps == 0.0 ? BChart::WellCentered : BChart::Original;
    if (a.chart == "original") chart = BChart::Original;
    if (a.chart == "centered") chart = BChart::WellCentered;
    op = OperatorInstance::family_b(need(a.z, "--z"), eps, m.k, coeff,
                                    m.cutoff(), chart);
    params = {{"z", *a.z}, {"eps", eps},
              {"chart", chart == BChart::Original ? "original" : "centered"}};
  } else if (a.family == "D") {
    op = OperatorInstance::family_d(need(a.w, "--w"), need(a.eps, "--eps"),
                                    a.sign_tau, m.k, coeff, m.cutoff());
    params = {{"w", *a.w}, {"eps", *a.eps}, {"sign_tau", a.sign_tau}};
  } else {
    throw UsageError("--family must be A, B or D");
  }
  const Discretization start = covering_discretization(*op, win[1], a.N);
  const Spectrum s = refine_until(*op, start, win[0], win[1], a.tol);
  json j = echo("spectrum", c, m);
  j["family"] = a.family;
  j["params"] = params;
  j["window"] = win;
  j["tol"] = a.tol;
  j["result"] = spectrum_json(s);
  emit(c, dump(j));
  return kExitOk;
}

// ---- perturb ----
struct PerturbArgs {
  std::optional<int> n;
  bool exact = false;
  std::string fit;
};

int cmd_perturb(const Common& c, const PerturbArgs& a) {
  const ModelConfig m = c.resolve(true);
  if (!a.n || *a.n < 0) throw UsageError("--n >= 0 is required");
  if (a.exact == !a.fit.empty()) throw UsageError("give exactly one of --exact, --fit");
  json j = echo("perturb", c, m);
  j["n"] = *a.n;
  if (a.exact) {
    const auto r = rs_step(PerturbationProblem::make(m.k, *a.n), 2);
    const mpq_class closed = lambda2_closed_form(m.k, *a.n);
    j["mode"] = "exact";
    j["Lambda1"] = r.lambdas[1].get_str();
    j["Lambda2"] = r.lambdas[2].get_str();
    j["closed_form"] = closed.get_str();
    j["matches"] = r.lambdas[2] == closed;
  } else {
    const auto eps = parse_list(a.fit);
    const EpsFit f = fit_eps_series(m.k, *a.n, eps);
    j["mode"] = "fit";
    j["eps"] = f.eps;
    j["lambda"] = f.lambda;
    j["c0"] = f.c0;
    j["c1"] = f.c1;
    j["c2"] = f.c2;
    j["resid"] = f.resid;
    j["closed_form"] = lambda2_closed_form(m.k, *a.n).get_d();
  }
  emit(c, dump(j));
  return kExitOk;
}

// ---- map ----
struct MapArgs {
  std::string region = "C";
  std::string q = "8..10";
  double M = 8.0;
  int samples = 64;
  int N = 4001;
};

int cmd_map(const Common& c, const MapArgs& a) {
  const ModelConfig m = c.resolve(true);
  const auto [q_lo, q_hi] = parse_range(a.q);
  if (q_hi < q_lo) throw UsageError("--q range is empty");
  Region region;
  if (a.region == "C") region = Region::C;
  else if (a.region == "D") region = Region::D;
  else throw UsageError("--region must be C or D");
  SweepOptions so;
  so.rc = m.regions();
  so.cutoff = m.cutoff();
  so.M = a.M;
  so.samples = a.samples;
  so.seed = c.seed;
  so.N = a.N;
  const SweepReport rep = sweep(m.k, m.coefficient(), region, q_lo, q_hi, so);
  bool unreliable = false;
  for (const auto& s : rep.shells) unreliable = unreliable || s.unreliable;
  if (c.format == "csv") {
    emit(c, to_csv(rep));
  } else {
    json j = echo("map", c, m);
    j["region"] = a.region;
    j["q"] = {q_lo, q_hi};
    j["M"] = a.M;
    j["samples"] = a.samples;
    j["N"] = a.N;
    json shells = json::array();
    for (const auto& s : rep.shells) {
      shells.push_back({{"q", s.q},
                        {"region", to_string(s.region)},
                        {"samples", s.samples},
                        {"frac_below", s.frac_below},
                        {"measure_est", s.measure_est},
                        {"failures", s.failures},
                        {"unreliable", s.unreliable},
                        {"area", s.area},
                        {"log2_jacobian_max", s.log2_jacobian_max},
                        {"min_modulus_seen", s.min_modulus_seen}});
    }
    j["shells"] = shells;
    j["r_emp"] = rep.r_emp;
    j["notes"] = rep.notes;
    emit(c, dump(j));
  }
  if (unreliable) {
    std::cerr << "dochar: at least one shell is unreliable\n";
    return kExitUnreliable;
  }
  return kExitOk;
}

// ---- classify ----
int cmd_classify(const Common& c) {
  const ModelConfig m = c.resolve(true);
  const Verdict v = classify(m.k, m.coefficient());
  json j = echo("classify", c, m);
  j["solvable"] = v.solvable;
  j["rule"] = to_string(v.rule);
  j["exceptional_set_used"] = v.exceptional_set_used;
  emit(c, dump(j));
  return kExitOk;
}

// ---- witness ----
struct WitnessArgs {
  std::string kind = "probe";
  std::string lambdas;
  std::optional<double> B;
  int grid = 65;
};

int cmd_witness(const Common& c, const WitnessArgs& a) {
  const ModelConfig m = c.resolve(true);
  json j = echo("witness", c, m);
  j["kind"] = a.kind;
  json rows = json::array();
  if (a.kind == "probe") {
    ProbeOptions po;
    po.grid = a.grid;
    if (m.probe_B) po.B = *m.probe_B;
    if (a.B) po.B = *a.B;
    const auto lams = parse_list(a.lambdas.empty() ? "16,32,64" : a.lambdas);
    const ProbeReport r = solvability_probe(m.k, m.coefficient(), lams, po);
    for (const auto& row : r.rows) {
      rows.push_back({{"lambda", row.lambda},
                      {"rho", row.rho},
                      {"int_phi_psi", row.int_phi_psi},
                      {"norm_phi_c0", row.norm_phi_c0},
                      {"norm_Lpsi_c0", row.norm_Lpsi_c0},
                      {"norm_psi_c0", row.norm_psi_c0},
                      {"relative_residual", row.relative_residual}});
    }
    j["path"] = r.path;
    j["B"] = po.B;
    j["grid"] = po.grid;
    j["growth"] = r.growth;
    j["unbounded"] = r.unbounded;
  } else if (a.kind == "l2") {
    const auto lams = parse_list(a.lambdas.empty() ? "4,8,16" : a.lambdas);
    const WitnessReport r = l2_witness(m.k, m.coefficient(), lams);
    for (const auto& row : r.rows) {
      rows.push_back({{"lambda", row.lambda},
                      {"norm_F", row.norm_F},
                      {"norm_LF", row.norm_LF},
                      {"ratio", row.ratio},
                      {"norm_Ft", row.norm_Ft},
                      {"dt_ratio_scaled", row.dt_ratio_scaled}});
    }
  } else {
    throw UsageError("--kind must be probe or l2");
  }
  j["rows"] = rows;
  emit(c, dump(j));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dochar: spectra, perturbation series, region maps and "
               "solvability witnesses for L = -X^2 - Y^2 + i a(x)[X,Y]"};
  app.require_subcommand(1);

  Common c_spec, c_pert, c_map, c_cls, c_wit;
  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of one operator in a window");
  add_common(sp, c_spec);
  sp->add_option("--family", sa.family, "A, B or D")->required();
  sp->add_option("--eta", sa.eta);
  sp->add_option("--tau", sa.tau);
  sp->add_option("--z", sa.z);
  sp->add_option("--eps", sa.eps);
  sp->add_option("--w", sa.w);
  sp->add_option("--sign-tau", sa.sign_tau)->check(CLI::IsMember({-1, 1}));
  sp->add_option("--window", sa.window, "lo,hi");
  sp->add_option("--chart", sa.chart, "B chart: auto, original or centered")
      ->check(CLI::IsMember({"auto", "original", "centered"}));
  sp->add_option("--tol", sa.tol, "Refinement tolerance");
  sp->add_option("--N", sa.N, "Initial grid points");

  PerturbArgs pa;
  auto* pe = app.add_subcommand("perturb", "Exact or fitted eps^2 coefficient");
  add_common(pe, c_pert);
  pe->add_option("--n", pa.n, "Oscillator level n");
  pe->add_flag("--exact", pa.exact, "Exact rational series");
  pe->add_option("--fit", pa.fit, "Comma-separated eps values");

  MapArgs ma;
  auto* mp = app.add_subcommand("map", "Exceptional-set statistics per dyadic shell");
  add_common(mp, c_map);
  mp->add_option("--region", ma.region, "C or D");
  mp->add_option("--q", ma.q, "Shell range a..b (tau in [2^q, 2^{q+1}])");
  mp->add_option("--M", ma.M, "Threshold exponent: min|mu| <= 2^{-M q}");
  mp->add_option("--samples", ma.samples, "Samples per shell");
  mp->add_option("--N", ma.N, "Grid points per solve");

  auto* cl = app.add_subcommand("classify", "Local solvability verdict");
  add_common(cl, c_cls);

  WitnessArgs wa;
  auto* wi = app.add_subcommand("witness", "Nonsolvability witness trends");
  add_common(wi, c_wit);
  wi->add_option("--kind", wa.kind, "probe or l2");
  wi->add_option("--lambdas", wa.lambdas, "Comma-separated lambda values");
  wi->add_option("--B", wa.B, "Radius exponent of the test bump");
  wi->add_option("--grid", wa.grid, "Probe grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgs;
  }

  try {
    if (*sp) return cmd_spectrum(c_spec, sa);
    if (*pe) return cmd_perturb(c_pert, pa);
    if (*mp) return cmd_map(c_map, ma);
    if (*cl) return cmd_classify(c_cls);
    if (*wi) return cmd_witness(c_wit, wa);
  } catch (const BudgetExceeded& e) {
    std::cerr << "dochar: budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const QuadratureBudget& e) {
    std::cerr << "dochar: budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const GridBudget& e) {
    std::cerr << "dochar: budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dochar: " << e.what() << "\n";
    return kExitArgs;
  } catch (const std::domain_error& e) {
    std::cerr << "dochar: " << e.what() << "\n";
    return kExitArgs;
  } catch (const std::exception& e) {
    std::cerr << "dochar: error: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitArgs;
}
