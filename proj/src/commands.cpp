#include "nevlab/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nevlab/error.hpp"
#include "nevlab/expr_json.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/nochka.hpp"
#include "nevlab/parallel.hpp"
#include "nevlab/verify.hpp"

namespace nevlab {

namespace {

struct CheckFailed {
  std::string document;
  std::string reason;
};

void emit(const RunConfig& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << doc;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + cfg.out + "'");
  f << doc;
}

Json load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorCode::InvalidInput, cfg.subcommand + ": --in is required");
  return load_json_file(cfg.input);
}

HolomorphicCurve input_curve(const Json& j) {
  if (!j.contains("curve")) throw Error(ErrorCode::InvalidInput, "missing \"curve\"");
  HolomorphicCurve f = parse_curve(j["curve"]);
  if (f.base_point != std::complex<double>(0.0, 0.0))
    throw Error(ErrorCode::InvalidInput, "at curve.base_point: only the centre [0, 0] of the model surface is supported");
  return f;
}

HyperplaneFamily input_family(const Json& j, int n) {
  const Json& h = j.contains("hyperplanes") ? j["hyperplanes"] : j;
  HyperplaneFamily fam = parse_hyperplanes(h);
  if (n >= 0 && fam.n != n)
    throw Error(ErrorCode::InvalidInput, "at hyperplanes.n: curve lives in P^" + std::to_string(n) + ", hyperplanes in P^" +
                                             std::to_string(fam.n));
  return fam;
}

std::string fmt_document(const RunConfig& cfg) {
  const Json j = load_input(cfg);
  const HolomorphicCurve f = input_curve(j);
  const HyperplaneFamily fam = input_family(j, f.dimension());
  const ModelSurface s = ModelSurface::from_name(cfg.surface);
  const auto radii = cfg.radii.values();

  std::vector<FmtSeries> series;
  for (const auto& h : fam.hyperplanes) series.push_back(fmt_residual(f, h, s, radii, cfg.nodes));

  const double tol = [&] {
    for (const auto& e : f.components)
      if (!e.is_polynomial()) return 1e-4;
    return 1e-6;
  }();
  double worst = 0.0;
  for (const auto& fs : series) worst = std::max(worst, fs.max_deviation());

  const int q = fam.q();
  std::vector<std::string> cols{"r", "T"};
  for (const char* p : {"m_", "N_", "Ntrunc_", "residual_"})
    for (int j2 = 1; j2 <= q; ++j2) cols.push_back(p + std::to_string(j2));
  CsvTable t(cols);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<double> row{series[0].rows[i].r, series[0].rows[i].T};
    for (const auto& fs : series) row.push_back(fs.rows[i].m);
    for (const auto& fs : series) row.push_back(fs.rows[i].N);
    for (const auto& fs : series) row.push_back(fs.rows[i].Ntrunc);
    for (const auto& fs : series) row.push_back(fs.rows[i].residual);
    t.add(row);
  }

  std::vector<std::pair<std::string, std::string>> res;
  for (int k = 0; k < q; ++k) res.emplace_back("weil_" + std::to_string(k + 1), format_double(series[k].weil));
  res.emplace_back("max_deviation", format_double(worst));
  res.emplace_back("tolerance", format_double(tol));
  for (const auto& fs : series)
    for (const auto& n : fs.notes) res.emplace_back("note", n);
  std::ostringstream os;
  write_header(os, cfg, res);
  t.write(os);
  if (worst > tol) throw CheckFailed{os.str(), "residual deviates from the Weil function by " + format_double(worst)};
  return os.str();
}

std::string ldl_document(const RunConfig& cfg) {
  const Json j = load_input(cfg);
  const MeromorphicFn psi = parse_meromorphic(j.contains("psi") ? j["psi"] : j);
  const ModelSurface s = ModelSurface::from_name(cfg.surface);
  const LdlReport rep = ldl_check(psi, s, cfg.radii.values(), cfg.order, cfg.nodes, cfg.c1);
  CsvTable t({"r", "m", "T", "leading", "error_term", "excess"});
  for (const auto& r : rep.rows) t.add({r.r, r.m, r.T, r.leading, r.error_term, r.excess});
  std::ostringstream os;
  write_header(os, cfg,
               {{"c0", format_double(rep.c0)},
                {"max_excess", format_double(rep.max_excess())},
                {"violation_fraction", format_double(rep.violation_fraction())},
                {"min_margin", format_double(rep.min_margin())}});
  t.write(os);
  if (rep.violation_fraction() > 0)
    throw CheckFailed{os.str(), "excess above c1 at a fraction " + format_double(rep.violation_fraction()) +
                      " of radii"};
  return os.str();
}

std::string smt_document(const RunConfig& cfg) {
  const Json j = load_input(cfg);
  const HolomorphicCurve f = input_curve(j);
  const HyperplaneFamily fam = input_family(j, f.dimension());
  const ModelSurface s = ModelSurface::from_name(cfg.surface);
  const NochkaWeights w = compute_weights(fam);
  const SmtReport rep = smt_margin(f, fam, w, s, cfg.radii.values(), cfg.nodes);

  const int q = fam.q();
  std::vector<std::string> cols{"r", "T"};
  for (const char* p : {"m_", "N_", "Ntrunc_"})
    for (int k = 1; k <= q; ++k) cols.push_back(p + std::to_string(k));
  for (const char* c : {"lhs", "counted", "margin"}) cols.emplace_back(c);
  CsvTable t(cols);
  for (const auto& r : rep.rows) {
    std::vector<double> row{r.r, r.T};
    row.insert(row.end(), r.m.begin(), r.m.end());
    row.insert(row.end(), r.N.begin(), r.N.end());
    row.insert(row.end(), r.Ntrunc.begin(), r.Ntrunc.end());
    row.insert(row.end(), {r.lhs, r.counted, r.margin});
    t.add(row);
  }
  std::vector<std::pair<std::string, std::string>> res{{"coefficient", fraction_string(rep.coefficient)}};
  std::string weights;
  for (const auto& g : w.gamma_j) weights += (weights.empty() ? "" : " ") + fraction_string(g);
  res.emplace_back("weights", weights);
  res.emplace_back("gamma", fraction_string(w.gamma));
  res.emplace_back("fit_a", format_double(rep.fit_a));
  res.emplace_back("fit_c", format_double(rep.fit_c));
  res.emplace_back("max_fit_excess", format_double(rep.max_fit_excess));
  std::string defects;
  for (double d : rep.defects) defects += (defects.empty() ? "" : " ") + format_double(d);
  res.emplace_back("defects", defects);
  res.emplace_back("defect_sum", format_double(rep.defect_sum));
  res.emplace_back("defect_budget", std::to_string(rep.defect_budget));
  for (const auto& n : rep.notes) res.emplace_back("note", n);
  std::ostringstream os;
  write_header(os, cfg, res);
  t.write(os);
  if (rep.max_fit_excess > cfg.fit_tolerance)
    throw CheckFailed{os.str(), "fit excess " + format_double(rep.max_fit_excess) + " above tolerance"};
  if (rep.defect_sum > rep.defect_budget + cfg.defect_slack)
    throw CheckFailed{os.str(), "defect sum " + format_double(rep.defect_sum) + " above budget"};
  return os.str();
}

std::string ode_document(const RunConfig& cfg) {
  const std::string& k = cfg.kappa;
  const Json j = !k.empty() && k.front() == '{' ? parse_json_text(k) : load_json_file(k);
  const KappaProfile kappa = parse_kappa(j.contains("kappa") ? j["kappa"] : j);
  const JacobiSolution sol = solve_jacobi(kappa, cfg.r_max, cfg.step);
  const JacobiBoundReport rep = check_jacobi_bounds(sol, kappa);
  CsvTable t({"t", "kappa", "G", "Gprime", "upper"});
  for (Eigen::Index i = 0; i < sol.t.size(); ++i) {
    const double ti = sol.t(i);
    t.add({ti, kappa(ti), sol.G(i), sol.Gprime(i), ti * std::exp(ti * std::sqrt(-kappa(ti)))});
  }
  std::ostringstream os;
  write_header(os, cfg,
               {{"lower_violation", format_double(rep.lower_violation)},
                {"integral_violation", format_double(rep.integral_violation)},
                {"upper_violation", format_double(rep.upper_violation)},
                {"violations", std::to_string(rep.violations)}});
  t.write(os);
  if (!rep.holds()) throw CheckFailed{os.str(), std::to_string(rep.violations) + " grid points violate a bound"};
  return os.str();
}

int run_nochka(const RunConfig& cfg, std::ostream& out) {
  const HyperplaneFamily fam = input_family(load_input(cfg), -1);
  const NochkaWeights w = compute_weights(fam);
  const WeightCheck check = verify_weights(fam, w);
  std::string line;
  for (const auto& g : w.gamma_j) line += (line.empty() ? "" : " ") + fraction_string(g);
  out << line << "\n";
  out << "gamma " << fraction_string(w.gamma) << "\n";
  if (!cfg.out.empty() && cfg.out != "-") emit(cfg, line + "\n", out);
  return check.ok ? kExitOk : kExitCheckFailed;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  opt.threads = cfg.threads;
  opt.seed = cfg.seed;
  CsvTable t({"criterion", "name", "pass", "seconds", "detail"});
  bool ok = true;
  for (int id : suite_ids(cfg.suite)) {
    const CriterionResult r = run_criterion(id, opt);
    out << r.line() << std::endl;
    ok = ok && r.pass;
    std::string detail = r.detail;
    for (char& c : detail)
      if (c == ',') c = ';';
    t.add_cells({std::to_string(r.id), r.name, r.pass ? "1" : "0", format_double(r.seconds), detail});
  }
  if (!cfg.out.empty() && cfg.out != "-") {
    std::ostringstream os;
    write_header(os, cfg);
    t.write(os);
    emit(cfg, os.str(), out);
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

CsvTable bm_table(const PathConfig& cfg, bool functionals, int threads, bool* all_pass) {
  const ModelSurface s = cfg.surface;
  auto rho = [s](std::complex<double> z) { return s.geodesic_radius(z); };
  auto u = [](std::complex<double> z) { return std::log1p(std::norm(z)); };
  std::vector<Integrand> in;
  if (functionals) {
    in.push_back({"rho2", [rho](std::complex<double> z) { return rho(z) * rho(z); }});
    in.push_back({"rho_cos", [rho](std::complex<double> z) { return z == 0.0 ? 0.0 : rho(z) * z.real() / std::abs(z); }});
    in.push_back({"half_laplacian", [s](std::complex<double> z) {
                    const double a = 1.0 + std::norm(z);
                    return 0.5 * 4.0 / (a * a) / s.conformal_factor(z);
                  }});
  }
  const ExitStats st = simulate_exit(cfg, in, threads);

  CsvTable t({"quantity", "estimate", "std_error", "reference", "z_score", "pass"});
  bool ok = true;
  auto add = [&](const std::string& name, const Comparison& c, bool pass) {
    ok = ok && pass;
    t.add_cells({name, format_double(c.estimate), format_double(c.std_error), format_double(c.reference),
                 format_double(c.z_score()), pass ? "1" : "0"});
  };
  auto compare = [&](const std::string& name, const Estimate& e, double ref) {
    const Comparison c{e.mean, e.std_error, ref};
    add(name, c, c.within(3.0));
  };

  const double r = cfg.radius;
  const Estimate tau = estimate(st.tau);
  compare("mean_tau", tau, coarea_integral(s, r, [](std::complex<double>) { return 1.0; }));
  const Comparison bound{tau.mean + 3.0 * tau.std_error, 0.0, 4.0 * r * r};
  add("tau_bound", bound, bound.estimate <= bound.reference);
  const UniformityTest ks = exit_angle_uniformity(st);
  add("exit_angle_ks", {ks.statistic, 0.0, ks.critical}, ks.passes());
  if (functionals) {
    compare("occupation_rho2", estimate(st.functional("rho2")),
            coarea_integral(s, r, [rho](std::complex<double> z) { return rho(z) * rho(z); }));
    compare("occupation_rho_cos", estimate(st.functional("rho_cos")), 0.0);
    const DynkinReport d = dynkin_from_stats(st, u, "half_laplacian");
    compare("dynkin_log1p_norm", d.difference, 0.0);
  }
  t.add_cells({"coarse_paths", std::to_string(st.coarse_paths), "0", format_double(st.max_overshoot), "0", "1"});
  if (all_pass) *all_pass = ok;
  return t;
}

std::string bm_document(const RunConfig& cfg, bool functionals, bool* all_pass) {
  PathConfig pc;
  pc.surface = ModelSurface::from_name(cfg.surface);
  pc.radius = cfg.radius;
  pc.dt = cfg.dt;
  pc.master_seed = cfg.seed;
  pc.n_paths = cfg.paths;
  const CsvTable t = bm_table(pc, functionals, resolve_threads(cfg.threads), all_pass);
  std::ostringstream os;
  write_header(os, cfg);
  t.write(os);
  return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const std::string& c = cfg.subcommand;
    if (c == "nochka") return run_nochka(cfg, out);
    if (c == "verify") return run_verify(cfg, out);
    std::string doc;
    bool ok = true;
    if (c == "fmt") doc = fmt_document(cfg);
    else if (c == "ldl") doc = ldl_document(cfg);
    else if (c == "smt") doc = smt_document(cfg);
    else if (c == "ode") doc = ode_document(cfg);
    else if (c == "bm") doc = bm_document(cfg, true, &ok);
    else throw Error(ErrorCode::InvalidInput, "unknown subcommand '" + c + "'");
    emit(cfg, doc, out);
    if (!ok) {
      err << "nevlab " << c << ": a Monte Carlo check failed (see pass column)\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const CheckFailed& f) {
    emit(cfg, f.document, out);
    err << "nevlab " << cfg.subcommand << ": check failed: " << f.reason << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "nevlab " << cfg.subcommand << ": " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace nevlab
