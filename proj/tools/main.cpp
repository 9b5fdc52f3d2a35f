// volterra: evaluate the closed-form objects, verify the identity suites,
// run simulations, and merge result tables.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "volterra/checks.hpp"
#include "volterra/diffusion_mc.hpp"
#include "volterra/distributions.hpp"
#include "volterra/jump_process.hpp"
#include "volterra/kernels.hpp"
#include "volterra/mc.hpp"
#include "volterra/report.hpp"
#include "volterra/special.hpp"
#include "volterra/volterra_fn.hpp"

namespace {

using namespace volterra;
using Clock = std::chrono::steady_clock;

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    // start:stop:count[:log|lin]
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4) throw std::invalid_argument("bad grid: " + spec);
    double a = std::stod(parts[0]), b = std::stod(parts[1]);
    long n = std::stol(parts[2]);
    bool log_spaced = parts.size() == 4 && parts[3] == "log";
    if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin")
      throw std::invalid_argument("bad grid spacing: " + parts[3]);
    if (n < 1 || !(a <= b) || (log_spaced && !(a > 0.0)))
      throw std::invalid_argument("bad grid: " + spec);
    for (long i = 0; i < n; ++i) {
      double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      out.push_back(log_spaced ? a * std::pow(b / a, f) : a + (b - a) * f);
    }
    return out;
  }
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty grid: " + spec);
  return out;
}

struct CommonOpts {
  double T = 1.0;
  double lambda = 1.0;
  double lambda_prime = 1.0;
  double x0 = 0.5;
  double eps = 0.05;
  double s = 0.0;
  double t = 0.5;
  double v = 0.0;
  double beta = 0.5;
  double ds = 1e-3;
  double dt_max = 1e-4;
  double tol = 1e-9;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--T", o.T, "time horizon");
  cmd->add_option("--lambda", o.lambda, "spectral parameter");
  cmd->add_option("--lambda-prime", o.lambda_prime, "second spectral parameter");
  cmd->add_option("--x0", o.x0, "start radius / fixed first coordinate");
  cmd->add_option("--eps", o.eps, "crossing radius / escape level");
  cmd->add_option("--s", o.s, "start time or local-time argument");
  cmd->add_option("--t", o.t, "end time argument");
  cmd->add_option("--v", o.v, "local-time coordinate");
  cmd->add_option("--beta", o.beta, "exponential tilt");
  cmd->add_option("--ds", o.ds, "jump-process local-time step");
  cmd->add_option("--dt-max", o.dt_max, "diffusion time step cap");
  cmd->add_option("--tol", o.tol, "quadrature tolerance");
  cmd->add_option("--n", o.n, "number of paths / samples");
  cmd->add_option("--seed", o.seed, "RNG seed")->envname("VOLTERRA_SEED");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--out", o.out, "output file or directory");
}

ModelParams make_params(const CommonOpts& o) {
  ModelParams P;
  P.T = o.T;
  P.lambda = o.lambda;
  P.quad = QuadConfig{o.tol, o.tol, 4000};
  P.validate();
  return P;
}

int cmd_eval(const std::string& fn, const std::string& grid_spec, const CommonOpts& o) {
  std::vector<double> grid = parse_grid(grid_spec);
  ModelParams P = make_params(o);
  QuadConfig cfg = P.quad;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  auto emit = [&](std::initializer_list<std::string> cols,
                  const std::function<std::vector<double>(double)>& f) {
    columns.assign(cols);
    for (double x : grid) rows.push_back(f(x));
  };
  if (fn == "nu") {
    emit({"x", "nu"}, [&](double x) { return std::vector<double>{x, nu(x, cfg)}; });
  } else if (fn == "nu_prime") {
    emit({"x", "nu_prime"}, [&](double x) { return std::vector<double>{x, nu_prime(x, cfg)}; });
  } else if (fn == "E") {
    emit({"x", "E", "E_tilde", "E_bold"}, [&](double x) {
      return std::vector<double>{x, exp_int_E(x), exp_int_tilde(x), exp_int_bold(x)};
    });
  } else if (fn == "H") {
    emit({"r", "H"}, [&](double r) {
      return std::vector<double>{r, big_h(o.T, o.lambda, r, cfg)};
    });
  } else if (fn == "h") {
    emit({"b", "h"}, [&](double b) {
      return std::vector<double>{b, little_h_radial(o.t, o.lambda, o.x0, b, cfg)};
    });
  } else if (fn == "f") {
    emit({"b", "f_radial"}, [&](double b) {
      return std::vector<double>{b, full_f_radial(o.t, o.lambda, o.x0, b, cfg)};
    });
  } else if (fn == "d") {
    emit({"b", "d_radial"}, [&](double b) {
      return std::vector<double>{b, trans_density_d_radial(P, o.s, o.t, o.x0, b)};
    });
  } else if (fn == "b") {
    emit({"r", "bbar"}, [&](double r) {
      return std::vector<double>{r, drift_bbar(o.T, o.lambda, r, cfg)};
    });
  } else if (fn == "vp_density") {
    VolterraPoisson vp(o.T * o.lambda);
    emit({"v", "density"}, [&](double v) { return std::vector<double>{v, vp.density(v)}; });
  } else if (fn == "tau_density") {
    emit({"t", "density"}, [&](double t) {
      return std::vector<double>{t, tau_density(P, o.x0, t)};
    });
  } else if (fn == "joint_density") {
    emit({"t", "v", "density"}, [&](double t) {
      return std::vector<double>{t, o.v, tau_localtime_joint_density(P, o.x0, t, o.v)};
    });
  } else if (fn == "renewal_density") {
    emit({"b", "density"}, [&](double b) {
      return std::vector<double>{b, renewal_density(P, o.s, b)};
    });
  } else if (fn == "jump_rate") {
    emit({"b", "rate"}, [&](double b) {
      return std::vector<double>{b, jump_rate_density(P, o.s, b)};
    });
  } else if (fn == "transition_kernel") {
    emit({"b", "density", "atom"}, [&](double b) {
      return std::vector<double>{b, transition_kernel_density(P, o.ds, o.s, b),
                                 transition_atom(P, o.ds, o.s)};
    });
  } else {
    std::cerr << "unknown function: " << fn << "\n";
    return 2;
  }
  if (o.out.empty()) {
    write_csv(std::cout, columns, rows);
  } else {
    write_csv_file(o.out, columns, rows);
  }
  return 0;
}

int cmd_verify(const std::string& suite, double tol_scale, const CommonOpts& o) {
  auto t0 = Clock::now();
  std::vector<CheckRow> checks;
  if (suite == "identities")
    checks = checks_identities(tol_scale);
  else if (suite == "kernels")
    checks = checks_kernels(tol_scale);
  else if (suite == "distributions")
    checks = checks_distributions(tol_scale, o.seed);
  else if (suite == "jump")
    checks = checks_jump(tol_scale);
  else if (suite == "all")
    checks = checks_all(tol_scale, o.seed);
  else {
    std::cerr << "unknown suite: " << suite << " (identities|kernels|distributions|jump|all)\n";
    return 2;
  }
  RunReport rep;
  rep.command = "verify " + suite;
  rep.seed = o.seed;
  rep.checks = checks;
  int rc = print_checks(std::cout, rep);
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  std::fprintf(stderr, "verify %s: %s in %.1f s\n", suite.c_str(), rc == 0 ? "all pass" : "FAILURES",
               rep.wall_time);
  if (!o.out.empty()) write_report_json(o.out, rep);
  return rc;
}

int cmd_simulate(const std::string& target, const CommonOpts& o) {
  ModelParams P = make_params(o);
  namespace fs = std::filesystem;
  fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  fs::create_directories(dir);
  RunReport rep;
  rep.command = "simulate " + target;
  rep.seed = o.seed;
  rep.params = {{"T", format_g17(o.T)}, {"lambda", format_g17(o.lambda)},
                {"n", std::to_string(o.n)}};

  std::ofstream summary(dir / "summary.csv");
  summary << "name,estimate,std_error,n_paths,closed_form\n";

  if (target == "jump") {
    std::ofstream paths(dir / "paths.csv");
    paths << "path,local_time,position,absorbed\n";
    RngStream root(o.seed, 0);
    std::vector<double> S(o.n, 0.0);
    std::size_t export_cap = std::min<std::size_t>(o.n, 50);
    for (std::size_t i = 0; i < o.n; ++i) {
      RngStream s = root.substream(i);
      if (i < export_cap) {
        JumpPath p = simulate_path(P, 0.0, o.ds, s);
        for (std::size_t k = 0; k < p.positions.size(); ++k) {
          bool absorbed = p.positions[k] >= P.T;
          paths << i << ',' << format_g17(p.local_times[k]) << ',' << format_g17(p.positions[k])
                << ',' << (absorbed ? 1 : 0) << '\n';
        }
        S[i] = p.terminal_local_time;
      } else {
        S[i] = simulate_path_visit(P, 0.0, o.ds, s, [](double, double) {});
      }
    }
    MCEstimate m = mc_from_samples(S, o.seed);
    double closed = P.T * P.lambda * fast::nu_prime(P.T * P.lambda) / fast::nu(P.T * P.lambda);
    summary << "terminal_local_time," << format_g17(m.mean) << ',' << format_g17(m.std_error)
            << ',' << m.n_paths << ',' << format_g17(closed) << '\n';
  } else if (target == "diffusion") {
    SimConfig cfg;
    cfg.x0 = o.x0;
    cfg.dt_max = o.dt_max;
    cfg.n_paths = o.n;
    cfg.eps_levels = {o.eps};
    if (o.n > 0) {
      std::ofstream paths(dir / "paths.csv");
      paths << "path,time,radius\n";
      std::size_t export_cap = std::min<std::size_t>(o.n, 10);
      RngStream root(o.seed, 1);
      for (std::size_t i = 0; i < export_cap; ++i) {
        RngStream s = root.substream(i);
        DiffusionPath p = simulate_radial(P, cfg, s);
        for (std::size_t k = 0; k < p.times.size(); ++k)
          paths << i << ',' << format_g17(p.times[k]) << ',' << format_g17(p.radii[k]) << '\n';
      }
      MCEstimate mc = hitting_prob_mc(P, o.eps, cfg, RngStream(o.seed, 0), o.workers);
      MCEstimate is = hitting_prob_is(P, o.eps, cfg, RngStream(o.seed, 0), o.workers);
      summary << "hitting_prob_mc," << format_g17(mc.mean) << ',' << format_g17(mc.std_error)
              << ',' << mc.n_paths << ",nan\n";
      summary << "hitting_prob_is," << format_g17(is.mean) << ',' << format_g17(is.std_error)
              << ',' << is.n_paths << ",nan\n";
    } else {
      std::ofstream paths(dir / "paths.csv");
      paths << "path,time,radius\n";
    }
  } else {
    std::cerr << "unknown simulate target: " << target << " (jump|diffusion)\n";
    return 2;
  }
  write_report_json((dir / "report.json").string(), rep);
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const CommonOpts& o) {
  if (inputs.empty()) {
    std::cerr << "report: no input files\n";
    return 2;
  }
  std::vector<Csv> tables;
  for (const auto& p : inputs) tables.push_back(read_csv_file(p));
  const auto& cols = tables.front().columns;
  for (const auto& t : tables)
    if (t.columns != cols) {
      std::cerr << "report: column mismatch between inputs\n";
      return 2;
    }
  int c_name = tables.front().col("name");
  int c_est = tables.front().col("estimate");
  int c_se = tables.front().col("std_error");
  int c_n = tables.front().col("n_paths");
  int c_cf = tables.front().col("closed_form");
  if (c_name < 0 || c_est < 0 || c_se < 0 || c_n < 0) {
    std::cerr << "report: inputs must have name,estimate,std_error,n_paths columns\n";
    return 2;
  }
  // pool rows by name: inverse-variance-free pooling by path count
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> groups;  // name -> flat indices
  struct Row {
    double est, se, n, cf;
  };
  std::vector<Row> flat;
  std::vector<std::string> flat_name;
  for (const auto& t : tables)
    for (std::size_t r = 0; r < t.cells.size(); ++r) {
      Row row{t.num(r, c_est), t.num(r, c_se), t.num(r, c_n),
              c_cf >= 0 ? t.num(r, c_cf) : std::nan("")};
      if (groups.find(t.cells[r][c_name]) == groups.end()) order.push_back(t.cells[r][c_name]);
      groups[t.cells[r][c_name]].push_back(flat.size());
      flat.push_back(row);
      flat_name.push_back(t.cells[r][c_name]);
    }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    os = &file;
  }
  *os << "name,estimate,std_error,n_paths,closed_form,z_score\n";
  for (const auto& name : order) {
    double wsum = 0, msum = 0, varsum = 0, cf = std::nan("");
    for (auto i : groups[name]) {
      const Row& r = flat[i];
      wsum += r.n;
      msum += r.n * r.est;
      varsum += r.n * r.n * r.se * r.se;
      if (!std::isnan(r.cf)) cf = r.cf;
    }
    double mean = msum / wsum;
    double se = std::sqrt(varsum) / wsum;
    double z = std::isnan(cf) ? std::nan("") : (mean - cf) / se;
    *os << name << ',' << format_g17(mean) << ',' << format_g17(se) << ','
        << format_g17(wsum) << ',' << format_g17(cf) << ',' << format_g17(z) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volterra special functions, point-potential kernels, and samplers"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts o;
  std::string fn, grid, suite = "all", target;
  double tol_scale = 1.0;
  std::vector<std::string> inputs;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a function on a grid");
  eval->add_option("function", fn, "one of nu,nu_prime,E,H,h,f,d,b,vp_density,tau_density,"
                                   "joint_density,renewal_density,jump_rate,transition_kernel")
      ->required();
  eval->add_option("grid", grid, "a:b:n[:log|lin] or comma list")->required();
  add_common(eval, o);

  CLI::App* verify = app.add_subcommand("verify", "run an identity-verification suite");
  verify->add_option("suite", suite, "identities|kernels|distributions|jump|all");
  verify->add_option("--tol-scale", tol_scale, "scale all thresholds");
  add_common(verify, o);

  CLI::App* simulate = app.add_subcommand("simulate", "run a sampler and write CSVs");
  simulate->add_option("target", target, "jump|diffusion")->required();
  add_common(simulate, o);

  CLI::App* report = app.add_subcommand("report", "merge summary CSVs");
  report->add_option("inputs", inputs, "summary.csv files");
  add_common(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(fn, grid, o);
    if (*verify) return cmd_verify(suite, tol_scale, o);
    if (*simulate) return cmd_simulate(target, o);
    if (*report) return cmd_report(inputs, o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
