// whittaker: command-line front end for the discrete Whittaker process
// library.  One subcommand per module family; every run that writes files
// also writes a <output>.manifest.json with the full parameter set and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "whittaker/brownian.hpp"
#include "whittaker/coeff.hpp"
#include "whittaker/hitting.hpp"
#include "whittaker/intertwine.hpp"
#include "whittaker/io.hpp"
#include "whittaker/laurent.hpp"
#include "whittaker/ldp.hpp"
#include "whittaker/operators.hpp"
#include "whittaker/sim.hpp"

using namespace whittaker;
using nlohmann::ordered_json;

namespace {

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WHITTAKER_SEED")) return std::stoull(env);
  return 0;
}

void emit_manifest(const std::string& command,
                   const std::map<std::string, std::string>& params,
                   std::uint64_t seed, const std::vector<std::string>& outputs) {
  if (outputs.empty()) return;
  write_text_file(outputs.front() + ".manifest.json",
                  manifest_json(command, params, seed, outputs));
}

int cmd_coeff(const std::string& family, int r, const std::string& alpha_s,
              const std::string& n_s, const std::string& lambda_s,
              const std::string& mu_s, long table, const std::string& out) {
  AlphaSpec alpha(parse_longs(alpha_s));
  std::vector<long> n = parse_longs(n_s);
  auto one = [&](const std::vector<long>& idx) -> std::string {
    if (family == "a") {
      CoeffEngine eng(alpha);
      return rat_to_string(eng.a(r, idx));
    }
    if (family == "A") {
      CoeffEngine eng(alpha);
      return eng.a_normalized(r, idx).get_str();
    }
    if (family == "B") return b_coeff(r, idx).get_str();
    if (family == "BC2") return bc2_coeff(idx.at(0), idx.at(1)).get_str();
    if (family == "G2") return g2_coeff(idx.at(0), idx.at(1)).get_str();
    if (family == "shape") {
      Shape lambda = parse_shape(lambda_s);
      Shape mu = parse_shape(mu_s);
      return rat_to_string(coeff_general_shape(lambda, mu, alpha, idx));
    }
    throw CLI::ValidationError("--family", "unknown family " + family);
  };
  if (table < 0) {
    std::cout << one(n) << "\n";
    return 0;
  }
  // CSV dump of all indices <= table.
  int dim = r;
  if (family == "BC2" || family == "G2") dim = 2;
  if (family == "shape") {
    Shape lambda = parse_shape(lambda_s);
    Shape mu = parse_shape(mu_s);
    dim = CellSet::skew(lambda, mu).num_cells();
  }
  std::ostringstream csv;
  for (int d = 0; d < dim; ++d) csv << "n" << d + 1 << ",";
  csv << "value\n";
  std::vector<long> idx(dim, 0);
  while (true) {
    for (int d = 0; d < dim; ++d) csv << idx[d] << ",";
    csv << one(idx) << "\n";
    int pos = dim - 1;
    while (pos >= 0) {
      if (idx[pos] < table) {
        ++idx[pos];
        break;
      }
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(out, csv.str());
    emit_manifest("coeff",
                  {{"family", family},
                   {"r", std::to_string(r)},
                   {"alpha", alpha_s},
                   {"table", std::to_string(table)}},
                  0, {out});
  }
  return 0;
}

int cmd_operator_dump(const std::string& shape_s, const std::string& mu_s,
                      const std::string& alpha_s, const std::string& roof_s,
                      bool with_potential, const std::string& out) {
  Shape lambda = parse_shape(shape_s);
  Shape mu = parse_shape(mu_s);
  AlphaSpec alpha(parse_longs(alpha_s));
  State roof = parse_longs(roof_s);
  BuiltOperator b = with_potential ? build_H(lambda, mu, alpha, roof)
                                   : build_G(lambda, mu, alpha, roof);
  ordered_json j;
  j["shape"] = lambda.rows();
  if (!mu.empty()) j["mu"] = mu.rows();
  j["dimension"] = b.space.size();
  ordered_json states = ordered_json::array();
  for (int s = 0; s < b.space.size(); ++s) states.push_back(b.space.state(s));
  j["states"] = states;
  ordered_json triplets = ordered_json::array();
  for (int s = 0; s < b.space.size(); ++s) {
    for (const auto& [t, rate] : b.op.off[s])
      triplets.push_back({s, t, rat_to_string(rate)});
    if (b.op.diag[s] != 0)
      triplets.push_back({s, s, rat_to_string(b.op.diag[s])});
  }
  j["triplets"] = triplets;
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
    emit_manifest("operator dump",
                  {{"shape", shape_s}, {"mu", mu_s}, {"alpha", alpha_s},
                   {"roof", roof_s}},
                  0, {out});
  }
  return 0;
}

int report_to_exit(const VerifyReport& rep, const std::string& name) {
  ordered_json j;
  j["check"] = name;
  j["pass"] = rep.pass;
  j["rows_checked"] = rep.rows_checked;
  j["detail"] = rep.detail;
  std::cout << (rep.pass ? "PASS " : "FAIL ") << name << ": " << rep.detail
            << "\n" << j.dump(2) << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_simulate(const std::string& shape_s, const std::string& mu_s,
                 const std::string& alpha_s, std::optional<long> init_all,
                 const std::string& init_values_s, const std::string& stop_s,
                 std::uint64_t seed, const std::string& out,
                 const std::string& svg_out, const std::string& events_out) {
  SimConfig cfg;
  cfg.lambda = parse_shape(shape_s);
  cfg.mu = parse_shape(mu_s);
  cfg.alpha = AlphaSpec(parse_longs(alpha_s));
  if (!init_values_s.empty())
    cfg.init_values = parse_longs(init_values_s);
  else if (init_all)
    cfg.init_all = *init_all;
  else
    throw CLI::ValidationError("--init", "need --init or --init-values");
  if (stop_s == "absorb") {
    cfg.stop = StopRule::absorption();
  } else if (stop_s.rfind("time:", 0) == 0) {
    cfg.stop = StopRule::time_limit(std::stod(stop_s.substr(5)));
  } else if (stop_s.rfind("absorb:", 0) == 0) {
    auto ij = parse_longs(stop_s.substr(7));
    cfg.stop = StopRule::cell_zero({static_cast<int>(ij.at(0)),
                                    static_cast<int>(ij.at(1))});
  } else {
    throw CLI::ValidationError("--stop", "expected absorb, time:T or absorb:i,j");
  }
  cfg.seed = seed;
  PathRecord rec = simulate(cfg);
  CellSet cells = cfg.mu.empty() ? CellSet::from_shape(cfg.lambda)
                                 : CellSet::skew(cfg.lambda, cfg.mu);
  PlaneArray pi(cells, rec.final_values);
  long maxval = init_all ? *init_all : pi.max_finite();

  std::vector<std::string> outputs;
  if (!out.empty()) {
    write_pgm(pi, maxval, out);
    outputs.push_back(out);
  }
  if (!svg_out.empty()) {
    write_svg(pi, maxval, svg_out);
    outputs.push_back(svg_out);
  }
  if (!events_out.empty()) {
    std::ostringstream csv;
    csv << "time,i,j,new_value\n";
    for (const auto& e : rec.events)
      csv << format_double(e.time) << "," << e.cell.i << "," << e.cell.j << ","
          << e.new_value << "\n";
    write_text_file(events_out, csv.str());
    outputs.push_back(events_out);
  }
  ordered_json j;
  j["events"] = rec.events.size();
  j["final_time"] = rec.final_time;
  j["absorbed"] = rec.absorbed;
  std::cout << j.dump(2) << "\n";
  emit_manifest("simulate",
                {{"shape", shape_s}, {"mu", mu_s}, {"alpha", alpha_s},
                 {"stop", stop_s},
                 {"init", init_all ? std::to_string(*init_all) : init_values_s}},
                seed, outputs);
  return 0;
}

int cmd_sample_k(const std::string& shape_s, const std::string& mu_s,
                 const std::string& alpha_s, const std::string& sigma_s,
                 long reps, std::uint64_t seed, const std::string& out) {
  Shape lambda = parse_shape(shape_s);
  Shape mu = parse_shape(mu_s);
  AlphaSpec alpha(parse_longs(alpha_s));
  std::vector<long> sigma = parse_longs(sigma_s);
  std::ostringstream csv;
  CellSet cells = CellSet::from_shape(lambda);
  for (int o = 0; o < cells.num_cells(); ++o) {
    Cell c = cells.cell(o);
    csv << (o ? "," : "") << "pi_" << c.i << "_" << c.j;
  }
  csv << "\n";
  for (long rr = 0; rr < reps; ++rr) {
    PlaneArray pi = sample_K(lambda, mu, alpha, sigma, seed, rr);
    auto vals = pi.finite_values();
    for (size_t i = 0; i < vals.size(); ++i) csv << (i ? "," : "") << vals[i];
    csv << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(out, csv.str());
    emit_manifest("sample-k",
                  {{"shape", shape_s}, {"mu", mu_s}, {"alpha", alpha_s},
                   {"sigma", sigma_s}, {"reps", std::to_string(reps)}},
                  seed, {out});
  }
  return 0;
}

int cmd_hitprob(bool entrance, long n, long m, double tol,
                const std::string& from_s, const std::string& to_s, bool exact,
                long table, const std::string& out) {
  if (entrance) {
    if (table >= 0) {
      std::ostringstream csv;
      csv << "n,m,h\n";
      for (long i = 0; i <= table; ++i)
        for (long j = 0; j <= table; ++j)
          csv << i << "," << j << ","
              << format_double(hitting_prob_entrance(i, j, tol).value) << "\n";
      if (out.empty())
        std::cout << csv.str();
      else {
        write_text_file(out, csv.str());
        emit_manifest("hitprob", {{"table", std::to_string(table)}}, 0, {out});
      }
      return 0;
    }
    auto v = hitting_prob_entrance(n, m, tol);
    std::cout << format_double(v.value) << "\n";
    return 0;
  }
  std::vector<long> from = parse_longs(from_s), to = parse_longs(to_s);
  Rat p = hitting_prob_finite(from.at(0), from.at(1), to.at(0), to.at(1));
  if (exact)
    std::cout << rat_to_string(p) << "\n";
  else
    std::cout << format_double(to_double(p)) << "\n";
  return 0;
}

int cmd_mc(const std::string& which, int r, double t, long paths, double dt,
           std::uint64_t seed, int threads, const std::string& n_s,
           const std::string& m_s, long p, const std::string& y_s) {
  DualityReport rep;
  if (which == "duality-l") {
    rep = duality_check_L(r, parse_longs(n_s), parse_longs(m_s), t, paths, dt,
                          seed, threads);
  } else if (which == "duality-m") {
    rep = duality_check_M(r, p, t, paths, dt, seed, threads);
  } else if (which == "phi") {
    std::vector<double> y;
    for (const Rat& q : parse_rationals(y_s)) y.push_back(to_double(q));
    rep = phi_check(r, y, t, paths, dt, seed, threads);
  } else {
    throw CLI::ValidationError("mode", "expected duality-l, duality-m or phi");
  }
  ordered_json j;
  j["estimate"] = {{"re", rep.mc.mean.real()}, {"im", rep.mc.mean.imag()}};
  j["stderr"] = {{"re", rep.mc.stderr_re}, {"im", rep.mc.stderr_im}};
  j["oracle"] = rep.oracle;
  j["z"] = {{"re", rep.z_re}, {"im", rep.z_im}};
  j["pass_3sigma"] = rep.pass_3sigma;
  j["paths"] = rep.mc.samples;
  j["seed"] = rep.mc.seed;
  std::cout << j.dump(2) << "\n";
  return rep.pass_3sigma ? 0 : 1;
}

int cmd_ldp_solve(const std::string& shape_s, const std::string& mu_s,
                  const std::string& boundary_s) {
  LimitShapeProblem prob;
  prob.lambda = parse_shape(shape_s);
  prob.mu = parse_shape(mu_s);
  for (const Rat& q : parse_rationals(boundary_s))
    prob.boundary.push_back(to_double(q));
  LimitShapeSolution sol = solve_limit_shape(prob);
  ordered_json j;
  j["x"] = sol.x;
  j["objective"] = sol.objective;
  j["grad_norm"] = sol.grad_norm;
  j["cp_residual"] = sol.cp_residual;
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["hessian_pd"] = sol.hessian_pd;
  j["used_fallback"] = sol.used_fallback;
  std::cout << j.dump(2) << "\n";
  return sol.converged ? 0 : 1;
}

int cmd_ldp_concentrate(const std::string& shape_s, const std::string& mu_s,
                        const std::string& boundary_s, long N, long reps,
                        std::uint64_t seed) {
  LimitShapeProblem prob;
  prob.lambda = parse_shape(shape_s);
  prob.mu = parse_shape(mu_s);
  for (const Rat& q : parse_rationals(boundary_s))
    prob.boundary.push_back(to_double(q));
  ConcentrationReport rep = concentration_experiment(prob, N, reps, seed);
  ordered_json j;
  j["N"] = rep.N;
  j["reps"] = rep.reps;
  j["mean_dev"] = rep.mean_dev;
  j["mean_abs_dev"] = rep.mean_abs_dev;
  j["max_abs_bias"] = rep.max_abs_bias;
  j["max_mean_abs_dev"] = rep.max_mean_abs_dev;
  j["dev_q50"] = rep.dev_q50;
  j["dev_q90"] = rep.dev_q90;
  j["dev_q99"] = rep.dev_q99;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_render(const std::string& in, const std::string& out, long maxval,
               bool svg) {
  PlaneArray pi = array_from_json(read_text_file(in));
  if (maxval < 0) maxval = pi.max_finite();
  if (svg)
    write_svg(pi, maxval, out);
  else
    write_pgm(pi, maxval, out);
  emit_manifest("render", {{"in", in}, {"maxval", std::to_string(maxval)}}, 0,
                {out});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Whittaker processes: exact coefficients, chains, "
               "intertwinings, hitting probabilities and Monte Carlo"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed_flag;
  int threads = 0;
  app.add_option("--threads", threads, "worker pool cap (0 = hardware)");

  // coeff ------------------------------------------------------------------
  auto* coeff = app.add_subcommand("coeff", "series coefficients, exact");
  std::string family = "a", alpha_s, n_s, lambda_s, mu_s, out;
  int r = 1;
  long table = -1;
  coeff->add_option("--family", family, "a|A|B|BC2|G2|shape");
  coeff->add_option("--r", r, "rank");
  coeff->add_option("--alpha", alpha_s, "offsets a1,a2,...");
  coeff->add_option("--n", n_s, "index n1,n2,...");
  coeff->add_option("--lambda", lambda_s, "shape (family=shape)");
  coeff->add_option("--mu", mu_s, "inner shape (family=shape)");
  coeff->add_option("--table", table, "dump CSV for all indices <= N");
  coeff->add_option("--out", out, "output file");

  // operator ---------------------------------------------------------------
  auto* op = app.add_subcommand("operator", "difference operators");
  auto* opdump = op->add_subcommand("dump", "dump sparse triplets as JSON");
  std::string op_shape, op_mu, op_alpha, op_roof, op_out;
  bool op_potential = false;
  opdump->add_option("--shape", op_shape)->required();
  opdump->add_option("--mu", op_mu);
  opdump->add_option("--alpha", op_alpha);
  opdump->add_option("--roof", op_roof)->required();
  opdump->add_flag("--potential", op_potential, "include the corner potential");
  opdump->add_option("--out", op_out);

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "exact verification suites");
  auto* viq = verify->add_subcommand("iq", "h^r q_r = q_r h^{r-1}");
  int viq_r = 2;
  long viq_max = 3;
  std::string viq_alpha;
  bool viq_perturb = false;
  viq->add_option("--r", viq_r)->required();
  viq->add_option("--alpha", viq_alpha);
  viq->add_option("--max", viq_max);
  viq->add_flag("--perturb", viq_perturb, "negative control");

  auto* vmf = verify->add_subcommand("mfrpp", "H Lambda = Lambda G");
  std::string vmf_shape, vmf_mu, vmf_alpha, vmf_roof;
  bool vmf_perturb = false;
  vmf->add_option("--shape", vmf_shape)->required();
  vmf->add_option("--mu", vmf_mu);
  vmf->add_option("--alpha", vmf_alpha);
  vmf->add_option("--roof", vmf_roof)->required();
  vmf->add_flag("--perturb", vmf_perturb);

  auto* vroot = verify->add_subcommand("root", "B/BC/G2 intertwinings");
  std::string vroot_sys = "B2";
  long vroot_bound = 3;
  bool vroot_perturb = false;
  vroot->add_option("--system", vroot_sys, "B2|B3|BC1|BC2|G2")->required();
  vroot->add_option("--bound", vroot_bound);
  vroot->add_flag("--perturb", vroot_perturb);

  auto* vproj = verify->add_subcommand("projection", "marginal = Doob chain");
  std::string vp_shape, vp_mu, vp_alpha, vp_sigma0;
  double vp_t = 0.5, vp_tol = 1e-10;
  vproj->add_option("--shape", vp_shape)->required();
  vproj->add_option("--mu", vp_mu)->required();
  vproj->add_option("--alpha", vp_alpha);
  vproj->add_option("--sigma0", vp_sigma0)->required();
  vproj->add_option("--t", vp_t);
  vproj->add_option("--tol", vp_tol);

  auto* vbose = verify->add_subcommand("bose", "first row vs rank chain");
  std::string vb_shape;
  int vb_N = 2;
  vbose->add_option("--shape", vb_shape)->required();
  vbose->add_option("--N", vb_N);

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "growth chain paths");
  std::string s_shape, s_mu, s_alpha, s_init_values, s_stop = "absorb", s_out,
              s_svg, s_events;
  long s_init_val = -1;
  sim->add_option("--shape", s_shape)->required();
  sim->add_option("--mu", s_mu);
  sim->add_option("--alpha", s_alpha);
  sim->add_option("--init", s_init_val, "start from omega + N everywhere");
  sim->add_option("--init-values", s_init_values, "explicit row-major state");
  sim->add_option("--stop", s_stop, "absorb | time:T | absorb:i,j");
  sim->add_option("--seed", seed_flag, "RNG seed (or WHITTAKER_SEED)");
  sim->add_option("--out", s_out, "PGM heightmap path");
  sim->add_option("--svg", s_svg, "SVG heightmap path");
  sim->add_option("--events", s_events, "CSV event log path");

  // sample-k ---------------------------------------------------------------
  auto* sk = app.add_subcommand("sample-k", "exact K-kernel samples");
  std::string k_shape, k_mu, k_alpha, k_sigma, k_out;
  long k_reps = 1;
  sk->add_option("--shape", k_shape)->required();
  sk->add_option("--mu", k_mu)->required();
  sk->add_option("--alpha", k_alpha);
  sk->add_option("--sigma", k_sigma)->required();
  sk->add_option("--reps", k_reps);
  sk->add_option("--seed", seed_flag);
  sk->add_option("--out", k_out);

  // hitprob ----------------------------------------------------------------
  auto* hp = app.add_subcommand("hitprob", "hitting probabilities (r = 2)");
  bool hp_entrance = false, hp_exact = false;
  long hp_n = 0, hp_m = 0, hp_table = -1;
  double hp_tol = 1e-10;
  std::string hp_from, hp_to, hp_out;
  hp->add_flag("--entrance", hp_entrance, "from the entrance law");
  hp->add_option("--n", hp_n);
  hp->add_option("--m", hp_m);
  hp->add_option("--tol", hp_tol);
  hp->add_option("--from", hp_from, "start k,l");
  hp->add_option("--to", hp_to, "target n,m");
  hp->add_flag("--exact", hp_exact, "print exact rational");
  hp->add_option("--table", hp_table, "CSV table for indices <= N");
  hp->add_option("--out", hp_out);

  // mc ---------------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Brownian functional Monte Carlo");
  std::string mc_mode, mc_n, mc_m, mc_y;
  int mc_r = 1;
  double mc_t = 1.0, mc_dt = 1e-3;
  long mc_paths = 100000, mc_p = 1;
  mc->add_option("mode", mc_mode, "duality-l | duality-m | phi")->required();
  mc->add_option("--r", mc_r);
  mc->add_option("--t", mc_t);
  mc->add_option("--paths", mc_paths);
  mc->add_option("--dt", mc_dt);
  mc->add_option("--seed", seed_flag);
  mc->add_option("--n", mc_n, "start index (duality-l)");
  mc->add_option("--m", mc_m, "target index (duality-l)");
  mc->add_option("--p", mc_p, "moment order (duality-m)");
  mc->add_option("--y", mc_y, "argument vector (phi)");

  // ldp --------------------------------------------------------------------
  auto* ldp = app.add_subcommand("ldp", "limit-shape variational problem");
  auto* ldps = ldp->add_subcommand("solve", "solve the critical equations");
  std::string l_shape, l_mu, l_boundary;
  ldps->add_option("--shape", l_shape)->required();
  ldps->add_option("--mu", l_mu)->required();
  ldps->add_option("--boundary", l_boundary, "a values, row-major")->required();
  auto* ldpc = ldp->add_subcommand("concentrate", "sampling concentration");
  std::string c_shape, c_mu, c_boundary;
  long c_N = 200, c_reps = 10000;
  ldpc->add_option("--shape", c_shape)->required();
  ldpc->add_option("--mu", c_mu)->required();
  ldpc->add_option("--boundary", c_boundary)->required();
  ldpc->add_option("--N", c_N);
  ldpc->add_option("--reps", c_reps);
  ldpc->add_option("--seed", seed_flag);

  // render -----------------------------------------------------------------
  auto* render = app.add_subcommand("render", "array JSON -> PGM/SVG");
  std::string r_in, r_out;
  long r_maxval = -1;
  bool r_svg = false;
  render->add_option("--in", r_in)->required();
  render->add_option("--out", r_out)->required();
  render->add_option("--maxval", r_maxval);
  render->add_flag("--as-svg", r_svg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coeff)
      return cmd_coeff(family, r, alpha_s, n_s, lambda_s, mu_s, table, out);
    if (*opdump)
      return cmd_operator_dump(op_shape, op_mu, op_alpha, op_roof, op_potential,
                               op_out);
    if (*viq)
      return report_to_exit(
          verify_prop_iq(viq_r, AlphaSpec(parse_longs(viq_alpha)), viq_max,
                         viq_perturb),
          "iq");
    if (*vmf) {
      Shape lam = parse_shape(vmf_shape);
      Shape mu = parse_shape(vmf_mu);
      return report_to_exit(
          verify_mf_rpp(lam, mu, AlphaSpec(parse_longs(vmf_alpha)),
                        parse_longs(vmf_roof), vmf_perturb),
          "mfrpp");
    }
    if (*vroot)
      return report_to_exit(
          verify_root_system(root_system_from_string(vroot_sys), vroot_bound,
                             vroot_perturb),
          "root " + vroot_sys);
    if (*vproj)
      return report_to_exit(
          verify_projection_exact(parse_shape(vp_shape), parse_shape(vp_mu),
                                  AlphaSpec(parse_longs(vp_alpha)),
                                  parse_longs(vp_sigma0), vp_t, vp_tol),
          "projection");
    if (*vbose)
      return report_to_exit(verify_first_row_bose(parse_shape(vb_shape), vb_N),
                            "bose");
    if (*sim)
      return cmd_simulate(s_shape, s_mu, s_alpha,
                          s_init_val >= 0 ? std::optional<long>(s_init_val)
                                          : std::nullopt,
                          s_init_values, s_stop, resolve_seed(seed_flag), s_out,
                          s_svg, s_events);
    if (*sk)
      return cmd_sample_k(k_shape, k_mu, k_alpha, k_sigma, k_reps,
                          resolve_seed(seed_flag), k_out);
    if (*hp)
      return cmd_hitprob(hp_entrance, hp_n, hp_m, hp_tol, hp_from, hp_to,
                         hp_exact, hp_table, hp_out);
    if (*mc)
      return cmd_mc(mc_mode, mc_r, mc_t, mc_paths, mc_dt,
                    resolve_seed(seed_flag), threads, mc_n, mc_m, mc_p, mc_y);
    if (*ldps) return cmd_ldp_solve(l_shape, l_mu, l_boundary);
    if (*ldpc)
      return cmd_ldp_concentrate(c_shape, c_mu, c_boundary, c_N, c_reps,
                                 resolve_seed(seed_flag));
    if (*render) return cmd_render(r_in, r_out, r_maxval, r_svg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand selected\n";
  return 2;
}
