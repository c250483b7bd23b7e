// pivotlab command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "pivotlab/cube/haehnle.hpp"
#include "pivotlab/cube/recurrences.hpp"
#include "pivotlab/experiment/experiment.hpp"
#include "pivotlab/lp/io.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/polytope/faces.hpp"
#include "pivotlab/ssg/solve.hpp"

using namespace pivotlab;
namespace ex = pivotlab::experiment;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

// Report to stdout when no path is given; through execute() otherwise.
void run_or_print(ex::ExperimentConfig cfg, std::size_t jobs) {
  const auto j = ex::effective_jobs(jobs);
  if (!cfg.out.empty()) {
    auto rep = ex::execute(cfg, j);
    std::cerr << "wrote " << rep.rows.size() << " rows to " << cfg.out << "\n";
    return;
  }
  auto rep = ex::run_experiment(cfg, j);
  const bool json = cfg.format == ex::ReportFormat::Json;
  std::cout << (json ? ex::rows_json(rep) : ex::rows_csv(rep));
  std::cerr << ex::summary_text(rep, cfg.format);
}

std::string table_csv(const cube::RecurrenceTable& t, bool approx) {
  using cube::RecurrenceKind;
  std::string s;
  if (cube::is_sequence(t.kind())) {
    s = approx ? "n,value,value_approx\n" : "n,value\n";
    for (const auto& [n, v] : t.terms()) {
      s += std::to_string(n) + "," + to_string(v);
      if (approx) s += "," + to_decimal(v);
      s += "\n";
    }
    return s;
  }
  const bool f = t.kind() == RecurrenceKind::FKk, g = t.kind() == RecurrenceKind::GRf;
  s = "d,n,value";
  if (f) s += ",closed_bound";
  if (g) s += ",envelope_approx";
  if (approx) s += ",value_approx";
  s += "\n";
  for (std::size_t d = 1; d <= t.d_max(); ++d)
    for (std::size_t n = 0; n <= t.n_max(); ++n) {
      const auto& v = t.at(d, n);
      s += std::to_string(d) + "," + std::to_string(n) + "," + to_string(v);
      if (f) s += "," + cube::f_closed_bound(d, n).str();
      if (g) {
        const double env = d >= 2 && n >= 1
                               ? std::exp(cube::kRandomFacetGrowthK * std::sqrt(double(n) * std::log(double(d))))
                               : 1.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", env);
        s += std::string(",") + buf;
      }
      if (approx) s += "," + to_decimal(v);
      s += "\n";
    }
  return s;
}

Json table_json(const cube::RecurrenceTable& t) {
  Json rows = Json::array();
  if (cube::is_sequence(t.kind())) {
    for (const auto& [n, v] : t.terms()) rows.push_back(Json{{"n", n}, {"value", to_string(v)}});
  } else {
    for (std::size_t d = 1; d <= t.d_max(); ++d)
      for (std::size_t n = 0; n <= t.n_max(); ++n)
        rows.push_back(Json{{"d", d}, {"n", n}, {"value", to_string(t.at(d, n))}});
  }
  return Json{{"kind", cube::to_string(t.kind())}, {"rows", rows}};
}

cube::MonomialFamily family_for(const std::string& name, std::size_t d, std::size_t n, const std::string& file) {
  if (!file.empty()) return cube::monomial_family_from_json(read_json_file(file));
  if (name == "index-sum") return cube::index_sum_family(d, n);
  if (name == "path") return cube::path_family(d, n);
  throw Error(ErrorKind::InvalidInput, "give --file or --family index-sum|path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pivotlab: exact simplex pivot rules, cube orientations, polytope graphs and stochastic games"};
  app.require_subcommand(1);
  std::size_t jobs = 1;
  bool jobs_given = false;
  const auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "worker threads (PIVOTLAB_JOBS overrides)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { jobs_given = true; });
  };

  // lp solve
  auto* lp_cmd = app.add_subcommand("lp", "linear programs");
  lp_cmd->require_subcommand(1);
  auto* lp_solve = lp_cmd->add_subcommand("solve", "solve generated instances or an LP file");
  ex::ExperimentConfig lp_cfg;
  lp_cfg.kind = ex::ExperimentKind::Lp;
  std::string instance = "km", lp_file, epsilon = "1/3", lp_format = "csv";
  std::size_t lp_d = 3, lp_n = 0;
  bool verbose_trace = false;
  lp_solve->add_option("--instance", instance, "cube|km|rand")->check(CLI::IsMember({"cube", "km", "rand"}));
  lp_solve->add_option("--d", lp_d, "dimension")->check(CLI::PositiveNumber);
  lp_solve->add_option("--n", lp_n, "inequalities for rand (default 2d)");
  lp_solve->add_option("--epsilon", epsilon, "Klee-Minty parameter, p/q");
  lp_solve->add_option("--rule", lp_cfg.rule, "dantzig|bland|redge|rfacet")
      ->check(CLI::IsMember({"dantzig", "bland", "redge", "rfacet"}));
  lp_solve->add_option("--seed", lp_cfg.seed, "master seed");
  lp_solve->add_option("--trials", lp_cfg.trials, "trials")->check(CLI::PositiveNumber);
  lp_solve->add_option("--out", lp_cfg.out, "report path (CSV); stdout if absent");
  lp_solve->add_option("--format", lp_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  lp_solve->add_flag("--approx", lp_cfg.approx, "add decimal value column");
  lp_solve->add_option("--file", lp_file, "solve this LP JSON file once and print the result");
  add_jobs(lp_solve);
  lp_solve->add_flag("--trace", verbose_trace, "with --file: keep the vertex trace in the output");

  // cube run
  auto* cube_cmd = app.add_subcommand("cube", "abstract objective functions on the cube");
  cube_cmd->require_subcommand(1);
  auto* cube_run = cube_cmd->add_subcommand("run", "Random Edge / Random Facet on a cube orientation");
  ex::ExperimentConfig cube_cfg;
  cube_cfg.kind = ex::ExperimentKind::Cube;
  cube_cfg.rule = "rfacet";
  std::size_t cube_d = 3;
  std::optional<std::size_t> cube_dmax;
  std::string cube_format = "csv";
  cube_run->add_option("--d", cube_d, "dimension (start of the sweep)")->check(CLI::Range(1, 20));
  cube_run->add_option("--dmax", cube_dmax, "last dimension of the sweep")->check(CLI::Range(1, 20));
  cube_run->add_option("--aof", cube_cfg.aof, "km|linear|file")->check(CLI::IsMember({"km", "linear", "file"}));
  cube_run->add_option("--aof-file", cube_cfg.aof_file, "orientation JSON for --aof file");
  cube_run->add_option("--rule", cube_cfg.rule, "redge|rfacet")->check(CLI::IsMember({"redge", "rfacet"}));
  cube_run->add_option("--trials", cube_cfg.trials, "trials per dimension")->check(CLI::PositiveNumber);
  cube_run->add_option("--seed", cube_cfg.seed, "master seed");
  cube_run->add_option("--out", cube_cfg.out, "report path; stdout if absent");
  add_jobs(cube_run);
  cube_run->add_option("--format", cube_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  // rec table
  auto* rec_cmd = app.add_subcommand("rec", "recurrence tables");
  rec_cmd->require_subcommand(1);
  auto* rec_table = rec_cmd->add_subcommand("table", "tabulate f, g, a, b or h exactly");
  std::string rec_kind = "f", rec_out = "csv", rec_file;
  std::size_t rec_dmax = 4, rec_nmax = 16, rec_every = 1;
  bool rec_approx = false, rec_check = false;
  rec_table->add_option("--kind", rec_kind, "f|g|a|b|h")->check(CLI::IsMember({"f", "g", "a", "b", "h"}));
  rec_table->add_option("--dmax", rec_dmax, "largest d (2-index tables)");
  rec_table->add_option("--nmax", rec_nmax, "largest n");
  rec_table->add_option("--every", rec_every, "sequences: keep n = 1,2,3, multiples of this, and nmax");
  rec_table->add_option("--out", rec_out, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  rec_table->add_option("--file", rec_file, "write here instead of stdout");
  rec_table->add_flag("--approx", rec_approx, "add decimal value column");
  rec_table->add_flag("--recheck", rec_check, "re-evaluate the recurrence at every entry");

  // haehnle search|verify
  auto* hae_cmd = app.add_subcommand("haehnle", "monomial families");
  hae_cmd->require_subcommand(1);
  auto* hae_search = hae_cmd->add_subcommand("search", "longest valid family sequence (<= 12 monomials)");
  std::size_t hae_d = 2, hae_n = 2;
  hae_search->add_option("--d", hae_d, "degree")->required();
  hae_search->add_option("--n", hae_n, "variables")->required();
  auto* hae_verify = hae_cmd->add_subcommand("verify", "check a family sequence");
  std::string hae_family, hae_file;
  hae_verify->add_option("--family", hae_family, "index-sum|path")->check(CLI::IsMember({"index-sum", "path"}));
  hae_verify->add_option("--file", hae_file, "family JSON");
  hae_verify->add_option("--d", hae_d, "degree");
  hae_verify->add_option("--n", hae_n, "variables");

  // reconstruct
  auto* rec_faces = app.add_subcommand("reconstruct", "face lattice of a simple polytope from its graph");
  ex::ExperimentConfig rc_cfg;
  rc_cfg.kind = ex::ExperimentKind::Reconstruct;
  rec_faces->add_option("--graph", rc_cfg.graph, "edge list, one 'u v' per line")->required();
  rec_faces->add_option("--oracle", rc_cfg.oracle, "polytope JSON to compare against");
  rec_faces->add_option("--budget", rc_cfg.budget, "state budget for the ordering search");
  rec_faces->add_option("--out", rc_cfg.out, "lattice JSON path; stdout if absent");

  // ssg solve
  auto* ssg_cmd = app.add_subcommand("ssg", "simple stochastic games");
  ssg_cmd->require_subcommand(1);
  auto* ssg_solve = ssg_cmd->add_subcommand("solve", "solve a game file");
  std::string game_file, method = "ludwig", ssg_out;
  std::uint64_t ssg_seed = 0;
  std::size_t iters = 64, leak = 0;
  ssg_solve->add_option("--game", game_file, "game JSON")->required();
  ssg_solve->add_option("--method", method, "ludwig|policy|vi")->check(CLI::IsMember({"ludwig", "policy", "vi"}));
  ssg_solve->add_option("--seed", ssg_seed, "seed for ludwig");
  ssg_solve->add_option("--iters", iters, "value-iteration rounds");
  ssg_solve->add_option("--leak", leak, "route every move through a 2^-k leak to the 0-sink");
  ssg_solve->add_option("--out", ssg_out, "result JSON path; stdout if absent");

  // experiment run
  auto* exp_cmd = app.add_subcommand("experiment", "batch experiments");
  exp_cmd->require_subcommand(1);
  auto* exp_run = exp_cmd->add_subcommand("run", "run a config file");
  std::string config_file;
  exp_run->add_option("--config", config_file, "experiment JSON")->required()->check(CLI::ExistingFile);
  add_jobs(exp_run);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lp_solve) {
      if (!lp_file.empty()) {
        auto prog = lp::linear_program_from_json(read_json_file(lp_file));
        auto r = lp::solve_simplex(prog, {pivot::parse_pivot_rule(lp_cfg.rule), lp_cfg.seed});
        auto j = lp::to_json(r);
        if (!verbose_trace) {
          j.erase("trace");
          j.erase("trace_bases");
        }
        emit(lp_cfg.out, j.dump(1) + "\n");
        return 0;
      }
      lp_cfg.instance = pivot::parse_instance_kind(instance);
      lp_cfg.d_min = lp_cfg.d_max = lp_d;
      if (lp_n) lp_cfg.n = lp_n;
      lp_cfg.epsilon = parse_rational(epsilon);
      lp_cfg.format = ex::parse_report_format(lp_format);
      run_or_print(lp_cfg, jobs);
    } else if (*cube_run) {
      cube_cfg.d_min = cube_d;
      cube_cfg.d_max = cube_dmax.value_or(cube_d);
      cube_cfg.format = ex::parse_report_format(cube_format);
      if (cube_cfg.aof == "file" && cube_cfg.aof_file.empty())
        throw Error(ErrorKind::InvalidInput, "--aof file needs --aof-file");
      if (cube_cfg.d_min > cube_cfg.d_max) throw Error(ErrorKind::InvalidInput, "--dmax below --d");
      run_or_print(cube_cfg, jobs);
    } else if (*rec_table) {
      auto t = cube::recurrence_table(cube::parse_recurrence_kind(rec_kind), rec_dmax, rec_nmax, rec_every);
      if (rec_check && !t.recheck()) throw Error(ErrorKind::OracleMismatch, "table fails its own recurrence");
      emit(rec_file, rec_out == "csv" ? table_csv(t, rec_approx) : table_json(t).dump(1) + "\n");
    } else if (*hae_search) {
      auto r = cube::haehnle_search(hae_d, hae_n);
      Json j{{"d", hae_d},
             {"n", hae_n},
             {"t", r.t},
             {"bound", cube::haehnle_bound(hae_d, hae_n).str()},
             {"states", r.states},
             {"witness", cube::to_json(r.witness)}};
      std::cout << j.dump(1) << "\n";
    } else if (*hae_verify) {
      auto fam = family_for(hae_family, hae_d, hae_n, hae_file);
      auto chk = cube::haehnle_verify(fam);
      Json j{{"valid", chk.valid}, {"t", fam.size()}};
      if (chk.violation) {
        const auto& v = *chk.violation;
        j["violation"] = {{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"m_i", v.m_i}, {"m_k", v.m_k}};
      }
      std::cout << j.dump(1) << "\n";
      return chk.valid ? 0 : 1;
    } else if (*rec_faces) {
      auto rep = rc_cfg.out.empty() ? ex::run_experiment(rc_cfg, 1) : ex::execute(rc_cfg, 1);
      if (rc_cfg.out.empty()) std::cout << ex::rows_json(rep);
      std::cerr << rep.summary_document->dump() << "\n";
      if (rep.summary_document->contains("matches_oracle") && !rep.summary_document->at("matches_oracle").get<bool>())
        return 1;
    } else if (*ssg_solve) {
      auto g = ssg::game_from_json(read_json_file(game_file));
      auto report = ssg::validate_game(g);
      if (leak > 0) g = ssg::with_leak(g, leak);
      else if (!report.valid()) {
        for (const auto& d : report.defects)
          std::cerr << "defect: " << ssg::to_string(d.kind) << " at vertex " << d.vertex << ": " << d.message << "\n";
        throw Error(ErrorKind::InvalidInput, "game failed validation");
      }
      Json j;
      switch (ssg::parse_solve_method(method)) {
        case ssg::SolveMethod::Ludwig: j = ssg::to_json(g, ssg::ludwig_solve(g, ssg_seed)); break;
        case ssg::SolveMethod::Policy: j = ssg::to_json(g, ssg::strategy_iteration(g)); break;
        case ssg::SolveMethod::ValueIteration: j = ssg::to_json(g, ssg::value_iteration(g, iters)); break;
      }
      j["method"] = method;
      emit(ssg_out, j.dump(1) + "\n");
    } else if (*exp_run) {
      auto cfg = ex::config_from_json(read_json_file(config_file));
      const auto j = ex::effective_jobs(jobs_given ? jobs : cfg.jobs);
      if (cfg.out.empty()) {
        run_or_print(cfg, j);
      } else {
        auto rep = ex::execute(cfg, j);
        std::cerr << "wrote " << cfg.out << " (" << rep.rows.size() << " rows)\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "pivotlab: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pivotlab: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
