#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "pivotlab/cube/orientation.hpp"
#include "pivotlab/cube/runner.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/pivot/instances.hpp"
#include "pivotlab/polytope/faces.hpp"
#include "pivotlab/random.hpp"
#include "pivotlab/rational.hpp"
#include "pivotlab/ssg/solve.hpp"

namespace pivotlab::experiment {

using pivotlab::to_string;

enum class ExperimentKind { Lp, Cube, Ssg, Reconstruct };
enum class ReportFormat { Csv, Json };

constexpr std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Lp: return "lp";
    case ExperimentKind::Cube: return "cube";
    case ExperimentKind::Ssg: return "ssg";
    case ExperimentKind::Reconstruct: return "reconstruct";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "lp") return ExperimentKind::Lp;
  if (s == "cube") return ExperimentKind::Cube;
  if (s == "ssg") return ExperimentKind::Ssg;
  if (s == "reconstruct") return ExperimentKind::Reconstruct;
  throw Error(ErrorKind::Parse, "unknown experiment kind '" + std::string(s) + "'");
}

constexpr std::string_view to_string(ReportFormat f) { return f == ReportFormat::Csv ? "csv" : "json"; }

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error(ErrorKind::Parse, "unknown format '" + std::string(s) + "' (expected csv or json)");
}

/// One batch run. `rule` is a pivot rule for lp, a cube rule for cube and a
/// solve method for ssg. The sweep parameter d is the dimension, or the
/// number of non-sink vertices for ssg.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Lp;
  pivot::InstanceKind instance = pivot::InstanceKind::KleeMinty;
  std::string rule = "dantzig";
  std::size_t d_min = 2;
  std::size_t d_max = 2;
  std::optional<std::size_t> n;
  Rational epsilon = Rational(1, 3);
  std::string aof = "km";
  std::string aof_file;
  std::string graph;
  std::string oracle;
  std::size_t budget = std::size_t{1} << 22;
  std::size_t iters = 64;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  ReportFormat format = ReportFormat::Csv;
  bool approx = false;
  std::size_t jobs = 1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline Json to_json(const ExperimentConfig& c) {
  Json j{{"kind", to_string(c.kind)},
         {"instance", pivot::to_string(c.instance)},
         {"rule", c.rule},
         {"d_min", c.d_min},
         {"d_max", c.d_max},
         {"epsilon", rational_to_json(c.epsilon)},
         {"aof", c.aof},
         {"aof_file", c.aof_file},
         {"graph", c.graph},
         {"oracle", c.oracle},
         {"budget", c.budget},
         {"iters", c.iters},
         {"trials", c.trials},
         {"seed", c.seed},
         {"out", c.out},
         {"format", to_string(c.format)},
         {"approx", c.approx},
         {"jobs", c.jobs}};
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  return j;
}

/// Missing keys keep their defaults; unknown keys are an error.
inline ExperimentConfig config_from_json(const Json& j) {
  static const char* known[] = {"kind", "instance", "rule", "d_min", "d_max", "n", "epsilon", "aof", "aof_file",
                                "graph", "oracle", "budget", "iters", "trials", "seed", "out", "format", "approx",
                                "jobs", "d"};
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
      throw Error(ErrorKind::Parse, "unknown config key '" + it.key() + "'");
  ExperimentConfig c;
  try {
    if (j.contains("kind")) c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (j.contains("instance")) c.instance = pivot::parse_instance_kind(j.at("instance").get<std::string>());
    if (j.contains("rule")) c.rule = j.at("rule").get<std::string>();
    if (j.contains("d")) c.d_min = c.d_max = j.at("d").get<std::size_t>();
    if (j.contains("d_min")) c.d_min = j.at("d_min").get<std::size_t>();
    if (j.contains("d_max")) c.d_max = j.at("d_max").get<std::size_t>();
    if (j.contains("n") && !j.at("n").is_null()) c.n = j.at("n").get<std::size_t>();
    if (j.contains("epsilon")) c.epsilon = rational_from_json(j.at("epsilon"));
    if (j.contains("aof")) c.aof = j.at("aof").get<std::string>();
    if (j.contains("aof_file")) c.aof_file = j.at("aof_file").get<std::string>();
    if (j.contains("graph")) c.graph = j.at("graph").get<std::string>();
    if (j.contains("oracle")) c.oracle = j.at("oracle").get<std::string>();
    if (j.contains("budget")) c.budget = j.at("budget").get<std::size_t>();
    if (j.contains("iters")) c.iters = j.at("iters").get<std::size_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = parse_report_format(j.at("format").get<std::string>());
    if (j.contains("approx")) c.approx = j.at("approx").get<bool>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  if (c.d_min > c.d_max) throw Error(ErrorKind::InvalidInput, "d_min exceeds d_max");
  if (c.jobs == 0) throw Error(ErrorKind::InvalidInput, "jobs must be positive");
  return c;
}

/// PIVOTLAB_JOBS, when set to a positive integer, wins over the requested count.
inline std::size_t effective_jobs(std::size_t requested) {
  if (const char* env = std::getenv("PIVOTLAB_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw Error(ErrorKind::InvalidInput, "PIVOTLAB_JOBS must be a positive integer");
  }
  return requested == 0 ? 1 : requested;
}

struct SummaryRow {
  std::size_t d = 0;
  std::size_t trials = 0;
  Rational mean;
  Integer min, max;
  Rational variance;  // sample variance, 0 for a single trial
};

struct Report {
  std::string metric;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<SummaryRow> summary;
  std::optional<Json> document;  // reconstruct output
  std::optional<Json> summary_document;
};

inline std::vector<SummaryRow> summarize(const std::vector<std::pair<std::size_t, Integer>>& samples) {
  std::map<std::size_t, std::vector<Integer>> by_d;
  for (const auto& [d, x] : samples) by_d[d].push_back(x);
  std::vector<SummaryRow> out;
  for (const auto& [d, xs] : by_d) {
    SummaryRow r;
    r.d = d;
    r.trials = xs.size();
    Integer sum = 0;
    r.min = r.max = xs.front();
    for (const auto& x : xs) {
      sum += x;
      r.min = std::min(r.min, x);
      r.max = std::max(r.max, x);
    }
    r.mean = Rational(sum, Integer(xs.size()));
    Rational ss = 0;
    for (const auto& x : xs) ss += (Rational(x) - r.mean) * (Rational(x) - r.mean);
    r.variance = xs.size() > 1 ? Rational(ss / Rational(xs.size() - 1)) : Rational(0);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

struct Trial {
  std::size_t d;
  std::size_t index;  // global trial index, seeds mix64(master, index)
};

struct Outcome {
  std::vector<std::string> row;
  Integer metric;
};

/// Runs `work` on every trial with up to `jobs` threads; results keep trial order.
template <typename Work>
std::vector<Outcome> run_trials(const std::vector<Trial>& trials, std::size_t jobs, Work work) {
  std::vector<Outcome> out(trials.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials.size()) return;
      try {
        out[i] = work(trials[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials.size();
        return;
      }
    }
  };
  const std::size_t threads = std::min(jobs, std::max<std::size_t>(trials.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::vector<Trial> sweep(const ExperimentConfig& c) {
  std::vector<Trial> out;
  std::size_t idx = 0;
  for (std::size_t d = c.d_min; d <= c.d_max; ++d)
    for (std::size_t t = 0; t < c.trials; ++t) out.push_back({d, idx++});
  return out;
}

inline Report lp_report(const ExperimentConfig& c, std::size_t jobs) {
  const auto rule = pivot::parse_pivot_rule(c.rule);
  std::map<std::size_t, std::shared_ptr<const lp::LinearProgram>> fixed;
  if (c.instance != pivot::InstanceKind::RandomBounded)
    for (std::size_t d = c.d_min; d <= c.d_max; ++d)
      fixed[d] = std::make_shared<const lp::LinearProgram>(
          pivot::gen_instance({c.instance, d, 2 * d, c.epsilon, 0}));
  Report rep;
  rep.metric = "pivots";
  rep.header = {"instance", "d", "n", "rule", "seed", "status", "value", "pivots"};
  if (c.approx) rep.header.push_back("value_approx");
  auto outcomes = run_trials(sweep(c), jobs, [&](const Trial& t) {
    const std::uint64_t seed = mix64(c.seed, t.index);
    auto prog = c.instance == pivot::InstanceKind::RandomBounded
                    ? std::make_shared<const lp::LinearProgram>(
                          pivot::random_bounded(t.d, c.n.value_or(2 * t.d), seed))
                    : fixed.at(t.d);
    auto r = lp::solve_simplex(prog, {rule, seed});
    Outcome o;
    o.metric = r.pivots;
    const std::string value = r.value ? to_string(*r.value) : "";
    o.row = {std::string(pivot::to_string(c.instance)), std::to_string(t.d), std::to_string(prog->rows()), c.rule,
             std::to_string(seed), std::string(lp::to_string(r.status)), value, std::to_string(r.pivots)};
    if (c.approx) o.row.push_back(r.value ? to_decimal(*r.value) : "");
    return o;
  });
  std::vector<std::pair<std::size_t, Integer>> samples;
  auto trials = sweep(c);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.rows.push_back(std::move(outcomes[i].row));
    samples.emplace_back(trials[i].d, outcomes[i].metric);
  }
  rep.summary = summarize(samples);
  return rep;
}

inline cube::CubeOrientation make_orientation(const ExperimentConfig& c, std::size_t d) {
  if (c.aof == "km") return cube::klee_minty_orientation(d, c.epsilon);
  if (c.aof == "linear") return cube::binary_orientation(d);
  if (c.aof == "file") return cube::orientation_from_json(read_json_file(c.aof_file));
  throw Error(ErrorKind::Parse, "unknown aof '" + c.aof + "' (expected km, linear or file)");
}

inline Report cube_report(ExperimentConfig c, std::size_t jobs) {
  const auto rule = cube::parse_cube_rule(c.rule);
  std::map<std::size_t, cube::CubeOrientation> orient;
  if (c.aof == "file") {
    auto o = make_orientation(c, 0);
    c.d_min = c.d_max = o.dimension();
    orient.emplace(o.dimension(), std::move(o));
  } else {
    for (std::size_t d = c.d_min; d <= c.d_max; ++d) orient.emplace(d, make_orientation(c, d));
  }
  Report rep;
  rep.metric = "steps";
  rep.header = {"aof", "d", "rule", "seed", "steps", "facet_calls"};
  auto trials = sweep(c);
  auto outcomes = run_trials(trials, jobs, [&](const Trial& t) {
    const std::uint64_t seed = mix64(c.seed, t.index);
    auto r = cube::run_cube_rule(orient.at(t.d), rule, 0, seed);
    Outcome o;
    o.metric = r.steps;
    o.row = {c.aof, std::to_string(t.d), c.rule, std::to_string(seed), std::to_string(r.steps),
             std::to_string(r.facet_calls)};
    return o;
  });
  std::vector<std::pair<std::size_t, Integer>> samples;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.rows.push_back(std::move(outcomes[i].row));
    samples.emplace_back(trials[i].d, outcomes[i].metric);
  }
  rep.summary = summarize(samples);
  return rep;
}

inline Report ssg_report(const ExperimentConfig& c, std::size_t jobs) {
  const auto method = ssg::parse_solve_method(c.rule);
  Report rep;
  rep.metric = "evaluations";
  rep.header = {"vertices", "method", "seed", "value", "residual", "evaluations", "steps"};
  if (c.approx) rep.header.push_back("value_approx");
  auto trials = sweep(c);
  auto outcomes = run_trials(trials, jobs, [&](const Trial& t) {
    const std::uint64_t seed = mix64(c.seed, t.index);
    auto g = ssg::random_stopping_game(t.d, seed);
    Rational value, residual = 0;
    std::size_t evaluations = 0, steps = 0;
    if (method == ssg::SolveMethod::ValueIteration) {
      auto b = ssg::value_iteration(g, c.iters);
      value = b.lower[g.start];
      residual = b.residual;
      evaluations = c.iters;
    } else {
      auto s = method == ssg::SolveMethod::Ludwig ? ssg::ludwig_solve(g, seed) : ssg::strategy_iteration(g);
      value = s.values[g.start];
      evaluations = s.evaluations;
      steps = s.steps;
    }
    Outcome o;
    o.metric = evaluations;
    o.row = {std::to_string(t.d), c.rule, std::to_string(seed), to_string(value), to_string(residual),
             std::to_string(evaluations), std::to_string(steps)};
    if (c.approx) o.row.push_back(to_decimal(value));
    return o;
  });
  std::vector<std::pair<std::size_t, Integer>> samples;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.rows.push_back(std::move(outcomes[i].row));
    samples.emplace_back(trials[i].d, outcomes[i].metric);
  }
  rep.summary = summarize(samples);
  return rep;
}

inline Report reconstruct_report(const ExperimentConfig& c) {
  const auto g = polytope::read_edge_list(c.graph);
  const auto r = polytope::reconstruct_faces(g, c.budget);
  Report rep;
  rep.metric = "faces";
  rep.document = polytope::to_json(r.lattice);
  Json s{{"vertices", g.size()},
         {"F", r.lattice.total()},
         {"min_weight", r.min_weight},
         {"certificates_ok", polytope::certificates_hold(g, r)}};
  if (!c.oracle.empty()) {
    const auto p = polytope::simple_polytope_from_json(read_json_file(c.oracle));
    s["matches_oracle"] = polytope::enumerate_faces(p) == r.lattice;
  }
  rep.summary_document = std::move(s);
  return rep;
}

inline Json summary_json(const Report& r) {
  Json rows = Json::array();
  for (const auto& s : r.summary)
    rows.push_back(Json{{"d", s.d},
                        {"trials", s.trials},
                        {"mean", to_string(s.mean)},
                        {"min", s.min.str()},
                        {"max", s.max.str()},
                        {"variance", to_string(s.variance)}});
  return Json{{"metric", r.metric}, {"summary", rows}};
}

}  // namespace detail

/// Computes every trial in memory. Identical configs give identical reports.
inline Report run_experiment(const ExperimentConfig& c, std::optional<std::size_t> jobs = std::nullopt) {
  const std::size_t j = jobs.value_or(effective_jobs(c.jobs));
  if (c.trials == 0 && c.kind != ExperimentKind::Reconstruct) throw Error(ErrorKind::InvalidInput, "trials must be positive");
  switch (c.kind) {
    case ExperimentKind::Lp: return detail::lp_report(c, j);
    case ExperimentKind::Cube: return detail::cube_report(c, j);
    case ExperimentKind::Ssg: return detail::ssg_report(c, j);
    case ExperimentKind::Reconstruct: return detail::reconstruct_report(c);
  }
  throw Error(ErrorKind::InvalidInput, "unknown experiment kind");
}

inline std::string rows_csv(const Report& r) {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    s += "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
  return s;
}

inline std::string summary_csv(const Report& r) {
  std::string s = "metric,d,trials,mean,min,max,variance\n";
  for (const auto& x : r.summary)
    s += r.metric + "," + std::to_string(x.d) + "," + std::to_string(x.trials) + "," + to_string(x.mean) + "," +
         x.min.str() + "," + x.max.str() + "," + to_string(x.variance) + "\n";
  return s;
}

inline std::string rows_json(const Report& r) {
  if (r.document) return r.document->dump(1) + "\n";
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[r.header[i]] = row[i];
    rows.push_back(std::move(o));
  }
  return Json{{"metric", r.metric}, {"rows", rows}}.dump(1) + "\n";
}

inline std::string summary_text(const Report& r, ReportFormat f) {
  if (r.summary_document) return r.summary_document->dump(1) + "\n";
  return f == ReportFormat::Csv ? summary_csv(r) : detail::summary_json(r).dump(1) + "\n";
}

struct OutputPaths {
  std::string report, summary, log;
};

inline OutputPaths output_paths(const ExperimentConfig& c) {
  const bool json = c.format == ReportFormat::Json || c.kind == ExperimentKind::Reconstruct;
  return {c.out, c.out + (json ? ".summary.json" : ".summary.csv"), c.out + ".log"};
}

namespace detail {

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void append_log(const std::string& path, const std::string& line) {
  std::ofstream f(path, std::ios::app);
  f << timestamp() << " " << line << "\n";
}

}  // namespace detail

/// Runs and writes the report, its summary and a sidecar log with
/// timestamps. On failure the report and summary files are removed and the
/// error is rethrown.
inline Report execute(const ExperimentConfig& c, std::optional<std::size_t> jobs = std::nullopt) {
  if (c.out.empty()) throw Error(ErrorKind::InvalidInput, "config has no output path");
  const auto paths = output_paths(c);
  detail::append_log(paths.log, "start kind=" + std::string(to_string(c.kind)) + " config=" + to_json(c).dump());
  try {
    auto rep = run_experiment(c, jobs);
    const bool json = c.format == ReportFormat::Json || rep.document;
    write_file(paths.report, json ? rows_json(rep) : rows_csv(rep));
    write_file(paths.summary, summary_text(rep, c.format));
    detail::append_log(paths.log, "done rows=" + std::to_string(rep.rows.size()));
    return rep;
  } catch (const std::exception& e) {
    std::error_code ec;
    std::filesystem::remove(paths.report, ec);
    std::filesystem::remove(paths.summary, ec);
    detail::append_log(paths.log, std::string("failed: ") + e.what());
    throw;
  }
}

}  // namespace pivotlab::experiment
