#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "upperset/corpus.hpp"
#include "upperset/duality.hpp"
#include "upperset/json_io.hpp"

using namespace upperset;

namespace {

constexpr const char* kVersion = "0.1.0";

// Bad input; reported with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string builtin, fixture, at, out;
  std::string delta0 = "1", rho = "1/2", tol = "1e-9", window = "10";
  int levels = 12;
  std::size_t base = 64;
  std::uint64_t seed = 7;
  std::size_t n_random = 20;
  std::size_t pairs = 50;
  bool timings = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckerConfig checker_config(const Options& o) {
  CheckerConfig cfg;
  try {
    cfg.delta0 = parse_rational(o.delta0);
    cfg.rho = parse_rational(o.rho);
    cfg.tol = parse_rational(o.tol).get_d();
    cfg.window = parse_rational(o.window);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  cfg.levels = o.levels;
  cfg.direction_samples = o.base;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  return cfg;
}

json config_echo(const Options& o) {
  return {{"delta0", o.delta0}, {"rho", o.rho},   {"levels", o.levels}, {"tol", o.tol},
          {"window", o.window}, {"base", o.base}, {"seed", o.seed}};
}

Fixture load_fixture(const Options& o) {
  if (o.builtin.empty() == o.fixture.empty()) throw InputError("exactly one of --builtin and --fixture is required");
  if (!o.builtin.empty()) {
    auto fx = find_fixture(o.builtin, o.seed);
    if (!fx) throw InputError("unknown builtin '" + o.builtin + "'");
    return std::move(*fx);
  }
  std::ifstream in(o.fixture);
  if (!in) throw InputError("cannot open fixture file '" + o.fixture + "'");
  try {
    return fixture_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed fixture: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed fixture: ") + e.what());
  }
}

Vec parse_point(const std::string& csv, std::size_t dim) {
  Vec v;
  std::stringstream ss(csv);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  } catch (const std::exception& e) {
    throw InputError("bad --at value: " + std::string(e.what()));
  }
  if (v.size() != dim) throw InputError("--at needs " + std::to_string(dim) + " coordinates");
  return v;
}

void emit(const Options& o, const json& report) {
  std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << text;
}

json header(const Options& o, const char* command) {
  return {{"tool", "upperset"}, {"version", kVersion}, {"command", command}, {"config", config_echo(o)}};
}

struct PointResult {
  json report;
  std::size_t mismatches = 0, violations = 0;
};

PointResult run_point(const SetValuedMap& f, const PointLabels& pt, const CheckerConfig& cfg) {
  auto vm = verdict_matrix(f, pt.x0, cfg);
  PointResult r{to_json(vm), 0, vm.artifacts.size()};
  json labels = json::object();
  for (const auto& [n, s] : pt.labels) {
    bool match = vm[n].status == s;
    if (!match) ++r.mismatches;
    labels[to_string(n)] = {{"expected", to_string(s)}, {"got", to_string(vm[n].status)}, {"match", match}};
  }
  r.report["labels"] = labels;
  return r;
}

struct MapResult {
  json points = json::array();
  std::size_t mismatches = 0, violations = 0;
};

MapResult run_map_fixture(const SetValuedMap& f, const std::vector<PointLabels>& points, const CheckerConfig& cfg) {
  MapResult r;
  for (const auto& pt : points) {
    auto p = run_point(f, pt, cfg);
    r.mismatches += p.mismatches;
    r.violations += p.violations;
    r.points.push_back(std::move(p.report));
  }
  return r;
}

int cmd_check(const Options& o) {
  auto t0 = Clock::now();
  auto cfg = checker_config(o);
  auto fx = load_fixture(o);
  const SetValuedMap& f = fx.map ? *fx.map : fx.bivariate->f;
  std::vector<PointLabels> points;
  if (!o.at.empty()) {
    Vec x0 = parse_point(o.at, f.domain_dim());
    PointLabels pt{x0, {}};
    for (const auto& p : fx.points)
      if (p.x0 == x0) pt.labels = p.labels;
    points.push_back(std::move(pt));
  } else {
    points = fx.points;
  }
  if (points.empty()) throw InputError("no point to check: pass --at");
  auto r = run_map_fixture(f, points, cfg);
  json report = header(o, "check");
  report["fixture"] = fx.id;
  report["points"] = std::move(r.points);
  report["summary"] = {{"label_mismatches", r.mismatches}, {"diagram_violations", r.violations}};
  if (o.timings) report["timings"] = {{"total_s", seconds_since(t0)}};
  emit(o, report);
  return r.mismatches + r.violations == 0 ? 0 : 1;
}

std::vector<WeakDualityPair> random_pairs(std::mt19937_64& rng, const DirectionBase& base, std::size_t p,
                                          std::size_t count) {
  std::uniform_int_distribution<int> y(-8, 8), scale(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
  std::vector<WeakDualityPair> out;
  for (std::size_t k = 0; k < count; ++k) {
    Vec ys;
    for (std::size_t j = 0; j < p; ++j) ys.push_back(make_rational(y(rng), 2));
    out.push_back({std::move(ys), Rational(scale(rng)) * base.directions()[pick(rng)]});
  }
  return out;
}

struct DualityOutcome {
  json report;
  bool ok = false;
};

DualityOutcome run_duality(const Fixture& fx, const Options& o, const CheckerConfig& cfg) {
  const auto& b = *fx.bivariate;
  auto base = DirectionBase::fan(b.f.cone_ptr(), std::min<std::size_t>(o.base, 64));
  Vec x0 = fx.duality ? fx.duality->x0 : zeros(b.n);
  if (!o.at.empty()) x0 = parse_point(o.at, b.n);
  DualityConfig dcfg{cfg, cfg.window};
  DualityReport rep = [&] {
    try {
      return fundamental_duality(b, x0, base, dcfg);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  std::mt19937_64 rng(o.seed);
  auto pairs = random_pairs(rng, base, b.p, o.pairs);
  auto weak = weak_duality_check(b, pairs, 50, cfg.window);
  json j = to_json(rep, base);
  j["weak_duality"] = to_json(weak);
  j["x0"] = to_json(x0);
  auto exact = [&](const DualityReport& r) { return r.applied && r.gap.value <= cfg.tol && r.exact_equal.value_or(true); };
  bool strong = exact(rep);
  if (rep.applied && !strong) {
    // The fan misses part of the normal fan of f_X(0); exact equality needs those directions.
    auto refined_base = with_facet_normals(base, rep.lhs);
    auto refined = fundamental_duality(b, x0, refined_base, dcfg);
    strong = exact(refined);
    j["refined"] = to_json(refined, refined_base);
    j["refined"]["note"] = "base extended by the facet normals of f_X(0)";
  }
  j["strong_duality"] = strong;
  return {std::move(j), strong && weak.status == Status::holds};
}

int cmd_duality(const Options& o) {
  auto t0 = Clock::now();
  auto cfg = checker_config(o);
  auto fx = load_fixture(o);
  if (!fx.bivariate) throw InputError("fixture '" + fx.id + "' has no X × Y split");
  auto r = run_duality(fx, o, cfg);
  json report = header(o, "duality");
  report["fixture"] = fx.id;
  report["duality"] = std::move(r.report);
  if (o.timings) report["timings"] = {{"total_s", seconds_since(t0)}};
  emit(o, report);
  return r.ok ? 0 : 1;
}

std::size_t pool_size() {
  std::size_t n = 0;
  if (const char* env = std::getenv("UPPERSET_THREADS")) n = static_cast<std::size_t>(std::max(0L, std::atol(env)));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

// Runs job(i) for i < count on a small pool; results are stored by index.
template <class Job>
void parallel_for(std::size_t count, Job job) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(pool_size(), count); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int cmd_corpus(const Options& o) {
  auto t0 = Clock::now();
  auto cfg = checker_config(o);
  auto fixtures = builtin_fixtures(o.seed);
  std::sort(fixtures.begin(), fixtures.end(), [](const Fixture& a, const Fixture& b) { return a.id < b.id; });
  std::size_t mismatches = 0, violations = 0, duality_failures = 0;
  json entries = json::array();
  for (const auto& fx : fixtures) {
    json e{{"id", fx.id}, {"notes", fx.notes}};
    if (fx.map) {
      auto r = run_map_fixture(*fx.map, fx.points, cfg);
      mismatches += r.mismatches;
      violations += r.violations;
      e["points"] = std::move(r.points);
    } else {
      auto r = run_duality(fx, o, cfg);
      bool expected = fx.duality && !fx.duality->regular ? !r.report["applied"].get<bool>() : r.ok;
      if (!expected) ++duality_failures;
      e["duality"] = std::move(r.report);
      e["as_expected"] = expected;
    }
    entries.push_back(std::move(e));
  }
  auto t1 = Clock::now();

  std::vector<json> random_reports(o.n_random);
  std::vector<std::size_t> random_violations(o.n_random, 0);
  CheckerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(o.n_random, [&](std::size_t i) {
    std::mt19937_64 rng(o.seed * 1000003u + i);
    auto f = random_affine_map(rng, 1);
    json pts = json::array();
    for (int k = 0; k < 5; ++k) {
      auto vm = verdict_matrix(f, random_point(rng, 1), inner);
      random_violations[i] += vm.artifacts.size();
      pts.push_back(to_json(vm));
    }
    random_reports[i] = {{"index", i}, {"map", to_json(f)}, {"points", std::move(pts)}};
  });
  for (auto v : random_violations) violations += v;

  json report = header(o, "corpus");
  report["config"]["n_random"] = o.n_random;
  report["fixtures"] = std::move(entries);
  report["random"] = std::move(random_reports);
  report["summary"] = {{"label_mismatches", mismatches},
                       {"diagram_violations", violations},
                       {"duality_failures", duality_failures}};
  if (o.timings) report["timings"] = {{"fixtures_s", std::chrono::duration<double>(t1 - t0).count()},
                                      {"total_s", seconds_since(t0)}};
  emit(o, report);
  return mismatches + violations + duality_failures == 0 ? 0 : 1;
}

int cmd_export(const Options& o) {
  auto fx = load_fixture(o);
  emit(o, to_json(fx));
  return 0;
}

void add_source(CLI::App* c, Options& o) {
  auto* b = c->add_option("--builtin", o.builtin, "builtin fixture id");
  auto* f = c->add_option("--fixture", o.fixture, "fixture JSON file");
  b->excludes(f);
}

void add_config(CLI::App* c, Options& o) {
  c->add_option("--delta0", o.delta0, "initial X radius");
  c->add_option("--rho", o.rho, "radius ratio in (0,1)");
  c->add_option("--levels", o.levels, "number of radius levels");
  c->add_option("--tol", o.tol, "numeric tolerance");
  c->add_option("--window", o.window, "Z window half-width");
  c->add_option("--base", o.base, "direction fan size");
  c->add_option("--seed", o.seed, "seed for random fixtures and pairs");
  c->add_option("--out", o.out, "write the report here instead of stdout");
  c->add_flag("--timings", o.timings, "include wall-clock timings (breaks byte stability)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuity and duality checks for set-valued maps into upper closed sets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "verdict matrix at a point, compared to fixture labels");
  add_source(check, o);
  add_config(check, o);
  check->add_option("--at", o.at, "point as comma-separated rationals");

  auto* duality = app.add_subcommand("duality", "strong and weak duality for a bivariate fixture");
  add_source(duality, o);
  add_config(duality, o);
  duality->add_option("--at", o.at, "x0 as comma-separated rationals");
  duality->add_option("--pairs", o.pairs, "random dual pairs for the weak duality check");

  auto* corpus = app.add_subcommand("corpus", "all builtin fixtures plus seeded random maps");
  add_config(corpus, o);
  corpus->add_option("--n-random", o.n_random, "number of random convex maps (5 points each)");
  corpus->add_option("--pairs", o.pairs, "random dual pairs per duality fixture");

  auto* exp = app.add_subcommand("export", "print a builtin fixture as JSON");
  add_source(exp, o);
  exp->add_option("--seed", o.seed, "seed for random fixtures");
  exp->add_option("--out", o.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*check) return cmd_check(o);
    if (*duality) return cmd_duality(o);
    if (*corpus) return cmd_corpus(o);
    if (*exp) return cmd_export(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
