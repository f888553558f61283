// One pass/fail line per acceptance criterion; exit code 1 if any criterion fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <thread>

#include "upperset/conjugate.hpp"
#include "upperset/continuity.hpp"
#include "upperset/corpus.hpp"
#include "upperset/duality.hpp"
#include "upperset/hausdorff.hpp"
#include "upperset/scalarize.hpp"

using namespace upperset;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

template <class Job>
void parallel_for(std::size_t count, Job job) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("UPPERSET_THREADS"))
    if (long v = std::atol(env); v > 0) workers = static_cast<std::size_t>(v);
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
  for (std::size_t t = 1; t < std::min(workers, count); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool same_set(const UpperSet& a, const UpperSet& b) {
  auto ab = set_order_leq(a, b), ba = set_order_leq(b, a);
  return ab.exact && ba.exact && ab.holds && ba.holds;
}

std::vector<Fixture> duality_fixtures() {
  std::vector<Fixture> out;
  for (auto& fx : builtin_fixtures())
    if (fx.bivariate) out.push_back(std::move(fx));
  return out;
}

Vec random_dual_direction(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> w(0, 3);
  Vec z(m);
  do
    for (auto& e : z) e = -w(rng);
  while (is_zero(z));
  return z;
}

Outcome corpus_labels() {
  auto t0 = Clock::now();
  std::size_t total = 0, matched = 0;
  std::string bad;
  for (const auto& fx : builtin_fixtures()) {
    if (!fx.map) continue;
    for (const auto& pt : fx.points) {
      if (pt.labels.empty()) continue;
      auto vm = verdict_matrix(*fx.map, pt.x0);
      for (const auto& [n, s] : pt.labels) {
        ++total;
        if (vm[n].status == s)
          ++matched;
        else
          bad += " " + fx.id + "@" + to_string(pt.x0) + ":" + to_string(n) + "=" + to_string(vm[n].status);
      }
    }
  }
  double t = since(t0);
  return {matched == total && total > 0 && t < 30,
          std::to_string(matched) + "/" + std::to_string(total) + " labels reproduced in " + fmt("%.1f s", t) + bad};
}

Outcome diagram_soundness() {
  auto t0 = Clock::now();
  const std::size_t maps = 100, points = 5;
  std::vector<std::size_t> violations(maps, 0), decisive(maps, 0);
  CheckerConfig cfg;
  cfg.threads = 1;
  parallel_for(maps, [&](std::size_t i) {
    std::mt19937_64 rng(20240 + i);
    auto f = random_affine_map(rng, 1);
    for (std::size_t k = 0; k < points; ++k) {
      auto vm = verdict_matrix(f, random_point(rng, 1), cfg);
      violations[i] += vm.artifacts.size();
      for (auto n : all_notions()) decisive[i] += vm[n].decisive();
    }
  });
  std::size_t v = 0, d = 0;
  for (std::size_t i = 0; i < maps; ++i) v += violations[i], d += decisive[i];
  double t = since(t0);
  return {v == 0 && t < 300,
          std::to_string(v) + " violations over " + std::to_string(maps * points) + " matrices (" + std::to_string(d) +
              "/" + std::to_string(maps * points * kNotionCount) + " decisive) in " + fmt("%.1f s", t)};
}

Outcome weak_duality() {
  std::size_t fixtures = 0, failures = 0;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> y(-8, 8);
  auto run = [&](const BivariateMap& b) {
    std::vector<WeakDualityPair> pairs;
    for (int k = 0; k < 50; ++k) {
      Vec ys;
      for (std::size_t j = 0; j < b.p; ++j) ys.push_back(make_rational(y(rng), 2));
      pairs.push_back({std::move(ys), random_dual_direction(rng, b.f.value_dim())});
    }
    ++fixtures;
    if (weak_duality_check(b, pairs, 50).status != Status::holds) ++failures;
  };
  for (const auto& fx : duality_fixtures()) run(*fx.bivariate);
  std::mt19937_64 gen(32);
  for (int k = 0; k < 10; ++k) run(random_bivariate_map(gen, 1 + k % 2));
  return {failures == 0, std::to_string(fixtures) + " PL fixtures x 50 pairs, " + std::to_string(failures) + " failures"};
}

Outcome strong_duality() {
  auto t0 = Clock::now();
  std::size_t exact = 0, tried = 0;
  std::string bad;
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> y(-8, 8);
  for (const auto& fx : duality_fixtures()) {
    if (!fx.duality->regular || fx.id == "random-bivariate") continue;
    ++tried;
    const auto& b = *fx.bivariate;
    auto base = DirectionBase::fan(b.f.cone_ptr(), 16);
    auto rep = fundamental_duality(b, fx.duality->x0, base);
    bool ok = rep.applied && rep.regularity.status == Status::holds && rep.gap.value <= 1e-9 &&
              rep.exact_equal == std::optional<bool>(true);
    std::vector<WeakDualityPair> cloud;
    for (const auto& [z, ys] : rep.family.entries) cloud.push_back({ys, z});
    for (int k = 0; k < 200; ++k)
      cloud.push_back({Vec{make_rational(y(rng), 4)}, random_dual_direction(rng, b.f.value_dim())});
    ok = ok && same_set(pair_cloud_rhs(b, cloud), rep.rhs);
    if (ok)
      ++exact;
    else
      bad += " " + fx.id;
  }
  double t = since(t0);
  return {exact >= 3 && exact == tried && t < 60,
          std::to_string(exact) + "/" + std::to_string(tried) + " fixtures with gap 0 and family = pair cloud in " +
              fmt("%.1f s", t) + bad};
}

Outcome conjugate_routes() {
  // z >= |x - 5/8|: its conjugate maximizer 5/8 is on the dyadic grid only from level 8 on.
  SetValuedMap shifted(1, orthant_cone(1), affine_body({{1}, {1}}, {make_rational(-5, 8), make_rational(5, 8)}, {{1}, {-1}}),
                       "shifted-abs");
  std::vector<SetValuedMap> maps{ray_translate_map(), switched_cone_map(), shifted};
  for (const auto& fx : duality_fixtures())
    if (fx.id != "random-bivariate") maps.push_back(fx.bivariate->f);
  std::size_t pairs = 0, bad = 0;
  double worst = 0, coarse = 0;
  for (const auto& f : maps) {
    const std::size_t n = f.domain_dim();
    std::vector<Vec> xstars{zeros(n)};
    for (std::size_t j = 0; j < n; ++j) xstars.push_back(unit_vector(n, j)), xstars.push_back(unit_vector(n, j, -1));
    auto dirs = DirectionBase::fan(f.cone_ptr(), 4).directions();
    for (const auto& xs : xstars)
      for (const auto& z : dirs) {
        auto scalar = neg_conjugate_scalar_route(f, {xs, z});
        if (!scalar.conjugate.is_finite()) continue;
        ++pairs;
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double gap = 0;
        for (int level = 2; level <= 10; level += 2) {
          auto d = neg_conjugate_direct(f, {xs, z}, {Vec(n, -8), Vec(n, 8), level});
          gap = level_gap(z, scalar.conjugate, d.level);
          if (gap > prev) monotone = false;
          if (level == 2) coarse = std::max(coarse, gap);
          prev = gap;
        }
        worst = std::max(worst, gap);
        if (!monotone || gap > 1e-6) ++bad;
      }
  }
  return {bad == 0 && pairs > 0, std::to_string(pairs) + " finite pairs on " + std::to_string(maps.size()) +
                                     " PL fixtures, worst gap " + fmt("%.3g at 2^2", coarse) +
                                     fmt(", %.3g at 2^10, ", worst) +
                                     std::to_string(bad) + " non-monotone or > 1e-6"};
}

Outcome parabola_certificate() {
  std::string detail;
  bool ok = true;
  for (const char* e : {"0.1", "0.5", "1"}) {
    auto eps = parse_rational(e);
    auto c = parabola_separation_certificate(eps);
    bool exact = eps * eps * Rational(c.t) * c.t * c.t * c.t > 1 + 4 * Rational(c.t) * c.t;
    bool formula = c.formula == parabola_formula(eps, c.t) && c.formula > 1;
    ok = ok && c.exact && exact && formula && c.distance > 1 + 1e-6;
    detail += std::string(detail.empty() ? "" : ", ") + "eps " + e + ": t=" + std::to_string(c.t) +
              fmt(" formula %.4f", c.formula) + fmt(" distance %.4f", c.distance);
  }
  return {ok, detail};
}

Outcome fenchel_young() {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> c(-12, 12);
  std::size_t checks = 0, bad = 0;
  auto sample = [&](std::size_t n) {
    Vec x;
    for (std::size_t j = 0; j < n; ++j) x.push_back(make_rational(c(rng), 4));
    return x;
  };
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + k % 2;
    auto f = random_convex_pl(rng, n);
    auto fs = conjugate(f);
    auto fss = conjugate(fs);
    auto pw = to_piecewise(f);
    for (int s = 0; s < 8; ++s) {
      Vec x = sample(n), xs = sample(n);
      Extended a = f(x), b = fs(xs);
      ++checks;
      if (fss(x) != a) ++bad;
      if (fs(xs) != scalar_conjugate(pw, xs)) ++bad;
      if (a.is_finite() && b.is_finite() && a.value() + b.value() < dot(x, xs)) ++bad;
    }
  }
  return {bad == 0, "200 random PL functions, " + std::to_string(checks) + " sampled points, " + std::to_string(bad) +
                        " violations"};
}

Outcome reconstruction() {
  std::vector<SetValuedMap> maps{ray_translate_map(), switched_cone_map()};
  for (const auto& fx : duality_fixtures()) maps.push_back(fx.bivariate->f);
  std::mt19937_64 rng(81);
  for (int k = 0; k < 10; ++k) maps.push_back(random_affine_map(rng, 1));
  std::size_t checks = 0, bad = 0;
  for (const auto& f : maps)
    for (int k = 0; k < 6; ++k) {
      Vec x = random_point(rng, f.domain_dim());
      auto v = evaluate(f, x);
      auto base = with_facet_normals(DirectionBase::fan(f.cone_ptr(), 8), v);
      ++checks;
      if (!same_set(reconstruct_value(v, base), v)) ++bad;
    }
  auto c = orthant_cone();
  auto par = parabola_set(c);
  Vec lo{-10, -10}, hi{10, 10};
  auto g64 = window_hausdorff(reconstruct_value(par, DirectionBase::fan(c, 64)), par, lo, hi);
  auto g256 = window_hausdorff(reconstruct_value(par, DirectionBase::fan(c, 256)), par, lo, hi);
  return {bad == 0 && g256.value < g64.value,
          std::to_string(checks - bad) + "/" + std::to_string(checks) + " polyhedral values reconstructed exactly; parabola gap" +
              fmt(" %.4g at fan 64", g64.value) + fmt(", %.4g at fan 256", g256.value)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"corpus labels", corpus_labels},           {"implication diagram", diagram_soundness},
      {"weak duality", weak_duality},             {"strong duality", strong_duality},
      {"conjugate routes", conjugate_routes},     {"parabola certificate", parabola_certificate},
      {"Fenchel-Young and biconjugate", fenchel_young}, {"reconstruction", reconstruction},
  };
  int failed = 0, id = 0;
  for (const auto& c : criteria) {
    ++id;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
