// Command-line front end: one subcommand per module plus `verify`.
// Exit codes: 0 success, 1 capacity error or runtime failure, 2 argument
// error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arith_lab/arcs.hpp"
#include "arith_lab/ergodic.hpp"
#include "arith_lab/gowers.hpp"
#include "arith_lab/major_arc.hpp"
#include "arith_lab/oscillation.hpp"
#include "arith_lab/ps_sparse.hpp"
#include "arith_lab/series.hpp"
#include "arith_lab/sieve.hpp"
#include "arith_lab/spectra.hpp"
#include "arith_lab/verify.hpp"

namespace al = arith_lab;
using json = nlohmann::json;

namespace {

struct RunConfig {
  std::int64_t n = 16;
  std::int64_t q = 0;  // 0: floor(exp((log N)^{1/8}))
  int i = -1;
  double c = 1.1;
  int s = 2;
  double r = 2.0;
  double delta = 0.5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool deterministic = false;
  std::string out;

  std::string model = "mangoldt";
  std::string mode = "slice";
  std::string what;
  std::string input;
  std::string method = "both";
  std::string suite = "full";
  std::string kind = "skew";
  std::string weight = "one";
  double alpha = std::numbers::sqrt2 - 1;
  double lambda = 0.1;
  double eps = al::verify::tol::kTechEpsPrime;
  double scale = 0;
  int log2n = 12;
  int samples = 256;
  int trials = 100;
  int oversample = 8;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t k0 = 3;
  std::int64_t grid_delta = 3;
  std::int64_t shift = 0;
  std::int64_t residue = 0;
  std::int64_t m0 = 64;
  int packet_r = 4;
  std::vector<std::int64_t> scales;
  std::vector<std::int64_t> freqs;
  std::vector<std::string> thetas;
  std::int64_t a = 1;
  std::int64_t b = 2;
  std::int64_t m = 1;

  std::int64_t Q() const {
    if (q > 0) return q;
    const double logn = std::log(static_cast<double>(std::max<std::int64_t>(n, 2)));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::exp(std::pow(logn, 0.125)))));
  }
  unsigned workers() const { return deterministic ? 1u : std::max(1u, threads); }
};

// Output sink: --out path or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

al::WeightSeries read_input(const std::string& path) {
  al::require(!path.empty(), "--input is required");
  std::ifstream is(path);
  al::require(static_cast<bool>(is), "cannot open input file " + path);
  return al::io::read_csv(is, path);
}

json complex_json(al::cplx z) { return json::array({z.real(), z.imag()}); }

al::Rational01 parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  al::require(slash != std::string::npos, "frequency must be written a/q: " + s);
  return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

al::ArcModel make_model(const RunConfig& cfg) {
  if (cfg.model == "mangoldt") return al::ArcModel::mangoldt();
  if (cfg.model == "two_squares" || cfg.model == "r2") return al::ArcModel::two_squares();
  if (cfg.model == "divisor") return al::ArcModel::divisor(cfg.scale > 0 ? cfg.scale : static_cast<double>(cfg.n));
  throw std::invalid_argument("unknown model " + cfg.model);
}

int cmd_sieve(const RunConfig& cfg) {
  al::require(cfg.n >= 2, "--n must be >= 2");
  Sink out(cfg.out);
  const std::string what = cfg.what.empty() ? "mangoldt" : cfg.what;
  if (what == "primes") {
    const auto sv = al::FactorSieve::cached(cfg.n);
    const auto ps = al::primes_upto(sv, cfg.n);
    out.os() << "k,p\n";
    for (std::size_t k = 0; k < ps.size(); ++k) out.os() << (k + 1) << ',' << ps[k] << '\n';
    return 0;
  }
  if (what == "spf") {
    const auto sv = al::FactorSieve::cached(cfg.n);
    out.os() << "n,spf\n";
    for (std::int64_t k = 2; k <= cfg.n; ++k) out.os() << k << ',' << sv.spf(k) << '\n';
    return 0;
  }
  al::WeightSeries s;
  if (what == "mangoldt") {
    s = al::von_mangoldt_series(al::FactorSieve::cached(cfg.n), cfg.n);
  } else if (what == "divisor") {
    s = al::divisor_series(cfg.n);
  } else if (what == "r2") {
    s = al::two_squares_series(cfg.n);
  } else if (what == "mobius" || what == "totient") {
    auto mt = al::mobius_totient_series(al::FactorSieve::cached(cfg.n), cfg.n);
    s = what == "mobius" ? mt.first : mt.second;
  } else {
    throw std::invalid_argument("unknown --what for sieve: " + what);
  }
  al::io::write_csv(out.os(), s);
  return 0;
}

int cmd_arcs(const RunConfig& cfg) {
  json j;
  std::vector<al::ReducedFraction> fr;
  al::BigInt lcm;
  if (cfg.i >= 0) {
    const auto sl = al::farey_dyadic_slice(cfg.Q(), cfg.i);
    fr = sl.fractions;
    lcm = sl.lcm;
    j["i"] = cfg.i;
  } else {
    const auto sl = al::farey_slice(cfg.Q());
    fr = sl.fractions;
    lcm = sl.lcm;
    j["i"] = nullptr;
  }
  j["Q"] = cfg.Q();
  json arr = json::array();
  for (const auto& f : fr) arr.push_back(json::array({f.a, f.q}));
  j["fractions"] = arr;
  j["lcm"] = lcm.str();
  Sink out(cfg.out);
  out.os() << j.dump() << '\n';
  return 0;
}

int cmd_weight(const RunConfig& cfg) {
  al::require(cfg.n >= 1, "--n must be >= 1");
  al::ArcMode mode = al::ArcMode::Slice;
  if (cfg.mode == "cumulative") mode = al::ArcMode::Cumulative;
  else if (cfg.mode == "dyadic") mode = al::ArcMode::DyadicSlice;
  else al::require(cfg.mode == "slice", "--mode must be slice, cumulative or dyadic");
  const al::MajorArcWeight w(make_model(cfg), cfg.Q(), mode, std::max(cfg.i, 0));
  Sink out(cfg.out);
  if (cfg.what == "coefficients") {
    json arr = json::array();
    for (std::size_t k = 0; k < w.fractions().size(); ++k) {
      const auto& f = w.fractions()[k];
      const auto z = w.coefficients()[k];
      arr.push_back({{"a", f.a}, {"q", f.q}, {"re", z.real()}, {"im", z.imag()}});
    }
    out.os() << arr.dump() << '\n';
    return 0;
  }
  al::require(cfg.what.empty() || cfg.what == "series", "--what for weight must be series or coefficients");
  al::io::write_csv(out.os(), al::weight_series(w, cfg.n));
  return 0;
}

int cmd_gowers(const RunConfig& cfg) {
  const auto f = read_input(cfg.input);
  al::require(cfg.s >= 1 && cfg.s <= 3, "--s must be 1, 2 or 3");
  al::require(cfg.method == "brute" || cfg.method == "fft" || cfg.method == "both", "--method must be brute, fft or both");
  json j;
  j["s"] = cfg.s;
  j["support"] = f.size();
  std::optional<double> brute, fast;
  if (cfg.method != "fft") brute = al::u_norm_brute(f, cfg.s).raw_power;
  if (cfg.method != "brute") {
    const std::int64_t N = std::max<std::int64_t>(1, static_cast<std::int64_t>(f.size()));
    const auto r = al::normalized_u(f, cfg.s, N, cfg.workers());
    fast = r.raw_power;
    j["raw_power"] = r.raw_power;
    j["normalized"] = r.normalized;
    j["clamped"] = r.clamped;
  }
  if (brute) {
    j["brute"] = *brute;
    if (!fast) j["raw_power"] = *brute;
  }
  if (fast) j["fft"] = *fast;
  if (brute && fast) {
    const double rel = std::abs(*brute - *fast) / std::max({std::abs(*brute), std::abs(*fast), 1e-300});
    j["relative_difference"] = rel;
    j["agree"] = rel <= al::verify::tol::kGowersRel;
  }
  Sink out(cfg.out);
  out.os() << j.dump() << '\n';
  return 0;
}

int cmd_ps(const RunConfig& cfg) {
  const std::string what = cfg.what.empty() ? "members" : cfg.what;
  Sink out(cfg.out);
  if (what == "members") {
    const auto ps = al::ps_members(cfg.c, cfg.n);
    out.os() << "k,m\n";
    for (std::size_t j = 0; j < ps.members.size(); ++j) out.os() << ps.preimages[j] << ',' << ps.members[j] << '\n';
    return 0;
  }
  if (what == "weight") {
    al::io::write_csv(out.os(), al::w_c_series(cfg.c, cfg.n).values);
    return 0;
  }
  if (what == "stats") {
    const auto st = al::tech_lemma_stats(cfg.c, cfg.log2n, static_cast<std::size_t>(cfg.samples), cfg.seed, cfg.eps,
                                         cfg.oversample, cfg.workers());
    if (!cfg.out.empty()) {
      out.os() << "h,l1_norm,exponent\n";
      for (const auto& row : st.rows)
        out.os() << row.h << ',' << al::io::format_double(row.l1_norm) << ',' << al::io::format_double(row.exponent) << '\n';
    }
    json j;
    j["c"] = st.c;
    j["N"] = st.N;
    j["eps_prime"] = st.eps_prime;
    j["samples"] = st.rows.size();
    j["max_exponent"] = std::isfinite(st.max_exponent) ? json(st.max_exponent) : json(nullptr);
    j["bad_fraction"] = st.bad_fraction;
    std::cout << j.dump() << '\n';
    return 0;
  }
  if (what == "reparam") {
    const double golden = (std::sqrt(5.0) - 1) / 2;
    const auto r = al::reparam_check([golden](std::int64_t k) { return al::expi(golden * static_cast<double>(k)); }, cfg.c, cfg.n);
    json j{{"c", r.c}, {"N", r.N}, {"lhs", complex_json(r.lhs)}, {"rhs", complex_json(r.rhs)}, {"difference", r.difference}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  throw std::invalid_argument("unknown --what for ps: " + what);
}

int cmd_osc(const RunConfig& cfg) {
  const std::string what = cfg.what.empty() ? "trace" : cfg.what;
  Sink out(cfg.out);
  if (what == "lepingle") {
    const auto res = al::lepingle_check(static_cast<std::size_t>(cfg.trials), static_cast<std::size_t>(cfg.n), cfg.r,
                                        cfg.seed, cfg.workers());
    json j{{"r", res.r}, {"max_ratio", res.max_ratio}, {"trials", res.trials}, {"length", res.length},
           {"mean_ratio", res.mean_ratio}, {"max_jump_ratio", res.max_jump_ratio}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  if (what == "martingale") {
    const auto f = read_input(cfg.input);
    al::io::write_csv(out.os(), al::dyadic_martingale(f, cfg.k0, static_cast<int>(cfg.m)));
    return 0;
  }
  al::require(what == "trace", "unknown --what for osc: " + what);
  const auto f = read_input(cfg.input);
  std::vector<std::int64_t> times(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) times[k] = f.start() + static_cast<std::int64_t>(k);
  const al::Trace t(times, f.values());
  json j{{"r", cfg.r},
         {"variation", al::variation(t, cfg.r)},
         {"v2", al::variation(t, 2.0)},
         {"jumps", {{"lambda", cfg.lambda}, {"count", al::jump_count(t, cfg.lambda)}}}};
  out.os() << j.dump() << '\n';
  return 0;
}

int cmd_spectra(const RunConfig& cfg) {
  const std::string what = cfg.what.empty() ? "spec" : cfg.what;
  Sink out(cfg.out);
  if (what == "grid") {
    const al::Interval w{cfg.lo, cfg.hi > cfg.lo ? cfg.hi : cfg.lo + cfg.n};
    const auto iv = al::grid_intervals({cfg.k0, cfg.grid_delta, cfg.shift, cfg.residue, w});
    json arr = json::array();
    for (const auto& g : iv)
      arr.push_back({{"k", g.k}, {"interval", {g.interval.lo, g.interval.hi}}, {"core", {g.core.lo, g.core.hi}}});
    json j{{"K0", cfg.k0}, {"Delta", cfg.grid_delta}, {"L", cfg.shift}, {"U", cfg.residue}, {"intervals", arr},
           {"nesting_violations", al::grid_nesting_violations(iv)}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  const auto g = read_input(cfg.input);
  const al::Interval I{cfg.hi > cfg.lo ? cfg.lo : g.start(), cfg.hi > cfg.lo ? cfg.hi : g.end()};
  if (what == "spec") {
    const auto sp = al::spec_delta(g, I, cfg.delta);
    json j{{"interval", {sp.interval.lo, sp.interval.hi}}, {"delta", sp.delta}, {"freqs", sp.freqs}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  if (what == "projection") {
    std::vector<al::Rational01> lam;
    for (const auto& t : cfg.thetas) lam.push_back(parse_rational(t));
    const al::ThresholdLadder ladder(1.0, std::min(cfg.delta, 1.0));
    const auto p = al::projection(g, I, lam, ladder);
    al::io::write_csv(out.os(), p);
    return 0;
  }
  if (what == "sampling") {
    const auto res = al::sampling_check(g, cfg.n, cfg.delta);
    json j{{"N", cfg.n}, {"delta", cfg.delta}, {"count", res.count}, {"bound_ratio", res.bound_ratio},
           {"freqs", res.freqs}, {"energy", res.energy}, {"weighted_l2", res.weighted_l2}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  if (what == "wavepacket") {
    const auto e = al::wavepacket_energy(g, cfg.freqs, cfg.m0, cfg.packet_r, cfg.scales, cfg.workers());
    json j{{"total", e.total}, {"ratio", e.ratio}, {"per_scale", e.per_scale}};
    out.os() << j.dump() << '\n';
    return 0;
  }
  throw std::invalid_argument("unknown --what for spectra: " + what);
}

int cmd_ergodic(const RunConfig& cfg) {
  al::require(cfg.n >= 1, "--n must be >= 1");
  al::require(cfg.kind == "rotation" || cfg.kind == "skew", "--kind must be rotation or skew");
  if (const auto q = al::rational_denominator(cfg.alpha))
    std::cerr << "warning: alpha looks rational (denominator " << *q << "); averages need not converge to the generic limit\n";
  const auto T = cfg.kind == "rotation" ? al::DynamicalSystem::rotation(cfg.alpha) : al::DynamicalSystem::skew(cfg.alpha);
  al::WeightSeries w;
  if (cfg.weight == "one") {
    w = al::WeightSeries("one", 1, std::vector<al::cplx>(static_cast<std::size_t>(cfg.n), 1.0));
  } else if (cfg.weight == "mangoldt") {
    w = al::von_mangoldt_series(al::FactorSieve::cached(std::max<std::int64_t>(cfg.n, 2)), cfg.n);
  } else {
    throw std::invalid_argument("--weight must be one or mangoldt");
  }
  const auto f = al::Observable::character(1, 0);
  const auto g = T.kind() == al::DynamicalSystem::Kind::Skew ? al::Observable::character(0, 1) : al::Observable::character(1, 0);
  const auto x0 = al::random_point(cfg.seed);
  const auto grid = al::lacunary_grid(cfg.n);
  const auto tr = al::average_trace(w, T, f, g, x0, grid, cfg.a, cfg.b).trace;
  if (!cfg.out.empty()) {
    Sink out(cfg.out);
    out.os() << "N,re,im\n";
    for (std::size_t k = 0; k < tr.size(); ++k)
      out.os() << tr.times()[k] << ',' << al::io::format_double(tr.value(k).real()) << ','
               << al::io::format_double(tr.value(k).imag()) << '\n';
  }
  json j{{"system", T.name()},
         {"alpha", cfg.alpha},
         {"N", cfg.n},
         {"final", complex_json(tr.value(tr.size() - 1))},
         {"v2", al::variation(tr, 2.0)},
         {"jumps", {{"lambda", cfg.lambda}, {"count", al::jump_count(tr, cfg.lambda)}}}};
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  int failed = 0;
  al::verify::run_suite(cfg.suite, cfg.workers(), [&](const al::verify::CriterionResult& r) {
    std::cout << al::verify::format_line(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << failed << " criteria failed\n";
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arith_lab: arithmetic weights, major arcs, Gowers norms and ergodic averages"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file; flags override it");
  RunConfig cfg;

  app.add_option("--n", cfg.n, "size parameter N (or trace length)");
  app.add_option("--q", cfg.q, "denominator bound Q (default floor(exp((log N)^{1/8})))");
  app.add_option("--i", cfg.i, "2-adic slice index");
  app.add_option("--c", cfg.c, "Piatetski-Shapiro exponent");
  app.add_option("--s", cfg.s, "Gowers order s");
  app.add_option("--r", cfg.r, "variation exponent r");
  app.add_option("--delta", cfg.delta, "spectral level delta");
  app.add_option("--seed", cfg.seed, "64-bit seed");
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_flag("--deterministic", cfg.deterministic, "sequential reference execution");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--model", cfg.model, "mangoldt | divisor | two_squares");
  app.add_option("--mode", cfg.mode, "slice | cumulative | dyadic");
  app.add_option("--what", cfg.what, "sub-operation");
  app.add_option("--input", cfg.input, "input CSV (n,re,im)");
  app.add_option("--method", cfg.method, "brute | fft | both");
  app.add_option("--suite", cfg.suite, "fast | full");
  app.add_option("--kind", cfg.kind, "rotation | skew");
  app.add_option("--weight", cfg.weight, "one | mangoldt");
  app.add_option("--alpha", cfg.alpha, "rotation number");
  app.add_option("--lambda", cfg.lambda, "jump size");
  app.add_option("--eps", cfg.eps, "epsilon' for the bad-h threshold");
  app.add_option("--scale", cfg.scale, "divisor model scale (default --n)");
  app.add_option("--log2n", cfg.log2n, "log2 N for tech-lemma statistics");
  app.add_option("--samples", cfg.samples, "sampled shifts h");
  app.add_option("--trials", cfg.trials, "Monte-Carlo trials");
  app.add_option("--oversample", cfg.oversample, "Fourier grid oversampling (>= 8)");
  app.add_option("--lo", cfg.lo, "interval start");
  app.add_option("--hi", cfg.hi, "interval end (exclusive)");
  app.add_option("--k0", cfg.k0, "grid base length K0 / martingale K");
  app.add_option("--grid-delta", cfg.grid_delta, "grid prime Delta");
  app.add_option("--shift", cfg.shift, "grid shift L");
  app.add_option("--residue", cfg.residue, "grid residue U");
  app.add_option("--m0", cfg.m0, "frequency denominator M0");
  app.add_option("--packet-r", cfg.packet_r, "wave-packet parameter R");
  app.add_option("--scales", cfg.scales, "wave-packet scales");
  app.add_option("--freqs", cfg.freqs, "frequencies in Z/M0");
  app.add_option("--theta", cfg.thetas, "projection frequencies a/q");
  app.add_option("--a", cfg.a, "first orbit exponent");
  app.add_option("--b", cfg.b, "second orbit exponent");
  app.add_option("--m", cfg.m, "martingale level k");

  const char* names[] = {"sieve", "arcs", "weight", "gowers", "ps", "osc", "spectra", "ergodic", "verify"};
  const char* help[] = {"arithmetic functions from the sieve", "Farey slices as JSON", "major-arc weight series",
                        "Gowers norms of a CSV series", "Piatetski-Shapiro sequences and statistics",
                        "variation, jumps and Lepingle constants", "grids, spectra, sampling and wave packets",
                        "bilinear ergodic averages", "acceptance suite"};
  for (int k = 0; k < 9; ++k) app.add_subcommand(names[k], help[k])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "sieve") return cmd_sieve(cfg);
    if (sub == "arcs") return cmd_arcs(cfg);
    if (sub == "weight") return cmd_weight(cfg);
    if (sub == "gowers") return cmd_gowers(cfg);
    if (sub == "ps") return cmd_ps(cfg);
    if (sub == "osc") return cmd_osc(cfg);
    if (sub == "spectra") return cmd_spectra(cfg);
    if (sub == "ergodic") return cmd_ergodic(cfg);
    if (sub == "verify") return cmd_verify(cfg);
  } catch (const al::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
