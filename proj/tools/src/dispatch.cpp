// dispatch.cpp — subcommand tree, option parsing, and artifact writing.
#include "dispatch.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "primelab/greentao.hpp"
#include "primelab/params.hpp"
#include "primelab/polignac.hpp"
#include "primelab/primes.hpp"
#include "primelab/scanner.hpp"
#include "primelab/serialize.hpp"
#include "primelab/tuples.hpp"
#include "primelab/weights.hpp"

namespace primelab::cli {

namespace {

namespace fs = std::filesystem;

struct Run {
  std::string command;
  std::map<std::string, std::string> params;
  std::string payload;
  bool produced = false;
};

ExecPolicy policy(unsigned threads) {
  ExecPolicy p;
  p.threads = threads;
  return p;
}

std::vector<u64> twin_anchors(u64 limit, const ExecPolicy& pol) {
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = 0;
  PrimeTable table = build_tables(2, limit + 2, opts);
  std::vector<u64> anchors;
  table.for_each_prime(2, limit, [&](u64 p) {
    if (table.is_prime(p + 2)) anchors.push_back(p);
  });
  return anchors;
}

std::vector<u64> read_anchor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open anchor file: " + path);
  std::vector<u64> anchors;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "n") continue;  // accept write_hits_csv output
    size_t used = 0;
    anchors.push_back(std::stoull(line, &used));
    if (used != line.size())
      throw std::domain_error("bad anchor line: " + line);
  }
  return anchors;
}

std::vector<i64> parse_i64_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size()) throw std::domain_error("bad integer list: " + text);
  }
  if (out.empty()) throw std::domain_error("empty integer list");
  return out;
}

double resolve_r(double r, double r_exponent, u64 n) {
  if (r > 0 && r_exponent > 0)
    throw std::domain_error("give either --r or --r-exponent, not both");
  if (r > 0) return r;
  if (r_exponent > 0) return std::pow(static_cast<double>(n), r_exponent);
  throw std::domain_error("one of --r or --r-exponent is required");
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"primelab: prime-constellation and sieve-weight workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value config file");
  std::string out_path;
  unsigned threads = 0;
  app.add_option("--out", out_path,
                 "write the result here plus a <out>.manifest.json sidecar");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  Run run;

  // ---- tuples ---------------------------------------------------------
  auto* tuples_cmd = app.add_subcommand("tuples", "admissible tuple machinery");
  tuples_cmd->require_subcommand(1);
  tuples_cmd->fallthrough();
  {
    auto* c = tuples_cmd->add_subcommand("check", "admissibility with witness");
    auto tuple_s = std::make_shared<std::string>();
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->callback([&run, tuple_s] {
      Tuple t = Tuple::parse(*tuple_s);
      run = {"tuples check", {{"tuple", t.to_string()}},
             json_admissibility(t, is_admissible(t)), true};
    });
  }
  {
    auto* c = tuples_cmd->add_subcommand("narrowest",
                                         "minimum-diameter admissible tuple");
    auto k = std::make_shared<u64>(0);
    auto limit = std::make_shared<u64>(2000);
    c->add_option("--k", *k, "tuple size")->required();
    c->add_option("--limit", *limit, "diameter search cap");
    c->callback([&run, k, limit, &threads] {
      auto t = narrowest_tuple(*k, *limit, policy(threads));
      run = {"tuples narrowest",
             {{"k", std::to_string(*k)}, {"limit", std::to_string(*limit)}},
             json_narrowest(*k, *limit, t), true};
    });
  }
  {
    auto* c = tuples_cmd->add_subcommand(
        "primes-above", "first k primes past k, shifted to start at 0");
    auto k = std::make_shared<u64>(0);
    c->add_option("--k", *k, "tuple size")->required();
    c->callback([&run, k] {
      run = {"tuples primes-above", {{"k", std::to_string(*k)}},
             json_tuple(primes_above_k_tuple(*k)), true};
    });
  }
  {
    auto* c = tuples_cmd->add_subcommand("sseries",
                                         "truncated singular series");
    auto tuple_s = std::make_shared<std::string>();
    auto trunc = std::make_shared<u64>(100'000);
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->add_option("--truncation", *trunc, "Euler product truncation prime");
    c->callback([&run, tuple_s, trunc] {
      Tuple t = Tuple::parse(*tuple_s);
      auto v = singular_series(t, *trunc);
      double lower = singular_series_lower_bound(t.k(), *trunc).value;
      run = {"tuples sseries",
             {{"tuple", t.to_string()}, {"truncation", std::to_string(*trunc)}},
             json_singular_series(t, v, lower), true};
    });
  }

  // ---- params ---------------------------------------------------------
  auto* params_cmd =
      app.add_subcommand("params", "exact-rational parameter planning");
  params_cmd->require_subcommand(1);
  params_cmd->fallthrough();
  {
    auto* c = params_cmd->add_subcommand("crucial",
                                         "the strict (k, l, theta) inequality");
    auto k = std::make_shared<u64>(0);
    auto l = std::make_shared<u64>(0);
    auto theta_s = std::make_shared<std::string>("1");
    c->add_option("--k", *k)->required();
    c->add_option("--l", *l)->required();
    c->add_option("--theta", *theta_s, "level of distribution, rational");
    c->callback([&run, k, l, theta_s] {
      Rat theta = rat_from_string(*theta_s);
      auto r = crucial_lhs(*k, *l, theta);
      run = {"params crucial",
             {{"k", std::to_string(*k)},
              {"l", std::to_string(*l)},
              {"theta", rat_to_string(theta)}},
             json_crucial(*k, *l, theta, r), true};
    });
  }
  {
    auto* c = params_cmd->add_subcommand(
        "c0", "sufficient tuple size at level 1/2 + delta");
    auto delta_s = std::make_shared<std::string>();
    c->add_option("--delta", *delta_s, "positive rational")->required();
    c->callback([&run, delta_s] {
      Rat delta = rat_from_string(*delta_s);
      run = {"params c0", {{"delta", rat_to_string(delta)}},
             json_c0(delta, c0_of_theta(delta)), true};
    });
  }
  {
    auto* c = params_cmd->add_subcommand("minl", "l maximizing the LHS at fixed k");
    auto k = std::make_shared<u64>(0);
    c->add_option("--k", *k)->required();
    c->callback([&run, k] {
      run = {"params minl", {{"k", std::to_string(*k)}},
             json_optimal_l(*k, optimal_l(*k)), true};
    });
  }
  {
    auto* c = params_cmd->add_subcommand("mink",
                                         "smallest k passing at level theta");
    auto theta_s = std::make_shared<std::string>();
    auto l_max = std::make_shared<u64>(50);
    auto grid = std::make_shared<std::string>();
    c->add_option("--theta", *theta_s, "level of distribution, rational");
    c->add_option("--l-max", *l_max, "largest smoothing exponent tried");
    c->add_option("--grid", *grid,
                  "comma-separated theta list; emits theta,k,l,lhs CSV");
    c->callback([&run, theta_s, l_max, grid] {
      if (theta_s->empty() == grid->empty())
        throw std::domain_error("mink: give exactly one of --theta or --grid");
      if (!grid->empty()) {
        std::vector<std::pair<Rat, MinimalKResult>> rows;
        std::stringstream ss(*grid);
        std::string item;
        while (std::getline(ss, item, ',')) {
          Rat theta = rat_from_string(item);
          rows.emplace_back(theta, minimal_k(theta, *l_max));
        }
        if (rows.empty()) throw std::domain_error("mink: empty --grid");
        std::ostringstream os;
        write_mink_grid_csv(os, rows);
        run = {"params mink",
               {{"grid", *grid}, {"l_max", std::to_string(*l_max)}},
               os.str(), true};
        return;
      }
      Rat theta = rat_from_string(*theta_s);
      auto r = minimal_k(theta, *l_max);
      run = {"params mink",
             {{"theta", rat_to_string(theta)}, {"l_max", std::to_string(*l_max)}},
             json_minimal_k(theta, *l_max, r), true};
    });
  }

  // ---- weights --------------------------------------------------------
  auto* weights_cmd =
      app.add_subcommand("weights", "truncated divisor-sum weights and sums");
  weights_cmd->require_subcommand(1);
  weights_cmd->fallthrough();
  struct WeightOpts {
    std::string tuple;
    u64 l = 1;
    u64 n = 0;
    double r = 0;
    double r_exponent = 0;
    double eta = 0;
  };
  auto add_weight_opts = [](CLI::App* c, const std::shared_ptr<WeightOpts>& o,
                            bool with_eta) {
    c->add_option("--tuple", o->tuple, "offsets, e.g. 0,2,6")->required();
    c->add_option("--l", o->l, "smoothing exponent");
    c->add_option("--n", o->n, "sum over n in (N, 2N]")->required();
    auto* r = c->add_option("--r", o->r, "divisor cutoff R");
    c->add_option("--r-exponent", o->r_exponent, "R = N^rho")->excludes(r);
    if (with_eta) c->add_option("--eta", o->eta, "smooth threshold exponent");
  };
  auto weight_params = [](const WeightOpts& o) {
    WeightParams wp;
    wp.tuple = Tuple::parse(o.tuple);
    wp.l = o.l;
    wp.N = o.n;
    wp.R = resolve_r(o.r, o.r_exponent, o.n);
    wp.eta = o.eta;
    return wp;
  };
  auto weight_param_map = [](const WeightParams& wp) {
    return std::map<std::string, std::string>{
        {"tuple", wp.tuple.to_string()},
        {"l", std::to_string(wp.l)},
        {"n", std::to_string(wp.N)},
        {"r", format_double(wp.R)}};
  };
  {
    auto* c = weights_cmd->add_subcommand("s0", "squared-weight sum vs main term");
    auto o = std::make_shared<WeightOpts>();
    add_weight_opts(c, o, false);
    c->callback([&run, o, &threads, weight_params, weight_param_map] {
      WeightParams wp = weight_params(*o);
      run = {"weights s0", weight_param_map(wp),
             json_sum_report(sum_s0(wp, policy(threads))), true};
    });
  }
  {
    auto* c = weights_cmd->add_subcommand(
        "s1", "prime-weighted squared sum at shift h");
    auto o = std::make_shared<WeightOpts>();
    auto h = std::make_shared<u64>(0);
    add_weight_opts(c, o, false);
    c->set_help_flag("--help", "print help");  // frees -h for the shift option
    c->add_option("-h,--h", *h, "shift whose primality is theta-weighted")
        ->required();
    c->callback([&run, o, h, &threads, weight_params, weight_param_map] {
      WeightParams wp = weight_params(*o);
      auto params = weight_param_map(wp);
      params["h"] = std::to_string(*h);
      run = {"weights s1", params,
             json_sum_report(sum_s1(wp, *h, policy(threads))), true};
    });
  }
  {
    auto* c = weights_cmd->add_subcommand(
        "restricted", "mass on n whose product form has a small prime factor");
    auto o = std::make_shared<WeightOpts>();
    add_weight_opts(c, o, true);
    c->callback([&run, o, &threads, weight_params, weight_param_map] {
      WeightParams wp = weight_params(*o);
      auto params = weight_param_map(wp);
      params["eta"] = format_double(wp.eta);
      run = {"weights restricted", params,
             json_restricted(restricted_sum_ratio(wp, policy(threads))), true};
    });
  }
  {
    auto* c = weights_cmd->add_subcommand(
        "criterion", "restricted two-primes detector sum");
    auto o = std::make_shared<WeightOpts>();
    auto theta_s = std::make_shared<std::string>("1");
    auto epsilon = std::make_shared<double>(0.01);
    c->add_option("--tuple", o->tuple, "offsets, e.g. 0,2,6")->required();
    c->add_option("--l", o->l, "smoothing exponent");
    c->add_option("--n", o->n, "sum over n in (N, 2N]")->required();
    c->add_option("--eta", o->eta, "smooth-part threshold exponent");
    c->add_option("--theta", *theta_s, "level of distribution, rational");
    c->add_option("--epsilon", *epsilon, "exponent safety margin");
    c->callback([&run, o, theta_s, epsilon, &threads] {
      WeightParams wp;
      wp.tuple = Tuple::parse(o->tuple);
      wp.l = o->l;
      wp.N = o->n;
      wp.eta = o->eta;
      Rat theta = rat_from_string(*theta_s);
      auto rep = combined_criterion_sum(wp, theta, *epsilon, policy(threads));
      run = {"weights criterion",
             {{"tuple", wp.tuple.to_string()},
              {"l", std::to_string(wp.l)},
              {"n", std::to_string(wp.N)},
              {"eta", format_double(wp.eta)},
              {"theta", rat_to_string(theta)},
              {"epsilon", format_double(*epsilon)}},
             json_criterion(rep), true};
    });
  }
  {
    auto* c = weights_cmd->add_subcommand(
        "tq1", "exact residue polynomial T_{q,1}(1 + alpha)");
    auto k = std::make_shared<u64>(0);
    auto l = std::make_shared<u64>(0);
    auto alpha_s = std::make_shared<std::string>("0");
    c->add_option("--k", *k)->required();
    c->add_option("--l", *l)->required();
    c->add_option("--alpha", *alpha_s, "rational, |alpha| < 1");
    c->callback([&run, k, l, alpha_s] {
      Rat alpha = rat_from_string(*alpha_s);
      run = {"weights tq1",
             {{"k", std::to_string(*k)},
              {"l", std::to_string(*l)},
              {"alpha", rat_to_string(alpha)}},
             json_tq1(*k, *l, alpha, t_q1_polynomial(*k, *l, alpha)), true};
    });
  }

  // ---- scan -----------------------------------------------------------
  auto* scan_cmd =
      app.add_subcommand("scan", "almost-prime constellation scanning");
  scan_cmd->require_subcommand(1);
  scan_cmd->fallthrough();
  {
    auto* c = scan_cmd->add_subcommand("run", "survivor scan over [lo, hi]");
    auto tuple_s = std::make_shared<std::string>();
    auto lo = std::make_shared<u64>(0);
    auto hi = std::make_shared<u64>(0);
    auto c1_s = std::make_shared<std::string>("0.05");
    auto csv = std::make_shared<bool>(false);
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->add_option("--lo", *lo, "window start")->required();
    c->add_option("--hi", *hi, "window end, inclusive")->required();
    c->add_option("--c1", *c1_s, "almost-prime exponent, rational in (0, 1)");
    c->add_flag("--csv", *csv, "emit full records CSV instead of counts JSON");
    c->callback([&run, tuple_s, lo, hi, c1_s, csv, &threads] {
      Tuple t = Tuple::parse(*tuple_s);
      Rat c1 = rat_from_string(*c1_s);
      auto res = scan(*lo, *hi, t, c1, policy(threads));
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_records_csv(os, res.records);
        payload = os.str();
      } else {
        payload = json_scan_counts(*lo, *hi, t, c1, res.counts);
      }
      run = {"scan run",
             {{"tuple", t.to_string()},
              {"lo", std::to_string(*lo)},
              {"hi", std::to_string(*hi)},
              {"c1", rat_to_string(c1)},
              {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }
  {
    auto* c = scan_cmd->add_subcommand(
        "census", "histogram of per-component factor-count vectors");
    auto tuple_s = std::make_shared<std::string>();
    auto lo = std::make_shared<u64>(0);
    auto hi = std::make_shared<u64>(0);
    auto c1_s = std::make_shared<std::string>("0.05");
    auto in = std::make_shared<std::string>();
    auto csv = std::make_shared<bool>(false);
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->add_option("--c1", *c1_s, "almost-prime exponent, rational in (0, 1)");
    c->add_option("--lo", *lo, "window start");
    c->add_option("--hi", *hi, "window end, inclusive");
    c->add_option("--in", *in, "spooled records CSV (skips the scan)");
    c->add_flag("--csv", *csv, "emit pattern,count CSV");
    c->callback([&run, tuple_s, lo, hi, c1_s, in, csv, &threads] {
      Tuple t = Tuple::parse(*tuple_s);
      Rat c1 = rat_from_string(*c1_s);
      std::vector<ConstellationRecord> records;
      if (!in->empty()) {
        std::ifstream f(*in);
        if (!f) throw std::domain_error("cannot open records file: " + *in);
        records = read_records_csv(f);
      } else {
        if (*hi == 0) throw std::domain_error("census: give --in or --lo/--hi");
        records = scan(*lo, *hi, t, c1, policy(threads)).records;
      }
      auto rep = pattern_census(records, t.k(), c1);
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_census_csv(os, rep);
        payload = os.str();
      } else {
        payload = json_census(rep);
      }
      run = {"scan census",
             {{"tuple", t.to_string()},
              {"c1", rat_to_string(c1)},
              {"lo", std::to_string(*lo)},
              {"hi", std::to_string(*hi)},
              {"in", *in},
              {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }
  {
    auto* c = scan_cmd->add_subcommand(
        "pairs", "consecutive integers with matching factorization stats");
    auto limit = std::make_shared<u64>(0);
    auto spec = std::make_shared<std::string>();
    auto csv = std::make_shared<bool>(false);
    c->add_option("--limit", *limit)->required();
    c->add_option("--spec", *spec,
                  "conjunction, e.g. omega=4,Omega=5,d=24 or pattern")
        ->required();
    c->add_flag("--csv", *csv, "emit hit list CSV");
    c->callback([&run, limit, spec, csv, &threads] {
      PairPredicate pred = PairPredicate::parse(*spec);
      auto res = pattern_pair_scan(*limit, pred, policy(threads));
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_hits_csv(os, res.hits);
        payload = os.str();
      } else {
        payload = json_pair_scan(pred, *limit, res);
      }
      run = {"scan pairs",
             {{"limit", std::to_string(*limit)},
              {"spec", pred.to_string()},
              {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }

  // ---- polignac -------------------------------------------------------
  auto* pol_cmd = app.add_subcommand("polignac", "prime gap statistics");
  pol_cmd->require_subcommand(1);
  pol_cmd->fallthrough();
  {
    auto* c = pol_cmd->add_subcommand("spectrum", "consecutive-gap histogram");
    auto limit = std::make_shared<u64>(0);
    auto csv = std::make_shared<bool>(false);
    c->add_option("--limit", *limit)->required();
    c->add_flag("--csv", *csv, "emit gap,count CSV");
    c->callback([&run, limit, csv, &threads] {
      auto s = gap_spectrum(*limit, policy(threads));
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_spectrum_csv(os, s);
        payload = os.str();
      } else {
        payload = json_gap_spectrum(s);
      }
      run = {"polignac spectrum",
             {{"limit", std::to_string(*limit)}, {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }
  {
    auto* c = pol_cmd->add_subcommand("bound", "exact density lower bound");
    auto k = std::make_shared<u64>(0);
    c->add_option("--k", *k)->required();
    c->callback([&run, k] {
      run = {"polignac bound", {{"k", std::to_string(*k)}},
             json_polignac_bound(polignac_lower_bound(*k)), true};
    });
  }
  {
    auto* c = pol_cmd->add_subcommand("summary", "weak vs strong pair counts");
    auto limit = std::make_shared<u64>(0);
    auto max_gap = std::make_shared<u64>(20);
    auto csv = std::make_shared<bool>(false);
    c->add_option("--limit", *limit, "primes up to this bound")->required();
    c->add_option("--max-gap", *max_gap, "largest even gap tabulated");
    c->add_flag("--csv", *csv, "emit gap,weak_count,strong_count CSV");
    c->callback([&run, limit, max_gap, csv, &threads] {
      auto s = weak_strong_summary(*limit, *max_gap, policy(threads));
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_weak_strong_csv(os, s);
        payload = os.str();
      } else {
        payload = json_weak_strong(s);
      }
      run = {"polignac summary",
             {{"limit", std::to_string(*limit)},
              {"max_gap", std::to_string(*max_gap)},
              {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }

  // ---- gt -------------------------------------------------------------
  auto* gt_cmd = app.add_subcommand(
      "gt", "W-trick measure and arithmetic-progression search");
  gt_cmd->require_subcommand(1);
  gt_cmd->fallthrough();
  {
    auto* c = gt_cmd->add_subcommand("wtrick", "residue context mod W");
    auto w = std::make_shared<u64>(0);
    auto tuple_s = std::make_shared<std::string>();
    auto calibrate = std::make_shared<u64>(0);
    c->add_option("--w", *w, "primes up to w form W")->required();
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->add_option("--calibrate", *calibrate,
                  "pick b by prime hits over n <= this bound");
    c->callback([&run, w, tuple_s, calibrate, &threads] {
      Tuple t = Tuple::parse(*tuple_s);
      auto ctx = build_wtrick(*w, t);
      std::string payload = *calibrate
          ? json_calibration(ctx, choose_b(ctx, *calibrate, policy(threads)))
          : json_wtrick(ctx, 20);
      run = {"gt wtrick",
             {{"w", std::to_string(*w)},
              {"tuple", t.to_string()},
              {"calibrate", std::to_string(*calibrate)}},
             payload, true};
    });
  }
  struct NuOpts {
    u64 w = 0;
    std::string tuple;
    i64 b = -1;  // -1 = smallest residue
    u64 n = 0;
    double r = 0;
    double r_exponent = 0;
    u64 window_lo = 0, window_hi = 0;
  };
  auto add_nu_opts = [](CLI::App* c, const std::shared_ptr<NuOpts>& o) {
    c->add_option("--w", o->w, "primes up to w form W")->required();
    c->add_option("--tuple", o->tuple, "offsets, e.g. 0,2,6")->required();
    c->add_option("--b", o->b, "residue (default: smallest in X_W)");
    c->add_option("--n", o->n, "ambient interval size N")->required();
    auto* r = c->add_option("--r", o->r, "divisor cutoff R");
    c->add_option("--r-exponent", o->r_exponent, "R = N^rho")->excludes(r);
    c->add_option("--window-lo", o->window_lo, "window start (default N/4)");
    c->add_option("--window-hi", o->window_hi, "window end (default N/2)");
  };
  auto nu_setup = [](const NuOpts& o) {
    auto ctx = build_wtrick(o.w, Tuple::parse(o.tuple));
    MeasureParams mp;
    if (o.b >= 0) {
      mp.b = static_cast<u64>(o.b);
    } else {
      if (ctx.residues.empty())
        throw std::domain_error("no usable residues: tuple inadmissible below w");
      mp.b = ctx.residues.front();
    }
    mp.N = o.n;
    mp.R = resolve_r(o.r, o.r_exponent, o.n);
    mp.window_lo = o.window_lo;
    mp.window_hi = o.window_hi;
    return std::pair(std::move(ctx), mp);
  };
  auto nu_param_map = [](const NuOpts& o, const MeasureParams& mp) {
    return std::map<std::string, std::string>{
        {"w", std::to_string(o.w)},       {"tuple", o.tuple},
        {"b", std::to_string(mp.b)},      {"n", std::to_string(mp.N)},
        {"r", format_double(mp.R)},       {"window_lo", std::to_string(mp.lo())},
        {"window_hi", std::to_string(mp.hi())}};
  };
  {
    auto* c = gt_cmd->add_subcommand("nu", "measure value at one point");
    auto o = std::make_shared<NuOpts>();
    auto point = std::make_shared<u64>(0);
    add_nu_opts(c, o);
    c->add_option("--at", *point, "evaluation point n")->required();
    c->callback([&run, o, point, nu_setup, nu_param_map] {
      auto [ctx, mp] = nu_setup(*o);
      double v = nu_measure(ctx, mp, *point);
      auto params = nu_param_map(*o, mp);
      params["at"] = std::to_string(*point);
      run = {"gt nu", params, json_nu(mp, *point, v), true};
    });
  }
  {
    auto* c = gt_cmd->add_subcommand("enu", "window average of the measure");
    auto o = std::make_shared<NuOpts>();
    add_nu_opts(c, o);
    c->callback([&run, o, nu_setup, nu_param_map, &threads] {
      auto [ctx, mp] = nu_setup(*o);
      auto rep = expectation_nu(ctx, mp, policy(threads));
      run = {"gt enu", nu_param_map(*o, mp), json_expectation(mp, rep), true};
    });
  }
  {
    auto* c = gt_cmd->add_subcommand("delta", "pair-difference product");
    auto h_s = std::make_shared<std::string>();
    auto tuple_s = std::make_shared<std::string>();
    auto bigw = std::make_shared<u64>(0);
    c->set_help_flag("--help", "print help");  // frees -h for the offset list
    c->add_option("-h,--h", *h_s, "progression offsets, e.g. 0,1")->required();
    c->add_option("--tuple", *tuple_s, "offsets, e.g. 0,2,6")->required();
    c->add_option("--W", *bigw, "modulus W")->required();
    c->callback([&run, h_s, tuple_s, bigw] {
      auto h = parse_i64_list(*h_s);
      Tuple t = Tuple::parse(*tuple_s);
      run = {"gt delta",
             {{"h", *h_s}, {"tuple", t.to_string()}, {"W", std::to_string(*bigw)}},
             json_delta(delta_product(h, t, *bigw)), true};
    });
  }
  {
    auto* c = gt_cmd->add_subcommand("ap", "m-term APs inside an anchor set");
    auto m = std::make_shared<u64>(3);
    auto cap = std::make_shared<u64>(100'000);
    auto file = std::make_shared<std::string>();
    auto twin_limit = std::make_shared<u64>(0);
    auto csv = std::make_shared<bool>(false);
    c->add_option("--m", *m, "progression length");
    c->add_option("--cap", *cap, "record cap");
    c->add_option("--anchors-file", *file, "one anchor per line");
    c->add_option("--twin-limit", *twin_limit,
                  "use twin starts p <= limit as anchors");
    c->add_flag("--csv", *csv, "emit start,step,length CSV");
    c->callback([&run, m, cap, file, twin_limit, csv, &threads] {
      std::vector<u64> anchors;
      if (!file->empty() && *twin_limit)
        throw std::domain_error("give either --anchors-file or --twin-limit");
      if (!file->empty())
        anchors = read_anchor_file(*file);
      else if (*twin_limit)
        anchors = twin_anchors(*twin_limit, policy(threads));
      else
        throw std::domain_error("one of --anchors-file or --twin-limit is required");
      auto res = find_aps(anchors, *m, *cap, policy(threads));
      std::string payload;
      if (*csv) {
        std::ostringstream os;
        write_aps_csv(os, res);
        payload = os.str();
      } else {
        payload = json_aps(res);
      }
      run = {"gt ap",
             {{"m", std::to_string(*m)},
              {"cap", std::to_string(*cap)},
              {"anchors_file", *file},
              {"twin_limit", std::to_string(*twin_limit)},
              {"csv", *csv ? "1" : "0"}},
             payload, true};
    });
  }

  auto started = std::chrono::steady_clock::now();
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  if (!run.produced) {
    err << "error: no subcommand produced output\n";
    return 2;
  }
  if (out_path.empty()) {
    out << run.payload;
    return 0;
  }
  fs::path target(out_path);
  if (const char* dir = std::getenv("OUT_DIR"); dir && target.is_relative())
    target = fs::path(dir) / target;
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  std::ofstream f(target);
  if (!f) {
    err << "error: cannot write " << target.string() << "\n";
    return 3;
  }
  f << run.payload;
  std::ofstream mf(target.string() + ".manifest.json");
  mf << manifest_json(run.command, run.params, wall);
  return 0;
}

}  // namespace primelab::cli
