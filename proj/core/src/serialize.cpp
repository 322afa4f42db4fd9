// serialize.cpp — report encoders; JSON built on an ordered document type so
// key order is stable across runs.
#include "primelab/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

namespace primelab {

using ordered = nlohmann::ordered_json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// Doubles are rounded to 12 significant digits before encoding, so emitted
// literals never carry more precision than the documented format.
ordered num(double v) {
  if (!std::isfinite(v)) return ordered(format_double(v));
  return ordered(std::strtod(format_double(v).c_str(), nullptr));
}

std::string dump(const ordered& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string csv_field(const std::string& value) {
  bool need = value.find_first_of(",\"\n\r") != std::string::npos;
  if (!need) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_tuple(const Tuple& t) {
  ordered j;
  j["offsets"] = t.offsets();
  j["k"] = t.k();
  j["diameter"] = t.diameter();
  return dump(j);
}

std::string json_admissibility(const Tuple& t, const AdmissibilityWitness& w) {
  ordered j;
  j["tuple"] = t.to_string();
  j["k"] = t.k();
  j["diameter"] = t.diameter();
  j["admissible"] = w.admissible;
  if (!w.admissible) {
    j["covering_prime"] = w.covering_prime;
  } else {
    ordered omitted = ordered::array();
    for (auto& [p, c] : w.omitted_class) {
      ordered row;
      row["p"] = p;
      row["omitted_class"] = c;
      omitted.push_back(row);
    }
    j["omitted_classes"] = omitted;
  }
  return dump(j);
}

std::string json_narrowest(u64 k, u64 search_limit,
                           const std::optional<Tuple>& t) {
  ordered j;
  j["k"] = k;
  j["search_limit"] = search_limit;
  j["found"] = t.has_value();
  if (t) {
    j["tuple"] = t->to_string();
    j["diameter"] = t->diameter();
  }
  return dump(j);
}

std::string json_singular_series(const Tuple& t, const SingularSeriesValue& v,
                                 double lower_bound) {
  ordered j;
  j["tuple"] = t.to_string();
  j["value"] = num(v.value);
  j["truncation_prime"] = v.truncation_prime;
  j["tail_error_bound"] = num(v.tail_error_bound);
  j["bracket_lo"] = num(v.vanishes ? 0.0 : v.value / v.tail_error_bound);
  j["bracket_hi"] = num(v.vanishes ? 0.0 : v.value * v.tail_error_bound);
  j["vanishes"] = v.vanishes;
  j["k_only_lower_bound"] = num(lower_bound);
  return dump(j);
}

std::string json_crucial(u64 k, u64 l, const Rat& theta,
                         const CrucialResult& r) {
  ordered j;
  j["k"] = k;
  j["l"] = l;
  j["theta"] = rat_to_string(theta);
  j["lhs"] = rat_to_string(r.lhs);
  j["lhs_value"] = num(rat_to_double(r.lhs));
  j["pass"] = r.pass;
  return dump(j);
}

std::string json_c0(const Rat& delta, const Int& c0) {
  ordered j;
  j["delta"] = rat_to_string(delta);
  j["c0"] = c0.get_str();
  return dump(j);
}

std::string json_optimal_l(u64 k, u64 l) {
  ordered j;
  j["k"] = k;
  j["l"] = l;
  return dump(j);
}

std::string json_minimal_k(const Rat& theta, u64 l_max,
                           const MinimalKResult& r) {
  ordered j;
  j["theta"] = rat_to_string(theta);
  j["l_max"] = l_max;
  j["found"] = r.found;
  if (r.found) {
    j["k"] = r.k;
    j["l"] = r.l;
    j["lhs"] = rat_to_string(r.lhs);
  } else {
    j["reason"] = r.reason;
  }
  return dump(j);
}

void write_mink_grid_csv(
    std::ostream& os,
    std::span<const std::pair<Rat, MinimalKResult>> rows) {
  os << "theta,k,l,lhs\n";
  for (const auto& [theta, r] : rows) {
    os << csv_field(rat_to_string(theta)) << ',';
    if (r.found)
      os << r.k << ',' << r.l << ',' << csv_field(rat_to_string(r.lhs));
    else
      os << ",,";
    os << '\n';
  }
}

std::string json_sum_report(const SumReport& r) {
  ordered j;
  j["label"] = r.label;
  j["empirical"] = num(r.empirical);
  j["main_term"] = num(r.main_term);
  j["ratio_defined"] = r.ratio_defined;
  if (r.ratio_defined) j["ratio"] = num(r.ratio);
  j["count_n"] = r.count_n;
  j["log_r"] = num(r.log_r);
  j["singular_series"] = num(r.sseries);
  j["sseries_truncation"] = r.sseries_truncation;
  return dump(j);
}

std::string json_restricted(const RestrictedReport& r) {
  ordered j;
  j["eta"] = num(r.eta);
  j["z"] = num(r.z);
  j["full_sum"] = num(r.full_sum);
  j["restricted_sum"] = num(r.restricted_sum);
  j["ratio"] = num(r.ratio);
  j["ratio_over_eta"] = num(r.eta > 0 ? r.ratio / r.eta : 0.0);
  j["restricted_count"] = r.restricted_count;
  j["driver"] = num(r.driver);
  ordered rows = ordered::array();
  for (const auto& q : r.per_q) {
    ordered row;
    row["q"] = q.q;
    row["sum_q"] = num(q.sum_q);
    row["beta"] = num(q.beta);
    row["lemma_ratio"] = num(q.lemma_ratio);
    rows.push_back(row);
  }
  j["per_q"] = rows;
  return dump(j);
}

std::string json_criterion(const CriterionReport& r) {
  ordered j;
  j["value"] = num(r.value);
  j["verdict_sign"] = r.verdict_sign;
  j["verdict"] = r.verdict_sign > 0 ? "positive" : (r.verdict_sign < 0 ? "negative" : "zero");
  j["r_used"] = num(r.r_used);
  j["epsilon"] = num(r.epsilon);
  j["theta_sum"] = num(r.theta_sum);
  j["penalty_sum"] = num(r.penalty_sum);
  j["surviving_count"] = r.surviving_count;
  return dump(j);
}

std::string json_tq1(u64 k, u64 l, const Rat& alpha, const Rat& value) {
  ordered j;
  j["k"] = k;
  j["l"] = l;
  j["alpha"] = rat_to_string(alpha);
  j["value"] = rat_to_string(value);
  j["value_approx"] = num(rat_to_double(value));
  return dump(j);
}

std::string json_scan_counts(u64 lo, u64 hi, const Tuple& t, const Rat& c1,
                             const ScanCounts& c) {
  ordered j;
  j["lo"] = lo;
  j["hi"] = hi;
  j["tuple"] = t.to_string();
  j["c1"] = rat_to_string(c1);
  j["survivors"] = c.survivors;
  j["two_prime"] = c.two_prime;
  j["consecutive"] = c.consecutive;
  return dump(j);
}

namespace {

std::string pattern_key(const std::vector<u32>& v) {
  std::string s;
  for (u32 x : v) {
    if (!s.empty()) s += ';';
    s += std::to_string(x);
  }
  return s;
}

}  // namespace

std::string json_census(const CensusReport& r) {
  ordered j;
  ordered hist = ordered::object();
  for (const auto& [vec, cnt] : r.histogram) hist[pattern_key(vec)] = cnt;
  j["histogram"] = hist;
  j["distinct"] = r.distinct;
  j["modal"] = pattern_key(r.modal);
  j["modal_count"] = r.modal_count;
  j["cap"] = r.cap;
  j["within_cap"] = r.within_cap;
  return dump(j);
}

std::string json_pair_scan(const PairPredicate& pred, u64 limit,
                           const PairScanResult& r) {
  ordered j;
  j["predicate"] = pred.to_string();
  j["limit"] = limit;
  j["count"] = r.count;
  j["reference"] = num(r.reference);
  j["smallest"] = r.hits.empty() ? ordered(nullptr) : ordered(r.hits.front());
  j["hits"] = r.hits;
  return dump(j);
}

void write_census_csv(std::ostream& os, const CensusReport& r) {
  os << "pattern,count\n";
  for (const auto& [vec, cnt] : r.histogram)
    os << csv_field(pattern_key(vec)) << ',' << cnt << '\n';
}

void write_hits_csv(std::ostream& os, std::span<const u64> hits) {
  os << "n\n";
  for (u64 n : hits) os << n << '\n';
}

std::string json_gap_spectrum(const GapSpectrum& s) {
  ordered j;
  j["limit"] = s.limit;
  j["prime_count"] = s.prime_count;
  j["pairs_total"] = s.pairs_total;
  j["max_gap"] = s.max_gap;
  ordered counts = ordered::object();
  for (const auto& [d, c] : s.counts) counts[std::to_string(d)] = c;
  j["counts"] = counts;
  return dump(j);
}

std::string json_polignac_bound(const PolignacBound& b) {
  ordered j;
  j["k"] = b.k;
  j["bound"] = rat_to_string(b.bound);
  j["bound_value"] = num(b.bound_value);
  j["asymptotic"] = num(b.asymptotic);
  j["ratio"] = num(b.ratio);
  return dump(j);
}

std::string json_weak_strong(const WeakStrongSummary& s) {
  ordered j;
  j["limit"] = s.limit;
  ordered rows = ordered::array();
  for (const auto& r : s.rows) {
    ordered row;
    row["d"] = r.d;
    row["weak"] = r.weak;
    row["strong"] = r.strong;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return dump(j);
}

void write_spectrum_csv(std::ostream& os, const GapSpectrum& s) {
  os << "gap,count\n";
  for (const auto& [d, c] : s.counts) os << d << ',' << c << '\n';
}

void write_weak_strong_csv(std::ostream& os, const WeakStrongSummary& s) {
  os << "gap,weak_count,strong_count\n";
  for (const auto& r : s.rows)
    os << r.d << ',' << r.weak << ',' << r.strong << '\n';
}

std::string json_wtrick(const WTrickContext& ctx, u64 residue_preview) {
  ordered j;
  j["w"] = ctx.w;
  j["W"] = ctx.W;
  j["tuple"] = ctx.tuple.to_string();
  j["r"] = ctx.r();
  j["cardinality"] = ctx.cardinality.get_str();
  j["phi_over_w"] = rat_to_string(ctx.phi_ratio);
  j["phi_over_w_value"] = num(rat_to_double(ctx.phi_ratio));
  u64 shown = std::min<u64>(residue_preview, ctx.residues.size());
  ordered res = ordered::array();
  for (u64 i = 0; i < shown; ++i) res.push_back(ctx.residues[i]);
  j["residues_preview"] = res;
  j["residues_total"] = ctx.residues.size();
  return dump(j);
}

std::string json_calibration(const WTrickContext& ctx, const Calibration& c) {
  ordered j;
  j["w"] = ctx.w;
  j["W"] = ctx.W;
  j["tuple"] = ctx.tuple.to_string();
  j["b"] = c.b;
  j["hits"] = c.hits;
  j["n_max"] = c.n_max;
  return dump(j);
}

std::string json_nu(const MeasureParams& p, u64 n, double value) {
  ordered j;
  j["n"] = n;
  j["b"] = p.b;
  j["N"] = p.N;
  j["R"] = num(p.R);
  j["window_lo"] = p.lo();
  j["window_hi"] = p.hi();
  j["nu"] = num(value);
  return dump(j);
}

std::string json_expectation(const MeasureParams& p,
                             const ExpectationReport& r) {
  ordered j;
  j["b"] = p.b;
  j["N"] = p.N;
  j["R"] = num(p.R);
  j["window_lo"] = r.window_lo;
  j["window_hi"] = r.window_hi;
  j["window_count"] = r.window_count;
  j["mean"] = num(r.mean);
  j["deviation"] = num(r.deviation);
  j["constant_regime"] = r.constant_regime;
  if (r.constant_regime)
    j["window_value"] = num(r.window_value_if_constant);
  return dump(j);
}

std::string json_delta(const DeltaProduct& d) {
  ordered j;
  j["value"] = d.value.get_str();
  j["abs"] = d.abs_value.get_str();
  j["sign"] = d.sign;
  return dump(j);
}

std::string json_aps(const ApSearchResult& r) {
  ordered j;
  ordered list = ordered::array();
  for (const auto& ap : r.aps) {
    ordered row;
    row["start"] = ap.start;
    row["step"] = ap.step;
    row["length"] = ap.length;
    row["members"] = ap.members();
    list.push_back(row);
  }
  j["count"] = r.aps.size();
  j["truncated"] = r.truncated;
  j["cap"] = r.cap;
  j["aps"] = list;
  return dump(j);
}

void write_aps_csv(std::ostream& os, const ApSearchResult& r) {
  os << "start,step,length\n";
  for (const auto& ap : r.aps)
    os << ap.start << ',' << ap.step << ',' << ap.length << '\n';
}

std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          double wall_time_s, bool deterministic) {
  ordered j;
  j["command"] = command;
  ordered p = ordered::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["deterministic"] = deterministic;
  j["wall_time_s"] = num(wall_time_s);
  j["tool_version"] = kToolVersion;
  return dump(j);
}

}  // namespace primelab
