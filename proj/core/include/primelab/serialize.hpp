// serialize.hpp — JSON and CSV encodings for report types, plus the run
// manifest sidecar. JSON output uses stable key order; floats carry 12
// significant digits; rationals print as "p/q".
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "primelab/greentao.hpp"
#include "primelab/params.hpp"
#include "primelab/polignac.hpp"
#include "primelab/scanner.hpp"
#include "primelab/tuples.hpp"
#include "primelab/weights.hpp"

namespace primelab {

inline constexpr const char* kToolVersion = "0.1.0";

std::string format_double(double v);  // 12 significant digits

// Tuple machinery
std::string json_admissibility(const Tuple& t, const AdmissibilityWitness& w);
std::string json_tuple(const Tuple& t);
std::string json_narrowest(u64 k, u64 search_limit,
                           const std::optional<Tuple>& t);
std::string json_singular_series(const Tuple& t, const SingularSeriesValue& v,
                                 double lower_bound);

// Parameter planning
std::string json_crucial(u64 k, u64 l, const Rat& theta, const CrucialResult& r);
std::string json_c0(const Rat& delta, const Int& c0);
std::string json_optimal_l(u64 k, u64 l);
std::string json_minimal_k(const Rat& theta, u64 l_max, const MinimalKResult& r);
void write_mink_grid_csv(
    std::ostream& os,
    std::span<const std::pair<Rat, MinimalKResult>> rows);

// Weight sums
std::string json_sum_report(const SumReport& r);
std::string json_restricted(const RestrictedReport& r);
std::string json_criterion(const CriterionReport& r);
std::string json_tq1(u64 k, u64 l, const Rat& alpha, const Rat& value);

// Scanner
std::string json_scan_counts(u64 lo, u64 hi, const Tuple& t, const Rat& c1,
                             const ScanCounts& c);
std::string json_census(const CensusReport& r);
std::string json_pair_scan(const PairPredicate& pred, u64 limit,
                           const PairScanResult& r);
void write_census_csv(std::ostream& os, const CensusReport& r);
void write_hits_csv(std::ostream& os, std::span<const u64> hits);

// Gap statistics
std::string json_gap_spectrum(const GapSpectrum& s);
std::string json_polignac_bound(const PolignacBound& b);
std::string json_weak_strong(const WeakStrongSummary& s);
void write_spectrum_csv(std::ostream& os, const GapSpectrum& s);
void write_weak_strong_csv(std::ostream& os, const WeakStrongSummary& s);

// W-trick and AP search
std::string json_wtrick(const WTrickContext& ctx, u64 residue_preview);
std::string json_calibration(const WTrickContext& ctx, const Calibration& c);
std::string json_nu(const MeasureParams& p, u64 n, double value);
std::string json_expectation(const MeasureParams& p,
                             const ExpectationReport& r);
std::string json_delta(const DeltaProduct& d);
std::string json_aps(const ApSearchResult& r);
void write_aps_csv(std::ostream& os, const ApSearchResult& r);

// Run manifest sidecar: {command, params, deterministic, wall_time_s,
// tool_version}, stable key order.
std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          double wall_time_s, bool deterministic = true);

// RFC-4180 field quoting (quotes only when the value needs them).
std::string csv_field(const std::string& value);

}  // namespace primelab
