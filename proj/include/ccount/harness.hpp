#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccount/entropy.hpp"
#include "ccount/lambda_opt.hpp"
#include "ccount/sketch.hpp"

namespace ccount {

// a_i = scale * i^{-s}, i = 1..D. With shuffle_ranks the ranks are permuted
// by a seeded Fisher-Yates shuffle; otherwise seed is unused.
std::vector<double> generate_zipf(std::uint64_t D, double s, double scale = 1.0,
                                  std::uint64_t seed = 0, bool shuffle_ranks = false);

// Stream text format: "<index>\t<increment>" per line, '#' lines ignored.
// Throws ParseError (with 1-based line number) or IoError.
std::vector<StreamUpdate> parse_stream(std::istream& in);
std::vector<StreamUpdate> ingest_stream(const std::filesystem::path& path);

// One value per line ('#' lines ignored).
std::vector<double> read_vector_file(const std::filesystem::path& path);

// Histogram A of a stream over [1, D]. Each entry is the correctly rounded
// sum of its increments, so A does not depend on update order. Throws
// UpdateError on an index outside the domain.
std::vector<double> accumulate_stream(std::span<const StreamUpdate> updates, std::uint64_t D);

// sum a_i^alpha over the nonzero entries. Throws DomainError on a negative
// entry.
double exact_moment(std::span<const double> a, double alpha);

enum class McTarget { kMoment, kEntropyTsallis, kEntropyRenyi };

enum class McSampling {
  // Coordinates drawn i.i.d. from S(alpha, 1, F_(alpha)) of the data vector,
  // the exact law of a sketch of a non-negative vector.
  kDirect,
  // Full keyed projection of the data vector through from_vector.
  kProjection,
};

struct McConfig {
  std::vector<double> alphas;
  std::vector<std::size_t> ks;
  std::vector<EstimatorKind> estimators;
  std::size_t trials = 1000;
  std::vector<double> data;
  std::uint64_t base_seed = 1;
  McTarget target = McTarget::kMoment;
  McSampling sampling = McSampling::kDirect;
  // When false the seconds column is written as 0, making the CSV a pure
  // function of the config.
  bool record_timing = true;

  // Throws ConfigError (empty grid, trials == 0, HM with alpha >= 1, MLE
  // with alpha != 0.5, invalid alpha or k, bad data vector).
  void validate() const;
};

struct McRow {
  double alpha = 0.0;
  std::size_t k = 0;
  EstimatorKind estimator = EstimatorKind::kOptimalPower;
  std::size_t trials = 0;
  double true_value = 0.0;
  double emp_mean = 0.0;
  double emp_var = 0.0;  // NaN when trials == 1
  double pred_var = 0.0;
  double norm_rmse = 0.0;  // sqrt(MSE) / true_value
  double seconds = 0.0;
};

struct McReport {
  std::vector<McRow> rows;
};

/// Runs every (alpha, k, estimator) cell. Trial t uses sketch seed
/// base_seed ^ t, so each trial sees an independent projection. Trials run
/// in parallel; per-trial estimates are reduced in trial order, so the
/// report is identical to run_monte_carlo_serial. An estimator failure
/// aborts the run with the failing cell named in the error.
McReport run_monte_carlo(const McConfig& cfg);
McReport run_monte_carlo_serial(const McConfig& cfg);

// The per-trial estimates of one cell, in trial order.
std::vector<double> monte_carlo_cell(const McConfig& cfg, double alpha, std::size_t k,
                                     EstimatorKind kind, bool parallel = true);

// Columns: alpha,k,estimator,trials,true_value,emp_mean,emp_var,pred_var,norm_rmse,seconds
// Reals are printed with 17 significant digits. Rows are sorted by alpha,
// k, then estimator name.
inline constexpr const char* kCsvHeader =
    "alpha,k,estimator,trials,true_value,emp_mean,emp_var,pred_var,norm_rmse,seconds";

void write_csv(const McReport& report, std::ostream& out);
void emit_csv(const McReport& report, const std::filesystem::path& path);
// Inverse of write_csv. Throws ParseError.
McReport read_csv(std::istream& in);

}  // namespace ccount
