#include "ccount/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccount/error.hpp"
#include "ccount/exact_sum.hpp"
#include "ccount/estimators.hpp"
#include "ccount/stable.hpp"

namespace ccount {

std::vector<double> generate_zipf(std::uint64_t D, double s, double scale, std::uint64_t seed,
                                  bool shuffle_ranks) {
  if (D < 1) throw DomainError("zipf needs D >= 1");
  if (!(s > 0.0)) throw DomainError("zipf needs s > 0");
  if (!(scale > 0.0)) throw DomainError("zipf needs scale > 0");
  std::vector<double> a(D);
  for (std::uint64_t i = 0; i < D; ++i) {
    a[i] = scale * std::pow(static_cast<double>(i + 1), -s);
  }
  if (shuffle_ranks) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = D - 1; i > 0; --i) {
      std::swap(a[i], a[rng() % (i + 1)]);
    }
  }
  return a;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

template <typename T>
bool parse_full(std::string_view text, T* out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::vector<StreamUpdate> parse_stream(std::istream& in) {
  std::vector<StreamUpdate> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(line_no, "expected <index><TAB><increment>, got '" + raw + "'");
    }
    StreamUpdate u;
    if (!parse_full(trim(line.substr(0, tab)), &u.index) || u.index < 1) {
      throw ParseError(line_no, "bad index in '" + raw + "'");
    }
    if (!parse_full(trim(line.substr(tab + 1)), &u.increment) || !std::isfinite(u.increment)) {
      throw ParseError(line_no, "bad increment in '" + raw + "'");
    }
    out.push_back(u);
  }
  if (in.bad()) throw IoError("read failure while parsing stream");
  return out;
}

std::vector<StreamUpdate> ingest_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stream file '" + path.string() + "'");
  return parse_stream(in);
}

std::vector<double> read_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vector file '" + path.string() + "'");
  std::vector<double> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    double v = 0.0;
    if (!parse_full(line, &v) || !std::isfinite(v)) {
      throw ParseError(line_no, "bad value '" + raw + "'");
    }
    out.push_back(v);
  }
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return out;
}

std::vector<double> accumulate_stream(std::span<const StreamUpdate> updates, std::uint64_t D) {
  // Exact per-index sums, kept only for touched indices.
  std::unordered_map<std::uint64_t, ExactSum> sums;
  for (const auto& u : updates) {
    if (u.index < 1 || u.index > D) {
      throw UpdateError("index " + std::to_string(u.index) + " outside [1, " + std::to_string(D) +
                        "]");
    }
    sums[u.index].add(u.increment);
  }
  std::vector<double> a(D, 0.0);
  for (const auto& [i, s] : sums) a[i - 1] = s.value();
  return a;
}

double exact_moment(std::span<const double> a, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("exact_moment needs alpha > 0");
  double s = 0.0;
  for (double v : a) {
    if (v < 0.0) throw DomainError("exact_moment needs non-negative entries");
    if (v > 0.0) s += std::pow(v, alpha);
  }
  return s;
}

void McConfig::validate() const {
  if (alphas.empty() || ks.empty() || estimators.empty()) {
    throw ConfigError("Monte-Carlo grid needs at least one alpha, k and estimator");
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 2.0) || a == 1.0) {
      throw ConfigError("alpha must lie in (0, 2) \\ {1}, got " + std::to_string(a));
    }
    for (auto e : estimators) {
      if (e == EstimatorKind::kHarmonicMean && !(a < 1.0)) {
        throw ConfigError("hm requires alpha < 1, got " + std::to_string(a));
      }
      if (e == EstimatorKind::kMleHalf && a != 0.5) {
        throw ConfigError("mle requires alpha == 0.5, got " + std::to_string(a));
      }
    }
  }
  for (auto k : ks) {
    if (k < 2) throw ConfigError("k must be >= 2");
  }
  if (data.empty()) throw ConfigError("data vector is empty");
  double total = 0.0;
  for (double v : data) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("data vector must be finite and non-negative");
    }
    total += v;
  }
  if (!(total > 0.0)) throw ConfigError("data vector is all zeros");
}

namespace {

struct CellTruth {
  double f_alpha = 0.0;
  double f1 = 0.0;
  double target = 0.0;
};

CellTruth truth_for(const McConfig& cfg, double alpha) {
  CellTruth t;
  t.f_alpha = exact_moment(cfg.data, alpha);
  t.f1 = std::accumulate(cfg.data.begin(), cfg.data.end(), 0.0);
  t.target = cfg.target == McTarget::kMoment ? t.f_alpha : shannon_exact(cfg.data);
  return t;
}

double one_trial(const McConfig& cfg, const CellTruth& truth, double alpha, std::size_t k,
                 EstimatorKind kind, std::uint64_t t) {
  const std::uint64_t seed = cfg.base_seed ^ t;
  std::vector<double> x(k);
  double f1 = truth.f1;
  if (cfg.sampling == McSampling::kDirect) {
    const double scale = std::pow(truth.f_alpha, 1.0 / alpha);
    for (std::size_t j = 0; j < k; ++j) {
      double u1 = 0.0;
      double u2 = 0.0;
      keyed_uniforms(seed, 0, j + 1, &u1, &u2);
      x[j] = scale * stable_from_uniforms(alpha, u1, u2);
    }
  } else {
    const SketchConfig sc{alpha, k, seed, cfg.data.size()};
    const Sketch s = from_vector_serial(sc, cfg.data);
    x = s.coordinates();
    f1 = s.f1();
  }
  const double f_hat = estimate(kind, x, alpha).value;
  switch (cfg.target) {
    case McTarget::kMoment:
      return f_hat;
    case McTarget::kEntropyTsallis:
      return tsallis_from_moments(f_hat, f1, alpha);
    case McTarget::kEntropyRenyi:
      return renyi_from_moments(f_hat, f1, alpha);
  }
  return f_hat;
}

std::string cell_name(double alpha, std::size_t k, EstimatorKind kind) {
  std::ostringstream os;
  os << "cell (alpha=" << alpha << ", k=" << k << ", estimator=" << to_string(kind) << ")";
  return os.str();
}

std::vector<double> cell_estimates(const McConfig& cfg, const CellTruth& truth, double alpha,
                                   std::size_t k, EstimatorKind kind, bool parallel) {
  std::vector<double> est(cfg.trials);
  const auto n = static_cast<std::int64_t>(cfg.trials);
  if (!parallel) {
    for (std::int64_t t = 0; t < n; ++t) {
      est[t] = one_trial(cfg, truth, alpha, k, kind, static_cast<std::uint64_t>(t));
    }
    return est;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    try {
      est[t] = one_trial(cfg, truth, alpha, k, kind, static_cast<std::uint64_t>(t));
    } catch (...) {
#pragma omp critical(ccount_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return est;
}

double predicted_for(const McConfig& cfg, const CellTruth& truth, double alpha, std::size_t k,
                     EstimatorKind kind) {
  const double var_f = predicted_variance(kind, alpha, truth.f_alpha, k);
  const double d = 1.0 - alpha;
  switch (cfg.target) {
    case McTarget::kMoment:
      return var_f;
    case McTarget::kEntropyTsallis:
      // d T / d F = -1 / ((alpha - 1) f1^alpha)
      return var_f * std::exp(-2.0 * alpha * std::log(truth.f1)) / (d * d);
    case McTarget::kEntropyRenyi:
      // d H / d F = 1 / ((1 - alpha) F)
      return var_f / (truth.f_alpha * truth.f_alpha * d * d);
  }
  return var_f;
}

McReport run(const McConfig& cfg, bool parallel) {
  cfg.validate();
  McReport report;
  for (double alpha : cfg.alphas) {
    const CellTruth truth = truth_for(cfg, alpha);
    for (std::size_t k : cfg.ks) {
      for (EstimatorKind kind : cfg.estimators) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<double> est;
        try {
          est = cell_estimates(cfg, truth, alpha, k, kind, parallel);
        } catch (const Error& e) {
          throw Error(cell_name(alpha, k, kind) + ": " + e.what());
        }
        const auto stop = std::chrono::steady_clock::now();

        McRow row;
        row.alpha = alpha;
        row.k = k;
        row.estimator = kind;
        row.trials = cfg.trials;
        row.true_value = truth.target;
        const double n = static_cast<double>(est.size());
        double sum = 0.0;
        for (double v : est) sum += v;
        row.emp_mean = sum / n;
        double ss = 0.0;
        double se = 0.0;
        for (double v : est) {
          ss += (v - row.emp_mean) * (v - row.emp_mean);
          se += (v - truth.target) * (v - truth.target);
        }
        row.emp_var = est.size() > 1 ? ss / (n - 1.0) : std::nan("");
        row.pred_var = predicted_for(cfg, truth, alpha, k, kind);
        row.norm_rmse = std::sqrt(se / n) / std::abs(truth.target);
        row.seconds =
            cfg.record_timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
        report.rows.push_back(row);
      }
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const McRow& a, const McRow& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.k != b.k) return a.k < b.k;
    return to_string(a.estimator) < to_string(b.estimator);
  });
  return report;
}

}  // namespace

std::vector<double> monte_carlo_cell(const McConfig& cfg, double alpha, std::size_t k,
                                     EstimatorKind kind, bool parallel) {
  cfg.validate();
  return cell_estimates(cfg, truth_for(cfg, alpha), alpha, k, kind, parallel);
}

McReport run_monte_carlo(const McConfig& cfg) { return run(cfg, true); }
McReport run_monte_carlo_serial(const McConfig& cfg) { return run(cfg, false); }

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const McReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << fmt17(r.alpha) << ',' << r.k << ',' << to_string(r.estimator) << ',' << r.trials << ','
        << fmt17(r.true_value) << ',' << fmt17(r.emp_mean) << ',' << fmt17(r.emp_var) << ','
        << fmt17(r.pred_var) << ',' << fmt17(r.norm_rmse) << ',' << fmt17(r.seconds) << '\n';
  }
}

void emit_csv(const McReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(report, out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

McReport read_csv(std::istream& in) {
  McReport report;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw ParseError(1, "missing or unexpected CSV header");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw ParseError(line_no, "expected 10 columns");
    McRow r;
    auto real = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') throw ParseError(line_no, "bad number '" + s + "'");
      return v;
    };
    auto count = [&](const std::string& s) {
      std::size_t v = 0;
      if (!parse_full(std::string_view(s), &v)) throw ParseError(line_no, "bad count '" + s + "'");
      return v;
    };
    r.alpha = real(f[0]);
    r.k = count(f[1]);
    try {
      r.estimator = parse_estimator_kind(f[2]);
    } catch (const DomainError&) {
      throw ParseError(line_no, "bad estimator '" + f[2] + "'");
    }
    r.trials = count(f[3]);
    r.true_value = real(f[4]);
    r.emp_mean = real(f[5]);
    r.emp_var = real(f[6]);
    r.pred_var = real(f[7]);
    r.norm_rmse = real(f[8]);
    r.seconds = real(f[9]);
    report.rows.push_back(r);
  }
  return report;
}

}  // namespace ccount
