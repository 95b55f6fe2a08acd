// Command-line front end: build sketches from stream files, estimate
// frequency moments and Shannon entropy, print lambda*, run Monte-Carlo
// benchmarks.
//
// Exit codes: 0 success, 2 usage error, 3 domain/config error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccount/entropy.hpp"
#include "ccount/error.hpp"
#include "ccount/estimators.hpp"
#include "ccount/harness.hpp"
#include "ccount/lambda_opt.hpp"
#include "ccount/sketch.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename Parse>
std::vector<T> split_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

double to_real(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw CLI::ValidationError("not a number: '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("not a count: '" + s + "'");
  }
  if (pos != s.size()) throw CLI::ValidationError("not a count: '" + s + "'");
  return static_cast<std::size_t>(v);
}

struct SketchArgs {
  double alpha = 0.0;
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
  std::string input;
  std::string out;
};

int run_sketch(const SketchArgs& a) {
  ccount::Sketch sketch(ccount::SketchConfig{a.alpha, a.k, a.seed, a.domain});
  for (const auto& u : ccount::ingest_stream(a.input)) sketch.update(u);
  ccount::save_sketch(sketch, a.out);
  std::cout << "wrote " << a.out << " (k=" << a.k << ", f1=" << fmt17(sketch.f1()) << ")\n";
  return 0;
}

struct EstimateArgs {
  std::string estimator;
  std::string sketch;
  std::optional<double> lambda;
};

int run_estimate(const EstimateArgs& a) {
  const auto kind = ccount::parse_estimator_kind(a.estimator);
  if (a.lambda && kind != ccount::EstimatorKind::kOptimalPower) {
    throw ccount::DomainError("--lambda applies only to --estimator op");
  }
  const auto sketch = ccount::load_sketch(a.sketch);
  const auto e = kind == ccount::EstimatorKind::kOptimalPower
                     ? ccount::estimate_op(sketch, a.lambda)
                     : ccount::estimate(kind, sketch);
  std::cout << "estimator\t" << ccount::to_string(e.kind) << '\n'
            << "alpha\t" << fmt17(sketch.config().alpha) << '\n'
            << "value\t" << fmt17(e.value) << '\n'
            << "predicted_se\t" << fmt17(e.predicted_se) << '\n';
  if (e.lambda_used) std::cout << "lambda\t" << fmt17(*e.lambda_used) << '\n';
  return 0;
}

struct EntropyArgs {
  std::string route = "tsallis";
  std::string estimator = "op";
  std::string sketch;
};

int run_entropy(const EntropyArgs& a) {
  const auto route = ccount::parse_entropy_route(a.route);
  const auto kind = ccount::parse_estimator_kind(a.estimator);
  const auto sketch = ccount::load_sketch(a.sketch);
  const auto h = ccount::estimate_shannon(sketch, kind, route);
  std::cout << "shannon\t" << fmt17(h.shannon_estimate) << '\n'
            << "route\t" << ccount::to_string(h.route) << '\n'
            << "alpha\t" << fmt17(h.alpha_used) << '\n'
            << "moment_estimate\t" << fmt17(h.moment_estimate) << '\n'
            << "f1\t" << fmt17(h.f1) << '\n';
  return 0;
}

int run_lambda(double alpha) {
  const auto opt = ccount::optimal_lambda(alpha);
  std::cout << "alpha\t" << fmt17(opt.alpha) << '\n'
            << "lambda_star\t" << fmt17(opt.lambda_star) << '\n'
            << "g_at_star\t" << fmt17(opt.g_at_star) << '\n';
  if (opt.at_boundary) std::cout << "at_boundary\t1\n";
  return 0;
}

struct BenchArgs {
  std::string alphas;
  std::string ks;
  std::string estimators = "gm,hm,op";
  std::size_t trials = 1000;
  std::string zipf;
  std::string stream;
  std::string vector;
  std::uint64_t domain = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string target = "moment";
  std::string mode = "direct";
  bool no_timing = false;
};

int run_bench(const BenchArgs& a) {
  ccount::McConfig cfg;
  cfg.alphas = split_list<double>(a.alphas, to_real);
  cfg.ks = split_list<std::size_t>(a.ks, to_count);
  cfg.estimators = split_list<ccount::EstimatorKind>(
      a.estimators, [](const std::string& s) { return ccount::parse_estimator_kind(s); });
  cfg.trials = a.trials;
  cfg.base_seed = a.seed;
  cfg.record_timing = !a.no_timing;
  const int sources = !a.zipf.empty() + !a.stream.empty() + !a.vector.empty();
  if (sources != 1) {
    throw CLI::ValidationError("exactly one of --zipf, --stream, --vector is required");
  }
  if (!a.zipf.empty()) {
    const auto parts = split_list<std::string>(a.zipf, [](const std::string& s) { return s; });
    if (parts.size() != 2) throw CLI::ValidationError("--zipf expects D,s");
    cfg.data = ccount::generate_zipf(to_count(parts[0]), to_real(parts[1]));
  } else if (!a.stream.empty()) {
    if (a.domain == 0) throw CLI::ValidationError("--stream needs --domain");
    cfg.data = ccount::accumulate_stream(ccount::ingest_stream(a.stream), a.domain);
  } else {
    cfg.data = ccount::read_vector_file(a.vector);
  }
  if (a.target == "moment") {
    cfg.target = ccount::McTarget::kMoment;
  } else if (a.target == "tsallis") {
    cfg.target = ccount::McTarget::kEntropyTsallis;
  } else if (a.target == "renyi") {
    cfg.target = ccount::McTarget::kEntropyRenyi;
  } else {
    throw CLI::ValidationError("--target must be moment|tsallis|renyi");
  }
  if (a.mode == "direct") {
    cfg.sampling = ccount::McSampling::kDirect;
  } else if (a.mode == "projection") {
    cfg.sampling = ccount::McSampling::kProjection;
  } else {
    throw CLI::ValidationError("--mode must be direct|projection");
  }

  const auto report = ccount::run_monte_carlo(cfg);
  ccount::emit_csv(report, a.out);
  std::cerr << "wrote " << report.rows.size() << " rows to " << a.out << '\n';
  // Fitted GM variance constant emp_var * k / (F^2 (1 - alpha^2)), next to
  // the pi^2/6 used for pred_var.
  if (cfg.target == ccount::McTarget::kMoment) {
    for (const auto& r : report.rows) {
      if (r.estimator != ccount::EstimatorKind::kGeometricMean || r.trials < 2) continue;
      const double shape = r.alpha < 1.0 ? 1.0 - r.alpha * r.alpha : (r.alpha - 1.0) * (5.0 - r.alpha);
      const double fitted = r.emp_var * static_cast<double>(r.k) / (r.true_value * r.true_value * shape);
      std::cerr << "gm fitted constant alpha=" << r.alpha << " k=" << r.k << ": " << fitted
                << " (model pi^2/6 = 1.6449)\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed Counting sketches: frequency moments and Shannon entropy of "
               "Turnstile streams (natural-log entropies)"};
  app.require_subcommand(1);

  SketchArgs sk;
  auto* sketch_cmd = app.add_subcommand("sketch", "Sketch a stream file (<index>\\t<increment> per line)");
  sketch_cmd->add_option("--alpha", sk.alpha, "Moment order alpha in (0,2), alpha != 1")->required();
  sketch_cmd->add_option("--k", sk.k, "Number of projections")->required();
  sketch_cmd->add_option("--seed", sk.seed, "Projection seed")->required();
  sketch_cmd->add_option("--domain", sk.domain, "Domain size D")->required();
  sketch_cmd->add_option("--input", sk.input, "Stream file")->required();
  sketch_cmd->add_option("--out", sk.out, "Snapshot output path")->required();

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate F_(alpha) from a snapshot");
  est_cmd->add_option("--estimator", est.estimator, "gm|hm|op|mle")->required();
  est_cmd->add_option("--sketch", est.sketch, "Snapshot file")->required();
  est_cmd->add_option("--lambda", est.lambda, "Override lambda for the op estimator");

  EntropyArgs ent;
  auto* ent_cmd = app.add_subcommand("entropy", "Estimate Shannon entropy (natural log) from a snapshot");
  ent_cmd->add_option("--route", ent.route, "tsallis|renyi")->capture_default_str();
  ent_cmd->add_option("--estimator", ent.estimator, "gm|hm|op|mle")->capture_default_str();
  ent_cmd->add_option("--sketch", ent.sketch, "Snapshot file")->required();

  double lambda_alpha = 0.0;
  auto* lambda_cmd = app.add_subcommand("lambda", "Print lambda*(alpha) and g(lambda*; alpha)");
  lambda_cmd->add_option("--alpha", lambda_alpha, "alpha in (0,2), alpha != 1")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo accuracy benchmark, CSV output");
  bench_cmd->add_option("--alphas", bench.alphas, "Comma-separated alphas")->required();
  bench_cmd->add_option("--ks", bench.ks, "Comma-separated sample sizes")->required();
  bench_cmd->add_option("--estimators", bench.estimators, "Comma-separated gm|hm|op|mle")
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell")->capture_default_str();
  bench_cmd->add_option("--zipf", bench.zipf, "Zipf data vector D,s");
  bench_cmd->add_option("--stream", bench.stream, "Stream file as data vector (needs --domain)");
  bench_cmd->add_option("--vector", bench.vector, "Vector file, one value per line");
  bench_cmd->add_option("--domain", bench.domain, "Domain size for --stream");
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV output path")->required();
  bench_cmd->add_option("--target", bench.target, "moment|tsallis|renyi")->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "direct|projection")->capture_default_str();
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Write 0 in the seconds column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sketch_cmd) return run_sketch(sk);
    if (*est_cmd) return run_estimate(est);
    if (*ent_cmd) return run_entropy(ent);
    if (*lambda_cmd) return run_lambda(lambda_alpha);
    if (*bench_cmd) return run_bench(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ccount::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ccount::DecodeError& e) {
    std::cerr << "decode error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ccount::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ccount::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
