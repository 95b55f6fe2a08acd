#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ccount/error.hpp"
#include "ccount/harness.hpp"
#include "doctest.h"

using namespace ccount;

namespace {

McConfig small_config() {
  McConfig c;
  c.alphas = {0.5, 0.9};
  c.ks = {10, 20};
  c.estimators = {EstimatorKind::kOptimalPower, EstimatorKind::kGeometricMean};
  c.trials = 200;
  c.data = generate_zipf(1000, 1.0);
  c.base_seed = 99;
  c.record_timing = false;
  return c;
}

std::string csv_of(const McReport& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

}  // namespace

TEST_CASE("generate_zipf") {
  const auto a = generate_zipf(4, 1.0);
  REQUIRE(a.size() == 4);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 0.5);
  CHECK(a[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(a[3] == 0.25);
  CHECK(exact_moment(a, 1.0) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK(generate_zipf(1, 2.0, 7.5) == std::vector<double>{7.5});
  auto shuffled = generate_zipf(100, 1.0, 1.0, 5, true);
  CHECK(shuffled != generate_zipf(100, 1.0));
  CHECK(shuffled == generate_zipf(100, 1.0, 1.0, 5, true));
  std::sort(shuffled.begin(), shuffled.end(), std::greater<>());
  CHECK(shuffled == generate_zipf(100, 1.0));
  CHECK_THROWS(generate_zipf(0, 1.0));
  CHECK_THROWS(generate_zipf(4, 0.0));
}

TEST_CASE("parse_stream") {
  std::istringstream ok("3\t2.0\n1\t-0.5\n");
  const auto u = parse_stream(ok);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == StreamUpdate{3, 2.0});
  CHECK(u[1] == StreamUpdate{1, -0.5});

  std::istringstream comments("# header\n\n2\t1e3\n# trailing\n");
  CHECK(parse_stream(comments) == std::vector<StreamUpdate>{{2, 1000.0}});

  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_stream(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("abc") == 1);
  CHECK(line_of("1\t2\n# c\n5\n") == 3);
  CHECK(line_of("1\t2\nx\t3\n") == 2);
  CHECK(line_of("1\tnan\n") == 1);
  CHECK(line_of("-1\t2\n") == 1);
  CHECK(line_of("1\t2\textra\n") == 1);

  CHECK_THROWS_AS(ingest_stream("/nonexistent/stream.tsv"), IoError);
}

TEST_CASE("stream and vector files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto stream_path = dir / "ccount_harness_stream.tsv";
  const auto vec_path = dir / "ccount_harness_vec.txt";
  {
    std::ofstream(stream_path) << "# t\n2\t1.5\n4\t2\n2\t-0.5\n";
    std::ofstream(vec_path) << "# v\n1\n0\n2.5\n";
  }
  const auto updates = ingest_stream(stream_path);
  CHECK(accumulate_stream(updates, 4) == std::vector<double>{0.0, 1.0, 0.0, 2.0});
  CHECK_THROWS_AS(accumulate_stream(updates, 3), UpdateError);
  CHECK(read_vector_file(vec_path) == std::vector<double>{1.0, 0.0, 2.5});
  std::filesystem::remove(stream_path);
  std::filesystem::remove(vec_path);
}

TEST_CASE("exact_moment") {
  CHECK(exact_moment(std::vector<double>(4, 1.0), 0.5) == 4.0);
  CHECK(exact_moment(std::vector<double>{4, 9}, 0.5) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(exact_moment(std::vector<double>{1, 3}, 0.99) == doctest::Approx(3.9672220125165121).epsilon(1e-14));
  CHECK(exact_moment(std::vector<double>{0, 2, 0}, 0.3) == doctest::Approx(std::pow(2.0, 0.3)));
  CHECK_THROWS_AS(exact_moment(std::vector<double>{1, -2}, 0.5), DomainError);
}

TEST_CASE("McConfig validation") {
  CHECK_NOTHROW(small_config().validate());
  auto c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.alphas = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.estimators = {EstimatorKind::kHarmonicMean};
  c.alphas = {1.5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.estimators = {EstimatorKind::kMleHalf};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.alphas = {0.5};
  CHECK_NOTHROW(c.validate());
  c = small_config();
  c.ks = {1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.data = {1.0, -1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.data = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.alphas = {1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run_monte_carlo(c), ConfigError);
}

TEST_CASE("report rows: order, fields, single trial") {
  auto c = small_config();
  c.alphas = {0.9, 0.5};
  const auto r = run_monte_carlo(c);
  REQUIRE(r.rows.size() == 8);
  CHECK(r.rows[0].alpha == 0.5);
  CHECK(r.rows[0].k == 10);
  CHECK(r.rows[0].estimator == EstimatorKind::kGeometricMean);
  CHECK(r.rows[1].estimator == EstimatorKind::kOptimalPower);
  CHECK(r.rows[2].k == 20);
  CHECK(r.rows[7].alpha == 0.9);
  for (const auto& row : r.rows) {
    CHECK(row.trials == 200);
    CHECK(row.true_value == doctest::Approx(exact_moment(c.data, row.alpha)).epsilon(1e-15));
    CHECK(row.norm_rmse >= 0.0);
    CHECK(row.pred_var == doctest::Approx(predicted_variance(row.estimator, row.alpha, row.true_value, row.k)));
    CHECK(row.seconds == 0.0);
  }

  c.trials = 1;
  c.alphas = {0.9};
  c.ks = {10};
  c.estimators = {EstimatorKind::kOptimalPower};
  const auto one = run_monte_carlo(c);
  REQUIRE(one.rows.size() == 1);
  CHECK(std::isnan(one.rows[0].emp_var));
  const auto est = monte_carlo_cell(c, 0.9, 10, EstimatorKind::kOptimalPower);
  REQUIRE(est.size() == 1);
  CHECK(one.rows[0].emp_mean == est[0]);
}

TEST_CASE("determinism: byte-identical CSV, parallel equals serial") {
  auto c = small_config();
  const std::string a = csv_of(run_monte_carlo(c));
  CHECK(a == csv_of(run_monte_carlo(c)));
  CHECK(a == csv_of(run_monte_carlo_serial(c)));
  c.sampling = McSampling::kProjection;
  c.trials = 30;
  const std::string p = csv_of(run_monte_carlo(c));
  CHECK(p == csv_of(run_monte_carlo_serial(c)));
  c.base_seed = 100;
  CHECK(p != csv_of(run_monte_carlo(c)));
}

TEST_CASE("CSV: header, round trip, file output") {
  CHECK(csv_of(McReport{}) == std::string(kCsvHeader) + "\n");
  const auto r = run_monte_carlo(small_config());
  const std::string text = csv_of(r);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  std::istringstream in(text);
  const auto back = read_csv(in);
  REQUIRE(back.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(back.rows[i].alpha == r.rows[i].alpha);
    CHECK(back.rows[i].k == r.rows[i].k);
    CHECK(back.rows[i].estimator == r.rows[i].estimator);
    CHECK(back.rows[i].emp_mean == r.rows[i].emp_mean);
    CHECK(back.rows[i].emp_var == r.rows[i].emp_var);
    CHECK(back.rows[i].pred_var == r.rows[i].pred_var);
    CHECK(back.rows[i].norm_rmse == r.rows[i].norm_rmse);
    CHECK(back.rows[i].true_value == r.rows[i].true_value);
  }
  CHECK(csv_of(back) == text);

  std::istringstream bad(std::string(kCsvHeader) + "\n0.5,10,op,1\n");
  CHECK_THROWS_AS(read_csv(bad), ParseError);
  std::istringstream wrong_header("a,b\n");
  CHECK_THROWS_AS(read_csv(wrong_header), ParseError);

  const auto path = std::filesystem::temp_directory_path() / "ccount_report.csv";
  emit_csv(r, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == text);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_csv(r, "/nonexistent_dir/r.csv"), IoError);
}

TEST_CASE("error in a cell names the cell") {
  // A subnormal datum makes small projected coordinates round to zero.
  McConfig c = small_config();
  c.data = {std::numeric_limits<double>::denorm_min()};
  c.alphas = {0.5};
  c.ks = {50};
  c.estimators = {EstimatorKind::kOptimalPower};
  c.sampling = McSampling::kProjection;
  c.trials = 5;
  std::string what;
  try {
    run_monte_carlo(c);
  } catch (const Error& e) {
    what = e.what();
  }
  CHECK(what.find("alpha=0.5") != std::string::npos);
  CHECK(what.find("k=50") != std::string::npos);
  CHECK(what.find("estimator=op") != std::string::npos);
}

TEST_CASE("statistical: normalized rmse falls with k") {
  McConfig c;
  c.alphas = {0.5, 0.9};
  c.ks = {5, 10, 100, 1000};
  c.estimators = {EstimatorKind::kOptimalPower, EstimatorKind::kGeometricMean};
  c.trials = 1000;
  c.data = generate_zipf(1 << 16, 1.0);
  c.base_seed = 3;
  c.record_timing = false;
  const auto r = run_monte_carlo(c);
  for (double alpha : c.alphas) {
    for (auto kind : c.estimators) {
      double prev = INFINITY;
      for (const auto& row : r.rows) {
        if (row.alpha != alpha || row.estimator != kind) continue;
        CHECK(row.norm_rmse < prev);
        prev = row.norm_rmse;
      }
    }
  }
}

TEST_CASE("statistical: projection and direct sampling agree") {
  McConfig c;
  c.alphas = {0.9};
  c.ks = {50};
  c.estimators = {EstimatorKind::kOptimalPower};
  c.trials = 600;
  c.data = generate_zipf(64, 1.0);
  c.record_timing = false;
  const auto direct = run_monte_carlo(c).rows.at(0);
  c.sampling = McSampling::kProjection;
  const auto proj = run_monte_carlo(c).rows.at(0);
  const double se = std::sqrt(proj.emp_var / 600.0);
  CHECK(std::abs(proj.emp_mean - proj.true_value) < 4.0 * se);
  CHECK(proj.emp_var == doctest::Approx(direct.emp_var).epsilon(0.3));
  CHECK(proj.emp_var == doctest::Approx(proj.pred_var).epsilon(0.3));
}

TEST_CASE("entropy targets measure against Shannon") {
  McConfig c;
  c.alphas = {0.999};
  c.ks = {100};
  c.estimators = {EstimatorKind::kOptimalPower};
  c.trials = 100;
  c.data = generate_zipf(1000, 1.0);
  c.target = McTarget::kEntropyTsallis;
  c.record_timing = false;
  const auto t = run_monte_carlo(c).rows.at(0);
  CHECK(t.true_value == doctest::Approx(shannon_exact(c.data)).epsilon(1e-15));
  CHECK(t.emp_mean == doctest::Approx(t.true_value).epsilon(0.05));
  c.target = McTarget::kEntropyRenyi;
  const auto r = run_monte_carlo(c).rows.at(0);
  CHECK(r.true_value == t.true_value);
  CHECK(r.emp_mean == doctest::Approx(t.emp_mean).epsilon(0.01));
}
