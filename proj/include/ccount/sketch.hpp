#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ccount/exact_sum.hpp"

namespace ccount {

// One Turnstile update: A[index] += increment. index is 1-based.
struct StreamUpdate {
  std::uint64_t index = 1;
  double increment = 0.0;

  friend bool operator==(const StreamUpdate&, const StreamUpdate&) = default;
};

// Identity of a sketch. Sketches merge only when configs are equal.
struct SketchConfig {
  double alpha = 0.5;
  std::uint64_t k = 100;
  std::uint64_t seed = 0;
  std::uint64_t domain_size = 1;

  // Throws ConfigError: alpha must lie in (0, 2) \ {1}, k >= 2, D >= 1.
  void validate() const;

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

// Entry r_ij of the implicit D x k projection matrix, a draw from
// S(alpha, 1, 1). Both i and j are 1-based. (seed, i, j) is hashed into two uniforms, so the value is
// reproducible bit-for-bit and the matrix is never stored.
double projection_entry(std::uint64_t seed, std::uint64_t i, std::uint64_t j, double alpha);

// Two independent uniforms on (0, 1) keyed by (seed, i, j).
void keyed_uniforms(std::uint64_t seed, std::uint64_t i, std::uint64_t j, double* u1, double* u2);

/// Compressed Counting sketch: x = R^T A over k columns plus the exact
/// running sum F_(1).
///
/// Every coordinate is held exactly (see ExactSum) and rounded on read, so
/// the sketch of a multiset of updates does not depend on their order, and
/// merge(sketch(U), sketch(V)) == sketch(U ++ V) bit-for-bit. A sketch is
/// single-writer; shard and merge for parallel ingestion.
class Sketch {
 public:
  explicit Sketch(const SketchConfig& config);

  // Sketch with the given rounded coordinates (used by deserialization).
  static Sketch from_values(const SketchConfig& config, std::span<const double> x, double f1);

  const SketchConfig& config() const { return config_; }
  std::size_t size() const { return x_.size(); }

  // Rounded coordinates x_1..x_k.
  std::vector<double> coordinates() const;
  double coordinate(std::size_t j) const { return x_.at(j).value(); }
  double f1() const { return f1_.value(); }

  // x_j += r_{index,j} * increment for every j; f1 += increment.
  // Throws UpdateError when index is outside [1, D] or increment is not finite.
  void update(const StreamUpdate& u);
  void update(std::uint64_t index, double increment) { update(StreamUpdate{index, increment}); }

  // this += other. Throws MergeError on config mismatch.
  void merge_from(const Sketch& other);

  friend bool operator==(const Sketch& a, const Sketch& b);

 private:
  friend Sketch from_vector(const SketchConfig&, std::span<const double>);
  friend Sketch from_vector_serial(const SketchConfig&, std::span<const double>);

  SketchConfig config_;
  std::vector<ExactSum> x_;
  ExactSum f1_;
};

inline Sketch new_sketch(const SketchConfig& config) { return Sketch(config); }

// Batch sketch of an explicit vector a (length D, a[i-1] is coordinate i).
// Columns are computed in parallel (OpenMP); the result is bit-identical to
// from_vector_serial and to streaming every nonzero a[i] as one update.
Sketch from_vector(const SketchConfig& config, std::span<const double> a);
Sketch from_vector_serial(const SketchConfig& config, std::span<const double> a);

// Throws MergeError on config mismatch.
Sketch merge(const Sketch& a, const Sketch& b);

// Snapshot layout (all little-endian):
//   magic "CCSK" | u32 version (1) | f64 alpha | u64 k | u64 seed | u64 D |
//   f64 f1 | k x f64 coordinates
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::vector<std::uint8_t> serialize(const Sketch& sketch);
// Throws DecodeError on bad magic, unknown version, wrong length or an
// invalid config.
Sketch deserialize(std::span<const std::uint8_t> bytes);

// Throws IoError when the file cannot be written/read.
void save_sketch(const Sketch& sketch, const std::filesystem::path& path);
Sketch load_sketch(const std::filesystem::path& path);

}  // namespace ccount
