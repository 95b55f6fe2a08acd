#include "ccount/sketch.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "ccount/error.hpp"
#include "ccount/stable.hpp"

namespace ccount {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr char kMagic[4] = {'C', 'C', 'S', 'K'};
constexpr std::size_t kHeaderBytes = 8 + 4 * 8 + 8;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t off) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t{in[off + b]} << (8 * b);
  return v;
}

}  // namespace

void SketchConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ConfigError("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  if (alpha == 1.0) {
    throw ConfigError("alpha == 1 is excluded; use the exact F_(1) counter");
  }
  if (k < 2) {
    throw ConfigError("k must be >= 2, got " + std::to_string(k));
  }
  if (domain_size == 0) {
    throw ConfigError("domain size D must be >= 1");
  }
}

void keyed_uniforms(std::uint64_t seed, std::uint64_t i, std::uint64_t j, double* u1, double* u2) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ i);
  s = mix64(s ^ j);
  *u1 = bits_to_unit_open(mix64(s ^ 0x1ULL));
  *u2 = bits_to_unit_open(mix64(s ^ 0x2ULL));
}

double projection_entry(std::uint64_t seed, std::uint64_t i, std::uint64_t j, double alpha) {
  double u1 = 0.0;
  double u2 = 0.0;
  keyed_uniforms(seed, i, j, &u1, &u2);
  return stable_from_uniforms(alpha, u1, u2);
}

Sketch::Sketch(const SketchConfig& config) : config_(config) {
  config_.validate();
  x_.resize(config_.k);
}

Sketch Sketch::from_values(const SketchConfig& config, std::span<const double> x, double f1) {
  Sketch s(config);
  if (x.size() != s.x_.size()) {
    throw ConfigError("expected " + std::to_string(s.x_.size()) + " coordinates, got " +
                      std::to_string(x.size()));
  }
  for (std::size_t j = 0; j < x.size(); ++j) s.x_[j].add(x[j]);
  s.f1_.add(f1);
  return s;
}

std::vector<double> Sketch::coordinates() const {
  std::vector<double> out(x_.size());
  for (std::size_t j = 0; j < x_.size(); ++j) out[j] = x_[j].value();
  return out;
}

void Sketch::update(const StreamUpdate& u) {
  if (u.index < 1 || u.index > config_.domain_size) {
    throw UpdateError("index " + std::to_string(u.index) + " outside [1, " +
                      std::to_string(config_.domain_size) + "]");
  }
  if (!std::isfinite(u.increment)) {
    throw UpdateError("increment must be finite");
  }
  if (u.increment == 0.0) return;
  for (std::uint64_t j = 0; j < config_.k; ++j) {
    x_[j].add_product(projection_entry(config_.seed, u.index, j + 1, config_.alpha), u.increment);
  }
  f1_.add(u.increment);
}

void Sketch::merge_from(const Sketch& other) {
  if (!(config_ == other.config_)) {
    throw MergeError("cannot merge sketches with different configs");
  }
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j].add(other.x_[j]);
  f1_.add(other.f1_);
}

bool operator==(const Sketch& a, const Sketch& b) {
  if (!(a.config_ == b.config_)) return false;
  if (a.f1() != b.f1()) return false;
  for (std::size_t j = 0; j < a.x_.size(); ++j) {
    if (a.x_[j].value() != b.x_[j].value()) return false;
  }
  return true;
}

namespace {

void check_vector(const SketchConfig& config, std::span<const double> a) {
  config.validate();
  if (a.size() != config.domain_size) {
    throw ConfigError("vector length " + std::to_string(a.size()) + " != domain size " +
                      std::to_string(config.domain_size));
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw ConfigError("vector entries must be finite");
  }
}

ExactSum project_column(const SketchConfig& config, std::span<const double> a, std::uint64_t j) {
  ExactSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    acc.add_product(projection_entry(config.seed, i + 1, j + 1, config.alpha), a[i]);
  }
  return acc;
}

}  // namespace

Sketch from_vector_serial(const SketchConfig& config, std::span<const double> a) {
  check_vector(config, a);
  Sketch s(config);
  for (std::uint64_t j = 0; j < config.k; ++j) s.x_[j] = project_column(config, a, j);
  for (double v : a) s.f1_.add(v);
  return s;
}

Sketch from_vector(const SketchConfig& config, std::span<const double> a) {
  check_vector(config, a);
  Sketch s(config);
  const auto k = static_cast<std::int64_t>(config.k);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < k; ++j) {
    s.x_[j] = project_column(config, a, static_cast<std::uint64_t>(j));
  }
  for (double v : a) s.f1_.add(v);
  return s;
}

Sketch merge(const Sketch& a, const Sketch& b) {
  Sketch out = a;
  out.merge_from(b);
  return out;
}

std::vector<std::uint8_t> serialize(const Sketch& sketch) {
  const auto& c = sketch.config();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + 8 * c.k);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(kSnapshotVersion >> (8 * b)));
  put_u64(out, std::bit_cast<std::uint64_t>(c.alpha));
  put_u64(out, c.k);
  put_u64(out, c.seed);
  put_u64(out, c.domain_size);
  put_u64(out, std::bit_cast<std::uint64_t>(sketch.f1()));
  for (double x : sketch.coordinates()) put_u64(out, std::bit_cast<std::uint64_t>(x));
  return out;
}

Sketch deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw DecodeError("sketch snapshot truncated: " + std::to_string(bytes.size()) + " bytes");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DecodeError("not a sketch snapshot (bad magic)");
  }
  std::uint32_t version = 0;
  for (int b = 0; b < 4; ++b) version |= std::uint32_t{bytes[4 + b]} << (8 * b);
  if (version != kSnapshotVersion) {
    throw DecodeError("unsupported snapshot version " + std::to_string(version));
  }
  SketchConfig c;
  c.alpha = std::bit_cast<double>(get_u64(bytes, 8));
  c.k = get_u64(bytes, 16);
  c.seed = get_u64(bytes, 24);
  c.domain_size = get_u64(bytes, 32);
  const double f1 = std::bit_cast<double>(get_u64(bytes, 40));
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw DecodeError(std::string("invalid config in snapshot: ") + e.what());
  }
  const std::size_t payload = bytes.size() - kHeaderBytes;
  if (payload % 8 != 0 || payload / 8 != c.k) {
    throw DecodeError("snapshot length does not match k = " + std::to_string(c.k));
  }
  std::vector<double> x(c.k);
  for (std::size_t j = 0; j < c.k; ++j) {
    x[j] = std::bit_cast<double>(get_u64(bytes, kHeaderBytes + 8 * j));
    if (!std::isfinite(x[j])) throw DecodeError("non-finite coordinate in snapshot");
  }
  if (!std::isfinite(f1)) throw DecodeError("non-finite f1 in snapshot");
  return Sketch::from_values(c, x, f1);
}

void save_sketch(const Sketch& sketch, const std::filesystem::path& path) {
  const auto bytes = serialize(sketch);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Sketch load_sketch(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return deserialize(bytes);
}

}  // namespace ccount
