#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdyn::testkit {

inline std::filesystem::path data_dir() { return FRACDYN_TEST_DATA_DIR; }

struct MlReference {
  double beta;
  std::complex<double> z;
  std::complex<double> value;
};

// Rows of "beta Re(z) Im(z) Re(E) Im(E)"; '#' lines are comments.
inline std::vector<MlReference> load_ml_reference(const std::string& name) {
  std::ifstream in(data_dir() / name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::vector<MlReference> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    double b, zr, zi, er, ei;
    if (!(fields >> b >> zr >> zi >> er >> ei)) throw std::runtime_error("bad oracle line: " + line);
    out.push_back({b, {zr, zi}, {er, ei}});
  }
  return out;
}

inline double relative_error(std::complex<double> got, std::complex<double> want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

// Seeded generator for property tests; each test gets its own stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, v.size() - 1))];
  }
  std::complex<double> polar(double r_lo, double r_hi) {
    return std::polar(uniform(r_lo, r_hi), uniform(-3.141592653589793, 3.141592653589793));
  }

 private:
  std::mt19937_64 rng_;
};

// Strict three-point maxima with a small tolerance.
inline int count_local_maxima(const std::vector<double>& y, double tol = 1e-12) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] + tol && y[i] > y[i + 1] + tol) ++count;
  }
  return count;
}

}  // namespace fracdyn::testkit
