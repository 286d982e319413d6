#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace splinaf {

// Fixed-length tapped delay line, most recent sample first, zero-initialized.
class DelayLine {
 public:
  explicit DelayLine(std::size_t len);

  void push(double x);
  // k-th most recent sample; [0] is the last push.
  double operator[](std::size_t k) const { return buf_[k]; }
  std::size_t size() const { return buf_.size(); }
  const std::vector<double>& window() const { return buf_; }
  void reset();

 private:
  std::vector<double> buf_;
};

// Streaming FIR filter: y_n = sum_j taps[j] * x_{n-j}.
class FirChannel {
 public:
  explicit FirChannel(std::vector<double> taps);

  double process(double x);
  void reset() { line_.reset(); }
  const std::vector<double>& taps() const { return taps_; }

 private:
  std::vector<double> taps_;
  DelayLine line_;
};

// Convolves a whole block through a fresh FirChannel; output length equals
// the input length (streaming convention, zero initial state).
std::vector<double> convolve_stream(const std::vector<double>& taps,
                                    const std::vector<double>& x);

// First-order autoregressive coloring x_k = zeta*x_{k-1} + sqrt(1-zeta^2)*g_k
// with g ~ N(0,1); asymptotic variance 1. Requires |zeta| < 1.
std::vector<double> ar1_colored(double zeta, std::size_t n, std::uint64_t seed);

// Mean square of a block.
double mean_power(const std::vector<double>& x);

// Scales `noise` in place so its power sits snr_db below clean_power.
// Returns the resulting noise power. Throws std::invalid_argument for a
// non-positive clean power or an all-zero noise block.
double scale_to_snr(std::vector<double>& noise, double clean_power,
                    double snr_db);

}  // namespace splinaf
