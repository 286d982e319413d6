#include "splinaf/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "splinaf/rng.hpp"

namespace splinaf {

DelayLine::DelayLine(std::size_t len) : buf_(len, 0.0) {
  if (len == 0) throw std::invalid_argument("delay line length must be > 0");
}

void DelayLine::push(double x) {
  for (std::size_t k = buf_.size() - 1; k > 0; --k) buf_[k] = buf_[k - 1];
  buf_[0] = x;
}

void DelayLine::reset() { buf_.assign(buf_.size(), 0.0); }

FirChannel::FirChannel(std::vector<double> taps)
    : taps_(std::move(taps)), line_(taps_.empty() ? 1 : taps_.size()) {
  if (taps_.empty()) throw std::invalid_argument("empty tap list");
}

double FirChannel::process(double x) {
  line_.push(x);
  double y = 0.0;
  for (std::size_t j = 0; j < taps_.size(); ++j) y += taps_[j] * line_[j];
  return y;
}

std::vector<double> convolve_stream(const std::vector<double>& taps,
                                    const std::vector<double>& x) {
  FirChannel f(taps);
  std::vector<double> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) y[n] = f.process(x[n]);
  return y;
}

std::vector<double> ar1_colored(double zeta, std::size_t n,
                                std::uint64_t seed) {
  if (!(std::abs(zeta) < 1.0))
    throw std::invalid_argument("ar1 coefficient must satisfy |zeta| < 1");
  Rng rng(seed);
  std::vector<double> x(n);
  double c = std::sqrt(1.0 - zeta * zeta);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    prev = zeta * prev + c * rng.normal();
    x[k] = prev;
  }
  return x;
}

double mean_power(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return s / double(x.size());
}

double scale_to_snr(std::vector<double>& noise, double clean_power,
                    double snr_db) {
  if (!(clean_power > 0.0))
    throw std::invalid_argument("clean power must be positive");
  double p = mean_power(noise);
  if (!(p > 0.0)) throw std::invalid_argument("noise block has zero power");
  double target = clean_power * std::pow(10.0, -snr_db / 10.0);
  double g = std::sqrt(target / p);
  for (double& v : noise) v *= g;
  return target;
}

}  // namespace splinaf
