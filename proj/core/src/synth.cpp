#include "cyclo/synth.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"

namespace cyclo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

double param(const TestSignalSpec& spec, const std::string& key,
             double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

}  // namespace

NoiseGenerator::NoiseGenerator(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t NoiseGenerator::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double NoiseGenerator::next_unit() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseGenerator::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 is shifted into (0, 1] so the log is finite.
  const double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::vector<double> gen_white_noise(std::size_t n, std::uint64_t seed) {
  NoiseGenerator gen(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = gen.next_gaussian();
  return out;
}

TestSignalSpec TestSignalSpec::defaults(TestSignalKind kind) {
  TestSignalSpec spec;
  spec.kind = kind;
  switch (kind) {
    case TestSignalKind::am_noise:
      spec.params = {{"f_c", 100.0}};
      break;
    case TestSignalKind::noise_mixture:
      spec.params = {{"f_c1", 100.0}, {"f_c2", 250.0}};
      break;
    case TestSignalKind::am_sinusoid:
    case TestSignalKind::am_sinusoid_noisy:
      spec.params = {{"f_m", 150.0}, {"f_c", 500.0}};
      break;
  }
  return spec;
}

AudioSignal gen_test_signal(const TestSignalSpec& spec) {
  if (spec.sample_rate <= 0)
    throw ComputeError("sample rate must be positive");
  if (!(spec.duration > 0)) throw ComputeError("duration must be positive");
  for (const auto& [key, hz] : spec.params)
    if (hz >= spec.sample_rate / 2.0)
      throw ComputeError("frequency " + key + " = " + std::to_string(hz) +
                         " Hz is at or above Nyquist");

  const std::size_t n = std::size_t(std::llround(spec.duration *
                                                 spec.sample_rate));
  const double fs = spec.sample_rate;

  AudioSignal out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(n);

  switch (spec.kind) {
    case TestSignalKind::am_noise: {
      const double fc = param(spec, "f_c", 100.0);
      const auto w = gen_white_noise(n, spec.seed);
      for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = w[i] * std::cos(kTwoPi * fc * double(i) / fs);
      break;
    }
    case TestSignalKind::noise_mixture: {
      const double fc1 = param(spec, "f_c1", 100.0);
      const double fc2 = param(spec, "f_c2", 250.0);
      const auto w1 = gen_white_noise(n, spec.seed + 1);
      const auto w2 = gen_white_noise(n, spec.seed + 2);
      for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = w1[i] * std::cos(kTwoPi * fc1 * double(i) / fs) +
                         w2[i] * std::cos(kTwoPi * fc2 * double(i) / fs);
      break;
    }
    case TestSignalKind::am_sinusoid: {
      const double fm = param(spec, "f_m", 150.0);
      const double fc = param(spec, "f_c", 500.0);
      for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = std::cos(kTwoPi * fm * double(i) / fs) *
                         std::cos(kTwoPi * fc * double(i) / fs);
      break;
    }
    case TestSignalKind::am_sinusoid_noisy: {
      const double fm = param(spec, "f_m", 150.0);
      const double fc = param(spec, "f_c", 500.0);
      const auto w = gen_white_noise(n, spec.seed);
      for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = std::cos(kTwoPi * fm * double(i) / fs) *
                             std::cos(kTwoPi * fc * double(i) / fs) +
                         w[i];
      break;
    }
  }
  return out;
}

}  // namespace cyclo
