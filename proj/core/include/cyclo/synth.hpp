#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyclo/dsp.hpp"

namespace cyclo {

/// Deterministic Gaussian source, identical on every platform for a given
/// seed: xoshiro256++ state initialized from the seed via SplitMix64,
/// uniforms taken as (x >> 11) * 2^-53, Gaussians via Box-Muller with both
/// uniforms of a pair consumed (cos branch first, sin branch cached).
class NoiseGenerator {
 public:
  explicit NoiseGenerator(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_unit();      // [0, 1)
  double next_gaussian();  // standard normal

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// n i.i.d. standard-normal samples from NoiseGenerator(seed).
std::vector<double> gen_white_noise(std::size_t n, std::uint64_t seed);

enum class TestSignalKind {
  am_noise,           // w[n] cos(2 pi f_c n / fs)
  noise_mixture,      // w1 cos(2 pi f_c1 n / fs) + w2 cos(2 pi f_c2 n / fs)
  am_sinusoid,        // cos(2 pi f_m n / fs) cos(2 pi f_c n / fs)
  am_sinusoid_noisy,  // am_sinusoid + w[n]
};

/// Parameters for the synthetic modulated test signals. Frequencies are
/// keyed by name ("f_c", "f_c1", "f_c2", "f_m"); missing keys fall back to
/// the standard values (f_c = 100; f_c1, f_c2 = 100, 250; f_m, f_c = 150,
/// 500). The two mixture noise streams are seeded seed + 1 and seed + 2.
struct TestSignalSpec {
  TestSignalKind kind = TestSignalKind::am_noise;
  std::map<std::string, double> params;  // Hz
  double duration = 1.0;                 // seconds
  int sample_rate = 16000;
  std::uint64_t seed = 42;

  static TestSignalSpec defaults(TestSignalKind kind);
};

/// Throws ComputeError if any frequency is >= fs/2 or the duration is not
/// positive.
AudioSignal gen_test_signal(const TestSignalSpec& spec);

}  // namespace cyclo
