#include "cyclo/dsp.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "fft_backend.hpp"

namespace cyclo {

AnalysisConfig AnalysisConfig::defaults(int sample_rate) {
  if (sample_rate <= 0) throw ComputeError("sample rate must be positive");
  AnalysisConfig cfg;
  cfg.frame_len = sample_rate * 25 / 1000;
  cfg.hop = sample_rate * 10 / 1000;
  return cfg;
}

void AnalysisConfig::validate() const {
  if (hop <= 0 || hop > frame_len)
    throw ComputeError("invalid framing: need 0 < hop <= frame_len");
  if (frame_len > n_fft)
    throw ComputeError("invalid framing: need frame_len <= n_fft");
  if (n_alpha < 1) throw ComputeError("n_alpha must be at least 1");
  if (alpha_max < 0) throw ComputeError("alpha_max must be non-negative");
}

std::vector<double> window_coefficients(WindowKind kind, int n) {
  if (n < 2) throw ComputeError("window length must be at least 2");
  std::vector<double> w(n, 1.0);
  const double step = 2.0 * std::numbers::pi / (n - 1);
  switch (kind) {
    case WindowKind::hamming:
      for (int i = 0; i <= (n - 1) / 2; ++i)
        w[i] = 0.54 - 0.46 * std::cos(step * i);
      break;
    case WindowKind::hann:
      for (int i = 0; i <= (n - 1) / 2; ++i)
        w[i] = 0.5 * (1.0 - std::cos(step * i));
      break;
    case WindowKind::rectangular:
      return w;
  }
  // Mirror the first half so the window is symmetric to the last bit.
  for (int i = n / 2; i < n; ++i) w[i] = w[n - 1 - i];
  return w;
}

FrameMatrix frame_signal(const AudioSignal& signal, const AnalysisConfig& cfg) {
  cfg.validate();
  const int len = int(signal.samples.size());
  if (len < cfg.frame_len)
    throw ComputeError("signal too short: " + std::to_string(len) +
                       " samples, need at least " +
                       std::to_string(cfg.frame_len));
  FrameMatrix frames;
  frames.n_frames = (len - cfg.frame_len) / cfg.hop + 1;
  frames.frame_len = cfg.frame_len;
  frames.data.resize(std::size_t(frames.n_frames) * cfg.frame_len);
  for (int t = 0; t < frames.n_frames; ++t) {
    const double* src = signal.samples.data() + std::size_t(t) * cfg.hop;
    std::copy(src, src + cfg.frame_len, frames.row(t).begin());
  }
  return frames;
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x,
                                      int n_fft) {
  if (int(x.size()) > n_fft)
    throw ComputeError("dft input longer than n_fft");
  std::vector<std::complex<double>> in(n_fft);
  std::copy(x.begin(), x.end(), in.begin());
  std::vector<std::complex<double>> out(n_fft);
  detail::fft_forward(in.data(), out.data(), n_fft);
  return out;
}

std::vector<std::complex<double>> dft(std::span<const double> x, int n_fft) {
  if (int(x.size()) > n_fft)
    throw ComputeError("dft input longer than n_fft");
  std::vector<std::complex<double>> in(n_fft);
  for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i];
  std::vector<std::complex<double>> out(n_fft);
  detail::fft_forward(in.data(), out.data(), n_fft);
  return out;
}

std::vector<std::complex<double>> idft(
    std::span<const std::complex<double>> x) {
  const int n = int(x.size());
  if (n == 0) return {};
  std::vector<std::complex<double>> out(n);
  detail::fft_backward(x.data(), out.data(), n);
  for (auto& v : out) v /= double(n);
  return out;
}

AudioSignal trim_silence(const AudioSignal& signal, const AnalysisConfig& cfg,
                         double threshold_db) {
  cfg.validate();
  if (threshold_db >= 0)
    throw ComputeError("trim threshold must be negative (dB below peak)");
  const int block = cfg.frame_len;
  const int n_blocks = int(signal.samples.size()) / block;
  if (n_blocks < 1)
    throw ComputeError("signal too short: no full frame to analyze");

  std::vector<double> energy(n_blocks, 0.0);
  double max_energy = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    double e = 0.0;
    const double* s = signal.samples.data() + std::size_t(b) * block;
    for (int i = 0; i < block; ++i) e += s[i] * s[i];
    energy[b] = e;
    max_energy = std::max(max_energy, e);
  }
  if (max_energy <= 0.0) throw ComputeError("all-silent signal");

  // Keep blocks with log energy above (max + threshold_db); the loudest
  // block always passes, so the result is never empty.
  const double floor = max_energy * std::pow(10.0, threshold_db / 10.0);
  AudioSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.reserve(std::size_t(n_blocks) * block);
  for (int b = 0; b < n_blocks; ++b) {
    if (energy[b] > floor) {
      const double* s = signal.samples.data() + std::size_t(b) * block;
      out.samples.insert(out.samples.end(), s, s + block);
    }
  }
  return out;
}

}  // namespace cyclo
