#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cyclo {

/// Mono audio: amplitudes nominally in [-1, 1] plus the sample rate in Hz.
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration() const {
    return sample_rate > 0 ? double(samples.size()) / sample_rate : 0.0;
  }
};

enum class WindowKind { hamming, hann, rectangular };

/// Framing, windowing and cyclic-frequency-grid parameters shared by all
/// estimators. Defaults follow the 25 ms / 10 ms / 512-point convention.
struct AnalysisConfig {
  int frame_len = 400;   // N, samples
  int hop = 160;         // R, samples
  int n_fft = 512;       // DFT length, >= frame_len
  WindowKind window = WindowKind::hamming;
  double alpha_max = 2000.0;  // top of the cyclic-frequency grid, Hz
  int n_alpha = 257;          // grid points on [0, alpha_max]

  /// 25 ms frames, 10 ms hop at the given rate; other fields left at defaults.
  static AnalysisConfig defaults(int sample_rate);

  /// Throws ComputeError unless 0 < hop <= frame_len <= n_fft and n_alpha >= 1.
  void validate() const;
};

/// Row-major matrix of frames: n_frames rows of frame_len samples each.
struct FrameMatrix {
  int n_frames = 0;
  int frame_len = 0;
  std::vector<double> data;

  std::span<const double> row(int t) const {
    return {data.data() + std::size_t(t) * frame_len, std::size_t(frame_len)};
  }
  std::span<double> row(int t) {
    return {data.data() + std::size_t(t) * frame_len, std::size_t(frame_len)};
  }
};

/// Complex spectrum with its bin spacing in Hz. Length (full n_fft or
/// one-sided n_fft/2 + 1) is stated by each producing operation.
struct ComplexSpectrum {
  std::vector<std::complex<double>> bins;
  double bin_hz = 0.0;
};

/// Reads a RIFF/WAVE file; PCM 16-bit mono only. Samples are scaled by
/// 1/32768 so -32768 maps to exactly -1.0. Throws FormatError otherwise,
/// naming the offending field.
AudioSignal load_wav(const std::filesystem::path& path);

/// Writes PCM 16-bit mono; samples are clipped to [-1, 1) and rounded.
void write_wav(const std::filesystem::path& path, const AudioSignal& signal);

/// Removes low-energy regions: the signal is cut into consecutive
/// non-overlapping blocks of cfg.frame_len samples and blocks whose log
/// energy falls threshold_db or more below the loudest block are dropped.
/// Idempotent. Throws ComputeError when nothing passes (all-silent) or
/// threshold_db >= 0.
AudioSignal trim_silence(const AudioSignal& signal, const AnalysisConfig& cfg,
                         double threshold_db = -40.0);

/// w[n] for n = 0..n-1; symmetric Hamming/Hann convention. Requires n >= 2.
std::vector<double> window_coefficients(WindowKind kind, int n);

/// Frame t holds samples s[t*hop .. t*hop + frame_len - 1]; a trailing
/// remainder shorter than frame_len is dropped. Throws ComputeError when the
/// signal is shorter than one frame.
FrameMatrix frame_signal(const AudioSignal& signal, const AnalysisConfig& cfg);

/// Full-length DFT, bins[k] = sum_n x[n] exp(-j 2 pi k n / n_fft); the input
/// is zero-padded to n_fft. Requires x.size() <= n_fft.
std::vector<std::complex<double>> dft(std::span<const double> x, int n_fft);
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x,
                                      int n_fft);

/// Inverse of dft() at equal length (1/N-normalized).
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> x);

}  // namespace cyclo
