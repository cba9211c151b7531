#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cyclo/dsp.hpp"

namespace cyclo {

/// n_alpha uniformly spaced cyclic frequencies covering [0, alpha_max],
/// both endpoints included; values[0] is always 0.
struct CyclicFrequencyGrid {
  std::vector<double> values;

  static CyclicFrequencyGrid make(double alpha_max, int n_alpha);
  int size() const { return int(values.size()); }
};

/// Complex bifrequency matrix SCD(f, alpha): rows span the one-sided spectral
/// frequencies f in [0, fs/2], columns the cyclic-frequency grid. The
/// alpha = 0 column is a PSD estimate (real, non-negative).
struct ScdMap {
  int n_bins = 0;                       // rows, n_fft/2 + 1
  std::vector<double> f_axis;           // Hz, length n_bins
  CyclicFrequencyGrid alpha_axis;       // Hz, length = #cols
  std::vector<std::complex<double>> data;  // row-major n_bins x n_alpha

  int n_alpha() const { return alpha_axis.size(); }
  std::complex<double> at(int f_idx, int a_idx) const {
    return data[std::size_t(f_idx) * alpha_axis.size() + a_idx];
  }
};

/// Per-frame spectral correlation kept along time: rows are cyclic
/// frequencies (cyclic axis) or spectral frequencies (spectral axis),
/// columns are frame indices.
struct TemporalScdMap {
  enum class Axis { cyclic, spectral };

  Axis axis_kind = Axis::cyclic;
  int rows = 0;
  int n_frames = 0;
  std::vector<double> axis;                // Hz, length rows
  std::vector<std::complex<double>> data;  // row-major rows x n_frames

  std::complex<double> at(int r, int t) const {
    return data[std::size_t(r) * n_frames + t];
  }
};

/// Spectral correlation of one windowed frame at cyclic frequency alpha:
/// (1/N) X(f - alpha/2) conj(X(f + alpha/2)) on the one-sided f-bin grid
/// (n_fft/2 + 1 bins). The half-shifts are realized by modulating the frame
/// with exp(+-j pi alpha n / fs) before the DFT, so off-bin alpha is exact.
/// At alpha = 0 this is the periodogram |X|^2 / N.
ComplexSpectrum spectral_correlation_frame(std::span<const double> frame,
                                           double alpha_hz, int sample_rate,
                                           const AnalysisConfig& cfg);

/// exp(j pi alpha tau / fs) (1/N) sum_{n=tau}^{N-1} x[n] x[n-tau]
/// exp(-j 2 pi alpha n / fs). At alpha = 0 it is the conventional biased
/// autocorrelation. Requires 0 <= tau < N.
std::complex<double> cyclic_autocorrelation(std::span<const double> frame,
                                            int tau, double alpha_hz,
                                            int sample_rate);

/// Brute-force counterpart of spectral_correlation_frame built from
/// cyclic_autocorrelation: a lag transform over tau in [-(N-1), N-1] of the
/// conjugated cyclic autocorrelation (even in tau for real frames),
/// evaluated on the same one-sided f-bin grid. O(N^2); intended for small
/// frames and cross-validation.
ComplexSpectrum scd_direct_oracle(std::span<const double> frame,
                                  double alpha_hz, int sample_rate,
                                  const AnalysisConfig& cfg);

/// Time-smoothed SCD: frames windowed per cfg, per-frame spectral
/// correlations averaged over frames in fixed order (bit-stable for any
/// n_jobs). n_jobs <= 0 picks the hardware concurrency.
ScdMap scd_map(const AudioSignal& signal, const AnalysisConfig& cfg,
               int n_jobs = 0);

/// As scd_map but over a caller-supplied (unwindowed) frame set; lets the
/// feature extractor honor frame cropping/replication.
ScdMap scd_map_of_frames(const FrameMatrix& frames, int sample_rate,
                         const AnalysisConfig& cfg, int n_jobs = 0);

/// SCD_a(alpha, t): per-frame spectral correlation averaged over the
/// one-sided frequency bins; rows = n_alpha, cols = frames.
TemporalScdMap scd_a(const AudioSignal& signal, const AnalysisConfig& cfg,
                     int n_jobs = 0);

/// SCD_b(f, t): per-frame spectral correlation averaged over the cyclic
/// grid; rows = n_fft/2 + 1, cols = frames.
TemporalScdMap scd_b(const AudioSignal& signal, const AnalysisConfig& cfg,
                     int n_jobs = 0);

struct MarginalProfiles {
  std::vector<double> scd_alpha;  // mean_f |SCD(f, alpha)|, length n_alpha
  std::vector<double> scd_f;      // mean_alpha |SCD(f, alpha)|, length n_bins
};

MarginalProfiles marginal_profiles(const ScdMap& map);

}  // namespace cyclo
