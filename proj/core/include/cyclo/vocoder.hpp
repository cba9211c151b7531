#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclo/dsp.hpp"
#include "cyclo/scd.hpp"

namespace cyclo {

struct Sinusoid {
  double amplitude = 0.0;  // linear
  double frequency = 0.0;  // Hz, strictly inside (0, fs/2)
  double phase = 0.0;      // radians, sine convention
};

struct SinusoidSet {
  std::vector<Sinusoid> components;
};

/// All-pole model: predictor s^[n] = sum_k a_k s[n-k], synthesis filter
/// H(z) = 1 / (1 - sum_k a_k z^-k). gain is the square root of the final
/// prediction-error power.
struct LpcModel {
  std::vector<double> coefficients;  // a_1 .. a_p
  double gain = 0.0;

  int order() const { return int(coefficients.size()); }
};

struct VoicingInfo {
  bool voiced = false;
  int period = 0;           // samples, meaningful only when voiced
  double confidence = 0.0;  // normalized autocorrelation peak, in [0, 1]
};

enum class DiffMode { absolute, relative };

/// Signed magnitude-difference map between two SCD-like matrices.
struct DiffMap {
  int rows = 0;
  int cols = 0;
  DiffMode mode = DiffMode::absolute;
  std::vector<double> data;  // row-major
};

enum class VocoderMethod { sinusoidal, lpc };

/// Filter and excitation state carried across consecutive frames of one
/// utterance.
struct LpcSynthState {
  std::vector<double> history;  // last p output samples
  int next_pulse = 0;           // impulse position relative to frame start
  bool prev_voiced = false;
};

/// Picks local maxima of the one-sided magnitude spectrum above 1e-4 of the
/// spectral peak, refines each by parabolic interpolation on log magnitude,
/// and reads amplitude/phase from the spectrum evaluated exactly at the
/// refined frequency. Amplitudes are corrected for the window coherent gain
/// (the frame is expected to be windowed per cfg). Keeps the strongest
/// max_peaks components.
SinusoidSet sinusoidal_analyze(std::span<const double> frame,
                               const AnalysisConfig& cfg, int sample_rate,
                               int max_peaks);

/// y[n] = sum_k A_k sin(2 pi f_k n / fs + phi_k), n = 0..n_samples-1.
std::vector<double> sinusoidal_synthesize(const SinusoidSet& set,
                                          int n_samples, int sample_rate);

/// Autocorrelation-method LPC via Levinson-Durbin on the biased
/// autocorrelation; reflection coefficients are clamped inside (-1, 1) so
/// the synthesis filter is always stable. An all-zero frame yields a zero
/// model with gain 0. Requires frame.size() > order.
LpcModel lpc_analyze(std::span<const double> frame, int order);

/// Prediction residual e[n] = x[n] - sum_k a_k x[n-k] (frame-local history).
std::vector<double> lpc_residual(std::span<const double> frame,
                                 const LpcModel& model);

/// Pitch decision from the normalized autocorrelation of the residual over
/// lags [fs/400, fs/60] (60-400 Hz): voiced iff the peak reaches 0.3.
VoicingInfo voicing_decision(std::span<const double> residual,
                             int sample_rate);

/// One frame of the classic LPC vocoder: impulse-train (voiced) or
/// white-noise (unvoiced) excitation with power gain^2, filtered by H(z).
/// Passing the same state object across consecutive frames carries the
/// filter history and the impulse-train phase; the phase resets at each
/// voiced onset. Throws ComputeError on an unstable model.
std::vector<double> lpc_synthesize_frame(const LpcModel& model,
                                         const VoicingInfo& voicing,
                                         int n_samples, std::uint64_t seed,
                                         LpcSynthState* state = nullptr);

/// Windowed overlap-add of synthesis frames at the given hop, normalized by
/// the summed window envelope. Output has out_len samples (zero tail beyond
/// the frame coverage).
std::vector<double> overlap_add(const std::vector<std::vector<double>>& frames,
                                std::span<const double> window, int hop,
                                std::size_t out_len);

/// Frame-by-frame analyze/synthesize with windowed overlap-add. Output
/// length equals input length. The LPC path uses a 20th-order model, scales
/// each synthesized frame to the raw frame energy, and derives per-frame
/// excitation seeds from `seed`.
AudioSignal resynthesize_utterance(const AudioSignal& signal,
                                   VocoderMethod method,
                                   const AnalysisConfig& cfg,
                                   std::uint64_t seed = 42);

/// absolute: |ref| - |test| (signed); relative: (|ref| - |test|) /
/// (|ref| + eps) with eps = 1e-12 max|ref|. Shapes and axes must match.
DiffMap scd_difference_map(const ScdMap& reference, const ScdMap& test,
                           DiffMode mode);
DiffMap scd_difference_map(const TemporalScdMap& reference,
                           const TemporalScdMap& test, DiffMode mode);

}  // namespace cyclo
