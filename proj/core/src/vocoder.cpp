#include "cyclo/vocoder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "cyclo/synth.hpp"

namespace cyclo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reflection coefficients recovered from predictor coefficients (downward
// Levinson recursion); the model is stable iff all of them lie in (-1, 1).
bool is_stable(const std::vector<double>& coeffs) {
  std::vector<double> a = coeffs;
  for (int i = int(a.size()); i >= 1; --i) {
    const double k = a[i - 1];
    if (!std::isfinite(k) || std::abs(k) >= 1.0) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> next(i - 1);
    for (int j = 1; j < i; ++j)
      next[j - 1] = (a[j - 1] + k * a[i - j - 1]) / denom;
    a = std::move(next);
  }
  return true;
}

double frame_energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

void diff_fill(const std::complex<double>* ref, const std::complex<double>* test,
               std::size_t count, DiffMode mode, std::vector<double>& out) {
  out.resize(count);
  if (mode == DiffMode::absolute) {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = std::abs(ref[i]) - std::abs(test[i]);
    return;
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    peak = std::max(peak, std::abs(ref[i]));
  const double eps = peak > 0.0 ? 1e-12 * peak : 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = std::abs(ref[i]);
    out[i] = (r - std::abs(test[i])) / (r + eps);
  }
}

}  // namespace

SinusoidSet sinusoidal_analyze(std::span<const double> frame,
                               const AnalysisConfig& cfg, int sample_rate,
                               int max_peaks) {
  SinusoidSet set;
  if (frame.empty() || max_peaks <= 0) return set;
  if (int(frame.size()) > cfg.n_fft)
    throw ComputeError("frame longer than n_fft");
  if (sample_rate <= 0) throw ComputeError("sample rate must be positive");

  const auto spectrum = dft(frame, cfg.n_fft);
  const int half = cfg.n_fft / 2;
  std::vector<double> mag(half + 1);
  double peak_mag = 0.0;
  for (int k = 0; k <= half; ++k) {
    mag[k] = std::abs(spectrum[k]);
    peak_mag = std::max(peak_mag, mag[k]);
  }
  if (peak_mag <= 0.0) return set;
  const double floor = 1e-4 * peak_mag;

  double coherent_gain = 0.0;
  for (double w : window_coefficients(cfg.window, int(frame.size())))
    coherent_gain += w;

  const double bin_hz = double(sample_rate) / cfg.n_fft;
  for (int k = 1; k < half; ++k) {
    if (mag[k] <= floor || mag[k] < mag[k - 1] || mag[k] <= mag[k + 1])
      continue;
    const double la = std::log(std::max(mag[k - 1], 1e-300));
    const double lb = std::log(mag[k]);
    const double lc = std::log(std::max(mag[k + 1], 1e-300));
    const double denom = la - 2.0 * lb + lc;
    double p = denom < 0.0 ? 0.5 * (la - lc) / denom : 0.0;
    p = std::clamp(p, -0.5, 0.5);
    const double freq = (k + p) * bin_hz;
    if (freq <= 0.0 || freq >= sample_rate / 2.0) continue;

    // Amplitude and phase from the spectrum evaluated exactly at freq.
    std::complex<double> refined{};
    const double w = kTwoPi * freq / sample_rate;
    for (std::size_t n = 0; n < frame.size(); ++n)
      refined += frame[n] * std::polar(1.0, -w * double(n));

    Sinusoid s;
    s.amplitude = 2.0 * std::abs(refined) / coherent_gain;
    s.frequency = freq;
    s.phase = std::arg(refined) + std::numbers::pi / 2.0;  // sine convention
    if (s.amplitude > 0.0) set.components.push_back(s);
  }

  std::sort(set.components.begin(), set.components.end(),
            [](const Sinusoid& a, const Sinusoid& b) {
              return a.amplitude > b.amplitude;
            });
  if (int(set.components.size()) > max_peaks)
    set.components.resize(max_peaks);
  return set;
}

std::vector<double> sinusoidal_synthesize(const SinusoidSet& set,
                                          int n_samples, int sample_rate) {
  if (n_samples < 0) throw ComputeError("negative sample count");
  if (sample_rate <= 0) throw ComputeError("sample rate must be positive");
  std::vector<double> out(n_samples, 0.0);
  for (const Sinusoid& s : set.components) {
    const double w = kTwoPi * s.frequency / sample_rate;
    for (int n = 0; n < n_samples; ++n)
      out[n] += s.amplitude * std::sin(w * n + s.phase);
  }
  return out;
}

LpcModel lpc_analyze(std::span<const double> frame, int order) {
  const int n = int(frame.size());
  if (order < 0) throw ComputeError("negative LPC order");
  if (n <= order)
    throw ComputeError("frame too short for LPC order " +
                       std::to_string(order));

  std::vector<double> r(order + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    double acc = 0.0;
    for (int i = k; i < n; ++i) acc += frame[i] * frame[i - k];
    r[k] = acc;
  }

  LpcModel model;
  model.coefficients.assign(order, 0.0);
  if (r[0] <= 0.0) return model;  // all-zero frame: zero model, gain 0

  std::vector<double>& a = model.coefficients;
  std::vector<double> prev(order, 0.0);
  double error = r[0];
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc -= a[j - 1] * r[i - j];
    double k = acc / error;
    k = std::clamp(k, -(1.0 - 1e-9), 1.0 - 1e-9);

    std::copy(a.begin(), a.begin() + (i - 1), prev.begin());
    a[i - 1] = k;
    for (int j = 1; j < i; ++j) a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
    error *= 1.0 - k * k;
    if (error < 1e-15 * r[0]) {
      error = std::max(error, 0.0);
      break;
    }
  }
  model.gain = std::sqrt(std::max(error, 0.0) / n);
  return model;
}

std::vector<double> lpc_residual(std::span<const double> frame,
                                 const LpcModel& model) {
  const int n = int(frame.size());
  const int p = model.order();
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) {
    double pred = 0.0;
    for (int k = 1; k <= p && k <= i; ++k)
      pred += model.coefficients[k - 1] * frame[i - k];
    e[i] = frame[i] - pred;
  }
  return e;
}

VoicingInfo voicing_decision(std::span<const double> residual,
                             int sample_rate) {
  VoicingInfo info;
  if (sample_rate <= 0) throw ComputeError("sample rate must be positive");
  const int n = int(residual.size());
  const int lag_min =
      std::max(1, int(std::lround(double(sample_rate) / 400.0)));
  int lag_max = int(std::lround(double(sample_rate) / 60.0));
  lag_max = std::min(lag_max, n - 1);
  if (lag_max < lag_min) return info;  // too short to search: unvoiced

  double r0 = frame_energy(residual);
  if (r0 <= 0.0) return info;  // silent residual: unvoiced, confidence 0

  double best = 0.0;
  int best_lag = 0;
  for (int lag = lag_min; lag <= lag_max; ++lag) {
    double acc = 0.0;
    for (int i = lag; i < n; ++i) acc += residual[i] * residual[i - lag];
    const double rho = acc / r0;
    if (rho > best) {
      best = rho;
      best_lag = lag;
    }
  }
  info.confidence = std::clamp(best, 0.0, 1.0);
  info.voiced = best >= 0.3;
  info.period = info.voiced ? best_lag : 0;
  return info;
}

std::vector<double> lpc_synthesize_frame(const LpcModel& model,
                                         const VoicingInfo& voicing,
                                         int n_samples, std::uint64_t seed,
                                         LpcSynthState* state) {
  if (n_samples < 0) throw ComputeError("negative sample count");
  if (!is_stable(model.coefficients))
    throw ComputeError("unstable LPC model");
  const int p = model.order();

  // Excitation with power gain^2: periodic pulses or white noise.
  std::vector<double> excitation(n_samples, 0.0);
  const bool voiced = voicing.voiced && voicing.period >= 1;
  if (voiced) {
    int pos = (state && state->prev_voiced) ? state->next_pulse : 0;
    if (pos < 0) pos = 0;
    const double amp = model.gain * std::sqrt(double(voicing.period));
    while (pos < n_samples) {
      excitation[pos] = amp;
      pos += voicing.period;
    }
    if (state) state->next_pulse = pos - n_samples;
  } else {
    NoiseGenerator gen(seed);
    for (auto& e : excitation) e = model.gain * gen.next_gaussian();
  }
  if (state) state->prev_voiced = voiced;

  // All-pole synthesis with history carried across frames.
  std::vector<double> history(p, 0.0);
  if (state) {
    state->history.resize(p, 0.0);
    history = state->history;
  }
  std::vector<double> out(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    double acc = excitation[i];
    for (int k = 1; k <= p; ++k) {
      const double past = i - k >= 0 ? out[i - k] : history[p - (k - i)];
      acc += model.coefficients[k - 1] * past;
    }
    out[i] = acc;
  }
  if (state && p > 0) {
    for (int k = 0; k < p; ++k) {
      const int idx = n_samples - p + k;
      state->history[k] = idx >= 0 ? out[idx] : history[k + n_samples];
    }
  }
  return out;
}

std::vector<double> overlap_add(const std::vector<std::vector<double>>& frames,
                                std::span<const double> window, int hop,
                                std::size_t out_len) {
  if (hop <= 0) throw ComputeError("hop must be positive");
  const int n = int(window.size());
  std::vector<double> num(out_len, 0.0), den(out_len, 0.0);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (int(frames[t].size()) != n)
      throw ComputeError("synthesis frame length does not match the window");
    const std::size_t base = t * std::size_t(hop);
    for (int i = 0; i < n; ++i) {
      const std::size_t idx = base + i;
      if (idx >= out_len) break;
      num[idx] += window[i] * frames[t][i];
      den[idx] += window[i];
    }
  }
  std::vector<double> out(out_len, 0.0);
  for (std::size_t i = 0; i < out_len; ++i)
    if (den[i] > 1e-12) out[i] = num[i] / den[i];
  return out;
}

AudioSignal resynthesize_utterance(const AudioSignal& signal,
                                   VocoderMethod method,
                                   const AnalysisConfig& cfg,
                                   std::uint64_t seed) {
  const FrameMatrix frames = frame_signal(signal, cfg);
  const std::vector<double> w =
      window_coefficients(cfg.window, cfg.frame_len);

  std::vector<std::vector<double>> synth(frames.n_frames);
  std::vector<double> windowed(cfg.frame_len);
  LpcSynthState state;
  const int lpc_order = std::min(20, cfg.frame_len - 1);

  for (int t = 0; t < frames.n_frames; ++t) {
    const auto raw = frames.row(t);
    for (int i = 0; i < cfg.frame_len; ++i) windowed[i] = raw[i] * w[i];

    if (method == VocoderMethod::sinusoidal) {
      const SinusoidSet set =
          sinusoidal_analyze(windowed, cfg, signal.sample_rate, 80);
      synth[t] = sinusoidal_synthesize(set, cfg.frame_len, signal.sample_rate);
    } else {
      const LpcModel model = lpc_analyze(windowed, lpc_order);
      const auto residual = lpc_residual(windowed, model);
      const VoicingInfo voicing =
          voicing_decision(residual, signal.sample_rate);
      synth[t] = lpc_synthesize_frame(model, voicing, cfg.frame_len,
                                      seed + std::uint64_t(t), &state);
      // The model was fit on the tapered frame; restore raw-frame energy.
      const double target = frame_energy(raw);
      const double actual = frame_energy(synth[t]);
      if (actual > 0.0) {
        const double scale = std::sqrt(target / actual);
        for (double& v : synth[t]) v *= scale;
      }
    }
  }

  AudioSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples = overlap_add(synth, w, cfg.hop, signal.samples.size());
  return out;
}

DiffMap scd_difference_map(const ScdMap& reference, const ScdMap& test,
                           DiffMode mode) {
  if (reference.n_bins != test.n_bins ||
      reference.n_alpha() != test.n_alpha() ||
      reference.alpha_axis.values != test.alpha_axis.values ||
      reference.f_axis != test.f_axis)
    throw ComputeError("difference map: shape or axis mismatch");
  DiffMap d;
  d.rows = reference.n_bins;
  d.cols = reference.n_alpha();
  d.mode = mode;
  diff_fill(reference.data.data(), test.data.data(), reference.data.size(),
            mode, d.data);
  return d;
}

DiffMap scd_difference_map(const TemporalScdMap& reference,
                           const TemporalScdMap& test, DiffMode mode) {
  if (reference.axis_kind != test.axis_kind || reference.rows != test.rows ||
      reference.n_frames != test.n_frames || reference.axis != test.axis)
    throw ComputeError("difference map: shape or axis mismatch");
  DiffMap d;
  d.rows = reference.rows;
  d.cols = reference.n_frames;
  d.mode = mode;
  diff_fill(reference.data.data(), test.data.data(), reference.data.size(),
            mode, d.data);
  return d;
}

}  // namespace cyclo
