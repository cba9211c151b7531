#include "cyclo/scd.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "fft_backend.hpp"
#include "parallel.hpp"

namespace cyclo {
namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha_hz, int sample_rate) {
  if (sample_rate <= 0) throw ComputeError("sample rate must be positive");
  if (!(alpha_hz >= 0.0) || alpha_hz > sample_rate / 2.0)
    throw ComputeError("alpha out of range: " + std::to_string(alpha_hz) +
                       " Hz (need 0 <= alpha <= fs/2)");
}

std::vector<double> f_axis_for(const AnalysisConfig& cfg, int sample_rate) {
  const int n_bins = cfg.n_fft / 2 + 1;
  std::vector<double> axis(n_bins);
  for (int k = 0; k < n_bins; ++k)
    axis[k] = double(k) * sample_rate / cfg.n_fft;
  return axis;
}

// Half-shift modulators exp(j pi alpha n / fs) for n = 0..frame_len-1;
// shared read-only between worker threads.
std::vector<std::complex<double>> make_modulator(int frame_len,
                                                 double alpha_hz,
                                                 int sample_rate) {
  std::vector<std::complex<double>> mod(frame_len);
  const double step = kPi * alpha_hz / sample_rate;
  for (int n = 0; n < frame_len; ++n) mod[n] = std::polar(1.0, step * n);
  return mod;
}

// Scratch buffers for repeated per-frame spectral correlations.
struct ScWorkspace {
  std::vector<std::complex<double>> down, up;
  std::vector<std::complex<double>> spec_down, spec_up;

  explicit ScWorkspace(int n_fft)
      : down(n_fft), up(n_fft), spec_down(n_fft), spec_up(n_fft) {}

  // One-sided SC(f, alpha) of a windowed frame into `out` (n_fft/2 + 1).
  // At alpha = 0 both shifts coincide and the result is the periodogram,
  // computed as |X|^2/N so the imaginary part is exactly zero.
  void compute(std::span<const double> frame, double alpha_hz,
               std::span<const std::complex<double>> modulator,
               std::complex<double>* out) {
    const int n_fft = int(down.size());
    const int n = int(frame.size());
    const double scale = 1.0 / n;
    if (alpha_hz == 0.0) {
      for (int i = 0; i < n; ++i) down[i] = frame[i];
      std::fill(down.begin() + n, down.end(), std::complex<double>{});
      detail::fft_forward(down.data(), spec_down.data(), n_fft);
      for (int k = 0; k <= n_fft / 2; ++k)
        out[k] = scale * std::norm(spec_down[k]);
      return;
    }
    for (int i = 0; i < n; ++i) {
      down[i] = frame[i] * modulator[i];           // X(f - alpha/2)
      up[i] = frame[i] * std::conj(modulator[i]);  // X(f + alpha/2)
    }
    std::fill(down.begin() + n, down.end(), std::complex<double>{});
    std::fill(up.begin() + n, up.end(), std::complex<double>{});
    detail::fft_forward(down.data(), spec_down.data(), n_fft);
    detail::fft_forward(up.data(), spec_up.data(), n_fft);
    for (int k = 0; k <= n_fft / 2; ++k)
      out[k] = scale * spec_down[k] * std::conj(spec_up[k]);
  }
};

FrameMatrix windowed_frames(const FrameMatrix& frames,
                            const AnalysisConfig& cfg) {
  FrameMatrix out = frames;
  const std::vector<double> w = window_coefficients(cfg.window, cfg.frame_len);
  for (int t = 0; t < out.n_frames; ++t) {
    auto row = out.row(t);
    for (int i = 0; i < cfg.frame_len; ++i) row[i] *= w[i];
  }
  return out;
}

void check_frames(const FrameMatrix& frames, const AnalysisConfig& cfg) {
  if (frames.n_frames < 1) throw ComputeError("no frames to analyze");
  if (frames.frame_len != cfg.frame_len)
    throw ComputeError("frame length does not match the configuration");
}

}  // namespace

CyclicFrequencyGrid CyclicFrequencyGrid::make(double alpha_max, int n_alpha) {
  if (n_alpha < 1) throw ComputeError("n_alpha must be at least 1");
  if (alpha_max < 0) throw ComputeError("alpha_max must be non-negative");
  if (n_alpha > 1 && alpha_max <= 0)
    throw ComputeError("alpha_max must be positive for n_alpha > 1");
  CyclicFrequencyGrid grid;
  grid.values.resize(n_alpha, 0.0);
  for (int i = 1; i < n_alpha; ++i)
    grid.values[i] = alpha_max * i / (n_alpha - 1);
  return grid;
}

ComplexSpectrum spectral_correlation_frame(std::span<const double> frame,
                                           double alpha_hz, int sample_rate,
                                           const AnalysisConfig& cfg) {
  check_alpha(alpha_hz, sample_rate);
  if (frame.empty()) throw ComputeError("empty frame");
  if (int(frame.size()) > cfg.n_fft)
    throw ComputeError("frame longer than n_fft");

  const auto modulator =
      make_modulator(int(frame.size()), alpha_hz, sample_rate);
  ScWorkspace ws(cfg.n_fft);
  ComplexSpectrum sc;
  sc.bin_hz = double(sample_rate) / cfg.n_fft;
  sc.bins.resize(cfg.n_fft / 2 + 1);
  ws.compute(frame, alpha_hz, modulator, sc.bins.data());
  return sc;
}

std::complex<double> cyclic_autocorrelation(std::span<const double> frame,
                                            int tau, double alpha_hz,
                                            int sample_rate) {
  check_alpha(alpha_hz, sample_rate);
  const int n = int(frame.size());
  if (tau < 0 || tau >= n)
    throw ComputeError("tau out of range: " + std::to_string(tau));
  const double w = 2.0 * kPi * alpha_hz / sample_rate;
  std::complex<double> acc{};
  for (int i = tau; i < n; ++i)
    acc += frame[i] * frame[i - tau] * std::polar(1.0, -w * i);
  return std::polar(1.0, kPi * alpha_hz * tau / sample_rate) * acc /
         double(n);
}

ComplexSpectrum scd_direct_oracle(std::span<const double> frame,
                                  double alpha_hz, int sample_rate,
                                  const AnalysisConfig& cfg) {
  check_alpha(alpha_hz, sample_rate);
  const int n = int(frame.size());
  if (n < 1) throw ComputeError("empty frame");

  std::vector<std::complex<double>> caf(n);
  for (int tau = 0; tau < n; ++tau)
    caf[tau] = std::conj(cyclic_autocorrelation(frame, tau, alpha_hz,
                                                sample_rate));

  // SC(f, alpha) = sum_{tau=-(N-1)}^{N-1} conj(r[|tau|]) e^{-j2pi f tau/fs};
  // the +-tau pair collapses to a cosine because the lag sequence is even.
  ComplexSpectrum out;
  out.bin_hz = double(sample_rate) / cfg.n_fft;
  out.bins.resize(cfg.n_fft / 2 + 1);
  for (int k = 0; k <= cfg.n_fft / 2; ++k) {
    std::complex<double> acc = caf[0];
    const double w = 2.0 * kPi * k / cfg.n_fft;
    for (int tau = 1; tau < n; ++tau)
      acc += caf[tau] * (2.0 * std::cos(w * tau));
    out.bins[k] = acc;
  }
  return out;
}

ScdMap scd_map_of_frames(const FrameMatrix& frames, int sample_rate,
                         const AnalysisConfig& cfg, int n_jobs) {
  cfg.validate();
  check_frames(frames, cfg);
  check_alpha(cfg.alpha_max, sample_rate);

  const FrameMatrix wf = windowed_frames(frames, cfg);
  const int n_bins = cfg.n_fft / 2 + 1;

  ScdMap map;
  map.n_bins = n_bins;
  map.f_axis = f_axis_for(cfg, sample_rate);
  map.alpha_axis = CyclicFrequencyGrid::make(cfg.alpha_max, cfg.n_alpha);
  map.data.assign(std::size_t(n_bins) * cfg.n_alpha, {});

  const int t_count = wf.n_frames;
  detail::parallel_for(cfg.n_alpha, n_jobs, [&](int j) {
    const auto modulator =
        make_modulator(cfg.frame_len, map.alpha_axis.values[j], sample_rate);
    ScWorkspace ws(cfg.n_fft);
    std::vector<std::complex<double>> acc(n_bins), sc(n_bins);
    for (int t = 0; t < t_count; ++t) {
      ws.compute(wf.row(t), map.alpha_axis.values[j], modulator, sc.data());
      for (int k = 0; k < n_bins; ++k) acc[k] += sc[k];
    }
    for (int k = 0; k < n_bins; ++k)
      map.data[std::size_t(k) * cfg.n_alpha + j] = acc[k] / double(t_count);
  });
  return map;
}

ScdMap scd_map(const AudioSignal& signal, const AnalysisConfig& cfg,
               int n_jobs) {
  return scd_map_of_frames(frame_signal(signal, cfg), signal.sample_rate, cfg,
                           n_jobs);
}

TemporalScdMap scd_a(const AudioSignal& signal, const AnalysisConfig& cfg,
                     int n_jobs) {
  cfg.validate();
  check_alpha(cfg.alpha_max, signal.sample_rate);
  const FrameMatrix wf = windowed_frames(frame_signal(signal, cfg), cfg);
  const int n_bins = cfg.n_fft / 2 + 1;
  const CyclicFrequencyGrid grid =
      CyclicFrequencyGrid::make(cfg.alpha_max, cfg.n_alpha);

  TemporalScdMap map;
  map.axis_kind = TemporalScdMap::Axis::cyclic;
  map.rows = cfg.n_alpha;
  map.n_frames = wf.n_frames;
  map.axis = grid.values;
  map.data.assign(std::size_t(cfg.n_alpha) * wf.n_frames, {});

  detail::parallel_for(cfg.n_alpha, n_jobs, [&](int j) {
    const auto modulator =
        make_modulator(cfg.frame_len, grid.values[j], signal.sample_rate);
    ScWorkspace ws(cfg.n_fft);
    std::vector<std::complex<double>> sc(n_bins);
    for (int t = 0; t < wf.n_frames; ++t) {
      ws.compute(wf.row(t), grid.values[j], modulator, sc.data());
      std::complex<double> acc{};
      for (int k = 0; k < n_bins; ++k) acc += sc[k];
      map.data[std::size_t(j) * wf.n_frames + t] = acc / double(n_bins);
    }
  });
  return map;
}

TemporalScdMap scd_b(const AudioSignal& signal, const AnalysisConfig& cfg,
                     int n_jobs) {
  cfg.validate();
  check_alpha(cfg.alpha_max, signal.sample_rate);
  const FrameMatrix wf = windowed_frames(frame_signal(signal, cfg), cfg);
  const int n_bins = cfg.n_fft / 2 + 1;
  const CyclicFrequencyGrid grid =
      CyclicFrequencyGrid::make(cfg.alpha_max, cfg.n_alpha);

  TemporalScdMap map;
  map.axis_kind = TemporalScdMap::Axis::spectral;
  map.rows = n_bins;
  map.n_frames = wf.n_frames;
  map.axis = f_axis_for(cfg, signal.sample_rate);
  map.data.assign(std::size_t(n_bins) * wf.n_frames, {});

  std::vector<std::vector<std::complex<double>>> modulators(cfg.n_alpha);
  for (int j = 0; j < cfg.n_alpha; ++j)
    modulators[j] =
        make_modulator(cfg.frame_len, grid.values[j], signal.sample_rate);

  detail::parallel_for(wf.n_frames, n_jobs, [&](int t) {
    ScWorkspace ws(cfg.n_fft);
    std::vector<std::complex<double>> acc(n_bins), sc(n_bins);
    for (int j = 0; j < cfg.n_alpha; ++j) {
      ws.compute(wf.row(t), grid.values[j], modulators[j], sc.data());
      for (int k = 0; k < n_bins; ++k) acc[k] += sc[k];
    }
    for (int k = 0; k < n_bins; ++k)
      map.data[std::size_t(k) * wf.n_frames + t] = acc[k] / double(cfg.n_alpha);
  });
  return map;
}

MarginalProfiles marginal_profiles(const ScdMap& map) {
  MarginalProfiles p;
  const int n_alpha = map.n_alpha();
  p.scd_alpha.assign(n_alpha, 0.0);
  p.scd_f.assign(map.n_bins, 0.0);
  for (int k = 0; k < map.n_bins; ++k) {
    double row_sum = 0.0;
    for (int j = 0; j < n_alpha; ++j) {
      const double m = std::abs(map.at(k, j));
      p.scd_alpha[j] += m;
      row_sum += m;
    }
    p.scd_f[k] = row_sum / n_alpha;
  }
  for (double& v : p.scd_alpha) v /= map.n_bins;
  return p;
}

}  // namespace cyclo
