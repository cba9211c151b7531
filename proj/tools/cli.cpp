#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "cyclo/dsp.hpp"
#include "cyclo/error.hpp"
#include "cyclo/features.hpp"
#include "cyclo/metrics.hpp"
#include "cyclo/scd.hpp"
#include "cyclo/synth.hpp"
#include "cyclo/vocoder.hpp"
#include "heatmap.hpp"

namespace fs = std::filesystem;

namespace cyclo::cli {
namespace {

struct CommonOptions {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  int n_fft = 512;
  int n_alpha = 257;
  double alpha_max = -1.0;  // < 0: per-representation default
  std::string window = "hamming";
  std::string format = "cycf";
  std::string out_dir = ".";
  bool db = false;
  std::uint64_t seed = 42;
  int jobs = 1;
};

void add_common_options(CLI::App* cmd, CommonOptions& o, bool with_jobs) {
  cmd->add_option("--frame-ms", o.frame_ms, "Frame length in ms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--hop-ms", o.hop_ms, "Hop in ms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--nfft", o.n_fft, "DFT length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--alpha-max", o.alpha_max,
                  "Top cyclic frequency in Hz (default per representation: "
                  "scd 2000, scd_a 2500, scd_b 500)");
  cmd->add_option("--n-alpha", o.n_alpha, "Cyclic-frequency grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--window", o.window, "Analysis window")
      ->check(CLI::IsMember({"hamming", "hann", "rectangular"}))
      ->capture_default_str();
  cmd->add_option("--format", o.format, "Matrix file format")
      ->check(CLI::IsMember({"cycf", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_flag("--db", o.db, "Render heatmaps on a dB scale");
  cmd->add_option("--seed", o.seed, "Base seed for noise generators")
      ->capture_default_str();
  if (with_jobs)
    cmd->add_option("--jobs", o.jobs, "Worker threads for batch extraction")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

WindowKind parse_window(const std::string& name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "rectangular") return WindowKind::rectangular;
  return WindowKind::hamming;
}

AnalysisConfig make_config(const CommonOptions& o, int sample_rate,
                           double alpha_max) {
  AnalysisConfig cfg;
  cfg.frame_len = int(std::lround(o.frame_ms * sample_rate / 1000.0));
  cfg.hop = int(std::lround(o.hop_ms * sample_rate / 1000.0));
  cfg.n_fft = o.n_fft;
  cfg.window = parse_window(o.window);
  cfg.alpha_max = alpha_max;
  cfg.n_alpha = o.n_alpha;
  cfg.validate();
  if (alpha_max > sample_rate / 2.0)
    throw ComputeError("--alpha-max exceeds the Nyquist frequency");
  return cfg;
}

double alpha_max_for(const CommonOptions& o, FeatureKind kind) {
  return o.alpha_max >= 0.0 ? o.alpha_max : default_alpha_max(kind);
}

FeatureMatrix to_feature(FeatureKind kind, std::uint32_t rows,
                         std::uint32_t cols,
                         const std::vector<std::complex<double>>& data,
                         const AnalysisConfig& cfg, int sample_rate) {
  FeatureMatrix m;
  m.kind = kind;
  m.rows = rows;
  m.cols = cols;
  m.f_s = float(sample_rate);
  m.alpha_max = float(cfg.alpha_max);
  m.frame_len = std::uint32_t(cfg.frame_len);
  m.hop = std::uint32_t(cfg.hop);
  m.n_fft = std::uint32_t(cfg.n_fft);
  m.data.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    m.data[i] = float(std::abs(data[i]));
  return m;
}

void write_matrix(const FeatureMatrix& m, const fs::path& base,
                  const CommonOptions& o) {
  if (o.format == "csv")
    write_feature_csv(m, base.string() + ".csv");
  else
    write_feature_file(m, base.string() + ".cycf");
}

void write_heatmap_of(const FeatureMatrix& m, const fs::path& png,
                      const CommonOptions& o) {
  std::vector<double> data(m.data.begin(), m.data.end());
  write_heatmap_png(png, data, int(m.rows), int(m.cols),
                    o.db ? HeatmapScale::db : HeatmapScale::linear);
}

void write_series_csv(const fs::path& path, const std::vector<double>& v) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open file for writing: " + path.string());
  char buf[64];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, "%.9g", x);
    out << buf << '\n';
  }
  if (!out) throw FormatError("write failed: " + path.string());
}

void write_diff(const DiffMap& d, const fs::path& base) {
  std::ofstream out(base.string() + ".csv", std::ios::trunc);
  if (!out)
    throw FormatError("cannot open file for writing: " + base.string());
  char buf[64];
  for (int r = 0; r < d.rows; ++r) {
    for (int c = 0; c < d.cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.9g",
                    d.data[std::size_t(r) * d.cols + c]);
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
  out.close();
  write_heatmap_png(base.string() + ".png", d.data, d.rows, d.cols,
                    HeatmapScale::signed_diff);
}

// ---------------------------------------------------------------- scd ----

int run_scd(const std::string& input, const CommonOptions& o) {
  const AudioSignal sig = load_wav(input);
  fs::create_directories(o.out_dir);
  const std::string stem = fs::path(input).stem().string();
  const fs::path out = o.out_dir;

  const AnalysisConfig scd_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd));
  const ScdMap map = scd_map(sig, scd_cfg, 0);
  FeatureMatrix scd_feat =
      to_feature(FeatureKind::scd, std::uint32_t(map.n_bins),
                 std::uint32_t(map.n_alpha()), map.data, scd_cfg,
                 sig.sample_rate);
  write_matrix(scd_feat, out / (stem + "_scd"), o);
  write_heatmap_of(scd_feat, out / (stem + "_scd.png"), o);

  const MarginalProfiles prof = marginal_profiles(map);
  write_series_csv(out / (stem + "_scd_alpha.csv"), prof.scd_alpha);
  write_series_csv(out / (stem + "_scd_f.csv"), prof.scd_f);

  const AnalysisConfig a_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd_a));
  const TemporalScdMap a = scd_a(sig, a_cfg, 0);
  FeatureMatrix a_feat =
      to_feature(FeatureKind::scd_a, std::uint32_t(a.rows),
                 std::uint32_t(a.n_frames), a.data, a_cfg, sig.sample_rate);
  write_matrix(a_feat, out / (stem + "_scd_a"), o);
  write_heatmap_of(a_feat, out / (stem + "_scd_a.png"), o);

  const AnalysisConfig b_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd_b));
  const TemporalScdMap b = scd_b(sig, b_cfg, 0);
  FeatureMatrix b_feat =
      to_feature(FeatureKind::scd_b, std::uint32_t(b.rows),
                 std::uint32_t(b.n_frames), b.data, b_cfg, sig.sample_rate);
  write_matrix(b_feat, out / (stem + "_scd_b"), o);
  write_heatmap_of(b_feat, out / (stem + "_scd_b.png"), o);
  return 0;
}

// --------------------------------------------------------- synth-demo ----

int run_synth_demo(const CommonOptions& o) {
  fs::create_directories(o.out_dir);
  const fs::path out = o.out_dir;
  const TestSignalKind kinds[4] = {
      TestSignalKind::am_noise, TestSignalKind::noise_mixture,
      TestSignalKind::am_sinusoid, TestSignalKind::am_sinusoid_noisy};

  for (int i = 0; i < 4; ++i) {
    TestSignalSpec spec = TestSignalSpec::defaults(kinds[i]);
    spec.seed = o.seed;
    const AudioSignal sig = gen_test_signal(spec);
    const std::string name = "x" + std::to_string(i + 1);

    write_wav(out / (name + ".wav"), sig);
    write_series_csv(out / (name + "_waveform.csv"), sig.samples);

    const AnalysisConfig cfg =
        make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd));

    FeatureMatrix stft = extract_features(sig, FeatureKind::stft, cfg);
    write_matrix(stft, out / (name + "_stft"), o);
    write_heatmap_of(stft, out / (name + "_stft.png"), o);

    const ScdMap map = scd_map(sig, cfg, 0);
    FeatureMatrix scd_feat =
        to_feature(FeatureKind::scd, std::uint32_t(map.n_bins),
                   std::uint32_t(map.n_alpha()), map.data, cfg,
                   sig.sample_rate);
    write_matrix(scd_feat, out / (name + "_scd"), o);
    write_heatmap_of(scd_feat, out / (name + "_scd.png"), o);

    const MarginalProfiles prof = marginal_profiles(map);
    write_series_csv(out / (name + "_scd_alpha.csv"), prof.scd_alpha);
    write_series_csv(out / (name + "_scd_f.csv"), prof.scd_f);
  }
  return 0;
}

// -------------------------------------------------------------- vocode ----

int run_vocode(const std::string& input, const std::string& method_name,
               const CommonOptions& o) {
  const AudioSignal sig = load_wav(input);
  fs::create_directories(o.out_dir);
  const fs::path out = o.out_dir;
  const std::string stem =
      fs::path(input).stem().string() + "_" + method_name;
  const VocoderMethod method = method_name == "lpc"
                                   ? VocoderMethod::lpc
                                   : VocoderMethod::sinusoidal;

  // Classic 20 ms / 10 ms Hamming convention for the vocoder itself; the
  // flags control the SCD analysis configuration.
  AnalysisConfig vocoder_cfg;
  vocoder_cfg.frame_len = sig.sample_rate * 20 / 1000;
  vocoder_cfg.hop = sig.sample_rate * 10 / 1000;
  vocoder_cfg.n_fft = std::max(o.n_fft, vocoder_cfg.frame_len);
  vocoder_cfg.window = WindowKind::hamming;
  const AudioSignal resynth =
      resynthesize_utterance(sig, method, vocoder_cfg, o.seed);
  write_wav(out / (stem + ".wav"), resynth);

  const AnalysisConfig scd_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd));
  const ScdMap ref = scd_map(sig, scd_cfg, 0);
  const ScdMap test = scd_map(resynth, scd_cfg, 0);
  write_diff(scd_difference_map(ref, test, DiffMode::absolute),
             out / (stem + "_scd_diff_abs"));
  write_diff(scd_difference_map(ref, test, DiffMode::relative),
             out / (stem + "_scd_diff_rel"));

  const AnalysisConfig a_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd_a));
  write_diff(scd_difference_map(scd_a(sig, a_cfg, 0), scd_a(resynth, a_cfg, 0),
                                DiffMode::relative),
             out / (stem + "_scd_a_diff_rel"));

  const AnalysisConfig b_cfg =
      make_config(o, sig.sample_rate, alpha_max_for(o, FeatureKind::scd_b));
  write_diff(scd_difference_map(scd_b(sig, b_cfg, 0), scd_b(resynth, b_cfg, 0),
                                DiffMode::relative),
             out / (stem + "_scd_b_diff_rel"));

  // STFT magnitude relative difference, same functional as the SCD maps.
  const FeatureMatrix stft_ref =
      extract_features(sig, FeatureKind::stft, scd_cfg);
  const FeatureMatrix stft_test =
      extract_features(resynth, FeatureKind::stft, scd_cfg);
  DiffMap stft_diff;
  stft_diff.rows = int(stft_ref.rows);
  stft_diff.cols = int(stft_ref.cols);
  stft_diff.mode = DiffMode::relative;
  stft_diff.data.resize(stft_ref.data.size());
  float peak = 0.f;
  for (float v : stft_ref.data) peak = std::max(peak, v);
  const double eps = peak > 0.f ? 1e-12 * peak : 1.0;
  for (std::size_t i = 0; i < stft_ref.data.size(); ++i)
    stft_diff.data[i] =
        (stft_ref.data[i] - stft_test.data[i]) / (stft_ref.data[i] + eps);
  write_diff(stft_diff, out / (stem + "_stft_diff_rel"));
  return 0;
}

// ------------------------------------------------------------ features ----

int run_features(const std::string& list_path, const std::string& kind_name,
                 const CommonOptions& o) {
  FeatureKind kind = FeatureKind::scd;
  if (kind_name == "scd_a") kind = FeatureKind::scd_a;
  else if (kind_name == "scd_b") kind = FeatureKind::scd_b;
  else if (kind_name == "stft") kind = FeatureKind::stft;

  std::ifstream list(list_path);
  if (!list) throw FormatError("cannot open list file: " + list_path);
  std::vector<std::string> files;
  std::string line;
  while (std::getline(list, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    files.push_back(line);
  }
  if (files.empty())
    throw FormatError("list file names no inputs: " + list_path);

  fs::create_directories(o.out_dir);
  const fs::path out = o.out_dir;

  // Training-style parameterization: per-kind alpha_max, 400-frame axis.
  const int fixed_frames = 400;

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      try {
        const AudioSignal sig = load_wav(files[i]);
        const AnalysisConfig cfg =
            make_config(o, sig.sample_rate, alpha_max_for(o, kind));
        const FeatureMatrix m =
            extract_features(sig, kind, cfg, fixed_frames, false, 1);
        const std::string stem = fs::path(files[i]).stem().string();
        write_matrix(m, out / (stem + "_" + kind_name), o);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(o.jobs, int(files.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return 0;
}

// --------------------------------------------------------------- score ----

int run_score(const std::string& score_path) {
  const ScoreSet set = load_score_file(score_path);
  const EerResult eer = compute_eer(set);
  const double min_dcf = compute_min_dcf(set);
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "EER: %.4f%%\nthreshold: %.6g\nminDCF: %.4f\n",
                100.0 * eer.eer, eer.threshold, min_dcf);
  std::cout << buf << std::flush;
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"cyclostationary speech analysis toolkit"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string input, method = "sinusoidal", kind = "scd";

  CLI::App* scd_cmd = app.add_subcommand(
      "scd", "SCD map, SCD_a, SCD_b and marginal profiles of a WAV file");
  scd_cmd->add_option("input", input, "input WAV (PCM16 mono)")->required();
  add_common_options(scd_cmd, o, false);

  CLI::App* synth_cmd = app.add_subcommand(
      "synth-demo", "Generate the four modulated test signals with their "
                    "spectrogram, SCD map and marginal profiles");
  add_common_options(synth_cmd, o, false);

  CLI::App* vocode_cmd = app.add_subcommand(
      "vocode", "Resynthesize a WAV with a classic vocoder and emit "
                "SCD difference maps");
  vocode_cmd->add_option("input", input, "input WAV (PCM16 mono)")
      ->required();
  vocode_cmd->add_option("--method", method, "vocoder")
      ->check(CLI::IsMember({"sinusoidal", "lpc"}))
      ->capture_default_str();
  add_common_options(vocode_cmd, o, false);

  CLI::App* feat_cmd = app.add_subcommand(
      "features", "Batch feature extraction over a list of WAV files");
  feat_cmd->add_option("list", input, "text file with one WAV path per line")
      ->required();
  feat_cmd->add_option("--kind", kind, "feature representation")
      ->check(CLI::IsMember({"scd", "scd_a", "scd_b", "stft"}))
      ->capture_default_str();
  add_common_options(feat_cmd, o, true);

  CLI::App* score_cmd = app.add_subcommand(
      "score", "EER and minDCF of a labeled score file");
  score_cmd->add_option("scores", input, "score list")->required();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (scd_cmd->parsed()) return run_scd(input, o);
    if (synth_cmd->parsed()) return run_synth_demo(o);
    if (vocode_cmd->parsed()) return run_vocode(input, method, o);
    if (feat_cmd->parsed()) return run_features(input, kind, o);
    if (score_cmd->parsed()) return run_score(input);
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const ComputeError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

int dispatch(const std::vector<std::string>& args) {
  std::vector<std::string> with_prog = args;
  with_prog.insert(with_prog.begin(), "cyclo");
  std::vector<const char*> argv;
  argv.reserve(with_prog.size());
  for (const auto& a : with_prog) argv.push_back(a.c_str());
  return dispatch(int(argv.size()), argv.data());
}

}  // namespace cyclo::cli
