#include "cyclo/features.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "cyclo/error.hpp"
#include "cyclo/scd.hpp"

namespace cyclo {
namespace {

constexpr char kMagic[4] = {'C', 'Y', 'C', 'F'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 36;

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(char(v & 0xff));
  out.push_back(char((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

std::uint16_t take_u16(const unsigned char* p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

std::uint32_t take_u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

float take_f32(const unsigned char* p) {
  const std::uint32_t bits = take_u32(p);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

float store_value(double magnitude, bool log_compress) {
  return float(log_compress ? std::log(magnitude + 1e-10) : magnitude);
}

// Frame indices after forcing the time axis to `fixed`: cyclic replication
// from the start when short, head crop when long.
std::vector<int> frame_selection(int available, int fixed) {
  std::vector<int> idx(fixed);
  for (int i = 0; i < fixed; ++i) idx[i] = i % available;
  return idx;
}

FeatureMatrix from_temporal(const TemporalScdMap& map,
                            std::optional<int> fixed_frames,
                            bool log_compress) {
  FeatureMatrix m;
  m.rows = std::uint32_t(map.rows);
  const int cols = fixed_frames.value_or(map.n_frames);
  m.cols = std::uint32_t(cols);
  m.data.resize(std::size_t(m.rows) * m.cols);
  const std::vector<int> idx = frame_selection(map.n_frames, cols);
  for (std::uint32_t r = 0; r < m.rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.data[std::size_t(r) * m.cols + c] =
          store_value(std::abs(map.at(int(r), idx[c])), log_compress);
  return m;
}

}  // namespace

const char* feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::scd: return "scd";
    case FeatureKind::scd_a: return "scd_a";
    case FeatureKind::scd_b: return "scd_b";
    case FeatureKind::stft: return "stft";
  }
  return "unknown";
}

double default_alpha_max(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::scd: return 2000.0;
    case FeatureKind::scd_a: return 2500.0;
    case FeatureKind::scd_b: return 500.0;
    case FeatureKind::stft: return 0.0;
  }
  return 0.0;
}

FeatureMatrix extract_features(const AudioSignal& signal, FeatureKind kind,
                               const AnalysisConfig& cfg,
                               std::optional<int> fixed_frames,
                               bool log_compress, int n_jobs) {
  cfg.validate();
  if (fixed_frames && *fixed_frames < 1)
    throw ComputeError("fixed_frames must be positive");

  FeatureMatrix m;
  m.kind = kind;
  m.f_s = float(signal.sample_rate);
  m.alpha_max = float(cfg.alpha_max);
  m.frame_len = std::uint32_t(cfg.frame_len);
  m.hop = std::uint32_t(cfg.hop);
  m.n_fft = std::uint32_t(cfg.n_fft);
  m.log_compressed = log_compress;

  switch (kind) {
    case FeatureKind::scd: {
      FrameMatrix frames = frame_signal(signal, cfg);
      if (fixed_frames && *fixed_frames != frames.n_frames) {
        FrameMatrix sel;
        sel.n_frames = *fixed_frames;
        sel.frame_len = frames.frame_len;
        sel.data.resize(std::size_t(sel.n_frames) * sel.frame_len);
        const auto idx = frame_selection(frames.n_frames, sel.n_frames);
        for (int t = 0; t < sel.n_frames; ++t) {
          auto src = frames.row(idx[t]);
          std::copy(src.begin(), src.end(), sel.row(t).begin());
        }
        frames = std::move(sel);
      }
      const ScdMap map =
          scd_map_of_frames(frames, signal.sample_rate, cfg, n_jobs);
      m.rows = std::uint32_t(map.n_bins);
      m.cols = std::uint32_t(map.n_alpha());
      m.data.resize(map.data.size());
      for (std::size_t i = 0; i < map.data.size(); ++i)
        m.data[i] = store_value(std::abs(map.data[i]), log_compress);
      break;
    }
    case FeatureKind::scd_a: {
      const FeatureMatrix t = from_temporal(scd_a(signal, cfg, n_jobs),
                                            fixed_frames, log_compress);
      m.rows = t.rows;
      m.cols = t.cols;
      m.data = t.data;
      break;
    }
    case FeatureKind::scd_b: {
      const FeatureMatrix t = from_temporal(scd_b(signal, cfg, n_jobs),
                                            fixed_frames, log_compress);
      m.rows = t.rows;
      m.cols = t.cols;
      m.data = t.data;
      break;
    }
    case FeatureKind::stft: {
      const FrameMatrix frames = frame_signal(signal, cfg);
      const auto w = window_coefficients(cfg.window, cfg.frame_len);
      const int n_bins = cfg.n_fft / 2 + 1;
      const int cols = fixed_frames.value_or(frames.n_frames);
      m.rows = std::uint32_t(n_bins);
      m.cols = std::uint32_t(cols);
      m.data.resize(std::size_t(n_bins) * cols);

      std::vector<float> column(n_bins);
      std::vector<double> windowed(cfg.frame_len);
      // Cache per-source-frame columns; replication reuses them.
      std::vector<std::vector<float>> cache(frames.n_frames);
      const auto idx = frame_selection(frames.n_frames, cols);
      for (int c = 0; c < cols; ++c) {
        const int t = idx[c];
        if (cache[t].empty()) {
          const auto raw = frames.row(t);
          for (int i = 0; i < cfg.frame_len; ++i) windowed[i] = raw[i] * w[i];
          const auto spec = dft(std::span<const double>(windowed), cfg.n_fft);
          cache[t].resize(n_bins);
          for (int k = 0; k < n_bins; ++k)
            cache[t][k] = store_value(std::abs(spec[k]), log_compress);
        }
        for (int k = 0; k < n_bins; ++k)
          m.data[std::size_t(k) * cols + c] = cache[t][k];
      }
      break;
    }
  }
  return m;
}

void write_feature_file(const FeatureMatrix& m,
                        const std::filesystem::path& path) {
  if (m.data.size() != std::size_t(m.rows) * m.cols)
    throw ComputeError("feature matrix payload does not match rows*cols");
  std::string out;
  out.reserve(kHeaderSize + m.data.size() * 4);
  out.append(kMagic, 4);
  put_u16(out, kVersion);
  out.push_back(char(std::uint8_t(m.kind)));
  out.push_back(char(m.log_compressed ? 1 : 0));
  put_u32(out, m.rows);
  put_u32(out, m.cols);
  put_f32(out, m.f_s);
  put_f32(out, m.alpha_max);
  put_u32(out, m.frame_len);
  put_u32(out, m.hop);
  put_u32(out, m.n_fft);
  for (float v : m.data) put_f32(out, v);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw FormatError("cannot open file for writing: " + path.string());
  file.write(out.data(), std::streamsize(out.size()));
  if (!file) throw FormatError("write failed: " + path.string());
}

FeatureMatrix read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open feature file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderSize)
    throw FormatError("feature file too short: " + path.string());
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("bad magic in feature file: " + path.string());
  const std::uint16_t version = take_u16(bytes.data() + 4);
  if (version != kVersion)
    throw FormatError("unsupported feature file version " +
                      std::to_string(version) + ": " + path.string());
  const std::uint8_t kind = bytes[6];
  if (kind > 3)
    throw FormatError("bad feature kind " + std::to_string(kind) + ": " +
                      path.string());

  FeatureMatrix m;
  m.kind = FeatureKind(kind);
  m.log_compressed = (bytes[7] & 1) != 0;
  m.rows = take_u32(bytes.data() + 8);
  m.cols = take_u32(bytes.data() + 12);
  m.f_s = take_f32(bytes.data() + 16);
  m.alpha_max = take_f32(bytes.data() + 20);
  m.frame_len = take_u32(bytes.data() + 24);
  m.hop = take_u32(bytes.data() + 28);
  m.n_fft = take_u32(bytes.data() + 32);

  const std::size_t count = std::size_t(m.rows) * m.cols;
  if (bytes.size() != kHeaderSize + count * 4)
    throw FormatError("truncated payload: header declares " +
                      std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                      " but file holds " +
                      std::to_string((bytes.size() - kHeaderSize) / 4) +
                      " values: " + path.string());
  m.data.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    m.data[i] = take_f32(bytes.data() + kHeaderSize + 4 * i);
  return m;
}

void write_feature_csv(const FeatureMatrix& m,
                       const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::trunc);
  if (!file)
    throw FormatError("cannot open file for writing: " + path.string());
  char buf[64];
  for (std::uint32_t r = 0; r < m.rows; ++r) {
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.9g", double(m.at(r, c)));
      if (c) file << ',';
      file << buf;
    }
    file << '\n';
  }
  if (!file) throw FormatError("write failed: " + path.string());
}

}  // namespace cyclo
