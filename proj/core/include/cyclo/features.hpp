#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cyclo/dsp.hpp"

namespace cyclo {

enum class FeatureKind : std::uint8_t { scd = 0, scd_a = 1, scd_b = 2, stft = 3 };

const char* feature_kind_name(FeatureKind kind);

/// Preferred alpha_max (Hz) per representation: 2000 (scd), 2500 (scd_a),
/// 500 (scd_b); 0 for stft where the cyclic grid is unused.
double default_alpha_max(FeatureKind kind);

/// Magnitude feature matrix plus the extraction parameters, stored exactly
/// as serialized (f32 payload).
struct FeatureMatrix {
  FeatureKind kind = FeatureKind::scd;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  float f_s = 0.f;
  float alpha_max = 0.f;
  std::uint32_t frame_len = 0;
  std::uint32_t hop = 0;
  std::uint32_t n_fft = 0;
  bool log_compressed = false;
  std::vector<float> data;  // row-major rows x cols

  float at(std::uint32_t r, std::uint32_t c) const {
    return data[std::size_t(r) * cols + c];
  }
};

/// Magnitude of the requested representation (scd: f x alpha; scd_a: alpha x
/// t; scd_b / stft: f x t). With fixed_frames = F the frame axis is forced
/// to F: when T < F frames are replicated cyclically from the start, when
/// T > F the first F are kept. log_compress applies log(x + 1e-10)
/// entrywise.
FeatureMatrix extract_features(const AudioSignal& signal, FeatureKind kind,
                               const AnalysisConfig& cfg,
                               std::optional<int> fixed_frames = std::nullopt,
                               bool log_compress = false, int n_jobs = 0);

/// CYCF container, little-endian: magic "CYCF", u16 version = 1, u8 kind,
/// u8 flags (bit 0 = log-compressed), u32 rows, u32 cols, f32 f_s, f32
/// alpha_max, u32 frame_len, u32 hop, u32 n_fft, then rows*cols f32 values
/// row-major. Round trips are bitwise exact.
void write_feature_file(const FeatureMatrix& m,
                        const std::filesystem::path& path);
FeatureMatrix read_feature_file(const std::filesystem::path& path);

/// Row-major CSV ("%.9g", comma-separated, one matrix row per line).
void write_feature_csv(const FeatureMatrix& m,
                       const std::filesystem::path& path);

}  // namespace cyclo
