#pragma once

#include <filesystem>
#include <vector>

namespace cyclo::cli {

enum class HeatmapScale {
  linear,       // min-max
  db,           // 20 log10(v / peak), 80 dB range
  signed_diff,  // symmetric around zero
};

/// 8-bit RGB PNG of a row-major matrix through a 9-anchor viridis colormap.
/// Row 0 is drawn at the bottom, matching the usual spectrogram layout.
void write_heatmap_png(const std::filesystem::path& path,
                       const std::vector<double>& data, int rows, int cols,
                       HeatmapScale scale);

}  // namespace cyclo::cli
