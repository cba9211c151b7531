#include "heatmap.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cyclo/error.hpp"

namespace cyclo::cli {
namespace {

struct Rgb {
  double r, g, b;
};

// Viridis anchors at t = 0, 1/8, ..., 1; linear interpolation in between.
constexpr Rgb kViridis[9] = {
    {68, 1, 84},    {71, 44, 122},  {59, 81, 139},
    {44, 113, 142}, {33, 144, 141}, {39, 173, 129},
    {92, 200, 99},  {170, 220, 50}, {253, 231, 37},
};

void colorize(double t, unsigned char* px) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * 8.0;
  const int lo = std::min(7, int(pos));
  const double frac = pos - lo;
  px[0] = (unsigned char)std::lround(kViridis[lo].r +
                                     frac * (kViridis[lo + 1].r - kViridis[lo].r));
  px[1] = (unsigned char)std::lround(kViridis[lo].g +
                                     frac * (kViridis[lo + 1].g - kViridis[lo].g));
  px[2] = (unsigned char)std::lround(kViridis[lo].b +
                                     frac * (kViridis[lo + 1].b - kViridis[lo].b));
}

}  // namespace

void write_heatmap_png(const std::filesystem::path& path,
                       const std::vector<double>& data, int rows, int cols,
                       HeatmapScale scale) {
  if (rows <= 0 || cols <= 0 ||
      data.size() != std::size_t(rows) * std::size_t(cols))
    throw ComputeError("heatmap dimensions do not match the payload");

  double lo = data[0], hi = data[0], peak_abs = 0.0;
  for (double v : data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    peak_abs = std::max(peak_abs, std::abs(v));
  }

  auto normalized = [&](double v) {
    switch (scale) {
      case HeatmapScale::linear:
        return hi > lo ? (v - lo) / (hi - lo) : 0.0;
      case HeatmapScale::db: {
        if (peak_abs <= 0.0) return 0.0;
        const double db = 20.0 * std::log10(std::max(v, 0.0) / peak_abs +
                                            1e-10);
        return (std::clamp(db, -80.0, 0.0) + 80.0) / 80.0;
      }
      case HeatmapScale::signed_diff:
        return peak_abs > 0.0 ? 0.5 + v / (2.0 * peak_abs) : 0.5;
    }
    return 0.0;
  };

  std::vector<unsigned char> image(std::size_t(rows) * cols * 3);
  for (int r = 0; r < rows; ++r) {
    // row 0 of the matrix at the bottom of the image
    unsigned char* line = image.data() + std::size_t(rows - 1 - r) * cols * 3;
    for (int c = 0; c < cols; ++c)
      colorize(normalized(data[std::size_t(r) * cols + c]), line + 3 * c);
  }

  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw FormatError("cannot open file for writing: " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw FormatError("png write failed: " + path.string());
  }

  png_init_io(png, fp);
  png_set_IHDR(png, info, png_uint_32(cols), png_uint_32(rows), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < rows; ++r)
    png_write_row(png, image.data() + std::size_t(r) * cols * 3);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace cyclo::cli
