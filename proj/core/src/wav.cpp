#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "cyclo/dsp.hpp"
#include "cyclo/error.hpp"

namespace cyclo {
namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

}  // namespace

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0)
    throw FormatError("not a wav: missing RIFF magic in " + path.string());
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError("not a wav: missing WAVE form type in " + path.string());

  bool have_fmt = false;
  std::uint16_t audio_format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data_chunk = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t chunk_len = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size())
      throw FormatError("not a wav: truncated chunk in " + path.string());
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16)
        throw FormatError("not a wav: fmt chunk too short in " + path.string());
      audio_format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      sample_rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_chunk = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt)
    throw FormatError("not a wav: no fmt chunk in " + path.string());
  if (audio_format != 1)
    throw FormatError("unsupported encoding: audio_format " +
                      std::to_string(audio_format) + " (need PCM=1) in " +
                      path.string());
  if (channels != 1)
    throw FormatError("unsupported encoding: " + std::to_string(channels) +
                      " channels (need mono) in " + path.string());
  if (bits != 16)
    throw FormatError("unsupported encoding: " + std::to_string(bits) +
                      " bits_per_sample (need 16) in " + path.string());
  if (sample_rate == 0)
    throw FormatError("not a wav: zero sample_rate in " + path.string());
  if (!data_chunk)
    throw FormatError("not a wav: no data chunk in " + path.string());
  if (data_len < 2) throw FormatError("empty audio: " + path.string());

  AudioSignal signal;
  signal.sample_rate = int(sample_rate);
  const std::size_t n = data_len / 2;
  signal.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int16_t v =
        std::int16_t(read_u16(data_chunk + 2 * i));
    signal.samples[i] = double(v) / 32768.0;
  }
  return signal;
}

void write_wav(const std::filesystem::path& path, const AudioSignal& signal) {
  if (signal.sample_rate <= 0)
    throw ComputeError("cannot write wav with non-positive sample rate");
  const std::uint32_t n = std::uint32_t(signal.samples.size());
  const std::uint32_t data_len = n * 2;

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, std::uint32_t(signal.sample_rate));
  put_u32(out, std::uint32_t(signal.sample_rate) * 2);  // byte rate
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);
  for (double s : signal.samples) {
    long v = std::lrint(s * 32768.0);
    if (v > 32767) v = 32767;
    if (v < -32768) v = -32768;
    put_u16(out, std::uint16_t(std::int16_t(v)));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FormatError("cannot open file for writing: " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             std::streamsize(out.size()));
  if (!file) throw FormatError("write failed: " + path.string());
}

}  // namespace cyclo
