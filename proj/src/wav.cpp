#include "roomray/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace roomray {

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void put_u16(std::ofstream& out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(samples.size() * sizeof(float));
  const std::uint32_t rate = static_cast<std::uint32_t>(sample_rate);

  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(out, 16);
  put_u16(out, 3);  // IEEE float
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * sizeof(float));
  put_u16(out, sizeof(float));
  put_u16(out, 32);
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (double v : samples) {
    const float f = static_cast<float>(v);
    char b[4];
    std::memcpy(b, &f, 4);
    out.write(b, 4);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);

  char tag[5] = {};
  in.read(tag, 4);
  if (std::strncmp(tag, "RIFF", 4) != 0) {
    throw std::runtime_error("not a RIFF file: " + path);
  }
  get_u32(in);
  in.read(tag, 4);
  if (std::strncmp(tag, "WAVE", 4) != 0) {
    throw std::runtime_error("not a WAVE file: " + path);
  }

  WavData wav;
  std::uint16_t format = 0, channels = 0, bits = 0;
  while (in.read(tag, 4)) {
    const std::uint32_t size = get_u32(in);
    if (std::strncmp(tag, "fmt ", 4) == 0) {
      format = get_u16(in);
      channels = get_u16(in);
      wav.sample_rate = get_u32(in);
      get_u32(in);
      get_u16(in);
      bits = get_u16(in);
      if (size > 16) in.seekg(size - 16, std::ios::cur);
    } else if (std::strncmp(tag, "data", 4) == 0) {
      if (format != 3 || channels != 1 || bits != 32) {
        throw std::runtime_error(
            "unsupported WAV layout (need mono 32-bit float): " + path);
      }
      const std::size_t count = size / sizeof(float);
      wav.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        char b[4];
        in.read(b, 4);
        float f;
        std::memcpy(&f, b, 4);
        wav.samples[i] = f;
      }
      return wav;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
  }
  throw std::runtime_error("no data chunk in " + path);
}

}  // namespace roomray
