#include "store/binary_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace covision {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + k])) << (8 * k);
  return v;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) fail(ErrorKind::MissingFile, "missing file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

std::string encode_depth(const DepthImage& depth) {
  std::string out(kDepthMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(depth.height));
  put_u32(out, static_cast<std::uint32_t>(depth.width));
  out.reserve(out.size() + depth.values.size() * 4);
  for (float v : depth.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

DepthImage decode_depth(const std::string& bytes, const std::string& origin) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kDepthMagic, 4) != 0) {
    fail(ErrorKind::Format, origin + ": bad depth magic, expected \"CVDZ\"");
  }
  const std::uint32_t height = get_u32(bytes, 4);
  const std::uint32_t width = get_u32(bytes, 8);
  const std::uint64_t count = static_cast<std::uint64_t>(height) * width;
  if (height == 0 || width == 0 || bytes.size() != 12 + count * 4) {
    fail(ErrorKind::Format, origin + ": depth payload does not match its " + std::to_string(width) + "x" +
                                std::to_string(height) + " header");
  }
  DepthImage depth(static_cast<int>(width), static_cast<int>(height));
  for (std::uint64_t k = 0; k < count; ++k) depth.values[k] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * k));
  return depth;
}

void write_depth(const std::filesystem::path& path, const DepthImage& depth) {
  write_file(path, encode_depth(depth));
}

DepthImage read_depth(const std::filesystem::path& path) {
  return decode_depth(read_file(path), path.string());
}

std::string encode_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  for (double v : image.values) {
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
  }
  return out;
}

GrayImage decode_pgm(const std::string& bytes, const std::string& origin) {
  std::istringstream in(bytes);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P5" || !in || width <= 0 || height <= 0 || maxval != 255) {
    fail(ErrorKind::Format, origin + ": expected an 8-bit binary PGM (P5)");
  }
  in.get();
  const auto offset = static_cast<std::size_t>(in.tellg());
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() != offset + count) fail(ErrorKind::Format, origin + ": PGM payload size mismatch");
  GrayImage image(width, height);
  for (std::size_t k = 0; k < count; ++k) image.values[k] = static_cast<unsigned char>(bytes[offset + k]) / 255.0;
  return image;
}

std::string encode_mask(const CovisMask& mask) {
  std::ostringstream os;
  os << mask.source_view << ' ' << mask.other_view << ' ' << mask.width << ' ' << mask.height << '\n';
  for (int v = 0; v < mask.height; ++v) {
    bool state = false;
    int run = 0;
    bool first = true;
    auto emit = [&] {
      os << (first ? "" : " ") << run;
      first = false;
    };
    for (int u = 0; u < mask.width; ++u) {
      if (mask.at(u, v) == state) {
        ++run;
      } else {
        emit();
        state = !state;
        run = 1;
      }
    }
    emit();
    os << '\n';
  }
  return os.str();
}

CovisMask decode_mask(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  CovisMask mask;
  if (!std::getline(in, line)) fail(ErrorKind::Format, origin + ": empty mask file");
  {
    std::istringstream header(line);
    if (!(header >> mask.source_view >> mask.other_view >> mask.width >> mask.height) || mask.width <= 0 ||
        mask.height <= 0) {
      fail(ErrorKind::Format, origin + ": mask header must be \"i j width height\"");
    }
  }
  mask.bits.assign(static_cast<std::size_t>(mask.width) * mask.height, 0);
  for (int v = 0; v < mask.height; ++v) {
    if (!std::getline(in, line)) fail(ErrorKind::Format, origin + ": mask ends before row " + std::to_string(v));
    std::istringstream row(line);
    long run = 0;
    int u = 0;
    bool state = false;
    while (row >> run) {
      if (run < 0 || u + run > mask.width) fail(ErrorKind::Format, origin + ": bad run length in row " + std::to_string(v));
      for (long k = 0; k < run; ++k) mask.bits[static_cast<std::size_t>(v) * mask.width + u++] = state ? 1 : 0;
      state = !state;
    }
    if (u != mask.width) fail(ErrorKind::Format, origin + ": runs in row " + std::to_string(v) + " do not sum to width");
  }
  return mask;
}

std::string encode_bmp(const GrayImage& image) {
  const std::uint32_t row = (static_cast<std::uint32_t>(image.width) + 3u) & ~3u;
  const std::uint32_t pixels = row * static_cast<std::uint32_t>(image.height);
  const std::uint32_t offset = 14 + 40 + 256 * 4;
  std::string out = "BM";
  put_u32(out, offset + pixels);
  put_u32(out, 0);
  put_u32(out, offset);
  put_u32(out, 40);
  put_u32(out, static_cast<std::uint32_t>(image.width));
  put_u32(out, static_cast<std::uint32_t>(image.height));
  put_u16(out, 1);
  put_u16(out, 8);
  put_u32(out, 0);
  put_u32(out, pixels);
  put_u32(out, 2835);
  put_u32(out, 2835);
  put_u32(out, 256);
  put_u32(out, 0);
  for (int k = 0; k < 256; ++k) {
    for (int c = 0; c < 3; ++c) out.push_back(static_cast<char>(k));
    out.push_back(0);
  }
  // Bottom-up rows.
  for (int v = image.height - 1; v >= 0; --v) {
    for (int u = 0; u < image.width; ++u) {
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(image.at(u, v), 0.0, 1.0) * 255.0))));
    }
    for (std::uint32_t p = static_cast<std::uint32_t>(image.width); p < row; ++p) out.push_back(0);
  }
  return out;
}

}  // namespace covision
