#include "sps/image_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

// SPF1 stores raw little-endian doubles.
static_assert(std::endian::native == std::endian::little,
              "SPF1 I/O assumes a little-endian host");

namespace sps {

namespace {

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(in.get()));
      }
      return tok;
    }
  }
  return tok;
}

}  // namespace

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open for reading");
  if (next_token(in) != "P5") io_fail(path, "not a binary PGM (P5) file");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(next_token(in));
    h = std::stoi(next_token(in));
    maxval = std::stoi(next_token(in));
  } catch (const std::exception&) {
    io_fail(path, "malformed PGM header");
  }
  if (w <= 0 || h <= 0) io_fail(path, "invalid PGM dimensions");
  if (maxval != 255) io_fail(path, "only maxval 255 PGM is supported");
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    io_fail(path, "truncated PGM pixel data");
  Image img(w, h);
  for (std::size_t i = 0; i < raw.size(); ++i)
    img.pix[i] = static_cast<double>(raw[i]);
  return img;
}

void write_pgm(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail(path, "cannot open for writing");
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double v = std::round(img.pix[i]);
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    raw[i] = static_cast<unsigned char>(v);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) io_fail(path, "short write");
}

Image read_spf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open for reading");
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int w = 0, h = 0;
  hs >> magic >> w >> h;
  if (magic != "SPF1" || w <= 0 || h <= 0)
    io_fail(path, "malformed SPF1 header");
  Image img(w, h);
  static_assert(sizeof(double) == 8);
  in.read(reinterpret_cast<char*>(img.pix.data()),
          static_cast<std::streamsize>(img.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != img.size() * sizeof(double))
    io_fail(path, "truncated SPF1 pixel data");
  return img;
}

void write_spf(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail(path, "cannot open for writing");
  out << "SPF1 " << img.width << " " << img.height << "\n";
  out.write(reinterpret_cast<const char*>(img.pix.data()),
            static_cast<std::streamsize>(img.size() * sizeof(double)));
  if (!out) io_fail(path, "short write");
}

}  // namespace sps
