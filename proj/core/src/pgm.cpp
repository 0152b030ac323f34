#include "qseg/pgm.hpp"

#include <bit>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>

#include "qseg/error.hpp"

namespace qseg {

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size()) {
      if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 0xFFFFFFFFUL) throw Error(Errc::MalformedPgm, std::string(what) + " too large");
      ++pos_;
    }
    if (pos_ == start) throw Error(Errc::MalformedPgm, std::string("expected ") + what);
    return v;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(const std::string& bytes, const PgmReadOptions& options) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw Error(Errc::MalformedPgm, "missing P2/P5 magic");
  }
  const bool ascii = bytes[1] == '2';
  Scanner sc(bytes);
  sc.advance(2);
  const unsigned long w = sc.number("width");
  const unsigned long h = sc.number("height");
  const unsigned long maxval = sc.number("maxval");
  if (w == 0 || h == 0) throw Error(Errc::MalformedPgm, "zero dimension");
  if (maxval == 0 || maxval > 65535) throw Error(Errc::MalformedPgm, "maxval " + std::to_string(maxval));
  if (w != h) throw Error(Errc::NonSquare, std::to_string(w) + "x" + std::to_string(h) + " image");
  const std::size_t n = side_exponent(w);

  std::vector<std::uint32_t> raw(w * h);
  if (ascii) {
    for (auto& v : raw) {
      v = static_cast<std::uint32_t>(sc.number("pixel"));
    }
  } else {
    if (sc.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[sc.pos()]))) {
      throw Error(Errc::MalformedPgm, "missing whitespace before raster");
    }
    sc.advance(1);
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (bytes.size() - sc.pos() < raw.size() * bpp) throw Error(Errc::MalformedPgm, "truncated raster");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + sc.pos());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      raw[i] = bpp == 1 ? p[i] : (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1];
    }
  }
  for (auto v : raw) {
    if (v > maxval) throw Error(Errc::MalformedPgm, "pixel " + std::to_string(v) + " exceeds maxval");
  }

  GrayImage img;
  img.n = n;
  const bool native = std::has_single_bit(maxval + 1) && maxval <= 255;
  if (native) {
    img.q = static_cast<std::size_t>(std::countr_zero(maxval + 1));
    img.pixels = std::move(raw);
  } else if (options.rescale) {
    if (options.rescale_bits == 0 || options.rescale_bits > 8) {
      throw Error(Errc::InvalidArgument, "rescale bits must be in [1, 8]");
    }
    img.q = options.rescale_bits;
    const std::uint64_t top = (std::uint64_t{1} << img.q) - 1;
    img.pixels.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      img.pixels[i] = static_cast<std::uint32_t>((raw[i] * top * 2 + maxval) / (2 * maxval));
    }
  } else {
    throw Error(Errc::MaxvalNotSupported, "maxval " + std::to_string(maxval) + " is not 2^q-1 with q <= 8");
  }
  validate_image(img);
  return img;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GrayImage read_pgm(const std::string& path, const PgmReadOptions& options) {
  return parse_pgm(read_file(path), options);
}

namespace {

std::string format_raster(std::size_t side, std::uint32_t maxval, const std::vector<std::uint32_t>& px,
                          PgmFormat format) {
  std::string out = (format == PgmFormat::Ascii ? "P2\n" : "P5\n");
  out += std::to_string(side) + " " + std::to_string(side) + "\n" + std::to_string(maxval) + "\n";
  if (format == PgmFormat::Ascii) {
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t x = 0; x < side; ++x) {
        if (x) out += ' ';
        out += std::to_string(px[y * side + x]);
      }
      out += '\n';
    }
  } else if (maxval > 255) {
    for (auto v : px) {
      out += static_cast<char>((v >> 8) & 0xFF);
      out += static_cast<char>(v & 0xFF);
    }
  } else {
    for (auto v : px) out += static_cast<char>(v);
  }
  return out;
}

}  // namespace

std::string format_pgm(const GrayImage& img, PgmFormat format) {
  validate_image(img);
  return format_raster(img.side(), img.max_value(), img.pixels, format);
}

std::string format_pgm(const BinaryImage& img, PgmFormat format) {
  std::vector<std::uint32_t> px(img.pixels.begin(), img.pixels.end());
  return format_raster(img.side(), 1, px, format);
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot create '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(Errc::IoError, "write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    std::remove(tmp.c_str());
    throw Error(Errc::IoError, "rename to '" + path + "' failed: " + why);
  }
}

void write_pgm(const GrayImage& img, const std::string& path, PgmFormat format) {
  write_file_atomic(path, format_pgm(img, format));
}

void write_pgm(const BinaryImage& img, const std::string& path, PgmFormat format) {
  write_file_atomic(path, format_pgm(img, format));
}

BinaryImage to_binary(const GrayImage& img) {
  BinaryImage out = BinaryImage::filled(img.n, 0);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = img.pixels[i] != 0 ? 1 : 0;
  return out;
}

}  // namespace qseg
