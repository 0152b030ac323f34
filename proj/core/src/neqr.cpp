#include "qseg/neqr.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qseg/error.hpp"

namespace qseg {

using namespace gates;

GrayImage GrayImage::filled(std::size_t n, std::size_t q, std::uint32_t value) {
  GrayImage img;
  img.n = n;
  img.q = q;
  img.pixels.assign(std::size_t{1} << (2 * n), value);
  return img;
}

BinaryImage BinaryImage::filled(std::size_t n, std::uint8_t value) {
  BinaryImage img;
  img.n = n;
  img.pixels.assign(std::size_t{1} << (2 * n), value);
  return img;
}

std::size_t side_exponent(std::size_t side) {
  if (side == 0 || !std::has_single_bit(side)) {
    throw Error(Errc::NotPowerOfTwoSide, "side " + std::to_string(side) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(side));
}

GrayImage make_image(std::size_t side, std::size_t q, std::vector<std::uint32_t> pixels) {
  GrayImage img;
  img.n = side_exponent(side);
  img.q = q;
  img.pixels = std::move(pixels);
  validate_image(img);
  return img;
}

void validate_image(const GrayImage& img) {
  if (img.q == 0 || img.q > 16) throw Error(Errc::PixelOutOfRange, "bit depth " + std::to_string(img.q));
  if (img.n > 16) throw Error(Errc::NotPowerOfTwoSide, "side exponent " + std::to_string(img.n));
  const std::size_t count = std::size_t{1} << (2 * img.n);
  if (img.pixels.size() != count) {
    throw Error(Errc::NotPowerOfTwoSide, std::to_string(img.pixels.size()) + " pixels do not form a " +
                                             std::to_string(img.side()) + "x" + std::to_string(img.side()) +
                                             " image");
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (img.pixels[i] > img.max_value()) {
      throw Error(Errc::PixelOutOfRange, "pixel " + std::to_string(i) + " = " + std::to_string(img.pixels[i]) +
                                             " exceeds " + std::to_string(img.max_value()));
    }
  }
}

std::vector<Qubit> RegisterLayout::position_qubits() const {
  std::vector<Qubit> out = Y.bits;
  out.insert(out.end(), X.bits.begin(), X.bits.end());
  return out;
}

RegisterLayout RegisterLayout::make(std::size_t n, std::size_t q) {
  RegisterLayout L;
  L.n = n;
  L.q = q;
  Qubit next = 0;
  auto take = [&next](std::size_t w) {
    RegisterRef r = RegisterRef::range(next, w);
    next += static_cast<Qubit>(w);
    return r;
  };
  L.C = take(q);
  L.N_up = take(q);
  L.N_down = take(q);
  L.N_left = take(q);
  L.N_right = take(q);
  L.D = take(q);
  L.Y = take(n);
  L.X = take(n);
  L.anc = {next, next + 1, next + 2, next + 3};
  return L;
}

Circuit build_preparation(const GrayImage& img, const RegisterRef& target, const RegisterLayout& layout,
                          PrepOptions options) {
  validate_image(img);
  if (target.width() != img.q || layout.q != img.q) {
    throw Error(Errc::WidthMismatch, "target width " + std::to_string(target.width()) + " for q = " +
                                         std::to_string(img.q));
  }
  if (layout.n != img.n) throw Error(Errc::WidthMismatch, "layout side exponent differs from image");
  const std::vector<Qubit> pos = layout.position_qubits();
  Circuit c(layout.num_qubits());
  if (options.emit_hadamards) {
    for (Qubit p : pos) c.append(h(p));
  }
  const std::size_t side = img.side();
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::uint32_t v = img.at(y, x);
      if (v == 0) continue;
      // Position bits in `pos` order: Y bits then X bits, LSB first.
      const std::uint64_t key = static_cast<std::uint64_t>(y) | (static_cast<std::uint64_t>(x) << img.n);
      std::vector<Qubit> zeros;
      for (std::size_t j = 0; j < pos.size(); ++j) {
        if (!((key >> j) & 1U)) zeros.push_back(pos[j]);
      }
      for (Qubit z : zeros) c.append(gates::x(z));
      for (std::size_t k = 0; k < img.q; ++k) {
        if ((v >> k) & 1U) c.append(mcx(pos, target[k]));
      }
      for (Qubit z : zeros) c.append(gates::x(z));
    }
  }
  return c;
}

std::vector<Qubit> gray_marginal_qubits(const RegisterRef& target, const RegisterLayout& layout) {
  std::vector<Qubit> out = target.bits;
  const auto pos = layout.position_qubits();
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

namespace {

std::vector<std::uint32_t> decode_values(const Distribution& dist, std::size_t n, std::size_t width, bool uniform) {
  const std::size_t count = std::size_t{1} << (2 * n);
  const double expected = 1.0 / static_cast<double>(count);
  std::vector<std::uint32_t> values(count, 0);
  std::vector<double> prob(count, 0.0);
  std::vector<bool> seen(count, false);
  const std::uint64_t vmask = (std::uint64_t{1} << width) - 1;
  for (const auto& [pattern, p] : dist) {
    if (p <= 0.0) continue;
    const std::uint32_t v = static_cast<std::uint32_t>(pattern & vmask);
    const std::uint64_t key = pattern >> width;  // Y bits then X bits
    const std::size_t y = key & ((std::uint64_t{1} << n) - 1);
    const std::size_t x = key >> n;
    if (x >= (std::size_t{1} << n)) throw Error(Errc::InvalidArgument, "pattern outside the position register");
    const std::size_t idx = (y << n) | x;
    if (seen[idx] && values[idx] != v) {
      throw Error(Errc::AmbiguousPixel, "position (" + std::to_string(y) + "," + std::to_string(x) +
                                            ") carries more than one value");
    }
    seen[idx] = true;
    values[idx] = v;
    prob[idx] += p;
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!seen[i]) {
      throw Error(Errc::MissingPixel, "position (" + std::to_string(i >> n) + "," +
                                          std::to_string(i & ((std::size_t{1} << n) - 1)) + ") absent");
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (uniform && std::abs(prob[i] - expected) > 1e-6) {
      throw Error(Errc::NonUniformPositions, "position probability " + std::to_string(prob[i]) + " != " +
                                                 std::to_string(expected));
    }
  }
  return values;
}

}  // namespace

GrayImage decode_gray(const Distribution& dist, std::size_t n, std::size_t q, DecodeOptions options) {
  GrayImage img;
  img.n = n;
  img.q = q;
  img.pixels = decode_values(dist, n, q, options.require_uniform);
  return img;
}

BinaryImage decode_binary(const Distribution& dist, std::size_t n, DecodeOptions options) {
  const auto v = decode_values(dist, n, 1, options.require_uniform);
  BinaryImage img;
  img.n = n;
  img.pixels.assign(v.begin(), v.end());
  return img;
}

}  // namespace qseg
