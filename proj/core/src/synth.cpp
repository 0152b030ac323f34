#include "qseg/synth.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "qseg/error.hpp"

namespace qseg {

Gradient parse_gradient(std::string_view name) {
  if (name == "horizontal") return Gradient::Horizontal;
  if (name == "vertical") return Gradient::Vertical;
  if (name == "diagonal") return Gradient::Diagonal;
  throw Error(Errc::InvalidArgument, "unknown gradient '" + std::string(name) + "'");
}

std::string_view gradient_name(Gradient g) noexcept {
  switch (g) {
    case Gradient::Horizontal: return "horizontal";
    case Gradient::Vertical: return "vertical";
    case Gradient::Diagonal: return "diagonal";
  }
  return "?";
}

std::uint32_t default_fixed_threshold(std::size_t q) noexcept {
  return q == 0 ? 0 : (std::uint32_t{1} << (q - 1)) - 1;
}

SynthImage generate_synthetic(const SynthOptions& o) {
  if (o.q == 0 || o.q > 8) throw Error(Errc::InvalidArgument, "bit depth must be in [1, 8]");
  if (o.n > 8) throw Error(Errc::InvalidArgument, "side exponent must be <= 8");
  const std::size_t side = std::size_t{1} << o.n;
  const std::uint32_t hi = (std::uint32_t{1} << o.q) - 1;
  const std::uint32_t lo = std::min<std::uint32_t>(1, hi);
  const std::uint32_t contrast = o.contrast ? o.contrast : std::uint32_t{1} << (o.q - 1);

  SynthImage out;
  out.image = GrayImage::filled(o.n, o.q, 0);
  out.truth = BinaryImage::filled(o.n, 1);
  const std::size_t span = o.gradient == Gradient::Diagonal ? 2 * (side - 1) : side - 1;
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      std::size_t t = 0;
      switch (o.gradient) {
        case Gradient::Horizontal: t = x; break;
        case Gradient::Vertical: t = y; break;
        case Gradient::Diagonal: t = x + y; break;
      }
      const std::uint32_t v =
          span == 0 ? lo : lo + static_cast<std::uint32_t>(((hi - lo) * t * 2 + span) / (2 * span));
      out.image.at(y, x) = v;
    }
  }

  std::mt19937_64 rng(o.seed);
  auto draw = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  const std::size_t max_extent = std::max<std::size_t>(1, side / 4);
  for (std::size_t s = 0; s < o.shapes; ++s) {
    const std::size_t h = 1 + draw(max_extent);
    const std::size_t w = 1 + draw(max_extent);
    const std::size_t y0 = draw(side - h + 1);
    const std::size_t x0 = draw(side - w + 1);
    for (std::size_t y = y0; y < y0 + h; ++y) {
      for (std::size_t x = x0; x < x0 + w; ++x) {
        if (out.truth.at(y, x) == 0) continue;
        const std::uint32_t bg = out.image.at(y, x);
        out.image.at(y, x) = bg > contrast ? bg - contrast : 0;
        out.truth.at(y, x) = 0;
      }
    }
  }
  return out;
}

}  // namespace qseg
