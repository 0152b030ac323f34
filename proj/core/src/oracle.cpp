#include "qseg/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qseg {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::string_view window_name(WindowShape w) noexcept {
  switch (w) {
    case WindowShape::Cross: return "cross";
    case WindowShape::Square: return "square";
    case WindowShape::Diagonal: return "diagonal";
  }
  return "?";
}

WindowShape parse_window(std::string_view name) {
  if (name == "cross") return WindowShape::Cross;
  if (name == "square") return WindowShape::Square;
  if (name == "diagonal") return WindowShape::Diagonal;
  throw Error(Errc::UnsupportedWindow, "unknown window '" + std::string(name) + "'");
}

std::vector<std::pair<int, int>> window_offsets(WindowShape w) {
  switch (w) {
    case WindowShape::Cross: return {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    case WindowShape::Diagonal: return {{0, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    case WindowShape::Square: {
      std::vector<std::pair<int, int>> out{{0, 0}};
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dy != 0 || dx != 0) out.emplace_back(dy, dx);
        }
      }
      return out;
    }
  }
  return {};
}

std::uint32_t median_of_window(std::vector<std::uint32_t> values) {
  if (values.size() % 2 == 0) {
    throw Error(Errc::EvenLength, "median of " + std::to_string(values.size()) + " values");
  }
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

std::vector<std::uint32_t> window_values(const GrayImage& img, std::size_t y, std::size_t x, WindowShape w) {
  const auto side = static_cast<long long>(img.side());
  std::vector<std::uint32_t> out;
  for (const auto& [dy, dx] : window_offsets(w)) {
    const auto yy = ((static_cast<long long>(y) + dy) % side + side) % side;
    const auto xx = ((static_cast<long long>(x) + dx) % side + side) % side;
    out.push_back(img.at(static_cast<std::size_t>(yy), static_cast<std::size_t>(xx)));
  }
  return out;
}

namespace {

void check_z(const GrayImage& img, std::uint32_t z) {
  if (z > img.max_value()) {
    throw Error(Errc::ZOutOfRange, "Z = " + std::to_string(z) + " outside [0, " + std::to_string(img.max_value()) + "]");
  }
}

std::string list_positions(const std::vector<PixelPos>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ' ';
    s += "(" + std::to_string(ps[i].y) + "," + std::to_string(ps[i].x) + ")";
  }
  return s;
}

}  // namespace

AdaptiveResult adaptive_threshold_segment(const GrayImage& img, std::uint32_t z, WindowShape w, ZPolicy policy) {
  validate_image(img);
  check_z(img, z);
  const std::size_t side = img.side();
  AdaptiveResult r;
  r.image = BinaryImage::filled(img.n, 0);
  r.medians.resize(img.pixels.size());
  r.thresholds.resize(img.pixels.size());
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::size_t i = y * side + x;
      const std::uint32_t m = median_of_window(window_values(img, y, x, w));
      std::uint32_t t = 0;
      if (m >= z) {
        t = m - z;
      } else {
        r.clamped.push_back({y, x});
      }
      r.medians[i] = m;
      r.thresholds[i] = t;
      r.image.pixels[i] = img.pixels[i] >= t ? 1 : 0;
    }
  }
  if (policy == ZPolicy::Require && !r.clamped.empty()) {
    throw ZPreconditionError(r.clamped, "window median below Z at " + list_positions(r.clamped));
  }
  return r;
}

BinaryImage fixed_threshold_segment(const GrayImage& img, std::uint32_t t) {
  validate_image(img);
  if (t > img.max_value()) {
    throw Error(Errc::TOutOfRange, "T = " + std::to_string(t) + " outside [0, " + std::to_string(img.max_value()) + "]");
  }
  BinaryImage out = BinaryImage::filled(img.n, 0);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = img.pixels[i] >= t ? 1 : 0;
  return out;
}

std::vector<PixelPos> check_z_precondition(const GrayImage& img, std::uint32_t z, WindowShape w) {
  std::vector<PixelPos> out;
  const std::size_t side = img.side();
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      if (median_of_window(window_values(img, y, x, w)) < z) out.push_back({y, x});
    }
  }
  return out;
}

Rational Rational::reduced() const {
  const std::uint64_t g = std::gcd(num, den);
  if (g == 0) return *this;
  return {num / g, den / g};
}

std::string Rational::decimal() const {
  Rational r = reduced();
  std::string s = std::to_string(r.num / r.den);
  std::uint64_t rem = r.num % r.den;
  if (rem == 0) return s;
  s += '.';
  // Power-of-two and other 2,5-smooth denominators terminate; others are cut at 40 digits.
  for (int digits = 0; rem != 0 && digits < 40; ++digits) {
    rem *= 10;
    s += static_cast<char>('0' + rem / r.den);
    rem %= r.den;
  }
  return s;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  return static_cast<u128>(a.num) * b.den == static_cast<u128>(b.num) * a.den;
}

bool operator<(const Rational& a, const Rational& b) noexcept {
  return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

namespace {

template <class P>
Rational mse_of(std::size_t na, std::size_t nb, const std::vector<P>& a, const std::vector<P>& b) {
  if (na != nb || a.size() != b.size()) {
    throw Error(Errc::ShapeMismatch, "images of " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                                         " pixels");
  }
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto d = static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return {sum, static_cast<std::uint64_t>(a.size())};
}

}  // namespace

Rational mse(const GrayImage& a, const GrayImage& b) { return mse_of(a.n, b.n, a.pixels, b.pixels); }
Rational mse(const BinaryImage& a, const BinaryImage& b) { return mse_of(a.n, b.n, a.pixels, b.pixels); }

}  // namespace qseg
