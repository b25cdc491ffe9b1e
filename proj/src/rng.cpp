#include "eiregret/rng.hpp"

#include <cmath>
#include <numbers>

namespace eiregret {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  // 1 - u1 lies in (0, 1], keeping the log argument positive.
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

Vector RngStream::uniform_point(const Box& box) {
  Vector x(box.dim());
  for (int j = 0; j < box.dim(); ++j) x[j] = uniform(box.lo[j], box.hi[j]);
  return x;
}

namespace {

constexpr int kHaltonPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                   23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t index, int base) {
  double inv_base = 1.0 / base;
  double scale = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  return value;
}

}  // namespace

Matrix halton_pool(const Box& box, int count, RngStream& stream) {
  const int d = box.dim();
  if (d > 16) throw std::invalid_argument("halton_pool: dimension above 16");
  if (count < 0) throw std::invalid_argument("halton_pool: negative count");
  Vector shift(d);
  for (int j = 0; j < d; ++j) shift[j] = stream.uniform();
  Matrix pool(count, d);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < d; ++j) {
      double u = radical_inverse(static_cast<std::uint64_t>(i) + 1,
                                 kHaltonPrimes[j]) +
                 shift[j];
      u -= std::floor(u);
      pool(i, j) = box.lo[j] + u * (box.hi[j] - box.lo[j]);
    }
  }
  return pool;
}

}  // namespace eiregret
