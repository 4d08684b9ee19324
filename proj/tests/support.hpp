#pragma once

#include <cmath>
#include <complex>
#include <random>

// Small seeded generators for the property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(unsigned long seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  bool coin() { return integer(0, 1) == 1; }
};

inline double rel_err(std::complex<double> a, std::complex<double> b, double floor = 1e-12) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale < floor ? std::abs(a - b) : std::abs(a - b) / scale;
}
