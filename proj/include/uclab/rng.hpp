#ifndef UCLAB_RNG_HPP
#define UCLAB_RNG_HPP

#include <cstdint>

namespace uclab {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so parallel execution order cannot change results.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  // splitmix64 finalizer over a combined key
  double uniform() { return next() * 0x1.0p-64; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  uint64_t next() {
    uint64_t z = seed_ ^ (stream_ * 0x9e3779b97f4a7c15ULL) ^ (counter_++ * 0xbf58476d1ce4e5b9ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

// Low-discrepancy points for sampling checks (additive Kronecker sequence).
class QuasiRandom {
 public:
  explicit QuasiRandom(uint64_t skip = 0) : index_(skip) {}

  // d-dimensional point in [0,1)^d, d <= 4
  void point(int d, double* out) {
    static const double alpha[4] = {0.6180339887498949, 0.7548776662466927,
                                    0.8191725133961644, 0.5698402909980532};
    ++index_;
    for (int i = 0; i < d; ++i) {
      double v = index_ * alpha[i];
      out[i] = v - static_cast<uint64_t>(v);
    }
  }

 private:
  uint64_t index_;
};

} // namespace uclab

#endif
