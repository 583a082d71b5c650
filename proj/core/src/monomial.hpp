#pragma once

// Cancellation-free integrals of t^(n-1) against linear weights on [t0, t0+h],
// t0 >= 0, expanded in binomial form so every term is nonnegative.

namespace maxvar::detail {

inline double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// int_{t0}^{t0+h} t^(n-1) dt
inline double power_integral(double t0, double h, int n) {
  double sum = 0.0;
  double binom = 1.0;
  double hk = 1.0;
  for (int k = 0; k <= n - 1; ++k) {
    sum += binom * int_pow(t0, n - 1 - k) * hk / (k + 1);
    binom = binom * (n - 1 - k) / (k + 1);
    hk *= h;
  }
  return h * sum;
}

struct LinearMoments {
  double falling;  // int (t1 - t) t^(n-1) dt
  double rising;   // int (t - t0) t^(n-1) dt
};

inline LinearMoments linear_moments(double t0, double h, int n) {
  double falling = 0.0;
  double rising = 0.0;
  double binom = 1.0;
  double hk = 1.0;
  for (int k = 0; k <= n - 1; ++k) {
    const double term = binom * int_pow(t0, n - 1 - k) * hk;
    rising += term / (k + 2);
    falling += term / ((k + 1.0) * (k + 2.0));
    binom = binom * (n - 1 - k) / (k + 1);
    hk *= h;
  }
  return {h * h * falling, h * h * rising};
}

}  // namespace maxvar::detail
