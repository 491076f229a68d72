#pragma once

// Error-free accumulation of doubles (Shewchuk-style expansions).
//
// An ExactSum holds the exact value of a sum of doubles as a list of
// non-overlapping components.  Addition is error-free, so equality of
// two accumulated sums can be decided exactly, independent of the
// order in which terms were added.  Used by the verification oracles
// where "equal" has to mean equal, not approximately equal.

#include <cmath>
#include <vector>

namespace dhsparse {

class ExactSum {
 public:
  // Error-free transformation: a + b == s + err exactly (Knuth two-sum).
  static void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    double bv = s - a;
    err = (a - (s - bv)) + (b - bv);
  }

  void add(double x) {
    if (x == 0.0) return;
    // Grow-expansion: carry x through the existing components.
    std::size_t out = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      double s, err;
      two_sum(comps_[i], x, s, err);
      if (err != 0.0) comps_[out++] = err;
      x = s;
    }
    comps_.resize(out);
    if (x != 0.0) comps_.push_back(x);
  }

  void add(const ExactSum& other) {
    for (double c : other.comps_) add(c);
  }

  void subtract(const ExactSum& other) {
    for (double c : other.comps_) add(-c);
  }

  bool is_zero() const { return comps_.empty(); }

  bool same_value(const ExactSum& other) const {
    ExactSum diff = *this;
    diff.subtract(other);
    return diff.is_zero();
  }

  // Nearest-double estimate of the exact value (components are
  // non-overlapping, so the low-to-high fold is accurate to 1 ulp).
  double estimate() const {
    double s = 0.0;
    for (double c : comps_) s += c;
    return s;
  }

 private:
  std::vector<double> comps_;  // non-overlapping, increasing magnitude
};

}  // namespace dhsparse
