#pragma once

#include <array>
#include <cassert>
#include <cmath>

namespace samlab {

// Point in R^d with d in {1, 2}. All catalog constructions are one- or
// two-dimensional, so the storage is inline.
class Vec {
 public:
  static constexpr int kMaxDim = 2;

  Vec() : d_(0) {}
  explicit Vec(double x) : d_(1) { v_[0] = x; }
  Vec(double x, double y) : d_(2) {
    v_[0] = x;
    v_[1] = y;
  }

  static Vec zeros(int dim) {
    assert(dim >= 1 && dim <= kMaxDim);
    Vec v;
    v.d_ = dim;
    v.v_ = {0.0, 0.0};
    return v;
  }

  int dim() const { return d_; }
  double operator[](int i) const {
    assert(i >= 0 && i < d_);
    return v_[static_cast<size_t>(i)];
  }
  double& operator[](int i) {
    assert(i >= 0 && i < d_);
    return v_[static_cast<size_t>(i)];
  }

  // Scalar access for 1-D points.
  double scalar() const {
    assert(d_ == 1);
    return v_[0];
  }

  double norm_sq() const {
    double s = 0.0;
    for (int i = 0; i < d_; ++i) s += v_[static_cast<size_t>(i)] * v_[static_cast<size_t>(i)];
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  bool all_finite() const {
    for (int i = 0; i < d_; ++i)
      if (!std::isfinite(v_[static_cast<size_t>(i)])) return false;
    return true;
  }

  Vec& operator+=(const Vec& o) {
    assert(d_ == o.d_);
    for (int i = 0; i < d_; ++i) v_[static_cast<size_t>(i)] += o.v_[static_cast<size_t>(i)];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(d_ == o.d_);
    for (int i = 0; i < d_; ++i) v_[static_cast<size_t>(i)] -= o.v_[static_cast<size_t>(i)];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < d_; ++i) v_[static_cast<size_t>(i)] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.d_ != b.d_) return false;
    for (int i = 0; i < a.d_; ++i)
      if (a.v_[static_cast<size_t>(i)] != b.v_[static_cast<size_t>(i)]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> v_{};
  int d_;
};

inline double dot(const Vec& a, const Vec& b) {
  assert(a.dim() == b.dim());
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace samlab
