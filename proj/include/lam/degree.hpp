#pragma once
// Multidegrees for graded vector spaces of arity 1..3.  Unused trailing
// slots stay zero so comparison and arithmetic can work on the full array.

#include <array>
#include <cassert>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

namespace lam {

struct Deg {
  int arity = 1;
  std::array<int, 3> v{0, 0, 0};

  int operator[](int i) const { return v[static_cast<size_t>(i)]; }
  int& operator[](int i) { return v[static_cast<size_t>(i)]; }

  friend bool operator==(const Deg& a, const Deg& b) {
    return a.arity == b.arity && a.v == b.v;
  }
  friend bool operator!=(const Deg& a, const Deg& b) { return !(a == b); }
  friend bool operator<(const Deg& a, const Deg& b) {
    return std::tie(a.arity, a.v) < std::tie(b.arity, b.v);
  }
  friend Deg operator+(const Deg& a, const Deg& b) {
    assert(a.arity == b.arity);
    Deg r = a;
    for (size_t i = 0; i < 3; ++i) r.v[i] += b.v[i];
    return r;
  }
  friend Deg operator-(const Deg& a, const Deg& b) {
    assert(a.arity == b.arity);
    Deg r = a;
    for (size_t i = 0; i < 3; ++i) r.v[i] -= b.v[i];
    return r;
  }
  Deg operator-() const {
    Deg r = *this;
    for (size_t i = 0; i < 3; ++i) r.v[i] = -r.v[i];
    return r;
  }
};

inline Deg deg1(int i) { return Deg{1, {i, 0, 0}}; }
inline Deg deg2(int i, int j) { return Deg{2, {i, j, 0}}; }
inline Deg deg3(int i, int j, int k) { return Deg{3, {i, j, k}}; }
inline Deg zero_deg(int arity) { return Deg{arity, {0, 0, 0}}; }

inline std::string str(const Deg& d) {
  std::ostringstream os;
  os << '(' << d.v[0];
  for (int i = 1; i < d.arity; ++i) os << ',' << d.v[static_cast<size_t>(i)];
  os << ')';
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Deg& d) {
  return os << str(d);
}

}  // namespace lam
