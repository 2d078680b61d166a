#pragma once
// Exact scalar types usable as Eigen matrix scalars: prime-field elements
// with a runtime modulus, and arbitrary-precision rationals.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace lam {

// Arbitrary-precision rational.  Wraps boost::multiprecision::cpp_rational
// behind non-template constructors: boost's converting-constructor SFINAE
// hard-errors when Eigen probes whether a matrix expression converts to the
// scalar, so the raw boost type cannot be used as an Eigen scalar directly.
class Rational {
public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // implicit: integer literal
  Rational(long long n, long long d) : v_() {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    v_ = Rep(n, d);
  }
  explicit Rational(Rep v) : v_(std::move(v)) {}

  const Rep& rep() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(Rep(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(Rep(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(Rep(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw std::domain_error("rational: division by zero");
    return Rational(Rep(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(Rep(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.v_;
  }

private:
  Rep v_;
};

// Element of F_p with the modulus carried at runtime.  p == 0 marks a plain
// integer (e.g. the Scalar(0)/Scalar(1) literals Eigen materializes); such a
// value adopts the modulus of the other operand on first contact.  Stored
// values with p != 0 are normalized into [0, p).
class Fp {
public:
  Fp() : v_(0), p_(0) {}
  Fp(long long v) : v_(v), p_(0) {}            // implicit: integer literal
  Fp(long long v, long long p) : v_(v), p_(p) {
    if (p_ < 0) throw std::invalid_argument("Fp: negative modulus");
    if (p_) v_ = norm(v_, p_);
  }

  long long value() const { return v_; }
  long long modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long long p = join(a, b);
    long long s = a.v_ + b.v_;
    return p ? Fp(norm(s, p), p) : Fp(s);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long long p = join(a, b);
    long long s = a.v_ - b.v_;
    return p ? Fp(norm(s, p), p) : Fp(s);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long p = join(a, b);
    __int128 t = static_cast<__int128>(a.v_) * b.v_;
    if (p) return Fp(static_cast<long long>(((t % p) + p) % p), p);
    return Fp(static_cast<long long>(t));
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return p_ ? Fp(norm(-v_, p_), p_) : Fp(-v_); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  // Multiplicative inverse (extended Euclid).  Integer-literal values are
  // invertible only at +-1; anything else here is a logic error upstream.
  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return *this;
      throw std::domain_error("Fp: inverse of non-unit integer literal");
    }
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    long long t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("Fp: modulus not prime or zero divisor");
    return Fp(norm(t, p_), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long p = a.p_ ? a.p_ : b.p_;
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw std::invalid_argument("Fp: mixed moduli");
    if (!p) return a.v_ == b.v_;
    return norm(a.v_, p) == norm(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
    return os << a.v_;
  }

private:
  static long long norm(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
  }
  static long long join(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw std::invalid_argument("Fp: mixed moduli");
    return a.p_ ? a.p_ : b.p_;
  }
  long long v_, p_;
};

inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.rep() == 0; }

// Which field a computation runs over; doubles as the element
// factory/parser so the modulus threads through generically.
struct FieldSpec {
  bool rational = false;
  long long p = 32003;

  static FieldSpec Q() { return FieldSpec{true, 0}; }
  static FieldSpec prime(long long p) { return FieldSpec{false, p}; }

  std::string str() const {
    return rational ? std::string("q") : "p:" + std::to_string(p);
  }
  // Accepts "q" or "p:<prime>".
  static FieldSpec parse(const std::string& s) {
    if (s == "q") return Q();
    if (s.rfind("p:", 0) == 0) {
      long long p = std::stoll(s.substr(2));
      if (p < 2) throw std::invalid_argument("field: modulus must be >= 2");
      return prime(p);
    }
    throw std::invalid_argument("field: expected 'q' or 'p:<prime>', got '" + s + "'");
  }
};

// Scalar factory bound to a FieldSpec instantiation.
template <class K> struct FieldOps;

template <> struct FieldOps<Fp> {
  FieldSpec spec;
  Fp from_int(long long v) const { return Fp(v, spec.p); }
  Fp parse(const std::string& s) const { return Fp(std::stoll(s), spec.p); }
  std::string str(const Fp& x) const {
    long long v = x.value() % spec.p;
    if (v < 0) v += spec.p;
    return std::to_string(v);
  }
};

template <> struct FieldOps<Rational> {
  FieldSpec spec;
  Rational from_int(long long v) const { return Rational(v); }
  Rational parse(const std::string& s) const {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return Rational(Rational::Rep(boost::multiprecision::cpp_int(s)));
    boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(Rational::Rep(num, den));
  }
  std::string str(const Rational& x) const {
    std::ostringstream os;
    if (denominator(x.rep()) == 1) os << numerator(x.rep());
    else os << numerator(x.rep()) << '/' << denominator(x.rep());
    return os.str();
  }
};

}  // namespace lam

namespace Eigen {

template <> struct NumTraits<lam::Fp> {
  using Self = lam::Fp;
  using Real = Self;
  using NonInteger = Self;
  using Literal = long long;
  using Nested = Self;
  enum {
    IsComplex = 0, IsInteger = 0, IsSigned = 1,
    RequireInitialization = 1, ReadCost = 2, AddCost = 4, MulCost = 8
  };
  static Self epsilon() { return Self(0); }
  static Self dummy_precision() { return Self(0); }
  static int digits10() { return 18; }
};

template <> struct NumTraits<lam::Rational> {
  using Self = lam::Rational;
  using Real = Self;
  using NonInteger = Self;
  using Literal = long long;
  using Nested = Self;
  enum {
    IsComplex = 0, IsInteger = 0, IsSigned = 1,
    RequireInitialization = 1, ReadCost = 8, AddCost = 30, MulCost = 30
  };
  static Self epsilon() { return Self(0); }
  static Self dummy_precision() { return Self(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
