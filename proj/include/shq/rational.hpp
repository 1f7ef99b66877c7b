#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shq {

using Int = mpz_class;

// Exact rational number, always canonical: gcd(num, den) = 1, den > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rational from_string(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return Rational(q);
  }

  const Int num() const { return v_.get_num(); }
  const Int den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

 private:
  mpq_class v_;
};

// ---- elementary number theory on machine/big integers ----

long gcd_long(long a, long b);
long lcm_long(long a, long b);
bool is_prime_long(long n);
std::vector<std::pair<long, int>> factor_long(long n);  // n >= 1
long euler_phi(long n);
long pow_mod(long base, long exp, long mod);
long inv_mod(long a, long m);           // gcd(a,m)=1 required
long crt_pair(long r1, long m1, long r2, long m2);  // moduli coprime
long smallest_primitive_root(long pe);  // pe an odd prime power

// Exact p-adic valuation of a nonzero integer.
long padic_valuation_int(const Int& n, long p);

// v_p of a rational; throws on x = 0 (callers use the infinity flag below).
struct Valuation {
  bool infinite = false;
  Rational value;  // meaningful when !infinite
};
Valuation padic_valuation(const Rational& x, long p);

}  // namespace shq

namespace Eigen {
template <>
struct NumTraits<shq::Rational> {
  using Real = shq::Rational;
  using NonInteger = shq::Rational;
  using Nested = shq::Rational;
  using Literal = shq::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 10,
    MulCost = 10
  };
  static inline shq::Rational epsilon() { return shq::Rational(0); }
  static inline shq::Rational dummy_precision() { return shq::Rational(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
