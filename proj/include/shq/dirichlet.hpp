#pragma once

#include "shq/cyclo.hpp"

namespace shq {

// Dirichlet character mod M, stored as an exponent vector on the canonical
// generators of (Z/M)^x: per odd prime power the smallest primitive root,
// for 2^e (e >= 3) the pair {-1, 5}, lifted through CRT.
class DirichletChar {
 public:
  DirichletChar() : modulus_(1) {}                        // trivial character mod 1
  DirichletChar(long modulus, std::vector<long> exponents);
  static DirichletChar trivial(long modulus = 1);
  // chi(a) = kronecker(D, a), defined mod |D| (D a fundamental-style discriminant
  // or any integer whose symbol is periodic mod |D|).
  static DirichletChar quadratic(long D);
  static DirichletChar parse(const std::string& label);   // "M:e1,e2,..."

  long modulus() const { return modulus_; }
  const std::vector<long>& exponents() const { return exponents_; }
  const std::vector<long>& generators() const;            // canonical, lifted mod M
  const std::vector<long>& generator_orders() const;

  long value_order() const;        // order of the character
  CycloElem eval(long a) const;    // in Q(zeta_{value_order}); 0 off units
  long conductor() const;
  DirichletChar primitive() const;            // restriction to the conductor
  DirichletChar extended(long L) const;       // induction, modulus -> L (modulus | L)
  bool is_even() const;
  bool is_trivial() const { return value_order() == 1; }

  std::string label() const;

  friend bool operator==(const DirichletChar& a, const DirichletChar& b);
  friend bool operator!=(const DirichletChar& a, const DirichletChar& b) { return !(a == b); }

 private:
  long modulus_;
  std::vector<long> exponents_;
};

CycloElem char_eval(const DirichletChar& chi, long a);
DirichletChar char_product(const DirichletChar& a, const DirichletChar& b);
DirichletChar char_inverse(const DirichletChar& a);
DirichletChar teichmuller(long p);  // odd prime
long kronecker_symbol(Int D, Int n);
inline long kronecker_symbol(long D, long n) { return kronecker_symbol(Int(D), Int(n)); }

// All characters mod M (phi(M) of them), deterministic order.
std::vector<DirichletChar> all_characters(long M);
// Primitive characters of conductor exactly f.
std::vector<DirichletChar> primitive_characters(long f);

struct CrtSplit {
  long d_p;     // class mod p
  long d_tame;  // class mod 4N
};
CrtSplit crt_split(long d, long N, long p);

// i with lambda*tau^j in W^i: i = (lambda + j) mod (p-1).
long component_index(long lambda, long j, long p);

// Bernoulli number B_k and generalized B_{k,chi} (chi any modulus).
Rational bernoulli_number(long k);
CycloElem bernoulli_generalized(long k, const DirichletChar& chi);

}  // namespace shq
