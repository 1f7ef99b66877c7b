#include "shq/dirichlet.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace shq {

namespace {

struct UnitGroup {
  long modulus;
  std::vector<long> gens;    // lifted mod modulus
  std::vector<long> orders;  // orders of the generators
  // discrete logs: dlog[a] = exponent vector of a (units only)
  std::map<long, std::vector<long>> dlog;
};

std::map<long, UnitGroup> g_groups;
std::mutex g_groups_mutex;

const UnitGroup& unit_group(long M) {
  std::lock_guard<std::mutex> lock(g_groups_mutex);
  auto it = g_groups.find(M);
  if (it != g_groups.end()) return it->second;

  UnitGroup G;
  G.modulus = M;
  std::vector<std::pair<long, long>> local_gens;  // (residue mod M, order)
  for (auto [p, e] : factor_long(M)) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    long rest = M / pe;
    auto lift = [&](long g) {
      return rest == 1 ? g % M : crt_pair(g % pe, pe, 1 % rest, rest);
    };
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        local_gens.emplace_back(lift(3), 2);  // -1 mod 4
      } else {
        local_gens.emplace_back(lift(pe - 1), 2);  // -1
        local_gens.emplace_back(lift(5), pe / 4);  // 5 has order 2^{e-2}
      }
    } else {
      long g = smallest_primitive_root(pe);
      local_gens.emplace_back(lift(g), euler_phi(pe));
    }
  }
  for (auto& [g, n] : local_gens) {
    G.gens.push_back(g);
    G.orders.push_back(n);
  }
  // discrete logs by enumerating the product of cyclic groups
  long count = 1;
  for (long n : G.orders) count *= n;
  std::vector<long> exps(G.gens.size(), 0);
  long a = 1;
  for (long i = 0; i < count; ++i) {
    G.dlog[a] = exps;
    // increment multi-index and track the corresponding unit
    for (size_t j = 0; j < G.gens.size(); ++j) {
      exps[j]++;
      a = static_cast<long>((static_cast<unsigned __int128>(a) * G.gens[j]) % M);
      if (exps[j] < G.orders[j]) break;
      // wrapped: a * g^{order} == a, exponent resets
      exps[j] = 0;
    }
  }
  if (static_cast<long>(G.dlog.size()) != euler_phi(M))
    throw std::runtime_error("unit_group: generator enumeration failed");
  return g_groups.emplace(M, std::move(G)).first->second;
}

}  // namespace

DirichletChar::DirichletChar(long modulus, std::vector<long> exponents)
    : modulus_(modulus), exponents_(std::move(exponents)) {
  if (modulus < 1) throw std::domain_error("DirichletChar: modulus >= 1 required");
  const auto& G = unit_group(modulus);
  if (exponents_.size() != G.gens.size())
    throw std::domain_error("DirichletChar: exponent vector length mismatch");
  for (size_t i = 0; i < exponents_.size(); ++i)
    exponents_[i] = ((exponents_[i] % G.orders[i]) + G.orders[i]) % G.orders[i];
}

DirichletChar DirichletChar::trivial(long modulus) {
  const auto& G = unit_group(modulus);
  return DirichletChar(modulus, std::vector<long>(G.gens.size(), 0));
}

const std::vector<long>& DirichletChar::generators() const { return unit_group(modulus_).gens; }
const std::vector<long>& DirichletChar::generator_orders() const {
  return unit_group(modulus_).orders;
}

long DirichletChar::value_order() const {
  const auto& G = unit_group(modulus_);
  long ord = 1;
  for (size_t i = 0; i < exponents_.size(); ++i) {
    long n = G.orders[i];
    long e = exponents_[i];
    ord = lcm_long(ord, n / gcd_long(n == 0 ? 1 : n, e == 0 ? n : e));
  }
  return ord;
}

CycloElem DirichletChar::eval(long a) const {
  a = ((a % modulus_) + modulus_) % modulus_;
  if (modulus_ == 1) return CycloElem::one(1);
  if (gcd_long(a, modulus_) != 1) return CycloElem::zero(1);
  const auto& G = unit_group(modulus_);
  const auto& x = G.dlog.at(a);
  long N = 1;  // group exponent: all values are N-th roots of unity
  for (long n : G.orders) N = lcm_long(N, n);
  long k = 0;
  for (size_t i = 0; i < exponents_.size(); ++i) {
    // zeta_{n_i}^{e_i x_i} = zeta_N^{(N/n_i) e_i x_i}
    long n = G.orders[i];
    long contrib = static_cast<long>((static_cast<__int128>(N / n) * exponents_[i] % N) * x[i] % N);
    k = (k + contrib) % N;
  }
  // represent in the character's own value field
  long ord = value_order();
  return CycloElem::root_of_unity(ord, k * ord / N);
}

long DirichletChar::conductor() const {
  for (long f = 1; f <= modulus_; ++f) {
    if (modulus_ % f != 0) continue;
    bool ok = true;
    for (long a = 1; a < modulus_ && ok; ++a) {
      if (gcd_long(a, modulus_) != 1) continue;
      if (a % f == 1 % f && !(eval(a) == CycloElem::one(1))) ok = false;
    }
    if (ok) return f;
  }
  return modulus_;
}

DirichletChar DirichletChar::primitive() const {
  long f = conductor();
  if (f == modulus_) return *this;
  const auto& Gf = unit_group(f);
  std::vector<long> exps;
  for (size_t i = 0; i < Gf.gens.size(); ++i) {
    long a = Gf.gens[i];
    while (gcd_long(a, modulus_) != 1) a += f;
    CycloElem val = eval(a);
    long n = Gf.orders[i];
    bool found = false;
    for (long e = 0; e < n; ++e) {
      if (val == CycloElem::root_of_unity(n, e)) {
        exps.push_back(e);
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("DirichletChar::primitive: value not an n-th root of unity");
  }
  return DirichletChar(f, std::move(exps));
}

DirichletChar DirichletChar::extended(long L) const {
  if (L % modulus_ != 0) throw std::domain_error("DirichletChar::extended: modulus must divide L");
  if (L == modulus_) return *this;
  const auto& GL = unit_group(L);
  std::vector<long> exps;
  for (size_t i = 0; i < GL.gens.size(); ++i) {
    long g = GL.gens[i];
    long n = GL.orders[i];
    CycloElem val = eval(g);
    bool found = false;
    for (long e = 0; e < n; ++e) {
      if (val == CycloElem::root_of_unity(n, e)) {
        exps.push_back(e);
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("DirichletChar::extended: incompatible value");
  }
  return DirichletChar(L, std::move(exps));
}

bool DirichletChar::is_even() const { return eval(modulus_ - 1) == CycloElem::one(1); }

std::string DirichletChar::label() const {
  std::ostringstream os;
  os << modulus_ << ":";
  for (size_t i = 0; i < exponents_.size(); ++i) {
    if (i) os << ",";
    os << exponents_[i];
  }
  return os.str();
}

DirichletChar DirichletChar::parse(const std::string& label) {
  auto colon = label.find(':');
  if (colon == std::string::npos) throw std::domain_error("character label must be 'M:e1,e2,...'");
  long M = std::stol(label.substr(0, colon));
  std::vector<long> exps;
  std::string rest = label.substr(colon + 1);
  if (!rest.empty()) {
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) exps.push_back(std::stol(tok));
  }
  return DirichletChar(M, std::move(exps));
}

bool operator==(const DirichletChar& a, const DirichletChar& b) {
  return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
}

CycloElem char_eval(const DirichletChar& chi, long a) { return chi.eval(a); }

DirichletChar char_product(const DirichletChar& a, const DirichletChar& b) {
  long L = lcm_long(a.modulus(), b.modulus());
  DirichletChar ae = a.extended(L), be = b.extended(L);
  std::vector<long> exps(ae.exponents().size());
  for (size_t i = 0; i < exps.size(); ++i) exps[i] = ae.exponents()[i] + be.exponents()[i];
  return DirichletChar(L, std::move(exps));
}

DirichletChar char_inverse(const DirichletChar& a) {
  std::vector<long> exps(a.exponents().size());
  for (size_t i = 0; i < exps.size(); ++i) exps[i] = -a.exponents()[i];
  return DirichletChar(a.modulus(), std::move(exps));
}

DirichletChar teichmuller(long p) {
  if (p == 2 || !is_prime_long(p)) throw std::domain_error("teichmuller: odd prime required");
  return DirichletChar(p, {1});
}

long kronecker_symbol(Int D, Int n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  long result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  // factor out 2s from n
  long v2 = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v2;
  }
  if (v2 > 0) {
    if (D % 2 == 0) return 0;
    Int Dm8 = ((D % 8) + 8) % 8;
    long two_sym = (Dm8 == 1 || Dm8 == 7) ? 1 : -1;
    if (v2 % 2 == 1) result *= two_sym;
  }
  // now n odd positive: Jacobi symbol (D/n) with reciprocity-free direct method
  Int a = D % n;
  if (a < 0) a += n;
  // Jacobi(a, n), n odd > 0
  long j = 1;
  Int num = a, den = n;
  while (num != 0) {
    long v = 0;
    while (num % 2 == 0) {
      num /= 2;
      ++v;
    }
    if (v % 2 == 1) {
      Int dm8 = den % 8;
      if (dm8 == 3 || dm8 == 5) j = -j;
    }
    if (num % 4 == 3 && den % 4 == 3) j = -j;
    std::swap(num, den);
    num %= den;
  }
  if (den != 1) j = 0;
  return result * j;
}

DirichletChar DirichletChar::quadratic(long D) {
  if (D == 0) throw std::domain_error("quadratic character: D nonzero required");
  long M = std::abs(D);
  if (M == 1) return DirichletChar::trivial(1);
  const auto& G = unit_group(M);
  std::vector<long> exps;
  for (size_t i = 0; i < G.gens.size(); ++i) {
    long s = kronecker_symbol(D, G.gens[i]);
    if (s == 1) {
      exps.push_back(0);
    } else if (s == -1) {
      if (G.orders[i] % 2 != 0)
        throw std::domain_error("quadratic character: symbol not periodic mod |D|");
      exps.push_back(G.orders[i] / 2);
    } else {
      throw std::domain_error("quadratic character: generator shares a factor with |D|");
    }
  }
  DirichletChar chi(M, std::move(exps));
  // consistency: the exponent vector must reproduce the symbol everywhere
  for (long a = 1; a < M; ++a) {
    long k = kronecker_symbol(D, a);
    CycloElem v = chi.eval(a);
    CycloElem want = k == 0 ? CycloElem::zero(1) : CycloElem(Rational(k), 1);
    if (!(v == want)) throw std::domain_error("quadratic character: D is not a valid discriminant mod |D|");
  }
  return chi;
}

std::vector<DirichletChar> all_characters(long M) {
  const auto& G = unit_group(M);
  std::vector<DirichletChar> out;
  std::vector<long> exps(G.gens.size(), 0);
  while (true) {
    out.emplace_back(M, exps);
    size_t j = 0;
    for (; j < exps.size(); ++j) {
      if (++exps[j] < G.orders[j]) break;
      exps[j] = 0;
    }
    if (j == exps.size()) break;
    if (exps.empty()) break;
  }
  return out;
}

std::vector<DirichletChar> primitive_characters(long f) {
  std::vector<DirichletChar> out;
  for (auto& chi : all_characters(f))
    if (chi.conductor() == f) out.push_back(chi);
  return out;
}

CrtSplit crt_split(long d, long N, long p) {
  if (p == 2 || !is_prime_long(p)) throw std::domain_error("crt_split: p must be an odd prime");
  if (gcd_long(p, 4 * N) != 1) throw std::domain_error("crt_split: p must be prime to 4N");
  long m = 4 * N * p;
  if (gcd_long(((d % m) + m) % m, m) != 1) throw std::domain_error("crt_split: d not coprime to 4Np");
  CrtSplit s;
  s.d_p = ((d % p) + p) % p;
  s.d_tame = ((d % (4 * N)) + 4 * N) % (4 * N);
  return s;
}

long component_index(long lambda, long j, long p) {
  long m = p - 1;
  return (((lambda + j) % m) + m) % m;
}

Rational bernoulli_number(long k) {
  // B_0 = 1, B_1 = -1/2; recursion sum_{j=0}^{k} C(k+1,j) B_j = 0
  static std::vector<Rational> cache = {Rational(1)};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  while (static_cast<long>(cache.size()) <= k) {
    long n = static_cast<long>(cache.size());
    // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
    Rational s(0);
    Int binom = 1;  // C(n+1, 0)
    for (long j = 0; j < n; ++j) {
      s += Rational(binom) * cache[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    cache.push_back(-s / Rational(n + 1));
  }
  return cache[k];
}

CycloElem bernoulli_generalized(long k, const DirichletChar& chi) {
  // B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)
  long f = chi.modulus();
  CycloElem total = CycloElem::zero(1);
  for (long a = 1; a <= f; ++a) {
    CycloElem c = chi.eval(a);
    if (c.is_zero()) continue;
    // B_k(x) = sum_j C(k,j) B_j x^{k-j}
    Rational x{Int(a), Int(f)};
    Rational bk(0);
    Int binom = 1;
    std::vector<Rational> xpows(k + 1);
    xpows[0] = Rational(1);
    for (long i = 1; i <= k; ++i) xpows[i] = xpows[i - 1] * x;
    for (long j = 0; j <= k; ++j) {
      bk += Rational(binom) * bernoulli_number(j) * xpows[k - j];
      binom = binom * (k - j) / (j + 1);
    }
    total += CycloElem(bk, 1) * c;
  }
  Rational scale(1);
  for (long i = 0; i < k - 1; ++i) scale *= Rational(f);
  if (k == 0) scale = Rational(Int(1), Int(f));
  return CycloElem(scale, 1) * total;
}

}  // namespace shq
