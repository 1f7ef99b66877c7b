#include "shq/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace shq {

namespace {

// Polynomial helpers on dense rational coefficient vectors (constant term first).
void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

// r := r mod f, f monic.
void mod_monic(std::vector<Rational>& r, const std::vector<Rational>& f) {
  const size_t df = f.size() - 1;
  while (r.size() > df) {
    Rational lead = r.back();
    size_t shift = r.size() - 1 - df;
    if (!lead.is_zero()) {
      for (size_t i = 0; i < df; ++i) r[shift + i] -= lead * f[i];
    }
    r.pop_back();
  }
}

std::vector<Rational> polmul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

const std::vector<Rational>& phi_rational(long m);

std::map<long, std::vector<Int>> g_cyclo_cache;
std::map<long, std::vector<Rational>> g_cyclo_cache_q;
std::mutex g_cyclo_mutex;

}  // namespace

namespace {
// Exact division of a by monic b over Z (remainder must vanish).
std::vector<Int> div_monic_exact(std::vector<Int> a, const std::vector<Int>& b) {
  std::vector<Int> q(a.size() - b.size() + 1, 0);
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    Int c = a[k + b.size() - 1];
    q[k] = c;
    if (c != 0)
      for (size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  return q;
}
}  // namespace

std::vector<Int> cyclotomic_polynomial(long m) {
  if (m < 1) throw std::domain_error("cyclotomic_polynomial: m >= 1 required");
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo_cache.find(m);
  if (it != g_cyclo_cache.end()) return it->second;
  // Fill bottom-up over divisors: Phi_e = (x^e - 1) / prod_{f | e, f < e} Phi_f.
  for (long e = 1; e <= m; ++e) {
    if (m % e != 0 || g_cyclo_cache.count(e)) continue;
    std::vector<Int> num(e + 1, 0);
    num[0] = -1;
    num[e] = 1;
    for (long f = 1; f < e; ++f)
      if (e % f == 0) num = div_monic_exact(std::move(num), g_cyclo_cache.at(f));
    g_cyclo_cache[e] = std::move(num);
  }
  return g_cyclo_cache.at(m);
}

namespace {
const std::vector<Rational>& phi_rational(long m) {
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache_q.find(m);
    if (it != g_cyclo_cache_q.end()) return it->second;
  }
  auto z = cyclotomic_polynomial(m);
  std::vector<Rational> q;
  q.reserve(z.size());
  for (const auto& c : z) q.emplace_back(c);
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  return g_cyclo_cache_q.emplace(m, std::move(q)).first->second;
}
}  // namespace

CycloElem::CycloElem(const Rational& x, long order) : order_(order) {
  if (order < 1) throw std::domain_error("CycloElem: order >= 1 required");
  coords_.assign(euler_phi(order), Rational(0));
  coords_[0] = x;
}

CycloElem::CycloElem(long order, std::vector<Rational> coords) : order_(order), coords_(std::move(coords)) {
  if (order < 1) throw std::domain_error("CycloElem: order >= 1 required");
  if (static_cast<long>(coords_.size()) != euler_phi(order))
    throw std::domain_error("CycloElem: coords length must be phi(order)");
}

CycloElem CycloElem::root_of_unity(long m, long k) {
  k = ((k % m) + m) % m;
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = Rational(1);
  mod_monic(v, phi_rational(m));
  v.resize(euler_phi(m), Rational(0));
  return CycloElem(m, std::move(v));
}

bool CycloElem::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloElem::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

Rational CycloElem::to_rational() const {
  if (!is_rational()) throw std::domain_error("CycloElem: not a rational value");
  return coords_[0];
}

CycloElem CycloElem::promoted(long M) const {
  if (M == order_) return *this;
  if (M % order_ != 0) throw std::domain_error("CycloElem::promoted: order must divide target");
  long s = M / order_;
  std::vector<Rational> v;
  for (size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j].is_zero()) continue;
    size_t e = j * s;
    if (v.size() < e + 1) v.resize(e + 1, Rational(0));
    v[e] += coords_[j];
  }
  if (v.empty()) v.assign(1, Rational(0));
  mod_monic(v, phi_rational(M));
  v.resize(euler_phi(M), Rational(0));
  return CycloElem(M, std::move(v));
}

CycloElem CycloElem::minimized() const {
  if (order_ == 1) return *this;
  for (long d = 1; d < order_; ++d) {
    if (order_ % d != 0) continue;
    long phid = euler_phi(d);
    // Solve: element = sum_j c_j * promoted(zeta_d^j) by Gaussian elimination.
    long phiM = degree();
    std::vector<std::vector<Rational>> cols;
    for (long j = 0; j < phid; ++j) cols.push_back(root_of_unity(d, j).promoted(order_).coords());
    // augmented system
    std::vector<std::vector<Rational>> A(phiM, std::vector<Rational>(phid + 1, Rational(0)));
    for (long r = 0; r < phiM; ++r) {
      for (long j = 0; j < phid; ++j) A[r][j] = cols[j][r];
      A[r][phid] = coords_[r];
    }
    long row = 0;
    std::vector<long> pivot_col(phid, -1);
    for (long col = 0; col < phid && row < phiM; ++col) {
      long pr = -1;
      for (long r = row; r < phiM; ++r)
        if (!A[r][col].is_zero()) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(A[row], A[pr]);
      Rational inv = A[row][col].inverse();
      for (long c = col; c <= phid; ++c) A[row][c] *= inv;
      for (long r = 0; r < phiM; ++r) {
        if (r == row || A[r][col].is_zero()) continue;
        Rational f = A[r][col];
        for (long c = col; c <= phid; ++c) A[r][c] -= f * A[row][c];
      }
      pivot_col[col] = row;
      ++row;
    }
    bool consistent = true;
    for (long r = row; r < phiM; ++r)
      if (!A[r][phid].is_zero()) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    std::vector<Rational> sol(phid, Rational(0));
    for (long col = 0; col < phid; ++col)
      if (pivot_col[col] >= 0) sol[col] = A[pivot_col[col]][phid];
    return CycloElem(d, std::move(sol));
  }
  return *this;
}

CycloElem CycloElem::operator-() const {
  CycloElem r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  if (order_ != o.order_) {
    long M = lcm_long(order_, o.order_);
    *this = promoted(M);
    return *this += o.promoted(M);
  }
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  if (order_ != o.order_) {
    long M = lcm_long(order_, o.order_);
    *this = promoted(M);
    return *this -= o.promoted(M);
  }
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o) {
  if (order_ != o.order_) {
    long M = lcm_long(order_, o.order_);
    *this = promoted(M);
    return *this *= o.promoted(M);
  }
  if (coords_.size() == 1) {
    coords_[0] *= o.coords_[0];
    return *this;
  }
  auto prod = polmul(coords_, o.coords_);
  mod_monic(prod, phi_rational(order_));
  prod.resize(coords_.size(), Rational(0));
  coords_ = std::move(prod);
  return *this;
}

CycloElem& CycloElem::operator/=(const CycloElem& o) { return *this *= o.inverse(); }

bool operator==(const CycloElem& a, const CycloElem& b) {
  if (a.order_ == b.order_) return a.coords_ == b.coords_;
  long M = lcm_long(a.order_, b.order_);
  return a.promoted(M).coords_ == b.promoted(M).coords_;
}

namespace {
// Quotient and remainder in Q[x], divisor nonzero.
void divrem_q(const std::vector<Rational>& a, const std::vector<Rational>& b,
              std::vector<Rational>& q, std::vector<Rational>& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Rational(0));
  Rational lead_inv = b.back().inverse();
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    if (r.size() < b.size() + k) continue;
    Rational c = r[k + b.size() - 1] * lead_inv;
    q[k] = c;
    if (!c.is_zero())
      for (size_t i = 0; i + 1 < b.size(); ++i) r[k + i] -= c * b[i];
    r.resize(k + b.size() - 1);
    trim(r);
  }
}
}  // namespace

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw std::domain_error("CycloElem: inverse of zero");
  if (coords_.size() == 1) return CycloElem(order_, {coords_[0].inverse()});
  // extended Euclid in Q[x]: s*this + t*Phi_m = gcd = nonzero constant
  std::vector<Rational> r0 = phi_rational(order_);
  std::vector<Rational> r1 = coords_;
  trim(r1);
  std::vector<Rational> s0, s1 = {Rational(1)};
  while (!r1.empty()) {
    std::vector<Rational> q, rem;
    divrem_q(r0, r1, q, rem);
    auto qs1 = polmul(q, s1);
    std::vector<Rational> snew = s0;
    if (snew.size() < qs1.size()) snew.resize(qs1.size(), Rational(0));
    for (size_t i = 0; i < qs1.size(); ++i) snew[i] -= qs1[i];
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snew);
  }
  if (r0.size() != 1) throw std::domain_error("CycloElem: non-unit gcd with Phi_m");
  Rational lead_inv = r0[0].inverse();
  std::vector<Rational> inv(s0.size());
  for (size_t i = 0; i < s0.size(); ++i) inv[i] = s0[i] * lead_inv;
  mod_monic(inv, phi_rational(order_));
  inv.resize(coords_.size(), Rational(0));
  return CycloElem(order_, std::move(inv));
}

CycloElem CycloElem::galois(long a) const {
  a = ((a % order_) + order_) % order_;
  if (order_ > 1 && gcd_long(a, order_) != 1)
    throw std::domain_error("CycloElem::galois: exponent not coprime to order");
  std::vector<Rational> v;
  for (size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j].is_zero()) continue;
    size_t e = (j * a) % order_;
    if (v.size() < e + 1) v.resize(e + 1, Rational(0));
    v[e] += coords_[j];
  }
  if (v.empty()) v.assign(1, Rational(0));
  mod_monic(v, phi_rational(order_));
  v.resize(coords_.size(), Rational(0));
  return CycloElem(order_, std::move(v));
}

std::string CycloElem::str() const {
  if (is_rational()) return coords_[0].str();
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j].is_zero()) continue;
    if (!first) os << " + ";
    os << coords_[j].str();
    if (j > 0) os << "*z" << order_ << "^" << j;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace shq
