#include "shq/eigencurve.hpp"

#include "shq/json_io.hpp"

#include <map>
#include <sstream>

namespace shq {

namespace {

DirichletChar tau_power(long p, long j) {
  DirichletChar t = DirichletChar::trivial(p);
  DirichletChar tau = teichmuller(p);
  j = ((j % (p - 1)) + (p - 1)) % (p - 1);
  for (long i = 0; i < j; ++i) t = char_product(t, tau);
  return t;
}

DirichletChar involution_tame_twist(const DirichletChar& tame, long p, long tame_mod) {
  long sigma = (p - 1) / 2;
  DirichletChar t = tame;
  if (sigma % 2 == 1) t = char_product(t, DirichletChar::quadratic(-4));
  return t.extended(lcm_long(t.modulus(), tame_mod));
}

// per-process space cache for the scan, optionally backed by a directory
std::map<std::string, ModularFormSpace>& space_cache() {
  static std::map<std::string, ModularFormSpace> cache;
  return cache;
}

std::string& cache_dir_ref() {
  static std::string dir;
  return dir;
}

}  // namespace

void set_space_cache_dir(const std::string& dir) { cache_dir_ref() = dir; }

const ModularFormSpace& cached_space(long k2, long level, const DirichletChar& eps,
                                     bool cuspidal) {
  DirichletChar ext = eps.modulus() == level ? eps : eps.extended(level);
  ModularFormSpace probe;
  probe.weight_num = k2;
  probe.level = level;
  probe.character = ext;
  probe.cuspidal = cuspidal;
  probe.prec = sturm_bound(k2, level);
  std::string key = probe.cache_key();
  auto& cache = space_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (!cache_dir_ref().empty()) {
    ModularFormSpace loaded;
    if (cache_load_space(cache_dir_ref(), key, loaded) && loaded.cache_key() == key)
      return cache.emplace(key, std::move(loaded)).first->second;
  }
  ModularFormSpace sp = build_space(k2, level, eps, cuspidal);
  if (!cache_dir_ref().empty()) cache_store_space(cache_dir_ref(), sp);
  return cache.emplace(key, std::move(sp)).first->second;
}

ControlFlag control_flag(const EigenSystem& sys) {
  Rational bound(2 * sys.lambda - 1);
  if (sys.slope < bound) return ControlFlag::kSmallSlope;
  if (sys.slope == bound) return ControlFlag::kCritical;
  return ControlFlag::kLargeSlope;
}

const char* control_flag_name(ControlFlag f) {
  switch (f) {
    case ControlFlag::kSmallSlope: return "smallslope";
    case ControlFlag::kCritical: return "critical";
    case ControlFlag::kLargeSlope: return "largeslope";
  }
  return "?";
}

EigenSystem involution_on_systems(const EigenSystem& sys, long p) {
  EigenSystem out = sys;
  long sigma = (p - 1) / 2;
  out.j = ((sys.j + sigma) % (p - 1) + (p - 1)) % (p - 1);
  if (sigma % 2 == 1)
    out.tame = char_product(sys.tame, DirichletChar::quadratic(-4)).extended(
        lcm_long(sys.tame.modulus(), 4));
  return out;
}

SpectralSlice spectral_slice(const WeightPoint& w, bool half_side, long N,
                             const DirichletChar& tame, long prec) {
  if (w.p % 2 == 0 || !is_prime_long(w.p)) throw std::domain_error("spectral_slice: odd prime required");
  if (N % w.p == 0) throw std::domain_error("spectral_slice: p must not divide N");
  SpectralSlice s;
  s.weight = w;
  s.half_side = half_side;
  DirichletChar tau_j = tau_power(w.p, half_side ? w.j : 2 * w.j);
  if (half_side) {
    s.level = 4 * N * w.p;
    s.nebentypus = char_product(tame, tau_j).extended(s.level);
    s.cuspidal = true;
  } else {
    s.level = 2 * N * w.p;
    DirichletChar sq = char_product(tame, tame);
    // the square of a mod-4N character has conductor dividing 2N
    s.nebentypus = char_product(sq, tau_j).primitive().extended(s.level);
    // weight-2 points are checked against the full space: the weight-3/2 lift
    // can be Eisenstein (cuspidal only p-adically)
    s.cuspidal = w.lambda != 1;
  }
  long k2 = half_side ? 2 * w.lambda + 1 : 4 * w.lambda;
  const ModularFormSpace& sp = cached_space(k2, s.level, s.nebentypus, s.cuspidal);
  if (prec > 0 && sp.prec > prec)
    throw std::domain_error("spectral_slice: required precision exceeds the configured ceiling");
  s.dim = sp.dim();
  HeckeMatrix u = half_side ? u_ellsq_half(sp, w.p) : u_ell_integral(sp, w.p);
  s.fredholm = hecke_charpoly(u, true);
  // restriction of scalars for the polygon: fredholm_rs = det(1 - RS(U) T)
  if (s.dim == 0) {
    s.fredholm_rs = Poly::constant(CycloElem::one(1));
  } else if (s.fredholm.is_rational()) {
    s.fredholm_rs = s.fredholm.to_rational_poly();
  } else {
    MatC m = u.matrix.transpose();
    Poly cp_rs = restrict_scalars_charpoly(m);
    // reverse to the Fredholm normalization
    Poly rev = cp_rs.reversed();
    s.fredholm_rs = rev.coeff(0).inverse() * rev;
  }
  if (!s.fredholm_rs.is_zero() && s.fredholm_rs.degree() >= 0) {
    s.polygon = newton_polygon(s.fredholm_rs, w.p);
    try {
      s.slope_factors = slope_factorization(s.fredholm_rs, w.p);
    } catch (const SlopeFactorError&) {
      s.slope_factors_rational = false;
    }
  }
  return s;
}

DivisibilityResult check_divisibility(const SpectralSlice& half, const SpectralSlice& integral) {
  DivisibilityResult res;
  Poly a = squarefree_part(half.fredholm);
  Poly b = squarefree_part(integral.fredholm);
  long ord = lcm_long(a.order(), b.order());
  a = a.promoted(ord);
  b = b.promoted(ord);
  Poly q, r;
  poly_divrem(b, a, q, r);
  if (r.is_zero()) {
    res.ok = true;
    res.quotient = q;
    return res;
  }
  res.ok = false;
  for (auto& f : factor_cyclo(a)) {
    if (!poly_divides(f.factor, b)) {
      res.offending_factor = f.factor;
      break;
    }
  }
  return res;
}

bool systems_match(const EigenSystem& half_sys, const EigenSystem& integral_sys) {
  long ord = lcm_long(half_sys.combo_minpoly.order(), integral_sys.combo_minpoly.order());
  if (!(half_sys.combo_minpoly.promoted(ord) == integral_sys.combo_minpoly.promoted(ord)))
    return false;
  if (half_sys.op_value.size() != integral_sys.op_value.size()) return false;
  for (auto& [label, val] : half_sys.op_value) {
    auto it = integral_sys.op_value.find(sh_relabel(label));
    if (it == integral_sys.op_value.end()) return false;
    long o2 = lcm_long(val.order(), it->second.order());
    if (!(val.promoted(o2) == it->second.promoted(o2))) return false;
  }
  return half_sys.slope == integral_sys.slope;
}

ScanReport scan(const ScanConfig& config) {
  ScanReport report;
  report.config = config;
  long p = config.p, N = config.N;
  if (gcd_long(p, N) != 1 || p == 2 || !is_prime_long(p))
    throw std::domain_error("scan: p must be an odd prime not dividing N");

  std::vector<long> js = config.js;
  if (js.empty())
    for (long j = 0; j < p - 1; ++j) js.push_back(j);

  // tame slices, closed under the involution twist
  std::vector<DirichletChar> tames;
  if (config.tame_labels.empty()) {
    tames.push_back(DirichletChar::trivial(4 * N));
  } else {
    for (auto& lbl : config.tame_labels) tames.push_back(DirichletChar::parse(lbl).extended(4 * N));
  }
  {
    std::vector<DirichletChar> closed = tames;
    for (auto& t : tames) {
      DirichletChar tw = involution_tame_twist(t, p, 4 * N).extended(4 * N);
      bool seen = false;
      for (auto& c : closed)
        if (c == tw) seen = true;
      if (!seen) closed.push_back(tw);
    }
    tames = closed;
  }

  // probe primes for the eigen-systems: good on both sides
  std::vector<long> probes = config.probe_primes;
  if (probes.empty()) {
    for (long ell = 2; ell <= 13; ++ell)
      if (is_prime_long(ell) && (4 * N * p) % ell != 0) probes.push_back(ell);
  }

  for (long lambda : config.lambdas) {
    for (long j : js) {
      for (auto& tame : tames) {
        ScanPoint pt;
        pt.weight = {lambda, j, p};
        pt.tame = tame;
        try {
          pt.half = spectral_slice(pt.weight, true, N, tame, config.prec_ceiling);
          pt.integral = spectral_slice(pt.weight, false, N, tame, config.prec_ceiling);
          pt.divisibility = check_divisibility(pt.half, pt.integral);
          pt.divisibility_ok = pt.divisibility.ok;
          if (!pt.divisibility_ok) report.all_divisible = false;

          // eigen-systems with matched probe lists and a common seed
          const ModularFormSpace& hs =
              cached_space(2 * lambda + 1, pt.half.level, pt.half.nebentypus, true);
          const ModularFormSpace& is_ = cached_space(4 * lambda, pt.integral.level,
                                                     pt.integral.nebentypus, pt.integral.cuspidal);
          std::vector<HeckeMatrix> hops, iops;
          for (long ell : probes) {
            hops.push_back(t_ellsq_half(hs, ell));
            iops.push_back(t_ell_integral(is_, ell));
          }
          hops.push_back(u_ellsq_half(hs, p));
          iops.push_back(u_ell_integral(is_, p));
          std::ostringstream hu, iu;
          hu << "U(" << p * p << ")";
          iu << "U(" << p << ")";
          pt.half_systems = eigensystems(hs, hops, hu.str(), p, config.seed);
          pt.integral_systems = eigensystems(is_, iops, iu.str(), p, config.seed);
          for (auto& sys : pt.half_systems) {
            sys.lambda = lambda;
            sys.j = j;
            sys.tame = tame;
          }
          for (auto& sys : pt.integral_systems) {
            sys.lambda = 2 * lambda;
            sys.j = (2 * j) % (p - 1);
            sys.tame = char_product(tame, tame).extended(4 * N);
          }

          for (size_t hi = 0; hi < pt.half_systems.size(); ++hi) {
            MatchRecord mr;
            mr.half_index = static_cast<long>(hi);
            for (size_t ii = 0; ii < pt.integral_systems.size(); ++ii) {
              if (systems_match(pt.half_systems[hi], pt.integral_systems[ii])) {
                mr.integral_index = static_cast<long>(ii);
                break;
              }
            }
            ControlFlag cf = control_flag(pt.half_systems[hi]);
            pt.control.push_back(cf);
            if (mr.integral_index < 0) {
              mr.diagnostic = std::string("unmatched (") + control_flag_name(cf) + ")";
              if (cf == ControlFlag::kSmallSlope) report.all_smallslope_matched = false;
            }
            pt.matches.push_back(mr);
          }
        } catch (const std::exception& e) {
          pt.error = e.what();
          report.all_divisible = false;
        }
        report.points.push_back(std::move(pt));
      }
    }
  }

  // involution pairing: systems of (tame, j) against (twisted tame, j + (p-1)/2)
  long sigma = (p - 1) / 2;
  for (size_t a = 0; a < report.points.size(); ++a) {
    const ScanPoint& A = report.points[a];
    if (!A.error.empty()) continue;
    for (size_t b = 0; b < report.points.size(); ++b) {
      const ScanPoint& B = report.points[b];
      if (!B.error.empty()) continue;
      if (B.weight.lambda != A.weight.lambda) continue;
      if (B.weight.j != ((A.weight.j + sigma) % (p - 1))) continue;
      DirichletChar tw = involution_tame_twist(A.tame, p, 4 * N).extended(4 * N);
      if (!(B.tame == tw)) continue;
      // pair systems with identical T/U eigenvalue data
      for (size_t sa = 0; sa < A.half_systems.size(); ++sa) {
        InvolutionPair pair;
        pair.point_a = a;
        pair.point_b = b;
        pair.sys_a = static_cast<long>(sa);
        EigenSystem image = involution_on_systems(A.half_systems[sa], p);
        for (size_t sb = 0; sb < B.half_systems.size(); ++sb) {
          const EigenSystem& cand = B.half_systems[sb];
          long ord = lcm_long(image.combo_minpoly.order(), cand.combo_minpoly.order());
          if (!(image.combo_minpoly.promoted(ord) == cand.combo_minpoly.promoted(ord))) continue;
          bool same = true;
          for (auto& [label, val] : image.op_value) {
            auto it = cand.op_value.find(label);
            long o2 = it == cand.op_value.end() ? 1 : lcm_long(val.order(), it->second.order());
            if (it == cand.op_value.end() || !(val.promoted(o2) == it->second.promoted(o2))) {
              same = false;
              break;
            }
          }
          if (!same) continue;
          pair.sys_b = static_cast<long>(sb);
          // Sh images must coincide
          EigenSystem shA = sh_on_points(A.half_systems[sa]);
          EigenSystem shB = sh_on_points(cand);
          bool equal = shA.lambda == shB.lambda && shA.j == shB.j;
          long ord2 = lcm_long(shA.combo_minpoly.order(), shB.combo_minpoly.order());
          equal = equal && shA.combo_minpoly.promoted(ord2) == shB.combo_minpoly.promoted(ord2);
          for (auto& [label, val] : shA.op_value) {
            auto it = shB.op_value.find(label);
            long o3 = it == shB.op_value.end() ? 1 : lcm_long(val.order(), it->second.order());
            if (it == shB.op_value.end() || !(val.promoted(o3) == it->second.promoted(o3)))
              equal = false;
          }
          equal = equal && char_product(shA.tame, char_inverse(shB.tame)).is_trivial();
          pair.sh_images_equal = equal;
          break;
        }
        if (pair.sys_b < 0 || !pair.sh_images_equal) report.involution_coherent = false;
        report.involution_pairs.push_back(pair);
      }
    }
  }
  return report;
}

}  // namespace shq
