#pragma once

#include "shq/shimura.hpp"

namespace shq {

struct WeightPoint {
  long lambda = 0;
  long j = 0;
  long p = 3;
  long component() const { return component_index(lambda, j, p); }
};

// One classical weight point on one side: the space, the Fredholm polynomial
// of the distinguished U operator, and its slope data (through restriction of
// scalars when the nebentypus is irrational).
struct SpectralSlice {
  WeightPoint weight;
  bool half_side = true;
  long level = 0;
  DirichletChar nebentypus;
  bool cuspidal = true;
  long dim = 0;
  Poly fredholm;                         // det(1 - U T) over the value field
  Poly fredholm_rs;                      // restriction of scalars, over Q
  NewtonPolygon polygon;                 // polygon of fredholm_rs
  std::map<Rational, Poly> slope_factors;  // pure-slope factorization of fredholm_rs
  bool slope_factors_rational = true;    // false when an irreducible factor mixes slopes
};

enum class ControlFlag { kSmallSlope, kCritical, kLargeSlope };
ControlFlag control_flag(const EigenSystem& sys);
const char* control_flag_name(ControlFlag f);

// j -> j + (p-1)/2, tame twist by (-1/.)^{(p-1)/2}, eigenvalues unchanged.
EigenSystem involution_on_systems(const EigenSystem& sys, long p);

struct DivisibilityResult {
  bool ok = false;
  Poly quotient;            // square-free integral part / square-free half part
  Poly offending_factor;    // an irreducible witness when !ok
};
DivisibilityResult check_divisibility(const SpectralSlice& half, const SpectralSlice& integral);

struct MatchRecord {
  long half_index = -1;      // indices into the per-point system lists
  long integral_index = -1;  // -1: unmatched
  std::string diagnostic;
};

struct ScanPoint {
  WeightPoint weight;
  DirichletChar tame;  // mod 4N
  SpectralSlice half;
  SpectralSlice integral;
  bool divisibility_ok = false;
  DivisibilityResult divisibility;
  std::vector<EigenSystem> half_systems;
  std::vector<EigenSystem> integral_systems;
  std::vector<MatchRecord> matches;
  std::vector<ControlFlag> control;  // per half system
  std::string error;                 // nonempty when the point failed
};

struct InvolutionPair {
  size_t point_a = 0, point_b = 0;  // indices into ScanReport::points
  long sys_a = -1, sys_b = -1;
  bool sh_images_equal = false;
};

struct ScanConfig {
  long p = 5;
  long N = 1;
  std::vector<long> lambdas = {1, 2};
  std::vector<long> js;                    // empty: all j mod p-1
  std::vector<std::string> tame_labels;    // empty: trivial slice (closed under the involution twist)
  unsigned long seed = 1;
  long prec_ceiling = 1 << 20;
  std::vector<long> probe_primes;          // empty: good primes <= 13
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanPoint> points;
  std::vector<InvolutionPair> involution_pairs;
  bool all_divisible = true;
  bool all_smallslope_matched = true;
  bool involution_coherent = true;
};

SpectralSlice spectral_slice(const WeightPoint& w, bool half_side, long N,
                             const DirichletChar& tame, long prec = -1);

// Optional directory backing for the scan's space cache (atomic writes).
void set_space_cache_dir(const std::string& dir);
const ModularFormSpace& cached_space(long k2, long level, const DirichletChar& eps, bool cuspidal);

ScanReport scan(const ScanConfig& config);

// Equality of systems under the Sh relabeling (combo built from the same
// seeded coefficients on the relabeled probe list).
bool systems_match(const EigenSystem& half_sys, const EigenSystem& integral_sys);

}  // namespace shq
