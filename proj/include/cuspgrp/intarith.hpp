#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cuspgrp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using IVec = std::vector<Int>;

struct PrimePower {
  u64 p;
  int r;
  bool operator==(const PrimePower&) const = default;
};

// N with an explicit (reorderable) list of prime powers
struct FactoredInteger {
  u64 value = 1;
  std::vector<PrimePower> factors;

  int t() const { return int(factors.size()); }
  // 1-based index of the prime 2, 0 when N is odd
  int u() const;
  u64 p(int i) const { return factors[i - 1].p; }
  int r(int i) const { return factors[i - 1].r; }
};

FactoredInteger factor(u64 n);
bool is_prime(u64 n);

u64 gcd64(u64 a, u64 b);
u64 ipow(u64 b, int e);
Int ipow_big(const Int& b, unsigned e);
int val(u64 p, u64 n);
int val_big(u64 p, Int n);
u64 rad(const FactoredInteger& N);
u64 euler_phi(u64 n);
u64 kappa(const FactoredInteger& N);
Int gcd_big(const Int& a, const Int& b);
Int numerator(const Rat& q);
std::vector<u64> prime_divisors(u64 n);

// ascending divisors
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const FactoredInteger& N);
// position of d in divisors(N); -1 if absent
int divisor_index(const std::vector<u64>& divs, u64 d);

struct DivisorEntry {
  u64 d;
  u64 z;
  u64 phi_z;
};
std::vector<DivisorEntry> divisor_lattice(const FactoredInteger& N);

bool is_squarefree(u64 n);

// x with a*x = 1 mod m, requires gcd(a,m)=1, m >= 1
u64 inverse_mod(i64 a, u64 m);
i64 mod_floor(i64 a, i64 m);
// returns (g, x, y) with a*x + b*y = g
std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b);

// Exponent tuples over the factor list of N, stored 0-based but
// accessed with 1-based helpers, matching the index conventions.
using Tuple = std::vector<int>;

Tuple tuple_of(const FactoredInteger& N, u64 d);
u64 divisor_of(const FactoredInteger& N, const Tuple& f);

bool in_delta(const Tuple& f);
bool in_box(const Tuple& f);
int m_of(const Tuple& f);
int n_of(const Tuple& f);
int k_of(const Tuple& f);

Tuple tuple_A(int t, int k);
Tuple tuple_E(int t, int k);
Tuple tuple_F(int t, int k);
Tuple tuple_Eu(int t, int u, int k);
Tuple tuple_Fu(int t, int u, int k);

std::vector<int> index_set_I(int t, int u);

struct IndexProfile {
  int m = 0, n = 0, k = 0;
  bool delta = false, box = false;
  bool T_u = false, E = false, H_u = false, H1_u = false;
  bool F_s = false, F1_s = false, G_s = false, G1_s = false;
  // the same families with u in place of s
  bool F_u = false, F1_u = false, G_u = false, G1_u = false;
  bool is_A1 = false;
};

// r: exponents, u: index of 2 (0 if none), s: 0 or u
IndexProfile index_profile(const Tuple& f, const std::vector<int>& r, int u, int s);

// all of Omega(t) (nonzero tuples with f_i <= r_i)
std::vector<Tuple> omega(const std::vector<int>& r);

std::string to_string(const Int& x);

}  // namespace cuspgrp
