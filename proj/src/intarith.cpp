#include "cuspgrp/intarith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cuspgrp {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128)a * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witnesses for 64-bit inputs
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

int FactoredInteger::u() const {
  for (int i = 0; i < t(); ++i)
    if (factors[i].p == 2) return i + 1;
  return 0;
}

FactoredInteger factor(u64 n) {
  if (n == 0) throw std::invalid_argument("factor: n must be positive");
  FactoredInteger F;
  F.value = n;
  u64 m = n;
  for (u64 q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
    if (m % q) continue;
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    F.factors.push_back({q, e});
    if (m > 1 && is_prime(m)) break;
  }
  if (m > 1) F.factors.push_back({m, 1});
  return F;
}

u64 gcd64(u64 a, u64 b) { return std::gcd(a, b); }

u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Int ipow_big(const Int& b, unsigned e) { return boost::multiprecision::pow(b, e); }

int val(u64 p, u64 n) {
  if (n == 0) return 1 << 20;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int val_big(u64 p, Int n) {
  if (n == 0) return 1 << 20;
  if (n < 0) n = -n;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

u64 rad(const FactoredInteger& N) {
  u64 r = 1;
  for (auto& f : N.factors) r *= f.p;
  return r;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto& f : factor(n).factors) r = r / f.p * (f.p - 1);
  return r;
}

u64 kappa(const FactoredInteger& N) {
  u64 k = N.value / rad(N);
  for (auto& f : N.factors) k *= f.p * f.p - 1;
  return k;
}

Int gcd_big(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& f : factor(n).factors) out.push_back(f.p);
  return out;
}

std::vector<u64> divisors(const FactoredInteger& N) {
  std::vector<u64> ds{1};
  for (auto& f : N.factors) {
    size_t sz = ds.size();
    u64 pk = 1;
    for (int e = 1; e <= f.r; ++e) {
      pk *= f.p;
      for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<u64> divisors(u64 n) { return divisors(factor(n)); }

int divisor_index(const std::vector<u64>& divs, u64 d) {
  auto it = std::lower_bound(divs.begin(), divs.end(), d);
  if (it == divs.end() || *it != d) return -1;
  return int(it - divs.begin());
}

std::vector<DivisorEntry> divisor_lattice(const FactoredInteger& N) {
  std::vector<DivisorEntry> out;
  for (u64 d : divisors(N)) {
    u64 z = std::gcd(d, N.value / d);
    out.push_back({d, z, euler_phi(z)});
  }
  return out;
}

bool is_squarefree(u64 n) {
  for (auto& f : factor(n).factors)
    if (f.r > 1) return false;
  return true;
}

std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 inverse_mod(i64 a, u64 m) {
  if (m == 1) return 0;
  auto [g, x, y] = ext_gcd(mod_floor(a, i64(m)), i64(m));
  (void)y;
  if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
  return u64(mod_floor(x, i64(m)));
}

Tuple tuple_of(const FactoredInteger& N, u64 d) {
  Tuple f(N.t());
  for (int i = 0; i < N.t(); ++i) f[i] = val(N.factors[i].p, d);
  return f;
}

u64 divisor_of(const FactoredInteger& N, const Tuple& f) {
  u64 d = 1;
  for (int i = 0; i < N.t(); ++i) d *= ipow(N.factors[i].p, f[i]);
  return d;
}

bool in_delta(const Tuple& f) {
  bool nz = false;
  for (int a : f) {
    if (a > 1) return false;
    if (a) nz = true;
  }
  return nz;
}

bool in_box(const Tuple& f) {
  return std::any_of(f.begin(), f.end(), [](int a) { return a > 1; });
}

int m_of(const Tuple& f) {
  int t = int(f.size());
  for (int i = 1; i <= t; ++i)
    if (f[i - 1] == 1) return i;
  return t + 1;
}

int n_of(const Tuple& f) {
  int t = int(f.size());
  for (int i = m_of(f) + 1; i <= t; ++i)
    if (f[i - 1] == 0) return i;
  return t + 1;
}

int k_of(const Tuple& f) {
  int t = int(f.size());
  for (int i = n_of(f) + 1; i <= t; ++i)
    if (f[i - 1] == 0) return i;
  return t + 1;
}

Tuple tuple_A(int t, int k) {
  Tuple f(t, 0);
  for (int i = k; i <= t; ++i) f[i - 1] = 1;
  return f;
}

Tuple tuple_E(int t, int k) {
  Tuple f(t, 1);
  f[k - 1] = 0;
  return f;
}

Tuple tuple_F(int t, int k) {
  Tuple f(t, 0);
  f[k - 1] = 1;
  return f;
}

Tuple tuple_Eu(int t, int u, int k) {
  Tuple f(t, 1);
  f[k - 1] = 0;
  f[u - 1] = 0;
  return f;
}

Tuple tuple_Fu(int t, int u, int k) {
  Tuple f(t, 0);
  f[k - 1] = 1;
  f[u - 1] = 1;
  return f;
}

std::vector<int> index_set_I(int t, int u) {
  std::vector<int> out;
  if (u == 0) return out;
  if (u == 1) {
    for (int n = 3; n <= t; ++n) out.push_back(n);
  } else {
    for (int n = 2; n <= t; ++n)
      if (n != u) out.push_back(n);
  }
  return out;
}

IndexProfile index_profile(const Tuple& f, const std::vector<int>& r, int u, int s) {
  int t = int(f.size());
  if (std::all_of(f.begin(), f.end(), [](int a) { return a == 0; }))
    throw std::invalid_argument("index_profile: zero tuple");
  IndexProfile P;
  P.delta = in_delta(f);
  P.box = !P.delta;
  P.m = m_of(f);
  P.n = n_of(f);
  P.k = k_of(f);

  if (P.box && u >= 1 && r[u - 1] > 4) {
    bool ok = f[u - 1] >= 3 && f[u - 1] <= r[u - 1];
    for (int i = 1; i <= t && ok; ++i)
      if (i != u && f[i - 1] != 1) ok = false;
    P.T_u = ok;
  }
  if (!P.delta) return P;

  P.E = P.n == t + 1;
  P.is_A1 = f == tuple_A(t, 1);
  if (u >= 2) {
    P.H_u = P.n == u && P.k <= t;
    P.H1_u = P.n == u && P.k == t + 1;
  }
  auto fam = [&](int w, bool& F, bool& F1, bool& G, bool& G1) {
    if (w >= 1) {
      for (int n : index_set_I(t, w)) {
        if (f == tuple_E(t, n)) F = true;
        if (f == tuple_Eu(t, w, n)) F1 = true;
      }
      if (w == 1 && t >= 2 && f == tuple_E(t, 2)) G = true;
    }
    for (int n = (w == 1 ? 1 : 2); n <= t; ++n)
      if (f == tuple_E(t, n)) G1 = true;
  };
  fam(u, P.F_u, P.F1_u, P.G_u, P.G1_u);
  fam(s, P.F_s, P.F1_s, P.G_s, P.G1_s);
  return P;
}

std::vector<Tuple> omega(const std::vector<int>& r) {
  std::vector<Tuple> out;
  int t = int(r.size());
  Tuple f(t, 0);
  while (true) {
    int i = 0;
    while (i < t && f[i] == r[i]) f[i++] = 0;
    if (i == t) break;
    ++f[i];
    out.push_back(f);
  }
  return out;
}

std::string to_string(const Int& x) { return x.str(); }

}  // namespace cuspgrp
