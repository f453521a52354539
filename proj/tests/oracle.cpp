#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

std::vector<std::pair<u64, int>> trial_factor(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

u64 phi(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

int valuation(u64 p, u64 n) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// b, d with a*d - b*c = 1
std::pair<i64, i64> complete(i64 a, i64 c) {
  i64 r0 = a, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1) {
    i64 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  // s0*a + t0*c = r0 = +-1
  if (r0 < 0) {
    s0 = -s0;
    t0 = -t0;
  }
  return {-t0, s0};
}

}  // namespace

bool cusp_equiv(i64 a1, i64 c1, i64 a2, i64 c2, u64 N) {
  auto [b1, d1] = complete(a1, c1);
  auto [b2, d2] = complete(a2, c2);
  (void)b1;
  (void)b2;
  // lower-left of M2 T^h M1^-1 is c2*d1 - c1*d2 - h*c1*c2
  i64 n = i64(N);
  i64 base = mod(c2 * d1 - c1 * d2, n), step = mod(c1 * c2, n);
  for (i64 h = 0; h < n; ++h)
    if (mod(base - h * step, n) == 0) return true;
  return false;
}

std::vector<std::pair<i64, i64>> cusp_classes(u64 N) {
  std::vector<std::pair<i64, i64>> reps;
  for (u64 c : divisors(N))
    for (u64 a = 0; a < N * c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      bool seen = false;
      for (auto& [x, y] : reps)
        if (cusp_equiv(i64(a), i64(c), x, y, N)) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back({i64(a), i64(c)});
    }
  return reps;
}

RMat lambda(u64 N) {
  auto ds = divisors(N);
  RMat L(ds.size(), std::vector<Rat>(ds.size()));
  for (size_t i = 0; i < ds.size(); ++i)
    for (size_t j = 0; j < ds.size(); ++j) {
      u64 c = ds[i], delta = ds[j];
      u64 g = std::gcd(c, delta);
      L[i][j] = Rat(Int(N) * g * g, Int(24) * std::gcd(c, N / c) * c * delta);
    }
  return L;
}

RMat inverse(RMat A) {
  size_t n = A.size();
  RMat I(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("singular");
    std::swap(A[p], A[c]);
    std::swap(I[p], I[c]);
    Rat inv = 1 / A[c][c];
    for (size_t j = 0; j < n; ++j) {
      A[c][j] *= inv;
      I[c][j] *= inv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (size_t j = 0; j < n; ++j) {
        A[i][j] -= f * A[c][j];
        I[i][j] -= f * I[c][j];
      }
    }
  }
  return I;
}

RMat product(const RMat& A, const RMat& B) {
  RMat C(A.size(), std::vector<Rat>(B[0].size(), 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t k = 0; k < B.size(); ++k)
      if (A[i][k] != 0)
        for (size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

IVec eta_series(const std::map<u64, i64>& r, int K) {
  // prod (1 - q^n) by Euler's pentagonal theorem
  IVec P(K, 0);
  for (i64 k = -K; k <= K; ++k) {
    i64 e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < K) P[e] += (k % 2 == 0) ? 1 : -1;
  }
  // inverse series
  IVec Q(K, 0);
  Q[0] = 1;
  for (int n = 1; n < K; ++n) {
    Int s = 0;
    for (int j = 1; j <= n; ++j) s += P[j] * Q[n - j];
    Q[n] = -s;
  }
  IVec out(K, 0);
  out[0] = 1;
  for (auto& [delta, e] : r) {
    const IVec& base = e >= 0 ? P : Q;
    IVec f(K, 0);
    for (int n = 0; n * i64(delta) < K; ++n) f[n * delta] = base[n];
    for (i64 k = 0; k < (e >= 0 ? e : -e); ++k) {
      IVec nx(K, 0);
      for (int a = 0; a < K; ++a)
        if (out[a] != 0)
          for (int b = 0; a + b < K; ++b) nx[a + b] += out[a] * f[b];
      out = nx;
    }
  }
  return out;
}

bool ligozat(u64 N, const std::vector<Rat>& r) {
  auto ds = divisors(N);
  Int s0 = 0, s1 = 0, s2 = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    if (denominator(r[i]) != 1) return false;
    Int x = numerator(r[i]);
    s0 += x;
    s1 += x * ds[i];
    s2 += x * (N / ds[i]);
  }
  if (s0 != 0 || s1 % 24 != 0 || s2 % 24 != 0) return false;
  for (auto& [p, e] : trial_factor(N)) {
    Int w = 0;
    for (size_t i = 0; i < ds.size(); ++i) w += numerator(r[i]) * valuation(p, ds[i]);
    if (w % 2 != 0) return false;
  }
  return true;
}

Int naive_order(u64 N, const IVec& c, u64 limit) {
  RMat Li = inverse(lambda(N));
  std::vector<Rat> r0(c.size(), 0);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) r0[i] += Li[i][j] * c[j];
  for (u64 n = 1; n <= limit; ++n) {
    std::vector<Rat> r(r0.size());
    for (size_t i = 0; i < r0.size(); ++i) r[i] = r0[i] * n;
    if (ligozat(N, r)) return n;
  }
  return 0;
}

namespace {

// integer kernel of A (rows = equations) via unimodular column operations
IMat kernel(IMat A, size_t n) {
  size_t m = A.size();
  IMat U(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = 1;
  auto colop = [&](size_t j, size_t k, const Int& a, const Int& b, const Int& c, const Int& d) {
    // (col j, col k) <- (a*col j + b*col k, c*col j + d*col k)
    for (size_t i = 0; i < m; ++i) {
      Int x = A[i][j], y = A[i][k];
      A[i][j] = a * x + b * y;
      A[i][k] = c * x + d * y;
    }
    for (size_t i = 0; i < n; ++i) {
      Int x = U[i][j], y = U[i][k];
      U[i][j] = a * x + b * y;
      U[i][k] = c * x + d * y;
    }
  };
  size_t piv = 0;
  for (size_t row = 0; row < m && piv < n; ++row) {
    for (size_t k = piv + 1; k < n; ++k) {
      Int x = A[row][piv], y = A[row][k];
      if (y == 0) continue;
      // extended gcd of x, y
      Int r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (r1 != 0) {
        Int q = r0 / r1, tmp;
        tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
      }
      Int g = r0;
      colop(piv, k, s0, t0, -y / g, x / g);
    }
    if (A[row][piv] != 0) ++piv;
  }
  IMat K;
  for (size_t j = piv; j < n; ++j) {
    IVec v(n);
    for (size_t i = 0; i < n; ++i) v[i] = U[i][j];
    K.push_back(v);
  }
  return K;
}

}  // namespace

std::vector<Int> smith(IMat A) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  std::vector<Int> out;
  size_t k = 0;
  while (k < m && k < n) {
    // smallest nonzero entry
    size_t pi = m, pj = n;
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(A[k], A[pi]);
    for (auto& row : A) std::swap(row[k], row[pj]);
    bool clean = true;
    for (size_t i = k + 1; i < m; ++i) {
      Int q = A[i][k] / A[k][k];
      if (q != 0)
        for (size_t j = k; j < n; ++j) A[i][j] -= q * A[k][j];
      if (A[i][k] != 0) clean = false;
    }
    for (size_t j = k + 1; j < n; ++j) {
      Int q = A[k][j] / A[k][k];
      if (q != 0)
        for (size_t i = k; i < m; ++i) A[i][j] -= q * A[i][k];
      if (A[k][j] != 0) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (size_t i = k + 1; i < m && divides; ++i)
      for (size_t j = k + 1; j < n; ++j)
        if (A[i][j] % A[k][k] != 0) {
          for (size_t jj = k; jj < n; ++jj) A[k][jj] += A[i][jj];
          divides = false;
          break;
        }
    if (!divides) continue;
    out.push_back(abs(A[k][k]));
    ++k;
  }
  return out;
}

IMat relation_lattice(u64 N) {
  auto ds = divisors(N);
  auto F = trial_factor(N);
  size_t s = ds.size(), n = s + 2 + F.size();
  IMat A;
  IVec row(n, 0);
  for (size_t i = 0; i < s; ++i) row[i] = 1;
  A.push_back(row);
  row.assign(n, 0);
  for (size_t i = 0; i < s; ++i) row[i] = ds[i];
  row[s] = -24;
  A.push_back(row);
  row.assign(n, 0);
  for (size_t i = 0; i < s; ++i) row[i] = N / ds[i];
  row[s + 1] = -24;
  A.push_back(row);
  for (size_t k = 0; k < F.size(); ++k) {
    row.assign(n, 0);
    for (size_t i = 0; i < s; ++i) row[i] = valuation(F[k].first, ds[i]);
    row[s + 2 + k] = -2;
    A.push_back(row);
  }
  RMat L = lambda(N);
  IMat rel;
  for (auto& v : kernel(A, n)) {
    IVec coords;
    for (size_t d = 1; d < s; ++d) {
      Rat x = 0;
      for (size_t j = 0; j < s; ++j) x += L[d][j] * v[j];
      if (denominator(x) != 1) throw std::logic_error("non-integral unit divisor");
      coords.push_back(-numerator(x));
    }
    rel.push_back(coords);
  }
  return rel;
}

IVec cd_coords(u64 N, const IVec& c) {
  IVec out;
  Int deg = 0;
  auto ds = divisors(N);
  for (size_t i = 0; i < ds.size(); ++i) deg += c[i] * Int(phi(std::gcd(ds[i], N / ds[i])));
  if (deg != 0) throw std::invalid_argument("cd_coords: degree is not zero");
  for (size_t i = 1; i < c.size(); ++i) out.push_back(-c[i]);
  return out;
}

std::vector<Int> group_invariants(u64 N) {
  if (divisors(N).size() == 1) return {};
  auto rel = relation_lattice(N);
  std::vector<Int> out;
  auto sm = smith(rel);
  if (sm.size() != divisors(N).size() - 1) throw std::logic_error("relation lattice is not of full rank");
  for (auto& x : sm)
    if (x != 1) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
