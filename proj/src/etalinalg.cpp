#include "cuspgrp/etalinalg.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace cuspgrp {

Int a_entry(u64 N, u64 d, u64 delta) {
  u64 z = std::gcd(d, N / d);
  u64 g = std::gcd(d, delta);
  Int num = Int(N / z) * g * g;
  Int den = Int(d) * delta;
  if (num % den) throw std::logic_error("a_entry: non-integral");
  return num / den;
}

Rat lambda_entry(u64 N, u64 d, u64 delta) { return Rat(a_entry(N, d, delta), 24); }

RMat lambda_matrix(u64 N) {
  auto ds = divisors(N);
  RMat L(ds.size(), std::vector<Rat>(ds.size()));
  for (size_t i = 0; i < ds.size(); ++i)
    for (size_t j = 0; j < ds.size(); ++j) L[i][j] = lambda_entry(N, ds[i], ds[j]);
  return L;
}

IMat upsilon_local(u64 p, int r) {
  IMat U(r + 1, IVec(r + 1));
  auto m = [r](int j) { return std::min(j, r - j); };
  for (int i = 0; i <= r; ++i) {
    for (int j = 0; j <= r; ++j) {
      if (i == j) {
        U[i][j] = (i == 0 || i == r) ? Int(p) : Int(ipow(p, m(j) - 1) * (p * p + 1));
      } else if (i - j == 1 || j - i == 1) {
        U[i][j] = -Int(ipow(p, m(j)));
      }
    }
  }
  return U;
}

std::shared_ptr<const IMat> upsilon(u64 N) {
  static std::shared_mutex mu;
  static std::map<u64, std::shared_ptr<const IMat>> cache;
  {
    std::shared_lock lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
  }
  auto F = factor(N);
  auto ds = divisors(F);
  std::vector<IMat> loc;
  for (auto& pr : F.factors) loc.push_back(upsilon_local(pr.p, pr.r));
  std::vector<Tuple> tup;
  for (u64 d : ds) tup.push_back(tuple_of(F, d));
  auto U = std::make_shared<IMat>(ds.size(), IVec(ds.size()));
  for (size_t i = 0; i < ds.size(); ++i)
    for (size_t j = 0; j < ds.size(); ++j) {
      Int e = 1;
      for (int k = 0; k < F.t() && e != 0; ++k) e *= loc[k][tup[i][k]][tup[j][k]];
      (*U)[i][j] = e;
    }
  std::unique_lock lk(mu);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(N, U);
  return U;
}

IVec mat_vec(const IMat& A, const IVec& v) {
  IVec out(A.size());
  for (size_t i = 0; i < A.size(); ++i) {
    Int s = 0;
    for (size_t j = 0; j < v.size(); ++j)
      if (A[i][j] != 0 && v[j] != 0) s += A[i][j] * v[j];
    out[i] = s;
  }
  return out;
}

ColumnProfile upsilon_column_profile(u64 N, u64 d) {
  auto ds = divisors(N);
  int j = divisor_index(ds, d);
  if (j < 0) throw std::invalid_argument("column profile: d does not divide N");
  auto U = upsilon(N);
  ColumnProfile P{0, 0, 0, 0};
  for (size_t i = 0; i < ds.size(); ++i) {
    const Int& x = (*U)[i][j];
    P.sum += x;
    P.delta_sum += x * ds[i];
    P.codelta_sum += x * (N / ds[i]);
    P.gcd = gcd_big(P.gcd, x);
  }
  return P;
}

std::string LigozatReport::first_failure() const {
  if (!integral) return "integrality";
  if (!cond1) return "condition 1";
  if (!cond2) return "condition 2";
  if (!cond3) return "condition 3";
  if (!cond4) return "condition 4";
  return "";
}

LigozatReport ligozat_check(const EtaVector& r) {
  LigozatReport R;
  auto F = factor(r.N);
  auto ds = divisors(F);
  for (auto& x : r.r)
    if (boost::multiprecision::denominator(x) != 1) R.integral = false;
  if (!R.integral) {
    R.cond1 = R.cond2 = R.cond3 = R.cond4 = false;
    return R;
  }
  Int s0 = 0, s1 = 0, s2 = 0;
  std::vector<Int> pv(F.t());
  for (size_t i = 0; i < ds.size(); ++i) {
    Int x = boost::multiprecision::numerator(r.r[i]);
    s0 += x;
    s1 += x * ds[i];
    s2 += x * (r.N / ds[i]);
    for (int k = 0; k < F.t(); ++k) pv[k] += x * val(F.factors[k].p, ds[i]);
  }
  R.cond1 = s1 % 24 == 0;
  R.cond2 = s2 % 24 == 0;
  R.cond3 = s0 == 0;
  for (auto& x : pv)
    if (x % 2 != 0) R.cond4 = false;
  return R;
}

std::vector<Rat> eta_divisor(const EtaVector& r) {
  auto ds = divisors(r.N);
  std::vector<Rat> out(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    Rat s = 0;
    for (size_t j = 0; j < ds.size(); ++j)
      if (r.r[j] != 0) s += lambda_entry(r.N, ds[i], ds[j]) * r.r[j];
    out[i] = s;
  }
  return out;
}

namespace {

// generalized binomial C(e, k) for integer e
Int binom(const Int& e, int k) {
  Int num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (e - i);
    den *= (i + 1);
  }
  return num / den;
}

}  // namespace

QExpansion eta_qexpansion(u64 N, const IVec& r, int K) {
  if (K < 1) throw std::invalid_argument("eta_qexpansion: K must be positive");
  auto ds = divisors(N);
  QExpansion Q;
  Q.lead24 = 0;
  IVec s(K);
  s[0] = 1;
  for (size_t j = 0; j < ds.size(); ++j) {
    Q.lead24 += r[j] * ds[j];
    if (r[j] == 0) continue;
    for (u64 n = 1; n * ds[j] < u64(K); ++n) {
      u64 step = n * ds[j];
      // multiply by (1 - q^step)^{r_j}
      IVec t(K);
      for (int k = 0; u64(k) * step < u64(K); ++k) {
        Int c = binom(r[j], k);
        if (k & 1) c = -c;
        if (c == 0) continue;
        for (int i = 0; i + k * step < u64(K); ++i) t[i + k * step] += c * s[i];
      }
      s = std::move(t);
    }
  }
  Q.coeffs = s;
  return Q;
}

std::string QExpansion::text() const {
  std::string out = "q^(" + lead24.str() + "/24) * (";
  bool first = true;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      out += (c < 0 ? "-" : "");
    } else {
      out += (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + " ";
      out += (i == 1 ? std::string("q") : "q^" + std::to_string(i));
    }
    first = false;
  }
  if (first) out += "0";
  out += " + O(q^" + std::to_string(coeffs.size()) + "))";
  return out;
}

}  // namespace cuspgrp
