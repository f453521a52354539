#include "cuspgrp/divisors.hpp"

#include <numeric>
#include <stdexcept>

namespace cuspgrp {

namespace {

using Image = std::vector<std::pair<int, Int>>;

Image push_alpha(u64 p, int r, int f) {
  if (2 * f <= r) return {{f, 1}};
  if (f <= r - 1) return {{f, Int(p)}};
  if (f == r) return {{r, Int(p - 1)}};
  return {{r, 1}};
}

Image push_beta(u64 p, int r, int f) {
  if (f == 0) return {{0, 1}};
  if (f == 1 && r >= 1) return {{0, Int(p - 1)}};
  if (2 * f < r + 2) return {{f - 1, Int(p)}};
  return {{f - 1, 1}};
}

Image pull_alpha(u64 p, int r, int f) {
  if (r == 0) return {{0, Int(p)}, {1, 1}};
  if (f == r) return {{r, 1}, {r + 1, 1}};
  if (2 * f <= r) return {{f, Int(p)}};
  return {{f, 1}};
}

Image pull_beta(u64 p, int r, int f) {
  if (r == 0) return {{0, 1}, {1, Int(p)}};
  if (f == 0) return {{0, 1}, {1, 1}};
  if (2 * f < r) return {{f + 1, 1}};
  return {{f + 1, Int(p)}};
}

Image hecke(u64 p, int r, int f) {
  if (r == 0) return {{0, Int(p + 1)}};
  if (f == 0) return {{0, Int(p)}};
  if (f == r) {
    if (r == 1) return {{0, Int(p - 1)}, {1, 1}};
    return {{r - 1, 1}, {r, 1}};
  }
  if (f == 1) return {{0, Int(p * (p - 1))}};
  if (2 * f <= r) return {{f - 1, Int(p * p)}};
  if (2 * f == r + 1) return {{f - 1, Int(p)}};
  return {{f - 1, 1}};
}

template <class Local>
CuspDivisor transport(const CuspDivisor& D, u64 p, u64 Nt, int r, Local local) {
  auto src = divisors(D.N);
  auto dst = divisors(Nt);
  CuspDivisor out{Nt, IVec(dst.size())};
  for (size_t i = 0; i < src.size(); ++i) {
    if (D.c[i] == 0) continue;
    u64 d = src[i];
    int f = val(p, d);
    u64 dp = d / ipow(p, f);
    for (auto& [g, c] : local(p, r, f)) {
      int j = divisor_index(dst, dp * ipow(p, g));
      if (j < 0) throw std::logic_error("transport: target divisor missing");
      out.c[j] += c * D.c[i];
    }
  }
  return out;
}

}  // namespace

CuspDivisor zero_divisor(u64 N) { return CuspDivisor{N, IVec(divisors(N).size())}; }

CuspDivisor orbit_divisor(u64 N, u64 d) {
  auto ds = divisors(N);
  int i = divisor_index(ds, d);
  if (i < 0) throw std::invalid_argument("orbit_divisor: d does not divide N");
  CuspDivisor D{N, IVec(ds.size())};
  D.c[i] = 1;
  return D;
}

CuspDivisor C_generator(u64 N, u64 d) {
  if (d == 1) throw std::invalid_argument("C_generator: d must exceed 1");
  CuspDivisor D = orbit_divisor(N, d);
  D.c[divisor_index(divisors(N), d)] = -1;
  D.c[0] += euler_phi(std::gcd(d, N / d));
  return D;
}

Int degree(const CuspDivisor& D) {
  auto ds = divisors(D.N);
  Int s = 0;
  for (size_t i = 0; i < ds.size(); ++i) s += D.c[i] * euler_phi(std::gcd(ds[i], D.N / ds[i]));
  return s;
}

const Int& coeff(const CuspDivisor& D, u64 d) {
  int i = divisor_index(divisors(D.N), d);
  if (i < 0) throw std::invalid_argument("coeff: d does not divide N");
  return D.c[i];
}

CuspDivisor operator+(const CuspDivisor& a, const CuspDivisor& b) {
  if (a.N != b.N) throw std::invalid_argument("divisor sum: level mismatch");
  CuspDivisor o = a;
  for (size_t i = 0; i < o.c.size(); ++i) o.c[i] += b.c[i];
  return o;
}

CuspDivisor operator-(const CuspDivisor& a, const CuspDivisor& b) { return a + Int(-1) * b; }

CuspDivisor operator*(const Int& k, const CuspDivisor& a) {
  CuspDivisor o = a;
  for (auto& x : o.c) x *= k;
  return o;
}

CuspDivisor tensor_join(const CuspDivisor& v, const CuspDivisor& w) {
  if (std::gcd(v.N, w.N) != 1) throw std::invalid_argument("tensor: levels not coprime");
  u64 N = v.N * w.N;
  auto dv = divisors(v.N), dw = divisors(w.N), dn = divisors(N);
  CuspDivisor out{N, IVec(dn.size())};
  for (size_t i = 0; i < dv.size(); ++i)
    for (size_t j = 0; j < dw.size(); ++j) out.c[divisor_index(dn, dv[i] * dw[j])] = v.c[i] * w.c[j];
  return out;
}

std::vector<IVec> tensor_split(const CuspDivisor& v, u64 M) {
  if (v.N % M || std::gcd(M, v.N / M) != 1) throw std::invalid_argument("tensor_split: bad factor");
  u64 Q = v.N / M;
  auto dm = divisors(M), dq = divisors(Q), dn = divisors(v.N);
  std::vector<IVec> out(dm.size(), IVec(dq.size()));
  for (size_t i = 0; i < dm.size(); ++i)
    for (size_t j = 0; j < dq.size(); ++j) out[i][j] = v.c[divisor_index(dn, dm[i] * dq[j])];
  return out;
}

CuspDivisor tensor_local(const FactoredInteger& N, const std::vector<IVec>& parts) {
  auto dn = divisors(N);
  CuspDivisor out{N.value, IVec(dn.size())};
  for (size_t i = 0; i < dn.size(); ++i) {
    Int c = 1;
    for (int k = 0; k < N.t() && c != 0; ++k) c *= parts[k][val(N.factors[k].p, dn[i])];
    out.c[i] = c;
  }
  return out;
}

CuspDivisor apply(DivOp op, u64 p, const CuspDivisor& D) {
  if (!is_prime(p)) throw std::invalid_argument("apply: p must be prime");
  u64 N = D.N;
  switch (op) {
    case DivOp::AlphaPush:
    case DivOp::BetaPush: {
      if (N % p) throw std::invalid_argument("apply: pushforward needs p | level");
      u64 Nt = N / p;
      return transport(D, p, Nt, val(p, Nt), op == DivOp::AlphaPush ? push_alpha : push_beta);
    }
    case DivOp::AlphaPull:
      return transport(D, p, N * p, val(p, N), pull_alpha);
    case DivOp::BetaPull:
      return transport(D, p, N * p, val(p, N), pull_beta);
    case DivOp::AtkinLehner: {
      int r = val(p, N);
      if (r == 0) throw std::invalid_argument("apply: w_p needs p | N");
      return transport(D, p, N, r, [](u64, int rr, int f) { return Image{{rr - f, 1}}; });
    }
    case DivOp::Hecke:
      return transport(D, p, N, val(p, N), hecke);
    case DivOp::Pi12Pull:
      return apply(DivOp::AlphaPull, p, apply(DivOp::BetaPull, p, D));
    case DivOp::Gamma: {
      CuspDivisor E = apply(DivOp::Pi12Pull, p, D);
      for (auto& x : E.c) {
        if (x % p != 0) throw std::logic_error("apply: pi12 image not divisible by p");
        x /= p;
      }
      return E;
    }
  }
  throw std::invalid_argument("apply: unknown op");
}

CuspDivisor pi1_pull(const CuspDivisor& D, u64 A) {
  if (A % D.N) throw std::invalid_argument("pi1_pull: target must be a multiple");
  CuspDivisor E = D;
  for (u64 p : prime_divisors(A / D.N))
    while (val(p, E.N) < val(p, A)) E = apply(DivOp::AlphaPull, p, E);
  return E;
}

CuspDivisor pi2_pull(const CuspDivisor& D, u64 A) {
  if (A % D.N) throw std::invalid_argument("pi2_pull: target must be a multiple");
  CuspDivisor E = D;
  for (u64 p : prime_divisors(A / D.N))
    while (val(p, E.N) < val(p, A)) E = apply(DivOp::BetaPull, p, E);
  return E;
}

std::string divisor_text(const CuspDivisor& D) {
  auto ds = divisors(D.N);
  std::string s;
  for (size_t i = 0; i < ds.size(); ++i) {
    if (D.c[i] == 0) continue;
    if (!s.empty()) s += ",";
    s += D.c[i].str() + "*(" + std::to_string(ds[i]) + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace cuspgrp
