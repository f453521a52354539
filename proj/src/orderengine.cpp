#include "cuspgrp/orderengine.hpp"

#include <numeric>
#include <stdexcept>

namespace cuspgrp {

OrderProfile profile_from_V(u64 N, const IVec& V) {
  OrderProfile P;
  P.N = N;
  P.V = V;
  P.gcd = 0;
  for (auto& x : V) P.gcd = gcd_big(P.gcd, x);
  if (P.gcd == 0) {
    P.degenerate = true;
    P.order = 1;
    return P;
  }
  auto F = factor(N);
  auto ds = divisors(F);
  for (auto& x : V) P.Vbar.push_back(x / P.gcd);
  Int sum = 0;
  for (auto& x : P.Vbar) sum += x;
  for (auto& pr : F.factors) {
    Int s = 0;
    for (size_t i = 0; i < ds.size(); ++i)
      if (val(pr.p, ds[i]) & 1) s += P.Vbar[i];
    P.pw[pr.p] = s;
    if (s % 2 != 0) P.h = 2;
  }
  Rat q(Int(kappa(F)) * P.h, 24 * P.gcd);
  P.order = numerator(q);
  return P;
}

OrderProfile profile(const CuspDivisor& C) {
  OrderProfile P = profile_from_V(C.N, mat_vec(*upsilon(C.N), C.c));
  if (!P.degenerate && degree(C) != 0) P.order = 0;  // infinite order
  return P;
}

IVec eta_certificate(const CuspDivisor& C, const Int& n) {
  if (degree(C) != 0) throw std::invalid_argument("eta_certificate: degree must be 0");
  auto F = factor(C.N);
  Int k = kappa(F);
  IVec V = mat_vec(*upsilon(C.N), C.c);
  IVec r;
  for (auto& x : V) {
    Int num = n * 24 * x;
    if (num % k != 0) throw std::logic_error("eta_certificate: non-integral exponent");
    r.push_back(num / k);
  }
  EtaVector e{C.N, {}};
  for (auto& x : r) e.r.push_back(Rat(x));
  if (!ligozat_check(e).pass()) throw std::logic_error("eta_certificate: Ligozat check failed");
  auto div = eta_divisor(e);
  for (size_t i = 0; i < div.size(); ++i)
    if (div[i] != Rat(n * C.c[i])) throw std::logic_error("eta_certificate: divisor mismatch");
  return r;
}

bool certificate_minimal(const OrderProfile& P) {
  if (P.degenerate || P.order <= 1) return true;
  auto F = factor(P.N);
  Int k = kappa(F);
  for (u64 l : prime_divisors(u64(P.order))) {
    Int m = P.order / l;
    EtaVector e{P.N, {}};
    bool integral = true;
    for (auto& x : P.V) {
      Int num = m * 24 * x;
      if (num % k != 0) {
        integral = false;
        break;
      }
      e.r.push_back(Rat(num / k));
    }
    if (integral && ligozat_check(e).pass()) return false;
  }
  return true;
}

OrderProfile tensor_profile(const CuspDivisor& C1, const CuspDivisor& C2) {
  if (std::gcd(C1.N, C2.N) != 1) throw std::invalid_argument("tensor_profile: levels not coprime");
  if (degree(C1) != 0) throw std::invalid_argument("tensor_profile: C1 must have degree 0");
  OrderProfile P1 = profile(C1), P2 = profile(C2);
  u64 N = C1.N * C2.N;
  OrderProfile P;
  P.N = N;
  P.V = tensor_join(CuspDivisor{C1.N, P1.V}, CuspDivisor{C2.N, P2.V}).c;
  P.gcd = P1.gcd * P2.gcd;
  if (P.gcd == 0) {
    P.degenerate = true;
    return P;
  }
  P.Vbar = tensor_join(CuspDivisor{C1.N, P1.Vbar}, CuspDivisor{C2.N, P2.Vbar}).c;
  Int s2 = 0;
  for (auto& x : P2.Vbar) s2 += x;
  for (auto& [p, w] : P1.pw) P.pw[p] = w * s2;
  for (auto& [p, w] : P2.pw) P.pw[p] = 0;
  for (auto& [p, w] : P.pw)
    if (w % 2 != 0) P.h = 2;
  P.order = numerator(Rat(Int(kappa(factor(N))) * P.h, 24 * P.gcd));
  return P;
}

Int frak_g(u64 N) {
  if (N == 1) return 0;
  auto F = factor(N);
  if (is_squarefree(N)) {
    Int g = Int(N) + ((F.t() - 1) % 2 == 0 ? 1 : -1);
    for (auto& pr : F.factors) g = gcd_big(g, Int(pr.p * pr.p - 1));
    return g;
  }
  int sq = 0;
  u64 p = 0;
  for (auto& pr : F.factors) {
    if (pr.r == 2) {
      ++sq;
      p = pr.p;
    } else if (pr.r > 2) {
      return 1;
    }
  }
  if (sq == 1) return gcd_big(Int(p), frak_g(N / (p * p)));
  return 1;
}

namespace {

bool same_val2(u64 p, u64 q) {
  return val(2, p - 1) == val(2, q - 1) && val(2, p + 1) == val(2, q + 1);
}

}  // namespace

int frak_h(u64 N) {
  auto F = factor(N);
  if (F.t() == 1 && F.factors[0].r == 1) return 2;
  if (F.t() == 1 && F.factors[0].p == 2 && F.factors[0].r % 2 == 1) return 2;
  if (F.t() == 2 && N % 2 == 1 && F.factors[0].r == 1 && F.factors[1].r == 1 &&
      same_val2(F.factors[0].p, F.factors[1].p))
    return 2;
  if (N % 4 == 0 && N / 4 > 2 && is_prime(N / 4) && (N / 4) % 4 == 1) return 2;
  return 1;
}

ClosedOrder closed_order_CN(u64 N) {
  if (N < 2) throw std::invalid_argument("closed_order_CN: N must exceed 1");
  ClosedOrder c{frak_g(N), frak_h(N), 0};
  c.order = numerator(Rat(Int(kappa(factor(N))) * c.h, 24 * c.g));
  return c;
}

ClosedOrder closed_order_Cd(u64 N, u64 d) {
  if (d <= 1 || N % d) throw std::invalid_argument("closed_order_Cd: need 1 < d | N");
  if (d == N) return closed_order_CN(N);
  ClosedOrder c{1, 1, 0};
  u64 z = std::gcd(d, N / d);
  if (z == 1) {
    c.g = frak_g(d);
  } else if (is_prime(z) && val(z, d) == 1) {
    c.g = gcd_big(Int(z), frak_g(d / z));
  } else {
    c.g = Int(z / rad(factor(z)));
  }
  auto F = factor(N);
  int r2 = val(2, N);
  u64 odd = N >> r2;
  if (odd == 1 && r2 >= 2) {
    if (d == 2) c.h = 2;
    int f = val(2, d);
    if (f % 2 == 0) c.h = 2;
  }
  if (r2 >= 2 && is_prime(odd) && odd % 4 == 1 && d == 2 * odd) c.h = 2;
  if (r2 >= 1 && d == odd) {
    auto Fd = factor(d);
    if (Fd.t() == 1 && Fd.factors[0].r == 1) c.h = 2;
    if (Fd.t() == 2 && Fd.factors[0].r == 1 && Fd.factors[1].r == 1 &&
        same_val2(Fd.factors[0].p, Fd.factors[1].p))
      c.h = 2;
  }
  c.order = numerator(Rat(Int(kappa(F)) * c.h, 24 * c.g));
  return c;
}

Int closed_table_nN(u64 N) {
  auto F = factor(N);
  Int k = kappa(F);
  if (F.t() == 1) {
    u64 p = F.factors[0].p;
    int r = F.factors[0].r;
    if (r == 1) return Int(p - 1) / std::gcd<u64>(12, p - 1);
    if (r == 2) return Int(p * p - 1) / std::gcd<u64>(24, p * p - 1);
    if (p == 2 && r % 2 == 1) return Int(ipow(2, r - 3));
    return k / 24;
  }
  if (is_squarefree(N)) {
    if (F.t() == 2) {
      u64 p = F.factors[0].p, q = F.factors[1].p;
      if (p == 2) return Int(q * q - 1) / (8 * std::gcd<u64>(3, q + 1));
      return Int(p * p - 1) * (q * q - 1) / (12 * std::gcd(p - 1, q - 1) * std::gcd(p + 1, q + 1));
    }
    Int num = 1;
    for (auto& pr : F.factors) num *= pr.p * pr.p - 1;
    return num / (24 * frak_g(N));
  }
  int sq = 0, big = 0;
  u64 p = 0;
  for (auto& pr : F.factors) {
    if (pr.r == 2) {
      ++sq;
      p = pr.p;
    }
    if (pr.r > 2) ++big;
  }
  if (sq == 1 && big == 0) {
    u64 M = N / (p * p);
    if (p != 2 && frak_g(M) % p == 0) return k / (24 * p);
    if (p == 2 && !(is_prime(M) && M % 4 == 1)) return k / 48;
    return k / 24;
  }
  return k / 24;
}

bool genus_zero(u64 N) {
  for (u64 g : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25})
    if (N == g) return true;
  return false;
}

}  // namespace cuspgrp
