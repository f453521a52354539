#include "cuspgrp/cusps.hpp"

#include <numeric>
#include <stdexcept>

namespace cuspgrp {

namespace {

i64 igcd(i64 a, i64 b) { return std::gcd(a, b); }

// (a, b) -> primitive pair
std::pair<i64, i64> primitive(i64 a, i64 b) {
  i64 g = igcd(a, b);
  return {a / g, b / g};
}

Cusp image_of_pair(i64 a, i64 b, u64 N) {
  auto [x, y] = primitive(a, b);
  return normalize(x, y, N);
}

}  // namespace

u64 canonical_residue(i64 x0, u64 d, u64 N) {
  u64 z = std::gcd(d, N / d);
  u64 x = u64(mod_floor(x0, i64(z)));
  if (x == 0) x = z;
  while (std::gcd(x, d) != 1) x += z;
  return x;
}

Cusp normalize(i64 a, i64 b, u64 N) {
  if (igcd(a, b) != 1) throw std::invalid_argument("normalize: gcd(a,b) != 1");
  u64 d = std::gcd(u64(b < 0 ? -b : b), N);
  i64 bp = b / i64(d);
  i64 Np = i64(N / d);
  i64 x;
  if (igcd(bp, i64(N)) == 1) {
    x = bp * a;
  } else {
    // shift b' by multiples of N/d until it is prime to a*d
    i64 ad = a * i64(d);
    i64 k = 0;
    while (igcd(bp + k * Np, ad) != 1) ++k;
    x = (bp + k * Np) * a;
  }
  u64 z = std::gcd(d, N / d);
  return Cusp{canonical_residue(mod_floor(x, i64(z)), d, N), d};
}

std::vector<Cusp> enumerate_cusps(u64 N) {
  std::vector<Cusp> out;
  for (u64 d : divisors(N)) {
    u64 z = std::gcd(d, N / d);
    for (u64 x = 1; x <= z; ++x) {
      if (std::gcd(x, z) != 1) continue;
      out.push_back(Cusp{canonical_residue(i64(x), d, N), d});
    }
  }
  return out;
}

u64 width(const Cusp& c, u64 N) { return N / (c.d * std::gcd(c.d, N / c.d)); }

std::string cusp_text(const Cusp& c, u64 N) {
  return std::to_string(c.x) + "/" + std::to_string(c.d) + "@" + std::to_string(N);
}

Cusp act(CuspOp op, u64 param, const Cusp& c, u64 N) {
  i64 x = i64(c.x), d = i64(c.d);
  switch (op) {
    case CuspOp::AlphaPush:
      if (!is_prime(param)) throw std::invalid_argument("act: p must be prime");
      return image_of_pair(x, d, N);
    case CuspOp::BetaPush:
      if (!is_prime(param)) throw std::invalid_argument("act: p must be prime");
      return image_of_pair(i64(param) * x, d, N);
    case CuspOp::AtkinLehner: {
      u64 p = param;
      if (!is_prime(p) || N % p) throw std::invalid_argument("act: w_p needs p | N");
      u64 Q = ipow(p, val(p, N));
      u64 M = N / Q;
      // W = [[Q, m2], [M Q, m4 Q]] with m4 Q - m2 M = 1
      auto [g, s, tt] = ext_gcd(i64(Q), i64(M));
      (void)g;
      i64 m4 = s, m2 = -tt;
      i64 a = i64(Q) * x + m2 * d;
      i64 b = i64(M) * i64(Q) * x + m4 * i64(Q) * d;
      return image_of_pair(a, b, N);
    }
    case CuspOp::Galois: {
      if (std::gcd(param, N) != 1) throw std::invalid_argument("act: gcd(k,N) != 1");
      u64 ks = inverse_mod(i64(param % N), N);
      if (N == 1) ks = 1;
      return Cusp{canonical_residue(i64((ks % std::max<u64>(N, 1)) * c.x % std::max<u64>(N, 1)), c.d, N),
                  c.d};
    }
  }
  throw std::invalid_argument("act: unknown op");
}

u64 ramification_index(CuspOp op, u64 p, const Cusp& c, u64 N) {
  Cusp im = act(op, p, c, N);
  u64 h = width(c, N * p), hp = width(im, N);
  // alpha: tau -> tau, width ratio.  beta: tau -> p tau, g^2 h / (p hp) with g = gcd(p, d)
  u64 g = c.d % p ? 1 : p;
  u64 num = op == CuspOp::BetaPush ? g * g * h : h, den = op == CuspOp::BetaPush ? p * hp : hp;
  if (num % den) throw std::logic_error("ramification_index: non-integral");
  return num / den;
}

Cusp cusp_join(const Cusp& a, u64 M, const Cusp& b, u64 Q) {
  if (std::gcd(M, Q) != 1) throw std::invalid_argument("cusp_join: levels not coprime");
  // x = a.x mod a.d, x = b.x mod b.d
  u64 m1 = a.d, m2 = b.d;
  u64 inv = inverse_mod(i64(m1 % std::max<u64>(m2, 1)), m2);
  i64 diff = mod_floor(i64(b.x) - i64(a.x), i64(m2));
  i64 x = i64(a.x) + i64(m1) * mod_floor(diff * i64(inv), i64(m2));
  return Cusp{canonical_residue(x, a.d * b.d, M * Q), a.d * b.d};
}

}  // namespace cuspgrp
