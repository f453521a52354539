#include "cuspgrp/generators.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>
#include <stdexcept>

namespace cuspgrp {

std::vector<int> OrderedLevel::exps() const {
  std::vector<int> r;
  for (auto& f : base.factors) r.push_back(f.r);
  return r;
}

std::vector<u64> OrderedLevel::primes() const {
  std::vector<u64> p;
  for (auto& f : base.factors) p.push_back(f.p);
  return p;
}

OrderedLevel make_ordered(u64 N, u64 ell, const std::vector<u64>& primes) {
  auto F = factor(N);
  OrderedLevel L;
  L.ell = ell;
  L.base.value = N;
  for (u64 p : primes) {
    auto it = std::find_if(F.factors.begin(), F.factors.end(), [p](auto& f) { return f.p == p; });
    if (it == F.factors.end()) throw std::invalid_argument("make_ordered: prime does not divide N");
    L.base.factors.push_back(*it);
  }
  if (L.base.factors.size() != F.factors.size())
    throw std::invalid_argument("make_ordered: not a permutation");
  L.u = L.base.u();
  L.s = (ell == 2) ? L.u : 0;
  for (auto& f : L.base.factors) L.gammas.push_back(Int(ipow(f.p, f.r - 1) * (f.p + 1)));
  return L;
}

bool satisfies_assumption(const OrderedLevel& L) {
  int t = L.t();
  for (int i = 1; i <= t; ++i)
    for (int j = i + 1; j <= t; ++j) {
      if (val_big(L.ell, L.gammas[i - 1]) < val_big(L.ell, L.gammas[j - 1])) return false;
      if (i != L.s && j != L.s && val(L.ell, L.p(i) - 1) > val(L.ell, L.p(j) - 1)) return false;
    }
  return true;
}

OrderedLevel order_primes(u64 N, u64 ell) {
  if (!is_prime(ell)) throw std::invalid_argument("order_primes: ell must be prime");
  auto F = factor(N);
  auto vg = [&](const PrimePower& f) { return val(ell, ipow(f.p, f.r - 1) * (f.p + 1)); };
  auto key = [&](const PrimePower& f) { return std::make_tuple(-vg(f), val(ell, f.p - 1), f.p); };
  std::vector<PrimePower> rest;
  std::optional<PrimePower> two;
  for (auto& f : F.factors) {
    if (ell == 2 && f.p == 2)
      two = f;
    else
      rest.push_back(f);
  }
  std::sort(rest.begin(), rest.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  if (two) {
    // first slot whose gamma valuation does not exceed that of 2
    auto pos = std::find_if(rest.begin(), rest.end(), [&](auto& f) { return vg(f) <= vg(*two); });
    rest.insert(pos, *two);
  }
  std::vector<u64> ps;
  for (auto& f : rest) ps.push_back(f.p);
  OrderedLevel L = make_ordered(N, ell, ps);
  if (satisfies_assumption(L)) return L;
  std::sort(ps.begin(), ps.end());
  do {
    L = make_ordered(N, ell, ps);
    if (satisfies_assumption(L)) return L;
  } while (std::next_permutation(ps.begin(), ps.end()));
  throw std::logic_error("order_primes: no ordering satisfies the assumption");
}

std::vector<int> prec_r(int r) {
  std::vector<int> v{1, 0};
  if (r >= 2) v.push_back(2);
  for (int f = r; f >= 3; --f) v.push_back(f);
  return v;
}

int iota_r(int r, int f) {
  if (f == 0) return 1;
  if (f == 1) return 0;
  if (f == 2) return r;
  if (f == r) return r - 1;
  if ((r - f) % 2 == 0) return r - 1 - (r - f) / 2;
  return 1 + (r + 1 - f) / 2;
}

std::vector<int> tri_r(int r) {
  std::vector<int> v;
  for (int f : prec_r(r)) v.push_back(iota_r(r, f));
  return v;
}

namespace {

int position(const std::vector<int>& order, int f) {
  return int(std::find(order.begin(), order.end(), f) - order.begin());
}

// twisted colexicographic comparison; coordinate u is least significant
template <class Rank>
bool twisted_less(const OrderedLevel& L, const Tuple& I, const Tuple& J, Rank rank) {
  int t = L.t();
  for (int k = t; k >= 1; --k) {
    if (k == L.u || I[k - 1] == J[k - 1]) continue;
    return rank(k, I[k - 1]) < rank(k, J[k - 1]);
  }
  if (L.u >= 1 && I[L.u - 1] != J[L.u - 1]) return rank(L.u, I[L.u - 1]) < rank(L.u, J[L.u - 1]);
  return false;
}

Tuple iota_delta(const OrderedLevel& L, const Tuple& I) {
  int t = L.t(), u = L.u;
  auto P = index_profile(I, L.exps(), u, L.s);
  Tuple b(t);
  for (int i = 0; i < t; ++i) b[i] = 1 - I[i];
  if (P.E) {
    b[std::max(P.m, u) - 1] = 1;
  } else if (P.H1_u) {
    b[P.m - 1] = 1;
    b[u - 1] = 0;
  }
  return b;
}

bool tri_less_delta(const OrderedLevel& L, const Tuple& I, const Tuple& J) {
  return twisted_less(L, I, J, [](int, int v) { return v; });
}

}  // namespace

Tuple iota(const OrderedLevel& L, const Tuple& I) {
  if (in_delta(I)) return iota_delta(L, I);
  Tuple b(I.size());
  for (size_t i = 0; i < I.size(); ++i) b[i] = iota_r(L.r(int(i) + 1), I[i]);
  return b;
}

bool prec_less(const OrderedLevel& L, const Tuple& I, const Tuple& J) {
  bool dI = in_delta(I), dJ = in_delta(J);
  if (dI != dJ) return dI;
  if (dI) return tri_less_delta(L, iota_delta(L, I), iota_delta(L, J));
  return twisted_less(L, I, J, [&](int k, int v) { return position(prec_r(L.r(k)), v); });
}

bool tri_less(const OrderedLevel& L, const Tuple& I, const Tuple& J) {
  bool dI = in_delta(I), dJ = in_delta(J);
  if (dI != dJ) return dI;
  if (dI) return tri_less_delta(L, I, J);
  return twisted_less(L, I, J, [&](int k, int v) { return position(tri_r(L.r(k)), v); });
}

DivisorOrdering divisor_orderings(const OrderedLevel& L) {
  DivisorOrdering D;
  D.prec = omega(L.exps());
  std::sort(D.prec.begin(), D.prec.end(), [&](auto& a, auto& b) { return prec_less(L, a, b); });
  for (auto& I : D.prec) {
    D.prec_list.push_back(divisor_of(L.base, I));
    D.tri_list.push_back(divisor_of(L.base, iota(L, I)));
    if (in_delta(I)) ++D.frak_m;
  }
  return D;
}

namespace {

IVec local_op(DivOp op, u64 p, const IVec& v) {
  int r = int(v.size()) - 1;
  return apply(op, p, CuspDivisor{ipow(p, r), v}).c;
}

IVec unit(int r, int k) {
  IVec v(r + 1);
  v[k] = 1;
  return v;
}

IVec A_vec(u64 p, int r, int f) {
  if (f < 0 || f > r) throw std::invalid_argument("A: f out of range");
  if (f == 0) return unit(r, 0);
  if (r == 1) return IVec{Int(p), 1};
  if (f == r) {
    IVec v = unit(r, 0);
    v[r] = -1;
    return v;
  }
  if (f == 1) {
    IVec v = A_vec(p, 1, 1);
    for (int k = 1; k < r; ++k) v = local_op(DivOp::AlphaPull, p, v);
    return v;
  }
  if (f == 2) {
    if (r % 2 == 1) return local_op(DivOp::BetaPull, p, A_vec(p, r - 1, 2));
    IVec v = local_op(DivOp::Gamma, p, A_vec(p, r - 2, 2));
    IVec w = A_vec(p, r, r);
    Int c = ipow_big(Int(p), unsigned(r - 2));
    for (int k = 0; k <= r; ++k) v[k] += c * w[k];
    return v;
  }
  if ((r - f) % 2 == 0) {
    int j = (r - f) / 2;
    IVec v = A_vec(p, r - j, r - j);
    for (int k = 0; k < j; ++k) v = local_op(DivOp::AlphaPull, p, v);
    return v;
  }
  int j = (r + 1 - f) / 2;
  IVec v = A_vec(p, r - j, r - j);
  for (int k = 0; k < j; ++k) v = local_op(DivOp::BetaPull, p, v);
  return v;
}

IVec E_vec(int r, int k) {
  int m = std::min(k, r - k);
  IVec v(r + 1);
  if (k % 2 == 1) {
    v[1] = Int(1) << (m - 1);
  } else {
    v[0] = 3 * (Int(1) << (m - 2));
    v[1] = -(Int(1) << (m - 2));
  }
  v[k] = -1;
  return v;
}

IVec B2_vec(int r, int f) {
  if (r < 5 || f < 3 || f > r) throw std::invalid_argument("B2: need r >= 5 and 3 <= f <= r");
  if (f <= r - 2) return (r - f) % 2 == 0 ? E_vec(r, (r + f - 2) / 2) : E_vec(r, (r - f + 3) / 2);
  IVec v(r + 1);
  if (f == r - 1 && r % 2 == 0) {
    v[0] = 1;
    v[1] = -1;
  } else if (f == r - 1) {
    v[0] = -1;
    v[1] = -1;
    v[r] = 2;
  } else {
    v[0] = 1;
    v[r] = -1;
  }
  return v;
}

}  // namespace

IVec base_vector(BaseKind kind, u64 p, int r, int f) {
  switch (kind) {
    case BaseKind::A:
      return A_vec(p, r, f);
    case BaseKind::B: {
      if (f < 1 || f > r) throw std::invalid_argument("B: f out of range");
      if (f != 1) return A_vec(p, r, f);
      IVec v = A_vec(p, r, 1);
      for (auto& x : v) x = -x;
      v[0] += Int(ipow(p, r - 1)) * (p + 1);
      return v;
    }
    case BaseKind::B2:
      if (p != 2) throw std::invalid_argument("B2: p must be 2");
      return B2_vec(r, f);
  }
  throw std::invalid_argument("base_vector: unknown kind");
}

BaseImage base_vector_image(BaseKind kind, u64 p, int r, int f) {
  IVec v = base_vector(kind, p, r, f);
  IVec w = mat_vec(upsilon_local(p, r), v);
  Int g;
  if (kind == BaseKind::B2) {
    g = 0;
    for (auto& x : w) g = gcd_big(g, x);
  } else if (kind == BaseKind::B && f == 1) {
    g = Int(ipow(p, r - 1)) * (p + 1);
  } else if (f == 0) {
    g = 1;
  } else if (f == 1) {
    g = Int(ipow(p, r - 1)) * (p * p - 1);
  } else if (f == 2) {
    g = Int(ipow(p, r - 1));
  } else {
    g = Int(ipow(p, (r + 1 - f) / 2));
  }
  for (auto& x : w) {
    if (x % g != 0) throw std::logic_error("base_vector_image: table scalar does not divide");
    x /= g;
  }
  return BaseImage{g, w};
}

Int calG_p(u64 p, int r, int f) {
  if (f == 0) return Int(ipow(p, r - 1)) * (p * p - 1);
  if (f == 1) return 1;
  if (f == 2) return Int(p * p - 1);
  int j = (r + 1 - f) / 2;
  return Int(ipow(p, r - 1 - j)) * (p * p - 1);
}

Int calG_pair(u64 pi, int ri, u64 pj, int rj) {
  Int gi = Int(ipow(pi, ri - 1)) * (pi + 1), gj = Int(ipow(pj, rj - 1)) * (pj + 1);
  return Int(pi - 1) * (pj - 1) * gcd_big(gi, gj) / std::gcd(pi - 1, pj - 1);
}

namespace {

FactoredInteger sub_level(const OrderedLevel& L, std::initializer_list<int> idx) {
  FactoredInteger F;
  for (int i : idx) {
    F.factors.push_back(L.base.factors[i - 1]);
    F.value *= ipow(L.p(i), L.r(i));
  }
  return F;
}

CuspDivisor add_term(const CuspDivisor& acc, const Int& c, const FactoredInteger& F,
                     const std::vector<IVec>& parts) {
  CuspDivisor T = tensor_local(F, parts);
  if (acc.c.empty()) return c * T;
  return acc + c * T;
}

}  // namespace

CuspDivisor D_embedded(const OrderedLevel& L, int i, int j, std::vector<IVec> parts) {
  if (i >= j) throw std::invalid_argument("D: need i < j");
  const Int &gi = L.gammas[i - 1], &gj = L.gammas[j - 1];
  Int G = gcd_big(gi, gj);
  auto P1 = parts, P2 = parts;
  P1[i - 1] = base_vector(BaseKind::B, L.p(i), L.r(i), 1);
  P1[j - 1] = base_vector(BaseKind::A, L.p(j), L.r(j), 0);
  P2[i - 1] = base_vector(BaseKind::A, L.p(i), L.r(i), 0);
  P2[j - 1] = base_vector(BaseKind::B, L.p(j), L.r(j), 1);
  CuspDivisor out = add_term(CuspDivisor{}, gj / G, L.base, P1);
  return add_term(out, -(gi / G), L.base, P2);
}

CuspDivisor D_vector(const OrderedLevel& L, int i, int j) {
  if (i >= j) throw std::invalid_argument("D: need i < j");
  const Int &gi = L.gammas[i - 1], &gj = L.gammas[j - 1];
  Int G = gcd_big(gi, gj);
  auto F = sub_level(L, {i, j});
  std::vector<IVec> P1{base_vector(BaseKind::B, L.p(i), L.r(i), 1),
                       base_vector(BaseKind::A, L.p(j), L.r(j), 0)};
  std::vector<IVec> P2{base_vector(BaseKind::A, L.p(i), L.r(i), 0),
                       base_vector(BaseKind::B, L.p(j), L.r(j), 1)};
  CuspDivisor out = add_term(CuspDivisor{}, gj / G, F, P1);
  out = add_term(out, -(gi / G), F, P2);
  return out;
}

namespace {

std::vector<IVec> A_parts(const OrderedLevel& L, const Tuple& I) {
  std::vector<IVec> parts;
  for (int i = 1; i <= L.t(); ++i) parts.push_back(base_vector(BaseKind::A, L.p(i), L.r(i), I[i - 1]));
  return parts;
}

Tuple tuple_checked(const OrderedLevel& L, u64 d) {
  u64 N = L.base.value;
  if (d <= 1 || N % d) throw std::invalid_argument("construct: need 1 < d | N");
  return tuple_of(L.base, d);
}

}  // namespace

CuspDivisor construct_Z(const OrderedLevel& L, u64 d, ZVariant v) {
  Tuple I = tuple_checked(L, d);
  auto P = index_profile(I, L.exps(), L.u, L.s);
  auto parts = A_parts(L, I);
  if (P.delta) {
    parts[P.m - 1] = base_vector(BaseKind::B, L.p(P.m), L.r(P.m), 1);
  } else if (v == ZVariant::Z && P.T_u) {
    parts[L.u - 1] = base_vector(BaseKind::B2, 2, L.r(L.u), I[L.u - 1]);
  }
  return tensor_local(L.base, parts);
}

YVariant active_variant(const OrderedLevel& L) {
  if (L.u == 0) return YVariant::Y0;
  if (L.s == 0) return YVariant::Y1;
  return YVariant::Y2;
}

CuspDivisor construct_Y(const OrderedLevel& L, u64 d, YVariant v) {
  Tuple I = tuple_checked(L, d);
  if (!in_delta(I)) throw std::invalid_argument("construct_Y: d must be squarefree");
  auto P = index_profile(I, L.exps(), L.u, L.s);
  int t = L.t(), m = P.m, n = P.n, k = P.k;
  auto parts = A_parts(L, I);
  auto B1 = [&](int i) { return base_vector(BaseKind::B, L.p(i), L.r(i), 1); };

  if (P.E) {
    int x = (v == YVariant::Y0) ? m : std::max(m, L.u);
    parts[x - 1] = B1(x);
    return tensor_local(L.base, parts);
  }
  if (v == YVariant::Y2 && P.F_s) {
    int s = L.s, y = std::max(1, 3 - s);
    for (int i = 1; i <= t; ++i) parts[i - 1] = base_vector(BaseKind::A, L.p(i), L.r(i), 1);
    parts[s - 1] = B1(s);
    return D_embedded(L, y, n, parts);
  }
  if (v == YVariant::Y2 && P.G_s) {
    for (int i = 3; i <= t; ++i) parts[i - 1] = base_vector(BaseKind::A, L.p(i), L.r(i), 1);
    parts[0] = B1(1);
    parts[1] = base_vector(BaseKind::A, L.p(2), L.r(2), 0);
    return tensor_local(L.base, parts);
  }
  if (v != YVariant::Y0 && P.H_u) return D_embedded(L, m, k, parts);
  return D_embedded(L, m, n, parts);
}

Int calG_N(const OrderedLevel& L, const Tuple& I) {
  Int g = 1;
  int m = m_of(I);
  bool delta = in_delta(I);
  for (int i = 1; i <= L.t(); ++i) {
    if (delta && i == m)
      g *= L.p(i) - 1;
    else
      g *= calG_p(L.p(i), L.r(i), I[i - 1]);
  }
  return g;
}

int calH_N(const OrderedLevel& L, const Tuple& I) {
  int t = L.t(), u = L.u;
  if (I == tuple_A(t, 1)) return 2;
  if (u < 1) return 1;
  if (t >= 2 && I == tuple_E(t, u)) return 2;
  bool others = true;
  for (int i = 1; i <= t; ++i)
    if (i != u && I[i - 1] != 1) others = false;
  if (!others) return 1;
  int ru = L.r(u), fu = I[u - 1];
  if (ru >= 3 && ru <= 4 && fu == 3) return 2;
  if (ru >= 5 && fu == ru + 1 - int(std::gcd(2, ru))) return 2;
  return 1;
}

Int scrG_N(const OrderedLevel& L, const Tuple& I) {
  auto P = index_profile(I, L.exps(), L.u, L.s);
  int t = L.t();
  auto prod_except = [&](int a, int b) {
    Int g = 1;
    for (int i = 1; i <= t; ++i)
      if (i != a && i != b) g *= calG_p(L.p(i), L.r(i), I[i - 1]);
    return g;
  };
  if (P.E) {
    int x = std::max(P.m, L.u);
    return prod_except(x, x) * (L.p(x) - 1);
  }
  if (P.F_s) {
    int y = std::max(1, 3 - L.s);
    return calG_pair(L.p(y), L.r(y), L.p(P.n), L.r(P.n));
  }
  if (P.G_s) return calG_p(L.p(2), L.r(2), 0);
  if (P.H_u) return prod_except(P.m, P.k) * calG_pair(L.p(P.m), L.r(P.m), L.p(P.k), L.r(P.k));
  return prod_except(P.m, P.n) * calG_pair(L.p(P.m), L.r(P.m), L.p(P.n), L.r(P.n));
}

int scrH_N(const OrderedLevel& L, const Tuple& I) {
  auto P = index_profile(I, L.exps(), L.u, L.s);
  bool in = P.F1_u || P.G1_u || P.is_A1;
  bool out = P.F_s || P.G_s;
  return (in && !out) ? 2 : 1;
}

Int predicted_order_Z(const OrderedLevel& L, u64 d) {
  Tuple I = tuple_checked(L, d);
  return numerator(Rat(calG_N(L, I) * calH_N(L, I), 24));
}

Int predicted_order_Y(const OrderedLevel& L, u64 d) {
  Tuple I = tuple_checked(L, d);
  if (!in_delta(I)) throw std::invalid_argument("predicted_order_Y: d must be squarefree");
  return numerator(Rat(scrG_N(L, I) * scrH_N(L, I), 24));
}

std::string label_Z(const OrderedLevel& L, u64 d) {
  if (L.t() == 1) {
    u64 p = L.p(1);
    int r = L.r(1), f = val(p, d);
    if (p == 2 && r >= 5 && f >= 3) return "B2(" + std::to_string(r) + "," + std::to_string(f) + ")";
    return "B(" + std::to_string(p) + "," + std::to_string(r) + "," + std::to_string(f) + ")";
  }
  return "Z(" + std::to_string(d) + ")";
}

std::string label_Y(u64 d) { return "Y2(" + std::to_string(d) + ")"; }

}  // namespace cuspgrp
