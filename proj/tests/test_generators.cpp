#include "doctest.h"

#include "cuspgrp/generators.hpp"
#include "cuspgrp/structure.hpp"

#include <algorithm>
#include <numeric>

using namespace cuspgrp;

namespace {

IVec iv(std::vector<int> c) {
  IVec v;
  for (int x : c) v.push_back(x);
  return v;
}

IMat degree0_basis(u64 N) {
  IMat B;
  for (u64 d : divisors(N))
    if (d > 1) B.push_back(C_generator(N, d).c);
  return B;
}

IMat identity(size_t n) {
  IMat I(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

}  // namespace

TEST_CASE("prime orderings") {
  auto L = order_primes(15, 2);
  CHECK(L.primes() == std::vector<u64>{3, 5});
  for (u64 N : {7ull, 49ull, 1024ull, 3125ull}) {
    auto P = order_primes(N, 2);
    CHECK(P.t() == 1);
    CHECK(P.primes() == std::vector<u64>{factor(N).factors[0].p});
  }
  auto E = order_primes(2 * 2 * 2 * 3 * 5 * 7, 2);
  CHECK(E.s == E.u);
  CHECK(E.p(E.u) == 2);
  CHECK(order_primes(2 * 3 * 5 * 7, 3).s == 0);
  for (u64 N = 2; N <= 2000; ++N)
    for (u64 ell : {2ull, 3ull, 5ull, 7ull, 11ull}) {
      auto O = order_primes(N, ell);
      CHECK(satisfies_assumption(O));
      CHECK(O.base.value == N);
    }
}

TEST_CASE("prime-power ladders") {
  CHECK(prec_r(5) == std::vector<int>{1, 0, 2, 5, 4, 3});
  for (int r = 1; r <= 12; ++r) {
    auto p = prec_r(r), t = tri_r(r);
    REQUIRE(p.size() == size_t(r + 1));
    for (int i = 0; i <= r; ++i) CHECK(t[i] == iota_r(r, p[i]));
    auto s = t;
    std::sort(s.begin(), s.end());
    for (int i = 0; i <= r; ++i) CHECK(s[i] == i);
  }
}

TEST_CASE("divisor orderings") {
  for (u64 N : {35ull, 45ull, 77ull, 175ull}) {
    auto L = order_primes(N, 2);
    auto O = divisor_orderings(L);
    u64 p1 = L.p(1), p2 = L.p(2);
    REQUIRE(O.tri_list.size() >= 3);
    CHECK(O.tri_list[0] == p1);
    CHECK(O.tri_list[1] == p2);
    CHECK(O.tri_list[2] == p1 * p2);
    CHECK(O.prec_list[0] == p1 * p2);
    CHECK(O.frak_m == 3);
  }
  for (u64 N = 2; N <= 600; ++N) {
    auto L = order_primes(N, 2);
    auto O = divisor_orderings(L);
    auto a = O.prec_list, b = O.tri_list;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(a.size() == divisors(N).size() - 1);
    for (size_t i = 0; i < O.prec.size(); ++i) CHECK(divisor_of(L.base, iota(L, O.prec[i])) == O.tri_list[i]);
    for (size_t i = 0; i + 1 < O.prec.size(); ++i) {
      CHECK(prec_less(L, O.prec[i], O.prec[i + 1]));
      CHECK(tri_less(L, iota(L, O.prec[i]), iota(L, O.prec[i + 1])));
    }
  }
}

TEST_CASE("iota sends E(n) to F(n)") {
  for (u64 N : {30ull, 60ull, 210ull, 420ull, 2310ull, 1155ull})
    for (u64 ell : {2ull, 3ull}) {
      auto L = order_primes(N, ell);
      int t = L.t();
      for (int n : index_set_I(t, L.s)) CHECK(iota(L, tuple_E(t, n)) == tuple_F(t, n));
    }
}

TEST_CASE("base vectors") {
  for (u64 p : {2, 3, 5, 7}) {
    Int q = p;
    CHECK(base_vector(BaseKind::B, p, 2, 1) == IVec{q, -1, -1});
    for (int r = 1; r <= 7; ++r) {
      auto A = base_vector(BaseKind::A, p, r, 1);
      for (int k = 0; k <= r; ++k) CHECK(A[k] == Int(ipow(p, std::max(r - 2 * k, 0))));
    }
  }
  CHECK(base_vector(BaseKind::B2, 2, 6, 5) == iv({1, -1, 0, 0, 0, 0, 0}));
  CHECK_THROWS(base_vector(BaseKind::B, 3, 3, 0));
  CHECK_THROWS(base_vector(BaseKind::B2, 3, 6, 5));
}

TEST_CASE("base vector images") {
  for (u64 p : {2, 3, 5, 7})
    for (int r = 1; r <= 8; ++r) {
      if (ipow(p, r) > 100000) continue;
      auto b = base_vector_image(BaseKind::B, p, r, 1);
      CHECK(b.g == Int(ipow(p, r - 1)) * (p + 1));
      IVec e(r + 1, 0);
      e[0] = 1;
      e[1] = -1;
      CHECK(b.image == e);
      auto a = base_vector_image(BaseKind::A, p, r, 0);
      CHECK(a.g == 1);
      e[0] = p;
      CHECK(a.image == e);
      auto tri = tri_r(r);
      for (int f = 0; f <= r; ++f) {
        auto A = base_vector_image(BaseKind::A, p, r, f);
        CHECK(Int(kappa(factor(ipow(p, r)))) == A.g * calG_p(p, r, f));
        IVec w = mat_vec(upsilon_local(p, r), base_vector(BaseKind::A, p, r, f));
        for (int k = 0; k <= r; ++k) CHECK(w[k] == A.g * A.image[k]);
        int anchor = iota_r(r, f);
        CHECK(abs(A.image[anchor]) == 1);
        // entries later than the anchor in the ladder vanish
        auto pos = std::find(tri.begin(), tri.end(), anchor) - tri.begin();
        for (size_t k = pos + 1; k < tri.size(); ++k) CHECK(A.image[tri[k]] == 0);
      }
    }
}

TEST_CASE("D vectors") {
  auto L = order_primes(15, 2);
  CHECK(D_vector(L, 1, 2).c == iv({1, -3, 2, 0}));
  for (u64 N = 6; N <= 600; ++N) {
    auto F = factor(N);
    if (F.t() != 2) continue;
    auto O = order_primes(N, 2);
    auto D = D_vector(O, 1, 2);
    CHECK(degree(D) == 0);
    auto P = profile(D);
    Int gi = O.gammas[0], gj = O.gammas[1];
    Int G = gcd_big(gi, gj);
    CHECK(P.gcd == gi * gj * std::gcd(O.p(1) - 1, O.p(2) - 1) / G);
  }
  CHECK_THROWS(D_vector(L, 2, 1));
}

TEST_CASE("Z constructions") {
  for (u64 N : {15ull, 35ull, 77ull, 143ull}) {
    auto L = order_primes(N, 2);
    u64 q = L.p(2);
    IVec Aq{Int(q), 1};
    CHECK(construct_Z(L, N) == tensor_local(L.base, {iv({1, -1}), Aq}));
  }
  for (u64 M : {3ull, 5ull, 15ull}) {
    u64 N = 64 * M;
    auto L = order_primes(N, 2);
    u64 d = 32 * M;
    std::vector<IVec> parts;
    for (int i = 1; i <= L.t(); ++i)
      parts.push_back(L.p(i) == 2 ? base_vector(BaseKind::B2, 2, 6, 5) : base_vector(BaseKind::A, L.p(i), 1, 1));
    CHECK(construct_Z(L, d) == tensor_local(L.base, parts));
    CHECK_FALSE(construct_Z(L, d) == construct_Z(L, d, ZVariant::Z1));
  }
  for (u64 N = 2; N <= 200; ++N) {
    auto L = order_primes(N, 2);
    for (u64 d : divisors(N)) {
      if (d == 1) continue;
      CHECK(degree(construct_Z(L, d)) == 0);
      CHECK(profile(construct_Z(L, d, ZVariant::Z1)).gcd == profile(construct_Z(L, d)).gcd);
    }
  }
  CHECK_THROWS(construct_Z(order_primes(12, 2), 1));
}

TEST_CASE("Y constructions") {
  auto L = order_primes(15, 2);
  CHECK(construct_Y(L, 3) == D_vector(L, 1, 2));
  CHECK(construct_Y(L, 5).c == iv({1, 0, -1, 0}));
  CHECK_THROWS(construct_Y(order_primes(12, 2), 4));
  // G_s shape with s = 1
  for (u64 N : {2ull * 3 * 5, 2ull * 5 * 7, 2ull * 3 * 7 * 11}) {
    auto E = order_primes(N, 2);
    if (E.s != 1) continue;
    int t = E.t();
    for (u64 d : divisors(N)) {
      if (d == 1 || !is_squarefree(d)) continue;
      Tuple I = tuple_of(E.base, d);
      auto P = index_profile(I, E.exps(), E.u, E.s);
      if (!P.G_s) continue;
      std::vector<IVec> parts{base_vector(BaseKind::B, E.p(1), 1, 1), base_vector(BaseKind::A, E.p(2), 1, 0)};
      for (int i = 3; i <= t; ++i) parts.push_back(base_vector(BaseKind::A, E.p(i), 1, 1));
      CHECK(construct_Y(E, d) == tensor_local(E.base, parts));
    }
  }
}

TEST_CASE("predicted orders match profiles") {
  auto L49 = order_primes(49, 2);
  CHECK(predicted_order_Z(L49, 7) == 1);
  CHECK(predicted_order_Z(L49, 49) == 2);
  for (u64 N = 2; N <= 300; ++N) {
    auto L = order_primes(N, 2);
    for (u64 d : divisors(N)) {
      if (d == 1) continue;
      CHECK(profile(construct_Z(L, d)).order == predicted_order_Z(L, d));
    }
    if (L.t() < 2) continue;
    std::vector<u64> ells{2, 3};
    for (u64 l : prime_divisors(kappa(factor(N))))
      if (l > 3) ells.push_back(l);
    for (u64 l : ells) {
      auto Ll = order_primes(N, l);
      for (u64 d : divisors(N))
        if (d > 1 && is_squarefree(d)) CHECK(profile(construct_Y(Ll, d)).order == predicted_order_Y(Ll, d));
    }
  }
}

TEST_CASE("odd prime-power orders") {
  for (u64 p : {5, 7, 11, 13})
    for (int r = 3; r <= 5; ++r) {
      auto L = order_primes(ipow(p, r), 2);
      for (int f = 3; f <= r; ++f) {
        int j = (r + 1 - f) / 2;
        CHECK(predicted_order_Z(L, ipow(p, f)) == Int(ipow(p, r - 1 - j)) * (p * p - 1) / 24);
      }
    }
  for (int r = 5; r <= 12; ++r) {
    auto L = order_primes(ipow(2, r), 2);
    int f = r + 1 - (r % 2 == 0 ? 2 : 1);
    int j = (r + 1 - f) / 2;
    CHECK(predicted_order_Z(L, ipow(2, f)) == Int(ipow(2, r - 3 - j)));
  }
}

TEST_CASE("prime-power generation") {
  std::vector<std::pair<u64, int>> cases{{3, 7}, {5, 5}, {7, 4}, {11, 3}, {13, 3}, {2, 12}};
  for (auto [p, rmax] : cases)
    for (int r = 1; r <= rmax; ++r) {
      u64 N = ipow(p, r);
      IMat A, B;
      for (int f = 0; f <= r; ++f) A.push_back(base_vector(BaseKind::A, p, r, f));
      for (int f = 1; f <= r; ++f) B.push_back(base_vector(BaseKind::B, p, r, f));
      CHECK(same_lattice(A, identity(r + 1)));
      CHECK(same_lattice(B, degree0_basis(N)));
    }
}

TEST_CASE("Z1 generates the degree-zero lattice") {
  for (u64 N = 2; N <= 400; ++N) {
    auto L = order_primes(N, 2);
    IMat Z;
    for (u64 d : divisors(N))
      if (d > 1) Z.push_back(construct_Z(L, d, ZVariant::Z1).c);
    CHECK(same_lattice(Z, degree0_basis(N)));
  }
}

TEST_CASE("squarefree block does not depend on the prime ordering") {
  for (u64 N : {30ull, 60ull, 105ull, 180ull, 210ull, 252ull, 1155ull}) {
    auto base = order_primes(N, 2);
    auto ps = base.primes();
    std::sort(ps.begin(), ps.end());
    IMat ref;
    std::map<u64, CuspDivisor> nsf;
    bool first = true;
    do {
      auto L = make_ordered(N, 2, ps);
      IMat sf;
      for (u64 d : divisors(N)) {
        if (d == 1) continue;
        if (is_squarefree(d)) {
          sf.push_back(construct_Z(L, d).c);
        } else if (first) {
          nsf[d] = construct_Z(L, d);
        } else {
          CHECK(construct_Z(L, d) == nsf[d]);
        }
      }
      if (first) ref = sf;
      CHECK(same_lattice(sf, ref));
      first = false;
    } while (std::next_permutation(ps.begin(), ps.end()));
  }
}

TEST_CASE("labels") {
  CHECK(label_Z(order_primes(11, 2), 11) == "B(11,1,1)");
  CHECK(label_Z(order_primes(64, 2), 32) == "B2(6,5)");
  CHECK(label_Z(order_primes(12, 2), 12) == "Z(12)");
  CHECK(label_Y(6) == "Y2(6)");
}
