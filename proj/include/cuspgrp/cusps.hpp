#pragma once

#include "cuspgrp/intarith.hpp"

#include <string>
#include <vector>

namespace cuspgrp {

// <x : d> on X0(N); x is the least positive residue mod gcd(d, N/d) coprime to d
struct Cusp {
  u64 x = 1;
  u64 d = 1;
  bool operator==(const Cusp&) const = default;
  auto operator<=>(const Cusp&) const = default;
};

// least x >= 1 with x = x0 mod z and gcd(x, d) = 1
u64 canonical_residue(i64 x0, u64 d, u64 N);

Cusp normalize(i64 a, i64 b, u64 N);
std::vector<Cusp> enumerate_cusps(u64 N);
u64 width(const Cusp& c, u64 N);
std::string cusp_text(const Cusp& c, u64 N);

enum class CuspOp { AlphaPush, BetaPush, AtkinLehner, Galois };

// AlphaPush/BetaPush: c lives on X0(N*p), image on X0(N).
// AtkinLehner: p | N, acts on X0(N).  Galois: k coprime to N.
Cusp act(CuspOp op, u64 param, const Cusp& c, u64 N);

// ramification of alpha_p(N) or beta_p(N) at a cusp of X0(Np)
u64 ramification_index(CuspOp op, u64 p, const Cusp& c, u64 N);

// CRT join of a cusp of X0(M) with one of X0(p^r)
Cusp cusp_join(const Cusp& a, u64 M, const Cusp& b, u64 Q);

}  // namespace cuspgrp
