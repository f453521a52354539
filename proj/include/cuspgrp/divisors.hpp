#pragma once

#include "cuspgrp/intarith.hpp"

#include <string>
#include <vector>

namespace cuspgrp {

// element of S2(N): coefficients of (P_d), d | N ascending
struct CuspDivisor {
  u64 N = 1;
  IVec c;
  bool operator==(const CuspDivisor&) const = default;
};

// exponents r_delta, delta | N ascending
struct EtaVector {
  u64 N = 1;
  std::vector<Rat> r;
};

CuspDivisor zero_divisor(u64 N);
CuspDivisor orbit_divisor(u64 N, u64 d);
CuspDivisor C_generator(u64 N, u64 d);
Int degree(const CuspDivisor& D);
const Int& coeff(const CuspDivisor& D, u64 d);

CuspDivisor operator+(const CuspDivisor& a, const CuspDivisor& b);
CuspDivisor operator-(const CuspDivisor& a, const CuspDivisor& b);
CuspDivisor operator*(const Int& k, const CuspDivisor& a);

// e(M)_d' (x) e(Q)_{q} -> e(MQ)_{d'q}
CuspDivisor tensor_join(const CuspDivisor& v, const CuspDivisor& w);
// coefficient matrix on the (d' , q) grid: out[i][j] is the coefficient of e_{d'_i q_j}
std::vector<IVec> tensor_split(const CuspDivisor& v, u64 M);
// p-part vectors (a_0..a_r) for each prime power in N, tensored together
CuspDivisor tensor_local(const FactoredInteger& N, const std::vector<IVec>& parts);

enum class DivOp {
  AlphaPush,   // level Np -> N
  BetaPush,    // level Np -> N
  AlphaPull,   // level N -> Np
  BetaPull,    // level N -> Np
  AtkinLehner, // w_p on level N
  Hecke,       // T_p on level N
  Pi12Pull,    // level N -> Np^2
  Gamma        // (1/p) Pi12Pull
};

// N is always the level of D; p is the prime of the operator
CuspDivisor apply(DivOp op, u64 p, const CuspDivisor& D);

// pi_1(A,B)^* and pi_2(A,B)^* as compositions of alpha (resp. beta) pullbacks
CuspDivisor pi1_pull(const CuspDivisor& D, u64 A);
CuspDivisor pi2_pull(const CuspDivisor& D, u64 A);

std::string divisor_text(const CuspDivisor& D);

}  // namespace cuspgrp
