#pragma once

#include "cuspgrp/divisors.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cuspgrp {

using IMat = std::vector<IVec>;
using RMat = std::vector<std::vector<Rat>>;

Int a_entry(u64 N, u64 d, u64 delta);
Rat lambda_entry(u64 N, u64 d, u64 delta);
RMat lambda_matrix(u64 N);

IMat upsilon_local(u64 p, int r);
// cached, shared read-only
std::shared_ptr<const IMat> upsilon(u64 N);

struct ColumnProfile {
  Int sum, delta_sum, codelta_sum, gcd;
};
ColumnProfile upsilon_column_profile(u64 N, u64 d);

struct LigozatReport {
  bool integral = true, cond1 = true, cond2 = true, cond3 = true, cond4 = true;
  bool pass() const { return integral && cond1 && cond2 && cond3 && cond4; }
  std::string first_failure() const;
};
LigozatReport ligozat_check(const EtaVector& r);

// Lambda(N) r, rational coefficients on (P_d)
std::vector<Rat> eta_divisor(const EtaVector& r);

struct QExpansion {
  Int lead24;  // leading exponent times 24
  IVec coeffs;
  std::string text() const;
};
QExpansion eta_qexpansion(u64 N, const IVec& r, int K = 20);

IVec mat_vec(const IMat& A, const IVec& v);

}  // namespace cuspgrp
