#pragma once

#include "cuspgrp/etalinalg.hpp"

#include <map>
#include <vector>

namespace cuspgrp {

struct OrderProfile {
  u64 N = 1;
  IVec V;
  Int gcd;   // 0 only for the zero divisor
  IVec Vbar;  // empty when gcd == 0
  std::map<u64, Int> pw;
  int h = 1;
  Int order = 1;
  bool degenerate = false;
};

OrderProfile profile(const CuspDivisor& C);
// profile of a vector given directly in S1(N) (V already computed)
OrderProfile profile_from_V(u64 N, const IVec& V);

// integral exponents r = n (24/kappa) V with eta_divisor(r) = n C
IVec eta_certificate(const CuspDivisor& C, const Int& n);
// true iff no m < n admits an integral certificate passing Ligozat
bool certificate_minimal(const OrderProfile& P);

OrderProfile tensor_profile(const CuspDivisor& C1, const CuspDivisor& C2);

struct ClosedOrder {
  Int g;
  int h;
  Int order;
};
Int frak_g(u64 N);
int frak_h(u64 N);
ClosedOrder closed_order_CN(u64 N);
ClosedOrder closed_order_Cd(u64 N, u64 d);
// the table value n(N) for the order of C_N
Int closed_table_nN(u64 N);

bool genus_zero(u64 N);

}  // namespace cuspgrp
