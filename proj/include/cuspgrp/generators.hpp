#pragma once

#include "cuspgrp/orderengine.hpp"

#include <string>
#include <vector>

namespace cuspgrp {

struct OrderedLevel {
  FactoredInteger base;  // primes in the chosen order
  u64 ell = 2;
  int u = 0;
  int s = 0;
  std::vector<Int> gammas;

  int t() const { return base.t(); }
  u64 p(int i) const { return base.p(i); }
  int r(int i) const { return base.r(i); }
  std::vector<int> exps() const;
  std::vector<u64> primes() const;
};

OrderedLevel make_ordered(u64 N, u64 ell, const std::vector<u64>& primes);
OrderedLevel order_primes(u64 N, u64 ell);
bool satisfies_assumption(const OrderedLevel& L);

// orderings on {0..r}
std::vector<int> prec_r(int r);
std::vector<int> tri_r(int r);
int iota_r(int r, int f);

Tuple iota(const OrderedLevel& L, const Tuple& I);
bool prec_less(const OrderedLevel& L, const Tuple& I, const Tuple& J);
bool tri_less(const OrderedLevel& L, const Tuple& I, const Tuple& J);

struct DivisorOrdering {
  std::vector<Tuple> prec;     // d_1, d_2, ... as tuples
  std::vector<u64> prec_list;  // as divisors
  std::vector<u64> tri_list;   // delta_i = iota(d_i)
  int frak_m = 0;              // |Delta(t)|
};
DivisorOrdering divisor_orderings(const OrderedLevel& L);

enum class BaseKind { A, B, B2 };
// p-part vector (a_0..a_r)
IVec base_vector(BaseKind kind, u64 p, int r, int f);
struct BaseImage {
  Int g;
  IVec image;  // Upsilon(p^r) v = g * image
};
BaseImage base_vector_image(BaseKind kind, u64 p, int r, int f);
Int calG_p(u64 p, int r, int f);
Int calG_pair(u64 pi, int ri, u64 pj, int rj);

CuspDivisor D_vector(const OrderedLevel& L, int i, int j);
// D(p_i, p_j) embedded at level N with the remaining factors given by parts
CuspDivisor D_embedded(const OrderedLevel& L, int i, int j, std::vector<IVec> parts);

enum class ZVariant { Z1, Z };
enum class YVariant { Y0, Y1, Y2 };

CuspDivisor construct_Z(const OrderedLevel& L, u64 d, ZVariant v = ZVariant::Z);
CuspDivisor construct_Y(const OrderedLevel& L, u64 d, YVariant v = YVariant::Y2);

// natural Y variant for (N, ell)
YVariant active_variant(const OrderedLevel& L);

Int predicted_order_Z(const OrderedLevel& L, u64 d);
Int predicted_order_Y(const OrderedLevel& L, u64 d);
Int calG_N(const OrderedLevel& L, const Tuple& I);
int calH_N(const OrderedLevel& L, const Tuple& I);
Int scrG_N(const OrderedLevel& L, const Tuple& I);
int scrH_N(const OrderedLevel& L, const Tuple& I);

std::string label_Z(const OrderedLevel& L, u64 d);
std::string label_Y(u64 d);

}  // namespace cuspgrp
