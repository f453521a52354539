#pragma once

#include "cuspgrp/generators.hpp"

#include <map>
#include <string>
#include <vector>

namespace cuspgrp {

// integer lattices given by generating rows
IMat hnf(IMat rows);
// nonzero invariant factors d_1 | d_2 | ... (ones included)
std::vector<Int> snf_invariants(IMat M);
// [L : M] for M inside L with the same rational span
Int lattice_index(const IMat& L, const IMat& M);
bool same_lattice(const IMat& a, const IMat& b);

struct OrderingRecord {
  u64 ell = 2;
  std::vector<u64> primes;
};

struct CyclicFactor {
  std::string label;
  CuspDivisor generator;  // has exactly the stated order
  Int order;
  u64 d = 1;
  u64 ell = 0;            // 0: full factor, otherwise an ell-primary piece
  Int predicted;          // n(N,d) or N(N,d) of the unscaled generator
  Int cofactor = 1;       // generator = cofactor * (unscaled)
};

struct AbelianGroupStructure {
  u64 N = 1;
  std::vector<CyclicFactor> cyclic_factors;
  std::map<u64, std::vector<Int>> ell_primary;  // descending powers
  std::vector<Int> invariant_factors;           // n_1 | n_2 | ...
  Int group_order = 1;
  bool cuspidal_equals_rational = false;
  OrderingRecord ordering;
  std::vector<OrderingRecord> orderings;
};

// fill ell_primary, invariant_factors, group_order from a list of cyclic orders
void set_invariants(AbelianGroupStructure& G, const std::vector<Int>& orders);

AbelianGroupStructure compute_group(u64 N);
std::vector<CyclicFactor> compute_ell_primary(u64 N, u64 ell);
AbelianGroupStructure snf_oracle(u64 N);
bool cuspidal_equals_rational(u64 N);

struct CertificateStep {
  std::string block;      // Z, Y, h, relation, generation, span, delegated
  std::string subject;
  std::string criterion;
  u64 ell = 0;
  u64 delta = 0;          // anchor divisor, 0 if none
  u64 prime = 0;          // parity witness, 0 if none
  bool pass = false;
  std::string detail;
};

struct CertificateReport {
  u64 N = 1;
  std::vector<CertificateStep> steps;
  bool pass() const;
  std::vector<const CertificateStep*> failures() const;
};

CertificateReport verify_certificates(u64 N);

struct CrosscheckReport {
  u64 N = 1;
  bool pass = false;
  AbelianGroupStructure group;
  AbelianGroupStructure oracle;
  CertificateReport certificates;
  std::vector<std::string> problems;
};

CrosscheckReport crosscheck(u64 N);

// (0) for P_1, (oo) for P_N, (P_d) otherwise
std::string divisor_pretty(const CuspDivisor& D);
std::string group_text(const AbelianGroupStructure& G);

}  // namespace cuspgrp
