#pragma once

#include "cuspgrp/cusps.hpp"
#include "cuspgrp/orderengine.hpp"
#include "cuspgrp/structure.hpp"

#include "json.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace cuspgrp {

using json = nlohmann::ordered_json;

struct SpecError : std::invalid_argument {
  size_t pos;
  SpecError(const std::string& msg, size_t pos);
};

// "c*(d)" terms joined by ',' '+' '-', or the JSON form {"N":..,"coeffs":{..}}
CuspDivisor parse_divisor_spec(const std::string& text, u64 N);

json int_json(const Int& x);  // number if it fits in 64 bits, else decimal string
Int int_from_json(const json& j);

json divisor_json(const CuspDivisor& D);
CuspDivisor divisor_from_json(const json& j);
json cusps_json(u64 N);
json profile_json(const OrderProfile& P);
json group_json(const AbelianGroupStructure& G);
AbelianGroupStructure group_from_json(const json& j);
json crosscheck_json(const CrosscheckReport& R);

enum Exit { kPass = 0, kUsage = 1, kFail = 2 };

struct Command {
  std::string verb;
  u64 N = 0;
  std::string divisor;
  u64 ell = 0;
  int qexp = 20;
  u64 max = 0;
  int jobs = 1;
  std::string out;
  bool json = false;
  bool force = false;
  u64 level_cap = 1000000;
  std::string cache_dir;  // from CUSPIDAL_CACHE_DIR
};

struct BatchSummary {
  u64 total = 0;
  u64 passed = 0;
  u64 computed = 0;
  u64 cached = 0;
};

// JSON lines for N = 1..max in ascending order; lines already in path are reused unless force
BatchSummary run_batch(u64 max, int jobs, const std::string& path, bool force, std::ostream& lines);

int run(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace cuspgrp
