#include "doctest.h"

#include "cuspgrp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cuspgrp;
namespace fs = std::filesystem;

namespace {

struct Ran {
  int rc;
  std::string out, err;
};

Ran go(Command c) {
  std::ostringstream o, e;
  int rc = run(c, o, e);
  return {rc, o.str(), e.str()};
}

Command cmd(std::string verb, u64 N) {
  Command c;
  c.verb = verb;
  c.N = N;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("cuspidal_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("divisor specs") {
  CHECK(parse_divisor_spec("1*(1),-1*(11)", 11) == C_generator(11, 11));
  CHECK(parse_divisor_spec("2*(1)-1*(6)", 36) == C_generator(36, 6));
  CHECK(parse_divisor_spec(" (1) - (11) ", 11) == C_generator(11, 11));
  CHECK(parse_divisor_spec("3*(2)+1*(2),-4(1)", 4).c == IVec{-4, 4, 0});
  CHECK(parse_divisor_spec(R"({"N":11,"coeffs":{"1":1,"11":-1}})", 11) == C_generator(11, 11));
  try {
    parse_divisor_spec("1*(5)", 12);
    FAIL("accepted 5 at level 12");
  } catch (const SpecError& e) {
    CHECK(e.pos == 3);
  }
  try {
    parse_divisor_spec("1*(1) 2*(3)", 12);
    FAIL("accepted a missing separator");
  } catch (const SpecError& e) {
    CHECK(e.pos == 6);
  }
  CHECK_THROWS_AS(parse_divisor_spec("", 12), SpecError);
  CHECK_THROWS_AS(parse_divisor_spec("1*(", 12), SpecError);
  CHECK_THROWS_AS(parse_divisor_spec("x", 12), SpecError);
  CHECK_THROWS_AS(parse_divisor_spec(R"({"N":12,"coeffs":{"1":1}})", 11), SpecError);
}

TEST_CASE("JSON round trips") {
  for (u64 N : {1ull, 11ull, 36ull, 210ull, 288ull}) {
    for (u64 d : divisors(N)) {
      auto D = (d > 1 ? C_generator(N, d) : orbit_divisor(N, 1));
      auto j = divisor_json(D);
      CHECK(divisor_from_json(json::parse(j.dump())) == D);
    }
    auto G = compute_group(N);
    auto j = group_json(G);
    auto back = group_from_json(json::parse(j.dump()));
    CHECK(group_json(back) == j);
    CHECK(back.invariant_factors == G.invariant_factors);
    REQUIRE(back.cyclic_factors.size() == G.cyclic_factors.size());
    for (size_t i = 0; i < G.cyclic_factors.size(); ++i) {
      CHECK(back.cyclic_factors[i].generator == G.cyclic_factors[i].generator);
      CHECK(back.cyclic_factors[i].order == G.cyclic_factors[i].order);
      CHECK(back.cyclic_factors[i].label == G.cyclic_factors[i].label);
    }
  }
  Int big("123456789012345678901234567890");
  CHECK(int_json(big).is_string());
  CHECK(int_from_json(int_json(big)) == big);
  CHECK(int_json(Int(-5)) == json(-5));
  auto P = profile_json(profile(C_generator(11, 11)));
  CHECK(P["order"] == "5");
  CHECK(P["gcd"] == 12);
  CHECK(P["pw"]["11"] == -1);
}

TEST_CASE("group schema") {
  auto j = group_json(compute_group(11));
  CHECK(j["N"] == 11);
  CHECK(j["ordering"]["ell"] == 2);
  CHECK(j["generators"][0]["order"] == "5");
  CHECK(j["generators"][0]["divisor"]["coeffs"]["11"] == -1);
  CHECK(j["ell_primary"]["5"] == json::array({"5"}));
  CHECK(j["invariant_factors"] == json::array({"5"}));
  CHECK(j["group_order"] == "5");
  CHECK(j["cuspidal_equals_rational_flag"] == false);
}

TEST_CASE("commands") {
  auto g = go(cmd("group", 11));
  CHECK(g.rc == kPass);
  CHECK(g.out == "C(11) ≅ Z/5, generator (0)−(∞)\n");
  auto v = go(cmd("verify", 32));
  CHECK(v.rc == kPass);
  CHECK(v.out.rfind("verify 32: pass, C(32) ≅ Z/4", 0) == 0);
  auto c = go(cmd("cusps", 36));
  CHECK(c.rc == kPass);
  CHECK(c.out.rfind("X0(36): 12 cusps", 0) == 0);

  Command o = cmd("order", 11);
  o.divisor = "1*(1),-1*(11)";
  auto r = go(o);
  CHECK(r.rc == kPass);
  CHECK(r.out.find("order = 5") != std::string::npos);
  o.json = true;
  CHECK(json::parse(go(o).out)["order"] == "5");

  Command e = cmd("eta", 11);
  e.divisor = "(1)-(11)";
  e.qexp = 4;
  auto et = go(e);
  CHECK(et.rc == kPass);
  CHECK(et.out.find("r = 1:12 11:-12") != std::string::npos);
  e.json = true;
  auto ej = json::parse(go(e).out);
  CHECK(ej["r"]["11"] == -12);
  CHECK(ej["qexp"]["lead24"] == -120);

  Command l = cmd("group", 341);
  l.ell = 5;
  auto lp = go(l);
  CHECK(lp.rc == kPass);
  CHECK(lp.out.rfind("C(341)[5^oo] ≅ Z/5 ⊕ Z/25 ⊕ Z/5", 0) == 0);
}

TEST_CASE("exit codes") {
  Command bad = cmd("order", 12);
  bad.divisor = "1*(5)";
  auto r = go(bad);
  CHECK(r.rc == kUsage);
  CHECK(r.err.find("position 3") != std::string::npos);
  CHECK(go(cmd("order", 12)).rc == kUsage);
  CHECK(go(cmd("group", 0)).rc == kUsage);
  Command cap = cmd("group", 2000000);
  CHECK(go(cap).rc == kUsage);
  Command nz = cmd("eta", 11);
  nz.divisor = "(1)";
  CHECK(go(nz).rc == kUsage);
  CHECK(go(cmd("frobnicate", 5)).rc == kUsage);
  Command ell = cmd("group", 11);
  ell.ell = 4;
  CHECK(go(ell).rc == kUsage);
}

TEST_CASE("batch output is deterministic and cached") {
  auto p1 = scratch("one.jsonl"), p4 = scratch("four.jsonl");
  fs::remove(p1);
  fs::remove(p4);
  Command b;
  b.verb = "batch";
  b.max = 100;
  b.out = p1.string();
  auto r1 = go(b);
  CHECK(r1.rc == kPass);
  CHECK(r1.out == "batch: 100/100 pass (100 computed, 0 cached)\n");
  b.out = p4.string();
  b.jobs = 4;
  CHECK(go(b).rc == kPass);
  CHECK(slurp(p1) == slurp(p4));

  // partial cache is extended, then reused
  b.max = 120;
  auto r2 = go(b);
  CHECK(r2.out == "batch: 120/120 pass (20 computed, 100 cached)\n");
  b.max = 50;
  CHECK(go(b).out == "batch: 50/50 pass (0 computed, 50 cached)\n");
  b.force = true;
  CHECK(go(b).out == "batch: 50/50 pass (50 computed, 0 cached)\n");
  std::istringstream lines(slurp(p4));
  std::string line;
  u64 n = 0;
  while (std::getline(lines, line)) CHECK(json::parse(line)["N"] == ++n);
  CHECK(n == 120);

  // no cache file: lines on the output stream
  Command s;
  s.verb = "batch";
  s.max = 5;
  auto r3 = go(s);
  CHECK(r3.rc == kPass);
  CHECK(r3.err == "batch: 5/5 pass (5 computed, 0 cached)\n");
  CHECK(std::count(r3.out.begin(), r3.out.end(), '\n') == 5);

  // cache directory
  Command d;
  d.verb = "batch";
  d.max = 10;
  d.cache_dir = scratch("cache").string();
  CHECK(go(d).rc == kPass);
  CHECK(fs::exists(fs::path(d.cache_dir) / "crosscheck.jsonl"));
  fs::remove_all(p1.parent_path());
}
