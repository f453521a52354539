#include "cuspgrp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace cuspgrp {

SpecError::SpecError(const std::string& msg, size_t p)
    : std::invalid_argument("divisor spec, position " + std::to_string(p) + ": " + msg), pos(p) {}

namespace {

struct SpecParser {
  const std::string& s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool at(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  void expect(char c) {
    if (!at(c)) throw SpecError(std::string("expected '") + c + "'", i);
    ++i;
  }
  std::string digits() {
    ws();
    size_t b = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (b == i) throw SpecError("expected a number", b);
    return s.substr(b, i - b);
  }
};

}  // namespace

CuspDivisor parse_divisor_spec(const std::string& text, u64 N) {
  if (N == 0) throw std::invalid_argument("level must be positive");
  auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SpecError(std::string("bad JSON: ") + e.what(), e.byte ? e.byte - 1 : 0);
    }
    CuspDivisor D = divisor_from_json(j);
    if (D.N != N) throw SpecError("JSON level " + std::to_string(D.N) + " differs from " + std::to_string(N), start);
    return D;
  }
  auto ds = divisors(N);
  CuspDivisor D = zero_divisor(N);
  SpecParser P{text};
  P.ws();
  if (P.i == text.size()) throw SpecError("empty divisor", 0);
  bool first = true;
  while (true) {
    int sign = 1;
    if (!first) {
      P.ws();
      if (P.i == text.size()) break;
      if (P.at(',')) {
        ++P.i;
      } else if (!P.at('+') && !P.at('-')) {
        throw SpecError("expected ',', '+' or '-'", P.i);
      }
    }
    first = false;
    if (P.at('+')) {
      ++P.i;
    } else if (P.at('-')) {
      sign = -1;
      ++P.i;
    }
    Int c = 1;
    if (!P.at('(')) {
      c = Int(P.digits());
      if (P.at('*')) ++P.i;
    }
    P.expect('(');
    size_t dpos = P.i;
    std::string dd = P.digits();
    if (dd.size() > 19) throw SpecError(dd + " does not divide " + std::to_string(N), dpos);
    u64 d = std::stoull(dd);
    if (d == 0 || N % d) throw SpecError(dd + " does not divide " + std::to_string(N), dpos);
    P.expect(')');
    D.c[divisor_index(ds, d)] += sign * c;
  }
  return D;
}

json int_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(x));
  return json(x.str());
}

Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  throw std::invalid_argument("expected an integer");
}

json divisor_json(const CuspDivisor& D) {
  auto ds = divisors(D.N);
  json c = json::object();
  for (size_t i = 0; i < ds.size(); ++i)
    if (D.c[i] != 0) c[std::to_string(ds[i])] = int_json(D.c[i]);
  return json{{"N", D.N}, {"coeffs", c}};
}

CuspDivisor divisor_from_json(const json& j) {
  u64 N = j.at("N").get<u64>();
  if (N == 0) throw std::invalid_argument("level must be positive");
  auto ds = divisors(N);
  CuspDivisor D = zero_divisor(N);
  for (auto& [k, v] : j.at("coeffs").items()) {
    u64 d = std::stoull(k);
    if (d == 0 || N % d) throw std::invalid_argument(k + " does not divide " + std::to_string(N));
    D.c[divisor_index(ds, d)] += int_from_json(v);
  }
  return D;
}

json cusps_json(u64 N) {
  json a = json::array();
  for (auto& c : enumerate_cusps(N))
    a.push_back({{"x", c.x}, {"d", c.d}, {"width", width(c, N)}, {"text", cusp_text(c, N)}});
  return json{{"N", N}, {"cusps", a}};
}

json profile_json(const OrderProfile& P) {
  json j;
  j["N"] = P.N;
  j["V"] = json::array();
  for (auto& x : P.V) j["V"].push_back(int_json(x));
  j["gcd"] = int_json(P.gcd);
  j["Vbar"] = json::array();
  for (auto& x : P.Vbar) j["Vbar"].push_back(int_json(x));
  j["pw"] = json::object();
  for (auto& [p, w] : P.pw) j["pw"][std::to_string(p)] = int_json(w);
  j["h"] = P.h;
  j["degenerate"] = P.degenerate;
  j["order"] = P.order == 0 ? std::string("infinite") : P.order.str();
  return j;
}

namespace {

json ordering_json(const OrderingRecord& o) { return json{{"ell", o.ell}, {"primes", o.primes}}; }

OrderingRecord ordering_from_json(const json& j) {
  return OrderingRecord{j.at("ell").get<u64>(), j.at("primes").get<std::vector<u64>>()};
}

json str_list(const std::vector<Int>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<Int> int_list(const json& a) {
  std::vector<Int> v;
  for (auto& x : a) v.push_back(int_from_json(x));
  return v;
}

}  // namespace

json group_json(const AbelianGroupStructure& G) {
  json j;
  j["N"] = G.N;
  j["ordering"] = ordering_json(G.ordering);
  j["orderings"] = json::array();
  for (auto& o : G.orderings) j["orderings"].push_back(ordering_json(o));
  j["generators"] = json::array();
  for (auto& c : G.cyclic_factors) {
    json g{{"label", c.label},
           {"divisor", divisor_json(c.generator)},
           {"order", c.order.str()},
           {"d", c.d},
           {"predicted", c.predicted.str()}};
    if (c.ell) {
      g["ell"] = c.ell;
      g["cofactor"] = c.cofactor.str();
    }
    j["generators"].push_back(g);
  }
  j["ell_primary"] = json::object();
  for (auto& [l, v] : G.ell_primary) j["ell_primary"][std::to_string(l)] = str_list(v);
  j["invariant_factors"] = str_list(G.invariant_factors);
  j["group_order"] = G.group_order.str();
  j["cuspidal_equals_rational_flag"] = G.cuspidal_equals_rational;
  return j;
}

AbelianGroupStructure group_from_json(const json& j) {
  AbelianGroupStructure G;
  G.N = j.at("N").get<u64>();
  G.ordering = ordering_from_json(j.at("ordering"));
  if (j.contains("orderings"))
    for (auto& o : j["orderings"]) G.orderings.push_back(ordering_from_json(o));
  for (auto& g : j.at("generators")) {
    CyclicFactor c;
    c.label = g.at("label").get<std::string>();
    c.generator = divisor_from_json(g.at("divisor"));
    c.order = int_from_json(g.at("order"));
    c.d = g.value("d", u64(1));
    c.predicted = g.contains("predicted") ? int_from_json(g["predicted"]) : c.order;
    c.ell = g.value("ell", u64(0));
    c.cofactor = g.contains("cofactor") ? int_from_json(g["cofactor"]) : Int(1);
    G.cyclic_factors.push_back(c);
  }
  for (auto& [k, v] : j.at("ell_primary").items()) G.ell_primary[std::stoull(k)] = int_list(v);
  G.invariant_factors = int_list(j.at("invariant_factors"));
  G.group_order = int_from_json(j.at("group_order"));
  G.cuspidal_equals_rational = j.at("cuspidal_equals_rational_flag").get<bool>();
  return G;
}

json crosscheck_json(const CrosscheckReport& R) {
  json j;
  j["N"] = R.N;
  j["pass"] = R.pass;
  j["group_order"] = R.group.group_order.str();
  j["invariant_factors"] = str_list(R.group.invariant_factors);
  j["oracle_invariant_factors"] = str_list(R.oracle.invariant_factors);
  j["ordering"] = ordering_json(R.group.ordering);
  j["generators"] = json::array();
  for (auto& c : R.group.cyclic_factors) {
    json g{{"label", c.label}, {"order", c.order.str()}};
    if (c.ell) g["ell"] = c.ell;
    j["generators"].push_back(g);
  }
  j["certificate_steps"] = R.certificates.steps.size();
  j["problems"] = R.problems;
  return j;
}

namespace {

std::string batch_line(u64 N) {
  try {
    return crosscheck_json(crosscheck(N)).dump();
  } catch (const std::exception& e) {
    return json{{"N", N}, {"pass", false}, {"problems", {std::string("exception: ") + e.what()}}}.dump();
  }
}

bool line_passed(const std::string& line) {
  auto j = json::parse(line, nullptr, false);
  return !j.is_discarded() && j.value("pass", false);
}

// N -> line, last occurrence wins; unreadable lines dropped
std::map<u64, std::string> read_cache(const std::string& path) {
  std::map<u64, std::string> m;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("N") || !j["N"].is_number_unsigned()) continue;
    m[j["N"].get<u64>()] = line;
  }
  return m;
}

void write_sorted(const std::string& path, const std::map<u64, std::string>& m) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream o(tmp, std::ios::trunc);
    for (auto& [n, line] : m) o << line << "\n";
    if (!o) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

BatchSummary run_batch(u64 max, int jobs, const std::string& path, bool force, std::ostream& lines) {
  BatchSummary S;
  S.total = max;
  std::map<u64, std::string> cache;
  if (!path.empty()) {
    cache = read_cache(path);
    if (force)
      for (u64 N = 1; N <= max; ++N) cache.erase(N);
    // cached lines first, in order, so appends below stay a valid prefix
    write_sorted(path, cache);
  }
  std::vector<u64> todo;
  for (u64 N = 1; N <= max; ++N) {
    if (cache.count(N)) {
      ++S.cached;
      if (line_passed(cache[N])) ++S.passed;
    } else {
      todo.push_back(N);
    }
  }
  std::ofstream file;
  if (!path.empty()) file.open(path, std::ios::app);
  std::ostream& sink = path.empty() ? lines : file;

  std::vector<std::optional<std::string>> results(todo.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t k = next++;
      if (k >= todo.size()) return;
      std::string line = batch_line(todo[k]);
      {
        std::lock_guard<std::mutex> g(mu);
        results[k] = std::move(line);
      }
      cv.notify_all();
    }
  };
  int nthreads = std::max(1, std::min<int>(jobs, int(todo.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  // single writer, ascending N
  for (size_t k = 0; k < todo.size(); ++k) {
    std::string line;
    {
      std::unique_lock<std::mutex> g(mu);
      cv.wait(g, [&] { return results[k].has_value(); });
      line = std::move(*results[k]);
      results[k].reset();
    }
    sink << line << "\n" << std::flush;
    ++S.computed;
    if (line_passed(line)) ++S.passed;
    if (!path.empty()) cache[todo[k]] = line;
  }
  for (auto& t : pool) t.join();
  if (!path.empty()) {
    file.close();
    write_sorted(path, cache);
  }
  return S;
}

namespace {

void check_level(const Command& c, u64 N) {
  if (N == 0) throw std::invalid_argument("level must be positive");
  if (N > c.level_cap)
    throw std::invalid_argument("level " + std::to_string(N) + " exceeds the cap " + std::to_string(c.level_cap));
}

std::string cache_path(const Command& c) {
  if (!c.out.empty()) return c.out;
  if (c.cache_dir.empty()) return "";
  std::filesystem::create_directories(c.cache_dir);
  return (std::filesystem::path(c.cache_dir) / "crosscheck.jsonl").string();
}

std::string vec_text(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

CuspDivisor need_divisor(const Command& c) {
  if (c.divisor.empty()) throw std::invalid_argument("--divisor is required");
  return parse_divisor_spec(c.divisor, c.N);
}

int cmd_cusps(const Command& c, std::ostream& out) {
  if (c.json) {
    out << cusps_json(c.N).dump() << "\n";
    return kPass;
  }
  auto cs = enumerate_cusps(c.N);
  out << "X0(" << c.N << "): " << cs.size() << " cusps\n";
  for (auto& x : cs) out << "  " << cusp_text(x, c.N) << "  width " << width(x, c.N) << "\n";
  return kPass;
}

int cmd_order(const Command& c, std::ostream& out) {
  auto P = profile(need_divisor(c));
  if (c.json) {
    out << profile_json(P).dump() << "\n";
    return kPass;
  }
  out << "V = " << vec_text(P.V) << "\n";
  out << "gcd = " << P.gcd << "\n";
  if (!P.degenerate) {
    out << "Vbar = " << vec_text(P.Vbar) << "\n";
    for (auto& [p, w] : P.pw) out << "Pw_" << p << " = " << w << "\n";
    out << "h = " << P.h << "\n";
  }
  out << "order = " << (P.order == 0 ? std::string("infinite") : P.order.str()) << "\n";
  return kPass;
}

int cmd_eta(const Command& c, std::ostream& out) {
  CuspDivisor D = need_divisor(c);
  if (degree(D) != 0) throw std::invalid_argument("divisor has nonzero degree");
  auto P = profile(D);
  IVec r = eta_certificate(D, P.order);
  auto Q = eta_qexpansion(c.N, r, c.qexp);
  auto ds = divisors(c.N);
  if (c.json) {
    json rj = json::object();
    for (size_t i = 0; i < ds.size(); ++i) rj[std::to_string(ds[i])] = int_json(r[i]);
    json cj = json::array();
    for (auto& x : Q.coeffs) cj.push_back(int_json(x));
    out << json{{"N", c.N},
                {"divisor", divisor_json(D)},
                {"order", P.order.str()},
                {"r", rj},
                {"qexp", {{"lead24", int_json(Q.lead24)}, {"coeffs", cj}}}}
               .dump()
        << "\n";
    return kPass;
  }
  out << "order " << P.order << "\n";
  out << "r =";
  for (size_t i = 0; i < ds.size(); ++i) out << " " << ds[i] << ":" << r[i];
  out << "\n" << Q.text() << "\n";
  return kPass;
}

int cmd_group(const Command& c, std::ostream& out) {
  if (c.ell) {
    if (!is_prime(c.ell)) throw std::invalid_argument("--ell must be prime");
    auto fs = compute_ell_primary(c.N, c.ell);
    if (c.json) {
      json a = json::array();
      for (auto& f : fs)
        a.push_back({{"label", f.label}, {"divisor", divisor_json(f.generator)}, {"order", f.order.str()}});
      out << json{{"N", c.N}, {"ell", c.ell}, {"generators", a}}.dump() << "\n";
      return kPass;
    }
    out << "C(" << c.N << ")[" << c.ell << "^oo] ≅ ";
    if (fs.empty()) out << "0";
    for (size_t i = 0; i < fs.size(); ++i) out << (i ? " ⊕ " : "") << "Z/" << fs[i].order;
    out << "\n";
    for (auto& f : fs) out << "  " << f.label << " order " << f.order << ": " << divisor_pretty(f.generator) << "\n";
    return kPass;
  }
  auto G = compute_group(c.N);
  if (c.json)
    out << group_json(G).dump() << "\n";
  else
    out << group_text(G);
  return kPass;
}

int cmd_verify(const Command& c, std::ostream& out) {
  auto R = crosscheck(c.N);
  if (c.json) {
    out << crosscheck_json(R).dump() << "\n";
    return R.pass ? kPass : kFail;
  }
  std::string g = group_text(R.group);
  out << "verify " << c.N << ": " << (R.pass ? "pass" : "FAIL") << ", " << g.substr(0, g.find('\n')) << "\n";
  out << "  certificate steps " << R.certificates.steps.size() << ", oracle";
  for (auto& x : R.oracle.invariant_factors) out << " " << x;
  out << "\n";
  for (auto& p : R.problems) out << "  " << p << "\n";
  return R.pass ? kPass : kFail;
}

int cmd_batch(const Command& c, std::ostream& out, std::ostream& err) {
  if (c.max == 0) throw std::invalid_argument("--max is required");
  check_level(c, c.max);
  std::string path = cache_path(c);
  auto S = run_batch(c.max, c.jobs, path, c.force, out);
  (path.empty() ? err : out) << "batch: " << S.passed << "/" << S.total << " pass (" << S.computed
                             << " computed, " << S.cached << " cached)\n";
  return S.passed == S.total ? kPass : kFail;
}

}  // namespace

int run(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.verb == "batch") return cmd_batch(c, out, err);
    check_level(c, c.N);
    if (c.verb == "cusps") return cmd_cusps(c, out);
    if (c.verb == "order") return cmd_order(c, out);
    if (c.verb == "eta") return cmd_eta(c, out);
    if (c.verb == "group") return cmd_group(c, out);
    if (c.verb == "verify") return cmd_verify(c, out);
    err << "unknown command " << c.verb << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace cuspgrp
