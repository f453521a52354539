#include "cuspgrp/cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace cuspgrp;
  Command c;
  CLI::App app{"cuspidal: rational cuspidal divisor class groups of X0(N)"};
  app.require_subcommand(1);
  app.add_option("--level-cap", c.level_cap, "largest accepted level")->capture_default_str();

  auto level = [&](CLI::App* s) { s->add_option("N", c.N, "level")->required(); };
  auto json = [&](CLI::App* s) { s->add_flag("--json", c.json, "JSON output"); };
  auto divisor = [&](CLI::App* s) {
    s->add_option("--divisor", c.divisor, "e.g. \"1*(1),-1*(11)\" or JSON")->required();
  };

  auto* cusps = app.add_subcommand("cusps", "list cusps and widths");
  level(cusps);
  json(cusps);
  auto* order = app.add_subcommand("order", "order profile of a divisor class");
  level(order);
  divisor(order);
  json(order);
  auto* eta = app.add_subcommand("eta", "eta quotient certificate");
  level(eta);
  divisor(eta);
  eta->add_option("--qexp", c.qexp, "q-expansion terms")->check(CLI::Range(1, 100000))->capture_default_str();
  json(eta);
  auto* group = app.add_subcommand("group", "group decomposition");
  level(group);
  group->add_option("--ell", c.ell, "only the ell-primary part");
  json(group);
  auto* verify = app.add_subcommand("verify", "crosscheck against the lattice oracle");
  level(verify);
  json(verify);
  auto* batch = app.add_subcommand("batch", "crosscheck every level up to --max");
  batch->add_option("--max", c.max, "largest level")->required();
  batch->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  batch->add_option("--out", c.out, "JSON-lines cache file");
  batch->add_flag("--force", c.force, "recompute cached levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  c.verb = app.get_subcommands().front()->get_name();
  if (const char* dir = std::getenv("CUSPIDAL_CACHE_DIR")) c.cache_dir = dir;
  return run(c, std::cout, std::cerr);
}
