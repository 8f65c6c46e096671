// Prints one PASS/FAIL line per acceptance criterion.
//   acceptance                 all ten
//   acceptance --criterion 6   one
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "nevlab/error.hpp"
#include "nevlab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nevlab acceptance criteria"};
  std::vector<int> ids;
  nevlab::VerifyOptions opt;
  app.add_option("--criterion", ids, "criterion id (repeatable)")->check(CLI::Range(1, 10));
  app.add_option("--threads", opt.threads, "worker threads");
  app.add_option("--seed", opt.seed, "master seed");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = nevlab::suite_ids("all");

  bool all = true;
  for (int id : ids) {
    nevlab::CriterionResult r;
    try {
      r = nevlab::run_criterion(id, opt);
    } catch (const nevlab::Error& e) {
      r.id = id;
      r.name = nevlab::criterion_name(id);
      r.detail = std::string("error: ") + e.what();
    }
    std::cout << r.line() << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
