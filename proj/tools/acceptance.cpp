#include <zhukit/suites.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

using namespace zhukit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void print_line(bool ok, int id, const std::string& title, double seconds, double limit, const std::string& note) {
  const std::string bound = limit > 0 ? "(limit " + std::to_string(static_cast<int>(limit)) + " s)" : "(no limit)";
  std::printf("[%s] %2d %-70s %7.2f s %s%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), seconds, bound.c_str(),
              note.empty() ? "" : "  ", note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = ZHUKIT_CLI_PATH;
  std::string scratch = ".";
  if (argc > 1) cli = argv[1];
  if (argc > 2) scratch = argv[2];
  using clock = std::chrono::steady_clock;
  int failures = 0;

  for (const auto& entry : suite_registry()) {
    const auto start = clock::now();
    SuiteResult r;
    std::string note;
    try {
      r = entry.run(0);
    } catch (const std::exception& ex) {
      r.tally.fail(std::string("suite aborted: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    const bool in_time = secs <= entry.time_limit_seconds;
    const bool ok = r.passed() && in_time;
    note = "checked=" + std::to_string(r.tally.checked) + " skipped=" + std::to_string(r.tally.skipped) +
           " failed=" + std::to_string(r.tally.failed);
    if (!r.tally.witness.empty()) note += " witness: " + r.tally.witness;
    if (!in_time) note += " (over time limit)";
    print_line(ok, entry.id, entry.title, secs, entry.time_limit_seconds, note);
    if (!ok) ++failures;
  }

  // two separate runs of the command-line verifier
  {
    const auto start = clock::now();
    const std::string a = scratch + "/verify_run_a.json", b = scratch + "/verify_run_b.json";
    std::remove(a.c_str());
    std::remove(b.c_str());
    const int ra = std::system((cli + " verify --seed 0 --output " + a).c_str());
    const int rb = std::system((cli + " verify --seed 0 --output " + b).c_str());
    const std::string ta = slurp(a), tb = slurp(b);
    const bool ok = !ta.empty() && ta == tb;
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    std::string note = "bytes=" + std::to_string(ta.size()) + " exit codes " + std::to_string(ra) + "," +
                       std::to_string(rb) + (ta == tb ? " identical" : " DIFFER");
    print_line(ok, 13, "determinism: two verify runs produce byte-identical reports", secs, 0, note);
    if (!ok) ++failures;
  }

  std::printf("%d of 13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
