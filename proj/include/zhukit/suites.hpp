#ifndef ZHUKIT_SUITES_HPP
#define ZHUKIT_SUITES_HPP

#include <zhukit/json_io.hpp>
#include <zhukit/zhu.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace zhukit {

/// Outcome of one property suite: a merged tally plus suite-specific
/// numbers (dimensions, counts) that go into reports verbatim.
struct SuiteResult {
  std::string key;
  CheckTally tally;
  Json details = Json::object();
  bool passed() const { return tally.passed(); }
};

using SuiteFn = SuiteResult (*)(std::uint64_t seed);

struct SuiteEntry {
  int id;
  std::string key;
  std::string title;
  double time_limit_seconds;
  SuiteFn run;
};

/// Every property suite in a fixed order.
const std::vector<SuiteEntry>& suite_registry();

SuiteResult suite_formal(std::uint64_t seed);
SuiteResult suite_zhu(std::uint64_t seed);
SuiteResult suite_bimodule(std::uint64_t seed);
SuiteResult suite_o_membership(std::uint64_t seed);
SuiteResult suite_residue(std::uint64_t seed);
SuiteResult suite_omega_population(std::uint64_t seed);
SuiteResult suite_three_term(std::uint64_t seed);
SuiteResult suite_liealg(std::uint64_t seed);
SuiteResult suite_reduction(std::uint64_t seed);
SuiteResult suite_induction(std::uint64_t seed);
SuiteResult suite_sandwich(std::uint64_t seed);
SuiteResult suite_fusion(std::uint64_t seed);

Json suite_to_json(const SuiteResult& r, const SuiteEntry& entry);
/// Runs every suite; the report holds no timings, so equal seeds give equal bytes.
Json verify_report(std::uint64_t seed);

// Building blocks shared with the command-line tool.

/// Right- and left-side residue identities for `count` random functionals
/// lifted from A(V,z) (W = V), over all basis v of weight <= max_v_weight.
CheckTally residue_identity_tally(const VOAPtr& voa, const Rat& z, std::size_t count, long max_v_weight,
                                  std::mt19937_64& rng);
/// Three-term identity on `count` lifted functionals over v of weight <= max_v_weight.
CheckTally three_term_tally(const VOAPtr& voa, const Rat& z, std::size_t count, long max_v_weight,
                            std::mt19937_64& rng);

/// (c - h) pairs at which some Kac determinant through `max_level`
/// vanishes, tested through the polynomial form of the Kac factors.
bool kac_degenerate(const Rat& c, const Rat& h, int max_level);
/// Positive rational with denominator in [13, 97] and numerator in [1, 400].
Rat sample_rat(std::mt19937_64& rng);
/// Seeded (c, h) avoiding the Kac degeneracy loci through `max_level`.
std::pair<Rat, Rat> generic_virasoro_pair(std::mt19937_64& rng, int max_level);

}  // namespace zhukit

#endif  // ZHUKIT_SUITES_HPP
