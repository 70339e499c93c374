#include <doctest.h>

#include <zhukit/induce.hpp>
#include <zhukit/suites.hpp>

using namespace zhukit;

namespace {

// Some K_n with n <= depth is nonzero in F(C_h) exactly when the Verma
// module has a singular vector through that level.
bool has_singular(const Rat& c, const Rat& h, int depth) {
  auto a = zhu_algebra(make_virasoro(c, 2 * depth));
  Matrix m(1, 1);
  m(0, 0) = h;
  auto f = f_module(a, zhu_module_from_generators(a, {m}), depth);
  auto k = top_annihilated(*f.module);
  for (int n = 1; n <= depth; ++n)
    if (k[static_cast<std::size_t>(n)].dim() > 0) return true;
  return false;
}

}  // namespace

TEST_CASE("Kac loci agree with singular vectors found by exact rank") {
  // t = 4/3 gives c = 1/2 with h_{1,2} = 1/16 and h_{2,1} = 1/2; t = 2 gives
  // c = -2 with h_{2,1} = 1 and h_{1,2} = -1/8.
  struct Pair {
    Rat c, h;
  };
  std::vector<Pair> pairs{{make_rat(1, 2), make_rat(1, 16)}, {make_rat(1, 2), make_rat(1, 2)},
                          {make_rat(1, 2), Rat(0)},          {Rat(-2), Rat(1)},
                          {Rat(-2), make_rat(-1, 8)},        {make_rat(1, 2), make_rat(1, 3)},
                          {Rat(-2), make_rat(2, 5)}};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 3; ++i) {
    auto [c, h] = generic_virasoro_pair(rng, 3);
    pairs.push_back({c, h});
  }
  for (const auto& p : pairs) {
    CAPTURE(to_string(p.c));
    CAPTURE(to_string(p.h));
    CHECK(kac_degenerate(p.c, p.h, 3) == has_singular(p.c, p.h, 3));
  }
  CHECK(kac_degenerate(make_rat(1, 2), make_rat(1, 16), 2));
  CHECK_FALSE(kac_degenerate(make_rat(1, 2), make_rat(1, 16), 1));
}

TEST_CASE("suite registry is ordered and complete") {
  const auto& reg = suite_registry();
  REQUIRE(reg.size() == 12);
  for (std::size_t i = 0; i < reg.size(); ++i) CHECK(reg[i].id == static_cast<int>(i) + 1);
}

TEST_CASE("suites repeat exactly under a fixed seed") {
  auto a = suite_to_json(suite_fusion(3), suite_registry()[11]);
  auto b = suite_to_json(suite_fusion(3), suite_registry()[11]);
  CHECK(a.dump() == b.dump());
  CHECK(a["passed"] == true);
}
