#include <doctest.h>

#include <zhukit/json_io.hpp>

using namespace zhukit;

TEST_CASE("rational strings") {
  CHECK(rat_from_string("-6/4") == make_rat(-3, 2));
  CHECK(rat_to_string(make_rat(-3, 2)) == "-3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);
}

TEST_CASE("VOA files round-trip exactly") {
  for (auto voa : {make_virasoro(make_rat(1, 2), 6), make_heisenberg(5), make_heisenberg(1)}) {
    const Json j = voa_to_json(*voa);
    auto back = voa_from_json(j);
    CHECK(voa_to_json(*back).dump() == j.dump());
    CHECK(back->dim() == voa->dim());
    CHECK(back->omega() == voa->omega());
    for (std::size_t u = 0; u < voa->dim(); ++u)
      for (std::size_t v = 0; v < voa->dim(); ++v)
        for (long n = -2; n <= 2; ++n) {
          if (voa->adjoint().result_level(u, n, v) > voa->cutoff()) continue;
          CHECK(back->mode(u, n, v) == voa->mode(u, n, v));
        }
    auto w = back->adjoint();
    auto wj = module_to_json(w);
    CHECK(module_to_json(module_from_json(wj, back)).dump() == wj.dump());
  }
  CHECK_THROWS_AS(voa_from_json(Json{{"format", "other"}}), std::invalid_argument);
}

TEST_CASE("series and rational forms") {
  RationalForm rf{{{0, Rat(2)}, {3, make_rat(-1, 5)}}, 2, 1, make_rat(3, 4)};
  CHECK(rational_form_from_json(rational_form_to_json(rf)) == rf);
  auto s = iota_expand(rf, Region::AtInfinity, {-6, 2});
  auto t = series_from_json(series_to_json(s));
  CHECK(t.region() == s.region());
  CHECK(t.window() == s.window());
  CHECK(t.terms() == s.terms());
}

TEST_CASE("structure-constant files") {
  auto inst = random_fusion_instance(7);
  auto a = algebra_from_json(algebra_to_json(inst.a));
  CHECK(algebra_to_json(a).dump() == algebra_to_json(inst.a).dump());
  auto u = fin_module_from_json(fin_module_to_json(inst.u1), a.dim);
  CHECK(fin_module_to_json(u).dump() == fin_module_to_json(inst.u1).dump());
  auto b = fin_bimodule_from_json(fin_bimodule_to_json(inst.b), a.dim);
  CHECK(fin_bimodule_to_json(b).dump() == fin_bimodule_to_json(inst.b).dump());
  // integer unit index form
  auto one = algebra_from_json(Json::parse(R"({"dim":1,"unit":0,"c":[[0,0,0,"1"]]})"));
  CHECK(algebra_check(one).passed());
}
