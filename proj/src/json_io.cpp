#include <zhukit/json_io.hpp>

#include <fstream>
#include <stdexcept>

namespace zhukit {

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: '" + s + "'");
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

namespace {

Json sparse_vec(const Vec& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.push_back(Json::array({i, rat_to_string(v[i])}));
  return out;
}

Vec vec_from_sparse(const Json& j, std::size_t n) {
  Vec v(n);
  for (const auto& e : j) {
    const auto i = e.at(0).get<std::size_t>();
    if (i >= n) throw std::invalid_argument("vector index out of range");
    v[i] = rat_from_string(e.at(1).get<std::string>());
  }
  return v;
}

Json sparse_matrix(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) out.push_back(Json::array({i, j, rat_to_string(m(i, j))}));
  return out;
}

Matrix matrix_from_sparse(const Json& j, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (const auto& e : j) {
    const auto r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
    if (r >= rows || c >= cols) throw std::invalid_argument("matrix index out of range");
    m(r, c) = rat_from_string(e.at(2).get<std::string>());
  }
  return m;
}

// One entry per nonzero structure constant: [a, i, j, "q"] with matrix a.
Json indexed_matrices(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (std::size_t a = 0; a < ms.size(); ++a)
    for (const auto& e : sparse_matrix(ms[a])) out.push_back(Json::array({a, e[0], e[1], e[2]}));
  return out;
}

std::vector<Matrix> matrices_from_indexed(const Json& j, std::size_t count, std::size_t dim) {
  std::vector<Matrix> ms(count, Matrix(dim, dim));
  for (const auto& e : j) {
    const auto a = e.at(0).get<std::size_t>(), r = e.at(1).get<std::size_t>(), c = e.at(2).get<std::size_t>();
    if (a >= count || r >= dim || c >= dim) throw std::invalid_argument("action index out of range");
    ms[a](r, c) = rat_from_string(e.at(3).get<std::string>());
  }
  return ms;
}

Json basis_to_json(const GradedBasis& b) {
  return Json{{"lowestWeight", rat_to_string(b.lowest_weight())}, {"dims", b.dims()}, {"labels", b.labels()}};
}

GradedBasis basis_from_json(const Json& j) {
  return GradedBasis(rat_from_string(j.at("lowestWeight").get<std::string>()),
                     j.at("dims").get<std::vector<std::size_t>>(), j.at("labels").get<std::vector<std::string>>());
}

Json table_to_json(const ActionTable& t) {
  Json out = Json::array();
  for (std::size_t v = 0; v < t.v_count(); ++v)
    for (std::size_t w = 0; w < t.w_count(); ++w)
      for (long r = 0; r <= t.result_cutoff(); ++r) {
        const Vec& loc = t.get(v, w, r);
        if (!loc.empty()) out.push_back(Json::array({v, w, r, sparse_vec(loc)}));
      }
  return out;
}

std::shared_ptr<ActionTable> table_from_json(const Json& j, std::size_t v_count, const GradedBasis& wb) {
  auto t = std::make_shared<ActionTable>(v_count, wb.size(), wb.cutoff());
  for (const auto& e : j) {
    const auto v = e.at(0).get<std::size_t>(), w = e.at(1).get<std::size_t>();
    const auto r = e.at(2).get<long>();
    if (v >= v_count || w >= wb.size() || r < 0 || r > wb.cutoff())
      throw std::invalid_argument("action table entry out of range");
    t->set(v, w, r, vec_from_sparse(e.at(3), wb.dim(r)));
  }
  return t;
}

}  // namespace

Json voa_to_json(const VOAPresentation& voa) {
  Json j;
  j["format"] = "zhukit-voa";
  j["basis"] = basis_to_json(voa.basis());
  j["vacuum"] = voa.vacuum();
  j["centralCharge"] = rat_to_string(voa.central_charge());
  j["omega"] = sparse_vec(voa.omega());
  Json gens = Json::array();
  for (const auto& g : voa.generators())
    gens.push_back(Json{{"kind", g.kind == GeneratorKind::Heisenberg ? "heisenberg" : "virasoro"},
                        {"c", rat_to_string(g.c)},
                        {"name", g.name}});
  j["generators"] = gens;
  j["generatorVectors"] = voa.generator_vectors();
  Json factors = Json::array();
  for (const auto& f : voa.factors()) factors.push_back(Json::array({f.color, f.part, f.rest}));
  j["factors"] = factors;
  try {
    j["l1"] = sparse_matrix(voa.l1_matrix());
  } catch (const CutoffError&) {
    j["l1"] = nullptr;
  }
  j["table"] = table_to_json(*voa.table_ptr());
  return j;
}

VOAPtr voa_from_json(const Json& j) {
  if (j.value("format", "") != "zhukit-voa") throw std::invalid_argument("not a zhukit VOA file");
  GradedBasis basis = basis_from_json(j.at("basis"));
  auto table = table_from_json(j.at("table"), basis.size(), basis);
  const std::size_t n = basis.size();
  auto voa = std::make_shared<VOAPresentation>(basis, table, j.at("vacuum").get<std::size_t>(),
                                               vec_from_sparse(j.at("omega"), n),
                                               rat_from_string(j.at("centralCharge").get<std::string>()));
  std::vector<GeneratorSpec> gens;
  for (const auto& g : j.at("generators")) {
    const auto kind = g.at("kind").get<std::string>();
    if (kind != "heisenberg" && kind != "virasoro") throw std::invalid_argument("unknown generator kind " + kind);
    gens.push_back(GeneratorSpec{kind == "heisenberg" ? GeneratorKind::Heisenberg : GeneratorKind::Virasoro,
                                 rat_from_string(g.at("c").get<std::string>()), g.at("name").get<std::string>()});
  }
  std::vector<BasisFactor> factors;
  for (const auto& f : j.at("factors"))
    factors.push_back(BasisFactor{f.at(0).get<int>(), f.at(1).get<long>(), f.at(2).get<std::size_t>()});
  voa->set_generators(gens, j.at("generatorVectors").get<std::vector<std::size_t>>(), factors);
  if (!j.at("l1").is_null()) voa->set_l1(matrix_from_sparse(j.at("l1"), n, n));
  return voa;
}

Json module_to_json(const ModulePresentation& w) {
  Json j;
  j["format"] = "zhukit-module";
  j["voaDim"] = w.voa().dim();
  j["basis"] = basis_to_json(w.basis());
  j["table"] = table_to_json(w.table());
  return j;
}

ModulePresentation module_from_json(const Json& j, const VOAPtr& voa) {
  if (j.value("format", "") != "zhukit-module") throw std::invalid_argument("not a zhukit module file");
  if (j.at("voaDim").get<std::size_t>() != voa->dim()) throw std::invalid_argument("module file belongs to another VOA");
  GradedBasis basis = basis_from_json(j.at("basis"));
  auto table = table_from_json(j.at("table"), voa->dim(), basis);
  return ModulePresentation(voa, basis, table);
}

Json series_to_json(const ScalarSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back(Json::array({e, rat_to_string(c)}));
  return Json{{"region", region_name(s.region())}, {"window", {s.window().lo, s.window().hi}}, {"terms", terms}};
}

ScalarSeries series_from_json(const Json& j) {
  ScalarSeries s(parse_region(j.at("region").get<std::string>()),
                 Window{j.at("window").at(0).get<long>(), j.at("window").at(1).get<long>()});
  for (const auto& t : j.at("terms")) s.set(t.at(0).get<long>(), rat_from_string(t.at(1).get<std::string>()));
  return s;
}

Json rational_form_to_json(const RationalForm& rf) {
  Json g = Json::array();
  for (const auto& [e, c] : rf.g) g.push_back(Json::array({e, rat_to_string(c)}));
  return Json{{"g", g}, {"l", rf.l}, {"k", rf.k}, {"z", rat_to_string(rf.z)}};
}

RationalForm rational_form_from_json(const Json& j) {
  RationalForm rf;
  for (const auto& t : j.at("g")) rf.g[t.at(0).get<long>()] = rat_from_string(t.at(1).get<std::string>());
  rf.l = j.at("l").get<long>();
  rf.k = j.at("k").get<long>();
  rf.z = rat_from_string(j.at("z").get<std::string>());
  return rf;
}

Json algebra_to_json(const FinAlgebra& a) {
  Json c = Json::array();
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < a.dim; ++k)
      for (std::size_t l = 0; l < a.dim; ++l)
        if (sgn(a.c[i][k][l]) != 0) c.push_back(Json::array({i, k, l, rat_to_string(a.c[i][k][l])}));
  Json unit = Json::array();
  for (const auto& x : a.unit) unit.push_back(rat_to_string(x));
  Json j{{"dim", a.dim}, {"unit", unit}, {"c", c}};
  if (a.theta) j["theta"] = sparse_matrix(*a.theta);
  return j;
}

FinAlgebra algebra_from_json(const Json& j) {
  FinAlgebra a;
  a.dim = j.at("dim").get<std::size_t>();
  a.c.assign(a.dim, std::vector<Vec>(a.dim, Vec(a.dim)));
  for (const auto& e : j.at("c")) {
    const auto i = e.at(0).get<std::size_t>(), k = e.at(1).get<std::size_t>(), l = e.at(2).get<std::size_t>();
    if (i >= a.dim || k >= a.dim || l >= a.dim) throw std::invalid_argument("structure constant index out of range");
    a.c[i][k][l] = rat_from_string(e.at(3).get<std::string>());
  }
  const Json& u = j.at("unit");
  if (u.is_number_integer()) {
    a.unit = unit_vec(a.dim, u.get<std::size_t>());
  } else {
    for (const auto& x : u) a.unit.push_back(rat_from_string(x.get<std::string>()));
  }
  if (a.unit.size() != a.dim) throw std::invalid_argument("unit has the wrong length");
  if (j.contains("theta")) a.theta = matrix_from_sparse(j.at("theta"), a.dim, a.dim);
  return a;
}

Json fin_module_to_json(const FinModule& m) { return Json{{"dim", m.dim}, {"action", indexed_matrices(m.action)}}; }

FinModule fin_module_from_json(const Json& j, std::size_t algebra_dim) {
  FinModule m;
  m.dim = j.at("dim").get<std::size_t>();
  m.action = matrices_from_indexed(j.at("action"), algebra_dim, m.dim);
  return m;
}

Json fin_bimodule_to_json(const FinBimodule& b) {
  return Json{{"dim", b.dim}, {"left", indexed_matrices(b.left)}, {"right", indexed_matrices(b.right)}};
}

FinBimodule fin_bimodule_from_json(const Json& j, std::size_t algebra_dim) {
  FinBimodule b;
  b.dim = j.at("dim").get<std::size_t>();
  b.left = matrices_from_indexed(j.at("left"), algebra_dim, b.dim);
  b.right = matrices_from_indexed(j.at("right"), algebra_dim, b.dim);
  return b;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace zhukit
