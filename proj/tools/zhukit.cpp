#include <zhukit/dualrep.hpp>
#include <zhukit/fusion.hpp>
#include <zhukit/induce.hpp>
#include <zhukit/json_io.hpp>
#include <zhukit/suites.hpp>
#include <zhukit/zhu.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace zhukit;

namespace {

/// Invalid flag values, unreadable inputs, cutoffs too small for the request.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string voa = "virasoro";
  std::string c = "1/2";
  int cutoff = 6;
  bool cutoff_given = false;
  std::string z = "-1";
  int depth = 3;
  std::uint64_t seed = 0;
  std::size_t samples = 20;
  std::string output;
  std::string format = "json";
  std::string h;
  std::string algebra, bimodule, left, right;
};

Rat flag_rat(const std::string& name, const std::string& text) {
  try {
    return parse_rat(text);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError("--" + name + ": " + ex.what());
  }
}

Rat config_z(const RunConfig& cfg) {
  Rat z = flag_rat("z", cfg.z);
  if (is_zero(z)) throw ConfigError("--z must be nonzero");
  return z;
}

Json read_input(const std::string& flag, const std::string& path) {
  if (path.empty()) throw ConfigError("--" + flag + " is required");
  try {
    return read_json_file(path);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError("--" + flag + ": " + ex.what());
  }
}

VOAPtr build_voa(const RunConfig& cfg) {
  if (cfg.cutoff < 0) throw ConfigError("--cutoff must be nonnegative");
  if (cfg.voa == "heisenberg") return make_heisenberg(cfg.cutoff);
  if (cfg.voa == "virasoro") return make_virasoro(flag_rat("c", cfg.c), cfg.cutoff);
  VOAPtr voa;
  try {
    voa = voa_from_json(read_input("voa", cfg.voa));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError("--voa: " + cfg.voa + ": " + ex.what());
  }
  if (cfg.cutoff_given && cfg.cutoff < voa->cutoff()) voa = truncate(voa, cfg.cutoff);
  return voa;
}

Json voa_summary(const RunConfig& cfg, const VOAPtr& voa) {
  Json j = {{"kind", cfg.voa == "heisenberg" || cfg.voa == "virasoro" ? cfg.voa : std::string("file")}};
  if (cfg.voa == "virasoro") j["c"] = rat_to_string(flag_rat("c", cfg.c));
  if (cfg.voa != "heisenberg" && cfg.voa != "virasoro") j["path"] = cfg.voa;
  j["cutoff"] = voa->cutoff();
  j["dim"] = voa->dim();
  Json dims = Json::array();
  for (auto d : voa->basis().dims()) dims.push_back(d);
  j["levelDims"] = dims;
  return j;
}

Json tally_json(const CheckTally& t) {
  Json j = {{"checked", t.checked}, {"skipped", t.skipped}, {"failed", t.failed}};
  j["witness"] = t.witness.empty() ? Json(nullptr) : Json(t.witness);
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json vec_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rat_to_string(x));
  return j;
}

Json levels_json(const std::vector<std::size_t>& dims) {
  Json j = Json::array();
  for (std::size_t n = 0; n < dims.size(); ++n) j.push_back({{"n", n}, {"dim", dims[n]}});
  return j;
}

/// First failing witness in a report tree, for the stderr summary.
std::string find_witness(const Json& j) {
  if (j.is_object()) {
    auto it = j.find("witness");
    if (it != j.end() && it->is_string()) return it->get<std::string>();
    for (const auto& [k, v] : j.items()) {
      auto w = find_witness(v);
      if (!w.empty()) return w;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      auto w = find_witness(v);
      if (!w.empty()) return w;
    }
  }
  return {};
}

// ---------------------------------------------------------------- commands

Json run_zhu(const RunConfig& cfg) {
  auto voa = build_voa(cfg);
  auto a = zhu_algebra(voa);
  auto checks = zhu_checks(a);
  auto expansion = expand_in_generators(a);
  Json reps = Json::array(), weights = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    reps.push_back(voa->basis().label(a.representatives()[i]));
    weights.push_back(a.rep_weight(i));
  }
  Json products = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (auto p = a.product(i, j)) products.push_back({{"left", i}, {"right", j}, {"value", vec_json(*p)}});
  return {{"command", "zhu"},
          {"voa", voa_summary(cfg, voa)},
          {"quotientDims", a.dim()},
          {"representatives", reps},
          {"representativeWeights", weights},
          {"unit", a.unit()},
          {"generatorWordsSpan", expansion.spans},
          {"products", products},
          {"theta", matrix_json(a.theta())},
          {"checks",
           {{"identity", tally_json(checks.identity)},
            {"ideal", tally_json(checks.ideal)},
            {"associativity", tally_json(checks.assoc)},
            {"centrality", tally_json(checks.central)},
            {"theta", tally_json(checks.theta)}}},
          {"passed", checks.passed()}};
}

Json run_bimodule(const RunConfig& cfg) {
  auto voa = build_voa(cfg);
  const Rat z = config_z(cfg);
  auto a = zhu_algebra(voa);
  const auto adj = voa->adjoint();
  auto b = bimodule_build(adj, z, a);
  auto checks = bimodule_checks(b, a);
  auto b2 = bimodule_build(rescale_module(adj, -1 / z), Rat(-1), a);
  CheckTally rescale;
  ++rescale.checked;
  if (!(b2.reps == b.reps && b2.left == b.left && b2.right == b.right))
    rescale.fail("A(W,z) differs from A(W^(-1/z),-1)");
  Json reps = Json::array();
  for (auto r : b.reps) reps.push_back(adj.basis().label(r));
  auto actions = [&](const std::vector<std::vector<std::optional<Vec>>>& act) {
    Json out = Json::array();
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = 0; j < act[i].size(); ++j)
        if (act[i][j]) out.push_back({{"algebra", i}, {"vector", j}, {"value", vec_json(*act[i][j])}});
    return out;
  };
  const bool passed = checks.passed() && rescale.passed();
  return {{"command", "bimodule"},
          {"voa", voa_summary(cfg, voa)},
          {"z", rat_to_string(z)},
          {"algebraDim", a.dim()},
          {"bimoduleDim", b.dim()},
          {"representatives", reps},
          {"left", actions(b.left)},
          {"right", actions(b.right)},
          {"checks",
           {{"wellDefined", tally_json(checks.well_defined)},
            {"leftAssociativity", tally_json(checks.left_assoc)},
            {"rightAssociativity", tally_json(checks.right_assoc)},
            {"commute", tally_json(checks.commute)},
            {"unit", tally_json(checks.unit)},
            {"rescaleEquivalence", tally_json(rescale)}}},
          {"passed", passed}};
}

Json run_omega(const RunConfig& cfg) {
  auto voa = build_voa(cfg);
  const Rat z = config_z(cfg);
  auto a = zhu_algebra(voa);
  const auto adj = voa->adjoint();
  auto om = omega_subspace(adj, a);
  Json basis = Json::array();
  for (std::size_t i = 0; i < om.basis.size(); ++i)
    basis.push_back({{"level", om.levels[i]}, {"vector", vec_json(om.basis[i])}});
  Json action = Json::array();
  for (const auto& m : om.action) action.push_back(matrix_json(m));

  // Omega of D_{P(z)}(V, Q): lifted functionals are members, perturbed ones are not
  auto b = bimodule_build(adj, z, a);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  auto rnd = [&] { return make_rat(num(rng), den(rng)); };
  CheckTally membership;
  std::size_t lifted = 0, perturbed = 0;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    Matrix phi(1, b.dim());
    for (std::size_t j = 0; j < b.dim(); ++j) phi(0, j) = rnd();
    DualElement f;
    try {
      f = lift_functional(phi, b);
    } catch (const CertificateError& ex) {
      membership.fail(std::string("lift rejected: ") + ex.what());
      continue;
    }
    bool expect_member = true;
    if (s % 2 == 1) {
      Matrix g(1, adj.dim());
      for (std::size_t j = 0; j < adj.dim(); ++j) g(0, j) = rnd();
      f.f = f.f + g;
      f.certificates.clear();
      for (const auto& x : b.o.basis())
        if (!is_zero(g.apply(x))) expect_member = false;
    }
    (expect_member ? lifted : perturbed) += 1;
    auto m = omega_membership(f);
    ++membership.checked;
    if (m.member != expect_member || !m.consistent())
      membership.fail("sample " + std::to_string(s) + " misclassified" +
                      (m.witness ? " (" + m.witness->describe() + ")" : std::string()));
  }
  return {{"command", "omega"},
          {"voa", voa_summary(cfg, voa)},
          {"z", rat_to_string(z)},
          {"omega", {{"dim", om.basis.size()}, {"basis", basis}, {"action", action}}},
          {"dual",
           {{"homDim", b.dim()},
            {"lifted", lifted},
            {"perturbed", perturbed},
            {"membership", tally_json(membership)}}},
          {"passed", membership.passed()}};
}

Json run_induce(const RunConfig& cfg) {
  if (cfg.depth < 0) throw ConfigError("--depth must be nonnegative");
  auto voa = build_voa(cfg);
  std::mt19937_64 rng(cfg.seed);
  Rat h = cfg.h.empty() ? generic_virasoro_pair(rng, std::max(cfg.depth, 1)).second : flag_rat("h", cfg.h);
  auto a = zhu_algebra(voa);
  if (voa->generators().empty()) throw ConfigError("--voa: induction needs a generator presentation");
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < voa->generators().size(); ++g) {
    Matrix m(1, 1);
    m(0, 0) = h;
    gens.push_back(m);
  }
  auto u = zhu_module_from_generators(a, gens);
  auto ucheck = zhu_module_check(a, u);
  auto f = f_module(a, u, cfg.depth);
  InducedModule l;
  try {
    l = l_module(f);
  } catch (const CutoffError& ex) {
    throw ConfigError(std::string("--cutoff too small for --depth: ") + ex.what());
  }
  auto frob = frobenius_check(a, f, *l.module);
  auto ax = axiom_check(*f.module, cfg.samples, cfg.seed);
  auto axl = axiom_check(*l.module, cfg.samples, cfg.seed);
  CheckTally checks;
  checks.merge(ucheck);
  auto add = [&](bool ok, const std::string& what) {
    ++checks.checked;
    if (!ok) checks.fail(what);
  };
  add(ax.passed, "axiom check fails on F(U)");
  add(axl.passed, "axiom check fails on L(U)");
  add(frob.equal(), "Frobenius dimensions differ");
  add(!f.level_dims.empty() && f.level_dims[0] == u.dim, "level 0 of F(U) differs from U");
  return {{"command", "induce"},
          {"voa", voa_summary(cfg, voa)},
          {"h", rat_to_string(h)},
          {"depth", cfg.depth},
          {"levels", levels_json(f.level_dims)},
          {"quotientLevels", levels_json(l.level_dims)},
          {"frobenius", {{"dim1", frob.module_maps}, {"dim2", frob.top_maps}}},
          {"relations",
           {{"checked", f.relations_checked}, {"skipped", f.relations_skipped}, {"rank", f.relation_rank}}},
          {"checks", tally_json(checks)},
          {"passed", checks.passed()}};
}

Json run_dualrep(const RunConfig& cfg) {
  auto voa = build_voa(cfg);
  const Rat z = config_z(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto residue = residue_identity_tally(voa, z, cfg.samples, 3, rng);
  auto three = three_term_tally(voa, z, std::max<std::size_t>(1, cfg.samples / 4), 2, rng);
  return {{"command", "dualrep"},
          {"voa", voa_summary(cfg, voa)},
          {"z", rat_to_string(z)},
          {"functionals", cfg.samples},
          {"residueIdentities", tally_json(residue)},
          {"threeTerm", tally_json(three)},
          {"passed", residue.passed() && three.passed()}};
}

Json run_fusion(const RunConfig& cfg) {
  FinAlgebra a;
  FinBimodule b;
  FinModule u1, u2;
  try {
    a = algebra_from_json(read_input("algebra", cfg.algebra));
    b = fin_bimodule_from_json(read_input("bimodule", cfg.bimodule), a.dim);
    u1 = fin_module_from_json(read_input("left", cfg.left), a.dim);
    u2 = fin_module_from_json(read_input("right", cfg.right), a.dim);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("malformed structure-constant file: ") + ex.what());
  }
  auto ca = algebra_check(a);
  auto cb = bimodule_check(a, b);
  auto c1 = module_check(a, u1);
  auto c2 = module_check(a, u2);
  Json report = {{"command", "fusion"},
                 {"dims", {{"algebra", a.dim}, {"bimodule", b.dim}, {"left", u1.dim}, {"right", u2.dim}}},
                 {"checks",
                  {{"algebra", tally_json(ca)},
                   {"bimodule", tally_json(cb)},
                   {"left", tally_json(c1)},
                   {"right", tally_json(c2)}}}};
  bool passed = ca.passed() && cb.passed() && c1.passed() && c2.passed();
  if (passed) {
    auto t = tensor_over_algebra(a, b, u1);
    report["tensorDim"] = t.dim;
    report["dim"] = fusion_dim(a, b, u1, u2);
    if (a.theta) {
      auto d = d_iso_check(a, b, u1, u2);
      report["dIso"] = {{"lhs", d.lhs}, {"rhs", d.rhs}, {"equal", d.equal()}};
      passed = d.equal();
      if (!passed) report["witness"] = "Hom dimensions on the two sides of the d-isomorphism differ";
    } else {
      report["dIso"] = nullptr;
    }
  }
  report["passed"] = passed;
  return report;
}

Json run_verify(const RunConfig& cfg) {
  Json r = verify_report(cfg.seed);
  Json out = {{"command", "verify"}};
  for (const auto& [k, v] : r.items()) out[k] = v;
  return out;
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object() || j.is_array()) {
    if (j.empty()) {
      os << csv_field(path) << "," << (j.is_object() ? "{}" : "[]") << "\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      const std::string key = j.is_array() ? std::to_string(i) : k;
      flatten(v, path.empty() ? key : path + "." + key, os);
      ++i;
    }
    return;
  }
  os << csv_field(path) << "," << csv_field(j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

std::string render(const Json& report, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "key,value\n";
    flatten(report, "", os);
  } else {
    os << report.dump(2) << "\n";
  }
  return os.str();
}

void add_common(CLI::App* sub, RunConfig& cfg, bool voa_flags, bool z_flag) {
  if (voa_flags) {
    sub->add_option("--voa", cfg.voa, "heisenberg, virasoro, or a path to a VOA JSON file");
    sub->add_option("--c", cfg.c, "central charge for --voa virasoro");
    sub->add_option_function<int>(
        "--cutoff",
        [&cfg](const int& n) {
          cfg.cutoff = n;
          cfg.cutoff_given = true;
        },
        "weight cutoff N");
  }
  if (z_flag) sub->add_option("--z", cfg.z, "nonzero rational z");
  sub->add_option("--depth", cfg.depth, "induced-module depth");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--samples", cfg.samples, "number of sampled instances");
  sub->add_option("--output", cfg.output, "report path (default: stdout)");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zhukit: exact computations with Zhu algebras, dual representations, and fusion"};
  app.require_subcommand(1);
  RunConfig cfg;
  struct Cmd {
    const char* name;
    const char* help;
    bool voa;
    bool z;
  };
  const Cmd cmds[] = {{"zhu", "A_N(V) with its algebra checks", true, false},
                      {"bimodule", "A_N(W,z) for the adjoint module with its axioms", true, true},
                      {"omega", "Omega(V) and Omega-membership of dual functionals", true, true},
                      {"induce", "F(U) and L(U) level dimensions with Frobenius reciprocity", true, false},
                      {"dualrep", "residue identities and the three-term identity", true, true},
                      {"fusion", "fusion dimension from structure-constant files", false, false},
                      {"verify", "the full property suite", false, false}};
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg, c.voa, c.z);
    if (std::string(c.name) == "induce") {
      sub->set_help_flag("--help", "Print this help message and exit");
      sub->add_option("--h", cfg.h, "lowest weight of U (default: seeded generic)");
    }
    if (std::string(c.name) == "fusion") {
      sub->add_option("--algebra", cfg.algebra, "algebra JSON");
      sub->add_option("--bimodule", cfg.bimodule, "bimodule JSON");
      sub->add_option("--left", cfg.left, "left module U1 JSON");
      sub->add_option("--right", cfg.right, "right module U2 JSON");
    }
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Json report;
  try {
    if (cfg.command == "zhu") report = run_zhu(cfg);
    else if (cfg.command == "bimodule") report = run_bimodule(cfg);
    else if (cfg.command == "omega") report = run_omega(cfg);
    else if (cfg.command == "induce") report = run_induce(cfg);
    else if (cfg.command == "dualrep") report = run_dualrep(cfg);
    else if (cfg.command == "fusion") report = run_fusion(cfg);
    else report = run_verify(cfg);
  } catch (const ConfigError& ex) {
    std::cerr << "zhukit: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    report = {{"command", cfg.command}, {"passed", false}, {"witness", std::string("aborted: ") + ex.what()}};
  }

  const std::string text = render(report, cfg.format);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "zhukit: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << text;
  }
  const bool passed = report.value("passed", false);
  if (!passed) std::cerr << "zhukit: check failed: " << find_witness(report) << "\n";
  return passed ? 0 : 1;
}
