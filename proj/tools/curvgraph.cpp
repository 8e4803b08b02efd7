#include "curvgraph/algebra_io.hpp"
#include "curvgraph/ce.hpp"
#include "curvgraph/charclass.hpp"
#include "curvgraph/complex.hpp"
#include "curvgraph/report.hpp"
#include "curvgraph/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace curvgraph;
using nlohmann::json;

namespace {

enum Exit { ok = 0, input_error = 1, comparison_failed = 2, resource_cap = 3, inapplicable = 4 };

// Unwinds to main with an exit status and a message for stderr.
struct CliExit {
  int code;
  std::string message;
  bool usage = false;
};

CliExit usage_error(std::string message) { return {input_error, std::move(message), true}; }

struct Global {
  std::uint64_t seed = 20240601;
  std::string output_dir = ".";
  long basis_cap = -1;
};

void write_file(const Global& g, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(g.output_dir);
  const auto path = std::filesystem::path(g.output_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliExit{input_error, "cannot write " + path.string()};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out;
}

// "3", "0-2" or "0,1,3"; an empty range is an input error.
std::vector<int> parse_genus(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dash = text.find('-');
    if (dash != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dash)), hi = std::stoi(text.substr(dash + 1));
      for (int g = lo; g <= hi; ++g) out.push_back(g);
    } else {
      std::stringstream in(text);
      std::string part;
      while (std::getline(in, part, ',')) out.push_back(std::stoi(part));
    }
  } catch (const std::exception&) {
    throw usage_error("--genus: expected N, A-B or a comma list, got '" + text + "'");
  }
  if (out.empty()) throw usage_error("--genus: empty genus range '" + text + "'");
  for (int g : out)
    if (g < 0) throw usage_error("--genus: negative genus");
  return out;
}

// --- algebra input ---------------------------------------------------------

struct AlgebraSource {
  std::string path;
  std::vector<std::string> model;
  std::string flavor = "ainf";
  int arity_cap = -1;
};

void add_algebra_options(CLI::App* cmd, AlgebraSource& src) {
  auto* file = cmd->add_option("--algebra", src.path, "Algebra JSON file");
  auto* model = cmd->add_option("--model", src.model, "Built-in model: 'V i', 'Vprime t1 t2 ..' or 'Vt t1 t2 ..'")
                    ->expected(1, 16)
                    ->allow_extra_args(false);
  file->excludes(model);
  cmd->add_option("--flavor", src.flavor, "Flavor of a built-in model")->check(CLI::IsMember({"ainf", "linf"}));
  cmd->add_option("--arity-cap", src.arity_cap, "Arity cap of a built-in model")->check(CLI::PositiveNumber);
}

AlgebraFile load_algebra(const AlgebraSource& src, int default_cap) {
  if (!src.path.empty()) {
    std::ifstream in(src.path, std::ios::binary);
    if (!in) throw CliExit{input_error, "cannot read " + src.path};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return read_algebra(buf.str());
    } catch (const json::exception& e) {
      throw CliExit{input_error, std::string("algebra file: ") + e.what()};
    } catch (const std::invalid_argument& e) {
      throw CliExit{input_error, e.what()};
    }
  }
  if (src.model.empty()) throw usage_error("give --algebra FILE or --model NAME ...");
  const Flavor flavor = src.flavor == "ainf" ? Flavor::associative : Flavor::lie;
  const int cap = src.arity_cap > 0 ? src.arity_cap : default_cap;
  const std::string& name = src.model[0];
  std::vector<Rational> params;
  try {
    for (std::size_t i = 1; i < src.model.size(); ++i) params.push_back(parse_rational(src.model[i]));
  } catch (const std::invalid_argument&) {
    throw usage_error("--model: parameters are rationals");
  }
  ModelKind kind = ModelKind::v_t;
  int i = 0;
  if (name == "V") {
    if (params.size() != 1 || params[0] < 0 || params[0].get_den() != 1)
      throw usage_error("--model V takes one nonnegative integer i");
    i = int(params[0].get_num().get_si());
    if (2 * i > cap)
      throw usage_error("--model V " + std::to_string(i) + " needs arity cap at least " + std::to_string(2 * i));
    kind = i == 0 ? ModelKind::v_zero : ModelKind::v_i;
    params.clear();
  } else if (name == "Vprime") {
    kind = ModelKind::v_prime;
  } else if (name != "Vt") {
    throw usage_error("--model: unknown model '" + name + "' (V, Vprime, Vt)");
  }
  auto m = model_algebra(kind, i, params, flavor, cap);
  return {m.structure, m.inner_product};
}

void require_mc(const InfinityStructure& s) {
  const auto r = mc_residual(s);
  const int a = r.lowest_nonzero();
  if (a >= 0) throw CliExit{input_error, "Maurer-Cartan equation violated in arity " + std::to_string(a)};
}

void require_cyclic(const InfinityStructure& s, const InnerProduct& ip) {
  if (auto v = find_cyclicity_violation(s, ip)) {
    std::string word;
    for (int x : v->word) word += (word.empty() ? "" : " ") + std::to_string(x);
    throw CliExit{input_error, "cyclicity violated at word (" + word + ") in arity " + std::to_string(v->arity)};
  }
}

// --- homology ----------------------------------------------------------------

struct HomologyArgs {
  std::string flavor = "ribbon";
  int min_valence = 1;
  std::string genus = "0";
  int max_vertices = 7;
  bool compare = false;
};

// Rank pattern of the curved complexes: the segment, and in the ribbon
// flavor every odd star, all in genus 0.
int expected_rank(GraphFlavor fl, int genus, int degree) {
  if (genus != 0 || degree < 2 || degree % 2) return 0;
  return degree == 2 || fl == GraphFlavor::ribbon ? 1 : 0;
}

int run_homology(const Global& g, const HomologyArgs& a) {
  const GraphFlavor fl = parse_graph_flavor(a.flavor);
  const auto genera = parse_genus(a.genus);
  if (a.compare && a.min_valence != 1)
    throw CliExit{inapplicable, "theorem inapplicable: the comparison pattern is for min valence 1"};
  GraphComplex cx(fl, a.min_valence, g.basis_cap);
  std::vector<HomologyReport> reports;
  json notes = json::array();
  bool complete = true;
  for (int genus : genera) {
    int n = a.max_vertices;
    for (; n >= 1; --n) {
      try {
        reports.push_back(cx.homology(genus, n));
        break;
      } catch (const resource_limit_error& e) {
        complete = false;
        if (n == a.max_vertices) notes.push_back({{"genus", genus}, {"resource_cap", e.what()}});
      }
    }
    if (n < a.max_vertices) notes.back()["max_vertices_reached"] = n;
  }
  json mismatches = json::array();
  if (a.compare)
    for (auto& r : reports)
      for (auto& row : r.rows)
        if (row.window_valid && row.rank != expected_rank(fl, r.genus, row.degree))
          mismatches.push_back({{"genus", r.genus}, {"degree", row.degree}, {"rank", row.rank},
                                {"expected", expected_rank(fl, r.genus, row.degree)}});
  json doc = {{"flavor", a.flavor},
              {"min_valence", a.min_valence},
              {"max_vertices", a.max_vertices},
              {"complete", complete},
              {"notes", notes},
              {"reports", homology_json(reports)}};
  if (a.compare) doc["comparison"] = {{"matches", mismatches.empty()}, {"mismatches", mismatches}};
  write_file(g, "homology.csv", homology_csv(reports));
  write_file(g, "homology.json", dump(doc));
  std::cout << homology_csv(reports);
  if (!complete) throw CliExit{resource_cap, "basis cap reached; partial results written and flagged"};
  if (!mismatches.empty()) throw CliExit{comparison_failed, "homology ranks differ from the expected pattern"};
  return ok;
}

// --- charclass ---------------------------------------------------------------

struct CharclassArgs {
  AlgebraSource src;
  int max_edges = 4;
  int min_valence = 1;
  bool compare = false;
};

int run_charclass(const Global& g, const CharclassArgs& a) {
  if (a.max_edges < 1) throw usage_error("--max-edges must be positive");
  // every connected graph with E edges has valences at most 2E
  const AlgebraFile alg = load_algebra(a.src, 2 * a.max_edges - 1);
  const auto& s = alg.structure;
  if (!alg.inner_product) throw CliExit{input_error, "characteristic classes need an inner product"};
  const InnerProduct& ip = *alg.inner_product;
  require_mc(s);
  require_cyclic(s, ip);
  if (s.space().dim_odd() != 0)
    throw CliExit{inapplicable, "theorem inapplicable: graph contraction is implemented for purely even V"};
  GraphChain cls(graph_flavor_for(s.flavor));
  try {
    cls = characteristic_class(s, ip, a.max_edges, a.min_valence, g.basis_cap);
  } catch (const resource_limit_error& e) {
    throw CliExit{resource_cap, e.what()};
  }
  const GraphChain defect = cycle_defect(cls, s.arity_cap);
  json doc = {{"graph_flavor", to_string(cls.flavor())},
              {"window", {{"max_edges", a.max_edges}, {"min_valence", a.min_valence}, {"max_valence", s.arity_cap + 1}}},
              {"class", chain_to_json(cls)},
              {"cycle", {{"checked_max_valence", s.arity_cap}, {"holds", defect.is_zero()}, {"defect", chain_to_json(defect)}}}};
  int code = defect.is_zero() ? ok : comparison_failed;
  if (a.compare) {
    if (a.min_valence != 1)
      throw CliExit{inapplicable, "theorem inapplicable: generators are defined for min valence 1"};
    std::optional<GeneratorComparison> cmp;
    try {
      cmp = compare_to_generators(cls, a.max_edges + 1, g.basis_cap);
    } catch (const resource_limit_error& e) {
      throw CliExit{resource_cap, e.what()};
    }
    json c = {{"edge_window", a.max_edges + 1}, {"found", cmp.has_value()}};
    if (cmp) {
      json gens = json::array();
      for (std::size_t j = 0; j < cmp->generators.size(); ++j)
        gens.push_back({{"graph", to_compact(cmp->generators[j].graph)}, {"lambda", to_string(cmp->lambda[j])}});
      c["generators"] = gens;
      c["lambda_unique"] = cmp->lambda_unique;
      c["witness"] = chain_to_json(cmp->witness);
      c["witness_verified"] = cmp->witness_verified;
      std::cout << "generator coefficients:";
      for (auto& q : cmp->lambda) std::cout << ' ' << to_string(q);
      std::cout << (cmp->witness_verified ? " (witness verified)" : " (witness FAILED)") << '\n';
    }
    doc["comparison"] = c;
    if (!cmp || !cmp->witness_verified) code = comparison_failed;
  }
  write_file(g, "class.json", dump(doc));
  std::cout << "class terms: " << cls.size() << '\n';
  for (auto& [key, t] : cls.terms())
    std::cout << "  " << to_string(t.coeff) << "  " << to_compact(t.graph.graph) << '\n';
  std::cout << "cycle: " << (defect.is_zero() ? "yes" : "NO") << '\n';
  if (code != ok) throw CliExit{code, defect.is_zero() ? "no decomposition over the generators in the window"
                                                       : "d of the class does not vanish"};
  return ok;
}

// --- normalform --------------------------------------------------------------

struct NormalformArgs {
  AlgebraSource src;
  bool plain = false;
  std::vector<std::string> cprime;
};

int run_normalform(const Global& g, const NormalformArgs& a) {
  const AlgebraFile alg = load_algebra(a.src, 4);
  const auto& s = alg.structure;
  require_mc(s);
  bool zero_curvature = true;
  for (auto& q : s.curvature()) zero_curvature = zero_curvature && q == 0;
  if (zero_curvature) throw CliExit{inapplicable, "theorem inapplicable: zero curvature"};
  const bool cyclic = alg.inner_product && !a.plain;
  NormalFormResult nf;
  if (cyclic) {
    require_cyclic(s, *alg.inner_product);
    std::optional<std::vector<Rational>> cp;
    if (!a.cprime.empty()) {
      if (int(a.cprime.size()) != s.dim()) throw usage_error("--cprime needs one coordinate per basis vector");
      cp.emplace();
      try {
        for (auto& x : a.cprime) cp->push_back(parse_rational(x));
      } catch (const std::invalid_argument&) {
        throw usage_error("--cprime: coordinates are rationals");
      }
      if (alg.inner_product->pair(*cp, s.curvature()) != 1) throw usage_error("--cprime: (c', c) must be 1");
    }
    nf = normal_form_cyclic(s, *alg.inner_product, cp);
  } else {
    nf = normal_form_plain(s);
  }
  const bool verified = apply_gauge(s, nf.gauge).m == nf.normal_form.m;
  const InnerProduct* ip = cyclic ? &*alg.inner_product : nullptr;
  write_file(g, "normal_form.json", write_algebra(nf.normal_form, ip));
  write_file(g, "gauge.json", dump(gauge_to_json(nf.gauge)));
  json summary = {{"mode", cyclic ? "cyclic" : "plain"}, {"gauge_verified", verified}};
  if (cyclic) {
    json inv = json::array();
    for (auto& q : nf.invariants) inv.push_back(to_string(q));
    summary["invariants"] = inv;
  }
  write_file(g, "normalform.json", dump(summary));
  std::cout << "mode: " << (cyclic ? "cyclic" : "plain") << '\n';
  if (cyclic) std::cout << "invariants: (" << join(nf.invariants) << ")\n";
  std::cout << "gauge re-applied: " << (verified ? "matches" : "MISMATCH") << '\n';
  if (!verified) throw CliExit{comparison_failed, "the gauge does not reproduce the normal form"};
  return ok;
}

// --- verify ------------------------------------------------------------------

int run_verify(const Global& g, const std::vector<int>& only) {
  VerifyOptions opt{g.seed, g.basis_cap};
  std::vector<CheckResult> results;
  for (auto& c : verify_checks()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    try {
      results.push_back(c.run(opt));
    } catch (const resource_limit_error& e) {
      results.push_back({c.id, "resource cap", false, {{"error", e.what()}}});
    }
    const auto& r = results.back();
    std::cout << "check " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << '\n' << std::flush;
  }
  const json report = verify_report(opt, results);
  write_file(g, "verify_report.json", dump(report));
  if (!report.at("passed").get<bool>()) throw CliExit{comparison_failed, "some checks failed"};
  return ok;
}

// --- ce ----------------------------------------------------------------------

struct CEArgs {
  AlgebraSource src;
  int weight_cap = 5;
  int degree = 2;
  int w_dim = 1;
  long max_block = -1;
};

int run_ce(const Global& g, const CEArgs& a) {
  if (a.degree < 1 || a.w_dim < 0) throw usage_error("--degree must be positive and --w-dim nonnegative");
  if (2 * a.degree + 1 > a.weight_cap)
    throw usage_error("window too small: degree n needs --weight-cap at least 2n + 1");
  const AlgebraFile alg = load_algebra(a.src, a.weight_cap);
  const auto& s = alg.structure;
  if (!alg.inner_product) throw CliExit{input_error, "cyclic derivations need an inner product"};
  require_mc(s);
  require_cyclic(s, *alg.inner_product);
  for (auto& q : s.curvature())
    if (q != 0) throw CliExit{inapplicable, "theorem inapplicable: the unstable class needs an uncurved structure"};
  const InnerProduct& ipv = *alg.inner_product;
  const GradedSpace w(a.w_dim, 0);
  const InnerProduct ipvw = ipv.direct_sum(InnerProduct(w, RationalMatrix::identity(a.w_dim)));
  const Flavor fl = s.flavor;
  json doc;
  try {
    DerivationAlgebra g0(s.space(), fl, a.weight_cap, false, ipv);
    DerivationAlgebra gv(s.space(), fl, a.weight_cap, true, ipv);
    DerivationAlgebra h0(ipvw.space(), fl, a.weight_cap, false, ipvw);
    DerivationAlgebra h(ipvw.space(), fl, a.weight_cap, true, ipvw);
    Stabilization to_g(g0, gv, GradedSpace(0, 0)), to_h0(g0, h0, w), to_h(g0, h, w);
    const auto e = mc_exponential(g0, s.m.truncated(a.weight_cap), a.degree);
    CEChain xn;
    for (auto& [m, v] : e.terms())
      if (int(m.size()) == a.degree) xn.add_sorted(m, v);
    const bool cycle = ce_differential(g0, xn).is_zero();
    doc = {{"weight_cap", a.weight_cap},
           {"degree", a.degree},
           {"w_dim", a.w_dim},
           {"cycle", cycle},
           {"chain", ce_chain_to_json(g0, xn)}};
    bool all_verified = cycle;
    auto verdict = [&](const char* name, const DerivationAlgebra& alg, const CEChain& c) {
      auto r = is_ce_boundary(alg, c, a.max_block);
      const bool verified = !r.boundary || ce_differential(alg, r.witness) == c;
      all_verified = all_verified && verified;
      doc["verdicts"][name] = {{"algebra_dim", alg.size()},
                               {"boundary", r.boundary},
                               {"unknowns", r.unknowns},
                               {"witness_verified", verified}};
      std::cout << name << ": " << (r.boundary ? "boundary" : "not a boundary") << " (" << r.unknowns
                << " unknowns)\n";
    };
    verdict("unstable_no_constants", g0, xn);
    verdict("unstable", gv, to_g.apply(xn));
    verdict("stable_no_constants", h0, to_h0.apply(xn));
    verdict("stable", h, to_h.apply(xn));
    write_file(g, "ce.json", dump(doc));
    if (!all_verified) throw CliExit{comparison_failed, "a CE verdict failed re-verification"};
  } catch (const resource_limit_error& e) {
    throw CliExit{resource_cap, e.what()};
  } catch (const std::invalid_argument& e) {
    throw CliExit{input_error, e.what()};
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact curved graph homology, characteristic classes and gauge normal forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--seed", global.seed, "Seed for randomized checks");
  app.add_option("--output-dir", global.output_dir, "Directory for report files");
  app.add_option("--basis-cap", global.basis_cap, "Largest graph basis to build (-1: no cap)");

  HomologyArgs ha;
  auto* hom = app.add_subcommand("homology", "Homology ranks of the connected graph complex");
  hom->add_option("--flavor", ha.flavor)->check(CLI::IsMember({"ribbon", "commutative"}));
  hom->add_option("--min-valence", ha.min_valence)->check(CLI::Range(1, 3));
  hom->add_option("--genus", ha.genus, "N, A-B or a comma list");
  hom->add_option("--max-vertices", ha.max_vertices)->check(CLI::PositiveNumber);
  hom->add_flag("--compare", ha.compare, "Check the ranks against the expected pattern");

  CharclassArgs ca;
  auto* cc = app.add_subcommand("charclass", "Truncated characteristic class of a cyclic algebra");
  add_algebra_options(cc, ca.src);
  cc->add_option("--max-edges", ca.max_edges)->check(CLI::PositiveNumber);
  cc->add_option("--min-valence", ca.min_valence)->check(CLI::Range(1, 3));
  cc->add_flag("--compare", ca.compare, "Decompose over the homology generators");

  NormalformArgs na;
  auto* nf = app.add_subcommand("normalform", "Gauge normal form of a curved algebra");
  add_algebra_options(nf, na.src);
  nf->add_flag("--plain", na.plain, "Ignore the inner product");
  nf->add_option("--cprime", na.cprime, "Coordinates of c' with (c', c) = 1")->allow_extra_args(false);

  std::vector<int> only;
  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  ver->add_option("--only", only, "Check ids to run");

  CEArgs ea;
  auto* ce = app.add_subcommand("ce", "Unstable classes and their stabilizations");
  add_algebra_options(ce, ea.src);
  ce->add_option("--weight-cap", ea.weight_cap)->check(CLI::PositiveNumber);
  ce->add_option("--degree", ea.degree);
  ce->add_option("--w-dim", ea.w_dim);
  ce->add_option("--max-block", ea.max_block, "Largest preimage block to solve (-1: no cap)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }
  try {
    if (*hom) return run_homology(global, ha);
    if (*cc) return run_charclass(global, ca);
    if (*nf) return run_normalform(global, na);
    if (*ver) return run_verify(global, only);
    if (*ce) return run_ce(global, ea);
  } catch (const CliExit& e) {
    if (e.code != ok) std::cerr << "error: " << e.message << '\n';
    if (e.usage) std::cerr << app.get_subcommands().front()->help();
    return e.code;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return resource_cap;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return inapplicable;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  }
  return ok;
}
