// relconv: command-line front end for relational groupoid checks.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relconv/convolution.hpp"
#include "relconv/definition_file.hpp"
#include "relconv/generators.hpp"
#include "relconv/haar.hpp"
#include "relconv/properties.hpp"
#include "relconv/reduction.hpp"
#include "relconv/representation.hpp"

namespace {

using namespace relconv;
using ojson = nlohmann::ordered_json;

/// Input problems detected after parsing (missing sections, unknown names).
struct InputError : Error {
  using Error::Error;
};

enum class Status { pass, fail, expected, skip, yes, no };

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::expected: return "EXPECTED-FAIL";
    case Status::skip: return "SKIP";
    case Status::yes: return "YES";
    case Status::no: return "NO";
  }
  return "?";
}

struct Check {
  std::string id;
  Status status;
  std::string description;
  std::string witness;
};

struct Report {
  std::string command;
  std::string file;
  std::vector<Check> checks;
  ojson extra = ojson::object();
  std::vector<std::string> text;  // free-form lines printed after the checks

  bool failed() const {
    for (const auto& c : checks) {
      if (c.status == Status::fail) return true;
    }
    return false;
  }

  void add(std::string id, bool ok, std::string description, std::string witness = {}) {
    checks.push_back({std::move(id), ok ? Status::pass : Status::fail, std::move(description),
                      ok ? std::string() : std::move(witness)});
  }
  void add(std::string id, const Classification& c, std::string description) {
    add(std::move(id), c.holds, std::move(description), c.witness);
  }
  void finding(std::string id, bool yes, std::string description, std::string witness = {}) {
    checks.push_back({std::move(id), yes ? Status::yes : Status::no, std::move(description),
                      yes ? std::string() : std::move(witness)});
  }
  void skip(std::string id, std::string why) { checks.push_back({std::move(id), Status::skip, std::move(why), {}}); }
};

std::string render_line(const Check& c) {
  std::string line = c.id + ": ";
  switch (c.status) {
    case Status::expected:
      line += "FAIL (expected; witness " + c.witness + ")";
      break;
    case Status::skip:
      line += "SKIP (" + c.description + ")";
      break;
    default:
      line += status_name(c.status);
      if (!c.witness.empty()) line += " (witness " + c.witness + ")";
  }
  return line;
}

void emit(const Report& r, bool as_json) {
  if (!as_json) {
    for (const auto& c : r.checks) std::cout << render_line(c) << "\n";
    for (const auto& l : r.text) std::cout << l << "\n";
    return;
  }
  ojson j;
  j["command"] = r.command;
  j["file"] = r.file;
  j["status"] = r.failed() ? "fail" : "pass";
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    ojson e;
    e["id"] = c.id;
    e["status"] = status_name(c.status);
    e["description"] = c.description;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  std::cout << j.dump(2) << "\n";
}

std::string triple_witness(const FiniteSet& s, const std::array<Index, 3>& w) {
  return s.label(w[0]) + "," + s.label(w[1]) + "," + s.label(w[2]);
}

ojson function_json(const AlgebraElement& f, const FiniteSet& carrier) {
  ojson out = ojson::object();
  for (Index x : f.support()) out[carrier.label(x)] = {to_string(f[x].re), to_string(f[x].im)};
  return out;
}

const RelationalHaarSystem& require_haar(const Definition& def) {
  if (!def.haar) throw InputError("the definition has no \"haar\" section");
  return *def.haar;
}

const AlgebraElement& require_function(const Definition& def, const std::string& name, const char* flag) {
  if (name.empty()) throw InputError(std::string("missing ") + flag + " NAME");
  const AlgebraElement* f = def.function(name);
  if (!f) throw InputError("unknown function \"" + name + "\"");
  return *f;
}

void add_axioms(Report& r, const RelationalGroupoid& g) {
  const AxiomReport ax = check_axioms(g);
  for (const auto& e : ax.entries) r.add(e.id, e.passed, e.description, e.witness);
}

int cmd_check(Report& r, const Definition& def) {
  add_axioms(r, def.structure);
  r.text.push_back(std::string("axioms: ") + (r.failed() ? "FAIL" : "PASS"));
  return r.failed() ? 1 : 0;
}

int cmd_verify(Report& r, const Definition& def) {
  const RelationalGroupoid& g = def.structure;
  add_axioms(r, g);
  if (r.failed()) {
    r.skip("reduction", "axioms fail");
    return 1;
  }
  const RelationalHaarSystem& mu = require_haar(def);
  std::optional<QuotientData> qd;
  try {
    qd = quotient_groupoid(g);
    r.add("quotient", true, "C/L2 is a groupoid");
  } catch (const Error& e) {
    r.add("quotient", false, "C/L2 is a groupoid", e.what());
    return 1;
  }
  r.add("q-morphism", verify_q_morphism(g, *qd), "q is a morphism of relational groupoids");
  r.add("unit-relations", check_unit_relations(g), "right units = I o left units o I");
  r.add("fiber-partition", check_fiber_partition(g), "fibers are equal iff L2-related, disjoint otherwise");
  r.add("fiber-quotient", check_fiber_quotient(g, *qd), "q maps each fiber onto the quotient fiber");
  r.add("right-translation", check_right_translation(g), "(id x R_h) o G2_g = G2_gh");
  r.add("left-translation", check_left_translation(g), "(L_g x id) o G2_h = G2_gh");
  r.add("two-sided-translation", check_two_sided_translation(g), "(L_I(g) x R_h) o G2_g = G2_h");
  r.add("action-composition", check_action_composition(g), "R_g then R_h = R_gh");
  r.add("self-action", check_self_action(g), "L3 is a right action with R_L1 = L2");

  const CheckReport haar = check_relational_haar(g, *qd, mu);
  for (const auto& e : haar.entries) r.add("haar-" + e.id, e.passed, e.description, e.witness);
  if (!haar.all_passed()) {
    r.skip("convolution", "not a relational Haar system");
    return 1;
  }

  const Classification inv = is_l2_invariant(g, mu);
  const SplitResult split = is_split(g, *qd, mu);
  const StrongSplitResult strong = is_strongly_split(g, *qd, mu);
  r.finding("l2-invariant", inv.holds, "mu_g = mu_h for (g, h) in L2", inv.witness);
  r.finding("split", split.holds, "conditionals are products", split.witness);
  r.finding("strongly-split", strong.holds, "split with tau independent of g", strong.witness);

  const AssociativityCheck assoc = check_associativity(g, mu);
  if (assoc.holds) {
    r.add("associativity", true, "delta-basis scan");
  } else {
    const std::string w = triple_witness(g.carrier(), *assoc.witness);
    r.checks.push_back({"associativity", strong.holds ? Status::fail : Status::expected, "delta-basis scan", w});
  }
  r.add("invariant-associativity", check_invariant_associativity(g, *qd, mu), "invariant functions associate");
  {
    const auto basis = invariant_basis(*qd, g.size());
    Classification lemma;
    for (std::size_t a = 0; a < basis.size() && lemma.holds; ++a) {
      for (std::size_t b = 0; b < basis.size() && lemma.holds; ++b) lemma = check_l2conv_lemma(g, *qd, mu, basis[a], basis[b]);
    }
    r.add("l2conv-lemma", lemma, "f1 * f2 = q*(Phi f1 * Phi f2) on invariant basis pairs");
  }
  r.add("support-in-C", check_support_in_constraint(g, mu), "products vanish off C");
  r.add("saturation-invariance", check_saturation_invariance(g, *qd, mu), "mu_g(A) = mu_k((id x R_h) o A)");
  r.add("ideal", verify_ideal(g, mu), "functions vanishing on C form an ideal");
  r.add("reduction-theorem", check_reduction_theorem(g, *qd, mu), "Phi is an algebra isomorphism");
  if (strong.holds) {
    r.add("split-factorization", check_split_factorization(g, *qd, mu, strong.tau), "f1 * f2 = q*(q_* f1 * q_* f2)");
  } else {
    r.skip("split-factorization", "not strongly split");
  }
  return r.failed() ? 1 : 0;
}

int cmd_reduce(Report& r, const Definition& def) {
  const RelationalGroupoid& g = def.structure;
  const FiniteSet& G = g.carrier();
  QuotientData qd = [&] {
    try {
      return quotient_groupoid(g);
    } catch (const Error& e) {
      r.add("quotient", false, "C/L2 is a groupoid", e.what());
      throw;
    }
  }();
  r.add("quotient", true, "C/L2 is a groupoid");
  const GroupoidTable& Q = qd.quotient;
  const FiniteSet& Qm = Q.morphisms();

  ojson constraint = ojson::array();
  std::string cline = "constraint set:";
  for (Index x : g.constraint_elements()) {
    constraint.push_back(G.label(x));
    cline += " " + G.label(x);
  }
  r.text.push_back(cline);
  ojson classes = ojson::array();
  r.text.push_back("classes:");
  for (Index a = 0; a < qd.classes.size(); ++a) {
    ojson members = ojson::array();
    std::string line = "  [" + Qm.label(a) + "] = {";
    for (std::size_t i = 0; i < qd.classes[a].size(); ++i) {
      members.push_back(G.label(qd.classes[a][i]));
      line += (i ? ", " : "") + G.label(qd.classes[a][i]);
    }
    classes.push_back({{"label", Qm.label(a)}, {"members", members}});
    r.text.push_back(line + "}");
  }
  ojson objects = ojson::array();
  std::string oline = "objects:";
  for (Index x = 0; x < Q.objects().size(); ++x) {
    objects.push_back(Q.objects().label(x));
    oline += " " + Q.objects().label(x);
  }
  r.text.push_back(oline);
  ojson morphisms = ojson::array();
  r.text.push_back("morphisms:");
  for (Index a = 0; a < Q.size(); ++a) {
    const std::string s = Q.objects().label(Q.source(a)), t = Q.objects().label(Q.target(a));
    morphisms.push_back({{"label", Qm.label(a)}, {"source", s}, {"target", t}, {"inverse", Qm.label(Q.inverse(a))}});
    r.text.push_back("  [" + Qm.label(a) + "]: " + s + " -> " + t + ", inverse [" + Qm.label(Q.inverse(a)) + "]");
  }
  ojson mult = ojson::array();
  r.text.push_back("multiplication:");
  for (Index a = 0; a < Q.size(); ++a) {
    for (Index b = 0; b < Q.size(); ++b) {
      if (auto c = Q.compose(a, b)) {
        mult.push_back({Qm.label(a), Qm.label(b), Qm.label(*c)});
        r.text.push_back("  [" + Qm.label(a) + "][" + Qm.label(b) + "] = [" + Qm.label(*c) + "]");
      }
    }
  }
  r.extra["constraint"] = constraint;
  r.extra["classes"] = classes;
  r.extra["objects"] = objects;
  r.extra["morphisms"] = morphisms;
  r.extra["multiplication"] = mult;
  return 0;
}

int cmd_convolve(Report& r, const Definition& def, const std::string& f_name, const std::string& g_name) {
  const RelationalHaarSystem& mu = require_haar(def);
  const AlgebraElement& f = require_function(def, f_name, "--f");
  const AlgebraElement& h = require_function(def, g_name, "--g");
  const AlgebraElement out = convolve(def.structure, mu, f, h);
  r.text.push_back(format(out, def.carrier()));
  r.extra["f"] = f_name;
  r.extra["g"] = g_name;
  r.extra["result"] = function_json(out, def.carrier());
  return 0;
}

int cmd_assoc(Report& r, const Definition& def) {
  const RelationalHaarSystem& mu = require_haar(def);
  const AssociativityCheck a = check_associativity(def.structure, mu);
  const FiniteSet& G = def.carrier();
  if (a.holds) {
    r.add("associativity", true, "delta-basis scan");
    return 0;
  }
  const auto& w = *a.witness;
  r.add("associativity", false, "delta-basis scan", triple_witness(G, w));
  const std::string da = "d" + G.label(w[0]), db = "d" + G.label(w[1]), dc = "d" + G.label(w[2]);
  r.text.push_back("(" + da + "*" + db + ")*" + dc + " = " + format(a.left, G));
  r.text.push_back(da + "*(" + db + "*" + dc + ") = " + format(a.right, G));
  r.extra["left"] = function_json(a.left, G);
  r.extra["right"] = function_json(a.right, G);
  return 1;
}

int cmd_norm(Report& r, const Definition& def, const std::string& f_name) {
  const RelationalGroupoid& g = def.structure;
  const RelationalHaarSystem& mu = require_haar(def);
  const AlgebraElement& f = require_function(def, f_name, "--f");
  const QuotientData qd = quotient_groupoid(g);
  AlgebraElement reduced;
  try {
    reduced = push_invariant(g, qd, f);
  } catch (const NotInvariant&) {
    throw InputError("function \"" + f_name + "\" is not constant on L2-classes");
  }
  const RightHaarSystem nu = induced_quotient_haar(qd, mu);
  const HaarCheck hc = check_right_haar(qd.quotient, nu);
  if (!hc.holds) {
    r.add("quotient-haar", false, "induced measures form a right Haar system", hc.detail);
    return 1;
  }
  const double norm = reduced_norm(qd.quotient, nu, reduced);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", norm);
  r.text.push_back(buf);
  r.extra["f"] = f_name;
  r.extra["norm"] = norm;
  return 0;
}

int cmd_export(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const Definition& def) {
    const fs::path p = fs::path(dir) / (name + ".json");
    std::ofstream(p, std::ios::binary) << serialize(def);
    std::cout << p.string() << "\n";
  };
  for (const auto& e : standard_corpus()) write(e.name, definition_from(e));
  const RelationalGroupoid z4 = cyclic_relational(4, 2);
  write("z4z2-mutated", Definition{drop_l3_tuple(z4, {0, 0, 0}), std::nullopt, std::nullopt, {}});
  const GroupoidTable s3 = symmetric_group(3);
  std::vector<std::vector<std::string>> table;
  for (Index a = 0; a < s3.size(); ++a) {
    std::vector<std::string> row;
    for (Index b = 0; b < s3.size(); ++b) row.push_back(s3.morphisms().label(*s3.compose(a, b)));
    table.push_back(row);
  }
  std::vector<std::string> a3;
  for (Index x : alternating_subgroup(s3)) a3.push_back(s3.morphisms().label(x));
  write("s3-a3-table", Definition{from_group_and_normal_subgroup(s3, alternating_subgroup(s3)),
                                  GroupSection{table, a3}, std::nullopt, {}});
  return 0;
}

void emit_error(const std::string& command, const std::string& file, const std::string& message, bool as_json,
                const ParseError* pe) {
  std::cerr << "relconv: " << message << "\n";
  if (!as_json) return;
  ojson j;
  j["command"] = command;
  j["file"] = file;
  j["status"] = "error";
  ojson err;
  err["message"] = message;
  if (pe) {
    if (pe->line() != 0) {
      err["line"] = pe->line();
      err["column"] = pe->column();
    }
    if (!pe->path().empty()) err["path"] = pe->path();
  }
  j["error"] = err;
  std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks and computations on finite relational groupoids"};
  app.require_subcommand(1);

  std::string file, format = "text", f_name, g_name, out_dir;
  const std::vector<std::string> formats = {"text", "json"};
  std::vector<CLI::App*> subs;
  auto add = [&](const char* name, const char* help, bool uses_f, bool uses_g) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("file", file, "definition file")->required();
    s->add_option("--format", format, "output format")->check(CLI::IsMember(formats));
    if (uses_f) s->add_option("--f", f_name, "first function name");
    if (uses_g) s->add_option("--g", g_name, "second function name");
    subs.push_back(s);
    return s;
  };
  add("check", "check the relational groupoid axioms", false, false);
  add("verify", "run every structural, Haar and convolution check", false, false);
  add("reduce", "print the quotient groupoid C/L2", false, false);
  add("convolve", "print the convolution of two named functions", true, true);
  add("assoc", "scan the delta basis for associativity", false, false);
  add("norm", "reduced C*-norm of an L2-invariant function on the quotient", true, false);
  add("canonical", "print the definition file in canonical form", false, false);
  CLI::App* exp = app.add_subcommand("export-corpus", "write the built-in example corpus as definition files");
  exp->add_option("dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (exp->parsed()) {
    try {
      return cmd_export(out_dir);
    } catch (const std::exception& e) {
      std::cerr << "relconv: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const bool as_json = format == "json";
  Report report{command, file, {}, ojson::object(), {}};
  try {
    const Definition def = load_definition(file);
    if (command == "canonical") {
      std::cout << serialize(def);
      return 0;
    }
    int code = 0;
    if (command == "check") code = cmd_check(report, def);
    if (command == "verify") code = cmd_verify(report, def);
    if (command == "reduce") code = cmd_reduce(report, def);
    if (command == "convolve") code = cmd_convolve(report, def, f_name, g_name);
    if (command == "assoc") code = cmd_assoc(report, def);
    if (command == "norm") code = cmd_norm(report, def, f_name);
    emit(report, as_json);
    return code;
  } catch (const ParseError& e) {
    emit_error(command, file, e.what(), as_json, &e);
    return 2;
  } catch (const InputError& e) {
    emit_error(command, file, e.what(), as_json, nullptr);
    return 2;
  } catch (const QuotientError& e) {
    emit(report, as_json);
    return 1;
  } catch (const AxiomViolation& e) {
    report.add("constraint-set", false, "L2 is an equivalence on C", e.what());
    emit(report, as_json);
    return 1;
  } catch (const Error& e) {
    emit_error(command, file, e.what(), as_json, nullptr);
    return 2;
  }
}
