#include "decomp/cli.hpp"

#include "decomp/bicomodule.hpp"
#include "decomp/coalgebra.hpp"
#include "decomp/io.hpp"
#include "decomp/simplicial.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace decomp {

using nlohmann::ordered_json;

namespace {

constexpr int kMaxDegree = 3;
constexpr int kMaxPairSize = 6;

const std::vector<std::string> kInstances = {"posets", "sets", "forests", "ptrees"};
const std::vector<std::string> kTargets = {"coalgebra", "decomposition-space", "segal", "complete", "culf",
                                           "abacus", "bisimplicial", "bicomodule", "mobius-bicomodule", "rota"};

struct Options {
  std::vector<std::string> positional;
  std::string instance;
  int max_size = -1;
  int max_degree = -1;
  std::string format = "json";
  std::string mutate;
  std::string signature = "binary";
};

struct Instance {
  std::string name;
  SimplicialInstance x;
  int size_limit = 0;
  std::shared_ptr<const Signature> sig;
};

Instance open_instance(const std::string& name, const std::string& signature) {
  if (name == "posets") return {name, instance_C(), 7, nullptr};
  if (name == "sets") return {name, instance_I(), 12, nullptr};
  if (name == "forests") return {name, instance_forests(), 7, nullptr};
  if (name == "ptrees") {
    std::shared_ptr<const Signature> sig;
    if (signature == "binary")
      sig = std::make_shared<const Signature>(binary_signature());
    else if (signature == "mixed")
      sig = std::make_shared<const Signature>(mixed_signature());
    else
      sig = std::make_shared<const Signature>(signature_from_json(load_json_argument(signature)));
    return {name, instance_ptrees(sig), 6, sig};
  }
  throw InputError("unknown instance \"" + name + "\" (posets, sets, forests, ptrees)");
}

int size_bound(const Options& o, const Instance& in, int fallback) {
  const int n = o.max_size < 0 ? std::min(fallback, in.size_limit) : o.max_size;
  if (n < 0) throw InputError("--max-size must be nonnegative");
  if (n > in.size_limit)
    throw BoundExceededError("--max-size " + std::to_string(n) + " exceeds the limit " +
                             std::to_string(in.size_limit) + " for " + in.name);
  return n;
}

int degree_bound(const Options& o, int fallback) {
  const int k = o.max_degree < 0 ? fallback : o.max_degree;
  if (k < 1) throw InputError("--max-degree must be at least 1");
  if (k > kMaxDegree) throw BoundExceededError("--max-degree " + std::to_string(k) + " exceeds the limit 3");
  return k;
}

std::vector<int> single_layer(int n) { return std::vector<int>(n, 1); }

// Registers the structure described by j and returns its degree-1 key.
std::string intern_input(const Instance& in, const nlohmann::json& j) {
  auto check = [&](int n) {
    if (n > in.size_limit)
      throw BoundExceededError(in.name + " input of size " + std::to_string(n) + " exceeds the limit " +
                               std::to_string(in.size_limit));
  };
  if (in.name == "posets") {
    Poset p = poset_from_json(j);
    check(p.size());
    const int n = p.size();
    return in.x.intern(std::any(Layering::make(std::move(p), 1, single_layer(n))));
  }
  if (in.name == "sets") {
    const FiniteSetObj s = set_from_json(j);
    check(s.n);
    return in.x.intern(std::any(Layering::make(s.as_poset(), 1, single_layer(s.n))));
  }
  if (in.name == "forests") {
    const RootedForest f = forest_from_json(j);
    check(f.size());
    return in.x.intern(std::any(Layering::make(f.poset(), 1, single_layer(f.size()))));
  }
  PForest t = ptree_from_json(j, in.sig);
  check(t.size());
  const int n = t.size();
  return in.x.intern(std::any(LayeredPForest{std::move(t), 1, single_layer(n)}));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << csv_field(fields[k]);
  out << '\n';
}

int worker_count() {
  const char* env = std::getenv("DECOMP_MOBIUS_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1U, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) throw InputError(std::string("DECOMP_MOBIUS_THREADS: expected 1..256, got ") + env);
  return static_cast<int>(v);
}

void require_mutation(const Options& o, const std::string& target, const std::vector<std::string>& allowed) {
  if (o.mutate.empty() || std::find(allowed.begin(), allowed.end(), o.mutate) != allowed.end()) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw InputError("unknown mutation \"" + o.mutate + "\" for " + target + " (" + list + ")");
}

// -------------------------------------------------------------------------
// Verbs

int run_mu(const Options& o, const Instance& in, const std::vector<std::string>& inputs, std::ostream& out) {
  if (!inputs.empty()) {
    if (o.max_size >= 0) size_bound(o, in, 0);
    const std::string key = intern_input(in, load_json_argument(inputs[0]));
    const std::string mu = to_string(mobius_by_inversion(in.x, key));
    if (o.format == "csv") {
      csv_row(out, {"class", "mu"});
      csv_row(out, {key, mu});
    } else if (o.format == "pretty") {
      out << "mu(" << key << ") = " << mu << '\n';
    } else {
      out << ordered_json{{"mu", mu}}.dump() << '\n';
    }
    return 0;
  }
  const int n = size_bound(o, in, 4);
  const std::vector<std::string> keys = corpus(in.x, n);
  const Functional mu = mobius_functional(in.x, keys);
  if (o.format == "csv") {
    csv_row(out, {"class", "mu", "closed_form"});
    for (const auto& k : keys) csv_row(out, {k, to_string(mu(k)), to_string(mobius_closed_form(in.x, k))});
  } else if (o.format == "pretty") {
    for (const auto& k : keys) out << "mu(" << k << ") = " << to_string(mu(k)) << '\n';
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& k : keys)
      rows.push_back({{"class", k}, {"mu", to_string(mu(k))}, {"closed_form", to_string(mobius_closed_form(in.x, k))}});
    out << ordered_json{{"instance", in.name}, {"max_size", n}, {"rows", rows}}.dump() << '\n';
  }
  return 0;
}

int run_coproduct(const Options& o, const Instance& in, const std::vector<std::string>& inputs, std::ostream& out) {
  if (inputs.empty()) throw InputError("coproduct needs an input structure");
  const std::string key = intern_input(in, load_json_argument(inputs[0]));
  const FormalSum d = coproduct(in.x, key);
  if (o.format == "csv") {
    csv_row(out, {"left", "right", "coeff"});
    for (const auto& [t, c] : d.terms()) {
      const auto parts = split_tensor(t);
      csv_row(out, {parts[0], parts[1], to_string(c)});
    }
  } else if (o.format == "pretty") {
    out << "Delta(" << key << ") =\n";
    for (const auto& [t, c] : d.terms()) out << "  " << to_string(c) << "  " << t << '\n';
  } else {
    ordered_json terms = ordered_json::array();
    for (const auto& [t, c] : d.terms()) terms.push_back({{"class", t}, {"coeff", to_string(c)}});
    out << ordered_json{{"class", key}, {"coproduct", terms}}.dump() << '\n';
  }
  return 0;
}

int run_phi(const Options& o, const Instance& in, const std::vector<std::string>& inputs, std::ostream& out) {
  if (inputs.empty()) throw InputError("phi needs an input structure");
  const std::string key = intern_input(in, load_json_argument(inputs[0]));
  const int n = in.x.class_of(key).grade;
  std::vector<std::pair<int, std::string>> rows;
  for (int k = 0; k <= n; ++k) rows.emplace_back(k, to_string(phi(in.x, key, k)));
  if (o.format == "csv") {
    csv_row(out, {"k", "phi"});
    for (const auto& [k, v] : rows) csv_row(out, {std::to_string(k), v});
  } else if (o.format == "pretty") {
    for (const auto& [k, v] : rows) out << "Phi_" << k << "(" << key << ") = " << v << '\n';
  } else {
    ordered_json list = ordered_json::array();
    for (const auto& [k, v] : rows) list.push_back({{"k", k}, {"phi", v}});
    out << ordered_json{{"class", key}, {"phi", list}}.dump() << '\n';
  }
  return 0;
}

int run_enumerate(const Options& o, const Instance& in, std::ostream& out) {
  const int n = size_bound(o, in, 4);
  const int k = degree_bound(o, 1);
  const FiniteGroupoid g = in.x.objects(k, n);
  if (o.format == "csv") {
    csv_row(out, {"class", "size", "aut"});
    for (const IsoClass& c : g.classes()) csv_row(out, {c.key, std::to_string(c.grade), std::to_string(c.aut_order)});
  } else if (o.format == "pretty") {
    for (const IsoClass& c : g.classes()) out << c.key << "  size " << c.grade << "  |Aut| " << c.aut_order << '\n';
    out << g.size() << " classes\n";
  } else {
    ordered_json list = ordered_json::array();
    for (const IsoClass& c : g.classes()) list.push_back({{"class", c.key}, {"size", c.grade}, {"aut", c.aut_order}});
    out << ordered_json{{"instance", in.name}, {"degree", k}, {"max_size", n}, {"count", g.size()}, {"classes", list}}
               .dump()
        << '\n';
  }
  return 0;
}

void print_report(const Options& o, const Report& r, std::ostream& out) {
  if (o.format == "csv") {
    csv_row(out, {"id", "pass", "checked", "witness", "error"});
    for (const CheckEntry& e : r.squares)
      csv_row(out, {e.id, e.pass ? "true" : "false", std::to_string(e.checked), e.witness.value_or(""),
                    e.error.value_or("")});
  } else if (o.format == "pretty") {
    out << r.check << " on " << r.instance << ": " << (r.pass() ? "PASS" : "FAIL") << '\n';
    for (const CheckEntry& e : r.squares) {
      out << "  " << (e.pass ? "ok  " : "FAIL") << "  " << e.id << " (" << e.checked << " checked)";
      if (e.witness) out << "  witness " << *e.witness;
      if (e.error) out << "  " << *e.error;
      out << '\n';
    }
  } else {
    out << to_json(r).dump() << '\n';
  }
}

std::string first_nondegenerate_2_simplex(const SimplicialInstance& x, int bound) {
  for (const IsoClass& c : x.objects(2, bound).classes())
    if (!x.is_degenerate(x.layer_key(2, 1, c.key)) && !x.is_degenerate(x.layer_key(2, 2, c.key))) return c.key;
  throw InputError("drop-class: no nondegenerate 2-simplex within --max-size " + std::to_string(bound));
}

Report run_simplicial_target(const std::string& target, const Options& o, const Instance& in) {
  const int n = size_bound(o, in, 4);
  const int k = degree_bound(o, 3);
  SimplicialInstance x = in.x;
  if (target == "coalgebra") {
    require_mutation(o, target, {"drop-cut"});
    CoproductOptions opt;
    opt.drop_first_nontrivial_cut = o.mutate == "drop-cut";
    return verify_coalgebra_laws(x, n, opt);
  }
  if (target == "complete") {
    require_mutation(o, target, {"duplicate-s0"});
    if (o.mutate == "duplicate-s0") x = mutate_duplicate_s0(x, x.objects(0, n).classes().front().key);
    Report r{x.name, "complete", {}};
    CheckEntry e{"s_0 is a monomorphism", check_complete(x, n), {}, {}, x.objects(0, n).size()};
    r.squares.push_back(e);
    return r;
  }
  if (target == "culf") {
    require_mutation(o, target, {"forget-order"});
    std::vector<SimplicialMap> maps;
    if (o.mutate == "forget-order") {
      maps.push_back(poset_to_set_map());
    } else {
      maps.push_back(decalage_map(x, DecalageSide::lower));
      maps.push_back(decalage_map(x, DecalageSide::upper));
      if (in.name == "forests") maps.push_back(forest_to_poset_map());
    }
    Report r{x.name, "culf", {}};
    for (const SimplicialMap& g : maps) {
      Report part = check_culf(g, n, k);
      for (CheckEntry& e : part.squares) e.id = g.name + ": " + e.id;
      r.append(part);
    }
    r.canonicalize();
    return r;
  }
  require_mutation(o, target, {"drop-class"});
  if (o.mutate == "drop-class") x = mutate_drop_class(x, 2, first_nondegenerate_2_simplex(x, n));
  if (target == "decomposition-space") return check_decomposition_space(x, n, k);
  return check_segal(x, n, k);
}

int run_bisimplicial_target(const std::string& target, const Options& o, std::ostream& out) {
  if (!o.instance.empty() && o.instance != "posets")
    throw InputError(target + " runs on layered sets and posets only; drop --instance " + o.instance);
  BisimplicialBounds bd;
  bd.size = o.max_size < 0 ? 5 : o.max_size;
  if (bd.size < 0) throw InputError("--max-size must be nonnegative");
  if (bd.size > kMaxPairSize)
    throw BoundExceededError("--max-size " + std::to_string(bd.size) + " exceeds the limit 6 for " + target);
  bd.max_i = bd.max_j = degree_bound(o, 2);
  require_mutation(o, target, {"ordinal-sum", "unmodified-top-face"});
  const AbacusVariant variant = o.mutate == "ordinal-sum" ? AbacusVariant::ordinal_sum : AbacusVariant::disjoint_union;
  const Bisimplicial b = o.mutate == "unmodified-top-face" ? layered_sets_and_posets() : layered_bicomodule(variant);
  const AbacusMap f = layered_abacus(variant);
  Report r;
  if (target == "abacus") {
    r = check_abacus_axioms(b, f, bd);
  } else if (target == "bisimplicial") {
    r = check_modified_bisimplicial(b, bd);
  } else if (target == "bicomodule") {
    r = check_fibrations(b, f, bd);
    r.append(check_bicomodule_configuration(b, bd));
    r.check = "bicomodule";
    r.canonicalize();
  } else {
    r = check_mobius_bicomodule(b, bd);
  }
  print_report(o, r, out);
  return r.pass() ? 0 : 1;
}

int run_rota(const Options& o, std::ostream& out) {
  if (!o.instance.empty() && o.instance != "posets") throw InputError("rota runs on posets only");
  require_mutation(o, "rota", {"zeta-for-mu-I"});
  const int n = o.max_size < 0 ? 6 : o.max_size;
  if (n < 0) throw InputError("--max-size must be nonnegative");
  if (n > 7) throw BoundExceededError("--max-size " + std::to_string(n) + " exceeds the limit 7 for posets");
  MobiusTables tables = mobius_tables(n);
  if (o.mutate == "zeta-for-mu-I") tables.mu_I = zeta(corpus(instance_I(), n));
  const std::vector<RotaResult> rows = rota_over_corpus(tables, worker_count());
  const Report r = verify_rota(rows, std::min(n, 5));
  if (o.format == "csv") {
    csv_row(out, {"key", "lhs", "rhs", "closed_form", "equal"});
    for (const RotaResult& x : rows)
      csv_row(out, {x.key, to_string(x.lhs), to_string(x.rhs), to_string(x.closed_form), x.equal ? "true" : "false"});
  } else if (o.format == "pretty") {
    for (const RotaResult& x : rows)
      out << (x.equal ? "ok    " : "FAIL  ") << x.key << "  lhs " << to_string(x.lhs) << "  rhs " << to_string(x.rhs)
          << "  closed form " << to_string(x.closed_form) << '\n';
    print_report(o, r, out);
  } else {
    ordered_json j = to_json(r);
    ordered_json list = ordered_json::array();
    for (const RotaResult& x : rows) list.push_back(to_json(x));
    j["rows"] = list;
    out << j.dump() << '\n';
  }
  return r.pass() ? 0 : 1;
}

int run_verify(const Options& o, std::ostream& out) {
  if (o.positional.empty()) throw InputError("verify needs a target");
  const std::string& target = o.positional[0];
  if (std::find(kTargets.begin(), kTargets.end(), target) == kTargets.end())
    throw InputError("unknown verify target \"" + target + "\"");
  if (o.positional.size() > 1) throw InputError("verify takes no input structure");
  if (target == "rota") return run_rota(o, out);
  if (target == "abacus" || target == "bisimplicial" || target == "bicomodule" || target == "mobius-bicomodule")
    return run_bisimplicial_target(target, o, out);
  const Instance in = open_instance(o.instance.empty() ? "posets" : o.instance, o.signature);
  const Report r = run_simplicial_target(target, o, in);
  print_report(o, r, out);
  return r.pass() ? 0 : 1;
}

int run_structure_verb(const std::string& verb, Options o, std::ostream& out) {
  std::vector<std::string> inputs = o.positional;
  if (!inputs.empty() && std::find(kInstances.begin(), kInstances.end(), inputs[0]) != kInstances.end() &&
      (o.instance.empty() || inputs.size() > 1)) {
    if (!o.instance.empty() && o.instance != inputs[0])
      throw InputError("instance given twice: " + inputs[0] + " and --instance " + o.instance);
    o.instance = inputs[0];
    inputs.erase(inputs.begin());
  }
  if (inputs.size() > 1) throw InputError(verb + " takes at most one input structure");
  if (!o.mutate.empty()) throw InputError("--mutate applies to verify only");
  const Instance in = open_instance(o.instance.empty() ? "posets" : o.instance, o.signature);
  if (verb == "mu") return run_mu(o, in, inputs, out);
  if (verb == "coproduct") return run_coproduct(o, in, inputs, out);
  if (verb == "phi") return run_phi(o, in, inputs, out);
  if (!inputs.empty()) throw InputError("enumerate takes no input structure");
  return run_enumerate(o, in, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incidence coalgebras of layered structures: Möbius functions and axiom checks", "decomp"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"mu", "Möbius function of a structure, or a table over the corpus"},
      {"coproduct", "coproduct of a structure in the basis of iso classes"},
      {"phi", "number of k-layerings with every layer nondegenerate"},
      {"enumerate", "iso classes of k-simplices up to a size bound"},
      {"verify", "run a verification suite"}};
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("args", o.positional, name == "verify" ? "target" : "[instance] [input path or inline JSON]");
    sub->add_option("--instance", o.instance, "posets, sets, forests or ptrees")->check(CLI::IsMember(kInstances));
    sub->add_option("--max-size", o.max_size, "size bound");
    sub->add_option("--max-degree", o.max_degree, "simplicial degree bound (at most 3)");
    sub->add_option("--format", o.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--signature", o.signature, "P-tree signature: binary, mixed, or a JSON path");
    if (name == "verify") sub->add_option("--mutate", o.mutate, "negative control");
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "verify") return run_verify(o, out);
    return run_structure_verb(verb, o, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const InvalidStructureError& e) {
    err << "invalid structure: " << e.what() << '\n';
  } catch (const BoundExceededError& e) {
    err << "bound exceeded: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace decomp
